"""Run manifests: key=value sidecars that make every output reproducible.

Each CSV an invocation writes gets a ``<file>.manifest`` sidecar recording
the subcommand, the fully resolved parameter set (flag > config file >
default), seed and thread count, input digests, software version, and wall
time.  Re-running the reconstructed command line reproduces the CSV
byte-for-byte; only the duration line differs between such runs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__

__all__ = ["RunManifest", "file_digest"]

_HEADER = "# hhtscale run manifest v1"


def file_digest(path) -> str:
    """Hex SHA-256 of a file's bytes."""
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    """Everything needed to rerun one subcommand invocation."""

    subcommand: str
    params: dict[str, str] = field(default_factory=dict)
    inputs: dict[str, str] = field(default_factory=dict)  # name -> sha256
    seed: int | None = None
    threads: int = 1
    rng: str = "philox"
    version: str = __version__
    duration_s: float = 0.0

    def to_text(self) -> str:
        lines = [
            _HEADER,
            f"subcommand={self.subcommand}",
            f"version={self.version}",
            f"rng={self.rng}",
            f"seed={'' if self.seed is None else self.seed}",
            f"threads={self.threads}",
            f"duration_s={self.duration_s!r}",
        ]
        for key in sorted(self.params):
            value = self.params[key]
            if "\n" in value:
                raise ValueError(f"manifest value for {key!r} contains a newline")
            lines.append(f"param.{key}={value}")
        for name in sorted(self.inputs):
            lines.append(f"input.{name}.sha256={self.inputs[name]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunManifest":
        fields: dict[str, str] = {}
        params: dict[str, str] = {}
        inputs: dict[str, str] = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"malformed manifest line: {raw!r}")
            if key.startswith("param."):
                params[key[len("param."):]] = value
            elif key.startswith("input.") and key.endswith(".sha256"):
                inputs[key[len("input."):-len(".sha256")]] = value
            else:
                fields[key] = value
        return cls(
            subcommand=fields.get("subcommand", ""),
            params=params,
            inputs=inputs,
            seed=int(fields["seed"]) if fields.get("seed") else None,
            threads=int(fields.get("threads", "1")),
            rng=fields.get("rng", "philox"),
            version=fields.get("version", ""),
            duration_s=float(fields.get("duration_s", "0.0")),
        )

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path) -> "RunManifest":
        return cls.from_text(Path(path).read_text())

    def to_argv(self) -> list[str]:
        """Command-line fragment (after the program name) that reruns this."""
        argv = [self.subcommand]
        if "input" in self.params:
            argv.append(self.params["input"])
        for key in sorted(self.params):
            if key == "input":
                continue
            value = self.params[key]
            flag = "--" + key.replace("_", "-")
            if value == "true":
                argv.append(flag)
            elif value == "false":
                continue
            elif value.startswith("-"):
                # a separate token would parse as an option
                argv.append(f"{flag}={value}")
            else:
                argv.extend([flag, value])
        if self.seed is not None:
            argv.extend(["--seed", str(self.seed)])
        argv.extend(["--threads", str(self.threads)])
        return argv
