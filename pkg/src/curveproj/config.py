"""Tunable limits: degree caps, sample counts and oracle precision."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class Config:
    degree_cap: int = 24          # per-polynomial total degree accepted by the solver
    samples: int = 10             # curve points used to drop extraneous factors
    component_samples: int = 3    # rational points tried on positive-dimensional solution sets
    elimination_cap: int = 800    # largest deg K * deg T accepted for a signature resultant
    oracle_dps: int = 50          # working precision of the numeric curvature chain
    sample_seed: int = 20240611   # makes sampling deterministic
    correspondence: bool = True   # allow the reparametrization candidate generator

    @classmethod
    def from_file(cls, path: str | Path) -> "Config":
        """Read ``key = value`` lines; ``#`` starts a comment."""
        fields = {f.name: f.type for f in dataclasses.fields(cls)}
        values = {}
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, val = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in fields:
                raise ValueError(f"{path}:{lineno}: unknown setting {key!r}")
            if fields[key] in ("bool", bool):
                values[key] = val.lower() in ("1", "true", "yes", "on")
            else:
                values[key] = int(val)
        return cls(**values)


DEFAULT = Config()
