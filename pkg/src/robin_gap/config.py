"""Run configuration shared by the command line and the acceptance suite."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .errors import DomainError

DEFAULT_TOLERANCES = {
    "zero_residual": 1e-12,
    "dtn_routes": 1e-13,
    "growth_slope_lo": 0.95,
    "growth_slope_hi": 1.05,
    "c1_rel": 1e-6,
    "c2_rel": 1e-3,
    "alpha_flag_rel": 1e-2,
    "opnorm_exponent": 0.02,
    "opnorm_sup_rel": 1e-2,
    "s1_growth": 0.2,
    "s1_r_squared": 0.99,
    "drift_slope_lo": -2.1,
    "drift_slope_hi": -1.9,
    "n_matrix_rel": 1e-10,
}


def _default_grid() -> list[float]:
    return [10.0 ** (2 + 0.5 * i) for i in range(9)]


@dataclass
class RunConfig:
    """Parameters of a run; every field can be overridden from a flat JSON file."""

    n_max: int = 2000
    m_trunc: int = 64
    q_trunc: int = 64
    beta_grid: list[float] = field(default_factory=_default_grid)
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output_dir: str = "."

    def validate(self) -> "RunConfig":
        if self.n_max < 10:
            raise DomainError("n_max must be >= 10")
        if self.m_trunc < 8:
            raise DomainError("m_trunc must be >= 8")
        if self.q_trunc < 32:
            raise DomainError("q_trunc must be >= 32")
        g = [float(b) for b in self.beta_grid]
        if len(g) < 2 or any(b <= 0 for b in g) or any(b >= c for b, c in zip(g, g[1:])):
            raise DomainError("beta_grid must be positive and strictly increasing")
        self.beta_grid = g
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise DomainError(f"unknown tolerance keys: {sorted(unknown)}")
        self.tolerances = {**DEFAULT_TOLERANCES, **{k: float(v) for k, v in self.tolerances.items()}}
        return self

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data).validate()

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise DomainError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise DomainError("config file must hold a flat JSON object")
        return cls.from_dict(data)
