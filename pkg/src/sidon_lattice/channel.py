"""Insertion/deletion channel simulator driving the encoders and decoders.

Errors are drawn uniformly from the design shape (every correctable pattern
has positive probability), or, in overload mode, from the annulus between an
enlarged shape and the design shape.  Randomness comes from a counter-based
Philox generator so runs are reproducible from the seed alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry
from .codes import FiniteCode, SyndromeTable, decode_radius_r, encode
from .geometry import Shape


@dataclass(frozen=True)
class ChannelConfig:
    r_plus: int
    r_minus: int
    mode: str = "uniform"       # "uniform" | "overload"
    extra: int = 0              # annulus width in overload mode
    seed: int = 0
    trials: int = 0

    def __post_init__(self):
        if self.r_plus < 0 or self.r_minus < 0 or self.trials < 0:
            raise ValueError("radii and trial count must be nonnegative")
        if self.mode not in ("uniform", "overload"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "overload" and self.extra < 1:
            raise ValueError("overload mode needs extra >= 1")


@dataclass
class TrialStats:
    trials: int = 0
    corrected: int = 0
    detected: int = 0
    miscorrected: int = 0

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "corrected": self.corrected,
            "detected": self.detected,
            "miscorrected": self.miscorrected,
        }


def make_rng(seed: int, shard: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(seed, shard)))


def error_support(cfg: ChannelConfig, n: int) -> list[tuple[int, ...]]:
    """The error patterns the channel draws from, in deterministic order."""
    base = geometry.shape_points(Shape(n, cfg.r_plus, cfg.r_minus))
    if cfg.mode == "uniform":
        return base
    outer = geometry.shape_points(
        Shape(n, cfg.r_plus + cfg.extra, cfg.r_minus + cfg.extra)
    )
    inner = set(base)
    support = [e for e in outer if e not in inner]
    if not support:
        raise ValueError("overload annulus is empty")
    return support


def apply_errors(x, cfg: ChannelConfig, rng: np.random.Generator,
                 support: list | None = None, modulus: int | None = None):
    """Add a random error pattern to x; returns (received word, error)."""
    x = tuple(int(v) for v in x)
    if support is None:
        support = error_support(cfg, len(x))
    e = support[int(rng.integers(len(support)))]
    if len(e) != len(x):
        raise ValueError("error pattern dimension mismatch")
    y = tuple(a + b for a, b in zip(x, e))
    if modulus is not None:
        y = tuple(a % modulus for a in y)
    return y, e


def run_simulation(code: FiniteCode, table: SyndromeTable, cfg: ChannelConfig) -> TrialStats:
    """Monte-carlo encode / corrupt / decode loop; deterministic given the seed."""
    if cfg.mode == "uniform" and (
        table.r_plus < cfg.r_plus or table.r_minus < cfg.r_minus
    ):
        raise ValueError("decoder table radii are smaller than the channel radii")
    rng = make_rng(cfg.seed)
    support = error_support(cfg, code.n)
    stats = TrialStats()
    for _ in range(cfg.trials):
        info = tuple(int(v) for v in rng.integers(code.v, size=code.n - 1))
        x = encode(code, info)
        y, _ = apply_errors(x, cfg, rng, support=support, modulus=code.v)
        result = decode_radius_r(table, code, y)
        stats.trials += 1
        if result.status == "detected":
            stats.detected += 1
        elif result.codeword == x:
            stats.corrected += 1
        else:
            stats.miscorrected += 1
    return stats
