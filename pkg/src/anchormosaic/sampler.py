"""Seeded Poisson point-process sampling in boxes of R^n.

Counting happens in a window of the slice plane; sampling enlarges it by a
buffer in every coordinate so that the mosaic near the window is unaffected
by the truncation, up to spheres larger than the buffer. The replicate
streams use a counter-based generator keyed by (seed, replicate_index), so
parallel replicates are reproducible regardless of scheduling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .constants import ball_volume

__all__ = [
    "SamplingConfig",
    "sample_poisson_box",
    "choose_buffer",
    "config_to_json",
    "config_from_json",
]


@dataclass(frozen=True)
class SamplingConfig:
    """Poisson sampling configuration.

    ``window`` is the counting region: an axis-aligned box in the slice plane
    given as k (low, high) pairs; ``buffer`` is the margin added to every
    coordinate of the sampled box, including the n - k coordinates orthogonal
    to the slice, which are sampled in [-buffer, buffer].
    """

    n: int
    rho: float
    window: tuple[tuple[float, float], ...]
    buffer: float
    seed: int = 0
    replicate_index: int = 0
    max_expected_points: float = 1e7

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"window defines k={self.k}, need 1 <= k <= n={self.n}")
        if not (math.isfinite(self.rho) and self.rho > 0):
            raise ValueError(f"density must be positive, got {self.rho}")
        if self.buffer < 0:
            raise ValueError(f"buffer must be non-negative, got {self.buffer}")
        for lo, hi in self.window:
            if not lo < hi:
                raise ValueError(f"degenerate window side ({lo}, {hi})")
        if self.n > self.k and self.buffer == 0:
            raise ValueError("a positive buffer is required when n > k")

    @property
    def k(self) -> int:
        return len(self.window)

    @property
    def window_volume(self) -> float:
        return float(np.prod([hi - lo for lo, hi in self.window]))

    def box_bounds(self) -> tuple[np.ndarray, np.ndarray]:
        lows = [lo - self.buffer for lo, _ in self.window] + [-self.buffer] * (
            self.n - self.k
        )
        highs = [hi + self.buffer for _, hi in self.window] + [self.buffer] * (
            self.n - self.k
        )
        return np.asarray(lows), np.asarray(highs)


def config_to_json(cfg: SamplingConfig) -> str:
    """Serialize a sampling configuration (stable key order)."""
    payload = {
        "n": cfg.n,
        "rho": cfg.rho,
        "window": [[lo, hi] for lo, hi in cfg.window],
        "buffer": cfg.buffer,
        "seed": cfg.seed,
        "replicate_index": cfg.replicate_index,
        "max_expected_points": cfg.max_expected_points,
    }
    return json.dumps(payload, sort_keys=True)


def config_from_json(text: str) -> SamplingConfig:
    payload = json.loads(text)
    payload["window"] = tuple((float(lo), float(hi)) for lo, hi in payload["window"])
    return SamplingConfig(**payload)


def _rng(cfg: SamplingConfig) -> np.random.Generator:
    key = (int(cfg.seed) % 2**64) + ((int(cfg.replicate_index) % 2**64) << 64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_poisson_box(cfg: SamplingConfig) -> np.ndarray:
    """Draw one Poisson(rho * vol) sample of uniform points in the buffered box.

    Deterministic given (seed, replicate_index); distinct replicate indices
    give independent streams.
    """
    lows, highs = cfg.box_bounds()
    volume = float(np.prod(highs - lows))
    mean = cfg.rho * volume
    if mean > cfg.max_expected_points:
        raise ValueError(
            f"expected point count {mean:.3g} exceeds the cap {cfg.max_expected_points:.3g}"
        )
    rng = _rng(cfg)
    count = int(rng.poisson(mean))
    return rng.uniform(lows, highs, size=(count, cfg.n))


def choose_buffer(cfg: SamplingConfig, r_quantile: float) -> float:
    """Buffer size at which interval radii exceed the buffer with probability
    at most 1 - r_quantile.

    Uses the radius law of the largest-shape interval type: the transformed
    radius rho * nu_n * r^n is Gamma(k + 1 - k/n)-distributed, inverted here
    by bisection on the regularized lower incomplete Gamma function.
    """
    if not 0.0 < r_quantile < 1.0:
        raise ValueError(f"quantile must lie in (0, 1), got {r_quantile}")
    shape = cfg.k + 1.0 - cfg.k / cfg.n
    hi = max(shape, 1.0)
    while specfun.regularized_lower_gamma(shape, hi) < r_quantile:
        hi *= 2.0
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if specfun.regularized_lower_gamma(shape, mid) < r_quantile:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    return float((x / (cfg.rho * ball_volume(cfg.n))) ** (1.0 / cfg.n))
