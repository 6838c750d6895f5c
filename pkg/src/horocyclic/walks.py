"""Simple random walks on DL(p, q) and on the lamplighter group."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import kernels

# seeds used by the acceptance suite
SEED_DL22 = 7
SEED_DL23 = 7
SEED_LAMPLIGHTER = 11

Z95 = 1.959963984540054


class ParamsNotSquare(ValueError):
    pass


@dataclass(frozen=True)
class WalkConfig:
    p: int
    q: int
    steps: int
    trials: int
    seed: int
    lamplighter: bool = False

    def __post_init__(self):
        if self.steps < 1 or self.trials < 1:
            raise ValueError("steps and trials must be >= 1")
        if self.p < 2 or self.q < 2:
            raise ValueError("p, q must be >= 2")


@dataclass
class WalkStats:
    checkpoints: list[int]
    mean_distance: list[float]
    half_width: list[float]
    speed: float
    return_frequency: float
    config: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def checkpoints_for(n: int) -> list[int]:
    out = [0]
    t = 10
    while t < n:
        out.append(t)
        t *= 10
    out.append(n)
    return out


def trial_choices(cfg: WalkConfig, trial: int) -> np.ndarray:
    """Neighbour choices of one trial; generator seeded by (seed, trial)."""
    rng = np.random.default_rng([cfg.seed, trial])
    degree = cfg.p + cfg.q
    return rng.integers(0, degree, size=cfg.steps, dtype=np.int64)


def trace(cfg: WalkConfig, trial: int) -> np.ndarray:
    """Distance to the start at times 0..n for one trial."""
    c = trial_choices(cfg, trial)
    if cfg.lamplighter:
        return kernels.lamplighter_walk(cfg.p, c)
    return kernels.dl_walk(cfg.p, cfg.q, c)


def _summarise(cfg: WalkConfig, traces: np.ndarray) -> WalkStats:
    cps = checkpoints_for(cfg.steps)
    at = traces[:, cps].astype(float)
    mean = at.mean(axis=0)
    if cfg.trials > 1:
        sd = at.std(axis=0, ddof=1)
    else:
        sd = np.zeros_like(mean)
    hw = Z95 * sd / math.sqrt(cfg.trials)
    even = traces[:, 2::2]
    ret = float((even == 0).mean()) if even.size else 0.0
    return WalkStats(cps, mean.tolist(), hw.tolist(), float(mean[-1] / cfg.steps), ret,
                     asdict(cfg))


def srw_run(cfg: WalkConfig) -> WalkStats:
    traces = np.stack([trace(cfg, t) for t in range(cfg.trials)])
    return _summarise(cfg, traces)


def lamplighter_walk(cfg: WalkConfig) -> WalkStats:
    if cfg.p != cfg.q:
        raise ParamsNotSquare(f"lamplighter walk needs p == q, got {cfg.p}, {cfg.q}")
    if not cfg.lamplighter:
        cfg = WalkConfig(cfg.p, cfg.q, cfg.steps, cfg.trials, cfg.seed, True)
    return srw_run(cfg)


def agreement(a: WalkStats, b: WalkStats, widths: float = 3.0) -> list[bool]:
    """|mean_a − mean_b| <= widths · half-width of the difference, per checkpoint."""
    out = []
    for ma, mb, ha, hb in zip(a.mean_distance, b.mean_distance, a.half_width, b.half_width):
        out.append(abs(ma - mb) <= widths * math.hypot(ha, hb) + 1e-12)
    return out
