"""
Monte Carlo cross-check of the availability-sampling formulas.

Each trial hides d uniformly random chunks, lets c nodes draw s distinct
chunks each, and records how many nodes hit a hidden chunk (Y) and how
many distinct chunks were collected (Z).  From the per-trial tallies the
report estimates p1 = Pr(one node hits), Pr(Y > c0), and
Pr(Z >= n - d + 1), with binomial standard errors.

Trials are keyed substreams of the seed, so results are identical for
any worker count and for both sampling backends.  The compiled kernel is
preferred when built; the numpy implementation is the fallback.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from . import _sampler_py
from .das import DasParams

try:
    from . import _sampler as _compiled
except ImportError:  # extension not built; numpy path covers everything
    _compiled = None

DEFAULT_BACKEND = "compiled" if _compiled is not None else "numpy"


def available_backends() -> list[str]:
    return (["compiled"] if _compiled is not None else []) + ["numpy"]


def _backend_module(name: str):
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled sampler is not built")
        return _compiled
    if name == "numpy":
        return _sampler_py
    raise ValueError(f"unknown backend {name!r}")


@dataclass(frozen=True)
class SimConfig:
    params: DasParams
    trials: int
    seed: int

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("need at least one trial")


@dataclass
class SimReport:
    trials: int
    seed: int
    backend: str
    p1_est: float
    p1_se: float
    z_est: float
    z_se: float
    y_tail: dict[int, float] = dc_field(default_factory=dict)
    y_tail_se: dict[int, float] = dc_field(default_factory=dict)
    y_counts: np.ndarray = dc_field(default=None, repr=False)
    z_counts: np.ndarray = dc_field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "backend": self.backend,
            "estimates": {
                "p1": self.p1_est,
                "z_success": self.z_est,
                "y_tail": {str(c0): v for c0, v in self.y_tail.items()},
            },
            "std_errors": {
                "p1": self.p1_se,
                "z_success": self.z_se,
                "y_tail": {str(c0): v for c0, v in self.y_tail_se.items()},
            },
        }


def _binom_se(phat: float, trials: int) -> float:
    return float(np.sqrt(phat * (1.0 - phat) / trials))


def simulate(config: SimConfig, c0_values: Sequence[int] = (),
             workers: int = 1, backend: Optional[str] = None) -> SimReport:
    """Run the trials and aggregate estimators.

    Worker threads split the trial range; per-trial substreams make the
    result independent of the split.  The compiled kernel drops the GIL,
    so workers > 1 gives real parallelism there.
    """
    p = config.params
    name = backend or DEFAULT_BACKEND
    mod = _backend_module(name)
    trials = config.trials
    y = np.zeros(trials, dtype=np.int64)
    z = np.zeros(trials, dtype=np.int64)
    if workers <= 1:
        mod.run_trials(p.n, p.d, p.c, p.s, config.seed, 0, trials, y, z)
    else:
        bounds = np.linspace(0, trials, workers + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(mod.run_trials, p.n, p.d, p.c, p.s,
                                config.seed, int(a), int(b), y, z)
                    for a, b in zip(bounds[:-1], bounds[1:]) if a < b]
            for f in futs:
                f.result()
    node_obs = p.c * trials
    p1_est = float(y.sum()) / node_obs
    z_est = float((z >= p.n - p.d + 1).mean())
    rep = SimReport(trials=trials, seed=config.seed, backend=name,
                    p1_est=p1_est, p1_se=_binom_se(p1_est, node_obs),
                    z_est=z_est, z_se=_binom_se(z_est, trials),
                    y_counts=y, z_counts=z)
    for c0 in c0_values:
        est = float((y > c0).mean())
        rep.y_tail[c0] = est
        rep.y_tail_se[c0] = _binom_se(est, trials)
    return rep
