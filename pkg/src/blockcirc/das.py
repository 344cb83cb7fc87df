"""
Availability-sampling analysis for an [n, k, d] erasure code.

The model: exactly d of the n coded chunks are withheld; each of c light
nodes independently queries s distinct chunks chosen uniformly.

* p1(s): one node hits at least one withheld chunk,
  1 - C(n-d, s)/C(n, s).
* p_c(c0, s): more than c0 of the c nodes hit one (binomial tail in p1).
* chat: the largest c0 whose tail probability still clears the safety
  threshold gamma.
* q_c(s): the c nodes collectively sample at least n-d+1 distinct chunks,
  an inclusion-exclusion over the number of never-sampled chunks:

      q = 1 - sum_{i>=1} (-1)^(i-1) C(d+i-2, d-1) C(n, d+i-1)
                          * [C(n-d+1-i, s) / C(n, s)]^c

  (terms vanish once n-d+1-i < s).  The sum alternates with terms that
  can dwarf the result, so evaluation tracks the largest term magnitude
  and refuses to return a value whose cancellation error could exceed
  the tolerance; callers retry at higher precision.
* ctilde: the smallest node count whose collection probability clears the
  liveness threshold eta.
* s_min: the smallest s meeting both targets.

Binomial coefficients are exact big integers converted to mpmath floats
once per term; mode "rational" swaps every float for an exact Fraction
(affordable only at small scale).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

import mpmath as mp

ENV_DIGITS = "BC_PRECISION_DIGITS"


class PrecisionLossError(ArithmeticError):
    """Cancellation in the alternating sum exceeds the tolerance at the
    configured precision; retry with at least `digits_needed`."""

    def __init__(self, msg, digits_needed):
        super().__init__(msg)
        self.digits_needed = digits_needed


@dataclass(frozen=True)
class PrecisionConfig:
    digits: int = 120
    mode: str = "float"          # "float" or "rational"
    qc_tolerance: float = 1e-12  # absolute error allowed in q_c

    def __post_init__(self):
        if self.mode not in ("float", "rational"):
            raise ValueError(f"unknown precision mode {self.mode!r}")
        if self.mode == "float" and self.digits < 50:
            raise ValueError("float mode requires at least 50 digits")

    @classmethod
    def from_env(cls) -> "PrecisionConfig":
        digits = int(os.environ.get(ENV_DIGITS, 120))
        return cls(digits=digits)


DEFAULT_PRECISION = PrecisionConfig()


@dataclass(frozen=True)
class DasParams:
    n: int
    k: int
    d: int
    c: int
    s: int
    gamma: float = 0.99
    eta: float = 0.99
    chat_target: Optional[int] = None
    ctilde_target: Optional[int] = None

    def __post_init__(self):
        if not (0 < self.k <= self.n and 0 <= self.d <= self.n):
            raise ValueError("need 0 < k <= n and 0 <= d <= n")
        if not 0 < self.s < self.n - self.d + 1:
            raise ValueError("need 0 < s < n - d + 1")
        if not (0 < self.gamma < 1 and 0 < self.eta < 1):
            raise ValueError("thresholds must lie strictly between 0 and 1")
        if self.c < 1:
            raise ValueError("need at least one light node")


def p1(n: int, d: int, s: int, cfg: PrecisionConfig = DEFAULT_PRECISION):
    """Probability one node queries a withheld chunk.

    Accepts the boundary cases (s = 0, d = n) used by sanity checks even
    though the protocol restricts s to 0 < s < n-d+1.
    """
    if not 0 <= s <= n or not 0 <= d <= n:
        raise ValueError("need 0 <= s <= n and 0 <= d <= n")
    num, den = comb(n - d, s), comb(n, s)
    if cfg.mode == "rational":
        return 1 - Fraction(num, den)
    with mp.workdps(cfg.digits):
        return 1 - mp.mpf(num) / mp.mpf(den)


def _binomial_tail(c: int, c0: int, p, cfg: PrecisionConfig):
    """Pr(Y > c0) for Y ~ Binomial(c, p), exact term recursion."""
    if cfg.mode == "rational":
        if p == 1:
            return Fraction(1) if c0 < c else Fraction(0)
        cdf = term = (1 - p) ** c
        for j in range(1, c0 + 1):
            term = term * (c - j + 1) * p / (j * (1 - p))
            cdf += term
        return 1 - cdf
    with mp.workdps(cfg.digits):
        p = mp.mpf(p)
        if p == 1:
            return mp.mpf(1) if c0 < c else mp.mpf(0)
        q = 1 - p
        term = q ** c
        cdf = term
        for j in range(1, c0 + 1):
            term = term * (c - j + 1) / j * p / q
            cdf += term
        return 1 - cdf


def p_c(n: int, d: int, s: int, c: int, c0: int,
        cfg: PrecisionConfig = DEFAULT_PRECISION):
    """Probability that more than c0 of c nodes query a withheld chunk."""
    if not 1 <= c0 <= c:
        raise ValueError("need 1 <= c0 <= c")
    return _binomial_tail(c, c0, p1(n, d, s, cfg), cfg)


def c_hat(n: int, d: int, s: int, c: int, gamma,
          cfg: PrecisionConfig = DEFAULT_PRECISION) -> Optional[int]:
    """Largest c0 with Pr(Y > c0) >= gamma, or None when unachievable.

    The tail is nonincreasing in c0, so one pass over the binomial pmf
    suffices; the scan stays linear for auditability.
    """
    p = p1(n, d, s, cfg)
    if cfg.mode == "rational":
        if p == 1:
            return c - 1 if c > 1 else None
        best = None
        cdf = term = (1 - p) ** c
        for c0 in range(1, c + 1):
            term = term * (c - c0 + 1) * p / (c0 * (1 - p))
            cdf += term
            if 1 - cdf >= gamma:
                best = c0
        return best
    with mp.workdps(cfg.digits):
        p = mp.mpf(p)
        gamma = mp.mpf(gamma)
        if p == 1:
            return c - 1 if c > 1 else None
        q = 1 - p
        term = q ** c
        cdf = term
        best = None
        for c0 in range(1, c + 1):
            term = term * (c - c0 + 1) / c0 * p / q
            cdf += term
            if 1 - cdf >= gamma:
                best = c0
        return best


# ---------------------------------------------------------------------------
# collection probability (coupon-collector tail)

_QC_TERM_CACHE: dict[tuple[int, int, int], list] = {}


def _qc_terms(n: int, d: int, s: int):
    """Exact per-term data for the inclusion-exclusion sum.

    Term i (1-based) is A_i * (num_i/den)^c with
    A_i = C(d+i-2, d-1) * C(n, d+i-1) and num_i = C(n-d+1-i, s).
    Returns tuples (A, num, log10(A), log10(num/den)) plus den once;
    everything integer-exact, the logs only guide precision sizing.
    """
    key = (n, d, s)
    hit = _QC_TERM_CACHE.get(key)
    if hit is not None:
        return hit
    den = comb(n, s)
    lden = math.log10(den)
    terms = []
    A = comb(n, d)              # C(d+i-2, d-1) * C(n, d+i-1) at i = 1
    num = comb(n - d, s)
    i = 1
    while n - d + 1 - i >= s:
        terms.append((A, num, math.log10(A) if A else -math.inf,
                      (math.log10(num) - lden) if num else -math.inf))
        i += 1
        if n - d + 1 - i < s:
            break
        # A_{i+1}/A_i = (d+i-1)/i * (n-d-i+1)/(d+i-1)  [exact integer steps]
        A = A * (d + i - 2) // (i - 1)
        A = A * (n - d - i + 2) // (d + i - 1)
        # C(m-1, s) = C(m, s) * (m - s) / m with m = n-d+2-i
        m = n - d + 2 - i
        num = num * (m - s) // m
    out = (den, terms)
    if len(_QC_TERM_CACHE) > 64:
        _QC_TERM_CACHE.clear()
    _QC_TERM_CACHE[key] = out
    return out


def q_c(n: int, d: int, s: int, c: int,
        cfg: PrecisionConfig = DEFAULT_PRECISION):
    """Probability that c nodes collectively sample >= n-d+1 distinct chunks.

    Raises PrecisionLossError when the alternating terms are so much
    larger than the tolerance that cfg.digits cannot certify the sum;
    the caller should retry with cfg scaled up to `digits_needed`.
    """
    if d < 1:
        raise ValueError("need at least one withheld chunk")
    if not 0 < s < n - d + 1:
        raise ValueError("need 0 < s < n - d + 1")
    if c < 1:
        raise ValueError("need at least one node")
    den, terms = _qc_terms(n, d, s)
    if cfg.mode == "rational":
        total = Fraction(0)
        for i, (A, num, _, _) in enumerate(terms, start=1):
            total += (-1) ** (i - 1) * A * Fraction(num, den) ** c
        return 1 - total

    # Size the work from float log magnitudes before spending precision.
    logs = [la + c * lr for (_, _, la, lr) in terms]
    max_log = max(logs, default=-math.inf)
    count = len(terms) + 1
    tol_log = math.log10(cfg.qc_tolerance)
    est_err_log = max_log - cfg.digits + math.log10(count) + 1
    if est_err_log > tol_log:
        needed = int(max_log + math.log10(count) - tol_log) + 12
        raise PrecisionLossError(
            f"terms reach 1e{max_log:.0f}; {cfg.digits} digits cannot "
            f"certify tolerance {cfg.qc_tolerance}", digits_needed=needed)
    skip_below = tol_log - math.log10(count) - 3
    with mp.workdps(cfg.digits):
        mden = mp.mpf(den)
        total = mp.mpf(0)
        for idx, (A, num, _, _) in enumerate(terms):
            if logs[idx] < skip_below:
                continue
            ratio = mp.mpf(num) / mden
            term = mp.mpf(A) * ratio ** c
            total += -term if idx % 2 else term
        q = 1 - total
        if q < 0:
            assert q > -mp.mpf(cfg.qc_tolerance), "cancellation tracking failed"
            q = mp.mpf(0)
        elif q > 1:
            assert q - 1 < mp.mpf(cfg.qc_tolerance), "cancellation tracking failed"
            q = mp.mpf(1)
        return q


def q_c_auto(n: int, d: int, s: int, c: int,
             cfg: PrecisionConfig = DEFAULT_PRECISION):
    """q_c with automatic precision escalation on cancellation loss."""
    if cfg.mode == "rational":
        return q_c(n, d, s, c, cfg)
    while True:
        try:
            return q_c(n, d, s, c, cfg)
        except PrecisionLossError as exc:
            cfg = PrecisionConfig(digits=max(exc.digits_needed, 2 * cfg.digits),
                                  mode=cfg.mode, qc_tolerance=cfg.qc_tolerance)


def c_tilde(n: int, d: int, s: int, c: int, eta,
            cfg: PrecisionConfig = DEFAULT_PRECISION) -> Optional[int]:
    """Smallest c0 <= c with q_{c0}(s) >= eta, or None when unachievable.

    Linear scan from one node up; collection probability is nondecreasing
    in the node count.  Precision escalates per point as needed.
    """
    for c0 in range(1, c + 1):
        if q_c_auto(n, d, s, c0, cfg) >= eta:
            return c0
    return None


def s_min(params: DasParams, cfg: PrecisionConfig = DEFAULT_PRECISION) -> Optional[int]:
    """Smallest s meeting both performance targets, scanning s upward.

    Both conditions are threshold checks on monotone quantities, so each
    candidate s needs one binomial tail at the safety target and one
    collection probability at the liveness target.
    """
    if params.chat_target is None or params.ctilde_target is None:
        raise ValueError("both performance targets must be set")
    for s in range(1, params.n - params.d + 1):
        tail = p_c(params.n, params.d, s, params.c, params.chat_target, cfg)
        if tail < params.gamma:
            continue
        if q_c_auto(params.n, params.d, s, params.ctilde_target, cfg) >= params.eta:
            return s
    return None


# ---------------------------------------------------------------------------
# protocol bookkeeping


@dataclass(frozen=True)
class MetricsReport:
    """Per-code protocol metrics for the side-by-side comparison table."""

    name: str
    n: int
    k: int
    d: Optional[int]
    n0: int
    k0: int
    d0: int
    local_codes: int
    digests: int
    header_merkle: int
    header_kzg: int
    cfp_chunks: int
    chunks_per_decoding_node: int
    s_min: Optional[int] = None
    chat: Optional[int] = None
    ctilde: Optional[int] = None

    @property
    def overhead(self) -> float:
        return self.n / self.k

    @property
    def rel_distance(self) -> Optional[float]:
        return None if self.d is None else self.d / self.n

    def to_json(self) -> dict:
        out = {f: getattr(self, f) for f in self.__dataclass_fields__}
        out["overhead"] = self.overhead
        out["rel_distance"] = self.rel_distance
        return out


def protocol_metrics(name: str, n: int, k: int, d: Optional[int],
                     local_codes: int, k0: int, n0: int = 0, d0: int = 0,
                     kzg_homomorphic_precompute: Optional[int] = None) -> MetricsReport:
    """Digest/header/fraud-proof counts for a code with `local_codes`
    local codewords of dimension k0.

    One digest per local codeword plus one for the whole codeword; the
    Merkle header stores all of them.  For the square product code under
    a homomorphic commitment, row+column digests of the information part
    suffice (2*k0 precomputed, rest derived), so its header stores
    2*k0 + 1; no analogous reduction is known for the other layouts.
    """
    digests = local_codes + 1
    header_kzg = digests
    if kzg_homomorphic_precompute is not None:
        header_kzg = kzg_homomorphic_precompute + 1
    return MetricsReport(name=name, n=n, k=k, d=d, n0=n0, k0=k0, d0=d0,
                         local_codes=local_codes, digests=digests,
                         header_merkle=digests, header_kzg=header_kzg,
                         cfp_chunks=k0, chunks_per_decoding_node=k0)


# ---------------------------------------------------------------------------
# curve emission (CSV-ready rows)


def p1_curve(n: int, d: int, s_max: int, cfg: PrecisionConfig = DEFAULT_PRECISION):
    return [(s, float(p1(n, d, s, cfg))) for s in range(1, s_max + 1)]


def chat_curve(n: int, d: int, s: int, c_values, gamma,
               cfg: PrecisionConfig = DEFAULT_PRECISION):
    out = []
    for c in c_values:
        ch = c_hat(n, d, s, c, gamma, cfg)
        out.append((c, -1 if ch is None else ch))
    return out


def qc_curve(n: int, d: int, s: int, c_values,
             cfg: PrecisionConfig = DEFAULT_PRECISION):
    return [(c, float(q_c_auto(n, d, s, c, cfg))) for c in c_values]
