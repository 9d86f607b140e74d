"""Phonon-number statistics of a single-mode zero-mean Gaussian state.

Two exact evaluation routes are provided.  The hypergeometric closed form

    P(k) = 2F1((k+1)/2, (k+2)/2; 1; z) / [(1 + n/u)^(k+1) sqrt(u)],
    u = n^2 - |m|^2,   z = |m|^2 / (n(n+1) - |m|^2)^2,

is valid for |m| < n (there z lies in [0, 1)).  Strongly squeezed, weakly
thermal states have |m| >= n while still physical (n(n+1) >= |m|^2); for
those the distribution is generated from the ordered moment generating
function G(lam) = [(1 + (1-lam) n)^2 - (1-lam)^2 |m|^2]^(-1/2), whose Taylor
coefficients obey a stable three-term recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class UnsupportedRegimeError(ValueError):
    """Raised for inputs outside the supported analytic domain."""


class NonConvergenceError(ArithmeticError):
    """Raised when a series fails to converge; carries the argument set."""


_TAIL_TARGET = 1e-12
_KMAX_CAP = 100_000


@dataclass(frozen=True)
class LocalGaussian:
    """Reduced single-mode state: occupation n and anomalous moment m = -<a^2>."""

    n: float
    m: complex = 0.0

    def __post_init__(self):
        if self.n < 0.0:
            raise ValueError(f"occupation must be non-negative, got {self.n}")
        if self.n * (self.n + 1.0) - abs(self.m) ** 2 < -1e-12:
            raise ValueError(
                f"unphysical state: n(n+1)={self.n * (self.n + 1.0):g} "
                f"< |m|^2={abs(self.m) ** 2:g}"
            )


@dataclass(frozen=True)
class Pmf:
    """Truncated number distribution over k = 0..k_max.

    tail_bound is the probability mass beyond k_max; tail_mean the
    corresponding contribution to the first moment (estimated from the
    asymptotic geometric decay of the distribution).
    """

    probabilities: np.ndarray
    tail_bound: float
    tail_mean: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "probabilities",
                           np.asarray(self.probabilities, dtype=float))
        if np.any(self.probabilities < 0.0):
            raise ValueError("probabilities must be non-negative")
        total = math.fsum(self.probabilities) + self.tail_bound
        if not (1.0 - 1e-12 <= total <= 1.0 + 1e-12):
            raise ValueError(f"pmf not normalized: sum + tail = {total!r}")

    @property
    def k_max(self) -> int:
        return len(self.probabilities) - 1

    def mean(self) -> float:
        """First moment including the tail correction."""
        k = np.arange(len(self.probabilities))
        return math.fsum(k * self.probabilities) + self.tail_mean

    def write_csv(self, path) -> None:
        with open(path, "w") as f:
            f.write("k,probability\n")
            for k, p in enumerate(self.probabilities):
                f.write(f"{k},{float(p)!r}\n")


def _geometric_tail_mean(q: float, k_max: int) -> float:
    # sum_{k > K} k (1-q) q^k = q^{K+1} ((K+1) - K q) / (1 - q)
    if q == 0.0:
        return 0.0
    return q ** (k_max + 1) * ((k_max + 1) - k_max * q) / (1.0 - q)


def geometric_pmf(n: float, k_max: int | None = None) -> Pmf:
    """Thermal number distribution P(k) = n^k / (1+n)^(k+1)."""
    if n < 0.0:
        raise ValueError(f"occupation must be non-negative, got {n}")
    if n == 0.0:
        size = 1 if k_max is None else k_max + 1
        probs = np.zeros(size)
        probs[0] = 1.0
        return Pmf(probs, tail_bound=0.0)
    q = n / (1.0 + n)
    if k_max is None:
        k_max = min(_KMAX_CAP,
                    max(0, math.ceil(math.log(_TAIL_TARGET) / math.log(q)) - 1))
        while q ** (k_max + 1) > _TAIL_TARGET and k_max < _KMAX_CAP:
            k_max += 1
    probs = (1.0 / (1.0 + n)) * q ** np.arange(k_max + 1)
    return Pmf(probs, tail_bound=q ** (k_max + 1),
               tail_mean=_geometric_tail_mean(q, k_max))


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric function for real arguments with |z| < 1.

    Direct series for z <= 0.5; Euler transformation
    (1-z)^(c-a-b) 2F1(c-a, c-b; c; z) for 0.5 < z < 1, which terminates for
    the parameter family used by the number distribution.
    """
    if c <= 0.0 and c == int(c):
        raise ValueError(f"c must not be a non-positive integer, got {c}")
    if z >= 1.0 or z <= -1.0:
        raise NonConvergenceError(f"hyp2f1 defined for |z| < 1, got {(a, b, c, z)}")
    if z > 0.5:
        return (1.0 - z) ** (c - a - b) * _gauss_series(c - a, c - b, c, z)
    return _gauss_series(a, b, c, z)


def _gauss_series(a: float, b: float, c: float, z: float,
                  rtol: float = 1e-16, max_terms: int = 100_000) -> float:
    term, total = 1.0, 1.0
    for j in range(max_terms):
        term *= (a + j) * (b + j) / ((c + j) * (1.0 + j)) * z
        total += term
        if term == 0.0 or abs(term) <= rtol * abs(total):
            return total
    raise NonConvergenceError(f"series did not converge for {(a, b, c, z)}")


def _log_hyp_pmf_term(k: int, n: float, am: float) -> float:
    """log P(k) via the hypergeometric closed form, |m| < n.

    Combined in log space because the hypergeometric factor and the
    prefactor separately overflow/underflow as |m| -> n.
    """
    u = (n - am) * (n + am)                       # n^2 - |m|^2 > 0
    d = n * (n + 1.0) - am * am
    z = (am / d) ** 2
    log_pre = -(k + 1) * math.log1p(n / u) - 0.5 * math.log(u)
    if z == 0.0:
        return log_pre
    # Euler transform: terminating series with positive terms, summed in
    # log scale; one_mz computed in factored form to avoid cancellation.
    one_mz = (n - am) * (n + am + 1.0) * (d + am) / d ** 2
    a, b = 0.5 * (1 - k), -0.5 * k
    log_term, log_sum = 0.0, 0.0
    j = 0
    while True:
        ratio = (a + j) * (b + j) / ((1.0 + j) * (1.0 + j)) * z
        if ratio == 0.0:
            break
        log_term += math.log(ratio)   # ratio > 0: both Pochhammers negative
        log_sum = max(log_sum, log_term) + math.log1p(
            math.exp(min(log_sum, log_term) - max(log_sum, log_term)))
        j += 1
        if a + j == 0.0 or b + j == 0.0:
            break
        if log_term < log_sum - 40.0:
            break
    return log_pre - 0.5 * (2 * k + 1) * math.log(one_mz) + log_sum


def _pmf_hypergeometric(n: float, am: float, k_max: int) -> np.ndarray:
    return np.array([math.exp(_log_hyp_pmf_term(k, n, am))
                     for k in range(k_max + 1)])


def _pmf_generating(n: float, am: float, k_max: int) -> np.ndarray:
    """Taylor coefficients of G(lam) = Q(lam)^(-1/2) by recurrence."""
    u = n * n - am * am
    c0 = 1.0 + 2.0 * n + u
    c1 = -2.0 * (n + u)
    c2 = u
    probs = np.empty(k_max + 1)
    probs[0] = 1.0 / math.sqrt(c0)
    if k_max >= 1:
        probs[1] = -0.5 * c1 * probs[0] / c0
    for k in range(1, k_max):
        probs[k + 1] = -((2 * k + 1) * c1 * probs[k]
                         + 2 * k * c2 * probs[k - 1]) / (2.0 * (k + 1) * c0)
    return np.clip(probs, 0.0, None)


def general_pmf(g: LocalGaussian, k_max: int | None = None) -> Pmf:
    """Number distribution of an arbitrary physical zero-mean Gaussian mode.

    Reduces exactly to :func:`geometric_pmf` at m = 0.  Uses the
    hypergeometric closed form where it applies (|m| < n) and the
    generating-function recurrence on the rest of the physical domain.
    """
    am = abs(g.m)
    if am == 0.0:
        return geometric_pmf(g.n, k_max)
    n = g.n
    # asymptotic decay ratio from the smaller root of the generating
    # function's quadratic: q = (n + |m|) / (n + |m| + 1)
    q = (n + am) / (n + am + 1.0)
    if k_max is None:
        k_guess = max(8, math.ceil(math.log(_TAIL_TARGET) / math.log(q)) + 8)
        k_max = min(_KMAX_CAP, k_guess)
        auto = True
    else:
        auto = False
    route = _pmf_hypergeometric if am < n else _pmf_generating
    probs = route(n, am, k_max)
    if auto:
        while 1.0 - math.fsum(probs) > _TAIL_TARGET and k_max < _KMAX_CAP:
            k_max = min(_KMAX_CAP, 2 * k_max)
            probs = route(n, am, k_max)
    tail = max(0.0, 1.0 - math.fsum(probs))
    # treat the tail as geometric with ratio q for the mean correction
    tail_mean = tail * ((k_max + 1) - k_max * q) / (1.0 - q)
    return Pmf(probs, tail_bound=tail, tail_mean=tail_mean)


def sample(pmf: Pmf, count: int, seed) -> np.ndarray:
    """Draw i.i.d. phonon counts by inverse-CDF; deterministic for a seed.

    ``seed`` may be anything accepted by numpy's default_rng, including an
    already-constructed Generator.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    cdf = np.cumsum(pmf.probabilities)
    u = rng.random(count) * cdf[-1]
    return np.searchsorted(cdf, u, side="right").astype(np.int64)
