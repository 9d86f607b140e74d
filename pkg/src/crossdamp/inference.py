"""Fisher information and estimation bounds for phonon-number measurements.

The six estimation parameters are ordered (n1(0), n2(0), coupling, gamma,
gamma12, nbar).  gamma and gamma12 are treated as independent coordinates
throughout; the decoherence-free condition gamma12 = gamma is only ever an
evaluation point, never a constraint imposed before differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .dynamics import population
from .model import ModelParams
from .phonon_stats import LocalGaussian, Pmf, general_pmf, geometric_pmf, sample

PARAM_NAMES = ("n1_0", "n2_0", "coupling", "gamma", "gamma12", "nbar")


class DegenerateModelError(ValueError):
    """Raised when the statistical model carries no usable information."""


class NonIdentifiableError(ValueError):
    """Raised when the target parameter has no gradient at the operating point."""


@dataclass(frozen=True)
class ParamVector:
    """Estimation parameters in the fixed order of :data:`PARAM_NAMES`."""

    n1_0: float
    n2_0: float
    coupling: float
    gamma: float
    gamma12: float
    nbar: float

    def __post_init__(self):
        if self.n1_0 < 0.0 or self.n2_0 < 0.0 or self.nbar < 0.0:
            raise ValueError("occupations must be non-negative")
        if self.gamma < 0.0 or not 0.0 <= self.gamma12 <= self.gamma:
            raise ValueError(
                f"need 0 <= gamma12 <= gamma, got ({self.gamma12}, {self.gamma})"
            )

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in PARAM_NAMES])

    @classmethod
    def from_array(cls, values) -> "ParamVector":
        return cls(**dict(zip(PARAM_NAMES, map(float, values))))

    def model(self, omega0: float = 0.0) -> ModelParams:
        return ModelParams(omega0=omega0, coupling=self.coupling,
                           gamma=self.gamma, gamma12=self.gamma12, nbar=self.nbar)


@dataclass(frozen=True)
class FisherMatrix:
    """6x6 classical Fisher information matrix at evaluation time t."""

    matrix: np.ndarray
    t: float

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=float))
        if self.matrix.shape != (6, 6):
            raise ValueError(f"expected 6x6 matrix, got {self.matrix.shape}")

    def entry(self, alpha: int, beta: int) -> float:
        """1-based accessor matching the conventional F_{alpha beta} labels."""
        return float(self.matrix[alpha - 1, beta - 1])


@dataclass(frozen=True)
class CrbReport:
    """Cramer-Rao lower bounds for M independent repetitions."""

    per_parameter: np.ndarray      # 1/(M F_aa); inf where F_aa = 0
    matrix_bound: np.ndarray       # pinv(F)/M
    singular: bool
    repetitions: int

    def to_dict(self) -> dict:
        return {
            "parameters": list(PARAM_NAMES),
            "per_parameter": [float(v) for v in self.per_parameter],
            "matrix_bound": [[float(v) for v in row] for row in self.matrix_bound],
            "singular": self.singular,
            "repetitions": self.repetitions,
        }


def population_gradient(theta: ParamVector, t) -> np.ndarray:
    """Analytic gradient of n1(t) with respect to the six parameters.

    Accepts scalar or array t; returns shape (6,) or (6, len(t)).  Evaluated
    in grouped exponential form, finite at the decoherence-free point.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0):
        raise ValueError("t must be non-negative")
    gp = theta.gamma + theta.gamma12
    gm = theta.gamma - theta.gamma12
    ep, em = np.exp(-gp * t), np.exp(-gm * t)
    cosh_term = 0.5 * (em + ep)      # e^{-g t} cosh(g12 t)
    sinh_term = 0.5 * (em - ep)      # e^{-g t} sinh(g12 t)
    eg = np.exp(-theta.gamma * t)
    c2 = np.cos(theta.coupling * t) ** 2
    nsum = theta.n1_0 + theta.n2_0

    g1 = eg * c2 + 0.5 * (cosh_term - eg)
    g2 = eg * (1.0 - c2) + 0.5 * (cosh_term - eg)
    g3 = t * eg * (theta.n2_0 - theta.n1_0) * np.sin(2.0 * theta.coupling * t)
    g4 = (-t * eg * (theta.n1_0 * c2 + theta.n2_0 * (1.0 - c2))
          + 0.5 * nsum * t * (eg - cosh_term)
          + theta.nbar * t * cosh_term)
    g5 = t * sinh_term * (0.5 * nsum - theta.nbar)
    g6 = 1.0 - cosh_term
    return np.stack([np.broadcast_to(g, t.shape) for g in (g1, g2, g3, g4, g5, g6)])


def fim_thermal(theta: ParamVector, t: float) -> FisherMatrix:
    """Rank-one Fisher matrix for a thermal (geometric-statistics) start."""
    n1 = population(1, (theta.n1_0, theta.n2_0), theta.model(), t)
    if n1 <= 0.0:
        raise DegenerateModelError(
            "n1(t) = 0: the number distribution is a point mass and the "
            "Fisher matrix is undefined"
        )
    grad = population_gradient(theta, t)
    return FisherMatrix(np.outer(grad, grad) / (n1 * (1.0 + n1)), t=float(t))


StatePath = Callable[[ParamVector, float], LocalGaussian]


def fim_general(path: StatePath, theta: ParamVector, t: float,
                rel_step: float = 1e-6) -> FisherMatrix:
    """Fisher matrix by direct summation over the number distribution.

    ``path`` maps (theta, t) to the reduced single-mode Gaussian state of
    ion 1.  Parameter derivatives of the distribution are taken by central
    finite differences through the state path.
    """
    center = path(theta, t)
    base = general_pmf(center)
    k_max = base.k_max
    values = theta.as_array()
    derivs = np.empty((6, k_max + 1))
    for alpha in range(6):
        h = rel_step * max(abs(values[alpha]), 1e-3)
        lo, hi = _shifted(values, alpha, -h), _shifted(values, alpha, +h)
        h_eff = 0.5 * (hi[alpha] - lo[alpha])
        p_hi = general_pmf(path(ParamVector.from_array(hi), t), k_max=k_max)
        p_lo = general_pmf(path(ParamVector.from_array(lo), t), k_max=k_max)
        derivs[alpha] = (p_hi.probabilities - p_lo.probabilities) / (2.0 * h_eff)
    mask = base.probabilities > 1e-300
    weighted = derivs[:, mask] / np.sqrt(base.probabilities[mask])
    matrix = weighted @ weighted.T
    return FisherMatrix(0.5 * (matrix + matrix.T), t=float(t))


def _shifted(values: np.ndarray, alpha: int, h: float) -> np.ndarray:
    """Shift one coordinate, clipping to the admissible region."""
    out = values.copy()
    out[alpha] += h
    if alpha in (0, 1, 5):
        out[alpha] = max(0.0, out[alpha])
    elif alpha == 3:                      # gamma >= gamma12
        out[alpha] = max(out[alpha], values[4])
    elif alpha == 4:                      # 0 <= gamma12 <= gamma
        out[alpha] = min(max(0.0, out[alpha]), values[3])
    return out


@dataclass(frozen=True)
class DfsNullReport:
    """Late-time scaling diagnostics at the decoherence-free point."""

    slope: float                  # log-log slope of F44(t)
    f44: float                    # at the last grid time
    f55: float
    f45: float
    f44_f55_reldiff: float
    f44_plus_f45_reldiff: float
    t_grid: np.ndarray
    f44_series: np.ndarray


def dfs_null_scaling(theta: ParamVector, t_grid) -> DfsNullReport:
    """Fit the late-time growth of the damping-rate information.

    Requires gamma12 == gamma exactly.  Rejects the degenerate start
    n1(0) + n2(0) = 2 nbar, where the late-time gradient prefactor
    vanishes and no power law exists.
    """
    if theta.gamma12 != theta.gamma:
        raise ValueError("dfs_null_scaling requires gamma12 == gamma exactly")
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 2 or np.any(np.diff(t_grid) <= 0.0):
        raise ValueError("t_grid must be strictly increasing with >= 2 points")
    prefactor = theta.nbar - 0.5 * (theta.n1_0 + theta.n2_0)
    if abs(prefactor) <= 1e-12 * max(1.0, theta.nbar):
        raise DegenerateModelError(
            "late-time gradient prefactor vanishes for n1(0)+n2(0) = 2 nbar; "
            "no power-law fit is possible"
        )
    f44 = np.array([fim_thermal(theta, t).entry(4, 4) for t in t_grid])
    slope = np.polyfit(np.log(t_grid), np.log(f44), 1)[0]
    last = fim_thermal(theta, float(t_grid[-1]))
    f44_l, f55_l, f45_l = last.entry(4, 4), last.entry(5, 5), last.entry(4, 5)
    return DfsNullReport(
        slope=float(slope),
        f44=f44_l, f55=f55_l, f45=f45_l,
        f44_f55_reldiff=abs(f44_l - f55_l) / abs(f44_l),
        f44_plus_f45_reldiff=abs(f44_l + f45_l) / abs(f44_l),
        t_grid=t_grid,
        f44_series=f44,
    )


def crb(fisher: FisherMatrix, repetitions: int) -> CrbReport:
    """Cramer-Rao bounds from a Fisher matrix and M repetitions.

    Per-parameter bounds are 1/(M F_aa), infinite where the diagonal entry
    vanishes.  The matrix bound uses the pseudo-inverse; rank deficiency is
    flagged (the thermal-case matrix is rank one and never invertible).
    """
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    diag = np.diag(fisher.matrix)
    with np.errstate(divide="ignore"):
        per_param = np.where(diag > 0.0, 1.0 / (repetitions * diag), np.inf)
    eigvals = np.linalg.eigvalsh(fisher.matrix)
    scale = max(eigvals.max(), 0.0)
    singular = bool(scale == 0.0 or eigvals.min() <= 1e-10 * scale)
    matrix_bound = np.linalg.pinv(fisher.matrix,
                                  rcond=1e-10) / repetitions
    return CrbReport(per_parameter=per_param, matrix_bound=matrix_bound,
                     singular=singular, repetitions=repetitions)


def _golden_section_max(fun, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Maximize a unimodal scalar function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    return 0.5 * (a + b)


@dataclass(frozen=True)
class MleReport:
    """Monte-Carlo maximum-likelihood summary for one target parameter."""

    target: int                   # parameter index, 0-based
    estimates: np.ndarray
    empirical_variance: float
    bias: float
    crb_bound: float
    variance_ratio: float         # empirical variance / CRB


def mle_harness(true_theta: ParamVector, t: float, repetitions: int,
                trials: int, target: int, bracket: tuple[float, float],
                seed=0) -> MleReport:
    """Empirical check that the maximum-likelihood estimator attains the CRB.

    Each trial draws ``repetitions`` phonon counts from the geometric
    distribution at n1(t), then maximizes the geometric log-likelihood over
    the target parameter inside ``bracket`` by golden-section search.  All
    other parameters are held at their true values.
    """
    if not 0 <= target < 6:
        raise ValueError(f"target must be a parameter index 0..5, got {target}")
    grad = population_gradient(true_theta, t)
    if abs(float(grad[target])) < 1e-14:
        raise NonIdentifiableError(
            f"parameter {PARAM_NAMES[target]} has zero population gradient at "
            f"t={t}; it cannot be estimated from this measurement"
        )
    init = (true_theta.n1_0, true_theta.n2_0)
    n1_true = population(1, init, true_theta.model(), t)
    pmf = geometric_pmf(n1_true)
    fisher = fim_thermal(true_theta, t)
    f_target = fisher.matrix[target, target]
    bound = 1.0 / (repetitions * f_target)

    values = true_theta.as_array()

    def predicted_n1(x: float) -> float:
        trial = values.copy()
        trial[target] = x
        th = ParamVector.from_array(trial)
        return population(1, (th.n1_0, th.n2_0), th.model(), t)

    master = np.random.SeedSequence(seed)
    estimates = np.empty(trials)
    for i, child in enumerate(master.spawn(trials)):
        counts = sample(pmf, repetitions, np.random.default_rng(child))
        kbar = float(counts.mean())

        def loglik(x: float) -> float:
            n = predicted_n1(x)
            if n <= 0.0:
                return -math.inf if kbar > 0.0 else 0.0
            return kbar * math.log(n) - (kbar + 1.0) * math.log1p(n)

        estimates[i] = _golden_section_max(loglik, bracket[0], bracket[1])

    truth = values[target]
    variance = float(estimates.var(ddof=1)) if trials > 1 else 0.0
    return MleReport(
        target=target,
        estimates=estimates,
        empirical_variance=variance,
        bias=float(estimates.mean() - truth),
        crb_bound=bound,
        variance_ratio=variance / bound if bound > 0.0 else math.inf,
    )
