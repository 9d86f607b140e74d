"""Exact second-moment dynamics of the cross-damped two-mode system.

The symmetric damping case (gamma11 = gamma22 = gamma, gamma12 = gamma21)
decouples in the collective modes A = (a1 + a2)/sqrt(2) and
B = (a1 - a2)/sqrt(2): occupations relax toward the reservoir value at the
collective rates Gamma+- = gamma +- gamma12, anomalous moments rotate at
twice the normal-mode frequencies, and the A-B cross moments decay at the
mean rate gamma.  All propagation here is closed-form; the numerical ODE
cross-check lives in the test suite.

Anomalous moments follow the sign convention m_j = -<a_j^2>.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams

# symplectic form for quadrature order (x1, p1, x2, p2)
_J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
_J4 = np.block([[_J2, np.zeros((2, 2))], [np.zeros((2, 2)), _J2]])


@dataclass(frozen=True)
class MomentState:
    """All second moments of a zero-mean two-mode Gaussian state.

    n1, n2 are the mean occupations <a_j^dag a_j>; c12 = <a1^dag a2>;
    m1, m2 = -<a_j^2>; s12 = <a1 a2>.  Ten real degrees of freedom.
    """

    n1: float = 0.0
    n2: float = 0.0
    c12: complex = 0.0
    m1: complex = 0.0
    m2: complex = 0.0
    s12: complex = 0.0

    def __post_init__(self):
        if self.n1 < 0.0 or self.n2 < 0.0:
            raise ValueError(
                f"occupations must be non-negative, got n1={self.n1}, n2={self.n2}"
            )

    def covariance(self) -> np.ndarray:
        """Real 4x4 quadrature covariance in order (x1, p1, x2, p2).

        Quadratures x = (a + a^dag)/sqrt(2), p = i(a^dag - a)/sqrt(2);
        vacuum variance 1/2.
        """
        sigma = np.empty((4, 4))
        for j, (n, m) in enumerate([(self.n1, self.m1), (self.n2, self.m2)]):
            b = 2 * j
            sigma[b, b] = 0.5 + n - m.real
            sigma[b + 1, b + 1] = 0.5 + n + m.real
            sigma[b, b + 1] = sigma[b + 1, b] = -m.imag
        c, s = self.c12, self.s12
        cross = np.array([
            [c.real + s.real, c.imag + s.imag],
            [s.imag - c.imag, c.real - s.real],
        ])
        sigma[0:2, 2:4] = cross
        sigma[2:4, 0:2] = cross.T
        return sigma

    def is_physical(self, tol: float = 1e-10) -> bool:
        """Check the uncertainty bound sigma + (i/2) J >= 0 numerically."""
        herm = self.covariance().astype(complex) + 0.5j * _J4
        return float(np.linalg.eigvalsh(herm).min()) >= -tol


@dataclass(frozen=True)
class DriftMatrix:
    """Complex 2x2 drift matrix with independent damping channels.

    Diagonal entries omega0 - i*gamma_jj/2, off-diagonal
    coupling - i*gamma_jl/2.  The symmetric case has gamma11 = gamma22 and
    gamma12 = gamma21.
    """

    omega0: float
    coupling: float
    gamma11: float
    gamma22: float
    gamma12: float
    gamma21: float

    @classmethod
    def symmetric(cls, params: ModelParams) -> "DriftMatrix":
        return cls(params.omega0, params.coupling,
                   params.gamma, params.gamma, params.gamma12, params.gamma12)

    def is_symmetric(self) -> bool:
        return self.gamma11 == self.gamma22 and self.gamma12 == self.gamma21

    def as_matrix(self) -> np.ndarray:
        return np.array([
            [self.omega0 - 0.5j * self.gamma11, self.coupling - 0.5j * self.gamma12],
            [self.coupling - 0.5j * self.gamma21, self.omega0 - 0.5j * self.gamma22],
        ])


def drift_eigenvalues(m: DriftMatrix) -> tuple[complex, complex]:
    """Closed-form eigenvalues of the drift matrix.

    Returns (lambda_plus, lambda_minus).  In the symmetric case these are
    exactly omega0 +- coupling - i*(gamma +- gamma12)/2.
    """
    if m.is_symmetric():
        lam_p = complex(m.omega0 + m.coupling, -0.5 * (m.gamma11 + m.gamma12))
        lam_m = complex(m.omega0 - m.coupling, -0.5 * (m.gamma11 - m.gamma12))
        return lam_p, lam_m
    center = m.omega0 - 0.25j * (m.gamma11 + m.gamma22)
    disc = ((m.coupling - 0.5j * m.gamma12) * (m.coupling - 0.5j * m.gamma21)
            - (0.25 * (m.gamma11 - m.gamma22)) ** 2)
    root = cmath.sqrt(disc)
    return center + root, center - root


def collective_rates(params: ModelParams) -> tuple[float, float]:
    """Decay rates (Gamma_plus, Gamma_minus) of the symmetric and
    antisymmetric collective modes."""
    return params.gamma + params.gamma12, params.gamma - params.gamma12


def propagate(state0: MomentState, params: ModelParams, t: float) -> MomentState:
    """Exact second moments at time t under symmetric cross-damping.

    Works in the collective-mode basis where the moment families decouple,
    then transforms back.  The noise cross-correlator between the two
    collective Langevin forces vanishes for symmetric damping, so the A-B
    cross moments evolve homogeneously.
    """
    if t < 0.0:
        raise ValueError(f"t must be non-negative, got {t}")
    gp, gm = collective_rates(params)
    w0, om, nbar = params.omega0, params.coupling, params.nbar

    # local -> collective moments
    na0 = 0.5 * (state0.n1 + state0.n2) + state0.c12.real
    nb0 = 0.5 * (state0.n1 + state0.n2) - state0.c12.real
    cab0 = 0.5 * (state0.n1 - state0.n2) - 1j * state0.c12.imag
    pa0 = -0.5 * (state0.m1 + state0.m2) + state0.s12
    pb0 = -0.5 * (state0.m1 + state0.m2) - state0.s12
    pab0 = 0.5 * (state0.m2 - state0.m1)

    ep, em = math.exp(-gp * t), math.exp(-gm * t)
    na = na0 * ep + nbar * (1.0 - ep)
    nb = nb0 * em + nbar * (1.0 - em)
    cab = cab0 * cmath.exp((2j * om - params.gamma) * t)
    pa = pa0 * cmath.exp(-2j * (w0 + om) * t) * ep
    pb = pb0 * cmath.exp(-2j * (w0 - om) * t) * em
    pab = pab0 * cmath.exp(-(2j * w0 + params.gamma) * t)

    # collective -> local moments; clamp roundoff-negative occupations
    n1 = max(0.0, 0.5 * (na + nb) + cab.real)
    n2 = max(0.0, 0.5 * (na + nb) - cab.real)
    c12 = complex(0.5 * (na - nb), -cab.imag)
    m1 = -(0.5 * (pa + pb) + pab)
    m2 = -(0.5 * (pa + pb) - pab)
    s12 = 0.5 * (pa - pb)
    return MomentState(n1=n1, n2=n2, c12=c12, m1=m1, m2=m2, s12=s12)


def _decay_factors(params: ModelParams, t):
    """e^{-gamma t} cosh/sinh(gamma12 t) in overflow-safe grouped form."""
    gp, gm = collective_rates(params)
    ep, em = np.exp(-gp * np.asarray(t, dtype=float)), np.exp(-gm * np.asarray(t, dtype=float))
    return 0.5 * (em + ep), 0.5 * (em - ep)


def population(j: int, init: tuple[float, float], params: ModelParams, t):
    """Mean occupation of ion j for an uncorrelated diagonal initial state.

    Accepts scalar or array t.  Closed form equivalent to the n_j component
    of :func:`propagate`, evaluated in a grouped exponential form that stays
    finite at the decoherence-free point for arbitrarily large t.
    """
    if j not in (1, 2):
        raise ValueError(f"ion index must be 1 or 2, got {j}")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0):
        raise ValueError("t must be non-negative")
    nj0, nl0 = (init[0], init[1]) if j == 1 else (init[1], init[0])
    eg = np.exp(-params.gamma * t)
    cosh_term, _ = _decay_factors(params, t)
    c2 = np.cos(params.coupling * t) ** 2
    out = (eg * (nj0 * c2 + nl0 * (1.0 - c2))
           + 0.5 * (init[0] + init[1]) * (cosh_term - eg)
           + params.nbar * (1.0 - cosh_term))
    return float(out) if out.ndim == 0 else out


def steady_state(init: tuple[float, float], params: ModelParams) -> tuple[float, str]:
    """Long-time occupation and regime label for a diagonal initial state.

    The decoherence-free branch requires the stored gamma12 to equal gamma
    exactly; nearby values relax (slowly) to the reservoir occupation.
    """
    if params.gamma12 == params.gamma:
        return 0.5 * (params.nbar + 0.5 * (init[0] + init[1])), "dfs"
    return params.nbar, "thermal"


def short_time_population(j: int, init: tuple[float, float],
                          params: ModelParams, t):
    """Quadratic-order short-time expansion of :func:`population`."""
    if j not in (1, 2):
        raise ValueError(f"ion index must be 1 or 2, got {j}")
    t = np.asarray(t, dtype=float)
    nj0, nl0 = (init[0], init[1]) if j == 1 else (init[1], init[0])
    c2 = np.cos(params.coupling * t) ** 2
    g, g12, nbar = params.gamma, params.gamma12, params.nbar
    out = (nj0 * c2 + nl0 * (1.0 - c2)
           + nbar * g * t
           + 0.5 * (0.5 * g12 ** 2 * (init[0] + init[1])
                    - nbar * (g ** 2 + g12 ** 2)) * t ** 2)
    return float(out) if out.ndim == 0 else out


def anomalous_moment_1(init: MomentState, params: ModelParams, t: float) -> complex:
    """Closed-form m1(t) for initially uncorrelated modes.

    At the decoherence-free point the modulus tends to
    |m1(0) + m2(0)| / 4, rotating at twice the undamped collective-mode
    frequency.  Note: this is the form consistent with the exact
    normal-mode propagator (and validated against the ODE oracle); the
    commonly quoted closed form differs by an overall sign and carries the
    damped mode's rotation frequency in its asymptote.
    """
    if abs(init.c12) != 0.0 or abs(init.s12) != 0.0:
        raise ValueError("closed form requires initially uncorrelated modes")
    if t < 0.0:
        raise ValueError(f"t must be non-negative, got {t}")
    gp, gm = collective_rates(params)
    w0, om = params.omega0, params.coupling
    msum, mdif = init.m1 + init.m2, init.m1 - init.m2
    return cmath.exp(-2j * w0 * t) * (
        0.25 * msum * (cmath.exp(2j * om * t) * math.exp(-gm * t)
                       + cmath.exp(-2j * om * t) * math.exp(-gp * t))
        + 0.5 * mdif * math.exp(-params.gamma * t)
    )
