"""Gaussian separability analysis of the two-mode state.

The 4x4 real quadrature covariance (vacuum variance 1/2) is assembled from
the complex second moments, and separability is decided by the sign of the
symplectic invariant

    Y = I1 I2 + (1/4 - |I3|)^2 - I4 - (1/4)(I1 + I2),

with I1 = det V1, I2 = det V2, I3 = det C and the fourth-order invariant
I4 = tr(V1 J C J V2 J C^T J).  For physical states Y < 0 is equivalent to
a negative partial transpose, hence to entanglement: when det C >= 0 the
expression coincides with the uncertainty bound (non-negative), and when
det C < 0 it coincides with the reflected (partial-transpose) bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .dynamics import MomentState, propagate
from .model import ModelParams, bose_occupation

_J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])

SCAN_AXES = ("t", "gamma12_ratio", "temperature_ratio", "r")


@dataclass(frozen=True)
class SqueezedThermalSpec:
    """Single-mode squeezed thermal preparation (phase fixed to zero)."""

    nbar: float
    r: float
    theta: float = 0.0

    def __post_init__(self):
        if self.nbar < 0.0:
            raise ValueError(f"nbar must be non-negative, got {self.nbar}")
        if self.theta != 0.0:
            raise ValueError("only zero squeezing phase is supported")

    def occupation(self) -> float:
        return (self.nbar + 0.5) * math.cosh(2.0 * self.r) - 0.5

    def anomalous(self) -> float:
        return (self.nbar + 0.5) * math.sinh(2.0 * self.r)


@dataclass(frozen=True)
class CovarianceReal:
    """Real 4x4 quadrature covariance with 2x2 blocks V1, V2, C."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=float))
        if self.matrix.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got {self.matrix.shape}")
        if not np.allclose(self.matrix, self.matrix.T, atol=1e-10):
            raise ValueError("covariance matrix must be symmetric")

    @property
    def v1(self) -> np.ndarray:
        return self.matrix[0:2, 0:2]

    @property
    def v2(self) -> np.ndarray:
        return self.matrix[2:4, 2:4]

    @property
    def cross(self) -> np.ndarray:
        return self.matrix[0:2, 2:4]

    def is_physical(self, tol: float = 1e-10) -> bool:
        j4 = np.block([[_J2, np.zeros((2, 2))], [np.zeros((2, 2)), _J2]])
        herm = self.matrix.astype(complex) + 0.5j * j4
        return float(np.linalg.eigvalsh(herm).min()) >= -tol


def to_real_covariance(state: MomentState) -> CovarianceReal:
    """Bridge from complex moments to the real quadrature covariance.

    The local diagonal entries carry the vacuum 1/2 required for the
    1/4-normalized invariants.  Unphysical inputs are rejected.
    """
    sigma = CovarianceReal(state.covariance())
    if not sigma.is_physical():
        raise ValueError("moment state violates the uncertainty bound")
    return sigma


@dataclass(frozen=True)
class YResult:
    y: float
    i1: float
    i2: float
    i3: float
    i4: float

    @property
    def entangled(self) -> bool:
        return self.y < 0.0


def y_invariant(sigma: CovarianceReal, form: str = "magnitude") -> YResult:
    """Separability invariant Y and the four symplectic invariants.

    ``form="magnitude"`` evaluates the |det C| expression above (negative
    exactly for entangled physical states).  ``form="reflection"`` uses
    -det C instead, i.e. the partial-transpose bound regardless of the sign
    of det C; the two coincide whenever det C <= 0.
    """
    i1 = float(np.linalg.det(sigma.v1))
    i2 = float(np.linalg.det(sigma.v2))
    i3 = float(np.linalg.det(sigma.cross))
    c = sigma.cross
    i4 = float(np.trace(sigma.v1 @ _J2 @ c @ _J2 @ sigma.v2 @ _J2 @ c.T @ _J2))
    if form == "magnitude":
        i3_eff = abs(i3)
    elif form == "reflection":
        i3_eff = -i3
    else:
        raise ValueError(f"unknown form {form!r}")
    y = i1 * i2 + (0.25 - i3_eff) ** 2 - i4 - 0.25 * (i1 + i2)
    return YResult(y=y, i1=i1, i2=i2, i3=i3, i4=i4)


def initial_state(nbar1: float, spec2: SqueezedThermalSpec) -> MomentState:
    """Product of a thermal mode 1 and a squeezed thermal mode 2."""
    if nbar1 < 0.0:
        raise ValueError(f"nbar1 must be non-negative, got {nbar1}")
    return MomentState(n1=nbar1, n2=spec2.occupation(), m2=spec2.anomalous())


def evolve_y(nbar1: float, spec2: SqueezedThermalSpec, params: ModelParams,
             t_grid, form: str = "magnitude") -> np.ndarray:
    """Y(t) along a time grid, starting from the product state above."""
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) == 0:
        raise ValueError("t_grid must be a non-empty 1-d array")
    if np.any(t_grid < 0.0) or np.any(np.diff(t_grid) < 0.0):
        raise ValueError("t_grid must be ascending and non-negative")
    state0 = initial_state(nbar1, spec2)
    out = np.empty(len(t_grid))
    for i, t in enumerate(t_grid):
        sigma = to_real_covariance(propagate(state0, params, float(t)))
        out[i] = y_invariant(sigma, form=form).y
    return out


@dataclass(frozen=True)
class ScanResult:
    """Dense grid of Y values with an entangled-sign mask."""

    axes: tuple[str, ...]
    grids: tuple[np.ndarray, ...]
    y: np.ndarray
    metadata: dict

    @property
    def entangled(self) -> np.ndarray:
        return self.y < 0.0

    def iter_rows(self) -> Iterable[tuple]:
        """Rows (axis values..., y, entangled) in deterministic grid order."""
        for idx in np.ndindex(self.y.shape):
            coords = tuple(float(g[i]) for g, i in zip(self.grids, idx))
            yield coords + (float(self.y[idx]), bool(self.y[idx] < 0.0))


def scan(axes: dict[str, np.ndarray], fixed: dict[str, float],
         form: str = "magnitude") -> ScanResult:
    """Grid scan of Y over two or three of {t, gamma12_ratio,
    temperature_ratio, r}.

    ``fixed`` supplies gamma, coupling, nbar1, nbar2, and whichever scan
    quantities are not axes.  temperature_ratio is mapped to the reservoir
    occupation through the Bose factor.
    """
    names = tuple(axes)
    if not 2 <= len(names) <= 3:
        raise ValueError("scan takes two or three axes")
    for name in names:
        if name not in SCAN_AXES:
            raise ValueError(f"unknown axis {name!r}; choose from {SCAN_AXES}")
    grids = tuple(np.asarray(axes[name], dtype=float) for name in names)
    for name, grid in zip(names, grids):
        if grid.ndim != 1 or len(grid) == 0 or np.any(np.diff(grid) < 0.0):
            raise ValueError(f"axis {name!r} must be non-empty and monotone")
    required = {"gamma", "coupling", "nbar1", "nbar2"}
    required |= set(SCAN_AXES) - set(names) - {"t"}
    missing = required - set(fixed)
    if missing:
        raise ValueError(f"missing fixed quantities: {sorted(missing)}")

    def point(values: dict[str, float]) -> float:
        params = ModelParams(
            omega0=fixed.get("omega0", 0.0),
            coupling=fixed["coupling"],
            gamma=fixed["gamma"],
            gamma12=values["gamma12_ratio"] * fixed["gamma"],
            nbar=bose_occupation(values["temperature_ratio"]),
        )
        spec2 = SqueezedThermalSpec(nbar=fixed["nbar2"], r=values["r"])
        state0 = initial_state(fixed["nbar1"], spec2)
        sigma = to_real_covariance(propagate(state0, params, values["t"]))
        return y_invariant(sigma, form=form).y

    shape = tuple(len(g) for g in grids)
    y = np.empty(shape)
    for idx in np.ndindex(shape):
        values = {name: fixed.get(name) for name in SCAN_AXES}
        for name, grid, i in zip(names, grids, idx):
            values[name] = float(grid[i])
        if values["t"] is None:
            raise ValueError("a time must be provided as an axis or fixed value")
        y[idx] = point(values)
    metadata = {
        "axes": list(names),
        "shape": list(shape),
        "fixed": {k: float(v) for k, v in fixed.items()},
        "form": form,
    }
    return ScanResult(axes=names, grids=grids, y=y, metadata=metadata)
