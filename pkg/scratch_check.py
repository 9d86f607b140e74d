"""Scratch validation of closed forms vs numerical oracles (not shipped)."""
import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from crossdamp import (ModelParams, MomentState, propagate, population,
                       anomalous_moment_1, LocalGaussian, general_pmf,
                       geometric_pmf, SqueezedThermalSpec, to_real_covariance,
                       y_invariant)
from crossdamp.entanglement import initial_state

rng = np.random.default_rng(7)


def ode_oracle(state0, params, t):
    """Integrate the moment matrix ODEs dN/dt, dP/dt."""
    M = np.array([[params.omega0 - 0.5j * params.gamma,
                   params.coupling - 0.5j * params.gamma12],
                  [params.coupling - 0.5j * params.gamma12,
                   params.omega0 - 0.5j * params.gamma]])
    D = params.nbar * np.array([[params.gamma, params.gamma12],
                                [params.gamma12, params.gamma]])
    N0 = np.array([[state0.n1, state0.c12], [np.conj(state0.c12), state0.n2]])
    P0 = np.array([[-state0.m1, state0.s12], [state0.s12, -state0.m2]])

    def rhs(t, y):
        N = y[:4].reshape(2, 2)
        P = y[4:].reshape(2, 2)
        dN = 1j * (np.conj(M) @ N) - 1j * (N @ M.T) + D
        dP = -1j * (M @ P + P @ M.T)
        return np.concatenate([dN.ravel(), dP.ravel()])

    y0 = np.concatenate([N0.ravel(), P0.ravel()]).astype(complex)
    sol = solve_ivp(rhs, (0.0, t), y0, method="DOP853", rtol=1e-12, atol=1e-14)
    N = sol.y[:4, -1].reshape(2, 2)
    P = sol.y[4:, -1].reshape(2, 2)
    return MomentState(n1=max(0.0, N[0, 0].real), n2=max(0.0, N[1, 1].real),
                       c12=N[0, 1], m1=-P[0, 0], m2=-P[1, 1], s12=P[0, 1])


def random_state(rng):
    # random physical state: local squeezed thermal + passive mixing in moments
    n1, n2 = rng.uniform(0, 2, 2)
    r1, r2 = rng.uniform(-0.5, 0.5, 2)
    m1 = (n1 + 0.5) * np.sinh(2 * r1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    m2 = (n2 + 0.5) * np.sinh(2 * r2) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    n1e = (n1 + 0.5) * np.cosh(2 * r1) - 0.5
    n2e = (n2 + 0.5) * np.cosh(2 * r2) - 0.5
    return MomentState(n1=n1e, n2=n2e, m1=m1, m2=m2)


params = ModelParams(omega0=3.0, coupling=-1.2, gamma=0.4, gamma12=0.25, nbar=1.3)
worst = 0.0
for _ in range(10):
    s0 = random_state(rng)
    for t in [0.3, 1.7, 6.0]:
        a = propagate(s0, params, t)
        b = ode_oracle(s0, params, t)
        for f in ("n1", "n2", "c12", "m1", "m2", "s12"):
            worst = max(worst, abs(getattr(a, f) - getattr(b, f)))
print("propagate vs ODE worst |diff|:", worst)

# closed-form m1 and population vs propagate
s0 = MomentState(n1=0.8, n2=0.3, m1=0.2 + 0.1j, m2=-0.15 + 0.4j)
for t in [0.0, 0.9, 4.2]:
    p = propagate(s0, params, t)
    print(f"t={t}: m1 closed-prop diff",
          abs(anomalous_moment_1(s0, params, t) - p.m1),
          " n1 closed-prop diff",
          abs(population(1, (0.8, 0.3), params, t)
              - propagate(MomentState(n1=0.8, n2=0.3), params, t).n1))

# DFS asymptote of |m1|
dfs = ModelParams(omega0=3.0, coupling=-1.2, gamma=0.5, gamma12=0.5, nbar=0.3)
m_inf = abs(anomalous_moment_1(s0, dfs, 60.0))
print("DFS |m1(inf)|:", m_inf, "expected", abs(s0.m1 + s0.m2) / 4)

# Fock-truncation oracle for the squeezed thermal pmf
def fock_pmf(nbar, r, dim=400):
    k = np.arange(dim)
    rho_th = np.diag((nbar ** k) / (1 + nbar) ** (k + 1))
    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    S = expm(0.5 * r * (a @ a - a.T @ a.T))
    rho = S @ rho_th @ S.conj().T
    return np.real(np.diag(rho))

spec = SqueezedThermalSpec(nbar=0.5, r=1.0)
g = LocalGaussian(n=spec.occupation(), m=spec.anomalous())
print("n,|m| =", g.n, abs(g.m), " regime:", "|m|>=n" if abs(g.m) >= g.n else "|m|<n")
pm = general_pmf(g)
oracle = fock_pmf(0.5, 1.0)
K = min(pm.k_max, 399)
print("general_pmf vs fock oracle max|diff|:",
      np.abs(pm.probabilities[:K + 1] - oracle[:K + 1]).max(),
      "tail:", pm.tail_bound, "kmax:", pm.k_max)

# hyp route in |m| < n regime vs fock oracle
spec2 = SqueezedThermalSpec(nbar=2.0, r=0.3)
g2 = LocalGaussian(n=spec2.occupation(), m=spec2.anomalous())
print("regime2 |m|<n:", abs(g2.m) < g2.n)
pm2 = general_pmf(g2)
oracle2 = fock_pmf(2.0, 0.3)
K2 = min(pm2.k_max, 399)
print("hyp route vs fock max|diff|:",
      np.abs(pm2.probabilities[:K2 + 1] - oracle2[:K2 + 1]).max())
print("mean check:", pm2.mean(), g2.n, " mean1:", pm.mean(), g.n)

# geometric reduction
gref = geometric_pmf(2.3)
gm0 = general_pmf(LocalGaussian(n=2.3, m=1e-8 * 2.3), k_max=gref.k_max)
print("m->0 reduction max|diff|:",
      np.abs(gm0.probabilities - gref.probabilities).max())

# TMSV Y check
def tmsv_state(r):
    c = 0.5 * np.cosh(2 * r) - 0.5
    s = 0.5 * np.sinh(2 * r)
    return MomentState(n1=c, n2=c, s12=s)  # <a1 a2> = sinh cosh = s? check below

for r in [0.0, 0.25, 0.5]:
    st = tmsv_state(r)
    y = y_invariant(to_real_covariance(st)).y
    print(f"TMSV r={r}: Y={y}  (expect -sinh(2r)^2/4 = {-np.sinh(2*r)**2/4})")

# entangle-evolve sanity: Omega=0, gamma12=gamma, r=2, low T
p0 = ModelParams(omega0=0.0, coupling=0.0, gamma=1.0, gamma12=1.0,
                 nbar=1 / (np.exp(5.0) - 1))
from crossdamp import evolve_y
ts = np.linspace(0, 8, 200)
ys = evolve_y(0.05, SqueezedThermalSpec(nbar=0.05, r=2.0), p0, ts)
neg = ys < 0
print("Y(t) Omega=0 dfs: first Y", ys[0], "min", ys.min(),
      "neg window:", ts[neg][0] if neg.any() else None,
      ts[neg][-1] if neg.any() else None, "Y end", ys[-1])
