"""Laplacian spectra, Fiedler vectors, Rayleigh quotients, consensus decay.

The dense symmetric eigensolver is numpy's; this module owns the graph
Laplacian conventions, the deterministic sign normalization, residual
checking, and the quotient / decay-rate observables built on top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, is_connected, max_degree

RESIDUAL_TOL = 1e-8
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class EigenResult:
    """One eigenpair with its verified backward error ||Mv - value*v||."""

    value: float
    vector: np.ndarray
    residual: float


@dataclass(frozen=True)
class DecayFit:
    """Least-squares exponential decay rate and its relative fit error."""

    rate: float
    rel_err: float


def laplacian(g: Graph) -> np.ndarray:
    """Dense combinatorial Laplacian L = D - A as float64."""
    L = np.zeros((g.n, g.n))
    for i, j in g.edges():
        L[i, j] = L[j, i] = -1.0
        L[i, i] += 1.0
        L[j, j] += 1.0
    return L


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    # deterministic orientation: the largest-magnitude entry (lowest index on
    # ties) is made nonnegative
    idx = int(np.argmax(np.abs(vec)))
    return -vec if vec[idx] < 0 else vec


def eigen_smallest(mat: np.ndarray, k: int = 1) -> list[EigenResult]:
    """The k smallest eigenpairs of a symmetric matrix, ascending.

    Vectors are unit-norm with the deterministic sign convention; each pair
    carries its residual, which must come out <= 1e-8 * max(1, |value|).
    """
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix must be square")
    n = mat.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}")
    if np.max(np.abs(mat - mat.T), initial=0.0) > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric")
    vals, vecs = np.linalg.eigh(mat)
    out = []
    for i in range(k):
        v = _fix_sign(vecs[:, i])
        res = float(np.linalg.norm(mat @ v - vals[i] * v))
        if res > RESIDUAL_TOL * max(1.0, abs(vals[i])):
            raise ArithmeticError(
                f"eigenpair residual {res:.3e} exceeds tolerance for value {vals[i]}"
            )
        out.append(EigenResult(value=float(vals[i]), vector=v, residual=res))
    return out


def laplacian_spectrum(g: Graph) -> np.ndarray:
    """All Laplacian eigenvalues, ascending."""
    return np.linalg.eigvalsh(laplacian(g))


def algebraic_connectivity(g: Graph) -> float:
    """Second-smallest Laplacian eigenvalue; zero iff g is disconnected."""
    if g.n < 2:
        raise ValueError("algebraic connectivity needs n >= 2")
    return float(laplacian_spectrum(g)[1])


def fiedler_vector(g: Graph) -> EigenResult:
    """Unit eigenvector for the second-smallest Laplacian eigenvalue.

    The constant kernel direction is deflated by adding (n+1)/n * J, which
    shifts only the eigenvalue at 0 up to n+1; the smallest eigenpair of the
    deflated matrix is then the Fiedler pair.  Residual is re-checked
    against the original Laplacian.
    """
    if g.n < 2:
        raise ValueError("Fiedler vector needs n >= 2")
    L = laplacian(g)
    shifted = L + (g.n + 1.0) / g.n * np.ones((g.n, g.n))
    pair = eigen_smallest(shifted, k=1)[0]
    v = pair.vector
    res = float(np.linalg.norm(L @ v - pair.value * v))
    if res > RESIDUAL_TOL * max(1.0, abs(pair.value)):
        raise ArithmeticError(f"Fiedler residual {res:.3e} exceeds tolerance")
    if abs(float(np.sum(v))) > 1e-9 * math.sqrt(g.n):
        raise ArithmeticError("Fiedler vector lost orthogonality to constants")
    return EigenResult(value=pair.value, vector=v, residual=res)


def batched_lambda2(laplacians: np.ndarray) -> np.ndarray:
    """Second-smallest eigenvalue of each matrix in a (k, n, n) stack."""
    arr = np.asarray(laplacians, dtype=float)
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValueError("expected a (k, n, n) stack")
    if arr.shape[1] < 2:
        raise ValueError("stack matrices must be at least 2x2")
    return np.linalg.eigvalsh(arr)[:, 1]


def modified_lambda(g: Graph, r: int) -> float:
    """Smallest eigenvalue of L + E_rr (unit boost on the r-th diagonal).

    This is the spectral quantity controlling how a branch hanging off a cut
    vertex at r constrains the connectivity of the whole graph; it is
    strictly positive whenever g is connected.
    """
    if not 0 <= r < g.n:
        raise ValueError(f"root {r} outside 0..{g.n - 1}")
    M = laplacian(g)
    M[r, r] += 1.0
    return float(np.linalg.eigvalsh(M)[0])


def rayleigh_quotient(g: Graph, x: np.ndarray) -> float:
    """sum over edges of (x_i - x_j)^2, divided by sum of x_j^2.

    For mean-zero x this is an upper bound on the algebraic connectivity.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError("vector length must equal n")
    den = float(x @ x)
    if den == 0.0:
        raise ValueError("zero vector")
    num = 0.0
    for i, j in g.edges():
        num += (x[i] - x[j]) ** 2
    return num / den


def modified_rayleigh_quotient(g: Graph, r: int, x: np.ndarray) -> float:
    """(x_r^2 + sum over edges of (x_i - x_j)^2) / sum of x_j^2.

    Upper-bounds modified_lambda(g, r) for every nonzero x, with no
    mean-zero requirement.
    """
    if not 0 <= r < g.n:
        raise ValueError(f"root {r} outside 0..{g.n - 1}")
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError("vector length must equal n")
    den = float(x @ x)
    if den == 0.0:
        raise ValueError("zero vector")
    num = float(x[r] ** 2)
    for i, j in g.edges():
        num += (x[i] - x[j]) ** 2
    return num / den


def consensus_decay_rate(
    g: Graph, u0: np.ndarray, t_end: float, dt: float
) -> DecayFit:
    """Decay rate of du/dt = -L u toward consensus, from an RK4 integration.

    Integrates the deviation v = u - mean(u0) (the dynamics preserve the
    mean, so this is the same trajectory in the interesting subspace but
    avoids measuring a tiny signal on top of a large constant).  The rate is
    the negated slope of a least-squares line through log ||v(t)|| over the
    second half of the run; rel_err is the RMS residual of that line
    relative to its total drop.  For connected graphs the rate converges to
    the algebraic connectivity once the slower modes have died out.
    """
    u0 = np.asarray(u0, dtype=float)
    if u0.shape != (g.n,):
        raise ValueError("initial state length must equal n")
    if t_end <= 0 or dt <= 0:
        raise ValueError("t_end and dt must be positive")
    if not is_connected(g):
        raise ValueError("consensus decay requires a connected graph")
    lam_max_est = 2.0 * max_degree(g)  # Gershgorin bound on the top eigenvalue
    if lam_max_est > 0 and dt > 0.1 / lam_max_est:
        raise ValueError(
            f"dt={dt} too coarse for stability; need dt <= {0.1 / lam_max_est:.6g}"
        )
    v = u0 - u0.mean()
    if np.linalg.norm(v) < 1e-300:
        raise ValueError("initial state is already consensus")
    L = laplacian(g)
    steps = max(4, math.ceil(t_end / dt))
    h = t_end / steps
    norms = np.empty(steps + 1)
    norms[0] = np.linalg.norm(v)
    for s in range(steps):
        k1 = -(L @ v)
        k2 = -(L @ (v + 0.5 * h * k1))
        k3 = -(L @ (v + 0.5 * h * k2))
        k4 = -(L @ (v + h * k3))
        v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        norms[s + 1] = np.linalg.norm(v)
    times = np.linspace(0.0, t_end, steps + 1)
    sel = times >= 0.5 * t_end
    if np.min(norms[sel]) <= 0.0:
        raise ArithmeticError("trajectory norm underflowed; shorten t_end")
    y = np.log(norms[sel])
    t = times[sel]
    slope, intercept = np.polyfit(t, y, 1)
    resid = y - (slope * t + intercept)
    drop = abs(slope) * (t[-1] - t[0])
    rel = float(np.sqrt(np.mean(resid**2)) / drop) if drop > 0 else float("inf")
    return DecayFit(rate=float(-slope), rel_err=rel)
