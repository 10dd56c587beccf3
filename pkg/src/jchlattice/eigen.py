"""Ground-state solver: Lanczos with full reorthogonalization, plus a dense oracle.

Desk-scale dimensions (a few thousand at most) allow the robust-over-fast
choices here: every Krylov vector is kept, new directions are
reorthogonalized twice per step, and breakdown (an invariant subspace)
restarts with a fresh random direction orthogonal to everything found so
far, so the iteration can always reach the exact answer by exhausting the
space.

A single Krylov run cannot resolve eigenvalue multiplicity: the space
generated from one start vector contains exactly one combination of a
degenerate multiplet.  The first excited energy is therefore estimated by
a second run deflated against the converged ground vector; if the ground
level is degenerate that run finds a partner at the same energy and the
result is flagged.

Determinism: start vectors come from a seeded generator, so a fixed seed
gives bit-identical results across runs on one platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .model import SparseHamiltonian, StateVector

DEFAULT_TOL = 1e-12
DENSE_DIM_CAP = 4096


class ConvergenceError(RuntimeError):
    """Lanczos failed to reach the requested residual within max_iter steps."""


@dataclass
class GroundStateResult:
    energy: float
    vector: StateVector
    residual_norm: float
    degenerate: bool
    gap: float          # E1 - E0 estimate (inf for one-dimensional sectors)
    iterations: int


def _lanczos_lowest(matvec, dim, rng, tol, max_steps, deflate=None):
    """Smallest Ritz pair of a symmetric operator restricted to the
    orthogonal complement of `deflate`.

    Returns (ritz_value, ritz_vector, steps, converged).  `converged`
    reflects the internal residual estimate |beta_k * y_last|; callers
    recompute the true residual from scratch.
    """
    deflate = [] if deflate is None else list(deflate)
    space = dim - len(deflate)
    max_steps = min(max_steps, space)

    Q = np.zeros((max_steps, dim))
    D = np.array(deflate) if deflate else None

    def _strip(w, upto):
        # two passes keep orthogonality at machine precision
        for _ in range(2):
            if D is not None:
                w -= D.T @ (D @ w)
            if upto:
                w -= Q[:upto].T @ (Q[:upto] @ w)
        return w

    def _fresh_direction(upto):
        for _ in range(50):
            v = _strip(rng.standard_normal(dim), upto)
            nv = np.linalg.norm(v)
            if nv > 1e-8:
                return v / nv
        raise ConvergenceError("could not find a direction in the residual space")

    v = _fresh_direction(0)
    alphas: list[float] = []
    betas: list[float] = []
    theta, y = 0.0, None
    converged = False
    k = 0
    while k < max_steps:
        Q[k] = v
        w = matvec(v)
        alpha = float(v @ w)
        alphas.append(alpha)
        k += 1
        w = _strip(w, k)
        beta = float(np.linalg.norm(w))

        if len(alphas) == 1:
            theta, yv = alphas[0], np.array([[1.0]])
        else:
            vals, vecs = eigh_tridiagonal(
                np.array(alphas), np.array(betas), select="i", select_range=(0, 0)
            )
            theta, yv = float(vals[0]), vecs
        y = yv[:, 0]
        converged = beta * abs(y[-1]) <= tol
        if converged or k == space:
            break

        if beta <= 1e-14 * max(1.0, abs(theta)):
            # invariant subspace: restart in the untouched remainder
            betas.append(0.0)
            v = _fresh_direction(k)
        else:
            betas.append(beta)
            v = w / beta

    x = Q[:k].T @ y
    x /= np.linalg.norm(x)
    return float(theta), x, k, converged


def ground_state(
    h: SparseHamiltonian,
    tol: float = DEFAULT_TOL,
    max_iter: int | None = None,
    seed: int = 0,
    gap_tol: float | None = None,
) -> GroundStateResult:
    """Lowest eigenpair of `h` with a from-scratch residual and a
    degeneracy flag based on the deflated E1 estimate.

    max_iter bounds the Krylov size (a sector of dimension d never needs
    more than d steps); gap_tol defaults to 1e-9 * max(1, |E0|).
    """
    dim = h.dim
    if dim < 1:
        raise ValueError("cannot diagonalize an empty sector")
    if tol <= 0:
        raise ValueError("tolerance must be positive")

    if dim == 1:
        e0 = float(h.matrix[0, 0])
        vec = StateVector(h.basis, np.array([1.0]))
        return GroundStateResult(e0, vec, 0.0, False, math.inf, 0)

    rng = np.random.default_rng(seed)
    steps_allowed = dim if max_iter is None else max_iter

    theta0, x0, k0, _ = _lanczos_lowest(h.apply_raw, dim, rng, tol, steps_allowed)
    residual = float(np.linalg.norm(h.apply_raw(x0) - theta0 * x0))
    if residual > tol:
        raise ConvergenceError(
            f"residual {residual:.3e} above tol {tol:.3e} after {k0} steps "
            f"(dim {dim}); raise max_iter or loosen tol"
        )

    # E1 including degenerate partners, from the complement of x0.  This
    # is an estimate feeding the degeneracy flag only, so an unconverged
    # value is used as-is rather than raising.
    theta1, _, k1, _ = _lanczos_lowest(
        h.apply_raw, dim, rng, tol, steps_allowed, deflate=[x0]
    )
    gap = theta1 - theta0

    if gap_tol is None:
        gap_tol = 1e-9 * max(1.0, abs(theta0))
    degenerate = gap < gap_tol

    # canonical sign: largest-magnitude amplitude positive
    lead = int(np.argmax(np.abs(x0)))
    if x0[lead] < 0:
        x0 = -x0

    return GroundStateResult(
        energy=theta0,
        vector=StateVector(h.basis, x0),
        residual_norm=residual,
        degenerate=degenerate,
        gap=float(gap),
        iterations=k0 + k1,
    )


class DenseSpectrum:
    """Full symmetric eigendecomposition, eigenvalues ascending."""

    def __init__(self, values, vectors):
        self.values = values
        self.vectors = vectors  # column k pairs with values[k]

    def __iter__(self):
        return iter(zip(self.values, self.vectors.T))

    def __len__(self):
        return len(self.values)


def dense_spectrum(h: SparseHamiltonian, dim_cap: int = DENSE_DIM_CAP) -> DenseSpectrum:
    """Oracle decomposition via LAPACK eigh; refuses dimensions above dim_cap."""
    if h.dim > dim_cap:
        raise ValueError(f"dimension {h.dim} above dense cap {dim_cap}")
    values, vectors = np.linalg.eigh(h.toarray())
    return DenseSpectrum(values, vectors)
