"""Dense two-phase simplex for small equality-form LPs.

Solves ``max c @ x  s.t.  A @ x = b, x >= 0`` on a full tableau with Bland's
smallest-index rule, which rules out cycling.  Meant for problems with a
few dozen variables; no sparse or revised variant is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import LPInfeasibleError

PIVOT_TOL = 1e-12
FEAS_TOL = 1e-9


class LPUnboundedError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPResult:
    x: np.ndarray
    objective: float
    dual: np.ndarray
    basis: tuple[int, ...]
    duality_gap: float
    dual_infeasibility: float
    iterations: int


def _pivot(T, basis, row, col):
    T[row] /= T[row, col]
    for r in range(T.shape[0]):
        if r != row and T[r, col] != 0.0:
            T[r] -= T[r, col] * T[row]
    basis[row] = col


def _run(T, basis, n_allowed, max_iter):
    """Bland-rule iterations on tableau ``T``; last row holds reduced costs.

    The objective row stores ``c_j - z_j``; a positive entry means column
    ``j`` improves a maximisation.  Only the first ``n_allowed`` columns may
    enter the basis.
    """
    m = T.shape[0] - 1
    for it in range(max_iter):
        obj = T[-1, :n_allowed]
        entering = np.flatnonzero(obj > PIVOT_TOL)
        if entering.size == 0:
            return it
        col = int(entering[0])
        column = T[:m, col]
        rows = np.flatnonzero(column > PIVOT_TOL)
        if rows.size == 0:
            raise LPUnboundedError("objective is unbounded above")
        ratios = T[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
        row = int(min(ties, key=lambda r: basis[r]))
        _pivot(T, basis, row, col)
    raise RuntimeError(f"simplex did not terminate in {max_iter} pivots")


def linprog_max(c, A_eq, b_eq, max_iter: int = 10_000) -> LPResult:
    """Maximise ``c @ x`` subject to ``A_eq @ x = b_eq`` and ``x >= 0``."""
    c = np.asarray(c, dtype=float)
    A = np.array(A_eq, dtype=float)
    b = np.array(b_eq, dtype=float)
    m, n = A.shape
    flip = b < 0
    A[flip] *= -1
    b[flip] *= -1

    # phase 1: artificial basis, maximise -sum(artificials)
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, :n] = A.sum(axis=0)
    T[-1, -1] = b.sum()
    basis = list(range(n, n + m))
    iters = _run(T, basis, n + m, max_iter)
    if T[-1, -1] > FEAS_TOL * max(1.0, b.sum()):
        raise LPInfeasibleError(
            f"constraints are infeasible (phase-1 residual {T[-1, -1]:.3e})")

    # drive leftover artificials out; rows where that is impossible are redundant
    keep = []
    for r in range(m):
        if basis[r] >= n:
            cand = np.flatnonzero(np.abs(T[r, :n]) > 1e-9)
            if cand.size == 0:
                continue
            _pivot(T, basis, r, int(cand[0]))
        keep.append(r)
    T = np.vstack([T[keep], T[-1:]])
    basis = [basis[r] for r in keep]
    T = np.delete(T, np.s_[n:n + m], axis=1)

    # phase 2
    T[-1, :] = 0.0
    T[-1, :n] = c
    for r, j in enumerate(basis):
        T[-1] -= c[j] * T[r]
    iters += _run(T, basis, n, max_iter)

    x = np.zeros(n)
    x[basis] = T[:-1, -1]
    x[np.abs(x) < 1e-15] = 0.0
    objective = float(c @ x)

    # dual from the final basis on the original constraint rows
    rows = np.array(keep, dtype=int)
    B = np.where(flip[rows, None], -1.0, 1.0) * A[rows][:, basis]
    y_kept = np.linalg.solve(B.T, c[basis])
    dual = np.zeros(m)
    dual[rows] = y_kept
    orig_A = np.where(flip[:, None], -A, A)
    orig_b = np.where(flip, -b, b)
    reduced = c - orig_A.T @ dual
    return LPResult(
        x=x,
        objective=objective,
        dual=dual,
        basis=tuple(basis),
        duality_gap=abs(objective - float(orig_b @ dual)),
        dual_infeasibility=float(max(0.0, reduced.max())),
        iterations=iters,
    )


def enumerate_vertices(A_eq, b_eq, tol: float = FEAS_TOL):
    """All basic feasible solutions of ``A x = b, x >= 0`` (brute force)."""
    A = np.asarray(A_eq, dtype=float)
    b = np.asarray(b_eq, dtype=float)
    m, n = A.shape
    rank = np.linalg.matrix_rank(A)
    if rank < m:
        # keep a maximal independent subset of rows
        idx = []
        for r in range(m):
            if np.linalg.matrix_rank(A[idx + [r]]) > len(idx):
                idx.append(r)
        A, b, m = A[idx], b[idx], rank
    out = []
    for cols in combinations(range(n), m):
        B = A[:, cols]
        if abs(np.linalg.det(B)) < 1e-12:
            continue
        xb = np.linalg.solve(B, b)
        if np.all(xb >= -tol):
            x = np.zeros(n)
            x[list(cols)] = np.clip(xb, 0.0, None)
            if np.allclose(A @ x, b, atol=tol):
                out.append(x)
    return out


def max_over_vertices(c, A_eq, b_eq) -> tuple[float, np.ndarray]:
    """Best objective among all vertices; raises if there are none."""
    verts = enumerate_vertices(A_eq, b_eq)
    if not verts:
        raise LPInfeasibleError("no basic feasible solution exists")
    c = np.asarray(c, dtype=float)
    vals = [float(c @ v) for v in verts]
    k = int(np.argmax(vals))
    return vals[k], verts[k]
