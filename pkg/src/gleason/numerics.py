"""Dense real symmetric linear algebra and feasibility kernels.

Everything here is float64 and sized for desk-scale problems (dimensions up
to a few dozen): a cyclic Jacobi eigensolver, rank and least-squares helpers,
a phase-one simplex feasibility test, and Gram-Schmidt orthonormalization.
The shared ``dim n`` matrix text format used by the command line lives here
as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Default zero threshold for rank / positivity decisions.
DEFAULT_TOL = 1e-9

_ASYMMETRY_LIMIT = 1e-12
_JACOBI_SWEEP_LIMIT = 50
_JACOBI_OFF_TARGET = 1e-14


class DimensionMismatch(ValueError):
    """Operands do not have compatible dimensions."""


class LinearlyDependent(ValueError):
    """Input vectors do not form a linearly independent set."""


class MatrixFormatError(ValueError):
    """Matrix text does not follow the ``dim n`` + n-rows layout."""


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Dense real symmetric matrix.

    Construction symmetrizes through (a + a^T)/2 but rejects inputs whose
    asymmetry exceeds 1e-12, so caller bugs surface instead of being
    averaged away.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] < 1:
            raise DimensionMismatch("matrix must have dimension >= 1")
        asym = float(np.max(np.abs(a - a.T)))
        if asym > _ASYMMETRY_LIMIT:
            raise ValueError(f"matrix is not symmetric (max |a - a^T| = {asym:.3e})")
        a = (a + a.T) / 2.0
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries))

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, n: int) -> "SymMatrix":
        return cls(np.zeros((n, n)))

    @classmethod
    def diagonal(cls, values) -> "SymMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)))


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Spectral decomposition a = V diag(w) V^T.

    ``eigenvalues`` are sorted descending; column i of ``eigenvectors``
    belongs to ``eigenvalues[i]`` and the columns are orthonormal.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eigh(a: SymMatrix) -> EigenDecomposition:
    """Diagonalize a symmetric matrix with cyclic Jacobi rotations.

    Sweeps until the off-diagonal Frobenius norm falls below 1e-14 relative
    to the matrix scale, or 50 sweeps. Jacobi converges quadratically at
    these sizes and keeps high relative accuracy for symmetric input.
    """
    m = np.array(a.entries, dtype=float)
    n = a.dim
    v = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(m)))
    # Entries this small cannot push the off-norm above the sweep target,
    # so rotating on them only stirs roundoff.
    skip_floor = 1e-17 * scale
    for _ in range(_JACOBI_SWEEP_LIMIT):
        off = float(np.linalg.norm(m - np.diag(np.diag(m))))
        if off <= _JACOBI_OFF_TARGET * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(m[p, q])
                if abs(apq) <= skip_floor:
                    continue
                diff = float(m[q, q] - m[p, p])
                if abs(apq) < 1e-36 * abs(diff):
                    t = apq / diff
                else:
                    phi = diff / (2.0 * apq)
                    t = 1.0 / (abs(phi) + math.sqrt(phi * phi + 1.0))
                    if phi < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p, col_q = m[:, p].copy(), m[:, q].copy()
                m[:, p] = c * col_p - s * col_q
                m[:, q] = s * col_p + c * col_q
                row_p, row_q = m[p, :].copy(), m[q, :].copy()
                m[p, :] = c * row_p - s * row_q
                m[q, :] = s * row_p + c * row_q
                m[p, q] = m[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    w = np.diag(m).copy()
    order = np.argsort(-w, kind="stable")
    eigenvalues = w[order]
    eigenvectors = v[:, order]
    eigenvalues.flags.writeable = False
    eigenvectors.flags.writeable = False
    return EigenDecomposition(eigenvalues, eigenvectors)


def rank(a: SymMatrix, tol: float = DEFAULT_TOL) -> int:
    """Number of eigenvalues with |w| strictly above ``tol``."""
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    return int(np.sum(np.abs(eigh(a).eigenvalues) > tol))


@dataclass(frozen=True, eq=False)
class LeastSquaresSolution:
    """Minimizer of ||rows @ x - rhs||; minimum-norm when rank deficient."""

    solution: np.ndarray
    residual: float
    rank_deficient: bool


def solve_least_squares(rows, rhs) -> LeastSquaresSolution:
    a = np.atleast_2d(np.asarray(rows, dtype=float))
    b = np.asarray(rhs, dtype=float).reshape(-1)
    if a.shape[0] == 0:
        raise DimensionMismatch("need at least one row")
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(
            f"{a.shape[0]} rows but {b.shape[0]} right-hand sides"
        )
    x, _, rk, _ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.linalg.norm(a @ x - b))
    return LeastSquaresSolution(x, residual, rank_deficient=int(rk) < a.shape[1])


def lp_feasible(a, b, tol: float = DEFAULT_TOL) -> np.ndarray | None:
    """Decide existence of x >= 0 with a @ x = b.

    Phase-one simplex with Bland's anti-cycling rule, float64 throughout.
    Returns a witness point when feasible, None otherwise.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    m, n = a.shape
    if b.shape[0] != m:
        raise DimensionMismatch(f"{m} equations but {b.shape[0]} right-hand sides")
    if n == 0:
        return np.zeros(0) if np.all(np.abs(b) <= tol) else None

    # Canonical tableau with one artificial variable per row; minimize their sum.
    flip = b < 0.0
    t = np.hstack([np.where(flip[:, None], -a, a), np.eye(m)])
    rhs = np.where(flip, -b, b)
    basis = list(range(n, n + m))
    cost = np.concatenate([np.zeros(n), np.ones(m)])

    # Bland's rule prevents cycling; the cap only guards against float-tie
    # pathologies and is far above anything desk-scale problems need.
    for _ in range(5000):
        reduced = cost - cost[basis] @ t
        entering = -1
        for j in range(n + m):
            if reduced[j] < -tol:
                entering = j
                break
        if entering < 0:
            break
        leaving, best, best_var = -1, math.inf, math.inf
        for i in range(m):
            coef = t[i, entering]
            if coef > tol:
                ratio = rhs[i] / coef
                if ratio < best - tol or (abs(ratio - best) <= tol and basis[i] < best_var):
                    leaving, best, best_var = i, ratio, basis[i]
        if leaving < 0:
            # Unbounded cannot happen in phase one; defensive stop.
            return None
        pivot = t[leaving, entering]
        t[leaving] /= pivot
        rhs[leaving] /= pivot
        for i in range(m):
            if i != leaving and t[i, entering] != 0.0:
                factor = t[i, entering]
                t[i] -= factor * t[leaving]
                rhs[i] -= factor * rhs[leaving]
        basis[leaving] = entering
    else:
        raise RuntimeError("phase-one simplex failed to terminate")

    infeasibility = sum(rhs[i] for i in range(m) if basis[i] >= n)
    if infeasibility > tol:
        return None
    x = np.zeros(n)
    for i, var in enumerate(basis):
        if var < n:
            x[var] = max(rhs[i], 0.0)
    return x


def orthonormalize(vectors, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Gram-Schmidt orthonormal basis (rows) for the span of the input.

    Raises LinearlyDependent when the inputs fail a Gram-matrix rank check.
    Two passes keep off-diagonal dot products below 1e-10 even for badly
    scaled input.
    """
    v = np.atleast_2d(np.asarray(vectors, dtype=float))
    k, n = v.shape
    if k > n:
        raise LinearlyDependent(f"{k} vectors cannot be independent in dimension {n}")
    gram = SymMatrix(v @ v.T)
    scale = max(1.0, float(np.max(np.abs(gram.entries))))
    if rank(gram, tol * scale) < k:
        raise LinearlyDependent("input vectors are linearly dependent")
    q = v.copy()
    for _ in range(2):
        for i in range(k):
            for j in range(i):
                q[i] -= (q[i] @ q[j]) * q[j]
            q[i] /= np.linalg.norm(q[i])
    return q


def quad_coeff_row(x) -> np.ndarray:
    """Linear-system row for a quadratic form with unknown upper triangle.

    Unknown order: the n diagonal entries, then the off-diagonal entries
    (i, j) with i < j in lexicographic order. The row satisfies
    row @ packed(A) == x^T A x for symmetric A.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    n = x.shape[0]
    parts = [x * x]
    for i in range(n - 1):
        parts.append(2.0 * x[i] * x[i + 1 :])
    return np.concatenate(parts)


def sym_from_packed(values, n: int) -> np.ndarray:
    """Inverse of the packing used by :func:`quad_coeff_row`."""
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.shape[0] != n * (n + 1) // 2:
        raise DimensionMismatch(
            f"expected {n * (n + 1) // 2} packed entries, got {values.shape[0]}"
        )
    a = np.diag(values[:n]).astype(float)
    pos = n
    for i in range(n - 1):
        count = n - 1 - i
        a[i, i + 1 :] = values[pos : pos + count]
        a[i + 1 :, i] = values[pos : pos + count]
        pos += count
    return a


def parse_matrix_text(text: str) -> np.ndarray:
    """Parse the shared matrix format: ``dim n`` then n rows of n decimals.

    Blank lines and ``#`` comments are skipped; scientific notation is
    accepted. Decimal points only, independent of locale.
    """
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if not lines:
        raise MatrixFormatError("empty matrix input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise MatrixFormatError("first line must be 'dim n'")
    try:
        n = int(head[1])
    except ValueError:
        raise MatrixFormatError(f"bad dimension {head[1]!r}") from None
    if n < 1:
        raise MatrixFormatError("dimension must be >= 1")
    if len(lines) - 1 != n:
        raise MatrixFormatError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for lineno, line in enumerate(lines[1:], 2):
        parts = line.split()
        if len(parts) != n:
            raise MatrixFormatError(
                f"row {lineno}: expected {n} entries, found {len(parts)}"
            )
        try:
            rows.append([float(p) for p in parts])
        except ValueError as exc:
            raise MatrixFormatError(f"row {lineno}: {exc}") from None
    return np.array(rows)


def format_matrix_text(a) -> str:
    """Write a square matrix in the shared text format (full precision)."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    lines = [f"dim {a.shape[0]}"]
    for row in a:
        lines.append(" ".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"
