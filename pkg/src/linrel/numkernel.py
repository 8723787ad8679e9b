"""Dense matrix kernel over two scalar backends.

Matrices are plain numpy arrays.  The backend is read off the dtype:

* ``object`` arrays hold exact scalars (``mpq`` or :class:`GaussianRational`)
  and are reduced with exact Gauss-Jordan elimination;
* ``complex128`` arrays are the floating backend and go through the SVD.

Every routine takes a :class:`TolerancePolicy`; the exact backend ignores it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from gmpy2 import mpq

from .scalars import GaussianRational, gauss, re_part, to_exact

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

ONE = mpq(1)
ZERO = mpq(0)


@dataclass(frozen=True)
class TolerancePolicy:
    rank_rel_tol: float = 1e-10
    psd_tol: float = 1e-9
    equality_tol: float = 1e-9

    def __post_init__(self):
        for name in ("rank_rel_tol", "psd_tol", "equality_tol"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name} must be nonnegative")


DEFAULT_POLICY = TolerancePolicy()


def backend_of(M: np.ndarray) -> str:
    return EXACT if M.dtype == object else FLOAT


def as_exact(data) -> np.ndarray:
    """Object array of exact scalars (1-D or 2-D)."""
    arr = np.asarray(data, dtype=object) if not isinstance(data, np.ndarray) else data
    if arr.dtype != object:
        out = np.empty(arr.shape, dtype=object)
        for idx, v in np.ndenumerate(arr):
            out[idx] = to_exact(v.item() if hasattr(v, "item") else v)
        return out
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = to_exact(v)
    return out


def as_float(data) -> np.ndarray:
    arr = np.asarray(data)
    if arr.dtype == object:
        return np.vectorize(complex, otypes=[np.complex128])(arr) if arr.size else arr.astype(np.complex128)
    return arr.astype(np.complex128)


def to_backend(M, backend: str) -> np.ndarray:
    if backend == EXACT:
        return as_exact(M)
    if backend == FLOAT:
        return as_float(M)
    raise ValueError(f"unknown backend {backend!r}")


def zeros(rows: int, cols: int, backend: str) -> np.ndarray:
    if backend == EXACT:
        return np.full((rows, cols), ZERO, dtype=object)
    return np.zeros((rows, cols), dtype=np.complex128)


def eye(n: int, backend: str) -> np.ndarray:
    M = zeros(n, n, backend)
    for i in range(n):
        M[i, i] = ONE if backend == EXACT else 1.0
    return M


def conj(M: np.ndarray) -> np.ndarray:
    if M.dtype == object:
        out = M.copy()
        for idx, v in np.ndenumerate(M):
            if isinstance(v, GaussianRational):
                out[idx] = v.conjugate()
        return out
    return M.conj()


def conj_t(M: np.ndarray) -> np.ndarray:
    return conj(M).T


def is_real(M: np.ndarray, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    if M.dtype == object:
        return not any(isinstance(v, GaussianRational) for v in M.flat)
    return bool(np.all(np.abs(M.imag) <= pol.equality_tol * (1.0 + np.abs(M.real))))


# ----------------------------------------------------------------------------
# exact elimination


def rref(M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over Q(i) and the pivot columns."""
    R = np.array(M, dtype=object, copy=True)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = [i for i in range(r, rows) if R[i, c] != 0]
        if not nz:
            continue
        p = nz[0]
        if p != r:
            R[[r, p], c:] = R[[p, r], c:]
        piv = R[r, c]
        if piv != 1:
            R[r, c:] = R[r, c:] * (ONE / piv)
        others = [i for i in range(rows) if i != r and R[i, c] != 0]
        if others:
            R[np.ix_(others, range(c, cols))] -= np.outer(R[others, c], R[r, c:])
        pivots.append(c)
        r += 1
    return R, pivots


def _exact_nullspace(M: np.ndarray) -> np.ndarray:
    rows, cols = M.shape
    R, pivots = rref(M) if rows else (M, [])
    free = [j for j in range(cols) if j not in set(pivots)]
    N = zeros(cols, len(free), EXACT)
    for k, j in enumerate(free):
        N[j, k] = ONE
        for i, pc in enumerate(pivots):
            v = R[i, j]
            if v != 0:
                N[pc, k] = -v
    return N


def _exact_colspace(M: np.ndarray) -> np.ndarray:
    rows, cols = M.shape
    if cols == 0 or rows == 0:
        return zeros(rows, 0, EXACT)
    R, pivots = rref(M.T)
    return np.ascontiguousarray(R[: len(pivots)].T)


# ----------------------------------------------------------------------------
# floating SVD path


def _threshold(s: np.ndarray, shape: tuple[int, int], pol: TolerancePolicy, scale: float | None) -> float:
    smax = float(s[0]) if s.size else 0.0
    if scale is not None:
        smax = max(smax, scale)
    return pol.rank_rel_tol * max(shape) * smax


def _svd(M: np.ndarray, pol: TolerancePolicy, scale: float | None):
    U, s, Vh = np.linalg.svd(M, full_matrices=True)
    r = int(np.sum(s > _threshold(s, M.shape, pol, scale))) if s.size else 0
    return U, s, Vh, r


# ----------------------------------------------------------------------------
# public kernel


def rank(M: np.ndarray, pol: TolerancePolicy = DEFAULT_POLICY, scale: float | None = None) -> int:
    """Numerical rank.

    ``scale`` is a lower bound on the reference magnitude used by the floating
    threshold.  Callers pass it when ``M`` is a block of an orthonormal basis,
    where a pure-noise block must not be measured against its own size.
    """
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return 0
    if M.dtype == object:
        return len(rref(M)[1])
    return _svd(M, pol, scale)[3]


def nullspace(M: np.ndarray, pol: TolerancePolicy = DEFAULT_POLICY, scale: float | None = None) -> np.ndarray:
    """Columns spanning ``{x : M x = 0}``."""
    rows, cols = M.shape
    if M.dtype == object:
        return _exact_nullspace(M)
    if rows == 0 or cols == 0:
        return np.eye(cols, dtype=np.complex128)
    _, _, Vh, r = _svd(M, pol, scale)
    return np.ascontiguousarray(Vh[r:].conj().T)


def colspace(M: np.ndarray, pol: TolerancePolicy = DEFAULT_POLICY, scale: float | None = None) -> np.ndarray:
    """Canonical basis of the column span.

    Exact: reduced column echelon form (unique).  Float: orthonormal columns.
    """
    rows, cols = M.shape
    if M.dtype == object:
        return _exact_colspace(M)
    if rows == 0 or cols == 0:
        return np.zeros((rows, 0), dtype=np.complex128)
    U, _, _, r = _svd(M, pol, scale)
    return np.ascontiguousarray(U[:, :r])


def solve(M: np.ndarray, b: np.ndarray, pol: TolerancePolicy = DEFAULT_POLICY, scale: float | None = None):
    """A particular solution of ``M x = b`` or ``None`` if inconsistent.

    Exact: the echelon solution with every free variable set to zero.
    Float: the minimum-norm solution, accepted if the residual is within
    ``equality_tol``.
    """
    rows, cols = M.shape
    b = np.asarray(b)
    if M.dtype == object:
        aug = np.concatenate([M, b.reshape(rows, 1).astype(object)], axis=1)
        R, pivots = rref(aug) if rows else (aug, [])
        if cols in pivots:
            return None
        x = zeros(cols, 1, EXACT)[:, 0]
        for i, pc in enumerate(pivots):
            x[pc] = R[i, cols]
        return x
    if rows == 0:
        return np.zeros(cols, dtype=np.complex128)
    if cols == 0:
        return np.zeros(0, dtype=np.complex128) if np.linalg.norm(b) <= pol.equality_tol else None
    U, s, Vh, r = _svd(M, pol, scale)
    x = Vh[:r].conj().T @ ((U[:, :r].conj().T @ b) / s[:r])
    resid = np.linalg.norm(M @ x - b)
    if resid > pol.equality_tol * max(1.0, float(np.linalg.norm(b))):
        return None
    return x


def inverse(M: np.ndarray, pol: TolerancePolicy = DEFAULT_POLICY) -> np.ndarray:
    n, m = M.shape
    if n != m:
        raise ValueError("inverse needs a square matrix")
    if M.dtype == object:
        R, pivots = rref(np.concatenate([M, eye(n, EXACT)], axis=1))
        if pivots[:n] != list(range(n)) or len(pivots) > n:
            raise np.linalg.LinAlgError("singular matrix")
        return np.ascontiguousarray(R[:, n:])
    if rank(M, pol) < n:
        raise np.linalg.LinAlgError("singular matrix")
    return np.linalg.inv(M)


def is_zero(M: np.ndarray, pol: TolerancePolicy = DEFAULT_POLICY, scale: float = 1.0) -> bool:
    if M.size == 0:
        return True
    if M.dtype == object:
        return all(v == 0 for v in M.flat)
    return float(np.max(np.abs(M))) <= pol.equality_tol * scale


def matrix_equal(A: np.ndarray, B: np.ndarray, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    if A.shape != B.shape:
        return False
    return is_zero(A - B, pol, scale=1.0 + (float(np.max(np.abs(A))) if A.dtype != object and A.size else 0.0))


def is_hermitian_psd(M: np.ndarray, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """Hermitian positive semidefiniteness.

    Exact: ``M == M^H`` and every LDL^H pivot is nonnegative (a zero pivot
    must come with a zero column).  Float: Hermitian within ``psd_tol`` and
    the Hermitian part has no eigenvalue below ``-psd_tol (1 + ||M||)``.
    """
    rows, cols = M.shape
    if rows != cols:
        raise ValueError(f"is_hermitian_psd needs a square matrix, got {rows}x{cols}")
    if rows == 0:
        return True
    if M.dtype == object:
        if not all(v == 0 for v in (M - conj_t(M)).flat):
            return False
        return _ldl_pivots_nonnegative(M)
    norm = float(np.linalg.norm(M, 2))
    slack = pol.psd_tol * (1.0 + norm)
    if float(np.linalg.norm(M - M.conj().T, 2)) > slack:
        return False
    H = (M + M.conj().T) / 2
    return bool(np.linalg.eigvalsh(H).min() >= -slack)


def _ldl_pivots_nonnegative(M: np.ndarray) -> bool:
    A = np.array(M, dtype=object, copy=True)
    n = A.shape[0]
    for k in range(n):
        d = re_part(A[k, k])
        if d < 0:
            return False
        rest = [i for i in range(k + 1, n) if A[i, k] != 0]
        if d == 0:
            if rest:
                return False
            continue
        # trailing block stays Hermitian, so row k is conj of column k
        for i in rest:
            A[i, k + 1 :] -= (A[i, k] / d) * A[k, k + 1 :]
    return True


def hermitian_part(M: np.ndarray) -> np.ndarray:
    H = M + conj_t(M)
    if M.dtype == object:
        return H * mpq(1, 2)
    return H / 2


__all__ = [
    "EXACT",
    "FLOAT",
    "BACKENDS",
    "TolerancePolicy",
    "DEFAULT_POLICY",
    "backend_of",
    "as_exact",
    "as_float",
    "to_backend",
    "zeros",
    "eye",
    "conj",
    "conj_t",
    "is_real",
    "rref",
    "rank",
    "nullspace",
    "colspace",
    "solve",
    "inverse",
    "is_zero",
    "matrix_equal",
    "is_hermitian_psd",
    "hermitian_part",
    "gauss",
]
