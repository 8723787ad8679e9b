"""Linear relations on F^n: subspaces of F^n x F^n.

A carrier vector is ``(f; f')`` with ``f`` the first ``n`` coordinates and
``f'`` the last ``n``.  Everything here is finite dimensional, so every
relation is closed and "densely defined" means ``dom(T) = F^n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numkernel as nk
from .numkernel import DEFAULT_POLICY, EXACT, TolerancePolicy
from .subspace import AmbientMismatch, Subspace, span_of

FIELDS = ("complex", "real")


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Coset:
    """``representative + direction``; the value set ``T(x)``."""

    representative: np.ndarray
    direction: Subspace

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coset):
            return NotImplemented
        return self.direction == other.direction and self.direction.contains(
            self.representative - other.representative
        )

    __hash__ = None

    def contains(self, y) -> bool:
        return self.direction.contains(np.asarray(y) - self.representative)

    def __le__(self, other: "Coset") -> bool:
        return self.direction <= other.direction and other.contains(self.representative)

    def scale(self, alpha) -> "Coset":
        if alpha == 0:
            return Coset(self.representative * alpha, Subspace.zero(len(self.representative), self.direction.backend, self.direction.pol))
        return Coset(self.representative * alpha, self.direction)

    def __add__(self, other: "Coset") -> "Coset":
        return Coset(self.representative + other.representative, self.direction + other.direction)


class LinearRelation:
    """A linear relation ``T`` on ``F^n``, stored as its carrier subspace."""

    __slots__ = ("n", "carrier", "field")
    __hash__ = None

    def __init__(self, n: int, carrier: Subspace, field: str = "complex"):
        if carrier.ambient_dim != 2 * n:
            raise DimensionMismatch(f"carrier ambient dimension {carrier.ambient_dim} != 2*{n}")
        if field not in FIELDS:
            raise ValueError(f"field must be one of {FIELDS}")
        self.n = n
        self.carrier = carrier
        self.field = field

    # basic accessors
    @property
    def pol(self) -> TolerancePolicy:
        return self.carrier.pol

    @property
    def backend(self) -> str:
        return self.carrier.backend

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def space_dim(self) -> int:
        return self.n

    def blocks(self) -> tuple[np.ndarray, np.ndarray]:
        """``(A, B)`` with the carrier basis equal to ``[A; B]``."""
        Bs = self.carrier.basis
        return Bs[: self.n], Bs[self.n :]

    def pairs(self) -> list[tuple[np.ndarray, np.ndarray]]:
        A, B = self.blocks()
        return [(A[:, j].copy(), B[:, j].copy()) for j in range(self.dim)]

    def _like(self, carrier: Subspace) -> "LinearRelation":
        return LinearRelation(self.n, carrier, self.field)

    def _check(self, other: "LinearRelation"):
        if not isinstance(other, LinearRelation):
            raise TypeError(f"expected LinearRelation, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatch(f"space dimensions differ: {self.n} vs {other.n}")
        if other.backend != self.backend:
            raise ValueError("cannot mix exact and float relations")
        if other.field != self.field:
            raise ValueError("cannot mix real-field and complex-field relations")

    def _sub(self, vectors: np.ndarray) -> Subspace:
        return span_of(vectors, self.pol, scale=1.0)

    # comparison is carrier comparison
    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearRelation):
            return NotImplemented
        self._check(other)
        return self.carrier == other.carrier

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __le__(self, other: "LinearRelation") -> bool:
        self._check(other)
        return self.carrier <= other.carrier

    def __ge__(self, other: "LinearRelation") -> bool:
        return other <= self

    def __and__(self, other: "LinearRelation") -> "LinearRelation":
        return intersect_rel(self, other)

    def to_backend(self, backend: str, pol: TolerancePolicy | None = None) -> "LinearRelation":
        return LinearRelation(self.n, self.carrier.to_backend(backend, pol), self.field)

    def with_field(self, field: str) -> "LinearRelation":
        return LinearRelation(self.n, self.carrier, field)

    def __repr__(self):
        return f"LinearRelation(n={self.n}, dim={self.dim}, backend={self.backend}, field={self.field})"


# ----------------------------------------------------------------------------
# construction


def from_pairs(pairs, n: int, pol: TolerancePolicy = DEFAULT_POLICY, backend: str = EXACT, field: str = "complex") -> LinearRelation:
    """Relation spanned by the given ``(f, f')`` pairs."""
    cols = []
    for k, (f, fp) in enumerate(pairs):
        f = np.asarray(f)
        fp = np.asarray(fp)
        if f.shape != (n,) or fp.shape != (n,):
            raise DimensionMismatch(f"pair {k} has lengths {f.shape}, {fp.shape}; expected {n}")
        cols.append(np.concatenate([nk.to_backend(f, backend), nk.to_backend(fp, backend)]))
    if not cols:
        return zero_rel(n, backend, pol, field)
    M = np.stack(cols, axis=1)
    return LinearRelation(n, span_of(M, pol), field)


def from_blocks(A: np.ndarray, B: np.ndarray, pol: TolerancePolicy = DEFAULT_POLICY, field: str = "complex") -> LinearRelation:
    """Relation spanned by the columns of ``[A; B]``."""
    if A.ndim != 2 or A.shape != B.shape:
        raise DimensionMismatch(f"block shapes differ: {A.shape} vs {B.shape}")
    n = A.shape[0]
    return LinearRelation(n, span_of(np.concatenate([A, B], axis=0), pol), field)


def graph_of(A, pol: TolerancePolicy = DEFAULT_POLICY, backend: str | None = None, field: str = "complex") -> LinearRelation:
    """Graph ``{(f, A f)}`` of a square matrix."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"graph_of needs a square matrix, got shape {A.shape}")
    if backend is None:
        backend = nk.FLOAT if A.dtype.kind in "fc" else EXACT
    A = nk.to_backend(A, backend)
    n = A.shape[0]
    return from_blocks(nk.eye(n, backend), A, pol, field)


def identity_rel(n: int, backend: str = EXACT, pol: TolerancePolicy = DEFAULT_POLICY, field: str = "complex") -> LinearRelation:
    return graph_of(nk.eye(n, backend), pol, backend, field)


def zero_rel(n: int, backend: str = EXACT, pol: TolerancePolicy = DEFAULT_POLICY, field: str = "complex") -> LinearRelation:
    """The relation ``{(0, 0)}``."""
    return LinearRelation(n, Subspace.zero(2 * n, backend, pol), field)


def full_rel(n: int, backend: str = EXACT, pol: TolerancePolicy = DEFAULT_POLICY, field: str = "complex") -> LinearRelation:
    """``F^n x F^n``."""
    return LinearRelation(n, Subspace.full(2 * n, backend, pol), field)


def multivalued_rel(M: Subspace, field: str = "complex") -> LinearRelation:
    """``{0} x M``."""
    n = M.ambient_dim
    Z = nk.zeros(n, M.dim, M.backend)
    return LinearRelation(n, span_of(np.concatenate([Z, M.basis], axis=0), M.pol), field)


# ----------------------------------------------------------------------------
# domain, range, kernel, multivalued part


def dom(T: LinearRelation) -> Subspace:
    A, _ = T.blocks()
    return T._sub(A)


def ran(T: LinearRelation) -> Subspace:
    _, B = T.blocks()
    return T._sub(B)


def ker(T: LinearRelation) -> Subspace:
    A, B = T.blocks()
    if T.dim == 0:
        return Subspace.zero(T.n, T.backend, T.pol)
    return T._sub(_mm(A, nk.nullspace(B, T.pol, scale=1.0), T.backend))


def mul(T: LinearRelation) -> Subspace:
    A, B = T.blocks()
    if T.dim == 0:
        return Subspace.zero(T.n, T.backend, T.pol)
    return T._sub(_mm(B, nk.nullspace(A, T.pol, scale=1.0), T.backend))


def image_at(T: LinearRelation, x) -> Coset | None:
    """``T(x)`` as a coset of ``mul(T)``, or ``None`` when ``x`` is not in the domain.

    The representative is the first echelon solution (exact) or the
    minimum-norm element of the coset (float).
    """
    x = np.asarray(x)
    if x.shape != (T.n,):
        raise DimensionMismatch(f"vector of length {x.shape} for space dimension {T.n}")
    x = nk.to_backend(x, T.backend)
    A, B = T.blocks()
    c = nk.solve(A, x, T.pol, scale=1.0)
    if c is None:
        return None
    y = _mm(B, c[:, None], T.backend)[:, 0]
    M = mul(T)
    if T.backend != EXACT and M.dim:
        Q = M.basis
        y = y - Q @ (Q.conj().T @ y)
    return Coset(y, M)


# ----------------------------------------------------------------------------
# constructions


def _mm(X: np.ndarray, Y: np.ndarray, backend: str) -> np.ndarray:
    # object matmul over an empty inner dimension yields int zeros
    if X.shape[1] == 0:
        return nk.zeros(X.shape[0], Y.shape[1], backend)
    return X @ Y


def _J(V: np.ndarray, n: int) -> np.ndarray:
    """``J (f; g) = (g; -f)`` applied column-wise."""
    return np.concatenate([V[n:], -V[:n]], axis=0)


def adjoint(T: LinearRelation) -> LinearRelation:
    """``T* = (J T)^perp``."""
    # J preserves independence; complement() canonicalizes its output
    JT = Subspace(_J(T.carrier.basis, T.n), T.pol, _canonical=True)
    return T._like(JT.complement())


def adjoint_by_definition(T: LinearRelation) -> LinearRelation:
    """``T*`` by solving ``<f', h> = <f, h'>`` against each basis pair of ``T``.

    With ``<a, b> = b^H a`` the constraint on ``(f; f')`` for a pair
    ``(h, h')`` is ``h^H f' - h'^H f = 0``.
    """
    A, B = T.blocks()
    if T.dim == 0:
        return full_rel(T.n, T.backend, T.pol, T.field)
    constraints = np.concatenate([-nk.conj_t(B), nk.conj_t(A)], axis=1)
    return T._like(span_of(nk.nullspace(constraints, T.pol, scale=1.0), T.pol))


def adjoint_via_complement(T: LinearRelation) -> LinearRelation:
    """``J (T^perp)``; agrees with :func:`adjoint` since J is unitary."""
    P = T.carrier.complement()
    return T._like(span_of(_J(P.basis, T.n), T.pol, scale=1.0))


def satisfies_adjoint_identity(T: LinearRelation, f, fp) -> bool:
    """Whether ``<f', h> = <f, h'>`` holds for every ``(h, h')`` in ``T``."""
    f = nk.to_backend(np.asarray(f), T.backend)
    fp = nk.to_backend(np.asarray(fp), T.backend)
    A, B = T.blocks()
    if T.dim == 0:
        return True
    lhs = nk.conj_t(A) @ fp
    rhs = nk.conj_t(B) @ f
    scale = 1.0 if T.backend == EXACT else max(1.0, float(np.linalg.norm(f)), float(np.linalg.norm(fp)))
    return nk.is_zero(lhs - rhs, T.pol, scale=scale)


def rel_sum(T: LinearRelation, S: LinearRelation) -> LinearRelation:
    """``T + S = {(k, l + m) : (k, l) in T, (k, m) in S}``."""
    T._check(S)
    A1, B1 = T.blocks()
    A2, B2 = S.blocks()
    N = nk.nullspace(np.concatenate([A1, -A2], axis=1), T.pol, scale=1.0)
    c, d = N[: T.dim], N[T.dim :]
    k = _mm(A1, c, T.backend)
    return T._like(T._sub(np.concatenate([k, _mm(B1, c, T.backend) + _mm(B2, d, T.backend)], axis=0)))


def plus_identity(T: LinearRelation) -> LinearRelation:
    """``I + T``."""
    return rel_sum(identity_rel(T.n, T.backend, T.pol, T.field), T)


def sum_set(T: LinearRelation) -> Subspace:
    """``{k + l : (k, l) in T}``, computed directly from the carrier."""
    A, B = T.blocks()
    return T._sub(A + B)


def compose(S: LinearRelation, T: LinearRelation) -> LinearRelation:
    """Product ``S T = {(k, l) : (k, x) in T, (x, l) in S for some x}``."""
    T._check(S)
    A1, B1 = T.blocks()
    A2, B2 = S.blocks()
    N = nk.nullspace(np.concatenate([B1, -A2], axis=1), T.pol, scale=1.0)
    c, d = N[: T.dim], N[T.dim :]
    return T._like(T._sub(np.concatenate([_mm(A1, c, T.backend), _mm(B2, d, T.backend)], axis=0)))


def inverse(T: LinearRelation) -> LinearRelation:
    """``T^{-1} = {(y, x) : (x, y) in T}``."""
    A, B = T.blocks()
    return T._like(Subspace(np.concatenate([B, A], axis=0), T.pol, _canonical=T.backend != EXACT))


def intersect_rel(T: LinearRelation, S: LinearRelation) -> LinearRelation:
    T._check(S)
    return T._like(T.carrier & S.carrier)


def closure(T: LinearRelation) -> LinearRelation:
    """Every subspace of F^n x F^n is closed, so this is the identity map."""
    return T


def is_closed(T: LinearRelation) -> bool:
    return True


# ----------------------------------------------------------------------------
# classification


def gram(T: LinearRelation) -> np.ndarray:
    """``A^H B`` for the carrier basis ``[A; B]``: entry (i, j) is <f'_j, f_i>."""
    A, B = T.blocks()
    return nk.conj_t(A) @ B


def is_symmetric(T: LinearRelation) -> bool:
    """``T <= T*``."""
    return T <= adjoint(T)


def is_symmetric_gram(T: LinearRelation) -> bool:
    """Symmetry through the Gram test: ``A^H B`` is Hermitian."""
    G = gram(T)
    return nk.matrix_equal(G, nk.conj_t(G), T.pol)


def is_self_adjoint(T: LinearRelation) -> bool:
    return T == adjoint(T)


def is_positive(T: LinearRelation) -> bool:
    """``<f', f> >= 0`` on ``T``.

    Over the complex field this is PSD-ness of ``A^H B`` (which forces
    symmetry); over the reals only the Hermitian part has to be PSD.
    """
    G = gram(T)
    if T.field == "real":
        G = nk.hermitian_part(G)
    return nk.is_hermitian_psd(G, T.pol)


def is_single_valued(T: LinearRelation) -> bool:
    return mul(T).is_zero


def is_densely_defined(T: LinearRelation) -> bool:
    # dense == everything in finite dimension
    return dom(T).is_full


def is_operator(T: LinearRelation) -> bool:
    return is_single_valued(T)


def operator_matrix(T: LinearRelation) -> np.ndarray:
    """Matrix of an everywhere-defined single-valued relation."""
    if not (is_single_valued(T) and is_densely_defined(T)):
        raise ValueError("relation is not the graph of an everywhere-defined operator")
    A, B = T.blocks()
    return B @ nk.inverse(A, T.pol)


def pair_inner(p1, p2):
    """``<(k, l), (x, y)> = <k, x> + <l, y>`` with ``<a, b> = b^H a``."""
    (k, l), (x, y) = p1, p2
    k, l, x, y = (np.asarray(v) for v in (k, l, x, y))
    if not (k.shape == l.shape == x.shape == y.shape):
        raise DimensionMismatch("pair components must share one length")
    if k.dtype == object or x.dtype == object:
        k, l, x, y = (nk.as_exact(v) for v in (k, l, x, y))
        return (nk.conj(x) @ k) + (nk.conj(y) @ l)
    return complex(np.vdot(x, k) + np.vdot(y, l))


def linearity_containment_check(T: LinearRelation, x1, x2, alpha, beta) -> bool:
    """``alpha T(x1) + beta T(x2) <= T(alpha x1 + beta x2)``; vacuous on empty images."""
    x1 = nk.to_backend(np.asarray(x1), T.backend)
    x2 = nk.to_backend(np.asarray(x2), T.backend)
    if T.backend == EXACT:
        alpha, beta = nk.as_exact(np.array([alpha, beta], dtype=object))
    c1 = image_at(T, x1)
    c2 = image_at(T, x2)
    if c1 is None or c2 is None:
        return True
    target = image_at(T, alpha * x1 + beta * x2)
    if target is None:
        return False
    return c1.scale(alpha) + c2.scale(beta) <= target


def classify(T: LinearRelation) -> dict:
    return {
        "symmetric": is_symmetric(T),
        "self_adjoint": is_self_adjoint(T),
        "positive": is_positive(T),
        "single_valued": is_single_valued(T),
        "densely_defined": is_densely_defined(T),
        "dim": T.dim,
        "dom_dim": dom(T).dim,
        "ran_dim": ran(T).dim,
        "ker_dim": ker(T).dim,
        "mul_dim": mul(T).dim,
    }


__all__ = [
    "AmbientMismatch",
    "Coset",
    "DimensionMismatch",
    "FIELDS",
    "LinearRelation",
    "adjoint",
    "adjoint_by_definition",
    "adjoint_via_complement",
    "classify",
    "closure",
    "compose",
    "dom",
    "from_blocks",
    "from_pairs",
    "full_rel",
    "gram",
    "graph_of",
    "identity_rel",
    "image_at",
    "intersect_rel",
    "inverse",
    "is_closed",
    "is_densely_defined",
    "is_operator",
    "is_positive",
    "is_self_adjoint",
    "is_single_valued",
    "is_symmetric",
    "is_symmetric_gram",
    "ker",
    "linearity_containment_check",
    "mul",
    "multivalued_rel",
    "operator_matrix",
    "pair_inner",
    "plus_identity",
    "ran",
    "rel_sum",
    "satisfies_adjoint_identity",
    "sum_set",
    "zero_rel",
]
