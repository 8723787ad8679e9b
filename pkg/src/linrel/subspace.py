"""Subspaces of F^m with lattice operations and decidable comparison."""

from __future__ import annotations

import numpy as np

from . import numkernel as nk
from .numkernel import DEFAULT_POLICY, EXACT, TolerancePolicy


class AmbientMismatch(ValueError):
    pass


class Subspace:
    """A subspace of ``F^m`` held by a canonical basis.

    The basis is reduced column echelon form for exact data and orthonormal
    for floating data.  The zero subspace has a basis with no columns.
    Instances are immutable; ``==`` and ``<=`` are subspace equality and
    inclusion (tolerance-based for floats, so instances are unhashable).
    """

    __slots__ = ("_basis", "pol")
    __hash__ = None

    def __init__(self, basis: np.ndarray, pol: TolerancePolicy = DEFAULT_POLICY, *, _canonical: bool = False):
        basis = np.asarray(basis)
        if basis.ndim != 2:
            raise ValueError("basis must be a 2-D array")
        if not _canonical:
            basis = nk.colspace(basis, pol)
        basis.flags.writeable = False
        self._basis = basis
        self.pol = pol

    # construction helpers
    @classmethod
    def zero(cls, m: int, backend: str = EXACT, pol: TolerancePolicy = DEFAULT_POLICY) -> "Subspace":
        return cls(nk.zeros(m, 0, backend), pol, _canonical=True)

    @classmethod
    def full(cls, m: int, backend: str = EXACT, pol: TolerancePolicy = DEFAULT_POLICY) -> "Subspace":
        return cls(nk.eye(m, backend), pol, _canonical=True)

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    @property
    def ambient_dim(self) -> int:
        return self._basis.shape[0]

    @property
    def dim(self) -> int:
        return self._basis.shape[1]

    @property
    def backend(self) -> str:
        return nk.backend_of(self._basis)

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _check(self, other: "Subspace"):
        if not isinstance(other, Subspace):
            raise TypeError(f"expected Subspace, got {type(other).__name__}")
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch(f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")
        if other.backend != self.backend:
            raise ValueError("cannot mix exact and float subspaces")

    def _wrap(self, basis: np.ndarray) -> "Subspace":
        return Subspace(basis, self.pol, _canonical=True)

    # lattice operations
    def complement(self) -> "Subspace":
        """Orthogonal complement for <u, v> = v^H u."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim, self.backend, self.pol)
        N = nk.nullspace(nk.conj_t(self._basis), self.pol, scale=1.0)
        return Subspace(N, self.pol)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        stacked = np.concatenate([self._basis, other._basis], axis=1)
        return Subspace(nk.colspace(stacked, self.pol, scale=1.0), self.pol, _canonical=True)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        # complement of the sum of complements
        return (self.complement() + other.complement()).complement()

    def residual(self, v: np.ndarray) -> float:
        """Distance from ``v`` to the subspace (floating backend only)."""
        v = np.asarray(v, dtype=np.complex128)
        Q = self._basis
        return float(np.linalg.norm(v - Q @ (Q.conj().T @ v)))

    def contains(self, v) -> bool:
        v = np.asarray(v)
        if v.shape != (self.ambient_dim,):
            raise AmbientMismatch(f"vector of length {v.shape} in ambient dimension {self.ambient_dim}")
        if self.backend == EXACT:
            v = nk.as_exact(v)
            if all(x == 0 for x in v):
                return True
            if self.dim == 0:
                return False
            return nk.rank(np.concatenate([self._basis, v[:, None]], axis=1)) == self.dim
        v = nk.as_float(v)
        return self.residual(v) <= self.pol.equality_tol * max(1.0, float(np.linalg.norm(v)))

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim == 0:
            return True
        if self.dim > other.dim:
            return False
        if self.backend == EXACT:
            return (self + other).dim == other.dim
        P = other._basis
        R = self._basis - P @ (P.conj().T @ self._basis)
        return float(np.max(np.linalg.norm(R, axis=0))) <= self.pol.equality_tol

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        if self.dim != other.dim:
            return False
        if self.backend == EXACT:
            return all(a == b for a, b in zip(self._basis.flat, other._basis.flat))
        return self <= other

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def to_backend(self, backend: str, pol: TolerancePolicy | None = None) -> "Subspace":
        pol = pol or self.pol
        if backend == self.backend:
            return self if pol == self.pol else Subspace(self._basis, pol, _canonical=True)
        return Subspace(nk.to_backend(self._basis, backend), pol)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim}, backend={self.backend})"


def span_of(vectors, pol: TolerancePolicy = DEFAULT_POLICY, scale: float | None = None) -> Subspace:
    """Canonical subspace spanned by the columns of ``vectors``."""
    M = np.asarray(vectors)
    if M.ndim != 2:
        raise ValueError("vectors must be a 2-D array (one vector per column)")
    return Subspace(nk.colspace(M, pol, scale=scale), pol, _canonical=True)


def complement(S: Subspace) -> Subspace:
    return S.complement()


def sum(A: Subspace, B: Subspace) -> Subspace:  # noqa: A001 - mirrors the lattice name
    return A + B


def intersect(A: Subspace, B: Subspace) -> Subspace:
    return A & B


def leq(A: Subspace, B: Subspace) -> bool:
    return A <= B


def equals(A: Subspace, B: Subspace) -> bool:
    return A == B


def contains_vector(A: Subspace, v) -> bool:
    return A.contains(v)


def dim(A: Subspace) -> int:
    return A.dim
