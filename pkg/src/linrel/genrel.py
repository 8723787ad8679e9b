"""Seeded generators for subspaces and relation classes.

All draws are built in exact arithmetic from small rationals ``p/q`` with
``|p|, q <= entry_bound`` and only then converted to the requested backend,
so every floating draw has an exact twin.

Randomness comes from numpy's PCG64 bit generator seeded through a
``SeedSequence``; per-case seeds are derived with :func:`derive_seed`, so
draws never share generator state.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from gmpy2 import mpq

from . import numkernel as nk
from .numkernel import DEFAULT_POLICY, EXACT, TolerancePolicy
from .relation import LinearRelation, dom, from_blocks
from .scalars import gauss
from .subspace import Subspace

PRNG_ALGORITHM = "numpy PCG64 via SeedSequence(entropy=seed, spawn_key=key)"

CLASSES = (
    "any",
    "symmetric",
    "positive",
    "selfadjoint",
    "positive_operator",
    "singlevalued",
    "subrelation_pair",
)


def derive_seed(seed: int, *key: int) -> int:
    """A 64-bit seed for the stream ``key`` under ``seed``."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class GenConfig:
    space_dim: int
    seed: int = 0
    entry_bound: int = 4
    cls: str = "any"
    field: str = "complex"
    complex_entries: bool | None = None
    backend: str = EXACT
    pol: TolerancePolicy = DEFAULT_POLICY

    def __post_init__(self):
        if not 1 <= self.space_dim <= 12:
            raise ValueError("space_dim must be in 1..12")
        if self.entry_bound < 1:
            raise ValueError("entry_bound must be >= 1")
        if self.cls not in CLASSES:
            raise ValueError(f"unknown relation class {self.cls!r}")
        if self.complex_entries and self.field == "real":
            raise ValueError("complex entries need the complex field")

    @property
    def use_complex(self) -> bool:
        if self.complex_entries is None:
            return self.field == "complex"
        return self.complex_entries

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))

    def with_(self, **kw) -> "GenConfig":
        return replace(self, **kw)


class _Draw:
    """Bundles the generator state with the entry distribution for one draw."""

    def __init__(self, cfg: GenConfig, rng: np.random.Generator | None = None):
        self.cfg = cfg
        self.rng = rng if rng is not None else cfg.rng()
        self.n = cfg.space_dim

    def rational(self) -> mpq:
        b = self.cfg.entry_bound
        p = int(self.rng.integers(-b, b + 1))
        q = int(self.rng.integers(1, b + 1))
        return mpq(p, q)

    def scalar(self):
        re_ = self.rational()
        # imaginary parts are sparse so real and complex structure both show up
        if self.cfg.use_complex and self.rng.random() < 0.5:
            return gauss(re_, self.rational())
        return re_

    def matrix(self, rows: int, cols: int) -> np.ndarray:
        M = np.empty((rows, cols), dtype=object)
        for i in range(rows):
            for j in range(cols):
                M[i, j] = self.scalar()
        return M

    def full_rank(self, rows: int, cols: int) -> np.ndarray:
        """Random matrix of rank ``min(rows, cols)``."""
        while True:
            M = self.matrix(rows, cols)
            if nk.rank(M) == min(rows, cols):
                return M

    def low_rank(self, rows: int, cols: int, r: int | None = None) -> np.ndarray:
        if r is None:
            r = int(self.rng.integers(0, min(rows, cols) + 1))
        if r == 0:
            return nk.zeros(rows, cols, EXACT)
        return self.full_rank(rows, r) @ self.full_rank(r, cols)

    def hermitian(self, k: int, kind: str = "any") -> np.ndarray:
        """Hermitian ``k x k`` matrix.

        kind: ``any``, ``psd`` (possibly singular), ``invertible`` or
        ``pd`` (positive definite).
        """
        if k == 0:
            return nk.zeros(0, 0, EXACT)
        if kind == "any":
            C = self.matrix(k, k)
            return nk.hermitian_part(C)
        if kind == "psd":
            C = self.low_rank(k, k)
            return nk.conj_t(C) @ C
        C = self.full_rank(k, k)
        d = nk.zeros(k, k, EXACT)
        for i in range(k):
            v = mpq(int(self.rng.integers(1, self.cfg.entry_bound + 1)))
            if kind == "invertible" and self.rng.random() < 0.5:
                v = -v
            d[i, i] = v
        return nk.conj_t(C) @ d @ C

    def subspace(self, m: int, d: int) -> Subspace:
        if not 0 <= d <= m:
            raise ValueError(f"subspace dimension {d} outside 0..{m}")
        if d == 0:
            return Subspace.zero(m, EXACT)
        return Subspace(self.full_rank(m, d))

    def pick(self, lo: int, hi: int) -> int:
        """Uniform integer in ``lo..hi`` inclusive."""
        return int(self.rng.integers(lo, hi + 1))

    def finish(self, T: LinearRelation) -> LinearRelation:
        T = T.with_field(self.cfg.field)
        if self.cfg.backend != EXACT:
            T = T.to_backend(self.cfg.backend, self.cfg.pol)
        return T


def _rel(A: np.ndarray, B: np.ndarray) -> LinearRelation:
    return from_blocks(A, B)


def _mv_block(n: int, M: Subspace) -> tuple[np.ndarray, np.ndarray]:
    return nk.zeros(n, M.dim, EXACT), M.basis


def _cat(*blocks: tuple[np.ndarray, np.ndarray]) -> LinearRelation:
    A = np.concatenate([b[0] for b in blocks], axis=1)
    B = np.concatenate([b[1] for b in blocks], axis=1)
    return _rel(A, B)


def _operator_on(Q: np.ndarray, G: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pairs ``(Q a, Q (Q^H Q)^{-1} G a)``; their Gram matrix ``A^H B`` is ``G``."""
    if Q.shape[1] == 0:
        return Q, Q
    W = nk.inverse(nk.conj_t(Q) @ Q)
    return Q, Q @ (W @ G)


# ----------------------------------------------------------------------------
# draws on an explicit generator (used by the theorem generators)


def draw_relation(d: _Draw, dim: int | None = None) -> LinearRelation:
    n = d.n
    k = d.pick(0, 2 * n) if dim is None else dim
    if not 0 <= k <= 2 * n:
        raise ValueError(f"carrier dimension {k} outside 0..{2 * n}")
    if k in (0, 2 * n) or d.rng.random() < 0.5:
        S = d.subspace(2 * n, k)
        return LinearRelation(n, S)
    # structured: partial, possibly rank-deficient operator plus a multivalued part
    b = d.pick(max(0, k - n), min(k, n))
    a = k - b
    X = d.full_rank(n, a) if a else nk.zeros(n, 0, EXACT)
    L = d.low_rank(n, a) if a else nk.zeros(n, 0, EXACT)
    M = d.subspace(n, b)
    return _cat((X, L), _mv_block(n, M))


def draw_matrix_graph(d: _Draw) -> LinearRelation:
    n = d.n
    return _rel(nk.eye(n, EXACT), d.matrix(n, n))


def draw_operator(d: _Draw, dom_dim: int | None = None) -> LinearRelation:
    n = d.n
    a = d.pick(0, n) if dom_dim is None else dom_dim
    X = d.full_rank(n, a) if a else nk.zeros(n, 0, EXACT)
    L = d.matrix(n, a) if a else nk.zeros(n, 0, EXACT)
    return _rel(X, L)


def draw_selfadjoint(d: _Draw, kind: str = "any", mul_dim: int | None = None) -> LinearRelation:
    """Hermitian operator part on ``M^perp`` plus ``{0} x M``."""
    n = d.n
    k = d.pick(0, n) if mul_dim is None else mul_dim
    M = d.subspace(n, k)
    Q = M.complement().basis
    H = d.hermitian(n - k, kind)
    return _cat(_operator_on(Q, H), _mv_block(n, M))


def _positive_gram(d: _Draw, k: int) -> np.ndarray:
    P = d.hermitian(k, "psd")
    if d.cfg.field == "real" and k > 1 and d.rng.random() < 0.5:
        K = d.matrix(k, k)
        P = P + (K - K.T)
    return P


def draw_positive_operator(d: _Draw, dom_dim: int | None = None) -> LinearRelation:
    """Positive operator on a random domain with noise into the domain's complement."""
    n = d.n
    a = d.pick(0, n) if dom_dim is None else dom_dim
    D = d.subspace(n, a)
    A = D.basis
    if a == 0:
        return LinearRelation(n, Subspace.zero(2 * n, EXACT))
    _, B = _operator_on(A, _positive_gram(d, a))
    Aperp = D.complement().basis
    if Aperp.shape[1]:
        B = B + Aperp @ d.matrix(Aperp.shape[1], a)
    return _rel(A, B)


def draw_positive(d: _Draw, dom_dim: int | None = None, mul_dim: int | None = None) -> LinearRelation:
    """Positive operator plus a multivalued part orthogonal to its domain."""
    n = d.n
    a = d.pick(0, n) if dom_dim is None else dom_dim
    b = d.pick(0, n - a) if mul_dim is None else mul_dim
    if b > n - a:
        raise ValueError("multivalued part must fit in the domain's complement")
    op = draw_positive_operator(d, a)
    Dperp = dom(op).complement()
    # M is a random subspace of dom^perp
    if b:
        coeffs = d.full_rank(Dperp.dim, b)
        N = Dperp.basis @ coeffs
    else:
        N = nk.zeros(n, 0, EXACT)
    A, B = op.blocks()
    return _cat((A, B), (nk.zeros(n, b, EXACT), N))


def draw_symmetric(d: _Draw) -> LinearRelation:
    return draw_subrelation(d, draw_selfadjoint(d))


def draw_subrelation(d: _Draw, T: LinearRelation) -> LinearRelation:
    """Span of a random subset of a random basis of ``T``."""
    if T.dim == 0:
        return T
    basis = T.carrier.basis @ d.full_rank(T.dim, T.dim)
    keep = [j for j in range(T.dim) if d.rng.random() < 0.5]
    return LinearRelation(T.n, Subspace(basis[:, keep]))


def draw_subrelation_pair(d: _Draw) -> tuple[LinearRelation, LinearRelation]:
    T = draw_relation(d)
    return draw_subrelation(d, T), T


def draw_respan(d: _Draw, T: LinearRelation) -> LinearRelation:
    """``T`` again, rebuilt from a random generating set."""
    if T.dim == 0:
        return T
    extra = d.pick(0, 2)
    mix = d.full_rank(T.dim, T.dim)
    gens = T.carrier.basis @ np.concatenate([mix, d.matrix(T.dim, extra)], axis=1)
    return LinearRelation(T.n, Subspace(gens))


# ----------------------------------------------------------------------------
# config-level API


def random_subspace(m: int, d: int, cfg: GenConfig) -> Subspace:
    if not 0 <= d <= m:
        raise ValueError(f"subspace dimension {d} outside 0..{m}")
    S = _Draw(cfg).subspace(m, d)
    return S.to_backend(cfg.backend, cfg.pol) if cfg.backend != EXACT else S


def random_relation(cfg: GenConfig, dim: int | None = None) -> LinearRelation:
    d = _Draw(cfg)
    return d.finish(draw_relation(d, dim))


def random_selfadjoint(cfg: GenConfig, kind: str = "any", mul_dim: int | None = None) -> LinearRelation:
    d = _Draw(cfg)
    return d.finish(draw_selfadjoint(d, kind, mul_dim))


def random_positive(cfg: GenConfig, dom_dim: int | None = None, mul_dim: int | None = None) -> LinearRelation:
    d = _Draw(cfg)
    return d.finish(draw_positive(d, dom_dim, mul_dim))


def random_positive_operator(cfg: GenConfig, dom_dim: int | None = None) -> LinearRelation:
    d = _Draw(cfg)
    return d.finish(draw_positive_operator(d, dom_dim))


def random_symmetric(cfg: GenConfig) -> LinearRelation:
    d = _Draw(cfg)
    return d.finish(draw_symmetric(d))


def random_singlevalued(cfg: GenConfig, dom_dim: int | None = None) -> LinearRelation:
    d = _Draw(cfg)
    return d.finish(draw_operator(d, dom_dim))


def random_subrelation_pair(cfg: GenConfig) -> tuple[LinearRelation, LinearRelation]:
    d = _Draw(cfg)
    S, T = draw_subrelation_pair(d)
    return d.finish(S), d.finish(T)


def random_matrix(cfg: GenConfig) -> np.ndarray:
    M = _Draw(cfg).matrix(cfg.space_dim, cfg.space_dim)
    return nk.to_backend(M, cfg.backend)


def generate(cfg: GenConfig):
    """Draw from ``cfg.cls``; ``subrelation_pair`` returns ``(S, T)``."""
    return {
        "any": random_relation,
        "symmetric": random_symmetric,
        "positive": random_positive,
        "selfadjoint": random_selfadjoint,
        "positive_operator": random_positive_operator,
        "singlevalued": random_singlevalued,
        "subrelation_pair": random_subrelation_pair,
    }[cfg.cls](cfg)
