"""Theorems about linear relations as (hypothesis, conclusion) data.

Each :class:`Theorem` pairs two predicates over one or two relations with a
targeted generator that makes the hypothesis fire on a good share of draws.
Evaluating a theorem on inputs yields a :class:`CheckOutcome`:

* ``vacuous`` when the hypothesis fails,
* ``falsified`` when the hypothesis holds and the conclusion fails,
* ``confirmed`` otherwise.

All predicates go through :mod:`linrel.relation`.  In finite dimension every
relation is closed and "densely defined" means ``dom(T) = F^n``; the
theorems that lean on either notion say so in their notes.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

from . import __version__
from . import relation as rel
from .genrel import PRNG_ALGORITHM, GenConfig, _Draw, derive_seed
from .genrel import (
    draw_matrix_graph,
    draw_operator,
    draw_positive,
    draw_positive_operator,
    draw_relation,
    draw_respan,
    draw_selfadjoint,
    draw_subrelation,
    draw_subrelation_pair,
    draw_symmetric,
)
from .numkernel import DEFAULT_POLICY, EXACT, TolerancePolicy
from .relation import LinearRelation
from .relfile import relation_to_dict

DENSITY_NOTE = "densely defined is evaluated as dom(T) = F^n (finite-dimensional collapse)"
CLOSED_NOTE = "every finite-dimensional relation is closed; closure(T) = T"


class TheoremId(str, enum.Enum):
    STONE_OP = "STONE_OP"
    STONE_GEN_OP = "STONE_GEN_OP"
    VN_CLASSIC = "VN_CLASSIC"
    VN_REVERSED = "VN_REVERSED"
    VN_REVISED = "VN_REVISED"
    CHAR_OP_FWD = "CHAR_OP_FWD"
    CHAR_OP_BWD = "CHAR_OP_BWD"
    RANGE_IPLUS = "RANGE_IPLUS"
    ARENS_01 = "ARENS_01"
    ARENS_02 = "ARENS_02"
    ARENS_03 = "ARENS_03"
    ARENS_04 = "ARENS_04"
    ARENS_05 = "ARENS_05"
    ARENS_06 = "ARENS_06"
    ARENS_07 = "ARENS_07"
    ARENS_08 = "ARENS_08"
    ARENS_09 = "ARENS_09"
    ARENS_10 = "ARENS_10"
    EXT_EQ = "EXT_EQ"
    VN_GEN = "VN_GEN"
    STONE_GEN_REL = "STONE_GEN_REL"
    CHAR_REL_FWD = "CHAR_REL_FWD"
    CHAR_REL_BWD = "CHAR_REL_BWD"

    def __str__(self):
        return self.value


class Verdict(str, enum.Enum):
    CONFIRMED = "confirmed"
    VACUOUS = "vacuous"
    FALSIFIED = "falsified"

    def __str__(self):
        return self.value


def verdict_of(hypothesis: bool, conclusion: bool) -> Verdict:
    if not hypothesis:
        return Verdict.VACUOUS
    return Verdict.CONFIRMED if conclusion else Verdict.FALSIFIED


class CheckError(ValueError):
    """Bad arity or mismatched inputs for a theorem check."""


class NonVacuityError(RuntimeError):
    def __init__(self, report: "SuiteReport", failing: list[str]):
        self.report = report
        self.failing = failing
        super().__init__("hypothesis rate below threshold for " + ", ".join(failing))


# ----------------------------------------------------------------------------
# cached facts about one relation


class Facts:
    """Lazily computed, memoized predicates of one relation."""

    def __init__(self, T: LinearRelation):
        self.T = T

    @cached_property
    def adj(self) -> LinearRelation:
        return rel.adjoint(self.T)

    @cached_property
    def dom(self):
        return rel.dom(self.T)

    @cached_property
    def ran(self):
        return rel.ran(self.T)

    @cached_property
    def ker(self):
        return rel.ker(self.T)

    @cached_property
    def mul(self):
        return rel.mul(self.T)

    @cached_property
    def symmetric(self) -> bool:
        return self.T <= self.adj

    @cached_property
    def self_adjoint(self) -> bool:
        return self.T == self.adj

    @cached_property
    def positive(self) -> bool:
        return rel.is_positive(self.T)

    @cached_property
    def single_valued(self) -> bool:
        return self.mul.is_zero

    @cached_property
    def dense(self) -> bool:
        return self.dom.is_full

    @cached_property
    def dom_perp_trivial(self) -> bool:
        return self.dom.complement().is_zero

    @cached_property
    def full_range(self) -> bool:
        return self.ran.is_full

    @cached_property
    def cap(self) -> LinearRelation:
        """``T`` intersected with ``T*``."""
        return rel.intersect_rel(self.T, self.adj)

    @cached_property
    def adjoint_exists(self) -> bool:
        # the operator adjoint exists iff T* is single valued
        return rel.is_single_valued(self.adj)

    @cached_property
    def adj_T(self) -> LinearRelation:
        """``T* T``."""
        return rel.compose(self.adj, self.T)

    @cached_property
    def T_adj(self) -> LinearRelation:
        """``T T*``."""
        return rel.compose(self.T, self.adj)


# ----------------------------------------------------------------------------
# the theorem table


Pred = Callable[..., bool]


@dataclass(frozen=True)
class Theorem:
    id: TheoremId
    arity: int
    statement: str
    hypothesis: Pred
    conclusion: Pred
    generate: Callable[[_Draw], tuple]
    trivial: bool = False
    notes: tuple[str, ...] = ()
    diagnostics: Callable[..., dict] | None = None


def _mix(d: _Draw, *options: tuple[float, Callable[[], object]]):
    u = d.rng.random()
    acc = 0.0
    for p, make in options:
        acc += p
        if u < acc:
            return make()
    return options[-1][1]()


def _one(T):
    return (T,)


# conditions shared by several theorems


def _char_op_cond1(F: Facts) -> bool:
    return F.dom_perp_trivial and F.self_adjoint


def _char_op_cond2(F: Facts) -> bool:
    # {k + l : {k, l} in G(S) ∩ G(S)*} = H
    return rel.sum_set(F.cap).is_full


def _char_rel_cond1(F: Facts) -> bool:
    return F.dom_perp_trivial and F.self_adjoint


def _char_rel_cond2(F: Facts) -> bool:
    S = F.cap
    return rel.is_single_valued(S) and rel.ran(rel.plus_identity(S)).is_full


def _positive_self_adjoint(P: LinearRelation) -> bool:
    return rel.is_positive(P) and rel.is_self_adjoint(P)


def _arens04_corrected(F: Facts) -> bool:
    T = F.T
    # single-valuedness through injectivity of the first projection
    injective = T.dim == F.dom.dim
    return (
        (F.single_valued == injective)
        and rel.mul(F.adj) == F.dom.complement()
        and (rel.is_single_valued(F.adj) == F.dom_perp_trivial)
    )


def _arens04_printed(F: Facts) -> bool:
    return F.single_valued == F.dom_perp_trivial


def _arens07(F: Facts) -> bool:
    T = F.T
    if rel.adjoint_by_definition(T) != F.adj:
        return False
    if rel.adjoint_via_complement(T) != F.adj:
        return False
    return all(rel.satisfies_adjoint_identity(T, f, fp) for f, fp in F.adj.pairs())


# generators


def _g_hermitian_invertible_graph(d):
    return draw_selfadjoint(d, "invertible", mul_dim=0)


def _gen_stone(d: _Draw):
    return _one(
        _mix(
            d,
            (0.6, lambda: _g_hermitian_invertible_graph(d)),
            (0.2, lambda: draw_subrelation(d, draw_selfadjoint(d, "any", mul_dim=0))),
            (0.1, lambda: draw_operator(d)),
            (0.1, lambda: draw_relation(d)),
        )
    )


def _gen_vn_op(d: _Draw):
    return _one(
        _mix(
            d,
            (0.7, lambda: draw_matrix_graph(d)),
            (0.2, lambda: draw_operator(d)),
            (0.1, lambda: draw_relation(d)),
        )
    )


def _gen_char_op(d: _Draw):
    return _one(
        _mix(
            d,
            (0.5, lambda: draw_selfadjoint(d, "psd", mul_dim=0)),
            (0.35, lambda: draw_positive_operator(d)),
            (0.15, lambda: draw_operator(d)),
        )
    )


def _gen_positive_selfadjoint(d: _Draw):
    return _one(
        _mix(
            d,
            (0.6, lambda: draw_selfadjoint(d, "psd")),
            (0.2, lambda: draw_positive(d)),
            (0.2, lambda: draw_selfadjoint(d, "any")),
        )
    )


def _gen_any(d: _Draw):
    return _one(
        _mix(
            d,
            (0.7, lambda: draw_relation(d)),
            (0.15, lambda: draw_operator(d)),
            (0.15, lambda: draw_selfadjoint(d)),
        )
    )


def _gen_arens04(d: _Draw):
    return _one(
        _mix(
            d,
            (0.5, lambda: draw_relation(d)),
            (0.5, lambda: draw_operator(d)),
        )
    )


def _gen_arens05(d: _Draw):
    return _one(
        _mix(
            d,
            (0.5, lambda: draw_selfadjoint(d, "any", mul_dim=0)),
            (0.3, lambda: draw_symmetric(d)),
            (0.2, lambda: draw_relation(d)),
        )
    )


def _gen_full_range_symmetric(d: _Draw):
    return _one(
        _mix(
            d,
            (0.55, lambda: draw_selfadjoint(d, "invertible")),
            (0.25, lambda: draw_symmetric(d)),
            (0.2, lambda: draw_relation(d)),
        )
    )


def _gen_char_rel(d: _Draw):
    return _one(
        _mix(
            d,
            (0.4, lambda: draw_selfadjoint(d, "psd", mul_dim=0)),
            (0.4, lambda: draw_positive(d)),
            (0.2, lambda: draw_selfadjoint(d, "psd")),
        )
    )


def _gen_subpair(d: _Draw):
    return _mix(
        d,
        (0.7, lambda: draw_subrelation_pair(d)),
        (0.3, lambda: (draw_relation(d), draw_relation(d))),
    )


def _gen_ext_eq(d: _Draw):
    def respan():
        T = draw_relation(d)
        return draw_respan(d, T), T

    return _mix(
        d,
        (0.45, respan),
        (0.4, lambda: draw_subrelation_pair(d)),
        (0.15, lambda: (draw_relation(d), draw_relation(d))),
    )


THEOREMS: dict[TheoremId, Theorem] = {}


def _register(th: Theorem):
    THEOREMS[th.id] = th


_register(Theorem(
    TheoremId.STONE_OP, 1,
    "S symmetric operator with ran(S) = H  =>  S* exists and S = S*",
    hypothesis=lambda F: F.single_valued and F.symmetric and F.full_range,
    conclusion=lambda F: F.adjoint_exists and F.self_adjoint,
    generate=_gen_stone,
))
_register(Theorem(
    TheoremId.STONE_GEN_OP, 1,
    "S operator with ran(G(S) ∩ G(S)*) = H  =>  S* exists and S = S*",
    hypothesis=lambda F: F.single_valued and rel.ran(F.cap).is_full,
    conclusion=lambda F: F.adjoint_exists and F.self_adjoint,
    generate=_gen_stone,
))
_register(Theorem(
    TheoremId.VN_CLASSIC, 1,
    "T densely defined closed operator  =>  T*T is a self-adjoint operator",
    hypothesis=lambda F: F.single_valued and F.dense and rel.is_closed(F.T),
    conclusion=lambda F: rel.is_single_valued(F.adj_T) and rel.is_self_adjoint(F.adj_T),
    generate=_gen_vn_op,
    notes=(DENSITY_NOTE, CLOSED_NOTE),
))
_register(Theorem(
    TheoremId.VN_REVERSED, 1,
    "T densely defined operator, T*T and TT* self-adjoint  =>  T closed",
    hypothesis=lambda F: F.single_valued and F.dense and rel.is_self_adjoint(F.adj_T) and rel.is_self_adjoint(F.T_adj),
    conclusion=lambda F: rel.closure(F.T) == F.T,
    generate=_gen_vn_op,
    trivial=True,
    notes=(DENSITY_NOTE, CLOSED_NOTE, "conclusion is trivially true in finite dimension"),
))
_register(Theorem(
    TheoremId.VN_REVISED, 1,
    "T symmetric operator with ran(T) = H  =>  T self-adjoint and densely defined",
    hypothesis=lambda F: F.single_valued and F.symmetric and F.full_range,
    conclusion=lambda F: F.self_adjoint and F.dense,
    generate=_gen_stone,
    notes=(DENSITY_NOTE,),
))
_register(Theorem(
    TheoremId.CHAR_OP_FWD, 1,
    "S positive operator: dom(S)^perp = {0} and S* = S  =>  {k + l : {k,l} in G(S) ∩ G(S)*} = H",
    hypothesis=lambda F: F.single_valued and F.positive and _char_op_cond1(F),
    conclusion=_char_op_cond2,
    generate=_gen_char_op,
))
_register(Theorem(
    TheoremId.CHAR_OP_BWD, 1,
    "S positive operator: {k + l : {k,l} in G(S) ∩ G(S)*} = H  =>  dom(S)^perp = {0} and S* = S",
    hypothesis=lambda F: F.single_valued and F.positive and _char_op_cond2(F),
    conclusion=_char_op_cond1,
    generate=_gen_char_op,
))
_register(Theorem(
    TheoremId.RANGE_IPLUS, 1,
    "T positive self-adjoint  =>  ran(I + T) = H",
    hypothesis=lambda F: F.positive and F.self_adjoint,
    conclusion=lambda F: rel.ran(rel.plus_identity(F.T)).is_full,
    generate=_gen_positive_selfadjoint,
))
_register(Theorem(
    TheoremId.ARENS_01, 1,
    "dom(T)^perp = mul(T*) and ran(T)^perp = ker(T*)",
    hypothesis=lambda F: True,
    conclusion=lambda F: F.dom.complement() == rel.mul(F.adj) and F.ran.complement() == rel.ker(F.adj),
    generate=_gen_any,
))
_register(Theorem(
    TheoremId.ARENS_02, 1,
    "T* is a closed linear relation",
    hypothesis=lambda F: True,
    conclusion=lambda F: rel.is_closed(F.adj) and rel.closure(F.adj) == F.adj,
    generate=_gen_any,
    trivial=True,
    notes=(CLOSED_NOTE,),
))
_register(Theorem(
    TheoremId.ARENS_03, 1,
    "T** is the closure of T, T <= T**, and T = T** when T is closed",
    hypothesis=lambda F: True,
    conclusion=lambda F: (
        rel.adjoint(F.adj) == rel.closure(F.T)
        and F.T <= rel.adjoint(F.adj)
        and (not rel.is_closed(F.T) or F.T == rel.adjoint(F.adj))
    ),
    generate=_gen_any,
    notes=(CLOSED_NOTE,),
))
_register(Theorem(
    TheoremId.ARENS_04, 1,
    "T single valued iff mul(T) = {0}, mul(T*) = dom(T)^perp, T* single valued iff dom(T)^perp = {0}",
    hypothesis=lambda F: True,
    conclusion=_arens04_corrected,
    generate=_gen_arens04,
    notes=("printed form 'T single valued iff dom(T)^perp = {0}' is evaluated alongside and reported",),
    diagnostics=lambda F: {"printed_form_holds": _arens04_printed(F), "corrected_form_holds": _arens04_corrected(F)},
))
_register(Theorem(
    TheoremId.ARENS_05, 1,
    "T symmetric with dom(T) = H  =>  T is the graph of a bounded self-adjoint operator",
    hypothesis=lambda F: F.symmetric and F.dense,
    conclusion=lambda F: F.single_valued and F.self_adjoint,
    generate=_gen_arens05,
))
_register(Theorem(
    TheoremId.ARENS_06, 1,
    "T symmetric with ran(T) = H  =>  T self-adjoint",
    hypothesis=lambda F: F.symmetric and F.full_range,
    conclusion=lambda F: F.self_adjoint,
    generate=_gen_full_range_symmetric,
))
_register(Theorem(
    TheoremId.ARENS_07, 1,
    "T* = J(T^perp) = (JT)^perp, and T* is the set of pairs satisfying <f',h> = <f,h'>",
    hypothesis=lambda F: True,
    conclusion=_arens07,
    generate=_gen_any,
))
_register(Theorem(
    TheoremId.ARENS_08, 1,
    "T positive self-adjoint  =>  ran(I + T) = H, evaluated as {k + l : {k,l} in T} = H",
    hypothesis=lambda F: F.positive and F.self_adjoint,
    conclusion=lambda F: rel.sum_set(F.T).is_full,
    generate=_gen_positive_selfadjoint,
))
_register(Theorem(
    TheoremId.ARENS_09, 2,
    "S <= T  =>  T* <= S*",
    hypothesis=lambda FS, FT: FS.T <= FT.T,
    conclusion=lambda FS, FT: FT.adj <= FS.adj,
    generate=_gen_subpair,
))
_register(Theorem(
    TheoremId.ARENS_10, 1,
    "(T^-1)* = (T*)^-1",
    hypothesis=lambda F: True,
    conclusion=lambda F: rel.adjoint(rel.inverse(F.T)) == rel.inverse(F.adj),
    generate=_gen_any,
))
_register(Theorem(
    TheoremId.EXT_EQ, 2,
    "ker(S) = ker(T), ran(S) = ran(T), S <= T  =>  S = T",
    hypothesis=lambda FS, FT: FS.ker == FT.ker and FS.ran == FT.ran and FS.T <= FT.T,
    conclusion=lambda FS, FT: FS.T == FT.T,
    generate=_gen_ext_eq,
    notes=("only the nontrivial direction S <= T => S = T is checked",),
))
_register(Theorem(
    TheoremId.VN_GEN, 1,
    "T closed relation  =>  T*T and TT* are positive self-adjoint",
    hypothesis=lambda F: rel.is_closed(F.T),
    conclusion=lambda F: _positive_self_adjoint(F.adj_T) and _positive_self_adjoint(F.T_adj),
    generate=_gen_any,
    notes=(CLOSED_NOTE,),
))
_register(Theorem(
    TheoremId.STONE_GEN_REL, 1,
    "ran(T ∩ T*) = H  =>  T = T*",
    hypothesis=lambda F: rel.ran(F.cap).is_full,
    conclusion=lambda F: F.self_adjoint,
    generate=_gen_full_range_symmetric,
))
_register(Theorem(
    TheoremId.CHAR_REL_FWD, 1,
    "T positive: dom(T)^perp = {0} and T* = T  =>  T ∩ T* = G(S) for an operator S with ran(I + S) = H",
    hypothesis=lambda F: F.positive and _char_rel_cond1(F),
    conclusion=_char_rel_cond2,
    generate=_gen_char_rel,
))
_register(Theorem(
    TheoremId.CHAR_REL_BWD, 1,
    "T positive: T ∩ T* = G(S) for an operator S with ran(I + S) = H  =>  dom(T)^perp = {0} and T* = T",
    hypothesis=lambda F: F.positive and _char_rel_cond2(F),
    conclusion=_char_rel_cond1,
    generate=_gen_char_rel,
))

ALL_IDS: tuple[TheoremId, ...] = tuple(TheoremId)
_INDEX = {tid: i for i, tid in enumerate(ALL_IDS)}


def parse_theorem_id(text: str) -> TheoremId:
    try:
        return TheoremId(text.strip().upper())
    except ValueError:
        raise CheckError(f"unknown theorem id {text!r}") from None


# ----------------------------------------------------------------------------
# single checks


@dataclass
class CheckOutcome:
    theorem_id: TheoremId
    hypothesis_holds: bool
    conclusion_holds: bool
    verdict: Verdict
    backend: str
    space_dim: int
    seed: int | None = None
    case: int | None = None
    witness: dict | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "theorem": self.theorem_id.value,
            "case": self.case,
            "seed": self.seed,
            "space_dim": self.space_dim,
            "backend": self.backend,
            "hypothesis": self.hypothesis_holds,
            "conclusion": self.conclusion_holds,
            "verdict": self.verdict.value,
        }
        if self.diagnostics:
            out["diagnostics"] = self.diagnostics
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _witness(facts: Sequence[Facts]) -> dict:
    return {
        "relations": [relation_to_dict(F.T) for F in facts],
        "dims": [
            {"dim": F.T.dim, "dom": F.dom.dim, "ran": F.ran.dim, "ker": F.ker.dim, "mul": F.mul.dim}
            for F in facts
        ],
    }


def run_check(
    theorem_id: TheoremId | str,
    inputs: Sequence[LinearRelation],
    *,
    seed: int | None = None,
    case: int | None = None,
    with_witness: bool = False,
) -> CheckOutcome:
    """Evaluate one theorem on one input tuple.

    A witness (inputs in relation-file form plus subspace dimensions) is
    attached to every falsification, and to every outcome when
    ``with_witness`` is set.
    """
    tid = theorem_id if isinstance(theorem_id, TheoremId) else parse_theorem_id(theorem_id)
    th = THEOREMS[tid]
    inputs = tuple(inputs)
    if len(inputs) != th.arity:
        raise CheckError(f"{tid.value} takes {th.arity} relation(s), got {len(inputs)}")
    if any(not isinstance(T, LinearRelation) for T in inputs):
        raise CheckError("inputs must be LinearRelation instances")
    first = inputs[0]
    for T in inputs[1:]:
        if T.n != first.n:
            raise CheckError(f"space dimensions differ: {first.n} vs {T.n}")
        if T.backend != first.backend or T.field != first.field:
            raise CheckError("inputs must share backend and field")
    facts = [Facts(T) for T in inputs]
    hyp = bool(th.hypothesis(*facts))
    concl = bool(th.conclusion(*facts))
    verdict = verdict_of(hyp, concl)
    diagnostics = dict(th.diagnostics(*facts)) if th.diagnostics else {}
    witness = _witness(facts) if (verdict is Verdict.FALSIFIED or with_witness) else None
    return CheckOutcome(tid, hyp, concl, verdict, first.backend, first.n, seed, case, witness, diagnostics)


def draw_inputs(
    theorem_id: TheoremId,
    space_dim: int,
    seed: int,
    *,
    field: str = "complex",
    entry_bound: int = 4,
    backend: str = EXACT,
    pol: TolerancePolicy = DEFAULT_POLICY,
) -> tuple[LinearRelation, ...]:
    """The targeted input tuple for one case; exact draw, then backend conversion."""
    cfg = GenConfig(space_dim, seed, entry_bound=entry_bound, field=field)
    d = _Draw(cfg)
    raw = THEOREMS[theorem_id].generate(d)
    out = []
    for T in raw:
        T = T.with_field(field)
        if backend != EXACT:
            T = T.to_backend(backend, pol)
        out.append(T)
    return tuple(out)


# ----------------------------------------------------------------------------
# suites


@dataclass(frozen=True)
class SuiteConfig:
    dims: tuple[int, ...] = (2, 3, 4)
    cases_per_theorem: int = 200
    seed: int = 42
    backend: str = EXACT
    pol: TolerancePolicy = DEFAULT_POLICY
    theorems: tuple[TheoremId, ...] = ALL_IDS
    field: str = "complex"
    entry_bound: int = 4
    jobs: int = 1
    min_hypothesis_rate: float = 0.3
    enforce_nonvacuity: bool = True

    def __post_init__(self):
        if not self.dims or any(not 1 <= n <= 12 for n in self.dims):
            raise ValueError("dims must be a nonempty list of integers in 1..12")
        if self.cases_per_theorem < 1:
            raise ValueError("cases_per_theorem must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    def echo(self) -> dict:
        out = {
            "dims": list(self.dims),
            "cases_per_theorem": self.cases_per_theorem,
            "seed": self.seed,
            "backend": self.backend,
            "field": self.field,
            "entry_bound": self.entry_bound,
            "theorems": [t.value for t in self.theorems],
            "min_hypothesis_rate": self.min_hypothesis_rate,
            "prng": PRNG_ALGORITHM,
        }
        if self.backend != EXACT:
            out["tolerances"] = {
                "rank_rel_tol": self.pol.rank_rel_tol,
                "psd_tol": self.pol.psd_tol,
                "equality_tol": self.pol.equality_tol,
            }
        return out


@dataclass
class TheoremSummary:
    confirmed: int = 0
    vacuous: int = 0
    falsified: int = 0
    conclusion_true: int = 0
    printed_form_failures: int | None = None

    @property
    def total(self) -> int:
        return self.confirmed + self.vacuous + self.falsified

    @property
    def hypothesis_rate(self) -> float:
        return (self.confirmed + self.falsified) / self.total if self.total else 0.0

    @property
    def conclusion_rate(self) -> float:
        return self.conclusion_true / self.total if self.total else 0.0

    def add(self, o: CheckOutcome):
        if o.verdict is Verdict.CONFIRMED:
            self.confirmed += 1
        elif o.verdict is Verdict.VACUOUS:
            self.vacuous += 1
        else:
            self.falsified += 1
        self.conclusion_true += o.conclusion_holds
        if "printed_form_holds" in o.diagnostics:
            self.printed_form_failures = (self.printed_form_failures or 0) + (not o.diagnostics["printed_form_holds"])


@dataclass
class SuiteReport:
    config: SuiteConfig
    results: list[CheckOutcome]
    summary: dict[TheoremId, TheoremSummary]
    wall_time: float = 0.0

    @property
    def falsified(self) -> int:
        return sum(s.falsified for s in self.summary.values())

    def nonvacuity_failures(self) -> list[str]:
        return [
            tid.value
            for tid, s in self.summary.items()
            if tid is not TheoremId.VN_REVERSED and s.hypothesis_rate < self.config.min_hypothesis_rate
        ]

    def summary_dict(self) -> dict:
        out = {}
        for tid, s in self.summary.items():
            th = THEOREMS[tid]
            entry = {
                "confirmed": s.confirmed,
                "vacuous": s.vacuous,
                "falsified": s.falsified,
                "total": s.total,
                "hypothesis_rate": round(s.hypothesis_rate, 6),
                "conclusion_rate": round(s.conclusion_rate, 6),
                "trivial": th.trivial,
            }
            if th.notes:
                entry["notes"] = list(th.notes)
            if s.printed_form_failures is not None:
                entry["printed_form_failures"] = s.printed_form_failures
            out[tid.value] = entry
        return out

    def to_dict(self) -> dict:
        """Report-file form.  Wall time is left out so equal runs serialize identically."""
        return {
            "version": __version__,
            "config": self.config.echo(),
            "notes": [DENSITY_NOTE, CLOSED_NOTE],
            "results": [o.to_dict() for o in self.results],
            "summary": self.summary_dict(),
        }


def _run_case(args) -> CheckOutcome:
    tid, case, cfg = args
    n = cfg.dims[case % len(cfg.dims)]
    seed = derive_seed(cfg.seed, _INDEX[tid], case)
    inputs = draw_inputs(tid, n, seed, field=cfg.field, entry_bound=cfg.entry_bound, backend=cfg.backend, pol=cfg.pol)
    return run_check(tid, inputs, seed=seed, case=case)


def run_suite(config: SuiteConfig) -> SuiteReport:
    """Run every selected theorem on ``cases_per_theorem`` targeted draws.

    Case ``j`` of a theorem uses dimension ``dims[j % len(dims)]`` and the
    seed ``derive_seed(seed, theorem_index, j)``, so the report depends only
    on the configuration, never on scheduling.  Raises
    :class:`NonVacuityError` when a theorem's hypothesis fires on fewer than
    ``min_hypothesis_rate`` of its cases (VN_REVERSED is exempt).
    """
    t0 = time.perf_counter()
    tasks = [(tid, j, config) for tid in config.theorems for j in range(config.cases_per_theorem)]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_case, tasks, chunksize=16))
    else:
        results = [_run_case(t) for t in tasks]
    summary = {tid: TheoremSummary() for tid in config.theorems}
    for o in results:
        summary[o.theorem_id].add(o)
    report = SuiteReport(config, results, summary, time.perf_counter() - t0)
    if config.enforce_nonvacuity:
        failing = report.nonvacuity_failures()
        if failing:
            raise NonVacuityError(report, failing)
    return report
