"""Fixed regression inputs with known verdicts.

Most entries pin the hypothesis-fails branch of a theorem on a small
hand-built relation; a few pin confirmations on degenerate inputs
(multivalued, partial) where a convention slip would show up first.
Entries are stored in relation-file form so a corpus can round-trip
through JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .numkernel import DEFAULT_POLICY, EXACT, TolerancePolicy
from .relation import LinearRelation, from_pairs, full_rel, graph_of, multivalued_rel
from .relfile import parse_relation, relation_to_dict
from .subspace import Subspace
from .theorems import CheckOutcome, TheoremId, Verdict, run_check


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    theorem_id: TheoremId
    inputs: tuple[dict, ...]
    expected: Verdict
    expected_diagnostics: dict = field(default_factory=dict)
    note: str = ""

    def relations(self, backend: str = EXACT, pol: TolerancePolicy = DEFAULT_POLICY) -> tuple[LinearRelation, ...]:
        return tuple(parse_relation(doc, backend, pol) for doc in self.inputs)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "theorem": self.theorem_id.value,
            "inputs": list(self.inputs),
            "expected": self.expected.value,
        }
        if self.expected_diagnostics:
            out["expected_diagnostics"] = self.expected_diagnostics
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> "CorpusEntry":
        try:
            return cls(
                name=doc["name"],
                theorem_id=TheoremId(doc["theorem"]),
                inputs=tuple(doc["inputs"]),
                expected=Verdict(doc["expected"]),
                expected_diagnostics=dict(doc.get("expected_diagnostics", {})),
                note=doc.get("note", ""),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise CorpusError(f"bad corpus entry {doc.get('name', '?') if isinstance(doc, dict) else doc!r}: {exc}") from None


def _e(*vals) -> np.ndarray:
    return np.array(vals, dtype=object)


def _entry(name, tid, rels, expected, note="", **diag) -> CorpusEntry:
    return CorpusEntry(name, tid, tuple(relation_to_dict(T) for T in rels), expected, diag, note)


def counterexample_corpus() -> list[CorpusEntry]:
    nilpotent = graph_of(_e([0, 1], [0, 0]))
    diag12 = graph_of(_e([1, 0], [0, 2]))
    shear_real = graph_of(_e([1, 1], [0, 1]), field="real")
    shear = graph_of(_e([1, 1], [0, 1]))
    mv2 = multivalued_rel(Subspace.full(2))
    mv3 = multivalued_rel(Subspace.full(3))
    restricted_id = from_pairs([(_e(1, 0), _e(1, 0))], 2)
    diag10 = graph_of(_e([1, 0], [0, 0]))
    V, C = Verdict.VACUOUS, Verdict.CONFIRMED
    T = TheoremId
    return [
        _entry("nilpotent/stone-gen-rel", T.STONE_GEN_REL, [nilpotent], V,
               "T ∩ T* is the zero relation because the skew part of [[0,1],[0,0]] is invertible"),
        _entry("nilpotent/stone-gen-op", T.STONE_GEN_OP, [nilpotent], V),
        _entry("nilpotent/stone-op", T.STONE_OP, [nilpotent], V, "not symmetric"),
        _entry("diag12/stone-gen-rel", T.STONE_GEN_REL, [diag12], C),
        _entry("shear-real/char-op-fwd", T.CHAR_OP_FWD, [shear_real], V,
               "positive over the reals but not symmetric"),
        _entry("shear-real/char-op-bwd", T.CHAR_OP_BWD, [shear_real], V,
               "G(S) ∩ G(S)* is the zero relation"),
        _entry("shear/char-op-fwd", T.CHAR_OP_FWD, [shear], V, "not positive over the complex field"),
        _entry("shear/char-op-bwd", T.CHAR_OP_BWD, [shear], V),
        _entry("multivalued2/range-iplus", T.RANGE_IPLUS, [mv2], C, "{0} x F^2 is positive and self-adjoint"),
        _entry("multivalued3/range-iplus", T.RANGE_IPLUS, [mv3], C),
        _entry("multivalued2/arens-08", T.ARENS_08, [mv2], C),
        _entry("multivalued2/char-rel-fwd", T.CHAR_REL_FWD, [mv2], V, "not densely defined"),
        _entry("multivalued2/char-rel-bwd", T.CHAR_REL_BWD, [mv2], V, "T ∩ T* = T is not single valued"),
        _entry("restricted-identity/arens-04", T.ARENS_04, [restricted_id], C,
               "single valued with dom(T)^perp = span(e2): the printed form fails, the corrected form holds",
               printed_form_holds=False, corrected_form_holds=True),
        _entry("restricted-identity/char-op-fwd", T.CHAR_OP_FWD, [restricted_id], V, "positive partial operator"),
        _entry("restricted-identity/char-op-bwd", T.CHAR_OP_BWD, [restricted_id], V),
        _entry("restricted-identity/char-rel-bwd", T.CHAR_REL_BWD, [restricted_id], V),
        _entry("diag10-sub/ext-eq", T.EXT_EQ, [restricted_id, diag10], V,
               "equal ranges, kernels differ"),
        _entry("full/arens-09", T.ARENS_09, [diag12, full_rel(2)], C),
        _entry("nilpotent/vn-reversed", T.VN_REVERSED, [nilpotent], C, "trivially true in finite dimension"),
    ]


@dataclass
class ReplayResult:
    entry: CorpusEntry
    outcome: CheckOutcome
    ok: bool

    def line(self) -> str:
        status = "ok" if self.ok else "MISMATCH"
        extra = ""
        if self.entry.expected_diagnostics:
            got = {k: self.outcome.diagnostics.get(k) for k in self.entry.expected_diagnostics}
            extra = " " + " ".join(f"{k}={str(v).lower()}" for k, v in got.items())
        return (
            f"{status:8s} {self.outcome.backend:5s} {self.entry.name:36s} {self.entry.theorem_id.value:14s} "
            f"expected={self.entry.expected.value} got={self.outcome.verdict.value}{extra}"
        )


def replay(entries: list[CorpusEntry], backend: str = EXACT, pol: TolerancePolicy = DEFAULT_POLICY) -> list[ReplayResult]:
    out = []
    for e in entries:
        outcome = run_check(e.theorem_id, e.relations(backend, pol))
        ok = outcome.verdict is e.expected and all(
            outcome.diagnostics.get(k) == v for k, v in e.expected_diagnostics.items()
        )
        out.append(ReplayResult(e, outcome, ok))
    return out


def corpus_to_json(entries: list[CorpusEntry]) -> str:
    return json.dumps({"entries": [e.to_dict() for e in entries]}, indent=2, sort_keys=True) + "\n"


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CorpusError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("entries"), list):
        raise CorpusError(f"{path}: expected an object with an 'entries' array")
    return [CorpusEntry.from_dict(d) for d in doc["entries"]]
