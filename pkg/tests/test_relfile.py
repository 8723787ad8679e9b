import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linrel.genrel import GenConfig, random_relation
from linrel.numkernel import FLOAT
from linrel.relfile import RelationFileError, dumps, load_relation, parse_relation, relation_to_dict


def doc(**kw):
    d = {"ambient_dim": 2, "field": "complex", "scalars": "exact",
         "generators": [{"f": ["1", "0"], "fp": ["1/2+1 i", "0"]}]}
    d.update(kw)
    return d


def test_parse_exact_file():
    T = parse_relation(doc())
    assert T.n == 2 and T.dim == 1 and T.backend == "exact"


def test_parse_float_file():
    T = parse_relation(doc(scalars="float", generators=[{"f": [[1, 0], [0, 0]], "fp": [[0.5, 1], [0, 0]]}]))
    assert T.backend == FLOAT and T == parse_relation(doc()).to_backend(FLOAT)


@pytest.mark.parametrize(
    "bad",
    [
        doc(extra=1),
        doc(generators=[{"f": ["1"], "fp": ["1", "0"]}]),
        doc(generators=[{"f": ["1", "0"], "fp": ["1", "0"], "g": []}]),
        doc(generators=[{"f": ["1", "x"], "fp": ["1", "0"]}]),
        doc(field="quaternion"),
        doc(ambient_dim=0),
        doc(field="real"),
        doc(scalars="float"),
        doc(scalars="float", generators=[{"f": [[1, 0], [0]], "fp": [[0, 0], [0, 0]]}]),
        {"ambient_dim": 2, "field": "complex", "scalars": "exact"},
    ],
)
def test_rejections(bad):
    with pytest.raises(RelationFileError):
        parse_relation(bad)


def test_empty_generators_is_zero_relation():
    assert parse_relation(doc(generators=[])).dim == 0


@given(st.integers(1, 4), st.integers(0, 2**32 - 1), st.sampled_from(["exact", "float"]))
def test_round_trip(n, seed, backend):
    T = random_relation(GenConfig(n, seed))
    if backend == FLOAT:
        T = T.to_backend(FLOAT)
    d = relation_to_dict(T)
    again = parse_relation(json.loads(dumps(d)))
    assert again == T
    if backend != FLOAT:
        # exact canonical bases make serialization a fixed point
        assert dumps(relation_to_dict(again)) == dumps(d)


def test_load_errors(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json", encoding="utf-8")
    with pytest.raises(RelationFileError):
        load_relation(p)
    with pytest.raises(RelationFileError):
        load_relation(tmp_path / "missing.json")
