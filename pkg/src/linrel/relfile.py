"""JSON relation files.

A relation file lists a spanning set of pairs::

    {"ambient_dim": 2, "field": "complex", "scalars": "exact",
     "generators": [{"f": ["1", "0"], "fp": ["1/2+1 i", "0"]}]}

Float scalars are ``[re, im]`` pairs; exact scalars are ``"p/q"`` or
``"p/q+r/s i"`` strings.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import jsonschema
import numpy as np

from .numkernel import DEFAULT_POLICY, EXACT, FLOAT, TolerancePolicy
from .relation import LinearRelation, from_pairs
from .scalars import ExactParseError, format_exact, im_part, parse_exact


class RelationFileError(ValueError):
    pass


_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["ambient_dim", "field", "scalars", "generators"],
    "properties": {
        "ambient_dim": {"type": "integer", "minimum": 1},
        "field": {"enum": ["complex", "real"]},
        "scalars": {"enum": ["float", "exact"]},
        "generators": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["f", "fp"],
                "properties": {"f": {"type": "array"}, "fp": {"type": "array"}},
            },
        },
    },
}


def _parse_scalar(x, scalars: str, field: str, where: str):
    if scalars == "exact":
        try:
            z = parse_exact(x)
        except ExactParseError as exc:
            raise RelationFileError(f"{where}: {exc}") from None
        if field == "real" and im_part(z) != 0:
            raise RelationFileError(f"{where}: imaginary part in a real-field file")
        return z
    if (
        not isinstance(x, list)
        or len(x) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x)
    ):
        raise RelationFileError(f"{where}: float scalar must be a [re, im] number pair")
    if not all(math.isfinite(v) for v in x):
        raise RelationFileError(f"{where}: non-finite float scalar")
    if field == "real" and x[1] != 0:
        raise RelationFileError(f"{where}: imaginary part in a real-field file")
    return complex(x[0], x[1])


def parse_relation(doc: dict, backend: str | None = None, pol: TolerancePolicy = DEFAULT_POLICY) -> LinearRelation:
    """Build a relation from a decoded relation-file object.

    ``backend`` defaults to the file's scalar kind.
    """
    try:
        jsonschema.validate(doc, _SCHEMA)
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise RelationFileError(f"{loc}: {exc.message}") from None
    n = doc["ambient_dim"]
    scalars = doc["scalars"]
    field = doc["field"]
    pairs = []
    for k, g in enumerate(doc["generators"]):
        vecs = []
        for key in ("f", "fp"):
            v = g[key]
            if len(v) != n:
                raise RelationFileError(f"generators/{k}/{key}: length {len(v)}, expected {n}")
            vecs.append([_parse_scalar(x, scalars, field, f"generators/{k}/{key}/{i}") for i, x in enumerate(v)])
        pairs.append(vecs)
    backend = backend or (EXACT if scalars == "exact" else FLOAT)
    pairs = [(np.array(f, dtype=object), np.array(fp, dtype=object)) for f, fp in pairs]
    return from_pairs(pairs, n, pol, backend, field)


def _format_scalar(z, backend: str):
    if backend == EXACT:
        return format_exact(z)
    z = complex(z)
    # -0.0 and 0.0 must serialize identically
    return [float(z.real) + 0.0, float(z.imag) + 0.0]


def relation_to_dict(T: LinearRelation) -> dict:
    """Serialize the canonical basis pairs of ``T``."""
    backend = T.backend
    return {
        "ambient_dim": T.n,
        "field": T.field,
        "scalars": backend,
        "generators": [
            {"f": [_format_scalar(z, backend) for z in f], "fp": [_format_scalar(z, backend) for z in fp]}
            for f, fp in T.pairs()
        ],
    }


def load_relation(path: str | Path, backend: str | None = None, pol: TolerancePolicy = DEFAULT_POLICY) -> LinearRelation:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise RelationFileError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RelationFileError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_relation(doc, backend, pol)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
