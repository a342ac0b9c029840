"""Family documents (JSON) and polynomial files.

A family document::

    {
      "basis": ["g1", "g2", "g3", "g4", "g5"],
      "operators": [
        {"name": "T1", "action": {"g5": {"g3": "1"}}},
        {"name": "T2", "matrix": [[1, 0, 0, 0, 0], ...]}
      ]
    }

``action`` maps each reducible generator to its image as a linear combination
(generator -> rational, rationals as ints or ``"p/q"`` strings).  ``matrix``
is dense with column ``j`` holding the image of ``basis[j]``, the layout used
in printed examples.  Either way the loader checks that images are strictly
smaller than their generator and only mention normal forms.
"""

from __future__ import annotations

import json
from typing import List, Sequence

from .groebner import Polynomial, PolynomialRing, PolynomialSyntaxError
from .linear import OrderedBasis, Vector, format_scalar
from .operator import ReductionOperator
from .syzygy import OperatorFamily


class DocumentError(ValueError):
    """Malformed input, with a location such as ``operators[1].action.g5``."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


def _combination(basis: OrderedBasis, entry, where: str) -> Vector:
    if not isinstance(entry, dict):
        raise DocumentError("expected an object mapping generators to coefficients", where)
    for g in entry:
        if g not in basis:
            raise DocumentError(f"unknown generator {g!r}", where)
    try:
        return Vector(basis, entry)
    except (TypeError, ValueError) as exc:
        raise DocumentError(str(exc), where) from None


def load_family(doc) -> OperatorFamily:
    if not isinstance(doc, dict):
        raise DocumentError("document must be an object")
    gens = doc.get("basis")
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise DocumentError("expected a list of generator names", "basis")
    try:
        basis = OrderedBasis(gens)
    except ValueError as exc:
        raise DocumentError(str(exc), "basis") from None
    ops_doc = doc.get("operators")
    if not isinstance(ops_doc, list):
        raise DocumentError("expected a list of operators", "operators")
    if not ops_doc:
        raise DocumentError("a family needs at least one operator", "operators")
    ops, names = [], []
    for n, entry in enumerate(ops_doc):
        where = f"operators[{n}]"
        if not isinstance(entry, dict):
            raise DocumentError("expected an object", where)
        names.append(str(entry.get("name", f"T{n + 1}")))
        try:
            if "matrix" in entry:
                ops.append(ReductionOperator.from_matrix(basis, entry["matrix"]))
            elif "action" in entry:
                action = entry["action"]
                if not isinstance(action, dict):
                    raise DocumentError("expected an object", where + ".action")
                images = {}
                for g, img in action.items():
                    if g not in basis:
                        raise DocumentError(f"unknown generator {g!r}", f"{where}.action")
                    images[g] = _combination(basis, img, f"{where}.action.{g}")
                ops.append(ReductionOperator.from_action(basis, images))
            else:
                raise DocumentError("operator needs 'action' or 'matrix'", where)
        except DocumentError:
            raise
        except (TypeError, ValueError) as exc:
            raise DocumentError(str(exc), where) from None
    return OperatorFamily(ops, names)


def loads_family(text: str) -> OperatorFamily:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return load_family(doc)


def read_family(path: str) -> OperatorFamily:
    with open(path, encoding="utf-8") as fh:
        return loads_family(fh.read())


def dump_combination(v: Vector) -> dict:
    return {str(g): format_scalar(c) for g, c in v.terms().items()}


def dump_family(family: OperatorFamily) -> dict:
    return {
        "basis": [str(g) for g in family.basis],
        "operators": [
            {"name": name, "action": {str(g): dump_combination(img) for g, img in op.action.items()}}
            for name, op in zip(family.names, family.operators)
        ],
    }


def dumps_family(family: OperatorFamily) -> str:
    return json.dumps(dump_family(family), indent=2)


def parse_polynomials(text: str, ring: PolynomialRing) -> List[Polynomial]:
    """One polynomial per line; blank lines and ``#`` comments are skipped."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        try:
            f = ring.parse(body)
        except PolynomialSyntaxError as exc:
            raise DocumentError(str(exc).split(" at position")[0],
                                f"line {lineno} column {exc.position + 1}") from None
        if not f:
            raise DocumentError("zero polynomial", f"line {lineno}")
        out.append(f)
    if not out:
        raise DocumentError("no polynomials found")
    return out


def format_polynomials(polys: Sequence[Polynomial]) -> str:
    return "".join(f"{p}\n" for p in polys)
