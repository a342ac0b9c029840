"""Exact sparse vectors over a finite well-ordered basis.

Generators are compared by their position in an :class:`OrderedBasis`
(later position = greater).  Elimination always pivots on the greatest
generator of a row, so echelon forms here are "leading term = max of
support", which is the convention reduced bases require.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence

Scalar = Fraction
Row = Dict[int, Fraction]


def to_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"invalid rational literal {value!r}") from exc
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class OrderedBasis:
    """A finite totally ordered list of distinct generators."""

    __slots__ = ("generators", "_rank")

    def __init__(self, generators: Iterable[Hashable]):
        gens = tuple(generators)
        if not gens:
            raise ValueError("an ordered basis needs at least one generator")
        rank = {g: i for i, g in enumerate(gens)}
        if len(rank) != len(gens):
            raise ValueError("generators must be pairwise distinct")
        self.generators = gens
        self._rank = rank

    def rank(self, g: Hashable) -> int:
        try:
            return self._rank[g]
        except KeyError:
            raise KeyError(f"{g!r} is not a generator of this basis") from None

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.generators)

    def __getitem__(self, i: int) -> Hashable:
        return self.generators[i]

    def __contains__(self, g) -> bool:
        return g in self._rank

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, OrderedBasis) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return f"OrderedBasis({list(self.generators)!r})"

    def vector(self, terms: Mapping[Hashable, object] | None = None) -> "Vector":
        return Vector(self, terms)

    def generator(self, g: Hashable) -> "Vector":
        return Vector._from_row(self, {self.rank(g): Fraction(1)})


# -- row helpers (dicts rank -> nonzero Fraction) ---------------------------

def _axpy(row: Row, c: Fraction, other: Mapping[int, Fraction]) -> None:
    """row += c * other, in place, dropping cancelled entries."""
    for k, v in other.items():
        nv = row.get(k, 0) + c * v
        if nv:
            row[k] = nv
        else:
            row.pop(k, None)


def _scaled(row: Mapping[int, Fraction], c: Fraction) -> Row:
    return {k: c * v for k, v in row.items()}


class Vector:
    """A sparse linear combination of generators with rational coefficients."""

    __slots__ = ("basis", "_row")

    def __init__(self, basis: OrderedBasis, terms: Mapping[Hashable, object] | None = None):
        self.basis = basis
        row: Row = {}
        for g, c in (terms or {}).items():
            c = to_scalar(c)
            if c:
                row[basis.rank(g)] = row.get(basis.rank(g), 0) + c
        self._row = {k: v for k, v in row.items() if v}

    @classmethod
    def _from_row(cls, basis: OrderedBasis, row: Row) -> "Vector":
        v = cls.__new__(cls)
        v.basis = basis
        v._row = row
        return v

    @classmethod
    def zero(cls, basis: OrderedBasis) -> "Vector":
        return cls._from_row(basis, {})

    # -- inspection --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._row)

    def is_zero(self) -> bool:
        return not self._row

    def terms(self) -> Dict[Hashable, Fraction]:
        """Generator -> coefficient, in increasing generator order."""
        gens = self.basis.generators
        return {gens[k]: self._row[k] for k in sorted(self._row)}

    def support(self) -> List[Hashable]:
        gens = self.basis.generators
        return [gens[k] for k in sorted(self._row)]

    def coefficient(self, g: Hashable) -> Fraction:
        return self._row.get(self.basis.rank(g), Fraction(0))

    @property
    def leading_rank(self) -> int:
        if not self._row:
            raise ValueError("no leading term of zero")
        return max(self._row)

    @property
    def leading_term(self) -> Hashable:
        return self.basis.generators[self.leading_rank]

    @property
    def leading_coefficient(self) -> Fraction:
        return self._row[self.leading_rank]

    def monic(self) -> "Vector":
        return self * (1 / self.leading_coefficient)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Vector") -> None:
        if not isinstance(other, Vector):
            raise TypeError("expected a Vector")
        if self.basis != other.basis:
            raise ValueError("vectors live over different bases")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        row = dict(self._row)
        _axpy(row, Fraction(1), other._row)
        return Vector._from_row(self.basis, row)

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        row = dict(self._row)
        _axpy(row, Fraction(-1), other._row)
        return Vector._from_row(self.basis, row)

    def __neg__(self) -> "Vector":
        return Vector._from_row(self.basis, _scaled(self._row, Fraction(-1)))

    def __mul__(self, c) -> "Vector":
        c = to_scalar(c)
        if not c:
            return Vector.zero(self.basis)
        return Vector._from_row(self.basis, _scaled(self._row, c))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.basis == other.basis and self._row == other._row

    def __hash__(self) -> int:
        return hash(frozenset(self._row.items()))

    def rebase(self, basis: OrderedBasis) -> "Vector":
        """The same combination of generators, read over another basis."""
        gens = self.basis.generators
        return Vector._from_row(basis, {basis.rank(gens[k]): v for k, v in self._row.items()})

    def __repr__(self) -> str:
        return f"Vector({format_vector(self)})"


def format_vector(v: Vector, name=str) -> str:
    """Render as ``g5 - g3`` (greatest generator first)."""
    if not v:
        return "0"
    parts = []
    gens = v.basis.generators
    for k in sorted(v._row, reverse=True):
        c = v._row[k]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        term = name(gens[k]) if a == 1 else f"{format_scalar(a)}*{name(gens[k])}"
        parts.append((sign, term))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def leading_term(v: Vector) -> Hashable:
    return v.leading_term


# -- reduced bases ------------------------------------------------------------

class ReducedBasis:
    """The unique reduced basis of a subspace, sorted by increasing leading term.

    Every element is monic and no element's leading term occurs in the
    support of another element.  The empty basis represents ``{0}``.
    """

    __slots__ = ("basis", "elements", "_by_lead")

    def __init__(self, basis: OrderedBasis, elements: Sequence[Vector] = ()):
        self.basis = basis
        self.elements = tuple(sorted(elements, key=lambda e: e.leading_rank))
        self._by_lead = {e.leading_rank: e for e in self.elements}

    @classmethod
    def zero(cls, basis: OrderedBasis) -> "ReducedBasis":
        return cls(basis, ())

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.elements)

    def __getitem__(self, i: int) -> Vector:
        return self.elements[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReducedBasis):
            return NotImplemented
        return self.basis == other.basis and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return "ReducedBasis([" + ", ".join(format_vector(e) for e in self.elements) + "])"

    @property
    def leading_terms(self) -> List[Hashable]:
        return [e.leading_term for e in self.elements]

    def element_with_lead(self, g: Hashable) -> Optional[Vector]:
        return self._by_lead.get(self.basis.rank(g))

    def is_reduced(self) -> bool:
        """Check the two reduced-basis conditions directly."""
        leads = set()
        for e in self.elements:
            if not e or e.leading_coefficient != 1:
                return False
            leads.add(e.leading_rank)
        if len(leads) != len(self.elements):
            return False
        for e in self.elements:
            for k in e._row:
                if k != e.leading_rank and k in leads:
                    return False
        return True

    def reduce(self, v: Vector) -> Vector:
        """Remainder of ``v`` after cancelling every leading term of this basis."""
        if v.basis != self.basis:
            raise ValueError("vector and subspace live over different bases")
        row = dict(v._row)
        # each element's non-leading support avoids other leads, so one pass suffices
        for k, e in self._by_lead.items():
            c = row.get(k)
            if c:
                _axpy(row, -c, e._row)
        return Vector._from_row(self.basis, row)

    def __contains__(self, v: Vector) -> bool:
        return not self.reduce(v)


def _echelon(rows: Iterable[Row]) -> Dict[int, Row]:
    """Fully reduced, monic echelon form keyed by leading rank."""
    pivots: Dict[int, Row] = {}
    for src in rows:
        row = dict(src)
        while row:
            lead = max(row)
            p = pivots.get(lead)
            if p is None:
                inv = 1 / row[lead]
                pivots[lead] = {k: v * inv for k, v in row.items()}
                break
            _axpy(row, -row[lead], p)
    # back-substitution, smallest pivots first so they are already clean
    for lead in sorted(pivots):
        row = pivots[lead]
        for k in sorted((k for k in row if k != lead and k in pivots), reverse=True):
            c = row.get(k)
            if c:
                _axpy(row, -c, pivots[k])
    return pivots


def reduce_basis(spanning: Iterable[Vector], basis: OrderedBasis | None = None) -> ReducedBasis:
    """Return the unique reduced basis of the span of ``spanning``."""
    spanning = list(spanning)
    if basis is None:
        if not spanning:
            raise ValueError("an empty spanning set needs an explicit basis")
        basis = spanning[0].basis
    for v in spanning:
        if v.basis != basis:
            raise ValueError("all vectors must share one ordered basis")
    pivots = _echelon(v._row for v in spanning)
    return ReducedBasis(basis, [Vector._from_row(basis, pivots[k]) for k in sorted(pivots)])


def subspace_sum(a: ReducedBasis, b: ReducedBasis) -> ReducedBasis:
    if a.basis != b.basis:
        raise ValueError("subspaces live over different bases")
    if not a:
        return b
    if not b:
        return a
    return reduce_basis(list(a) + list(b), a.basis)


def subspace_intersection(a: ReducedBasis, b: ReducedBasis) -> ReducedBasis:
    """Zassenhaus intersection: eliminate ``[a | a]`` and ``[b | 0]`` in the doubled space.

    The left copy occupies the high ranks, so rows whose leading term falls in
    the right copy have a vanishing left part and span the intersection.
    """
    if a.basis != b.basis:
        raise ValueError("subspaces live over different bases")
    basis = a.basis
    if not a or not b:
        return ReducedBasis.zero(basis)
    n = len(basis)
    rows = []
    for e in a:
        row = {k + n: v for k, v in e._row.items()}
        row.update(e._row)
        rows.append(row)
    for e in b:
        rows.append({k + n: v for k, v in e._row.items()})
    pivots = _echelon(rows)
    inter = [Vector._from_row(basis, dict(r)) for lead, r in pivots.items() if lead < n]
    return reduce_basis(inter, basis)


def membership_coords(v: Vector, b: ReducedBasis) -> Optional[List[Fraction]]:
    """Coefficients of ``v`` over ``b``, or ``None`` when ``v`` is not in the span.

    For a reduced basis the coefficient of an element is just the coefficient of
    its leading term in ``v``.
    """
    if v.basis != b.basis:
        raise ValueError("vector and subspace live over different bases")
    coeffs = [v._row.get(e.leading_rank, Fraction(0)) for e in b]
    row = dict(v._row)
    for c, e in zip(coeffs, b):
        if c:
            _axpy(row, -c, e._row)
    return None if row else coeffs


def is_subspace(a: ReducedBasis, b: ReducedBasis) -> bool:
    """Is span(a) contained in span(b)?"""
    return all(e in b for e in a)


# -- tracked elimination --------------------------------------------------------

class _Tracker:
    """Echelon form that remembers each pivot row as a combination of inputs."""

    def __init__(self):
        self.pivots: Dict[int, tuple] = {}

    def _reduce(self, row: Row, combo: Row) -> None:
        while row:
            lead = max(row)
            p = self.pivots.get(lead)
            if p is None:
                return
            prow, pcombo = p
            c = -row[lead] / prow[lead]
            _axpy(row, c, prow)
            _axpy(combo, c, pcombo)

    def add(self, row: Row, tag: int) -> Optional[Row]:
        """Insert a row; return the dependency relation if it reduces to zero."""
        row = dict(row)
        combo: Row = {tag: Fraction(1)}
        self._reduce(row, combo)
        if row:
            self.pivots[max(row)] = (row, combo)
            return None
        return combo


def linear_relations(vectors: Sequence[Vector]) -> List[Dict[int, Fraction]]:
    """A basis of the linear relations ``sum c_k vectors[k] = 0`` (index -> coefficient)."""
    tracker = _Tracker()
    out = []
    for k, v in enumerate(vectors):
        rel = tracker.add(v._row, k)
        if rel is not None:
            out.append(rel)
    return out


def express(target: Vector, vectors: Sequence[Vector]) -> Optional[List[Fraction]]:
    """Some coefficients ``c`` with ``sum c_k vectors[k] == target``, or ``None``."""
    tracker = _Tracker()
    for k, v in enumerate(vectors):
        if v.basis != target.basis:
            raise ValueError("vectors live over different bases")
        tracker.add(v._row, k)
    row = dict(target._row)
    combo: Row = {}
    tracker._reduce(row, combo)
    if row:
        return None
    # target + combo-weighted inputs == 0
    return [-combo.get(k, Fraction(0)) for k in range(len(vectors))]
