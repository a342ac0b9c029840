"""Syzygies among a finite family of reduction operators.

The product ``ker(T1) x ... x ker(Tn)`` is handled as an ordinary vector space
whose basis is the set of :class:`ProductIndex` ``e_{i,g}`` (``g`` reducible for
``Ti``), ordered position-major and then by generator.  Product vectors are
plain :class:`~redop.linear.Vector` objects over that basis, so the whole
linear core (reduced bases, membership) applies to them unchanged.
"""

from __future__ import annotations

from functools import cached_property
from typing import Hashable, List, NamedTuple, Sequence, Set

from .lattice import join, prefix_meets
from .linear import (
    OrderedBasis,
    ReducedBasis,
    Vector,
    _axpy,
    express,
    format_scalar,
    linear_relations,
    reduce_basis,
)
from .operator import NotInKernelError, ReductionOperator

SyzygyBasis = ReducedBasis


class ProductIndex(NamedTuple):
    """``e_{i,g}``: slot ``i`` (1-based) carrying ``g - Ti(g)``."""

    i: int
    g: Hashable

    def __str__(self) -> str:
        return f"e[{self.i},{self.g}]"


class OperatorFamily:
    """An ordered list ``T1, ..., Tn`` of operators over one basis."""

    def __init__(self, operators: Sequence[ReductionOperator], names: Sequence[str] | None = None):
        ops = tuple(operators)
        if not ops:
            raise ValueError("an operator family needs at least one operator")
        basis = ops[0].basis
        for op in ops[1:]:
            if op.basis != basis:
                raise ValueError("operators live over different bases")
        self.operators = ops
        self.basis: OrderedBasis = basis
        if names is None:
            names = [f"T{k}" for k in range(1, len(ops) + 1)]
        if len(names) != len(ops):
            raise ValueError("one name per operator")
        self.names = tuple(names)

    def __len__(self) -> int:
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)

    def __getitem__(self, i):
        return self.operators[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorFamily):
            return NotImplemented
        return self.operators == other.operators

    def __hash__(self) -> int:
        return hash(self.operators)

    def __repr__(self) -> str:
        return f"OperatorFamily({list(self.names)})"

    def prefix(self, k: int) -> "OperatorFamily":
        return OperatorFamily(self.operators[:k], self.names[:k])

    @cached_property
    def product_basis(self) -> OrderedBasis:
        idx = []
        for i, op in enumerate(self.operators, start=1):
            idx.extend(ProductIndex(i, self.basis[k]) for k in op.red_ranks())
        if not idx:
            # every operator is the identity; keep a placeholder so the type stays usable
            return _EmptyProductBasis()
        return OrderedBasis(idx)

    @cached_property
    def kernel_vectors(self) -> List[Vector]:
        """``pi(e)`` for every product index ``e``, in product-basis order."""
        return [self.operators[e.i - 1].kernel_element(e.g) for e in self.product_basis]

    @cached_property
    def meets(self) -> List[ReductionOperator]:
        """Prefix meets ``U1, ..., Un``."""
        return prefix_meets(self.operators)

    def product_vector(self, coords) -> Vector:
        """Build a product vector from ``{(i, g): coeff}``."""
        return Vector(self.product_basis, {ProductIndex(*k): v for k, v in coords.items()})


class _EmptyProductBasis(OrderedBasis):
    __slots__ = ()

    def __init__(self):
        self.generators = ()
        self._rank = {}


def pi_F(family: OperatorFamily, w: Vector) -> Vector:
    """Sum of the slot components: ``sum c_{i,g} (g - Ti(g))``."""
    if w.basis != family.product_basis:
        raise ValueError("product vector belongs to another family")
    row = {}
    vecs = family.kernel_vectors
    for k, c in w._row.items():
        _axpy(row, c, vecs[k]._row)
    return Vector._from_row(family.basis, row)


def _canonical(vecs: Sequence[Vector], pbasis: OrderedBasis, syz: ReducedBasis, v: Vector) -> Vector:
    coeffs = express(v, vecs)
    if coeffs is None:
        raise NotInKernelError("not in combined kernel")
    w = Vector._from_row(pbasis, {k: c for k, c in enumerate(coeffs) if c})
    return syz.reduce(w)


def canonical_decomposition(prefix: OperatorFamily, syz: ReducedBasis, v: Vector) -> Vector:
    """The decomposition of ``v`` whose support avoids the syzygy leading indices.

    Any decomposition of ``v`` over the ``e_{j,g}`` is found by tracked
    elimination and then reduced modulo the reduced syzygy basis ``syz``.
    """
    if v.basis != prefix.basis:
        raise ValueError("vector lives over a different basis")
    pb = prefix.product_basis
    if not len(syz):
        syz = ReducedBasis.zero(pb)
    elif syz.basis != pb:
        syz = ReducedBasis(pb, [s.rebase(pb) for s in syz])
    return _canonical(prefix.kernel_vectors, pb, syz, v)


def _slot(family: OperatorFamily, i: int, decomposition) -> Vector:
    pb = family.product_basis
    return Vector._from_row(pb, {pb.rank(ProductIndex(i, g)): c for g, c in decomposition.items()})


def raw_syzygies(family: OperatorFamily) -> List[Vector]:
    """The elements ``s_{i,g0}`` in construction order, before inter-reduction."""
    return _build(family)[0]


def syzygy_basis(family: OperatorFamily) -> ReducedBasis:
    """Reduced echelon basis of ``Syz(F)`` built from prefix meets and joins."""
    return _build(family)[1]


def _build(family: OperatorFamily):
    pb = family.product_basis
    vecs = family.kernel_vectors
    meets = family.meets
    raw: List[Vector] = []
    current = ReducedBasis.zero(pb)
    for i in range(2, len(family) + 1):
        ti = family[i - 1]
        upper = join(meets[i - 2], ti)
        if upper.is_identity():
            continue
        m = sum(1 for e in pb if e.i < i)
        new = []
        for g0 in upper.red_ranks():
            v = upper.kernel_element(family.basis[g0])
            canon = _canonical(vecs[:m], pb, current, v)
            s = _slot(family, i, ti.t_decomposition(v)) - canon
            if s.leading_term != ProductIndex(i, family.basis[g0]):
                raise AssertionError("internal invariant violated: unexpected syzygy leading index")
            new.append(s)
        raw.extend(new)
        current = reduce_basis(list(current) + new, pb)
    return raw, current


def syzygy_leading_indices(family: OperatorFamily) -> Set[ProductIndex]:
    """``{e_{i,g0} : g0 reducible for U_{i-1} v Ti}``, read off the lattice only."""
    out = set()
    meets = family.meets
    for i in range(2, len(family) + 1):
        upper = join(meets[i - 2], family[i - 1])
        out.update(ProductIndex(i, g) for g in upper.red_set())
    return out


def nullspace_oracle(family: OperatorFamily) -> ReducedBasis:
    """``ker(pi_F)`` by direct elimination on the columns ``pi(e_{i,g})``."""
    pb = family.product_basis
    rels = linear_relations(family.kernel_vectors)
    return reduce_basis([Vector._from_row(pb, r) for r in rels], pb)


def pair_syzygy(family: OperatorFamily, v: Vector) -> Vector:
    """``(-v, v)`` for a pair family and ``v`` in both kernels."""
    if len(family) != 2:
        raise ValueError("pair_syzygy needs a family of two operators")
    t1, t2 = family
    neg = {g: -c for g, c in t1.t_decomposition(v).items()}
    return _slot(family, 1, neg) + _slot(family, 2, t2.t_decomposition(v))


def format_product_vector(w: Vector) -> str:
    """Render as ``e[2,g5] - e[2,g3] - e[1,g5]`` (greatest index first)."""
    if not w:
        return "0"
    out = ""
    for idx, c in sorted(w.terms().items(), key=lambda kv: w.basis.rank(kv[0]), reverse=True):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        term = str(idx) if a == 1 else f"{format_scalar(a)}*{idx}"
        out += (("-" if sign == "-" else "") + term) if not out else f" {sign} {term}"
    return out


def dim_product(family: OperatorFamily) -> int:
    return sum(len(op.red_ranks()) for op in family)


__all__ = [
    "OperatorFamily",
    "ProductIndex",
    "SyzygyBasis",
    "canonical_decomposition",
    "dim_product",
    "format_product_vector",
    "nullspace_oracle",
    "pair_syzygy",
    "pi_F",
    "raw_syzygies",
    "syzygy_basis",
    "syzygy_leading_indices",
]
