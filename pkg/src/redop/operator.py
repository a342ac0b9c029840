"""Reduction operators: idempotent, triangular endomorphisms of the span of a basis."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping

from .linear import (
    OrderedBasis,
    ReducedBasis,
    Vector,
    _axpy,
    format_vector,
    reduce_basis,
)


class NotInKernelError(ValueError):
    pass


class ReductionOperator:
    """A reduction operator stored as its action on reducible generators.

    ``action`` maps each reducible generator ``g`` to ``T(g)``, already written
    over normal forms.  Generators missing from ``action`` are fixed.  Build
    instances with :meth:`from_kernel` or :meth:`from_action`.
    """

    __slots__ = ("basis", "_action", "_hash")

    def __init__(self, basis: OrderedBasis, action: Mapping[int, Vector]):
        # trusted constructor: ranks -> images, invariants already hold
        self.basis = basis
        self._action = dict(action)
        self._hash = None

    # -- construction --------------------------------------------------------

    @classmethod
    def identity(cls, basis: OrderedBasis) -> "ReductionOperator":
        return cls(basis, {})

    @classmethod
    def from_kernel(cls, kernel, basis: OrderedBasis | None = None) -> "ReductionOperator":
        """The operator whose kernel is the span of ``kernel`` (any spanning set).

        On the reduced basis ``B`` of that span, ``T(g) = g - e_g`` when ``g`` is
        the leading term of ``e_g`` in ``B`` and ``T(g) = g`` otherwise.
        """
        if isinstance(kernel, ReducedBasis):
            rb = kernel if kernel.is_reduced() else reduce_basis(kernel, kernel.basis)
        else:
            rb = reduce_basis(kernel, basis)
        if basis is not None and rb.basis != basis:
            raise ValueError("kernel lives over a different basis")
        action = {}
        for e in rb:
            lead = e.leading_rank
            img = dict(e._row)
            del img[lead]
            action[lead] = Vector._from_row(rb.basis, {k: -v for k, v in img.items()})
        return cls(rb.basis, action)

    @classmethod
    def from_action(cls, basis: OrderedBasis, action: Mapping[Hashable, Vector]) -> "ReductionOperator":
        """Validate a generator action ``g -> T(g)`` and wrap it.

        Entries with ``T(g) == g`` are dropped.  Raises ``ValueError`` if an image
        is not strictly smaller than its generator or mentions a reducible
        generator (i.e. the map would not be idempotent).
        """
        ranked: Dict[int, Vector] = {}
        for g, img in action.items():
            if img.basis != basis:
                raise ValueError(f"image of {g!r} lives over a different basis")
            r = basis.rank(g)
            if img == basis.generator(g):
                continue
            if img and img.leading_rank >= r:
                raise ValueError(
                    f"not a reduction operator: T({g}) = {format_vector(img)} is not smaller than {g}")
            ranked[r] = img
        for r, img in ranked.items():
            bad = [basis[k] for k in img._row if k in ranked]
            if bad:
                raise ValueError(
                    f"not idempotent: T({basis[r]}) mentions reducible generator {bad[0]}")
        return cls(basis, ranked)

    @classmethod
    def from_matrix(cls, basis: OrderedBasis, matrix) -> "ReductionOperator":
        """Read a square matrix whose column ``j`` is ``T(basis[j])``."""
        n = len(basis)
        rows = [list(r) for r in matrix]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"matrix must be {n}x{n}")
        action = {}
        for j, g in enumerate(basis):
            action[g] = Vector(basis, {basis[i]: rows[i][j] for i in range(n)})
        return cls.from_action(basis, action)

    # -- queries ----------------------------------------------------------------

    @property
    def action(self) -> Dict[Hashable, Vector]:
        gens = self.basis.generators
        return {gens[k]: self._action[k] for k in sorted(self._action)}

    def image(self, g: Hashable) -> Vector:
        r = self.basis.rank(g)
        img = self._action.get(r)
        return img if img is not None else Vector._from_row(self.basis, {r: Fraction(1)})

    def apply(self, v: Vector) -> Vector:
        if v.basis != self.basis:
            raise ValueError("vector lives over a different basis")
        row: Dict[int, Fraction] = {}
        for k, c in v._row.items():
            img = self._action.get(k)
            if img is None:
                _axpy(row, c, {k: Fraction(1)})
            else:
                _axpy(row, c, img._row)
        return Vector._from_row(self.basis, row)

    __call__ = apply

    def red_set(self) -> FrozenSet[Hashable]:
        gens = self.basis.generators
        return frozenset(gens[k] for k in self._action)

    def nf_set(self) -> FrozenSet[Hashable]:
        gens = self.basis.generators
        return frozenset(g for k, g in enumerate(gens) if k not in self._action)

    def red_ranks(self) -> List[int]:
        return sorted(self._action)

    def is_identity(self) -> bool:
        return not self._action

    def kernel_of(self) -> ReducedBasis:
        """The reduced basis ``{g - T(g) : g reducible}`` of the kernel."""
        out = []
        for k in sorted(self._action):
            row = {j: -c for j, c in self._action[k]._row.items()}
            row[k] = Fraction(1)
            out.append(Vector._from_row(self.basis, row))
        return ReducedBasis(self.basis, out)

    def kernel_element(self, g: Hashable) -> Vector:
        """``g - T(g)``."""
        return self.basis.generator(g) - self.image(g)

    def t_decomposition(self, v: Vector) -> Dict[Hashable, Fraction]:
        """Coefficients ``l_g`` with ``v = sum l_g (g - T(g))`` over reducible ``g``.

        Strips the leading term repeatedly; each subtraction lowers it.
        """
        if v.basis != self.basis:
            raise ValueError("vector lives over a different basis")
        row = dict(v._row)
        coeffs: Dict[int, Fraction] = {}
        while row:
            lead = max(row)
            img = self._action.get(lead)
            if img is None:
                raise NotInKernelError(f"not in kernel: {format_vector(v)}")
            c = row[lead]
            coeffs[lead] = c
            del row[lead]
            # v - c(g - T(g)): the lead cancels, c*T(g) is added back
            _axpy(row, c, img._row)
        gens = self.basis.generators
        return {gens[k]: coeffs[k] for k in sorted(coeffs)}

    # -- dunder -----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReductionOperator):
            return NotImplemented
        return self.basis == other.basis and self._action == other._action

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.basis, frozenset((k, v) for k, v in self._action.items())))
        return self._hash

    def __repr__(self) -> str:
        gens = self.basis.generators
        body = ", ".join(f"{gens[k]} -> {format_vector(v)}" for k, v in sorted(self._action.items()))
        return f"ReductionOperator({{{body}}})"

    def matrix(self) -> List[List[Fraction]]:
        """Dense matrix, column ``j`` holding ``T(basis[j])``."""
        n = len(self.basis)
        m = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            img = self._action.get(j)
            if img is None:
                m[j][j] = Fraction(1)
            else:
                for i, c in img._row.items():
                    m[i][j] = c
        return m


def from_kernel(kernel, basis: OrderedBasis | None = None) -> ReductionOperator:
    return ReductionOperator.from_kernel(kernel, basis)


def kernel_of(op: ReductionOperator) -> ReducedBasis:
    return op.kernel_of()


def nf_set(op: ReductionOperator) -> FrozenSet[Hashable]:
    return op.nf_set()


def red_set(op: ReductionOperator) -> FrozenSet[Hashable]:
    return op.red_set()


def apply(op: ReductionOperator, v: Vector) -> Vector:
    return op.apply(v)


def t_decomposition(op: ReductionOperator, v: Vector) -> Dict[Hashable, Fraction]:
    return op.t_decomposition(v)


def coordinate_kernel(basis: OrderedBasis, generators: Iterable[Hashable]) -> ReducedBasis:
    """Reduced basis of the span of some generators: just the sorted singletons."""
    return ReducedBasis(basis, [basis.generator(g) for g in generators])
