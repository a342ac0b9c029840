"""Lattice operations on reduction operators, through the kernel bijection."""

from __future__ import annotations

from typing import List, Sequence

from .linear import is_subspace, subspace_intersection, subspace_sum
from .operator import ReductionOperator, coordinate_kernel


def _shared_basis(ops: Sequence[ReductionOperator]):
    basis = ops[0].basis
    for op in ops[1:]:
        if op.basis != basis:
            raise ValueError("operators live over different bases")
    return basis


def leq(t1: ReductionOperator, t2: ReductionOperator) -> bool:
    """``t1 <= t2`` iff ``ker(t2)`` is contained in ``ker(t1)``."""
    _shared_basis([t1, t2])
    return is_subspace(t2.kernel_of(), t1.kernel_of())


def meet(t1: ReductionOperator, t2: ReductionOperator) -> ReductionOperator:
    _shared_basis([t1, t2])
    return ReductionOperator.from_kernel(subspace_sum(t1.kernel_of(), t2.kernel_of()))


def join(t1: ReductionOperator, t2: ReductionOperator) -> ReductionOperator:
    _shared_basis([t1, t2])
    return ReductionOperator.from_kernel(subspace_intersection(t1.kernel_of(), t2.kernel_of()))


def prefix_meets(ops: Sequence[ReductionOperator]) -> List[ReductionOperator]:
    """``[T1, T1^T2, T1^T2^T3, ...]``, each computed from the previous one."""
    out = []
    acc = None
    for op in ops:
        acc = op if acc is None else meet(acc, op)
        out.append(acc)
    return out


def meet_family(ops: Sequence[ReductionOperator], basis=None) -> ReductionOperator:
    """Lower bound of a family; the empty family gives the identity (needs ``basis``)."""
    if not ops:
        if basis is None:
            raise ValueError("the meet of an empty family needs an explicit basis")
        return ReductionOperator.identity(basis)
    _shared_basis(list(ops))
    return prefix_meets(ops)[-1]


def nf_of_family(ops: Sequence[ReductionOperator]) -> frozenset:
    """Generators that are normal forms for every operator."""
    basis = _shared_basis(list(ops))
    nf = set(basis.generators)
    for op in ops:
        nf -= op.red_set()
    return frozenset(nf)


def vee_bar(ops: Sequence[ReductionOperator]) -> ReductionOperator:
    """The operator whose kernel is spanned by the common normal forms of ``ops``."""
    basis = _shared_basis(list(ops))
    nf = nf_of_family(ops)
    return ReductionOperator.from_kernel(coordinate_kernel(basis, sorted(nf, key=basis.rank)))

