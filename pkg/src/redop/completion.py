"""Confluence, completion, and the useless-reduction criterion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, List, Sequence, Set, Tuple

from .lattice import join, leq, meet, meet_family, nf_of_family, vee_bar
from .operator import ReductionOperator
from .syzygy import OperatorFamily, ProductIndex, syzygy_leading_indices


def _ops(family) -> List[ReductionOperator]:
    return list(family.operators) if isinstance(family, OperatorFamily) else list(family)


def obstruction_set(family) -> Set[Hashable]:
    """``NF(F) minus NF(meet F)``; empty exactly when the family is confluent."""
    ops = _ops(family)
    return set(nf_of_family(ops) - meet_family(ops).nf_set())


def is_confluent(family) -> bool:
    return not obstruction_set(family)


def completing_operator(family) -> ReductionOperator:
    """``(meet F) v (vee_bar F)``: adding it makes the family confluent."""
    ops = _ops(family)
    return join(meet_family(ops), vee_bar(ops))


def _without(op: ReductionOperator, ranks: Set[int]) -> ReductionOperator:
    # dropping reductions from a reduced kernel basis leaves a reduced basis
    return ReductionOperator(op.basis, {k: v for k, v in op._action.items() if k not in ranks})


def reduce_family(family: OperatorFamily) -> OperatorFamily:
    """Turn every ``g`` with ``e_{i,g}`` a syzygy leading index into a ``Ti``-normal form."""
    lead = syzygy_leading_indices(family)
    ops = []
    for i, op in enumerate(family, start=1):
        ranks = {family.basis.rank(e.g) for e in lead if e.i == i}
        ops.append(_without(op, ranks) if ranks else op)
    return OperatorFamily(ops, family.names)


def incremental_completion(family, keep_identity: bool = False) -> List[ReductionOperator]:
    """``C_i = C^{F_{i-1} + {Ti}}`` for ``i = 2..n``; identities dropped unless asked."""
    ops = _ops(family)
    out = []
    current = [ops[0]]
    acc = ops[0]
    for op in ops[1:]:
        current.append(op)
        acc = meet(acc, op)
        # the meet of F_{i-1} + {Ti}; adding Ci never changes it
        nf = nf_of_family(current)
        c = join(acc, vee_bar(current)) if nf != acc.nf_set() else ReductionOperator.identity(op.basis)
        current.append(c)
        if keep_identity or not c.is_identity():
            out.append(c)
    return out


def verify_completion(family, added: Sequence[ReductionOperator]) -> bool:
    """``Obs(F)`` is covered by the added reductions and ``meet F <= meet C``."""
    ops = _ops(family)
    obs = obstruction_set(ops)
    if not added:
        return not obs
    red = set()
    for c in added:
        red |= c.red_set()
    if not obs <= red:
        return False
    return leq(meet_family(ops), meet_family(list(added)))


def ambiguities(family) -> List[Tuple[Hashable, int, int]]:
    """Triples ``(g0, i, j)``, ``i < j`` 1-based, with ``g0`` reducible by both."""
    ops = _ops(family)
    basis = ops[0].basis
    out = []
    for r, g in enumerate(basis):
        hits = [i for i, op in enumerate(ops, start=1) if r in op._action]
        out.extend((g, a, b) for n, a in enumerate(hits) for b in hits[n + 1:])
    return out


@dataclass
class CompletionReport:
    obstruction_set: Set[Hashable]
    added_operators: List[ReductionOperator]
    removed_reductions: List[ProductIndex]
    is_confluent_after: bool
    ambiguities: List[Tuple[Hashable, int, int]] = field(default_factory=list)
    reduced_family: OperatorFamily | None = None


class CompletionError(AssertionError):
    pass


def complete_with_report(family: OperatorFamily) -> CompletionReport:
    """Reduce the family, complete the reduction incrementally, and check the result."""
    reduced = reduce_family(family)
    added = incremental_completion(reduced)
    if not verify_completion(family, added):
        raise CompletionError("Theorem postcondition violated")
    removed = sorted(syzygy_leading_indices(family), key=lambda e: (e.i, family.basis.rank(e.g)))
    after = list(family.operators) + added
    return CompletionReport(
        obstruction_set=obstruction_set(family),
        added_operators=added,
        removed_reductions=removed,
        is_confluent_after=is_confluent(after),
        ambiguities=ambiguities(family),
        reduced_family=reduced,
    )
