"""Commutative polynomials, DRL order, and a degree-truncated Gröbner front end.

All verdicts are certified up to the degree bound ``D`` of a
:class:`TruncatedContext`: monomials of total degree ``<= D`` form the finite
ordered basis the reduction operators act on.  For homogeneous inputs the
degree-``D`` slice of an ideal is spanned by the multiples ``m*f`` of degree
``<= D``, so nothing is lost below the bound; for inhomogeneous inputs results
may be truncation artifacts and are flagged as such.

Polynomial indices in this module (``f1, f2, ...``) are 1-based.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .completion import complete_with_report, obstruction_set
from .lattice import join
from .linear import OrderedBasis, Vector, format_scalar, to_scalar
from .operator import ReductionOperator
from .syzygy import OperatorFamily


class Monomial(tuple):
    """Exponent vector aligned with the ring's variables (least variable first)."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be nonnegative")
        return super().__new__(cls, exps)

    @property
    def degree(self) -> int:
        return sum(self)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(a + b for a, b in zip(self, other))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self, other))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError("monomial division is not exact")
        return Monomial(a - b for a, b in zip(self, other))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(max(a, b) for a, b in zip(self, other))

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(min(a, b) for a, b in zip(self, other))

    def is_one(self) -> bool:
        return not any(self)

    def __repr__(self) -> str:
        return f"Monomial({tuple(self)})"


class MonomialOrder:
    """Degree reverse lexicographic order.

    Higher total degree is greater.  On equal degree, scan the variables from
    the least one upwards; at the first differing exponent the monomial with
    the *smaller* exponent is greater.  ``variables`` lists the variables in
    increasing precedence, e.g. ``("t", "z", "y", "x")`` for ``t < z < y < x``.
    """

    kind = "drl"

    def __init__(self, variables: Sequence[str]):
        self.variables = tuple(variables)

    def key(self, m: Monomial):
        return (m.degree, tuple(-e for e in m))

    def less(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) < self.key(b)

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and self.variables == other.variables

    def __hash__(self) -> int:
        return hash(("drl", self.variables))


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class PolynomialRing:
    """Polynomials over the rationals in the given variables (increasing precedence)."""

    def __init__(self, variables: Sequence[str]):
        variables = tuple(v.strip() for v in variables)
        if not variables:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("variables must be distinct")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"invalid variable name {v!r}")
        self.variables = variables
        self.order = MonomialOrder(variables)
        self._index = {v: i for i, v in enumerate(variables)}

    def __eq__(self, other) -> bool:
        return isinstance(other, PolynomialRing) and self.variables == other.variables

    def __hash__(self) -> int:
        return hash(self.variables)

    def __repr__(self) -> str:
        return f"PolynomialRing({' < '.join(self.variables)})"

    @property
    def one(self) -> Monomial:
        return Monomial([0] * len(self.variables))

    def monomial(self, **powers: int) -> Monomial:
        exps = [0] * len(self.variables)
        for v, e in powers.items():
            exps[self._index[v]] = e
        return Monomial(exps)

    def var(self, name: str) -> "Polynomial":
        return Polynomial(self, {self.monomial(**{name: 1}): 1})

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {self.one: c})

    def format_monomial(self, m: Monomial) -> str:
        # print the greatest variable first, as in x*z^3
        parts = []
        for v, e in reversed(list(zip(self.variables, m))):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"

    def parse(self, text: str) -> "Polynomial":
        """Parse ``3*x^2*y - 1/2*z^3 + t``; raises :class:`PolynomialSyntaxError`."""
        tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:  # only trailing whitespace left
                break
            start = m.start(m.lastindex)
            tokens.append((m.lastindex, m.group(m.lastindex), start))
            pos = m.end()
        tokens.append((0, "", len(text)))
        k = 0

        def peek():
            return tokens[k]

        def take():
            nonlocal k
            k += 1
            return tokens[k - 1]

        def error(msg, tok=None):
            raise PolynomialSyntaxError(msg, text, (tok or peek())[2])

        def integer():
            kind, val, _ = peek()
            if kind != 1:
                error("expected an integer")
            take()
            return int(val)

        def factor():
            kind, val, _ = peek()
            if kind == 1:
                take()
                num = int(val)
                if peek()[1] == "/":
                    take()
                    den_tok = peek()
                    den = integer()
                    if den == 0:
                        error("division by zero", den_tok)
                    return Fraction(num, den), self.one
                return Fraction(num), self.one
            if kind == 2:
                tok = take()
                if val not in self._index:
                    error(f"unknown variable {val!r}", tok)
                e = 1
                if peek()[1] == "^":
                    take()
                    e = integer()
                return Fraction(1), self.monomial(**{val: e})
            if kind == 0:
                error("unexpected end of input")
            error(f"unexpected {val!r}")

        terms: Dict[Monomial, Fraction] = {}
        sign = 1
        if peek()[1] in "+-" and peek()[0] == 3:
            sign = -1 if take()[1] == "-" else 1
        while True:
            coeff, mono = factor()
            while peek()[1] == "*" and peek()[0] == 3:
                take()
                c, m = factor()
                coeff *= c
                mono = mono * m
            terms[mono] = terms.get(mono, Fraction(0)) + sign * coeff
            kind, val, _ = peek()
            if kind == 0:
                break
            if kind == 3 and val in "+-":
                take()
                sign = -1 if val == "-" else 1
                continue
            error(f"unexpected {val!r}")
        return Polynomial(self, terms)

    def __call__(self, text: str) -> "Polynomial":
        return self.parse(text)


class Polynomial:
    """Sparse polynomial: monomial -> nonzero rational."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolynomialRing, terms: Mapping[Monomial, object] | None = None):
        self.ring = ring
        clean = {}
        for m, c in (terms or {}).items():
            c = to_scalar(c)
            if c:
                clean[Monomial(m)] = c
        self.terms: Dict[Monomial, Fraction] = clean

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.constant(other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Monomial):
            return Polynomial(self.ring, {m * other: c for m, c in self.terms.items()})
        other = self._coerce(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    @property
    def degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return max(m.degree for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.terms}) <= 1

    @property
    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("no leading term of zero")
        return max(self.terms, key=self.ring.order.key)

    @property
    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial]

    def monic(self) -> "Polynomial":
        return self * (1 / self.leading_coefficient)

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: self.ring.order.key(mc[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for m, c in self.sorted_terms():
            a = abs(c)
            mono = self.ring.format_monomial(m)
            if m.is_one():
                body = format_scalar(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_scalar(a)}*{mono}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def monomials_up_to(nvars: int, degree: int) -> List[Monomial]:
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            exps = [0] * nvars
            for v in combo:
                exps[v] += 1
            out.append(Monomial(exps))
    return out


class TruncationError(ValueError):
    pass


class TruncatedContext:
    """Monomials of total degree ``<= degree_bound``, sorted by the ring's DRL order."""

    def __init__(self, ring: PolynomialRing, degree_bound: int):
        if degree_bound < 1:
            raise ValueError("degree bound must be a positive integer")
        self.ring = ring
        self.order = ring.order
        self.degree_bound = degree_bound
        mons = monomials_up_to(len(ring.variables), degree_bound)
        mons.sort(key=self.order.key)
        self.ambient = OrderedBasis(mons)
        self._ops: Dict[Polynomial, ReductionOperator] = {}

    @property
    def variables(self):
        return self.ring.variables

    def to_vector(self, f: Polynomial) -> Vector:
        return Vector._from_row(self.ambient, {self.ambient.rank(m): c for m, c in f.terms.items()})

    def to_polynomial(self, v: Vector) -> Polynomial:
        return Polynomial(self.ring, v.terms())

    def check_degree(self, f: Polynomial) -> None:
        if not f:
            raise ValueError("cannot build an operator from the zero polynomial")
        if f.degree > self.degree_bound:
            raise TruncationError(
                f"{f} exceeds truncation bound: degree {f.degree} > {self.degree_bound}")

    def multiples(self, f: Polynomial) -> List[Polynomial]:
        return [f * m for m in monomials_up_to(len(self.variables), self.degree_bound - f.degree)]

    def operator(self, f: Polynomial) -> ReductionOperator:
        return operator_from_polynomial(self, f)

    def family(self, polys: Sequence[Polynomial]) -> OperatorFamily:
        return OperatorFamily([self.operator(f) for f in polys],
                              [f"f{k}" for k in range(1, len(polys) + 1)])


def operator_from_polynomial(ctx: TruncatedContext, f: Polynomial) -> ReductionOperator:
    """Operator whose kernel is the degree-``<= D`` slice of the principal ideal ``(f)``."""
    ctx.check_degree(f)
    key = f.monic()
    cached = ctx._ops.get(key)
    if cached is None:
        cached = ReductionOperator.from_kernel([ctx.to_vector(p) for p in ctx.multiples(key)], ctx.ambient)
        ctx._ops[key] = cached
    return cached


def is_groebner(ctx: TruncatedContext, polys: Sequence[Polynomial]) -> bool:
    """Confluence of the associated operators, i.e. a Gröbner certificate up to degree ``D``."""
    if not polys:
        return True
    return not obstruction_set(ctx.family(polys))


@dataclass
class UselessReduction:
    """The reduction induced by ``cofactor * f_index`` is useless.

    ``monomial = cofactor * lt(f_index)`` is reducible for
    ``(T1 ^ ... ^ T_{index-1}) v T_index``, which sends it to ``image``.
    """

    index: int
    cofactor: Monomial
    monomial: Monomial
    image: Polynomial
    pair: int = 0  # the earlier polynomial whose overlap this rejects


@dataclass
class GroebnerCompletion:
    basis: List[Polynomial]
    useless: List[UselessReduction]
    added: List[Polynomial]
    degree_bound: int
    certified: bool
    warnings: List[str] = field(default_factory=list)

    def __iter__(self):
        # allows ``basis, useless = complete_groebner(...)``
        return iter((self.basis, self.useless))


def _minimal_additions(initial: Sequence[Polynomial], candidates: Sequence[Polynomial]) -> List[Polynomial]:
    leads = [f.leading_monomial for f in initial]
    kept = []
    for p in candidates:
        lm = p.leading_monomial
        if any(l.divides(lm) for l in leads):
            continue
        kept.append(p)
        leads.append(lm)
    return kept


def _upper_bounds(family: OperatorFamily) -> List[ReductionOperator]:
    """``U_{i-1} v T_i`` for ``i = 2..n`` (index 0 holds the identity for ``i = 1``)."""
    out = [ReductionOperator.identity(family.basis)]
    meets = family.meets
    for i in range(2, len(family) + 1):
        out.append(join(meets[i - 2], family[i - 1]))
    return out


def useless_reductions(ctx: TruncatedContext, polys: Sequence[Polynomial]) -> Tuple[List[UselessReduction], List[str]]:
    """Critical pairs rejected by the lattice criterion.

    For ``j < i`` with non-coprime leading monomials, the overlap
    ``L = lcm(lt f_j, lt f_i)`` is rejected when ``L`` is reducible for
    ``U_{i-1} v T_i``; the reported cofactor is ``L / lt f_i``.
    """
    family = ctx.family(polys)
    uppers = _upper_bounds(family)
    leads = [f.leading_monomial for f in polys]
    out: List[UselessReduction] = []
    notes: List[str] = []
    seen = set()
    for i in range(2, len(polys) + 1):
        upper = uppers[i - 1]
        red = upper.red_set()
        for j in range(1, i):
            if leads[i - 1].gcd(leads[j - 1]).is_one():
                continue
            lcm = leads[i - 1].lcm(leads[j - 1])
            if lcm.degree > ctx.degree_bound:
                notes.append(f"pair (f{j}, f{i}) at {ctx.ring.format_monomial(lcm)} lies beyond degree bound {ctx.degree_bound}")
                continue
            cof = lcm / leads[i - 1]
            if lcm in red and (i, cof) not in seen:
                seen.add((i, cof))
                out.append(UselessReduction(i, cof, lcm, ctx.to_polynomial(upper.image(lcm)), pair=j))
    return out, notes


def lattice_useless_cofactors(ctx: TruncatedContext, polys: Sequence[Polynomial]) -> List[Tuple[int, Monomial]]:
    """Every ``(i, m)`` with ``m * lt(f_i)`` reducible for ``U_{i-1} v T_i`` within the bound."""
    family = ctx.family(polys)
    uppers = _upper_bounds(family)
    out = []
    for i in range(2, len(polys) + 1):
        lead = polys[i - 1].leading_monomial
        for g in sorted(uppers[i - 1].red_set(), key=ctx.order.key):
            if lead.divides(g):
                out.append((i, g / lead))
    return out


def complete_groebner(ctx: TruncatedContext, polys: Sequence[Polynomial]) -> GroebnerCompletion:
    """Complete ``polys`` to a Gröbner basis up to degree ``D`` and list useless reductions."""
    polys = list(polys)
    for f in polys:
        ctx.check_degree(f)
    warnings: List[str] = []
    if not all(f.is_homogeneous() for f in polys):
        warnings.append("inhomogeneous input: truncation may hide ideal elements below the bound")
    report = complete_with_report(ctx.family(polys))
    candidates = []
    for c in report.added_operators:
        candidates.extend(ctx.to_polynomial(e) for e in c.kernel_of())
    candidates.sort(key=lambda p: ctx.order.key(p.leading_monomial))
    added = _minimal_additions(polys, candidates)
    basis = polys + added
    for p in added:
        if p.degree == ctx.degree_bound:
            warnings.append(f"added {p} has degree exactly {ctx.degree_bound}: possible truncation artifact")
    useless, notes = useless_reductions(ctx, basis)
    warnings.extend(notes)
    certified = is_groebner(ctx, basis)
    if not certified:
        warnings.append("completed set is not confluent at this bound")
    return GroebnerCompletion(basis, useless, added, ctx.degree_bound, certified, warnings)


def combine(polys: Sequence[Polynomial], terms: Sequence[Tuple[Polynomial, int]]) -> Polynomial:
    if not polys:
        raise ValueError("no polynomials to combine")
    total = Polynomial(polys[0].ring)
    for cofactor, idx in terms:
        if not 1 <= idx <= len(polys):
            raise IndexError(f"no polynomial f{idx}")
        total = total + cofactor * polys[idx - 1]
    return total


def verify_syzygy_identity(ctx: TruncatedContext, lhs, rhs, polys: Sequence[Polynomial]) -> bool:
    """``sum cofactor * f_index`` agrees on both sides (indices are 1-based)."""
    return combine(polys, lhs) == combine(polys, rhs)
