"""Sparse multivariate polynomial arithmetic with exact coefficients.

A monomial is a plain tuple of non-negative exponents, one slot per
variable of the ambient ring; helper functions near the top operate on
those tuples.  A polynomial is a map from monomials to nonzero
coefficients.  Coefficients are exact throughout: Python ints over ZZ,
ints/Fractions over QQ, ints in [0, p) over GF(p).  No floats anywhere.

Values are immutable after construction; operations never mutate their
inputs, so polynomials are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class RingContextError(ValueError):
    """Operands live in different ambient rings."""


class ExactDivisionError(ArithmeticError):
    """A coefficient was not divisible in an exact-division request."""


class SubstitutionError(KeyError):
    """A substitution map does not cover some occurring variable."""


# ---------------------------------------------------------------------------
# coefficient domains


@dataclass(frozen=True)
class Domain:
    """Coefficient domain tag: exact integers, rationals, or a prime field."""

    kind: str  # "ZZ" | "QQ" | "GF"
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("ZZ", "QQ", "GF"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "GF" and self.p < 2:
            raise ValueError("GF domain needs a modulus >= 2")

    @property
    def is_field(self) -> bool:
        return self.kind != "ZZ"

    @property
    def char(self) -> int:
        return self.p if self.kind == "GF" else 0

    def normalize(self, c):
        if self.kind == "GF":
            return c % self.p
        return c

    def is_unit(self, c) -> bool:
        if self.kind == "ZZ":
            return c in (1, -1)
        if self.kind == "QQ":
            return c != 0
        return c % self.p != 0

    def inv(self, c):
        if self.kind == "QQ":
            return Fraction(1, 1) / c
        if self.kind == "GF":
            return pow(c, -1, self.p)
        if c in (1, -1):
            return c
        raise ExactDivisionError(f"{c} is not a unit in ZZ")

    def exact_div(self, c, d):
        if self.kind == "QQ":
            return Fraction(c) / d
        if self.kind == "GF":
            return (c * pow(d, -1, self.p)) % self.p
        q, r = divmod(c, d)
        if r:
            raise ExactDivisionError(f"{c} not divisible by {d}")
        return q

    def __str__(self):
        return {"ZZ": "Z", "QQ": "Q"}.get(self.kind, f"GF({self.p})")


ZZ = Domain("ZZ")
QQ = Domain("QQ")


def GF(p: int) -> Domain:
    return Domain("GF", p)


# ---------------------------------------------------------------------------
# monomials (exponent tuples)


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: tuple, a: tuple) -> tuple:
    """Exponent tuple of x^b / x^a (caller guarantees divisibility)."""
    return tuple(y - x for y, x in zip(b, a))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: tuple) -> int:
    return sum(a)


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """Total multiplicative well-order on exponent tuples.

    kind 'grevlex' and 'lex' are the usual global orders; kind 'elim'
    is the block order that makes every monomial involving a variable
    from `elim` larger than any monomial in the remaining variables
    (grevlex within each block), which is what elimination needs.
    """

    kind: str
    elim: frozenset = frozenset()

    def key(self, exps: tuple):
        """Sort key: key(a) < key(b) iff a < b in the order."""
        if self.kind == "grevlex":
            return (sum(exps), tuple(-e for e in reversed(exps)))
        if self.kind == "lex":
            return exps
        block = sorted(self.elim)
        rest = [i for i in range(len(exps)) if i not in self.elim]
        be = tuple(exps[i] for i in block)
        re_ = tuple(exps[i] for i in rest)
        return (
            sum(be),
            tuple(-e for e in reversed(be)),
            sum(re_),
            tuple(-e for e in reversed(re_)),
        )

    def sorted_desc(self, monos):
        return sorted(monos, key=self.key, reverse=True)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(indices) -> MonomialOrder:
    return MonomialOrder("elim", frozenset(indices))


# ---------------------------------------------------------------------------
# rings and polynomials


@dataclass(frozen=True)
class PolyRing:
    """Ambient context: ordered variable names plus a coefficient domain."""

    names: tuple
    domain: Domain = ZZ

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def const(self, c) -> "Polynomial":
        c = self.domain.normalize(c)
        if c == 0:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def var(self, which) -> "Polynomial":
        i = which if isinstance(which, int) else self.index(which)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: self.domain.normalize(1)})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, c=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent tuple")
        c = self.domain.normalize(c)
        return Polynomial(self, {exps: c} if c != 0 else {})

    def from_terms(self, items) -> "Polynomial":
        acc = {}
        for exps, c in items:
            exps = tuple(exps)
            acc[exps] = acc.get(exps, 0) + c
        dom = self.domain
        return Polynomial(self, {m: dom.normalize(c) for m, c in acc.items() if dom.normalize(c) != 0})

    def __str__(self):
        return f"{self.domain}[{', '.join(self.names)}]"


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mono_deg(m) == 0 for m in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def total_degree(self) -> int:
        """-1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(m) for m in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def variables_used(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def leading_term(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return [(m, self.terms[m]) for m in order.sorted_desc(self.terms)]

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), 0)

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingContextError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        dom = self.ring.domain
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = dom.normalize(out.get(m, 0) + c)
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        dom = self.ring.domain
        return Polynomial(self.ring, {m: dom.normalize(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            dom = self.ring.domain
            k = dom.normalize(other)
            if k == 0:
                return self.ring.zero
            out = {}
            for m, c in self.terms.items():
                v = dom.normalize(c * k)
                if v != 0:
                    out[m] = v
            return Polynomial(self.ring, out)
        self._check(other)
        dom = self.ring.domain
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: dom.normalize(c) for m, c in acc.items() if dom.normalize(c) != 0})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure-preserving maps -------------------------------------

    def map_coefficients(self, fn, ring: PolyRing | None = None) -> "Polynomial":
        ring = ring or self.ring
        dom = ring.domain
        out = {}
        for m, c in self.terms.items():
            v = dom.normalize(fn(c))
            if v != 0:
                out[m] = v
        return Polynomial(ring, out)

    def exact_div_int(self, n: int) -> "Polynomial":
        """Return g with n*g == self; error on any non-divisible coefficient."""
        if n == 0:
            raise ZeroDivisionError("division by zero")
        dom = self.ring.domain
        out = {}
        for m, c in self.terms.items():
            out[m] = dom.exact_div(c, n)
        return Polynomial(self.ring, out)

    def reduce_mod(self, p: int) -> "Polynomial":
        """Image in GF(p)[same vars]; caller guarantees p prime."""
        target = PolyRing(self.ring.names, GF(p))
        out = {}
        for m, c in self.terms.items():
            v = c % p
            if v:
                out[m] = v
        return Polynomial(target, out)

    def to_domain(self, domain: Domain) -> "Polynomial":
        target = PolyRing(self.ring.names, domain)
        if domain.kind == "QQ":
            return Polynomial(target, dict(self.terms))
        if domain.kind == "GF":
            return self.reduce_mod(domain.p)
        # to ZZ: only safe from GF reps (already ints) or integral QQ
        out = {}
        for m, c in self.terms.items():
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ExactDivisionError(f"coefficient {c} is not an integer")
                c = c.numerator
            if c:
                out[m] = c
        return Polynomial(target, out)

    def content(self) -> int:
        """gcd of all coefficients, 0 for the zero polynomial (ZZ only)."""
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c))
        return g

    def primitive_part(self) -> "Polynomial":
        c = self.content()
        if c in (0, 1):
            return self
        return self.exact_div_int(c)

    def substitute(self, assignment: dict, ring: PolyRing | None = None) -> "Polynomial":
        """Compose with `assignment`, a map variable name -> Polynomial.

        The map must cover every variable occurring in self; all values
        must share one ring, which becomes the ring of the result.
        """
        used = self.variables_used()
        for i in used:
            if self.ring.names[i] not in assignment:
                raise SubstitutionError(f"no assignment for variable {self.ring.names[i]!r}")
        if ring is None:
            if assignment:
                ring = next(iter(assignment.values())).ring
            else:
                ring = self.ring
        result = ring.zero
        for m, c in self.terms.items():
            term = ring.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * (assignment[self.ring.names[i]] ** e)
            result = result + term
        return result

    # -- equality, hashing, printing ------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return poly_text(self)

    def __repr__(self):
        return f"<{poly_text(self)} in {self.ring}>"


def poly_text(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Canonical text form: terms descending in `order`, '^' powers, '*' products."""
    if f.is_zero():
        return "0"
    names = f.ring.names
    chunks = []
    for m, c in f.sorted_terms(order):
        vars_part = "*".join(
            f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(m) if e
        )
        neg = c < 0
        a = -c if neg else c
        if vars_part:
            body = vars_part if a == 1 else f"{a}*{vars_part}"
        else:
            body = str(a)
        chunks.append(("-" if neg else "+", body))
    sign, body = chunks[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text
