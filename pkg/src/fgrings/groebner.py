"""Groebner bases over ZZ (strong), QQ and GF(p), plus the ideal calculus.

Over a field this is plain Buchberger with reduced bases.  Over ZZ the
completion also processes gcd-combinations of leading coefficients
(G-polynomials) so the result is a *strong* basis: the leading term of
every nonzero ideal element is divisible, monomial and coefficient, by
some basis leading term.  Reduction over ZZ uses least non-negative
remainders, which makes normal forms canonical once the basis is
interreduced.

All entry points are deterministic: same generators, same order, same
limits give a bit-identical basis.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd

from .config import GroebnerLimits
from .poly import (
    GREVLEX,
    Polynomial,
    PolyRing,
    RingContextError,
    ZZ,
    elimination_order,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class ResourceCapExceeded(RuntimeError):
    """Completion hit a configured cap; the instance is too large, not wrong."""


class InternalInvariantError(AssertionError):
    """A mechanically checked invariant failed; indicates a bug, not bad input."""


DEFAULT_LIMITS = GroebnerLimits()


@dataclass(frozen=True)
class IdealPresentation:
    """A finite generating set in a fixed ambient ring (zero gens dropped)."""

    ring: PolyRing
    generators: tuple

    def __init__(self, ring: PolyRing, generators):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingContextError("generator outside the ambient ring")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")" if self.generators else "(0)"


def ideal(ring: PolyRing, *gens) -> IdealPresentation:
    return IdealPresentation(ring, gens)


# ---------------------------------------------------------------------------
# reduction


def _prep(g: Polynomial, order):
    lm, lc = g.leading_term(order)
    tail = [(m, c) for m, c in g.terms.items() if m != lm]
    return (lm, lc, tail, g)


def _reduce_full(f: Polynomial, prepped: list, order, counter=None) -> Polynomial:
    """Normal form of f against prepared basis rows.

    Field: ordinary total reduction.  ZZ: Euclidean strong reduction,
    leaving each coefficient in [0, lc) for every applicable divisor.
    """
    ring = f.ring
    dom = ring.domain
    work = dict(f.terms)
    out = {}
    key = order.key
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = False
        for lm, lc, tail, _g in prepped:
            if not mono_divides(lm, m):
                continue
            if dom.is_field:
                q = c * dom.inv(lc) if dom.kind == "GF" else c / lc
                q = dom.normalize(q)
                r = 0
            else:
                q, r = divmod(c, lc)
                if q == 0:
                    continue
            if counter is not None:
                counter[0] += 1
                if counter[0] > counter[1]:
                    raise ResourceCapExceeded("reduction step cap exceeded")
            shift = mono_div(m, lm)
            for tm, tc in tail:
                mm = mono_mul(tm, shift)
                v = dom.normalize(work.get(mm, 0) - q * tc)
                if v == 0:
                    work.pop(mm, None)
                else:
                    work[mm] = v
            if r != 0:
                work[m] = r
            hit = True
            break
        if not hit:
            out[m] = c
    return Polynomial(ring, out)


def _normalize_sign(g: Polynomial, order) -> Polynomial:
    dom = g.ring.domain
    if g.is_zero():
        return g
    _, lc = g.leading_term(order)
    if dom.is_field:
        return g.map_coefficients(lambda c: c * dom.inv(lc)) if lc != dom.normalize(1) else g
    return -g if lc < 0 else g


# ---------------------------------------------------------------------------
# completion


def _spoly(f, g, order):
    ring = f.ring
    dom = ring.domain
    fm, fc = f.leading_term(order)
    gm, gc = g.leading_term(order)
    l = mono_lcm(fm, gm)
    if dom.is_field:
        cf, cg = dom.inv(fc), dom.inv(gc)
    else:
        lc = fc * gc // gcd(fc, gc)
        cf, cg = lc // fc, lc // gc
    a = _mono_shift(f, mono_div(l, fm), cf)
    b = _mono_shift(g, mono_div(l, gm), cg)
    return a - b


def _gpoly(f, g, order):
    """gcd-combination over ZZ: leading term becomes gcd(lcs) * lcm(monomials)."""
    fm, fc = f.leading_term(order)
    gm, gc = g.leading_term(order)
    l = mono_lcm(fm, gm)
    d = gcd(fc, gc)
    # extended Euclid on the leading coefficients
    u, v = _bezout(fc, gc, d)
    a = _mono_shift(f, mono_div(l, fm), u)
    b = _mono_shift(g, mono_div(l, gm), v)
    return a + b


def _bezout(a, b, d):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    # old_r is +-d
    if old_r == -d:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def _mono_shift(f: Polynomial, shift, scale):
    dom = f.ring.domain
    out = {}
    for m, c in f.terms.items():
        v = dom.normalize(c * scale)
        if v != 0:
            out[mono_mul(m, shift)] = v
    return Polynomial(f.ring, out)


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    order: "object"
    elements: tuple
    reduced: bool = True
    _prepped: tuple = field(default=(), compare=False, repr=False)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingContextError("polynomial outside the basis ring")
        return _reduce_full(f, list(self._prepped), self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and self.ring.domain.is_unit(g.constant_value()) for g in self.elements)

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.elements) + "}"


def _make_basis(ring, order, elems) -> GroebnerBasis:
    elems = tuple(elems)
    prepped = tuple(_prep(g, order) for g in elems)
    return GroebnerBasis(ring, order, elems, True, prepped)


def strong_groebner(
    I: IdealPresentation,
    order=GREVLEX,
    limits: GroebnerLimits = DEFAULT_LIMITS,
) -> GroebnerBasis:
    """Strong basis over ZZ, reduced basis over QQ/GF(p)."""
    ring = I.ring
    dom = ring.domain
    gens = []
    seen = set()
    for g in I.generators:
        g = _normalize_sign(g, order)
        if g not in seen:
            seen.add(g)
            gens.append(g)
    if not gens:
        return _make_basis(ring, order, ())

    counter = [0, limits.max_reductions]
    basis = []
    prepped = []

    def push(g):
        basis.append(g)
        prepped.append(_prep(g, order))
        if len(basis) > limits.max_basis:
            raise ResourceCapExceeded("basis size cap exceeded")

    pairs = []  # heap of (lcm degree, age, i, j, kind)
    age = 0

    def enqueue_with(j):
        nonlocal age
        for i in range(j):
            fm, fc = basis[i].leading_term(order)
            gm, gc = basis[j].leading_term(order)
            l = mono_lcm(fm, gm)
            deg = sum(l)
            heapq.heappush(pairs, (deg, age, i, j, "s"))
            age += 1
            if not dom.is_field and fc % gc != 0 and gc % fc != 0:
                heapq.heappush(pairs, (deg, age, i, j, "g"))
                age += 1

    for g in gens:
        r = _reduce_full(g, prepped, order, counter)
        if not r.is_zero():
            push(_normalize_sign(r, order))
            enqueue_with(len(basis) - 1)

    while pairs:
        _, _, i, j, kind = heapq.heappop(pairs)
        f, g = basis[i], basis[j]
        if dom.is_field and kind == "s":
            fm, _ = f.leading_term(order)
            gm, _ = g.leading_term(order)
            if mono_lcm(fm, gm) == mono_mul(fm, gm):
                continue  # coprime leading monomials: S-pair reduces to zero
        h = _spoly(f, g, order) if kind == "s" else _gpoly(f, g, order)
        r = _reduce_full(h, prepped, order, counter)
        if r.is_zero():
            continue
        push(_normalize_sign(r, order))
        enqueue_with(len(basis) - 1)
        if r.is_constant() and dom.is_unit(r.constant_value()):
            return _make_basis(ring, order, (ring.one,))

    elems = _interreduce(basis, order, counter)
    return _make_basis(ring, order, elems)


def _interreduce(basis, order, counter):
    """Remove redundancy and fully reduce every element against the others."""
    dom = basis[0].ring.domain if basis else None
    elems = [g for g in basis if not g.is_zero()]
    # strong-divisibility pruning first (cheap)
    elems.sort(key=lambda g: (order.key(g.leading_term(order)[0]), abs_lc(g, order)))
    kept = []
    for g in elems:
        gm, gc = g.leading_term(order)
        redundant = False
        for h in kept:
            hm, hc = h.leading_term(order)
            if mono_divides(hm, gm) and (dom.is_field or gc % hc == 0):
                redundant = True
                break
        if not redundant:
            kept.append(g)
    # full interreduction to a fixed point
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        if rounds > 10 * (len(kept) + 1):
            raise InternalInvariantError("interreduction failed to stabilize")
        for idx in range(len(kept)):
            g = kept[idx]
            rest = kept[:idx] + kept[idx + 1 :]
            prepped = [_prep(h, order) for h in rest]
            r = _normalize_sign(_reduce_full(g, prepped, order, counter), order)
            if r != g:
                changed = True
                if r.is_zero():
                    kept = rest
                else:
                    kept = rest + [r]
                break
    kept.sort(key=lambda g: order.key(g.leading_term(order)[0]), reverse=True)
    return kept


def abs_lc(g, order):
    c = g.leading_term(order)[1]
    return -c if isinstance(c, int) and c < 0 else c


# ---------------------------------------------------------------------------
# ideal calculus


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


def ideal_member(f: Polynomial, I, limits=DEFAULT_LIMITS) -> bool:
    G = I if isinstance(I, GroebnerBasis) else strong_groebner(I, GREVLEX, limits)
    return G.contains(f)


def _extend_ring(ring: PolyRing, extra: str) -> PolyRing:
    name = extra
    k = 0
    while name in ring.names:
        k += 1
        name = f"{extra}{k}"
    return PolyRing(ring.names + (name,), ring.domain)


def _promote(f: Polynomial, big: PolyRing) -> Polynomial:
    pad = big.nvars - f.ring.nvars
    return Polynomial(big, {m + (0,) * pad: c for m, c in f.terms.items()})


def _restrict(f: Polynomial, small: PolyRing) -> Polynomial:
    out = {}
    for m, c in f.terms.items():
        if any(m[i] for i in range(small.nvars, len(m))):
            raise InternalInvariantError("polynomial not in the subring")
        out[m[: small.nvars]] = c
    return Polynomial(small, out)


def radical_member(f: Polynomial, I: IdealPresentation, limits=DEFAULT_LIMITS) -> bool:
    """f in the radical of I, via 1 in I + (1 - y*f) in one extra variable."""
    ring = I.ring
    big = _extend_ring(ring, "rad_")
    y = big.var(big.nvars - 1)
    gens = [_promote(g, big) for g in I.generators]
    gens.append(big.one - y * _promote(f, big))
    G = strong_groebner(IdealPresentation(big, gens), GREVLEX, limits)
    return G.is_unit_ideal()


def sum_ideals(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    if I.ring != J.ring:
        raise RingContextError("ideal sum across different rings")
    return IdealPresentation(I.ring, I.generators + J.generators)


def product_ideals(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    if I.ring != J.ring:
        raise RingContextError("ideal product across different rings")
    return IdealPresentation(I.ring, tuple(f * g for f in I.generators for g in J.generators))


def intersect_ideals(I: IdealPresentation, J: IdealPresentation, limits=DEFAULT_LIMITS) -> IdealPresentation:
    """t*I + (1-t)*J in an auxiliary variable, then eliminate t."""
    if I.ring != J.ring:
        raise RingContextError("ideal intersection across different rings")
    ring = I.ring
    big = _extend_ring(ring, "t_")
    t = big.var(big.nvars - 1)
    gens = [t * _promote(g, big) for g in I.generators]
    gens += [(big.one - t) * _promote(g, big) for g in J.generators]
    order = elimination_order([big.nvars - 1])
    G = strong_groebner(IdealPresentation(big, gens), order, limits)
    kept = [g for g in G.elements if big.nvars - 1 not in g.variables_used()]
    return IdealPresentation(ring, [_restrict(g, ring) for g in kept])


def _exact_poly_div(f: Polynomial, g: Polynomial, order=GREVLEX) -> Polynomial:
    """Quotient f/g when it exists exactly (used on generators of I ∩ (g))."""
    ring = f.ring
    dom = ring.domain
    q = ring.zero
    rem = f
    gm, gc = g.leading_term(order)
    while not rem.is_zero():
        rm, rc = rem.leading_term(order)
        if not mono_divides(gm, rm):
            raise ExactDivisionFailure(f"{f} is not a multiple of {g}")
        c = dom.exact_div(rc, gc)
        mono = Polynomial(ring, {mono_div(rm, gm): dom.normalize(c)})
        q = q + mono
        rem = rem - mono * g
    return q


class ExactDivisionFailure(ArithmeticError):
    pass


def quotient_ideal(I: IdealPresentation, J: IdealPresentation, limits=DEFAULT_LIMITS) -> IdealPresentation:
    """(I : J) = intersection over J-generators g of (1/g)(I ∩ (g))."""
    ring = I.ring
    if not J.generators:
        return IdealPresentation(ring, (ring.one,))
    result = None
    for g in J.generators:
        cap = intersect_ideals(I, IdealPresentation(ring, (g,)), limits)
        part = IdealPresentation(ring, [_exact_poly_div(h, g) for h in cap.generators])
        result = part if result is None else intersect_ideals(result, part, limits)
    return result


def saturate_ideal(I: IdealPresentation, J: IdealPresentation, limits=DEFAULT_LIMITS) -> IdealPresentation:
    """(I : J^infinity) by iterating the quotient until it stabilizes."""
    current = I
    G = strong_groebner(current, GREVLEX, limits)
    while True:
        nxt = quotient_ideal(current, J, limits)
        H = strong_groebner(nxt, GREVLEX, limits)
        if all(G.contains(g) for g in H.elements):
            return IdealPresentation(I.ring, G.elements)
        current, G = nxt, H


def eliminate(I: IdealPresentation, keep, limits=DEFAULT_LIMITS) -> IdealPresentation:
    """Generators of I ∩ (subring in the kept variables)."""
    ring = I.ring
    keep_idx = {k if isinstance(k, int) else ring.index(k) for k in keep}
    drop = [i for i in range(ring.nvars) if i not in keep_idx]
    if not drop:
        G = strong_groebner(I, GREVLEX, limits)
        return IdealPresentation(ring, G.elements)
    order = elimination_order(drop)
    G = strong_groebner(I, order, limits)
    kept = [g for g in G.elements if not (g.variables_used() & set(drop))]
    return IdealPresentation(ring, kept)


def contract_integers(I: IdealPresentation, limits=DEFAULT_LIMITS) -> int:
    """c >= 0 with I ∩ ZZ = (c).  ZZ coefficients only.

    A constant in a strong basis is minimal in every global order, so the
    intersection with ZZ is generated by the basis constants; no explicit
    elimination is needed.
    """
    if I.ring.domain != ZZ:
        raise RingContextError("integer contraction needs ZZ coefficients")
    G = strong_groebner(I, GREVLEX, limits)
    c = 0
    for g in G.elements:
        if g.is_constant():
            c = gcd(c, g.constant_value())
    return abs(c)


def dimension_over_field(I: IdealPresentation, limits=DEFAULT_LIMITS) -> int:
    """Krull dimension of (field)[x..]/I from the leading-term ideal;
    -1 for the unit ideal.

    A variable subset U is independent when no leading monomial lives
    entirely inside U; the dimension is the largest such |U|.
    """
    ring = I.ring
    if not ring.domain.is_field:
        raise RingContextError("dimension is computed over a field")
    G = strong_groebner(I, GREVLEX, limits)
    if G.is_unit_ideal():
        return -1
    lms = [g.leading_term(G.order)[0] for g in G.elements]
    n = ring.nvars
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    best = 0
    from itertools import combinations

    for size in range(n, 0, -1):
        for combo in combinations(range(n), size):
            u = set(combo)
            if all(not s <= u for s in supports):
                return size
    return best


def groebner_leading_primes(I: IdealPresentation, limits=DEFAULT_LIMITS) -> set:
    """Primes dividing some leading coefficient of the strong ZZ-basis."""
    G = strong_groebner(I, GREVLEX, limits)
    primes = set()
    for g in G.elements:
        c = abs(g.leading_term(G.order)[1])
        primes |= set(_prime_divisors(c))
    return primes


def _prime_divisors(n: int):
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# normal-form arithmetic in a quotient of ZZ[x..]


class QuotientRing:
    """Arithmetic in ZZ[x..]/I with canonical strong-basis normal forms."""

    def __init__(self, ring: PolyRing, relations, limits=DEFAULT_LIMITS):
        if ring.domain != ZZ:
            raise RingContextError("quotients are presented over ZZ")
        self.ring = ring
        self.relations = IdealPresentation(ring, relations)
        self.basis = strong_groebner(self.relations, GREVLEX, limits)
        self.integer_contraction = 0
        for g in self.basis.elements:
            if g.is_constant():
                self.integer_contraction = gcd(self.integer_contraction, g.constant_value())
        self.integer_contraction = abs(self.integer_contraction)

    def nf(self, f: Polynomial) -> Polynomial:
        return self.basis.normal_form(f)

    @property
    def zero(self):
        return self.ring.zero

    @property
    def one(self):
        return self.nf(self.ring.one)

    def from_int(self, c: int) -> Polynomial:
        return self.nf(self.ring.const(c))

    def add(self, a, b):
        return self.nf(a + b)

    def mul(self, a, b):
        return self.nf(a * b)

    def neg(self, a):
        return self.nf(-a)

    def is_zero_ring(self) -> bool:
        return self.basis.is_unit_ideal()

    def eval_poly(self, f: Polynomial, assignment: dict) -> Polynomial:
        """Evaluate an integer polynomial at ring elements, reduced to NF."""
        result = self.ring.zero
        for m, c in f.terms.items():
            term = self.ring.const(c)
            for i, e in enumerate(m):
                if e:
                    val = assignment[f.ring.names[i]]
                    term = self.nf(term * (val**e))
            result = self.nf(result + term)
        return result

    def integer_unit_inverse(self, j: int) -> Polynomial:
        """Inverse of the integer j in the quotient, when certifiable.

        Covered cases: j = +-1 always; positive integer contraction c,
        where j is a unit iff gcd(j, c) = 1 with an integer inverse.
        Outside those this raises, it never guesses.
        """
        if j in (1, -1):
            return self.from_int(j)
        c = self.integer_contraction
        if c == 0:
            raise NonInvertibleError(f"cannot certify invertibility of {j} (characteristic zero presentation)")
        if c == 1:
            return self.from_int(0)  # zero ring: everything collapses
        if gcd(j % c, c) != 1:
            raise NonInvertibleError(f"{j} is not a unit (shares a factor with {c})")
        return self.from_int(pow(j % c, -1, c))


class NonInvertibleError(ArithmeticError):
    pass
