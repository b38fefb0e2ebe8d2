"""Exact univariate factorization over QQ (via primitive ZZ polynomials)
and over GF(p).

Internally polynomials are dense little-endian coefficient lists.  The
rational route is squarefree decomposition (Yun) followed by Zassenhaus:
factor modulo a good prime, Hensel-lift the factorization past the
Mignotte bound, then recombine subsets by trial division.  Everything is
integer arithmetic; every factorization is verified by multiplying back.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, isqrt

from .poly import Polynomial, PolyRing


class FactorizationError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# dense helpers over ZZ


def ztrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def zdeg(a):
    return len(a) - 1


def zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ztrim(out)


def zadd(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += y
    return ztrim(out)


def zsub(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return ztrim(out)


def zderiv(a):
    return ztrim([i * a[i] for i in range(1, len(a))])


def zcontent(a):
    g = 0
    for c in a:
        g = gcd(g, abs(c))
    return g


def zprimitive(a):
    c = zcontent(a)
    if c == 0:
        return []
    sign = -1 if a[-1] < 0 else 1
    return [x // (c * sign) for x in a]


def zdivmod_monic(a, b):
    """divmod by a monic b over ZZ."""
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return ztrim(q), ztrim(a)


def ztry_div(a, b):
    """Exact quotient a/b over ZZ, or None (b need not be monic)."""
    if not b:
        raise ZeroDivisionError
    a = list(a)
    if len(a) < len(b):
        return None if ztrim(a) else []
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c % lead:
            return None
        c //= lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return ztrim(q) if not ztrim(a) else None


# rational gcd, returned as primitive integer polynomial


def qgcd(a, b):
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]
    while fb and any(fb):
        fa, fb = fb, _qmod(fa, fb)
    fa = [c for c in fa]
    if not fa:
        return []
    den = 1
    for c in fa:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fa]
    return zprimitive(ints)


def _qmod(a, b):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] / b[-1]
        shift = len(a) - 1 - db
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        while a and a[-1] == 0:
            a.pop()
    return a


def yun_squarefree(f):
    """Squarefree decomposition of a primitive f with positive lc.

    Returns [(g_i, i)] with f = prod g_i^i, each g_i primitive squarefree.
    """
    if zdeg(f) < 1:
        raise ValueError("constant polynomial")
    df = zderiv(f)
    g = qgcd(f, df)
    if zdeg(g) == 0:
        return [(f, 1)]
    out = []
    c = _exact_qdiv(f, g)
    d = zsub(_exact_qdiv(df, g), zderiv(c))
    i = 1
    while zdeg(c) > 0:
        a = qgcd(c, d)
        if zdeg(a) > 0:
            out.append((a, i))
        c = _exact_qdiv(c, a)
        d = zsub(_exact_qdiv(d, a), zderiv(c))
        i += 1
    prod = [1]
    for gpart, mult in out:
        for _ in range(mult):
            prod = zmul(prod, gpart)
    if prod != f:
        raise FactorizationError("squarefree decomposition failed verification")
    return out


def _exact_qdiv(a, b):
    fa = [Fraction(c) for c in a]
    q = []
    db = len(b) - 1
    qcoeffs = [Fraction(0)] * (len(fa) - db) if len(fa) > db else []
    while len(fa) - 1 >= db and any(fa):
        while fa and fa[-1] == 0:
            fa.pop()
        if len(fa) - 1 < db:
            break
        c = fa[-1] / b[-1]
        shift = len(fa) - 1 - db
        qcoeffs[shift] = c
        for j, y in enumerate(b):
            fa[shift + j] -= c * y
    while fa and fa[-1] == 0:
        fa.pop()
    if fa:
        raise FactorizationError("division was not exact")
    q = []
    for c in qcoeffs:
        if c.denominator != 1:
            raise FactorizationError("non-integer quotient")
        q.append(int(c))
    return ztrim(q)


# ---------------------------------------------------------------------------
# dense helpers over GF(p) / Z mod m


def mtrim(a, m):
    a = [c % m for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def mmul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    return ztrim(out)


def msub(a, b, m):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x % m
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % m
    return ztrim(out)


def mdivmod(a, b, m):
    """divmod over Z/m; the leading coefficient of b must be invertible."""
    a = [c % m for c in a]
    ztrim(a)
    b = mtrim(list(b), m)
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, m)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * inv) % m
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % m
    return ztrim(q), ztrim(a)


def mgcd_monic(a, b, p):
    a = mtrim(list(a), p)
    b = mtrim(list(b), p)
    while b:
        a, b = b, mdivmod(a, b, p)[1]
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def mpowmod(a, e, f, p):
    result = [1]
    base = mdivmod(a, f, p)[1]
    while e:
        if e & 1:
            result = mdivmod(mmul(result, base, p), f, p)[1]
        base = mdivmod(mmul(base, base, p), f, p)[1]
        e >>= 1
    return result


def mbezout(a, b, p):
    """(s, t) with s*a + t*b = 1 over GF(p); a, b must be coprime."""
    r0, r1 = mtrim(list(a), p), mtrim(list(b), p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = mdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, msub(s0, mmul(q, s1, p), p)
        t0, t1 = t1, msub(t0, mmul(q, t1, p), p)
    if zdeg(r0) != 0:
        raise FactorizationError("polynomials are not coprime")
    inv = pow(r0[0], -1, p)
    return [(c * inv) % p for c in s0], [(c * inv) % p for c in t0]


# ---------------------------------------------------------------------------
# factorization over GF(p)


def _pth_root(f, p):
    return [f[i] for i in range(0, len(f), p)]


def squarefree_fp(f, p):
    """[(monic squarefree, multiplicity)] for monic f over GF(p)."""
    if zdeg(f) < 1:
        return []
    df = mtrim(zderiv(f), p)
    if not df:
        return [(h, m * p) for h, m in squarefree_fp(_pth_root(f, p), p)]
    c = mgcd_monic(f, df, p)
    w = mdivmod(f, c, p)[0]
    out = []
    i = 1
    while zdeg(w) > 0:
        y = mgcd_monic(w, c, p)
        z = mdivmod(w, y, p)[0]
        if zdeg(z) > 0:
            out.append((z, i))
        w = y
        c = mdivmod(c, y, p)[0]
        i += 1
    if zdeg(c) > 0:
        out += [(h, m * p) for h, m in squarefree_fp(_pth_root(c, p), p)]
    return out


def _ddf(f, p):
    """Distinct-degree split of monic squarefree f: [(product, degree)]."""
    out = []
    h = [0, 1]
    work = list(f)
    d = 0
    while zdeg(work) > 0:
        d += 1
        if 2 * d > zdeg(work):
            out.append((work, zdeg(work)))
            break
        h = mpowmod(h, p, work, p)
        g = mgcd_monic(msub(h, [0, 1], p), work, p)
        if zdeg(g) > 0:
            out.append((g, d))
            work = mdivmod(work, g, p)[0]
            h = mdivmod(h, work, p)[1]
    return out


def _edf(f, d, p, rng):
    """Split monic squarefree f (all irreducible factors of degree d)."""
    n = zdeg(f)
    if n == d:
        return [f]
    while True:
        a = ztrim([rng.randrange(p) for _ in range(n)])
        if zdeg(a) < 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1)) splits GF(2) products
            t = mdivmod(a, f, 2)[1]
            acc = t
            for _ in range(d - 1):
                t = mpowmod(t, 2, f, 2)
                acc = msub(acc, t, 2)
            g = mgcd_monic(acc, f, 2)
        else:
            e = (p**d - 1) // 2
            t = mpowmod(a, e, f, p)
            g = mgcd_monic(msub(t, [1], p), f, p)
        if 0 < zdeg(g) < n:
            return _edf(g, d, p, rng) + _edf(mdivmod(f, g, p)[0], d, p, rng)


def factor_fp(f, p, seed=20240810):
    """Full factorization over GF(p): (unit, [(monic irreducible, mult)])."""
    f = mtrim(list(f), p)
    if not f:
        raise ValueError("zero polynomial")
    unit = f[-1]
    inv = pow(unit, -1, p)
    f = [(c * inv) % p for c in f]
    if zdeg(f) == 0:
        return unit, []
    rng = random.Random(seed)
    out = []
    for g, mult in squarefree_fp(f, p):
        for h, d in _ddf(g, p):
            for irr in _edf(h, d, p, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: (zdeg(t[0]), t[0]))
    prod = [1]
    for g, mult in out:
        for _ in range(mult):
            prod = mmul(prod, g, p)
    if prod != f:
        raise FactorizationError("GF(p) factorization failed verification")
    return unit, out


# ---------------------------------------------------------------------------
# Hensel lifting and Zassenhaus over ZZ


def _hensel_step(m, f, g, h, s, t):
    """One quadratic lift step: inputs correct mod m, outputs mod m^2.

    Requires h monic, f = g*h and s*g + t*h = 1 (both mod m), with
    deg s < deg h and deg t < deg g.
    """
    M = m * m
    e = mtrim(zsub(f, zmul(g, h)), M)
    q, r = mdivmod(mmul(s, e, M), h, M)
    g1 = mtrim(zadd(zadd(g, zmul(t, e)), zmul(q, g)), M)
    h1 = mtrim(zadd(h, r), M)
    b = mtrim(zsub(zadd(zmul(s, g1), zmul(t, h1)), [1]), M)
    c, d = mdivmod(mmul(s, b, M), h1, M)
    s1 = msub(s, d, M)
    t1 = msub(t, mtrim(zadd(zmul(t, b), zmul(c, g1)), M), M)
    return g1, h1, s1, t1


def _hensel_lift_pair(f, g, h, p, target):
    """Lift f = g*h from mod p to mod p^(2^k) >= target (h stays monic)."""
    s, t = mbezout(g, h, p)
    s = mdivmod(s, h, p)[1]
    t, rem = mdivmod(msub([1], mmul(s, g, p), p), h, p)
    if rem:
        raise FactorizationError("Bezout normalization failed")
    m = p
    while m < target:
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return g, h, m


def _hensel_lift_list(f, factors, p, target):
    if len(factors) == 1:
        m = p
        while m < target:
            m = m * m
        return [mtrim(list(f), m)], m
    k = len(factors) // 2
    g0 = [1]
    for fac in factors[:k]:
        g0 = mmul(g0, fac, p)
    h0 = [1]
    for fac in factors[k:]:
        h0 = mmul(h0, fac, p)
    g, h, m = _hensel_lift_pair(f, g0, h0, p, target)
    left, _ = _hensel_lift_list(g, factors[:k], p, target)
    right, _ = _hensel_lift_list(h, factors[k:], p, target)
    return left + right, m


def _sym(a, m):
    out = []
    for c in a:
        c %= m
        if c > m // 2:
            c -= m
        out.append(c)
    return ztrim(out)


def _mignotte(f):
    n = zdeg(f)
    height = max(abs(c) for c in f)
    return (1 << n) * height * (isqrt(n + 1) + 1) + 1


def _factor_monic_squarefree(f, seed=20240810):
    """Irreducible monic ZZ factors of a monic squarefree integer polynomial."""
    n = zdeg(f)
    if n == 1:
        return [f]
    p = 3
    while not _good_prime(f, p):
        p = _next_prime(p)
    _, modular = factor_fp(f, p, seed)
    factors = [g for g, _ in modular]
    if len(factors) == 1:
        return [f]
    bound = 2 * _mignotte(f) + 1
    lifted, modulus = _hensel_lift_list(f, factors, p, bound)
    # subset recombination
    result = []
    remaining = list(range(len(lifted)))
    current = list(f)
    size = 1
    from itertools import combinations

    while 2 * size <= len(remaining):
        found = False
        for combo in combinations(remaining, size):
            cand = [1]
            for i in combo:
                cand = mmul(cand, lifted[i], modulus)
            cand = _sym(cand, modulus)
            q = ztry_div(current, cand)
            if q is not None:
                result.append(cand)
                current = q
                remaining = [i for i in remaining if i not in combo]
                found = True
                break
        if not found:
            size += 1
    if zdeg(current) > 0:
        result.append(current)
    result.sort(key=lambda g: (zdeg(g), g))
    prod = [1]
    for g in result:
        prod = zmul(prod, g)
    if prod != f:
        raise FactorizationError("recombination failed verification")
    return result


def _good_prime(f, p):
    if f[-1] % p == 0:
        return False
    fp = mtrim(list(f), p)
    dfp = mtrim(zderiv(fp), p)
    if not dfp:
        return False
    return zdeg(mgcd_monic(fp, dfp, p)) == 0


def _next_prime(p):
    q = p + 2
    while True:
        if all(q % d for d in range(3, isqrt(q) + 1, 2)):
            return q
        q += 2


def _factor_squarefree_primitive(f, seed=20240810):
    """Irreducible primitive factors (positive lc) of primitive squarefree f."""
    if zdeg(f) == 1:
        return [f]
    l = f[-1]
    if l == 1:
        return _factor_monic_squarefree(f, seed)
    # monic transform: F(x) = l^(n-1) f(x/l), factor, map back by x -> l*x
    n = zdeg(f)
    F = [f[i] * l ** (n - 1 - i) for i in range(n)] + [1]
    parts = _factor_monic_squarefree(F, seed)
    out = []
    for g in parts:
        mapped = [g[i] * l**i for i in range(len(g))]
        out.append(zprimitive(mapped))
    prod = [1]
    for g in out:
        prod = zmul(prod, g)
    if prod != f:
        raise FactorizationError("non-monic recombination failed verification")
    out.sort(key=lambda g: (zdeg(g), g))
    return out


def factor_rationals(f, seed=20240810):
    """Factor a ZZ coefficient list over QQ.

    Returns (content, [(primitive irreducible with positive lc, mult)]);
    content is a signed integer with f = content * prod factors^mult.
    """
    f = ztrim(list(f))
    if not f:
        raise ValueError("zero polynomial")
    cont = zcontent(f)
    if f[-1] < 0:
        cont = -cont
    prim = [c // cont for c in f]
    if zdeg(prim) == 0:
        return cont, []
    out = []
    for g, mult in yun_squarefree(prim):
        for h in _factor_squarefree_primitive(g, seed):
            out.append((h, mult))
    out.sort(key=lambda t: (zdeg(t[0]), t[0]))
    return cont, out


# ---------------------------------------------------------------------------
# sparse <-> dense bridging for one-variable polynomials


def to_dense(f: Polynomial, var_index: int):
    used = f.variables_used()
    if used - {var_index}:
        raise ValueError("polynomial is not univariate in the requested variable")
    out = [0] * (f.degree_in(var_index) + 1 if f.terms else 0)
    for m, c in f.terms.items():
        out[m[var_index]] = c
    return ztrim(out)


def from_dense(coeffs, ring: PolyRing, var_index: int) -> Polynomial:
    terms = {}
    for e, c in enumerate(coeffs):
        c = ring.domain.normalize(c)
        if c:
            exps = tuple(e if i == var_index else 0 for i in range(ring.nvars))
            terms[exps] = c
    return Polynomial(ring, terms)


def factor_univariate(f: Polynomial, var_index: int, seed=20240810):
    """Factor a univariate sparse polynomial over its coefficient field.

    Over QQ (or ZZ viewed inside QQ): primitive irreducible ZZ factors.
    Over GF(p): monic irreducible factors.  Returns [(Polynomial, mult)].
    """
    ring = f.ring
    dense = to_dense(f, var_index)
    if ring.domain.kind == "GF":
        _, parts = factor_fp(dense, ring.domain.p, seed)
        return [(from_dense(g, ring, var_index), m) for g, m in parts]
    if ring.domain.kind == "QQ":
        den = 1
        for c in dense:
            fc = Fraction(c)
            den = den * fc.denominator // gcd(den, fc.denominator)
        dense = [int(Fraction(c) * den) for c in dense]
    _, parts = factor_rationals(dense, seed)
    return [(from_dense(g, ring, var_index), m) for g, m in parts]
