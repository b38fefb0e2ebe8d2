"""Minimal primes, the prime graph, and the classification verdict.

The input is a presentation Z[x1..xn]/I.  The pipeline:

  1. contract I to ZZ, giving the generator c of I ∩ ZZ;
  2. collect the "bad" primes: divisors of c and of the leading
     coefficients of a strong basis of I;
  3. for each bad prime p, decompose the image of I over GF(p) and pull
     the components back by re-adding p;
  4. when c = 0, decompose over QQ and contract the components to the
     integer ring by clearing denominators and saturating away the
     leading-coefficient primes;
  5. keep the inclusion-minimal candidates.

Field-level decomposition only handles a supported class of splittings
(variables occurring linearly with unit coefficient, monomial factors,
univariate factorization, zero-dimensional ideals via eliminants of
linear forms).  Anything else raises DecompositionIncomplete: an honest
refusal, never a wrong answer.  Every decomposition that is returned has
been verified: radical equality with I in both directions plus pairwise
incomparability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .config import DEFAULT_CONFIG, AnalysisConfig
from .groebner import (
    GroebnerBasis,
    IdealPresentation,
    InternalInvariantError,
    QuotientRing,
    _promote,
    _extend_ring,
    _restrict,
    _prime_divisors,
    contract_integers,
    dimension_over_field,
    eliminate,
    elimination_order,
    ideal_member,
    intersect_ideals,
    quotient_ideal,
    radical_member,
    strong_groebner,
    sum_ideals,
)
from .poly import GF, GREVLEX, Polynomial, PolyRing, QQ, ZZ, poly_text
from .unifactor import factor_univariate


class DecompositionIncomplete(RuntimeError):
    """The ideal is outside the supported decomposition class."""


VERDICT_YES = "BIINTERPRETABLE_WITH_Z"
VERDICT_NO = "NOT_BIINTERPRETABLE"
VERDICT_UNDECIDED = "UNDECIDED_DECOMPOSITION_INCOMPLETE"


@dataclass(frozen=True)
class RingPresentation:
    """A = Z[names]/(relations); the zero ring (1 in I) is permitted."""

    names: tuple
    relations: tuple

    def __init__(self, names, relations=()):
        names = tuple(names)
        ring = PolyRing(names, ZZ)
        rels = []
        for g in relations:
            if g.ring != ring:
                raise ValueError("relation outside the presentation ring")
            if not g.is_zero():
                rels.append(g)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "relations", tuple(rels))

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.names, ZZ)

    @property
    def ideal(self) -> IdealPresentation:
        return IdealPresentation(self.ring, self.relations)

    def text(self) -> str:
        head = "ring Z" + (f"[{','.join(self.names)}]" if self.names else "")
        if not self.relations:
            return head
        return head + "/(" + ", ".join(poly_text(g) for g in self.relations) + ")"

    def __str__(self):
        return self.text()


@dataclass(frozen=True)
class PrimeCertificate:
    """A minimal prime of the presentation, as an ideal of Z[x..]."""

    generators: tuple
    characteristic: int
    finite_index: bool
    provenance: str
    primality_verified: bool = True
    basis: GroebnerBasis = field(compare=False, repr=False, default=None)

    def contains(self, f: Polynomial) -> bool:
        return self.basis.contains(f)

    def generator_texts(self):
        return [poly_text(g) for g in self.generators]


@dataclass(frozen=True)
class PrimeGraph:
    vertices: tuple  # indices into the certificate list
    edges: tuple  # sorted pairs (i, j), i < j
    components: tuple  # sorted tuple of sorted index tuples

    @property
    def connected(self) -> bool:
        return len(self.components) == 1 if self.vertices else False


@dataclass(frozen=True)
class ClassificationReport:
    presentation: RingPresentation
    is_zero_ring: bool
    is_finite: bool
    minimal_primes: tuple
    nilradical: tuple
    annihilator_exponent: int
    graph: PrimeGraph
    connected: bool
    verdict: str
    certificate: dict

    def to_json(self) -> dict:
        return {
            "ring": self.presentation.text(),
            "is_zero_ring": self.is_zero_ring,
            "verdict": self.verdict,
            "conditions": {
                "finite": self.is_finite,
                "connected": self.connected,
                "nil_annihilator_exponent": self.annihilator_exponent,
            },
            "nilradical": [poly_text(g) for g in self.nilradical],
            "minimal_primes": [
                {
                    "generators": cert.generator_texts(),
                    "characteristic": cert.characteristic,
                    "finite_index": cert.finite_index,
                    "provenance": cert.provenance,
                    "primality_verified": cert.primality_verified,
                }
                for cert in self.minimal_primes
            ],
            "graph": {
                "vertices": list(self.graph.vertices),
                "edges": [list(e) for e in self.graph.edges],
                "components": [list(c) for c in self.graph.components],
            },
            "certificate": self.certificate,
        }


# ---------------------------------------------------------------------------
# field-level decomposition (supported class)


def _reduced_field_basis(I: IdealPresentation, limits):
    return strong_groebner(I, GREVLEX, limits)


def _minimal_primes_field(I: IdealPresentation, cfg: AnalysisConfig, budget: list):
    """Minimal primes of an ideal over QQ or GF(p), within the supported class.

    Returns a list of IdealPresentations whose primality is certified.
    Raises DecompositionIncomplete outside the class.
    """
    budget[0] -= 1
    if budget[0] < 0:
        raise DecompositionIncomplete("decomposition branch budget exceeded")
    ring = I.ring
    limits = cfg.groebner
    G = _reduced_field_basis(I, limits)
    if G.is_unit_ideal():
        return []
    gens = list(G.elements)
    if not gens:
        return [IdealPresentation(ring, ())]

    # variables absent from every generator are free: decompose in the
    # subring of occurring variables and extend the components back (the
    # extension of a prime along a polynomial extension stays prime)
    used = set()
    for g in gens:
        used |= g.variables_used()
    if len(used) < ring.nvars:
        small = PolyRing(tuple(ring.names[i] for i in sorted(used)), ring.domain)
        down = {i: k for k, i in enumerate(sorted(used))}
        small_gens = [_project_poly(g, small, down) for g in gens]
        sub = _minimal_primes_field(IdealPresentation(small, small_gens), cfg, budget)
        up = {v: k for k, v in down.items()}
        out = []
        for P in sub:
            lifted = [_unproject_poly(g, ring, up) for g in P.generators]
            out.append(IdealPresentation(ring, lifted))
        return out

    # (1) a variable occurring linearly with constant coefficient and in no
    # other term of that generator: substitute it away and pull back.
    for g in gens:
        move = _linear_substitution(g)
        if move is None:
            continue
        var_idx, image = move
        assignment = {}
        for j, name in enumerate(ring.names):
            assignment[name] = image if j == var_idx else ring.var(j)
        rest = [h.substitute(assignment, ring) for h in gens if h != g]
        sub = _minimal_primes_field(IdealPresentation(ring, rest), cfg, budget)
        return _filter_minimal_field(
            [IdealPresentation(ring, P.generators + (g,)) for P in sub], limits
        )

    # (2) monomial content: V(m * h) splits into the variable hyperplanes
    # and V(h).
    for g in gens:
        mono = _monomial_content(g)
        if mono is None:
            continue
        branches = []
        for i, e in enumerate(mono):
            if e:
                branches.append(ring.var(i))
        h = _strip_monomial(g, mono)
        if not h.is_constant():
            branches.append(h)
        parts = []
        for b in branches:
            parts += _minimal_primes_field(
                IdealPresentation(ring, I.generators + (b,)), cfg, budget
            )
        return _filter_minimal_field(parts, limits)

    # (3) univariate generator that splits over the coefficient field
    for g in gens:
        used = g.variables_used()
        if len(used) != 1:
            continue
        (vi,) = used
        factors = factor_univariate(g, vi)
        if len(factors) == 1 and factors[0][1] == 1 and _same_up_to_unit(factors[0][0], g):
            continue  # already irreducible
        parts = []
        for f, _mult in factors:
            fk = f if f.ring == ring else f.to_domain(ring.domain)
            parts += _minimal_primes_field(
                IdealPresentation(ring, I.generators + (fk,)), cfg, budget
            )
        return _filter_minimal_field(parts, limits)

    # (4) zero-dimensional: branch on eliminants of linear forms; certify a
    # prime when some eliminant is irreducible of degree = vector space dim.
    dim = dimension_over_field(I, limits)
    if dim > 0:
        raise DecompositionIncomplete(
            f"no supported splitting applies to {I} (dimension {dim})"
        )
    vdim = _vector_space_dimension(G)
    for form in _linear_forms(ring, cfg.zero_dim_form_attempts):
        m = _minimal_polynomial_of(I, form, limits)
        factors = factor_univariate(m, 0)
        if len(factors) > 1 or factors[0][1] > 1:
            parts = []
            for f, _mult in factors:
                fk = _plug_form(f, form, ring)
                parts += _minimal_primes_field(
                    IdealPresentation(ring, I.generators + (fk,)), cfg, budget
                )
            return _filter_minimal_field(parts, limits)
        if factors[0][0].degree_in(0) == vdim:
            return [IdealPresentation(ring, G.elements)]
    raise DecompositionIncomplete(
        f"zero-dimensional ideal {I} not certified by any tried linear form"
    )


def _project_poly(g: Polynomial, small: PolyRing, down: dict) -> Polynomial:
    terms = {}
    for m, c in g.terms.items():
        key = [0] * small.nvars
        for i, e in enumerate(m):
            if e:
                key[down[i]] = e
        terms[tuple(key)] = c
    return Polynomial(small, terms)


def _unproject_poly(g: Polynomial, big: PolyRing, up: dict) -> Polynomial:
    terms = {}
    for m, c in g.terms.items():
        key = [0] * big.nvars
        for k, e in enumerate(m):
            if e:
                key[up[k]] = e
        terms[tuple(key)] = c
    return Polynomial(big, terms)


def _linear_substitution(g: Polynomial):
    """(index, image) when g = c*x_i + h with c a constant unit, h free of x_i."""
    ring = g.ring
    for i in sorted(g.variables_used()):
        if g.degree_in(i) != 1:
            continue
        coeff_terms = {}
        rest_terms = {}
        ok = True
        for m, c in g.terms.items():
            if m[i] == 1:
                reduced = tuple(0 if j == i else e for j, e in enumerate(m))
                if any(reduced):
                    ok = False
                    break
                coeff_terms[reduced] = c
            else:
                rest_terms[m] = c
        if not ok or not coeff_terms:
            continue
        c = list(coeff_terms.values())[0]
        if not ring.domain.is_unit(c):
            continue
        inv = ring.domain.inv(c)
        h = Polynomial(ring, rest_terms)
        image = h.map_coefficients(lambda a: -a * inv)
        return i, image
    return None


def _monomial_content(g: Polynomial):
    """The common monomial factor of g, or None when trivial or g is a variable."""
    mono = None
    for m in g.terms:
        mono = m if mono is None else tuple(min(a, b) for a, b in zip(mono, m))
    if mono is None or not any(mono):
        return None
    if len(g.terms) == 1 and sum(next(iter(g.terms))) == 1:
        return None  # bare variable: handled by substitution
    return mono


def _strip_monomial(g: Polynomial, mono):
    return Polynomial(
        g.ring, {tuple(a - b for a, b in zip(m, mono)): c for m, c in g.terms.items()}
    )


def _same_up_to_unit(f: Polynomial, g: Polynomial) -> bool:
    if f.ring != g.ring:
        f = f.to_domain(g.ring.domain)
    fm, fc = f.leading_term()
    gm, gc = g.leading_term()
    if fm != gm:
        return False
    dom = g.ring.domain
    if dom.kind == "QQ":
        scale = gc / fc
    elif dom.kind == "GF":
        scale = (gc * dom.inv(fc)) % dom.p
    else:
        return f == g
    return f.map_coefficients(lambda c: c * scale) == g


def _vector_space_dimension(G: GroebnerBasis) -> int:
    """Count of standard monomials of a zero-dimensional basis."""
    ring = G.ring
    lms = [g.leading_term(G.order)[0] for g in G.elements]
    bounds = []
    for i in range(ring.nvars):
        pure = [m[i] for m in lms if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            raise InternalInvariantError("not zero-dimensional")
        bounds.append(min(pure))
    from itertools import product

    count = 0
    for exps in product(*[range(b) for b in bounds]):
        from .poly import mono_divides

        if not any(mono_divides(lm, exps) for lm in lms):
            count += 1
    return count


def _linear_forms(ring: PolyRing, attempts: int):
    """Single variables first, then small integer combinations."""
    n = ring.nvars
    out = [ring.var(i) for i in range(n)]
    if n > 1:
        for scale in range(1, 4):
            for i in range(n):
                for j in range(i + 1, n):
                    out.append(ring.var(i) + ring.var(j) * scale)
                    out.append(ring.var(i) - ring.var(j) * scale)
    return out[:attempts]


def _minimal_polynomial_of(I: IdealPresentation, form: Polynomial, limits) -> Polynomial:
    """Generator of the elimination ideal of (I, t - form) in the new t."""
    ring = I.ring
    big = _extend_ring(ring, "w_")
    t_idx = big.nvars - 1
    gens = [_promote(g, big) for g in I.generators]
    gens.append(big.var(t_idx) - _promote(form, big))
    order = elimination_order(range(ring.nvars))
    G = strong_groebner(IdealPresentation(big, gens), order, limits)
    kept = [g for g in G.elements if g.variables_used() <= {t_idx}]
    if not kept:
        raise InternalInvariantError("zero-dimensional ideal without eliminant")
    kept.sort(key=lambda g: g.degree_in(t_idx))
    m = kept[0]
    single = PolyRing(("t",), ring.domain)
    return Polynomial(single, {(e[t_idx],): c for e, c in m.terms.items()})


def _plug_form(f: Polynomial, form: Polynomial, ring: PolyRing) -> Polynomial:
    """f(form) back in the ambient ring."""
    result = ring.zero
    for m, c in f.terms.items():
        result = result + ring.const(c) * form ** m[0]
    return result


def _filter_minimal_field(parts, limits):
    return _filter_minimal_ideals(parts, limits)


def _filter_minimal_ideals(parts, limits):
    """Drop duplicates and anything containing a strictly smaller member."""
    bases = [strong_groebner(P, GREVLEX, limits) for P in parts]
    canon = [tuple(poly_text(g) for g in B.elements) for B in bases]
    kept = []
    for i, P in enumerate(parts):
        drop = False
        for j in range(len(parts)):
            if i == j or drop:
                continue
            j_in_i = all(bases[i].contains(g) for g in bases[j].elements)
            i_in_j = all(bases[j].contains(g) for g in bases[i].elements)
            if j_in_i and i_in_j:
                # duplicates: keep the canonically first occurrence
                if (canon[j], j) < (canon[i], i):
                    drop = True
            elif j_in_i:
                drop = True  # P_j strictly below P_i
        if not drop:
            kept.append((canon[i], parts[i], bases[i]))
    kept.sort(key=lambda t: t[0])
    return [IdealPresentation(t[1].ring, t[2].elements) for t in kept]


# ---------------------------------------------------------------------------
# contraction of field components to Z[x..]


def _contract_gf_component(P: IdealPresentation, p: int, zring: PolyRing, limits):
    gens = [g.to_domain(ZZ) for g in P.generators]
    gens.append(zring.const(p))
    G = strong_groebner(IdealPresentation(zring, gens), GREVLEX, limits)
    return IdealPresentation(zring, G.elements)


def _contract_qq_component(P: IdealPresentation, zring: PolyRing, limits):
    from fractions import Fraction

    gens = []
    for g in P.generators:
        den = 1
        for c in g.terms.values():
            fc = Fraction(c)
            den = den * fc.denominator // gcd(den, fc.denominator)
        zg = g.map_coefficients(lambda c: Fraction(c) * den).to_domain(ZZ)
        gens.append(zg.primitive_part())
    J = IdealPresentation(zring, gens)
    bad = sorted(_leading_coefficient_primes(J, limits))
    m = 1
    for p in bad:
        m *= p
    if m > 1:
        J = _saturate_by_constant(J, m, limits)
    G = strong_groebner(J, GREVLEX, limits)
    return IdealPresentation(zring, G.elements)


def _leading_coefficient_primes(I: IdealPresentation, limits):
    G = strong_groebner(I, GREVLEX, limits)
    primes = set()
    for g in G.elements:
        primes |= set(_prime_divisors(abs(g.leading_term(G.order)[1])))
    return primes


def _saturate_by_constant(I: IdealPresentation, m: int, limits):
    """(I : m^infinity) via the single-auxiliary-variable trick."""
    ring = I.ring
    big = _extend_ring(ring, "s_")
    t = big.var(big.nvars - 1)
    gens = [_promote(g, big) for g in I.generators]
    gens.append(big.one - t * big.const(m))
    order = elimination_order([big.nvars - 1])
    G = strong_groebner(IdealPresentation(big, gens), order, limits)
    kept = [g for g in G.elements if big.nvars - 1 not in g.variables_used()]
    return IdealPresentation(ring, [_restrict(g, ring) for g in kept])


# ---------------------------------------------------------------------------
# the pipeline


def is_zero_ring(R: RingPresentation, cfg: AnalysisConfig = DEFAULT_CONFIG) -> bool:
    return strong_groebner(R.ideal, GREVLEX, cfg.groebner).is_unit_ideal()


def minimal_primes(R: RingPresentation, cfg: AnalysisConfig = DEFAULT_CONFIG):
    """The minimal primes of R as PrimeCertificates, verified before return."""
    if is_zero_ring(R, cfg):
        raise ValueError("the zero ring has no prime ideals")
    limits = cfg.groebner
    zring = R.ring
    I = R.ideal
    c = contract_integers(I, limits)
    bad = set(_prime_divisors(c)) | _leading_coefficient_primes(I, limits)
    budget = [cfg.max_decomposition_branches]

    candidates = []
    for p in sorted(bad):
        gf_ring = PolyRing(zring.names, GF(p))
        gens_p = [g.reduce_mod(p) for g in R.relations]
        Ip = IdealPresentation(gf_ring, [g for g in gens_p if not g.is_zero()])
        for P in _minimal_primes_field(Ip, cfg, budget):
            candidates.append(
                (_contract_gf_component(P, p, zring, limits), f"mod {p} component")
            )
    if c == 0:
        qring = PolyRing(zring.names, QQ)
        Iq = IdealPresentation(qring, [g.to_domain(QQ) for g in R.relations])
        for P in _minimal_primes_field(Iq, cfg, budget):
            candidates.append(
                (_contract_qq_component(P, zring, limits), "characteristic 0 component")
            )

    provenance = {id(P): src for P, src in candidates}
    minimal = _filter_minimal_ideals([P for P, _ in candidates], limits)
    by_key = {
        tuple(poly_text(g) for g in strong_groebner(P, GREVLEX, limits).elements): src
        for P, src in candidates
    }
    del provenance

    certs = [
        _certify_prime(P, by_key.get(tuple(poly_text(g) for g in P.generators), "?"), cfg)
        for P in minimal
    ]
    _verify_decomposition(R, certs, cfg)
    return certs


def _certify_prime(P: IdealPresentation, provenance: str, cfg: AnalysisConfig, verified=True):
    limits = cfg.groebner
    basis = strong_groebner(P, GREVLEX, limits)
    char = contract_integers(P, limits)
    if char != 0 and len(_prime_divisors(char)) != 1:
        raise InternalInvariantError(f"composite characteristic {char} in a prime candidate")
    if char == 0:
        finite = False
    else:
        gens_p = [g.reduce_mod(char) for g in P.generators]
        gf_ring = PolyRing(P.ring.names, GF(char))
        Ip = IdealPresentation(gf_ring, [g for g in gens_p if not g.is_zero()])
        finite = dimension_over_field(Ip, limits) <= 0
    return PrimeCertificate(
        generators=basis.elements,
        characteristic=char,
        finite_index=finite,
        provenance=provenance,
        primality_verified=verified,
        basis=basis,
    )


def _verify_decomposition(R: RingPresentation, certs, cfg: AnalysisConfig):
    """Mechanical soundness: sqrt(I) = intersection of the primes, pairwise
    incomparability.  Failure here is a bug, not a refusal."""
    limits = cfg.groebner
    I = R.ideal
    for cert in certs:
        for g in R.relations:
            if not cert.contains(g):
                raise InternalInvariantError("candidate prime does not contain the relations")
    for i in range(len(certs)):
        for j in range(len(certs)):
            if i != j and all(certs[j].contains(g) for g in certs[i].generators):
                raise InternalInvariantError("returned primes are not incomparable")
    inter = _intersect_all(
        [IdealPresentation(R.ring, cert.generators) for cert in certs], R.ring, limits
    )
    for g in inter.generators:
        if not radical_member(g, I, limits):
            raise InternalInvariantError("intersection of primes exceeds the radical")


def _intersect_all(ideals, ring, limits):
    if not ideals:
        return IdealPresentation(ring, (ring.one,))
    acc = ideals[0]
    for J in ideals[1:]:
        acc = intersect_ideals(acc, J, limits)
    G = strong_groebner(acc, GREVLEX, limits)
    return IdealPresentation(ring, G.elements)


def nilradical(R: RingPresentation, cfg: AnalysisConfig = DEFAULT_CONFIG) -> IdealPresentation:
    """Intersection of the minimal primes, as an ideal of Z[x..]."""
    certs = minimal_primes(R, cfg)
    return _intersect_all(
        [IdealPresentation(R.ring, cert.generators) for cert in certs], R.ring, cfg.groebner
    )


def is_finite(R: RingPresentation, cfg: AnalysisConfig = DEFAULT_CONFIG) -> bool:
    """Finite iff every minimal prime has finite index (empty prime graph)."""
    if is_zero_ring(R, cfg):
        return True
    return all(cert.finite_index for cert in minimal_primes(R, cfg))


def quotient_is_finite(ring: PolyRing, gens, cfg: AnalysisConfig = DEFAULT_CONFIG):
    """Direct finiteness test for Z[x..]/(gens): integer contraction plus a
    zero-dimensionality check at each residue characteristic.

    Returns (finite, contraction, dims per prime)."""
    limits = cfg.groebner
    I = IdealPresentation(ring, gens)
    c = contract_integers(I, limits)
    if c == 0:
        return False, 0, {}
    dims = {}
    finite = True
    for p in _prime_divisors(c):
        gens_p = [g.reduce_mod(p) for g in I.generators]
        gf_ring = PolyRing(ring.names, GF(p))
        Ip = IdealPresentation(gf_ring, [g for g in gens_p if not g.is_zero()])
        d = dimension_over_field(Ip, limits)
        dims[p] = d
        if d > 0:
            finite = False
    return finite, c, dims


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def prime_graph(R: RingPresentation, cfg: AnalysisConfig = DEFAULT_CONFIG, certs=None):
    """Vertices: infinite-index minimal primes; edge when the sum of two
    primes still has infinite index (Spec minus Max connectivity test)."""
    if certs is None:
        certs = minimal_primes(R, cfg)
    vertices = tuple(i for i, cert in enumerate(certs) if not cert.finite_index)
    edges = []
    for a in range(len(vertices)):
        for b in range(a + 1, len(vertices)):
            i, j = vertices[a], vertices[b]
            gens = certs[i].generators + certs[j].generators
            finite, _, _ = quotient_is_finite(R.ring, gens, cfg)
            if not finite:
                edges.append((i, j))
    uf = _UnionFind(vertices)
    for i, j in edges:
        uf.union(i, j)
    comps = {}
    for v in vertices:
        comps.setdefault(uf.find(v), []).append(v)
    components = tuple(tuple(sorted(c)) for c in sorted(comps.values()))
    return PrimeGraph(vertices, tuple(edges), components)


def nil_annihilator_exponent(
    R: RingPresentation, cfg: AnalysisConfig = DEFAULT_CONFIG, nil: IdealPresentation = None
) -> int:
    """Least d >= 1 with d*N = 0 in A, or 0 when no such d exists.

    Computed as the integer contraction of (relations : nilradical)."""
    limits = cfg.groebner
    if nil is None:
        nil = nilradical(R, cfg)
    colon = quotient_ideal(R.ideal, nil, limits)
    return contract_integers(colon, limits)


def reduced_ring(R: RingPresentation, cfg: AnalysisConfig = DEFAULT_CONFIG) -> RingPresentation:
    nil = nilradical(R, cfg)
    return RingPresentation(R.names, R.relations + nil.generators)


def classify(R: RingPresentation, cfg: AnalysisConfig = DEFAULT_CONFIG) -> ClassificationReport:
    """The full verdict: bi-interpretable with Z iff infinite, connected
    punctured spectrum, and d >= 1 with d * nilradical = 0."""
    if is_zero_ring(R, cfg):
        graph = PrimeGraph((), (), ())
        return ClassificationReport(
            presentation=R,
            is_zero_ring=True,
            is_finite=True,
            minimal_primes=(),
            nilradical=(R.ring.one,),
            annihilator_exponent=1,
            graph=graph,
            connected=False,
            verdict=VERDICT_NO,
            certificate={"kind": "zero-ring"},
        )
    try:
        certs = minimal_primes(R, cfg)
    except DecompositionIncomplete as exc:
        graph = PrimeGraph((), (), ())
        return ClassificationReport(
            presentation=R,
            is_zero_ring=False,
            is_finite=False,
            minimal_primes=(),
            nilradical=(),
            annihilator_exponent=0,
            graph=graph,
            connected=False,
            verdict=VERDICT_UNDECIDED,
            certificate={"kind": "decomposition-incomplete", "reason": str(exc)},
        )
    finite = all(cert.finite_index for cert in certs)
    graph = prime_graph(R, cfg, certs)
    nil = _intersect_all(
        [IdealPresentation(R.ring, cert.generators) for cert in certs], R.ring, cfg.groebner
    )
    d = nil_annihilator_exponent(R, cfg, nil)
    connected = graph.connected
    verdict = VERDICT_YES if (not finite) and connected and d >= 1 else VERDICT_NO

    if verdict == VERDICT_YES:
        certificate = {
            "kind": "bi-interpretable",
            "nil_annihilator_exponent": d,
            "graph_components": len(graph.components),
        }
    elif finite:
        certificate = {"kind": "finite-ring"}
    elif d == 0:
        certificate = {
            "kind": "nil-annihilator-unbounded",
            "colon_contraction": 0,
        }
    else:
        # disconnected split: C vs complement, with the finite-index witness
        # for the sum of the two intersection ideals
        C = graph.components[0]
        rest = tuple(v for v in graph.vertices if v not in C)
        left = _intersect_all(
            [IdealPresentation(R.ring, certs[i].generators) for i in C], R.ring, cfg.groebner
        )
        right = _intersect_all(
            [IdealPresentation(R.ring, certs[i].generators) for i in rest], R.ring, cfg.groebner
        )
        both = sum_ideals(left, right)
        finite_sum, witness, dims = quotient_is_finite(R.ring, both.generators, cfg)
        if not finite_sum:
            raise InternalInvariantError("disconnected split has infinite-index sum")
        certificate = {
            "kind": "disconnected-split",
            "component": list(C),
            "complement": list(rest),
            "left_ideal": [poly_text(g) for g in left.generators],
            "right_ideal": [poly_text(g) for g in right.generators],
            "sum_index_witness": witness,
        }
    return ClassificationReport(
        presentation=R,
        is_zero_ring=False,
        is_finite=finite,
        minimal_primes=tuple(certs),
        nilradical=nil.generators,
        annihilator_exponent=d,
        graph=graph,
        connected=connected,
        verdict=verdict,
        certificate=certificate,
    )


# ---------------------------------------------------------------------------
# auxiliary operations


def fiber_data(R: RingPresentation, I_gens, J_gens, cfg: AnalysisConfig = DEFAULT_CONFIG):
    """Presentations of R/I, R/J, R/(I+J), R/(I cap J) and finiteness of the base."""
    limits = cfg.groebner
    ring = R.ring
    I = IdealPresentation(ring, I_gens)
    J = IdealPresentation(ring, J_gens)
    rel = R.ideal
    sum_ij = sum_ideals(I, J)
    cap = intersect_ideals(sum_ideals(rel, I), sum_ideals(rel, J), limits)
    base_gens = rel.generators + sum_ij.generators
    finite, witness, _ = quotient_is_finite(ring, base_gens, cfg)
    def pres(gens):
        return RingPresentation(R.names, rel.generators + tuple(gens))
    return {
        "mod_left": pres(I.generators),
        "mod_right": pres(J.generators),
        "base": pres(sum_ij.generators),
        "fiber": RingPresentation(R.names, cap.generators),
        "base_finite": finite,
        "base_index_witness": witness,
    }


class Inconclusive(RuntimeError):
    pass


def has_infinite_mult_order(
    R: RingPresentation, a: Polynomial, cfg: AnalysisConfig = DEFAULT_CONFIG
):
    """Bounded certificate search for infinite multiplicative order of a.

    True: a avoids a non-maximal (infinite-index) minimal prime P with
    1 not in (a, P); then a^m = a^n forces 1 in (a, P).  False: an actual
    power collision a^m = a^n within the bound.  Otherwise Inconclusive.
    """
    limits = cfg.groebner
    Q = QuotientRing(R.ring, R.relations, limits)
    powers = {}
    x = Q.one
    for n in range(0, cfg.mult_order_bound + 1):
        if x in powers:
            return False, {"kind": "power-collision", "m": powers[x], "n": n}
        powers[x] = n
        x = Q.mul(x, Q.nf(a))
    certs = minimal_primes(R, cfg)
    for i, cert in enumerate(certs):
        if cert.finite_index:
            continue
        if cert.contains(a):
            continue
        with_a = IdealPresentation(R.ring, cert.generators + (a,))
        if contract_integers(with_a, limits) != 1:
            G = strong_groebner(with_a, GREVLEX, limits)
            if not G.is_unit_ideal():
                return True, {
                    "kind": "avoided-nonmaximal-prime",
                    "prime_index": i,
                    "prime": [poly_text(g) for g in cert.generators],
                }
    raise Inconclusive("no certificate within the configured bound")


def verify_candidate_decomposition(
    R: RingPresentation, candidate_gen_lists, cfg: AnalysisConfig = DEFAULT_CONFIG
):
    """Check a user-supplied decomposition: radical equality both ways and
    pairwise incomparability.  Primality is certified only within the
    supported class; otherwise the certificate is marked unverified."""
    limits = cfg.groebner
    certs = []
    for gens in candidate_gen_lists:
        P = IdealPresentation(R.ring, gens)
        verified = True
        try:
            sub = minimal_primes(
                RingPresentation(R.names, tuple(gens)), cfg
            )
            if len(sub) != 1:
                verified = False
        except (DecompositionIncomplete, ValueError):
            verified = False
        certs.append(_certify_prime(P, "user-supplied", cfg, verified=verified))
    _verify_decomposition(R, certs, cfg)
    inter = _intersect_all(
        [IdealPresentation(R.ring, cert.generators) for cert in certs], R.ring, limits
    )
    for g in R.relations:
        if not all(cert.contains(g) for cert in certs):
            raise InternalInvariantError("candidate fails containment")
    for g in inter.generators:
        if not radical_member(g, R.ideal, limits):
            raise ValueError("candidate intersection is not inside the radical")
    return certs
