"""Embedded liftings of a singularity over Artinian bases: the flatness
criterion by relation lifting, the difference section nu, its boundary
e-class in q tensor T1, and gluing over fiber products."""

from .artinian import ArtinianAlgebra
from .basis import Ideal, LiftSolver, StandardBasis, Vec, syzygies
from .linalg import rref, solve
from .poly import Poly, PolyRing
from .singularity import RejectedInput

_MIXED_CACHE = {}


def mixed_ring(base, x_ring):
    """k[t-vars, x-vars] with a local order (t-variables first)."""
    tn, xn = base.ring.vars, x_ring.vars
    if set(tn) & set(xn):
        raise ValueError("base and ambient variable names must be disjoint")
    key = (tn, xn, base.ring.field, x_ring.order)
    ring = _MIXED_CACHE.get(key)
    if ring is None:
        ring = PolyRing(tn + xn, base.ring.field, x_ring.order)
        _MIXED_CACHE[key] = ring
    return ring


def x_coefficients(p, nt):
    """Split a mixed polynomial into {x-exponents: t-polynomial terms}."""
    out = {}
    for m, c in p.terms.items():
        te, xe = m[:nt], m[nt:]
        out.setdefault(xe, {})[te] = c
    return out


def _rebuild(ring, nt, pieces):
    """Inverse of x_coefficients: {x-exps: {t-exps: coeff}} -> mixed Poly."""
    terms = {}
    for xe, tt in pieces.items():
        for te, c in tt.items():
            if not ring.field.is_zero(c):
                terms[te + xe] = c
    return ring.from_terms(terms)


def canonical_coefficients(p, base, nt):
    """Normal-form every t-coefficient of a mixed polynomial against base."""
    tring = base.ring
    out = {}
    for xe, tt in x_coefficients(p, nt).items():
        red = base.nf(tring.from_terms(dict(tt)))
        if not red.is_zero():
            out[xe] = dict(red.terms)
    return _rebuild(p.ring, nt, out)


def algebras_equal(a, b):
    if a is b:
        return True
    if a.ring != b.ring or a.monomials != b.monomials:
        return False
    return all(b.is_zero(g) for g in a.ideal.gens) and \
        all(a.is_zero(g) for g in b.ideal.gens)


class EmbeddedLifting:
    """Equations over base[x] reducing to the reference singularity mod m."""

    def __init__(self, base, reference, members):
        self.base = base
        self.reference = reference
        self.mixed = mixed_ring(base, reference.ring)
        self.nt = base.ring.nvars
        mem = [p.map_ring(self.mixed) if p.ring != self.mixed else p for p in members]
        if len(mem) != reference.c:
            raise ValueError("one lifted equation per reference equation")
        self.members = [self._canonical(p) for p in mem]
        for f, g in zip(self.members, reference.equations):
            diff = f - g.map_ring(self.mixed)
            for m in diff.terms:
                if sum(m[:self.nt]) == 0:
                    raise ValueError("lifted equations must reduce to the reference")

    def _canonical(self, p):
        return canonical_coefficients(p, self.base, self.nt)

    def restrict(self, smaller):
        """The same equations over a quotient of the base."""
        if smaller.ring != self.base.ring:
            raise ValueError("restriction must stay on the same parameter ring")
        return EmbeddedLifting(smaller, self.reference, self.members)

    def equals(self, other):
        return algebras_equal(self.base, other.base) and self.members == other.members

    def __repr__(self):
        return "EmbeddedLifting(%s)" % ", ".join(str(m) for m in self.members)


def trivial_lifting(base, reference):
    mixed = mixed_ring(base, reference.ring)
    return EmbeddedLifting(base, reference, [f.map_ring(mixed) for f in reference.equations])


class FlatnessCertificate:
    """Per-syzygy relation lifts; carries the offending syzygy on failure."""

    def __init__(self, ok, checked, failing=None):
        self.ok = ok
        self.checked = checked        # list of (syzygy Vec, (unit, coeffs) or None)
        self.failing = failing        # syzygy Vec over the reduced equations

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "FlatnessCertificate(ok, %d syzygies lifted)" % len(self.checked)
        return "FlatnessCertificate(failed at syzygy %s)" % (self.failing,)


def check_flatness(lift, step, want_combinations=True):
    """Every generating syzygy of the reduced equations must lift into q*I'.

    When the reference equations are a certified regular sequence the syzygy
    module of the reduced equations has a known shape and every generator is
    checked by an exact identity; otherwise the generators are computed from
    a standard basis over the mixed ring.
    """
    if not algebras_equal(lift.base, step.total):
        raise ValueError("lifting is not defined over the extension total")
    mixed = lift.mixed
    c = lift.reference.c
    j_total = [g.map_ring(mixed) for g in lift.base.ideal.gens]
    q_mixed = [q.map_ring(mixed) for q in step.ideal_q]
    try:
        lift.reference.certify_regular_sequence()
    except RejectedInput:
        pass
    else:
        return _check_flatness_regular(lift, step, j_total, q_mixed,
                                       want_combinations)
    reduced = [canonical_coefficients(p, step.quotient, lift.nt) for p in lift.members]
    ring_rels = j_total + q_mixed
    gens = [Vec(mixed, (p,)) for p in reduced] + [Vec(mixed, (g,)) for g in ring_rels]
    syz = syzygies(gens, mixed, 1)
    memb = [q * f for q in q_mixed for f in lift.members] + j_total
    memb_vecs = [Vec(mixed, (g,)) for g in memb if not g.is_zero()]
    if not memb_vecs:
        solver = sb = None
    elif want_combinations:
        solver = LiftSolver(memb_vecs, mixed, 1)
        sb = None
    else:
        solver = None
        sb = StandardBasis(memb_vecs, mixed, 1)
    checked = []
    for a in syz:
        proj = Vec(mixed, a.comps[:c])
        if proj.is_zero():
            continue
        r = mixed.zero()
        for ai, f in zip(proj.comps, lift.members):
            r = r + ai * f
        rv = Vec(mixed, (r,))
        if r.is_zero():
            checked.append((proj, (mixed.one(), [])))
            continue
        combo = solver.express(rv) if solver is not None else None
        member = combo is not None if solver is not None else (
            sb is not None and sb.contains(rv))
        if not member:
            reduced_proj = Vec(mixed, [
                canonical_coefficients(p, step.quotient, lift.nt) for p in proj.comps])
            return FlatnessCertificate(False, checked, failing=reduced_proj)
        checked.append((proj, combo))
    return FlatnessCertificate(True, checked)


def _check_flatness_regular(lift, step, j_total, q_mixed, want_combinations):
    """Flatness certificate over a certified regular-sequence reference.

    Any syzygy of the reduced equations splits, by peeling one small
    extension of the base at a time, into a Koszul combination of the lifted
    equations plus base-ideal multiples of the unit vectors (for the lowest
    layer the equations collapse onto the fiber, whose syzygies are Koszul by
    the certificate, and a Koszul row of the lifted equations reduces to the
    matching fiber row because m*q = 0).  Both kinds of generators lift by an
    identity that is verified term-for-term below.
    """
    mixed = lift.mixed
    c = lift.reference.c
    members = lift.members
    memb = [q * f for q in q_mixed for f in members] + j_total
    zero = mixed.zero()
    checked = []
    for i in range(c):
        for j in range(i + 1, c):
            comps = [zero] * c
            comps[i] = members[j]
            comps[j] = -members[i]
            row = Vec(mixed, comps)
            s = members[j] * members[i] - members[i] * members[j]
            assert s.is_zero(), "Koszul row failed to annihilate the members"
            checked.append((row, (mixed.one(), [zero] * len(memb))
                            if want_combinations else None))
    for bi, q in enumerate(q_mixed):
        for i in range(c):
            row = Vec(mixed, [q if k == i else zero for k in range(c)])
            combo = None
            if want_combinations:
                coeffs = [zero] * len(memb)
                coeffs[bi * c + i] = mixed.one()
                assert q * members[i] == memb[bi * c + i]
                combo = (mixed.one(), coeffs)
            checked.append((row, combo))
    offset = len(q_mixed) * c
    for ji, h in enumerate(j_total):
        for i in range(c):
            row = Vec(mixed, [h if k == i else zero for k in range(c)])
            combo = None
            if want_combinations:
                coeffs = [zero] * len(memb)
                coeffs[offset + ji] = members[i]
                assert h * members[i] == memb[offset + ji] * members[i]
                combo = (mixed.one(), coeffs)
            checked.append((row, combo))
    return FlatnessCertificate(True, checked)


def certify_flat(lift, steps):
    """check_flatness along a filtration; returns the list of certificates."""
    certs = []
    for step in steps:
        restricted = lift.restrict(step.total)
        cert = check_flatness(restricted, step, want_combinations=False)
        certs.append(cert)
        if not cert.ok:
            break
    return certs


class NormalSection:
    """The class of (f'1 - f'2) in q tensor O: pairs (q-basis elt, x-vector)."""

    def __init__(self, step, reference, components, pairs):
        self.step = step
        self.reference = reference
        self.components = components
        self.pairs = pairs

    def _i0_basis(self):
        ring = self.reference.ring
        return StandardBasis([Vec(ring, (f,)) for f in self.reference.equations], ring, 1)

    def is_zero(self):
        sb = self._i0_basis()
        ring = self.reference.ring
        return all(sb.contains(Vec(ring, (g,)))
                   for _, vec in self.pairs for g in vec.comps)

    def negated(self):
        return NormalSection(self.step, self.reference,
                             [-p for p in self.components],
                             [(q, -v) for q, v in self.pairs])

    def plus(self, other):
        return NormalSection(self.step, self.reference,
                             [a + b for a, b in zip(self.components, other.components)],
                             [(q, v + w) for (q, v), (_, w) in zip(self.pairs, other.pairs)])

    def equals(self, other):
        return self.plus(other.negated()).is_zero()

    def __repr__(self):
        inner = "; ".join("%s (*) %s" % (q, v) for q, v in self.pairs)
        return "NormalSection(%s)" % inner


def nu_difference(lift1, lift2, step):
    """Componentwise difference split over the fixed q-basis."""
    if not (algebras_equal(lift1.base, step.total) and algebras_equal(lift2.base, step.total)):
        raise ValueError("both liftings must live over the extension total")
    if lift1.reference is not lift2.reference and \
            lift1.reference.equations != lift2.reference.equations:
        raise ValueError("liftings deform different singularities")
    ref = lift1.reference
    tring = step.total.ring
    nt = lift1.nt
    comps = []
    coeff_tables = []
    for f1, f2 in zip(lift1.members, lift2.members):
        d = f1 - f2
        table = {}
        for xe, tt in x_coefficients(d, nt).items():
            tp = step.total.nf(tring.from_terms(dict(tt)))
            if tp.is_zero():
                continue
            try:
                table[xe] = step.q_coords(tp)
            except ValueError:
                raise ValueError("liftings do not reduce to the same equations mod q")
        comps.append(d)
        coeff_tables.append(table)
    xr = ref.ring
    pairs = []
    for b in range(step.q_dimension):
        vec = []
        for table in coeff_tables:
            terms = {xe: co[b] for xe, co in table.items()
                     if not tring.field.is_zero(co[b])}
            vec.append(xr.from_terms(terms))
        pairs.append((step.q_basis[b], Vec(xr, vec)))
    return NormalSection(step, ref, comps, pairs)


class EClass:
    """q-indexed T1 coordinate rows of the boundary of nu."""

    def __init__(self, step, rows, q_basis):
        self.step = step
        self.rows = rows
        self.q_basis = q_basis

    def is_zero(self):
        fld = self.step.total.ring.field
        return all(fld.is_zero(c) for row in self.rows for c in row)

    def matrix(self):
        return [list(r) for r in self.rows]

    def __repr__(self):
        return "EClass(%s)" % self.rows


def e_class(lift1, lift2, step):
    nu = nu_difference(lift1, lift2, step)
    fq = nu.reference.t1_quotient()
    rows = [tuple(fq.coords(vec)) for _, vec in nu.pairs]
    return EClass(step, rows, [q for q, _ in nu.pairs])


def liftings_isomorphic(lift1, lift2, step):
    return e_class(lift1, lift2, step).is_zero()


def _ideal_span_rows(total, gens):
    """Coordinate rows spanning the ideal (gens) inside the algebra."""
    rows = []
    for g in gens:
        for m in total.monomials:
            row = total.coords(total.ring.monomial(m) * g)
            if any(not total.ring.field.is_zero(c) for c in row):
                rows.append(row)
    return rows


def glue_over_fiber_product(total, i1_gens, i2_gens, lift1, lift2):
    """Combine liftings over A/I1 and A/I2 (I1 ^ I2 = 0) into one over A."""
    ring = total.ring
    fld = ring.field
    a1 = ArtinianAlgebra(ring, total.ideal.gens + list(i1_gens))
    a2 = ArtinianAlgebra(ring, total.ideal.gens + list(i2_gens))
    if not algebras_equal(a1, lift1.base):
        raise ValueError("first lifting does not live over A/I1")
    if not algebras_equal(a2, lift2.base):
        raise ValueError("second lifting does not live over A/I2")
    rows1 = _ideal_span_rows(total, i1_gens)
    rows2 = _ideal_span_rows(total, i2_gens)
    r1 = len(rref(rows1, total.dimension, fld)[0]) if rows1 else 0
    r2 = len(rref(rows2, total.dimension, fld)[0]) if rows2 else 0
    rall = len(rref(rows1 + rows2, total.dimension, fld)[0]) if rows1 + rows2 else 0
    if r1 + r2 != rall:
        raise ValueError("ideals overlap: I1 ^ I2 is not zero")
    a0 = ArtinianAlgebra(ring, total.ideal.gens + list(i1_gens) + list(i2_gens))
    red1 = lift1.restrict(a0)
    red2 = lift2.restrict(a0)
    if not red1.equals(red2):
        raise ValueError("restrictions disagree on the common quotient")
    # one linear solve per x-monomial: find the unique preimage of the pair
    nt = ring.nvars
    stacked = []
    for j in range(total.dimension):
        col_poly = ring.monomial(total.monomials[j])
        stacked.append(a1.coords(col_poly) + a2.coords(col_poly))
    rows = [[stacked[j][i] for j in range(total.dimension)]
            for i in range(a1.dimension + a2.dimension)]
    ref = lift1.reference
    support = set()
    tabs1, tabs2 = [], []
    for f1, f2 in zip(lift1.members, lift2.members):
        t1 = x_coefficients(f1, nt)
        t2 = x_coefficients(f2, nt)
        tabs1.append(t1)
        tabs2.append(t2)
        support |= set(t1) | set(t2)
    glued = []
    for i in range(ref.c):
        pieces = {}
        for xe in sorted(support):
            c1 = a1.coords(ring.from_terms(dict(tabs1[i].get(xe, {}))))
            c2 = a2.coords(ring.from_terms(dict(tabs2[i].get(xe, {}))))
            sol = solve(rows, c1 + c2, total.dimension, fld)
            if sol is None:
                raise ValueError("no common preimage; fiber product violated")
            tp = total.from_coords(sol)
            if not tp.is_zero():
                pieces[xe] = dict(tp.terms)
        glued.append(_rebuild(lift1.mixed, nt, pieces))
    out = EmbeddedLifting(total, ref, glued)
    assert out.restrict(a1).equals(lift1) and out.restrict(a2).equals(lift2)
    return out
