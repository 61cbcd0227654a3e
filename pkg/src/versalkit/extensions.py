"""Short exact sequences 0 -> G -> E -> F -> 0 of presented modules and the
group operations on their classes: sum, opposite, pushforward, pullback,
splitting tests, and isomorphism of the middle terms via difference
splitting."""

from .basis import INFINITE, StandardBasis, Vec, lift_through, unit_vec
from .linalg import solve
from .modules import (CertificationError, ModuleHom, PresentedModule,
                      _present_quotient_span, direct_sum, free_module,
                      identity_hom, is_isomorphism, kernel)
from .quotient import FiniteQuotient


class Extension:
    """An extension of F by G with middle term ``mid``; exactness certified."""

    def __init__(self, F, G, mid, iota, kappa, certify=True):
        self.F = F
        self.G = G
        self.mid = mid
        self.iota = iota     # G -> mid
        self.kappa = kappa   # mid -> F
        if certify:
            self.certify_exactness()

    def certify_exactness(self):
        ring = self.mid.ring
        self.iota.certify()
        self.kappa.certify()
        # kappa o iota = 0
        for y in range(self.G.rank):
            img = self.kappa.apply(self.iota.cols[y])
            if not self.F.contains_relation(img):
                raise CertificationError("kappa o iota is not zero")
        # iota injective
        K, incl = kernel(self.iota)
        for g in incl.cols:
            if not self.G.contains_relation(g):
                raise CertificationError("iota has nontrivial kernel")
        # kappa surjective
        sb = StandardBasis(self.kappa.cols + self.F.relations, ring, self.F.rank)
        for i in range(self.F.rank):
            if not sb.contains(unit_vec(ring, self.F.rank, i)):
                raise CertificationError("kappa is not surjective")
        # ker kappa inside im iota
        K2, incl2 = kernel(self.kappa)
        sb2 = StandardBasis(self.iota.cols + self.mid.relations, ring, self.mid.rank)
        for g in incl2.cols:
            if not sb2.contains(g):
                raise CertificationError("kernel of kappa exceeds the image of iota")

    def __repr__(self):
        return "Extension(G rank %d -> E rank %d -> F rank %d)" % (
            self.G.rank, self.mid.rank, self.F.rank)


def same_presentation(M, N):
    return (M is N) or (
        M.ring == N.ring and M.rank == N.rank
        and len(M.relations) == len(N.relations)
        and all(any(r == s for s in N.relations) for r in M.relations)
    )


def split_extension(F, G):
    """The trivial extension with middle term F + G."""
    P, iF, iG, pF, pG = direct_sum(F, G)
    return Extension(F, G, P, iG, pF)


def opposite(e):
    """Same middle term with the inclusion negated; the inverse class."""
    return Extension(e.F, e.G, e.mid, -e.iota, e.kappa)


def baer_sum(e1, e2):
    """Sum of extension classes via the kernel-modulo-antidiagonal middle term."""
    if not (same_presentation(e1.F, e2.F) and same_presentation(e1.G, e2.G)):
        raise CertificationError("extensions must share the same F and G")
    ring = e1.mid.ring
    F, G = e1.F, e1.G
    P, i1, i2, p1, p2 = direct_sum(e1.mid, e2.mid)
    # delta(a1, a2) = kappa1(a1) - kappa2(a2); its kernel is the fiber module
    dcols = [e1.kappa.cols[j] for j in range(e1.mid.rank)]
    dcols += [-e2.kappa.cols[j] for j in range(e2.mid.rank)]
    delta = ModuleHom(P, F, dcols, check=False)
    A, inclA = kernel(delta)
    pair_gens = list(inclA.cols)
    # append the images of G so iota has polynomial columns
    appended = []
    for y in range(G.rank):
        comps = list(e1.iota.cols[y].comps) + [ring.zero()] * e2.mid.rank
        appended.append(Vec(ring, comps))
    gens = pair_gens + appended
    # antidiagonal copy of G is divided out
    junk = []
    for y in range(G.rank):
        comps = list(e1.iota.cols[y].comps) + list((-e2.iota.cols[y]).comps)
        junk.append(Vec(ring, comps))
    junk += P.relations
    E = _present_quotient_span(ring, P.rank, gens, junk)
    icols = [unit_vec(ring, E.rank, len(pair_gens) + y) for y in range(G.rank)]
    iota = ModuleHom(G, E, icols, check=False)
    kcols = []
    for g in gens:
        first = Vec(ring, g.comps[: e1.mid.rank])
        kcols.append(e1.kappa.apply(first))
    kappa = ModuleHom(E, F, kcols, check=False)
    out = Extension(F, G, E, iota, kappa)
    out._ambient_rank = P.rank
    out._ambient_gens = gens
    out._ambient_junk = junk
    out._parts = (e1, e2)
    return out


def pushforward(g, e):
    """g_* e for g: G -> G': middle term (G' + E) / (g(y), -iota(y))."""
    if not same_presentation(g.source, e.G):
        raise CertificationError("pushforward map must start at the subobject")
    ring = e.mid.ring
    Gp = g.target
    P, iGp, iE, pGp, pE = direct_sum(Gp, e.mid)
    junk = []
    for y in range(e.G.rank):
        comps = list(g.cols[y].comps) + list((-e.iota.cols[y]).comps)
        junk.append(Vec(ring, comps))
    Q = PresentedModule(ring, P.rank, P.relations + junk)
    icols = [Q.gen(i) for i in range(Gp.rank)]
    iota = ModuleHom(Gp, Q, icols, check=False)
    kcols = [Vec(ring, [ring.zero()] * e.F.rank) for _ in range(Gp.rank)]
    kcols += [e.kappa.cols[j] for j in range(e.mid.rank)]
    kappa = ModuleHom(Q, e.F, kcols, check=False)
    return Extension(e.F, Gp, Q, iota, kappa)


def pullback(f, e):
    """f^* e for f: F' -> F: middle term the fiber of F' and E over F."""
    if not same_presentation(f.target, e.F):
        raise CertificationError("pullback map must land in the quotient object")
    ring = e.mid.ring
    Fp = f.source
    P, iFp, iE, pFp, pE = direct_sum(Fp, e.mid)
    dcols = [f.cols[j] for j in range(Fp.rank)]
    dcols += [-e.kappa.cols[j] for j in range(e.mid.rank)]
    delta = ModuleHom(P, e.F, dcols, check=False)
    A, inclA = kernel(delta)
    pair_gens = list(inclA.cols)
    appended = []
    for y in range(e.G.rank):
        comps = [ring.zero()] * Fp.rank + list(e.iota.cols[y].comps)
        appended.append(Vec(ring, comps))
    gens = pair_gens + appended
    E = _present_quotient_span(ring, P.rank, gens, list(P.relations))
    icols = [unit_vec(ring, E.rank, len(pair_gens) + y) for y in range(e.G.rank)]
    iota = ModuleHom(e.G, E, icols, check=False)
    kcols = [Vec(ring, g.comps[:Fp.rank]) for g in gens]
    kappa = ModuleHom(E, Fp, kcols, check=False)
    return Extension(Fp, e.G, E, iota, kappa)


class SplitWitness:
    """Retraction data: hom s: E -> G with s o iota = unit * id_G.

    The unit is 1 whenever G is finite-dimensional (the linear path); the
    module-lifting path over an infinite-dimensional G may return a unit
    with nonzero constant term instead, which still certifies splitness
    over the localization.
    """

    def __init__(self, hom, unit):
        self.hom = hom
        self.unit = unit

    def is_exact_retraction(self):
        return self.unit == self.unit.ring.one()


def splitting(e):
    """A retraction witness for e, or None when the extension does not split."""
    if e.G.dimension() is not INFINITE:
        return _splitting_linear(e)
    return _splitting_module(e)


def is_split(e):
    return splitting(e) is not None


def _splitting_linear(e):
    ring = e.mid.ring
    fld = ring.field
    fq = e.G.finite_quotient()
    d = fq.dimension
    g = e.mid.rank
    rows = []
    rhs = []
    for rel in e.mid.relations:
        action = [fq.action_matrix(rel.comps[j]) for j in range(g)]
        for i in range(d):
            row = []
            for j in range(g):
                row.extend(action[j][i])
            rows.append(row)
            rhs.append(fld.zero)
    for y in range(e.G.rank):
        col = e.iota.cols[y]
        action = [fq.action_matrix(col.comps[j]) for j in range(g)]
        target = fq.coords(e.G.gen(y))
        for i in range(d):
            row = []
            for j in range(g):
                row.extend(action[j][i])
            rows.append(row)
            rhs.append(target[i])
    sol = solve(rows, rhs, g * d, fld)
    if sol is None:
        return None
    cols = [fq.lift(sol[j * d:(j + 1) * d]) for j in range(g)]
    s = ModuleHom(e.mid, e.G, cols)
    return SplitWitness(s, ring.one())


def _splitting_module(e):
    """Splitting over an infinite-dimensional G via module lifting."""
    from .modules import hom_space
    ring = e.mid.ring
    H = hom_space(e.mid, e.G)
    cand = H.basis if H.basis is not None else H.gen_homs
    if not cand:
        return None
    gG = e.G.rank
    flat_rank = gG * gG
    stack = []
    for h in cand:
        restricted = h.compose(e.iota)
        stack.append(_flatten_hom(restricted, flat_rank))
    junk = []
    for j in range(gG):
        for w in e.G.relations:
            comps = [ring.zero()] * flat_rank
            for i, p in enumerate(w.comps):
                comps[j * gG + i] = p
            junk.append(Vec(ring, comps))
    idflat = _flatten_hom(identity_hom(e.G), flat_rank)
    res = lift_through(idflat, stack + junk, ring, flat_rank)
    if res is None:
        return None
    unit, coeffs = res
    scols = [Vec(ring, [ring.zero()] * gG) for _ in range(e.mid.rank)]
    s = ModuleHom(e.mid, e.G, scols, check=False)
    for c, h in zip(coeffs[: len(cand)], cand):
        s = s + ModuleHom(e.mid, e.G, [col.mul_poly(c) for col in h.cols], check=False)
    return SplitWitness(s, unit)


def _flatten_hom(h, flat_rank):
    ring = h.source.ring
    gT = h.target.rank
    comps = [ring.zero()] * flat_rank
    for j, col in enumerate(h.cols):
        for i, p in enumerate(col.comps):
            comps[j * gT + i] = p
    return Vec(ring, comps)


def extensions_isomorphic(e1, e2):
    """An isomorphism of extensions E1 -> E2, or None.

    Decided by splitting the difference class; the map is then assembled
    from the retraction: phi(a) = b + iota2(s([a, b])) for any b with
    kappa2(b) = kappa1(a).
    """
    if not (same_presentation(e1.F, e2.F) and same_presentation(e1.G, e2.G)):
        raise CertificationError("extensions must share the same F and G")
    diff = baer_sum(e1, opposite(e2))
    wit = splitting(diff)
    if wit is None:
        return None
    if not wit.is_exact_retraction():
        raise CertificationError(
            "difference splits only up to a unit; no polynomial isomorphism assembled")
    s = wit.hom
    ring = e1.mid.ring
    fld = ring.field
    fqE2 = e2.mid.finite_quotient()
    fqF = e1.F.finite_quotient()
    fqG = e1.G.finite_quotient()
    fqD = diff.mid.finite_quotient()
    amb = FiniteQuotient(ring, diff._ambient_rank, diff._ambient_junk)
    # kappa2 as a linear map on coordinates
    kap2 = _coord_matrix(e2.kappa, fqE2, fqF)
    # D-staircase classes inside the ambient quotient
    dcols = []
    for comp, mono in fqD.basis:
        vec = diff._ambient_gens[comp].mul_poly(ring.monomial(mono))
        dcols.append(amb.coords(vec))
    trows = [[dcols[j][i] for j in range(len(dcols))] for i in range(amb.dimension)]
    # s as a linear map on D-coordinates
    smat_cols = []
    for comp, mono in fqD.basis:
        val = s.cols[comp].mul_poly(ring.monomial(mono))
        smat_cols.append(fqG.coords(val))
    cols = []
    for j in range(e1.mid.rank):
        target = fqF.coords(e1.kappa.cols[j])
        v = solve(kap2, target, fqE2.dimension, fld)
        assert v is not None, "kappa2 not surjective on coordinates"
        b = fqE2.lift(v)
        pair = Vec(ring, list(unit_vec(ring, e1.mid.rank, j).comps) + list(b.comps))
        d = solve(trows, amb.coords(pair), len(dcols), fld)
        assert d is not None, "fiber class missed the difference module"
        gco = [fld.zero] * fqG.dimension
        for t, c in enumerate(d):
            if not fld.is_zero(c):
                gco = [fld.add(a, fld.mul(c, bb)) for a, bb in zip(gco, smat_cols[t])]
        corr = e2.iota.apply(fqG.lift(gco))
        cols.append(b + corr)
    phi = ModuleHom(e1.mid, e2.mid, cols)
    _certify_extension_iso(e1, e2, phi)
    return phi


def _coord_matrix(hom, fq_src, fq_tgt):
    """Matrix of a hom on staircase coordinates (rows index target coords)."""
    ring = hom.source.ring
    cols = []
    for comp, mono in fq_src.basis:
        img = hom.cols[comp].mul_poly(ring.monomial(mono))
        cols.append(fq_tgt.coords(img))
    return [[cols[j][i] for j in range(len(cols))] for i in range(fq_tgt.dimension)]


def _certify_extension_iso(e1, e2, phi):
    """phi must commute with both structure maps and be bijective."""
    for y in range(e1.G.rank):
        lhs = phi.apply(e1.iota.cols[y])
        rhs = e2.iota.cols[y]
        if not e2.mid.contains_relation(lhs - rhs):
            raise CertificationError("candidate map does not extend the identity of G")
    for j in range(e1.mid.rank):
        lhs = e2.kappa.apply(phi.cols[j])
        rhs = e1.kappa.cols[j]
        if not e1.F.contains_relation(lhs - rhs):
            raise CertificationError("candidate map does not cover the identity of F")
    if not is_isomorphism(phi):
        raise CertificationError("extension map failed the isomorphism check")
