"""Finitely presented modules, certified homs, Hom spaces and Ext dimensions.

A module is the cokernel of its presentation: rank many generators and a
list of relation columns in the free cover.  Every hom is certified to be
compatible with the presentations at construction time.
"""

from .basis import (INFINITE, StandardBasis, Vec, lift_through, syzygies,
                    unit_vec, vec_of)
from .linalg import nullspace
from .quotient import FiniteQuotient


class CertificationError(ValueError):
    """A claimed structure failed its defining checks."""


class PresentedModule:
    """Cokernel of the relation columns inside R^rank."""

    def __init__(self, ring, rank, relations):
        self.ring = ring
        self.rank = rank
        seen = []
        for r in relations:
            if r.is_zero():
                continue  # zero columns are pruned
            if any(r == s for s in seen):
                continue
            seen.append(r)
        self.relations = seen
        self._sb = None
        self._fq = None

    def rel_basis(self):
        if self._sb is None:
            self._sb = StandardBasis(self.relations, self.ring, self.rank)
        return self._sb

    def staircase(self):
        return self.rel_basis().staircase()

    def dimension(self):
        return self.staircase().dimension

    def finite_quotient(self):
        if self._fq is None:
            self._fq = FiniteQuotient(self.ring, self.rank, self.relations)
        return self._fq

    def contains_relation(self, vec):
        if not self.relations:
            return vec.is_zero()
        return self.rel_basis().contains(vec)

    def is_zero_module(self):
        return all(
            self.contains_relation(unit_vec(self.ring, self.rank, i))
            for i in range(self.rank)
        )

    def gen(self, i):
        return unit_vec(self.ring, self.rank, i)

    def elements_equal(self, a, b):
        return self.contains_relation(a - b)

    def __repr__(self):
        return "PresentedModule(rank=%d, %d relations)" % (self.rank, len(self.relations))


def free_module(ring, rank):
    return PresentedModule(ring, rank, [])


class ModuleHom:
    """Hom of presented modules, given by images of the source generators."""

    def __init__(self, source, target, cols, check=True):
        assert source.ring == target.ring
        self.source = source
        self.target = target
        self.cols = list(cols)
        assert len(self.cols) == source.rank
        if check:
            self.certify()

    def certify(self):
        """Images of source relations must fall into the target relations."""
        for r in self.source.relations:
            img = self.apply(r)
            if not self.target.contains_relation(img):
                raise CertificationError(
                    "matrix does not respect the presentations: relation %s" % (r,))

    def apply(self, vec):
        out = Vec(self.target.ring, [self.target.ring.zero()] * self.target.rank)
        for c, col in zip(vec.comps, self.cols):
            if not c.is_zero():
                out = out + col.mul_poly(c)
        return out

    def compose(self, other):
        """self o other."""
        assert other.target is self.source or other.target.rank == self.source.rank
        return ModuleHom(other.source, self.target,
                         [self.apply(c) for c in other.cols], check=False)

    def __add__(self, other):
        return ModuleHom(self.source, self.target,
                         [a + b for a, b in zip(self.cols, other.cols)], check=False)

    def __sub__(self, other):
        return ModuleHom(self.source, self.target,
                         [a - b for a, b in zip(self.cols, other.cols)], check=False)

    def __neg__(self):
        return ModuleHom(self.source, self.target, [-c for c in self.cols], check=False)

    def is_zero_hom(self):
        return all(self.target.contains_relation(c) for c in self.cols)

    def __repr__(self):
        return "ModuleHom(%d -> %d gens)" % (self.source.rank, self.target.rank)


def identity_hom(M):
    return ModuleHom(M, M, [M.gen(i) for i in range(M.rank)], check=False)


def zero_hom(M, N):
    return ModuleHom(M, N, [Vec(M.ring, [M.ring.zero()] * N.rank)] * M.rank, check=False)


def kernel(hom):
    """(K, incl) with K -> source the kernel of the hom."""
    ring = hom.source.ring
    stack = hom.cols + hom.target.relations
    syz = syzygies(stack, ring, hom.target.rank)
    gens = []
    for s in syz:
        v = Vec(ring, s.comps[: hom.source.rank])
        if not v.is_zero() and not any(v == g for g in gens):
            gens.append(v)
    K = cokernel_of_elements(hom.source, gens)
    incl = ModuleHom(K, hom.source, gens, check=False)
    return K, incl


def cokernel_of_elements(M, gens):
    """Present the submodule of M generated by ``gens`` on those generators."""
    ring = M.ring
    if not gens:
        return PresentedModule(ring, 0, [])
    syz = syzygies(list(gens) + M.relations, ring, M.rank)
    rels = [Vec(ring, s.comps[: len(gens)]) for s in syz]
    return PresentedModule(ring, len(gens), rels)


def submodule(M, gens):
    S = cokernel_of_elements(M, gens)
    return S, ModuleHom(S, M, list(gens), check=False)


def quotient_by(M, elems):
    Q = PresentedModule(M.ring, M.rank, M.relations + list(elems))
    proj = ModuleHom(M, Q, [Q.gen(i) for i in range(M.rank)], check=False)
    return Q, proj


def direct_sum(M, N):
    ring = M.ring
    rank = M.rank + N.rank
    rels = []
    for r in M.relations:
        rels.append(Vec(ring, list(r.comps) + [ring.zero()] * N.rank))
    for r in N.relations:
        rels.append(Vec(ring, [ring.zero()] * M.rank + list(r.comps)))
    P = PresentedModule(ring, rank, rels)
    iM = ModuleHom(M, P, [P.gen(i) for i in range(M.rank)], check=False)
    iN = ModuleHom(N, P, [P.gen(M.rank + i) for i in range(N.rank)], check=False)
    pM = ModuleHom(P, M, [M.gen(i) for i in range(M.rank)]
                   + [Vec(ring, [ring.zero()] * M.rank)] * N.rank, check=False)
    pN = ModuleHom(P, N, [Vec(ring, [ring.zero()] * N.rank)] * M.rank
                   + [N.gen(i) for i in range(N.rank)], check=False)
    return P, iM, iN, pM, pN


class HomSpace:
    """Hom(M, N) as a k-vector space or, failing finiteness, a presentation."""

    def __init__(self, M, N, dimension, basis=None, presentation=None, gen_homs=None):
        self.source = M
        self.target = N
        self.dimension = dimension
        self.basis = basis
        self.presentation = presentation
        self.gen_homs = gen_homs


def hom_space(M, N):
    """Compute Hom(M, N); k-basis when N (or the Hom module) is finite."""
    if N.dimension() is not INFINITE:
        return _hom_space_finite(M, N)
    return _hom_space_presented(M, N)


def _hom_space_finite(M, N):
    ring = M.ring
    fld = ring.field
    fq = N.finite_quotient()
    d = fq.dimension
    g = M.rank
    if g == 0 or d == 0:
        return HomSpace(M, N, 0, basis=[])
    rows = []
    for rel in M.relations:
        action = [fq.action_matrix(rel.comps[j]) for j in range(g)]
        for i in range(d):
            row = []
            for j in range(g):
                row.extend(action[j][i])
            rows.append(row)
    if rows:
        sols = nullspace(rows, g * d, fld)
    else:
        sols = [[fld.one if k == t else fld.zero for k in range(g * d)] for t in range(g * d)]
    homs = []
    for s in sols:
        cols = [fq.lift(s[j * d:(j + 1) * d]) for j in range(g)]
        homs.append(ModuleHom(M, N, cols))
    return HomSpace(M, N, len(homs), basis=homs)


def _hom_space_presented(M, N):
    ring = M.ring
    gN, gM = N.rank, M.rank
    nrel = len(M.relations)
    flat_rank = gN * gM
    if nrel == 0:
        # every matrix is a hom
        P = PresentedModule(ring, flat_rank,
                            [_flat_block(ring, gN, gM, j, w) for j in range(gM)
                             for w in N.relations])
        gens = [unit_vec(ring, flat_rank, i) for i in range(flat_rank)]
        return _package_hom_presentation(M, N, P, gens)
    big = _stacked_copies(N, nrel)
    cols = []
    for j in range(gM):
        for i in range(gN):
            comps = [ring.zero()] * big.rank
            for t, rel in enumerate(M.relations):
                comps[t * gN + i] = rel.comps[j]
            cols.append(Vec(ring, comps))
    src = free_module(ring, flat_rank)
    cond = ModuleHom(src, big, cols, check=False)
    K, incl = kernel(cond)
    # quotient by matrices whose columns already lie in the target relations
    junk = [_flat_block(ring, gN, gM, j, w) for j in range(gM) for w in N.relations]
    gens = incl.cols
    P = _present_quotient_span(ring, flat_rank, gens, junk)
    return _package_hom_presentation(M, N, P, gens)


def _stacked_copies(N, copies):
    """N^copies as a presented module with block-diagonal relations."""
    ring = N.ring
    rels = []
    rank = N.rank * copies
    for t in range(copies):
        for r in N.relations:
            comps = [ring.zero()] * rank
            for i, p in enumerate(r.comps):
                comps[t * N.rank + i] = p
            rels.append(Vec(ring, comps))
    return PresentedModule(ring, rank, rels)


def _flat_block(ring, gN, gM, block, w):
    comps = [ring.zero()] * (gN * gM)
    for i, p in enumerate(w.comps):
        comps[block * gN + i] = p
    return Vec(ring, comps)


def _present_quotient_span(ring, ambient_rank, gens, junk):
    """Present span(gens)/span(junk) on the ``gens`` (junk must be in the span)."""
    if not gens:
        return PresentedModule(ring, 0, [])
    syz = syzygies(list(gens) + list(junk), ring, ambient_rank)
    rels = [Vec(ring, s.comps[: len(gens)]) for s in syz]
    return PresentedModule(ring, len(gens), rels)


def _package_hom_presentation(M, N, P, gens):
    ring = M.ring
    gN = N.rank

    def decode(flat, scale=None):
        cols = []
        for j in range(M.rank):
            cols.append(Vec(ring, flat.comps[j * gN:(j + 1) * gN]))
        return ModuleHom(M, N, cols, check=False)

    gen_homs = [decode(g) for g in gens]
    dim = P.dimension()
    basis = None
    if dim is not INFINITE:
        basis = []
        for comp, mono in (P.staircase().monomials or []):
            flat = gens[comp].mul_poly(ring.monomial(mono))
            basis.append(decode(flat))
    return HomSpace(M, N, dim, basis=basis, presentation=P, gen_homs=gen_homs)


def is_isomorphism(hom):
    """Surjective and injective on the presented quotients."""
    tgt = hom.target
    stack = hom.cols + tgt.relations
    sb = StandardBasis(stack, tgt.ring, tgt.rank)
    for i in range(tgt.rank):
        if not sb.contains(unit_vec(tgt.ring, tgt.rank, i)):
            return False
    K, incl = kernel(hom)
    for g in incl.cols:
        if not hom.source.contains_relation(g):
            return False
    return True


def ext_module(M, N, i):
    """Ext^i(M, N) for i in {1, 2} as a presented module (use hom_space for i=0).

    Built from the free resolution ... -> R^p2 -> R^p1 -> R^g0 -> M -> 0
    obtained by iterated syzygies of the presentation.
    """
    if i not in (1, 2):
        raise ValueError("ext_module supports i in {1, 2}, got i=%d" % i)
    ring = M.ring
    d1 = list(M.relations)                            # R^p1 -> R^g0
    d2 = syzygies(d1, ring, M.rank) if d1 else []     # R^p2 -> R^p1
    if i == 1:
        return _ext_homology(N, d1, M.rank, d2, len(d1))
    d3 = syzygies(d2, ring, len(d1)) if d2 else []
    return _ext_homology(N, d2, len(d1), d3, len(d2))


def _ext_homology(N, din, p_in, dout, p_mid):
    """ker(Hom(R^p_mid,N) -> Hom(R^p_out,N)) / im(Hom(R^p_in,N) -> ...).

    ``din``: columns of the map R^p_mid -> R^p_in (gives the incoming dual map),
    ``dout``: columns of the map R^p_out -> R^p_mid (gives the outgoing dual map).
    """
    ring = N.ring
    gN = N.rank
    mid_rank = gN * p_mid
    mid_rels = []
    for t in range(p_mid):
        for r in N.relations:
            comps = [ring.zero()] * mid_rank
            for ii, p in enumerate(r.comps):
                comps[t * gN + ii] = p
            mid_rels.append(Vec(ring, comps))
    mid = PresentedModule(ring, mid_rank, mid_rels)
    if dout:
        out_rank = gN * len(dout)
        out_rels = []
        for t in range(len(dout)):
            for r in N.relations:
                comps = [ring.zero()] * out_rank
                for ii, p in enumerate(r.comps):
                    comps[t * gN + ii] = p
                out_rels.append(Vec(ring, comps))
        out_mod = PresentedModule(ring, out_rank, out_rels)
        cols = []
        for t in range(p_mid):
            for ii in range(gN):
                comps = [ring.zero()] * out_rank
                for s, col in enumerate(dout):
                    comps[s * gN + ii] = col.comps[t]
                cols.append(Vec(ring, comps))
        bmap = ModuleHom(mid, out_mod, cols, check=False)
        K, incl = kernel(bmap)
        kgens = incl.cols
    else:
        K = mid
        kgens = [mid.gen(t) for t in range(mid_rank)]
    # image generators of the incoming dual map  Hom(R^p_in, N) = N^p_in -> N^p_mid
    img = []
    for k in range(p_in):
        for ii in range(gN):
            comps = [ring.zero()] * mid_rank
            for t, col in enumerate(din):
                comps[t * gN + ii] = col.comps[k]
            v = Vec(ring, comps)
            if not v.is_zero():
                img.append(v)
    return _present_quotient_span(ring, mid_rank, kgens, img + mid.relations)


def ext_dimension(M, N, i):
    """k-dimension of Ext^i(M, N), or INFINITE."""
    if i == 0:
        return hom_space(M, N).dimension
    return ext_module(M, N, i).dimension()
