"""Artinian local base algebras k[t1..tr]/J, small extensions, and the
m-adic filtration.  All arithmetic is strong normal-form arithmetic
against a degrevlex standard basis of J."""

from itertools import combinations_with_replacement

from .basis import Ideal, Vec
from .linalg import reduce_against, rref
from .orders import is_global, mono_deg
from .poly import PolyRing


def monomials_of_degree(nvars, d):
    """All exponent tuples of total degree exactly d, deterministic order."""
    if d == 0:
        return [(0,) * nvars]
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out)


class ArtinianAlgebra:
    """k[t]/J with J containing a power of the maximal ideal (certified)."""

    def __init__(self, ring, relations):
        if not is_global(ring.order):
            raise ValueError("base algebras use a global order for canonical forms")
        self.ring = ring
        self.ideal = Ideal(ring, [r for r in relations if not r.is_zero()])
        stair = self.ideal.staircase()
        if not stair.finite:
            raise ValueError("relations do not cut out a finite-dimensional algebra")
        self.monomials = [m for _, m in stair.monomials]
        if not self.monomials:
            raise ValueError("relations generate the unit ideal")
        self._index = {m: i for i, m in enumerate(self.monomials)}
        self.order = self._certify_primary()

    def _certify_primary(self):
        """Least N with m^{N+1} inside J, by strictly decreasing graded spans."""
        fld = self.ring.field
        top = max(mono_deg(m) for m in self.monomials)
        d = 1
        prev_rank = None
        while True:
            rows = []
            for e in monomials_of_degree(self.ring.nvars, d):
                row = self.coords(self.ring.monomial(e))
                if any(not fld.is_zero(c) for c in row):
                    rows.append(row)
            if not rows:
                return d - 1
            red, piv = rref(rows, len(self.monomials), fld)
            if prev_rank is not None and len(red) >= prev_rank and d > top:
                raise ValueError("maximal ideal is not nilpotent modulo the relations")
            prev_rank = len(red)
            d += 1

    @property
    def dimension(self):
        return len(self.monomials)

    def nf(self, p):
        """Canonical representative (global strong normal form)."""
        return self.ideal.nf(p)

    def is_zero(self, p):
        return self.nf(p).is_zero()

    def coords(self, p):
        fld = self.ring.field
        out = [fld.zero] * len(self.monomials)
        for m, c in self.nf(p).terms.items():
            out[self._index[m]] = c
        return out

    def from_coords(self, coords):
        p = self.ring.zero()
        for m, c in zip(self.monomials, coords):
            if not self.ring.field.is_zero(c):
                p = p + self.ring.monomial(m, c)
        return p

    def maximal_ideal_gens(self):
        return [self.ring.var(i) for i in range(self.ring.nvars)]

    def __repr__(self):
        return "ArtinianAlgebra(dim=%d, order=%d)" % (self.dimension, self.order)


def make_truncation(field, names, order):
    """k[t1..tr]/m^(order+1)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    ring = PolyRing(tuple(names), field, "degrevlex")
    rels = [ring.monomial(e) for e in monomials_of_degree(ring.nvars, order + 1)] \
        if ring.nvars else []
    return ArtinianAlgebra(ring, rels)


class SmallExtensionStep:
    """A' -> A = A'/q with m*q = 0, and a fixed k-basis of q."""

    def __init__(self, total, q_gens):
        self.total = total
        ring = total.ring
        self.ideal_q = [total.nf(q) for q in q_gens]
        self.ideal_q = [q for q in self.ideal_q if not q.is_zero()]
        for q in self.ideal_q:
            for v in total.maximal_ideal_gens():
                if not total.is_zero(v * q):
                    raise ValueError("kernel is not killed by the maximal ideal")
        self.quotient = ArtinianAlgebra(ring, total.ideal.gens + self.ideal_q)
        fld = ring.field
        rows = [total.coords(q) for q in self.ideal_q]
        red, piv = rref(rows, total.dimension, fld) if rows else ([], [])
        self._rows = red
        self._pivots = piv
        self.q_basis = [total.from_coords(r) for r in red]

    @property
    def q_dimension(self):
        return len(self.q_basis)

    def contains_q(self, p):
        fld = self.total.ring.field
        res = reduce_against(self.total.coords(p), self._rows, self._pivots, fld)
        return all(fld.is_zero(c) for c in res)

    def q_coords(self, p):
        """Coefficients of p in the chosen q-basis (p must lie in q)."""
        fld = self.total.ring.field
        res, coeffs = reduce_against(self.total.coords(p), self._rows,
                                     self._pivots, fld, track=True)
        if any(not fld.is_zero(c) for c in res):
            raise ValueError("element does not lie in the extension kernel")
        return coeffs

    def __repr__(self):
        return "SmallExtensionStep(total dim %d, q dim %d)" % (
            self.total.dimension, self.q_dimension)


def truncation_of(base, k):
    """base/m^(k+1) as an algebra on the same variables."""
    ring = base.ring
    extra = [ring.monomial(e) for e in monomials_of_degree(ring.nvars, k + 1)]
    return ArtinianAlgebra(ring, base.ideal.gens + extra)


def filtration(base):
    """Small-extension steps base/m^(k+1) -> base/m^k for k = 1..order."""
    ring = base.ring
    steps = []
    for k in range(1, base.order + 1):
        level = truncation_of(base, k)
        q_gens = [ring.monomial(e) for e in monomials_of_degree(ring.nvars, k)]
        steps.append(SmallExtensionStep(level, q_gens))
    return steps
