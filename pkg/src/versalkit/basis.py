"""Standard bases for ideals and submodules of free modules.

Global orders use Buchberger's algorithm with the classical division
algorithm; the local order (negdegrevlex) and the mixed elimination
orders use Mora's tangent-cone algorithm, whose weak normal form
u*p = sum q_i g_i + r has a unit u with nonzero constant term.  Pair
selection is degree-first and fully deterministic given the input order.
"""

from .orders import (is_global, mono_deg, mono_div, mono_divides, mono_lcm,
                     module_key_func)
from .poly import Poly


class _Infinite:
    """Sentinel dimension for quotients that are not finite over the field."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __eq__(self, other):
        return isinstance(other, _Infinite)

    def __hash__(self):
        return hash("INFINITE")


INFINITE = _Infinite()


class Vec:
    """Element of a free module R^rank, stored as a tuple of polynomials."""

    __slots__ = ("ring", "comps", "_leads")

    def __init__(self, ring, comps):
        self.ring = ring
        self.comps = tuple(comps)
        self._leads = {}

    @property
    def rank(self):
        return len(self.comps)

    def is_zero(self):
        return all(p.is_zero() for p in self.comps)

    def degree(self):
        degs = [p.degree() for p in self.comps if not p.is_zero()]
        return max(degs) if degs else -1

    def __add__(self, other):
        return Vec(self.ring, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        return Vec(self.ring, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return Vec(self.ring, [-a for a in self.comps])

    def scale(self, c):
        return Vec(self.ring, [p.scale(c) for p in self.comps])

    def mul_poly(self, q):
        return Vec(self.ring, [p * q for p in self.comps])

    def axpy(self, c, shift, g):
        """self - c * x^shift * g componentwise."""
        return Vec(self.ring, [a.axpy(c, shift, b) for a, b in zip(self.comps, g.comps)])

    def shifted_scaled(self, c, shift):
        """c * x^shift * self."""
        zero = self.ring.zero()
        return Vec(self.ring, [zero.axpy(self.ring.field.neg(c), shift, p) for p in self.comps])

    def __eq__(self, other):
        return isinstance(other, Vec) and self.ring == other.ring and self.comps == other.comps

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.comps) + ")"

    __repr__ = __str__


def vec_of(ring, rank, entries):
    """Vec from a {component: Poly} mapping or a full sequence."""
    if isinstance(entries, dict):
        comps = [ring.zero()] * rank
        for i, p in entries.items():
            comps[i] = p
        return Vec(ring, comps)
    return Vec(ring, list(entries))


def unit_vec(ring, rank, i, p=None):
    comps = [ring.zero()] * rank
    comps[i] = ring.one() if p is None else p
    return Vec(ring, comps)


class ModuleOrder:
    """Term-over-position module order, optionally with an elimination split."""

    __slots__ = ("ring", "rank", "split", "key", "_token")

    def __init__(self, ring, rank, split=None):
        self.ring = ring
        self.rank = rank
        self.split = split
        self.key = module_key_func(ring.order, split)
        self._token = (ring.order, split)

    def lead(self, v):
        """(component, monomial, coeff) of the largest term of v, or None."""
        cached = v._leads.get(self._token, -1)
        if cached != -1:
            return cached
        best = None
        best_key = None
        for i, p in enumerate(v.comps):
            lt = p.lead()
            if lt is None:
                continue
            k = self.key((i, lt[0]))
            if best_key is None or k > best_key:
                best_key = k
                best = (i, lt[0], lt[1])
        v._leads[self._token] = best
        return best

    def ecart(self, v):
        lt = self.lead(v)
        if lt is None:
            return 0
        return v.degree() - mono_deg(lt[1])


def spoly(f, g, mo):
    """S-vector of f and g; their leads must sit in the same component."""
    cf_comp, mf, cf = mo.lead(f)
    cg_comp, mg, cg = mo.lead(g)
    assert cf_comp == cg_comp
    lcm = mono_lcm(mf, mg)
    fld = mo.ring.field
    a = f.shifted_scaled(fld.inv(cf), mono_div(lcm, mf))
    b = g.shifted_scaled(fld.inv(cg), mono_div(lcm, mg))
    return a - b


class _Cert:
    """Tracks h = a*v - sum(q_i * basis_i) through a reduction."""

    __slots__ = ("ring", "a", "q")

    def __init__(self, ring, nbasis):
        self.ring = ring
        self.a = ring.one()
        self.q = [ring.zero()] * nbasis

    def update(self, c, shift, other):
        """Account for h -> h - c x^shift * elt where elt carries cert ``other``."""
        mono = self.ring.monomial(shift, c)
        self.a = self.a - mono * other.a
        self.q = [qa - mono * qb for qa, qb in zip(self.q, other.q)]

    def add_direct(self, c, shift, idx):
        """Account for h -> h - c x^shift * basis_idx."""
        self.q[idx] = self.q[idx] + self.ring.monomial(shift, c)


def nf_global(v, basis, mo, track=False):
    """Fully reduced normal form for global orders (unique remainder)."""
    fld = mo.ring.field
    cert = _Cert(mo.ring, len(basis)) if track else None
    if v.is_zero():
        return (v, cert.a, cert.q) if track else v
    rem = Vec(mo.ring, [mo.ring.zero()] * v.rank)
    h = v
    leads = [mo.lead(g) for g in basis]
    while not h.is_zero():
        comp, mono, coeff = mo.lead(h)
        hit = None
        for i, lt in enumerate(leads):
            if lt is not None and lt[0] == comp and mono_divides(lt[1], mono):
                hit = i
                break
        if hit is None:
            piece = unit_vec(mo.ring, v.rank, comp, mo.ring.monomial(mono, coeff))
            rem = rem + piece
            h = h - piece
        else:
            c = fld.div(coeff, leads[hit][2])
            shift = mono_div(mono, leads[hit][1])
            h = h.axpy(c, shift, basis[hit])
            if track:
                cert.add_direct(c, shift, hit)
    if track:
        return rem, cert.a, cert.q
    return rem


def nf_mora(v, basis, mo, track=False):
    """Mora weak normal form: u*v = sum q_i basis_i + r with u a unit.

    The remainder's lead is not divisible by any basis lead; tails are
    left untouched (weak form), which is all membership tests need.
    """
    fld = mo.ring.field
    if v.is_zero():
        cert = _Cert(mo.ring, len(basis)) if track else None
        return (v, cert.a, cert.q) if track else v
    pool = list(basis)
    certs = [None] * len(basis) if track else None
    cert_h = _Cert(mo.ring, len(basis)) if track else None
    h = v
    while not h.is_zero():
        lt = mo.lead(h)
        comp, mono, coeff = lt
        best = None
        best_ec = None
        for i, g in enumerate(pool):
            glt = mo.lead(g)
            if glt[0] == comp and mono_divides(glt[1], mono):
                ec = mo.ecart(g)
                if best is None or ec < best_ec:
                    best = i
                    best_ec = ec
        if best is None:
            break
        if best_ec > mo.ecart(h):
            pool.append(h)
            if track:
                snap = _Cert(mo.ring, len(basis))
                snap.a = cert_h.a
                snap.q = list(cert_h.q)
                certs.append(snap)
        g = pool[best]
        glt = mo.lead(g)
        c = fld.div(coeff, glt[2])
        shift = mono_div(mono, glt[1])
        h = h.axpy(c, shift, g)
        if track:
            if best < len(basis):
                cert_h.add_direct(c, shift, best)
            else:
                cert_h.update(c, shift, certs[best])
    if track:
        return h, cert_h.a, cert_h.q
    return h


def normal_form_vec(v, basis, mo, track=False):
    if is_global(mo.ring.order) and mo.split is None:
        return nf_global(v, basis, mo, track)
    return nf_mora(v, basis, mo, track)


def _is_single_term(v):
    n = 0
    for p in v.comps:
        n += len(p.terms)
        if n > 1:
            return False
    return n == 1


def _pairs_for(G, mo, new_index):
    out = []
    j = new_index
    lj = mo.lead(G[j])
    single_j = _is_single_term(G[j])
    for i in range(j):
        li = mo.lead(G[i])
        if li[0] != lj[0]:
            continue
        # the S-vector of two terms cancels identically
        if single_j and _is_single_term(G[i]):
            continue
        # product criterion: valid for ring elements (rank-1 leads in comp 0)
        if mo.rank == 1 and all(a == 0 or b == 0 for a, b in zip(li[1], lj[1])):
            continue
        lcm = mono_lcm(li[1], lj[1])
        out.append((mono_deg(lcm), mo.ring.key(lcm), i, j))
    return out


def std_basis(gens, mo, track=False):
    """Standard basis of the submodule generated by ``gens`` under ``mo``.

    With ``track=True`` also returns, per basis element, its expression as
    a combination of the original generators (a list of Vec in R^len(gens)).
    """
    ring = mo.ring
    fld = ring.field
    G = []
    reps = [] if track else None
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        c = mo.lead(g)[2]
        G.append(g.scale(fld.inv(c)))
        if track:
            reps.append(unit_vec(ring, len(gens), i, ring.const(fld.inv(c))))
    pairs = []
    for j in range(len(G)):
        pairs.extend(_pairs_for(G, mo, j))
    pairs.sort()
    while pairs:
        _, _, i, j = pairs.pop(0)
        s = spoly(G[i], G[j], mo)
        if track:
            li = mo.lead(G[i])
            lj = mo.lead(G[j])
            lcm = mono_lcm(li[1], lj[1])
            rep_s = (reps[i].shifted_scaled(fld.inv(li[2]), mono_div(lcm, li[1]))
                     - reps[j].shifted_scaled(fld.inv(lj[2]), mono_div(lcm, lj[1])))
            r, a, q = normal_form_vec(s, G, mo, track=True)
            if r.is_zero():
                continue
            rep_r = rep_s.mul_poly(a)
            for qi, rg in zip(q, reps):
                rep_r = rep_r - rg.mul_poly(qi)
            c = mo.lead(r)[2]
            G.append(r.scale(fld.inv(c)))
            reps.append(rep_r.scale(fld.inv(c)))
        else:
            r = normal_form_vec(s, G, mo)
            if r.is_zero():
                continue
            G.append(r.scale(fld.inv(mo.lead(r)[2])))
        pairs.extend(_pairs_for(G, mo, len(G) - 1))
        pairs.sort()
    if track:
        return G, reps
    return G


def _minimalize(G, mo):
    """Drop elements whose lead is divisible by another element's lead."""
    keep = []
    leads = [mo.lead(g) for g in G]
    for i, g in enumerate(G):
        li = leads[i]
        redundant = False
        for j in range(len(G)):
            if i == j:
                continue
            lj = leads[j]
            if lj[0] == li[0] and mono_divides(lj[1], li[1]):
                if mono_divides(li[1], lj[1]) and j > i:
                    continue  # equal leads: keep the earlier one
                redundant = True
                break
        if not redundant:
            keep.append(g)
    return keep


class StandardBasis:
    """A completed (and for global orders, reduced) standard basis."""

    __slots__ = ("mo", "elements", "is_reduced")

    def __init__(self, gens, ring, rank, reduce=True):
        self.mo = ModuleOrder(ring, rank)
        G = std_basis(list(gens), self.mo)
        G = _minimalize(G, self.mo)
        self.is_reduced = False
        if reduce and is_global(ring.order):
            # tail-reduce to the unique reduced basis
            changed = True
            while changed:
                changed = False
                for i in range(len(G)):
                    others = G[:i] + G[i + 1:]
                    r = nf_global(G[i], others, self.mo) if others else G[i]
                    r = r.scale(ring.field.inv(self.mo.lead(r)[2])) if not r.is_zero() else r
                    if not (r == G[i]):
                        G[i] = r
                        changed = True
            self.is_reduced = True
        key = self.mo.key
        G.sort(key=lambda g: key(self.mo.lead(g)[:2]), reverse=True)
        self.elements = G

    @property
    def ring(self):
        return self.mo.ring

    @property
    def rank(self):
        return self.mo.rank

    def nf(self, v, track=False):
        return normal_form_vec(v, self.elements, self.mo, track)

    def contains(self, v):
        return self.nf(v).is_zero()

    def lead_terms(self):
        return [self.mo.lead(g)[:2] for g in self.elements]

    def staircase(self):
        return staircase_of_leads(self.lead_terms(), self.rank, self.ring)


class Staircase:
    """Monomial basis of R^rank / submodule, read off from lead terms."""

    __slots__ = ("finite", "monomials", "rank", "ring", "bounds")

    def __init__(self, finite, monomials, rank, ring, bounds):
        self.finite = finite
        self.monomials = monomials  # list of (component, exponents) or None
        self.rank = rank
        self.ring = ring
        self.bounds = bounds  # per-component pure-power caps, or None

    @property
    def dimension(self):
        if not self.finite:
            return INFINITE
        return len(self.monomials)

    def truncation_degree(self):
        """D with every monomial of degree >= D divisible by some lead."""
        if not self.finite:
            raise ValueError("infinite staircase has no truncation degree")
        if not self.monomials:
            return 0
        return 1 + max(mono_deg(e) for _, e in self.monomials)


def staircase_of_leads(leads, rank, ring):
    """Standard monomials per component below the given lead terms."""
    n = ring.nvars
    per_comp = [[] for _ in range(rank)]
    for comp, mono in leads:
        per_comp[comp].append(mono)
    bounds = []
    finite = True
    for comp in range(rank):
        cap = [None] * n
        for mono in per_comp[comp]:
            nz = [i for i, e in enumerate(mono) if e]
            if len(nz) == 0:
                cap = [0] * n  # unit lead: component dies
                break
            if len(nz) == 1:
                i = nz[0]
                if cap[i] is None or mono[i] < cap[i]:
                    cap[i] = mono[i]
        if any(c is None for c in cap):
            finite = False
            bounds.append(None)
        else:
            bounds.append(tuple(cap))
    if not finite:
        return Staircase(False, None, rank, ring, bounds)
    monos = []
    for comp in range(rank):
        cap = bounds[comp]
        leads = per_comp[comp]
        n = len(cap)
        # grow exponents one trailing slot at a time; a divisible monomial
        # stays divisible under every extension, so its branch is pruned
        stack = [(0,) * n]
        while stack:
            e = stack.pop()
            if any(mono_divides(m, e) for m in leads):
                continue
            monos.append((comp, e))
            last = 0
            for k in range(n - 1, -1, -1):
                if e[k]:
                    last = k
                    break
            for i in range(last, n):
                if e[i] + 1 < cap[i]:
                    stack.append(e[:i] + (e[i] + 1,) + e[i + 1:])
    monos.sort(key=lambda t: (mono_deg(t[1]), t[1], t[0]))
    return Staircase(True, monos, rank, ring, bounds)


def syzygies(vecs, ring, rank):
    """Generators of the syzygy module {a : sum a_i vecs_i = 0} in R^len(vecs).

    Computed from a standard basis in R^(rank+m) under an elimination order
    with the original components dominant; every returned generator is
    verified by exact substitution.
    """
    m = len(vecs)
    big = rank + m
    emb = []
    for i, v in enumerate(vecs):
        comps = list(v.comps) + [ring.zero()] * m
        comps[rank + i] = ring.one()
        emb.append(Vec(ring, comps))
    mo = ModuleOrder(ring, big, split=rank)
    G = std_basis(emb, mo)
    out = []
    for g in G:
        if all(p.is_zero() for p in g.comps[:rank]):
            s = Vec(ring, g.comps[rank:])
            if not s.is_zero():
                out.append(s)
    for s in out:
        acc = Vec(ring, [ring.zero()] * rank)
        for coeff, v in zip(s.comps, vecs):
            acc = acc + v.mul_poly(coeff)
        assert acc.is_zero(), "syzygy verification failed"
    return out


class LiftSolver:
    """Tracked standard basis prepared once, used to express many vectors.

    The tracked completion is the expensive part; reuse it when several
    members of the same submodule need explicit combinations.
    """

    __slots__ = ("ring", "rank", "gens", "mo", "_nonzero", "_G", "_reps")

    def __init__(self, gens, ring, rank):
        self.ring = ring
        self.rank = rank
        self.gens = list(gens)
        self.mo = ModuleOrder(ring, rank)
        self._nonzero = [(i, g) for i, g in enumerate(self.gens) if not g.is_zero()]
        self._G, self._reps = std_basis([g for _, g in self._nonzero], self.mo,
                                        track=True)

    def express(self, v):
        """(unit, coeffs) with unit * v = sum coeffs_i gens_i, or None."""
        ring = self.ring
        r, a, q = normal_form_vec(v, self._G, self.mo, track=True)
        if not r.is_zero():
            return None
        coeffs = [ring.zero()] * len(self.gens)
        for qi, rep in zip(q, self._reps):
            if qi.is_zero():
                continue
            for slot, (orig_idx, _) in enumerate(self._nonzero):
                coeffs[orig_idx] = coeffs[orig_idx] + qi * rep.comps[slot]
        # a * v = sum q_i G_i = sum coeffs_j gens_j
        check = Vec(ring, [ring.zero()] * self.rank)
        for c, g in zip(coeffs, self.gens):
            check = check + g.mul_poly(c)
        assert check == v.mul_poly(a), "lift verification failed"
        return a, coeffs

    def contains(self, v):
        return normal_form_vec(v, self._G, self.mo).is_zero()


def lift_through(v, gens, ring, rank):
    """Express v in the submodule spanned by ``gens``.

    Returns (unit, coeffs) with unit * v = sum coeffs_i gens_i exactly
    (unit == 1 under global orders), or None when v is not a member.
    """
    return LiftSolver(gens, ring, rank).express(v)


# -- ideal-level convenience -------------------------------------------------


class Ideal:
    """Ideal with cached standard-basis data."""

    __slots__ = ("ring", "gens", "_sb")

    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = [g for g in gens]
        self._sb = None

    def std(self):
        if self._sb is None:
            vecs = [Vec(self.ring, (g,)) for g in self.gens if not g.is_zero()]
            self._sb = StandardBasis(vecs, self.ring, 1)
        return self._sb

    def nf(self, p):
        r = self.std().nf(Vec(self.ring, (p,)))
        return r.comps[0]

    def contains(self, p):
        return self.nf(p).is_zero()

    def staircase(self):
        return self.std().staircase()

    def dimension(self):
        return self.staircase().dimension

    def basis_polys(self):
        return [v.comps[0] for v in self.std().elements]
