"""Canonical coordinates in finite-dimensional quotients R^rank / N.

Under a local order the Mora remainder is only a weak normal form (it
carries a unit factor), so classes are canonicalized by exact linear
algebra instead: m^D lies in the submodule once every monomial of degree
>= D is below a lead term, hence the quotient equals the span of all
monomials of degree < D modulo the truncated relation rows.  Under a
global order the fully reduced normal form is already canonical.
"""

from .basis import StandardBasis, Vec, unit_vec
from .linalg import reduce_against, rref
from .orders import is_global, mono_deg
from .poly import Poly


class FiniteQuotient:
    """A quotient R^rank / <relations> of finite k-dimension."""

    def __init__(self, ring, rank, relations):
        self.ring = ring
        self.rank = rank
        self.relations = [r for r in relations if not r.is_zero()]
        self.sb = StandardBasis(self.relations, ring, rank)
        stair = self.sb.staircase()
        if not stair.finite:
            raise ValueError("quotient is not finite-dimensional")
        self.staircase = stair
        self.basis = stair.monomials  # list of (component, exponents)
        self._global = is_global(ring.order)
        if not self._global:
            self._build_truncated_rows()
        self._action_cache = {}

    @property
    def dimension(self):
        return len(self.basis)

    # -- construction of the truncated row space (local orders) -----------

    def _build_truncated_rows(self):
        ring = self.ring
        self.cap = self.staircase.truncation_degree()
        monos = _monomials_below(ring.nvars, self.cap)
        cells = [(c, m) for c in range(self.rank) for m in monos]
        stair_set = set(self.basis)
        order = [cell for cell in cells if cell not in stair_set]
        self._nonstair = len(order)
        order += [cell for cell in cells if cell in stair_set]
        self._cells = order
        self._cell_index = {cell: i for i, cell in enumerate(order)}
        rows = []
        self._row_sources = []
        fld = ring.field
        for ri, rel in enumerate(self.relations):
            val = min((p.valuation() for p in rel.comps if not p.is_zero()), default=None)
            if val is None:
                continue
            for shift in _monomials_below(ring.nvars, self.cap - val):
                row = [fld.zero] * len(order)
                keep = False
                for comp, poly in enumerate(rel.comps):
                    for m, c in poly.terms.items():
                        key = tuple(a + b for a, b in zip(m, shift))
                        if mono_deg(key) < self.cap:
                            idx = self._cell_index[(comp, key)]
                            row[idx] = fld.add(row[idx], c)
                            keep = True
                if keep:
                    rows.append(row)
                    self._row_sources.append((ri, shift))
        red, pivots, trans = rref(rows, len(order), fld, track=True)
        if len(pivots) != len(order) - self.dimension or any(p >= self._nonstair for p in pivots):
            raise AssertionError("staircase does not complement the relation span")
        self._rows = red
        self._pivots = pivots
        self._trans = trans

    # -- coordinates -------------------------------------------------------

    def coords(self, vec):
        """Coordinates of [vec] in the staircase basis (exact, canonical)."""
        if isinstance(vec, Poly):
            vec = Vec(self.ring, (vec,))
        fld = self.ring.field
        if self._global:
            r = self.sb.nf(vec)
            out = [fld.zero] * self.dimension
            for i, (comp, m) in enumerate(self.basis):
                c = r.comps[comp].terms.get(m)
                if c is not None:
                    out[i] = c
            return out
        row = self._vec_row(vec)
        res = reduce_against(row, self._rows, self._pivots, fld)
        assert all(fld.is_zero(res[i]) for i in range(self._nonstair)), \
            "reduction left non-staircase support"
        lookup = {cell: res[self._cell_index[cell]] for cell in self._cells[self._nonstair:]}
        return [lookup[cell] for cell in self.basis]

    def express(self, vec):
        """Split vec = combination(relations) + staircase part + residual.

        Returns (coords, combo, residual): ``combo`` is one Poly per
        relation with vec - sum(combo_i * rel_i) - lift(coords) == residual,
        and every residual term has degree >= the truncation cap (so the
        residual lies in the submodule locally but is not representable as
        a polynomial combination here).
        """
        if isinstance(vec, Poly):
            vec = Vec(self.ring, (vec,))
        if self._global:
            raise ValueError("express() is for local orders")
        fld = self.ring.field
        row = self._vec_row(vec)
        res, used = reduce_against(row, self._rows, self._pivots, fld, track=True)
        assert all(fld.is_zero(res[i]) for i in range(self._nonstair))
        combo = [self.ring.zero() for _ in self.relations]
        for i, c in enumerate(used):
            if fld.is_zero(c):
                continue
            for j, t in enumerate(self._trans[i]):
                if fld.is_zero(t):
                    continue
                ri, shift = self._row_sources[j]
                combo[ri] = combo[ri] + self.ring.monomial(shift, fld.mul(c, t))
        lookup = {cell: res[self._cell_index[cell]] for cell in self._cells[self._nonstair:]}
        coords = [lookup[cell] for cell in self.basis]
        rebuilt = self.lift(coords)
        for c, rel in zip(combo, self.relations):
            rebuilt = rebuilt + rel.mul_poly(c)
        residual = vec - rebuilt
        for p in residual.comps:
            assert all(mono_deg(m) >= self.cap for m in p.terms), "residual below cap"
        return coords, combo, residual

    def lift(self, coords):
        """The canonical representative with the given staircase coordinates."""
        comps = [self.ring.zero() for _ in range(self.rank)]
        for c, (comp, m) in zip(coords, self.basis):
            if not self.ring.field.is_zero(c):
                comps[comp] = comps[comp] + self.ring.monomial(m, c)
        return Vec(self.ring, comps)

    def is_zero_class(self, vec):
        """Membership of vec in the submodule (decided by the standard basis)."""
        if isinstance(vec, Poly):
            vec = Vec(self.ring, (vec,))
        return self.sb.contains(vec)

    def action_matrix(self, poly):
        """Matrix of multiplication by ``poly`` on staircase coordinates."""
        key = (id(poly), frozenset(poly.terms.items()))
        hit = self._action_cache.get(key)
        if hit is not None:
            return hit
        cols = []
        for comp, m in self.basis:
            vec = unit_vec(self.ring, self.rank, comp, poly * self.ring.monomial(m))
            cols.append(self.coords(vec))
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(self.dimension)]
        self._action_cache[key] = mat
        return mat

    def _vec_row(self, vec):
        fld = self.ring.field
        row = [fld.zero] * len(self._cells)
        for comp, poly in enumerate(vec.comps):
            for m, c in poly.terms.items():
                if mono_deg(m) < self.cap:
                    idx = self._cell_index[(comp, m)]
                    row[idx] = fld.add(row[idx], c)
        return row


def _monomials_below(nvars, cap):
    out = [()]
    for _ in range(nvars):
        out = [t + (v,) for t in out for v in range(cap)]
    return sorted((m for m in out if mono_deg(m) < max(cap, 0)),
                  key=lambda m: (mono_deg(m), m))
