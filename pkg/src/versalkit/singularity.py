"""Invariants of an isolated complete-intersection singularity at the
origin: Jacobian data, Milnor/Tjurina algebras, and the tangent modules
T0 (vector fields), T1 (first-order deformations), T2 (obstructions)."""

from .basis import INFINITE, Ideal, StandardBasis, Vec, syzygies, unit_vec
from .modules import ModuleHom, PresentedModule, free_module, kernel
from .orders import is_global
from .quotient import FiniteQuotient


class RejectedInput(ValueError):
    """Input outside the certified scope (kept distinct from internal bugs)."""


class NotRegularSequence(RejectedInput):
    pass


class NotIsolated(RejectedInput):
    pass


class TangentData:
    """One tangent module T^level with presentation and dimension."""

    __slots__ = ("level", "presentation", "dimension", "basis", "witness")

    def __init__(self, level, presentation, dimension, basis=None, witness=None):
        self.level = level
        self.presentation = presentation
        self.dimension = dimension
        self.basis = basis
        self.witness = witness

    def __repr__(self):
        return "TangentData(level=%d, dimension=%s)" % (self.level, self.dimension)


class Singularity:
    """Equations F1..Fc in a local ring, all vanishing at the origin."""

    def __init__(self, ring, equations):
        if is_global(ring.order):
            raise ValueError("singularity invariants need a local order")
        eqs = list(equations)
        if not eqs:
            raise RejectedInput("no equations given")
        if len(eqs) > ring.nvars:
            raise RejectedInput("more equations than variables is never a regular sequence")
        for f in eqs:
            if f.is_zero():
                raise RejectedInput("zero equation is not part of a regular sequence")
            if not f.constant_coeff() == ring.field.zero:
                raise RejectedInput("equations must vanish at the origin")
        self.ring = ring
        self.equations = eqs
        self.c = len(eqs)
        self._t1_fq = None
        self._regular = None
        self._isolated = None
        self._mini_cache = {}

    # -- Jacobian data -----------------------------------------------------

    def jacobian_matrix(self):
        """Rows indexed by equations, columns by variables."""
        return [[f.partial(i) for i in range(self.ring.nvars)] for f in self.equations]

    def jacobian_columns(self):
        """The columns d/dx_i applied to all equations, as vectors in R^c."""
        return [Vec(self.ring, tuple(f.partial(i) for f in self.equations))
                for i in range(self.ring.nvars)]

    def jacobian_ideal(self):
        """Hypersurface Jacobian ideal (F together with all partials)."""
        self._require_hypersurface()
        f = self.equations[0]
        return Ideal(self.ring, [f] + [f.partial(i) for i in range(self.ring.nvars)])

    def t1_relations(self):
        """Relations presenting T1: Jacobian columns plus F times each unit."""
        rels = list(self.jacobian_columns())
        for f in self.equations:
            for j in range(self.c):
                rels.append(unit_vec(self.ring, self.c, j, f))
        return rels

    # -- certificates ------------------------------------------------------

    def certify_regular_sequence(self):
        """Every syzygy of F1..Fc must lie in the Koszul span."""
        if self._regular is not None:
            if not self._regular:
                raise NotRegularSequence("equations are not a regular sequence")
            return True
        ring = self.ring
        gens = [Vec(ring, (f,)) for f in self.equations]
        syz = syzygies(gens, ring, 1)
        koszul = []
        for i in range(self.c):
            for j in range(i + 1, self.c):
                comps = [ring.zero()] * self.c
                comps[i] = self.equations[j]
                comps[j] = -self.equations[i]
                koszul.append(Vec(ring, comps))
        if koszul:
            sb = StandardBasis(koszul, ring, self.c)
            ok = all(sb.contains(s) for s in syz)
        else:
            ok = all(s.is_zero() for s in syz)
        self._regular = ok
        if not ok:
            raise NotRegularSequence("equations are not a regular sequence")
        return True

    def certify_isolated(self):
        """True iff the first-order deformation space is finite-dimensional."""
        self.certify_regular_sequence()
        if self._isolated is None:
            stair = StandardBasis(self.t1_relations(), self.ring, self.c).staircase()
            self._isolated = stair.finite
        return self._isolated

    def _require_isolated(self):
        if not self.certify_isolated():
            raise NotIsolated("non-isolated singular locus")

    def _require_hypersurface(self):
        if self.c != 1:
            raise RejectedInput("hypersurface-only invariant")

    # -- algebras ----------------------------------------------------------

    def tjurina_algebra(self):
        """Staircase and dimension of k[x]_loc / (F, dF)."""
        self._require_hypersurface()
        stair = self.jacobian_ideal().staircase()
        if not stair.finite:
            raise NotIsolated("non-isolated singular locus")
        return stair, stair.dimension

    def tjurina_number(self):
        if self.c == 1:
            return self.tjurina_algebra()[1]
        return self.tangent_module(1).dimension

    def milnor_algebra(self):
        """Staircase and dimension of k[x]_loc / (dF) (partials only)."""
        self._require_hypersurface()
        f = self.equations[0]
        stair = Ideal(self.ring, [f.partial(i) for i in range(self.ring.nvars)]).staircase()
        if not stair.finite:
            raise NotIsolated("non-isolated singular locus")
        return stair, stair.dimension

    def milnor_number(self):
        return self.milnor_algebra()[1]

    # -- tangent modules ---------------------------------------------------

    def tangent_module(self, level):
        if level == 0:
            return self._t0()
        if level == 1:
            return self._t1()
        if level == 2:
            return self._t2()
        raise ValueError("tangent modules are defined for levels 0, 1, 2")

    def _t0(self):
        """Kernel of the transposed Jacobian on vector fields."""
        ring = self.ring
        blocks = [unit_vec(ring, self.c, j, f)
                  for f in self.equations for j in range(self.c)]
        target = PresentedModule(ring, self.c, blocks)
        theta = ModuleHom(free_module(ring, ring.nvars), target,
                          self.jacobian_columns(), check=False)
        K, incl = kernel(theta)
        witness = None
        for col in incl.cols:
            if not col.is_zero():
                witness = col
                break
        if witness is None:
            # F1 * d/dx1 always maps every equation into the ideal
            witness = unit_vec(ring, ring.nvars, 0, self.equations[0])
        return TangentData(0, K, K.dimension(), witness=witness)

    def _t1(self):
        self._require_isolated()
        P = PresentedModule(self.ring, self.c, self.t1_relations())
        stair = P.staircase()
        basis = [unit_vec(self.ring, self.c, comp, self.ring.monomial(m))
                 for comp, m in stair.monomials]
        return TangentData(1, P, stair.dimension, basis=basis)

    def _t2(self):
        """Zero module once the conormal module is certified free of rank c."""
        self.certify_regular_sequence()
        zero = PresentedModule(self.ring, 1, [unit_vec(self.ring, 1, 0)])
        return TangentData(2, zero, 0, basis=[])

    def t1_quotient(self):
        """Canonical T1 coordinates (cached FiniteQuotient)."""
        if self._t1_fq is None:
            self._require_isolated()
            self._t1_fq = FiniteQuotient(self.ring, self.c, self.t1_relations())
        return self._t1_fq

    def __repr__(self):
        return "Singularity(%s)" % ", ".join(str(f) for f in self.equations)
