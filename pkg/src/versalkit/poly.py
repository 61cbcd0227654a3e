"""Sparse multivariate polynomials over an exact field."""

from . import kernel
from .field import QQ
from .orders import NEGDEGREVLEX, key_func, mono_deg

_VALID = ("degrevlex", "lex", "negdegrevlex")


class PolyRing:
    """Polynomial ring tag: variable names, coefficient field, monomial order."""

    __slots__ = ("vars", "field", "order", "_key", "_code")

    def __init__(self, variables, field=QQ, order=NEGDEGREVLEX):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names: %r" % (variables,))
        if order not in _VALID:
            raise ValueError("unknown order %r" % (order,))
        self.vars = variables
        self.field = field
        self.order = order
        self._key = key_func(order)
        self._code = kernel.ORDER_CODES[order]

    @property
    def nvars(self):
        return len(self.vars)

    def key(self, mono):
        return self._key(mono)

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * self.nvars: self.field.one})

    def const(self, c):
        c = self.field.of(c)
        if self.field.is_zero(c):
            return self.zero()
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, i):
        if isinstance(i, str):
            i = self.vars.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def monomial(self, exps, coeff=None):
        coeff = self.field.one if coeff is None else self.field.of(coeff)
        if self.field.is_zero(coeff):
            return self.zero()
        return Poly(self, {tuple(exps): coeff})

    def from_terms(self, terms):
        """Build a polynomial from a {exponents: coefficient} mapping."""
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != self.nvars:
                raise ValueError("exponent tuple %r has arity %d, expected %d"
                                 % (m, len(m), self.nvars))
            if any(not isinstance(e, int) or e < 0 for e in m):
                raise ValueError("exponents must be nonnegative integers: %r" % (m,))
            c = self.field.of(c)
            if not self.field.is_zero(c):
                clean[m] = c
        return Poly(self, clean)

    def with_order(self, order):
        if order == self.order:
            return self
        return PolyRing(self.vars, self.field, order)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.vars == other.vars
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.vars, self.field, self.order))

    def __repr__(self):
        return "PolyRing(%s, %r, %s)" % (",".join(self.vars), self.field, self.order)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lead = None

    # -- queries ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def lead(self):
        """(monomial, coeff) of the leading term under the ring order, or None."""
        if self._lead is None and self.terms:
            self._lead = kernel.lead_term(self.terms, self.ring._code)
        return self._lead

    def lead_monomial(self):
        lt = self.lead()
        return None if lt is None else lt[0]

    def lead_coeff(self):
        lt = self.lead()
        return None if lt is None else lt[1]

    def degree(self):
        """Total degree (max over terms); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(m) for m in self.terms)

    def valuation(self):
        """Minimal total degree of a term; None for the zero polynomial."""
        if not self.terms:
            return None
        return min(mono_deg(m) for m in self.terms)

    def ecart(self):
        """degree(self) - degree(lead term); the Mora reduction weight."""
        lt = self.lead()
        if lt is None:
            return 0
        return self.degree() - mono_deg(lt[0])

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def is_unit_at_origin(self):
        """True when the constant term is nonzero (unit in the local ring)."""
        return not self.ring.field.is_zero(self.constant_coeff())

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        return Poly(self.ring, kernel.add_terms(self.terms, other.terms, self.ring.field.p))

    def __sub__(self, other):
        other = self._coerce(other)
        return Poly(self.ring, kernel.sub_terms(self.terms, other.terms, self.ring.field.p))

    def __neg__(self):
        return Poly(self.ring, kernel.neg_terms(self.terms, self.ring.field.p))

    def __mul__(self, other):
        if isinstance(other, Poly):
            assert other.ring == self.ring
            return Poly(self.ring, kernel.mul_terms(self.terms, other.terms, self.ring.field.p))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __radd__(self, other):
        return self.__add__(other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __pow__(self, k):
        assert k >= 0
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c):
        c = self.ring.field.of(c)
        return Poly(self.ring, kernel.scale_terms(self.terms, c, self.ring.field.p))

    def monic(self):
        lt = self.lead()
        if lt is None:
            return self
        return self.scale(self.ring.field.inv(lt[1]))

    def axpy(self, c, shift, g):
        """self - c * x^shift * g in a single pass."""
        return Poly(self.ring, kernel.axpy_terms(self.terms, c, shift, g.terms, self.ring.field.p))

    def _coerce(self, v):
        if isinstance(v, Poly):
            assert v.ring == self.ring
            return v
        return self.ring.const(v)

    # -- calculus and substitution ----------------------------------------

    def partial(self, i):
        """Partial derivative with respect to the i-th variable."""
        if isinstance(i, str):
            i = self.ring.vars.index(i)
        fld = self.ring.field
        out = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            c2 = fld.mul(c, fld.of(m[i]))
            if fld.is_zero(c2):
                continue
            m2 = m[:i] + (m[i] - 1,) + m[i + 1:]
            out[m2] = fld.add(out.get(m2, fld.zero), c2)
        return Poly(self.ring, {m: c for m, c in out.items() if not fld.is_zero(c)})

    def substitute(self, images):
        """Evaluate with each variable replaced by ``images[var_name]`` (a Poly).

        Unlisted variables keep themselves; all images must share one ring.
        """
        target = None
        for v in images.values():
            target = v.ring
            break
        if target is None:
            target = self.ring
        table = []
        for i, name in enumerate(self.ring.vars):
            if name in images:
                table.append(images[name])
            else:
                table.append(target.var(name))
        out = target.zero()
        for m, c in self.terms.items():
            part = target.const(c)
            for i, e in enumerate(m):
                if e:
                    part = part * table[i] ** e
            out = out + part
        return out

    def map_ring(self, target):
        """Reinterpret in ``target``, matching variables by name."""
        idx = []
        for name in self.ring.vars:
            idx.append(target.vars.index(name) if name in target.vars else None)
        out = {}
        fld = target.field
        for m, c in self.terms.items():
            e = [0] * target.nvars
            for i, v in enumerate(m):
                if v:
                    if idx[i] is None:
                        raise ValueError("variable %s not present in target ring" % self.ring.vars[i])
                    e[idx[i]] = v
            c2 = fld.of(c)
            if not fld.is_zero(c2):
                key = tuple(e)
                prev = out.get(key)
                out[key] = c2 if prev is None else fld.add(prev, c2)
        return Poly(target, {m: c for m, c in out.items() if not fld.is_zero(c)})

    # -- comparisons / output ---------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return not self.terms
            other = self._coerce(other)
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.vars, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            body = "*".join(factors)
            cs = str(c)
            if body:
                if cs == "1":
                    piece = body
                elif cs == "-1":
                    piece = "-" + body
                else:
                    piece = cs + "*" + body
            else:
                piece = cs
            parts.append(piece)
        out = parts[0]
        for piece in parts[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    def __repr__(self):
        return "Poly(%s)" % self
