"""Miniversal deformations: the family F + sum(t_i * G_i), its
Kodaira-Spencer matrix, order-by-order lifting, the vanishing first
obstruction, and finite-order versality certificates."""

from math import comb

from .artinian import (SmallExtensionStep, filtration, make_truncation,
                       monomials_of_degree)
from .basis import Ideal, Vec
from .deformation import (EmbeddedLifting, canonical_coefficients, certify_flat,
                          check_flatness, e_class, mixed_ring, trivial_lifting,
                          x_coefficients)
from .modules import CertificationError


class DeformationFamily(EmbeddedLifting):
    """An embedded lifting remembered together with its flatness certificates."""

    def __init__(self, base, reference, members, certificates=None):
        super().__init__(base, reference, members)
        self.flat_certificates = list(certificates) if certificates else []

    @property
    def t_names(self):
        return self.base.ring.vars


class KodairaSpencerMatrix:
    """tau x r matrix: column j holds the T1 coordinates of dG/dt_j at 0."""

    def __init__(self, matrix, row_basis, col_names):
        self.matrix = [list(r) for r in matrix]
        self.row_basis = row_basis
        self.col_names = col_names

    def is_identity(self):
        if len(self.matrix) != len(self.col_names):
            return False
        for i, row in enumerate(self.matrix):
            for j, v in enumerate(row):
                want = 1 if i == j else 0
                if v != want:
                    return False
        return True

    def is_zero(self):
        return all(v == 0 for row in self.matrix for v in row)

    def __repr__(self):
        return "KodairaSpencerMatrix(%s)" % self.matrix


class VersalResult:
    def __init__(self, tau, basis, family, base_relations, ks):
        self.tau = tau
        self.basis = basis
        self.family = family
        self.base_relations = base_relations
        self.ks = ks

    def __repr__(self):
        return "VersalResult(tau=%d)" % self.tau


def _parameter_names(sing, count, prefix):
    taken = set(sing.ring.vars)
    while any(("%s%d" % (prefix, i + 1)) in taken for i in range(count)):
        prefix = prefix + "_"
    return tuple("%s%d" % (prefix, i + 1) for i in range(count))


def miniversal(sing, order=3, prefix="t"):
    """F + t1*G1 + ... + t_tau*G_tau over the order-truncated parameter ring."""
    cached = sing._mini_cache.get((order, prefix))
    if cached is not None:
        return cached
    sing.certify_regular_sequence()
    t1 = sing.tangent_module(1)
    tau = t1.dimension
    names = _parameter_names(sing, tau, prefix)
    base = make_truncation(sing.ring.field, names, order)
    mixed = mixed_ring(base, sing.ring)
    members = []
    for j in range(sing.c):
        g = sing.equations[j].map_ring(mixed)
        for i, vec in enumerate(t1.basis):
            g = g + mixed.var(names[i]) * vec.comps[j].map_ring(mixed)
        members.append(g)
    family = DeformationFamily(base, sing, members)
    certs = certify_flat(family, filtration(base))
    if not all(c.ok for c in certs):
        raise CertificationError("miniversal family failed its own flatness check")
    family.flat_certificates = certs
    ks = kodaira_spencer(family)
    if not ks.is_identity():
        raise CertificationError("Kodaira-Spencer matrix of the miniversal family "
                                 "is not the identity")
    result = VersalResult(tau, t1.basis, family, Ideal(base.ring, []), ks)
    sing._mini_cache[(order, prefix)] = result
    return result


def kodaira_spencer(family):
    """T1 coordinates of the first-order part, via the e-class at order 1."""
    base = family.base
    sing = family.reference
    fq = sing.t1_quotient()
    tau = fq.dimension
    r = base.ring.nvars
    if r == 0 or base.order == 0:
        return KodairaSpencerMatrix([[0] * r for _ in range(tau)],
                                    fq.basis, base.ring.vars)
    step1 = filtration(base)[0]
    l1 = family.restrict(step1.total)
    cert = check_flatness(l1, step1, want_combinations=False)
    if not cert.ok:
        raise CertificationError("family is not flat at order 1: %r" % (cert.failing,))
    l0 = trivial_lifting(step1.total, sing)
    cls = e_class(l1, l0, step1)
    matrix = [[base.ring.field.zero] * r for _ in range(tau)]
    for qpoly, row in zip(cls.q_basis, cls.rows):
        (exps, _c), = qpoly.terms.items()
        j = exps.index(1)
        for i in range(tau):
            matrix[i][j] = row[i]
    return KodairaSpencerMatrix(matrix, fq.basis, base.ring.vars)


def _is_full_truncation(base):
    r = base.ring.nvars
    return base.dimension == comb(r + base.order, r)


def lift_to_next_order(family, target_order):
    """Re-certify the polynomial family over the next truncation(s)."""
    if target_order <= family.base.order:
        raise ValueError("target order must exceed the current order")
    if not _is_full_truncation(family.base):
        raise ValueError("order lifting applies to power-series truncations")
    sing = family.reference
    out = family
    while out.base.order < target_order:
        base = make_truncation(sing.ring.field, out.base.ring.vars, out.base.order + 1)
        lifted = DeformationFamily(base, sing, family.members,
                                   certificates=out.flat_certificates)
        top = filtration(base)[-1]
        cert = check_flatness(lifted, top)
        if not cert.ok:
            raise CertificationError(
                "internal-consistency failure: obstruction met at order %d, syzygy %r"
                % (base.order, cert.failing))
        lifted.flat_certificates = out.flat_certificates + [cert]
        out = lifted
    return out


class FirstObstruction:
    """The quadratic obstruction map, identically zero, with its certificate."""

    def __init__(self, tau, certificate):
        self.tau = tau
        self.pairs = [(i, j) for i in range(tau) for j in range(i, tau)]
        self.certificate = certificate

    def is_zero(self):
        return True

    def entries(self):
        return {pair: 0 for pair in self.pairs}

    def __repr__(self):
        return "FirstObstruction(tau=%d, zero map, %d pairs)" % (self.tau, len(self.pairs))


def first_obstruction(sing, prefix="t"):
    """Lift the first-order miniversal family to second order; the zero map."""
    v1 = miniversal(sing, order=1, prefix=prefix)
    lifted = lift_to_next_order(v1.family, 2)
    return FirstObstruction(v1.tau, lifted)


class VersalityStep:
    def __init__(self, k, e_before, update, junk_degrees):
        self.k = k
        self.e_before = e_before          # q-indexed T1 rows before adjusting
        self.update = update              # t1-basis coordinates added to beta
        self.junk_degrees = junk_degrees  # degrees of truncation residuals

    def __repr__(self):
        return "VersalityStep(k=%d)" % self.k


class VersalityReport:
    def __init__(self, ok, substitution, steps, order):
        self.ok = ok
        self.substitution = substitution  # t-name -> Poly in the trial parameters
        self.steps = steps
        self.order = order

    def substitution_strings(self):
        return {k: str(v) for k, v in self.substitution.items()}

    def __repr__(self):
        subs = ", ".join("%s -> %s" % kv for kv in sorted(self.substitution.items()))
        return "VersalityReport(ok=%s, %s)" % (self.ok, subs)


def _t1_relation_kinds(sing):
    """Classify each nonzero T1 relation as a Jacobian column or an F-block."""
    kinds = []
    n = sing.ring.nvars
    idx = 0
    for j in range(n):
        rel = sing.jacobian_columns()[j]
        if not rel.is_zero():
            kinds.append(("jac", j))
        idx += 1
    for l in range(sing.c):
        for comp in range(sing.c):
            if not sing.equations[l].is_zero():
                kinds.append(("block", l, comp))
    return kinds


def verify_versality_order(sing, trial, order=3):
    """Build t -> m_trial with the pulled-back miniversal matching the trial.

    Degree by degree: the degree-k mismatch is killed by adjusting the
    substitution (its e-class is exactly the needed T1 coordinate change),
    and what remains is removed by an explicit isomorphism — a coordinate
    change along the Jacobian columns and a unit matrix from the F-blocks —
    leaving only a residual supported in degrees where T1 classes vanish.
    """
    mini = miniversal(sing, order=max(order, trial.base.order))
    fq = sing.t1_quotient()
    kinds = _t1_relation_kinds(sing)
    assert len(kinds) == len(fq.relations)
    base = trial.base
    tring = base.ring
    fld = tring.field
    mixed = trial.mixed
    nt = base.ring.nvars
    nx = sing.ring.nvars
    c = sing.c
    depth = min(order, base.order)
    steps = filtration(base)[:depth]
    names = mini.family.t_names
    beta = {nm: tring.zero() for nm in names}

    def pulled_members():
        imgs = {nm: beta[nm].map_ring(mixed) for nm in names}
        return [canonical_coefficients(g.substitute(imgs), base, nt)
                for g in mini.family.members]

    def slice_pairs(diffs, step, k):
        """Split the degree-k layer of each difference over the q-basis."""
        tables = []
        for d in diffs:
            tab = {}
            for xe, tt in x_coefficients(d, nt).items():
                layer = {te: cf for te, cf in tt.items() if sum(te) == k}
                low = [te for te in tt if sum(te) < k]
                if low:
                    raise CertificationError("difference survives below degree %d" % k)
                if layer:
                    tab[xe] = step.q_coords(tring.from_terms(layer))
            tables.append(tab)
        pairs = []
        for b in range(step.q_dimension):
            comps = []
            for tab in tables:
                terms = {xe: co[b] for xe, co in tab.items() if not fld.is_zero(co[b])}
                comps.append(sing.ring.from_terms(terms))
            pairs.append((step.q_basis[b], Vec(sing.ring, comps)))
        return pairs

    current = list(trial.members)
    junk = [mixed.zero() for _ in range(c)]
    reports = []
    for k in range(1, depth + 1):
        step = steps[k - 1]
        P = pulled_members()
        diffs = [canonical_coefficients(e - p - j, base, nt)
                 for e, p, j in zip(current, P, junk)]
        pairs = slice_pairs(diffs, step, k)
        e_before = [tuple(fq.coords(vec)) for _, vec in pairs]
        update = {}
        if any(not fld.is_zero(v) for row in e_before for v in row):
            for (qpoly, _vec), row in zip(pairs, e_before):
                for i, v in enumerate(row):
                    if not fld.is_zero(v):
                        beta[names[i]] = beta[names[i]] + qpoly.scale(v)
                        update.setdefault(names[i], []).append((qpoly, v))
            P = pulled_members()
            diffs = [canonical_coefficients(e - p - j, base, nt)
                     for e, p, j in zip(current, P, junk)]
            pairs = slice_pairs(diffs, step, k)
            if any(not fld.is_zero(v) for _, vec in pairs for v in fq.coords(vec)):
                raise CertificationError(
                    "substitution update failed to kill the order-%d class" % k)
        # transport: realize the now-trivial mismatch by an explicit isomorphism
        shift = {sing.ring.vars[j]: mixed.var(sing.ring.vars[j]) for j in range(nx)}
        mq = [[mixed.zero() for _ in range(c)] for _ in range(c)]
        junk_degrees = []
        for qpoly, vec in pairs:
            coords, combo, residual = fq.express(vec)
            assert all(fld.is_zero(v) for v in coords)
            qm = qpoly.map_ring(mixed)
            for rel_coeff, kind in zip(combo, kinds):
                if rel_coeff.is_zero():
                    continue
                if kind[0] == "jac":
                    j = kind[1]
                    name = sing.ring.vars[j]
                    shift[name] = shift[name] - qm * rel_coeff.map_ring(mixed)
                else:
                    _, l, comp = kind
                    mq[comp][l] = mq[comp][l] + qm * rel_coeff.map_ring(mixed)
            for i, p in enumerate(residual.comps):
                if not p.is_zero():
                    junk[i] = junk[i] + qm * p.map_ring(mixed)
                    junk_degrees.extend(sorted({sum(m) for m in p.terms}))
        moved = [g.substitute(shift) for g in current]
        current = []
        for i in range(c):
            g = moved[i]
            for l in range(c):
                if not mq[i][l].is_zero():
                    g = g - mq[i][l] * moved[l]
            current.append(canonical_coefficients(g, base, nt))
        after = [canonical_coefficients(e - p - j, base, nt)
                 for e, p, j in zip(current, pulled_members(), junk)]
        for d in after:
            for xe, tt in x_coefficients(d, nt).items():
                if any(sum(te) <= k for te in tt):
                    raise CertificationError("transport left a degree-%d mismatch" % k)
        reports.append(VersalityStep(k, e_before, update, junk_degrees))
    final = [canonical_coefficients(e - p - j, base, nt)
             for e, p, j in zip(current, pulled_members(), junk)]
    leftover = [d for d in final if not d.is_zero()]
    if depth >= base.order and leftover:
        raise CertificationError("versality verification left a full-order mismatch")
    substitution = {nm: base.nf(beta[nm]) for nm in names}
    return VersalityReport(True, substitution, reports, depth)
