from random import Random

import pytest

from versalkit import (PolyRing, QQ, Singularity, check_flatness, e_class,
                       glue_over_fiber_product, liftings_isomorphic,
                       make_truncation, mixed_ring, nu_difference, parse_poly,
                       trivial_lifting)
from versalkit.artinian import ArtinianAlgebra, SmallExtensionStep, filtration
from versalkit.deformation import EmbeddedLifting, certify_flat

XY = PolyRing(("x", "y"), QQ, "negdegrevlex")


def hyper(f):
    return Singularity(XY, [parse_poly(f, XY)])


def first_order(names=("t",)):
    base = make_truncation(QQ, names, 1)
    return base, filtration(base)[0]


def lifting(base, ref, members):
    M = mixed_ring(base, ref.ring)
    return EmbeddedLifting(base, ref, [parse_poly(s, M) for s in members])


def rand_x_poly(rng, ring, nt, max_deg=3):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        xe = tuple(rng.randrange(max_deg) for _ in range(2))
        terms[(0,) * nt + xe] = QQ.of(rng.randint(-3, 3))
    return ring.from_terms({m: c for m, c in terms.items() if c})


def test_truncation_dimensions():
    assert make_truncation(QQ, ("e",), 1).dimension == 2
    assert make_truncation(QQ, (), 4).dimension == 1
    assert make_truncation(QQ, ("t", "s"), 2).dimension == 6


def test_filtration_steps():
    base = make_truncation(QQ, ("t",), 3)
    steps = filtration(base)
    assert len(steps) == 3
    # steps run from the deepest layer up to the full algebra
    assert steps[-1].total.dimension == base.dimension
    for st in steps:
        # m * q = 0 inside the step total
        for q in st.ideal_q:
            for m in st.total.maximal_ideal_gens():
                assert st.total.is_zero(m * q)


def test_hypersurface_first_order_flat():
    base, step = first_order()
    ref = hyper("x^3 + y^2")
    lift = lifting(base, ref, ["x^3 + y^2 + t*x"])
    cert = check_flatness(lift, step)
    assert cert.ok and bool(cert)


def test_koszul_lift_flat():
    base, step = first_order()
    ref = Singularity(XY, [parse_poly("x", XY), parse_poly("y", XY)])
    lift = lifting(base, ref, ["x", "y + t*x"])
    cert = check_flatness(lift, step)
    assert cert.ok
    # every generating syzygy got an explicit combination
    for syz, combo in cert.checked:
        assert combo is not None


def test_non_flat_lift_yields_offending_syzygy():
    base, step = first_order()
    ref = Singularity(XY, [parse_poly("x", XY), parse_poly("x", XY)])
    lift = lifting(base, ref, ["x", "x + t"])
    cert = check_flatness(lift, step)
    assert not cert.ok
    assert [str(c) for c in cert.failing.comps] == ["1", "-1"]


def test_flatness_invariant_under_unit_scaling():
    rng = Random(3)
    base, step = first_order()
    ref = hyper("x^3 + y^2")
    M = mixed_ring(base, XY)
    for _ in range(5):
        g = rand_x_poly(rng, M, 1)
        f = parse_poly("x^3 + y^2", M) + parse_poly("t", M) * g
        unit = M.one() + parse_poly("t", M) * rand_x_poly(rng, M, 1)
        plain = EmbeddedLifting(base, ref, [f])
        scaled = EmbeddedLifting(base, ref, [f * unit])
        assert check_flatness(plain, step).ok
        assert check_flatness(scaled, step).ok


def test_certify_flat_along_filtration():
    base = make_truncation(QQ, ("t",), 2)
    ref = hyper("x^3 + y^2")
    lift = lifting(base, ref, ["x^3 + y^2 + t*x + t^2*y"])
    certs = certify_flat(lift, filtration(base))
    assert len(certs) == 2 and all(c.ok for c in certs)


def test_nu_zero_iff_equal():
    base, step = first_order()
    ref = hyper("x^3 + y^2")
    l1 = lifting(base, ref, ["x^3 + y^2 + t*x"])
    l2 = lifting(base, ref, ["x^3 + y^2"])
    assert nu_difference(l1, l1, step).is_zero()
    assert not nu_difference(l1, l2, step).is_zero()


def test_nu_reads_off_the_perturbation():
    base = make_truncation(QQ, ("t1", "t2"), 1)
    step = filtration(base)[0]
    ref = hyper("x^3 + y^2")
    l1 = lifting(base, ref, ["x^3 + y^2 + t1 + t2*x"])
    l2 = trivial_lifting(base, ref)
    nu = nu_difference(l1, l2, step)
    pairs = {str(q): [str(c) for c in v.comps] for q, v in nu.pairs}
    assert pairs == {"t1": ["1"], "t2": ["x"]}


def test_nu_antisymmetry_and_cocycle():
    rng = Random(19)
    base, step = first_order()
    ref = hyper("x^3 + y^2")
    M = mixed_ring(base, XY)
    F = parse_poly("x^3 + y^2", M)
    t = parse_poly("t", M)
    for _ in range(10):
        lifts = [EmbeddedLifting(base, ref, [F + t * rand_x_poly(rng, M, 1)])
                 for _ in range(3)]
        l1, l2, l3 = lifts
        n12 = nu_difference(l1, l2, step)
        n21 = nu_difference(l2, l1, step)
        assert n12.negated().equals(n21)
        n23 = nu_difference(l2, l3, step)
        n13 = nu_difference(l1, l3, step)
        assert n12.plus(n23).equals(n13)


def test_nu_independent_of_relift():
    # adding q * I' elements to the members leaves nu (and e) unchanged
    rng = Random(29)
    base, step = first_order()
    ref = hyper("x^3 + y^2")
    M = mixed_ring(base, XY)
    F = parse_poly("x^3 + y^2", M)
    t = parse_poly("t", M)
    for _ in range(10):
        g = rand_x_poly(rng, M, 1)
        l1 = EmbeddedLifting(base, ref, [F + t * g])
        l2 = trivial_lifting(base, ref)
        moved = EmbeddedLifting(base, ref, [F + t * g + t * rand_x_poly(rng, M, 1) * F])
        assert nu_difference(l1, l2, step).equals(nu_difference(moved, l2, step))
        assert e_class(l1, l2, step).rows == e_class(moved, l2, step).rows


def test_e_class_examples():
    base, step = first_order()
    ref = hyper("x^3 + y^2")
    triv = trivial_lifting(base, ref)
    assert e_class(triv, triv, step).is_zero()
    # t*x^2 is a Jacobian perturbation, so the lifting is isomorphic to trivial
    assert liftings_isomorphic(lifting(base, ref, ["x^3 + y^2 + t*x^2"]), triv, step)
    # t*x hits a T1 basis element
    assert not liftings_isomorphic(lifting(base, ref, ["x^3 + y^2 + t*x"]), triv, step)


def test_e_class_identity_rows():
    base = make_truncation(QQ, ("t1", "t2"), 1)
    step = filtration(base)[0]
    ref = hyper("x^3 + y^2")
    fam = lifting(base, ref, ["x^3 + y^2 + t1 + t2*x"])
    e = e_class(fam, trivial_lifting(base, ref), step)
    rows = {str(q): list(r) for q, r in zip(e.q_basis, e.rows)}
    # T1 basis is {1, x}: each parameter hits its own coordinate
    assert rows == {"t1": [1, 0], "t2": [0, 1]}


def test_e_class_base_change():
    # restriction along s -> 0 keeps exactly the t-row
    ring2 = make_truncation(QQ, ("t", "s"), 1)
    ref = hyper("x^3 + y^2")
    l1 = lifting(ring2, ref, ["x^3 + y^2 + t*x + s*y"])
    l2 = trivial_lifting(ring2, ref)
    step2 = filtration(ring2)[0]
    full = e_class(l1, l2, step2)
    tr = ring2.ring
    smaller = ArtinianAlgebra(tr, ring2.ideal.gens + [parse_poly("s", tr)])
    step1 = SmallExtensionStep(smaller, [parse_poly("t", tr)])
    cut = e_class(l1.restrict(smaller), l2.restrict(smaller), step1)
    want = dict(zip([str(q) for q in full.q_basis], full.rows))
    got = dict(zip([str(q) for q in cut.q_basis], cut.rows))
    assert got == {"t": want["t"]}


def test_glue_two_factors():
    total = make_truncation(QQ, ("t", "s"), 1)
    tr = total.ring
    ref = hyper("x^3 + y^2")
    at = ArtinianAlgebra(tr, total.ideal.gens + [parse_poly("s", tr)])
    as_ = ArtinianAlgebra(tr, total.ideal.gens + [parse_poly("t", tr)])
    l1 = lifting(at, ref, ["x^3 + y^2 + t*x"])
    l2 = lifting(as_, ref, ["x^3 + y^2 + s*y"])
    glued = glue_over_fiber_product(total, [parse_poly("s", tr)],
                                    [parse_poly("t", tr)], l1, l2)
    expect = lifting(total, ref, ["x^3 + y^2 + t*x + s*y"])
    assert glued.equals(expect)


def test_glue_with_trivial_factor():
    base = make_truncation(QQ, ("t",), 1)
    tr = base.ring
    ref = hyper("x^3 + y^2")
    fam = lifting(base, ref, ["x^3 + y^2 + t*x"])
    point = ArtinianAlgebra(tr, base.ideal.gens + [parse_poly("t", tr)])
    triv = trivial_lifting(point, ref)
    glued = glue_over_fiber_product(base, [], [parse_poly("t", tr)], fam, triv)
    assert glued.equals(fam)


def test_glue_degenerate_both_trivial_ideals():
    base = make_truncation(QQ, ("t",), 1)
    ref = hyper("x^3 + y^2")
    fam = lifting(base, ref, ["x^3 + y^2 + t*y"])
    glued = glue_over_fiber_product(base, [], [], fam, fam)
    assert glued.equals(fam)


def test_glue_rejects_overlapping_ideals():
    base = make_truncation(QQ, ("t",), 1)
    tr = base.ring
    ref = hyper("x^3 + y^2")
    quot = ArtinianAlgebra(tr, base.ideal.gens + [parse_poly("t", tr)])
    triv = trivial_lifting(quot, ref)
    with pytest.raises(ValueError):
        glue_over_fiber_product(base, [parse_poly("t", tr)],
                                [parse_poly("t", tr)], triv, triv)


def test_glue_random_roundtrips():
    rng = Random(47)
    total = make_truncation(QQ, ("t", "s"), 1)
    tr = total.ring
    ref = hyper("x^3 + y^2")
    at = ArtinianAlgebra(tr, total.ideal.gens + [parse_poly("s", tr)])
    as_ = ArtinianAlgebra(tr, total.ideal.gens + [parse_poly("t", tr)])
    M = mixed_ring(total, XY)
    F = parse_poly("x^3 + y^2", M)
    t, s = parse_poly("t", M), parse_poly("s", M)
    for _ in range(8):
        g, h = rand_x_poly(rng, M, 2), rand_x_poly(rng, M, 2)
        l1 = EmbeddedLifting(at, ref, [F + t * g])
        l2 = EmbeddedLifting(as_, ref, [F + s * h])
        glued = glue_over_fiber_product(total, [parse_poly("s", tr)],
                                        [parse_poly("t", tr)], l1, l2)
        assert glued.equals(EmbeddedLifting(total, ref, [F + t * g + s * h]))
        assert glued.restrict(at).equals(l1)
        assert glued.restrict(as_).equals(l2)
