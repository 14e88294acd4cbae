import pytest

from weihrauchlab.corpus import (
    any_points,
    dyadic_names,
    llpo_hat_inputs,
    llpo_points,
    pair_points,
    rng_for,
)
from weihrauchlab.errors import MiddleMismatch, OutOfDomain
from weihrauchlab.machines import Machine, identity, run_on_point, symbol_machine
from weihrauchlab.points import EvPeriodic, Interleave, RowTuple, prefix
from weihrauchlab.problems import (
    bottom_problem,
    c_problem,
    id_problem,
    llpo_hat_problem,
    llpo_problem,
    lpo_problem,
)
from weihrauchlab.witnesses import (
    DiscontinuityData,
    Witness,
    as_ordinary,
    check,
    compose_witness,
    cylindrify,
    glb_factor,
    glb_witnesses,
    hat_is_cylinder,
    id_to_c,
    id_to_llpo_hat,
    least_degree,
    llpo_real_to_llpo,
    llpo_to_llpo_real,
    llpo_to_lpo,
    lpo_from_discontinuity,
    parallel_absorb,
    parallel_extensive,
    parallelize_witness,
    product_witness,
    reflexivity,
    repr_transport,
    strengthen_on_cylinder,
    sum_idem,
    sum_witness,
    uncylindrify,
)


def llpo_corpus(n=10, seed="w"):
    return llpo_points(rng_for(seed), n)


def test_reflexivity_passes_for_registered_problems():
    from weihrauchlab.corpus import rowable_points
    cases = [
        (lpo_problem(), any_points(rng_for("r1"), 8)),
        (llpo_problem(), llpo_corpus()),
        (llpo_hat_problem(), llpo_hat_inputs(rng_for("r2"), 6)),
        (id_problem(), any_points(rng_for("r3"), 8)),
        (c_problem(), rowable_points(rng_for("r4"), 6)),
    ]
    for prob, corpus in cases:
        rep = check(reflexivity(prob), corpus, depth=10)
        assert rep.passed, rep.render()


def test_llpo_to_lpo_hand_law():
    w = llpo_to_lpo()
    p = EvPeriodic((5,), (0,))
    kp = w.k_point(p)
    # the inner translation complements the even entries
    assert prefix(kp, 4) == (0, 1, 1, 1)
    rep = check(w, [p], depth=8)
    assert rep.passed


def test_llpo_to_lpo_on_free_point():
    w = llpo_to_lpo()
    rep = check(w, [EvPeriodic((), (0,))], depth=8)
    assert rep.passed    # oracle answers 1, negated to 0, allowed by {0,1}


def test_broken_witness_fails_with_coordinate():
    w = llpo_to_lpo()
    copy_h = symbol_machine("copy", lambda wd, j: wd[0] if j == 0 else 0,
                            lambda j: j + 1)
    bad = Witness(w.f, w.g, w.K, copy_h, True, w.k_point, name="bad")
    rep = check(bad, [EvPeriodic((5,), (0,))], depth=8)
    assert not rep.passed
    assert rep.failures()[0].coordinate == 0


def test_corpus_outside_domain_rejected():
    w = llpo_to_lpo()
    with pytest.raises(OutOfDomain):
        check(w, [EvPeriodic((1, 1), (0,))], depth=4)


def test_compose_requires_matching_middle():
    with pytest.raises(MiddleMismatch):
        compose_witness(llpo_to_lpo(), llpo_to_lpo())


def test_compose_reflexivity_both_sides():
    f = llpo_problem()
    r = reflexivity(f)
    rep = check(compose_witness(r, r), llpo_corpus(), depth=10)
    assert rep.passed
    # right identity against a real reduction
    rep2 = check(compose_witness(llpo_to_lpo(), reflexivity(lpo_problem())),
                 llpo_corpus(), depth=10)
    assert rep2.passed
    rep3 = check(compose_witness(reflexivity(llpo_problem()), llpo_to_lpo()),
                 llpo_corpus(), depth=10)
    assert rep3.passed


def test_compose_transitivity_chain():
    chain = compose_witness(llpo_real_to_llpo(), llpo_to_lpo())
    rep = check(chain, dyadic_names(rng_for("dy"), 10), depth=10)
    assert rep.passed


def test_compose_ordinary_formula():
    # mixed strengths force the fed-through composition
    ext = parallel_extensive(llpo_problem())
    chain = compose_witness(as_ordinary(llpo_to_lpo()),
                            as_ordinary(reflexivity(lpo_problem())))
    rep = check(chain, llpo_corpus(), depth=8)
    assert rep.passed


def test_product_witness_and_negative_half():
    good = product_witness(llpo_to_lpo(), llpo_to_lpo())
    corpus = pair_points(rng_for("pp"), lambda r: llpo_points(r, 1)[0],
                         lambda r: llpo_points(r, 1)[0], 8)
    assert check(good, corpus, depth=10).passed
    copy_h = symbol_machine("copy", lambda wd, j: wd[0] if j == 0 else 0,
                            lambda j: j + 1)
    w = llpo_to_lpo()
    bad_half = Witness(w.f, w.g, w.K, copy_h, True, w.k_point, name="bad")
    broken = product_witness(w, bad_half)
    rep = check(broken,
                [Interleave(EvPeriodic((5,), (0,)), EvPeriodic((5,), (0,)))],
                depth=8)
    assert not rep.passed
    assert any(e.coordinate is not None for e in rep.failures())


def test_sum_monotone_and_idem():
    w = sum_witness(llpo_to_lpo(), llpo_to_lpo())
    corpus = pair_points(rng_for("sp"), lambda r: llpo_points(r, 1)[0],
                         lambda r: llpo_points(r, 1)[0], 8)
    assert check(w, corpus, depth=10).passed
    fwd, bwd = sum_idem(lpo_problem())
    assert check(fwd, any_points(rng_for("si"), 8), depth=10).passed
    pair_corpus = pair_points(rng_for("si2"), lambda r: any_points(r, 1)[0],
                              lambda r: any_points(r, 1)[0], 8)
    assert check(bwd, pair_corpus, depth=10).passed


def test_glb_and_factoring():
    f, g = lpo_problem(), llpo_problem()
    to_f, to_g = glb_witnesses(f, g)
    corpus = pair_points(rng_for("glb"), lambda r: any_points(r, 1)[0],
                         lambda r: llpo_points(r, 1)[0], 8)
    assert check(to_f, corpus, depth=10).passed
    assert check(to_g, corpus, depth=10).passed
    # a computable problem factors through the lower bound
    q = EvPeriodic((), (0,))
    wf = least_degree(id_problem(), identity(), f, q)
    wg = least_degree(id_problem(), identity(), g, q)
    fact = glb_factor(wf, wg)
    assert check(fact, any_points(rng_for("fact"), 6), depth=8).passed


def test_least_degree():
    w = least_degree(id_problem(), identity(), llpo_problem(),
                     EvPeriodic((), (0,)))
    assert check(w, any_points(rng_for("ld"), 8), depth=10).passed


def test_nothing_reduces_to_bottom_except_empty_domain():
    bot = bottom_problem()
    # bottom reduces to bottom vacuously: no behaviors to fail on, but also
    # no corpus can make headway, so the reduction from a real problem fails
    w = Witness(lpo_problem(), bot, identity(), identity(), True, lambda p: p)
    rep = check(w, any_points(rng_for("bot"), 4), depth=6)
    assert not rep.entries   # zero oracle branches: vacuous, never a pass
    assert not rep.passed
    # and everything reduces to problems with a computable domain point
    w2 = least_degree(id_problem(), identity(), lpo_problem(),
                      EvPeriodic((), (1,)))
    assert check(w2, any_points(rng_for("bot2"), 4), depth=6).passed


def test_cylindrify_round_trip():
    w = llpo_to_lpo()
    cyl = cylindrify(w)
    corpus = pair_points(rng_for("cyl"), lambda r: any_points(r, 1)[0],
                         lambda r: llpo_points(r, 1)[0], 8)
    assert check(cyl, corpus, depth=10).passed
    back = uncylindrify(cyl, llpo_problem(), lpo_problem())
    assert check(back, llpo_corpus(), depth=10).passed


def test_cylindrify_reflexivity():
    cyl = cylindrify(reflexivity(llpo_problem()))
    corpus = pair_points(rng_for("cylr"), lambda r: any_points(r, 1)[0],
                         lambda r: llpo_points(r, 1)[0], 6)
    assert check(cyl, corpus, depth=8).passed


def test_strengthen_on_cylinder():
    cylw = hat_is_cylinder(llpo_problem())
    strong = strengthen_on_cylinder(parallel_extensive(llpo_problem()), cylw)
    assert strong.strong
    corpus = llpo_points(rng_for("str"), 6, allow_free=False)
    assert check(strong, corpus, depth=10).passed


def test_parallel_closure_triple():
    for f, corpus in ((lpo_problem(), any_points(rng_for("pc1"), 6)),
                      (llpo_problem(),
                       llpo_points(rng_for("pc2"), 6, allow_free=False))):
        assert check(parallel_extensive(f), corpus, depth=10).passed
    w = parallelize_witness(llpo_to_lpo())
    assert check(w, llpo_hat_inputs(rng_for("pc3"), 6), depth=10).passed
    absorb, split = parallel_absorb(llpo_problem())
    pairs = pair_points(rng_for("pc4"), lambda r: llpo_hat_inputs(r, 1)[0],
                        lambda r: llpo_hat_inputs(r, 1)[0], 5)
    assert check(absorb, pairs, depth=10).passed
    assert check(split, llpo_hat_inputs(rng_for("pc5"), 5), depth=10).passed


def test_repr_transport_through_padding():
    """Transport a reduction along a junk-symbol representation change:
    primed names carry one extra leading symbol on every space."""
    from weihrauchlab.machines import inject, shift_l
    from weihrauchlab.points import point_prepend, subsample
    from weihrauchlab.problems import (
        FiniteNatsSet,
        Problem,
        TaggedUnionSet,
        llpo_value,
        lpo_value,
    )

    w = llpo_to_lpo()

    def strip_pt(p):
        return subsample(p, 1, 1)

    def pad_pt(p):
        return point_prepend(7, p)

    def padded_nats(values):
        inner = FiniteNatsSet(values)
        return TaggedUnionSet(inner, inner)   # any leading junk symbol

    primed_f = Problem(
        "llpo'", "baire", "nat",
        lambda p: llpo_problem().in_domain(strip_pt(p)),
        lambda p: padded_nats(llpo_value(strip_pt(p))))
    primed_g = Problem(
        "lpo'", "baire", "nat",
        lambda p: lpo_problem().in_domain(strip_pt(p)),
        lambda p: padded_nats(lpo_value(strip_pt(p))))

    # Q strips the primed input, S re-pads the inner translation's output,
    # T strips the primed oracle answer, R re-pads the final answer
    t = repr_transport(w, shift_l(), inject(0), inject(7), shift_l(),
                       primed_f, primed_g, strip_pt, pad_pt)
    corpus = [point_prepend(7, p) for p in llpo_corpus(6, "transport")]
    rep = check(t, corpus, depth=8)
    assert rep.passed, rep.render()


def test_lpo_from_discontinuity():
    """The zero-search problem reduces to a single-valued discontinuous map."""
    from weihrauchlab.problems import Problem, SinglePointSet
    from weihrauchlab.spaces import encode_nat

    def sem(p):
        from weihrauchlab.points import exists_zero
        return encode_nat(0 if exists_zero(p) else 1)

    disc = Problem("zero-test-map", "baire", "baire",
                   lambda p: True, lambda p: SinglePointSet(sem(p)))
    q = EvPeriodic((), (1,))

    def family(n):
        head = [1] * n + [0]
        return EvPeriodic(tuple(head), (1,))

    data = DiscontinuityData(
        q=q,
        family=family,
        agree_bound=lambda L: L,
        cell_count=1,
        expected=(1,),
    )
    w = lpo_from_discontinuity(data, disc)
    corpus = any_points(rng_for("disc"), 10)
    rep = check(w, corpus, depth=6)
    assert rep.passed, rep.render()


def test_cylinder_machine_hand_evaluation():
    """Running the cell-guess translation on the all-ones stream matches
    the defining case split evaluated by hand."""
    from weihrauchlab.points import pair_decode

    w = id_to_c()
    p = EvPeriodic((), (1,))
    out = run_on_point(w.K, p, 12).output
    for i, got in enumerate(out):
        j, _n = pair_decode(i)
        k, m = pair_decode(j)
        want = 0 if 1 == m else 1      # p(k) = 1 for every k
        assert got == want


def test_omniscience_separation_expected_failure():
    """A naive candidate for reducing zero-search to the parity principle
    must fail: the free point leaves the oracle free while the answer is
    pinned.  The separation itself is not verifiable here; the candidate's
    rejection is."""
    from weihrauchlab.machines import symbol_machine

    copy_h = symbol_machine("copy", lambda wd, j: wd[0] if j == 0 else 0,
                            lambda j: j + 1)
    candidate = Witness(lpo_problem(), llpo_problem(), identity(), copy_h,
                        True, lambda p: p, name="lpo<=llpo?")
    rep = check(candidate, [EvPeriodic((), (0,))], depth=8)
    assert not rep.passed
    assert any(e.coordinate == 0 for e in rep.failures())


def test_strengthen_requires_matching_cylinder():
    from weihrauchlab.errors import NotACylinder
    wrong_cyl = reflexivity(lpo_problem())
    with pytest.raises(NotACylinder):
        strengthen_on_cylinder(parallel_extensive(llpo_problem()), wrong_cyl)
