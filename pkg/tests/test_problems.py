import itertools

import pytest

from weihrauchlab.corpus import (
    any_points,
    ev_periodic,
    llpo_hat_input,
    llpo_points,
    rng_for,
    squared_inputs,
)
from weihrauchlab.errors import NonRepresentable, OutOfDomain
from weihrauchlab.points import EvPeriodic, Interleave, RowTuple, pair_encode, prefix, row
from weihrauchlab.problems import (
    CoordProductSet,
    EmptySet,
    FiniteNatsSet,
    PairSet,
    PointListSet,
    SinglePointSet,
    TaggedUnionSet,
    bottom_problem,
    c_map,
    c_problem,
    compact_choice_problem,
    compose_problems,
    const_problem,
    id_problem,
    llpo_hat_problem,
    llpo_hat_value,
    llpo_problem,
    llpo_real_value,
    llpo_value,
    lpo_problem,
    lpo_value,
    product_problem,
    sum_problem,
)
from weihrauchlab.spaces import ClopenCompact, Dyadic, encode_clopen


def test_lpo_examples():
    assert lpo_value(EvPeriodic((), (0,))) == {0}
    assert lpo_value(EvPeriodic((), (1,))) == {1}
    assert lpo_value(EvPeriodic((1, 1, 1), (2,))) == {1}


def test_lpo_two_valued_everywhere():
    for p in any_points(rng_for("lpo-total"), 50):
        assert lpo_value(p) in ({0}, {1})


def test_llpo_examples():
    assert llpo_value(EvPeriodic((), (0,))) == {0, 1}
    assert llpo_value(EvPeriodic((0, 5), (0,))) == {0}
    assert llpo_value(EvPeriodic((5,), (0,))) == {1}


def test_llpo_domain_and_free_point():
    with pytest.raises(OutOfDomain):
        llpo_value(EvPeriodic((1, 2), (0,)))
    for p in llpo_points(rng_for("llpo-dom"), 50):
        v = llpo_value(p)
        assert v
        assert (v == {0, 1}) == (prefix(p, 32) == (0,) * 32)


def test_c_map_rowtuples():
    ones = EvPeriodic((), (1,))
    zeros = EvPeriodic((), (0,))
    q = c_map(RowTuple({}, ones))
    assert prefix(q, 8) == (1,) * 8
    q2 = c_map(RowTuple({3: zeros}, ones))
    assert q2.value_at(3) == 0
    assert all(q2.value_at(n) == 1 for n in (0, 1, 2, 4, 5))
    q3 = c_map(EvPeriodic((), (0,)))
    assert prefix(q3, 16) == (0,) * 16


def test_c_map_agrees_with_rowwise_lpo():
    rng = rng_for("c-rowwise")
    for _ in range(12):
        p = RowTuple({n: ev_periodic(rng) for n in range(rng.randrange(4))},
                     ev_periodic(rng))
        q = c_map(p)
        for n in range(32):
            want = 0 if 0 in lpo_value(row(p, n)) == {0} else None
            want = 0 if lpo_value(row(p, n)) == {0} else 1
            assert q.value_at(n) == want


def test_llpo_hat_examples():
    vs = llpo_hat_value(RowTuple({}, EvPeriodic((), (0,))))
    assert vs.bits(0) == {0, 1} and vs.bits(7) == {0, 1}
    vs2 = llpo_hat_value(RowTuple({0: EvPeriodic((5,), (0,))},
                                  EvPeriodic((), (0,))))
    assert vs2.bits(0) == {1}
    assert vs2.bits(1) == {0, 1}
    vs3 = llpo_hat_value(RowTuple({}, EvPeriodic((0, 5), (0,))))
    assert all(vs3.bits(n) == {0} for n in range(8))


def test_llpo_hat_domain_error_names_row():
    bad = RowTuple({2: EvPeriodic((1, 1), (0,))}, EvPeriodic((), (0,)))
    assert not llpo_hat_problem().in_domain(bad)


def test_llpo_hat_coordinates_agree_with_rows():
    rng = rng_for("hat-coords")
    for _ in range(10):
        p = llpo_hat_input(rng)
        vs = llpo_hat_value(p)
        for k in range(32):
            assert vs.bits(k) == llpo_value(row(p, k))


def test_wkl_problem_examples():
    from weihrauchlab.spaces import FinTree, TreeChar
    from weihrauchlab.wkl import wkl_problem
    zeros = EvPeriodic((), (0,))
    alt = EvPeriodic((), (0, 1))
    t = FinTree(1, {(), (0,)}, (zeros,))
    prob = wkl_problem()
    name = TreeChar(t)
    assert prob.in_domain(name)
    assert prob.value_set(name).points == (zeros,)
    t2 = FinTree(2, {(), (0,), (0, 0), (0, 1)}, (zeros, alt))
    vs = prob.value_set(TreeChar(t2))
    assert set(vs.points) == {zeros, alt}
    finite = TreeChar(FinTree(1, {(), (0,)}, ()))
    assert not prob.in_domain(finite)
    with pytest.raises(OutOfDomain):
        prob.require(finite)


def test_wkl_paths_stay_in_tree():
    from weihrauchlab.corpus import tree_names
    from weihrauchlab.wkl import wkl_problem
    prob = wkl_problem()
    for name in tree_names(rng_for("wkl-paths"), 6):
        for q in prob.value_set(name).points:
            for n in range(65):
                assert name.tree.chi(prefix(q, n)) == 1


def test_compact_choice_examples():
    prob = compact_choice_problem()
    full = encode_clopen(ClopenCompact(set()))
    vs = prob.require(full)
    assert vs.check_prefix((0, 1, 1, 0)) is None

    no_ones = encode_clopen(ClopenCompact({(1,)}))
    vs2 = prob.require(no_ones)
    assert vs2.check_prefix((0, 1, 1)) is None
    assert vs2.check_prefix((1, 0)) == 0

    diag = encode_clopen(ClopenCompact({(0, 0), (1, 1)}))
    vs3 = prob.require(diag)
    assert vs3.check_prefix((0, 1)) is None
    assert vs3.check_prefix((1, 0)) is None
    assert vs3.check_prefix((1, 1)) == 1

    empty = encode_clopen(ClopenCompact({(0,), (1,)}))
    assert not prob.in_domain(empty)


def test_llpo_real_values():
    assert llpo_real_value(Dyadic(-1, 1)) == {0}
    assert llpo_real_value(Dyadic(0, 0)) == {0, 1}
    assert llpo_real_value(Dyadic(3, 2)) == {1}


def test_const_and_bottom():
    zeros = EvPeriodic((), (0,))
    ones = EvPeriodic((), (1,))
    ca = const_problem([zeros])
    assert ca.value_set(ones).points == (zeros,)
    cab = const_problem([zeros, ones])
    assert set(cab.value_set(zeros).points) == {zeros, ones}
    bot = bottom_problem()
    vs = bot.value_set(zeros)
    assert isinstance(vs, EmptySet)
    assert vs.behaviors(8) == []
    assert vs.check_prefix(()) == 0


def test_value_set_check_prefix_semantics():
    assert FiniteNatsSet({1}).check_prefix((1, 9, 9)) is None
    assert FiniteNatsSet({1}).check_prefix((0,)) == 0
    sp = SinglePointSet(EvPeriodic((2,), (0,)))
    assert sp.check_prefix((2, 0)) is None
    assert sp.check_prefix((2, 5)) == 1
    pl = PointListSet([EvPeriodic((), (0,)), EvPeriodic((), (1,))])
    assert pl.check_prefix((1, 1)) is None
    assert pl.check_prefix((1, 0)) == 1
    pr = PairSet(FiniteNatsSet({0}), FiniteNatsSet({1}))
    assert pr.check_prefix((0, 1)) is None
    assert pr.check_prefix((1, 1)) == 0
    tu = TaggedUnionSet(FiniteNatsSet({0}), FiniteNatsSet({1}))
    assert tu.check_prefix((0, 0)) is None
    assert tu.check_prefix((0, 1)) == 1
    assert tu.check_prefix((7, 1)) is None


def test_coord_product_members_and_truncations():
    vs = CoordProductSet(lambda i: frozenset({0, 1}) if i == 1 else frozenset({0}),
                         support_bound=2, tail_bits=frozenset({0}))
    ms = vs.members()
    assert len(ms) == 2
    assert {prefix(m, 3) for m in ms} == {(0, 0, 0), (0, 1, 0)}
    assert set(vs.truncations(2)) == {(0, 0), (0, 1)}
    free_tail = CoordProductSet(lambda i: frozenset({0, 1}),
                                support_bound=0, tail_bits=frozenset({0, 1}))
    with pytest.raises(NonRepresentable):
        free_tail.members()


def test_product_and_sum_problems():
    f = product_problem(lpo_problem(), llpo_problem())
    p = Interleave(EvPeriodic((), (1,)), EvPeriodic((5,), (0,)))
    assert f.in_domain(p)
    assert f.value_set(p).check_prefix((1, 1)) is None
    assert f.value_set(p).check_prefix((0, 1)) == 0
    s = sum_problem(lpo_problem(), llpo_problem())
    assert s.value_set(p).check_prefix((0, 1)) is None
    assert s.value_set(p).check_prefix((1, 1)) is None
    assert s.value_set(p).check_prefix((1, 0)) == 1


def test_composite_problem_squared():
    comp = compose_problems(llpo_hat_problem(), llpo_hat_problem())
    p = squared_inputs(rng_for("composite"), 1)[0]
    assert comp.in_domain(p)
    vs = comp.value_set(p)
    member = llpo_hat_value(p).members()[0]
    bits = llpo_hat_value(member)
    want = tuple(min(bits.bits(k)) for k in range(6))
    assert vs.check_prefix(want) is None
    # free default makes the member set non-enumerable
    free = RowTuple({}, EvPeriodic((), (0,)))
    assert not comp.in_domain(free)


def test_behavior_capacity_is_first_class():
    from weihrauchlab.errors import CapacityExceeded
    free_everywhere = llpo_hat_value(RowTuple({}, EvPeriodic((), (0,))))
    with pytest.raises(CapacityExceeded):
        free_everywhere.behaviors(16, 4096)
    # and within budget the count is exact
    assert len(free_everywhere.behaviors(3, 4096)) == 8


def test_compact_choice_depth_cap():
    from weihrauchlab.errors import CapacityExceeded
    from weihrauchlab.problems import compact_choice_value
    deep = ClopenCompact({tuple([0] * 13)})
    with pytest.raises(CapacityExceeded):
        compact_choice_value(deep)
