import itertools

import pytest

from weihrauchlab.corpus import rng_for
from weihrauchlab.errors import InsufficientPrefix, InvariantViolation, NotAName
from weihrauchlab.points import EvPeriodic, prefix
from weihrauchlab.spaces import (
    T0,
    T1,
    THALF,
    ClopenCompact,
    Dyadic,
    FinTree,
    TreeChar,
    decode_clopen,
    decode_dyadic,
    decode_nat,
    decode_ternary,
    encode_clopen,
    encode_dyadic,
    encode_nat,
    encode_ternary,
    encode_tree,
    word_at,
    word_index,
)


def test_word_enumeration_order():
    words = [word_at(i) for i in range(7)]
    assert words == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
    for i in range(200):
        assert word_index(word_at(i)) == i


def test_nat_roundtrip():
    assert encode_nat(3) == EvPeriodic((3,), (0,))
    assert decode_nat((5, 9, 9)) == 5
    for n in range(21):
        assert decode_nat(prefix(encode_nat(n), 1)) == n
    with pytest.raises(InsufficientPrefix):
        decode_nat(())


def test_ternary_cases():
    assert decode_ternary(EvPeriodic((), (0,))) is THALF
    assert decode_ternary(EvPeriodic((0, 7), (0,))) is T0
    assert decode_ternary(EvPeriodic((7,), (0,))) is T1
    for t in (T0, T1, THALF):
        assert decode_ternary(encode_ternary(t)) is t
    with pytest.raises(NotAName):
        decode_ternary(EvPeriodic((1, 1), (0,)))


def test_tree_membership_law():
    live = (EvPeriodic((), (0,)), EvPeriodic((), (1,)))
    nodes = {()}
    for q in live:
        for n in range(1, 3):
            nodes.add(prefix(q, n))
    t = FinTree(2, nodes, live)
    for n in range(6):
        for w in itertools.product((0, 1), repeat=n):
            want = w in t.explicit_nodes or any(
                prefix(q, n) == w for q in live)
            assert t.member(w) == want


def test_tree_prefix_closure_enforced():
    with pytest.raises(InvariantViolation):
        FinTree(2, {(), (1, 1)}, ())


def test_tree_encode_finite_tree():
    t = FinTree(0, {()}, ())
    name = encode_tree(t)
    assert name.value_at(word_index(())) == 1
    assert name.value_at(word_index((0,))) == 0
    assert name.value_at(word_index((1,))) == 0


def test_tree_char_against_membership():
    live = (EvPeriodic((), (0,)),)
    nodes = {(), (0,), (0, 0)}
    t = FinTree(2, nodes, live)
    name = encode_tree(t)
    assert isinstance(name, TreeChar)
    for k in range(9):
        assert name.value_at(word_index(tuple([0] * k))) == 1
    assert name.value_at(word_index((1,))) == 0
    assert name.value_at(word_index((0, 1))) == 0


def test_tree_roundtrip_sampled():
    from weihrauchlab.corpus import thin_tree
    rng = rng_for("tree-roundtrip")
    for _ in range(100):
        t = thin_tree(rng)
        name = encode_tree(t)
        for i in range(40):
            assert name.value_at(i) == t.chi(word_at(i))


def test_clopen_roundtrip_and_emptiness():
    rng = rng_for("clopen")
    cases = [
        ClopenCompact(set()),
        ClopenCompact({(0,)}),
        ClopenCompact({(0, 0), (0, 1), (1, 0), (1, 1)}),
    ]
    assert not cases[0].is_empty()
    assert not cases[1].is_empty()
    assert cases[2].is_empty()
    for k in cases:
        assert decode_clopen(encode_clopen(k)) == k
    for _ in range(100):
        words = set()
        for _ in range(rng.randrange(4)):
            L = rng.randrange(1, 4)
            words.add(tuple(rng.randrange(2) for _ in range(L)))
        k = ClopenCompact(words)
        assert decode_clopen(encode_clopen(k)) == k
        depth = k.depth()
        brute_nonempty = any(
            k.admits(w) for w in itertools.product((0, 1), repeat=depth))
        assert (not k.is_empty()) == brute_nonempty


def test_clopen_full_space_name():
    assert encode_clopen(ClopenCompact(set())) == EvPeriodic((), (0,))


def test_clopen_singleton_exclusion():
    k = ClopenCompact({(0,)})
    assert k.admits((1, 0, 1))
    assert not k.admits((0, 1))


def test_dyadic_canonical_form():
    assert Dyadic(2, 1) == Dyadic(1, 0)
    assert Dyadic(0, 5) == Dyadic(0, 0)
    assert Dyadic(-4, 2) == Dyadic(-1, 0)


def test_dyadic_roundtrip():
    rng = rng_for("dyadic")
    for _ in range(100):
        x = Dyadic(rng.randrange(-9, 10), rng.randrange(5))
        assert decode_dyadic(encode_dyadic(x)) == x


def test_dyadic_convergence_enforced():
    # approximations must close in at rate 2^-i
    bad = EvPeriodic((encode_code_of(Dyadic(5, 0)),), (encode_code_of(Dyadic(0, 0)),))
    with pytest.raises(NotAName):
        decode_dyadic(bad)


def encode_code_of(x):
    from weihrauchlab.spaces import dyadic_code
    return dyadic_code(x)
