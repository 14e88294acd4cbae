"""Multi-valued problems as semantic objects: a decidable domain test on
names plus a computable value-set description.  The discontinuous maps
(the omniscience principles, tree choice, compact choice) have no
computable realizer; they are evaluated structurally on finitely
presented names, and the value sets drive the witness checker's oracle
enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .errors import (
    CapacityExceeded,
    NonRepresentable,
    NotAName,
    OutOfDomain,
    UnsupportedShape,
)
from .points import (
    EvPeriodic,
    Interleave,
    LawPoint,
    Point,
    RowTuple,
    depair,
    exists_zero,
    nonzero_census,
    normalize,
    pair_decode,
    pair_encode,
    point_prepend,
    row,
)
from .spaces import (
    ClopenCompact,
    Dyadic,
    decode_clopen,
    decode_dyadic,
    encode_nat,
)

BEHAVIOR_CAP = 2 ** 12


# ---------------------------------------------------------------------------
# value sets

class ValueSet:
    """A described set of output names, checkable against finite prefixes."""

    def check_prefix(self, w):
        """None if the prefix is consistent with some member, else the first
        coordinate at which it definitively leaves the set."""
        raise NotImplementedError

    def behaviors(self, depth: int, cap: int = BEHAVIOR_CAP) -> list:
        """Canonical representatives of every output distinguishable below depth."""
        raise NotImplementedError

    def canonical(self) -> Point:
        return self.behaviors(1, 2)[0]

    def members(self, cap: int = BEHAVIOR_CAP) -> list:
        """Exact finite member list, when one is finitely presentable."""
        raise NonRepresentable(f"{type(self).__name__} has no finite member list")


@dataclass(frozen=True)
class FiniteNatsSet(ValueSet):
    values: frozenset

    def __init__(self, values: Iterable):
        object.__setattr__(self, "values", frozenset(values))

    def check_prefix(self, w):
        if len(w) >= 1 and w[0] not in self.values:
            return 0
        return None

    def behaviors(self, depth, cap=BEHAVIOR_CAP):
        return [encode_nat(v) for v in sorted(self.values)]

    def members(self, cap=BEHAVIOR_CAP):
        return self.behaviors(1, cap)


@dataclass
class SinglePointSet(ValueSet):
    point: Point

    def check_prefix(self, w):
        for i in range(len(w)):
            if w[i] != self.point.value_at(i):
                return i
        return None

    def behaviors(self, depth, cap=BEHAVIOR_CAP):
        return [self.point]

    def members(self, cap=BEHAVIOR_CAP):
        return [self.point]


@dataclass
class PointListSet(ValueSet):
    points: tuple

    def __init__(self, points: Iterable):
        self.points = tuple(points)

    def check_prefix(self, w):
        worst = -1
        for q in self.points:
            d = None
            for i in range(len(w)):
                if w[i] != q.value_at(i):
                    d = i
                    break
            if d is None:
                return None
            worst = max(worst, d)
        return worst if worst >= 0 else 0

    def behaviors(self, depth, cap=BEHAVIOR_CAP):
        if len(self.points) > cap:
            raise CapacityExceeded(f"{len(self.points)} listed points exceed {cap}")
        return list(self.points)

    def members(self, cap=BEHAVIOR_CAP):
        return self.behaviors(0, cap)


class EmptySet(ValueSet):
    """The value set of the bottom object: no realizer can be consistent."""

    def check_prefix(self, w):
        return 0

    def behaviors(self, depth, cap=BEHAVIOR_CAP):
        return []

    def members(self, cap=BEHAVIOR_CAP):
        return []


class CoordProductSet(ValueSet):
    """Product of per-coordinate allowed bit sets.

    bits_fn gives the allowed subset of {0,1} per coordinate; when the
    constraints stabilize (all coordinates >= support_bound share tail_bits)
    the exact member list is enumerable.
    """

    def __init__(self, bits_fn: Callable, support_bound: Optional[int] = None,
                 tail_bits: Optional[frozenset] = None):
        self._bits_fn = bits_fn
        self._memo: dict = {}
        self.support_bound = support_bound
        self.tail_bits = frozenset(tail_bits) if tail_bits is not None else None

    def bits(self, i: int) -> frozenset:
        if i not in self._memo:
            self._memo[i] = frozenset(self._bits_fn(i))
        return self._memo[i]

    def check_prefix(self, w):
        for i in range(len(w)):
            if w[i] not in self.bits(i):
                return i
        return None

    def canonical_bit(self, i: int) -> int:
        return min(self.bits(i))

    def canonical(self) -> Point:
        return LawPoint(fn=self.canonical_bit, label="product-canonical")

    def _assignment_point(self, chosen: dict) -> Point:
        def fn(i, _c=dict(chosen)):
            return _c[i] if i in _c else self.canonical_bit(i)
        return LawPoint(fn=fn, label="product-branch")

    def behaviors(self, depth, cap=BEHAVIOR_CAP):
        free = [i for i in range(depth) if len(self.bits(i)) == 2]
        if 2 ** len(free) > cap:
            raise CapacityExceeded(
                f"{len(free)} free coordinates below depth {depth} exceed the "
                f"behavior bound {cap}")
        out = []
        for combo in itertools.product((0, 1), repeat=len(free)):
            chosen = dict(zip(free, combo))
            out.append(self._assignment_point(chosen))
        return out

    def truncations(self, n: int, cap: int = BEHAVIOR_CAP) -> list:
        """All length-n words consistent with the product."""
        sets = [sorted(self.bits(i)) for i in range(n)]
        total = 1
        for s in sets:
            total *= len(s)
            if total > cap:
                raise CapacityExceeded(f"truncation count exceeds {cap}")
        return [tuple(c) for c in itertools.product(*sets)]

    def members(self, cap=BEHAVIOR_CAP):
        if self.support_bound is None or self.tail_bits is None:
            raise NonRepresentable("product without a stabilized tail")
        if len(self.tail_bits) != 1:
            raise NonRepresentable("free tail: infinitely many members")
        tail = min(self.tail_bits)
        out = []
        for head in self.truncations(self.support_bound, cap):
            out.append(EvPeriodic(head, (tail,)))
        return out


@dataclass
class ClopenSet(ValueSet):
    """Members of a clopen compact; consistency means avoiding every
    excluded cylinder."""

    compact: ClopenCompact

    def check_prefix(self, w):
        for i in range(len(w)):
            if w[i] not in (0, 1):
                return i
        # first index closing an excluded cylinder
        for e in sorted(self.compact.excluded, key=len):
            L = len(e)
            if L <= len(w) and tuple(w[:L]) == e:
                return L - 1
        return None

    def behaviors(self, depth, cap=BEHAVIOR_CAP):
        d = self.compact.depth()
        words = self.compact.admitted_words(d)
        if len(words) > cap:
            raise CapacityExceeded(f"{len(words)} surviving cylinders exceed {cap}")
        return [EvPeriodic(w, (0,)) for w in words]

    def members(self, cap=BEHAVIOR_CAP):
        raise NonRepresentable("clopen compacts have infinitely many members")


@dataclass
class PairSet(ValueSet):
    first: ValueSet
    second: ValueSet

    def check_prefix(self, w):
        u = tuple(w[i] for i in range(0, len(w), 2))
        v = tuple(w[i] for i in range(1, len(w), 2))
        fails = []
        c = self.first.check_prefix(u)
        if c is not None:
            fails.append(2 * c)
        c = self.second.check_prefix(v)
        if c is not None:
            fails.append(2 * c + 1)
        return min(fails) if fails else None

    def behaviors(self, depth, cap=BEHAVIOR_CAP):
        half = (depth + 1) // 2
        lefts = self.first.behaviors(half, cap)
        rights = self.second.behaviors(half, cap)
        if len(lefts) * len(rights) > cap:
            raise CapacityExceeded("pair behavior product exceeds the bound")
        return [Interleave(a, b) for a in lefts for b in rights]

    def members(self, cap=BEHAVIOR_CAP):
        ls = self.first.members(cap)
        rs = self.second.members(cap)
        if len(ls) * len(rs) > cap:
            raise CapacityExceeded("pair member product exceeds the bound")
        return [Interleave(a, b) for a in ls for b in rs]


@dataclass
class TaggedUnionSet(ValueSet):
    """Names n·p: tag 0 selects the first branch, any other tag the second."""

    zero: ValueSet
    other: ValueSet

    def check_prefix(self, w):
        if len(w) == 0:
            return None
        branch = self.zero if w[0] == 0 else self.other
        c = branch.check_prefix(tuple(w[1:]))
        return None if c is None else c + 1

    def behaviors(self, depth, cap=BEHAVIOR_CAP):
        out = [point_prepend(0, b) for b in self.zero.behaviors(max(depth - 1, 0), cap)]
        out += [point_prepend(1, b) for b in self.other.behaviors(max(depth - 1, 0), cap)]
        if len(out) > cap:
            raise CapacityExceeded("tagged union behaviors exceed the bound")
        return out

    def members(self, cap=BEHAVIOR_CAP):
        out = [point_prepend(0, m) for m in self.zero.members(cap)]
        out += [point_prepend(1, m) for m in self.other.members(cap)]
        return out


class RowProductSet(ValueSet):
    """Row-tupled product: row n of a member is a name from row_vs(n)."""

    def __init__(self, row_vs: Callable):
        self._row_vs = row_vs
        self._memo: dict = {}

    def row_set(self, n: int) -> ValueSet:
        if n not in self._memo:
            self._memo[n] = self._row_vs(n)
        return self._memo[n]

    def check_prefix(self, w):
        L = len(w)
        fails = []
        n = 0
        while pair_encode(n, 0) < L:
            k = 0
            while pair_encode(n, k) < L:
                k += 1
            rw = tuple(w[pair_encode(n, j)] for j in range(k))
            c = self.row_set(n).check_prefix(rw)
            if c is not None:
                fails.append(pair_encode(n, c))
            n += 1
        return min(fails) if fails else None

    def behaviors(self, depth, cap=BEHAVIOR_CAP):
        rows = 0
        while pair_encode(rows, 0) < depth:
            rows += 1
        per_row = []
        total = 1
        for n in range(rows):
            k = 0
            while pair_encode(n, k) < depth:
                k += 1
            bs = self.row_set(n).behaviors(k, cap)
            total *= len(bs)
            if total > cap:
                raise CapacityExceeded("row product behaviors exceed the bound")
            per_row.append(bs)

        out = []
        for combo in itertools.product(*per_row):
            chosen = dict(enumerate(combo))

            def row_fn(n, _c=chosen):
                if n in _c:
                    return _c[n]
                return self.row_set(n).canonical()

            out.append(LawPoint(row_fn=row_fn, label="rowprod-branch"))
        return out


@dataclass
class UnionSet(ValueSet):
    parts: tuple

    def __init__(self, parts: Iterable):
        self.parts = tuple(parts)

    def check_prefix(self, w):
        worst = -1
        for part in self.parts:
            c = part.check_prefix(w)
            if c is None:
                return None
            worst = max(worst, c)
        return worst if worst >= 0 else 0

    def behaviors(self, depth, cap=BEHAVIOR_CAP):
        out = []
        for part in self.parts:
            out.extend(part.behaviors(depth, cap))
            if len(out) > cap:
                raise CapacityExceeded("union behaviors exceed the bound")
        return out

    def members(self, cap=BEHAVIOR_CAP):
        out = []
        for part in self.parts:
            out.extend(part.members(cap))
        return out


# ---------------------------------------------------------------------------
# problems

@dataclass
class Problem:
    name: str
    input_space: str
    output_space: str
    in_domain: Callable
    value_set: Callable

    def require(self, p: Point) -> ValueSet:
        if not self.in_domain(p):
            raise OutOfDomain(f"{self.name}: name outside the domain")
        return self.value_set(p)

    def __repr__(self):
        return f"Problem({self.name})"


def _census_ok(p: Point) -> bool:
    try:
        nonzero_census(p)
        return True
    except UnsupportedShape:
        return False


def lpo_value(p: Point) -> frozenset:
    return frozenset({0}) if exists_zero(p) else frozenset({1})


def lpo_problem() -> Problem:
    return Problem(
        name="lpo",
        input_space="baire",
        output_space="nat",
        in_domain=_census_ok,
        value_set=lambda p: FiniteNatsSet(lpo_value(p)),
    )


def llpo_value(p: Point) -> frozenset:
    kind, pos = nonzero_census(p)
    if kind == "many":
        raise OutOfDomain(f"two nonzero entries (first at {pos})")
    if kind == "zero":
        return frozenset({0, 1})
    return frozenset({0}) if pos % 2 == 1 else frozenset({1})


def _llpo_dom(p: Point) -> bool:
    try:
        return nonzero_census(p)[0] != "many"
    except UnsupportedShape:
        return False


def llpo_problem() -> Problem:
    return Problem(
        name="llpo",
        input_space="baire",
        output_space="nat",
        in_domain=_llpo_dom,
        value_set=lambda p: FiniteNatsSet(llpo_value(p)),
    )


# parallelized LPO, i.e. the zero-searching function on rows ---------------

def _row_stabilization(p: EvPeriodic) -> tuple:
    """(n_star, cycle): rows n >= n_star repeat with period cycle."""
    h, m = len(p.head), len(p.period)
    n = 0
    while pair_encode(n, 0) < h:
        n += 1
    return n, 2 * m


def c_map(p: Point) -> Point:
    """The point whose n-th value is 0 iff row n of p contains a zero."""
    if isinstance(p, Interleave):
        q = normalize(p)
        if q is None:
            raise UnsupportedShape("rows of a non-normalizable interleave")
        p = q
    if isinstance(p, RowTuple):
        bit_d = 0 if exists_zero(p.default) else 1
        top = max(p.rows, default=-1) + 1
        head = tuple(0 if exists_zero(p.row(n)) else 1 for n in range(top))
        return EvPeriodic(head, (bit_d,))
    if isinstance(p, EvPeriodic):
        n_star, cycle = _row_stabilization(p)
        head = tuple(0 if exists_zero(row(p, n)) else 1 for n in range(n_star))
        period = tuple(0 if exists_zero(row(p, n)) else 1
                       for n in range(n_star, n_star + cycle))
        return EvPeriodic(head, period)
    if isinstance(p, LawPoint):
        return LawPoint(fn=lambda n: 0 if exists_zero(row(p, n)) else 1,
                        label="c-map")
    raise UnsupportedShape(f"c_map on {type(p).__name__}")


def _c_dom(p: Point) -> bool:
    try:
        c_map(p)
        return True
    except UnsupportedShape:
        return False


def c_problem() -> Problem:
    """Parallelized LPO viewed as the total zero-searching function."""
    return Problem(
        name="lpo_hat",
        input_space="baire",
        output_space="baire",
        in_domain=_c_dom,
        value_set=lambda p: SinglePointSet(c_map(p)),
    )


# parallelized LLPO ---------------------------------------------------------

LAW_DOMAIN_WINDOW = 32


def llpo_hat_value(p: Point) -> CoordProductSet:
    if isinstance(p, Interleave):
        q = normalize(p)
        if q is None:
            raise UnsupportedShape("rows of a non-normalizable interleave")
        p = q
    if isinstance(p, RowTuple):
        support = max(p.rows, default=-1) + 1
        return CoordProductSet(lambda n: llpo_value(p.row(n)),
                               support_bound=support,
                               tail_bits=llpo_value(p.default))
    if isinstance(p, (EvPeriodic, LawPoint)):
        return CoordProductSet(lambda n: llpo_value(row(p, n)))
    raise UnsupportedShape(f"llpo_hat on {type(p).__name__}")


def _llpo_hat_dom(p: Point) -> bool:
    try:
        if isinstance(p, Interleave):
            p = normalize(p) or p
        if isinstance(p, RowTuple):
            return _llpo_dom(p.default) and all(_llpo_dom(r) for r in p.rows.values())
        if isinstance(p, EvPeriodic):
            n_star, cycle = _row_stabilization(p)
            return all(_llpo_dom(row(p, n)) for n in range(n_star + cycle))
        if isinstance(p, LawPoint):
            # bounded validation on law-backed names; construction carries the tail
            from .errors import FuelExhausted
            try:
                return all(_llpo_dom(row(p, n)) for n in range(LAW_DOMAIN_WINDOW))
            except FuelExhausted:
                return True   # probing outran the name's commit capability
        return False
    except UnsupportedShape:
        return False


def llpo_hat_problem() -> Problem:
    return Problem(
        name="llpo_hat",
        input_space="baire",
        output_space="cantor",
        in_domain=_llpo_hat_dom,
        value_set=llpo_hat_value,
    )


# compact choice ------------------------------------------------------------

COMPACT_DEPTH_CAP = 12


def _product_shape(k: ClopenCompact):
    """Forced coordinates when the compact is a coordinate-wise product."""
    by_len: dict = {}
    for w in k.excluded:
        by_len.setdefault(len(w), set()).add(w)
    forced = {}
    for L, words in by_len.items():
        bits = {w[-1] for w in words}
        if len(bits) != 1:
            return None
        bad = bits.pop()
        expect = {p + (bad,) for p in itertools.product((0, 1), repeat=L - 1)}
        if words != expect:
            return None
        forced[L - 1] = 1 - bad
    return forced


def compact_choice_value(k: ClopenCompact) -> ValueSet:
    forced = _product_shape(k)
    if forced is not None:
        support = max(forced, default=-1) + 1
        return CoordProductSet(
            lambda i: frozenset({forced[i]}) if i in forced else frozenset({0, 1}),
            support_bound=support,
            tail_bits=frozenset({0, 1}),
        )
    if k.depth() > COMPACT_DEPTH_CAP:
        raise CapacityExceeded(
            f"mixed compact beyond excluded-depth {COMPACT_DEPTH_CAP}")
    return ClopenSet(k)


def compact_choice_problem() -> Problem:
    def dom(p):
        try:
            return not decode_clopen(p).is_empty()
        except NotAName:
            return False

    def value(p):
        return compact_choice_value(decode_clopen(p))

    return Problem("compact_choice", "clopen", "cantor", dom, value)


# real-number LLPO on dyadics ------------------------------------------------

def llpo_real_value(x: Dyadic) -> frozenset:
    s = x.sign()
    if s < 0:
        return frozenset({0})
    if s > 0:
        return frozenset({1})
    return frozenset({0, 1})


def llpo_real_problem() -> Problem:
    def dom(p):
        try:
            decode_dyadic(p)
            return True
        except NotAName:
            return False

    return Problem(
        name="llpo_real",
        input_space="dyadic",
        output_space="nat",
        in_domain=dom,
        value_set=lambda p: FiniteNatsSet(llpo_real_value(decode_dyadic(p))),
    )


# constant problems and the bottom object -----------------------------------

def const_problem(points: Iterable, name: str = "c_A") -> Problem:
    pts = tuple(points)
    if not pts:
        return bottom_problem()
    return Problem(name, "baire", "baire",
                   lambda p: True, lambda p: PointListSet(pts))


def const_point_problem(q: Point, name: str = "c_q") -> Problem:
    return const_problem([q], name=name)


def bottom_problem() -> Problem:
    """The distinguished object with an empty realizer set."""
    return Problem("bottom", "baire", "baire",
                   lambda p: True, lambda p: EmptySet())


def id_problem() -> Problem:
    return Problem("id", "baire", "baire",
                   lambda p: True, lambda p: SinglePointSet(p))


# problem algebra ------------------------------------------------------------

def product_problem(f: Problem, g: Problem) -> Problem:
    def dom(p):
        try:
            a, b = depair(p)
        except UnsupportedShape:
            return False
        return f.in_domain(a) and g.in_domain(b)

    def value(p):
        a, b = depair(p)
        return PairSet(f.value_set(a), g.value_set(b))

    return Problem(f"({f.name}*{g.name})", "pair", "pair", dom, value)


def sum_problem(f: Problem, g: Problem) -> Problem:
    def dom(p):
        try:
            a, b = depair(p)
        except UnsupportedShape:
            return False
        return f.in_domain(a) and g.in_domain(b)

    def value(p):
        a, b = depair(p)
        return TaggedUnionSet(f.value_set(a), g.value_set(b))

    return Problem(f"({f.name}+{g.name})", "pair", "tagged", dom, value)


def flat_hat_problem(base_value: Callable, base_dom: Callable, name: str) -> Problem:
    """Countably many instances answered in one flat bit/nat stream."""
    def rows_of(p):
        if isinstance(p, Interleave):
            q = normalize(p)
            if q is None:
                raise UnsupportedShape("rows of a non-normalizable interleave")
            p = q
        return p

    def dom(p):
        try:
            p = rows_of(p)
            if isinstance(p, RowTuple):
                return base_dom(p.default) and all(base_dom(r) for r in p.rows.values())
            if isinstance(p, EvPeriodic):
                n_star, cycle = _row_stabilization(p)
                return all(base_dom(row(p, n)) for n in range(n_star + cycle))
            if isinstance(p, LawPoint):
                return all(base_dom(row(p, n)) for n in range(LAW_DOMAIN_WINDOW))
            return False
        except UnsupportedShape:
            return False

    def value(p):
        p = rows_of(p)
        if isinstance(p, RowTuple):
            support = max(p.rows, default=-1) + 1
            return CoordProductSet(lambda n: base_value(p.row(n)),
                                   support_bound=support,
                                   tail_bits=base_value(p.default))
        return CoordProductSet(lambda n: base_value(row(p, n)))

    return Problem(name, "baire", "baire", dom, value)


def double_hat_problem(base_value: Callable, base_dom: Callable, name: str) -> Problem:
    """The flat hat of a flat hat: instance (j, k) at coordinate <j,k>."""
    def dom(p):
        try:
            for j in range(8):
                outer = row(p, j)
                for k in range(8):
                    if not base_dom(row(outer, k)):
                        return False
            return True
        except UnsupportedShape:
            return False

    def value(p):
        def bits(i):
            j, k = pair_decode(i)
            return base_value(row(row(p, j), k))
        return CoordProductSet(bits)

    return Problem(name, "baire", "baire", dom, value)


def compose_problems(outer: Problem, inner: Problem, cap: int = BEHAVIOR_CAP) -> Problem:
    """Multi-valued composition on the finitely enumerable fragment."""
    def member_names(p):
        vs = inner.value_set(p)
        return vs.members(cap)

    def dom(p):
        if not inner.in_domain(p):
            return False
        try:
            ms = member_names(p)
        except (NonRepresentable, CapacityExceeded):
            return False
        return all(outer.in_domain(m) for m in ms)

    def value(p):
        return UnionSet([outer.value_set(m) for m in member_names(p)])

    return Problem(f"({outer.name}o{inner.name})", inner.input_space,
                   outer.output_space, dom, value)


PROBLEM_BUILDERS = {
    "lpo": lpo_problem,
    "llpo": llpo_problem,
    "lpo_hat": c_problem,
    "llpo_hat": llpo_hat_problem,
    "compact_choice": compact_choice_problem,
    "llpo_real": llpo_real_problem,
    "id": id_problem,
}
