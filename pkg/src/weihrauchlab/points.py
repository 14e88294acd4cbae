"""Finitely presented points of Baire space.

A Point is a total map from naturals to naturals given by one of a few
closed constructors: eventually periodic streams, interleaved pairs,
row tuples over the global pairing, characteristic streams of decidable
trees (see spaces), and law-backed streams used internally for oracle
names.  Structural predicates (zero search, progression tests, row
extraction, normalization) are decided from the presentation, never by
unbounded scanning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import UnsupportedShape

Word = tuple  # finite sequence of naturals


# ---------------------------------------------------------------------------
# pairing

def pair_encode(n: int, k: int) -> int:
    """Cantor pairing: the single bijection shared by points, machines and problems."""
    s = n + k
    return s * (s + 1) // 2 + k


def pair_decode(j: int) -> tuple:
    s = (math.isqrt(8 * j + 1) - 1) // 2
    k = j - s * (s + 1) // 2
    return s - k, k


def is_prefix(v, w) -> bool:
    """Prefix order on words: v is an initial segment of w."""
    return len(v) <= len(w) and tuple(w[: len(v)]) == tuple(v)


# ---------------------------------------------------------------------------
# point constructors

class Point:
    """Base class; subclasses implement value_at."""

    def value_at(self, i: int) -> int:
        raise NotImplementedError

    def prefix(self, n: int) -> Word:
        return tuple(self.value_at(i) for i in range(n))


@dataclass(frozen=True)
class EvPeriodic(Point):
    head: Word
    period: Word

    def __post_init__(self):
        if len(self.period) == 0:
            raise ValueError("period must be nonempty")
        object.__setattr__(self, "head", tuple(self.head))
        object.__setattr__(self, "period", tuple(self.period))

    def value_at(self, i: int) -> int:
        if i < len(self.head):
            return self.head[i]
        return self.period[(i - len(self.head)) % len(self.period)]


@dataclass(frozen=True)
class Interleave(Point):
    first: Point
    second: Point

    def value_at(self, i: int) -> int:
        if i % 2 == 0:
            return self.first.value_at(i // 2)
        return self.second.value_at(i // 2)


class RowTuple(Point):
    """Finite exception rows over a default row, addressed via the pairing."""

    def __init__(self, rows: dict, default: Point):
        self.rows = dict(rows)
        self.default = default

    def row(self, n: int) -> Point:
        return self.rows.get(n, self.default)

    def value_at(self, i: int) -> int:
        n, k = pair_decode(i)
        return self.row(n).value_at(k)

    def __eq__(self, other):
        return (
            isinstance(other, RowTuple)
            and self.rows == other.rows
            and self.default == other.default
        )

    def __repr__(self):
        return f"RowTuple(rows={self.rows!r}, default={self.default!r})"


class LawPoint(Point):
    """Internal: a total stream given by a law, with values memoized.

    Only named constructions with a provable tail discipline build these
    (oracle behaviors, blocking streams, characteristic points).  They
    answer value_at/prefix, and row extraction when a row law is supplied;
    every other structural query is refused.
    """

    def __init__(self, fn: Optional[Callable] = None,
                 row_fn: Optional[Callable] = None, label: str = "law"):
        if fn is None and row_fn is None:
            raise ValueError("LawPoint needs a value law or a row law")
        self._fn = fn
        self._row_fn = row_fn
        self._row_cache: dict = {}
        self._cache: dict = {}
        self.label = label

    def law_row(self, n: int) -> Point:
        if self._row_fn is None:
            raise UnsupportedShape(f"{self.label}: no row law")
        if n not in self._row_cache:
            self._row_cache[n] = self._row_fn(n)
        return self._row_cache[n]

    def value_at(self, i: int) -> int:
        v = self._cache.get(i)
        if v is None:
            if self._fn is not None:
                v = self._fn(i)
            else:
                n, k = pair_decode(i)
                v = self.law_row(n).value_at(k)
            self._cache[i] = v
        return v

    def __repr__(self):
        return f"LawPoint({self.label})"


# ---------------------------------------------------------------------------
# core operations

def value_at(p: Point, i: int) -> int:
    return p.value_at(i)


def prefix(p: Point, n: int) -> Word:
    return p.prefix(n)


def const_point(c: int) -> EvPeriodic:
    return EvPeriodic((), (c,))


ZEROS = const_point(0)
ONES = const_point(1)


def subsample(p: Point, a: int, b: int) -> EvPeriodic:
    """The stream n -> p(a*n + b) of a normalizable point, as EvPeriodic.

    Indices beyond the head cycle mod the period with cycle length at most
    the period length, so head + one cycle determines the result.
    """
    q = normalize(p)
    if q is None:
        raise UnsupportedShape("subsample needs a normalizable point")
    h, m = len(q.head), len(q.period)
    lead = 0
    while a * lead + b < h:
        lead += 1
    cycle = m // math.gcd(a, m)
    head = tuple(q.value_at(a * n + b) for n in range(lead))
    period = tuple(q.value_at(a * (lead + t) + b) for t in range(cycle))
    return EvPeriodic(head, period)


def row(p: Point, n: int) -> Point:
    """The n-th row of p under the global pairing."""
    if isinstance(p, RowTuple):
        return p.row(n)
    if isinstance(p, EvPeriodic):
        # k -> encode(n,k) is quadratic; mod the period length it cycles with
        # period 2*|period|, so the row is EvPeriodic with that period.
        h, m = len(p.head), len(p.period)
        lead = 0
        while pair_encode(n, lead) < h:
            lead += 1
        head = tuple(p.value_at(pair_encode(n, k)) for k in range(lead))
        period = tuple(p.value_at(pair_encode(n, lead + t)) for t in range(2 * m))
        return EvPeriodic(head, period)
    if isinstance(p, LawPoint):
        if p._row_fn is not None:
            return p.law_row(n)
        return LawPoint(fn=lambda k, _n=n: p.value_at(pair_encode(_n, k)),
                        label=f"{p.label}[row {n}]")
    raise UnsupportedShape(f"row extraction on {type(p).__name__}; normalize first")


def rows_view(p: Point):
    """Row accessor that normalizes Interleave points first."""
    if isinstance(p, Interleave):
        q = normalize(p)
        if q is None:
            raise UnsupportedShape("rows of a non-normalizable interleave")
        p = q
    return lambda n: row(p, n)


def depair(p: Point) -> tuple:
    """Split a pair name into its two components."""
    if isinstance(p, Interleave):
        return p.first, p.second
    if isinstance(p, EvPeriodic):
        return subsample(p, 2, 0), subsample(p, 2, 1)
    if isinstance(p, LawPoint):
        return (
            LawPoint(fn=lambda i: p.value_at(2 * i), label=f"{p.label}.fst"),
            LawPoint(fn=lambda i: p.value_at(2 * i + 1), label=f"{p.label}.snd"),
        )
    raise UnsupportedShape(f"depair on {type(p).__name__}")


def point_map(p: Point, f: Callable) -> Point:
    """Apply a symbol map pointwise; exact on EvPeriodic, law-backed otherwise."""
    if isinstance(p, EvPeriodic):
        return EvPeriodic(tuple(f(x) for x in p.head), tuple(f(x) for x in p.period))
    return LawPoint(fn=lambda i: f(p.value_at(i)), label="mapped")


def point_prepend(sym: int, p: Point) -> Point:
    if isinstance(p, EvPeriodic):
        return EvPeriodic((sym,) + p.head, p.period)
    return LawPoint(fn=lambda i: sym if i == 0 else p.value_at(i - 1),
                    label="prepended")


def normalize(p: Point):
    """Eventually periodic normal form, or None when none exists."""
    if isinstance(p, EvPeriodic):
        return p
    if isinstance(p, Interleave):
        a = normalize(p.first)
        b = normalize(p.second)
        if a is None or b is None:
            return None
        h = max(len(a.head), len(b.head))
        la, lb = len(a.period), len(b.period)
        lcm = la * lb // math.gcd(la, lb)
        head = tuple(p.value_at(i) for i in range(2 * h))
        period = tuple(p.value_at(2 * h + t) for t in range(2 * lcm))
        return EvPeriodic(head, period)
    if isinstance(p, RowTuple):
        return _normalize_rowtuple(p)
    return None


def _eventually_constant(q: EvPeriodic):
    vals = set(q.period)
    if len(vals) != 1:
        return None
    c = q.period[0]
    # length of the true pre-period against the constant c
    k = len(q.head)
    while k > 0 and q.head[k - 1] == c:
        k -= 1
    return c, k


def _normalize_rowtuple(p: RowTuple):
    nd = normalize(p.default)
    if nd is None:
        return None
    ec = _eventually_constant(nd)
    if ec is None or ec[1] != 0:
        # a non-constant default hits every residue class infinitely often,
        # in conflict with the exception rows' residues: not periodic
        return None
    c = ec[0]
    bound = 0
    for n, r in p.rows.items():
        nr = normalize(r)
        if nr is None:
            return None
        ecr = _eventually_constant(nr)
        if ecr is None or ecr[0] != c:
            return None
        if ecr[1] > 0:
            bound = max(bound, pair_encode(n, ecr[1] - 1) + 1)
    return EvPeriodic(tuple(p.value_at(i) for i in range(bound)), (c,))


# ---------------------------------------------------------------------------
# structural predicates

def scan_bound(p: Point) -> int:
    """A prefix length provably containing the least zero / least nonzero, if any."""
    if isinstance(p, EvPeriodic):
        return len(p.head) + len(p.period)
    if isinstance(p, Interleave):
        return 2 * max(scan_bound(p.first), scan_bound(p.second)) + 2
    if isinstance(p, RowTuple):
        idxs = set(p.rows)
        n0 = 0
        while n0 in idxs:
            n0 += 1
        bound = pair_encode(n0, scan_bound(p.default)) + 1
        for n, r in p.rows.items():
            bound = max(bound, pair_encode(n, scan_bound(r)) + 1)
        return bound
    raise UnsupportedShape(f"no structural bound for {type(p).__name__}")


def _min_hit(p: Point, want_zero: bool):
    """Least index whose value is zero (want_zero) / nonzero, or None."""
    if isinstance(p, EvPeriodic):
        for i in range(len(p.head) + len(p.period)):
            v = p.value_at(i)
            if (v == 0) == want_zero:
                return i
        return None
    if isinstance(p, Interleave):
        a = _min_hit(p.first, want_zero)
        b = _min_hit(p.second, want_zero)
        cands = [2 * a] if a is not None else []
        if b is not None:
            cands.append(2 * b + 1)
        return min(cands) if cands else None
    if isinstance(p, RowTuple):
        cands = []
        d = _min_hit(p.default, want_zero)
        if d is not None:
            idxs = set(p.rows)
            n0 = 0
            while n0 in idxs:
                n0 += 1
            cands.append(pair_encode(n0, d))
        for n, r in p.rows.items():
            m = _min_hit(r, want_zero)
            if m is not None:
                cands.append(pair_encode(n, m))
        return min(cands) if cands else None
    raise UnsupportedShape(f"zero search on {type(p).__name__}")


def min_zero(p: Point):
    return _min_hit(p, True)


def exists_zero(p: Point) -> bool:
    return min_zero(p) is not None


def nonzero_census(p: Point) -> tuple:
    """("zero", None) | ("one", pos) | ("many", first_pos); decided structurally."""
    if isinstance(p, EvPeriodic):
        if any(x != 0 for x in p.period):
            first = _min_hit(p, False)
            return "many", first
        hits = [i for i, x in enumerate(p.head) if x != 0]
        if not hits:
            return "zero", None
        if len(hits) == 1:
            return "one", hits[0]
        return "many", hits[0]
    if isinstance(p, Interleave):
        ka, pa = nonzero_census(p.first)
        kb, pb = nonzero_census(p.second)
        pos = [x for x in ((2 * pa if pa is not None else None),
                           (2 * pb + 1 if pb is not None else None)) if x is not None]
        first = min(pos) if pos else None
        if ka == "many" or kb == "many" or (ka == "one" and kb == "one"):
            return "many", first
        if ka == "zero" and kb == "zero":
            return "zero", None
        return "one", first
    if isinstance(p, RowTuple):
        kd, pd = nonzero_census(p.default)
        if kd != "zero":
            idxs = set(p.rows)
            n0 = 0
            while n0 in idxs:
                n0 += 1
            first = pair_encode(n0, pd)
            for n, r in p.rows.items():
                m = _min_hit(r, False)
                if m is not None:
                    first = min(first, pair_encode(n, m))
            return "many", first
        count = 0
        first = None
        for n, r in p.rows.items():
            k, pos = nonzero_census(r)
            if k == "many":
                return "many", pair_encode(n, pos)
            if k == "one":
                count += 1
                here = pair_encode(n, pos)
                first = here if first is None else min(first, here)
        if count == 0:
            return "zero", None
        if count == 1:
            return "one", first
        return "many", first
    raise UnsupportedShape(f"nonzero census on {type(p).__name__}")


def all_zero_on_progression(p: Point, a: int, b: int) -> bool:
    """True iff p(a*k + b) = 0 for every k; decided on the normal form by
    scanning the head region plus one full residue cycle beyond it."""
    if a < 1:
        raise ValueError("progression step must be >= 1")
    q = normalize(p)
    if q is None:
        raise UnsupportedShape("progression query on a non-normalizable point")
    h, m = len(q.head), len(q.period)
    cycle = m // math.gcd(a, m)
    k_head = max(0, -(-(h - b) // a))     # first k at or beyond the head
    for k in range(k_head + cycle + 1):
        if q.value_at(a * k + b) != 0:
            return False
    return True
