"""Both explicit directions between tree choice and parallelized LLPO,
on the decidable tree class.

The forward direction turns a tree name into one blocking stream per
binary word; an oracle answer supplies, per word, a bit whose child is
still on arbitrarily long tree branches, and the path extractor follows
those bits.  The backward direction encodes the rows' constraints as a
tree whose paths are exactly the admissible answer streams.
"""

from __future__ import annotations

from typing import Optional

from .errors import OutOfDomain, UnsupportedShape
from .machines import Machine, index_machine
from .points import (
    EvPeriodic,
    Interleave,
    LawPoint,
    Point,
    RowTuple,
    normalize,
    pair_decode,
    pair_encode,
    row,
    scan_bound,
)
from .problems import (
    CoordProductSet,
    PointListSet,
    Problem,
    ValueSet,
    llpo_hat_problem,
    llpo_hat_value,
)
from .spaces import FinTree, TreeChar, word_at, word_index
from .witnesses import Witness, compose_witness


# ---------------------------------------------------------------------------
# the constraint tree of a row point (free tails allowed)

class ConstraintTree:
    """Tree of words obeying the rows' parity constraints level by level.

    Unlike FinTree, the path set may be a full coordinate-wise product, so
    paths are described by per-coordinate allowed bits instead of a finite
    live list.
    """

    def __init__(self, point: Point):
        if isinstance(point, Interleave):
            point = normalize(point) or point
        if not isinstance(point, (RowTuple, EvPeriodic)):
            raise UnsupportedShape("constraint trees need structural row points")
        self.point = point
        self.values = llpo_hat_value(point)
        if isinstance(point, RowTuple):
            rows = list(point.rows.values()) + [point.default]
        else:
            rows = [row(point, n) for n in range(8)]
        max_nz = max(scan_bound(r) for r in rows)
        self.stub_depth = max(1, max_nz // 2 + 1)

    def member(self, w) -> bool:
        w = tuple(w)
        n = len(w)
        return all(row(self.point, m).value_at(2 * k + w[m]) == 0
                   for m in range(n) for k in range(n))

    def chi(self, w) -> int:
        return 1 if self.member(w) else 0

    def alive(self, w) -> bool:
        w = tuple(w)
        return all(w[m] in self.values.bits(m) for m in range(len(w)))

    def infinite(self) -> bool:
        return True

    def level(self, n: int) -> list:
        words = [()]
        for _ in range(n):
            words = [w + (b,) for w in words for b in (0, 1)
                     if self.member(w + (b,))]
        return words

    def extension_exists(self, w, n: int) -> bool:
        w = tuple(w)
        if self.alive(w):
            return True
        frontier = [w] if self.member(w) else []
        for _ in range(n - len(w)):
            frontier = [v + (b,) for v in frontier for b in (0, 1)
                        if self.member(v + (b,))]
        return bool(frontier)

    def blocking_search_bound(self, w) -> int:
        return max(self.stub_depth, len(w) + 1) + 1

    def path_values(self) -> CoordProductSet:
        return self.values

    def __repr__(self):
        return f"ConstraintTree(stub={self.stub_depth})"


def tree_path_values(tree) -> ValueSet:
    """The path set of a tree presentation, as a value set."""
    if isinstance(tree, FinTree):
        return PointListSet(tree.live_paths)
    if isinstance(tree, ConstraintTree):
        return tree.path_values()
    raise UnsupportedShape(f"no path set for {type(tree).__name__}")


def wkl_problem() -> Problem:
    """Tree choice over characteristic names of decidable trees."""
    def dom(p):
        return isinstance(p, TreeChar) and p.tree.infinite()

    def value(p):
        return tree_path_values(p.tree)

    return Problem("wkl", "trees", "cantor", dom, value)


# ---------------------------------------------------------------------------
# blocking levels

def comparable(v, w) -> bool:
    v, w = tuple(v), tuple(w)
    shorter, longer = (v, w) if len(v) <= len(w) else (w, v)
    return longer[: len(shorter)] == shorter


def in_blocked_set(tree, w, n: int, i: int) -> bool:
    """No length-n tree word is comparable with the child w·i."""
    wi = tuple(w) + (i,)
    return all(not comparable(v, wi) for v in tree.level(n))


def blocking_index_bruteforce(tree, w, n_max: int) -> Optional[int]:
    """Level-enumeration oracle for the minimal blocking level."""
    for n in range(n_max + 1):
        if in_blocked_set(tree, w, n, 0) or in_blocked_set(tree, w, n, 1):
            return n
    return None


def _child_blocked_at(tree, wi, n: int) -> bool:
    """Presentation-aware test: no length-n tree word comparable with wi."""
    if n <= len(wi):
        return not tree.member(wi[:n])
    return not tree.extension_exists(wi, n)


def blocking_index(tree, w) -> Optional[int]:
    """Minimal level at which some child of w falls off every long branch."""
    w = tuple(w)
    if tree.alive(w + (0,)) and tree.alive(w + (1,)):
        return None
    bound = tree.blocking_search_bound(w)
    for n in range(bound + 1):
        if _child_blocked_at(tree, w + (0,), n) or _child_blocked_at(tree, w + (1,), n):
            return n
    raise OutOfDomain("blocking analysis failed on a malformed tree")


def q_stream(tree, w) -> EvPeriodic:
    """The per-word blocking stream: a pulse flags the doomed child."""
    w = tuple(w)
    n = blocking_index(tree, w)
    if n is None:
        return EvPeriodic((), (0,))
    b0 = _child_blocked_at(tree, w + (0,), n)
    b1 = _child_blocked_at(tree, w + (1,), n)
    if b0 and not b1:
        pos = 2 * n           # even pulse names 1: go right
    elif b1 and not b0:
        pos = 2 * n + 1       # odd pulse names 0: go left
    else:
        return EvPeriodic((), (0,))
    head = [0] * (pos + 1)
    head[pos] = 1
    return EvPeriodic(tuple(head), (0,))


# ---------------------------------------------------------------------------
# forward: tree choice reduces to parallelized LLPO

def _covered_level(length: int) -> int:
    """Largest n with every word of length n indexed below the prefix."""
    n = -1
    while 2 ** (n + 2) - 2 <= length:
        n += 1
    return n


def blocking_rows_machine() -> Machine:
    """Tree name in, tupled blocking streams out (one row per word)."""
    def fn(w):
        L = len(w)
        ell = _covered_level(L)
        if ell < 0:
            return ()

        def member(v):
            return w[word_index(v)] == 1

        levels = [[()] if member(()) else []]
        for n in range(1, ell + 1):
            levels.append([v + (b,) for v in levels[n - 1] for b in (0, 1)
                           if member(v + (b,))])

        def blocked(wi, n):
            return all(not comparable(v, wi) for v in levels[n])

        q_cache: dict = {}

        def q_sym(r, j):
            if r not in q_cache:
                v = word_at(r)
                found = None
                for n in range(ell + 1):
                    c0 = blocked(v + (0,), n)
                    c1 = blocked(v + (1,), n)
                    if c0 or c1:
                        found = (n, c0, c1)
                        break
                q_cache[r] = found
            found = q_cache[r]
            if found is None:
                # no blocking within the covered levels: zeros are safe there
                return 0 if j <= 2 * ell + 1 else None
            n, c0, c1 = found
            if c0 and not c1:
                pos = 2 * n
            elif c1 and not c0:
                pos = 2 * n + 1
            else:
                pos = None
            return 1 if j == pos else 0

        out = []
        i = 0
        while i < L:
            r, j = pair_decode(i)
            s = q_sym(r, j)
            if s is None:
                break
            out.append(s)
            i += 1
        return tuple(out)

    return Machine("blocking-rows", fn)


def path_extractor() -> Machine:
    """Follow the answer bits word by word down the tree."""
    def fn(w):
        L = len(w)
        path = []
        current = ()
        while True:
            idx = word_index(current)
            if idx >= L:
                break
            bit = w[idx]
            if bit not in (0, 1):
                break
            path.append(bit)
            current = current + (bit,)
        return tuple(path)
    return Machine("path-extract", fn)


def wkl_to_llpo_hat() -> Witness:
    def kp(p):
        if not isinstance(p, TreeChar):
            raise UnsupportedShape("tree names are characteristic points here")
        tree = p.tree
        return LawPoint(row_fn=lambda r: q_stream(tree, word_at(r)),
                        label="blocking-rows")

    return Witness(wkl_problem(), llpo_hat_problem(), blocking_rows_machine(),
                   path_extractor(), True, kp, name="wkl_to_llpo_hat")


# ---------------------------------------------------------------------------
# backward: parallelized LLPO reduces to tree choice

def constraint_tree_machine() -> Machine:
    """Emit the characteristic stream of the constraint tree of the rows."""
    def fn(w):
        L = len(w)

        def chi(v):
            n = len(v)
            for m in range(n):
                for k in range(n):
                    idx = pair_encode(m, 2 * k + v[m])
                    if idx >= L:
                        return None
                    if w[idx] != 0:
                        return 0
            return 1

        out = []
        j = 0
        while j < L:
            s = chi(word_at(j))
            if s is None:
                break
            out.append(s)
            j += 1
        return tuple(out)

    return Machine("constraint-tree", fn)


def llpo_hat_to_wkl() -> Witness:
    def kp(p):
        return TreeChar(ConstraintTree(p))

    return Witness(llpo_hat_problem(), wkl_problem(), constraint_tree_machine(),
                   index_machine("copy-path", lambda j: j), True, kp,
                   name="llpo_hat_to_wkl")


def wkl_round_trip() -> Witness:
    """The composed witness between parallelized LLPO and itself."""
    return compose_witness(llpo_hat_to_wkl(), wkl_to_llpo_hat())
