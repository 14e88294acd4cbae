"""Monotone word machines: the effective layer.

A Machine is a pure function from a finite input prefix to a finite output
prefix, monotone under the prefix order.  The stream function it induces is
the limit over ever longer input prefixes; run_on_point performs that
widening.  Evaluation receives prefix *views* (length plus indexing), which
lets machines with sparse access patterns run on very long prefixes of
lazily evaluated points without materializing them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .points import Point, Word, pair_decode, pair_encode, prefix as point_prefix

DEFAULT_FUEL = 10 ** 6


# ---------------------------------------------------------------------------
# prefix views

class PointView:
    """Length-bounded view of a point's prefix; values computed on demand."""

    __slots__ = ("point", "length")

    def __init__(self, point: Point, length: int):
        self.point = point
        self.length = length

    def __len__(self):
        return self.length

    def __getitem__(self, i):
        if i < 0 or i >= self.length:
            raise IndexError(i)
        return self.point.value_at(i)


class StrideView:
    """Every stride-th symbol starting at offset (component of a pair)."""

    __slots__ = ("base", "stride", "offset", "length")

    def __init__(self, base, stride: int, offset: int):
        self.base = base
        self.stride = stride
        self.offset = offset
        n = len(base)
        self.length = 0 if n <= offset else (n - offset + stride - 1) // stride

    def __len__(self):
        return self.length

    def __getitem__(self, i):
        if i < 0 or i >= self.length:
            raise IndexError(i)
        return self.base[self.offset + self.stride * i]


class RowView:
    """The n-th row of a tupled word under the global pairing."""

    __slots__ = ("base", "n", "length")

    def __init__(self, base, n: int):
        self.base = base
        self.n = n
        L = len(base)
        k = 0
        while pair_encode(n, k) < L:
            k += 1
        self.length = k

    def __len__(self):
        return self.length

    def __getitem__(self, k):
        if k < 0 or k >= self.length:
            raise IndexError(k)
        return self.base[pair_encode(self.n, k)]


def first_half(w):
    return StrideView(w, 2, 0)


def second_half(w):
    return StrideView(w, 2, 1)


def interleave_words(a: Sequence, b: Sequence) -> Word:
    la, lb = len(a), len(b)
    n = min(2 * la, 2 * lb + 1)
    out = []
    for i in range(n):
        out.append(a[i // 2] if i % 2 == 0 else b[i // 2])
    return tuple(out)


# ---------------------------------------------------------------------------
# machines

@dataclass
class Machine:
    name: str
    fn: Callable
    fuel: int = DEFAULT_FUEL

    def eval(self, w) -> Word:
        return self.fn(w)

    def __repr__(self):
        return f"Machine({self.name})"


@dataclass
class EvalOutcome:
    output: Word
    productive: bool
    width: int = 0


def run_on_point(m: Machine, p: Point, depth: int, fuel: int = None) -> EvalOutcome:
    """Widen the input prefix geometrically until depth symbols are emitted."""
    budget = m.fuel if fuel is None else fuel
    width = min(16, budget)
    out = ()
    while True:
        out = m.eval(PointView(p, width))
        if len(out) >= depth:
            return EvalOutcome(tuple(out[:depth]), True, width)
        if width >= budget:
            return EvalOutcome(tuple(out), False, width)
        width = min(width * 2, budget)


# primitives ----------------------------------------------------------------

def identity() -> Machine:
    return Machine("id", lambda w: tuple(w))


def const_machine(q: Point, name: str = None) -> Machine:
    return Machine(name or "const", lambda w: point_prefix(q, len(w)))


def shift_l() -> Machine:
    return Machine("L", lambda w: tuple(w[i] for i in range(1, len(w))))


def inject(sym: int) -> Machine:
    return Machine(f"inject{sym}", lambda w: (sym,) + tuple(w))


def proj1() -> Machine:
    return Machine("pi1", lambda w: tuple(first_half(w)))


def proj2() -> Machine:
    return Machine("pi2", lambda w: tuple(second_half(w)))


def diag() -> Machine:
    def fn(w):
        out = []
        for i in range(len(w)):
            out.append(w[i])
            out.append(w[i])
        return tuple(out)
    return Machine("D", fn)


def pair_machine(f: Machine, g: Machine) -> Machine:
    return Machine(f"<{f.name},{g.name}>",
                   lambda w: interleave_words(f.eval(w), g.eval(w)))


def tensor(f: Machine, g: Machine) -> Machine:
    return Machine(f"({f.name}x{g.name})",
                   lambda w: interleave_words(f.eval(first_half(w)),
                                              g.eval(second_half(w))))


def compose(outer: Machine, inner: Machine) -> Machine:
    return Machine(f"{outer.name}.{inner.name}",
                   lambda w: outer.eval(inner.eval(w)))


def compose_all(*ms: Machine) -> Machine:
    m = ms[0]
    for nxt in ms[1:]:
        m = compose(m, nxt)
    return m


def countable_tuple(ms: Sequence, uniform: Machine) -> Machine:
    """Row n of the output is (ms[n] or uniform) applied to row n of the input."""
    ms = list(ms)

    def fn(w):
        outs: dict = {}

        def out_row(n):
            if n not in outs:
                mach = ms[n] if n < len(ms) else uniform
                outs[n] = mach.eval(RowView(w, n))
            return outs[n]

        result = []
        j = 0
        while True:
            n, k = pair_decode(j)
            r = out_row(n)
            if k >= len(r):
                break
            result.append(r[k])
            j += 1
        return tuple(result)

    return Machine(f"tuple({uniform.name})", fn)


def _emit_budget(length: int) -> int:
    """Output budget per evaluation: enough to cover the pairing diagonal
    of the visible input, so tupled outputs are not starved by tupled
    inputs, while keeping every evaluation finite."""
    return max(64, (length + 2) * (length + 3))


def index_machine(name: str, src: Callable) -> Machine:
    """Output symbol j is input symbol src(j); emits the longest closed
    prefix within the evaluation budget."""
    def fn(w):
        L = len(w)
        cap = _emit_budget(L)
        out = []
        j = 0
        while j < cap:
            i = src(j)
            if i >= L:
                break
            out.append(w[i])
            j += 1
        return tuple(out)
    return Machine(name, fn)


def symbol_machine(name: str, sym: Callable, needs: Callable) -> Machine:
    """Output symbol j is sym(w, j), emitted once len(w) >= needs(j),
    within the evaluation budget."""
    def fn(w):
        L = len(w)
        cap = _emit_budget(L)
        out = []
        j = 0
        while j < cap and needs(j) <= L:
            out.append(sym(w, j))
            j += 1
        return tuple(out)
    return Machine(name, fn)


# diagnostics ---------------------------------------------------------------

def audit_monotone(m: Machine, point: Point, lengths) -> bool:
    """Check eval(v) is a prefix of eval(w) along a chain of prefixes of point."""
    prev = None
    for n in sorted(lengths):
        cur = m.eval(PointView(point, n))
        if prev is not None:
            if tuple(cur[: len(prev)]) != tuple(prev):
                return False
        prev = cur
    return True
