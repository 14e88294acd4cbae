"""Limit machines with mind-change counting, and the adversary that
forces the maximal number of changes out of a candidate machine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import NonConvergent
from .points import EvPeriodic, scan_bound

QUIET_PERIOD = 64


@dataclass
class LimitRun:
    """Guess history of a limit computation: (input prefix length, output)."""

    guesses: list = field(default_factory=list)

    def record(self, seen: int, guess: tuple):
        if not self.guesses or self.guesses[-1][1] != guess:
            self.guesses.append((seen, tuple(guess)))

    @property
    def mind_changes(self) -> int:
        changes = 0
        for (_, a), (_, b) in zip(self.guesses, self.guesses[1:]):
            if b[: len(a)] != a:
                changes += 1
        return changes

    @property
    def answer(self) -> tuple:
        return self.guesses[-1][1] if self.guesses else ()


def run_lpo_k(k: int, inputs: Sequence, budget: int = 4096) -> LimitRun:
    """Default all-ones guess; flip a component when its zero is found.

    The scan runs to the inputs' structural bounds (capped by the budget),
    so zero detection is exact on finitely presented inputs whenever the
    budget covers them.
    """
    if len(inputs) != k:
        raise ValueError(f"expected {k} inputs")
    run = LimitRun()
    guess = [1] * k
    run.record(0, tuple(guess))
    horizon = min(budget, max((scan_bound(p) for p in inputs), default=0))
    flipped = [False] * k
    for t in range(horizon):
        for i in range(k):
            if not flipped[i] and inputs[i].value_at(t) == 0:
                flipped[i] = True
                guess[i] = 0
                run.record(t + 1, tuple(guess))
    return run


def lpo_k_machine(k: int) -> Callable:
    """The scanning machine above, exposed prefix-in guess-out."""
    def step(prefixes):
        return tuple(0 if any(s == 0 for s in prefixes[i]) else 1
                     for i in range(k))
    return step


@dataclass
class AdversaryResult:
    inputs: tuple       # the constructed finitely presented inputs
    run: LimitRun


def adversary(machine: Callable, k: int, budget: int = 4096,
              quiet: int = QUIET_PERIOD) -> AdversaryResult:
    """Feed all-ones prefixes until the guess is quiet, then plant a zero in
    the next component; repeat through every component."""
    prefixes = [[] for _ in range(k)]
    run = LimitRun()

    def feed(symbols):
        for i in range(k):
            prefixes[i].append(symbols[i])
        run.record(len(prefixes[0]), machine([tuple(p) for p in prefixes]))

    def wait_for_quiet():
        stable = 0
        last = machine([tuple(p) for p in prefixes])
        while stable < quiet:
            if len(prefixes[0]) >= budget:
                raise NonConvergent("no stable guess within the budget")
            feed([1] * k)
            now = run.guesses[-1][1]
            if now == last:
                stable += 1
            else:
                last = now
                stable = 0

    run.record(0, machine([tuple(p) for p in prefixes]))
    wait_for_quiet()
    for c in range(k):
        symbols = [1] * k
        symbols[c] = 0
        feed(symbols)
        wait_for_quiet()
    points = tuple(EvPeriodic(tuple(p), (1,)) for p in prefixes)
    return AdversaryResult(points, run)
