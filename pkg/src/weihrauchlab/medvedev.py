"""Mass problems at desk scale and their embedding into the reduction
lattice as constant multi-valued problems."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .machines import (
    Machine,
    compose,
    const_machine,
    diag,
    identity,
    pair_machine,
    proj1,
    proj2,
    run_on_point,
)
from .points import Interleave, ZEROS, depair, point_prepend
from .problems import Problem, bottom_problem, const_problem, product_problem, sum_problem
from .witnesses import Witness, as_ordinary


@dataclass
class MassProblem:
    """A finite set of finitely presented points (empty = the bottom object)."""

    members: tuple
    name: str = "A"

    def __init__(self, members: Iterable, name: str = "A"):
        self.members = tuple(members)
        self.name = name

    def problem(self) -> Problem:
        if not self.members:
            return bottom_problem()
        return const_problem(self.members, name=f"c_{self.name}")

    def __repr__(self):
        return f"mass[{self.name}]({len(self.members)})"


@dataclass
class MedvedevEntry:
    member: str
    status: str
    coordinate: int = None


@dataclass
class MedvedevReport:
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.entries) and all(e.status == "pass" for e in self.entries)


def medvedev_check(a: MassProblem, b: MassProblem, f: Machine,
                   depth: int = 16, fuel: int = None) -> MedvedevReport:
    """Does f carry every member of b into a, to the checked depth?"""
    report = MedvedevReport()
    for q in b.members:
        outcome = run_on_point(f, q, depth, fuel)
        word = outcome.output
        best_fail = -1
        consistent = False
        for cand in a.members:
            d = next((i for i in range(len(word))
                      if word[i] != cand.value_at(i)), None)
            if d is None:
                consistent = True
                break
            best_fail = max(best_fail, d)
        if consistent and outcome.productive:
            report.entries.append(MedvedevEntry(repr(q), "pass"))
        elif consistent:
            report.entries.append(MedvedevEntry(repr(q), "stall"))
        else:
            report.entries.append(MedvedevEntry(repr(q), "fail", best_fail))
    return report


def embed_forward(f: Machine, a: MassProblem, b: MassProblem) -> Witness:
    """From a translation machine, the reduction between the constant problems:
    ignore the input, push the oracle's member through the machine."""
    return Witness(
        a.problem(), b.problem(),
        identity(),
        compose(f, proj2()),
        False,
        lambda p: p,
        name=f"embed({a.name} <= {b.name})",
    )


def embed_backward(w: Witness) -> Machine:
    """Recover the translation machine: feed a constant input through the
    outer translation alongside the member."""
    base = as_ordinary(w)
    m = compose(base.H, pair_machine(const_machine(ZEROS, "zeros"), identity()))
    return Machine(f"extract({w.name})", m.fn)


def set_sum(a: MassProblem, b: MassProblem) -> MassProblem:
    """Pairwise pairing of members (the lattice join carrier)."""
    return MassProblem(
        tuple(Interleave(p, q) for p in a.members for q in b.members),
        name=f"({a.name}(+){b.name})",
    )


def set_tensor(a: MassProblem, b: MassProblem) -> MassProblem:
    """Tagged union of members (the lattice meet carrier)."""
    return MassProblem(
        tuple(point_prepend(0, p) for p in a.members)
        + tuple(point_prepend(1, q) for q in b.members),
        name=f"({a.name}(x){b.name})",
    )


def set_ops_correspondence(a: MassProblem, b: MassProblem) -> dict:
    """The four tupling/tagging witnesses tying the set operations to the
    problem operations."""
    ca, cb = a.problem(), b.problem()
    c_sum = set_sum(a, b).problem()
    c_tensor = set_tensor(a, b).problem()
    prod = product_problem(ca, cb)
    summ = sum_problem(ca, cb)
    ident = Machine("copy", lambda w: tuple(w))

    sum_to_prod = Witness(c_sum, prod, diag(), ident, True,
                          lambda p: Interleave(p, p),
                          name=f"c_{a.name}(+){b.name} <=sW c_{a.name}*c_{b.name}")
    prod_to_sum = Witness(prod, c_sum, proj1(), ident, True,
                          lambda p: depair(p)[0],
                          name=f"c_{a.name}*c_{b.name} <=sW c_{a.name}(+){b.name}")
    tensor_to_sum = Witness(c_tensor, summ, diag(), ident, True,
                            lambda p: Interleave(p, p),
                            name=f"c_{a.name}(x){b.name} <=sW c_{a.name}+c_{b.name}")
    sum_to_tensor = Witness(summ, c_tensor, proj1(), ident, True,
                            lambda p: depair(p)[0],
                            name=f"c_{a.name}+c_{b.name} <=sW c_{a.name}(x){b.name}")
    return {
        "sum_to_prod": sum_to_prod,
        "prod_to_sum": prod_to_sum,
        "tensor_to_sum": tensor_to_sum,
        "sum_to_tensor": sum_to_tensor,
    }
