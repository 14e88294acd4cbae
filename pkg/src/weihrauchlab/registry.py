"""The witness registry: every named construction, the derived lattice and
parallelization families, corpus builders sized for depth-16 checking, and
the deliberately corrupted negative controls."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import corpus as gen
from .machines import Machine, symbol_machine
from .points import EvPeriodic, Interleave, RowTuple, depair
from .problems import (
    compose_problems,
    id_problem,
    llpo_hat_problem,
    llpo_problem,
    lpo_problem,
)
from .medvedev import MassProblem, embed_forward, set_ops_correspondence
from .weakcomp import compact_choice_witnesses
from .witnesses import (
    Witness,
    cylindrify,
    glb_witnesses,
    hat_is_cylinder,
    id_to_c,
    id_to_llpo_hat,
    llpo_hat_squared,
    llpo_real_to_llpo,
    llpo_to_llpo_real,
    llpo_to_lpo,
    parallel_absorb,
    parallel_extensive,
    parallel_idem,
    parallel_product,
    parallel_sum,
    parallelize_witness,
    product_witness,
    reflexivity,
    strengthen_on_cylinder,
    sum_idem,
    sum_witness,
    uncylindrify,
)
from .wkl import llpo_hat_to_wkl, wkl_round_trip, wkl_to_llpo_hat


@dataclass
class Entry:
    build: Callable            # () -> Witness
    corpus: Callable           # (rng, n) -> list of names
    depth: int = 16
    count: int = 25
    expect_pass: bool = True


def _fixture_mass(rng):
    a = MassProblem([EvPeriodic((), (0,)), EvPeriodic((1,), (0,))], "A")
    b = MassProblem([EvPeriodic((), (1,)), EvPeriodic((0, 1), (1,))], "B")
    return a, b


def _pairs(inner):
    def build(rng, n):
        return gen.pair_points(rng, inner, inner, n)
    return build


def _llpo(rng, n):
    return gen.llpo_points(rng, n)


def _llpo_forced(rng, n):
    return gen.llpo_points(rng, n, allow_free=False)


def _any(rng, n):
    return gen.any_points(rng, n)


def _hat(rng, n):
    return gen.llpo_hat_inputs(rng, n)


def _free_heavy(rng, n):
    return [gen.free_heavy_rowtuple(rng) for _ in range(n)]


def _compact_backward(rng, n):
    return [gen.compact_backward_input(rng) for _ in range(n)]


def _trees(rng, n):
    return gen.tree_names(rng, n)


def _clopens(rng, n):
    return gen.clopen_names(rng, n)


def _dyadics(rng, n):
    return gen.dyadic_names(rng, n)


def _squared(rng, n):
    return gen.squared_inputs(rng, n)


def named_witnesses() -> dict:
    """Name -> Entry for every registered witness family."""
    entries = {}

    entries["refl(lpo)"] = Entry(lambda: reflexivity(lpo_problem()), _any)
    entries["refl(llpo)"] = Entry(lambda: reflexivity(llpo_problem()), _llpo)
    entries["llpo_to_lpo"] = Entry(llpo_to_lpo, _llpo)
    entries["id_to_c"] = Entry(id_to_c, _any)
    entries["id_to_llpo_hat"] = Entry(id_to_llpo_hat, _any)
    entries["llpo_hat_squared"] = Entry(
        lambda: llpo_hat_squared(
            compose_problems(llpo_hat_problem(), llpo_hat_problem())),
        _squared)
    entries["llpo_to_llpo_real"] = Entry(llpo_to_llpo_real, _llpo)
    entries["llpo_real_to_llpo"] = Entry(llpo_real_to_llpo, _dyadics)
    entries["wkl_to_llpo_hat"] = Entry(wkl_to_llpo_hat, _trees)
    entries["llpo_hat_to_wkl"] = Entry(llpo_hat_to_wkl, _hat)
    entries["wkl_round_trip"] = Entry(wkl_round_trip, _hat, depth=8, count=6)
    entries["compact_to_llpo_hat"] = Entry(
        lambda: compact_choice_witnesses()[0], _clopens)
    entries["llpo_hat_to_compact"] = Entry(
        lambda: compact_choice_witnesses()[1], _compact_backward)

    # composition / transitivity
    def _compose_real():
        from .witnesses import compose_witness
        return compose_witness(llpo_real_to_llpo(), llpo_to_lpo())
    entries["llpo_real_to_lpo"] = Entry(_compose_real, _dyadics)

    # lattice laws: sums
    entries["sum_idem_fwd(lpo)"] = Entry(
        lambda: sum_idem(lpo_problem())[0], _any)
    entries["sum_idem_bwd(lpo)"] = Entry(
        lambda: sum_idem(lpo_problem())[1], _pairs(gen.any_point))
    entries["glb_left(lpo,llpo)"] = Entry(
        lambda: glb_witnesses(lpo_problem(), llpo_problem())[0],
        _pairs_mixed_lpo_llpo)
    entries["glb_right(lpo,llpo)"] = Entry(
        lambda: glb_witnesses(lpo_problem(), llpo_problem())[1],
        _pairs_mixed_lpo_llpo)
    entries["sum_mono(llpo_to_lpo)"] = Entry(
        lambda: sum_witness(llpo_to_lpo(), llpo_to_lpo()),
        _pairs(gen.llpo_point))
    entries["sum_comm(lpo,llpo)"] = Entry(
        _sum_comm, _pairs_mixed_lpo_llpo)
    entries["sum_comm_rev(llpo,lpo)"] = Entry(
        lambda: _sum_comm(reverse=True), _pairs_llpo_lpo)
    entries["sum_assoc(lpo)"] = Entry(_sum_assoc, _triple_pairs)
    entries["sum_assoc_rev(lpo)"] = Entry(
        lambda: _sum_assoc(reverse=True), _right_triple_pairs)

    # lattice laws: products
    entries["prod_mono(llpo_to_lpo)"] = Entry(
        lambda: product_witness(llpo_to_lpo(), llpo_to_lpo()),
        _pairs(gen.llpo_point))
    entries["prod_comm(lpo,llpo)"] = Entry(_prod_comm, _pairs_mixed_lpo_llpo)
    entries["prod_comm_rev(llpo,lpo)"] = Entry(
        lambda: _prod_comm(reverse=True), _pairs_llpo_lpo)
    entries["prod_assoc(lpo)"] = Entry(_prod_assoc, _triple_pairs)
    entries["prod_assoc_rev(lpo)"] = Entry(
        lambda: _prod_assoc(reverse=True), _right_triple_pairs)
    entries["prod_id_intro(lpo)"] = Entry(_prod_id_intro, _any)
    entries["prod_id_elim(lpo)"] = Entry(_prod_id_elim, _pairs(gen.any_point))

    # cylinders
    entries["cyl(llpo_to_lpo)"] = Entry(
        lambda: cylindrify(llpo_to_lpo()), _pairs_id_llpo)
    entries["uncyl(llpo_to_lpo)"] = Entry(
        lambda: uncylindrify(cylindrify(llpo_to_lpo()),
                             llpo_problem(), lpo_problem()),
        _llpo)
    entries["cylinder(llpo_hat)"] = Entry(
        lambda: hat_is_cylinder(llpo_problem()), _pairs_id_hat)
    entries["strong_on_cylinder"] = Entry(
        lambda: strengthen_on_cylinder(parallel_extensive(llpo_problem()),
                                       hat_is_cylinder(llpo_problem())),
        _llpo_forced)

    # parallelization family
    entries["parallel_extensive(lpo)"] = Entry(
        lambda: parallel_extensive(lpo_problem()), _any)
    entries["parallel_extensive(llpo)"] = Entry(
        lambda: parallel_extensive(llpo_problem()), _llpo_forced)
    entries["parallelize(llpo_to_lpo)"] = Entry(
        lambda: parallelize_witness(llpo_to_lpo()), _hat)
    entries["parallel_idem_down(llpo)"] = Entry(
        lambda: parallel_idem(llpo_problem())[0], _hat_of_hat)
    entries["parallel_idem_up(llpo)"] = Entry(
        lambda: parallel_idem(llpo_problem())[1], _hat)
    entries["parallel_absorb(llpo)"] = Entry(
        lambda: parallel_absorb(llpo_problem())[0], _pairs(gen.llpo_hat_input))
    entries["parallel_split(llpo)"] = Entry(
        lambda: parallel_absorb(llpo_problem())[1], _hat)
    entries["parallel_product(lpo,llpo)"] = Entry(
        lambda: parallel_product(lpo_problem(), llpo_problem())[0],
        _pairhat_inputs)
    entries["parallel_product_rev(lpo,llpo)"] = Entry(
        lambda: parallel_product(lpo_problem(), llpo_problem())[1],
        _split_hat_pairs)
    entries["parallel_sum(llpo,llpo)"] = Entry(
        lambda: parallel_sum(llpo_problem(), llpo_problem()),
        _sumhat_inputs)

    # Medvedev set operations
    entries["medvedev_sum_to_prod"] = Entry(
        lambda: _med_ops()["sum_to_prod"], _any)
    entries["medvedev_prod_to_sum"] = Entry(
        lambda: _med_ops()["prod_to_sum"], _pairs(gen.any_point))
    entries["medvedev_tensor_to_sum"] = Entry(
        lambda: _med_ops()["tensor_to_sum"], _any)
    entries["medvedev_sum_to_tensor"] = Entry(
        lambda: _med_ops()["sum_to_tensor"], _pairs(gen.any_point))
    entries["medvedev_embed"] = Entry(_med_embed, _any)

    return entries


def _med_ops():
    rng = gen.rng_for("mass-fixture")
    a, b = _fixture_mass(rng)
    return set_ops_correspondence(a, b)


def _med_embed():
    rng = gen.rng_for("mass-fixture")
    a, b = _fixture_mass(rng)
    f = Machine("to-A", lambda w: EvPeriodic((), (0,)).prefix(len(w)))
    return embed_forward(f, a, b)


def _pairs_mixed_lpo_llpo(rng, n):
    return gen.pair_points(rng, gen.any_point, gen.llpo_point, n)


def _pairs_id_llpo(rng, n):
    return gen.pair_points(rng, gen.any_point, gen.llpo_point, n)


def _pairs_id_hat(rng, n):
    return gen.pair_points(rng, gen.any_point, gen.llpo_hat_input, n)


def _triple_pairs(rng, n):
    return [Interleave(Interleave(gen.any_point(rng), gen.any_point(rng)),
                       gen.any_point(rng)) for _ in range(n)]


def _right_triple_pairs(rng, n):
    return [Interleave(gen.any_point(rng),
                       Interleave(gen.any_point(rng), gen.any_point(rng)))
            for _ in range(n)]


def _pairs_llpo_lpo(rng, n):
    return gen.pair_points(rng, gen.llpo_point, gen.any_point, n)


def _hat_of_hat(rng, n):
    return [RowTuple({0: gen.llpo_hat_input(rng), 2: gen.llpo_hat_input(rng)},
                     gen.llpo_hat_input(rng)) for _ in range(n)]


def _pairhat_inputs(rng, n):
    out = []
    for _ in range(n):
        rows = {k: Interleave(gen.any_point(rng),
                              gen.llpo_point(rng, allow_free=False))
                for k in range(rng.randrange(1, 3))}
        default = Interleave(gen.ev_periodic(rng),
                             EvPeriodic((0, 2), (0,)))
        out.append(RowTuple(rows, default))
    return out


def _split_hat_pairs(rng, n):
    # the first slot feeds the zero-searching function: rows must extract
    return [Interleave(gen.rowable_point(rng), gen.llpo_hat_input(rng))
            for _ in range(n)]


def _sumhat_inputs(rng, n):
    def hat(r):
        return gen.llpo_hat_input(r, max_free=0)
    return [RowTuple(
        {0: Interleave(hat(rng), hat(rng))},
        Interleave(hat(rng), hat(rng)))
        for _ in range(n)]


def _sum_comm(reverse=False):
    """f+g reduces to g+f by swapping slots and re-tagging."""
    from .machines import pair_machine, proj1, proj2, Machine as M
    from .problems import sum_problem

    f, g = lpo_problem(), llpo_problem()
    if reverse:
        f, g = g, f
    fg = sum_problem(f, g)
    gf = sum_problem(g, f)
    swap = pair_machine(proj2(), proj1())

    def h_fn(w):
        if len(w) == 0:
            return ()
        n = w[0]
        rest = tuple(w[i] for i in range(1, len(w)))
        return ((1 if n == 0 else 0),) + rest

    def kp(p):
        a, b = depair(p)
        return Interleave(b, a)

    return Witness(fg, gf, swap, M("retag", h_fn), True, kp,
                   name="sum_comm")


def _sum_assoc(reverse=False):
    """(f+f)+f reduces to f+(f+f) by re-nesting, and back."""
    from .machines import Machine as M, pair_machine, proj1 as p1, proj2 as p2, compose as comp
    from .problems import sum_problem

    f = lpo_problem()
    left = sum_problem(sum_problem(f, f), f)
    right = sum_problem(f, sum_problem(f, f))
    to_right = pair_machine(comp(p1(), p1()),
                            pair_machine(comp(p2(), p1()), p2()))
    to_left = pair_machine(pair_machine(p1(), comp(p1(), p2())),
                           comp(p2(), p2()))

    def h_fwd(w):
        # right-nested tag stream n.(m.)r -> left-nested
        if len(w) == 0:
            return ()
        n = w[0]
        rest = tuple(w[i] for i in range(1, len(w)))
        if n == 0:
            return (0, 0) + rest
        if len(rest) == 0:
            return ()
        m = rest[0]
        rr = rest[1:]
        return ((0, 1) + rr) if m == 0 else ((1,) + rr)

    def h_bwd(w):
        # left-nested tag stream (n.m.)r -> right-nested
        if len(w) == 0:
            return ()
        n = w[0]
        rest = tuple(w[i] for i in range(1, len(w)))
        if n != 0:
            return (1, 1) + rest
        if len(rest) == 0:
            return ()
        m = rest[0]
        rr = rest[1:]
        return ((0,) + rr) if m == 0 else ((1, 0) + rr)

    def kp_fwd(p):
        ab, c = depair(p)
        a, b = depair(ab)
        return Interleave(a, Interleave(b, c))

    def kp_bwd(p):
        a, bc = depair(p)
        b, c = depair(bc)
        return Interleave(Interleave(a, b), c)

    if reverse:
        return Witness(right, left, to_left, M("renest-l", h_bwd), True,
                       kp_bwd, name="sum_assoc_rev")
    return Witness(left, right, to_right, M("renest-r", h_fwd), True, kp_fwd,
                   name="sum_assoc")


def _prod_comm(reverse=False):
    from .machines import pair_machine, proj1, proj2, Machine as M
    from .problems import product_problem

    f, g = lpo_problem(), llpo_problem()
    if reverse:
        f, g = g, f
    fg = product_problem(f, g)
    gf = product_problem(g, f)
    swap = pair_machine(proj2(), proj1())

    def kp(p):
        a, b = depair(p)
        return Interleave(b, a)

    return Witness(fg, gf, swap, swap, True, kp, name="prod_comm")


def _prod_assoc(reverse=False):
    from .machines import pair_machine, proj1 as p1, proj2 as p2, compose as comp
    from .problems import product_problem

    f = lpo_problem()
    left = product_problem(product_problem(f, f), f)
    right = product_problem(f, product_problem(f, f))
    to_right = pair_machine(comp(p1(), p1()),
                            pair_machine(comp(p2(), p1()), p2()))
    to_left = pair_machine(pair_machine(p1(), comp(p1(), p2())),
                           comp(p2(), p2()))

    def kp_fwd(p):
        ab, c = depair(p)
        a, b = depair(ab)
        return Interleave(a, Interleave(b, c))

    def kp_bwd(p):
        a, bc = depair(p)
        b, c = depair(bc)
        return Interleave(Interleave(a, b), c)

    if reverse:
        return Witness(right, left, to_left, to_right, True, kp_bwd,
                       name="prod_assoc_rev")
    return Witness(left, right, to_right, to_left, True, kp_fwd,
                   name="prod_assoc")


def _prod_id_intro():
    """f reduces to f x id: duplicate, answer from the first slot."""
    from .machines import diag, proj1 as p1
    from .problems import product_problem

    f = lpo_problem()
    fi = product_problem(f, id_problem())
    return Witness(f, fi, diag(), p1(), True, lambda p: Interleave(p, p),
                   name="prod_id_intro")


def _prod_id_elim():
    """f x id reduces to f: query the first slot, copy the second through."""
    from .machines import pair_machine, proj1 as p1, proj2 as p2, compose as comp
    from .problems import product_problem

    f = lpo_problem()
    fi = product_problem(f, id_problem())
    h = pair_machine(p2(), comp(p2(), p1()))

    def kp(p):
        return depair(p)[0]

    return Witness(fi, f, p1(), h, False, kp, name="prod_id_elim")


# ---------------------------------------------------------------------------
# negative controls

def corrupted_witnesses() -> dict:
    """Deliberately broken witnesses; every one must fail with a coordinate."""
    out = {}

    w = llpo_to_lpo()
    copy_h = symbol_machine("copy-not-negate",
                            lambda wd, j: wd[0] if j == 0 else 0,
                            lambda j: j + 1)
    out["llpo_to_lpo_swapped"] = (
        Witness(w.f, w.g, w.K, copy_h, True, w.k_point, name="broken-llpo_to_lpo"),
        lambda rng, n: [EvPeriodic((5,), (0,))] * max(1, n // 5),
    )

    base = wkl_to_llpo_hat()
    flip = Machine("flip-path", lambda wd: tuple(
        1 - s if s in (0, 1) else s for s in base.H.eval(wd)))
    out["wkl_flipped_path"] = (
        Witness(base.f, base.g, base.K, flip, True, base.k_point,
                name="broken-wkl"),
        lambda rng, n: gen.tree_names(rng, max(1, n // 5)),
    )

    good = product_witness(llpo_to_lpo(), llpo_to_lpo())
    bad_half = Witness(llpo_to_lpo().f, llpo_to_lpo().g, llpo_to_lpo().K,
                       copy_h, True, llpo_to_lpo().k_point, name="bad-half")
    broken_prod = product_witness(llpo_to_lpo(), bad_half)
    out["product_with_broken_half"] = (
        Witness(broken_prod.f, broken_prod.g, broken_prod.K, broken_prod.H,
                broken_prod.strong, broken_prod.k_point, name="broken-product"),
        lambda rng, n: [Interleave(EvPeriodic((5,), (0,)),
                                   EvPeriodic((0, 5), (0,)))] * max(1, n // 5),
    )

    rngm = gen.rng_for("mass-fixture")
    a, b = _fixture_mass(rngm)
    wrong = Machine("to-B-not-A", lambda wd: b.members[0].prefix(len(wd)))
    out["medvedev_wrong_target"] = (
        embed_forward(wrong, a, b),
        lambda rng, n: gen.any_points(rng, max(1, n // 5)),
    )

    return out
