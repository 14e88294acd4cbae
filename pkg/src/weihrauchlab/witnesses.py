"""Reduction witnesses and the bounded-depth checker.

A Witness claims f <= g (ordinary) or f <=sW g (strong) via an input
translation K and an output translation H.  The checker replays the claim
against every canonical oracle behavior of g at K(p) for each corpus name
p: a reported failure pins a definite coordinate, a pass is sound to the
checked depth.  Besides K the witness carries a point-level mirror of K
(k_point) so the oracle's value set can be computed on a finitely
presented name; the mirror is validated against the machine on a sampled
prefix window at every check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import MiddleMismatch, NotACylinder, OutOfDomain
from .machines import (
    Machine,
    PointView,
    compose,
    compose_all,
    const_machine,
    countable_tuple,
    diag,
    identity,
    index_machine,
    inject,
    interleave_words,
    pair_machine,
    proj1,
    proj2,
    run_on_point,
    shift_l,
    symbol_machine,
    tensor,
)
from .points import (
    EvPeriodic,
    Interleave,
    LawPoint,
    Point,
    RowTuple,
    depair,
    min_zero,
    nonzero_census,
    normalize,
    pair_decode,
    pair_encode,
    point_map,
    prefix,
    row,
    subsample,
)
from .problems import (
    BEHAVIOR_CAP,
    FiniteNatsSet,
    PairSet,
    Problem,
    RowProductSet,
    TaggedUnionSet,
    c_problem,
    double_hat_problem,
    id_problem,
    llpo_hat_problem,
    llpo_problem,
    llpo_value,
    lpo_problem,
    lpo_value,
    product_problem,
    sum_problem,
)
from .spaces import Dyadic, decode_dyadic, dyadic_code, dyadic_from_code


@dataclass
class Witness:
    f: Problem
    g: Problem
    K: Machine
    H: Machine
    strong: bool
    k_point: Callable
    name: str = ""

    def __post_init__(self):
        if not self.name:
            rel = "<=sW" if self.strong else "<=W"
            self.name = f"{self.f.name} {rel} {self.g.name}"

    def __repr__(self):
        return f"Witness({self.name})"


@dataclass
class CheckEntry:
    point: str
    behavior: int
    status: str  # pass | fail | stall | error
    coordinate: Optional[int] = None
    note: str = ""


@dataclass
class Report:
    witness: str
    depth: int
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.entries) and all(e.status == "pass" for e in self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if e.status != "pass"]

    def verdict(self) -> str:
        if self.passed:
            return f"PASS (verified to depth {self.depth})"
        bad = self.failures()
        if not self.entries:
            return "EMPTY (no corpus entries)"
        e = bad[0]
        where = f" at coordinate {e.coordinate}" if e.coordinate is not None else ""
        return f"FAIL ({len(bad)}/{len(self.entries)} branches, first {e.status}{where})"

    def render(self) -> str:
        return f"{self.witness}: {self.verdict()}"


VALIDATE_WIDTH = 64


def check(w: Witness, corpus, depth: int = 16, cap: int = BEHAVIOR_CAP,
          validate_width: int = VALIDATE_WIDTH, fuel: int = None) -> Report:
    """Replay the witness on every corpus name and oracle behavior branch."""
    report = Report(w.name, depth)
    for p in corpus:
        label = repr(p)
        if not w.f.in_domain(p):
            raise OutOfDomain(f"{w.name}: corpus name outside dom({w.f.name})")
        fv = w.f.value_set(p)
        q = w.k_point(p)
        kout = tuple(w.K.eval(PointView(p, validate_width)))
        if kout != prefix(q, len(kout)):
            report.entries.append(CheckEntry(label, -1, "error",
                                             note="K mirror mismatch"))
            continue
        if not w.g.in_domain(q):
            report.entries.append(CheckEntry(label, -1, "fail",
                                             note=f"K image outside dom({w.g.name})"))
            continue
        gv = w.g.value_set(q)
        for bi, r in enumerate(gv.behaviors(depth, cap)):
            feed = r if w.strong else Interleave(p, r)
            outcome = run_on_point(w.H, feed, depth, fuel)
            coord = fv.check_prefix(outcome.output)
            if coord is not None:
                report.entries.append(CheckEntry(label, bi, "fail", coord))
            elif not outcome.productive:
                report.entries.append(CheckEntry(label, bi, "stall",
                                                 note=f"only {len(outcome.output)} symbols"))
            else:
                report.entries.append(CheckEntry(label, bi, "pass"))
    return report


# ---------------------------------------------------------------------------
# basic witnesses

def reflexivity(f: Problem) -> Witness:
    return Witness(f, f, identity(), identity(), True, lambda p: p,
                   name=f"refl({f.name})")


def as_ordinary(w: Witness) -> Witness:
    """Strong witnesses are ordinary ones that ignore the fed-through input."""
    if not w.strong:
        return w
    return Witness(w.f, w.g, w.K, compose(w.H, proj2()), False, w.k_point,
                   name=w.name + " [ord]")


def least_degree(f: Problem, f_realizer: Machine, g: Problem,
                 q: Point) -> Witness:
    """A computable problem reduces to anything with a point in its domain:
    the inner translation is constant, the outer one recomputes f."""
    return Witness(
        f, g,
        const_machine(q, "const-dom-point"),
        compose(f_realizer, proj1()),
        False,
        lambda p, _q=q: _q,
        name=f"least({f.name} <=W {g.name})",
    )


def repr_transport(w: Witness, q_m: Machine, r_m: Machine, s_m: Machine,
                   t_m: Machine, new_f: Problem, new_g: Problem,
                   q_pt: Callable, s_pt: Callable) -> Witness:
    """Transport a reduction along representation translations."""
    base = as_ordinary(w)
    h2 = compose_all(r_m, base.H, tensor(q_m, t_m))
    k2 = compose_all(s_m, base.K, q_m)
    return Witness(new_f, new_g, k2, h2, False,
                   lambda p: s_pt(base.k_point(q_pt(p))),
                   name=f"transport({w.name})")


# ---------------------------------------------------------------------------
# composition, products, sums

def compose_witness(w1: Witness, w2: Witness) -> Witness:
    """From f <= m and m <= g derive f <= g."""
    if w1.g.name != w2.f.name:
        raise MiddleMismatch(f"{w1.g.name} vs {w2.f.name}")
    k = compose(w2.K, w1.K)
    kp = lambda p: w2.k_point(w1.k_point(p))
    if w1.strong and w2.strong:
        return Witness(w1.f, w2.g, k, compose(w1.H, w2.H), True, kp,
                       name=f"{w1.name} ; {w2.name}")
    a, b = as_ordinary(w1), as_ordinary(w2)
    h = compose(a.H, pair_machine(proj1(),
                                  compose(b.H, tensor(a.K, identity()))))
    return Witness(w1.f, w2.g, k, h, False, kp,
                   name=f"{w1.name} ; {w2.name}")


def product_witness(w1: Witness, w2: Witness) -> Witness:
    ff = product_problem(w1.f, w2.f)
    gg = product_problem(w1.g, w2.g)
    k = tensor(w1.K, w2.K)

    def kp(p):
        a, b = depair(p)
        return Interleave(w1.k_point(a), w2.k_point(b))

    if w1.strong and w2.strong:
        return Witness(ff, gg, k, tensor(w1.H, w2.H), True, kp,
                       name=f"({w1.name}) x ({w2.name})")
    a, b = as_ordinary(w1), as_ordinary(w2)
    shuffle = pair_machine(
        pair_machine(compose(proj1(), proj1()), compose(proj1(), proj2())),
        pair_machine(compose(proj2(), proj1()), compose(proj2(), proj2())),
    )
    h = compose(tensor(a.H, b.H), shuffle)
    return Witness(ff, gg, k, h, False, kp, name=f"({w1.name}) x ({w2.name})")


def sum_witness(w1: Witness, w2: Witness) -> Witness:
    ff = sum_problem(w1.f, w2.f)
    gg = sum_problem(w1.g, w2.g)
    k = tensor(w1.K, w2.K)

    def kp(p):
        a, b = depair(p)
        return Interleave(w1.k_point(a), w2.k_point(b))

    if w1.strong and w2.strong:
        def h_fn(w):
            if len(w) == 0:
                return ()
            n, rest = w[0], tuple(w[i] for i in range(1, len(w)))
            inner = w1.H if n == 0 else w2.H
            return ((0 if n == 0 else 1),) + tuple(inner.eval(rest))
        return Witness(ff, gg, k, Machine("sumH", h_fn), True, kp,
                       name=f"({w1.name}) + ({w2.name})")

    a, b = as_ordinary(w1), as_ordinary(w2)

    def h_fn(w):
        pq = [w[i] for i in range(0, len(w), 2)]
        tagged = [w[i] for i in range(1, len(w), 2)]
        if not tagged:
            return ()
        n, rest = tagged[0], tuple(tagged[1:])
        p_word = tuple(pq[i] for i in range(0, len(pq), 2))
        q_word = tuple(pq[i] for i in range(1, len(pq), 2))
        if n == 0:
            return (0,) + tuple(a.H.eval(interleave_words(p_word, rest)))
        return (1,) + tuple(b.H.eval(interleave_words(q_word, rest)))

    return Witness(ff, gg, k, Machine("sumH", h_fn), False, kp,
                   name=f"({w1.name}) + ({w2.name})")


def sum_idem(f: Problem) -> tuple:
    """f <=sW f+f (left shift) and f+f <=sW f (tag a fixed branch)."""
    ss = sum_problem(f, f)
    fwd = Witness(f, ss, diag(), shift_l(), True,
                  lambda p: Interleave(p, p), name=f"{f.name} <=sW {f.name}+{f.name}")
    bwd = Witness(ss, f, proj1(), inject(0), True,
                  lambda p: depair(p)[0], name=f"{f.name}+{f.name} <=sW {f.name}")
    return fwd, bwd


def glb_witnesses(f: Problem, g: Problem) -> tuple:
    """f+g below both components, by answering a fixed tagged branch."""
    ss = sum_problem(f, g)
    to_f = Witness(ss, f, proj1(), inject(0), True, lambda p: depair(p)[0],
                   name=f"{ss.name} <=sW {f.name}")
    to_g = Witness(ss, g, proj2(), inject(1), True, lambda p: depair(p)[1],
                   name=f"{ss.name} <=sW {g.name}")
    return to_f, to_g


def glb_factor(wf: Witness, wg: Witness) -> Witness:
    """From h <= f and h <= g derive h <= f+g."""
    if wf.f.name != wg.f.name:
        raise MiddleMismatch("factoring needs a common lower problem")
    fwd, _ = sum_idem(wf.f)
    summed = sum_witness(wf, wg)
    # align the middle problem objects (sum of equal problems)
    fwd = Witness(fwd.f, summed.f, fwd.K, fwd.H, fwd.strong, fwd.k_point,
                  name=fwd.name)
    return compose_witness(fwd, summed)


# ---------------------------------------------------------------------------
# cylindrification

def cylindrify(w: Witness) -> Witness:
    """f <=W g gives id x f <=sW id x g, with the fed-through input stored
    in the identity slot."""
    base = as_ordinary(w)
    ff = product_problem(id_problem(), base.f)
    gg = product_problem(id_problem(), base.g)
    k = pair_machine(identity(), compose(base.K, proj2()))
    h = pair_machine(
        compose(proj1(), proj1()),
        compose(base.H, pair_machine(compose(proj2(), proj1()), proj2())),
    )

    def kp(p):
        _, q = depair(p)
        return Interleave(p, base.k_point(q))

    return Witness(ff, gg, k, h, True, kp, name=f"cyl({w.name})")


def uncylindrify(w: Witness, f: Problem, g: Problem) -> Witness:
    """From id x f <=sW id x g recover f <=W g."""
    if not w.strong:
        raise MiddleMismatch("uncylindrify expects a strong witness")
    k = compose_all(proj2(), w.K, diag())
    h = compose_all(proj2(), w.H,
                    tensor(compose_all(proj1(), w.K, diag()), identity()))

    def kp(p):
        return depair(w.k_point(Interleave(p, p)))[1]

    return Witness(f, g, k, h, False, kp, name=f"uncyl({w.name})")


def to_own_cylinder(f: Problem) -> Witness:
    """f <=sW id x f: duplicate the input and read the second slot."""
    ff = product_problem(id_problem(), f)
    return Witness(f, ff, diag(), proj2(), True,
                   lambda p: Interleave(p, p), name=f"{f.name} <=sW id*{f.name}")


def strengthen_on_cylinder(w: Witness, cyl: Witness) -> Witness:
    """Upgrade f <=W g to f <=sW g when id x g <=sW g is witnessed."""
    if not cyl.strong or cyl.g.name != w.g.name:
        raise NotACylinder(f"need a strong id*{w.g.name} <=sW {w.g.name} witness")
    s0 = to_own_cylinder(w.f)
    c = cylindrify(w)
    s0 = Witness(s0.f, c.f, s0.K, s0.H, True, s0.k_point, name=s0.name)
    c = Witness(c.f, cyl.f, c.K, c.H, True, c.k_point, name=c.name)
    out = compose_witness(compose_witness(s0, c), cyl)
    out.name = f"strong({w.name})"
    return out


# ---------------------------------------------------------------------------
# parallelization

def hat_for(f: Problem) -> Problem:
    if f.name == "lpo":
        return c_problem()
    if f.name == "llpo":
        return llpo_hat_problem()
    raise MiddleMismatch(f"no flat parallelization registered for {f.name}")


def value_fn_for(f: Problem) -> Callable:
    if f.name == "lpo":
        return lpo_value
    if f.name == "llpo":
        return llpo_value
    raise MiddleMismatch(f"no value law registered for {f.name}")


def srow(p: Point, n: int) -> Point:
    """Row extraction that normalizes interleaved points first."""
    if isinstance(p, Interleave):
        q = normalize(p)
        if q is not None:
            p = q
    return row(p, n)


def _rowwise_point(kp: Callable, p: Point) -> Point:
    if isinstance(p, Interleave):
        p = normalize(p) or p
    if isinstance(p, RowTuple):
        return RowTuple({n: kp(r) for n, r in p.rows.items()}, kp(p.default))
    return LawPoint(row_fn=lambda n: kp(row(p, n)), label="rowwise")


def parallel_extensive(f: Problem) -> Witness:
    """One instance answered by countably many copies on the diagonal.
    The outer translation reads the first flat answer bit, so the witness
    is even strong."""
    fh = hat_for(f)
    k = index_machine("diag-tuple", lambda i: pair_decode(i)[1])
    h = symbol_machine("first-answer",
                       lambda w, j: w[0] if j == 0 else 0,
                       lambda j: 1 if j == 0 else j + 1)
    return Witness(f, fh, k, h, True,
                   lambda p: RowTuple({}, p), name=f"{f.name} <=sW {fh.name}")


def parallelize_witness(w: Witness) -> Witness:
    """Apply a reduction between single-answer problems row by row."""
    fh, gh = hat_for(w.f), hat_for(w.g)
    k = countable_tuple([], w.K)
    kp = lambda p: _rowwise_point(w.k_point, p)

    if w.strong:
        def h_fn(wd):
            out = []
            kk = 0
            while kk < len(wd):
                word = (wd[kk],) + (0,) * max(len(wd), 4)
                res = w.H.eval(word)
                if not res:
                    break
                out.append(res[0])
                kk += 1
            return tuple(out)
        return Witness(fh, gh, k, Machine("hatH", h_fn), True, kp,
                       name=f"hat({w.name})")

    base = as_ordinary(w)

    def h_fn(wd):
        from .machines import RowView, first_half, second_half
        rows = first_half(wd)
        flat = second_half(wd)
        out = []
        kk = 0
        while kk < len(flat):
            row_word = tuple(RowView(rows, kk))
            if not row_word:
                break
            answer = (flat[kk],) + (0,) * len(row_word)
            res = base.H.eval(interleave_words(row_word, answer))
            if not res:
                break
            out.append(res[0])
            kk += 1
        return tuple(out)

    return Witness(fh, gh, k, Machine("hatH", h_fn), False, kp,
                   name=f"hat({w.name})")


def parallel_idem(f: Problem) -> tuple:
    """Flattening and diagonal witnesses between the hat and the double hat."""
    fh = hat_for(f)
    vf = value_fn_for(f)
    fhh = double_hat_problem(vf, lambda p: True, f"{fh.name}^hat")

    def flatten_src(i):
        jk, m = pair_decode(i)
        j, k = pair_decode(jk)
        return pair_encode(j, pair_encode(k, m))

    k_flat = index_machine("flatten", flatten_src)

    def kp_flat(p):
        return LawPoint(
            fn=lambda i: p.value_at(flatten_src(i)),
            row_fn=lambda jk: row(row(p, pair_decode(jk)[0]), pair_decode(jk)[1]),
            label="flattened",
        )

    down = Witness(fhh, fh, k_flat, identity(), True, kp_flat,
                   name=f"{fhh.name} <=sW {fh.name}")

    def widen_src(i):
        _, km = pair_decode(i)
        return km

    k_wide = index_machine("rediag", widen_src)

    def kp_wide(p):
        return LawPoint(fn=lambda i: p.value_at(widen_src(i)),
                        row_fn=lambda j: p, label="rediag")

    up = Witness(fh, fhh, k_wide,
                 index_machine("row0", lambda k: pair_encode(0, k)),
                 True, kp_wide, name=f"{fh.name} <=sW {fhh.name}")
    return down, up


def parallel_absorb(f: Problem) -> tuple:
    """Even/odd merge between the hat and its square."""
    fh = hat_for(f)
    pp = product_problem(fh, fh)

    def merge_src(j):
        n, k = pair_decode(j)
        return 2 * pair_encode(n // 2, k) + (n % 2)

    k_merge = index_machine("evenodd-merge", merge_src)

    def kp_merge(p):
        a, b = depair(p)
        return LawPoint(
            fn=lambda j: p.value_at(merge_src(j)),
            row_fn=lambda n: srow(a if n % 2 == 0 else b, n // 2),
            label="merged",
        )

    absorb = Witness(pp, fh, k_merge, identity(), True, kp_merge,
                     name=f"{fh.name}*{fh.name} <=sW {fh.name}")
    split = Witness(fh, pp, diag(), proj1(), True,
                    lambda p: Interleave(p, p),
                    name=f"{fh.name} <=sW {fh.name}*{fh.name}")
    return absorb, split


def pairhat_problem(f: Problem, g: Problem) -> Problem:
    """Countably many (f x g)-instances: rows are pair names."""
    vf, vg = value_fn_for(f), value_fn_for(g)

    def dom(p):
        try:
            for n in range(16):
                a, b = depair(row(p, n))
                if not (f.in_domain(a) and g.in_domain(b)):
                    return False
            return True
        except Exception:
            return False

    def value(p):
        def row_vs(n):
            a, b = depair(row(p, n))
            return PairSet(FiniteNatsSet(vf(a)), FiniteNatsSet(vg(b)))
        return RowProductSet(row_vs)

    return Problem(f"hat({f.name}x{g.name})", "baire", "baire", dom, value)


def parallel_product(f: Problem, g: Problem) -> tuple:
    """Both directions of hat(f x g) == hat(f) x hat(g)."""
    fh, gh = hat_for(f), hat_for(g)
    ph = pairhat_problem(f, g)
    pp = product_problem(fh, gh)

    def split_src(j):
        par, s = j % 2, j // 2
        i, k = pair_decode(s)
        return pair_encode(i, 2 * k + par)

    k_split = index_machine("split-rows", split_src)

    def kp_split(p):
        def half_rows(par):
            return LawPoint(row_fn=lambda i: depair(srow(p, i))[par],
                            label=f"half{par}")
        return Interleave(half_rows(0), half_rows(1))

    h_fwd = symbol_machine(
        "pair-up",
        lambda w, j: (w[2 * pair_decode(j)[0] + (0 if pair_decode(j)[1] == 0 else 1)]
                      if pair_decode(j)[1] <= 1 else 0),
        lambda j: 2 * pair_decode(j)[0] + 2,
    )
    fwd = Witness(ph, pp, k_split, h_fwd, True, kp_split,
                  name=f"{ph.name} <=sW {pp.name}")

    def join_src(j):
        i, t = pair_decode(j)
        return 2 * pair_encode(i, t // 2) + (t % 2)

    k_join = index_machine("join-rows", join_src)

    def kp_join(p):
        a, b = depair(p)
        return LawPoint(
            fn=lambda j: p.value_at(join_src(j)),
            row_fn=lambda i: Interleave(srow(a, i), srow(b, i)),
            label="joined")

    h_bwd = index_machine(
        "pair-down", lambda j: pair_encode(j // 2, j % 2))
    bwd = Witness(pp, ph, k_join, h_bwd, True, kp_join,
                  name=f"{pp.name} <=sW {ph.name}")
    return fwd, bwd


def sumhat_problem(f: Problem, g: Problem) -> Problem:
    """Countably many (hat f + hat g)-instances: rows are pairs of hat inputs."""
    fh, gh = hat_for(f), hat_for(g)

    def dom(p):
        try:
            for n in range(8):
                a, b = depair(row(p, n))
                if not (fh.in_domain(a) and gh.in_domain(b)):
                    return False
            return True
        except Exception:
            return False

    def value(p):
        def row_vs(n):
            a, b = depair(row(p, n))
            return TaggedUnionSet(fh.value_set(a), gh.value_set(b))
        return RowProductSet(row_vs)

    return Problem(f"hat({fh.name}+{gh.name})", "baire", "baire", dom, value)


def parallel_sum(f: Problem, g: Problem) -> Witness:
    """Absorption: countably many (hat f + hat g) instances collapse into one."""
    fh, gh = hat_for(f), hat_for(g)
    lhs = sumhat_problem(f, g)
    rhs = sum_problem(fh, gh)

    def gather_src(t):
        par, s = t % 2, t // 2
        ij, k = pair_decode(s)
        i, j = pair_decode(ij)
        return pair_encode(j, 2 * pair_encode(i, k) + par)

    k_gather = index_machine("gather", gather_src)

    def kp_gather(p):
        def half(par):
            def row_of(ij):
                i, j = pair_decode(ij)
                return srow(depair(srow(p, j))[par], i)
            return LawPoint(row_fn=row_of, label=f"gather{par}")
        return Interleave(half(0), half(1))

    def h_src(t):
        j, u = pair_decode(t)
        if u == 0:
            return 0
        return 1 + pair_encode(u - 1, j)

    # row j of the answer repeats the tag, then reads its slice of the flat answer
    def h_fn(w):
        L = len(w)
        out = []
        t = 0
        while t < L:
            src = h_src(t)
            if src >= L:
                break
            out.append(w[src])
            t += 1
        return tuple(out)

    return Witness(lhs, rhs, k_gather, Machine("scatter", h_fn), True,
                   kp_gather, name=f"{lhs.name} <=sW {rhs.name}")


# ---------------------------------------------------------------------------
# named witnesses from explicit constructions

def llpo_to_lpo() -> Witness:
    """Search the even positions for a nonzero; negate the verdict."""
    k = symbol_machine("even-scan",
                       lambda w, n: 1 if w[2 * n] == 0 else 0,
                       lambda n: 2 * n + 1)
    h = symbol_machine("negate",
                       lambda w, j: (1 if w[0] == 0 else 0) if j == 0 else 0,
                       lambda j: j + 1)

    def kp(p):
        return point_map(subsample(p, 2, 0), lambda x: 1 if x == 0 else 0)

    return Witness(llpo_problem(), lpo_problem(), k, h, True, kp,
                   name="llpo_to_lpo")


def _min_search_h() -> Machine:
    """Emit, per output coordinate k, the least m whose cell <k,m> is zero."""
    def fn(w):
        L = len(w)
        out = []
        k = 0
        while True:
            m = 0
            found = None
            while True:
                idx = pair_encode(k, m)
                if idx >= L:
                    break
                if w[idx] == 0:
                    found = m
                    break
                m += 1
            if found is None:
                break
            out.append(found)
            k += 1
        return tuple(out)
    return Machine("min-search", fn)


def id_to_c() -> Witness:
    """Recover a stream from zero-search answers over guessed cells."""
    def k_fn_sym(w, i):
        j, _n = pair_decode(i)
        k, m = pair_decode(j)
        return 0 if w[k] == m else 1

    k = symbol_machine("cell-guess", k_fn_sym,
                       lambda i: pair_decode(pair_decode(i)[0])[0] + 1)

    def kp(p):
        def row_of(j):
            k_, m = pair_decode(j)
            return EvPeriodic((), (0 if p.value_at(k_) == m else 1,))
        return LawPoint(row_fn=row_of, label="cell-guesses")

    return Witness(id_problem(), c_problem(), k, _min_search_h(), True, kp,
                   name="id_to_c")


def id_to_llpo_hat() -> Witness:
    """As id_to_c, with single-pulse rows signalling equality parity-wise."""
    def k_fn_sym(w, i):
        j, n = pair_decode(i)
        k_, m = pair_decode(j)
        if w[k_] == m:
            return 1 if n == 1 else 0
        return 1 if n == 0 else 0

    k = symbol_machine("cell-guess-pulse", k_fn_sym,
                       lambda i: pair_decode(pair_decode(i)[0])[0] + 1)

    def kp(p):
        def row_of(j):
            k_, m = pair_decode(j)
            if p.value_at(k_) == m:
                return EvPeriodic((0, 1), (0,))
            return EvPeriodic((1,), (0,))
        return LawPoint(row_fn=row_of, label="cell-pulses")

    return Witness(id_problem(), llpo_hat_problem(), k, _min_search_h(), True,
                   kp, name="id_to_llpo_hat")


def double_absorb_machine() -> Machine:
    """The index shuffle merging two nested universal quantifiers."""
    def src(i):
        k, t = pair_decode(i)
        if t % 2 == 0:
            n, m = pair_decode(t // 2)
            return pair_encode(pair_encode(k, 2 * n), 2 * m)
        n, m = pair_decode((t - 1) // 2)
        return pair_encode(pair_encode(k, 2 * n + 1), 2 * m)
    return index_machine("double-absorb", src)


def double_absorb_point(p: Point) -> Point:
    """Point mirror of the absorb shuffle, with structural rows."""
    if isinstance(p, Interleave):
        p = normalize(p) or p
    if not isinstance(p, (RowTuple, EvPeriodic)):
        raise OutOfDomain("absorb mirror needs a structural row point")

    def row_of(k):
        def even_rows(n):
            return subsample(row(p, pair_encode(k, 2 * n)), 2, 0)

        def odd_rows(n):
            return subsample(row(p, pair_encode(k, 2 * n + 1)), 2, 0)

        if isinstance(p, RowTuple):
            exc_even = {}
            exc_odd = {}
            for e in p.rows:
                k_, t = pair_decode(e)
                if k_ != k:
                    continue
                if t % 2 == 0:
                    exc_even[t // 2] = even_rows(t // 2)
                else:
                    exc_odd[(t - 1) // 2] = odd_rows((t - 1) // 2)
            base_e = subsample(p.default, 2, 0)
            evens = RowTuple(exc_even, base_e)
            odds = RowTuple(exc_odd, base_e)
        else:
            evens = LawPoint(row_fn=even_rows, label="absorb-evens")
            odds = LawPoint(row_fn=odd_rows, label="absorb-odds")
        return Interleave(evens, odds)

    mach = double_absorb_machine()
    src_cache: dict = {}

    def fn(i):
        if i not in src_cache:
            k, t = pair_decode(i)
            if t % 2 == 0:
                n, m = pair_decode(t // 2)
                src_cache[i] = pair_encode(pair_encode(k, 2 * n), 2 * m)
            else:
                n, m = pair_decode((t - 1) // 2)
                src_cache[i] = pair_encode(pair_encode(k, 2 * n + 1), 2 * m)
        return p.value_at(src_cache[i])

    return LawPoint(fn=fn, row_fn=row_of, label="double-absorb")


def llpo_hat_squared(composite: Problem) -> Witness:
    """Two rounds of parallelized LLPO collapse into one round."""
    return Witness(composite, llpo_hat_problem(), double_absorb_machine(),
                   identity(), True, double_absorb_point,
                   name="llpo_hat_squared")


# real-number pair ----------------------------------------------------------

_ZERO_CODE = dyadic_code(Dyadic(0, 0))


def llpo_to_llpo_real() -> Witness:
    """Map a pulse position to a signed power of two."""
    def k_fn(w):
        L = len(w)
        j = None
        for i in range(L):
            if w[i] != 0:
                j = i
                break
        if j is None:
            count = max(0, L // 2)
            return (_ZERO_CODE,) * count
        m = j // 2
        kk = j // 2
        x = Dyadic(1, kk) if j % 2 == 0 else Dyadic(-1, kk)
        return (_ZERO_CODE,) * m + (dyadic_code(x),) * (L - m)

    def kp(p):
        kind, pos = nonzero_census(p)
        if kind == "zero":
            return EvPeriodic((), (_ZERO_CODE,))
        j = pos
        kk = j // 2
        x = Dyadic(1, kk) if j % 2 == 0 else Dyadic(-1, kk)
        return EvPeriodic((_ZERO_CODE,) * (j // 2), (dyadic_code(x),))

    from .problems import llpo_real_problem
    return Witness(llpo_problem(), llpo_real_problem(),
                   Machine("pulse-to-dyadic", k_fn), identity(), True, kp,
                   name="llpo_to_llpo_real")


def llpo_real_to_llpo() -> Witness:
    """Stage-search the sign; emit a pulse of the matching parity."""
    def detect(w):
        for i in range(len(w)):
            x = dyadic_from_code(w[i])
            num, den = x.as_fraction()
            if num * (2 ** i) > den:
                return i, 1
            if -num * (2 ** i) > den:
                return i, 0
        return None

    def k_fn(w):
        L = len(w)
        hit = detect(w)
        if hit is None:
            return (0,) * L
        i_det, want = hit
        pos = i_det if i_det % 2 == (0 if want == 1 else 1) else i_det + 1
        out = [0] * max(L, pos + 1)
        out[pos] = 1
        return tuple(out[:max(L, pos + 1)])

    def kp(p):
        x = decode_dyadic(p)
        if x.sign() == 0:
            return EvPeriodic((), (0,))
        # replay the machine's detection on the actual name
        from .points import scan_bound
        bound = scan_bound(p) + x.exponent + 4
        w = prefix(p, bound)
        i_det, want = detect(w)
        pos = i_det if i_det % 2 == (0 if want == 1 else 1) else i_det + 1
        head = [0] * (pos + 1)
        head[pos] = 1
        return EvPeriodic(tuple(head), (0,))

    from .problems import llpo_real_problem
    return Witness(llpo_real_problem(), llpo_problem(),
                   Machine("sign-search", k_fn), identity(), True, kp,
                   name="llpo_real_to_llpo")


# discontinuity -------------------------------------------------------------

@dataclass
class DiscontinuityData:
    """Witness data for reducing zero-search to a discontinuous map:
    a limit point q, a family converging to it with a uniform output
    disagreement below cell_count, and a convergence modulus."""

    q: Point
    family: Callable  # n -> Point
    agree_bound: Callable  # L -> index M with family(n)[0:L] = q[0:L] for n >= M
    cell_count: int
    expected: tuple  # prefix of the map's value at q, length cell_count


def lpo_from_discontinuity(data: DiscontinuityData, g: Problem) -> Witness:
    def k_fn(w):
        L = len(w)
        j = None
        for i in range(L):
            if w[i] == 0:
                j = i
                break
        if j is not None:
            return prefix(data.family(j), L)
        ell = 0
        while ell < L and data.agree_bound(ell + 1) <= L:
            ell += 1
        return prefix(data.q, ell)

    def h_fn(w):
        k = data.cell_count
        if len(w) < k:
            return ()
        seen = tuple(w[i] for i in range(k))
        verdict = 1 if seen == tuple(data.expected) else 0
        return (verdict,) + (0,) * (len(w) - k)

    def kp(p):
        j = min_zero(p)
        return data.q if j is None else data.family(j)

    return Witness(lpo_problem(), g, Machine("select-family", k_fn),
                   Machine("ball-test", h_fn), True, kp,
                   name=f"lpo_from_discontinuity({g.name})")


# cylinder witnesses for the parallelized principles -------------------------

def hat_is_cylinder(f: Problem) -> Witness:
    """id x hat(f) <=sW hat(f): pack the identity slot into extra rows."""
    fh = hat_for(f)
    idf = id_to_llpo_hat() if fh.name == "llpo_hat" else id_to_c()
    prod = product_witness(idf, reflexivity(fh))
    absorb, _ = parallel_absorb(f)
    prod = Witness(prod.f, absorb.f, prod.K, prod.H, prod.strong, prod.k_point,
                   name=prod.name)
    out = compose_witness(prod, absorb)
    out.name = f"cylinder({fh.name})"
    return out
