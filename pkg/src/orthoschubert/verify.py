"""Property suites shared by the test-suite and the ``verify`` CLI command.

Every suite returns a :class:`SuiteResult`; a suite never raises on a failed
property, it records a counterexample instead.  Exceptions raised by the code
under test are also recorded as failures.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import chains as ch
from .counting import count_path_tuples, hilbert_value, multiplicity, multiplicity_oracle
from .domination import (
    dominates,
    dominates_oracle,
    is_distinguished,
    least_o_dominating_oracle,
    o_dominates,
    slice_element,
    to_distinguished,
)
from .index_sets import IdElement, all_Id, interval_Id, leq
from .pi_phi import (
    ortho_phi,
    ortho_phi_trace,
    ortho_pi,
    satisfies_ddag_element,
    satisfies_ddag_monomial,
)
from .root_lattice import Monomial, Root, build_regions
from .standard_monomials import count_sm, v_degree


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **info: object) -> None:
        self.failures.append({k: _show(v) for k, v in info.items()})

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failures"


def _show(x: object) -> object:
    if isinstance(x, IdElement):
        return list(x.entries)
    if isinstance(x, Monomial):
        return x.text()
    if isinstance(x, (list, tuple)):
        return [_show(y) for y in x]
    return x if isinstance(x, (int, str, bool, float, type(None))) else str(x)


def _guard(res: SuiteResult, fn: Callable[[], bool], **ctx: object) -> None:
    res.checked += 1
    try:
        ok = fn()
    except Exception as exc:  # recorded, not raised
        res.fail(error=repr(exc), **ctx)
        return
    if not ok:
        res.fail(**ctx)


def _holds(pred: Callable[[Monomial], bool], S: Monomial) -> bool:
    try:
        return bool(pred(S))
    except Exception:
        return False


def minimize(pred: Callable[[Monomial], bool], S: Monomial) -> Monomial:
    """Greedily drop single copies of roots while ``pred`` keeps failing."""
    changed = True
    while changed:
        changed = False
        for a in S.support:
            T = S - Monomial([a])
            if T and not _holds(pred, T):
                S, changed = T, True
                break
    return S


def _guard_monomial(res: SuiteResult, pred: Callable[[Monomial], bool], S: Monomial, **ctx: object) -> None:
    """Like _guard for a monomial property; failures are reported minimized."""
    res.checked += 1
    if _holds(pred, S):
        return
    small = minimize(pred, S)
    try:
        pred(small)
        err = None
    except Exception as exc:
        err = repr(exc)
    res.fail(S=S, minimized=small, error=err, **ctx)


# generators -----------------------------------------------------------------

def bases_with_board(d: int) -> list[IdElement]:
    return [v for v in all_Id(d) if build_regions(v).on_v]


def random_monomial(rng: random.Random, pool, max_degree: int, min_degree: int = 1) -> Monomial:
    k = rng.randint(min_degree, max_degree)
    return Monomial([rng.choice(pool) for _ in range(k)])


def square_free_subsets(pool) -> Iterator[Monomial]:
    for k in range(len(pool) + 1):
        for c in itertools.combinations(pool, k):
            yield Monomial(c)


def all_chains_on(v: IdElement) -> Iterator[tuple[Root, ...]]:
    return ch.iter_chains(build_regions(v).on_v)


# inverse maps ------------------------------------------------------------------

def suite_inverse_maps(d: int, samples: int, seed: int, max_degree: int = 6) -> SuiteResult:
    """phi-bar after pi-bar, and pi-bar after phi-bar, on random inputs."""
    rng = random.Random(seed)
    res = SuiteResult(f"inverse maps d={d}")
    bases = bases_with_board(d)
    if not bases:
        return res
    for _ in range(samples):
        v = rng.choice(bases)
        S = random_monomial(rng, build_regions(v).on_v, max_degree)

        def fwd(S: Monomial, v=v) -> bool:
            w, Sp = ortho_pi(S, v)
            return ortho_phi(w, Sp, v) == S

        _guard_monomial(res, fwd, S, check="phi(pi(S)) = S", v=v)
    made = 0
    tries = 0
    while made < samples and tries < 50 * samples:
        tries += 1
        v = rng.choice(bases)
        ws = [x for x in interval_Id(v) if x != v]
        w = rng.choice(ws)
        T = random_monomial(rng, build_regions(v).on_v, max_degree, min_degree=0)
        if not o_dominates(w, T, v):
            continue
        made += 1

        def back() -> bool:
            S = ortho_phi(w, T, v)
            return ortho_pi(S, v) == (w, T)

        _guard(res, back, check="pi(phi(w,T)) = (w,T)", v=v, w=w, T=T)
    if made < samples:
        res.fail(check="generator", note=f"only {made} O-dominated pairs drawn")
    return res


# pi-bar contract ----------------------------------------------------------------

def _prop41_one(res: SuiteResult, v: IdElement, S: Monomial) -> None:
    def body(S: Monomial) -> bool:
        w, Sp = ortho_pi(S, v)
        return (
            leq(v, w)
            and v_degree(w, v) + Sp.degree == S.degree
            and o_dominates(w, Sp, v)
            and w == least_o_dominating_oracle(S, v)
        )

    _guard_monomial(res, body, S, v=v)


def suite_prop41_exhaustive(d: int) -> SuiteResult:
    res = SuiteResult(f"pi-bar contract, all square-free d={d}")
    for v in bases_with_board(d):
        for S in square_free_subsets(build_regions(v).on_v):
            if S:
                _prop41_one(res, v, S)
    return res


def suite_prop41_random(d: int, samples: int, seed: int, max_degree: int = 6) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult(f"pi-bar contract, random d={d}")
    bases = bases_with_board(d)
    for _ in range(samples):
        v = rng.choice(bases)
        on = build_regions(v).on_v
        if rng.random() < 0.5:
            S = Monomial(rng.sample(on, rng.randint(1, len(on))))
        else:
            S = random_monomial(rng, on, max_degree)
        _prop41_one(res, v, S)
    return res


# double dagger ------------------------------------------------------------------

def suite_ddag(d: int, samples: int, seed: int, max_degree: int = 5) -> SuiteResult:
    """(double dagger) preservation by pi-bar and phi-bar for every f avoided by v."""
    rng = random.Random(seed)
    res = SuiteResult(f"double dagger preservation d={d}")
    bases = bases_with_board(d)
    for _ in range(samples):
        v = rng.choice(bases)
        fs = [f for f in range(1, 2 * d + 1) if f not in v]
        f = rng.choice(fs)
        fstar = 2 * d + 1 - f
        pool = [a for a in build_regions(v).on_v if a.r != f and a.c != fstar]
        if pool:
            S = random_monomial(rng, pool, max_degree)

            def pi_side() -> bool:
                w, Sp = ortho_pi(S, v)
                return satisfies_ddag_element(w, f) and satisfies_ddag_monomial(Sp, f, d)

            _guard(res, pi_side, side="pi", v=v, f=f, S=S)
        ws = [x for x in interval_Id(v) if satisfies_ddag_element(x, f)]
        w = rng.choice(ws)
        T = random_monomial(rng, pool, max_degree, min_degree=0) if pool else Monomial()
        if o_dominates(w, T, v):
            _guard(
                res,
                lambda: satisfies_ddag_monomial(ortho_phi(w, T, v), f, d),
                side="phi", v=v, f=f, w=w, T=T,
            )
    return res


# chains ---------------------------------------------------------------------------

def suite_chain_structure(d: int) -> SuiteResult:
    """S_C distinguished and symmetric with evenly many diagonal elements; types
    end odd components; q ordering follows the chain."""
    res = SuiteResult(f"S_C structure d={d}")
    for v in bases_with_board(d):
        for C in all_chains_on(v):
            def body(C=C, v=v) -> bool:
                SC = ch.chain_monomial(C, d)
                diag = [a for a in SC.support if a.r == 2 * d + 1 - a.c]
                types, crit = ch.element_types(C, d)
                comps = ch.connected_components(C, d)
                odd_ok = all(
                    (len(r) % 2 == 1) == (types[r[-1]] in (ch.H, ch.S)) for r in comps
                )
                inner_ok = all(types[i] == ch.V for r in comps for i in list(r)[:-1])
                after_crit = crit is None or all(t == ch.S for t in types[crit + 1:])
                qs = [ch.q_element(C, i, d) for i in range(len(C))]
                q_ok = all(ch.greater(qs[i], C[i + 1]) for i in range(len(C) - 1))
                w = ch.w_of_chain(C, v)
                return (
                    SC.is_square_free()
                    and is_distinguished(SC.support)
                    and SC.is_symmetric(d)
                    and len(diag) % 2 == 0
                    and w.in_Id
                    and odd_ok and inner_ok and after_crit and q_ok
                )

            _guard(res, body, v=v, C=list(C))
    return res


def suite_odepth_parity(d: int) -> SuiteResult:
    """Type H elements have odd O-depth; a type V element closing its component has
    even O-depth; consecutive increments are 1 or 2 as the type rule says."""
    res = SuiteResult(f"O-depth parity d={d}")
    for v in bases_with_board(d):
        for C in all_chains_on(v):
            def body(C=C) -> bool:
                types, _ = ch.element_types(C, d)
                od = [ch.odepth_in_chain(C, i, d) for i in range(len(C))]
                comps = ch.connected_components(C, d)
                last = {r[-1] for r in comps}
                for i, t in enumerate(types):
                    if t == ch.H and od[i] % 2 == 0:
                        return False
                    if t == ch.V and i in last and od[i] % 2 == 1:
                        return False
                for i in range(len(C) - 1):
                    ph = ch.project_h(C[i], d)
                    jump = 2 if types[i] == ch.H and ph is not None and ch.greater(ph, C[i + 1]) else 1
                    if od[i + 1] - od[i] != jump:
                        return False
                return od[0] == 1 if C else True

            _guard(res, body, v=v, C=list(C))
    return res


def _monomials(d: int, samples: int | None, seed: int, max_degree: int) -> Iterator[tuple[IdElement, Monomial]]:
    """Exhaustive square-free monomials when samples is None, else random ones."""
    if samples is None:
        for v in bases_with_board(d):
            for S in square_free_subsets(build_regions(v).on_v):
                if S:
                    yield v, S
        return
    rng = random.Random(seed)
    bases = bases_with_board(d)
    for _ in range(samples):
        v = rng.choice(bases)
        yield v, random_monomial(rng, build_regions(v).on_v, max_degree)


def suite_shift_law(d: int, samples: int | None = None, seed: int = 0, max_degree: int = 7) -> SuiteResult:
    res = SuiteResult(f"O-depth shift law d={d}")
    for v, S in _monomials(d, samples, seed, max_degree):
        def body(S=S) -> bool:
            od = ch.odepth_table(S, d)
            top = max(od.values())
            for j in range(1, top + 1, 2):
                sup = S.filter(lambda a: od[a] >= j)
                od2 = ch.odepth_table(sup, d)
                if any(od2[a] != od[a] - j + 1 for a in sup.support):
                    return False
            return True

        _guard(res, body, v=v, S=S)
    return res


def suite_odepth_vs_depth(d: int, samples: int | None = None, seed: int = 0, max_degree: int = 7) -> SuiteResult:
    """O-depth is at least the depth in S together with its reflection, strictly
    increases along the order, and the dynamic programme agrees with exhaustive
    chain enumeration."""
    res = SuiteResult(f"O-depth >= depth, DP = oracle d={d}")
    for v, S in _monomials(d, samples, seed, max_degree):
        def body(S=S) -> bool:
            od = ch.odepth_table(S, d)
            if od != ch.odepth_oracle(S, d):
                return False
            dt = ch.depth_table(S + S.reflect(d))
            if any(od[a] < dt[a] for a in S.support):
                return False
            return all(
                od[a] < od[b]
                for a in S.support for b in S.support if ch.greater(a, b)
            )

        _guard(res, body, v=v, S=S)
    return res


def _pr_union(S: Monomial, od: dict, lo: int, hi: int | None = None) -> Monomial:
    return S.filter(lambda a: od[a] >= lo and (hi is None or od[a] <= hi))


def suite_domination_decomposition(d: int, samples: int | None = None, seed: int = 0,
                                   max_degree: int = 6) -> SuiteResult:
    """x O-dominates S iff x_{1,2} O-dominates the first layer pair and x^3 O-dominates
    S^{3,4}; iff every layer pair is O-dominated by the matching slice; and
    O-domination implies Grassmannian domination of S with its reflection."""
    res = SuiteResult(f"O-domination decomposition d={d}")
    for v, S in _monomials(d, samples, seed, max_degree):
        for x in interval_Id(v):
            def body(S=S, x=x, v=v) -> bool:
                od = ch.odepth_table(S, d)
                full = o_dominates(x, S, v)
                first = o_dominates(slice_element(x, v, 1, 2), _pr_union(S, od, 1, 2), v)
                rest = o_dominates(slice_element(x, v, 3), _pr_union(S, od, 3), v)
                if full != (first and rest):
                    return False
                top = max(od.values())
                layers = all(
                    o_dominates(slice_element(x, v, j, j + 1), _pr_union(S, od, j, j + 1), v)
                    for j in range(1, top + 1, 2)
                )
                if full != layers:
                    return False
                SS = S + S.reflect(d)
                if full and not dominates(x, SS, v):
                    return False
                return dominates(x, SS, v) == dominates_oracle(x, SS, v)

            _guard(res, body, v=v, x=x, S=S)
    return res


def suite_chain_monotonicity(d: int, samples: int, seed: int) -> SuiteResult:
    """Sub-chains give smaller w(C); O-depths are stable under extension."""
    rng = random.Random(seed)
    res = SuiteResult(f"chain monotonicity and initial segments d={d}")
    bases = bases_with_board(d)
    for _ in range(samples):
        v = rng.choice(bases)
        chains = list(all_chains_on(v))
        D = max(rng.sample(chains, min(5, len(chains))), key=len)
        keep = [a for a in D if rng.random() < 0.6]

        def body(D=D, keep=keep, v=v) -> bool:
            if keep and not leq(ch.w_of_chain(keep, v), ch.w_of_chain(D, v)):
                return False
            for cut in range(1, len(D) + 1):
                C = D[:cut]
                if any(ch.odepth_in_chain(C, i, d) != ch.odepth_in_chain(D, i, d) for i in range(cut)):
                    return False
            return True

        _guard(res, body, v=v, D=list(D), sub=keep)
    return res


def suite_phi_structure(d: int, samples: int, seed: int, max_degree: int = 5) -> SuiteResult:
    """Classes of T have O-depth at most 2 and are O-dominated by w_{j,j+1}; each
    star is symmetric with as many diagonal elements (0 or 2) as the slice of S_w."""
    rng = random.Random(seed)
    res = SuiteResult(f"phi-bar classes and stars d={d}")
    bases = bases_with_board(d)
    done = 0
    for _ in range(50 * samples):
        if done >= samples:
            break
        v = rng.choice(bases)
        w = rng.choice(interval_Id(v))
        T = random_monomial(rng, build_regions(v).on_v, max_degree, min_degree=0)
        if not o_dominates(w, T, v):
            continue
        done += 1

        def body(v=v, w=w, T=T) -> bool:
            tr = ortho_phi_trace(w, T, v)
            Sw = to_distinguished(w, v)
            dw = ch.depth_table(Sw)
            for j, cls in tr.classes.items():
                if cls and max(ch.odepth_table(cls, d).values()) > 2:
                    return False
                if not o_dominates(slice_element(w, v, j, j + 1), cls, v):
                    return False
            for j, star in tr.stars.items():
                nd = sum(1 for a in star.support if a.r + a.c == 2 * d + 1)
                nw = sum(1 for b in Sw if dw[b] in (j, j + 1) and b.r + b.c == 2 * d + 1)
                if nd not in (0, 2) or nd != nw or not star.is_symmetric(d):
                    return False
            return True

        _guard(res, body, v=v, w=w, T=T)
    return res


# counting -------------------------------------------------------------------------

def suite_smooth_point(d: int) -> SuiteResult:
    res = SuiteResult(f"smooth-point law d={d}")
    for v in all_Id(d):
        F = len(build_regions(v).free)
        for m in range(0, 6):
            expect = math.comb(m + F - 1, m) if F else int(m == 0)
            _guard(res, lambda m=m, expect=expect: hilbert_value(v, v, m) == expect, v=v, m=m)
        _guard(res, lambda: multiplicity(v, v, "monomials") == 1, v=v, what="mult")
        _guard(res, lambda: count_path_tuples(v, v) == 1, v=v, what="paths")
    return res


def suite_count_identity(d: int, max_m: int = 4) -> SuiteResult:
    res = SuiteResult(f"standard monomial count = Hilbert value d={d}")
    for v in all_Id(d):
        for w in interval_Id(v):
            from .counting import hilbert_series_prefix

            H = hilbert_series_prefix(v, w, max_m)
            for m in range(max_m + 1):
                _guard(res, lambda m=m: count_sm(v, w, m) == H[m], v=v, w=w, m=m)
    return res


def suite_multiplicity_methods(d: int, samples: int | None = None, seed: int = 0) -> SuiteResult:
    res = SuiteResult(f"multiplicity methods agree d={d}")
    pairs = [(v, w) for v in all_Id(d) for w in interval_Id(v)]
    if samples is not None:
        rng = random.Random(seed)
        pairs = [rng.choice(pairs) for _ in range(samples)]
    for v, w in pairs:
        def body(v=v, w=w) -> bool:
            a = multiplicity_oracle(v, w)
            return a == count_path_tuples(v, w) and a == multiplicity(v, w, "monomials")

        _guard(res, body, v=v, w=w)
    return res


def suite_distinguished(d: int) -> SuiteResult:
    """S_w satisfies A and B, is the only such pairing, and round-trips to w."""
    from .domination import from_distinguished, to_distinguished_oracle

    res = SuiteResult(f"distinguished subsets d={d}")
    for v in all_Id(d):
        for w in (x for x in _idd_above(v)):
            def body(v=v, w=w) -> bool:
                S = to_distinguished(w, v)
                return (
                    is_distinguished(S)
                    and from_distinguished(S, v) == w
                    and to_distinguished_oracle(w, v) == [S]
                )

            _guard(res, body, v=v, w=w)
    return res


def suite_path_tuples(d: int) -> SuiteResult:
    """Every path tuple, read as a monomial, is O-dominated by w with pi-bar first
    output w; every square-free O-dominated monomial sits inside some tuple."""
    from .counting import good_subsets, iter_path_tuples

    res = SuiteResult(f"path tuples versus O-domination d={d}")
    for v in all_Id(d):
        for w in interval_Id(v):
            tuples = [frozenset(a for p in t for a in p) for t in iter_path_tuples(v, w)]

            def part1(v=v, w=w, tuples=tuples) -> bool:
                for roots in tuples:
                    M = Monomial(roots)
                    if not o_dominates(w, M, v):
                        return False
                    if M and ortho_pi(M, v)[0] != w:
                        return False
                return True

            _guard(res, part1, v=v, w=w, part=1)

            def part2(v=v, w=w, tuples=tuples) -> bool:
                return all(any(set(T) <= t for t in tuples) for T in good_subsets(v, w))

            _guard(res, part2, v=v, w=w, part=2)
    return res


def suite_hilbert_monotone(d: int, samples: int, seed: int, max_m: int = 4) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult(f"Hilbert values monotone in w d={d}")
    from .counting import hilbert_series_prefix

    for _ in range(samples):
        v = rng.choice(all_Id(d))
        up = interval_Id(v)
        w1 = rng.choice(up)
        w2 = rng.choice(interval_Id(w1))

        def body(v=v, w1=w1, w2=w2) -> bool:
            a = hilbert_series_prefix(v, w1, max_m)
            b = hilbert_series_prefix(v, w2, max_m)
            return all(x <= y for x, y in zip(a, b))

        _guard(res, body, v=v, w1=w1, w2=w2)
    return res


def suite_sm_bijection(d: int, samples: int, seed: int, max_degree: int = 5) -> SuiteResult:
    """Round trip through standard monomials, degree preservation, and the
    domination correspondence, on random monomials over OR_v."""
    from .standard_monomials import monomial_to_sm, sm_to_monomial

    rng = random.Random(seed)
    res = SuiteResult(f"standard monomial bijection d={d}")
    for _ in range(samples):
        v = rng.choice(all_Id(d))
        reg = build_regions(v)
        if not reg.or_v:
            continue
        S = random_monomial(rng, reg.or_v, max_degree, min_degree=0)
        w = rng.choice(interval_Id(v))

        def body(v=v, S=S, w=w) -> bool:
            sm = monomial_to_sm(S, v)
            return (
                sm.is_v_compatible()
                and sm.degree == S.degree
                and sm_to_monomial(sm) == S
                and o_dominates(w, S, v) == sm.is_dominated_by(w)
            )

        _guard(res, body, v=v, S=S, w=w)
    return res


def suite_odd_mirror(d: int = 3) -> SuiteResult:
    """For odd d the mirrored half lands exactly on standard monomials of the
    embedded base all of whose elements avoid d+1."""
    from .index_sets import pass_embed, u_star
    from .standard_monomials import enumerate_sm, iterate_pi, mirror

    res = SuiteResult(f"odd-d mirror through the pass embedding d={d}")
    for v in all_Id(d):
        m = mirror(v)
        reg = build_regions(v)
        low = [a for a in reg.or_v if a.r < a.c]
        for k in range(0, 4):
            mons = {
                Monomial(c) for c in itertools.combinations_with_replacement(low, k)
            }

            def body(v=v, m=m, mons=mons, k=k) -> bool:
                images = set()
                for S in mons:
                    thetas = tuple(iterate_pi(S.map(m.root_out), m.base))
                    if any(d + 1 in t for t in thetas):
                        return False
                    if any(pass_embed(u_star(m.elem_back(t))) != t for t in thetas):
                        return False
                    images.add(thetas)
                top = max(all_Id(d + 1), key=lambda x: x.entries)
                target = {
                    sm.thetas for sm in enumerate_sm(m.base, top, k)
                    if all(d + 1 not in t for t in sm.thetas) and all(leq(m.base, t) for t in sm.thetas)
                }
                return images == target

            _guard(res, body, v=v, degree=k)
    return res


def _idd_above(v: IdElement) -> Iterator[IdElement]:
    from .index_sets import iter_Idd

    return (x for x in iter_Idd(v.d) if leq(v, x))


# driver --------------------------------------------------------------------------

def run_all(seed: int = 0, samples: int = 200, d_max: int = 5) -> list[SuiteResult]:
    """Default transcript for ``verify``: every suite at a desk-scale budget."""
    out: list[SuiteResult] = []
    for d in range(2, d_max + 1):
        small = d <= 4
        out.append(suite_inverse_maps(d, samples, seed + d))
        out.append(suite_prop41_exhaustive(d) if small else suite_prop41_random(d, samples, seed + d))
        out.append(suite_ddag(d, samples, seed + d))
        if small:
            out.append(suite_chain_structure(d))
            out.append(suite_odepth_parity(d))
            out.append(suite_shift_law(d))
            out.append(suite_domination_decomposition(d))
            out.append(suite_count_identity(d))
            out.append(suite_distinguished(d))
            out.append(suite_path_tuples(d))
        else:
            out.append(suite_shift_law(d, samples, seed + d))
            out.append(suite_domination_decomposition(d, max(1, samples // 10), seed + d))
        out.append(suite_odepth_vs_depth(d, samples, seed + d))
        out.append(suite_chain_monotonicity(d, samples, seed + d))
        out.append(suite_phi_structure(d, samples, seed + d))
        out.append(suite_hilbert_monotone(d, max(1, samples // 4), seed + d))
        out.append(suite_sm_bijection(d, samples, seed + d))
        out.append(suite_multiplicity_methods(d))
        out.append(suite_smooth_point(d))
    out.append(suite_odd_mirror(3))
    return out
