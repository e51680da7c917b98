"""Hilbert function values, multiplicities and the lattice-path count."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .chains import depth_table, iter_chains, w_of_chain
from .domination import o_dominates_oracle, to_distinguished
from .index_sets import IdElement, leq, star
from .root_lattice import Monomial, Root, build_regions, greater, in_ON, on_diag


class GuardrailError(RuntimeError):
    """A computation was refused because it exceeds a configured size limit."""


MAX_SUBSET_ROOTS = 24
DEFAULT_NODE_BUDGET = 5_000_000


def _check_pair(v: IdElement, w: IdElement) -> None:
    if not (v.in_Id and w.in_Id):
        raise ValueError("v and w must lie in I(d)")
    if not leq(v, w):
        raise ValueError(f"{v} is not <= {w}")


# square-free O-dominated monomials -------------------------------------------

class _ChainCache:
    """Memoised O-domination verdicts for individual chains."""

    def __init__(self, v: IdElement, w: IdElement) -> None:
        self.v, self.w = v, w
        self.seen: dict[tuple[Root, ...], bool] = {}

    def ok(self, chain: tuple[Root, ...]) -> bool:
        r = self.seen.get(chain)
        if r is None:
            r = leq(w_of_chain(chain, self.v), self.w)
            self.seen[chain] = r
        return r


def _chains_through(a: Root, others: Sequence[Root]) -> Iterator[tuple[Root, ...]]:
    above = [b for b in others if greater(b, a)]
    below = [b for b in others if greater(a, b)]

    def ups(cur: tuple[Root, ...]) -> Iterator[tuple[Root, ...]]:
        yield cur
        for b in above:
            if greater(b, cur[0]):
                yield from ups((b,) + cur)

    def downs(cur: tuple[Root, ...]) -> Iterator[tuple[Root, ...]]:
        yield cur
        for b in below:
            if greater(cur[-1], b):
                yield from downs(cur + (b,))

    for pre in ups((a,)):
        for full in downs(pre):
            yield full


def good_subset_sizes(v: IdElement, w: IdElement, node_budget: int | None = None) -> Counter:
    """Number of square-free O-dominated monomials in ON_v of each cardinality.

    The family is closed under taking subsets, so the search adds roots one at a
    time and abandons any branch whose newest root closes a bad chain.
    """
    _check_pair(v, w)
    on = build_regions(v).on_v
    cache = _ChainCache(v, w)
    sizes: Counter = Counter()
    nodes = 0
    budget = node_budget or DEFAULT_NODE_BUDGET * 10

    def rec(i: int, chosen: list[Root]) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise GuardrailError(f"subset search exceeded {budget} nodes")
        sizes[len(chosen)] += 1
        for j in range(i, len(on)):
            a = on[j]
            if all(cache.ok(C) for C in _chains_through(a, chosen)):
                chosen.append(a)
                rec(j + 1, chosen)
                chosen.pop()

    rec(0, [])
    return sizes


def good_subsets(v: IdElement, w: IdElement) -> list[tuple[Root, ...]]:
    """All square-free O-dominated monomials in ON_v (as sorted root tuples)."""
    _check_pair(v, w)
    on = build_regions(v).on_v
    cache = _ChainCache(v, w)
    out: list[tuple[Root, ...]] = []

    def rec(i: int, chosen: list[Root]) -> None:
        out.append(tuple(chosen))
        for j in range(i, len(on)):
            a = on[j]
            if all(cache.ok(C) for C in _chains_through(a, chosen)):
                chosen.append(a)
                rec(j + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def multiplicity_monomials(v: IdElement, w: IdElement) -> int:
    sizes = good_subset_sizes(v, w)
    return sizes[max(sizes)]


def multiplicity_oracle(v: IdElement, w: IdElement, force: bool = False) -> int:
    """Scan every subset of ON_v against every chain of ON_v; no pruning."""
    _check_pair(v, w)
    on = build_regions(v).on_v
    n = len(on)
    if n > MAX_SUBSET_ROOTS and not force:
        raise GuardrailError(f"|ON_v| = {n} exceeds {MAX_SUBSET_ROOTS}; pass force")
    idx = {a: i for i, a in enumerate(on)}
    bad_masks = []
    for C in iter_chains(on):
        if not leq(w_of_chain(C, v), w):
            bad_masks.append(sum(1 << idx[a] for a in C))
    masks = np.arange(1 << n, dtype=np.int64)
    good = np.ones(1 << n, dtype=bool)
    for m in bad_masks:
        good &= (masks & m) != m
    pop = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        pop += (masks >> i) & 1
    sizes = pop[good]
    top = int(sizes.max())
    return int((sizes == top).sum())


# lattice paths ---------------------------------------------------------------------

@dataclass(frozen=True)
class Endpoint:
    beta: Root
    start: Root
    finish: Root | None  # None for diagonal elements (finish varies)
    diagonal: bool
    depth: int
    finish_candidates: tuple[Root, ...]


def _column_top(reg, c: int) -> Root | None:
    d = reg.d
    for r in reg.nonentries:
        if c < r < star(c, d):
            return Root(r, c)
    return None


def _row_right(reg, r: int) -> Root | None:
    d = reg.d
    best = None
    for c in reg.v.entries:
        if c < r < star(c, d):
            best = Root(r, c)
    return best


def _near_diagonal(reg, c: int) -> Root | None:
    """Point one step from the diagonal in column c: largest non-entry row below c*."""
    d = reg.d
    rows = [r for r in reg.nonentries if r < star(c, d)]
    if not rows:
        return None
    a = Root(rows[-1], c)
    return a if in_ON(a, d) else None


def path_endpoints(v: IdElement, w: IdElement) -> list[Endpoint]:
    _check_pair(v, w)
    reg = build_regions(v)
    d = v.d
    Sw = to_distinguished(w, v)
    dt = depth_table(Sw)
    out = []
    for b in Sw:
        if b.r > star(b.c, d):
            continue
        start = _column_top(reg, b.c)
        if start is None:
            # only a diagonal element can have an empty column; its path is empty
            # and it stands in for its own finish when coupling
            if not on_diag(b, d):
                raise ValueError(f"column {b.c} has no ON_v point")
            out.append(Endpoint(b, b, b, True, dt[b], ()))
            continue
        if on_diag(b, d):
            cands = []
            for c in v.entries:
                if c >= b.c:
                    p = _near_diagonal(reg, c)
                    if p is not None:
                        cands.append(p)
            out.append(Endpoint(b, start, None, True, dt[b], tuple(cands)))
        else:
            fin = _row_right(reg, b.r)
            out.append(Endpoint(b, start, fin, False, dt[b], (fin,) if fin else ()))
    return out


def _paths(reg, start: Root, finishes: set[Root]) -> list[tuple[Root, ...]]:
    """All monotone lattice paths in ON_v from start to any point of finishes."""
    d = reg.d
    out = []

    def rec(path: list[Root]) -> None:
        cur = path[-1]
        if cur in finishes:
            out.append(tuple(path))
        nr = reg.next_row(cur.r)
        if nr is not None:
            a = Root(nr, cur.c)
            if in_ON(a, d):
                path.append(a)
                rec(path)
                path.pop()
        nc = reg.next_col(cur.c)
        if nc is not None:
            a = Root(cur.r, nc)
            if in_ON(a, d):
                path.append(a)
                rec(path)
                path.pop()

    rec([start])
    return out


def _coupling(ends: list[Endpoint]) -> dict[int, int]:
    """Odd-depth diagonal endpoint index -> index of the diagonal one a level deeper."""
    diag = {e.depth: i for i, e in enumerate(ends) if e.diagonal}
    out = {}
    for k, i in diag.items():
        if k % 2 == 1:
            if k + 1 not in diag:
                raise ValueError(f"odd-depth diagonal element at depth {k} has no partner")
            out[i] = diag[k + 1]
    return out


def coupled(beta_finish: Root, gamma_finish: Root, d: int) -> bool:
    """Horizontal projection of one equals the vertical projection of the other."""
    return beta_finish.r == star(gamma_finish.c, d)


def iter_path_tuples(v: IdElement, w: IdElement, node_budget: int | None = None) -> Iterator[tuple[tuple[Root, ...], ...]]:
    """Every admissible tuple of paths, one per element of S_w(up) in sorted order."""
    _check_pair(v, w)
    reg = build_regions(v)
    d = v.d
    ends = path_endpoints(v, w)
    couple = _coupling(ends)
    partner_of = {j: i for i, j in couple.items()}
    all_paths = [
        _paths(reg, e.start, set(e.finish_candidates)) if e.finish_candidates else [()]
        for e in ends
    ]
    bit = {a: i for i, a in enumerate(reg.on_v)}
    masks = [[sum(1 << bit[a] for a in p) for p in ps] for ps in all_paths]
    finals = [[path_end(p, e) for p in ps] for ps, e in zip(all_paths, ends)]
    # fewest options first
    order = sorted(range(len(ends)), key=lambda i: len(all_paths[i]))
    budget = node_budget or DEFAULT_NODE_BUDGET
    nodes = 0
    chosen: dict[int, int] = {}

    def rec(pos: int, used: int) -> Iterator[tuple[tuple[Root, ...], ...]]:
        nonlocal nodes
        if pos == len(order):
            yield tuple(all_paths[i][chosen[i]] for i in range(len(ends)))
            return
        i = order[pos]
        for k, p in enumerate(all_paths[i]):
            nodes += 1
            if nodes > budget:
                raise GuardrailError(f"path search exceeded {budget} nodes")
            if masks[i][k] & used:
                continue
            j = couple.get(i)
            if j is not None and j in chosen:
                if not coupled(finals[i][k], finals[j][chosen[j]], d):
                    continue
            j = partner_of.get(i)
            if j is not None and j in chosen:
                if not coupled(finals[j][chosen[j]], finals[i][k], d):
                    continue
            chosen[i] = k
            yield from rec(pos + 1, used | masks[i][k])
            del chosen[i]

    yield from rec(0, 0)


def path_end(path: Sequence[Root], end: Endpoint) -> Root:
    """Last point of a path; an empty path ends at its own diagonal element."""
    return Root(*path[-1]) if path else end.beta


def count_path_tuples(v: IdElement, w: IdElement, node_budget: int | None = None) -> int:
    return sum(1 for _ in iter_path_tuples(v, w, node_budget))


def tuple_violations(v: IdElement, w: IdElement, paths: Sequence[Sequence[Root]]) -> list[str]:
    """Name every rule a proposed path tuple breaks (empty list when admissible)."""
    reg = build_regions(v)
    d = v.d
    ends = path_endpoints(v, w)
    msgs: list[str] = []
    if len(paths) != len(ends):
        return [f"expected {len(ends)} paths, got {len(paths)}"]
    for e, p in zip(ends, paths):
        p = [Root(*a) for a in p]
        if not p:
            if e.finish_candidates:
                msgs.append(f"path for {e.beta} is empty")
            continue
        if p[0] != e.start:
            msgs.append(f"path for {e.beta} must start at {e.start}")
        if p[-1] not in e.finish_candidates:
            msgs.append(f"path for {e.beta} ends at {p[-1]}, not an allowed finish")
        for a in p:
            if not in_ON(a, d):
                msgs.append(f"path for {e.beta} leaves ON_v at {a}")
        for a, b in zip(p, p[1:]):
            if b not in (Root(reg.next_row(a.r) or 0, a.c), Root(a.r, reg.next_col(a.c) or 0)):
                msgs.append(f"path for {e.beta} takes an illegal step {a} -> {b}")
    seen: dict[Root, Root] = {}
    for e, p in zip(ends, paths):
        for a in p:
            a = Root(*a)
            if a in seen and seen[a] != e.beta:
                msgs.append(f"paths for {seen[a]} and {e.beta} meet at {a}")
            seen.setdefault(a, e.beta)
    for i, j in _coupling(ends).items():
        fi, fj = path_end(paths[i], ends[i]), path_end(paths[j], ends[j])
        if not coupled(fi, fj, d):
            msgs.append(
                f"diagonal coupling fails for {ends[i].beta} and {ends[j].beta}: "
                f"horizontal projection of {fi} is not the vertical projection of {fj}"
            )
    return msgs


def path_length(reg, start: Root, finish: Root) -> int:
    """Number of points on any path from start to finish."""
    rows = sum(1 for r in reg.nonentries if start.r < r <= finish.r)
    cols = sum(1 for c in reg.v.entries if start.c < c <= finish.c)
    return rows + cols + 1


# multiplicity front end -----------------------------------------------------------

METHODS = ("paths", "monomials", "oracle")


def multiplicity(v: IdElement, w: IdElement, method: str = "monomials", force: bool = False,
                 node_budget: int | None = None) -> int:
    _check_pair(v, w)
    if method == "paths":
        return count_path_tuples(v, w, node_budget)
    if method == "monomials":
        n = len(build_regions(v).on_v)
        if n > MAX_SUBSET_ROOTS and not force:
            raise GuardrailError(f"|ON_v| = {n} exceeds {MAX_SUBSET_ROOTS}; pass force")
        return multiplicity_monomials(v, w)
    if method == "oracle":
        return multiplicity_oracle(v, w, force)
    raise ValueError(f"unknown method {method!r}")


# Hilbert function ------------------------------------------------------------------

def multichoose(n: int, k: int) -> int:
    if k == 0:
        return 1
    if n <= 0:
        return 0
    return math.comb(n + k - 1, k)


def constrained_counts(v: IdElement, w: IdElement, M: int) -> list[int]:
    """G(k): degree-k monomials in ON_v O-dominated by w, for k = 0..M.

    O-domination only sees the support, so G(k) = sum over good supports U of
    C(k-1, |U|-1).
    """
    sizes = good_subset_sizes(v, w)
    out = [1]
    for k in range(1, M + 1):
        out.append(sum(cnt * math.comb(k - 1, s - 1) for s, cnt in sizes.items() if s >= 1))
    return out


def hilbert_series_prefix(v: IdElement, w: IdElement, M: int) -> list[int]:
    """H(0..M) as a convolution of free-root counts with constrained ON_v counts."""
    _check_pair(v, w)
    F = len(build_regions(v).free)
    G = constrained_counts(v, w, M)
    return [sum(G[k] * multichoose(F, m - k) for k in range(m + 1)) for m in range(M + 1)]


def hilbert_value(v: IdElement, w: IdElement, m: int) -> int:
    if m < 0:
        raise ValueError("m must be non-negative")
    return hilbert_series_prefix(v, w, m)[m]


MAX_ORACLE_MONOMIALS = 500_000


def oracle_hilbert(v: IdElement, w: IdElement, m: int, force: bool = False) -> int:
    """List every degree-m multiset over OR_v and test every chain in its ON_v part."""
    _check_pair(v, w)
    reg = build_regions(v)
    total = math.comb(len(reg.or_v) + m - 1, m) if reg.or_v else int(m == 0)
    if total > MAX_ORACLE_MONOMIALS and not force:
        raise GuardrailError(f"{total} monomials exceeds {MAX_ORACLE_MONOMIALS}")
    d = v.d
    count = 0
    verdict: dict[frozenset, bool] = {}
    for combo in itertools.combinations_with_replacement(reg.or_v, m):
        key = frozenset(a for a in combo if in_ON(a, d))
        ok = verdict.get(key)
        if ok is None:
            ok = verdict[key] = o_dominates_oracle(w, Monomial(key), v)
        count += ok
    return count
