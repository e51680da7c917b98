"""Distinguished subsets, Grassmannian domination, O-domination and slices."""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .chains import (
    depth_table,
    iter_chains,
    successors,
    w_of_chain,
)
from .index_sets import IdElement, IndexSetError, all_Id, leq
from .root_lattice import Monomial, Root, above_or_on_diag, element_of, in_ON


class DominationError(ValueError):
    pass


# distinguished subsets -------------------------------------------------------

def condition_A(a: Root, b: Root) -> bool:
    return a.r != b.r and a.c != b.c


def condition_B(big: Root, small: Root) -> bool:
    """For big.r > small.r: small.r < big.c or big.c < small.c."""
    return small.r < big.c or big.c < small.c


def is_distinguished(roots: Iterable[Root]) -> bool:
    roots = list(roots)
    if len(set(roots)) != len(roots):
        return False
    for a, b in itertools.combinations(roots, 2):
        if not condition_A(a, b):
            return False
        big, small = (a, b) if a.r > b.r else (b, a)
        if not condition_B(big, small):
            return False
    return True


def to_distinguished(w: IdElement, v: IdElement) -> tuple[Root, ...]:
    """The unique distinguished S_w with columns v minus w and rows w minus v.

    Rows are taken in increasing order; each grabs the largest unused column
    below it.
    """
    if not leq(v, w):
        raise DominationError(f"{v} is not <= {w}")
    cols = sorted(v.entry_set - w.entry_set)
    rows = sorted(w.entry_set - v.entry_set)
    out = []
    for r in rows:
        below = [c for c in cols if c < r]
        if not below:  # cannot happen when v <= w
            raise DominationError(f"no column available for row {r}")
        c = below[-1]
        cols.remove(c)
        out.append(Root(r, c))
    return tuple(sorted(out))


def to_distinguished_oracle(w: IdElement, v: IdElement) -> list[tuple[Root, ...]]:
    """Every pairing of columns with rows that satisfies A and B (brute force)."""
    cols = sorted(v.entry_set - w.entry_set)
    rows = sorted(w.entry_set - v.entry_set)
    found = []
    for perm in itertools.permutations(cols):
        roots = [Root(r, c) for r, c in zip(rows, perm)]
        if all(a.r > a.c for a in roots) and is_distinguished(roots):
            found.append(tuple(sorted(roots)))
    return found


def from_distinguished(roots: Iterable[Root], v: IdElement) -> IdElement:
    return element_of(v, roots)


def up_part(roots: Iterable[Root], d: int) -> tuple[Root, ...]:
    return tuple(a for a in sorted(roots) if above_or_on_diag(a, d))


# Grassmannian domination ------------------------------------------------------

def dominates(x: IdElement, S: Monomial, v: IdElement) -> bool:
    """x dominates S: each alpha in S has a dominating beta in S_x at least as deep."""
    if not leq(v, x):
        return not S
    Sx = to_distinguished(x, v)
    dx = depth_table(Sx)
    dS = depth_table(S)
    for a in S.support:
        if not any(
            b.c <= a.c and a.r <= b.r and dx[b] >= dS[a] for b in Sx
        ):
            return False
    return True


def chain_element(chain: Sequence[Root], v: IdElement) -> IdElement:
    """The element of I(d,2d) attached to a chain in N_v (a chain is distinguished)."""
    return element_of(v, chain)


def dominates_oracle(x: IdElement, S: Monomial, v: IdElement) -> bool:
    """Chain-by-chain criterion: x >= element(C) for every chain C in S."""
    return all(leq(chain_element(C, v), x) for C in iter_chains(S))


# O-domination -------------------------------------------------------------------

def o_dominates_chain(w: IdElement, chain: Sequence[Root], v: IdElement) -> bool:
    if not w.in_Id:
        raise IndexSetError(f"{w} is not in I(d)")
    return leq(w_of_chain(chain, v), w)


def o_dominates(w: IdElement, S: Monomial, v: IdElement) -> bool:
    """Every v-chain in the ON_v part of S is O-dominated by w.

    Depth-first over chains, stopping at the first prefix that fails; extensions of
    a failing prefix fail as well, so only prefixes need to be checked.
    """
    if not w.in_Id:
        raise IndexSetError(f"{w} is not in I(d)")
    d = v.d
    support = [a for a in S.support if in_ON(a, d)]
    succ = successors(support)

    def ok(prefix: tuple[Root, ...]) -> bool:
        if not leq(w_of_chain(prefix, v), w):
            return False
        return all(ok(prefix + (b,)) for b in succ[prefix[-1]])

    return all(ok((a,)) for a in support)


def o_dominates_oracle(w: IdElement, S: Monomial, v: IdElement) -> bool:
    d = v.d
    support = [a for a in S.support if in_ON(a, d)]
    return all(leq(w_of_chain(C, v), w) for C in iter_chains(support))


# slices ---------------------------------------------------------------------------

def slice_element(x: IdElement, v: IdElement, lo: int, hi: int | None = None) -> IdElement:
    """Element for the elements of S_x with depth in [lo, hi]."""
    Sx = to_distinguished(x, v)
    dx = depth_table(Sx)
    keep = [a for a in Sx if dx[a] >= lo and (hi is None or dx[a] <= hi)]
    return element_of(v, keep)


def slices(x: IdElement, v: IdElement) -> dict[str, dict[int, IdElement]]:
    """x_k (depth k), x^k (depth >= k) and x_{j,j+1} (odd j) for every relevant k."""
    Sx = to_distinguished(x, v)
    dx = depth_table(Sx)
    top = max(dx.values(), default=0)
    out: dict[str, dict[int, IdElement]] = {"sub": {}, "sup": {}, "pair": {}}
    for k in range(1, top + 2):
        out["sub"][k] = slice_element(x, v, k, k)
        out["sup"][k] = slice_element(x, v, k)
    for j in range(1, top + 2, 2):
        out["pair"][j] = slice_element(x, v, j, j + 1)
    return out


def least_o_dominating(S: Monomial, v: IdElement) -> IdElement:
    """Least element of I(d) O-dominating S, read off from the first output of pi-bar."""
    from .pi_phi import ortho_pi

    if not S.filter(lambda a: in_ON(a, v.d)):
        return v
    return ortho_pi(S, v)[0]


def least_o_dominating_oracle(S: Monomial, v: IdElement) -> IdElement:
    """Exhaustive scan of I(d); returns the unique minimum of the O-dominating set."""
    cands = [x for x in all_Id(v.d) if leq(v, x) and o_dominates(x, S, v)]
    mins = [x for x in cands if not any(y != x and leq(y, x) for y in cands)]
    if len(mins) != 1:
        raise DominationError(f"no unique least O-dominating element: {mins}")
    return mins[0]
