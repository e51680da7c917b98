"""v-chains, element types V/H/S, the attached monomial S_C, depth and O-depth."""

from __future__ import annotations

from typing import Iterator, Sequence

from .index_sets import IdElement, star
from .root_lattice import (
    Monomial,
    Root,
    element_of,
    greater,
    in_N,
    in_ON,
    project_h,
    project_v,
    reflect,
)

V, H, S = "V", "H", "S"


class ChainError(ValueError):
    pass


def is_chain(seq: Sequence[Root]) -> bool:
    return all(greater(a, b) for a, b in zip(seq, seq[1:]))


def check_chain(chain: Sequence[Root], d: int) -> tuple[Root, ...]:
    chain = tuple(Root(*a) for a in chain)
    if not is_chain(chain):
        raise ChainError(f"not strictly decreasing: {chain}")
    bad = [a for a in chain if not in_ON(a, d)]
    if bad:
        raise ChainError(f"chain elements outside ON_v: {bad}")
    return chain


def connected(a: Root, b: Root, d: int) -> bool:
    """Consecutive chain elements a > b are connected iff their legs intertwine."""
    return a.r <= star(b.c, d) and b.r > star(a.r, d)


def connected_components(chain: Sequence[Root], d: int) -> list[range]:
    """Maximal runs of consecutively connected elements, as index ranges."""
    if not chain:
        return []
    out, start = [], 0
    for i in range(1, len(chain)):
        if not connected(chain[i - 1], chain[i], d):
            out.append(range(start, i))
            start = i
    out.append(range(start, len(chain)))
    return out


def element_types(chain: Sequence[Root], d: int) -> tuple[list[str], int | None]:
    """Types V/H/S for each element, plus the index of the critical element.

    The critical element is the first one whose horizontal projection leaves N_v.
    """
    types = []
    for comp in connected_components(chain, d):
        ell = len(comp)
        for pos, i in enumerate(comp, start=1):
            if pos != ell or ell % 2 == 0:
                types.append(V)
            elif project_h(chain[i], d) is not None:
                types.append(H)
            else:
                types.append(S)
    critical = next((i for i, a in enumerate(chain) if project_h(a, d) is None), None)
    return types, critical


def _pieces(chain: Sequence[Root], d: int) -> list[tuple[Root, str]]:
    types, _ = element_types(chain, d)
    return list(zip(chain, types))


def q_element(chain: Sequence[Root], index: int, d: int) -> Root:
    """q_{C,alpha}: the vertical projection for types V and H, alpha itself for S."""
    types, _ = element_types(chain, d)
    a = chain[index]
    return a if types[index] == S else project_v(a, d)


def chain_monomial(chain: Sequence[Root], d: int) -> Monomial:
    """S_C, a distinguished symmetric subset of N_v."""
    out: list[Root] = []
    for a, t in _pieces(chain, d):
        if t == V:
            out.append(project_v(a, d))
        elif t == H:
            ph = project_h(a, d)
            assert ph is not None
            out.extend([project_v(a, d), ph])
        else:
            out.extend([a, reflect(a, d)])
    return Monomial(out)


def w_of_chain(chain: Sequence[Root], v: IdElement) -> IdElement:
    return element_of(v, chain_monomial(chain, v.d).support)


# depth ---------------------------------------------------------------------

def depth_table(S: Monomial | Sequence[Root]) -> dict[Root, int]:
    """Longest chain ending at each root of the support (Grassmannian depth)."""
    support = S.support if isinstance(S, Monomial) else tuple(dict.fromkeys(S))
    order = sorted(support, key=lambda a: (-a.r, a.c))
    depth: dict[Root, int] = {}
    for i, b in enumerate(order):
        best = 0
        for a in order[:i]:
            if greater(a, b) and depth[a] > best:
                best = depth[a]
        depth[b] = best + 1
    return depth


def depth_slice(S: Monomial, lo: int, hi: int | None = None) -> Monomial:
    """Sub-monomial of elements with lo <= depth (<= hi)."""
    dt = depth_table(S)
    return S.filter(lambda a: dt[a] >= lo and (hi is None or dt[a] <= hi))


# chain enumeration ---------------------------------------------------------

def successors(support: Sequence[Root]) -> dict[Root, tuple[Root, ...]]:
    return {a: tuple(b for b in support if greater(a, b)) for a in support}


def iter_chains(S: Monomial | Sequence[Root]) -> Iterator[tuple[Root, ...]]:
    """All non-empty v-chains in the support (each root used once)."""
    support = S.support if isinstance(S, Monomial) else tuple(dict.fromkeys(S))
    succ = successors(support)

    def grow(prefix: tuple[Root, ...]) -> Iterator[tuple[Root, ...]]:
        yield prefix
        for b in succ[prefix[-1]]:
            yield from grow(prefix + (b,))

    for a in support:
        yield from grow((a,))


def iter_maximal_chains_from(head: Root, succ: dict[Root, tuple[Root, ...]]) -> Iterator[tuple[Root, ...]]:
    def grow(prefix: tuple[Root, ...]) -> Iterator[tuple[Root, ...]]:
        nxt = succ[prefix[-1]]
        if not nxt:
            yield prefix
        for b in nxt:
            yield from grow(prefix + (b,))

    yield from grow((head,))


# O-depth -------------------------------------------------------------------

def odepth_in_chain(chain: Sequence[Root], index: int, d: int) -> int:
    """Depth of q_{C,alpha} inside S_C."""
    q = q_element(chain, index, d)
    return depth_table(chain_monomial(chain, d))[q]


def odepth_oracle(S: Monomial | Sequence[Root], d: int) -> dict[Root, int]:
    """O-depth of every support element by enumerating all chains ending there."""
    support = S.support if isinstance(S, Monomial) else tuple(dict.fromkeys(S))
    best = {a: 0 for a in support}
    for chain in iter_chains(support):
        od = odepth_in_chain(chain, len(chain) - 1, d)
        tail = chain[-1]
        if od > best[tail]:
            best[tail] = od
    return best


def _step(prev: Root, parity: int, nxt: Root, d: int) -> tuple[int, int]:
    """Increment of O-depth and the component parity of ``nxt`` after ``prev``.

    ``parity`` is the position of ``prev`` inside its connected component mod 2.
    """
    if connected(prev, nxt, d):
        return 1, 1 - parity
    # prev closes its component; its length is odd exactly when parity is 1
    if parity == 1:
        ph = project_h(prev, d)
        if ph is not None and greater(ph, nxt):
            return 2, 1
    return 1, 1


def odepth_table(S: Monomial | Sequence[Root], d: int) -> dict[Root, int]:
    """O-depth via dynamic programming over (root, component parity) states."""
    support = S.support if isinstance(S, Monomial) else tuple(dict.fromkeys(S))
    order = sorted(support, key=lambda a: (-a.r, a.c))
    # state value: best O-depth of the root over chains ending there, keyed by parity
    best: dict[Root, dict[int, int]] = {a: {1: 1} for a in order}
    for i, b in enumerate(order):
        for a in order[:i]:
            if not greater(a, b):
                continue
            for par, val in best[a].items():
                inc, npar = _step(a, par, b, d)
                if val + inc > best[b].get(npar, 0):
                    best[b][npar] = val + inc
    return {a: max(best[a].values()) for a in order}


def pr_partition(S: Monomial, d: int) -> dict[int, Monomial]:
    """S_k^pr: sub-monomials of elements of O-depth exactly k (multiplicities kept)."""
    od = odepth_table(S, d)
    out: dict[int, dict[Root, int]] = {}
    for a, m in S.items:
        out.setdefault(od[a], {})[a] = m
    return {k: Monomial(v) for k, v in sorted(out.items())}


def ascending(A: Monomial | Sequence[Root]) -> list[Root]:
    """Ascending arrangement of an antichain (rows and columns increase together)."""
    roots = A.expanded() if isinstance(A, Monomial) else list(A)
    return sorted(roots)


def sigma(S: Monomial, k: int, d: int) -> Root:
    classes = pr_partition(S, d)
    if k not in classes:
        raise ChainError(f"no element of O-depth {k}")
    return ascending(classes[k])[-1]


def truly_orthogonal(S: Monomial, j: int, d: int) -> bool:
    if j % 2 == 0:
        raise ChainError("j must be odd")
    return project_h(sigma(S, j, d), d) is not None


def chain_good(chain: Sequence[Root], d: int) -> bool:
    """Region sanity used by tests: every element of S_C lies in N_v."""
    return all(in_N(a) for a in chain_monomial(chain, d).support)
