"""The Grassmannian maps pi/phi (blocks and pieces) and the orthogonal maps pi-bar/phi-bar.

The Grassmannian subroutines are rebuilt from their block and piece
characterisation; the test suite holds them to the round-trip property.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .chains import ascending, depth_table, iter_chains, odepth_table, w_of_chain
from .domination import to_distinguished
from .index_sets import IdElement, leq
from .root_lattice import (
    Monomial,
    Root,
    dominates_root,
    element_of,
    in_ON,
    on_diag,
    project_h,
    project_v,
    reflect,
)


class MapError(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    elements: tuple[Root, ...]

    @property
    def head(self) -> Root:
        """w(B): largest row with smallest column."""
        return Root(self.elements[-1].r, self.elements[0].c)

    @property
    def prime(self) -> tuple[Root, ...]:
        """B': intersections of consecutive legs, (r_i, c_{i+1})."""
        e = self.elements
        return tuple(Root(e[i].r, e[i + 1].c) for i in range(len(e) - 1))


def _is_antichain(roots: Sequence[Root]) -> bool:
    s = set(roots)
    return not any(a.r > b.r and a.c < b.c for a in s for b in s)


def kr_blocks(A: Monomial | Sequence[Root]) -> list[Block]:
    """Split an antichain into blocks: a new block starts when the next column
    exceeds the previous row."""
    roots = ascending(A)
    if not _is_antichain(roots):
        raise MapError("kr_blocks needs an antichain")
    blocks: list[list[Root]] = []
    for a in roots:
        if blocks and a.c < blocks[-1][-1].r:
            blocks[-1].append(a)
        else:
            blocks.append([a])
    return [Block(tuple(b)) for b in blocks]


def kr_pi_layers(S: Monomial) -> tuple[list[Root], Monomial]:
    """Per depth layer: heads of blocks, and the union of the B'."""
    dt = depth_table(S)
    heads: list[Root] = []
    primes: list[Root] = []
    for k in sorted(set(dt.values())):
        layer = S.filter(lambda a, k=k: dt[a] == k)
        for B in kr_blocks(layer):
            heads.append(B.head)
            primes.extend(B.prime)
    return heads, Monomial(primes)


def kr_pi(S: Monomial, v: IdElement) -> tuple[IdElement, Monomial]:
    """Grassmannian pi: (x, S') with |S| = |S_x| + |S'|."""
    heads, primes = kr_pi_layers(S)
    return element_of(v, heads), primes


def _star(beta: Root, piece: Sequence[Root]) -> list[Root]:
    if not piece:
        return [beta]
    p = sorted(piece)
    out = [Root(p[0].r, beta.c)]
    out += [Root(p[i + 1].r, p[i].c) for i in range(len(p) - 1)]
    out.append(Root(beta.r, p[-1].c))
    return out


def _class_index(heads_chains, levels: list[IdElement], v: IdElement, elem) -> int:
    """Largest index k such that every chain is dominated by levels[k]; -1 if none."""
    best = len(levels) - 1
    for C in heads_chains:
        e = elem(C, v)
        k = 0
        while k <= best and leq(e, levels[k]):
            k += 1
        best = min(best, k - 1)
        if best < 0:
            return -1
    return best


def _chains_by_head(support: Sequence[Root]) -> dict[Root, list[tuple[Root, ...]]]:
    out: dict[Root, list[tuple[Root, ...]]] = {a: [] for a in support}
    for C in iter_chains(support):
        out[C[0]].append(C)
    return out


def kr_phi(x: IdElement, T: Monomial, v: IdElement) -> Monomial:
    """Grassmannian phi, inverse to :func:`kr_pi`."""
    Sx = to_distinguished(x, v)
    dx = depth_table(Sx)
    top = max(dx.values(), default=0)
    # levels[k-1] = x^k ; x^(top+1) = v
    levels = [element_of(v, [b for b in Sx if dx[b] >= k]) for k in range(1, top + 2)]
    by_head = _chains_by_head(T.support)
    klass: dict[Root, int] = {}
    for a in T.support:
        idx = _class_index(by_head[a], levels, v, lambda C, v: element_of(v, C))
        if idx < 0 or idx >= top:
            raise MapError(f"{x} does not dominate the chains headed by {a}")
        klass[a] = idx + 1
    pieces: dict[Root, list[Root]] = {b: [] for b in Sx}
    for a, m in T.items:
        owners = [b for b in Sx if dx[b] == klass[a] and dominates_root(b, a)]
        if len(owners) != 1:
            raise MapError(f"{a} has {len(owners)} owners in layer {klass[a]}")
        pieces[owners[0]].extend([a] * m)
    out: list[Root] = []
    for b in Sx:
        out.extend(_star(b, pieces[b]))
    return Monomial(out)


def kr_pieces(x: IdElement, T: Monomial, v: IdElement) -> dict[Root, list[Root]]:
    """Piece ownership used by :func:`kr_phi`, exposed for inspection."""
    Sx = to_distinguished(x, v)
    dx = depth_table(Sx)
    top = max(dx.values(), default=0)
    levels = [element_of(v, [b for b in Sx if dx[b] >= k]) for k in range(1, top + 2)]
    by_head = _chains_by_head(T.support)
    out: dict[Root, list[Root]] = {b: [] for b in Sx}
    for a, m in T.items:
        k = _class_index(by_head[a], levels, v, lambda C, v: element_of(v, C)) + 1
        for b in Sx:
            if dx[b] == k and dominates_root(b, a):
                out[b].extend([a] * m)
    return out


# pi-bar -----------------------------------------------------------------------

def _pr_classes(S: Monomial, d: int) -> dict[int, Monomial]:
    od = odepth_table(S, d)
    cls: dict[int, Counter] = {}
    for a, m in S.items:
        cls.setdefault(od[a], Counter())[a] = m
    return {k: Monomial(c) for k, c in cls.items()}


def _layer(classes: dict[int, Monomial], j: int, d: int) -> Monomial:
    pr = classes.get(j, Monomial()) + classes.get(j + 1, Monomial())
    if not classes.get(j):
        return pr + pr.reflect(d)
    sig = ascending(classes[j])[-1]
    ph = project_h(sig, d)
    if ph is None:
        return pr + pr.reflect(d)
    rest = pr - Monomial([sig])
    return rest + rest.reflect(d) + Monomial([project_v(sig, d), ph])


def build_layer_monomial(S: Monomial, j: int, v: IdElement) -> Monomial:
    """S_{j,j+1} for odd j."""
    if j % 2 == 0:
        raise MapError("j must be odd")
    return _layer(_pr_classes(S, v.d), j, v.d)


@dataclass
class PiTrace:
    """Intermediate data of one pi-bar application (for diagnostics and tests)."""

    w: IdElement
    S_prime: Monomial
    layers: dict[int, Monomial]
    heads: dict[int, list[Root]]
    sigma: dict[int, Root]
    truly_orthogonal: dict[int, bool]


def ortho_pi_trace(S: Monomial, v: IdElement) -> PiTrace:
    d = v.d
    if not S:
        raise MapError("pi-bar is not defined on the empty monomial")
    bad = [a for a in S.support if not in_ON(a, d)]
    if bad:
        raise MapError(f"roots outside ON_v: {bad}")
    classes = _pr_classes(S, d)
    top = max(classes)
    layers: dict[int, Monomial] = {}
    heads: dict[int, list[Root]] = {}
    sig: dict[int, Root] = {}
    tor: dict[int, bool] = {}
    primes = Monomial()
    for k, A in classes.items():
        sig[k] = ascending(A)[-1]
    for j in range(1, top + 1, 2):
        if j in sig:
            tor[j] = project_h(sig[j], d) is not None
        L = _layer(classes, j, d)
        layers[j] = L
        if not L:
            continue
        dt = depth_table(L)
        if max(dt.values()) > 2:
            raise MapError(f"layer {j} has depth > 2")
        for k in (1, 2):
            part = L.filter(lambda a, k=k: dt[a] == k)
            if not part:
                continue
            hs = []
            for B in kr_blocks(part):
                hs.append(B.head)
                primes = primes + Monomial(B.prime)
            heads[j + k - 1] = hs
    all_heads = [h for hs in heads.values() for h in hs]
    w = element_of(v, all_heads)
    if not w.in_Id:
        raise MapError(f"assembled element {w} is not in I(d)")
    S_prime = primes.filter(lambda a: in_ON(a, d))
    return PiTrace(w, S_prime, layers, heads, sig, tor)


def ortho_pi(S: Monomial, v: IdElement) -> tuple[IdElement, Monomial]:
    """pi-bar: (w, S') with w least in I(d) O-dominating S."""
    t = ortho_pi_trace(S, v)
    return t.w, t.S_prime


# phi-bar ----------------------------------------------------------------------

def partition_T(w: IdElement, T: Monomial, v: IdElement) -> dict[int, Monomial]:
    """T_{w,j,j+1}: classes of T by which odd slice w^j O-dominates its chains."""
    Sw = to_distinguished(w, v)
    dw = depth_table(Sw)
    top = max(dw.values(), default=0)
    odd = list(range(1, top + 3, 2))
    # levels[i] = w^(odd[i]) ; the last one is v
    levels = [element_of(v, [b for b in Sw if dw[b] >= j]) for j in odd]
    by_head = _chains_by_head(T.support)
    out: dict[int, Counter] = {}
    for a, m in T.items:
        idx = _class_index(by_head[a], levels, v, w_of_chain)
        if idx < 0 or idx >= len(levels) - 1:
            raise MapError(f"{w} does not O-dominate the chains headed by {a}")
        out.setdefault(odd[idx], Counter())[a] = m
    return {j: Monomial(c) for j, c in sorted(out.items())}


@dataclass
class PhiTrace:
    result: Monomial
    classes: dict[int, Monomial]
    stars: dict[int, Monomial]
    delta: dict[int, Root]


def delta_twist(star: Monomial, diag: list[Root], d: int) -> tuple[Monomial, Root]:
    """Replace diagonal (a,a*), (b,b*) with a > b by delta = (b,a*) and its reflection."""
    big, small = sorted(diag, key=lambda a: a.r, reverse=True)
    dj = Root(small.r, big.c)
    return star - Monomial(diag) + Monomial([dj, reflect(dj, d)]), dj


def ortho_phi_trace(w: IdElement, T: Monomial, v: IdElement) -> PhiTrace:
    d = v.d
    if not w.in_Id or not leq(v, w):
        raise MapError(f"{w} must be an element of I(d) above {v}")
    bad = [a for a in T.support if not in_ON(a, d)]
    if bad:
        raise MapError(f"roots outside ON_v: {bad}")
    Sw = to_distinguished(w, v)
    dw = depth_table(Sw)
    top = max(dw.values(), default=0)
    classes = partition_T(w, T, v)
    result = Monomial()
    stars: dict[int, Monomial] = {}
    delta: dict[int, Root] = {}
    for j in range(1, top + 1, 2):
        Tj = classes.get(j, Monomial())
        x = element_of(v, [b for b in Sw if dw[b] in (j, j + 1)])
        star = kr_phi(x, Tj + Tj.reflect(d), v)
        stars[j] = star
        diag = [a for a in star.support if on_diag(a, d)]
        if diag:
            if len(diag) != 2 or any(star.mult(a) != 1 for a in diag):
                raise MapError(f"unexpected diagonal part {diag} at layer {j}")
            star, delta[j] = delta_twist(star, diag, d)
        result = result + star.filter(lambda a: in_ON(a, d))
    for j in classes:
        if j > top:
            raise MapError(f"class {j} has no matching slice of S_w")
    return PhiTrace(result, classes, stars, delta)


def ortho_phi(w: IdElement, T: Monomial, v: IdElement) -> Monomial:
    """phi-bar, inverse of :func:`ortho_pi`."""
    return ortho_phi_trace(w, T, v).result


def satisfies_ddag_monomial(S: Monomial, f: int, d: int) -> bool:
    fs = 2 * d + 1 - f
    return all(a.r != f and a.c != fs for a in S.support)


def satisfies_ddag_element(w: IdElement, f: int) -> bool:
    return f not in w


__all__ = [
    "Block",
    "MapError",
    "kr_blocks",
    "kr_pi",
    "kr_phi",
    "kr_pieces",
    "build_layer_monomial",
    "ortho_pi",
    "ortho_pi_trace",
    "partition_T",
    "ortho_phi",
    "ortho_phi_trace",
    "delta_twist",
    "satisfies_ddag_monomial",
    "satisfies_ddag_element",
]
