"""Standard monomials in I(d), v-degree, and the bijection with monomials over OR_v.

The ON_v part of a monomial goes through repeated pi-bar.  The rest is mirrored:
for even d by u -> u* and the flip (r,c) -> (c,r); for odd d the mirror lands in
I(d+1) through the pass embedding, restricted to elements avoiding d+1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .index_sets import (
    IdElement,
    all_Id,
    leq,
    pass_embed,
    pass_entry,
    pass_unembed,
    u_star,
)
from .pi_phi import ortho_phi, ortho_pi
from .root_lattice import Monomial, Root, build_regions, in_N, in_ON


class StandardMonomialError(ValueError):
    pass


def v_degree(theta: IdElement, v: IdElement) -> int:
    diff = len(v.entry_set - theta.entry_set)
    if diff % 2:
        raise StandardMonomialError(f"|v minus theta| = {diff} is odd")
    return diff // 2


@dataclass(frozen=True)
class StandardMonomial:
    thetas: tuple[IdElement, ...]
    v: IdElement

    def __post_init__(self) -> None:
        for a, b in zip(self.thetas, self.thetas[1:]):
            if not leq(b, a):
                raise StandardMonomialError("thetas must be weakly decreasing")

    @property
    def degree(self) -> int:
        return sum(v_degree(t, self.v) for t in self.thetas)

    def is_v_compatible(self) -> bool:
        return all(t != self.v and (leq(self.v, t) or leq(t, self.v)) for t in self.thetas)

    def is_dominated_by(self, w: IdElement) -> bool:
        return not self.thetas or leq(self.thetas[0], w)

    def is_anti_dominated(self) -> bool:
        return not self.thetas or (self.thetas[-1] != self.v and leq(self.v, self.thetas[-1]))

    def to_json(self) -> dict:
        return {"thetas": [list(t.entries) for t in self.thetas], "degree": self.degree}


# mirror setup ----------------------------------------------------------------

@dataclass(frozen=True)
class Mirror:
    """Base element for the mirror half, and the root/element transport maps."""

    v: IdElement
    base: IdElement

    @property
    def odd(self) -> bool:
        return self.v.d % 2 == 1

    def root_out(self, a: Root) -> Root:
        """OR_v minus ON_v -> ON of the mirror base."""
        if self.odd:
            d = self.v.d
            return Root(pass_entry(a.c, d), pass_entry(a.r, d))
        return Root(a.c, a.r)

    def root_back(self, a: Root) -> Root:
        if self.odd:
            d = self.v.d
            unpass = lambda e: e if e <= d else e - 2  # noqa: E731
            return Root(unpass(a.c), unpass(a.r))
        return Root(a.c, a.r)

    def elem_out(self, theta: IdElement) -> IdElement:
        """Order reversing: theta < v maps to an element above the base."""
        return pass_embed(u_star(theta)) if self.odd else u_star(theta)

    def elem_back(self, x: IdElement) -> IdElement:
        return u_star(pass_unembed(x)) if self.odd else u_star(x)


def mirror(v: IdElement) -> Mirror:
    if v.d % 2:
        return Mirror(v, pass_embed(u_star(v)))
    return Mirror(v, u_star(v))


# the bijection ---------------------------------------------------------------

def iterate_pi(T: Monomial, v: IdElement, cap: int | None = None) -> list[IdElement]:
    """Apply pi-bar until the monomial empties; returns w_1 >= w_2 >= ..."""
    out: list[IdElement] = []
    steps = cap if cap is not None else T.degree
    while T:
        if len(out) >= steps:
            raise StandardMonomialError("pi-bar iteration did not terminate")
        w, T = ortho_pi(T, v)
        out.append(w)
    return out


def iterate_phi(thetas: list[IdElement], v: IdElement) -> Monomial:
    T = Monomial()
    for w in reversed(thetas):
        T = ortho_phi(w, T, v)
    return T


def monomial_to_sm(S: Monomial, v: IdElement) -> StandardMonomial:
    d = v.d
    reg = build_regions(v)
    S.check_region(reg.or_v, "OR_v")
    upper = S.filter(lambda a: in_ON(a, d))
    lower = S.filter(lambda a: not in_N(a))
    head = iterate_pi(upper, v)
    m = mirror(v)
    flipped = lower.map(m.root_out)
    tail = [m.elem_back(x) for x in iterate_pi(flipped, m.base)]
    return StandardMonomial(tuple(head + tail[::-1]), v)


def sm_to_monomial(sm: StandardMonomial) -> Monomial:
    v = sm.v
    if not sm.is_v_compatible():
        raise StandardMonomialError("standard monomial is not v-compatible")
    head = [t for t in sm.thetas if leq(v, t)]
    tail = [t for t in sm.thetas if leq(t, v)]
    m = mirror(v)
    upper = iterate_phi(head, v)
    flipped = iterate_phi([m.elem_out(t) for t in reversed(tail)], m.base)
    return upper + flipped.map(m.root_back)


# enumeration -----------------------------------------------------------------

def enumerate_sm(v: IdElement, w: IdElement, m: int) -> list[StandardMonomial]:
    """All v-compatible standard monomials of degree m dominated by w."""
    if not leq(v, w):
        raise StandardMonomialError(f"{v} is not <= {w}")
    cands = [
        t for t in all_Id(v.d)
        if t != v and leq(t, w) and (leq(v, t) or leq(t, v))
    ]
    deg = {t: v_degree(t, v) for t in cands}
    out: list[StandardMonomial] = []

    def rec(prefix: list[IdElement], left: int) -> None:
        if left == 0:
            out.append(StandardMonomial(tuple(prefix), v))
            return
        for t in cands:
            if deg[t] <= left and (not prefix or leq(t, prefix[-1])):
                prefix.append(t)
                rec(prefix, left - deg[t])
                prefix.pop()

    rec([], m)
    return out


def count_sm(v: IdElement, w: IdElement, m: int) -> int:
    return len(enumerate_sm(v, w, m))
