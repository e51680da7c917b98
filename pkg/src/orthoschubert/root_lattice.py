"""Root regions R_v, N_v, OR_v, ON_v, the diagonal D_v, and monomials over them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

from .index_sets import IdElement, IndexSetError, star


class Root(NamedTuple):
    """A pair (row, column); row is a non-entry of v, column an entry."""

    r: int
    c: int

    def __str__(self) -> str:
        return f"({self.r},{self.c})"


class RegionError(ValueError):
    """Raised when a root or monomial falls outside the region it should lie in."""


# pointwise predicates (only need d) ----------------------------------------

def in_N(a: Root) -> bool:
    return a.r > a.c


def in_OR(a: Root, d: int) -> bool:
    return a.r < star(a.c, d)


def in_ON(a: Root, d: int) -> bool:
    return a.c < a.r < star(a.c, d)


def on_diag(a: Root, d: int) -> bool:
    return a.r == star(a.c, d)


def above_or_on_diag(a: Root, d: int) -> bool:
    return a.r <= star(a.c, d)


def project_v(a: Root, d: int) -> Root:
    """Vertical projection (c*, c) onto the diagonal."""
    return Root(star(a.c, d), a.c)


def project_h(a: Root, d: int) -> Root | None:
    """Horizontal projection (r, r*); ``None`` when it falls outside N_v."""
    rs = star(a.r, d)
    return Root(a.r, rs) if a.r > rs else None


def project_h_raw(a: Root, d: int) -> Root:
    return Root(a.r, star(a.r, d))


def reflect(a: Root, d: int) -> Root:
    """Reflection across the diagonal: (r, c) -> (c*, r*)."""
    return Root(star(a.c, d), star(a.r, d))


def greater(a: Root, b: Root) -> bool:
    """The chain order: (R,C) > (r,c) iff R > r and C < c."""
    return a.r > b.r and a.c < b.c


def dominates_root(big: Root, small: Root) -> bool:
    """(R,C) dominates (r,c) iff r <= R and C <= c."""
    return small.r <= big.r and big.c <= small.c


# regions --------------------------------------------------------------------

@dataclass(frozen=True)
class Regions:
    v: IdElement
    nonentries: tuple[int, ...]
    all_roots: tuple[Root, ...]
    n_v: tuple[Root, ...]
    or_v: tuple[Root, ...]
    on_v: tuple[Root, ...]
    diag: tuple[Root, ...]

    @property
    def d(self) -> int:
        return self.v.d

    @property
    def free(self) -> tuple[Root, ...]:
        """OR_v minus ON_v: the roots that carry no domination constraint."""
        return tuple(a for a in self.or_v if not in_N(a))

    def next_row(self, r: int) -> int | None:
        """Smallest non-entry of v strictly greater than r."""
        for x in self.nonentries:
            if x > r:
                return x
        return None

    def next_col(self, c: int) -> int | None:
        """Smallest entry of v strictly greater than c."""
        for x in self.v.entries:
            if x > c:
                return x
        return None


@lru_cache(maxsize=4096)
def build_regions(v: IdElement) -> Regions:
    if not v.in_Id:
        raise IndexSetError(f"{v} is not in I(d)")
    d = v.d
    non = tuple(k for k in range(1, 2 * d + 1) if k not in v)
    roots = tuple(sorted(Root(r, c) for r in non for c in v.entries))
    n_v = tuple(a for a in roots if in_N(a))
    or_v = tuple(a for a in roots if in_OR(a, d))
    on_v = tuple(a for a in roots if in_ON(a, d))
    diag = tuple(a for a in roots if on_diag(a, d))
    return Regions(v, non, roots, n_v, or_v, on_v, diag)


def is_root_of(a: Root, v: IdElement) -> bool:
    return a.r not in v and a.c in v and 1 <= a.r <= 2 * v.d


# monomials ------------------------------------------------------------------

class Monomial:
    """A finite multiset of roots, kept as a sorted tuple of (root, multiplicity)."""

    __slots__ = ("items", "_hash")

    def __init__(self, data: Iterable[Root] | Mapping[Root, int] = ()) -> None:
        if isinstance(data, Mapping):
            cnt = Counter({Root(*k): int(m) for k, m in data.items()})
        else:
            cnt = Counter(Root(*a) for a in data)
        if any(m < 0 for m in cnt.values()):
            raise ValueError("negative multiplicity")
        self.items: tuple[tuple[Root, int], ...] = tuple(
            sorted((a, m) for a, m in cnt.items() if m > 0)
        )
        self._hash = hash(self.items)

    # basic protocol
    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    def __contains__(self, a: object) -> bool:
        return any(a == b for b, _ in self.items)

    def __iter__(self) -> Iterator[Root]:
        return iter(self.support)

    def __repr__(self) -> str:
        return "Monomial(" + self.text() + ")"

    def text(self) -> str:
        parts = []
        for a, m in self.items:
            parts.append(str(a) if m == 1 else f"{a}^{m}")
        return "{" + ",".join(parts) + "}"

    @property
    def support(self) -> tuple[Root, ...]:
        return tuple(a for a, _ in self.items)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.items)

    def mult(self, a: Root) -> int:
        for b, m in self.items:
            if b == a:
                return m
        return 0

    def counter(self) -> Counter:
        return Counter(dict(self.items))

    def expanded(self) -> list[Root]:
        """Roots listed with repetition, in canonical (row, column) order."""
        return [a for a, m in self.items for _ in range(m)]

    def is_square_free(self) -> bool:
        return all(m == 1 for _, m in self.items)

    # multiset algebra
    def __add__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.counter() + other.counter())

    def __sub__(self, other: "Monomial") -> "Monomial":
        c = self.counter()
        c.subtract(other.counter())
        return Monomial({a: m for a, m in c.items() if m > 0})

    def filter(self, pred: Callable[[Root], bool]) -> "Monomial":
        return Monomial({a: m for a, m in self.items if pred(a)})

    def map(self, f: Callable[[Root], Root]) -> "Monomial":
        c: Counter = Counter()
        for a, m in self.items:
            c[f(a)] += m
        return Monomial(c)

    def reflect(self, d: int) -> "Monomial":
        return self.map(lambda a: reflect(a, d))

    def is_symmetric(self, d: int) -> bool:
        return self == self.reflect(d)

    def check_region(self, region: Iterable[Root], name: str = "region") -> None:
        allowed = set(region)
        bad = [a for a in self.support if a not in allowed]
        if bad:
            raise RegionError(f"roots {bad} are outside {name}")

    def to_json(self) -> list[dict[str, int]]:
        return [{"r": a.r, "c": a.c, "mult": m} for a, m in self.items]

    @classmethod
    def from_json(cls, data: Iterable[Mapping[str, int]]) -> "Monomial":
        c: Counter = Counter()
        for item in data:
            c[Root(int(item["r"]), int(item["c"]))] += int(item.get("mult", 1))
        return cls(c)


def up(S: Monomial, d: int) -> Monomial:
    """Multiset intersection with ON_v union D_v (on or above the diagonal)."""
    return S.filter(lambda a: above_or_on_diag(a, d))


def down(S: Monomial, d: int) -> Monomial:
    """Multiset intersection with the part of N_v on or below the diagonal."""
    return S.filter(lambda a: a.r >= star(a.c, d))


def strictly_above(S: Monomial, d: int) -> Monomial:
    return S.filter(lambda a: in_OR(a, d))


def diagonal_part(S: Monomial, d: int) -> Monomial:
    return S.filter(lambda a: on_diag(a, d))


def element_of(v: IdElement, roots: Iterable[Root]) -> IdElement:
    """Start with v, remove the column indices and add the row indices."""
    roots = list(roots)
    cols = {a.c for a in roots}
    rows = {a.r for a in roots}
    if len(cols) != len(roots) or len(rows) != len(roots):
        raise RegionError("roots must have distinct rows and distinct columns")
    if not cols <= v.entry_set or rows & v.entry_set:
        raise RegionError("roots are not in R_v")
    return IdElement(v.d, tuple(sorted((v.entry_set - cols) | rows)))
