"""Elements of I(d,2d) and I(d): validation, order, involutions, lifts.

Entries are 1-indexed throughout.  ``k*`` means ``2d + 1 - k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class IndexSetError(ValueError):
    """Raised for malformed or out-of-class index elements."""


def star(k: int, d: int) -> int:
    return 2 * d + 1 - k


@dataclass(frozen=True)
class IdElement:
    """A d-subset of {1..2d}, stored as a strictly increasing tuple."""

    d: int
    entries: tuple[int, ...]
    _set: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        d, e = self.d, self.entries
        if not isinstance(d, int) or d < 1:
            raise IndexSetError(f"d must be a positive integer, got {d!r}")
        if len(e) != d:
            raise IndexSetError(f"expected {d} entries, got {len(e)}")
        if any(not (1 <= x <= 2 * d) for x in e):
            raise IndexSetError(f"entries must lie in [1, {2 * d}]: {e}")
        if any(a >= b for a, b in zip(e, e[1:])):
            raise IndexSetError(f"entries must be strictly increasing: {e}")
        object.__setattr__(self, "_set", frozenset(e))

    # membership ---------------------------------------------------------
    @property
    def entry_set(self) -> frozenset[int]:
        return self._set

    def __contains__(self, k: object) -> bool:
        return k in self.entry_set

    def pairs_ok(self) -> bool:
        s = self.entry_set
        return all((k in s) != (star(k, self.d) in s) for k in range(1, self.d + 1))

    def high_count(self) -> int:
        return sum(1 for x in self.entries if x > self.d)

    @property
    def in_Id(self) -> bool:
        return self.pairs_ok() and self.high_count() % 2 == 0

    @property
    def in_Id_star(self) -> bool:
        return self.pairs_ok() and self.high_count() % 2 == 1

    def classify(self) -> str:
        if self.in_Id:
            return "I(d)"
        if self.in_Id_star:
            return "I(d)*"
        return "I(d,2d)"

    # order --------------------------------------------------------------
    def leq(self, other: "IdElement") -> bool:
        return leq(self, other)

    def __le__(self, other: "IdElement") -> bool:
        return leq(self, other)

    def __ge__(self, other: "IdElement") -> bool:
        return leq(other, self)

    def __lt__(self, other: "IdElement") -> bool:
        return self != other and leq(self, other)

    def __gt__(self, other: "IdElement") -> bool:
        return self != other and leq(other, self)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"

    def to_json(self) -> list[int]:
        return list(self.entries)


def make(d: int, entries: Iterable[int]) -> IdElement:
    """Build an element from an unordered collection of entries."""
    return IdElement(d, tuple(sorted(entries)))


def validate(d: int, entries: Sequence[int], require_Id: bool = False) -> IdElement:
    """Validate a raw entry sequence; optionally insist on membership in I(d)."""
    x = IdElement(d, tuple(int(e) for e in entries))
    if require_Id:
        if not x.pairs_ok():
            raise IndexSetError(f"{x} must contain exactly one of each pair k, k*")
        if x.high_count() % 2:
            raise IndexSetError(f"{x} has an odd number of entries exceeding {d}")
    return x


def leq(a: IdElement, b: IdElement) -> bool:
    if a.d != b.d:
        raise IndexSetError(f"cannot compare elements with d={a.d} and d={b.d}")
    return all(x <= y for x, y in zip(a.entries, b.entries))


def complement(a: IdElement) -> frozenset[int]:
    return frozenset(range(1, 2 * a.d + 1)) - a.entry_set


def hash_involution(a: IdElement) -> IdElement:
    """``a# = ({1..2d} minus a)*``.  Fixes every element of I(d)."""
    return make(a.d, (star(k, a.d) for k in complement(a)))


def u_star(u: IdElement) -> IdElement:
    """``u* = (u_d*, ..., u_1*)``; order reversing on I(d,2d)."""
    return make(u.d, (star(k, u.d) for k in u.entries))


def lift_odd(d: int, entries: Sequence[int]) -> IdElement:
    """Lift an element for odd n = 2d+1 to I(d+1) (n reduced to the even case)."""
    e = tuple(int(x) for x in entries)
    n = 2 * d + 1
    if len(e) != d or len(set(e)) != d or any(not (1 <= x <= n) for x in e):
        raise IndexSetError(f"expected {d} distinct entries in [1, {n}], got {e}")
    if d + 1 in e:
        raise IndexSetError(f"entry {d + 1} is self-paired and not allowed")
    s = set(e)
    if any(n + 1 - x in s for x in e):
        raise IndexSetError(f"{e} contains a pair k, n+1-k")
    high = sum(1 for x in e if x > d)
    lifted = [x if x <= d else x + 1 for x in e]
    lifted.append(d + 1 if high % 2 == 0 else d + 2)
    return make(d + 1, lifted)


def pass_entry(e: int, d: int) -> int:
    return e if e <= d else e + 2


def pass_embed(u: IdElement) -> IdElement:
    """Order preserving injection I(d)* -> I(d+1) for odd d."""
    if u.d % 2 == 0:
        raise IndexSetError("pass_embed is defined only for odd d")
    if not u.in_Id_star:
        raise IndexSetError(f"{u} is not in I(d)*")
    return make(u.d + 1, [pass_entry(e, u.d) for e in u.entries] + [u.d + 2])


def pass_unembed(x: IdElement) -> IdElement:
    """Inverse of :func:`pass_embed` on its image."""
    d = x.d - 1
    if d + 2 not in x or d + 1 in x:
        raise IndexSetError(f"{x} is not in the image of pass_embed")
    return make(d, [e if e <= d else e - 2 for e in x.entries if e != d + 2])


# enumeration ------------------------------------------------------------

def iter_Idd(d: int) -> Iterator[IdElement]:
    """All of I(d,2d) in lexicographic order."""
    for c in itertools.combinations(range(1, 2 * d + 1), d):
        yield IdElement(d, c)


@lru_cache(maxsize=None)
def all_Id(d: int) -> tuple[IdElement, ...]:
    """All of I(d), sorted lexicographically (2^(d-1) elements)."""
    out = []
    for choice in itertools.product((False, True), repeat=d):
        ent = [star(k, d) if flip else k for k, flip in zip(range(1, d + 1), choice)]
        if sum(choice) % 2 == 0:
            out.append(make(d, ent))
    return tuple(sorted(out, key=lambda x: x.entries))


def all_Id_star(d: int) -> tuple[IdElement, ...]:
    out = []
    for choice in itertools.product((False, True), repeat=d):
        if sum(choice) % 2 == 1:
            out.append(make(d, [star(k, d) if f else k for k, f in zip(range(1, d + 1), choice)]))
    return tuple(sorted(out, key=lambda x: x.entries))


def interval_Id(v: IdElement, w: IdElement | None = None) -> list[IdElement]:
    """Elements x of I(d) with v <= x (and x <= w when w is given)."""
    return [x for x in all_Id(v.d) if v <= x and (w is None or x <= w)]


# text form ----------------------------------------------------------------

def parse_entries(text: str) -> tuple[int, ...]:
    text = text.strip().strip("()[]")
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise IndexSetError(f"cannot parse entry list {text!r}") from exc


def parse_instance(text: str) -> dict[str, object]:
    """Parse ``"d=7;v=1,2,3,4,7,9,10[;w=...]"`` into validated elements."""
    fields: dict[str, str] = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise IndexSetError(f"malformed field {part!r}")
        key, val = part.split("=", 1)
        fields[key.strip()] = val.strip()
    if "d" not in fields:
        raise IndexSetError("missing d")
    try:
        d = int(fields["d"])
    except ValueError as exc:
        raise IndexSetError(f"bad d {fields['d']!r}") from exc
    out: dict[str, object] = {"d": d}
    for key in ("v", "w"):
        if key in fields:
            out[key] = validate(d, parse_entries(fields[key]), require_Id=True)
    return out


def format_instance(v: IdElement, w: IdElement | None = None) -> str:
    s = f"d={v.d};v=" + ",".join(map(str, v.entries))
    if w is not None:
        s += ";w=" + ",".join(map(str, w.entries))
    return s
