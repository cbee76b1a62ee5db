"""Overpartitions: the gap-4 families, their statistics, and weighted counts.

An overpartition is a partition in which the first occurrence of each distinct
part value may be overlined; overlines carry no size.  The central objects are

* the family ``A``: only odd parts may be overlined, adjacent parts differ by
  at least 4, strictly when the larger part is overlined or divisible by 4;
* its restrictions ``A-no-1bar``, ``A-no-1-1bar``, ``A-no-1-1bar-2-3bar``
  forbidding small parts;
* the variant family ``Avee``: overlines only on odd parts larger than 1, the
  same gap rule, except that an overlined 5 and a plain 1 may coexist.

Two independent enumeration routes are provided: an exhaustive generator of
all overpartitions (partitions times overline masks, the slow oracle) and a
direct gap-constrained recursive generator per family.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Callable, Iterator

from .series import QUIN_VARS, Series, VarSet

Part = tuple[int, bool]  # (value, overlined)

SET_A = "A"
SET_A_NO_1BAR = "A-no-1bar"
SET_A_NO_1_1BAR = "A-no-1-1bar"
SET_A_NO_1_1BAR_2_3BAR = "A-no-1-1bar-2-3bar"
SET_AVEE = "Avee"

SET_IDS = (SET_A, SET_A_NO_1BAR, SET_A_NO_1_1BAR, SET_A_NO_1_1BAR_2_3BAR, SET_AVEE)

_FORBIDDEN: dict[str, frozenset[Part]] = {
    SET_A: frozenset(),
    SET_A_NO_1BAR: frozenset({(1, True)}),
    SET_A_NO_1_1BAR: frozenset({(1, False), (1, True)}),
    SET_A_NO_1_1BAR_2_3BAR: frozenset({(1, False), (1, True), (2, False), (3, True)}),
}


class InvalidOverpartition(ValueError):
    pass


@dataclass(frozen=True)
class Overpartition:
    """Canonical form: parts ascending by value, overlined copy first."""

    parts: tuple[Part, ...]

    def __post_init__(self) -> None:
        seen_overlined = set()
        for value, overlined in self.parts:
            if value < 1:
                raise InvalidOverpartition(f"part value {value} < 1")
            if overlined:
                if value in seen_overlined:
                    raise InvalidOverpartition(f"value {value} overlined twice")
                seen_overlined.add(value)
        canon = tuple(sorted(self.parts, key=lambda p: (p[0], not p[1])))
        if canon != self.parts:
            object.__setattr__(self, "parts", canon)

    @classmethod
    def of(cls, *parts: int | Part) -> "Overpartition":
        """Build from part values; a tuple (v, True) marks an overline."""
        norm: list[Part] = []
        for p in parts:
            if isinstance(p, int):
                norm.append((p, False))
            else:
                norm.append((p[0], bool(p[1])))
        return cls(tuple(norm))

    @property
    def size(self) -> int:
        return sum(v for v, _ in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def merge(self, other: "Overpartition") -> "Overpartition":
        return Overpartition(self.parts + other.parts)

    def shift(self, amount: int) -> "Overpartition":
        """Add ``amount`` to every part, overlines preserved."""
        return Overpartition(tuple((v + amount, o) for v, o in self.parts))

    def render(self) -> str:
        """Largest part first; an overline shows as a trailing tilde."""
        return " ".join(f"{v}~" if o else str(v) for v, o in reversed(self.parts))

    def to_json(self) -> list[dict]:
        return [{"value": v, "overlined": o} for v, o in self.parts]

    def __repr__(self) -> str:
        return f"Overpartition({self.render() or 'empty'})"


EMPTY = Overpartition(())


@dataclass(frozen=True)
class PartStats:
    size: int
    length: int
    r1mod2: int  # parts that are odd
    r2mod4: int  # parts congruent to 2 mod 4
    r0mod4: int  # parts divisible by 4
    over: int  # overlined parts


def stats(op: Overpartition) -> PartStats:
    size = length = odd = two = four = over = 0
    for v, o in op.parts:
        size += v
        length += 1
        if v % 2:
            odd += 1
        elif v % 4 == 2:
            two += 1
        else:
            four += 1
        if o:
            over += 1
    return PartStats(size, length, odd, two, four, over)


# -- membership predicates ----------------------------------------------------


def _gap_ok(lo: Part, hi: Part) -> bool:
    d = hi[0] - lo[0]
    if d > 4:
        return True
    return d == 4 and not hi[1] and hi[0] % 4 != 0


def in_A(op: Overpartition) -> bool:
    parts = op.parts
    if any(o and v % 2 == 0 for v, o in parts):
        return False
    return all(_gap_ok(parts[i], parts[i + 1]) for i in range(len(parts) - 1))


def in_A_S(op: Overpartition, forbidden: frozenset[Part] | set[Part]) -> bool:
    return in_A(op) and not any(p in forbidden for p in op.parts)


def in_Avee(op: Overpartition) -> bool:
    parts = op.parts
    if any(o and (v % 2 == 0 or v == 1) for v, o in parts):
        return False
    for i in range(len(parts) - 1):
        lo, hi = parts[i], parts[i + 1]
        if lo == (1, False) and hi == (5, True):
            continue  # the one sanctioned exception
        if not _gap_ok(lo, hi):
            return False
    return True


def predicate_for(setid: str) -> Callable[[Overpartition], bool]:
    if setid == SET_AVEE:
        return in_Avee
    if setid in _FORBIDDEN:
        forb = _FORBIDDEN[setid]
        return lambda op: in_A_S(op, forb)
    raise KeyError(f"unknown set id {setid!r}; expected one of {SET_IDS}")


# -- exhaustive enumeration (the slow oracle) ----------------------------------


def _partitions_by_multiplicity(n: int, min_val: int = 1) -> Iterator[tuple[tuple[int, int], ...]]:
    """Partitions of n as ((value, multiplicity), ...) with ascending values."""
    if n == 0:
        yield ()
        return
    for v in range(min_val, n + 1):
        for m in range(1, n // v + 1):
            for rest in _partitions_by_multiplicity(n - v * m, v + 1):
                yield ((v, m),) + rest


def enum_overpartitions(n: int) -> list[Overpartition]:
    """Every overpartition of n, duplicate-free (partition times overline mask)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out: list[Overpartition] = []
    for partition in _partitions_by_multiplicity(n):
        k = len(partition)
        for mask in iter_product((False, True), repeat=k):
            parts: list[Part] = []
            for (v, mult), overlined in zip(partition, mask):
                if overlined:
                    parts.append((v, True))
                    parts.extend((v, False) for _ in range(mult - 1))
                else:
                    parts.extend((v, False) for _ in range(mult))
            out.append(Overpartition(tuple(parts)))
    return out


# -- direct gap-constrained generators -----------------------------------------


def _gen_gap4(
    n: int,
    overline_ok: Callable[[int], bool],
    allow_5bar_after_1: bool,
    forbidden: frozenset[Part],
) -> Iterator[tuple[Part, ...]]:
    """Members of a gap-4 family with |lambda| = n, parts chosen ascending."""

    def rec(remaining: int, prev: Part | None) -> Iterator[tuple[Part, ...]]:
        if remaining == 0:
            yield ()
            return
        lo = 1 if prev is None else prev[0] + 4
        for v in range(lo, remaining + 1):
            for overlined in (False, True):
                if overlined and not overline_ok(v):
                    continue
                cur = (v, overlined)
                if cur in forbidden:
                    continue
                if prev is not None and not _gap_ok(prev, cur):
                    if not (allow_5bar_after_1 and prev == (1, False) and cur == (5, True)):
                        continue
                for rest in rec(remaining - v, cur):
                    yield (cur,) + rest

    return rec(n, None)


def enum_set(setid: str, n: int) -> list[Overpartition]:
    """Members of the named family with size exactly n (direct generator)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if setid == SET_AVEE:
        gen = _gen_gap4(n, lambda v: v % 2 == 1 and v > 1, True, frozenset())
    elif setid in _FORBIDDEN:
        gen = _gen_gap4(n, lambda v: v % 2 == 1, False, _FORBIDDEN[setid])
    else:
        raise KeyError(f"unknown set id {setid!r}; expected one of {SET_IDS}")
    return [Overpartition(parts) for parts in gen]


def weight_monomial(vars: VarSet, st: PartStats) -> tuple[int, ...]:
    """x^length y1^r2mod4 y2^r0mod4 z^over q^size as an exponent vector."""
    return vars.m(q=st.size, x=st.length, y1=st.r2mod4, y2=st.r0mod4, z=st.over)


def weighted_gf(setid: str, order: int, vars: VarSet | None = None) -> Series:
    """Quinvariate generating function of the named family, truncated at order."""
    vs = QUIN_VARS if vars is None else vars
    terms = []
    for n in range(order + 1):
        for op in enum_set(setid, n):
            terms.append((weight_monomial(vs, stats(op)), 1))
    return Series(vs, order, terms)


# -- weighted counters ----------------------------------------------------------


def count_A(n: int, m: int, ell: int) -> int:
    """Members of Avee of size n with r1mod2 + 2*r0mod4 = m and r2mod4 + over = ell."""
    total = 0
    for op in enum_set(SET_AVEE, n):
        st = stats(op)
        if st.r1mod2 + 2 * st.r0mod4 == m and st.r2mod4 + st.over == ell:
            total += 1
    return total


def distinct_4regular(n: int, min_val: int = 1) -> Iterator[tuple[int, ...]]:
    """Partitions of n into distinct parts, none divisible by 4 (ascending)."""
    if n == 0:
        yield ()
        return
    for v in range(min_val, n + 1):
        if v % 4 == 0:
            continue
        for rest in distinct_4regular(n - v, v + 1):
            yield (v,) + rest


def odd_parts_mult_le3(n: int, min_val: int = 1) -> Iterator[tuple[int, ...]]:
    """Partitions of n into odd parts, no part appearing more than three times."""
    if n == 0:
        yield ()
        return
    start = min_val if min_val % 2 else min_val + 1
    for v in range(start, n + 1, 2):
        for mult in (1, 2, 3):
            if v * mult > n:
                break
            for rest in odd_parts_mult_le3(n - v * mult, v + 2):
                yield (v,) * mult + rest


def count_B(n: int, m: int, ell: int) -> int:
    """Distinct 4-regular partitions of n with m odd parts and ell even parts."""
    total = 0
    for parts in distinct_4regular(n):
        odd = sum(1 for v in parts if v % 2)
        if odd == m and len(parts) - odd == ell:
            total += 1
    return total


def count_A1(n: int, m: int) -> int:
    """Avee members of n, parts weighted: overlined or divisible by 4 count double."""
    total = 0
    for op in enum_set(SET_AVEE, n):
        st = stats(op)
        if st.length + st.over + st.r0mod4 == m:
            total += 1
    return total


def count_B1(n: int, m: int) -> int:
    """Distinct 4-regular partitions of n into m parts."""
    return sum(1 for parts in distinct_4regular(n) if len(parts) == m)


def count_A2(n: int, m: int) -> int:
    """Avee members of n, weighted: overlined parts triple, even parts double."""
    total = 0
    for op in enum_set(SET_AVEE, n):
        st = stats(op)
        if st.r1mod2 + 2 * st.over + 2 * st.r2mod4 + 2 * st.r0mod4 == m:
            total += 1
    return total


def count_B2(n: int, m: int) -> int:
    """Partitions of n into m odd parts, none appearing more than three times."""
    return sum(1 for parts in odd_parts_mult_le3(n) if len(parts) == m)


# -- table builders (one enumeration sweep per n, shared by the registry) -------


def table_A(order: int) -> dict[tuple[int, int, int], int]:
    out: dict[tuple[int, int, int], int] = {}
    for n in range(order + 1):
        for op in enum_set(SET_AVEE, n):
            st = stats(op)
            key = (n, st.r1mod2 + 2 * st.r0mod4, st.r2mod4 + st.over)
            out[key] = out.get(key, 0) + 1
    return out


def table_B(order: int) -> dict[tuple[int, int, int], int]:
    out: dict[tuple[int, int, int], int] = {}
    for n in range(order + 1):
        for parts in distinct_4regular(n):
            odd = sum(1 for v in parts if v % 2)
            key = (n, odd, len(parts) - odd)
            out[key] = out.get(key, 0) + 1
    return out


def table_A1(order: int) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for n in range(order + 1):
        for op in enum_set(SET_AVEE, n):
            st = stats(op)
            key = (n, st.length + st.over + st.r0mod4)
            out[key] = out.get(key, 0) + 1
    return out


def table_B1(order: int) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for n in range(order + 1):
        for parts in distinct_4regular(n):
            key = (n, len(parts))
            out[key] = out.get(key, 0) + 1
    return out


def table_A2(order: int) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for n in range(order + 1):
        for op in enum_set(SET_AVEE, n):
            st = stats(op)
            key = (n, st.r1mod2 + 2 * st.over + 2 * st.r2mod4 + 2 * st.r0mod4)
            out[key] = out.get(key, 0) + 1
    return out


def table_B2(order: int) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for n in range(order + 1):
        for parts in odd_parts_mult_le3(n):
            key = (n, len(parts))
            out[key] = out.get(key, 0) + 1
    return out
