"""Exact truncated multivariate formal power series.

A series lives over a fixed, ordered set of variables, one of which (the
truncation variable, conventionally ``q``) bounds everything: monomials whose
q-exponent exceeds the truncation order are identically zero.  Coefficients
are Python ints, so arithmetic is exact at any size.

Values are immutable once constructed; every operation returns a fresh
Series.  Nothing here mutates shared state, so series may be freely shared
across threads.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from operator import add as _add
from typing import Iterable, Iterator

Mono = tuple[int, ...]

MAX_VARS = 6


class SeriesError(ValueError):
    """Base class for series arithmetic contract violations."""


class VarSetMismatch(SeriesError):
    """Operands live over different variable sets."""


class ArityMismatch(SeriesError):
    """A monomial's length does not match the variable set."""


class TruncationExceeded(SeriesError):
    """A query reaches beyond the truncation order (coefficient unknown)."""


class NotInvertible(SeriesError):
    """Inversion precondition failed (unit constant term, positive q-degree)."""


@dataclass(frozen=True)
class VarSet:
    """Ordered variable names with a distinguished truncation variable."""

    names: tuple[str, ...]
    trunc_var: int = 0

    def __post_init__(self) -> None:
        if not self.names or len(self.names) > MAX_VARS:
            raise SeriesError(f"need 1..{MAX_VARS} variables, got {len(self.names)}")
        if len(set(self.names)) != len(self.names):
            raise SeriesError(f"duplicate variable names in {self.names}")
        if not 0 <= self.trunc_var < len(self.names):
            raise SeriesError(f"trunc_var index {self.trunc_var} out of range")

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SeriesError(f"unknown variable {name!r} in {self.names}") from None

    def m(self, **exps: int) -> Mono:
        """Build an exponent vector from keyword exponents, e.g. ``vs.m(q=2, x=1)``."""
        vec = [0] * self.arity
        for name, e in exps.items():
            if e < 0:
                raise SeriesError(f"negative exponent for {name}")
            vec[self.index(name)] = e
        return tuple(vec)

    @property
    def unit(self) -> Mono:
        return (0,) * self.arity


def varset(*names: str, trunc: str = "q") -> VarSet:
    """Convenience VarSet factory; the truncation variable defaults to ``q``."""
    vs = tuple(names)
    return VarSet(vs, vs.index(trunc))


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(map(_add, a, b))


def format_monomial(vars: VarSet, mono: Mono) -> str:
    parts = []
    for name, e in zip(vars.names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Mismatch:
    """First (lexicographically smallest) disagreeing monomial of two series."""

    monomial: Mono
    left: int
    right: int

    def render(self, vars: VarSet) -> str:
        return f"{format_monomial(vars, self.monomial)}: left {self.left} != right {self.right}"


class Series:
    """Sparse truncated power series: exponent vector -> nonzero int coefficient."""

    __slots__ = ("vars", "order", "terms")

    def __init__(self, vars: VarSet, order: int, terms: Iterable[tuple[Mono, int]] = ()):
        if order < 0:
            raise SeriesError("truncation order must be >= 0")
        qi = vars.trunc_var
        arity = vars.arity
        acc: dict[Mono, int] = {}
        for mono, coeff in terms:
            if len(mono) != arity:
                raise ArityMismatch(f"monomial {mono} has arity {len(mono)}, expected {arity}")
            if any(e < 0 for e in mono):
                raise SeriesError(f"negative exponent in monomial {mono}")
            if mono[qi] > order or coeff == 0:
                continue
            mono = tuple(mono)
            c = acc.get(mono, 0) + coeff
            if c:
                acc[mono] = c
            else:
                del acc[mono]
        self.vars = vars
        self.order = order
        self.terms = acc

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, vars: VarSet, order: int, terms: dict[Mono, int]) -> "Series":
        s = cls.__new__(cls)
        s.vars = vars
        s.order = order
        s.terms = terms
        return s

    @classmethod
    def zero(cls, vars: VarSet, order: int) -> "Series":
        return cls._raw(vars, order, {})

    @classmethod
    def const(cls, vars: VarSet, order: int, c: int) -> "Series":
        return cls._raw(vars, order, {vars.unit: c} if c else {})

    @classmethod
    def one(cls, vars: VarSet, order: int) -> "Series":
        return cls.const(vars, order, 1)

    @classmethod
    def monomial(cls, vars: VarSet, order: int, mono: Mono, coeff: int = 1) -> "Series":
        return cls(vars, order, [(mono, coeff)])

    # -- basic queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Mono) -> int:
        """Stored coefficient, or 0; raises if the query exceeds the order."""
        if len(mono) != self.vars.arity:
            raise ArityMismatch(f"monomial {mono} has wrong arity")
        if mono[self.vars.trunc_var] > self.order:
            raise TruncationExceeded(
                f"q-exponent {mono[self.vars.trunc_var]} beyond truncation order {self.order}"
            )
        return self.terms.get(tuple(mono), 0)

    def constant_term(self) -> int:
        return self.terms.get(self.vars.unit, 0)

    def items(self) -> Iterator[tuple[Mono, int]]:
        """Terms in canonical (lexicographic exponent) order."""
        return iter(sorted(self.terms.items()))

    def q_coefficients(self, upto: int | None = None) -> list[int]:
        """Coefficient of q^0..q^upto, summing over all other variables.

        Mostly useful for univariate series and quick diagnostics.
        """
        n = self.order if upto is None else upto
        if n > self.order:
            raise TruncationExceeded(f"order {n} beyond truncation {self.order}")
        qi = self.vars.trunc_var
        out = [0] * (n + 1)
        for mono, c in self.terms.items():
            if mono[qi] <= n:
                out[mono[qi]] += c
        return out

    # -- equality --------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.vars == other.vars
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):  # dict-backed, deliberately unhashable
        raise TypeError("Series is not hashable")

    def first_mismatch(self, other: "Series", upto: int) -> Mismatch | None:
        """Smallest monomial (lex) with q-exponent <= upto where coefficients differ."""
        self._check_compatible(other)
        if upto > self.order or upto > other.order:
            raise TruncationExceeded(
                f"comparison order {upto} exceeds truncation ({self.order}, {other.order})"
            )
        qi = self.vars.trunc_var
        witness: Mono | None = None
        for mono, c in self.terms.items():
            if mono[qi] <= upto and other.terms.get(mono, 0) != c:
                if witness is None or mono < witness:
                    witness = mono
        for mono, c in other.terms.items():
            if mono[qi] <= upto and mono not in self.terms:
                if witness is None or mono < witness:
                    witness = mono
        if witness is None:
            return None
        return Mismatch(witness, self.terms.get(witness, 0), other.terms.get(witness, 0))

    def equal_to_order(self, other: "Series", upto: int) -> bool:
        return self.first_mismatch(other, upto) is None

    # -- ring operations -------------------------------------------------------

    def _check_compatible(self, other: "Series") -> None:
        if self.vars != other.vars:
            raise VarSetMismatch(f"{self.vars.names} vs {other.vars.names}")

    def truncate(self, order: int) -> "Series":
        """Restrict to a (lower or equal) truncation order."""
        if order >= self.order:
            if order == self.order:
                return self
            raise TruncationExceeded(f"cannot extend order {self.order} to {order}")
        qi = self.vars.trunc_var
        return Series._raw(
            self.vars, order, {m: c for m, c in self.terms.items() if m[qi] <= order}
        )

    def __neg__(self) -> "Series":
        return Series._raw(self.vars, self.order, {m: -c for m, c in self.terms.items()})

    def __add__(self, other: "Series") -> "Series":
        self._check_compatible(other)
        order = min(self.order, other.order)
        qi = self.vars.trunc_var
        big, small = (self.terms, other.terms) if len(self.terms) >= len(other.terms) else (other.terms, self.terms)
        acc = {m: c for m, c in big.items() if m[qi] <= order}
        for m, c in small.items():
            if m[qi] > order:
                continue
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return Series._raw(self.vars, order, acc)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, c: int) -> "Series":
        if c == 0:
            return Series.zero(self.vars, self.order)
        return Series._raw(self.vars, self.order, {m: c * v for m, v in self.terms.items()})

    def mul_monomial(self, mono: Mono, coeff: int = 1) -> "Series":
        """Multiply by coeff * mono; cheaper than a general product."""
        if len(mono) != self.vars.arity:
            raise ArityMismatch(f"monomial {mono} has wrong arity")
        if coeff == 0:
            return Series.zero(self.vars, self.order)
        qi = self.vars.trunc_var
        shift = mono[qi]
        acc = {}
        for m, c in self.terms.items():
            if m[qi] + shift <= self.order:
                acc[mono_mul(m, mono)] = c * coeff
        return Series._raw(self.vars, self.order, acc)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        self._check_compatible(other)
        order = min(self.order, other.order)
        qi = self.vars.trunc_var
        # Iterate the shorter factor outside; cut each inner scan at the q-degree
        # budget so over-order products are never formed (pruning during, not after).
        a, b = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        b_items = sorted(b.terms.items(), key=lambda kv: kv[0][qi])
        b_qexps = [m[qi] for m, _ in b_items]
        acc: dict[Mono, int] = {}
        for ma, ca in a.terms.items():
            budget = order - ma[qi]
            if budget < 0:
                continue
            hi = bisect_right(b_qexps, budget)
            for i in range(hi):
                mb, cb = b_items[i]
                key = mono_mul(ma, mb)
                s = acc.get(key, 0) + ca * cb
                if s:
                    acc[key] = s
                else:
                    del acc[key]
        return Series._raw(self.vars, order, acc)

    __rmul__ = __mul__

    def invert(self) -> "Series":
        """Multiplicative inverse to the same order.

        Requires a unit (+-1) constant term and positive q-degree on every
        non-constant monomial; under those conditions 1/a = c0 * sum_k (-c0*A)^k
        with A = a - c0, and the sum terminates at k = order.
        """
        c0 = self.constant_term()
        if c0 not in (1, -1):
            raise NotInvertible(f"constant term {c0} is not a unit")
        qi = self.vars.trunc_var
        unit = self.vars.unit
        for m in self.terms:
            if m != unit and m[qi] == 0:
                raise NotInvertible(
                    f"non-constant monomial {m} carries no q-degree; inversion unsupported"
                )
        a_tail = Series._raw(
            self.vars, self.order, {m: -c0 * c for m, c in self.terms.items() if m != unit}
        )
        result = Series.one(self.vars, self.order)
        power = Series.one(self.vars, self.order)
        for _ in range(self.order):
            power = power * a_tail
            if power.is_zero():
                break
            result = result + power
        return result.scale(c0)

    def substitute(self, var: str | int, mono: Mono) -> "Series":
        """Replace every occurrence of ``var``**e by ``mono``**e, re-truncated.

        Substituting the truncation variable requires the replacement to carry
        q-degree >= 1, otherwise previously discarded terms could re-enter the
        truncation window and the result would not be exact.
        """
        vi = var if isinstance(var, int) else self.vars.index(var)
        if not 0 <= vi < self.vars.arity:
            raise ArityMismatch(f"variable index {vi} out of range")
        if len(mono) != self.vars.arity:
            raise ArityMismatch(f"monomial {mono} has wrong arity")
        qi = self.vars.trunc_var
        if vi == qi and mono[qi] < 1:
            raise SeriesError("substituting the truncation variable needs q-degree >= 1")
        acc: dict[Mono, int] = {}
        for m, c in self.terms.items():
            e = m[vi]
            new = tuple(
                (0 if j == vi else m[j]) + e * mono[j] for j in range(self.vars.arity)
            )
            if new[qi] > self.order:
                continue
            s = acc.get(new, 0) + c
            if s:
                acc[new] = s
            else:
                del acc[new]
        return Series._raw(self.vars, self.order, acc)

    def set_var_zero(self, var: str | int) -> "Series":
        """Evaluate at var = 0: keep only terms with exponent 0 in ``var``."""
        vi = var if isinstance(var, int) else self.vars.index(var)
        return Series._raw(
            self.vars, self.order, {m: c for m, c in self.terms.items() if m[vi] == 0}
        )

    # -- rendering ---------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return f"<0 (order {self.order})>"
        qi = self.vars.trunc_var
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda kv: (kv[0][qi], kv[0])):
            txt = format_monomial(self.vars, mono)
            if txt == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(txt)
            elif c == -1:
                parts.append(f"-{txt}")
            else:
                parts.append(f"{c}*{txt}")
        shown = parts[:24]
        more = " + ..." if len(parts) > 24 else ""
        return f"<{' + '.join(shown)}{more} (order {self.order})>"


def make(vars: VarSet, order: int, terms: Iterable[tuple[Mono, int]] = ()) -> Series:
    """Build a series; over-order terms drop silently, duplicates merge."""
    return Series(vars, order, terms)


# Variable sets used throughout: everything is truncated in q.
Q_VARS = varset("q")
QX_VARS = varset("q", "x")
QXY_VARS = varset("q", "x", "y")
QUIN_VARS = varset("q", "x", "y1", "y2", "z")
