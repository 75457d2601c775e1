"""Base metric spaces that seed the constructions.

Three carriers are supported: rationals in [0, 1] with the usual metric,
finite subsets of the positive integers with the Cantor ultrametric, and a
finite discrete space given by an explicit distance table.  Every space also
serves as a base for :class:`~exotic_metrics.zcon.ZSpace`, so the methods
below (``validate``, ``distance``, ``gauge``, ``key``, ``sample``, ``encode``,
``decode``) form the small protocol the Z-construction relies on.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .scalar import ONE, ZERO, as_scalar, fmt, parse_rational


class PointError(ValueError):
    """A point does not belong to the space it was used with."""


class LiteralError(ValueError):
    """A command-line point literal is syntactically malformed."""


def rational_literal(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise LiteralError(str(exc)) from None


class BaseKind(str, enum.Enum):
    UNIT_INTERVAL = "UnitIntervalQ"
    CANTOR = "CantorFinite"
    FINITE = "FiniteDiscrete"


def cantor_distance(a: Iterable[int], b: Iterable[int]) -> Fraction:
    """Reciprocal of the least element of the symmetric difference, 0 if equal."""
    delta = frozenset(a) ^ frozenset(b)
    if not delta:
        return ZERO
    return Fraction(1, min(delta))


def table_violations(table: Sequence[Sequence[Fraction]]) -> list[str]:
    """Describe every metric-axiom failure of a square distance table."""
    n = len(table)
    problems = []
    for i, row in enumerate(table):
        if len(row) != n:
            problems.append(f"row {i} has {len(row)} entries, expected {n}")
    if problems:
        return problems
    for i in range(n):
        if table[i][i] != 0:
            problems.append(f"d({i},{i}) = {fmt(table[i][i])} is not zero")
        for j in range(n):
            if table[i][j] != table[j][i]:
                problems.append(f"d({i},{j}) != d({j},{i})")
            if i != j and table[i][j] <= 0:
                problems.append(f"d({i},{j}) = {fmt(table[i][j])} is not positive")
            for k in range(n):
                if table[i][k] > table[i][j] + table[j][k]:
                    problems.append(f"triangle fails for ({i},{j},{k})")
    return problems


@dataclass(frozen=True)
class BaseSpace:
    kind: BaseKind
    table: tuple[tuple[Fraction, ...], ...] = ()
    labels: tuple[str, ...] = ()
    grid: int = 2**16
    universe: int = 12

    # -- construction -------------------------------------------------------
    @classmethod
    def unit_interval(cls, grid: int = 2**16) -> BaseSpace:
        if grid < 1:
            raise ValueError("grid denominator must be positive")
        return cls(BaseKind.UNIT_INTERVAL, grid=grid)

    @classmethod
    def cantor(cls, universe: int = 12) -> BaseSpace:
        if universe < 1:
            raise ValueError("universe must be positive")
        return cls(BaseKind.CANTOR, universe=universe)

    @classmethod
    def finite(cls, table, labels: Sequence[str] | None = None, check: bool = True) -> BaseSpace:
        """Build a finite discrete space from a square table of rationals.

        ``check=False`` skips metric validation; it exists so negative
        controls can feed a deliberately broken table to the audits.
        """
        rows = tuple(tuple(as_scalar(x) for x in row) for row in table)
        if not rows:
            raise ValueError("a finite space needs at least one point")
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("distance table must be square")
        if check:
            problems = table_violations(rows)
            if problems:
                raise ValueError("invalid distance table: " + "; ".join(problems[:5]))
        labels = tuple(labels) if labels else tuple(str(i) for i in range(len(rows)))
        if len(labels) != len(rows):
            raise ValueError("label count does not match table size")
        return cls(BaseKind.FINITE, table=rows, labels=labels)

    # -- protocol -------------------------------------------------------------
    def validate(self, p):
        """Return the canonical form of ``p`` or raise :class:`PointError`."""
        if self.kind is BaseKind.UNIT_INTERVAL:
            if type(p) is Fraction and 0 <= p <= 1:
                return p
            if isinstance(p, (bool, float)) or not isinstance(p, (int, Fraction)):
                raise PointError(f"{p!r} is not a rational point of [0,1]")
            p = Fraction(p)
            if not 0 <= p <= 1:
                raise PointError(f"{fmt(p)} lies outside [0,1]")
            return p
        if self.kind is BaseKind.CANTOR:
            if not isinstance(p, (set, frozenset, tuple, list)):
                raise PointError(f"{p!r} is not a finite integer set")
            if any(isinstance(x, bool) or not isinstance(x, int) or x < 1 for x in p):
                raise PointError(f"{p!r} must contain positive integers only")
            return frozenset(p)
        if isinstance(p, bool) or not isinstance(p, int) or not 0 <= p < len(self.table):
            raise PointError(f"{p!r} is not an index of this {len(self.table)}-point space")
        return p

    def distance(self, p, q) -> Fraction:
        p, q = self.validate(p), self.validate(q)
        if self.kind is BaseKind.UNIT_INTERVAL:
            return abs(p - q)
        if self.kind is BaseKind.CANTOR:
            return cantor_distance(p, q)
        return self.table[p][q]

    def gauge(self, x, u) -> Fraction:
        return min(self.distance(x, u), ONE)

    def key(self, p):
        """A totally ordered, hashable canonical key for ``p``."""
        p = self.validate(p)
        if self.kind is BaseKind.CANTOR:
            return tuple(sorted(p))
        return p

    def sample(self, rng: random.Random):
        if self.kind is BaseKind.UNIT_INTERVAL:
            return Fraction(rng.randint(0, self.grid), self.grid)
        if self.kind is BaseKind.CANTOR:
            bits = rng.getrandbits(self.universe)
            return frozenset(i + 1 for i in range(self.universe) if bits >> i & 1)
        return rng.randrange(len(self.table))

    @property
    def size(self) -> int | None:
        return len(self.table) if self.kind is BaseKind.FINITE else None

    def encode(self, p):
        p = self.validate(p)
        if self.kind is BaseKind.UNIT_INTERVAL:
            return fmt(p)
        if self.kind is BaseKind.CANTOR:
            return sorted(p)
        return p

    def decode(self, obj):
        if self.kind is BaseKind.UNIT_INTERVAL:
            if isinstance(obj, str):
                try:
                    return self.validate(parse_rational(obj))
                except ValueError as exc:
                    if isinstance(exc, PointError):
                        raise
                    raise PointError(str(exc)) from None
            return self.validate(obj)
        if self.kind is BaseKind.CANTOR:
            return self.validate(list(obj) if isinstance(obj, (list, tuple)) else obj)
        return self.validate(obj)

    def parse_literal(self, text: str):
        """Parse the compact command-line form of a point."""
        text = text.strip()
        if self.kind is BaseKind.CANTOR:
            inner = text.strip("{}").strip()
            if not inner:
                return frozenset()
            try:
                items = [int(x) for x in inner.split(",")]
            except ValueError:
                raise LiteralError(f"malformed integer set {text!r}") from None
            return self.validate(items)
        if self.kind is BaseKind.FINITE:
            if text in self.labels:
                return self.labels.index(text)
            try:
                index = int(text)
            except ValueError:
                raise LiteralError(f"unknown point {text!r}") from None
            return self.validate(index)
        return self.validate(rational_literal(text))

    def describe(self) -> dict:
        if self.kind is BaseKind.UNIT_INTERVAL:
            return {"kind": self.kind.value, "grid": self.grid}
        if self.kind is BaseKind.CANTOR:
            return {"kind": self.kind.value, "universe": self.universe}
        return {
            "kind": self.kind.value,
            "labels": list(self.labels),
            "table": [[fmt(x) for x in row] for row in self.table],
        }


def base_distance(space: BaseSpace, p, q) -> Fraction:
    return space.distance(p, q)


def gauge(space: BaseSpace, x, u) -> Fraction:
    """Distance truncated at 1; vanishes exactly on the closure relation."""
    return space.gauge(x, u)


def truncate(space: BaseSpace) -> BaseSpace:
    """Return the same carrier with distance ``min(d, 1)``."""
    if space.kind is not BaseKind.FINITE:
        return space
    rows = tuple(tuple(min(x, ONE) for x in row) for row in space.table)
    return BaseSpace(BaseKind.FINITE, table=rows, labels=space.labels)
