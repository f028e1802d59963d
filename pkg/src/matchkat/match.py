"""Ternary match expressions over fixed-width bit strings.

Expressions are immutable trees. Python operators build them::

    >>> e = lit("1x") + ~lit("11")      # union, complement
    >>> e & lit("x1")                    # intersection
    >>> lit("1") @ lit("0")              # concatenation

Every node knows its width. ``interp`` gives the exact set of strings an
expression matches; equivalence is decided by comparing those sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterable

from .config import check_width
from .errors import WidthError
from .packets import Packet, PacketSet, iter_bits, spread, universe_mask


class MatchExpr:
    width: int

    def __add__(self, other: "MatchExpr") -> "Union":
        return Union(self, other)

    def __and__(self, other: "MatchExpr") -> "Inter":
        return Inter(self, other)

    def __invert__(self) -> "Compl":
        return Compl(self)

    def __matmul__(self, other: "MatchExpr") -> "Concat":
        return Concat(self, other)


@dataclass(frozen=True)
class Empty(MatchExpr):
    """The width-0 expression matching only the empty string."""

    @property
    def width(self) -> int:
        return 0


@dataclass(frozen=True)
class Bot(MatchExpr):
    """Matches nothing. Carries a width so that width stays total on syntax."""

    width: int = 0

    def __post_init__(self):
        if self.width < 0:
            raise WidthError(f"negative width {self.width}")


@dataclass(frozen=True)
class Lit(MatchExpr):
    """A single-bit literal: ``"0"``, ``"1"`` or don't-care ``"x"``."""

    symbol: str

    def __post_init__(self):
        if self.symbol not in ("0", "1", "x"):
            raise ValueError(f"literal must be 0, 1 or x, got {self.symbol!r}")

    @property
    def width(self) -> int:
        return 1


@dataclass(frozen=True)
class Concat(MatchExpr):
    left: MatchExpr
    right: MatchExpr
    width: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "width", self.left.width + self.right.width)


def _same_width(node, a, b):
    if a.width != b.width:
        raise WidthError(f"{type(node).__name__} operands have widths {a.width} and {b.width}")
    object.__setattr__(node, "width", a.width)


@dataclass(frozen=True)
class Union(MatchExpr):
    left: MatchExpr
    right: MatchExpr
    width: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        _same_width(self, self.left, self.right)


@dataclass(frozen=True)
class Inter(MatchExpr):
    left: MatchExpr
    right: MatchExpr
    width: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        _same_width(self, self.left, self.right)


@dataclass(frozen=True)
class Compl(MatchExpr):
    child: MatchExpr
    width: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "width", self.child.width)


ZERO = Lit("0")
ONE = Lit("1")
X = Lit("x")
EMPTY = Empty()


def lit(run: str) -> MatchExpr:
    """Left-nested concatenation of a literal run such as ``"1x0"``.

    The empty run gives ``Empty()``.
    """
    if not run:
        return EMPTY
    return reduce(Concat, (Lit(c) for c in run[1:]), Lit(run[0]))


def top(n: int) -> MatchExpr:
    """The wildcard ``x...x`` of width ``n`` (``Empty()`` for ``n == 0``)."""
    if n < 0:
        raise WidthError(f"negative width {n}")
    return lit("x" * n)


def concat_all(parts: Iterable[MatchExpr]) -> MatchExpr:
    parts = [p for p in parts if not isinstance(p, Empty)]
    if not parts:
        return EMPTY
    return reduce(Concat, parts)


def union_all(parts: Iterable[MatchExpr], width: int) -> MatchExpr:
    parts = list(parts)
    if not parts:
        return Bot(width)
    return reduce(Union, parts)


def inter_all(parts: Iterable[MatchExpr], width: int) -> MatchExpr:
    parts = list(parts)
    if not parts:
        return top(width)
    return reduce(Inter, parts)


def point_match(i: int, k: int, n: int) -> MatchExpr:
    """Test that bit ``i`` (1-based) of an ``n``-bit string equals ``k``.

    Built as ``top(i-1) @ k @ top(n-i)`` with empty wildcards elided, so the
    result of ``point_match(2, 1, 3)`` is the literal run ``x1x``.
    """
    if not 1 <= i <= n:
        raise WidthError(f"bit index {i} outside 1..{n}")
    if k not in (0, 1):
        raise ValueError(f"bit value must be 0 or 1, got {k!r}")
    return lit("x" * (i - 1) + str(k) + "x" * (n - i))


def size(e: MatchExpr) -> int:
    """Number of nodes in the expression tree."""
    if isinstance(e, (Union, Inter, Concat)):
        return 1 + size(e.left) + size(e.right)
    if isinstance(e, Compl):
        return 1 + size(e.child)
    return 1


# -- interpretation ----------------------------------------------------------


@lru_cache(maxsize=4096)
def _mask(e: MatchExpr) -> int:
    if isinstance(e, Lit):
        return {"0": 0b01, "1": 0b10, "x": 0b11}[e.symbol]
    if isinstance(e, Empty):
        return 1
    if isinstance(e, Bot):
        return 0
    if isinstance(e, Union):
        return _mask(e.left) | _mask(e.right)
    if isinstance(e, Inter):
        return _mask(e.left) & _mask(e.right)
    if isinstance(e, Compl):
        return universe_mask(e.width) ^ _mask(e.child)
    if isinstance(e, Concat):
        left, right = _mask(e.left), _mask(e.right)
        wl, wr = e.left.width, e.right.width
        if not left or not right:
            return 0
        if right.bit_count() <= 32:
            base = spread(left, wl, wr)
            out = 0
            for b in iter_bits(right):
                out |= base << b
            return out
        if left.bit_count() <= 32:
            out = 0
            for a in iter_bits(left):
                out |= right << (a << wr)
            return out
        return spread(left, wl, wr) * right
    raise TypeError(f"not a match expression: {e!r}")


def interp(e: MatchExpr) -> PacketSet:
    """The exact set of ``e.width``-bit strings that ``e`` matches.

    Raises :class:`~matchkat.errors.CapacityError` when the width exceeds the
    enumeration cap (see :func:`matchkat.config.limits`).
    """
    check_width(e.width)
    return PacketSet(e.width, _mask(e))


def matches(e: MatchExpr, packet: Packet | str) -> bool:
    if isinstance(packet, str):
        packet = Packet.from_string(packet)
    if packet.width != e.width:
        raise WidthError(f"packet width {packet.width} vs expression width {e.width}")
    return packet in interp(e)


# -- disjunctive normal form -------------------------------------------------


@dataclass(frozen=True, order=True)
class Cube:
    """A ⊓/complement-free product of literals, written as a string ``"1x0"``."""

    trits: str

    def __post_init__(self):
        if any(c not in "01x" for c in self.trits):
            raise ValueError(f"cube symbols must be 0, 1 or x: {self.trits!r}")

    @property
    def width(self) -> int:
        return len(self.trits)

    def to_expr(self) -> MatchExpr:
        return lit(self.trits)

    def contains(self, packet: Packet) -> bool:
        return all(t == "x" or int(t) == b for t, b in zip(self.trits, packet.bits))

    def covers(self, other: "Cube") -> bool:
        return all(a == "x" or a == b for a, b in zip(self.trits, other.trits))

    def intersect(self, other: "Cube") -> "Cube | None":
        out = []
        for a, b in zip(self.trits, other.trits):
            if a == "x":
                out.append(b)
            elif b == "x" or a == b:
                out.append(a)
            else:
                return None
        return Cube("".join(out))

    def complement(self) -> frozenset["Cube"]:
        # one cube per fixed position, with that bit flipped and the rest free
        out = set()
        for i, t in enumerate(self.trits):
            if t != "x":
                flipped = "1" if t == "0" else "0"
                out.add(Cube("x" * i + flipped + "x" * (self.width - i - 1)))
        return frozenset(out)

    def __str__(self) -> str:
        return self.trits


def _prune(cubes: Iterable[Cube]) -> frozenset[Cube]:
    # drop cubes subsumed by another cube in the cover
    cubes = sorted(set(cubes), key=lambda c: -c.trits.count("x"))
    kept: list[Cube] = []
    for c in cubes:
        if not any(k.covers(c) for k in kept):
            kept.append(c)
    return frozenset(kept)


def _dnf_inter(a: frozenset[Cube], b: frozenset[Cube]) -> frozenset[Cube]:
    return _prune(c for x in a for y in b if (c := x.intersect(y)) is not None)


def _dnf(e: MatchExpr) -> frozenset[Cube]:
    if isinstance(e, Lit):
        return frozenset({Cube(e.symbol)})
    if isinstance(e, Empty):
        return frozenset({Cube("")})
    if isinstance(e, Bot):
        return frozenset()
    if isinstance(e, Union):
        return _prune(_dnf(e.left) | _dnf(e.right))
    if isinstance(e, Inter):
        return _dnf_inter(_dnf(e.left), _dnf(e.right))
    if isinstance(e, Concat):
        return frozenset(
            Cube(a.trits + b.trits) for a in _dnf(e.left) for b in _dnf(e.right)
        )
    if isinstance(e, Compl):
        # De Morgan: complement of a union is the intersection of complements
        result = frozenset({Cube("x" * e.width)})
        for c in _dnf(e.child):
            result = _dnf_inter(result, c.complement())
            if not result:
                break
        return result
    raise TypeError(f"not a match expression: {e!r}")


def to_dnf(e: MatchExpr) -> frozenset[Cube]:
    """A set of cubes whose union matches exactly what ``e`` matches.

    No minimality is promised; subsumed cubes are dropped along the way.
    Complement and intersection expand multiplicatively, so the cover can
    be exponential in the size of ``e``.
    """
    if e.width < 1:
        raise WidthError("to_dnf requires width >= 1")
    return _dnf(e)


def dnf_expr(cubes: Iterable[Cube], width: int) -> MatchExpr:
    """Rebuild a match expression (a union of literal runs) from a cube set."""
    return union_all((c.to_expr() for c in sorted(cubes)), width)


# -- equivalence -------------------------------------------------------------


@dataclass(frozen=True)
class MatchEquivalence:
    """Result of :func:`expr_equiv`. Truthy iff the expressions are equivalent."""

    witness: Packet | None = None

    @property
    def equivalent(self) -> bool:
        return self.witness is None

    def __bool__(self) -> bool:
        return self.equivalent


def expr_equiv(e: MatchExpr, f: MatchExpr) -> MatchEquivalence:
    """Decide ``interp(e) == interp(f)`` by exhaustion.

    On failure the witness is the numerically smallest string in the
    symmetric difference.
    """
    if e.width != f.width:
        raise WidthError(f"cannot compare widths {e.width} and {f.width}")
    diff = interp(e) ^ interp(f)
    return MatchEquivalence(diff.min())
