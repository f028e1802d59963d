"""MatchKAT terms and their packet-filtering semantics.

A term denotes a transformer on sets of ``n``-bit packets. Operators::

    p + q      choice (union of outputs)
    p * q      sequential composition (run p, then q)
    p.star()   Kleene star (least fixpoint)
    ~a         negation, only for tests

Negation is restricted to tests and evaluated relative to the input set,
``Not(a)(P) = P - interp(a)``, which keeps every term union-additive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable

from .config import check_width
from .errors import IllFormedError, WidthError
from .match import MatchExpr, _mask, point_match
from .match import size as expr_size
from .packets import Packet, PacketSet, bit_mask, universe_mask


class Term:
    def __add__(self, other: "Term") -> "Plus":
        return Plus(self, other)

    def __mul__(self, other: "Term") -> "Seq":
        return Seq(self, other)

    def __invert__(self) -> "Not":
        return Not(self)

    def star(self) -> "Star":
        return Star(self)


@dataclass(frozen=True)
class Drop(Term):
    """⊥: drops every packet."""


@dataclass(frozen=True)
class Skip(Term):
    """⊤: passes every packet unchanged."""


@dataclass(frozen=True)
class Test(Term):
    expr: MatchExpr


@dataclass(frozen=True)
class Assign(Term):
    """Set bit ``index`` (1-based) to ``value``."""

    index: int
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError(f"assigned value must be 0 or 1, got {self.value!r}")
        if self.index < 1:
            raise WidthError(f"bit index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class Plus(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Seq(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Star(Term):
    child: Term


@dataclass(frozen=True)
class Not(Term):
    child: Term


DROP = Drop()
SKIP = Skip()


def bit_test(i: int, k: int, n: int) -> Test:
    """The test ``i ≃ k`` at packet size ``n``."""
    return Test(point_match(i, k, n))


def seq_all(terms: Iterable[Term]) -> Term:
    terms = list(terms)
    return reduce(Seq, terms) if terms else SKIP


def plus_all(terms: Iterable[Term]) -> Term:
    terms = list(terms)
    return reduce(Plus, terms) if terms else DROP


# -- structure ---------------------------------------------------------------


def is_test(t: Term) -> bool:
    if isinstance(t, (Drop, Skip, Test)):
        return True
    if isinstance(t, (Plus, Seq)):
        return is_test(t.left) and is_test(t.right)
    if isinstance(t, Not):
        return is_test(t.child)
    return False


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (Plus, Seq)):
        return (t.left, t.right)
    if isinstance(t, (Star, Not)):
        return (t.child,)
    return ()


def walk(t: Term):
    yield t
    for c in children(t):
        yield from walk(c)


def size(t: Term) -> int:
    """Number of term nodes (embedded match expressions count as one node)."""
    return sum(1 for _ in walk(t))


def full_size(t: Term) -> int:
    """Term nodes plus the nodes of every embedded match expression."""
    return sum(expr_size(s.expr) if isinstance(s, Test) else 1 for s in walk(t))


def infer_packet_size(t: Term) -> int | None:
    """The width of the first embedded test, or None for test-free terms."""
    for s in walk(t):
        if isinstance(s, Test):
            return s.expr.width
    return None


def check_well_formed(t: Term, n: int) -> None:
    """Raise unless every test has width ``n``, every index is in ``1..n``
    and negation is only applied to tests."""
    for s in walk(t):
        if isinstance(s, Test) and s.expr.width != n:
            raise WidthError(f"test of width {s.expr.width} in a term of packet size {n}")
        if isinstance(s, Assign) and s.index > n:
            raise WidthError(f"assignment to bit {s.index} in a term of packet size {n}")
        if isinstance(s, Not) and not is_test(s.child):
            raise IllFormedError("negation applied to a non-test")


def _resolve_size(n: int | None, *terms: Term) -> int:
    if n is not None:
        return n
    for t in terms:
        m = infer_packet_size(t)
        if m is not None:
            return m
    raise WidthError("packet size cannot be inferred from a test-free term; pass n")


# -- evaluation --------------------------------------------------------------

Transformer = Callable[[int], int]


def _test_mask(t: Term, n: int) -> int:
    full = universe_mask(n)
    if isinstance(t, Drop):
        return 0
    if isinstance(t, Skip):
        return full
    if isinstance(t, Test):
        return _mask(t.expr)
    if isinstance(t, Plus):
        return _test_mask(t.left, n) | _test_mask(t.right, n)
    if isinstance(t, Seq):
        return _test_mask(t.left, n) & _test_mask(t.right, n)
    if isinstance(t, Not):
        return full ^ _test_mask(t.child, n)
    raise IllFormedError(f"not a test: {t!r}")


def compile_term(t: Term, n: int) -> Transformer:
    """Compile ``t`` into a function on packet-set bitmasks.

    Compiling once and applying many times is what makes singleton-wise
    equivalence checking cheap.
    """
    check_width(n)
    check_well_formed(t, n)
    return _compile(t, n)


def _compile(t: Term, n: int) -> Transformer:
    if is_test(t):
        m = _test_mask(t, n)
        if m == universe_mask(n):
            return lambda s: s
        if m == 0:
            return lambda s: 0
        return lambda s: s & m
    if isinstance(t, Assign):
        one = bit_mask(n, t.index)
        zero = universe_mask(n) ^ one
        shift = 1 << (n - t.index)
        if t.value:
            return lambda s: (s & one) | ((s & zero) << shift)
        return lambda s: (s & zero) | ((s & one) >> shift)
    if isinstance(t, Plus):
        f, g = _compile(t.left, n), _compile(t.right, n)
        return lambda s: f(s) | g(s)
    if isinstance(t, Seq):
        f, g = _compile(t.left, n), _compile(t.right, n)
        return lambda s: g(f(s))
    if isinstance(t, Star):
        f = _compile(t.child, n)

        def star(s):
            acc = frontier = s
            while frontier:
                frontier = f(frontier) & ~acc
                acc |= frontier
            return acc

        return star
    raise TypeError(f"not a term: {t!r}")


def evaluate(t: Term, packets: PacketSet) -> PacketSet:
    """Apply the packet-filtering semantics of ``t`` to a set of packets."""
    f = compile_term(t, packets.width)
    return PacketSet(packets.width, f(packets.mask))


def apply(t: Term, packet: Packet) -> PacketSet:
    return evaluate(t, PacketSet(packet.width, 1 << packet.value))


@dataclass(frozen=True)
class TermEquivalence:
    """Result of :func:`term_equiv`. Truthy iff the terms are equivalent.

    When they differ, ``witness`` is the smallest input packet on which they
    disagree and ``left``/``right`` are the two output sets for it.
    """

    witness: Packet | None = None
    left: PacketSet | None = None
    right: PacketSet | None = None

    @property
    def equivalent(self) -> bool:
        return self.witness is None

    def __bool__(self) -> bool:
        return self.equivalent


def term_equiv(t: Term, u: Term, n: int | None = None) -> TermEquivalence:
    """Decide semantic equality of two terms at packet size ``n``.

    Both terms are union-additive, so comparing them on every singleton input
    suffices. Singletons are scanned in ascending order.
    """
    n = _resolve_size(n, t, u)
    f, g = compile_term(t, n), compile_term(u, n)
    for v in range(1 << n):
        s = 1 << v
        a, b = f(s), g(s)
        if a != b:
            return TermEquivalence(Packet(n, v), PacketSet(n, a), PacketSet(n, b))
    return TermEquivalence()
