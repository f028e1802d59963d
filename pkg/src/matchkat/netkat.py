"""A reference NetKAT interpreter and the translations to and from MatchKAT.

NetKAT packets are records of named fields. Here a record is laid out as a
single bit string according to a :class:`FieldSpec`: fields are stored in
declaration order, each most-significant-bit first. The interpreter only ever
reads and writes whole field values; the bit-level view appears solely in the
translations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

from . import match as mx
from . import terms as mk
from .config import max_history
from .errors import CapacityError, IllFormedError, WidthError
from .packets import Packet, PacketSet


@dataclass(frozen=True)
class FieldSpec:
    """Ordered ``(name, bit width)`` pairs."""

    fields: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "fields", tuple((str(f), int(w)) for f, w in self.fields))
        names = [f for f, _ in self.fields]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate field names in {names}")
        for f, w in self.fields:
            if w < 1:
                raise ValueError(f"field {f!r} must have positive width, got {w}")

    @classmethod
    def bits(cls, n: int) -> "FieldSpec":
        """``n`` single-bit fields ``f1 .. fn``."""
        return cls(tuple((f"f{i}", 1) for i in range(1, n + 1)))

    @property
    def size(self) -> int:
        return sum(w for _, w in self.fields)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f for f, _ in self.fields)

    def width_of(self, name: str) -> int:
        for f, w in self.fields:
            if f == name:
                return w
        raise KeyError(f"unknown field {name!r}")

    def offset(self, name: str) -> int:
        """Number of bits stored before ``name``."""
        off = 0
        for f, w in self.fields:
            if f == name:
                return off
            off += w
        raise KeyError(f"unknown field {name!r}")

    def pos(self, name: str, j: int) -> int:
        """Global 1-based bit position of the ``j``-th bit of field ``name``."""
        w = self.width_of(name)
        if not 1 <= j <= w:
            raise WidthError(f"bit {j} outside field {name!r} of width {w}")
        return j + self.offset(name)

    def check_value(self, name: str, value: int) -> None:
        w = self.width_of(name)
        if not 0 <= value < (1 << w):
            raise ValueError(f"value {value} does not fit field {name!r} of width {w}")

    def get(self, packet: Packet, name: str) -> int:
        shift = self.size - self.offset(name) - self.width_of(name)
        return (packet.value >> shift) & ((1 << self.width_of(name)) - 1)

    def set(self, packet: Packet, name: str, value: int) -> Packet:
        w = self.width_of(name)
        shift = self.size - self.offset(name) - w
        cleared = packet.value & ~(((1 << w) - 1) << shift)
        return Packet(packet.width, cleared | (value << shift))

    def record(self, packet: Packet) -> dict[str, int]:
        return {f: self.get(packet, f) for f in self.names}

    def packet(self, **values: int) -> Packet:
        p = Packet(self.size, 0)
        for f, v in values.items():
            self.check_value(f, v)
            p = self.set(p, f, v)
        return p


def bin_bit(value: int, j: int, width: int) -> int:
    """The ``j``-th bit (1-based, MSB first) of ``value`` written in ``width`` bits."""
    return (value >> (width - j)) & 1


# -- syntax ------------------------------------------------------------------


class NkTerm:
    def __add__(self, other: "NkTerm") -> "NkPlus":
        return NkPlus(self, other)

    def __mul__(self, other: "NkTerm") -> "NkSeq":
        return NkSeq(self, other)

    def __invert__(self) -> "NkNot":
        return NkNot(self)

    def star(self) -> "NkStar":
        return NkStar(self)


@dataclass(frozen=True)
class Zero(NkTerm):
    pass


@dataclass(frozen=True)
class One(NkTerm):
    pass


@dataclass(frozen=True)
class Dup(NkTerm):
    pass


@dataclass(frozen=True)
class FieldTest(NkTerm):
    field: str
    value: int


@dataclass(frozen=True)
class FieldAssign(NkTerm):
    field: str
    value: int


@dataclass(frozen=True)
class NkPlus(NkTerm):
    left: NkTerm
    right: NkTerm


@dataclass(frozen=True)
class NkSeq(NkTerm):
    left: NkTerm
    right: NkTerm


@dataclass(frozen=True)
class NkStar(NkTerm):
    child: NkTerm


@dataclass(frozen=True)
class NkNot(NkTerm):
    child: NkTerm


ZERO = Zero()
ONE = One()
DUP = Dup()


def nk_children(t: NkTerm) -> tuple[NkTerm, ...]:
    if isinstance(t, (NkPlus, NkSeq)):
        return (t.left, t.right)
    if isinstance(t, (NkStar, NkNot)):
        return (t.child,)
    return ()


def nk_walk(t: NkTerm):
    yield t
    for c in nk_children(t):
        yield from nk_walk(c)


def nk_size(t: NkTerm) -> int:
    return sum(1 for _ in nk_walk(t))


def has_dup(t: NkTerm) -> bool:
    return any(isinstance(s, Dup) for s in nk_walk(t))


def nk_is_test(t: NkTerm) -> bool:
    if isinstance(t, (Zero, One, FieldTest)):
        return True
    if isinstance(t, (NkPlus, NkSeq)):
        return nk_is_test(t.left) and nk_is_test(t.right)
    if isinstance(t, NkNot):
        return nk_is_test(t.child)
    return False


def nk_check(t: NkTerm, spec: FieldSpec) -> None:
    for s in nk_walk(t):
        if isinstance(s, (FieldTest, FieldAssign)):
            if s.field not in spec.names:
                raise IllFormedError(f"unknown field {s.field!r}")
            spec.check_value(s.field, s.value)
        if isinstance(s, NkNot) and not nk_is_test(s.child):
            raise IllFormedError("negation applied to a non-test")


# -- semantics ---------------------------------------------------------------


@dataclass(frozen=True)
class History:
    """A nonempty packet history, most recent packet first."""

    packets: tuple[Packet, ...]

    def __post_init__(self):
        object.__setattr__(self, "packets", tuple(self.packets))
        if not self.packets:
            raise ValueError("a packet history is nonempty")
        if len({p.width for p in self.packets}) != 1:
            raise WidthError("all packets in a history share one width")

    @classmethod
    def single(cls, packet: Packet) -> "History":
        return cls((packet,))

    @property
    def head(self) -> Packet:
        return self.packets[0]

    def push(self, packet: Packet) -> "History":
        return History((packet,) + self.packets)

    def replace_head(self, packet: Packet) -> "History":
        return History((packet,) + self.packets[1:])

    def __len__(self) -> int:
        return len(self.packets)

    def __str__(self) -> str:
        return "::".join(str(p) for p in self.packets) + "::<>"


def _eval(t: NkTerm, h: History, spec: FieldSpec) -> frozenset[History]:
    if isinstance(t, Zero):
        return frozenset()
    if isinstance(t, One):
        return frozenset({h})
    if isinstance(t, Dup):
        if len(h) + 1 > max_history():
            raise CapacityError(f"packet history longer than {max_history()}")
        return frozenset({h.push(h.head)})
    if isinstance(t, FieldTest):
        return frozenset({h}) if spec.get(h.head, t.field) == t.value else frozenset()
    if isinstance(t, FieldAssign):
        return frozenset({h.replace_head(spec.set(h.head, t.field, t.value))})
    if isinstance(t, NkPlus):
        return _eval(t.left, h, spec) | _eval(t.right, h, spec)
    if isinstance(t, NkSeq):
        out: set[History] = set()
        for h2 in _eval(t.left, h, spec):
            out |= _eval(t.right, h2, spec)
        return frozenset(out)
    if isinstance(t, NkStar):
        seen = {h}
        frontier = [h]
        while frontier:
            nxt = []
            for h2 in frontier:
                for h3 in _eval(t.child, h2, spec):
                    if h3 not in seen:
                        seen.add(h3)
                        nxt.append(h3)
            frontier = nxt
        return frozenset(seen)
    if isinstance(t, NkNot):
        return frozenset({h}) - _eval(t.child, h, spec)
    raise TypeError(f"not a NetKAT term: {t!r}")


def nk_eval(t: NkTerm, h: History, spec: FieldSpec) -> frozenset[History]:
    """The set of histories ``t`` produces from history ``h``.

    Star iterates Kleisli composition to a fixpoint. Histories only grow
    through ``dup``; exceeding the history cap raises CapacityError instead
    of looping forever.
    """
    if h.head.width != spec.size:
        raise WidthError(f"history packets have width {h.head.width}, fields need {spec.size}")
    nk_check(t, spec)
    return _eval(t, h, spec)


def heads(histories: Iterable[History]) -> frozenset[Packet]:
    return frozenset(h.head for h in histories)


# -- translations ------------------------------------------------------------


def _expr_to_netkat(e: mx.MatchExpr, offset: int) -> NkTerm:
    # ``offset`` is the number of bits to the left of ``e`` in the whole packet
    if isinstance(e, mx.Lit):
        if e.symbol == "x":
            return ONE
        return FieldTest(f"f{offset + 1}", int(e.symbol))
    if isinstance(e, mx.Empty):
        return ONE
    if isinstance(e, mx.Bot):
        return ZERO
    if isinstance(e, mx.Concat):
        return NkSeq(_expr_to_netkat(e.left, offset),
                     _expr_to_netkat(e.right, offset + e.left.width))
    if isinstance(e, mx.Union):
        return NkPlus(_expr_to_netkat(e.left, offset), _expr_to_netkat(e.right, offset))
    if isinstance(e, mx.Inter):
        return NkSeq(_expr_to_netkat(e.left, offset), _expr_to_netkat(e.right, offset))
    if isinstance(e, mx.Compl):
        return NkNot(_expr_to_netkat(e.child, offset))
    raise TypeError(f"not a match expression: {e!r}")


def to_netkat(t: mk.Term, n: int | None = None) -> NkTerm:
    """Translate a MatchKAT term into NetKAT over single-bit fields ``f1..fn``.

    The translation is structural and never introduces ``dup``.
    """
    n = mk._resolve_size(n, t)
    mk.check_well_formed(t, n)
    return _to_netkat(t)


def _to_netkat(t: mk.Term) -> NkTerm:
    if isinstance(t, mk.Drop):
        return ZERO
    if isinstance(t, mk.Skip):
        return ONE
    if isinstance(t, mk.Test):
        return _expr_to_netkat(t.expr, 0)
    if isinstance(t, mk.Assign):
        return FieldAssign(f"f{t.index}", t.value)
    if isinstance(t, mk.Plus):
        return NkPlus(_to_netkat(t.left), _to_netkat(t.right))
    if isinstance(t, mk.Seq):
        return NkSeq(_to_netkat(t.left), _to_netkat(t.right))
    if isinstance(t, mk.Star):
        return NkStar(_to_netkat(t.child))
    if isinstance(t, mk.Not):
        return NkNot(_to_netkat(t.child))
    raise TypeError(f"not a term: {t!r}")


def from_netkat(t: NkTerm, spec: FieldSpec) -> mk.Term:
    """Translate NetKAT into MatchKAT at packet size ``spec.size``.

    ``dup`` is forgotten (becomes ⊤). A field test becomes one match
    expression intersecting the point tests of the field's bits; a field
    assignment becomes the sequence of its bit assignments.
    """
    nk_check(t, spec)
    return _from_netkat(t, spec)


def _from_netkat(t: NkTerm, spec: FieldSpec) -> mk.Term:
    n = spec.size
    if isinstance(t, Zero):
        return mk.DROP
    if isinstance(t, (One, Dup)):
        return mk.SKIP
    if isinstance(t, FieldTest):
        w = spec.width_of(t.field)
        bits = [mx.point_match(spec.pos(t.field, j), bin_bit(t.value, j, w), n)
                for j in range(1, w + 1)]
        return mk.Test(reduce(mx.Inter, bits))
    if isinstance(t, FieldAssign):
        w = spec.width_of(t.field)
        return mk.seq_all(mk.Assign(spec.pos(t.field, j), bin_bit(t.value, j, w))
                          for j in range(1, w + 1))
    if isinstance(t, NkPlus):
        return mk.Plus(_from_netkat(t.left, spec), _from_netkat(t.right, spec))
    if isinstance(t, NkSeq):
        return mk.Seq(_from_netkat(t.left, spec), _from_netkat(t.right, spec))
    if isinstance(t, NkStar):
        return mk.Star(_from_netkat(t.child, spec))
    if isinstance(t, NkNot):
        return mk.Not(_from_netkat(t.child, spec))
    raise TypeError(f"not a NetKAT term: {t!r}")


# -- correspondence checks ---------------------------------------------------


def check_thm1(t: mk.Term, packets: PacketSet) -> bool:
    """MatchKAT semantics on ``packets`` equals the union of NetKAT head sets
    from the singleton histories of each packet."""
    n = packets.width
    spec = FieldSpec.bits(n)
    lhs = mk.evaluate(t, packets)
    image = to_netkat(t, n)
    rhs: set[Packet] = set()
    for p in packets:
        rhs |= heads(nk_eval(image, History.single(p), spec))
    return lhs == PacketSet.of(n, rhs)


def check_thm2(t: NkTerm, h: History, spec: FieldSpec) -> bool:
    """Heads of the NetKAT outputs equal the MatchKAT image applied to the head."""
    lhs = heads(nk_eval(t, h, spec))
    rhs = mk.apply(from_netkat(t, spec), h.head)
    return PacketSet.of(spec.size, lhs) == rhs


def check_lemma1(t: mk.Term, n: int | None = None) -> bool:
    """A term and its round trip through NetKAT agree on every singleton."""
    n = mk._resolve_size(n, t)
    back = from_netkat(to_netkat(t, n), FieldSpec.bits(n))
    return bool(mk.term_equiv(t, back, n))


def nk_equiv_on_singletons(a: NkTerm, b: NkTerm, spec: FieldSpec) -> bool:
    """Compare two NetKAT terms on every single-packet history.

    For dup-free terms this decides equality of their denotations.
    """
    for v in range(1 << spec.size):
        h = History.single(Packet(spec.size, v))
        if nk_eval(a, h, spec) != nk_eval(b, h, spec):
            return False
    return True


def check_lemma2(t: mk.Term, u: mk.Term, n: int | None = None) -> bool:
    """MatchKAT equivalence agrees with equivalence of the NetKAT images."""
    n = mk._resolve_size(n, t, u)
    spec = FieldSpec.bits(n)
    matchkat_side = bool(mk.term_equiv(t, u, n))
    netkat_side = nk_equiv_on_singletons(to_netkat(t, n), to_netkat(u, n), spec)
    return matchkat_side == netkat_side
