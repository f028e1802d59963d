"""Packets (fixed-width bit strings) and exact sets of packets.

A packet of width ``n`` is stored as an integer ``value`` in ``[0, 2**n)``.
Bit indices are 1-based and read left to right, so bit 1 is the most
significant bit of ``value``.

A :class:`PacketSet` is stored as a characteristic bitmask over the universe
``2**n``: packet ``v`` is a member iff bit ``v`` of ``mask`` is set. Every set
operation is then a single big-integer operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .config import check_width
from .errors import WidthError


@dataclass(frozen=True, order=True)
class Packet:
    width: int
    value: int

    def __post_init__(self):
        if self.width < 0:
            raise WidthError(f"negative width {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise WidthError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def from_string(cls, text: str) -> "Packet":
        text = text.strip()
        if any(c not in "01" for c in text):
            raise ValueError(f"not a binary string: {text!r}")
        return cls(len(text), int(text, 2) if text else 0)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Packet":
        bits = list(bits)
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit must be 0 or 1, got {b!r}")
            value = (value << 1) | b
        return cls(len(bits), value)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.width - i)) & 1 for i in range(1, self.width + 1))

    def bit(self, i: int) -> int:
        """The ``i``-th bit, 1-based from the left."""
        if not 1 <= i <= self.width:
            raise WidthError(f"bit index {i} outside 1..{self.width}")
        return (self.value >> (self.width - i)) & 1

    def set_bit(self, i: int, k: int) -> "Packet":
        if not 1 <= i <= self.width:
            raise WidthError(f"bit index {i} outside 1..{self.width}")
        p = self.width - i
        return Packet(self.width, (self.value & ~(1 << p)) | (k << p))

    def concat(self, other: "Packet") -> "Packet":
        return Packet(self.width + other.width, (self.value << other.width) | other.value)

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b") if self.width else ""


# -- bitmask helpers ---------------------------------------------------------


def universe_mask(width: int) -> int:
    return (1 << (1 << width)) - 1


def _tile(block: int, period: int, total: int) -> int:
    # repeat a ``period``-bit pattern until it covers ``total`` bits (both powers of 2)
    while period < total:
        block |= block << period
        period <<= 1
    return block


@lru_cache(maxsize=None)
def bit_mask(width: int, i: int) -> int:
    """Mask of all packets of ``width`` whose ``i``-th bit is 1."""
    half = 1 << (width - i)
    return _tile(((1 << half) - 1) << half, half << 1, 1 << width)


@lru_cache(maxsize=None)
def _spread_masks(width: int) -> tuple[tuple[int, int], ...]:
    # interleave a 2**width-bit integer with zeros, halving shift each round
    total = 2 << width
    out = []
    s = 1 << width >> 1
    while s:
        out.append((s, _tile((1 << s) - 1, s << 1, total)))
        s >>= 1
    return tuple(out)


def spread(mask: int, width: int, by: int) -> int:
    """Move bit ``a`` of ``mask`` to bit ``a << by``.

    ``mask`` ranges over packets of ``width`` bits. Used to build the
    concatenation of two packet sets without enumerating members.
    """
    for w in range(width, width + by):
        for s, m in _spread_masks(w):
            mask = (mask | (mask << s)) & m
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class PacketSet:
    """An immutable finite set of packets sharing one width."""

    __slots__ = ("width", "mask")

    def __init__(self, width: int, mask: int = 0):
        check_width(width)
        if mask < 0 or mask >> (1 << width):
            raise WidthError(f"mask has members outside 2^{width}")
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("PacketSet is immutable")

    @classmethod
    def empty(cls, width: int) -> "PacketSet":
        return cls(width, 0)

    @classmethod
    def full(cls, width: int) -> "PacketSet":
        check_width(width)
        return cls(width, universe_mask(width))

    @classmethod
    def of(cls, width: int, packets: Iterable[Packet | str | int]) -> "PacketSet":
        mask = 0
        for p in packets:
            if isinstance(p, str):
                p = Packet.from_string(p)
            if isinstance(p, Packet):
                if p.width != width:
                    raise WidthError(f"packet {p} has width {p.width}, expected {width}")
                p = p.value
            if not 0 <= p < (1 << width):
                raise WidthError(f"value {p} does not fit in {width} bits")
            mask |= 1 << p
        return cls(width, mask)

    def _coerce(self, other: "PacketSet") -> int:
        if not isinstance(other, PacketSet):
            return NotImplemented
        if other.width != self.width:
            raise WidthError(f"width mismatch: {self.width} vs {other.width}")
        return other.mask

    def __or__(self, other):
        return PacketSet(self.width, self.mask | self._coerce(other))

    def __and__(self, other):
        return PacketSet(self.width, self.mask & self._coerce(other))

    def __sub__(self, other):
        return PacketSet(self.width, self.mask & ~self._coerce(other))

    def __xor__(self, other):
        return PacketSet(self.width, self.mask ^ self._coerce(other))

    def complement(self) -> "PacketSet":
        return PacketSet(self.width, universe_mask(self.width) ^ self.mask)

    def issubset(self, other: "PacketSet") -> bool:
        return self.mask & ~self._coerce(other) == 0

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, PacketSet):
            return NotImplemented
        return self.width == other.width and self.mask == other.mask

    def __hash__(self):
        return hash((self.width, self.mask))

    def __contains__(self, item) -> bool:
        if isinstance(item, str):
            item = Packet.from_string(item)
        if item.width != self.width:
            return False
        return bool((self.mask >> item.value) & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def values(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __iter__(self) -> Iterator[Packet]:
        for v in iter_bits(self.mask):
            yield Packet(self.width, v)

    def min(self) -> Packet | None:
        if not self.mask:
            return None
        return Packet(self.width, (self.mask & -self.mask).bit_length() - 1)

    def __repr__(self) -> str:
        return f"PacketSet({self.width}, {{{', '.join(str(p) for p in self)}}})"

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self) + "}"
