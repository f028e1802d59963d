"""Compile packet-field idioms and match-action tables into MatchKAT terms."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, log2
from typing import Iterable, Sequence

from .errors import WidthError
from .match import Cube, lit
from .packets import Packet
from .terms import DROP, SKIP, Assign, Not, Star, Term, Test, bit_test, plus_all, seq_all

BitRange = tuple[int, int]


def _check_range(r: BitRange, n: int) -> None:
    i, j = r
    if not (1 <= i <= n and 1 <= j <= n and i <= j):
        raise WidthError(f"bit range {i}..{j} invalid for packet size {n}")


def assign_value(r: BitRange, value: int, n: int) -> Term:
    """``[i..j] <- value``, most significant bit at ``i``."""
    _check_range(r, n)
    i, j = r
    w = j - i + 1
    if not 0 <= value < (1 << w):
        raise ValueError(f"value {value} does not fit in bits {i}..{j}")
    return seq_all(Assign(i + b, (value >> (w - 1 - b)) & 1) for b in range(w))


def test_value(r: BitRange, value: int, n: int) -> Term:
    """``[i..j] = value`` as a single cube test."""
    _check_range(r, n)
    i, j = r
    w = j - i + 1
    if not 0 <= value < (1 << w):
        raise ValueError(f"value {value} does not fit in bits {i}..{j}")
    bits = format(value, f"0{w}b")
    return Test(lit("x" * (i - 1) + bits + "x" * (n - j)))


def _range_pairs(src: BitRange, dst: BitRange, n: int) -> list[tuple[int, int]]:
    _check_range(src, n)
    _check_range(dst, n)
    if src[1] - src[0] != dst[1] - dst[0]:
        raise WidthError(f"ranges {src} and {dst} differ in length")
    return [(src[0] + b, dst[0] + b) for b in range(src[1] - src[0] + 1)]


def encode_range_assign(src: BitRange, dst: BitRange, n: int) -> Term:
    """Copy bits ``src`` into ``dst`` one guarded bit at a time."""
    pairs = _range_pairs(src, dst, n)
    if max(src[0], dst[0]) <= min(src[1], dst[1]):
        raise ValueError(f"source {src} and destination {dst} overlap")
    return seq_all(
        bit_test(s, 0, n) * Assign(d, 0) + bit_test(s, 1, n) * Assign(d, 1)
        for s, d in pairs
    )


def encode_range_test(src: BitRange, dst: BitRange, n: int) -> Term:
    """Test that bits ``src`` equal bits ``dst``."""
    return seq_all(
        bit_test(s, 0, n) * bit_test(d, 0, n) + bit_test(s, 1, n) * bit_test(d, 1, n)
        for s, d in _range_pairs(src, dst, n)
    )


def encode_increment(i: int, j: int, n: int) -> Term:
    """``[i..j]++``: add one modulo ``2**(j-i+1)``; an empty range (j < i) is ⊤."""
    if j < i:
        return SKIP
    _check_range((i, j), n)
    term: Term = SKIP
    # innermost branch handles bit i; the outermost one tests bit j
    for b in range(i, j + 1):
        term = bit_test(b, 0, n) * Assign(b, 1) + bit_test(b, 1, n) * Assign(b, 0) * term
    return term


# -- tables ------------------------------------------------------------------


@dataclass(frozen=True)
class Rule:
    pattern: Cube
    actions: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple((int(b), int(v)) for b, v in self.actions))

    def action_term(self) -> Term:
        return seq_all(Assign(b, v) for b, v in self.actions)


@dataclass(frozen=True)
class Table:
    """Prioritized match-action rules; the first rule has the highest priority."""

    width: int
    rules: tuple[Rule, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.width < 1:
            raise WidthError("table width must be positive")
        for r in self.rules:
            if r.pattern.width != self.width:
                raise WidthError(f"pattern {r.pattern} does not have width {self.width}")
            for b, v in r.actions:
                if not 1 <= b <= self.width:
                    raise WidthError(f"action on bit {b} outside 1..{self.width}")
                if v not in (0, 1):
                    raise ValueError(f"action value must be 0 or 1, got {v}")

    @classmethod
    def from_rules(cls, width: int, rules: Iterable[tuple[str, Sequence[tuple[int, int]]]]):
        return cls(width, tuple(Rule(Cube(p), tuple(a)) for p, a in rules))


def _guard_and_act(rule: Rule) -> Term:
    guard = Test(rule.pattern.to_expr())
    return guard * rule.action_term() if rule.actions else guard


def reference_table_semantics(tbl: Table, packet: Packet) -> Packet | None:
    """Fire the first rule whose pattern contains ``packet``; None if dropped."""
    if packet.width != tbl.width:
        raise WidthError(f"packet width {packet.width} vs table width {tbl.width}")
    for rule in tbl.rules:
        if rule.pattern.contains(packet):
            for b, v in rule.actions:
                packet = packet.set_bit(b, v)
            return packet
    return None


def compile_priority(tbl: Table) -> Term:
    """Each rule guarded by the negations of all higher-priority patterns.

    ``b1 p1 + ~b1 b2 p2 + ... + ~b1 ... ~b(k-1) bk pk``; the empty table is ⊥.
    """
    branches = []
    for r, rule in enumerate(tbl.rules):
        negs = [Not(Test(tbl.rules[q].pattern.to_expr())) for q in range(r)]
        branches.append(seq_all(negs + [_guard_and_act(rule)]))
    return plus_all(branches)


@dataclass(frozen=True)
class CounterLayout:
    """Where ``compile_counter`` keeps its rule counter."""

    data_width: int
    counter_bits: int

    @property
    def width(self) -> int:
        return self.data_width + self.counter_bits

    @property
    def counter_range(self) -> BitRange:
        return (self.data_width + 1, self.width)

    def project(self, packet: Packet) -> Packet:
        return Packet(self.data_width, packet.value >> self.counter_bits)

    def extend(self, packet: Packet, counter: int = 0) -> Packet:
        return Packet(self.width, (packet.value << self.counter_bits) | counter)


def compile_counter(tbl: Table, variant: str = "fixed",
                    max_counter_bits: int = 8) -> tuple[Term, CounterLayout]:
    """Encode a table by iterating a rule counter under Kleene star.

    The counter lives in metadata bits appended after the data bits and is
    first set to 1. While it holds ``r``, rule ``r`` is tried: on a match its
    actions run and the counter jumps to ``k+1``; otherwise it advances.

    ``variant="paper"`` is the literal construction: the failure branch is
    guarded by the negation of the *first* pattern and nothing filters out
    packets that exhausted every rule. ``variant="fixed"`` (default) guards
    failure with the current rule's negation, sends a failing last rule to a
    sink value ``k+2`` and ends with the test ``counter = k+1``. That test
    also discards the intermediate states the star exposes (including the
    untouched input), so the encoding agrees with :func:`compile_priority`.
    """
    if variant not in ("fixed", "paper"):
        raise ValueError(f"unknown counter variant {variant!r}")
    k = len(tbl.rules)
    n = tbl.width
    values = k + 3 if variant == "fixed" else k + 2
    m = max(1, ceil(log2(values)))
    if m > max_counter_bits:
        raise ValueError(f"{k} rules need {m} counter bits, budget is {max_counter_bits}")
    layout = CounterLayout(n, m)
    total = layout.width
    c = layout.counter_range

    branches = []
    for r, rule in enumerate(tbl.rules, start=1):
        guard = Test(_widen(rule.pattern, total).to_expr())
        success = seq_all([guard, rule.action_term(), assign_value(c, k + 1, total)])
        if variant == "paper":
            first = Test(_widen(tbl.rules[0].pattern, total).to_expr())
            failure = Not(first) * encode_increment(c[0], c[1], total)
        elif r < k:
            failure = Not(guard) * encode_increment(c[0], c[1], total)
        else:
            failure = Not(guard) * assign_value(c, k + 2, total)
        branches.append(test_value(c, r, total) * (success + failure))
    loop = Star(plus_all(branches))
    term = assign_value(c, 1, total) * loop
    if variant == "fixed":
        term = term * (test_value(c, k + 1, total) if k else DROP)
    return term, layout


def _widen(cube: Cube, width: int) -> Cube:
    return Cube(cube.trits + "x" * (width - cube.width))


def compose_pipeline(stages: Sequence[Term], mode: str = "sequence") -> Term:
    """Combine stages by sequencing, parallel choice, or looping a single stage."""
    if mode == "sequence":
        return seq_all(stages)
    if mode == "parallel":
        return plus_all(stages)
    if mode == "loop":
        if len(stages) != 1:
            raise ValueError("loop mode takes exactly one stage")
        return Star(stages[0])
    raise ValueError(f"unknown pipeline mode {mode!r}")

