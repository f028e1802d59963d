"""Linear-bounded automata encoded as MatchKAT terms.

A configuration (state, head position, tape) is packed into one packet:
``tape_length`` tape bits, then the state index, then the head position
minus one, both most-significant-bit first. The end markers never change,
so tape cells 1 and ``n`` are reserved: their bits stay 0 and guards at those
positions dispatch on the marker directly.

``encode_setup`` writes the initial configuration, ``encode_step`` performs one
nondeterministic transition and ``encode_accept`` keeps accepting
configurations. The word is accepted iff ``setup * step.star() * accept`` is
not equivalent to ⊥.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from math import ceil, log2

from .encoders import assign_value
from .errors import WidthError
from .match import lit
from .packets import Packet, PacketSet
from .terms import DROP, Term, Test, apply, evaluate, plus_all, seq_all, term_equiv

L_MARK = "L_MARK"
R_MARK = "R_MARK"
SYMBOLS = ("0", "1", L_MARK, R_MARK)


class Verdict(enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Transition:
    from_state: str
    read: str
    to_state: str
    write: str
    move: str


@dataclass(frozen=True)
class Lba:
    states: tuple[str, ...]
    start: str
    accept: str
    reject: str
    tape_length: int
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if len(set(self.states)) != len(self.states):
            raise ValueError("state names must be unique")
        if len(self.states) < 3:
            raise ValueError("an LBA needs at least start, accept and reject states")
        for name in (self.start, self.accept, self.reject):
            if name not in self.states:
                raise ValueError(f"unknown state {name!r}")
        if self.accept == self.reject:
            raise ValueError("accept and reject states must differ")
        if self.tape_length < 2:
            raise ValueError("tape holds at least the two end markers")
        for t in self.transitions:
            self._check_transition(t)

    def _check_transition(self, t: Transition) -> None:
        if t.from_state not in self.states or t.to_state not in self.states:
            raise ValueError(f"transition {t} uses an unknown state")
        if t.from_state in (self.accept, self.reject):
            raise ValueError(f"transition {t} leaves a halting state")
        if t.read not in SYMBOLS or t.write not in SYMBOLS:
            raise ValueError(f"transition {t} uses an unknown symbol")
        if t.move not in ("L", "R"):
            raise ValueError(f"transition {t} has move {t.move!r}, expected L or R")
        if t.read in (L_MARK, R_MARK):
            if t.write != t.read:
                raise ValueError(f"transition {t} rewrites an end marker")
            if (t.read == L_MARK) != (t.move == "R"):
                raise ValueError(f"transition {t} moves off the end of the tape")
        elif t.write not in ("0", "1"):
            raise ValueError(f"transition {t} writes a marker into the tape")

    @property
    def word_length(self) -> int:
        return self.tape_length - 2

    def index(self, state: str) -> int:
        return self.states.index(state)


@dataclass(frozen=True)
class Layout:
    tape_length: int
    state_bits: int
    head_bits: int

    @property
    def width(self) -> int:
        return self.tape_length + self.state_bits + self.head_bits

    @property
    def tape(self) -> tuple[int, int]:
        return (1, self.tape_length)

    @property
    def state(self) -> tuple[int, int]:
        return (self.tape_length + 1, self.tape_length + self.state_bits)

    @property
    def head(self) -> tuple[int, int]:
        start = self.tape_length + self.state_bits + 1
        return (start, start + self.head_bits - 1)


def _bits_for(count: int) -> int:
    return max(1, ceil(log2(count)))


def packet_layout(m: Lba) -> Layout:
    """Bit ranges for tape, state and head; total ``n + ⌈log|Q|⌉ + ⌈log n⌉``."""
    return Layout(m.tape_length, _bits_for(len(m.states)), _bits_for(m.tape_length))


# -- configurations ----------------------------------------------------------


@dataclass(frozen=True)
class Config:
    state: str
    head: int
    tape: tuple[str, ...]


def initial_config(m: Lba, word: str) -> Config:
    if len(word) != m.word_length:
        raise WidthError(f"word of length {len(word)} does not fit tape of length {m.tape_length}")
    if any(c not in "01" for c in word):
        raise ValueError(f"word must be binary, got {word!r}")
    return Config(m.start, 1, (L_MARK, *word, R_MARK))


def successors(m: Lba, c: Config) -> set[Config]:
    out = set()
    for t in m.transitions:
        if t.from_state == c.state and t.read == c.tape[c.head - 1]:
            tape = list(c.tape)
            tape[c.head - 1] = t.write
            head = c.head + (1 if t.move == "R" else -1)
            out.add(Config(t.to_state, head, tuple(tape)))
    return out


def reachable_configs(m: Lba, word: str) -> set[Config]:
    """Breadth-first search over the configuration graph."""
    start = initial_config(m, word)
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in successors(m, queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def simulate_lba(m: Lba, word: str) -> Verdict:
    """Accept iff some reachable configuration is in the accept state."""
    if any(c.state == m.accept for c in reachable_configs(m, word)):
        return Verdict.ACCEPT
    return Verdict.REJECT


def encode_config(m: Lba, c: Config) -> Packet:
    layout = packet_layout(m)
    value = 0
    for sym in c.tape:
        value = (value << 1) | (1 if sym == "1" else 0)
    value = (value << layout.state_bits) | m.index(c.state)
    value = (value << layout.head_bits) | (c.head - 1)
    return Packet(layout.width, value)


# -- the encoding ------------------------------------------------------------


def _code(bits: int, value: int) -> str:
    return format(value, f"0{bits}b")


def encode_setup(m: Lba, word: str) -> Term:
    """Assign every bit of the packet to the initial configuration."""
    layout = packet_layout(m)
    initial_config(m, word)
    w = layout.width
    tape_value = int("0" + word + "0", 2)
    return seq_all([
        assign_value(layout.tape, tape_value, w),
        assign_value(layout.state, m.index(m.start), w),
        assign_value(layout.head, 0, w),
    ])


def _positions(m: Lba, read: str) -> range:
    n = m.tape_length
    if read == L_MARK:
        return range(1, 2)
    if read == R_MARK:
        return range(n, n + 1)
    return range(2, n)


def encode_step(m: Lba) -> Term:
    """One transition: a sum of branches guarded on state, head and tape cell."""
    layout = packet_layout(m)
    n, w = layout.tape_length, layout.width
    s_bits, h_bits = layout.state_bits, layout.head_bits
    branches = []
    for t in m.transitions:
        for p in _positions(m, t.read):
            cell = ["x"] * n
            if t.read in ("0", "1"):
                cell[p - 1] = t.read
            guard = Test(lit("".join(cell) + _code(s_bits, m.index(t.from_state))
                             + _code(h_bits, p - 1)))
            actions = []
            if t.read in ("0", "1"):
                actions.append(assign_value((p, p), int(t.write), w))
            actions.append(assign_value(layout.state, m.index(t.to_state), w))
            q = p + (1 if t.move == "R" else -1)
            actions.append(assign_value(layout.head, q - 1, w))
            branches.append(seq_all([guard, *actions]))
    return plus_all(branches)


def encode_accept(m: Lba) -> Term:
    """Test that the state bits hold the accept state."""
    layout = packet_layout(m)
    return Test(lit("x" * layout.tape_length + _code(layout.state_bits, m.index(m.accept))
                    + "x" * layout.head_bits))


def acceptance_term(m: Lba, word: str) -> Term:
    return encode_setup(m, word) * encode_step(m).star() * encode_accept(m)


def reachable_set(m: Lba, word: str, packet: Packet | None = None) -> PacketSet:
    """``setup * step.star()`` applied to one (arbitrary) packet."""
    w = packet_layout(m).width
    term = encode_setup(m, word) * encode_step(m).star()
    return apply(term, packet if packet is not None else Packet(w, 0))


def decide_word(m: Lba, word: str) -> Verdict:
    """Decide acceptance by checking the acceptance term against ⊥.

    The exhaustive equivalence check and a single-packet evaluation are both
    run; the setup overwrites every bit, so they must agree.
    """
    term = acceptance_term(m, word)
    w = packet_layout(m).width
    by_equiv = not term_equiv(term, DROP, w)
    by_eval = bool(evaluate(term, PacketSet(w, 1)))
    if by_equiv != by_eval:
        raise RuntimeError("equivalence check and direct evaluation disagree")
    return Verdict.ACCEPT if by_equiv else Verdict.REJECT


def parity_machine(word_length: int) -> Lba:
    """Accepts binary words with an even number of 1s."""
    moves = [
        Transition("even", L_MARK, "even", L_MARK, "R"),
        Transition("even", "0", "even", "0", "R"),
        Transition("even", "1", "odd", "1", "R"),
        Transition("odd", "0", "odd", "0", "R"),
        Transition("odd", "1", "even", "1", "R"),
        Transition("even", R_MARK, "accept", R_MARK, "L"),
        Transition("odd", R_MARK, "reject", R_MARK, "L"),
    ]
    return Lba(("even", "odd", "accept", "reject"), "even", "accept", "reject",
               word_length + 2, tuple(moves))
