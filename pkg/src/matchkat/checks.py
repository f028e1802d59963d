"""Executable property suites.

Each suite draws seeded random cases, checks one family of laws exactly and
returns a :class:`Report`. The CLI ``check`` command and the acceptance tests
both run these.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from . import match as mx
from . import netkat as nk
from . import syntax
from . import terms as mk
from .encoders import compile_counter, compile_priority, encode_increment, reference_table_semantics
from .generators import (
    equivalent_variant, random_field_spec, random_history, random_lba, random_match_expr,
    random_netkat, random_packets, random_table, random_term,
)
from .lba import (
    decide_word, encode_config, packet_layout, parity_machine, reachable_configs,
    reachable_set, simulate_lba,
)
from .packets import Packet, PacketSet


@dataclass
class Report:
    suite: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    notes: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, passed: bool, describe: Callable[[], str]) -> None:
        self.cases += 1
        if not passed:
            self.failures.append(describe())

    def __str__(self) -> str:
        status = "ok" if self.ok else f"FAILED ({len(self.failures)})"
        extra = "".join(f", {k}={v}" for k, v in self.notes.items())
        return f"{self.suite}: {self.cases} cases, {status}{extra}"


# -- match-expression axioms -------------------------------------------------

T = mx.top


def _parts(rng: random.Random, width: int, count: int) -> list[int]:
    cuts = sorted(rng.randint(0, width) for _ in range(count - 1))
    bounds = [0, *cuts, width]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def _in_context(rng, width, core_l, core_r):
    # place a width-1 ground law inside a random concatenation context
    a, b = _parts(rng, width - 1, 2)
    left, right = random_match_expr(rng, a, 4), random_match_expr(rng, b, 4)
    return left @ core_l @ right, left @ core_r @ right


def _ba(fn, arity):
    def inst(rng, width):
        es = [random_match_expr(rng, width, rng.randint(1, 6)) for _ in range(arity)]
        return fn(width, *es)
    return inst


def _cat(fn, arity):
    def inst(rng, width):
        ws = _parts(rng, width, arity)
        es = [random_match_expr(rng, w, rng.randint(1, 6)) for w in ws]
        return fn(*es)
    return inst


def _dist(fn, left):
    # two of the three operands share a width: the pair on the distributed side
    def inst(rng, width):
        w1, w2 = _parts(rng, width, 2)
        wa, wb = (w1, w2) if left else (w2, w1)
        single = random_match_expr(rng, wa, rng.randint(1, 6))
        pair = [random_match_expr(rng, wb, rng.randint(1, 6)) for _ in range(2)]
        return fn(single, *pair) if left else fn(*pair, single)
    return inst


MATCH_AXIOMS: dict[str, Callable] = {
    # Boolean algebra at every width
    "union-comm": _ba(lambda w, a, b: (a + b, b + a), 2),
    "inter-comm": _ba(lambda w, a, b: (a & b, b & a), 2),
    "union-assoc": _ba(lambda w, a, b, c: ((a + b) + c, a + (b + c)), 3),
    "inter-assoc": _ba(lambda w, a, b, c: ((a & b) & c, a & (b & c)), 3),
    "union-identity": _ba(lambda w, a: (a + mx.Bot(w), a), 1),
    "inter-identity": _ba(lambda w, a: (a & T(w), a), 1),
    "union-over-inter": _ba(lambda w, a, b, c: (a + (b & c), (a + b) & (a + c)), 3),
    "inter-over-union": _ba(lambda w, a, b, c: (a & (b + c), (a & b) + (a & c)), 3),
    "union-complement": _ba(lambda w, a: (a + ~a, T(w)), 1),
    "inter-complement": _ba(lambda w, a: (a & ~a, mx.Bot(w)), 1),
    "union-idempotent": _ba(lambda w, a: (a + a, a), 1),
    "inter-idempotent": _ba(lambda w, a: (a & a, a), 1),
    "union-absorb": _ba(lambda w, a, b: (a + (a & b), a), 2),
    "inter-absorb": _ba(lambda w, a, b: (a & (a + b), a), 2),
    "union-annihilator": _ba(lambda w, a: (a + T(w), T(w)), 1),
    "inter-annihilator": _ba(lambda w, a: (a & mx.Bot(w), mx.Bot(w)), 1),
    "de-morgan-union": _ba(lambda w, a, b: (~(a + b), ~a & ~b), 2),
    "de-morgan-inter": _ba(lambda w, a, b: (~(a & b), ~a + ~b), 2),
    "double-complement": _ba(lambda w, a: (~~a, a), 1),
    # literals and concatenation
    "complement-0": lambda rng, w: _in_context(rng, w, ~mx.ZERO, mx.ONE),
    "union-1-0": lambda rng, w: _in_context(rng, w, mx.ONE + mx.ZERO, mx.X),
    "union-0-1": lambda rng, w: _in_context(rng, w, mx.ZERO + mx.ONE, mx.X),
    "inter-1-0": lambda rng, w: _in_context(rng, w, mx.ONE & mx.ZERO, mx.Bot(1)),
    "inter-0-1": lambda rng, w: _in_context(rng, w, mx.ZERO & mx.ONE, mx.Bot(1)),
    "empty-left": _cat(lambda a: (mx.EMPTY @ a, a), 1),
    "empty-right": _cat(lambda a: (a @ mx.EMPTY, a), 1),
    "bot-left": _cat(lambda a, b: (mx.Bot(a.width) @ b, mx.Bot(a.width + b.width)), 2),
    "bot-right": _cat(lambda a, b: (a @ mx.Bot(b.width), mx.Bot(a.width + b.width)), 2),
    "concat-complement": _cat(lambda a, b: (~(a @ b), (~a @ T(b.width)) + (T(a.width) @ ~b)), 2),
    "concat-assoc": _cat(lambda a, b, c: ((a @ b) @ c, a @ (b @ c)), 3),
    "concat-union-left": _dist(lambda a, b, c: (a @ (b + c), (a @ b) + (a @ c)), left=True),
    "concat-inter-left": _dist(lambda a, b, c: (a @ (b & c), (a @ b) & (a @ c)), left=True),
    "concat-union-right": _dist(lambda a, b, c: ((a + b) @ c, (a @ c) + (b @ c)), left=False),
    "concat-inter-right": _dist(lambda a, b, c: ((a & b) @ c, (a @ c) & (b @ c)), left=False),
}


def axiom_suite(seed: int = 0, cases: int = 500, widths=range(1, 9)) -> Report:
    """Every axiom, ``cases`` instantiations each, widths cycling through ``widths``."""
    rng = random.Random(seed)
    report = Report("axioms")
    widths = list(widths)
    for name, inst in MATCH_AXIOMS.items():
        for c in range(cases):
            w = widths[c % len(widths)]
            lhs, rhs = inst(rng, w)
            report.record(
                lhs.width == rhs.width and mx.interp(lhs) == mx.interp(rhs),
                lambda: f"{name}: {syntax.pretty_match_expr(lhs)} vs {syntax.pretty_match_expr(rhs)}",
            )
    report.notes["axioms"] = len(MATCH_AXIOMS)
    return report


# -- packet algebra ----------------------------------------------------------


def packet_algebra_suite(sizes=range(2, 7)) -> Report:
    """The four commutation/absorption laws, exhaustively over indices and bits."""
    report = Report("packet-algebra")
    A, B = mk.Assign, mk.bit_test
    for n in sizes:
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            for k, k2 in itertools.product((0, 1), repeat=2):
                laws = []
                if i != j:
                    laws.append(("assign-commute", A(i, k) * A(j, k2), A(j, k2) * A(i, k)))
                    laws.append(("assign-test-commute", A(i, k) * B(j, k2, n), B(j, k2, n) * A(i, k)))
                elif k == k2:
                    laws.append(("assign-then-test", A(i, k) * B(i, k, n), A(i, k)))
                    laws.append(("test-then-assign", B(i, k, n) * A(i, k), B(i, k, n)))
                for name, lhs, rhs in laws:
                    report.record(bool(mk.term_equiv(lhs, rhs, n)),
                                  lambda: f"{name} n={n} i={i} j={j} k={k} k'={k2}")
    return report


def derived_suite(sizes=range(1, 7)) -> Report:
    """Idempotence, contradiction and excluded middle of point tests."""
    report = Report("derived")
    B = mk.bit_test
    for n in sizes:
        for i in range(1, n + 1):
            for k in (0, 1):
                report.record(bool(mk.term_equiv(B(i, k, n) * B(i, k, n), B(i, k, n), n)),
                              lambda: f"idempotent n={n} i={i} k={k}")
                report.record(bool(mk.term_equiv(B(i, k, n) * B(i, 1 - k, n), mk.DROP, n)),
                              lambda: f"contradiction n={n} i={i} k={k}")
            report.record(bool(mk.term_equiv(B(i, 0, n) + B(i, 1, n), mk.SKIP, n)),
                          lambda: f"excluded-middle n={n} i={i}")
    return report


# -- NetKAT correspondence ---------------------------------------------------


def thm1_suite(seed: int = 0, cases: int = 1000, max_size: int = 12, max_n: int = 6) -> Report:
    rng = random.Random(seed)
    report = Report("thm1")
    for _ in range(cases):
        n = rng.randint(1, max_n)
        t = random_term(rng, n, rng.randint(1, max_size))
        ps = random_packets(rng, n)
        report.record(nk.check_thm1(t, ps),
                      lambda: f"n={n} P={ps} t={syntax.pretty_term(t)}")
    return report


def thm2_suite(seed: int = 0, cases: int = 1000, max_size: int = 12, max_bits: int = 8,
               max_history: int = 3) -> Report:
    rng = random.Random(seed)
    report = Report("thm2")
    dups = 0
    for _ in range(cases):
        spec = random_field_spec(rng, rng.randint(1, max_bits))
        t = random_netkat(rng, spec, rng.randint(1, max_size))
        h = random_history(rng, spec, max_history)
        dups += nk.has_dup(t)
        report.record(nk.check_thm2(t, h, spec),
                      lambda: f"{syntax.pretty_field_spec(spec)} h={h} t={syntax.pretty_netkat(t)}")
    report.notes["with_dup"] = dups
    return report


def lemma1_suite(seed: int = 0, cases: int = 1000, max_size: int = 12, max_n: int = 6) -> Report:
    rng = random.Random(seed)
    report = Report("lemma1")
    for _ in range(cases):
        n = rng.randint(1, max_n)
        t = random_term(rng, n, rng.randint(1, max_size))
        report.record(nk.check_lemma1(t, n), lambda: f"n={n} t={syntax.pretty_term(t)}")
    return report


def lemma2_suite(seed: int = 0, cases: int = 300, max_size: int = 10, max_n: int = 5) -> Report:
    """Half the pairs are rewrites of each other, half are independent draws."""
    rng = random.Random(seed)
    report = Report("lemma2")
    equivalent = 0
    for c in range(cases):
        n = rng.randint(1, max_n)
        t = random_term(rng, n, rng.randint(1, max_size))
        u = equivalent_variant(rng, t, n) if c % 2 == 0 else random_term(rng, n, rng.randint(1, max_size))
        equivalent += bool(mk.term_equiv(t, u, n))
        report.record(nk.check_lemma2(t, u, n),
                      lambda: f"n={n} t={syntax.pretty_term(t)} u={syntax.pretty_term(u)}")
    report.notes["equivalent_pairs"] = equivalent
    return report


# -- encoders ----------------------------------------------------------------


def negated_guards(t: mk.Term) -> int:
    return sum(isinstance(s, mk.Not) for s in mk.walk(t))


def plus_nodes(t: mk.Term) -> int:
    return sum(isinstance(s, mk.Plus) for s in mk.walk(t))


def tables_suite(seed: int = 0, cases: int = 200, max_n: int = 5, max_rules: int = 4) -> Report:
    """Both table encodings against the reference interpreter, plus node counts."""
    rng = random.Random(seed)
    report = Report("tables")
    for _ in range(cases):
        n = rng.randint(1, max_n)
        tbl = random_table(rng, n, rng.randint(0, max_rules))
        k = len(tbl.rules)
        prio = compile_priority(tbl)
        counter, layout = compile_counter(tbl, "fixed")
        f_prio = mk.compile_term(prio, n)
        f_counter = mk.compile_term(counter, layout.width)
        for v in range(1 << n):
            p = Packet(n, v)
            ref = reference_table_semantics(tbl, p)
            expected = 0 if ref is None else 1 << ref.value
            got = f_prio(1 << v)
            report.record(got == expected,
                          lambda: f"priority {syntax.pretty_table(tbl)} on {p}: {PacketSet(n, got)}")
            for meta in range(1 << layout.counter_bits):
                out = PacketSet(layout.width, f_counter(1 << layout.extend(p, meta).value))
                projected = PacketSet.of(n, {layout.project(q) for q in out})
                report.record(projected.mask == expected,
                              lambda: f"counter {syntax.pretty_table(tbl)} on {p}/{meta}: {projected}")
        sizes_ok = plus_nodes(prio) == max(k - 1, 0) and negated_guards(prio) == k * (k - 1) // 2
        report.record(sizes_ok, lambda: f"node counts for k={k}: plus={plus_nodes(prio)} "
                                        f"neg={negated_guards(prio)}")
    return report


def increment_oracle(packet: Packet, i: int, j: int) -> Packet:
    n = packet.width
    w = j - i + 1
    shift = n - j
    field_value = (packet.value >> shift) & ((1 << w) - 1)
    cleared = packet.value & ~(((1 << w) - 1) << shift)
    return Packet(n, cleared | (((field_value + 1) % (1 << w)) << shift))


def increment_suite(sizes=range(1, 9)) -> Report:
    report = Report("increment")
    wraps = 0
    for n in sizes:
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                f = mk.compile_term(encode_increment(i, j, n), n)
                for v in range(1 << n):
                    p = Packet(n, v)
                    expected = increment_oracle(p, i, j)
                    wraps += all(p.bit(b) for b in range(i, j + 1))
                    report.record(f(1 << v) == 1 << expected.value,
                                  lambda: f"[{i}..{j}]++ on {p}")
    report.notes["wraparounds"] = wraps
    return report


# -- LBA ---------------------------------------------------------------------


def lba_suite(seed: int = 0, machines: int = 20, max_word: int = 3) -> Report:
    rng = random.Random(seed)
    report = Report("lba")
    cases = [(parity_machine(L), L) for L in range(max_word + 1)]
    cases += [(m, m.word_length) for m in (random_lba(rng) for _ in range(machines))]
    accepted = 0
    for m, L in cases:
        for word in ("".join(w) for w in itertools.product("01", repeat=L)):
            expected = simulate_lba(m, word)
            got = decide_word(m, word)
            accepted += got.value == "accept"
            report.record(got == expected, lambda: f"{word}: {got} vs {expected} for {m}")
            width = packet_layout(m).width
            bfs = PacketSet.of(width, [encode_config(m, c) for c in reachable_configs(m, word)])
            probe = Packet(width, rng.randrange(1 << width))
            report.record(reachable_set(m, word, probe) == bfs,
                          lambda: f"reachable set for {word} on {m}")
    report.notes["accepted"] = accepted
    return report


# -- DNF ---------------------------------------------------------------------


def _dnf_free(e: mx.MatchExpr) -> bool:
    if isinstance(e, (mx.Inter, mx.Compl)):
        return False
    if isinstance(e, (mx.Union, mx.Concat)):
        return _dnf_free(e.left) and _dnf_free(e.right)
    return True


def dnf_suite(seed: int = 0, cases: int = 500, max_width: int = 6) -> Report:
    rng = random.Random(seed)
    report = Report("dnf")
    differ = 0
    for _ in range(cases):
        w = rng.randint(1, max_width)
        e = random_match_expr(rng, w, rng.randint(1, 12))
        cubes = mx.to_dnf(e)
        rebuilt = mx.dnf_expr(cubes, w)
        report.record(mx.interp(rebuilt) == mx.interp(e) and _dnf_free(rebuilt)
                      and all(c.width == w for c in cubes),
                      lambda: f"dnf of {syntax.pretty_match_expr(e)}")
        f = random_match_expr(rng, w, rng.randint(1, 12))
        result = mx.expr_equiv(e, f)
        sym = mx.interp(e) ^ mx.interp(f)
        if result.equivalent:
            report.record(not sym, lambda: f"false equivalence {e} {f}")
        else:
            differ += 1
            report.record(result.witness in sym,
                          lambda: f"witness {result.witness} outside symmetric difference")
    report.notes["inequivalent_pairs"] = differ
    return report


# -- parsing -----------------------------------------------------------------


def roundtrip_suite(seed: int = 0, cases: int = 1000) -> Report:
    """``parse(pretty(v)) == v`` for every syntactic category."""
    rng = random.Random(seed)
    report = Report("roundtrip")

    def check(category, value, pretty, parse):
        text = pretty(value)
        try:
            back = parse(text)
        except Exception as exc:  # a parse failure is a round-trip failure
            back = exc
        report.record(back == value, lambda: f"{category}: {text!r} -> {back!r}")

    for _ in range(cases):
        w = rng.randint(0, 8)
        e = random_match_expr(rng, w, rng.randint(1, 14))
        check("match", e, syntax.pretty_match_expr, lambda s: syntax.parse_match_expr(s, w))

        n = rng.randint(1, 6)
        t = random_term(rng, n, rng.randint(1, 14))
        check("term", t, syntax.pretty_term, lambda s: syntax.parse_term(s, n))

        spec = random_field_spec(rng)
        nt = random_netkat(rng, spec, rng.randint(1, 14))
        check("netkat", (spec, nt), lambda v: syntax.pretty_netkat_program(*v), syntax.parse_netkat)

        check("table", random_table(rng, rng.randint(1, 6)), syntax.pretty_table, syntax.parse_table)
        check("lba", random_lba(rng), syntax.pretty_lba, syntax.parse_lba)

        n = rng.randint(1, 6)
        check("packets", random_packets(rng, n), syntax.pretty_packets,
              lambda s: syntax.parse_packets(s, n))
    return report


def _seeded(fn):
    # ``cases=None`` keeps the suite's own default
    def run(seed: int = 0, cases: int | None = None) -> Report:
        return fn(seed) if cases is None else fn(seed, cases)
    return run


def _exhaustive(fn):
    return lambda seed=0, cases=None: fn()


SUITES: dict[str, Callable[..., Report]] = {
    "axioms": _seeded(axiom_suite),
    "packet-algebra": _exhaustive(packet_algebra_suite),
    "derived": _exhaustive(derived_suite),
    "thm1": _seeded(thm1_suite),
    "thm2": _seeded(thm2_suite),
    "lemma1": _seeded(lemma1_suite),
    "lemma2": _seeded(lemma2_suite),
    "tables": _seeded(tables_suite),
    "increment": _exhaustive(increment_suite),
    "lba": _seeded(lba_suite),
    "dnf": _seeded(dnf_suite),
    "roundtrip": _seeded(roundtrip_suite),
}
