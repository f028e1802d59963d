"""Seeded random generators for every syntactic category.

All generators take a :class:`random.Random` and respect well-formedness:
negation is only ever applied to generated tests, and widths always agree.
``size`` is a node budget; generated values never exceed it.
"""

from __future__ import annotations

import random

from . import match as mx
from . import netkat as nk
from . import terms as mk
from .encoders import Rule, Table
from .lba import L_MARK, R_MARK, Lba, Transition
from .match import Cube
from .packets import Packet, PacketSet


def _split(rng: random.Random, total: int) -> tuple[int, int]:
    a = rng.randint(1, total - 1)
    return a, total - a


def random_match_expr(rng: random.Random, width: int, size: int = 8) -> mx.MatchExpr:
    """A random expression of exactly ``width`` with at most ``size`` nodes."""
    run_cost = max(1, 2 * width - 1)
    options = []
    if width == 0:
        options.append(("eps", 2))
    elif size >= run_cost:
        options.append(("run", 4))
    if size >= 3:
        options += [("union", 2), ("inter", 2), ("concat", 2 if width else 0.5)]
    if size >= 2:
        options.append(("compl", 1.5))
    options.append(("bot", 0.3))
    kinds, weights = zip(*options)
    kind = rng.choices(kinds, weights)[0]
    if kind == "eps":
        return mx.EMPTY
    if kind == "run":
        return mx.lit("".join(rng.choice("01xx") for _ in range(width)))
    if kind == "bot":
        return mx.Bot(width)
    if kind == "compl":
        return mx.Compl(random_match_expr(rng, width, size - 1))
    a, b = _split(rng, size - 1)
    if kind == "concat":
        wl = rng.randint(0, width)
        return mx.Concat(random_match_expr(rng, wl, a), random_match_expr(rng, width - wl, b))
    node = mx.Union if kind == "union" else mx.Inter
    return node(random_match_expr(rng, width, a), random_match_expr(rng, width, b))


def random_test_expr(rng: random.Random, n: int) -> mx.MatchExpr:
    if rng.random() < 0.5:
        return mx.point_match(rng.randint(1, n), rng.randint(0, 1), n)
    return random_match_expr(rng, n, rng.randint(1, 2 * n + 3))


def random_test(rng: random.Random, n: int, size: int = 4) -> mk.Term:
    """A random MatchKAT test (⊥, ⊤, Test, or +, ;, ! of tests)."""
    options = [("test", 5), ("drop", 0.3), ("skip", 0.3)]
    if size >= 3:
        options += [("plus", 1), ("seq", 1)]
    if size >= 2:
        options.append(("not", 1))
    kinds, weights = zip(*options)
    kind = rng.choices(kinds, weights)[0]
    if kind == "test":
        return mk.Test(random_test_expr(rng, n))
    if kind == "drop":
        return mk.DROP
    if kind == "skip":
        return mk.SKIP
    if kind == "not":
        return mk.Not(random_test(rng, n, size - 1))
    a, b = _split(rng, size - 1)
    node = mk.Plus if kind == "plus" else mk.Seq
    return node(random_test(rng, n, a), random_test(rng, n, b))


def random_term(rng: random.Random, n: int, size: int = 12) -> mk.Term:
    """A random well-formed term at packet size ``n`` with at most ``size`` nodes."""
    options = [("assign", 4), ("test", 3), ("drop", 0.3), ("skip", 0.5)]
    if size >= 3:
        options += [("plus", 2.5), ("seq", 3)]
    if size >= 2:
        options += [("star", 1), ("not", 1)]
    kinds, weights = zip(*options)
    kind = rng.choices(kinds, weights)[0]
    if kind == "assign":
        return mk.Assign(rng.randint(1, n), rng.randint(0, 1))
    if kind == "test":
        return mk.Test(random_test_expr(rng, n))
    if kind == "drop":
        return mk.DROP
    if kind == "skip":
        return mk.SKIP
    if kind == "star":
        return mk.Star(random_term(rng, n, size - 1))
    if kind == "not":
        return mk.Not(random_test(rng, n, size - 1))
    a, b = _split(rng, size - 1)
    node = mk.Plus if kind == "plus" else mk.Seq
    return node(random_term(rng, n, a), random_term(rng, n, b))


def random_packets(rng: random.Random, n: int) -> PacketSet:
    """A random subset of ``2**n``; sparse, dense and empty sets all occur."""
    density = rng.choice([0.0, 0.1, 0.3, 0.5, 0.9, 1.0])
    mask = 0
    for v in range(1 << n):
        if rng.random() < density:
            mask |= 1 << v
    return PacketSet(n, mask)


# -- NetKAT ------------------------------------------------------------------


def random_field_spec(rng: random.Random, total: int | None = None) -> nk.FieldSpec:
    total = total if total is not None else rng.randint(1, 8)
    fields, left, i = [], total, 0
    while left:
        w = rng.randint(1, min(3, left))
        i += 1
        fields.append((f"f{i}", w))
        left -= w
    return nk.FieldSpec(tuple(fields))


def _field_value(rng, spec, name):
    return rng.randrange(1 << spec.width_of(name))


def random_nk_test(rng: random.Random, spec: nk.FieldSpec, size: int = 3) -> nk.NkTerm:
    options = [("eq", 5), ("zero", 0.3), ("one", 0.3)]
    if size >= 3:
        options += [("plus", 1), ("seq", 1)]
    if size >= 2:
        options.append(("not", 1))
    kinds, weights = zip(*options)
    kind = rng.choices(kinds, weights)[0]
    if kind == "eq":
        f = rng.choice(spec.names)
        return nk.FieldTest(f, _field_value(rng, spec, f))
    if kind == "zero":
        return nk.ZERO
    if kind == "one":
        return nk.ONE
    if kind == "not":
        return nk.NkNot(random_nk_test(rng, spec, size - 1))
    a, b = _split(rng, size - 1)
    node = nk.NkPlus if kind == "plus" else nk.NkSeq
    return node(random_nk_test(rng, spec, a), random_nk_test(rng, spec, b))


def random_netkat(rng: random.Random, spec: nk.FieldSpec, size: int = 10,
                  allow_dup: bool = True, _in_star: bool = False) -> nk.NkTerm:
    """A random NetKAT term.

    ``dup`` is never placed under a star: iterating a dup-containing body
    grows histories without bound.
    """
    dup = allow_dup and not _in_star
    options = [("assign", 4), ("test", 3), ("one", 0.4), ("zero", 0.2)]
    if dup:
        options.append(("dup", 2))
    if size >= 3:
        options += [("plus", 2.5), ("seq", 3)]
    if size >= 2:
        options += [("star", 1), ("not", 1)]
    kinds, weights = zip(*options)
    kind = rng.choices(kinds, weights)[0]
    if kind == "assign":
        f = rng.choice(spec.names)
        return nk.FieldAssign(f, _field_value(rng, spec, f))
    if kind == "test":
        f = rng.choice(spec.names)
        return nk.FieldTest(f, _field_value(rng, spec, f))
    if kind == "one":
        return nk.ONE
    if kind == "zero":
        return nk.ZERO
    if kind == "dup":
        return nk.DUP
    if kind == "star":
        return nk.NkStar(random_netkat(rng, spec, size - 1, allow_dup, True))
    if kind == "not":
        return nk.NkNot(random_nk_test(rng, spec, size - 1))
    a, b = _split(rng, size - 1)
    node = nk.NkPlus if kind == "plus" else nk.NkSeq
    return node(random_netkat(rng, spec, a, allow_dup, _in_star),
                random_netkat(rng, spec, b, allow_dup, _in_star))


def random_history(rng: random.Random, spec: nk.FieldSpec, max_length: int = 3) -> nk.History:
    length = rng.randint(1, max_length)
    return nk.History(tuple(Packet(spec.size, rng.randrange(1 << spec.size)) for _ in range(length)))


# -- tables and machines -----------------------------------------------------


def random_cube(rng: random.Random, n: int) -> Cube:
    return Cube("".join(rng.choice("01xx") for _ in range(n)))


def random_table(rng: random.Random, n: int, k: int | None = None) -> Table:
    k = k if k is not None else rng.randint(0, 4)
    rules = []
    for _ in range(k):
        actions = tuple((rng.randint(1, n), rng.randint(0, 1)) for _ in range(rng.randint(0, 2)))
        rules.append(Rule(random_cube(rng, n), actions))
    return Table(n, tuple(rules))


def random_lba(rng: random.Random, max_states: int = 4, max_tape: int = 4,
               transitions: int | None = None) -> Lba:
    q = rng.randint(3, max_states)
    states = tuple(f"q{i}" for i in range(q))
    start, accept, reject = states[0], states[-2], states[-1]
    working = [s for s in states if s not in (accept, reject)]
    tape = rng.randint(2, max_tape)
    count = transitions if transitions is not None else rng.randint(1, 6)
    moves = set()
    for _ in range(count):
        src = rng.choice(working)
        read = rng.choice(["0", "1", L_MARK, R_MARK])
        dst = rng.choice(states)
        if read == L_MARK:
            moves.add(Transition(src, read, dst, read, "R"))
        elif read == R_MARK:
            moves.add(Transition(src, read, dst, read, "L"))
        else:
            moves.add(Transition(src, read, dst, rng.choice("01"), rng.choice("LR")))
    return Lba(states, start, accept, reject, tape, tuple(sorted(moves, key=repr)))


# -- semantics-preserving rewrites -------------------------------------------


def equivalent_variant(rng: random.Random, t: mk.Term, n: int, steps: int = 2) -> mk.Term:
    """Rewrite ``t`` with randomly chosen KAT laws; the result is equivalent."""
    for _ in range(steps):
        t = _rewrite_somewhere(rng, t, n)
    return t


def _rewrite_here(rng: random.Random, t: mk.Term, n: int) -> mk.Term:
    rules = [
        lambda: mk.Plus(t, t),
        lambda: mk.Seq(mk.SKIP, t),
        lambda: mk.Seq(t, mk.SKIP),
        lambda: mk.Plus(t, mk.DROP),
        lambda: mk.Plus(t, mk.Seq(t, mk.DROP)),
    ]
    if isinstance(t, mk.Plus):
        rules.append(lambda: mk.Plus(t.right, t.left))
    if isinstance(t, mk.Star):
        rules.append(lambda: mk.Plus(mk.SKIP, mk.Seq(t.child, t)))
        rules.append(lambda: mk.Star(mk.Star(t.child)))
    if isinstance(t, mk.Test) and t.expr.width >= 1:
        rules.append(lambda: mk.Test(mx.dnf_expr(mx.to_dnf(t.expr), t.expr.width)))
    if mk.is_test(t):
        rules.append(lambda: mk.Not(mk.Not(t)))
        rules.append(lambda: mk.Seq(t, t))
    return rng.choice(rules)()


def _rewrite_somewhere(rng: random.Random, t: mk.Term, n: int) -> mk.Term:
    kids = mk.children(t)
    if not kids or rng.random() < 0.4:
        return _rewrite_here(rng, t, n)
    i = rng.randrange(len(kids))
    new = list(kids)
    new[i] = _rewrite_somewhere(rng, kids[i], n)
    return type(t)(*new)


# -- one entry point ---------------------------------------------------------


def generate_random(kind: str, size: int, width: int, seed: int):
    """Deterministic per ``seed``. ``kind`` is one of ``match``, ``test``,
    ``term``, ``packets``, ``netkat``, ``history``, ``table``, ``lba``.

    For ``netkat`` the result is a ``(FieldSpec, NkTerm)`` pair whose fields
    total ``width`` bits; for ``table`` ``size`` is the rule count.
    """
    rng = random.Random(seed)
    if kind == "match":
        return random_match_expr(rng, width, size)
    if kind == "test":
        return random_test(rng, width, size)
    if kind == "term":
        return random_term(rng, width, size)
    if kind == "packets":
        return random_packets(rng, width)
    if kind == "netkat":
        spec = random_field_spec(rng, width)
        return spec, random_netkat(rng, spec, size)
    if kind == "history":
        return random_history(rng, random_field_spec(rng, width), size)
    if kind == "table":
        return random_table(rng, width, size)
    if kind == "lba":
        return random_lba(rng, max_tape=max(2, width))
    raise ValueError(f"unknown kind {kind!r}")
