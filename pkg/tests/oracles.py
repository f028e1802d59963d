"""Naive reference semantics over Python sets of bit strings.

Deliberately slow and written straight from the inductive definitions, with
no bitmask tricks, so it can cross-check the library.
"""

from itertools import product

from matchkat import match as mx
from matchkat import terms as mk


def universe(n):
    return {"".join(bits) for bits in product("01", repeat=n)}


def naive_interp(e):
    if isinstance(e, mx.Empty):
        return {""}
    if isinstance(e, mx.Bot):
        return set()
    if isinstance(e, mx.Lit):
        return {"0", "1"} if e.symbol == "x" else {e.symbol}
    if isinstance(e, mx.Concat):
        return {a + b for a in naive_interp(e.left) for b in naive_interp(e.right)}
    if isinstance(e, mx.Union):
        return naive_interp(e.left) | naive_interp(e.right)
    if isinstance(e, mx.Inter):
        return naive_interp(e.left) & naive_interp(e.right)
    if isinstance(e, mx.Compl):
        return universe(e.width) - naive_interp(e.child)
    raise TypeError(e)


def naive_eval(t, n, packets):
    """Set-of-strings transformer for a MatchKAT term at packet size ``n``."""
    packets = set(packets)
    if isinstance(t, mk.Drop):
        return set()
    if isinstance(t, mk.Skip):
        return packets
    if isinstance(t, mk.Test):
        return packets & naive_interp(t.expr)
    if isinstance(t, mk.Assign):
        return {p[: t.index - 1] + str(t.value) + p[t.index:] for p in packets}
    if isinstance(t, mk.Plus):
        return naive_eval(t.left, n, packets) | naive_eval(t.right, n, packets)
    if isinstance(t, mk.Seq):
        return naive_eval(t.right, n, naive_eval(t.left, n, packets))
    if isinstance(t, mk.Star):
        acc = set(packets)
        while True:
            nxt = acc | naive_eval(t.child, n, acc)
            if nxt == acc:
                return acc
            acc = nxt
    if isinstance(t, mk.Not):
        return packets - naive_eval(t.child, n, packets)
    raise TypeError(t)


def naive_increment(p, i, j):
    field = p[i - 1 : j]
    value = (int(field, 2) + 1) % (1 << len(field))
    return p[: i - 1] + format(value, f"0{len(field)}b") + p[j:]


def naive_table(rules, p):
    """``rules`` are (pattern string, [(bit, value), ...]); None when dropped."""
    for pattern, actions in rules:
        if all(c == "x" or c == b for c, b in zip(pattern, p)):
            out = list(p)
            for bit, value in actions:
                out[bit - 1] = str(value)
            return "".join(out)
    return None
