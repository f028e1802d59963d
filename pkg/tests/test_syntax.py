import random

import pytest

from matchkat import match as mx
from matchkat import netkat as nk
from matchkat import syntax
from matchkat import terms as mk
from matchkat.encoders import Table
from matchkat.errors import ParseError
from matchkat.generators import random_lba, random_match_expr, random_netkat, random_field_spec, random_term
from matchkat.lba import parity_machine
from matchkat.match import Compl, Concat, Inter, lit, point_match
from matchkat.packets import PacketSet


def test_parse_term_example():
    t = syntax.parse_term("1 <- 1 ; 2 == 0", 2)
    assert t == mk.Seq(mk.Assign(1, 1), mk.Test(point_match(2, 0, 2)))


def test_parse_match_expr_example():
    e = syntax.parse_match_expr("~(1x) & x1", 2)
    assert e == Inter(Compl(lit("1x")), lit("x1"))
    assert isinstance(e.left.child, Concat)


def test_negation_of_action_rejected():
    with pytest.raises(ParseError) as info:
        syntax.parse_term("!(1 <- 1)", 2)
    assert "non-test" in str(info.value)
    assert info.value.span == (0, 9)


@pytest.mark.parametrize("text", ["1 <- 1 ; 2 == 0", "!(1 == 1 + test(~1x)) ; 2 <- 0",
                                  "(1 <- 1 + 2 <- 0)* ; drop + skip"])
def test_term_round_trip_examples(text):
    t = syntax.parse_term(text, 2)
    assert syntax.parse_term(syntax.pretty_term(t), 2) == t


def test_match_syntax_features():
    assert syntax.parse_match_expr("T(3)") == mx.top(3)
    assert syntax.parse_match_expr("eps") == mx.EMPTY
    assert syntax.parse_match_expr("bot", 2) == mx.Bot(2)
    assert syntax.parse_match_expr("1x + bot") == lit("1x") + mx.Bot(2)
    assert syntax.parse_match_expr("bot(4)") == mx.Bot(4)
    assert syntax.parse_match_expr("1 @ x0") == mx.ONE @ lit("x0")
    # ~ binds tighter than @, which binds tighter than & and +
    assert syntax.parse_match_expr("~1 @ 0 + 11 & 1x") == ((~mx.ONE) @ mx.ZERO) + (lit("11") & lit("1x"))
    assert syntax.parse_match_expr("1x # trailing comment") == lit("1x")


@pytest.mark.parametrize("text,width,fragment", [
    ("1x +", None, "end of input"),
    ("bot", None, "infer the width"),
    ("1x & 1", None, "widths"),
    ("(1 @ x", None, "')'"),
    ("1x", 3, "width 2"),
    ("1y", None, "trailing"),
    ("1$", None, "unexpected character"),
])
def test_match_parse_errors(text, width, fragment):
    with pytest.raises(ParseError) as info:
        syntax.parse_match_expr(text, width)
    assert fragment in str(info.value)
    start, end = info.value.span
    assert 0 <= start <= end <= len(text)


@pytest.mark.parametrize("text,fragment", [
    ("1 <- ", "bit value"),
    ("3 <- 1", "outside"),
    ("test(1x0)", "width"),
    ("1 <- 1 ;", "end of input"),
    ("1 <- 1 )", "trailing"),
    ("test 1x", "'('"),
])
def test_term_parse_errors(text, fragment):
    with pytest.raises(ParseError) as info:
        syntax.parse_term(text, 2)
    assert fragment in str(info.value)
    start, end = info.value.span
    assert 0 <= start <= end <= len(text)


def test_term_precedence():
    t = syntax.parse_term("1 <- 1 ; 2 <- 0 + 1 == 1*", 2)
    assert t == mk.Plus(mk.Seq(mk.Assign(1, 1), mk.Assign(2, 0)), mk.Star(mk.bit_test(1, 1, 2)))
    assert syntax.parse_term("!1 == 1 ; skip", 2) == mk.Seq(mk.Not(mk.bit_test(1, 1, 2)), mk.SKIP)


def test_netkat_syntax():
    spec, t = syntax.parse_netkat("fields f:3, g:1\nf = 6 ; dup ; g <- 1 + (!(f = 0))*")
    assert spec == nk.FieldSpec((("f", 3), ("g", 1)))
    assert isinstance(t, nk.NkPlus)
    assert syntax.parse_netkat(syntax.pretty_netkat_program(spec, t)) == (spec, t)
    given = nk.FieldSpec((("a", 2),))
    assert syntax.parse_netkat("a <- 3 ; 1 ; 0", given)[1] == nk.NkSeq(
        nk.NkSeq(nk.FieldAssign("a", 3), nk.ONE), nk.ZERO)
    assert syntax.parse_field_spec("fields a:2, b:3") == nk.FieldSpec((("a", 2), ("b", 3)))
    with pytest.raises(ParseError):
        syntax.parse_netkat("fields f:3\nf = 9")
    with pytest.raises(ParseError):
        syntax.parse_netkat("f = 1")
    with pytest.raises(ParseError):
        syntax.parse_netkat("fields f:1\nh = 1")
    with pytest.raises(ParseError):
        syntax.parse_netkat("fields f:1\n!dup")


def test_table_documents():
    text = '{"width": 2, "rules": [{"pattern": "1x", "actions": [{"bit": 2, "value": 1}]}]}'
    tbl = syntax.parse_table(text)
    assert tbl == Table.from_rules(2, [("1x", [(2, 1)])])
    assert syntax.parse_table(syntax.pretty_table(tbl)) == tbl
    for bad in ['{bad', '{"width": 2}', '{"width": 2, "rules": [{"pattern": "1x0", "actions": []}]}']:
        with pytest.raises(ParseError):
            syntax.parse_table(bad)


def test_lba_documents():
    m = parity_machine(2)
    assert syntax.parse_lba(syntax.pretty_lba(m)) == m
    with pytest.raises(ParseError):
        syntax.parse_lba('{"states": ["a"]}')


def test_packets():
    assert syntax.parse_packets("00, 11\n01", 2) == PacketSet.of(2, ["00", "01", "11"])
    assert syntax.pretty_packets(PacketSet.of(2, ["11", "00"])) == "00,11"
    assert syntax.parse_packets("", 3) == PacketSet.empty(3)
    with pytest.raises(ParseError):
        syntax.parse_packets("001", 2)


def test_random_round_trips():
    rng = random.Random(21)
    for _ in range(200):
        w = rng.randint(0, 6)
        e = random_match_expr(rng, w, 12)
        assert syntax.parse_match_expr(syntax.pretty_match_expr(e), w) == e
        n = rng.randint(1, 5)
        t = random_term(rng, n, 12)
        assert syntax.parse_term(syntax.pretty_term(t), n) == t
        spec = random_field_spec(rng)
        u = random_netkat(rng, spec, 10)
        assert syntax.parse_netkat(syntax.pretty_netkat_program(spec, u)) == (spec, u)
        m = random_lba(rng)
        assert syntax.parse_lba(syntax.pretty_lba(m)) == m
