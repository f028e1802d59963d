import itertools
import random

import pytest

from matchkat import config
from matchkat import match as mx
from matchkat.errors import CapacityError, WidthError
from matchkat.generators import random_match_expr
from matchkat.match import Bot, Compl, Cube, interp, lit, point_match, top
from matchkat.packets import Packet, PacketSet, bit_mask, spread

from oracles import naive_interp


def strs(ps):
    return {str(p) for p in ps}


# -- packets -----------------------------------------------------------------


def test_packet_bits_are_one_based_msb_first():
    p = Packet.from_string("0110")
    assert p.bits == (0, 1, 1, 0)
    assert p.bit(1) == 0 and p.bit(2) == 1
    assert str(p.set_bit(1, 1)) == "1110"
    assert Packet.from_bits([1, 0]) == Packet(2, 2)
    assert str(Packet.from_string("10").concat(Packet.from_string("01"))) == "1001"


@pytest.mark.parametrize("bad", [lambda: Packet(2, 4), lambda: Packet(-1, 0),
                                 lambda: Packet(3, 1).bit(4), lambda: Packet.from_string("12")])
def test_packet_invariants(bad):
    with pytest.raises(ValueError):
        bad()


def test_packet_set_operations_match_python_sets():
    rng = random.Random(3)
    for n in range(0, 6):
        for _ in range(20):
            a = {v for v in range(1 << n) if rng.random() < 0.5}
            b = {v for v in range(1 << n) if rng.random() < 0.5}
            A, B = PacketSet.of(n, a), PacketSet.of(n, b)
            assert set(p.value for p in A | B) == a | b
            assert set(p.value for p in A & B) == a & b
            assert set(p.value for p in A - B) == a - b
            assert set(p.value for p in A ^ B) == a ^ b
            assert set(p.value for p in A.complement()) == set(range(1 << n)) - a
            assert (A <= B) == (a <= b)
            assert len(A) == len(a)
            assert [p.value for p in A] == sorted(a)


def test_packet_set_rejects_mixed_widths():
    with pytest.raises(WidthError):
        PacketSet.of(2, ["101"])
    with pytest.raises(WidthError):
        PacketSet.of(2, []) | PacketSet.of(3, [])


def test_packet_set_str_and_min():
    ps = PacketSet.of(2, ["11", "00"])
    assert str(ps) == "{00,11}"
    assert ps.min() == Packet(2, 0)
    assert PacketSet.empty(2).min() is None


def test_bit_mask_and_spread_brute_force():
    for n in range(1, 7):
        for i in range(1, n + 1):
            expected = sum(1 << v for v in range(1 << n) if Packet(n, v).bit(i))
            assert bit_mask(n, i) == expected
    for w in range(0, 4):
        for by in range(0, 3):
            for mask in range(1 << (1 << w)):
                want = 0
                for v in range(1 << w):
                    if mask >> v & 1:
                        want |= 1 << (v << by)
                assert spread(mask, w, by) == want


def test_enumeration_cap_is_configurable():
    with pytest.raises(CapacityError):
        PacketSet.full(config.max_width() + 1)
    with config.limits(width=4):
        with pytest.raises(CapacityError):
            interp(top(5))
    assert len(interp(top(5))) == 32


# -- match expressions ---------------------------------------------------------


def test_interp_examples():
    assert strs(interp(top(2))) == {"00", "01", "10", "11"}
    assert strs(interp(Bot(3))) == set()
    assert strs(interp(lit("00") + lit("11"))) == {"00", "11"}
    assert strs(interp(Compl(lit("10")))) == {"00", "01", "11"}
    assert strs(interp(mx.EMPTY)) == {""}


def test_top_is_universe():
    for n in range(1, 9):
        assert interp(top(n)) == PacketSet.full(n)
    assert top(0) == mx.EMPTY


def test_interp_matches_naive_oracle():
    rng = random.Random(7)
    for _ in range(400):
        w = rng.randint(0, 6)
        e = random_match_expr(rng, w, rng.randint(1, 14))
        assert strs(interp(e)) == naive_interp(e)


def test_widths():
    assert (lit("1x") @ lit("0")).width == 3
    assert Compl(lit("10")).width == 2
    with pytest.raises(WidthError):
        lit("1") + lit("10")
    with pytest.raises(WidthError):
        lit("1") & mx.EMPTY
    assert Bot(2) == Bot(2) and Bot(2) != Bot(3)


def test_point_match_examples():
    assert point_match(2, 1, 3) == lit("x1x")
    assert strs(interp(point_match(2, 1, 3))) == {"010", "011", "110", "111"}
    assert point_match(1, 0, 1) == lit("0")
    assert point_match(3, 0, 3) == lit("xx0")
    with pytest.raises(WidthError):
        point_match(4, 0, 3)
    with pytest.raises(WidthError):
        point_match(0, 0, 3)


def test_dnf_examples():
    assert mx.to_dnf(lit("1x") & lit("x1")) == {Cube("11")}
    assert mx.to_dnf(Bot(2)) == frozenset()
    cubes = mx.to_dnf(Compl(lit("11")))
    assert strs(interp(mx.dnf_expr(cubes, 2))) == {"00", "01", "10"}


def test_dnf_requires_positive_width():
    with pytest.raises(WidthError):
        mx.to_dnf(mx.EMPTY)


def test_cube_operations():
    c = Cube("1x0")
    assert c.contains(Packet.from_string("110")) and not c.contains(Packet.from_string("111"))
    assert Cube("1xx").covers(c) and not c.covers(Cube("1xx"))
    assert c.intersect(Cube("x10")) == Cube("110")
    assert c.intersect(Cube("0xx")) is None
    comp = c.complement()
    assert interp(mx.dnf_expr(comp, 3)) == interp(c.to_expr()).complement()
    with pytest.raises(ValueError):
        Cube("1y")


def test_expr_equiv_examples():
    assert mx.expr_equiv(mx.ONE + mx.ZERO, mx.X)
    assert mx.expr_equiv(mx.ONE & mx.ZERO, Bot(1))
    e = lit("1x0") + Compl(lit("0xx"))
    assert mx.expr_equiv(e, e)
    result = mx.expr_equiv(lit("1x"), lit("x1"))
    assert not result and str(result.witness) in {"10", "01"}
    # the lowest string of the symmetric difference is chosen
    assert str(result.witness) == "01"
    with pytest.raises(WidthError):
        mx.expr_equiv(lit("1"), lit("11"))


def test_expr_equiv_witness_in_symmetric_difference():
    rng = random.Random(11)
    for _ in range(300):
        w = rng.randint(1, 5)
        e, f = random_match_expr(rng, w, 8), random_match_expr(rng, w, 8)
        result = mx.expr_equiv(e, f)
        sym = naive_interp(e) ^ naive_interp(f)
        if result:
            assert not sym
        else:
            assert str(result.witness) in sym


def test_matches_and_size():
    e = lit("1x")
    assert mx.matches(e, "10") and not mx.matches(e, Packet.from_string("01"))
    assert mx.size(lit("1x0")) == 5
    assert mx.size(Compl(mx.ONE)) == 2


def test_builders():
    assert mx.concat_all([]) == mx.EMPTY
    assert mx.union_all([], 3) == Bot(3)
    assert interp(mx.inter_all([], 2)) == PacketSet.full(2)
    parts = [lit(s) for s in ("10", "01")]
    assert strs(interp(mx.union_all(parts, 2))) == {"10", "01"}
    for run in ("".join(r) for r in itertools.product("01x", repeat=3)):
        assert strs(interp(lit(run))) == naive_interp(lit(run))
