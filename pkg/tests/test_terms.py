import random

import pytest

from matchkat import terms as mk
from matchkat.encoders import encode_increment
from matchkat.errors import CapacityError, IllFormedError, WidthError
from matchkat.generators import random_packets, random_term
from matchkat.match import lit, point_match
from matchkat.packets import Packet, PacketSet
from matchkat.terms import DROP, SKIP, Assign, Not, Plus, Seq, Star, evaluate, term_equiv

from oracles import naive_eval


def ps(n, *items):
    return PacketSet.of(n, items)


def test_eval_examples():
    assert evaluate(Assign(2, 1), ps(2, "00")) == ps(2, "01")
    assert evaluate(mk.Test(lit("1x")) * mk.Test(lit("x1")), ps(2, "10", "11", "01")) == ps(2, "11")
    assert evaluate(Star(encode_increment(1, 2, 2)), ps(2, "00")) == PacketSet.full(2)
    rng = random.Random(0)
    for n in range(1, 5):
        assert not evaluate(DROP, random_packets(rng, n))


def test_skip_and_not():
    P = ps(2, "00", "11")
    assert evaluate(SKIP, P) == P
    # negation of a test filters the input, never adds packets
    assert evaluate(Not(mk.Test(lit("1x"))), P) == ps(2, "00")
    assert evaluate(Not(DROP), P) == P
    assert evaluate(Not(Not(mk.Test(lit("1x")))), P) == ps(2, "11")


def test_eval_matches_naive_oracle():
    rng = random.Random(5)
    for _ in range(500):
        n = rng.randint(1, 5)
        t = random_term(rng, n, rng.randint(1, 14))
        P = random_packets(rng, n)
        got = {str(p) for p in evaluate(t, P)}
        assert got == naive_eval(t, n, {str(p) for p in P})


def test_term_equiv_examples():
    for n in range(1, 5):
        for i in range(1, n + 1):
            both = mk.bit_test(i, 0, n) * mk.bit_test(i, 1, n)
            assert term_equiv(both, DROP, n)
    t = Assign(1, 1) * Assign(2, 0)
    assert term_equiv(t, t, 2)
    assert term_equiv(Assign(1, 1) * Assign(2, 0), Assign(2, 0) * Assign(1, 1), 2)
    result = term_equiv(Assign(1, 1), Assign(1, 0), 1)
    assert not result
    assert result.witness == Packet(1, 0)
    assert result.left == ps(1, "1") and result.right == ps(1, "0")


def test_term_equiv_lowest_witness():
    result = term_equiv(mk.Test(lit("11")), mk.Test(lit("1x")), 2)
    assert str(result.witness) == "10"


def test_well_formedness():
    with pytest.raises(IllFormedError):
        mk.check_well_formed(Not(Assign(1, 1)), 2)
    with pytest.raises(IllFormedError):
        mk.check_well_formed(Not(Star(mk.Test(lit("1")))), 1)
    with pytest.raises(WidthError):
        mk.check_well_formed(Assign(3, 1), 2)
    with pytest.raises(WidthError):
        mk.check_well_formed(mk.Test(lit("1x")), 3)
    with pytest.raises(WidthError):
        evaluate(mk.Test(lit("1x")), ps(3, "000"))
    mk.check_well_formed(Not(Plus(mk.Test(lit("1x")), Not(SKIP) * DROP)), 2)


def test_is_test_and_sizes():
    assert mk.is_test(Plus(mk.Test(lit("1")), Seq(DROP, Not(SKIP))))
    assert not mk.is_test(Seq(mk.Test(lit("1")), Assign(1, 0)))
    assert mk.size(Seq(Assign(1, 1), Star(SKIP))) == 4
    assert mk.infer_packet_size(Seq(Assign(1, 1), mk.Test(lit("xxx")))) == 3
    assert mk.infer_packet_size(Assign(2, 1)) is None


def test_packet_size_must_be_known():
    with pytest.raises(WidthError):
        term_equiv(Assign(1, 1), Assign(1, 1) * Assign(1, 1))
    assert term_equiv(Assign(1, 1), Assign(1, 1) * Assign(1, 1), n=1)


def test_capacity():
    with pytest.raises(CapacityError):
        term_equiv(SKIP, SKIP, 40)


def test_operators_build_nodes():
    a, b = Assign(1, 1), mk.Test(point_match(1, 0, 1))
    assert a + b == Plus(a, b)
    assert a * b == Seq(a, b)
    assert ~b == Not(b)
    assert a.star() == Star(a)
    assert mk.seq_all([]) == SKIP and mk.plus_all([]) == DROP
    assert mk.seq_all([a, b]) == Seq(a, b)


def test_apply_singleton():
    assert mk.apply(Assign(1, 0), Packet.from_string("11")) == ps(2, "01")
