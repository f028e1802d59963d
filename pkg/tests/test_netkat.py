import random

import pytest

from matchkat import config
from matchkat import netkat as nk
from matchkat import terms as mk
from matchkat.errors import CapacityError, IllFormedError, WidthError
from matchkat.generators import random_field_spec, random_history, random_netkat, random_term
from matchkat.match import Inter, lit, point_match, top
from matchkat.netkat import (
    DUP, ONE, ZERO, FieldAssign, FieldSpec, FieldTest, History, NkNot, NkPlus, NkSeq, NkStar,
    from_netkat, nk_eval, to_netkat,
)
from matchkat.packets import Packet, PacketSet

SPEC = FieldSpec((("f", 3), ("g", 1)))


def hist(*bits):
    return History(tuple(Packet.from_string(b) for b in bits))


def test_field_spec_positions():
    assert SPEC.size == 4
    assert [SPEC.pos("f", j) for j in (1, 2, 3)] == [1, 2, 3]
    assert SPEC.pos("g", 1) == 4
    p = SPEC.packet(f=6, g=1)
    assert str(p) == "1101"
    assert SPEC.record(p) == {"f": 6, "g": 1}
    with pytest.raises(ValueError):
        FieldSpec((("f", 1), ("f", 2)))
    with pytest.raises(ValueError):
        SPEC.packet(f=8)


def test_history_invariants():
    with pytest.raises(ValueError):
        History(())
    with pytest.raises(WidthError):
        hist("10", "1")
    h = hist("01", "11")
    assert h.head == Packet.from_string("01") and len(h) == 2
    assert str(h) == "01::11::<>"


def test_nk_eval_examples():
    h = hist("0000")
    assert nk_eval(DUP, h, SPEC) == {hist("0000", "0000")}
    assert nk_eval(ZERO, h, SPEC) == frozenset()
    assert nk_eval(ONE, h, SPEC) == {h}
    policy = NkSeq(FieldTest("f", 6), NkSeq(DUP, FieldAssign("g", 1)))
    start = History.single(SPEC.packet(f=6))
    (out,) = nk_eval(policy, start, SPEC)
    assert len(out) == 2 and SPEC.get(out.head, "g") == 1
    assert out.packets[1] == SPEC.packet(f=6)
    assert nk_eval(policy, History.single(SPEC.packet(f=5)), SPEC) == frozenset()


def test_nk_eval_only_touches_head():
    h = hist("0000", "1111", "1010")
    (out,) = nk_eval(NkSeq(FieldAssign("f", 7), FieldAssign("g", 1)), h, SPEC)
    assert out.packets[1:] == h.packets[1:]
    assert str(out.head) == "1111"


def test_nk_star_and_not():
    spec = FieldSpec((("a", 1), ("b", 1)))
    loop = NkStar(NkPlus(FieldAssign("a", 1), FieldAssign("b", 1)))
    heads = nk.heads(nk_eval(loop, History.single(Packet(2, 0)), spec))
    assert {str(p) for p in heads} == {"00", "01", "10", "11"}
    assert nk_eval(NkNot(FieldTest("a", 1)), History.single(Packet(2, 2)), spec) == frozenset()


def test_history_cap():
    spec = FieldSpec((("a", 1),))
    with config.limits(history=3):
        with pytest.raises(CapacityError):
            nk_eval(NkStar(DUP), History.single(Packet(1, 0)), spec)


def test_well_formedness_errors():
    with pytest.raises(IllFormedError):
        nk_eval(FieldTest("h", 0), hist("0000"), SPEC)
    with pytest.raises(ValueError):
        nk_eval(FieldAssign("g", 2), hist("0000"), SPEC)
    with pytest.raises(ValueError):
        nk_eval(NkNot(DUP), hist("0000"), SPEC)
    with pytest.raises(WidthError):
        nk_eval(ONE, hist("00"), SPEC)


def test_to_netkat_examples():
    assert to_netkat(mk.Assign(3, 1), 3) == FieldAssign("f3", 1)
    image = to_netkat(mk.Test(top(3)))
    assert not nk.has_dup(image)
    assert nk_eval(image, hist("101"), FieldSpec.bits(3)) == {hist("101")}
    assert to_netkat(mk.Test(lit("1x0"))) == NkSeq(NkSeq(FieldTest("f1", 1), ONE), FieldTest("f3", 0))
    assert to_netkat(mk.DROP, 2) == ZERO and to_netkat(mk.SKIP, 2) == ONE


def test_to_netkat_is_dup_free():
    rng = random.Random(2)
    for _ in range(300):
        n = rng.randint(1, 6)
        assert not nk.has_dup(to_netkat(random_term(rng, n, 12), n))


def test_from_netkat_examples():
    assert from_netkat(DUP, SPEC) == mk.SKIP
    assert from_netkat(ONE, SPEC) == mk.SKIP
    assert from_netkat(ZERO, SPEC) == mk.DROP
    t = from_netkat(FieldTest("f", 6), SPEC)
    expected = Inter(Inter(point_match(1, 1, 4), point_match(2, 1, 4)), point_match(3, 0, 4))
    assert t == mk.Test(expected)
    assert from_netkat(FieldAssign("f", 6), SPEC) == mk.seq_all(
        [mk.Assign(1, 1), mk.Assign(2, 1), mk.Assign(3, 0)])


def test_check_examples():
    assert nk.check_thm1(mk.DROP, PacketSet.full(2))
    P = PacketSet.of(2, ["00", "10"])
    assert mk.evaluate(mk.Assign(1, 1), P) == PacketSet.of(2, ["10"])
    assert nk.check_thm1(mk.Assign(1, 1), P)
    h = hist("0110", "0000")
    assert nk.check_thm2(DUP, h, SPEC)
    assert nk.check_thm2(FieldAssign("f", 5), h, SPEC)
    assert nk.check_lemma1(mk.Test(point_match(2, 1, 3)))
    assert nk.check_lemma1(mk.SKIP, 3)
    assert nk.check_lemma2(mk.Assign(1, 1) * mk.Assign(2, 0), mk.Assign(2, 0) * mk.Assign(1, 1), 2)
    assert nk.check_lemma2(mk.Assign(1, 1), mk.Assign(1, 0), 1)


def test_random_correspondence():
    rng = random.Random(9)
    for _ in range(200):
        spec = random_field_spec(rng)
        t = random_netkat(rng, spec, 10)
        assert nk.check_thm2(t, random_history(rng, spec, 3), spec)


def test_checks_detect_a_wrong_bit_order(monkeypatch):
    # with LSB-first field encoding the head correspondence must break somewhere
    monkeypatch.setattr(nk, "bin_bit", lambda value, j, width: (value >> (j - 1)) & 1)
    rng = random.Random(1)
    spec = FieldSpec((("f", 3),))
    failures = 0
    for _ in range(100):
        t = random_netkat(rng, spec, 6)
        failures += not nk.check_thm2(t, random_history(rng, spec, 2), spec)
    assert failures > 0
