"""The property suites must notice planted bugs, not just pass."""

from matchkat import checks
from matchkat import encoders
from matchkat import match as mx
from matchkat import terms as mk


def test_report_formatting():
    r = checks.Report("demo")
    r.record(True, lambda: "unused")
    r.record(False, lambda: "broken")
    assert not r.ok and r.failures == ["broken"] and r.cases == 2
    assert str(r) == "demo: 2 cases, FAILED (1)"


def test_every_suite_has_a_runner():
    expected = {"axioms", "packet-algebra", "derived", "thm1", "thm2", "lemma1", "lemma2",
                "tables", "increment", "lba", "dnf", "roundtrip"}
    assert set(checks.SUITES) == expected
    for name in ("derived", "packet-algebra"):
        assert checks.SUITES[name](0, None).ok


def test_tables_suite_rejects_the_literal_counter(monkeypatch):
    monkeypatch.setattr(checks, "compile_counter", lambda tbl, variant: encoders.compile_counter(tbl, "paper"))
    assert not checks.tables_suite(seed=0, cases=30).ok


def test_increment_suite_rejects_a_missing_carry(monkeypatch):
    def broken(i, j, n):
        return mk.bit_test(j, 0, n) * mk.Assign(j, 1) + mk.bit_test(j, 1, n) * mk.Assign(j, 0)
    monkeypatch.setattr(checks, "encode_increment", broken)
    assert not checks.increment_suite(range(1, 4)).ok


def test_axiom_suite_rejects_a_wrong_law(monkeypatch):
    # concatenation complement without the second summand is not a law
    monkeypatch.setitem(checks.MATCH_AXIOMS, "concat-complement",
                        checks._cat(lambda a, b: (~(a @ b), ~a @ mx.top(b.width)), 2))
    assert not checks.axiom_suite(seed=0, cases=50).ok
