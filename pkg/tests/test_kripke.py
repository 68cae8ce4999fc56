import pytest

from nutl.errors import KripkeError
from nutl.kripke import (
    KripkeStructure, StateLasso, format_kripke, lasso_structure, parse_kripke,
)


def test_m0_parses(model):
    m = model("m0")
    assert m.states == ("s0", "s1", "s2", "s3") and m.init == "s0"
    assert [s for s in m.states if "p" in m.label(s)] == ["s0", "s1", "s3"]
    assert all(m.successors(s) for s in m.states)


def test_m1_labels(model):
    m = model("m1")
    assert m.label("s2") == {"p"} and m.label("s3") == {"q"}


def test_format_roundtrip(model):
    m = model("m2")
    again = parse_kripke(format_kripke(m))
    assert again.states == m.states and again.trans == m.trans and again.labels == m.labels


def test_comments_and_repeated_trans():
    m = parse_kripke("# demo\nstates: a b  # two\ninit: a\nlabel a: p\n"
                     "trans: a -> b\ntrans: b -> a, b -> b\n")
    assert m.successors("b") == ["a", "b"] and m.label("b") == frozenset()


@pytest.mark.parametrize("text, msg", [
    ("states: a b\ninit: a\ntrans: a -> b\n", "not total"),
    ("states: a\ninit: a\ntrans: a -> c\n", "unknown state"),
    ("states: a\ntrans: a -> a\n", "missing 'init:'"),
    ("init: a\n", "missing 'states:'"),
    ("states: a\ninit: b\ntrans: a -> a\n", "not declared"),
    ("states: a\ninit: a\nlabel c: p\ntrans: a -> a\n", "unknown state"),
    ("states: a\ninit: a\ntrans: a a\n", "line 3"),
    ("states: a\ninit: a\ncolour a: red\n", "unknown key"),
    ("states: a\ninit: a\nnonsense\n", "line 3"),
    ("states: a a\ninit: a\ntrans: a -> a\n", "duplicate"),
])
def test_errors(text, msg):
    with pytest.raises(KripkeError, match=msg):
        parse_kripke(text)


def test_state_lasso():
    m = lasso_structure([{"p"}], [{"q"}, set()])
    lasso = StateLasso(("s0",), ("s1", "s2"))
    assert str(lasso) == "prefix: s0 ; period: s1 s2"
    assert str(StateLasso((), ("s0",))) == "period: s0"
    assert lasso.is_run_of(m)
    assert not StateLasso(("s0",), ("s2", "s1")).is_run_of(m)
    w = lasso.word(m)
    assert w.prefix == (frozenset({"p"}),) and w.period == (frozenset({"q"}), frozenset())


def test_lasso_structure_is_single_path():
    m = lasso_structure([], [{"p"}])
    assert m.trans == {("s0", "s0")}
    assert isinstance(m, KripkeStructure)
    with pytest.raises(KripkeError):
        lasso_structure([{"p"}], [])
