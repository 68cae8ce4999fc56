import pytest

from nutl import negate, parse
from nutl.kripke import lasso_structure
from nutl.lasso import eval_lasso
from nutl.mc import build_product, label_check, model_check, pg_reduction, product_dot
from nutl.pf import PresentPart
from nutl.pfg import build_pfg
from nutl.sat import check_sat

PHI1 = r"mu X.(p \/ ()X) /\ nu Y.(q /\ ()()Y)"
PHI2 = r"nu X.mu Y.(()Y \/ p /\ ()X) \/ nu Z.(q /\ ()()Z)"


def unroll(lasso, k=40):
    seq = list(lasso.prefix)
    while len(seq) < k:
        seq.extend(lasso.period)
    return seq[:k]


def test_label_check(model):
    m = model("m0")
    assert label_check("s2", PresentPart(frozenset()), m)
    assert label_check("s1", PresentPart(frozenset({("p", True)})), m)
    assert not label_check("s2", PresentPart(frozenset({("p", True)})), m)
    assert label_check("s2", PresentPart(frozenset({("p", False)})), m)


def test_product_of_m0(model):
    m = model("m0")
    g = build_pfg(parse(r"()nu X.(p /\ ()X)"))
    pg = build_product(m, g)
    assert pg.nodes == [("s0", 0), ("s1", 1), ("s3", 1), ("s2", 1)]
    loops = [e for e in pg.edges if e.src == e.dst]
    assert [(pg.nodes[e.src], e.mark) for e in loops] == [(("s3", 1), {"X"})]
    out = pg.out_edges()
    assert not out[pg.nodes.index(("s2", 1))]
    red = pg_reduction(pg)
    assert ("s2", 1) not in red.nodes and ("s1", 1) not in red.nodes
    assert pg_reduction(red).nodes == red.nodes


def test_product_projection(model):
    m = model("m1")
    g = build_pfg(negate(parse(PHI1)))
    pg = build_product(m, g)
    pfg_edges = {(e.src, e.label, e.mark, e.dst) for e in g.edges}
    for e in pg.edges:
        (s, a), (t, b) = pg.nodes[e.src], pg.nodes[e.dst]
        assert (s, t) in m.trans
        assert (a, e.label, e.mark, b) in pfg_edges
        assert label_check(s, e.label, m)


def test_empty_pfg_product(model):
    m = model("m0")
    g = build_pfg(parse(r"nu X.(p /\ ()X) /\ nu Y.(!p /\ ()Y)"))
    pg = build_product(m, g)
    assert pg.nodes == [("s0", None)] and pg.edges == []


def test_m1_violated(model):
    m = model("m1")
    v = model_check(m, parse(PHI1))
    assert not v.holds
    # the infinite path s0 s2 s3 (s2 s3)^omega
    assert unroll(v.counterexample) == unroll(type(v.counterexample)(("s0",), ("s2", "s3")))
    assert eval_lasso(negate(parse(PHI1)), v.counterexample.word(m))


def test_m2_holds(model):
    v = model_check(model("m2"), parse(PHI1))
    assert v.holds and v.counterexample is None


def test_m3_violated(model):
    m = model("m3")
    v = model_check(m, parse(PHI2))
    assert not v.holds
    assert str(v.counterexample) == "prefix: s0 s2 s3 ; period: s3"


def test_valid_property_holds_everywhere(model):
    from nutl.bench import gen_nester
    phi = gen_nester(2)
    assert not check_sat(negate(phi))
    for name in ("m0", "m1", "m2", "m3"):
        assert model_check(model(name), phi).holds


@pytest.mark.parametrize("prefix, period", [
    ([], [{"p"}]), ([{"q"}], [{"p"}, set()]), ([set(), {"p", "q"}], [{"q"}]),
])
def test_single_path_structures(prefix, period):
    m = lasso_structure(prefix, period)
    from nutl.lasso import LassoWord
    w = LassoWord(tuple(prefix), tuple(period))
    for text in (PHI1, PHI2, r"nu X.(p /\ ()X)", r"mu X.(q \/ ()X)"):
        phi = parse(text)
        assert model_check(m, phi).holds == eval_lasso(phi, w)


def test_product_dot(model):
    m = model("m3")
    v = model_check(m, parse(PHI2))
    dot = product_dot(v.product, highlight=v.witness.loop_edges)
    assert dot.startswith("digraph P {")
    assert 'label="(s0, 0)"' in dot and "color=red" in dot
