import pytest

from nutl import (
    FALSE, TRUE, And, Lit, Mu, Next, Nu, Or, Var, canonical_names, closure,
    dependencies, guard_transform, is_guarded, negate, parse, push_next,
    substitute, to_text,
)
from nutl.errors import BudgetExceeded, ParseError, UnboundVariableError
from nutl.formula import bound_vars, size


def p(name="p", pos=True):
    return Lit(name, pos)


class TestParse:
    def test_eventually(self):
        assert parse(r"mu X. (p \/ ()X)") == Mu("X", Or(p(), Next(Var("X"))))

    def test_constants(self):
        assert parse("true") is TRUE
        assert parse("false") is FALSE

    def test_negated_conjunction_is_dualized(self):
        assert parse(r"!(p /\ q)") == Or(p("p", False), p("q", False))

    def test_precedence(self):
        # ! binds tighter than (), which binds tighter than /\ and \/
        assert parse(r"!p /\ q \/ r") == Or(And(p("p", False), p("q")), p("r"))
        assert parse(r"()p /\ q") == And(Next(p()), p("q"))
        assert parse("p -> q") == Or(p("p", False), p("q"))

    def test_iff_and_xor(self):
        iff = parse("p <-> q")
        assert iff == And(Or(p("p", False), p("q")), Or(p("q", False), p("p")))
        assert parse("p ^ q") == negate(iff)

    def test_binder_extends_right(self):
        assert parse(r"nu X. p /\ ()X") == Nu("X", And(p(), Next(Var("X"))))

    def test_parenthesized_binder_body(self):
        f = parse(r"mu X.(p \/ ()X) \/ q")
        assert isinstance(f, Or) and f.right == p("q")

    def test_binders_renamed_apart(self):
        f = parse(r"mu X.()X /\ mu X.()X")
        assert len(set(bound_vars(f))) == 2

    @pytest.mark.parametrize("text", ["p /\\", "(p", "mu .p", "p q", "", "nu X p"])
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse(text)

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse("p /\\\n  )")
        assert info.value.line == 2

    def test_unbound(self):
        with pytest.raises(UnboundVariableError):
            parse(r"p \/ ()X", free=("X",))
        # an identifier that is not declared free is a proposition
        assert parse(r"p \/ ()X") == Or(p(), Next(p("X")))
        assert parse(r"p \/ ()X", free=("X",), strict=False) == Or(p(), Next(Var("X")))


class TestNegate:
    def test_eventually_becomes_always(self):
        f = parse(r"mu X.(p \/ ()X)")
        assert negate(f) == Nu("X", And(p("p", False), Next(Var("X"))))

    def test_conjunction_of_fixpoints(self):
        f = parse(r"mu X.(p \/ ()X) /\ nu Y.(q /\ ()()Y)")
        assert to_text(negate(f)) == r"nu X.(!p /\ ()X) \/ mu Y.(!q \/ ()()Y)"

    def test_literal(self):
        assert negate(p()) == p("p", False)

    def test_involution(self):
        f = parse(r"nu X.mu Y.(()Y \/ p /\ ()X) \/ false")
        assert negate(negate(f)) == f


class TestSubstitute:
    def test_unfolding(self):
        nu = parse(r"nu X.(p /\ ()X)")
        body = And(p(), Next(Var("X")))
        assert substitute(body, "X", nu) == And(p(), Next(nu))

    def test_no_occurrence(self):
        assert substitute(p("q"), "X", parse("p")) == p("q")

    def test_open_body(self):
        body = parse(r"()Y \/ p /\ ()X", free=("X", "Y"), strict=False)
        mu = parse(r"mu Y.(()Y \/ p /\ ()X)", free=("X",), strict=False)
        assert substitute(body, "Y", mu) == Or(Next(mu), And(p(), Next(Var("X"))))


class TestClosure:
    def test_example_closure_has_eight_members(self):
        f = parse(r"nu X.mu Y.(()Y \/ p /\ ()X)")
        cl = closure(f)
        assert len(cl) == 8
        assert f in cl and TRUE in cl and p() in cl
        assert Mu("Y", Or(Next(Var("Y")), And(p(), Next(f)))) in cl

    def test_atom(self):
        assert set(closure(p())) == {p(), TRUE}

    def test_linear_in_counter_size(self):
        from nutl.bench import gen_counter
        for n in range(6):
            f = negate(gen_counter(n))
            # ratio measured once: at most 2 closure members per symbol
            assert len(closure(f)) <= 2 * size(f)


class TestDependencies:
    def test_independent(self):
        assert dependencies(parse(r"nu X.(()X /\ mu Y.(p \/ ()Y))")).pairs == frozenset()

    def test_chain(self):
        d = dependencies(parse(r"mu X.nu Y.(()X \/ mu Z.()(Z \/ Y /\ p))"))
        assert d.pairs == {("X", "Y"), ("Y", "Z"), ("X", "Z")}
        assert d.is_higher("X", "Z")

    def test_single(self):
        assert not dependencies(parse(r"mu X.(p \/ ()X)")).pairs


class TestGuarded:
    def test_unguarded_example(self):
        assert not is_guarded(parse(r"nu X.(p /\ mu Y.(q \/ X /\ ()Y))"))

    def test_guarded(self):
        assert is_guarded(parse(r"mu X.(p \/ ()X)"))

    def test_counter_family(self):
        from nutl.bench import gen_counter
        assert is_guarded(gen_counter(3))

    def test_transform_example(self):
        f = parse(r"nu X.(p /\ mu Y.(q \/ X /\ ()Y))")
        g = guard_transform(f)
        assert is_guarded(g)
        assert canonical_names(g) == canonical_names(
            parse(r"nu X.(p /\ q \/ p /\ ()mu Y.(q \/ X /\ ()Y))"))

    def test_guarded_input_unchanged(self):
        f = parse(r"mu X.(p \/ ()X)")
        assert guard_transform(f) is f

    def test_mu_drops_unguarded_disjunct(self):
        assert guard_transform(parse(r"mu X.(X \/ p)")) == Mu("X", p())
        assert guard_transform(parse(r"mu X.(X /\ q \/ p)")) == Mu("X", p())

    def test_budget(self):
        f = parse(r"nu X.(p /\ mu Y.(q \/ X /\ ()Y))")
        with pytest.raises(BudgetExceeded):
            guard_transform(f, budget=3)


class TestPushNext:
    def test_distributes(self):
        assert push_next(parse(r"()(p \/ q)")) == Or(Next(p()), Next(p("q")))

    def test_conjunction_untouched(self):
        f = parse(r"()(p /\ q)")
        assert push_next(f) == f

    def test_nested(self):
        assert to_text(push_next(parse(r"()()(p \/ ()q)"))) == r"()()p \/ ()()()q"


class TestPrinter:
    @pytest.mark.parametrize("text", [
        r"mu X.(p \/ ()X)", r"nu X.(!p /\ ()X) \/ mu Y.(!q \/ ()()Y)", "true",
        r"()()p \/ ()()()q", r"p /\ (q \/ r)",
    ])
    def test_roundtrip(self, text):
        assert to_text(parse(text)) == text

    def test_unicode(self):
        assert to_text(parse(r"mu X.(p \/ ()X)"), unicode=True) == "μX.(p ∨ ○X)"
