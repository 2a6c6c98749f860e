from hypothesis import given

from adjourn.lam import App, Lam, lam
from adjourn.syntax import (
    BVar,
    Var,
    abstract,
    fill_loose,
    free_names,
    hints,
    instantiate,
    max_loose,
    occurs_loose,
    pick_name,
    replace_free,
    shift,
    size,
    subterms,
    swap01,
)
from conftest import named_lambda, to_node
from oracles import fv


def test_hints_do_not_affect_equality():
    assert Lam(BVar(0), "x") == Lam(BVar(0), "q")
    assert hash(Lam(BVar(0), "x")) == hash(Lam(BVar(0), "q"))
    assert hints(Lam(BVar(0), "x")) != hints(Lam(BVar(0), "q"))


def test_nodes_are_immutable():
    t = Var("x")
    try:
        t.name = "y"
    except AttributeError:
        pass
    else:
        raise AssertionError("Var accepted an assignment")


def test_shift_respects_cutoff():
    t = App(BVar(0), BVar(2))
    assert shift(t, 1, cutoff=1) == App(BVar(0), BVar(3))
    assert shift(t, 0) is t


def test_instantiate_closes_the_gap():
    # body under one binder: 0 is the bound variable, 1 is one level further out
    body = App(BVar(0), BVar(1))
    assert instantiate(body, Var("a")) == App(Var("a"), BVar(0))


def test_instantiate_shifts_value_under_binders():
    body = Lam(BVar(1), "y")  # \y. <outer>
    assert instantiate(body, BVar(5)) == Lam(BVar(6), "y")


def test_replace_free_avoids_capture():
    # (\y. x){x := y} must not capture y
    t = replace_free(lam("y", Var("x")), "x", Var("y"))
    assert type(t) is Lam and t.body == Var("y")


def test_pick_name_primes_until_fresh():
    assert pick_name("x", {"x", "x'"}) == "x''"
    assert pick_name("", set()) == "v"


def test_loose_index_helpers():
    t = Lam(App(BVar(0), BVar(2)), "a")
    assert max_loose(t) == 1
    assert occurs_loose(t, 1) and not occurs_loose(t, 0)
    assert fill_loose(t, ["p", "q"]) == Lam(App(BVar(0), Var("p")), "a")
    assert swap01(App(BVar(0), BVar(1))) == App(BVar(1), BVar(0))


def test_size_weights_applications_zero():
    assert size(App(Var("x"), Var("y"))) == 2
    assert size(lam("x", App(Var("x"), Var("x")))) == 3


@given(named_lambda())
def test_free_names_match_oracle(t):
    assert free_names(to_node(t)) == fv(t)


@given(named_lambda())
def test_abstract_then_instantiate_is_identity(t):
    node = to_node(t)
    for x in ("x", "y", "q"):
        assert instantiate(abstract(node, x), Var(x)) == node


@given(named_lambda())
def test_every_subterm_occurrence_is_visited(t):
    node = to_node(t)
    n = sum(1 for _ in subterms(node))
    assert n == 1 + sum(sum(1 for _ in subterms(k)) for k in node.kids())
