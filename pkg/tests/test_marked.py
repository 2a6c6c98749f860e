from hypothesis import given

from adjourn.lam import App, Lam, beta_steps, lam
from adjourn.lam import show as lam_show
from adjourn.marked import (
    Ml,
    StepKind,
    bet3_reducts,
    bet3_steps,
    check_fgt_simulations,
    check_marked_lemmas,
    fgt,
    fgt_preimages,
    gred_steps,
    has_marked_subterm,
    ml,
    redex_path_is_weak,
    sigmm_activ_steps,
    steps_of_kind,
)
from adjourn.parsing import parse_lambda, parse_marked as P
from adjourn.syntax import Var, contains
from conftest import named_lambda, named_marked, to_node

G, K, KA, SM, AC = StepKind.GRED, StepKind.KNCO, StepKind.KACO, StepKind.SIGMM, StepKind.ACTIV
x, y, z, w = (Var(n) for n in "xyzw")


def test_fgt_examples():
    assert fgt(ml("x", x, y)) == parse_lambda("(\\x. x) y")
    assert fgt(z) == z
    assert fgt(lam("x", ml("y", y, x))) == parse_lambda("\\x. (\\y. y) x")


def test_preimage_examples():
    t = parse_lambda("(\\x. x) y")
    assert fgt_preimages(t) == {t, ml("x", x, y)}
    assert fgt_preimages(z) == {z}
    assert fgt_preimages(parse_lambda("\\x. x")) == {parse_lambda("\\x. x")}


def test_preimages_of_nested_redexes():
    # two independent markable nodes
    t = parse_lambda("(\\x. x) ((\\y. y) z)")
    assert len(fgt_preimages(t)) == 4


def test_bet3_examples():
    t = ml("x", App(lam("y", y), z), w)
    assert bet3_steps(t) == {(G, App(lam("y", y), z)), (KA, ml("x", z, w))}

    t = App(lam("x", x), ml("y", y, z))
    assert bet3_steps(t) == {(G, ml("y", y, z)), (G, App(lam("x", x), z))}

    t = App(lam("x", w), ml("y", y, z))
    assert (K, w) in bet3_steps(t)


def test_sigmm_activ_examples():
    assert sigmm_activ_steps(App(lam("x", x), y)) == {(AC, ml("x", x, y))}
    assert sigmm_activ_steps(ml("x", x, ml("y", y, z))) == {(SM, ml("y", ml("x", x, y), z))}
    assert sigmm_activ_steps(z) == set()


def test_sigmm_renames_captured_binder():
    # y free in the body of the outer marked redex
    t = ml("x", y, ml("y", y, z))
    ((kind, r),) = sigmm_activ_steps(t)
    assert kind is SM
    assert r == P("let q = z in* (let x = q in* y)")


def test_has_marked_subterm_examples():
    assert has_marked_subterm(ml("x", x, y))
    assert not has_marked_subterm(parse_lambda("\\x. x"))
    assert has_marked_subterm(lam("x", ml("y", y, x)))


def test_gred_never_enters_marked_bodies():
    t = ml("x", App(lam("y", y), z), w)
    assert gred_steps(t) == {App(lam("y", y), z)}
    assert redex_path_is_weak(t, G)


def test_highest_marker_on_example():
    assert gred_steps(ml("x", x, y)) == {y}


def test_knco_lemma_counterexample():
    # the root step discards a marked argument, so it is knco
    t = P("(\\a. x) (let b = x in* b)")
    assert steps_of_kind(t, K) == {x}
    assert gred_steps(t) == {App(lam("a", x), x)}
    # that successor only has a gred step (its argument is unmarked): gred;knco is empty
    assert all(not steps_of_kind(s, K) for s in gred_steps(t))


# --------------------------------------------------------------------------
# properties


@given(named_lambda())
def test_preimages_project_back(t):
    node = to_node(t)
    pre = fgt_preimages(node)
    assert node in pre
    assert all(fgt(p) == node for p in pre)


@given(named_marked())
def test_every_reduct_has_one_kind_per_redex(t):
    node = to_node(t)
    steps = bet3_steps(node)
    assert {r for _, r in steps} == bet3_reducts(node)
    assert all(k in (G, K, KA) for k, _ in steps)


@given(named_marked())
def test_gred_and_knco_positions_are_weak(t):
    node = to_node(t)
    assert redex_path_is_weak(node, G)
    assert redex_path_is_weak(node, K)


@given(named_marked())
def test_kaco_steps_happen_inside_marked_bodies(t):
    node = to_node(t)
    if not contains(node, Ml):
        assert not steps_of_kind(node, KA)


@given(named_marked())
def test_bet3_is_simulated_by_beta(t):
    node = to_node(t)
    image = fgt(node)
    for r in bet3_reducts(node):
        target = fgt(r)
        # one or two beta steps suffice at this size; search a few layers
        layer, seen = {image}, set()
        for _ in range(4):
            layer = set().union(*(beta_steps(s) for s in layer)) - seen
            seen |= layer
            if target in seen:
                break
        assert target in seen, (lam_show(image), lam_show(target))


# --------------------------------------------------------------------------
# lemma suites at small sizes


def test_marked_lemmas_size_one_is_vacuous():
    rep = check_marked_lemmas(1)
    assert rep.failed == 0


def test_marked_lemmas_small_sizes():
    rep = check_marked_lemmas(4)
    assert rep.ok, rep.counterexamples[:3]


def test_only_knco_fails_at_size_five():
    rep = check_marked_lemmas(5)
    assert {k for k, v in rep.parts.items() if v["failed"]} == {"knco"}
    assert rep.parts["knco"]["failed"] == 72
    for c in rep.counterexamples:
        assert c.step.startswith("knco")


def test_fgt_simulations_close():
    rep = check_fgt_simulations(4)
    assert rep.ok and rep.closed > 0
