"""Marked lambda-calculus.

``Ml(body, arg)`` is the marked redex ``ml x M N`` (printed
``let x = N in* M``); it projects to ``(λx.M) N``.  Reduction splits into

* ``Gred``  - a root contraction keeping marked material, under the weak closure,
* ``Knco``  - a root contraction discarding an argument that contains a mark,
* ``Kaco``  - any step inside the body of a marked redex,

whose union is full beta on marked terms, and the two rules ``Sigmm``
(let-of-let reassociation) and ``Activ`` (marking a redex).

The weak closure goes under abstractions, into both sides of an application
and into the argument of a marked redex, never into its body.
"""

from __future__ import annotations

import enum
import time
from typing import Iterable, Optional

from adjourn import arl
from adjourn.arl import RelView
from adjourn.lam import BETA, SIGMA, App, Lam
from adjourn.report import Report
from adjourn.syntax import Node, _init, abstract, contains, instantiate, occurs_loose, pick_name, shift


class Ml(Node):
    __slots__ = ("body", "arg", "hint")
    KIDS = ("body", "arg")
    BINDS = (1, 0)

    def __init__(self, body: Node, arg: Node, hint: str = "x"):
        _init(self, body=body, arg=arg, hint=hint)
        self._seal()

    def kids(self):
        return (self.body, self.arg)

    def rebuild(self, kids):
        return Ml(kids[0], kids[1], self.hint)

    def show(self, names, avoid, prec, show):
        name = pick_name(self.hint, avoid | set(names))
        s = f"let {name} = {show(self.arg, names, avoid, 0)} in* {show(self.body, names + [name], avoid, 0)}"
        return f"({s})" if prec > 0 else s


def ml(name: str, body: Node, arg: Node) -> Ml:
    return Ml(abstract(body, name), arg, name)


class StepKind(enum.Enum):
    GRED = "Gred"
    KNCO = "Knco"
    KACO = "Kaco"
    SIGMM = "Sigmm"
    ACTIV = "Activ"

    def __str__(self):
        return self.value


def show(t: Node) -> str:
    from adjourn.lam import show as lam_show

    return lam_show(t)


def fgt(t: Node) -> Node:
    """Forgetful projection: every marked redex becomes a plain redex."""
    tt = type(t)
    if tt is Ml:
        return App(Lam(fgt(t.body), t.hint), fgt(t.arg))
    if tt is Lam:
        return Lam(fgt(t.body), t.hint)
    if tt is App:
        return App(fgt(t.fun), fgt(t.arg))
    return t


def fgt_preimages(t: Node) -> set[Node]:
    """Every marking of a subset of the applied abstractions of ``t``."""
    tt = type(t)
    if tt is Lam:
        return {Lam(b, t.hint) for b in fgt_preimages(t.body)}
    if tt is App:
        args = fgt_preimages(t.arg)
        out = {App(f, a) for f in fgt_preimages(t.fun) for a in args}
        if type(t.fun) is Lam:
            out |= {Ml(b, a, t.fun.hint) for b in fgt_preimages(t.fun.body) for a in args}
        return out
    return {t}


def has_marked_subterm(t: Node) -> bool:
    return contains(t, Ml)


# --------------------------------------------------------------------------
# beta_III split into Gred / Knco / Kaco


def _root_kind(body: Node, arg: Node) -> StepKind:
    # βbk when the binder is dead and the discarded argument carries a mark
    if not occurs_loose(body, 0) and has_marked_subterm(arg):
        return StepKind.KNCO
    return StepKind.GRED


def bet3_steps(t: Node) -> set[tuple[StepKind, Node]]:
    """All one-step beta_III reducts, each tagged with its kind."""
    out: set = set()
    _bet3(t, lambda k, r: out.add((k, r)))
    return out


def _bet3(t: Node, emit) -> None:
    tt = type(t)
    if tt is App:
        f, a = t.fun, t.arg
        if type(f) is Lam:
            emit(_root_kind(f.body, a), instantiate(f.body, a))
        _bet3(f, lambda k, r: emit(k, App(r, a)))
        _bet3(a, lambda k, r: emit(k, App(f, r)))
    elif tt is Lam:
        _bet3(t.body, lambda k, r: emit(k, Lam(r, t.hint)))
    elif tt is Ml:
        emit(_root_kind(t.body, t.arg), instantiate(t.body, t.arg))
        _bet3(t.arg, lambda k, r: emit(k, Ml(t.body, r, t.hint)))
        _bet3(t.body, lambda k, r: emit(StepKind.KACO, Ml(r, t.arg, t.hint)))


def bet3_reducts(t: Node) -> set[Node]:
    return {r for _, r in bet3_steps(t)}


def steps_of_kind(t: Node, *kinds: StepKind) -> set[Node]:
    return {r for k, r in bet3_steps(t) if k in kinds}


def gred_steps(t: Node) -> set[Node]:
    return steps_of_kind(t, StepKind.GRED)


# --------------------------------------------------------------------------
# sigma_m and activ


def _sigmm_root(t: Node) -> Optional[Node]:
    # ml x M (ml y N P) -> ml y (ml x M N) P
    if type(t) is Ml and type(t.arg) is Ml:
        inner = t.arg
        return Ml(Ml(shift(t.body, 1, 1), inner.body, t.hint), inner.arg, inner.hint)
    return None


def sigmm_activ_steps(t: Node) -> set[tuple[StepKind, Node]]:
    """One-step sigma_m / activ reducts (closed under every context)."""
    out: set = set()
    _sa(t, lambda k, r: out.add((k, r)))
    return out


def _sa(t: Node, emit) -> None:
    tt = type(t)
    if tt is App:
        f, a = t.fun, t.arg
        if type(f) is Lam:
            emit(StepKind.ACTIV, Ml(f.body, a, f.hint))
        _sa(f, lambda k, r: emit(k, App(r, a)))
        _sa(a, lambda k, r: emit(k, App(f, r)))
    elif tt is Lam:
        _sa(t.body, lambda k, r: emit(k, Lam(r, t.hint)))
    elif tt is Ml:
        r = _sigmm_root(t)
        if r is not None:
            emit(StepKind.SIGMM, r)
        _sa(t.arg, lambda k, r: emit(k, Ml(t.body, r, t.hint)))
        _sa(t.body, lambda k, r: emit(k, Ml(r, t.arg, t.hint)))


def sigmm_activ_reducts(t: Node) -> set[Node]:
    return {r for _, r in sigmm_activ_steps(t)}


# --------------------------------------------------------------------------
# relation views

BET3 = RelView(bet3_reducts, "βIII")
GRED = RelView(gred_steps, "gred")
KNCO = RelView(lambda t: steps_of_kind(t, StepKind.KNCO), "knco")
KACO = RelView(lambda t: steps_of_kind(t, StepKind.KACO), "kaco")
SIGMM_ACTIV = RelView(sigmm_activ_reducts, "σm∪activ")


def redex_path_is_weak(t: Node, kind: StepKind) -> bool:
    """Every ``kind`` step of ``t`` happens outside marked bodies.

    Recomputes the steps position by position: a Gred/Knco step must be found
    by descending only through weak-closure positions.
    """
    weak = set()

    def go(t, wrap):
        tt = type(t)
        if tt is App:
            if type(t.fun) is Lam and _root_kind(t.fun.body, t.arg) is kind:
                weak.add(wrap(instantiate(t.fun.body, t.arg)))
            go(t.fun, lambda r: wrap(App(r, t.arg)))
            go(t.arg, lambda r: wrap(App(t.fun, r)))
        elif tt is Lam:
            go(t.body, lambda r: wrap(Lam(r, t.hint)))
        elif tt is Ml:
            if _root_kind(t.body, t.arg) is kind:
                weak.add(wrap(instantiate(t.body, t.arg)))
            go(t.arg, lambda r: wrap(Ml(t.body, r, t.hint)))

    go(t, lambda r: r)
    return steps_of_kind(t, kind) <= weak


# --------------------------------------------------------------------------
# lemma suites


def _corpus(size_bound: int, pool=("x", "y", "z")) -> list[Node]:
    from adjourn.harness import EnumSpec, enumerate_terms

    return list(enumerate_terms(EnumSpec("marked", size_bound, tuple(pool))))


def _diagram(name: str, terms: Iterable[Node], first: RelView, second: RelView,
             lead: RelView, tail: RelView, depth: int, min_tail: int) -> Report:
    """Check ``first ; second ⊆ lead ; tail^{min_tail..depth}`` on ``terms``."""
    from adjourn.report import Counterexample

    rep = Report(name, {"depth": depth})
    for m in terms:
        leads = lead(m)
        for n in first(m):
            for p in second(n):
                if leads:
                    status, _ = arl.search(tail, leads, lambda s, p=p: s == p, depth, min_steps=min_tail)
                else:
                    status = arl.EXHAUSTED
                if status == arl.FOUND:
                    rep.close()
                elif status == arl.EXHAUSTED:
                    rep.fail(Counterexample(m, f"{first.label} then {second.label}",
                                            f"{lead.label} then {tail.label}", depth,
                                            (m, n, p), (first.label, second.label)))
                else:
                    rep.skip()
    return rep


def check_marked_lemmas(size_bound: int, depth: int = arl.DEFAULT_COMPLETION_DEPTH,
                        terms: Optional[list[Node]] = None) -> Report:
    """Highest-marker, knco, kaco, sigma_m/gred and strong adjournment suites."""
    start = time.perf_counter()
    terms = _corpus(size_bound) if terms is None else terms
    rep = Report("marked-lemmas", {"size": size_bound, "depth": depth, "terms": len(terms)})

    a = Report("highestmarker")
    for t in terms:
        if not has_marked_subterm(t):
            continue
        if gred_steps(t):
            a.close()
        else:
            from adjourn.report import Counterexample
            a.fail(Counterexample(t, "marked subterm present", "a gred step"))
    rep.absorb(a, "highestmarker")

    gred = arl.cached(GRED)
    bet3 = arl.cached(BET3)
    sa = arl.cached(SIGMM_ACTIV)
    ident = RelView(lambda s: (s,), "id")
    # knco ⊆ gred ; knco  (tail of exactly one knco step)
    rep.absorb(_diagram("knco", terms, KNCO, ident, gred, KNCO, 1, 1), "knco")
    rep.absorb(_diagram("kaco", terms, KACO, gred, gred, bet3, depth, 1), "kaco")
    rep.absorb(_diagram("sigmgred", terms, sa, gred, gred, sa, depth, 0), "sigmgred")
    adj = arl.check_adjournment(bet3, gred, terms, depth, strong=True, close=False)
    rep.absorb(adj, "betgred")
    rep.seconds = time.perf_counter() - start
    return rep


def check_fgt_simulations(size_bound: int, depth: int = arl.DEFAULT_COMPLETION_DEPTH,
                          terms: Optional[list[Node]] = None) -> Report:
    """beta_III by beta through fgt; beta by beta_III and sigma by sigma_m/activ through fgt⁻¹."""
    from adjourn.harness import EnumSpec, enumerate_terms

    start = time.perf_counter()
    if terms is None:
        terms = list(enumerate_terms(EnumSpec("lambda", size_bound, ("x", "y", "z"))))
    rep = Report("fgt-simulation", {"size": size_bound, "depth": depth, "terms": len(terms)})
    beta = arl.cached(BETA)
    bet3 = arl.cached(BET3)
    sa = arl.cached(SIGMM_ACTIV)
    pre_pairs = [(m, p) for m in terms for p in fgt_preimages(m)]

    fwd = arl.check_strong_simulation(bet3, beta, [(p, m) for m, p in pre_pairs],
                                      lambda mt, lt: fgt(mt) == lt, depth)
    rep.absorb(fwd, "βIII by β through fgt")
    back = arl.check_strong_simulation(beta, bet3, pre_pairs, lambda lt, mt: fgt(mt) == lt, depth)
    rep.absorb(back, "β by βIII through fgt⁻¹")
    sig = arl.check_strong_simulation(arl.cached(SIGMA), sa, pre_pairs, lambda lt, mt: fgt(mt) == lt, depth)
    rep.absorb(sig, "σ by σm∪activ through fgt⁻¹")
    rep.seconds = time.perf_counter() - start
    return rep
