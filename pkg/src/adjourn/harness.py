"""Term enumeration, random relations and suite orchestration."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional

from adjourn import arl
from adjourn.report import Counterexample, Report
from adjourn.syntax import BVar, Node, Var

HARD_CAP = {"lambda": 9, "marked": 8, "ljq": 7}
CALCULI = tuple(HARD_CAP)


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class EnumSpec:
    calculus: str
    max_size: int
    free_pool: tuple[str, ...] = ("x", "y", "z")
    closed_only: bool = False

    def __post_init__(self):
        if self.calculus not in HARD_CAP:
            raise ValueError(f"unknown calculus {self.calculus!r}; expected one of {CALCULI}")
        if self.max_size > HARD_CAP[self.calculus]:
            raise CapExceeded(
                f"max_size {self.max_size} exceeds the cap {HARD_CAP[self.calculus]} for {self.calculus}")
        object.__setattr__(self, "free_pool", tuple(self.free_pool))

    @property
    def pool(self) -> tuple[str, ...]:
        return () if self.closed_only else self.free_pool


# Binder hints are taken by depth from letters outside the usual free pool so
# that printed terms stay readable.
_HINTS = "abcdefghijklmnopqrstuvw"


def _hint(depth: int, pool) -> str:
    letters = [c for c in _HINTS if c not in pool]
    return letters[depth % len(letters)] + ("'" * (depth // len(letters)))


def enumerate_terms(spec: EnumSpec) -> Iterator[Node]:
    """Every term of size ``<= max_size`` over the pool, in size order.

    For lambda-LJQ both syntactic categories are produced (values first
    within each size).  Terms are generated directly in locally nameless
    form, so each alpha-class appears once.
    """
    gen = _Gen(spec.calculus, spec.pool)
    for n in range(1, spec.max_size + 1):
        if spec.calculus == "ljq":
            yield from gen.value(n, 0)
            yield from gen.term(n, 0)
        else:
            yield from gen.lam(n, 0)


def count_terms(spec: EnumSpec) -> int:
    return sum(1 for _ in enumerate_terms(spec))


class _Gen:
    def __init__(self, calculus: str, pool):
        self.calculus = calculus
        self.pool = tuple(pool)
        self.lam = lru_cache(maxsize=None)(self._lam)
        self.value = lru_cache(maxsize=None)(self._value)
        self.term = lru_cache(maxsize=None)(self._term)

    def vars(self, depth: int) -> tuple[Node, ...]:
        return tuple(BVar(i) for i in range(depth)) + tuple(Var(p) for p in self.pool)

    def _lam(self, n: int, depth: int) -> tuple[Node, ...]:
        from adjourn.lam import App, Lam
        from adjourn.marked import Ml

        out: list[Node] = []
        if n == 1:
            out.extend(self.vars(depth))
        if n >= 2:
            h = _hint(depth, self.pool)
            out.extend(Lam(b, h) for b in self.lam(n - 1, depth + 1))
        for a in range(1, n):
            for f in self.lam(a, depth):
                for x in self.lam(n - a, depth):
                    out.append(App(f, x))
        if self.calculus == "marked":
            h = _hint(depth, self.pool)
            for b in range(1, n - 1):
                for body in self.lam(b, depth + 1):
                    for arg in self.lam(n - 1 - b, depth):
                        out.append(Ml(body, arg, h))
        return tuple(out)

    def _value(self, n: int, depth: int) -> tuple[Node, ...]:
        from adjourn.ljq import VLam, VSub

        out: list[Node] = []
        h = _hint(depth, self.pool)
        if n == 1:
            out.extend(self.vars(depth))
        if n >= 2:
            out.extend(VLam(b, h) for b in self.term(n - 1, depth + 1))
        for a in range(1, n - 1):
            for v in self.value(a, depth):
                for w in self.value(n - 1 - a, depth + 1):
                    out.append(VSub(v, w, h))
        return tuple(out)

    def _term(self, n: int, depth: int) -> tuple[Node, ...]:
        from adjourn.ljq import Ap, Cst, Cut, TSub

        out: list[Node] = [Cst(v) for v in self.value(n, depth)]
        h = _hint(depth, self.pool)
        heads = self.vars(depth)
        # x(V; y. N): head weighs 1
        for a in range(1, n - 1):
            for v in self.value(a, depth):
                for c in self.term(n - 1 - a, depth + 1):
                    out.extend(Ap(x, v, c, h) for x in heads)
        for a in range(1, n - 1):
            for v in self.value(a, depth):
                for m in self.term(n - 1 - a, depth + 1):
                    out.append(TSub(v, m, h))
            for m in self.term(a, depth):
                for r in self.term(n - 1 - a, depth + 1):
                    out.append(Cut(m, r, h))
        return tuple(out)


# --------------------------------------------------------------------------
# random finite relations


@dataclass
class RelationSample:
    """Two random relations over ``range(n_states)`` with hypothesis tags."""

    n_states: int
    r1: arl.FiniteRelation
    r2: arl.FiniteRelation
    tags: dict = field(default_factory=dict)

    @property
    def states(self) -> frozenset:
        return frozenset(range(self.n_states))

    def views(self) -> tuple[arl.RelView, arl.RelView]:
        return self.r1.view("->1", self.states), self.r2.view("->2", self.states)

    def dumps(self) -> str:
        return (f"# n={self.n_states} tags={json.dumps(self.tags, sort_keys=True)}\n"
                f"# r1\n{self.r1.dumps()}# r2\n{self.r2.dumps()}")


def _edges(rng: random.Random, n: int, density: float, acyclic: bool) -> arl.FiniteRelation:
    pairs = [(a, b) for a in range(n) for b in range(n)
             if (not acyclic or a < b) and rng.random() < density]
    return arl.FiniteRelation.from_pairs(pairs, range(n))


def tag_hypotheses(r1: arl.RelView, r2: arl.RelView, states: frozenset) -> dict:
    """Which theorem hypotheses a finite pair satisfies (decided exhaustively)."""
    n = len(states)
    sn1 = arl.SnOracle(r1)
    terminating = all(sn1.classify(s).is_sn for s in states)
    depth = n + 1
    weak = arl.check_adjournment(r1, r2, states, depth, strong=False, close=False)
    strong = arl.check_adjournment(r1, r2, states, depth, strong=True, close=False)
    stable = all(sn1.classify(t).is_sn for s in states if sn1.classify(s).is_sn for t in r2(s))
    return {
        "r1_terminating": terminating,
        "adjournable": weak.ok and not weak.skipped,
        "strongly_adjournable": strong.ok and not strong.skipped,
        "sn1_stable": stable,
        "nf2_in_nf1": all(r2(s) or not r1(s) for s in states),
    }


def random_finite_relations(n_states: int, density: float, seed: int,
                            count: Optional[int] = None) -> Iterator[RelationSample]:
    """Seeded stream of relation pairs over ``n_states`` states.

    Half of the first relations are drawn acyclic (edges ``a -> b`` with
    ``a < b`` only) so that hypotheses needing a terminating ``->1`` are hit
    often enough.
    """
    if not 1 <= n_states <= 8:
        raise ValueError("n_states must be between 1 and 8")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    produced = 0
    while count is None or produced < count:
        r1 = _edges(rng, n_states, density, acyclic=rng.random() < 0.5)
        r2 = _edges(rng, n_states, density, acyclic=False)
        sample = RelationSample(n_states, r1, r2)
        v1, v2 = sample.views()
        sample.tags = tag_hypotheses(v1, v2, sample.states)
        produced += 1
        yield sample


def _vacuous(rep: Report) -> bool:
    return any(n.startswith("hypothesis") for n in rep.notes)


def check_abstract_theorems(samples: int = 1000, max_states: int = 6, seed: int = 0) -> Report:
    """Adjournment, adjbound, lexic, lexicographic termination and simlengbound
    on seeded random finite relations."""
    start = time.perf_counter()
    rep = Report("abstract-theorems", {"samples": samples, "max_states": max_states, "seed": seed})
    rng = random.Random(seed)
    parts = {k: Report(k) for k in
             ("adjournment theorem", "adjbound", "lexic", "lex termination", "simlengbound")}
    hyp = {k: 0 for k in parts}
    for i in range(samples):
        n = rng.randint(1, max_states)
        density = rng.choice((0.1, 0.2, 0.3, 0.4))
        sample = next(random_finite_relations(n, density, rng.randrange(2**32), count=1))
        v1, v2 = sample.views()
        states = sample.states
        depth = n + 1
        checks = {
            "adjournment theorem": arl.check_adjournment_theorem(v1, v2, states, completion_depth=depth),
            "adjbound": arl.check_theorem_adjbound(v1, v2, states, completion_depth=depth),
            "lexic": arl.check_lemma_lexic(v1, v2, states),
            "lex termination": arl.check_lex_termination([v1, v2]),
        }
        rel = sorted((a, b) for a in states for b in states if rng.random() < 0.3)
        checks["simlengbound"] = arl.check_simlengbound(v1, v2, rel, k_max=n + 1)
        for name, r in checks.items():
            if _vacuous(r):
                continue
            hyp[name] += 1
            for c in r.counterexamples:
                c.trace = c.trace + (sample.dumps(),)
            parts[name].absorb(r)
    for name, r in parts.items():
        r.notes.clear()
        rep.absorb(r, name)
    rep.params["hypothesis_satisfied"] = hyp
    rep.seconds = time.perf_counter() - start
    return rep


# --------------------------------------------------------------------------
# worked examples: forbidden reductions and the allowed near-cycle

EX_W = "\\u. <u>"
EX1_START = f"let z = (let y = <{EX_W}> in y(v; w. <w>)) in <z>"
# the two reductions that the side conditions forbid
EX1_FORBIDDEN = (
    (EX1_START, f"let y = <{EX_W}> in let z = y(v; w. <w>) in <z>"),
    (f"let y = <{EX_W}> in y(v; w. <w>)", f"y(v; w. <w>) [y := {EX_W}]"),
)
# the diagram: both branches lead back to the start shape
EX1_DIAGRAM = (
    (EX1_START, f"let y = <{EX_W}> in let z = y(v; w. <w>) in <z>"),
    (f"let y = <{EX_W}> in let z = y(v; w. <w>) in <z>",
     f"(let z = y(v; w. <w>) in <z>) [y := {EX_W}]"),
    (f"(let z = y(v; w. <w>) in <z>) [y := {EX_W}]",
     f"let z = y(v; w. <w>) [y := {EX_W}] in <z> [y := {EX_W}]"),
    (f"let z = y(v; w. <w>) [y := {EX_W}] in <z> [y := {EX_W}]",
     f"let z = (let y = <{EX_W}> in y(v; w. <w>)) in <z> [y := {EX_W}]"),
    (EX1_START, f"let z = y(v; w. <w>) [y := {EX_W}] in <z>"),
    (f"let z = y(v; w. <w>) [y := {EX_W}] in <z>", EX1_START),
)

# N = y(x; q. <q>) is a y-covalue mentioning x; V = v is pushed into it
EX2_STAGES = {
    "T0": f"(let z = (let y = <{EX_W}> in y(x; q. <q>)) in <z>) [x := v]",
    "T1": f"let z = (let y = <{EX_W}> in y(x; q. <q>) [x := v]) in <z> [x := v]",
    "T2a": f"let y = <{EX_W}> in let z = y(x; q. <q>) [x := v] in <z> [x := v]",
    "T3a": f"let y = <{EX_W}> in let z = y(v; q. <q>) in <z> [x := v]",
    "T4a": f"(let z = y(v; q. <q>) in <z> [x := v]) [y := {EX_W}]",
    "T5a": f"let z = y(v; q. <q>) [y := {EX_W}] in <z> [x := v] [y := {EX_W}]",
    "T6a": f"let z = (let y = <{EX_W}> in y(v; q. <q>)) in <z> [x := v] [y := {EX_W}]",
    "T2b": f"let z = y(x; q. <q>) [x := v] [y := {EX_W}] in <z> [x := v]",
    "T3b": f"let z = y(v; q. <q>) [y := {EX_W}] in <z> [x := v]",
    "T4b": f"let z = (let y = <{EX_W}> in y(v; q. <q>)) in <z> [x := v]",
}
EX2_CHAIN = (("T0", "T1"), ("T1", "T2a"), ("T2a", "T3a"), ("T3a", "T4a"), ("T4a", "T5a"),
             ("T5a", "T6a"), ("T1", "T2b"), ("T2b", "T3b"), ("T3b", "T4b"))


def _rule_between(a: Node, b: Node, relaxed: bool) -> str:
    from adjourn.ljq import ljq_rule_steps

    return ",".join(sorted(str(r) for r, t in ljq_rule_steps(a, relaxed) if t == b)) or "?"


def find_relaxed_cycle(start: Node, depth: int = 6) -> Optional[list[Node]]:
    """Shortest relaxed-mode reduction path from ``start`` back to itself."""
    from adjourn.ljq import LJQ_RELAXED

    status, path = arl.search(arl.cached(LJQ_RELAXED), [start], lambda s: s == start, depth, min_steps=1)
    return path if status == arl.FOUND else None


def check_relaxed_cycle(depth: int = 6, node_budget: int = arl.DEFAULT_NODE_BUDGET) -> Report:
    """The let/explicit-substitution loop exists only without the side conditions."""
    from adjourn.ljq import LJQ, RELAXED_RULES, ljq_rule_steps, ljq_steps, parse_ljq
    from adjourn.ljq import show as show_ljq

    start_time = time.perf_counter()
    rep = Report("examples-relaxed-cycle", {"depth": depth})
    start = parse_ljq(EX1_START)

    cyc = Report("relaxed cycle")
    path = find_relaxed_cycle(start, depth)
    if path is None:
        cyc.fail(Counterexample(start, f"relaxed search to depth {depth}", "a cycle through the start term",
                                depth))
    else:
        rules = [_rule_between(a, b, True) for a, b in zip(path, path[1:])]
        forbidden = [i for i, (a, b) in enumerate(zip(path, path[1:]))
                     if b not in ljq_steps(a) and any(r in RELAXED_RULES for r, t in ljq_rule_steps(a, True)
                                                        if t == b)]
        rep.params["cycle"] = [show_ljq(s) for s in path]
        rep.params["cycle_rules"] = rules
        if forbidden:
            cyc.close()
        else:
            cyc.fail(Counterexample(start, "cycle", "uses a step the side conditions forbid", trace=tuple(path)))
    rep.absorb(cyc, "relaxed cycle")

    diag = Report("diagram edges")
    relaxed = arl.cached(arl.RelView(lambda t: ljq_steps(t, True), "ljq-relaxed"))
    for a_txt, b_txt in EX1_DIAGRAM:
        a, b = parse_ljq(a_txt), parse_ljq(b_txt)
        status, _ = arl.search(relaxed, [a], lambda s, b=b: s == b, depth, min_steps=1)
        if status == arl.FOUND:
            diag.close()
        else:
            diag.fail(Counterexample(a, "relaxed ->+", b_txt, depth))
    rep.absorb(diag, "diagram edges")

    strict = Report("strict")
    for a_txt, b_txt in EX1_FORBIDDEN:
        a, b = parse_ljq(a_txt), parse_ljq(b_txt)
        if b in ljq_steps(a):
            strict.fail(Counterexample(a, "strict step", f"not -> {b_txt}"))
        elif b in ljq_steps(a, True):
            strict.close()
        else:
            strict.fail(Counterexample(a, "relaxed step", f"-> {b_txt}"))
    verdict = arl.sn_classify(LJQ, start, node_budget)
    rep.params["strict_verdict"] = str(verdict)
    if verdict.is_sn:
        strict.close()
    elif verdict.kind is arl.Verdict.UNKNOWN:
        strict.skip()
    else:
        strict.fail(Counterexample(start, "strict reduction graph", "acyclic", trace=tuple(verdict.witness)))
    rep.absorb(strict, "strict")
    rep.seconds = time.perf_counter() - start_time
    return rep


def check_example_orderings(node_budget: int = arl.DEFAULT_NODE_BUDGET, depth: int = 10) -> Report:
    """LPO verdicts claimed for the two worked examples."""
    from adjourn.folpo import LabelOrder, Lpo, foc
    from adjourn.ljq import LJQ, parse_ljq

    start_time = time.perf_counter()
    rep = Report("examples-ordering", {"depth": depth})
    lpo = Lpo(LabelOrder(node_budget))

    non = Report("non-decreases")
    for a_txt, b_txt in EX1_FORBIDDEN:
        a, b = parse_ljq(a_txt), parse_ljq(b_txt)
        if lpo.gt(foc(a), foc(b)):
            non.fail(Counterexample(a, f"forbidden step to {b_txt}", "foc does not decrease"))
        else:
            non.close()
    rep.absorb(non, "non-decreases")

    stages = {k: parse_ljq(v) for k, v in EX2_STAGES.items()}
    strict = arl.cached(LJQ)
    dec = Report("decreases")
    reach = Report("reachable")
    verdicts = {}
    for a, b in EX2_CHAIN:
        ok = lpo.gt(foc(stages[a]), foc(stages[b]))
        verdicts[f"{a}>{b}"] = ok
        if ok:
            dec.close()
        else:
            dec.fail(Counterexample(stages[a], f"{a} -> {b}", "foc decreases", trace=(stages[a], stages[b])))
        status, _ = arl.search(strict, [stages[a]], lambda s, t=stages[b]: s == t, depth, min_steps=1)
        if status == arl.FOUND:
            reach.close()
        else:
            reach.fail(Counterexample(stages[a], f"strict ->+ {b}", EX2_STAGES[b], depth))
    rep.params["decreases"] = verdicts
    rep.absorb(dec, "decreases")
    rep.absorb(reach, "reachable")
    rep.seconds = time.perf_counter() - start_time
    return rep


# --------------------------------------------------------------------------
# lambda-calculus suites


def check_sigma_measure(size_bound: int = 7, classify_up_to: int = 6,
                        node_budget: int = arl.DEFAULT_NODE_BUDGET) -> Report:
    """Each sigma step lowers the count of non-nested lambda pairs.

    Part ``exact`` tests the decrease is exactly one, part ``decrease`` that
    it is at least one, part ``sn`` classifies sigma on terms up to
    ``classify_up_to``.
    """
    from adjourn.lam import SIGMA, _sigma, nonnested_lambda_pairs

    start = time.perf_counter()
    rep = Report("sigma-measure", {"size": size_bound})
    exact, dec, sn = Report("exact"), Report("decrease"), Report("sn")
    oracle = arl.SnOracle(SIGMA, node_budget)
    for t in enumerate_terms(EnumSpec("lambda", size_bound)):
        reducts: list[Node] = []
        _sigma(t, reducts.append)
        if not reducts:
            continue
        before = nonnested_lambda_pairs(t)
        for r in reducts:
            drop = before - nonnested_lambda_pairs(r)
            if drop == 1:
                exact.close()
            else:
                exact.fail(Counterexample(t, f"σ (measure {before} -> {before - drop})", "decrease by 1",
                                          trace=(t, r)))
            if drop >= 1:
                dec.close()
            else:
                dec.fail(Counterexample(t, f"σ (measure {before} -> {before - drop})", "decrease",
                                        trace=(t, r)))
        if _size(t) <= classify_up_to:
            v = oracle.classify(t)
            if v.is_sn:
                sn.close()
            elif v.kind is arl.Verdict.UNKNOWN:
                sn.skip()
            else:
                sn.fail(Counterexample(t, "σ reduction graph", "SN", trace=tuple(v.witness)))
    for name, part in (("exact", exact), ("decrease", dec), ("sn", sn)):
        rep.absorb(part, name)
    rep.seconds = time.perf_counter() - start
    return rep


def _size(t: Node) -> int:
    from adjourn.syntax import size

    return size(t)


def check_prop1(size_bound: int = 6, node_budget: int = arl.DEFAULT_NODE_BUDGET) -> Report:
    """beta-SN terms are sigma-beta-SN; Unknown verdicts are skipped."""
    from adjourn.lam import BETA, SIGMA_BETA

    start = time.perf_counter()
    rep = Report("prop1", {"size": size_bound, "node_budget": node_budget})
    beta, sb = arl.SnOracle(BETA, node_budget), arl.SnOracle(SIGMA_BETA, node_budget)
    corpus = non_sn = 0
    for t in enumerate_terms(EnumSpec("lambda", size_bound)):
        corpus += 1
        vb = beta.classify(t)
        if vb.kind is arl.Verdict.UNKNOWN:
            rep.skip()
            continue
        if not vb.is_sn:
            non_sn += 1
            continue
        v = sb.classify(t)
        if v.is_sn:
            rep.close()
        elif v.kind is arl.Verdict.UNKNOWN:
            rep.skip()
        else:
            rep.fail(Counterexample(t, "σβ reduction graph", "SN (β-SN term)", node_budget,
                                    trace=tuple(v.witness)))
    rep.params.update(corpus=corpus, beta_non_sn=non_sn,
                      unknown_ratio=round(rep.skipped / corpus, 6) if corpus else 0.0)
    rep.seconds = time.perf_counter() - start
    return rep


def check_typed_beta_sn(size_bound: int = 6, node_budget: int = arl.DEFAULT_NODE_BUDGET) -> Report:
    """Simply typable terms are beta-SN (bounded-search oracle)."""
    from adjourn.lam import BETA, infer_simple_type

    start = time.perf_counter()
    rep = Report("typed-beta-sn", {"size": size_bound})
    beta = arl.SnOracle(BETA, node_budget)
    for t in enumerate_terms(EnumSpec("lambda", size_bound)):
        if infer_simple_type(t) is None:
            continue
        v = beta.classify(t)
        if v.is_sn:
            rep.close()
        elif v.kind is arl.Verdict.UNKNOWN:
            rep.skip()
        else:
            rep.fail(Counterexample(t, "β reduction graph", "SN (typable term)", trace=tuple(v.witness)))
    rep.seconds = time.perf_counter() - start
    return rep


# --------------------------------------------------------------------------
# lambda-LJQ suites


def check_typed_ljq_sn(size_bound: int = 5, node_budget: int = arl.DEFAULT_NODE_BUDGET) -> Report:
    """Every typable lambda-LJQ term is SN under the strict rules."""
    from adjourn.ljq import LJQ, ljq_steps, typecheck_open

    start = time.perf_counter()
    rep = Report("typed-ljq-sn", {"size": size_bound})
    oracle = arl.SnOracle(LJQ, node_budget)
    # subject reduction is not claimed as a theorem: violations are only counted
    sr_checked = sr_violations = 0
    for t in enumerate_terms(EnumSpec("ljq", size_bound)):
        ty = typecheck_open(t)
        if ty is None:
            continue
        for t2 in ljq_steps(t):
            sr_checked += 1
            if typecheck_open(t2) != ty:
                sr_violations += 1
        v = oracle.classify(t)
        if v.is_sn:
            rep.close()
        elif v.kind is arl.Verdict.UNKNOWN:
            rep.skip()
        else:
            rep.fail(Counterexample(t, "λLJQ reduction graph", "SN (typable term)", trace=tuple(v.witness)))
    rep.params.update(subject_reduction_checked=sr_checked, subject_reduction_violations=sr_violations)
    if sr_violations:
        rep.notes.append(f"type not preserved on {sr_violations} of {sr_checked} steps")
    rep.seconds = time.perf_counter() - start
    return rep


def check_foc_suite(size_bound: int = 5, node_budget: int = arl.DEFAULT_NODE_BUDGET) -> Report:
    from adjourn.folpo import check_foc_decrease

    start = time.perf_counter()
    rep = Report("foc-decrease", {"size": size_bound})
    dec = check_foc_decrease(size_bound, node_budget=node_budget)
    sandwich = dec.parts.pop("sandwich", None)
    rep.absorb(dec, "decrease")
    if sandwich is not None:
        rep.parts["sandwich"] = sandwich
    rep.absorb(check_typed_ljq_sn(size_bound, node_budget), "typed-sn")
    rep.seconds = time.perf_counter() - start
    return rep


def check_lpo_suite(size_bound: int = 5, triples: int = 10_000, seed: int = 0,
                    node_budget: int = arl.DEFAULT_NODE_BUDGET) -> Report:
    """Ordering sanity on every encoding met while checking the decrease."""
    from adjourn.folpo import LabelOrder, Lpo, check_foc_decrease, check_lpo_sanity

    start = time.perf_counter()
    lpo = Lpo(LabelOrder(node_budget))
    edges: list = []
    check_foc_decrease(size_bound, node_budget=node_budget, lpo=lpo, collect=edges)
    terms = list(dict.fromkeys(t for e in edges for t in e))
    rep = check_lpo_sanity(terms, edges, triples, seed, lpo)
    rep.params["size"] = size_bound
    rep.seconds = time.perf_counter() - start
    return rep


def check_examples(node_budget: int = arl.DEFAULT_NODE_BUDGET) -> Report:
    start = time.perf_counter()
    rep = Report("examples")
    cyc = check_relaxed_cycle(node_budget=node_budget)
    rep.params.update({k: v for k, v in cyc.params.items() if k != "depth"})
    rep.absorb(cyc, "example 1")
    order = check_example_orderings(node_budget)
    rep.params["decreases"] = order.params["decreases"]
    rep.absorb(order, "orderings")
    rep.parts = {f"example 1/{k}": v for k, v in cyc.parts.items()}
    rep.parts.update({f"orderings/{k}": v for k, v in order.parts.items()})
    rep.seconds = time.perf_counter() - start
    return rep


# --------------------------------------------------------------------------
# registry


def _marked_lemmas(size_bound: int = 6, depth: int = arl.DEFAULT_COMPLETION_DEPTH) -> Report:
    from adjourn.marked import check_marked_lemmas

    return check_marked_lemmas(size_bound, depth)


def _fgt(size_bound: int = 5, depth: int = arl.DEFAULT_COMPLETION_DEPTH) -> Report:
    from adjourn.marked import check_fgt_simulations

    return check_fgt_simulations(size_bound, depth)


def _stability(size_bound: int = 5) -> Report:
    from adjourn.ljq import check_stability

    start = time.perf_counter()
    rep = check_stability(size_bound)
    rep.seconds = time.perf_counter() - start
    return rep


def _ql(size_bound: int = 5, node_budget: int = arl.DEFAULT_NODE_BUDGET) -> Report:
    from adjourn.ljq import check_ql_simulation

    start = time.perf_counter()
    rep = check_ql_simulation(size_bound, node_budget=node_budget)
    rep.seconds = time.perf_counter() - start
    return rep


# name -> (runner, accepted params mapped to runner keywords)
SUITES: dict[str, tuple[Callable[..., Report], dict[str, str]]] = {
    "sigma-measure": (check_sigma_measure, {"size": "size_bound", "budget": "node_budget"}),
    "prop1": (check_prop1, {"size": "size_bound", "budget": "node_budget"}),
    "typed-beta-sn": (check_typed_beta_sn, {"size": "size_bound", "budget": "node_budget"}),
    "marked-lemmas": (_marked_lemmas, {"size": "size_bound", "depth": "depth"}),
    "fgt-simulation": (_fgt, {"size": "size_bound", "depth": "depth"}),
    "ljq-stability": (_stability, {"size": "size_bound"}),
    "ql-simulation": (_ql, {"size": "size_bound", "budget": "node_budget"}),
    "foc-decrease": (check_foc_suite, {"size": "size_bound", "budget": "node_budget"}),
    "lpo-sanity": (check_lpo_suite, {"size": "size_bound", "triples": "triples", "seed": "seed",
                                     "budget": "node_budget"}),
    "examples-relaxed-cycle": (check_relaxed_cycle, {"depth": "depth", "budget": "node_budget"}),
    "examples": (check_examples, {"budget": "node_budget"}),
    "abstract-theorems": (check_abstract_theorems, {"samples": "samples", "states": "max_states",
                                                    "seed": "seed"}),
}


class UnknownSuite(KeyError):
    pass


def run_suite(name: str, params: Optional[dict] = None, report_path: Optional[str] = None) -> Report:
    """Run a registered suite; ``params`` uses the CLI names (size, depth, budget, ...).

    Parameters a suite does not take are rejected.  With ``report_path`` the
    JSON report is written there as well.
    """
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    runner, accepted = SUITES[name]
    kwargs = {}
    for key, value in (params or {}).items():
        if value is None:
            continue
        if key not in accepted:
            raise ValueError(f"suite {name!r} does not take parameter {key!r}")
        kwargs[accepted[key]] = value
    start = time.perf_counter()
    rep = runner(**kwargs)
    rep.suite = name
    rep.seconds = rep.seconds or time.perf_counter() - start
    if report_path:
        with open(report_path, "w", encoding="utf-8") as fh:
            fh.write(rep.dumps(render))
    return rep


def render(x) -> str:
    """Human-readable form of anything a report may hold."""
    from adjourn.folpo import FoTerm
    from adjourn.folpo import show as show_fo

    if isinstance(x, Node):
        return show_any(x)
    if isinstance(x, FoTerm):
        return show_fo(x)
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(render(y) for y in x) + ")"
    return str(x)


def show_any(t: Node) -> str:
    """Print a term with the printer of the calculus it belongs to."""
    from adjourn import lam, ljq, marked
    from adjourn.syntax import contains, subterms

    ljq_nodes = (ljq.VLam, ljq.VSub, ljq.Cst, ljq.Ap, ljq.TSub, ljq.Cut)
    if any(isinstance(s, ljq_nodes) for s in subterms(t)):
        return ljq.show(t)
    if contains(t, marked.Ml):
        return marked.show(t)
    return lam.show(t)

