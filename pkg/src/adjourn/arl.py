"""Abstract reduction systems.

A reduction relation is presented by its successor function (``RelView``).
On top of that: normal forms, strong-normalisation classification by graph
exploration, lexicographic products, and bounded checkers for the diagram
properties used in termination proofs (adjournment, simulation, ...).

Every checker returns a :class:`~adjourn.report.Report`.  An exhausted budget
is never reported as a failure: it counts as skipped.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

from adjourn.report import Counterexample, Report

DEFAULT_NODE_BUDGET = 200_000
DEFAULT_COMPLETION_DEPTH = 8

State = Hashable


class BudgetIndecision(RuntimeError):
    """An SN side condition could not be decided within the budget."""


@dataclass(frozen=True)
class RelView:
    successors: Callable[[Any], Iterable[Any]]
    label: str = "->"
    # finite universe, needed only where the definition quantifies over states
    states: Optional[frozenset] = None

    def __call__(self, s) -> frozenset:
        return frozenset(self.successors(s))


def cached(r: RelView) -> RelView:
    """Same relation, successor sets memoised for the lifetime of the view."""
    memo: dict = {}

    def succ(s):
        out = memo.get(s)
        if out is None:
            out = memo[s] = frozenset(r.successors(s))
        return out

    return RelView(succ, r.label, r.states)


def union(*rs: RelView, label: Optional[str] = None) -> RelView:
    def succ(s):
        out = set()
        for r in rs:
            out |= r(s)
        return out

    return RelView(succ, label or "∪".join(r.label for r in rs), _common_states(rs))


def _common_states(rs):
    sts = [r.states for r in rs if r.states is not None]
    return frozenset().union(*sts) if sts else None


def empty_relation(label: str = "∅") -> RelView:
    return RelView(lambda s: (), label)


def is_normal_form(r: RelView, s) -> bool:
    return not r(s)


class Verdict(enum.Enum):
    SN = "SN"
    NON_SN = "NonSN"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


BUDGET_EXCEEDED = "budget-exceeded"


@dataclass
class SnVerdict:
    kind: Verdict
    max_path_len: Optional[int] = None
    # NonSN: path from the root ending in a repeated state; Unknown: marker
    witness: Any = None

    @property
    def is_sn(self) -> bool:
        return self.kind is Verdict.SN

    def __str__(self):
        if self.kind is Verdict.SN:
            return f"SN (longest reduction: {self.max_path_len})"
        if self.kind is Verdict.NON_SN:
            return f"NonSN (cycle witness of length {len(self.witness) - 1 - self.witness.index(self.witness[-1])})"
        return "Unknown (budget exhausted)"


class SnOracle:
    """Memoised SN classifier for one relation.

    Memo tables live on the instance; create one per checking run.
    """

    def __init__(self, r: RelView, node_budget: int = DEFAULT_NODE_BUDGET):
        if node_budget < 1:
            raise ValueError("node_budget must be >= 1")
        self.r = r
        self.node_budget = node_budget
        self.height: dict = {}
        self.bad: dict = {}  # state -> witness path starting at that state

    def classify(self, root) -> SnVerdict:
        if root in self.height:
            return SnVerdict(Verdict.SN, self.height[root])
        if root in self.bad:
            return SnVerdict(Verdict.NON_SN, witness=list(self.bad[root]))
        height, bad, r = self.height, self.bad, self.r
        path: list = [root]
        on_path = {root: 0}
        iters = [iter(r(root))]
        best = [0]
        explored = 1
        while iters:
            u = path[-1]
            for v in iters[-1]:
                h = height.get(v)
                if h is not None:
                    if h + 1 > best[-1]:
                        best[-1] = h + 1
                    continue
                if v in on_path:
                    cyc = path + [v]
                    self._mark_bad(path, cyc)
                    return SnVerdict(Verdict.NON_SN, witness=cyc)
                if v in bad:
                    cyc = path + list(bad[v])
                    self._mark_bad(path, cyc)
                    return SnVerdict(Verdict.NON_SN, witness=cyc)
                explored += 1
                if explored > self.node_budget:
                    return SnVerdict(Verdict.UNKNOWN, witness=BUDGET_EXCEEDED)
                on_path[v] = len(path)
                path.append(v)
                iters.append(iter(r(v)))
                best.append(0)
                break
            else:
                height[u] = best.pop()
                iters.pop()
                path.pop()
                del on_path[u]
                if best and height[u] + 1 > best[-1]:
                    best[-1] = height[u] + 1
        return SnVerdict(Verdict.SN, height[root])

    def _mark_bad(self, path, witness):
        # states inside the cycle get the cycle rotated to start at them
        j = witness.index(witness[-1])
        for i, s in enumerate(path):
            w = witness[i:] if i <= j else witness[i:] + witness[j + 1:i + 1]
            self.bad.setdefault(s, tuple(w))

    def longest_path(self, s) -> list:
        """A replayable reduction sequence of maximal length from an SN state."""
        v = self.classify(s)
        if not v.is_sn:
            raise ValueError("longest_path needs an SN state")
        out = [s]
        while self.height[out[-1]] > 0:
            h = self.height[out[-1]]
            out.append(next(n for n in self.r(out[-1]) if self.classify(n).max_path_len == h - 1))
        return out


def sn_classify(r: RelView, s, node_budget: int = DEFAULT_NODE_BUDGET) -> SnVerdict:
    return SnOracle(r, node_budget).classify(s)


def replay_witness(r: RelView, witness: Sequence) -> bool:
    """Each consecutive pair is a step and the last state repeats an earlier one."""
    if len(witness) < 2 or witness[-1] not in witness[:-1]:
        return False
    return all(b in r(a) for a, b in zip(witness, witness[1:]))


def replay_path(r: RelView, path: Sequence) -> bool:
    return all(b in r(a) for a, b in zip(path, path[1:]))


# --------------------------------------------------------------------------
# lexicographic products


def lex_product(rs: Sequence[RelView], node_budget: int = DEFAULT_NODE_BUDGET,
                label: str = "lex") -> RelView:
    """Lexicographic reduction on tuples.

    Component ``i`` steps, earlier components stay fixed, and every later
    component may become any SN element of its (finite) universe.
    """
    rs = list(rs)
    for j, r in enumerate(rs[1:], start=1):
        if r.states is None:
            raise ValueError(f"component {j} needs a finite universe (RelView.states)")
    oracles = [SnOracle(r, node_budget) for r in rs]
    sn_memo: list[dict] = [dict() for _ in rs]

    def is_sn(j, s) -> bool:
        memo = sn_memo[j]
        if s not in memo:
            v = oracles[j].classify(s)
            if v.kind is Verdict.UNKNOWN:
                raise BudgetIndecision(f"SN of {s!r} in component {j} undecided")
            memo[s] = v.is_sn
        return memo[s]

    trailing_cache: dict[int, list] = {}

    def trailing(i) -> list:
        if i not in trailing_cache:
            pools = [sorted((s for s in rs[j].states if is_sn(j, s)), key=repr)
                     for j in range(i + 1, len(rs))]
            trailing_cache[i] = list(itertools.product(*pools))
        return trailing_cache[i]

    def succ(tup):
        if len(tup) != len(rs):
            raise ValueError("tuple arity differs from the number of components")
        out = set()
        for i, r in enumerate(rs):
            steps = r(tup[i])
            if not steps:
                continue
            tails = trailing(i)
            for n in steps:
                head = tuple(tup[:i]) + (n,)
                for tail in tails:
                    out.add(head + tail)
        return out

    universe = None
    if rs and rs[0].states is not None:
        universe = frozenset(itertools.product(*(r.states for r in rs)))
    return RelView(succ, label, universe)


# --------------------------------------------------------------------------
# bounded search helpers


FOUND, EXHAUSTED, OPEN = "found", "exhausted", "open"


def search(r: RelView, starts: Iterable, goal: Callable[[Any], bool], depth: int,
           min_steps: int = 0, node_budget: int = DEFAULT_NODE_BUDGET) -> tuple[str, Optional[list]]:
    """Breadth-first search for a state satisfying ``goal``.

    Paths of length ``min_steps..depth`` from any start count.  Returns
    ``(FOUND, path)``, ``(EXHAUSTED, None)`` when the reachable space was
    fully enumerated, or ``(OPEN, None)`` when a bound was hit first.
    """
    frontier = {s: [s] for s in starts}
    seen = set(frontier)
    if min_steps == 0:
        for s, p in frontier.items():
            if goal(s):
                return FOUND, p
    # min_steps > 0: a state seen at distance 0 may be revisited later
    revisit = min_steps > 0
    if revisit:
        seen = set()
    hit_bound = False
    for d in range(1, depth + 1):
        nxt = {}
        for s, p in frontier.items():
            for n in r(s):
                if n in seen or n in nxt:
                    continue
                q = p + [n]
                if d >= min_steps and goal(n):
                    return FOUND, q
                nxt[n] = q
        seen |= nxt.keys()
        if not nxt:
            return EXHAUSTED, None
        if len(seen) > node_budget:
            hit_bound = True
            break
        frontier = nxt
    else:
        # frontier non-empty after the last layer; are there more states?
        if any(n not in seen for s in frontier for n in r(s)):
            hit_bound = True
        else:
            return EXHAUSTED, None
    return (OPEN if hit_bound else EXHAUSTED), None


def closure(r: RelView, roots: Iterable, node_budget: int = DEFAULT_NODE_BUDGET) -> tuple[list, bool]:
    """States reachable from ``roots``; the flag says whether it is complete."""
    order = []
    seen = set()
    todo = deque()
    for s in roots:
        if s not in seen:
            seen.add(s)
            todo.append(s)
    while todo:
        s = todo.popleft()
        order.append(s)
        for n in r(s):
            if n not in seen:
                if len(seen) >= node_budget:
                    return order + list(todo), False
                seen.add(n)
                todo.append(n)
    return order, True


def _states(r: RelView, roots, close: bool, node_budget: int, report: Report) -> list:
    if not close:
        return list(dict.fromkeys(roots))
    states, complete = closure(r, roots, node_budget)
    if not complete:
        report.notes.append(f"closure truncated at {node_budget} states")
    return states


# --------------------------------------------------------------------------
# diagram checkers


def check_adjournment(r1: RelView, r2: RelView, roots: Iterable,
                      completion_depth: int = DEFAULT_COMPLETION_DEPTH, strong: bool = False,
                      close: bool = True, node_budget: int = DEFAULT_NODE_BUDGET,
                      name: Optional[str] = None) -> Report:
    """For every ``M ->1 N ->2 P`` look for ``M ->2 Q (->1 ∪ ->2)* P``.

    ``strong`` demands a non-empty tail ``(->1 ∪ ->2)+``.
    """
    kind = "strong" if strong else "weak"
    rep = Report(name or f"adjournment[{kind}] {r1.label} wrt {r2.label}",
                 {"completion_depth": completion_depth, "strong": strong})
    both = union(r1, r2)
    for m in _states(both, roots, close, node_budget, rep):
        for n in r1(m):
            for p in r2(n):
                qs = r2(m)
                if qs:
                    status, _ = search(both, qs, lambda s, p=p: s == p, completion_depth,
                                       min_steps=1 if strong else 0, node_budget=node_budget)
                else:
                    status = EXHAUSTED
                if status == FOUND:
                    rep.close()
                elif status == EXHAUSTED:
                    rep.fail(Counterexample(
                        m, f"{r1.label} then {r2.label}",
                        f"{r2.label} then ({r1.label}∪{r2.label}){'+' if strong else '*'}",
                        completion_depth, (m, n, p), (r1.label, r2.label)))
                else:
                    rep.skip()
    return rep


def check_strong_simulation(rA: RelView, rB: RelView, relation_pairs: Iterable[tuple],
                            related: Callable[[Any, Any], bool], depth: int = DEFAULT_COMPLETION_DEPTH,
                            weak: bool = False, node_budget: int = DEFAULT_NODE_BUDGET,
                            name: Optional[str] = None) -> Report:
    """For ``M R P`` and ``M ->A M'``, look for ``P ->B+ P'`` with ``M' R P'``.

    ``weak`` accepts ``P ->B* P'`` instead.
    """
    rep = Report(name or f"{'weak' if weak else 'strong'} simulation of {rA.label} by {rB.label}",
                 {"depth": depth, "weak": weak})
    for m, p in relation_pairs:
        for m2 in rA(m):
            status, _ = search(rB, [p], lambda s, m2=m2: related(m2, s), depth,
                               min_steps=0 if weak else 1, node_budget=node_budget)
            if status == FOUND:
                rep.close()
            elif status == EXHAUSTED:
                rep.fail(Counterexample(
                    (m, p), f"{rA.label} step", f"{rB.label}{'*' if weak else '+'} to a related state",
                    depth, (m, m2), (rA.label,)))
            else:
                rep.skip()
    return rep


def path_layers(r: RelView, s, k_max: int) -> list[int]:
    """``out[k]`` = number of states reachable in exactly ``k`` steps."""
    layer = {s}
    out = [1]
    for _ in range(k_max):
        layer = set().union(*(r(x) for x in layer)) if layer else set()
        out.append(len(layer))
    return out


def check_reduction_length_simulation(rA: RelView, rB: RelView, relation_pairs: Iterable[tuple],
                                      k_max: int, name: Optional[str] = None) -> Report:
    """For ``M R P`` and every ``k <= k_max`` with ``M ->A^k N``, need ``P ->B^k Q``."""
    rep = Report(name or f"reduction-length simulation of {rA.label} by {rB.label}", {"k_max": k_max})
    for m, p in relation_pairs:
        la, lb = path_layers(rA, m, k_max), path_layers(rB, p, k_max)
        bad = next((k for k in range(k_max + 1) if la[k] and not lb[k]), None)
        if bad is None:
            rep.close()
        else:
            rep.fail(Counterexample((m, p), f"{rA.label}^{bad}", f"{rB.label}^{bad} from the related state",
                                    k_max))
    return rep


def compose_star(r1: RelView, r2: RelView, node_budget: int = DEFAULT_NODE_BUDGET) -> RelView:
    """``->1* ; ->2``: any number of ``->1`` steps followed by one ``->2`` step."""

    def succ(s):
        pre, complete = closure(r1, [s], node_budget)
        if not complete:
            raise BudgetIndecision("->1 closure too large")
        out = set()
        for x in pre:
            out |= r2(x)
        return out

    return RelView(succ, f"{r1.label}*;{r2.label}", _common_states((r1, r2)))


def check_lemma_lexic(r1: RelView, r2: RelView, states: Iterable,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> Report:
    """If SN(->1) is stable under ->2 then SN(->1 ∪ ->2) = SN(->1*;->2) ∩ SN(->1)."""
    rep = Report("lemma lexic", {"node_budget": node_budget})
    both = union(r1, r2)
    univ = _states(both, states, True, node_budget, rep)
    sn1 = SnOracle(r1, node_budget)
    for s in univ:
        if sn1.classify(s).is_sn and not all(sn1.classify(n).is_sn for n in r2(s)):
            rep.skip(len(univ))
            rep.notes.append("hypothesis fails: SN(->1) not stable under ->2")
            return rep
    sn12 = SnOracle(both, node_budget)
    comp = SnOracle(compose_star(r1, r2, node_budget), node_budget)
    for s in univ:
        try:
            a, b, c = sn12.classify(s), comp.classify(s), sn1.classify(s)
        except BudgetIndecision:
            rep.skip()
            continue
        if Verdict.UNKNOWN in (a.kind, b.kind, c.kind):
            rep.skip()
        elif a.is_sn == (b.is_sn and c.is_sn):
            rep.close()
        else:
            rep.fail(Counterexample(s, "classification", "SN(->1∪->2) = SN(->1*;->2) ∩ SN(->1)"))
    return rep


def check_theorem_adjbound(r1: RelView, r2: RelView, states: Iterable,
                           node_budget: int = DEFAULT_NODE_BUDGET,
                           completion_depth: int = DEFAULT_COMPLETION_DEPTH) -> Report:
    """nf(->2) ⊆ nf(->1) and strong adjournment imply BN_n(->2) ⊆ BN_n(->1 ∪ ->2)."""
    rep = Report("theorem adjbound", {"node_budget": node_budget, "completion_depth": completion_depth})
    both = union(r1, r2)
    univ = _states(both, states, True, node_budget, rep)
    if any(not r2(s) and r1(s) for s in univ):
        rep.skip(len(univ))
        rep.notes.append("hypothesis fails: nf(->2) not included in nf(->1)")
        return rep
    adj = check_adjournment(r1, r2, univ, completion_depth, strong=True, close=False,
                            node_budget=node_budget)
    if adj.failed or adj.skipped:
        rep.skip(len(univ))
        rep.notes.append("hypothesis fails or undecided: strong adjournment")
        return rep
    sn2, sn12 = SnOracle(r2, node_budget), SnOracle(both, node_budget)
    for s in univ:
        v2 = sn2.classify(s)
        if v2.kind is Verdict.UNKNOWN:
            rep.skip()
            continue
        if not v2.is_sn:
            rep.close()  # vacuous
            continue
        v12 = sn12.classify(s)
        if v12.kind is Verdict.UNKNOWN:
            rep.skip()
        elif v12.is_sn and v12.max_path_len <= v2.max_path_len:
            rep.close()
        else:
            rep.fail(Counterexample(s, "bound", f"BN_{v2.max_path_len}(->1∪->2)"))
    return rep


def check_adjournment_theorem(r1: RelView, r2: RelView, states: Iterable,
                              node_budget: int = DEFAULT_NODE_BUDGET,
                              completion_depth: int = DEFAULT_COMPLETION_DEPTH) -> Report:
    """->1 terminating and adjournable wrt ->2 imply SN(->2) ⊆ SN(->1 ∪ ->2)."""
    rep = Report("adjournment theorem", {"node_budget": node_budget, "completion_depth": completion_depth})
    both = union(r1, r2)
    univ = _states(both, states, True, node_budget, rep)
    sn1 = SnOracle(r1, node_budget)
    if not all(sn1.classify(s).is_sn for s in univ):
        rep.skip(len(univ))
        rep.notes.append("hypothesis fails: ->1 not terminating")
        return rep
    adj = check_adjournment(r1, r2, univ, completion_depth, strong=False, close=False,
                            node_budget=node_budget)
    if adj.failed or adj.skipped:
        rep.skip(len(univ))
        rep.notes.append("hypothesis fails or undecided: adjournment")
        return rep
    sn2, sn12 = SnOracle(r2, node_budget), SnOracle(both, node_budget)
    for s in univ:
        v2 = sn2.classify(s)
        if not v2.is_sn:
            rep.close() if v2.kind is Verdict.NON_SN else rep.skip()
            continue
        v12 = sn12.classify(s)
        if v12.is_sn:
            rep.close()
        elif v12.kind is Verdict.UNKNOWN:
            rep.skip()
        else:
            rep.fail(Counterexample(s, "classification", "SN(->1∪->2)", trace=tuple(v12.witness)))
    return rep


def check_lex_termination(rs: Sequence[RelView], node_budget: int = DEFAULT_NODE_BUDGET) -> Report:
    """Every tuple of SN components is SN for the lexicographic product."""
    rep = Report("lexicographic termination", {"components": len(rs)})
    if any(r.states is None for r in rs):
        raise ValueError("every component needs a finite universe")
    comp = [SnOracle(r, node_budget) for r in rs]
    try:
        lex = cached(lex_product(rs, node_budget))
    except BudgetIndecision:
        rep.skip()
        return rep
    lex_or = SnOracle(lex, node_budget)
    pools = [[s for s in sorted(r.states, key=repr) if o.classify(s).is_sn] for r, o in zip(rs, comp)]
    for tup in itertools.product(*pools):
        try:
            v = lex_or.classify(tup)
        except BudgetIndecision:
            rep.skip()
            continue
        if v.is_sn:
            rep.close()
        elif v.kind is Verdict.UNKNOWN:
            rep.skip()
        else:
            rep.fail(Counterexample(tup, "lex classification", "SN", trace=tuple(v.witness)))
    return rep


def check_simlengbound(rA: RelView, rB: RelView, relation_pairs: Sequence[tuple], k_max: int,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> Report:
    """If ->B simulates the reduction lengths of ->A through R then R⁻¹(BN_n(->B)) ⊆ BN_n(->A).

    ``k_max`` must exceed the number of states for the hypothesis check to be
    exact on finite relations.
    """
    rep = Report("theorem simlengbound", {"k_max": k_max})
    hyp = check_reduction_length_simulation(rA, rB, relation_pairs, k_max)
    if hyp.failed:
        rep.skip(len(relation_pairs))
        rep.notes.append("hypothesis fails: no reduction-length simulation")
        return rep
    oa, ob = SnOracle(rA, node_budget), SnOracle(rB, node_budget)
    for m, p in relation_pairs:
        vb = ob.classify(p)
        if not vb.is_sn:
            rep.close() if vb.kind is Verdict.NON_SN else rep.skip()
            continue
        va = oa.classify(m)
        if va.is_sn and va.max_path_len <= vb.max_path_len:
            rep.close()
        elif va.kind is Verdict.UNKNOWN:
            rep.skip()
        else:
            rep.fail(Counterexample((m, p), "bound", f"BN_{vb.max_path_len}(->A)"))
    return rep


# --------------------------------------------------------------------------
# finite relations


@dataclass
class FiniteRelation:
    """Explicit edge set; the text form is one ``a -> b`` per line, ``#`` comments."""

    edges: dict = field(default_factory=dict)
    extra_states: frozenset = frozenset()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], states: Iterable = ()) -> "FiniteRelation":
        rel = cls({}, frozenset(states))
        for a, b in pairs:
            rel.edges.setdefault(a, set()).add(b)
        return rel

    @classmethod
    def parse(cls, text: str) -> "FiniteRelation":
        pairs, states = [], []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "->" not in line:
                states.append(line)
                continue
            a, _, b = line.partition("->")
            a, b = a.strip(), b.strip()
            if not a or not b:
                raise ValueError(f"line {lineno}: expected 'state -> state'")
            pairs.append((a, b))
        return cls.from_pairs(pairs, states)

    def dumps(self) -> str:
        lines = [f"{a} -> {b}" for a in sorted(self.edges, key=repr)
                 for b in sorted(self.edges[a], key=repr)]
        isolated = sorted((s for s in self.states if not any(s in v for v in self.edges.values())
                           and s not in self.edges), key=repr)
        lines += [str(s) for s in isolated]
        return "\n".join(lines) + ("\n" if lines else "")

    @property
    def pairs(self) -> set:
        return {(a, b) for a, bs in self.edges.items() for b in bs}

    @property
    def states(self) -> frozenset:
        out = set(self.extra_states) | set(self.edges)
        for bs in self.edges.values():
            out |= bs
        return frozenset(out)

    def view(self, label: str = "->", states: Optional[Iterable] = None) -> RelView:
        edges = {a: frozenset(bs) for a, bs in self.edges.items()}
        univ = frozenset(states) if states is not None else self.states
        return RelView(lambda s: edges.get(s, frozenset()), label, univ)
