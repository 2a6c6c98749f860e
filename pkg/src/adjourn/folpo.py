"""Labelled first-order terms and the lexicographic path ordering on them.

The signature is ``*`` (blob), ``1`` (un), ``2`` (deux) and the binary
symbols ``s1`` .. ``s4``, each labelled by a strongly normalising
lambda-term.  Labels are compared through strict reachability under
sigma-beta reduction and the strict subterm relation.

``foc`` encodes bounded lambda-LJQ terms; every reduction step should make
the encoding decrease in the LPO.
"""

from __future__ import annotations

import enum
import random
import time
from typing import Iterable, Optional

from adjourn import arl
from adjourn.lam import App, Lam, _beta, _sigma, sigma_beta_steps
from adjourn.lam import show as show_lambda
from adjourn.ljq import (
    Ap,
    Bounded,
    Cst,
    Cut,
    TSub,
    VLam,
    VSub,
    beta_oracle,
    in_hpp,
    is_bounded,
    is_pseudo_covalue,
    ljq_step_list,
    ql,
)
from adjourn.report import Counterexample, Report
from adjourn.syntax import BVar, Node, Var, fill_loose, free_names, hints, instantiate, pick_name


class NotSN(ValueError):
    """A label is not strongly normalising for sigma-beta."""


class BudgetExceeded(RuntimeError):
    """Label reachability could not be decided within the node budget."""


class NotBounded(ValueError):
    """foc needs a beta-bounded term."""


# --------------------------------------------------------------------------
# terms


class Named:
    """A lambda-term together with its binder names.

    Opening a binder turns its name into a free variable, so label
    reachability depends on the names and not only on the alpha-class.
    """

    __slots__ = ("term", "key", "_hash")

    def __init__(self, term: Node):
        self.term = term
        self.key = hints(term)
        self._hash = hash((term, self.key))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Named) and self.term == other.term and self.key == other.key

    def __repr__(self):
        return show_lambda(self.term)


class FoTerm:
    __slots__ = ("args", "_hash")
    ARITY = 0

    def __init__(self, *args: "FoTerm"):
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_hash", hash((self.symbol, args)))

    def __setattr__(self, name, value):
        raise AttributeError("FoTerm is immutable")

    @property
    def symbol(self) -> tuple:
        return (type(self).__name__,)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, FoTerm) and self._hash == other._hash
                and self.symbol == other.symbol and self.args == other.args)

    def __repr__(self):
        return show(self)

    def subterms(self):
        yield self
        for a in self.args:
            yield from a.subterms()


class Blob(FoTerm):
    __slots__ = ()


class Un(FoTerm):
    __slots__ = ()
    ARITY = 1


class Deux(FoTerm):
    __slots__ = ()
    ARITY = 2


class S(FoTerm):
    __slots__ = ("index", "label")
    ARITY = 2

    def __init__(self, index: int, label: Node, left: FoTerm, right: FoTerm):
        if index not in (1, 2, 3, 4):
            raise ValueError("S index must be 1..4")
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "label", label)
        super().__init__(left, right)

    @property
    def symbol(self) -> tuple:
        return ("S", self.index, Named(self.label))


BLOB = Blob()


def show(t: FoTerm) -> str:
    if isinstance(t, Blob):
        return "*"
    if isinstance(t, Un):
        return f"1({show(t.args[0])})"
    if isinstance(t, Deux):
        return f"2({show(t.args[0])},{show(t.args[1])})"
    return f"s{t.index}[{show_lambda(t.label)}]({show(t.args[0])},{show(t.args[1])})"


def parse_foterm(text: str) -> FoTerm:
    """Parse ``*``, ``1(t)``, ``2(t,u)`` and ``s1[<lambda term>](t,u)``."""
    from adjourn.parsing import ParseError, parse_lambda

    pos = 0

    def ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def fail(msg):
        raise ParseError(msg, 1, pos + 1)

    def expect(ch):
        nonlocal pos
        ws()
        if not text.startswith(ch, pos):
            fail(f"expected {ch!r}")
        pos += len(ch)

    def term() -> FoTerm:
        nonlocal pos
        ws()
        if text.startswith("*", pos):
            pos += 1
            return BLOB
        if text.startswith("1", pos):
            pos += 1
            expect("(")
            a = term()
            expect(")")
            return Un(a)
        if text.startswith("2", pos):
            pos += 1
            expect("(")
            a = term()
            expect(",")
            b = term()
            expect(")")
            return Deux(a, b)
        if text.startswith("s", pos) and pos + 1 < len(text) and text[pos + 1] in "1234":
            index = int(text[pos + 1])
            pos += 2
            expect("[")
            end = text.find("]", pos)
            if end < 0:
                fail("unterminated label")
            try:
                label = parse_lambda(text[pos:end])
            except ParseError as e:
                raise ParseError(f"in label: {e.message}", 1, pos + e.column) from None
            pos = end + 1
            expect("(")
            a = term()
            expect(",")
            b = term()
            expect(")")
            return S(index, label, a, b)
        fail("expected a first-order term")

    t = term()
    ws()
    if pos != len(text):
        fail("unexpected trailing input")
    return t


# --------------------------------------------------------------------------
# labels and precedence


def label_steps(t: Node) -> list[Node]:
    """One step of sigma-beta or of the immediate-subterm relation.

    Reducts are kept as a list: alpha-equivalent reducts with different
    binder names lead to different subterms once opened.
    """
    out: list[Node] = []
    _beta(t, out.append)
    _sigma(t, out.append)
    if type(t) is Lam:
        name = pick_name(t.hint, free_names(t))
        out.append(instantiate(t.body, Var(name)))
    elif type(t) is App:
        out += [t.fun, t.arg]
    return out


class Precedence(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"

    def flip(self) -> "Precedence":
        return {Precedence.LESS: Precedence.GREATER,
                Precedence.GREATER: Precedence.LESS}.get(self, self)

    def __str__(self):
        return self.value


PrecedenceVerdict = Precedence

_RANK = {"Blob": 0, "Un": 1, "Deux": 2, "S": 3}


class LabelOrder:
    """Memoised label reachability and the precedence built on it."""

    def __init__(self, node_budget: int = arl.DEFAULT_NODE_BUDGET):
        self.node_budget = node_budget
        self.sn = arl.SnOracle(arl.cached(arl.RelView(sigma_beta_steps, "σβ")), node_budget)
        self._succ: dict[Named, tuple] = {}
        self.step = arl.RelView(self._step, "σβ∪⊐")
        self.reach: dict[Named, frozenset] = {}

    def _step(self, m: Named) -> tuple:
        got = self._succ.get(m)
        if got is None:
            got = self._succ[m] = tuple(dict.fromkeys(Named(n) for n in label_steps(m.term)))
        return got

    def reachable(self, m: Node) -> frozenset:
        """Named terms reachable in one or more steps."""
        key = Named(m)
        got = self.reach.get(key)
        if got is not None:
            return got
        v = self.sn.classify(m)
        if v.kind is arl.Verdict.NON_SN:
            raise NotSN(show_lambda(m))
        if v.kind is arl.Verdict.UNKNOWN:
            raise BudgetExceeded(f"sigma-beta SN check of {show_lambda(m)}")
        states, complete = arl.closure(self.step, self.step(key), self.node_budget)
        if not complete:
            raise BudgetExceeded(f"reachability from {show_lambda(m)}")
        got = self.reach[key] = frozenset(states)
        return got

    def reaches(self, m: Node, n: Node) -> bool:
        """``m (->σβ ∪ ⊐)+ n``."""
        return Named(n) in self.reachable(m)

    def precedence(self, f: tuple, g: tuple) -> Precedence:
        rf, rg = _RANK[f[0]], _RANK[g[0]]
        if rf != rg:
            return Precedence.GREATER if rf > rg else Precedence.LESS
        if f[0] != "S":
            return Precedence.EQUAL
        (_, i, m), (_, j, n) = f, g
        if m == n:
            if i == j:
                return Precedence.EQUAL
            return Precedence.GREATER if i > j else Precedence.LESS
        m, n = _term(m), _term(n)
        if self.reaches(m, n):
            return Precedence.GREATER
        if self.reaches(n, m):
            return Precedence.LESS
        return Precedence.INCOMPARABLE


def _term(label) -> Node:
    return label.term if isinstance(label, Named) else label


def label_reaches(m: Node, n: Node, budget: int = arl.DEFAULT_NODE_BUDGET) -> bool:
    return LabelOrder(budget).reaches(m, n)


def precedence(f: FoTerm, g: FoTerm, order: Optional[LabelOrder] = None) -> Precedence:
    """Compare the head symbols of two terms."""
    return (order or LabelOrder()).precedence(f.symbol, g.symbol)


# --------------------------------------------------------------------------
# LPO


class Lpo:
    """Lexicographic path ordering with a memo table."""

    def __init__(self, order: Optional[LabelOrder] = None):
        self.order = order or LabelOrder()
        self.memo: dict[tuple[FoTerm, FoTerm], bool] = {}

    def gt(self, s: FoTerm, t: FoTerm) -> bool:
        key = (s, t)
        got = self.memo.get(key)
        if got is None:
            got = self.memo[key] = self._gt(s, t)
        return got

    def ge(self, s: FoTerm, t: FoTerm) -> bool:
        return s == t or self.gt(s, t)

    def _gt(self, s: FoTerm, t: FoTerm) -> bool:
        if s == t:
            return False
        if any(self.ge(si, t) for si in s.args):
            return True
        p = self.order.precedence(s.symbol, t.symbol)
        if p is Precedence.GREATER:
            return all(self.gt(s, tj) for tj in t.args)
        if p is Precedence.EQUAL:
            for si, ti in zip(s.args, t.args):
                if si != ti:
                    return self.gt(si, ti) and all(self.gt(s, tj) for tj in t.args)
        return False

    def compare(self, s: FoTerm, t: FoTerm) -> Precedence:
        if s == t:
            return Precedence.EQUAL
        if self.gt(s, t):
            return Precedence.GREATER
        if self.gt(t, s):
            return Precedence.LESS
        return Precedence.INCOMPARABLE


def lpo_gt(s: FoTerm, t: FoTerm, order: Optional[LabelOrder] = None) -> bool:
    return Lpo(order).gt(s, t)


# --------------------------------------------------------------------------
# encoding


def foc(t: Node, check: bool = True, oracle: Optional[arl.SnOracle] = None) -> FoTerm:
    """First-order encoding of a bounded lambda-LJQ term or value.

    Labels are the lambda-images of the encoded subterms, with bound
    variables of the surrounding term turned into names.
    """
    if check:
        b = is_bounded(t, oracle=oracle)
        if b is not Bounded.BOUNDED:
            raise NotBounded(f"term is {b}")
    return _foc(t, [])


def label_of(t: Node, names: list[str]) -> Node:
    return fill_loose(ql(t), names)


def _bind(hint: str, body: Node, names: list[str]) -> str:
    # avoid exactly the names the body refers to, as label opening does
    return pick_name(hint, free_names(fill_loose(body, names, 1)))


def _foc(t: Node, names: list[str]) -> FoTerm:
    tt = type(t)
    if tt is Var or tt is BVar:
        return BLOB
    if tt is VLam:
        return Un(_foc(t.body, names + [_bind(t.hint, t.body, names)]))
    if tt is Cst:
        return Un(_foc(t.value, names))
    if tt is Ap:
        return Deux(_foc(t.value, names), _foc(t.cont, names + [_bind(t.hint, t.cont, names)]))
    first, second = t.kids()
    inner = names + [_bind(t.hint, second, names)]
    if tt is VSub:
        index = 4
    elif tt is TSub:
        index = 2 if is_pseudo_covalue(t.target, 0) else 4
    elif tt is Cut:
        index = 1 if in_hpp(t) else 3
    else:
        raise TypeError(f"not a lambda-LJQ term: {t!r}")
    return S(index, label_of(t, names), _foc(first, names), _foc(second, inner))


def sandwich(t: Node, lpo: Lpo) -> Optional[tuple[bool, bool]]:
    """The two inequalities bracketing ``foc t`` for a root Cut or TSub.

    For ``let x = N in M``:  s3[(λx.M) N] >= foc t >= s1[M{x:=N}];
    for ``M [x := V]``:      s4[M{x:=V}] >= foc t >= s2[M{x:=V}]
    (labels are lambda-images, arguments the encodings of N/V and M).
    """
    if type(t) not in (Cut, TSub):
        return None
    first, second = t.kids()
    qa, qb = ql(first), ql(second)
    subst = instantiate(qb, qa)
    f_first = _foc(first, [])
    f_second = _foc(second, [_bind(t.hint, second, [])])
    here = _foc(t, [])
    if type(t) is Cut:
        hi = S(3, App(Lam(qb, t.hint), qa), f_first, f_second)
        lo = S(1, subst, f_first, f_second)
    else:
        hi = S(4, subst, f_first, f_second)
        lo = S(2, subst, f_first, f_second)
    return lpo.ge(hi, here), lpo.ge(here, lo)


def check_foc_decrease(size_bound: int, terms: Optional[Iterable[Node]] = None,
                       node_budget: int = arl.DEFAULT_NODE_BUDGET,
                       lpo: Optional[Lpo] = None, collect: Optional[list] = None) -> Report:
    """Every strict step of a bounded term decreases its encoding.

    ``collect``, when given, receives ``(foc t, foc t')`` for every checked step.
    """
    from adjourn.harness import EnumSpec, enumerate_terms

    start = time.perf_counter()
    report = Report("foc-decrease", {"size": size_bound})
    if terms is None:
        terms = enumerate_terms(EnumSpec("ljq", size_bound))
    oracle = beta_oracle(node_budget)
    lpo = lpo or Lpo(LabelOrder(node_budget))
    sand = Report("sandwich")
    for t in terms:
        if is_bounded(t, oracle=oracle) is not Bounded.BOUNDED:
            report.skip()
            continue
        try:
            f = foc(t, check=False)
            bounds = sandwich(t, lpo)
        except BudgetExceeded:
            report.skip()
            continue
        if bounds is not None:
            if all(bounds):
                sand.close()
            else:
                which = "upper" if not bounds[0] else "lower"
                sand.fail(Counterexample(t, f"{which} sandwich bound", "(≻lpo ∪ =)"))
        for rule, t2 in ljq_step_list(t):
            if is_bounded(t2, oracle=oracle) is not Bounded.BOUNDED:
                report.fail(Counterexample(t, str(rule), "reduct stays bounded", trace=(t, t2)))
                continue
            try:
                f2 = foc(t2, check=False)
                ok = lpo.gt(f, f2)
            except BudgetExceeded:
                report.skip()
                continue
            if collect is not None:
                collect.append((f, f2))
            if ok:
                report.close()
            else:
                report.fail(Counterexample(t, str(rule), "foc(source) ≻lpo foc(target)", trace=(t, t2)))
    report.absorb(sand, "sandwich")
    report.seconds = time.perf_counter() - start
    return report


# --------------------------------------------------------------------------
# sanity of the ordering


def check_lpo_sanity(terms: list[FoTerm], edges: Iterable[tuple[FoTerm, FoTerm]] = (),
                     triples: int = 10_000, seed: int = 0, lpo: Optional[Lpo] = None) -> Report:
    """Irreflexivity, subterm property, transitivity and acyclicity of ``lpo.gt``.

    ``edges`` are pairs known to be decreasing (e.g. consecutive reduction
    steps); they seed chain triples for the transitivity check.
    """
    start = time.perf_counter()
    lpo = lpo or Lpo()
    rep = Report("lpo-sanity", {"terms": len(terms), "triples": triples, "seed": seed})
    universe = list(dict.fromkeys(s for t in terms for s in t.subterms()))

    irr = Report("irreflexive")
    sub = Report("subterm")
    for t in universe:
        if lpo.gt(t, t):
            irr.fail(Counterexample(t, "t ≻ t", "not t ≻ t"))
        else:
            irr.close()
        for s in t.args:
            for u in s.subterms():
                if lpo.gt(t, u):
                    sub.close()
                else:
                    sub.fail(Counterexample((t, u), "proper subterm", "t ≻ u"))
    rep.absorb(irr, "irreflexive")
    rep.absorb(sub, "subterm")

    rng = random.Random(seed)
    edges = list(dict.fromkeys(edges))
    succ: dict = {}
    for a, b in edges:
        succ.setdefault(a, []).append(b)
    chains = [(a, b, c) for a, b in edges for c in succ.get(b, ())]
    trans = Report("transitive")

    def below(a: FoTerm) -> Optional[FoTerm]:
        # a random element under ``a``: try the universe, then proper subterms
        for _ in range(20):
            b = rng.choice(universe)
            if lpo.gt(a, b):
                return b
        subs = [u for s in a.args for u in s.subterms()]
        return rng.choice(subs) if subs else None

    attempts = 0
    while trans.closed + trans.failed < triples and attempts < 4 * triples and universe:
        attempts += 1
        if chains and attempts % 2 == 0:
            a, b, c = rng.choice(chains)
        else:
            a = rng.choice(universe)
            b = below(a)
            c = below(b) if b is not None else None
            if c is None:
                continue
        if not (lpo.gt(a, b) and lpo.gt(b, c)):
            continue
        if lpo.gt(a, c):
            trans.close()
        else:
            trans.fail(Counterexample((a, b, c), "a ≻ b ≻ c", "a ≻ c"))
    rep.absorb(trans, "transitive")

    prec = Report("precedence")
    symbols = list(dict.fromkeys(t.symbol for t in universe))
    for _ in range(min(triples, len(symbols) ** 2)):
        f, g = rng.choice(symbols), rng.choice(symbols)
        p, q = lpo.order.precedence(f, g), lpo.order.precedence(g, f)
        if p.flip() is q and (p is not Precedence.EQUAL or f == g):
            prec.close()
        else:
            prec.fail(Counterexample((f, g), f"{p} / {q}", "antisymmetric verdicts"))
    rep.absorb(prec, "precedence")

    wf = Report("acyclic")
    graph = arl.RelView(lambda s: succ.get(s, ()), "≻")
    oracle = arl.SnOracle(graph)
    for a in succ:
        v = oracle.classify(a)
        if v.kind is arl.Verdict.NON_SN:
            wf.fail(Counterexample(a, "cycle among decreasing pairs", "acyclic", trace=tuple(v.witness)))
            break
        wf.close()
    rep.absorb(wf, "acyclic")
    rep.seconds = time.perf_counter() - start
    return rep
