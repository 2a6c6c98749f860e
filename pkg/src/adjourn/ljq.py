"""The lambda-LJQ calculus: a term language for the sequent calculus LJQ.

Values and terms are two mutually defined categories::

    V ::= x | \\x. M | V' [x := V]
    M ::= <V> | x(V; y. N) | M [x := V] | let x = M in N

``VSub(V, V')`` and ``TSub(V, M)`` are explicit substitutions of ``V`` into the
body (which sits under the binder).  ``Cut(M, N)`` is ``let x = M in N``.
All binders are de Bruijn indices; see :mod:`adjourn.syntax`.

Size convention: ``<V>`` and the application node weigh 0 (the head variable
of ``x(V; y. N)`` weighs 1), every other node weighs 1.
"""

from __future__ import annotations

import enum
from typing import Optional, Union

from adjourn import arl
from adjourn.lam import App, Arrow, Lam, SimpleType, Unifier, _max_atom, finish_type
from adjourn.parsing import KEYWORDS, TokenStream
from adjourn.report import Counterexample, Report
from adjourn.syntax import (
    BVar,
    Node,
    Var,
    _init,
    abstract,
    drop_index,
    free_names,
    instantiate,
    occurs_loose,
    pick_name,
    reindex,
    shift,
    subterms,
    swap01,
)

VVar = Var


class VLam(Node):
    __slots__ = ("body", "hint")
    KIDS = ("body",)
    BINDS = (1,)

    def __init__(self, body: Node, hint: str = "x"):
        _init(self, body=body, hint=hint)
        self._seal()

    def kids(self):
        return (self.body,)

    def rebuild(self, kids):
        return VLam(kids[0], self.hint)


class VSub(Node):
    """``target [x := value]`` on values."""

    __slots__ = ("value", "target", "hint")
    KIDS = ("value", "target")
    BINDS = (0, 1)

    def __init__(self, value: Node, target: Node, hint: str = "x"):
        _init(self, value=value, target=target, hint=hint)
        self._seal()

    def kids(self):
        return (self.value, self.target)

    def rebuild(self, kids):
        return VSub(kids[0], kids[1], self.hint)


class Cst(Node):
    """``<V>``: a value used as a term."""

    __slots__ = ("value",)
    KIDS = ("value",)
    BINDS = (0,)
    WEIGHT = 0

    def __init__(self, value: Node):
        _init(self, value=value)
        self._seal()

    def kids(self):
        return (self.value,)

    def rebuild(self, kids):
        return Cst(kids[0])


class Ap(Node):
    """``x(V; y. N)``; the head is a variable node."""

    __slots__ = ("head", "value", "cont", "hint")
    KIDS = ("head", "value", "cont")
    BINDS = (0, 0, 1)
    WEIGHT = 0

    def __init__(self, head: Node, value: Node, cont: Node, hint: str = "y"):
        _init(self, head=head, value=value, cont=cont, hint=hint)
        self._seal()

    def kids(self):
        return (self.head, self.value, self.cont)

    def rebuild(self, kids):
        return Ap(kids[0], kids[1], kids[2], self.hint)


class TSub(Node):
    """``target [x := value]`` on terms."""

    __slots__ = ("value", "target", "hint")
    KIDS = ("value", "target")
    BINDS = (0, 1)

    def __init__(self, value: Node, target: Node, hint: str = "x"):
        _init(self, value=value, target=target, hint=hint)
        self._seal()

    def kids(self):
        return (self.value, self.target)

    def rebuild(self, kids):
        return TSub(kids[0], kids[1], self.hint)


class Cut(Node):
    """``let x = left in right``."""

    __slots__ = ("left", "right", "hint")
    KIDS = ("left", "right")
    BINDS = (0, 1)

    def __init__(self, left: Node, right: Node, hint: str = "x"):
        _init(self, left=left, right=right, hint=hint)
        self._seal()

    def kids(self):
        return (self.left, self.right)

    def rebuild(self, kids):
        return Cut(kids[0], kids[1], self.hint)


LjqValue = Union[Var, BVar, VLam, VSub]
LjqTerm = Union[Cst, Ap, TSub, Cut]


def is_value(t: Node) -> bool:
    return type(t) in (Var, BVar, VLam, VSub)


def is_term(t: Node) -> bool:
    return type(t) in (Cst, Ap, TSub, Cut)


# named-style constructors


def vlam(x: str, body: Node) -> VLam:
    return VLam(abstract(body, x), x)


def vsub(value: Node, x: str, target: Node) -> VSub:
    return VSub(value, abstract(target, x), x)


def ap(head: str, value: Node, y: str, cont: Node) -> Ap:
    return Ap(Var(head), value, abstract(cont, y), y)


def tsub(value: Node, x: str, target: Node) -> TSub:
    return TSub(value, abstract(target, x), x)


def cut(left: Node, x: str, right: Node) -> Cut:
    return Cut(left, abstract(right, x), x)


def cst(v: Union[str, Node]) -> Cst:
    return Cst(Var(v) if isinstance(v, str) else v)


# --------------------------------------------------------------------------
# typing


def typecheck(ctx: Optional[dict[str, SimpleType]], t: Node) -> Optional[SimpleType]:
    """Principal type of ``t`` under ``ctx``; None if untypable or ill-scoped."""
    return _infer(t, dict(ctx or {}), open_free=False)


def typecheck_open(t: Node) -> Optional[SimpleType]:
    """Like :func:`typecheck`, free variables getting fresh type variables."""
    return _infer(t, {}, open_free=True)


def _infer(t: Node, ctx: dict, open_free: bool) -> Optional[SimpleType]:
    u = Unifier()
    base = u.next = u.rigid = 1 + max((_max_atom(ty) for ty in ctx.values()), default=-1)
    for name in sorted(free_names(t)):
        if name not in ctx:
            if not open_free:
                return None
            ctx[name] = u.fresh()

    def var(v: Node, bound: list):
        if type(v) is Var:
            return ctx[v.name]
        return bound[-1 - v.index] if v.index < len(bound) else None

    def go(t: Node, bound: list) -> Optional[SimpleType]:
        tt = type(t)
        if tt is Var or tt is BVar:
            return var(t, bound)
        if tt is Cst:
            return go(t.value, bound)
        if tt is VLam:
            a = u.fresh()
            b = go(t.body, bound + [a])
            return None if b is None else Arrow(a, b)
        if tt is Ap:
            f = var(t.head, bound)
            a = go(t.value, bound)
            if f is None or a is None:
                return None
            b = u.fresh()
            if not u.unify(f, Arrow(a, b)):
                return None
            return go(t.cont, bound + [b])
        # VSub, TSub, Cut: first kid's type is the bound variable's type
        first = t.kids()[0]
        a = go(first, bound)
        if a is None:
            return None
        return go(t.kids()[1], bound + [a])

    return finish_type(u, go(t, []), base)


# --------------------------------------------------------------------------
# syntactic classes.  A variable is either a name or a loose index.

Ref = Union[str, int]


def _occurs(t: Node, x: Ref) -> bool:
    if isinstance(x, int):
        return occurs_loose(t, x)
    return x in free_names(t)


def _up(x: Ref) -> Ref:
    return x + 1 if isinstance(x, int) else x


def _is_ref(v: Node, x: Ref) -> bool:
    if isinstance(x, int):
        return type(v) is BVar and v.index == x
    return type(v) is Var and v.name == x


def _covalue(t: Node, x: Ref) -> bool:
    return (type(t) is Ap and _is_ref(t.head, x)
            and not _occurs(t.value, x) and not _occurs(t.cont, _up(x)))


def is_x_covalue(t: Node, x: Ref) -> bool:
    """``t = x(V; y. M)`` with x free in neither V nor M."""
    return _covalue(t, x)


def is_pseudo_covalue(t: Node, x: Ref) -> bool:
    tt = type(t)
    if tt is Ap:
        return _covalue(t, x)
    if tt is TSub:
        return not _occurs(t.value, x) and is_pseudo_covalue(t.target, _up(x))
    if tt is Cut:
        return is_pseudo_covalue(t.left, x) and not _occurs(t.right, _up(x))
    return False


def is_pseudo_value(t: Node) -> bool:
    while type(t) is TSub:
        t = t.target
    return type(t) is Cst


def in_hpp(t: Node) -> bool:
    tt = type(t)
    if tt is TSub:
        return is_pseudo_covalue(t.target, 0)
    if tt is Cut:
        if type(t.left) is Cst and _covalue(t.right, 0):
            return True
        return in_hpp(t.left)
    return False


def is_pseudo_principal(t: Node) -> bool:
    return type(t) is Cut and is_pseudo_value(t.left) and is_pseudo_covalue(t.right, 0)


# --------------------------------------------------------------------------
# reduction


class Rule(str, enum.Enum):
    CUT_AP = "cut-ap"            # let <\x.M> y. y(V; z. P)
    CUT_VAR = "cut-var"          # let <x> y. N
    CUT_ID = "cut-id"            # let M y. <y>
    PERM_AP = "perm-ap"          # let z(V; y. P) x. N
    PERM_PRINCIPAL = "perm-principal"
    PERM_CUT = "perm-cut"
    ACTIVATE = "activate"        # let <\y.M> x. N  ->  N [x := \y.M]
    VSUB_VAR = "vsub-var"
    VSUB_OTHER = "vsub-other"
    VSUB_LAM = "vsub-lam"
    TSUB_VAL = "tsub-val"
    TSUB_HEAD = "tsub-head"
    TSUB_AP = "tsub-ap"
    TSUB_CUT = "tsub-cut"

    def __str__(self):
        return self.value


# guarded rules whose side conditions relaxed mode ignores
RELAXED_RULES = (Rule.PERM_CUT, Rule.ACTIVATE)


def _down(v: Node) -> Node:
    """A variable under a binder it does not mention, moved out of it."""
    return BVar(v.index - 1) if type(v) is BVar else v


def root_steps(t: Node, relaxed: bool = False) -> list[tuple[Rule, Node]]:
    out: list[tuple[Rule, Node]] = []
    tt = type(t)
    if tt is Cut:
        m, n = t.left, t.right
        if type(m) is Cst:
            v = m.value
            if type(v) is VLam and _covalue(n, 0):
                # rule 1: n = y(V; z. P)
                out.append((Rule.CUT_AP, Cut(
                    Cut(Cst(drop_index(n.value, 0)), v.body, v.hint),
                    drop_index(n.cont, 1), n.hint)))
            if type(v) in (Var, BVar):
                out.append((Rule.CUT_VAR, instantiate(n, v)))
            if type(v) is VLam and (relaxed or not _covalue(n, 0)):
                out.append((Rule.ACTIVATE, TSub(v, n, t.hint)))
        if type(n) is Cst and type(n.value) is BVar and n.value.index == 0:
            out.append((Rule.CUT_ID, m))
        if type(m) is Ap:
            out.append((Rule.PERM_AP, Ap(m.head, m.value, Cut(m.cont, shift(n, 1, 1), t.hint), m.hint)))
        if type(m) is Cut:
            principal = type(m.left) is Cst and _covalue(m.right, 0)
            if principal:
                inner = m.right
                out.append((Rule.PERM_PRINCIPAL, Cut(m.left, Ap(
                    inner.head, inner.value, Cut(inner.cont, shift(n, 2, 1), t.hint), inner.hint),
                    m.hint)))
            if relaxed or not principal:
                out.append((Rule.PERM_CUT, Cut(m.left, Cut(m.right, shift(n, 1, 1), t.hint), m.hint)))
    elif tt is VSub:
        v, w = t.value, t.target
        if type(w) is BVar and w.index == 0:
            out.append((Rule.VSUB_VAR, v))
        elif type(w) in (Var, BVar):
            out.append((Rule.VSUB_OTHER, _down(w)))
        elif type(w) is VLam:
            out.append((Rule.VSUB_LAM, VLam(TSub(shift(v, 1), swap01(w.body), t.hint), w.hint)))
    elif tt is TSub:
        v, m = t.value, t.target
        if type(m) is Cst:
            out.append((Rule.TSUB_VAL, Cst(VSub(v, m.value, t.hint))))
        elif type(m) is Ap:
            if type(m.head) is BVar and m.head.index == 0:
                p = reindex(m.cont, lambda i: 1 if i == 0 else 0 if i == 1 else i + 1)
                out.append((Rule.TSUB_HEAD, Cut(Cst(v), Ap(
                    BVar(0),
                    VSub(shift(v, 1), shift(m.value, 1, 1), t.hint),
                    TSub(shift(v, 2), p, t.hint), m.hint), t.hint)))
            else:
                out.append((Rule.TSUB_AP, Ap(
                    _down(m.head), VSub(v, m.value, t.hint),
                    TSub(shift(v, 1), swap01(m.cont), t.hint), m.hint)))
        elif type(m) is Cut:
            out.append((Rule.TSUB_CUT, Cut(
                TSub(v, m.left, t.hint), TSub(shift(v, 1), swap01(m.right), t.hint), m.hint)))
    return out


def ljq_rule_steps(t: Node, relaxed: bool = False) -> set[tuple[Rule, Node]]:
    """All one-step reducts under contextual closure, tagged by root rule."""
    out: set[tuple[Rule, Node]] = set()
    _steps(t, relaxed, out.add)
    return out


def _steps(t: Node, relaxed: bool, emit) -> None:
    for step in root_steps(t, relaxed):
        emit(step)
    kids = t.kids()
    for i, k in enumerate(kids):
        if type(k) in (Var, BVar):
            continue

        def put(step, i=i):
            new = list(kids)
            new[i] = step[1]
            emit((step[0], t.rebuild(tuple(new))))

        _steps(k, relaxed, put)


def ljq_step_list(t: Node, relaxed: bool = False) -> list[tuple[Rule, Node]]:
    """Every step occurrence, in a deterministic order (redex left to right).

    Unlike the set-valued enumerators this keeps alpha-equivalent reducts
    whose binder names differ.
    """
    out: list[tuple[Rule, Node]] = []
    _steps(t, relaxed, out.append)
    return out


def ljq_steps(t: Node, relaxed: bool = False) -> set[Node]:
    return {r for _, r in ljq_rule_steps(t, relaxed)}


LJQ = arl.RelView(ljq_steps, "ljq")
LJQ_RELAXED = arl.RelView(lambda t: ljq_steps(t, True), "ljq-relaxed")


# --------------------------------------------------------------------------
# encoding into the lambda-calculus

ID = Lam(BVar(0), "w")


def ql(t: Node) -> Node:
    """Image in the pure lambda-calculus; loose indices are kept as they are."""
    tt = type(t)
    if tt is Var or tt is BVar:
        return t
    if tt is VLam:
        return App(ID, Lam(ql(t.body), t.hint))
    if tt is Cst:
        return ql(t.value)
    if tt is Ap:
        return App(Lam(ql(t.cont), t.hint), App(t.head, ql(t.value)))
    if tt is Cut:
        if is_pseudo_principal(t):
            return instantiate(ql(t.right), ql(t.left))
        return App(Lam(ql(t.right), t.hint), ql(t.left))
    if tt is VSub or tt is TSub:
        return instantiate(ql(t.target), ql(t.value))
    raise TypeError(f"not a lambda-LJQ term: {t!r}")


class Bounded(enum.Enum):
    BOUNDED = "Bounded"
    NOT_BOUNDED = "NotBounded"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


def beta_oracle(node_budget: int = arl.DEFAULT_NODE_BUDGET) -> arl.SnOracle:
    from adjourn.lam import beta_steps

    return arl.SnOracle(arl.RelView(beta_steps, "β"), node_budget)


def is_bounded(t: Node, sn_budget: int = arl.DEFAULT_NODE_BUDGET,
               oracle: Optional[arl.SnOracle] = None) -> Bounded:
    """Whether the image of every subterm of ``t`` is beta-SN."""
    oracle = oracle or beta_oracle(sn_budget)
    unknown = False
    for s in set(subterms(t)):
        kind = oracle.classify(ql(s)).kind
        if kind is arl.Verdict.NON_SN:
            return Bounded.NOT_BOUNDED
        unknown |= kind is arl.Verdict.UNKNOWN
    return Bounded.UNKNOWN if unknown else Bounded.BOUNDED


def _sigma_beta() -> arl.RelView:
    from adjourn.lam import sigma_beta_steps

    return arl.cached(arl.RelView(sigma_beta_steps, "σβ"))


def check_ql_simulation(size_bound: int, terms=None,
                        node_budget: int = arl.DEFAULT_NODE_BUDGET) -> Report:
    """Every strict step of a bounded term is matched by ``->*`` in sigma-beta."""
    from adjourn.harness import EnumSpec, enumerate_terms

    report = Report("ql-simulation", {"size": size_bound})
    if terms is None:
        terms = enumerate_terms(EnumSpec("ljq", size_bound))
    oracle = beta_oracle(node_budget)
    sb = _sigma_beta()
    reach: dict = {}
    for t in terms:
        b = is_bounded(t, oracle=oracle)
        if b is not Bounded.BOUNDED:
            report.skip()
            continue
        src = ql(t)
        if src not in reach:
            states, complete = arl.closure(sb, [src], node_budget)
            reach[src] = (set(states), complete)
        states, complete = reach[src]
        for rule, t2 in ljq_step_list(t):
            if is_bounded(t2, oracle=oracle) is not Bounded.BOUNDED:
                report.fail(Counterexample(t, str(rule), "reduct stays bounded", trace=(t, t2)))
                continue
            if ql(t2) in states:
                report.close()
            elif not complete:
                report.skip()
            else:
                report.fail(Counterexample(
                    t, str(rule), "ql(source) ->*σβ ql(target)", node_budget, trace=(t, t2)))
    return report


def check_stability(size_bound: int, terms=None) -> Report:
    """pv, pcv_x and hpp are preserved by strict steps; pv is disjoint from the other two."""
    from adjourn.harness import EnumSpec, enumerate_terms

    report = Report("ljq-stability", {"size": size_bound})
    parts = {k: Report(k) for k in ("disjoint", "pv", "pcv", "hpp")}
    if terms is None:
        terms = enumerate_terms(EnumSpec("ljq", size_bound))
    for t in terms:
        if not is_term(t):
            continue
        names = sorted(free_names(t))
        pv = is_pseudo_value(t)
        pcv = {x for x in names if is_pseudo_covalue(t, x)}
        hpp = in_hpp(t)
        if pv and pcv:
            parts["disjoint"].fail(Counterexample(t, "pv ∩ pcv", "disjoint"))
        elif pv and hpp:
            parts["disjoint"].fail(Counterexample(t, "pv ∩ hpp", "disjoint"))
        else:
            parts["disjoint"].close()
        for rule, t2 in ljq_step_list(t):
            kept = {
                "pv": not pv or is_pseudo_value(t2),
                "pcv": all(is_pseudo_covalue(t2, x) for x in pcv),
                "hpp": not hpp or in_hpp(t2),
            }
            for k, ok in kept.items():
                if ok:
                    parts[k].close()
                else:
                    parts[k].fail(Counterexample(t, str(rule), f"{k} membership kept", trace=(t, t2)))
    for k, part in parts.items():
        report.absorb(part, k)
    return report


# --------------------------------------------------------------------------
# printing and parsing


def show(t: Node) -> str:
    return _show(t, [], set(free_names(t)), 0)


def _bind(hint: str, names: list[str], avoid: set[str]) -> str:
    return pick_name(hint, avoid | set(names))


def _ref(v: Node, names: list[str]) -> str:
    if type(v) is Var:
        return v.name
    return names[-1 - v.index] if v.index < len(names) else f"#{v.index}"


def _show(t: Node, names: list[str], avoid: set[str], prec: int) -> str:
    # prec 1: base of a postfix substitution
    tt = type(t)
    if tt is Var or tt is BVar:
        return _ref(t, names)
    if tt is Cst:
        return f"<{_show(t.value, names, avoid, 0)}>"
    if tt is Ap:
        y = _bind(t.hint, names, avoid)
        return (f"{_ref(t.head, names)}({_show(t.value, names, avoid, 0)}; "
                f"{y}. {_show(t.cont, names + [y], avoid, 0)})")
    if tt is VLam:
        x = _bind(t.hint, names, avoid)
        s = f"\\{x}. {_show(t.body, names + [x], avoid, 0)}"
        return f"({s})" if prec else s
    if tt is VSub or tt is TSub:
        x = _bind(t.hint, names, avoid)
        return (f"{_show(t.target, names + [x], avoid, 1)} "
                f"[{x} := {_show(t.value, names, avoid, 0)}]")
    if tt is Cut:
        x = _bind(t.hint, names, avoid)
        s = (f"let {x} = {_show(t.left, names, avoid, 1)} in "
             f"{_show(t.right, names + [x], avoid, 0)}")
        return f"({s})" if prec else s
    raise TypeError(f"not a lambda-LJQ term: {t!r}")


def parse_ljq(text: str) -> Node:
    """Parse a term, or a value if the text is one."""
    s = TokenStream(text)
    t = _value(s) if _value_start(s) else _term(s)
    s.end()
    return t


def _value_start(s: TokenStream) -> bool:
    # a term never starts with '\\' nor with an identifier not followed by '('
    k = 0
    while s.peek_at(k).text == "(" and s.peek_at(k).kind == "sym":
        k += 1
    tok = s.peek_at(k)
    if tok.kind == "sym" and tok.text == "\\":
        return True
    if tok.kind == "ident" and tok.text not in KEYWORDS:
        nxt = s.peek_at(k + 1)
        return not (nxt.kind == "sym" and nxt.text == "(")
    return False


def _postfix(s: TokenStream, base: Node, node) -> Node:
    while s.accept("["):
        x = s.ident()
        s.expect(":=")
        v = _value(s)
        s.expect("]")
        base = node(v, abstract(base, x), x)
    return base


def _value(s: TokenStream) -> Node:
    if s.accept("\\"):
        x = s.ident()
        s.expect(".")
        return vlam(x, _term(s))
    if s.accept("("):
        v = _value(s)
        s.expect(")")
    else:
        v = Var(s.ident())
    return _postfix(s, v, VSub)


def _term(s: TokenStream) -> Node:
    if s.accept("let"):
        x = s.ident()
        s.expect("=")
        m = _term(s)
        s.expect("in")
        return cut(m, x, _term(s))
    if s.accept("<"):
        v = _value(s)
        s.expect(">")
        base = Cst(v)
    elif s.accept("("):
        base = _term(s)
        s.expect(")")
    elif s.peek.kind == "ident" and s.peek.text not in KEYWORDS:
        h = s.ident()
        s.expect("(")
        v = _value(s)
        s.expect(";")
        y = s.ident()
        s.expect(".")
        body = _term(s)
        s.expect(")")
        base = ap(h, v, y, body)
    else:
        s.fail("expected a lambda-LJQ term")
    return _postfix(s, base, TSub)
