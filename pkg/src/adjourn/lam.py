"""Pure lambda-calculus: terms, substitution, beta and sigma reduction.

Terms are locally nameless (see :mod:`adjourn.syntax`), so ``==`` is
alpha-equivalence and terms can be used directly as graph states.

Size convention: variables and abstractions weigh 1, applications weigh 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

from adjourn.arl import RelView
from adjourn.syntax import (
    BVar,
    Node,
    Var,
    _init,
    abstract,
    free_names,
    instantiate,
    pick_name,
    replace_free,
    shift,
)

__all__ = [
    "Var", "BVar", "Lam", "App", "Term",
    "lam", "app", "subst", "beta_steps", "sigma_steps", "sigma_beta_steps",
    "nonnested_lambda_pairs", "count_redexes", "infer_simple_type",
    "Atom", "Arrow", "SimpleType", "show",
]


class Lam(Node):
    __slots__ = ("body", "hint")
    KIDS = ("body",)
    BINDS = (1,)

    def __init__(self, body: Node, hint: str = "x"):
        _init(self, body=body, hint=hint)
        self._seal()

    def kids(self):
        return (self.body,)

    def rebuild(self, kids):
        return Lam(kids[0], self.hint)


class App(Node):
    __slots__ = ("fun", "arg")
    KIDS = ("fun", "arg")
    BINDS = (0, 0)
    WEIGHT = 0

    def __init__(self, fun: Node, arg: Node):
        _init(self, fun=fun, arg=arg)
        self._seal()

    def kids(self):
        return (self.fun, self.arg)

    def rebuild(self, kids):
        return App(kids[0], kids[1])


Term = Union[Var, BVar, Lam, App]


def lam(name: str, body: Node) -> Lam:
    """Named-style constructor: bind the free ``name`` of ``body``."""
    return Lam(abstract(body, name), name)


def app(f: Node, *args: Node) -> Node:
    for a in args:
        f = App(f, a)
    return f


def subst(body: Node, var: str, value: Node) -> Node:
    """Capture-avoiding ``body{var := value}``."""
    return replace_free(body, var, value)


# --------------------------------------------------------------------------
# reduction


def beta_steps(t: Node) -> set[Node]:
    """All one-step beta reducts under full contextual closure."""
    out: set[Node] = set()
    _beta(t, out.add)
    return out


def _beta(t: Node, emit) -> None:
    tt = type(t)
    if tt is App:
        f, a = t.fun, t.arg
        if type(f) is Lam:
            emit(instantiate(f.body, a))
        _beta(f, lambda r: emit(App(r, a)))
        _beta(a, lambda r: emit(App(f, r)))
    elif tt is Lam:
        _beta(t.body, lambda r: emit(Lam(r, t.hint)))


def sigma_root(t: Node) -> Optional[Node]:
    """(λx.M) ((λy.N) P) -> (λy.(λx.M) N) P, or None."""
    if type(t) is App and type(t.fun) is Lam and type(t.arg) is App and type(t.arg.fun) is Lam:
        m = t.fun
        inner = t.arg.fun
        # M goes under the y binder: shift its free indices past it
        return App(Lam(App(Lam(shift(m.body, 1, 1), m.hint), inner.body), inner.hint), t.arg.arg)
    return None


def sigma_steps(t: Node) -> set[Node]:
    """All one-step sigma reducts under full contextual closure."""
    out: set[Node] = set()
    _sigma(t, out.add)
    return out


def _sigma(t: Node, emit) -> None:
    tt = type(t)
    if tt is App:
        r = sigma_root(t)
        if r is not None:
            emit(r)
        f, a = t.fun, t.arg
        _sigma(f, lambda r: emit(App(r, a)))
        _sigma(a, lambda r: emit(App(f, r)))
    elif tt is Lam:
        _sigma(t.body, lambda r: emit(Lam(r, t.hint)))


def sigma_beta_steps(t: Node) -> set[Node]:
    return beta_steps(t) | sigma_steps(t)


BETA = RelView(beta_steps, "β")
SIGMA = RelView(sigma_steps, "σ")
SIGMA_BETA = RelView(sigma_beta_steps, "σβ")


def count_redexes(t: Node) -> int:
    """Number of beta-redex occurrences."""
    tt = type(t)
    if tt is App:
        return (type(t.fun) is Lam) + count_redexes(t.fun) + count_redexes(t.arg)
    if tt is Lam:
        return count_redexes(t.body)
    return 0


def nonnested_lambda_pairs(t: Node) -> int:
    """Unordered pairs of abstraction occurrences neither inside the other."""
    lams, nested = _lam_stats(t)
    return lams * (lams - 1) // 2 - nested


def _lam_stats(t: Node) -> tuple[int, int]:
    # (number of λs, number of (outer, inner) nested pairs)
    tt = type(t)
    if tt is Lam:
        n, p = _lam_stats(t.body)
        return n + 1, p + n
    if tt is App:
        n1, p1 = _lam_stats(t.fun)
        n2, p2 = _lam_stats(t.arg)
        return n1 + n2, p1 + p2
    return 0, 0


# --------------------------------------------------------------------------
# simple types


@dataclass(frozen=True)
class Atom:
    id: int

    def __str__(self):
        return _atom_name(self.id)


@dataclass(frozen=True)
class Arrow:
    dom: "SimpleType"
    cod: "SimpleType"

    def __str__(self):
        d = f"({self.dom})" if isinstance(self.dom, Arrow) else str(self.dom)
        return f"{d}→{self.cod}"


SimpleType = Union[Atom, Arrow]


def _atom_name(i: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return letters[i % 26] + ("" if i < 26 else str(i // 26))


class Unifier:
    """First-order unification over simple types with atoms as metavariables."""

    def __init__(self):
        self.next = 0
        # atoms below ``rigid`` are base types and never get bound
        self.rigid = 0
        self.sol: dict[int, SimpleType] = {}

    def fresh(self) -> Atom:
        self.next += 1
        return Atom(self.next - 1)

    def walk(self, t: SimpleType) -> SimpleType:
        while isinstance(t, Atom) and t.id in self.sol:
            t = self.sol[t.id]
        return t

    def occurs(self, i: int, t: SimpleType) -> bool:
        t = self.walk(t)
        if isinstance(t, Atom):
            return t.id == i
        return self.occurs(i, t.dom) or self.occurs(i, t.cod)

    def unify(self, a: SimpleType, b: SimpleType) -> bool:
        a, b = self.walk(a), self.walk(b)
        if isinstance(b, Atom) and b.id >= self.rigid and not (isinstance(a, Atom) and a.id >= self.rigid):
            a, b = b, a
        if isinstance(a, Atom):
            if isinstance(b, Atom) and a.id == b.id:
                return True
            if a.id < self.rigid or self.occurs(a.id, b):
                return False
            self.sol[a.id] = b
            return True
        if isinstance(b, Atom):
            return False
        return self.unify(a.dom, b.dom) and self.unify(a.cod, b.cod)

    def resolve(self, t: SimpleType) -> SimpleType:
        t = self.walk(t)
        if isinstance(t, Arrow):
            return Arrow(self.resolve(t.dom), self.resolve(t.cod))
        return t


def canonical_type(t: SimpleType, base: int = 0) -> SimpleType:
    """Rename atoms ``>= base`` to base, base+1, ... in order of first occurrence."""
    ren: dict[int, int] = {}

    def go(t):
        if isinstance(t, Atom):
            return Atom(ren.setdefault(t.id, base + len(ren))) if t.id >= base else t
        return Arrow(go(t.dom), go(t.cod))

    return go(t)


def finish_type(u: Unifier, ty: Optional[SimpleType], base: int) -> Optional[SimpleType]:
    """Resolve an inferred type; atoms below ``base`` come from the caller and are rigid."""
    if ty is None:
        return None
    return canonical_type(u.resolve(ty), base)


def infer_simple_type(t: Node, ctx: Optional[dict[str, SimpleType]] = None) -> Optional[SimpleType]:
    """Principal simple type of ``t``, or None when untypable.

    Free variables missing from ``ctx`` get fresh atomic types.
    """
    u = Unifier()
    env: dict[str, SimpleType] = dict(ctx or {})
    # caller atoms are base types; fresh ones start above them
    base = u.next = u.rigid = 1 + max((_max_atom(ty) for ty in env.values()), default=-1)
    for name in sorted(free_names(t)):
        if name not in env:
            env[name] = u.fresh()

    def go(t: Node, bound: list[SimpleType]) -> Optional[SimpleType]:
        tt = type(t)
        if tt is Var:
            return env[t.name]
        if tt is BVar:
            return bound[-1 - t.index]
        if tt is Lam:
            a = u.fresh()
            b = go(t.body, bound + [a])
            return None if b is None else Arrow(a, b)
        if tt is App:
            f = go(t.fun, bound)
            if f is None:
                return None
            x = go(t.arg, bound)
            if x is None:
                return None
            r = u.fresh()
            return r if u.unify(f, Arrow(x, r)) else None
        raise TypeError(f"not a lambda term: {t!r}")

    return finish_type(u, go(t, []), base)


def _max_atom(t: SimpleType) -> int:
    if isinstance(t, Atom):
        return t.id
    return max(_max_atom(t.dom), _max_atom(t.cod))


# --------------------------------------------------------------------------
# printing


def show(t: Node, names: Optional[list[str]] = None) -> str:
    """Surface syntax ``\\x. M`` / ``M N``; bound names avoid capture."""
    avoid = set(free_names(t))
    return _show(t, names or [], avoid, 0)


def _show(t: Node, names: list[str], avoid: set[str], prec: int) -> str:
    # prec 0: anything, 1: function position, 2: argument position
    tt = type(t)
    if tt is Var:
        return t.name
    if tt is BVar:
        return names[-1 - t.index] if t.index < len(names) else f"#{t.index}"
    if tt is Lam:
        name = pick_name(t.hint, avoid | set(names))
        s = f"\\{name}. {_show(t.body, names + [name], avoid, 0)}"
        return f"({s})" if prec > 0 else s
    if tt is App:
        s = f"{_show(t.fun, names, avoid, 1)} {_show(t.arg, names, avoid, 2)}"
        return f"({s})" if prec == 2 else s
    return _show_other(t, names, avoid, prec)


def _show_other(t, names, avoid, prec):
    show_hook = getattr(t, "show", None)
    if show_hook is None:
        raise TypeError(f"cannot print {t!r}")
    return show_hook(names, avoid, prec, _show)


def iter_positions(t: Node) -> Iterator[tuple[tuple[int, ...], Node]]:
    """(path, subterm) pairs in preorder; paths index into ``kids()``."""
    yield (), t
    for i, k in enumerate(t.kids()):
        for p, s in iter_positions(k):
            yield (i,) + p, s
