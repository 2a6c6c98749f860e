"""Independent reference implementations used to cross-check the library.

Everything here works on plain named syntax (nested tuples) and is written
directly from the grammar and the textbook definitions, sharing no code with
``adjourn``.  Slow and obvious on purpose.

Named lambda / marked terms::

    ("v", name) | ("l", x, body) | ("a", fun, arg) | ("m", x, body, arg)

Named lambda-LJQ::

    values  ("v", name) | ("vl", x, M) | ("vs", V, x, V')
    terms   ("c", V) | ("ap", head, V, y, N) | ("ts", V, x, M) | ("cut", M, x, N)
"""

from __future__ import annotations

import itertools
from functools import lru_cache

BINDERS = ("a", "b", "c")

# --------------------------------------------------------------------------
# free variables and canonical forms

# kind -> (indices of binder-name fields, {child index: binder field index or None})
_SHAPE = {
    "l": ((1,), {2: 1}),
    "a": ((), {1: None, 2: None}),
    "m": ((1,), {2: 1, 3: None}),
    "c": ((), {1: None}),
    "vl": ((1,), {2: 1}),
    "vs": ((2,), {1: None, 3: 2}),
    "ap": ((3,), {2: None, 4: 3}),
    "ts": ((2,), {1: None, 3: 2}),
    "cut": ((2,), {1: None, 3: 2}),
}


def fv(t) -> set:
    if t[0] == "v":
        return {t[1]}
    out = set()
    if t[0] == "ap":
        out.add(t[1])
    for i, b in _SHAPE[t[0]][1].items():
        s = fv(t[i])
        if b is not None:
            s = s - {t[b]}
        out |= s
    return out


def canon(t, env=()):
    """De Bruijn form: bound occurrences become ints, free ones stay names."""
    def ref(name):
        if name in env:
            return env.index(name)
        return "free:" + name

    if t[0] == "v":
        return ref(t[1])
    out = [t[0]]
    if t[0] == "ap":
        out.append(ref(t[1]))
    for i, b in _SHAPE[t[0]][1].items():
        out.append(canon(t[i], (t[b],) + env if b is not None else env))
    return tuple(out)


def alpha_eq(s, t) -> bool:
    return canon(s) == canon(t)


# --------------------------------------------------------------------------
# brute-force enumeration against the grammar


def _names(pool):
    return tuple(pool) + BINDERS


@lru_cache(maxsize=None)
def _raw_lam(n: int, pool: tuple, marked: bool) -> tuple:
    out = []
    if n == 1:
        out += [("v", x) for x in _names(pool)]
    if n >= 2:
        out += [("l", x, b) for x in BINDERS for b in _raw_lam(n - 1, pool, marked)]
    for a in range(1, n):
        out += [("a", f, x) for f in _raw_lam(a, pool, marked) for x in _raw_lam(n - a, pool, marked)]
    if marked:
        for a in range(1, n - 1):
            out += [("m", x, b, g) for x in BINDERS for b in _raw_lam(a, pool, marked)
                    for g in _raw_lam(n - 1 - a, pool, marked)]
    return tuple(out)


@lru_cache(maxsize=None)
def _raw_val(n: int, pool: tuple) -> tuple:
    out = []
    if n == 1:
        out += [("v", x) for x in _names(pool)]
    if n >= 2:
        out += [("vl", x, m) for x in BINDERS for m in _raw_term(n - 1, pool)]
    for a in range(1, n - 1):
        out += [("vs", v, x, w) for x in BINDERS for v in _raw_val(a, pool)
                for w in _raw_val(n - 1 - a, pool)]
    return tuple(out)


@lru_cache(maxsize=None)
def _raw_term(n: int, pool: tuple) -> tuple:
    out = [("c", v) for v in _raw_val(n, pool)]
    for a in range(1, n - 1):
        rest = n - 1 - a
        out += [("ap", h, v, y, m) for h in _names(pool) for y in BINDERS
                for v in _raw_val(a, pool) for m in _raw_term(rest, pool)]
        out += [("ts", v, x, m) for x in BINDERS for v in _raw_val(a, pool) for m in _raw_term(rest, pool)]
        out += [("cut", m, x, k) for x in BINDERS for m in _raw_term(a, pool) for k in _raw_term(rest, pool)]
    return tuple(out)


def brute_classes(calculus: str, max_size: int, pool=("x", "y", "z")) -> set:
    """Alpha-classes (as canonical forms) of all terms up to ``max_size``."""
    pool = tuple(pool)
    raw = []
    for n in range(1, max_size + 1):
        if calculus == "ljq":
            raw += _raw_val(n, pool) + _raw_term(n, pool)
        else:
            raw += _raw_lam(n, pool, calculus == "marked")
    return {canon(t) for t in raw if fv(t) <= set(pool)}


# --------------------------------------------------------------------------
# named lambda calculus


_fresh = itertools.count()


def fresh(avoid) -> str:
    while True:
        name = f"r{next(_fresh)}"
        if name not in avoid:
            return name


def subst(t, x: str, v):
    """Capture-avoiding ``t{x:=v}`` by renaming binders on demand."""
    k = t[0]
    if k == "v":
        return v if t[1] == x else t
    if k == "a":
        return ("a", subst(t[1], x, v), subst(t[2], x, v))
    if k == "l":
        y, body = t[1], t[2]
        if y == x:
            return t
        if y in fv(v):
            z = fresh(fv(v) | fv(body) | {x})
            body, y = subst(body, y, ("v", z)), z
        return ("l", y, subst(body, x, v))
    raise ValueError(k)


def beta_reducts(t) -> list:
    out = []
    if t[0] == "a":
        f, a = t[1], t[2]
        if f[0] == "l":
            out.append(subst(f[2], f[1], a))
        out += [("a", g, a) for g in beta_reducts(f)]
        out += [("a", f, b) for b in beta_reducts(a)]
    elif t[0] == "l":
        out += [("l", t[1], b) for b in beta_reducts(t[2])]
    return out


def sigma_reducts(t) -> list:
    out = []
    if t[0] == "a":
        f, a = t[1], t[2]
        if f[0] == "l" and a[0] == "a" and a[1][0] == "l":
            y, n, p = a[1][1], a[1][2], a[2]
            if y in fv(f):
                z = fresh(fv(f) | fv(n) | fv(p))
                n, y = subst(n, y, ("v", z)), z
            out.append(("a", ("l", y, ("a", f, n)), p))
        out += [("a", g, a) for g in sigma_reducts(f)]
        out += [("a", f, b) for b in sigma_reducts(a)]
    elif t[0] == "l":
        out += [("l", t[1], b) for b in sigma_reducts(t[2])]
    return out


def lambda_paths(t, path=()) -> list:
    out = [path] if t[0] == "l" else []
    for i, k in enumerate(t[1:], start=1):
        if isinstance(k, tuple):
            out += lambda_paths(k, path + (i,))
    return out


def nonnested_pairs(t) -> int:
    """Pairs of lambda occurrences neither of which lies inside the other."""
    ps = lambda_paths(t)
    return sum(1 for p, q in itertools.combinations(ps, 2)
               if p != q[:len(p)] and q != p[:len(q)])


# --------------------------------------------------------------------------
# finite relations


def longest(edges: dict, s, stack=()):
    """Length of the longest path from ``s``; None if a cycle is reachable."""
    if s in stack:
        return None
    best = 0
    for t in edges.get(s, ()):
        d = longest(edges, t, stack + (s,))
        if d is None:
            return None
        best = max(best, d + 1)
    return best


def lex_successors(edges: list[dict], universes: list, tup) -> set:
    """The lexicographic reduction straight from its definition."""
    out = set()
    k = len(edges)
    for i in range(k):
        for n in edges[i].get(tup[i], ()):
            for tail in itertools.product(*universes[i + 1:]):
                if all(longest(edges[j], tail[j - i - 1]) is not None for j in range(i + 1, k)):
                    out.add(tuple(tup[:i]) + (n,) + tail)
    return out


# --------------------------------------------------------------------------
# lexicographic path ordering over an abstract precedence


def lpo(s, t, gt_sym) -> bool:
    """Naive recursive LPO; terms are ``(symbol, args)`` pairs, no memo."""
    if s == t:
        return False
    f, ss = s
    g, ts = t
    if any(si == t or lpo(si, t, gt_sym) for si in ss):
        return True
    if gt_sym(f, g):
        return all(lpo(s, tj, gt_sym) for tj in ts)
    if f == g:
        for si, ti in zip(ss, ts):
            if si != ti:
                return lpo(si, ti, gt_sym) and all(lpo(s, tj, gt_sym) for tj in ts)
    return False
