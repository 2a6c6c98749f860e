"""Locally nameless term core shared by every calculus in the package.

Bound variables are de Bruijn indices (``BVar``), free variables are names
(``Var``).  Binder nodes carry a ``hint`` naming their variable for printing;
hints take no part in equality or hashing, so structural equality is
alpha-equivalence.

Each node class lists its child attributes in ``KIDS`` and, in ``BINDS``, how
many binders each child sits under.  The generic operations below (shifting,
instantiation, abstraction, free variables) are written once against that
description.
"""

from __future__ import annotations

import itertools
from typing import Callable, ClassVar, Iterator


class Node:
    """Immutable term node with a precomputed structural hash."""

    __slots__ = ("_hash",)
    KIDS: ClassVar[tuple[str, ...]] = ()
    BINDS: ClassVar[tuple[int, ...]] = ()
    HAS_HINT: ClassVar[bool] = False

    def _seal(self, payload=()) -> None:
        object.__setattr__(
            self,
            "_hash",
            hash((type(self).__name__, payload, *(hash(k) for k in self.kids()))),
        )

    def kids(self) -> tuple[Node, ...]:
        return tuple(getattr(self, k) for k in self.KIDS)

    def rebuild(self, kids: tuple[Node, ...]) -> Node:
        raise NotImplementedError

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._payload() == other._payload() and self.kids() == other.kids()

    def __ne__(self, other) -> bool:
        return not self == other

    def _payload(self):
        return ()

    def __repr__(self) -> str:
        parts = [repr(getattr(self, k)) for k in self.KIDS]
        payload = self._payload()
        if payload != ():
            parts.insert(0, repr(payload))
        return f"{type(self).__name__}({', '.join(parts)})"


def _init(obj: Node, **fields) -> None:
    for k, v in fields.items():
        object.__setattr__(obj, k, v)


class Var(Node):
    """Free variable, referenced by name."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        _init(self, name=name)
        self._seal(name)

    def _payload(self):
        return self.name

    def rebuild(self, kids):
        return self


class BVar(Node):
    """Bound variable as a de Bruijn index."""

    __slots__ = ("index",)

    def __init__(self, index: int):
        _init(self, index=index)
        self._seal(index)

    def _payload(self):
        return self.index

    def rebuild(self, kids):
        return self


def is_var(t: Node) -> bool:
    return type(t) is Var or type(t) is BVar


# --------------------------------------------------------------------------
# generic traversals


def map_kids(t: Node, f: Callable[[Node, int], Node]) -> Node:
    """Rebuild ``t`` with ``f(child, binders_above_child)`` for each child."""
    kids = t.kids()
    if not kids:
        return t
    new = tuple(f(k, b) for k, b in zip(kids, t.BINDS))
    if all(a is b for a, b in zip(kids, new)):
        return t
    return t.rebuild(new)


def shift(t: Node, d: int, cutoff: int = 0) -> Node:
    """Add ``d`` to every bound index ``>= cutoff``."""
    if d == 0:
        return t
    if type(t) is BVar:
        return BVar(t.index + d) if t.index >= cutoff else t
    if type(t) is Var:
        return t
    return map_kids(t, lambda k, b: shift(k, d, cutoff + b))


def subst_index(t: Node, j: int, value: Node) -> Node:
    """Replace index ``j`` by ``value`` and close the gap above it."""
    if type(t) is BVar:
        if t.index == j:
            return shift(value, j)
        if t.index > j:
            return BVar(t.index - 1)
        return t
    if type(t) is Var:
        return t
    return map_kids(t, lambda k, b: subst_index(k, j + b, value))


def instantiate(body: Node, value: Node) -> Node:
    """``body`` lives under one binder; substitute ``value`` for it."""
    return subst_index(body, 0, value)


def abstract(t: Node, name: str, depth: int = 0) -> Node:
    """Turn free ``name`` into the bound variable of a new binder at ``depth``."""
    if type(t) is Var:
        return BVar(depth) if t.name == name else t
    if type(t) is BVar:
        return BVar(t.index + 1) if t.index >= depth else t
    return map_kids(t, lambda k, b: abstract(k, name, depth + b))


def replace_free(t: Node, name: str, value: Node) -> Node:
    """Capture-avoiding substitution of ``value`` for the free name ``name``."""
    return instantiate(abstract(t, name), value)


def occurs_loose(t: Node, i: int = 0) -> bool:
    """True iff bound index ``i`` (relative to ``t``) occurs in ``t``."""
    if type(t) is BVar:
        return t.index == i
    if type(t) is Var:
        return False
    return any(occurs_loose(k, i + b) for k, b in zip(t.kids(), t.BINDS))


def max_loose(t: Node, depth: int = 0) -> int:
    """Largest loose index in ``t`` (``-1`` when locally closed)."""
    if type(t) is BVar:
        return t.index - depth
    if type(t) is Var:
        return -1
    return max((max_loose(k, depth + b) for k, b in zip(t.kids(), t.BINDS)), default=-1)


def free_names(t: Node) -> frozenset[str]:
    if type(t) is Var:
        return frozenset((t.name,))
    if type(t) is BVar:
        return frozenset()
    out: set[str] = set()
    for k in t.kids():
        out |= free_names(k)
    return frozenset(out)


def size(t: Node) -> int:
    """Size measure: each node counts ``WEIGHT`` (default 1)."""
    return getattr(type(t), "WEIGHT", 1) + sum(size(k) for k in t.kids())


def subterms(t: Node) -> Iterator[Node]:
    """All subterm occurrences, loose indices left as they are."""
    yield t
    for k in t.kids():
        yield from subterms(k)


def contains(t: Node, cls: type) -> bool:
    if isinstance(t, cls):
        return True
    return any(contains(k, cls) for k in t.kids())


_fresh = itertools.count()


def fresh_name(hint: str = "v") -> str:
    """A name no parser can produce."""
    return f"{hint}%{next(_fresh)}"


def pick_name(hint: str, avoid) -> str:
    """``hint`` primed until it is not in ``avoid``."""
    name = hint or "v"
    while name in avoid:
        name += "'"
    return name


def open_named(body: Node, hint: str, avoid) -> tuple[str, Node]:
    name = pick_name(hint, avoid)
    return name, instantiate(body, Var(name))


def reindex(t: Node, f: Callable[[int], int], depth: int = 0) -> Node:
    """Rename loose indices: loose index ``i`` becomes ``f(i)``."""
    if type(t) is BVar:
        return BVar(f(t.index - depth) + depth) if t.index >= depth else t
    if type(t) is Var:
        return t
    return map_kids(t, lambda k, b: reindex(k, f, depth + b))


def swap01(t: Node) -> Node:
    """Exchange the two innermost binders of ``t``."""
    return reindex(t, lambda i: 1 - i if i < 2 else i)


def drop_index(t: Node, j: int) -> Node:
    """Remove loose index ``j`` (which must not occur), closing the gap."""
    return subst_index(t, j, BVar(0))


def fill_loose(t: Node, names: list[str], depth: int = 0) -> Node:
    """Replace loose index ``i`` by ``Var(names[-1 - i])``."""
    if type(t) is BVar:
        i = t.index - depth
        if 0 <= i < len(names):
            return Var(names[-1 - i])
        return t
    if type(t) is Var:
        return t
    return map_kids(t, lambda k, b: fill_loose(k, names, depth + b))


def loose_indices(t: Node, depth: int = 0) -> set[int]:
    if type(t) is BVar:
        return {t.index - depth} if t.index >= depth else set()
    if type(t) is Var:
        return set()
    out: set[int] = set()
    for k, b in zip(t.kids(), t.BINDS):
        out |= loose_indices(k, depth + b)
    return out


def hints(t: Node) -> tuple:
    """Binder hints in preorder; with ``t`` itself this pins down a named term."""
    return tuple(getattr(s, "hint", "") for s in subterms(t))
