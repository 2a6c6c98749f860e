import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=150, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.register_profile("ci", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])


# --------------------------------------------------------------------------
# named syntax <-> library nodes

NAMES = ("x", "y", "z", "u")


def to_node(t):
    """Build a library term from a named tuple (see oracles.py)."""
    from adjourn import lam, ljq, marked
    from adjourn.syntax import Var

    k = t[0]
    if k == "v":
        return Var(t[1])
    if k == "l":
        return lam.lam(t[1], to_node(t[2]))
    if k == "a":
        return lam.App(to_node(t[1]), to_node(t[2]))
    if k == "m":
        return marked.ml(t[1], to_node(t[2]), to_node(t[3]))
    if k == "c":
        return ljq.Cst(to_node(t[1]))
    if k == "vl":
        return ljq.vlam(t[1], to_node(t[2]))
    if k == "vs":
        return ljq.vsub(to_node(t[1]), t[2], to_node(t[3]))
    if k == "ap":
        return ljq.ap(t[1], to_node(t[2]), t[3], to_node(t[4]))
    if k == "ts":
        return ljq.tsub(to_node(t[1]), t[2], to_node(t[3]))
    if k == "cut":
        return ljq.cut(to_node(t[1]), t[2], to_node(t[3]))
    raise ValueError(k)


# --------------------------------------------------------------------------
# strategies over named syntax

names = st.sampled_from(NAMES)


def named_lambda(max_leaves: int = 10):
    return st.recursive(
        st.builds(lambda x: ("v", x), names),
        lambda sub: st.one_of(
            st.builds(lambda x, b: ("l", x, b), names, sub),
            st.builds(lambda f, a: ("a", f, a), sub, sub),
        ),
        max_leaves=max_leaves,
    )


def named_marked(max_leaves: int = 8):
    return st.recursive(
        st.builds(lambda x: ("v", x), names),
        lambda sub: st.one_of(
            st.builds(lambda x, b: ("l", x, b), names, sub),
            st.builds(lambda f, a: ("a", f, a), sub, sub),
            st.builds(lambda x, b, a: ("m", x, b, a), names, sub, sub),
        ),
        max_leaves=max_leaves,
    )


def _ljq(max_leaves):
    var = st.builds(lambda x: ("v", x), names)

    def extend(sub):
        # ``sub`` yields pairs (value, term) so both categories grow together
        value = sub.map(lambda p: p[0])
        term = sub.map(lambda p: p[1])
        new_value = st.one_of(
            var,
            st.builds(lambda x, m: ("vl", x, m), names, term),
            st.builds(lambda v, x, w: ("vs", v, x, w), value, names, value),
        )
        new_term = st.one_of(
            value.map(lambda v: ("c", v)),
            st.builds(lambda h, v, y, m: ("ap", h, v, y, m), names, value, names, term),
            st.builds(lambda v, x, m: ("ts", v, x, m), value, names, term),
            st.builds(lambda m, x, n: ("cut", m, x, n), term, names, term),
        )
        return st.tuples(new_value, new_term)

    return st.recursive(st.tuples(var, var.map(lambda v: ("c", v))), extend, max_leaves=max_leaves)


def named_ljq_term(max_leaves: int = 8):
    return _ljq(max_leaves).map(lambda p: p[1])


def named_ljq_value(max_leaves: int = 8):
    return _ljq(max_leaves).map(lambda p: p[0])
