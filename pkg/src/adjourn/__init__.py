"""Termination tooling for lambda-calculi with explicit substitutions.

Modules: :mod:`arl` (abstract reduction), :mod:`lam`, :mod:`marked`,
:mod:`ljq`, :mod:`folpo` (first-order encoding and path ordering),
:mod:`harness` (enumeration and suites) and :mod:`cli`.
"""

__version__ = "0.1.0"
