"""Closure operations of the local series ring: implicit solving, exact
division by a variable, and parity surgery in a chosen variable."""

from __future__ import annotations

from fractions import Fraction

from .errors import InternalInvariantError, PreconditionError
from .series import Series, _check_index


def solve_implicit(f: Series, k: int) -> Series:
    """Solve ``f = 0`` for ``x_k`` near the origin.

    Requires ``f(0) = 0`` and a nonzero linear coefficient in ``x_k``.
    Returns ``phi`` in the remaining ``n - 1`` variables (indices above
    ``k`` shifted down) with ``phi(0) = 0`` and ``f(x', phi(x')) = 0``
    through the certified degree of ``f``.

    Computed by successive substitution in the total-degree filtration:
    writing ``f = c*x_k + rest``, iterate ``phi <- -(1/c) * rest(x', phi)``.
    The update gains one degree of agreement per pass because ``rest`` has
    no constant or linear-x_k term, so the stored table stabilises within
    ``trunc + 2`` passes; the fixpoint satisfies the equation exactly
    through the truncation.
    """
    _check_index(k, f.nvars)
    if f.constant_term() != 0:
        raise PreconditionError("implicit solve requires a root at the origin")
    linear = tuple(1 if i == k - 1 else 0 for i in range(f.nvars))
    c = f.coefficient(linear)
    if c == 0:
        raise PreconditionError(
            f"implicit solve requires a nonzero linear coefficient in x{k}")
    rest = f - Series.monomial(linear, f.nvars, f.trunc, c)
    scale = Fraction(-1) / c
    phi = Series.zero(f.nvars - 1, f.trunc)
    for _ in range(f.trunc + 2):
        nxt = rest.substitute(k, phi) * scale
        if nxt.same_data(phi):
            return phi.with_guarantee(f.guaranteed_degree)
        phi = nxt
    raise InternalInvariantError("implicit iteration did not converge")


def divide_by_variable(f: Series, k: int) -> Series:
    """Exact division by the monomial ``x_k``: every term must carry a
    positive ``x_k`` exponent.  One degree of certainty is spent (a result
    term of degree D reads a source term of degree D + 1)."""
    _check_index(k, f.nvars)
    acc = {}
    for e, c in f.terms.items():
        if e[k - 1] == 0:
            raise PreconditionError(
                f"term {e} has no x{k} factor: monomial division is inexact")
        acc[e[:k - 1] + (e[k - 1] - 1,) + e[k:]] = c
    return Series(f.nvars, f.trunc, acc, max(f.guaranteed_degree - 1, 0))


def even_odd_split(f: Series, k: int) -> tuple[Series, Series]:
    """Split by parity of the ``x_k`` exponent; the parts sum to ``f``
    exactly and keep its certification."""
    _check_index(k, f.nvars)
    even, odd = {}, {}
    for e, c in f.terms.items():
        (even if e[k - 1] % 2 == 0 else odd)[e] = c
    return (Series(f.nvars, f.trunc, even, f.guaranteed_degree),
            Series(f.nvars, f.trunc, odd, f.guaranteed_degree))


def halve_exponents(f: Series, k: int) -> Series:
    """Inverse of :meth:`Series.substitute_square` on series even in
    ``x_k``: halves every ``x_k`` exponent.

    A lossless table rewrite: each stored coefficient is a verbatim source
    coefficient, so the certification bound is carried over per term (the
    result's coefficient at ``(a', j)`` is the source's at ``(a', 2j)``).
    """
    _check_index(k, f.nvars)
    acc = {}
    for e, c in f.terms.items():
        if e[k - 1] % 2:
            raise PreconditionError(
                f"term {e} has odd x{k} exponent: cannot halve")
        acc[e[:k - 1] + (e[k - 1] // 2,) + e[k:]] = c
    return Series(f.nvars, f.trunc, acc, f.guaranteed_degree)
