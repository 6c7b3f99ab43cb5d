"""Weierstrass division and preparation for truncated power series.

Division of ``g`` by ``f`` with ``f`` of finite order ``d`` in a chosen
variable produces ``g = q*f + r`` with the remainder of x_k-degree below
``d``.  Preparation factors ``f = U * P`` with ``U`` a unit and ``P`` a
monic distinguished polynomial ``x_k^d + a_1*x_k^(d-1) + ... + a_d`` whose
coefficients are series in the remaining variables vanishing at the origin.

Both lose exactly ``d`` degrees of certainty: coefficients of the outputs
at total degree D depend on input coefficients up to degree D + d.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariantError, PreconditionError
from .series import FLAT, Series, _check_index


@dataclass(frozen=True)
class DistinguishedPoly:
    """Monic polynomial ``x_k^d + a_1*x_k^(d-1) + ... + a_d`` in the
    distinguished variable ``k`` of an ``nvars``-dimensional space.  The
    ``coeffs`` tuple holds ``a_1 .. a_d`` as series in the remaining
    ``nvars - 1`` variables (indices above ``k`` shifted down), each
    vanishing at the origin.  ``d = 0`` encodes the constant polynomial 1."""

    d: int
    k: int
    nvars: int
    trunc: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.d:
            raise ValueError("need exactly d trailing coefficients")
        for a in self.coeffs:
            if a.nvars != self.nvars - 1:
                raise ValueError("coefficient lives in the wrong space")
            if a.constant_term() != 0:
                raise ValueError("distinguished coefficients must vanish at 0")

    def expand(self) -> Series:
        """Embed back into the full space as a single series."""
        expo = tuple(self.d if i == self.k - 1 else 0 for i in range(self.nvars))
        acc = Series.monomial(expo, self.nvars, self.trunc)
        gd = self.trunc
        for i, a in enumerate(self.coeffs, start=1):
            power = tuple(self.d - i if j == self.k - 1 else 0
                          for j in range(self.nvars))
            acc = acc + a.embed_variable(self.k) * Series.monomial(
                power, self.nvars, self.trunc)
            gd = min(gd, a.guaranteed_degree + self.d - i)
        return acc.with_guarantee(gd)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "nvars": self.nvars,
            "trunc": self.trunc,
            "coeffs": [a.to_dict() for a in self.coeffs],
        }


@dataclass(frozen=True)
class DivisionResult:
    """``dividend = quotient * divisor + remainder`` with
    ``deg_{x_k}(remainder) < d``, certified through ``guaranteed_degree``."""

    quotient: Series
    remainder: Series
    d: int
    k: int
    guaranteed_degree: int

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "guaranteed_degree": self.guaranteed_degree,
            "quotient": self.quotient.to_dict(),
            "remainder": self.remainder.to_dict(),
        }


@dataclass(frozen=True)
class PreparationResult:
    """``f = unit * poly.expand()`` certified through ``guaranteed_degree``."""

    unit: Series
    poly: DistinguishedPoly
    guaranteed_degree: int

    def to_dict(self) -> dict:
        return {
            "guaranteed_degree": self.guaranteed_degree,
            "unit": self.unit.to_dict(),
            "poly": self.poly.to_dict(),
            "poly_expanded": self.poly.expand().to_dict(),
        }


def weierstrass_divide(g: Series, f: Series, k: int) -> DivisionResult:
    """Divide ``g`` by ``f``, distinguished in variable ``k``.

    Writes ``f = low + x_k^d * high`` with ``high`` a unit (``d`` is the
    order of ``f`` on the x_k axis) and iterates in the total-degree
    filtration: with ``B = -high^-1 * low`` (every term of ``B`` involves a
    variable other than x_k, so each pass strictly raises that order),

        delta_1 = high-part of g,   delta_{m+1} = high-part of delta_m * B,

    the quotient against the normalised divisor is the finite sum of the
    deltas and the remainder collects the matching low parts.  The loop is
    guaranteed to exhaust within ``trunc + 2`` passes.
    """
    g._check_space(f)
    _check_index(k, f.nvars)
    d = f.order_in(k)
    if d is FLAT:
        raise PreconditionError(
            f"divisor is flat in x{k}: no finite order, division undefined")
    trunc = min(g.trunc, f.trunc)
    certified = max(min(g.guaranteed_degree, f.guaranteed_degree) - d, 0)
    g = g.truncate(trunc)
    f = f.truncate(trunc)
    if d == 0:
        q = (g * f.inverse()).with_guarantee(certified)
        return DivisionResult(q, Series.zero(f.nvars, trunc), 0, k, certified)

    low, high = f.split_in_variable(k, d)
    unit_inv = high.inverse()
    b = -(unit_inv * low)
    rem, delta = g.split_in_variable(k, d)
    quot = delta
    steps = 0
    while not delta.is_zero():
        steps += 1
        if steps > trunc + 2:
            raise InternalInvariantError("division iteration did not converge")
        lo, delta = (delta * b).split_in_variable(k, d)
        rem = rem + lo
        quot = quot + delta
    q = (quot * unit_inv).with_guarantee(certified)
    return DivisionResult(q, rem.with_guarantee(certified), d, k, certified)


def weierstrass_prepare(f: Series, k: int) -> PreparationResult:
    """Factor ``f = U * P`` with ``U`` a unit and ``P`` distinguished in
    variable ``k``.

    Obtained by dividing ``x_k^d`` by ``f``: the quotient is a unit whose
    inverse is ``U``, and ``P = x_k^d - remainder``.  A unit ``f`` (order 0)
    prepares trivially as ``U = f``, ``P = 1``.
    """
    _check_index(k, f.nvars)
    d = f.order_in(k)
    if d is FLAT:
        raise PreconditionError(
            f"series is flat in x{k}: no finite order, preparation undefined")
    n = f.nvars
    if d == 0:
        poly = DistinguishedPoly(0, k, n, f.trunc, ())
        return PreparationResult(f, poly, f.guaranteed_degree)

    expo = tuple(d if i == k - 1 else 0 for i in range(n))
    division = weierstrass_divide(Series.monomial(expo, n, f.trunc), f, k)
    if division.quotient.constant_term() == 0:
        raise InternalInvariantError("division quotient lost its unit")
    unit = division.quotient.inverse()
    coeffs = []
    for i in range(1, d + 1):
        a = -division.remainder.coefficient_series(k, d - i)
        if a.constant_term() != 0:
            raise InternalInvariantError(
                "distinguished coefficient does not vanish at the origin")
        coeffs.append(a)
    poly = DistinguishedPoly(d, k, n, f.trunc, tuple(coeffs))
    return PreparationResult(unit, poly, division.guaranteed_degree)
