"""Samplers and comparison helpers shared by the test modules.

Randomised suites use seeded ``random.Random`` instances so every run
exercises identical cases; failures are therefore reproducible verbatim.
"""

from fractions import Fraction

from wseries import Series, parse_series

NONZERO = [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]
DENOMS = [1, 1, 1, 2, 3, 4]


def S(text, nvars, trunc):
    """Parse shorthand used throughout the tests."""
    return parse_series(text, nvars, trunc)


def nonzero_rational(rng):
    return Fraction(rng.choice(NONZERO), rng.choice(DENOMS))


def random_exponent(rng, nvars, lo, hi):
    degree = rng.randint(lo, hi)
    expo = [0] * nvars
    for _ in range(degree):
        expo[rng.randrange(nvars)] += 1
    return tuple(expo)


def random_series(rng, nvars, trunc, nterms=10, min_degree=0):
    terms = {}
    for _ in range(nterms):
        terms[random_exponent(rng, nvars, min_degree, trunc)] = \
            nonzero_rational(rng)
    return Series(nvars, trunc, terms)


def random_unit(rng, nvars, trunc, nterms=8):
    f = random_series(rng, nvars, trunc, nterms, min_degree=1)
    return f + nonzero_rational(rng)


def _pure_axis_at_most(expo, k, d):
    pure = all(v == 0 for i, v in enumerate(expo) if i != k - 1)
    return pure and expo[k - 1] <= d


def random_order_d(rng, nvars, trunc, k, d, nterms=8):
    """A series of order exactly ``d`` on the x_k axis: a seeded x_k^d term
    plus extra terms that cannot disturb lower axis coefficients."""
    axis = tuple(d if i == k - 1 else 0 for i in range(nvars))
    terms = {axis: nonzero_rational(rng)}
    tries = 0
    while len(terms) <= nterms and tries < 300:
        tries += 1
        e = random_exponent(rng, nvars, 1, trunc)
        if not _pure_axis_at_most(e, k, d):
            terms.setdefault(e, nonzero_rational(rng))
    return Series(nvars, trunc, terms)


def random_even_order2(rng, nvars, trunc, k, nterms=8):
    """Even in x_k, of order exactly 2 on the x_k axis."""
    axis = tuple(2 if i == k - 1 else 0 for i in range(nvars))
    terms = {axis: nonzero_rational(rng)}
    tries = 0
    while len(terms) <= nterms and tries < 300:
        tries += 1
        e = list(random_exponent(rng, nvars, 1, trunc))
        e[k - 1] -= e[k - 1] % 2
        e = tuple(e)
        if sum(e) == 0 or _pure_axis_at_most(e, k, 2):
            continue
        terms.setdefault(e, nonzero_rational(rng))
    return Series(nvars, trunc, terms)


def random_lemma_input(rng, nvars, trunc, k, nterms=8):
    """Axis profile 0, 0, 1, 1 in degrees 0..3 plus unconstrained extras."""
    terms = {
        tuple(2 if i == k - 1 else 0 for i in range(nvars)): Fraction(1),
        tuple(3 if i == k - 1 else 0 for i in range(nvars)): Fraction(1),
    }
    tries = 0
    while len(terms) < nterms + 2 and tries < 300:
        tries += 1
        e = random_exponent(rng, nvars, 1, trunc)
        if not _pure_axis_at_most(e, k, 3):
            terms.setdefault(e, nonzero_rational(rng))
    return Series(nvars, trunc, terms)


def random_implicit_input(rng, nvars, trunc, k, nterms=8):
    """Vanishes at the origin with a nonzero linear x_k coefficient."""
    linear = tuple(1 if i == k - 1 else 0 for i in range(nvars))
    terms = {linear: nonzero_rational(rng)}
    tries = 0
    while len(terms) <= nterms and tries < 300:
        tries += 1
        e = random_exponent(rng, nvars, 1, trunc)
        terms.setdefault(e, nonzero_rational(rng))
    return Series(nvars, trunc, terms)


def random_normalized_h(rng, trunc, density=0.6):
    terms = {(2,): Fraction(1), (3,): Fraction(1)}
    for j in range(4, trunc + 1):
        if rng.random() < density:
            terms[(j,)] = nonzero_rational(rng)
    return Series(1, trunc, terms)


# ----------------------------------------------------------------------
# comparisons
# ----------------------------------------------------------------------

def table_through(s, degree):
    return {e: c for e, c in s.terms.items() if sum(e) <= degree}


def agree_through(a, b, degree):
    return table_through(a, degree) == table_through(b, degree)


def square_window(s, degree):
    """Coefficient table in the window where the LAST variable counts
    twice (it stands for a squared original variable)."""
    return {e: c for e, c in s.terms.items()
            if sum(e[:-1]) + 2 * e[-1] <= degree}


def witness_is_valid(check, shift_expo=None):
    """A member's witness must sum to the exponent plus ``shifts`` copies
    of the shift exponent; a non-member must carry no witness."""
    if not check.member:
        return check.witness is None and check.shifts == 0
    if not check.witness:
        return False
    total = [0] * len(check.exponent)
    for w in check.witness:
        total = [a + b for a, b in zip(total, w)]
    if shift_expo is None:
        expected = list(check.exponent)
    else:
        expected = [a + check.shifts * s
                    for a, s in zip(check.exponent, shift_expo)]
    return total == expected


def naive_member(target, generators):
    """Independent membership oracle: exhaustive recursion over generator
    subtractions.  Only for cross-checking the closure-based reports."""
    gens = sorted({g for g in generators if sum(g) > 0})
    if sum(target) == 0:
        return tuple(target) in {tuple(g) for g in generators}
    seen = {}

    def go(t):
        if t in seen:
            return seen[t]
        seen[t] = False  # cycle guard; degrees strictly decrease anyway
        for g in gens:
            if all(a >= b for a, b in zip(t, g)):
                rest = tuple(a - b for a, b in zip(t, g))
                if sum(rest) == 0 or go(rest):
                    seen[t] = True
                    break
        return seen[t]

    return go(tuple(target))
