"""Exact counting polynomials in the field-size variable q.

All varieties this package counts points on (quiver Grassmannians of
catalog modules, extension and homomorphism strata, and sums of such
counts) have polynomial point counts: there is a polynomial f with
integer coefficients such that the count over F_p equals f(p) for every
admissible prime.  The strategy throughout is

  1. count exactly over degree_bound + 1 primes (Lagrange determines f),
  2. count over `verify` extra primes and check f matches (a wrong degree
     bound or a non-polynomial family fails loudly, never silently),
  3. read off the Euler characteristic as f(1).

Projectivizations: when a set S is stable under the free scaling action
of F_q^* away from 0 (e.g. nonzero extension classes), |P(S)| =
(|S| - [0 in S])/(q - 1); at the polynomial level this is exact division
by q - 1, and NotDivisible signals a miscounted family.
"""

from fractions import Fraction

from .catalog import primes_from
from .errors import NonIntegerCoefficients, NotDivisible, VerificationMismatch


class QPolynomial:
    """A polynomial in q with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c):
        return cls([c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __call__(self, q):
        out = 0
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def at_one(self):
        return sum(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return QPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                head = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{head}q" + (f"^{i}" if i > 1 else "")
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"QPolynomial({self})"


def _as_poly(x):
    if isinstance(x, QPolynomial):
        return x
    if isinstance(x, int):
        return QPolynomial([x])
    raise TypeError(f"cannot coerce {x!r} to QPolynomial")


def lagrange_integer(xs, ys):
    """The unique polynomial through (xs[i], ys[i]), demanded integral."""
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("interpolation points must be distinct")
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # basis polynomial prod_{j != i} (q - x_j) / (x_i - x_j)
        num = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            num = _poly_mul_linear(num, -Fraction(xs[j]))
            denom *= Fraction(xs[i] - xs[j])
        scale = Fraction(ys[i]) / denom
        for k in range(len(num)):
            coeffs[k] += scale * num[k]
    for c in coeffs:
        if c.denominator != 1:
            raise NonIntegerCoefficients(
                f"interpolated polynomial is not integral: {coeffs}"
            )
    return QPolynomial([int(c) for c in coeffs])


def _poly_mul_linear(poly, c0):
    """poly(q) * (q + c0) on Fraction coefficient lists."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, a in enumerate(poly):
        out[i] += a * c0
        out[i + 1] += a
    return out


VERIFIED_FITS = 0
"""Running count of interpolations that passed their held-out-prime check.

Diagnostic only: lets a test suite assert that verification actually ran
(a mismatch raises, so this only ever counts clean fits).
"""


def _note_verified_fits(n):
    global VERIFIED_FITS
    VERIFIED_FITS += n


def counting_polynomial(count_fn, degree_bound, min_prime=2, verify=2):
    """Fit the counting polynomial of `count_fn` and verify it.

    `count_fn(p)` must return the exact count over F_p; it is evaluated at
    the first degree_bound + 1 primes >= min_prime (fit) and `verify`
    further primes (check).  Raises VerificationMismatch when the fitted
    polynomial misses a verification prime and NonIntegerCoefficients when
    the fit is not integral — both mean the family is not the polynomial
    family the caller believed it to be.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    ps = primes_from(min_prime, degree_bound + 1 + verify)
    fit, check = ps[: degree_bound + 1], ps[degree_bound + 1 :]
    values = [count_fn(p) for p in fit]
    poly = lagrange_integer(fit, values)
    for p in check:
        expect = count_fn(p)
        got = poly(p)
        if got != expect:
            raise VerificationMismatch(
                f"counting polynomial {poly} predicts {got} at p={p}, "
                f"but the exact count is {expect}"
            )
    if check:
        _note_verified_fits(1)
    return poly


def counting_table(count_fn, degree_bound, min_prime=2, verify=2):
    """Interpolate a whole table of counts in one sweep of primes.

    `count_fn(p)` returns a dict {key: exact count over F_p}.  Each key's
    count is fitted to its own polynomial (keys absent from a prime's
    table count as 0 there) and checked on `verify` extra primes, exactly
    as in counting_polynomial.  Returns {key: QPolynomial}.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    ps = primes_from(min_prime, degree_bound + 1 + verify)
    nfit = degree_bound + 1
    tables = [count_fn(p) for p in ps]
    keys = set()
    for t in tables:
        keys.update(t)
    out = {}
    for key in keys:
        ys = [t.get(key, 0) for t in tables]
        poly = lagrange_integer(ps[:nfit], ys[:nfit])
        for p, y in zip(ps[nfit:], ys[nfit:]):
            got = poly(p)
            if got != y:
                raise VerificationMismatch(
                    f"counting polynomial {poly} for key {key} predicts "
                    f"{got} at p={p}, but the exact count is {y}"
                )
        out[key] = poly
    if ps[nfit:]:
        _note_verified_fits(len(out))
    return out


def divide_by_q_minus_1(poly):
    """Exact quotient poly / (q - 1); NotDivisible when poly(1) != 0."""
    if poly.at_one() != 0:
        raise NotDivisible(f"{poly} is not divisible by q - 1")
    if poly.is_zero():
        return QPolynomial([])
    # synthetic division by (q - 1), highest coefficient first
    out = []
    carry = 0
    for c in reversed(poly.coeffs):
        carry += c
        out.append(carry)
    # the final accumulated value is the remainder poly(1) = 0; drop it
    out.pop()
    return QPolynomial(list(reversed(out)))


def projectivize(poly, contains_zero=True):
    """Point count of P(S) from the count of a scaling-stable set S.

    With `contains_zero`, |P(S)|(q) = (|S|(q) - 1)/(q - 1).
    """
    shifted = poly - 1 if contains_zero else poly
    return divide_by_q_minus_1(shifted)


def gaussian_binomial(n, k, q):
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(q ** (n - i) - 1, q ** (i + 1) - 1)
    assert out.denominator == 1
    return int(out)
