"""Exact rational arithmetic: Bernoulli numbers and polynomials, divisor sums.

Rationals are ``fractions.Fraction`` throughout; they are always in lowest
terms with a positive denominator.  Bernoulli numbers follow the
polynomial convention B_n = B_n(0), so B_1 = -1/2.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError

__all__ = [
    "RationalPolynomial",
    "as_fraction",
    "format_rational",
    "parse_rational",
    "rational_valuation",
    "bernoulli_number",
    "bernoulli_polynomial",
    "eval_poly",
    "fractional_part",
    "divisors",
    "sigma_power",
    "factorize",
    "is_prime",
    "von_staudt_clausen_denominator",
    "zeta_at_one_minus",
    "stabilized_zeta",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot read {x!r} as an exact rational")


def format_rational(x) -> str:
    """Serialize as "num/den" in lowest terms ("0/1" for zero)."""
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def rational_valuation(x, p: int) -> float | int:
    """p-adic valuation of an exact rational; ``math.inf`` for zero."""
    x = as_fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with rational coefficients, index = degree, trailing zeros trimmed."""

    coeffs: tuple = ()

    def __post_init__(self):
        cs = [as_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return eval_poly(self, x)

    def __repr__(self):
        if not self.coeffs:
            return "RationalPolynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" + ("" if i == 0 else ("*X" if i == 1 else f"*X^{i}")))
        return "RationalPolynomial(" + " + ".join(terms) + ")"


def eval_poly(P: RationalPolynomial, x) -> Fraction:
    """Horner evaluation."""
    x = as_fraction(x)
    acc = Fraction(0)
    for c in reversed(P.coeffs):
        acc = acc * x + c
    return acc


def fractional_part(x) -> Fraction:
    """{x} in [0, 1) with x - {x} an integer."""
    x = as_fraction(x)
    return x - (x.numerator // x.denominator)


# Bernoulli numbers.  Small indices come from the defining recurrence
# sum_{j<=n} C(n+1, j) B_j = 0.  Very large indices (only needed for
# limit checks) come from tangent numbers, which avoid rational gcds.

_RECURRENCE_LIMIT = 600
_bern_lock = threading.Lock()
_bern: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
_tangent: list[int] = [0]


def _extend_recurrence(n: int) -> None:
    while len(_bern) <= n:
        m = len(_bern)
        if m % 2 == 1:
            _bern.append(Fraction(0))
            continue
        s = (m + 1) * _bern[1]
        for j in range(0, m, 2):
            s += math.comb(m + 1, j) * _bern[j]
        _bern.append(-s / (m + 1))


def _tangent_numbers(count: int) -> list[int]:
    # T_1..T_count with tan x = sum T_k x^(2k-1)/(2k-1)!
    t = [0] * (count + 1)
    t[1] = 1
    for k in range(2, count + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, count + 1):
        for j in range(k, count + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t


def _bernoulli_from_tangent(n: int) -> Fraction:
    m = n // 2
    with _bern_lock:
        if len(_tangent) <= m:
            _tangent[:] = _tangent_numbers(max(m, 2 * (len(_tangent) - 1)))
        tm = _tangent[m]
    sign = 1 if m % 2 == 1 else -1
    return Fraction(sign * n * tm, 4**m * (4**m - 1))


def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2, memoized and safe to call from several threads."""
    if n < 0:
        raise PreconditionError("Bernoulli index must be nonnegative")
    if n <= 1:
        return _bern[n]
    if n % 2 == 1:
        return Fraction(0)
    if n > _RECURRENCE_LIMIT:
        return _bernoulli_from_tangent(n)
    if n >= len(_bern):
        with _bern_lock:
            _extend_recurrence(n)
    return _bern[n]


def bernoulli_polynomial(n: int) -> RationalPolynomial:
    """B_n(X) = sum_i C(n, i) B_i X^(n-i)."""
    if n < 0:
        raise PreconditionError("Bernoulli index must be nonnegative")
    coeffs = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        coeffs[n - i] = math.comb(n, i) * bernoulli_number(i)
    return RationalPolynomial(tuple(coeffs))


def divisors(n: int) -> list[int]:
    if n < 1:
        raise PreconditionError("divisors need n >= 1")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def sigma_power(n: int, k: int) -> int:
    """sum of d^k over the positive divisors d of n."""
    if n < 1:
        raise PreconditionError("sigma_power needs n >= 1")
    return sum(d**k for d in divisors(n))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs here are small)."""
    if n < 1:
        raise PreconditionError("factorize needs n >= 1")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def von_staudt_clausen_denominator(n: int) -> int:
    """Product of the primes l with (l - 1) | n; the denominator of B_n."""
    if n < 2 or n % 2:
        raise PreconditionError("von Staudt-Clausen needs a positive even index")
    out = 1
    for d in divisors(n):
        if is_prime(d + 1):
            out *= d + 1
    return out


def zeta_at_one_minus(k: int) -> Fraction:
    """zeta(1 - k) = (-1)^(k+1) B_k / k for k >= 1."""
    if k < 1:
        raise PreconditionError("zeta(1 - k) is tabulated for k >= 1")
    sign = 1 if k % 2 == 1 else -1
    return sign * bernoulli_number(k) / k


def stabilized_zeta(k: int, p: int) -> Fraction:
    """(1 - p^(k-1)) zeta(1 - k): zeta(1 - k) with its Euler factor at p removed."""
    return (1 - Fraction(p) ** (k - 1)) * zeta_at_one_minus(k)
