"""The Kubota-Leopoldt p-adic L-function.

Two independent routes:

* interpolation: L_p(1-n, chi) = (1 - psi(p) p^(n-1)) (-B_{n,psi} / n) with
  psi = chi omega^-n, computed exactly and embedded in Z_p;
* measure: L_p(s, chi) = -(1 - chi(c)<c>^(1-s))^-1 * integral of
  chi omega^-1(a) <a>^-s against E_c over Z_p^x.

Branches (fixed tame character) are elements of Lambda, built either from
the pushed-forward measure or by Newton interpolation of the exact values
on the weight grid.  ``zeta_star(s, u)`` is the branch L_p(s, omega^u).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .dirichlet import (
    CyclotomicValue,
    DirichletCharacter,
    generalized_bernoulli,
    teichmuller_character,
)
from .errors import PoleError, PreconditionError, PrecisionError
from .exact import bernoulli_number, format_rational, is_prime, rational_valuation, stabilized_zeta
from .iwasawa import (
    GroupRingElement,
    LambdaElement,
    binomial_loss,
    dirac,
    evaluate_at_character,
    from_group_ring,
    interpolate_weights,
    weight_point,
)
from .measures import (
    Distribution,
    ProfiniteSpace,
    ec_measure,
    integrate_continuous,
    mulmod,
    project_branch,
)
from .padic import PadicInt, PadicNumber, angle, angle_power, check_prime, gamma_log, padic_log

__all__ = [
    "default_regularizer",
    "lp_interpolation_exact",
    "lp_interpolation",
    "lp_measure_route",
    "BranchElement",
    "branch_element",
    "interpolated_branch",
    "inverse_trivial_branch",
    "zeta_star",
    "KummerCertificate",
    "kummer_classical_check",
    "RegularityVerdict",
    "regularity_scan",
]


def _omega(p: int) -> DirichletCharacter:
    return teichmuller_character(p)


def _prime_to_p_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def _integral_or_number(x: PadicNumber):
    """A PadicInt when x is integral, else x itself."""
    if x.is_zero() or x.valuation() >= 0:
        return x.to_padic_int()
    return x


def default_regularizer(p: int, d: int = 1) -> int:
    """Smallest c > 1 that is a primitive root mod p^2 and prime to d.

    Such c makes psi(c) != 1 mod p for every nontrivial tame psi, and
    <c> generates Gamma topologically.
    """
    check_prime(p)
    order = p * (p - 1)
    primes = [q for q in range(2, order + 1) if order % q == 0 and is_prime(q)]
    c = 2
    while True:
        if math.gcd(c, d * p) == 1 and all(pow(c, order // q, p * p) != 1 for q in primes):
            return c
        c += 1


# interpolation route


def lp_interpolation_exact(n: int, chi: DirichletCharacter, p: int) -> CyclotomicValue:
    """L_p(1-n, chi) as an exact element of Q(zeta_m)."""
    check_prime(p)
    if n < 1:
        raise PreconditionError("n must be positive")
    psi = (chi * _omega(p) ** -n).primitive()
    factor = 1 - psi(p) * Fraction(p) ** (n - 1)
    return factor * (-generalized_bernoulli(n, psi) / n)


def lp_interpolation(n: int, chi: DirichletCharacter, p: int, N: int = 20):
    """L_p(1-n, chi) embedded in Z_p to p^N (a PadicNumber if not integral)."""
    if not chi.is_tame(p):
        raise PreconditionError("chi must have order dividing p - 1")
    exact = lp_interpolation_exact(n, chi, p)
    return _integral_or_number(exact.to_padic(p, N))


# measure route


def _check_branch(chi: DirichletCharacter, p: int, d: int | None):
    if not chi.is_tame(p):
        raise PreconditionError("chi must have order dividing p - 1")
    if d is None:
        d = _prime_to_p_part(chi.modulus, p)
    if (d * p) % chi.modulus:
        raise PreconditionError("chi must be defined modulo dp")
    return d


@lru_cache(maxsize=64)
def _pushforward(p: int, d: int, c: int, level: int, P: int, formula: str, psi: DirichletCharacter):
    return project_branch(ec_measure(d, c, p, (level,), formula), psi, level, P)


def _gamma_measure(g: GroupRingElement) -> Distribution:
    """The pushed-forward measure as a distribution on the Gamma-system (one level)."""
    coeffs = np.array(g.coeffs, dtype=np.int64 if g.N * math.log2(g.p) < 62 else object)

    def evaluator(level, pts):
        if level != g.n:
            raise PreconditionError(f"only level {g.n} is available")
        return coeffs[pts], 1

    return Distribution(ProfiniteSpace("Gamma", g.p), "pushforward", evaluator, (g.n,))


def lp_measure_route(s, chi: DirichletCharacter, p: int, N: int = 20, c: int | None = None,
                     d: int | None = None, level: int = 8, formula: str = "regularized"):
    """L_p(s, chi) from the E_c measure, integrated at ``level``.

    The integrand chi omega^-1(a) <a>^-s is locally constant modulo
    p^(level+1) at level ``level``, so the Riemann sum is exact to
    P = min(N, level + 1) digits; dividing by the regularizer costs its
    valuation.
    """
    check_prime(p)
    d = _check_branch(chi, p, d)
    c = default_regularizer(p, d) if c is None else c
    if math.gcd(c, d * p) != 1:
        raise PreconditionError("c must be prime to dp")
    P = min(N, level + 1)
    psi = chi * _omega(p) ** -1
    nu = _pushforward(p, d, c, level, P, formula, psi)
    mod = p**P
    # <a>^t = gamma^(j t) with t = -s; only t mod p^(P-1) matters
    if isinstance(s, PadicInt):
        if s.N < P - 1:
            raise PrecisionError("argument known to too few digits")
        t = -s.residue
    else:
        t = -int(s)
    e = t % p ** (P - 1) if P > 1 else 0
    base = pow(1 + p, e, mod)

    powers = _geometric(base, p**level, mod)

    def integrand(j, prec):
        return powers[j] % p**prec

    integral = integrate_continuous(_gamma_measure(nu), integrand, level, P, P)
    chi_c = chi.padic(c, p, P)
    ac = angle_power(c, 1 - s, p, P) if not isinstance(s, PadicInt) else angle_power(c, 1 - s.reduce(P), p, P)
    reg = 1 - chi_c * ac
    if reg.is_zero():
        raise PoleError("regularizer 1 - chi(c)<c>^(1-s) vanishes: trivial branch at its pole")
    value = -PadicNumber.from_padic_int(integral) / PadicNumber.from_padic_int(reg)
    return _integral_or_number(value)


def _geometric(base: int, size: int, mod: int) -> np.ndarray:
    """base^j mod ``mod`` for j < size, by doubling."""
    return _geometric_cached(base % mod, size, mod)


@lru_cache(maxsize=8)
def _geometric_cached(base: int, size: int, mod: int) -> np.ndarray:
    arr = np.array([1], dtype=np.int64 if mod.bit_length() <= 60 else object)
    while len(arr) < size:
        arr = np.concatenate([arr, mulmod(arr, pow(base, len(arr), mod), mod)])
    return arr[:size]


# branch elements


@dataclass(frozen=True, eq=False)
class BranchElement:
    """The branch of L_p at chi as the pair (G, h_c) with L = -G / h_c.

    G is the Lambda-element of chi omega^-1 E_c pushed forward to Gamma and
    h_c = 1 - chi(c)<c>(1+T)^(e_c), e_c = log<c> / log(1+p).  Evaluating
    at z = (1+p)^(-s) - 1 gives L_p(s, chi).
    """

    chi: DirichletCharacter
    p: int
    c: int
    d: int
    level: int
    numerator: LambdaElement
    factor: LambdaElement

    @property
    def is_pseudo_measure(self) -> bool:
        return self.chi.is_trivial()

    def element(self) -> LambdaElement:
        """-G / h_c, an element of Lambda for nontrivial chi."""
        if self.is_pseudo_measure:
            raise PoleError("trivial branch: h_c is not a unit; use the (numerator, factor) pair")
        if not self.factor.is_unit():
            raise PoleError("h_c is not a unit for this regularizer")
        return -(self.numerator / self.factor)

    def evaluate(self, s):
        """L_p(s, chi) from the pair."""
        z = weight_point(-s if isinstance(s, int) else -s, self.p, self.numerator.N)
        g = evaluate_at_character(self.numerator, z)
        h = evaluate_at_character(self.factor, z)
        if h.is_zero():
            raise PoleError("h_c vanishes at this point")
        return _integral_or_number(-PadicNumber.from_padic_int(g) / PadicNumber.from_padic_int(h))

    def to_json(self) -> dict:
        return {
            "chi": self.chi.to_json(),
            "p": self.p,
            "c": self.c,
            "d": self.d,
            "level": self.level,
            "numerator": self.numerator.to_json(),
            "factor": self.factor.to_json(),
            "pseudo_measure": self.is_pseudo_measure,
        }


def branch_element(chi: DirichletCharacter, p: int, N: int = 20, M: int = 12, level: int = 8,
                   c: int | None = None, d: int | None = None, formula: str = "regularized") -> BranchElement:
    """Measure-route branch element at truncation (p^N', T^M).

    Reading Lambda coefficients below T^M off the level-n group ring is
    exact modulo p^(n - floor(log_p(M-1))), the smallest valuation of
    C(p^n, i) for 0 < i < M.
    """
    check_prime(p)
    d = _check_branch(chi, p, d)
    c = default_regularizer(p, d) if c is None else c
    Nn = min(N, level - binomial_loss(p, M), level + 1)
    if Nn < 1:
        raise PrecisionError("level too small for this T-truncation")
    psi = chi * _omega(p) ** -1
    nu = _pushforward(p, d, c, level, min(N, level + 1), formula, psi)
    G = from_group_ring(nu, M).truncate(N=Nn)
    # h_c = 1 - chi(c)<c> (1+T)^(e_c)
    Ne = Nn + 1 + binomial_loss(p, M)
    lg = padic_log(angle(c, p, Ne + 1))
    e_c = lg / gamma_log(p, Ne + 1)
    hc = LambdaElement.one(p, Nn, M) - dirac(e_c, M=M).truncate(N=Nn) * (chi.padic(c, p, Nn) * angle(c, p, Nn))
    return BranchElement(chi, p, c, d, level, G, hc.truncate(N=Nn))


@lru_cache(maxsize=64)
def interpolated_branch(u: int, p: int, N: int = 20, M: int = 12) -> LambdaElement:
    """f_u in Lambda with f_u((1+p)^k - 1) = (1 - p^(k-1)) zeta(1-k) for k = u mod p-1.

    Built by Newton interpolation on k = u + (p-1)t, t < N + M - 1, from
    exact Bernoulli numbers.  Requires u != 0 mod p-1 (otherwise the
    values are not integral: see ``inverse_trivial_branch``).
    """
    check_prime(p)
    u %= p - 1
    if u % 2:
        raise PreconditionError("odd branches vanish identically; u must be even")
    if u == 0:
        raise PoleError("the trivial branch has a pole; use inverse_trivial_branch")
    J = N + M - 1
    ks = [u + (p - 1) * t for t in range(J)]
    return interpolate_weights(ks, [stabilized_zeta(k, p) for k in ks], p, N, M)


@lru_cache(maxsize=16)
def inverse_trivial_branch(p: int, N: int = 20, M: int = 12) -> LambdaElement:
    """h in Lambda with h((1+p)^k - 1) = 1 / zeta*(1-k) for k = 0 mod p-1.

    h(0) = 0 (the pole of zeta* at s = 1), so h = T g(T).
    """
    check_prime(p)
    J = N + M - 1
    ks = [0] + [(p - 1) * t for t in range(1, J)]
    vals = [Fraction(0)] + [1 / stabilized_zeta(k, p) for k in ks[1:]]
    return interpolate_weights(ks, vals, p, N, M)


def zeta_star(s, u: int, p: int = 5, N: int = 20, M: int | None = None):
    """L_p(s, omega^u): the stabilized zeta values on the branch u.

    At s = 1-k with k = u mod p-1, k >= 1, this is (1 - p^(k-1)) zeta(1-k).
    The value is read off the interpolated branch at z = (1+p)^(1-s) - 1.
    For u = 0 the inverse branch is used and s = 1 is a pole.
    """
    check_prime(p)
    u %= p - 1
    if u % 2:
        raise PreconditionError("u must be even")
    M = N + 2 if M is None else M
    if isinstance(s, PadicInt):
        z = weight_point(1 - s, p, N)
    else:
        z = weight_point(1 - int(s), p, N)
    if u:
        return evaluate_at_character(interpolated_branch(u, p, N, M), z)
    if z.is_zero():
        raise PoleError("zeta* has a pole at s = 1 on the trivial branch")
    h = evaluate_at_character(inverse_trivial_branch(p, N, M), z)
    if h.is_zero():
        raise PrecisionError("1/zeta* vanishes at this precision; increase N")
    return 1 / PadicNumber.from_padic_int(h)


# classical congruences


@dataclass(frozen=True)
class KummerCertificate:
    p: int
    d: int
    k: int
    k2: int
    difference: Fraction
    valuation: float

    @property
    def holds(self) -> bool:
        return self.valuation >= self.d

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        v = self.valuation
        return {"p": self.p, "d": self.d, "k": self.k, "k2": self.k2,
                "difference": format_rational(self.difference),
                "valuation": v if v != math.inf else "inf", "holds": self.holds}


def kummer_classical_check(p: int, d: int, k: int, k2: int) -> KummerCertificate:
    """Exact check of (1-p^(k-1))zeta(1-k) = (1-p^(k2-1))zeta(1-k2) mod p^d."""
    check_prime(p)
    phi = (p - 1) * p ** (d - 1)
    for x in (k, k2):
        if x < 1 or x % 2:
            raise PreconditionError("k and k' must be positive and even")
        if x % (p - 1) == 0:
            raise PreconditionError(f"p - 1 divides {x}")
    if (k - k2) % phi:
        raise PreconditionError(f"k and k' must agree modulo phi(p^d) = {phi}")
    diff = stabilized_zeta(k, p) - stabilized_zeta(k2, p)
    return KummerCertificate(p, d, k, k2, diff, rational_valuation(diff, p))


@dataclass(frozen=True)
class RegularityVerdict:
    p: int
    irregular_indices: tuple

    @property
    def regular(self) -> bool:
        return not self.irregular_indices

    def to_json(self) -> dict:
        return {"p": self.p, "regular": self.regular, "irregular_indices": list(self.irregular_indices)}


def regularity_scan(p: int, method: str = "modular") -> RegularityVerdict:
    """Indices 2 <= k <= p-3 (even) with p | numerator(B_k).

    ``modular`` runs the Bernoulli recurrence in F_p (all B_j, j <= p-3,
    are p-integral and n+1 is invertible there); ``exact`` uses the
    rational Bernoulli numbers.
    """
    check_prime(p)
    if method == "exact":
        bad = tuple(k for k in range(2, p - 2, 2) if bernoulli_number(k).numerator % p == 0)
        return RegularityVerdict(p, bad)
    if method != "modular":
        raise PreconditionError("method must be 'modular' or 'exact'")
    top = p - 3
    B = [1, (p - 1) * pow(2, -1, p) % p]
    row = [1, 2, 1]  # C(n+1, j) mod p, starting at n = 1
    for n in range(2, top + 1):
        row = [1] + [(row[j - 1] + row[j]) % p for j in range(1, n + 1)] + [1]
        if n % 2:
            B.append(0)
            continue
        s = sum(row[j] * B[j] for j in range(n)) % p
        B.append(-s * pow(n + 1, -1, p) % p)
    bad = tuple(k for k in range(2, top + 1, 2) if B[k] == 0)
    return RegularityVerdict(p, bad)
