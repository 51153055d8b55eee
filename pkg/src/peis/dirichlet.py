"""Dirichlet characters with exact cyclotomic values.

A character mod f is stored by the exponents of its values on fixed
generators of (Z/f)^x: chi(g_i) = zeta_m^(e_i) where m is the order of chi.
Values live in Q(zeta_m) as polynomials reduced modulo the m-th cyclotomic
polynomial.  For tame characters (m | p - 1) there is a fixed p-adic
embedding: zeta_{p-1} goes to the Teichmuller lift of the smallest
primitive root mod p.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionError
from .exact import (
    as_fraction,
    bernoulli_polynomial,
    factorize,
    format_rational,
)
from .padic import PadicInt, PadicNumber, check_prime, teichmuller

__all__ = [
    "CyclotomicValue",
    "UnitGroup",
    "DirichletCharacter",
    "cyclotomic_polynomial",
    "primitive_root",
    "unit_group",
    "enumerate_characters",
    "trivial_character",
    "teichmuller_character",
    "character_from_values",
    "generalized_bernoulli",
    "dirichlet_L_at_negative",
    "euler_modified_L",
    "parity_vanishing_check",
]


# cyclotomic arithmetic


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a, b):
    # exact division of integer polynomials, b monic
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise PreconditionError("cyclotomic index must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(d))
    return tuple(num)


def _reduce(coeffs, m):
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    c = [as_fraction(x) for x in coeffs]
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            for j in range(deg + 1):
                c[i - deg + j] -= lead * phi[j]
    c = c[:deg]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class CyclotomicValue:
    """Element of Q(zeta_m) as a reduced polynomial in zeta_m."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=()):
        self.m = m
        self.coeffs = _reduce(coeffs, m)

    @classmethod
    def root(cls, m: int, e: int) -> "CyclotomicValue":
        e %= m
        c = [0] * (e + 1)
        c[e] = 1
        return cls(m, c)

    @classmethod
    def rational(cls, x, m: int = 1) -> "CyclotomicValue":
        return cls(m, [as_fraction(x)])

    def lift(self, m: int) -> "CyclotomicValue":
        """Same number viewed in Q(zeta_m) for a multiple m of self.m."""
        if m % self.m:
            raise PreconditionError("can only lift to a multiple of the order")
        step = m // self.m
        c = [Fraction(0)] * (step * len(self.coeffs))
        for i, x in enumerate(self.coeffs):
            c[i * step] = x
        return CyclotomicValue(m, c)

    def _align(self, other):
        if not isinstance(other, CyclotomicValue):
            other = CyclotomicValue.rational(other, self.m)
        m = math.lcm(self.m, other.m)
        return self.lift(m), other.lift(m), m

    def __add__(self, other):
        a, b, m = self._align(other)
        n = max(len(a.coeffs), len(b.coeffs))
        ca = list(a.coeffs) + [0] * (n - len(a.coeffs))
        cb = list(b.coeffs) + [0] * (n - len(b.coeffs))
        return CyclotomicValue(m, [x + y for x, y in zip(ca, cb)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicValue(self.m, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, CyclotomicValue) else -as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CyclotomicValue):
            x = as_fraction(other)
            return CyclotomicValue(self.m, [c * x for c in self.coeffs])
        a, b, m = self._align(other)
        return CyclotomicValue(m, _poly_mul(a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        x = as_fraction(other)
        return CyclotomicValue(self.m, [c / x for c in self.coeffs])

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise PreconditionError("value is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicValue.rational(other, self.m)
        if not isinstance(other, CyclotomicValue):
            return NotImplemented
        a, b, _ = self._align(other)
        return a.coeffs == b.coeffs

    __hash__ = None

    def __repr__(self):
        if self.is_rational():
            return f"CyclotomicValue({self.to_rational()})"
        return f"CyclotomicValue(m={self.m}, {[str(c) for c in self.coeffs]})"

    def to_padic(self, p: int, N: int) -> PadicNumber:
        """Image in Q_p under the fixed embedding (needs m | p - 1), known to p^N."""
        check_prime(p)
        if (p - 1) % self.m:
            raise PreconditionError(f"order {self.m} does not divide p - 1; value is not in Q_p")
        if not self.coeffs:
            return PadicNumber(p, N, None)
        den = math.lcm(*[c.denominator for c in self.coeffs])
        vden = 0
        while den % p**(vden + 1) == 0:
            vden += 1
        work = N + vden
        zeta = _embedded_root(p, self.m, work)
        mod = p**work
        acc = 0
        power = 1
        for c in self.coeffs:
            acc += (c * den).numerator * power
            power = power * zeta % mod
        num = PadicNumber.from_rational(acc % mod, p, work)
        return num / PadicNumber.from_rational(den, p, work + 64)

    def to_padic_int(self, p: int, N: int) -> PadicInt:
        return self.to_padic(p, N).to_padic_int()

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [format_rational(c) for c in self.coeffs]}


@lru_cache(maxsize=None)
def _embedded_root(p: int, m: int, N: int) -> int:
    g = primitive_root(p)
    return pow(teichmuller(g, p, N).residue, (p - 1) // m, p**N)


# unit groups


def _is_primitive_root(g: int, n: int, phi: int, primes) -> bool:
    if math.gcd(g, n) != 1:
        return False
    return all(pow(g, phi // q, n) != 1 for q in primes)


@lru_cache(maxsize=None)
def primitive_root(n: int) -> int:
    """Smallest primitive root modulo n (n = prime power of an odd prime, or 2, 4)."""
    fac = factorize(n)
    if n in (2, 4):
        return n - 1
    if len(fac) != 1 or 2 in fac:
        raise PreconditionError(f"(Z/{n})^x is not cyclic")
    (q, e), = fac.items()
    phi = q ** (e - 1) * (q - 1)
    primes = list(factorize(phi))
    for g in range(2, n):
        if _is_primitive_root(g, n, phi, primes):
            return g
    raise AssertionError("no primitive root found")


class UnitGroup:
    """(Z/f)^x with fixed CRT-lifted generators and a discrete-log table."""

    def __init__(self, f: int):
        if f < 1:
            raise PreconditionError("modulus must be positive")
        self.modulus = f
        gens, orders = [], []
        for q, e in sorted(factorize(f).items()):
            qe = q**e
            rest = f // qe
            local = []
            if q == 2:
                if e == 2:
                    local = [(3, 2)]
                elif e >= 3:
                    local = [(qe - 1, 2), (5, 2 ** (e - 2))]
            else:
                local = [(primitive_root(qe), qe // q * (q - 1))]
            for g, order in local:
                # lift: g mod q^e, 1 mod the rest
                lifted = (g * rest * pow(rest, -1, qe) + qe * pow(qe, -1, rest)) % f if rest > 1 else g % f
                gens.append(lifted)
                orders.append(order)
        self.generators = tuple(gens)
        self.orders = tuple(orders)
        self.size = math.prod(orders) if orders else 1
        self._log = self._build_log()

    def _build_log(self):
        f = self.modulus
        table = [None] * f
        if f == 1:
            table[0] = ()
            return table
        for exps in itertools.product(*[range(o) for o in self.orders]):
            a = 1
            for g, x in zip(self.generators, exps):
                a = a * pow(g, x, f) % f
            table[a] = exps
        return table

    def log(self, a: int):
        """Exponent vector of a, or None when a is not a unit."""
        return self._log[a % self.modulus]

    def units(self) -> list[int]:
        return [a for a in range(self.modulus) if self._log[a] is not None]


@lru_cache(maxsize=256)
def unit_group(f: int) -> UnitGroup:
    return UnitGroup(f)


class DirichletCharacter:
    """A Dirichlet character modulo ``modulus`` of exact order ``order``."""

    __slots__ = ("group", "order", "images", "_table", "_conductor")

    def __init__(self, modulus: int, images, order: int | None = None):
        group = unit_group(modulus)
        images = tuple(int(x) for x in images)
        if len(images) != len(group.generators):
            raise PreconditionError("one image per generator is required")
        if order is None:
            order = math.lcm(*group.orders) if group.orders else 1
        # images must be compatible with the generator orders
        for img, o in zip(images, group.orders):
            if (img * o) % order:
                raise PreconditionError("image incompatible with generator order")
        g = math.gcd(order, *images) if images else order
        self.group = group
        self.order = order // g
        self.images = tuple((x // g) % self.order for x in images)
        self._table = None
        self._conductor = None

    @property
    def modulus(self) -> int:
        return self.group.modulus

    def exponent(self, a: int):
        """e with chi(a) = zeta_order^e, or None when gcd(a, modulus) > 1."""
        if self._table is None:
            tab = []
            for lg in self.group._log:
                if lg is None:
                    tab.append(None)
                else:
                    tab.append(sum(x * y for x, y in zip(lg, self.images)) % self.order)
            self._table = tab
        return self._table[a % self.modulus]

    def __call__(self, a: int) -> CyclotomicValue:
        e = self.exponent(a)
        if e is None:
            return CyclotomicValue(self.order, [])
        return CyclotomicValue.root(self.order, e)

    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def parity(self) -> int:
        """+1 for even characters, -1 for odd ones."""
        e = self.exponent(-1)
        return 1 if e == 0 else -1

    def is_even(self) -> bool:
        return self.parity == 1

    def conductor(self) -> int:
        if self._conductor is None:
            f = self.modulus
            best = f
            for d in sorted(_divisors(f)):
                if self._factors_through(d):
                    best = d
                    break
            self._conductor = best
        return self._conductor

    def _factors_through(self, d: int) -> bool:
        # chi is trivial on units congruent to 1 mod d
        f = self.modulus
        for a in range(1, f, d):
            e = self.exponent(a)
            if e is not None and e != 0:
                return False
        return True

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus

    def primitive(self) -> "DirichletCharacter":
        """The primitive character mod conductor inducing this one."""
        d = self.conductor()
        if d == self.modulus:
            return self
        return self.restrict(d)

    def restrict(self, d: int) -> "DirichletCharacter":
        """Character mod d inducing this one (d must be a multiple of the conductor)."""
        f = self.modulus
        if f % d or d % self.conductor():
            raise PreconditionError("restriction needs conductor | d | modulus")
        group = unit_group(d)
        images = []
        for g in group.generators:
            a = g
            while math.gcd(a, f) != 1:
                a += d
            images.append(self.exponent(a))
        return DirichletCharacter(d, images, self.order)

    def induce(self, f: int) -> "DirichletCharacter":
        """The same character viewed modulo a multiple f of the modulus."""
        if f % self.modulus:
            raise PreconditionError("can only induce to a multiple of the modulus")
        group = unit_group(f)
        return DirichletCharacter(f, [self.exponent(g) for g in group.generators], self.order)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        f = math.lcm(self.modulus, other.modulus)
        m = math.lcm(self.order, other.order)
        group = unit_group(f)
        images = []
        for g in group.generators:
            images.append(self.exponent(g) * (m // self.order) + other.exponent(g) * (m // other.order))
        return DirichletCharacter(f, images, m)

    def __pow__(self, k: int) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, [x * k for x in self.images], self.order)

    def inverse(self) -> "DirichletCharacter":
        return self ** -1

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return (self.modulus, self.order, self.images) == (other.modulus, other.order, other.images)

    def __hash__(self):
        return hash((self.modulus, self.order, self.images))

    def __repr__(self):
        return f"DirichletCharacter(modulus={self.modulus}, order={self.order}, images={list(self.images)})"

    # p-adic values

    def is_tame(self, p: int) -> bool:
        return (p - 1) % self.order == 0

    def padic(self, a: int, p: int, N: int) -> PadicInt:
        """chi(a) in Z_p under the fixed embedding (0 off the units)."""
        if not self.is_tame(p):
            raise PreconditionError(f"order {self.order} does not divide {p} - 1")
        e = self.exponent(a)
        if e is None:
            return PadicInt(p, N, 0)
        return PadicInt(p, N, pow(_embedded_root(p, self.order, N), e, p**N))

    def padic_table(self, p: int, N: int) -> list[int]:
        """Residues mod p^N of chi(a) for a = 0..modulus-1."""
        if not self.is_tame(p):
            raise PreconditionError(f"order {self.order} does not divide {p} - 1")
        mod = p**N
        z = _embedded_root(p, self.order, N)
        powers = [pow(z, e, mod) for e in range(self.order)]
        return [0 if e is None else powers[e] for e in (self.exponent(a) for a in range(self.modulus))]

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "order": self.order, "generator_images": list(self.images)}

    @classmethod
    def from_json(cls, data: dict) -> "DirichletCharacter":
        return cls(int(data["modulus"]), data["generator_images"], int(data["order"]))


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def enumerate_characters(f: int) -> list[DirichletCharacter]:
    """All phi(f) characters mod f, in lexicographic order of generator exponents."""
    group = unit_group(f)
    out = []
    m = math.lcm(*group.orders) if group.orders else 1
    for ts in itertools.product(*[range(o) for o in group.orders]):
        images = [t * (m // o) for t, o in zip(ts, group.orders)]
        out.append(DirichletCharacter(f, images, m))
    return out


def trivial_character(f: int = 1) -> DirichletCharacter:
    return DirichletCharacter(f, [0] * len(unit_group(f).generators), 1)


def teichmuller_character(p: int) -> DirichletCharacter:
    """omega as a character mod p: the generator g goes to zeta_{p-1}."""
    check_prime(p)
    return DirichletCharacter(p, [1], p - 1)


def character_from_values(f: int, values: dict, order: int) -> DirichletCharacter:
    """Character mod f with chi(g) = zeta_order^values[g] on the fixed generators."""
    group = unit_group(f)
    return DirichletCharacter(f, [values[g] for g in group.generators], order)


# generalized Bernoulli numbers and L-values


def generalized_bernoulli(n: int, chi: DirichletCharacter, F: int | None = None) -> CyclotomicValue:
    """B_{n,chi} = F^(n-1) sum_{a=1}^F chi(a) B_n(a/F) for the primitive core of chi."""
    if n < 1:
        raise PreconditionError("generalized Bernoulli numbers need n >= 1")
    core = chi.primitive()
    f = core.modulus
    if F is None:
        F = f
    if F % f:
        raise PreconditionError(f"F = {F} is not divisible by the conductor {f}")
    m = core.order
    poly = bernoulli_polynomial(n)
    acc = [Fraction(0)] * m
    for a in range(1, F + 1):
        e = core.exponent(a)
        if e is not None:
            acc[e] += poly(Fraction(a, F))
    return CyclotomicValue(m, [c * F ** (n - 1) for c in acc])


def dirichlet_L_at_negative(n: int, chi: DirichletCharacter) -> CyclotomicValue:
    """L(1 - n, chi) = -B_{n,chi} / n."""
    if n < 1:
        raise PreconditionError("n must be positive")
    return -generalized_bernoulli(n, chi) / n


def euler_modified_L(n: int, chi: DirichletCharacter, p: int) -> CyclotomicValue:
    """(1 - chi(p) p^(n-1)) L(1 - n, chi), chi taken primitive."""
    core = chi.primitive()
    factor = 1 - core(p) * Fraction(p) ** (n - 1)
    return factor * dirichlet_L_at_negative(n, core)


def parity_vanishing_check(n: int, chi: DirichletCharacter) -> bool:
    """True iff B_{n,chi} vanishes exactly when the parities of chi and n disagree.

    The pair (1, trivial) is the one exception to the parity rule and is
    treated as satisfying it.
    """
    core = chi.primitive()
    zero = generalized_bernoulli(n, core).is_zero()
    if core.is_trivial() and n == 1:
        return not zero
    mismatch = (core.parity == 1) == (n % 2 == 1)
    return zero == mismatch
