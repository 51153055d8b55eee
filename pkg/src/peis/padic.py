"""Capped-precision p-adic numbers.

``PadicInt`` is an element of Z_p known modulo p^N (absolute precision).
``PadicNumber`` is a small companion for elements of Q_p, needed only where
values with negative valuation appear (near the pole of the trivial branch).

Only odd primes are supported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionError, PrecisionError
from .exact import as_fraction, is_prime

__all__ = [
    "PadicInt",
    "PadicNumber",
    "WeightCharacter",
    "check_prime",
    "valuation",
    "int_valuation",
    "teichmuller",
    "angle",
    "padic_log",
    "padic_exp",
    "angle_power",
    "weight_eval",
    "gamma_log",
]


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise PreconditionError(f"{p!r} is not a prime")
    if p == 2:
        raise PreconditionError("p = 2 is not supported; use an odd prime")
    return p


def int_valuation(n: int, p: int) -> int | float:
    """v_p of a Python integer, ``math.inf`` for 0."""
    if n == 0:
        return math.inf
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _split(n: int, p: int) -> tuple[int, int]:
    """n = p^v * u with u prime to p (n nonzero)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _ilog(n: int, p: int) -> int:
    """Largest e with p^e <= n (n >= 1)."""
    e = 0
    while p ** (e + 1) <= n:
        e += 1
    return e


class PadicInt:
    """An element of Z_p known modulo p^N.

    Arithmetic between two elements is carried out at the smaller of the
    two precisions.  Equality means equality at that common precision, so
    instances are deliberately unhashable.
    """

    __slots__ = ("p", "N", "residue")

    def __init__(self, p: int, N: int, residue: int = 0):
        check_prime(p)
        if N < 0:
            raise PreconditionError("precision must be nonnegative")
        self.p = p
        self.N = N
        self.residue = residue % p**N

    # construction

    @classmethod
    def from_rational(cls, x, p: int, N: int) -> "PadicInt":
        """Embed a p-integral rational (or integer) at precision N."""
        x = as_fraction(x)
        den = x.denominator
        if den % p == 0:
            raise PreconditionError(f"{x} is not {p}-integral")
        mod = p**N
        return cls(p, N, x.numerator * pow(den, -1, mod) if N else 0)

    def _coerce(self, other) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise PreconditionError("mixing different primes")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicInt.from_rational(other, self.p, self.N)
        return NotImplemented

    @property
    def modulus(self) -> int:
        return self.p**self.N

    # arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = min(self.N, o.N)
        return PadicInt(self.p, n, self.residue + o.residue)

    __radd__ = __add__

    def __neg__(self):
        return PadicInt(self.p, self.N, -self.residue)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = min(self.N, o.N)
        return PadicInt(self.p, n, self.residue - o.residue)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = min(self.N, o.N)
        return PadicInt(self.p, n, self.residue * o.residue)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        v = o.valuation()
        if v >= o.N:
            raise ZeroDivisionError("division by a p-adic zero at this precision")
        n = min(self.N, o.N) - v
        if v:
            if self.valuation() < v:
                raise PreconditionError("quotient is not in Z_p")
            num = self.residue // self.p**v
            den = o.residue // self.p**v
        else:
            num, den = self.residue, o.residue
        mod = self.p**n
        return PadicInt(self.p, n, num * pow(den, -1, mod) if n else 0)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (1 / self) ** (-e)
        return PadicInt(self.p, self.N, pow(self.residue, e, self.modulus))

    def inverse(self) -> "PadicInt":
        return 1 / self

    # inspection

    def valuation(self) -> int:
        """Exact valuation when below N; N stands for "at least N"."""
        if self.residue == 0:
            return self.N
        return min(int_valuation(self.residue, self.p), self.N)

    def is_zero(self) -> bool:
        return self.residue == 0

    def is_unit(self) -> bool:
        return self.N > 0 and self.residue % self.p != 0

    def reduce(self, N: int) -> "PadicInt":
        """Forget digits beyond p^N (never raises precision)."""
        return PadicInt(self.p, min(N, self.N), self.residue)

    def signed(self) -> int:
        """Representative in (-p^N/2, p^N/2]."""
        r, mod = self.residue, self.modulus
        return r - mod if 2 * r > mod else r

    def agreement(self, other) -> int:
        """Number of digits to which two values are known to agree."""
        return (self - other).valuation()

    def __int__(self):
        return self.residue

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (PadicInt, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        n = min(self.N, o.N)
        return (self.residue - o.residue) % self.p**n == 0

    __hash__ = None

    def __repr__(self):
        return f"PadicInt({self.p}, {self.N}, {self.residue})"

    def digits(self, count: int | None = None) -> str:
        """Human-readable expansion like '2 + 1*5 + 3*5^2 + O(5^4)'."""
        p, r = self.p, self.residue
        terms = []
        shown = self.N if count is None else min(count, self.N)
        for i in range(shown):
            r, d = divmod(r, p)
            if d:
                terms.append(str(d) if i == 0 else (f"{d}*{p}" if i == 1 else f"{d}*{p}^{i}"))
        terms.append(f"O({p}^{shown})")
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.N, "residue": str(self.residue)}

    @classmethod
    def from_json(cls, data: dict) -> "PadicInt":
        return cls(int(data["p"]), int(data["N"]), int(data["residue"]))


def valuation(x, p: int | None = None):
    """Valuation of a PadicInt/PadicNumber, or of an exact rational at p."""
    if isinstance(x, (PadicInt, PadicNumber)):
        return x.valuation()
    if p is None:
        raise PreconditionError("a prime is needed for rational valuations")
    x = as_fraction(x)
    if x == 0:
        return math.inf
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


class PadicNumber:
    """An element of Q_p known modulo p^prec (absolute precision, any sign).

    Stored as p^val * unit with ``unit`` prime to p and known modulo
    p^(prec - val); zero at precision has ``val`` None.
    """

    __slots__ = ("p", "prec", "val", "unit")

    def __init__(self, p: int, prec: int, val: int | None, unit: int = 0):
        check_prime(p)
        self.p = p
        self.prec = prec
        if val is None or val >= prec:
            self.val, self.unit = None, 0
        else:
            self.val = val
            self.unit = unit % p ** (prec - val)
            if self.unit % p == 0:
                raise ValueError("unit part must be prime to p")

    @classmethod
    def from_rational(cls, x, p: int, prec: int) -> "PadicNumber":
        x = as_fraction(x)
        if x == 0:
            return cls(p, prec, None)
        vn, un = _split(x.numerator, p)
        vd, ud = _split(x.denominator, p)
        v = vn - vd
        if v >= prec:
            return cls(p, prec, None)
        mod = p ** (prec - v)
        return cls(p, prec, v, un * pow(ud, -1, mod))

    @classmethod
    def from_padic_int(cls, x: PadicInt) -> "PadicNumber":
        if x.is_zero():
            return cls(x.p, x.N, None)
        v, u = _split(x.residue, x.p)
        return cls(x.p, x.N, v, u)

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            return other
        if isinstance(other, PadicInt):
            return PadicNumber.from_padic_int(other)
        if isinstance(other, (int, Fraction)):
            return PadicNumber.from_rational(other, self.p, max(self.prec, 0) + 64)
        return NotImplemented

    def valuation(self):
        """Exact valuation, or ``prec`` for a zero known only to that precision."""
        return self.prec if self.val is None else self.val

    def is_zero(self) -> bool:
        return self.val is None

    def _over(self, lo: int) -> int:
        # the value divided by p^lo, an integer when lo <= val
        if self.val is None:
            return 0
        return self.unit * self.p ** (self.val - lo)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prec = min(self.prec, o.prec)
        vals = [v for v in (self.val, o.val) if v is not None]
        if not vals:
            return PadicNumber(self.p, prec, None)
        lo = min(vals)
        total = self._over(lo) + o._over(lo)
        return PadicNumber.from_rational(Fraction(total) * Fraction(self.p) ** lo, self.p, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.val is None:
            return self
        return PadicNumber(self.p, self.prec, self.val, -self.unit)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # relative precisions combine; absolute precision follows
        if self.val is None or o.val is None:
            va = self.valuation()
            vb = o.valuation()
            return PadicNumber(self.p, min(self.prec + vb, o.prec + va), None)
        rel = min(self.prec - self.val, o.prec - o.val)
        v = self.val + o.val
        return PadicNumber(self.p, v + rel, v, self.unit * o.unit)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.val is None:
            raise ZeroDivisionError("inverting a p-adic zero at this precision")
        rel = self.prec - self.val
        return PadicNumber(self.p, rel - self.val, -self.val, pow(self.unit, -1, self.p**rel))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def to_padic_int(self) -> PadicInt:
        if self.val is None:
            return PadicInt(self.p, max(self.prec, 0), 0)
        if self.val < 0:
            raise PreconditionError(f"value has valuation {self.val}; not in Z_p")
        return PadicInt(self.p, self.prec, self.unit * self.p**self.val)

    def agreement(self, other) -> int:
        """Valuation of the difference, capped at the common precision."""
        return (self - self._coerce(other)).valuation()

    def agrees_with(self, x) -> int:
        """Valuation of the difference with an exact rational, capped at prec."""
        d = self - PadicNumber.from_rational(x, self.p, self.prec)
        return d.valuation()

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (PadicNumber, PadicInt, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def __repr__(self):
        if self.val is None:
            return f"PadicNumber({self.p}, O({self.p}^{self.prec}))"
        return f"PadicNumber({self.p}, {self.p}^{self.val}*{self.unit}, prec={self.prec})"

    def to_json(self) -> dict:
        return {"p": self.p, "prec": self.prec, "valuation": self.val, "unit": str(self.unit)}


def _as_padic(a, p: int | None, N: int | None) -> PadicInt:
    if isinstance(a, PadicInt):
        return a
    if p is None or N is None:
        raise PreconditionError("an integer argument needs p and N")
    return PadicInt.from_rational(a, p, N)


def teichmuller(a, p: int | None = None, N: int | None = None) -> PadicInt:
    """omega(a): the (p-1)-th root of unity congruent to a mod p.

    Found by iterating x -> x^p, which gains one digit per step.
    """
    a = _as_padic(a, p, N)
    return _teichmuller_cached(a.p, a.N, a.residue % a.p)


@lru_cache(maxsize=4096)
def _teichmuller_cached(p: int, N: int, r: int) -> PadicInt:
    if r == 0:
        raise PreconditionError("Teichmuller lift needs a unit")
    mod = p**N
    x = r % mod
    for _ in range(N + 1):
        y = pow(x, p, mod)
        if y == x:
            break
        x = y
    return PadicInt(p, N, x)


def angle(a, p: int | None = None, N: int | None = None) -> PadicInt:
    """<a> = a * omega(a)^-1, the projection to 1 + pZ_p."""
    a = _as_padic(a, p, N)
    if not a.is_unit():
        raise PreconditionError("angle needs a p-adic unit")
    return a / teichmuller(a)


def padic_log(x, p: int | None = None, N: int | None = None) -> PadicInt:
    """log x for x in 1 + pZ_p; the result keeps the precision of x.

    Terms (x-1)^i / i are summed while their valuation i*w - v_p(i) can
    still fall below N (w = v_p(x - 1)).
    """
    x = _as_padic(x, p, N)
    p, N = x.p, x.N
    y = (x.residue - 1) % x.modulus
    if N == 0:
        return PadicInt(p, 0, 0)
    if y % p:
        raise PreconditionError("padic_log needs x = 1 mod p")
    if y == 0:
        return PadicInt(p, N, 0)
    w = int_valuation(y, p)
    i = 1
    while i * w - _ilog(i, p) < N:
        i += 1
    top = i
    extra = _ilog(top, p)
    work = p ** (N + extra)
    mod = p**N
    total = 0
    power = 1
    for i in range(1, top + 1):
        power = power * y % work
        v, u = _split(i, p)
        term = (power // p**v) * pow(u, -1, mod)
        total += term if i % 2 == 1 else -term
    return PadicInt(p, N, total)


def padic_exp(y, p: int | None = None, N: int | None = None) -> PadicInt:
    """exp y for y in pZ_p (p odd); keeps the precision of y."""
    y = _as_padic(y, p, N)
    p, N = y.p, y.N
    if N == 0:
        return PadicInt(p, 0, 0)
    if y.residue % p:
        raise PreconditionError("padic_exp needs valuation >= 1")
    if y.residue == 0:
        return PadicInt(p, N, 1)
    w = y.valuation()
    # term i has valuation >= i*w - (i-1)/(p-1)
    top = 1
    while (p - 1) * top * w - (top - 1) < N * (p - 1):
        top += 1
    fact_v = sum(top // p**j for j in range(1, _ilog(top, p) + 1))
    work = p ** (N + fact_v)
    mod = p**N
    total = 1
    power = 1
    fact_unit = 1
    fact_val = 0
    for i in range(1, top + 1):
        power = power * y.residue % work
        v, u = _split(i, p)
        fact_val += v
        fact_unit = fact_unit * u % mod
        total += (power // p**fact_val) * pow(fact_unit, -1, mod)
    return PadicInt(p, N, total)


def angle_power(c, s, p: int | None = None, N: int | None = None) -> PadicInt:
    """<c>^s, computed as exp(s * log <c>) for p-adic s.

    Integer exponents use repeated multiplication, which agrees.
    """
    if isinstance(s, PadicInt) and not isinstance(c, PadicInt):
        p = s.p if p is None else p
        N = s.N if N is None else N
    c = _as_padic(c, p, N)
    base = angle(c)
    if isinstance(s, int):
        return base**s
    if not isinstance(s, PadicInt) or s.p != c.p:
        raise PreconditionError("exponent must be an int or a PadicInt over the same prime")
    return padic_exp(s * padic_log(base))


def gamma_log(p: int, N: int) -> PadicInt:
    """log(1 + p), the normalizing constant for exponents of gamma = 1 + p."""
    return padic_log(PadicInt(p, N, 1 + p))


@dataclass(frozen=True, eq=False)
class WeightCharacter:
    """k = (s, u) in Z_p x Z/(p-1), acting on units by a -> omega(a)^u <a>^s.

    ``s`` may be a Python int (exact) or a PadicInt.
    """

    s: object
    u: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "u", self.u % (self.p - 1))
        if isinstance(self.s, PadicInt) and self.s.p != self.p:
            raise PreconditionError("wild coordinate lives over a different prime")

    @classmethod
    def from_integer(cls, k: int, p: int) -> "WeightCharacter":
        return cls(k, k % (p - 1), p)

    def integer_weight(self) -> int | None:
        """The integer k this character equals, when s is an int with s = u mod p-1."""
        if isinstance(self.s, int) and (self.s - self.u) % (self.p - 1) == 0:
            return self.s
        return None

    def is_zero(self) -> bool:
        if self.u != 0:
            return False
        if isinstance(self.s, int):
            return self.s == 0
        return self.s.is_zero()

    def shift(self, t: int) -> "WeightCharacter":
        """k + t for an integer t."""
        return WeightCharacter(self.s + t, self.u + t, self.p)

    def __call__(self, a, N: int) -> PadicInt:
        return weight_eval(self, a, N)

    def __eq__(self, other):
        if not isinstance(other, WeightCharacter):
            return NotImplemented
        return self.p == other.p and self.u == other.u and self.s == other.s

    __hash__ = None

    def to_json(self) -> dict:
        s = self.s.to_json() if isinstance(self.s, PadicInt) else self.s
        return {"s": s, "u": self.u, "p": self.p}


def weight_eval(k: WeightCharacter, a, N: int) -> PadicInt:
    """omega(a)^u * <a>^s at precision N."""
    a = _as_padic(a, k.p, N)
    if not a.is_unit():
        raise PreconditionError("weight characters are evaluated on units")
    s = k.s
    if isinstance(s, PadicInt):
        s = s.reduce(N)
    return teichmuller(a) ** k.u * angle_power(a, s)


def require_precision(x: PadicInt, needed: int, what: str = "value") -> PadicInt:
    if x.N < needed:
        raise PrecisionError(f"{what} known only to p^{x.N}, need p^{needed}")
    return x
