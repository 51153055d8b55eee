"""Distributions and measures on three concrete profinite systems.

* Y-system: levels Y_i = (1/i)Z/Z, points a/i stored as a in [0, i).
* X-system: levels X_n = (Z/dp^(n+1))^x, points are residues.
* Gamma-system: levels Gamma/Gamma^(p^n), point j standing for gamma^j.

Every transition map is reduction of the stored integer modulo the
smaller level's modulus.  Values are exact: each level is produced as an
integer numerator array over one common denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .dirichlet import DirichletCharacter, teichmuller_character
from .errors import PreconditionError
from .exact import bernoulli_number, format_rational
from .iwasawa import GroupRingElement
from .padic import PadicInt, check_prime

__all__ = [
    "ProfiniteSpace",
    "Distribution",
    "BoundednessCertificate",
    "CompatibilityReport",
    "bernoulli_distribution",
    "ec_measure",
    "haar_distribution",
    "integrate_locally_constant",
    "integrate_continuous",
    "project_branch",
    "gamma_powers",
    "mulmod",
    "sum_mod",
    "angle_residues",
    "powmod",
]

CHUNK = 1 << 21


# vectorized modular arithmetic


INT64_MOD_BITS = 60


def mulmod(a, b, mod: int):
    """Elementwise a*b mod ``mod`` without overflow.

    Moduli below 2^31 multiply directly in int64; up to 2^60 the second
    factor is split into limbs (Horner in base 2^w); beyond that the
    arrays fall back to Python integers.
    """
    bits = mod.bit_length()
    if bits > INT64_MOD_BITS:
        return (np.asarray(a, dtype=object) * np.asarray(b, dtype=object)) % mod
    a = np.asarray(a, dtype=np.int64) % mod
    b = np.asarray(b, dtype=np.int64) % mod
    if bits <= 31:
        return (a * b) % mod
    w = 62 - bits
    mask = (1 << w) - 1
    shifts = list(range(0, bits, w))[::-1]
    r = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for sh in shifts:
        limb = (b >> sh) & mask
        r = ((r << w) % mod + (a * limb) % mod) % mod
    return r


def sum_mod(arr, mod: int) -> int:
    """Exact sum of a residue array reduced mod ``mod`` (no int64 overflow)."""
    arr = np.asarray(arr)
    if arr.dtype == object:
        return int(sum(arr.tolist())) % mod
    lo = arr & ((1 << 30) - 1)
    hi = arr >> 30
    return (int(lo.sum()) + (int(hi.sum()) << 30)) % mod


def _int_dtype(mod: int):
    return np.int64 if mod.bit_length() <= INT64_MOD_BITS else object


def powmod(base, e: int, mod: int):
    """Elementwise base^e mod ``mod`` for a nonnegative integer e."""
    if e < 0:
        raise PreconditionError("powmod needs a nonnegative exponent")
    result = np.ones(np.shape(base), dtype=_int_dtype(mod)) % mod
    b = np.asarray(base) % mod
    while e:
        if e & 1:
            result = mulmod(result, b, mod)
        e >>= 1
        if e:
            b = mulmod(b, b, mod)
    return result


@lru_cache(maxsize=16)
def gamma_powers(p: int, n: int) -> np.ndarray:
    """gamma^j mod p^(n+1) for j = 0..p^n - 1, with gamma = 1 + p."""
    mod = p ** (n + 1)
    size = p**n
    arr = np.array([1], dtype=_int_dtype(mod))
    while len(arr) < size:
        step = pow(1 + p, len(arr), mod)
        arr = np.concatenate([arr, mulmod(arr, step, mod)])
    return arr[:size]


@lru_cache(maxsize=16)
def _gamma_log_table(p: int, n: int) -> np.ndarray:
    # table[(x - 1) / p] = j for x = gamma^j mod p^(n+1)
    pw = gamma_powers(p, n)
    table = np.empty(p**n, dtype=np.int64)
    table[(pw - 1) // p] = np.arange(p**n, dtype=np.int64)
    return table


def _valuations(num: np.ndarray, p: int) -> np.ndarray:
    """v_p of each nonzero entry (entries equal to 0 get a large sentinel)."""
    num = np.array(num, dtype=object) if num.dtype == object else num.astype(np.int64)
    out = np.zeros(len(num), dtype=np.int64)
    zero = num == 0
    work = np.where(zero, 1, num)
    while True:
        mask = (work % p) == 0
        if not mask.any():
            break
        out[mask] += 1
        work = np.where(mask, work // p, work)
    out[zero] = 10**9
    return out


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n and n % p == 0:
        n //= p
        v += 1
    return v


# spaces


@dataclass(frozen=True)
class ProfiniteSpace:
    kind: str
    p: int | None = None
    d: int = 1

    def __post_init__(self):
        if self.kind not in ("Y", "X", "Gamma"):
            raise PreconditionError(f"unknown profinite system {self.kind!r}")
        if self.kind in ("X", "Gamma"):
            check_prime(self.p)

    def modulus(self, level: int) -> int:
        if self.kind == "Y":
            if level < 1:
                raise PreconditionError("Y-levels are positive integers")
            return level
        if self.kind == "X":
            return self.d * self.p ** (level + 1)
        return self.p**level

    def refines(self, src: int, dst: int) -> bool:
        """True when there is a transition map from level src to level dst."""
        if self.kind == "Y":
            return src % dst == 0
        return src >= dst

    def iter_points(self, level: int, chunk: int = CHUNK):
        mod = self.modulus(level)
        for start in range(0, mod, chunk):
            a = np.arange(start, min(mod, start + chunk), dtype=np.int64)
            if self.kind == "X":
                keep = (a % self.p != 0)
                if self.d > 1:
                    keep &= np.gcd(a, self.d) == 1
                a = a[keep]
            yield a

    def points(self, level: int) -> np.ndarray:
        parts = list(self.iter_points(level))
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def project(self, pts: np.ndarray, dst: int) -> np.ndarray:
        return pts % self.modulus(dst)

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.p is not None:
            out["p"] = self.p
        if self.kind == "X":
            out["d"] = self.d
        return out


@dataclass(frozen=True)
class BoundednessCertificate:
    min_valuation: float
    levels: tuple
    witness: dict | None

    @property
    def bounded(self) -> bool:
        return self.min_valuation >= 0

    def to_json(self) -> dict:
        mv = self.min_valuation
        return {
            "min_valuation": mv if mv != math.inf else "inf",
            "levels": list(self.levels),
            "bounded": self.bounded,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class CompatibilityReport:
    ok: bool
    pairs_checked: int
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


class Distribution:
    """A distribution given level by level by an exact evaluator.

    ``evaluator(level, points)`` returns (numerators, denominator) so that
    the value at points[i] is numerators[i] / denominator.
    """

    def __init__(self, space: ProfiniteSpace, name: str, evaluator, levels, params=None):
        self.space = space
        self.name = name
        self._evaluator = evaluator
        self.levels = tuple(levels)
        self.params = dict(params or {})
        self._cache = {}

    @property
    def p(self):
        return self.space.p

    def evaluate(self, level: int, points: np.ndarray):
        return self._evaluator(level, points)

    def level_data(self, level: int):
        """(points, numerators, denominator) for the whole level."""
        if level not in self._cache:
            pts = self.space.points(level)
            num, den = self._evaluator(level, pts)
            self._cache[level] = (pts, num, den)
        return self._cache[level]

    def values(self, level: int) -> dict:
        pts, num, den = self.level_data(level)
        return {int(a): Fraction(int(x), den) for a, x in zip(pts, num)}

    def value(self, level: int, point: int) -> Fraction:
        num, den = self._evaluator(level, np.array([point], dtype=np.int64))
        return Fraction(int(num[0]), den)

    def total_mass(self, level: int | None = None) -> Fraction:
        level = self.levels[0] if level is None else level
        _, num, den = self.level_data(level)
        return Fraction(int(sum(int(x) for x in num)), den)

    def padic_chunks(self, level: int, P: int):
        """Yield (points, values mod p^P) chunk by chunk; raises when a value is not p-integral."""
        p = self.p
        mod = p**P
        for pts in self.space.iter_points(level):
            num, den = self._evaluator(level, pts)
            yield pts, _to_padic_residues(num, den, p, mod, P)

    def check_compatibility(self, levels=None) -> CompatibilityReport:
        """Fibre sums of each stored level against every level it maps to."""
        levels = self.levels if levels is None else tuple(levels)
        failures = []
        pairs = 0
        for src in levels:
            for dst in levels:
                if src == dst or not self.space.refines(src, dst):
                    continue
                pairs += 1
                spts, snum, sden = self.level_data(src)
                dpts, dnum, dden = self.level_data(dst)
                idx = np.searchsorted(dpts, self.space.project(spts, dst))
                big = snum.dtype == object or dnum.dtype == object
                sums = np.zeros(len(dpts), dtype=object if big else np.int64)
                np.add.at(sums, idx, snum)
                lhs = [int(s) * dden for s in sums]
                rhs = [int(x) * sden for x in dnum]
                bad = [int(dpts[i]) for i in range(len(dpts)) if lhs[i] != rhs[i]]
                if bad:
                    failures.append({"from": src, "to": dst, "points": bad[:5]})
        return CompatibilityReport(not failures, pairs, failures)

    def boundedness(self, levels=None) -> BoundednessCertificate:
        levels = self.levels if levels is None else tuple(levels)
        p = self.p
        if p is None:
            raise PreconditionError("boundedness is measured at a prime; set space.p")
        best, witness = math.inf, None
        for lv in levels:
            pts, num, den = self.level_data(lv)
            if not len(num):
                continue
            vals = _valuations(num, p) - _vp_int(den, p)
            i = int(np.argmin(vals))
            v = int(vals[i])
            if v < 10**8 and v < best:
                best = v
                witness = {"level": lv, "point": int(pts[i]),
                           "value": format_rational(Fraction(int(num[i]), den)), "valuation": v}
        return BoundednessCertificate(best, levels, witness)

    def to_json(self, max_points: int = 2000) -> dict:
        levels = {}
        for lv in self.levels:
            pts, num, den = self.level_data(lv)
            if len(pts) > max_points:
                continue
            levels[str(lv)] = {str(int(a)): format_rational(Fraction(int(x), den)) for a, x in zip(pts, num)}
        out = {"space": self.space.to_json(), "name": self.name, "params": self.params, "levels": levels}
        if self.p is not None:
            out["certificate"] = self.boundedness().to_json()
        return out


def _to_padic_residues(num, den, p, mod, P):
    vden = _vp_int(den, p)
    unit_den = den // p**vden
    inv = pow(unit_den, -1, mod)
    num = np.asarray(num)
    if vden:
        if np.any(num % p**vden != 0):
            raise PreconditionError("distribution is not bounded: a value is not p-integral")
        num = num // p**vden
    if num.dtype == object and _int_dtype(mod) is np.int64:
        num = np.array([int(x) % mod for x in num], dtype=np.int64)
    return mulmod(num % mod, inv, mod)


# the three families


def bernoulli_distribution(k: int, levels, p: int | None = None) -> Distribution:
    """phi_i(a/i) = i^(k-1) B_k({a/i}) on the Y-system (exact).

    ``p`` only matters for boundedness reports.
    """
    if k < 1:
        raise PreconditionError("k must be positive")
    bs = [bernoulli_number(j) * math.comb(k, j) for j in range(k + 1)]

    def evaluator(level, pts):
        i = level
        vals = []
        for a in pts.tolist():
            # i^(k-1) B_k(a/i) = sum_j C(k,j) B_j a^(k-j) i^(j-1)
            vals.append(sum(b * Fraction(a) ** (k - j) * Fraction(i) ** (j - 1) for j, b in enumerate(bs)))
        den = math.lcm(*[v.denominator for v in vals]) if vals else 1
        return np.array([int(v * den) for v in vals], dtype=object), den

    space = ProfiniteSpace("Y", p)
    return Distribution(space, f"bernoulli_{k}", evaluator, levels, {"k": k})


def ec_measure(d: int, c: int, p: int, levels=(0,), formula: str = "regularized") -> Distribution:
    """The regularized Bernoulli measure E_c on the X-system.

    ``regularized``: E_c(x) = B_1({x/D}) - c B_1({c^-1 x/D}) with D = dp^(n+1)
    and c^-1 x reduced mod D.  This equals (x - c y)/D + (c - 1)/2 for
    y = c^-1 x mod D; it is compatible across levels and p-integral.

    ``verbatim``: B_1({x/D}) - B_1({c^-1 x/D}) + (c - 1)/2, kept for
    comparison; it is not p-integral (at p=5, d=1, c=2, x=1 it is 1/10).
    """
    check_prime(p)
    if math.gcd(c, d * p) != 1:
        raise PreconditionError("c must be prime to dp")
    if formula not in ("regularized", "verbatim"):
        raise PreconditionError("formula must be 'regularized' or 'verbatim'")

    def evaluator(level, pts):
        D = d * p ** (level + 1)
        cinv = pow(c, -1, D)
        pts = np.asarray(pts, dtype=np.int64)
        y = mulmod(pts, cinv, D)
        if formula == "regularized":
            return 2 * ((pts - c * y) // D) + (c - 1), 2
        return 2 * (pts - y) + (c - 1) * D, 2 * D

    space = ProfiniteSpace("X", p, d)
    return Distribution(space, f"E_{c}", evaluator, levels, {"c": c, "d": d, "formula": formula})


def haar_distribution(p: int, levels) -> Distribution:
    """Normalized Haar distribution on Gamma ~ Z_p: value p^-n on each point of level n."""

    def evaluator(level, pts):
        return np.ones(len(pts), dtype=np.int64), p**level

    return Distribution(ProfiniteSpace("Gamma", p), "haar", evaluator, levels)


# integration


def integrate_locally_constant(mu: Distribution, f, level: int, P: int | None = None):
    """sum_x f(x) mu_level(x).

    With ``P`` None the sum is exact: f maps a points array to a sequence
    of rationals.  With ``P`` given, f returns residues mod p^P and the
    result is a PadicInt.
    """
    if P is None:
        pts, num, den = mu.level_data(level)
        fv = f(pts)
        return sum((Fraction(fx) * int(x) for fx, x in zip(fv, num)), Fraction(0)) / den
    p = mu.p
    mod = p**P
    total = 0
    for pts, vals in mu.padic_chunks(level, P):
        total += sum_mod(mulmod(f(pts), vals, mod), mod)
    return PadicInt(p, P, total)


def integrate_continuous(mu: Distribution, f, level: int, h: int, P: int) -> PadicInt:
    """Riemann sum of f against a bounded mu at ``level``.

    ``f(points, P)`` returns residues mod p^P and must satisfy
    f(x) = f(y) mod p^h whenever x, y agree at this level.  Since mu is
    Z_p-valued the Riemann sum differs from the integral by at most
    p^-h, so the result carries precision min(P, h).
    """
    p = mu.p
    mod = p**P
    total = 0
    for pts, vals in mu.padic_chunks(level, P):
        total += sum_mod(mulmod(f(pts, P), vals, mod), mod)
    return PadicInt(p, min(P, h), total)


def angle_residues(pts: np.ndarray, p: int, P: int) -> np.ndarray:
    """<x> mod p^P for an array of units."""
    mod = p**P
    w = teichmuller_character(p)
    winv = np.array((w ** -1).padic_table(p, P), dtype=_int_dtype(mod))
    return mulmod(pts % mod, winv[pts % p], mod)


def project_branch(mu: Distribution, psi: DirichletCharacter, level: int, N: int) -> GroupRingElement:
    """Push mu forward to Gamma/Gamma^(p^n) along y -> <y>, weighting by psi(y).

    nu_n(gamma^j) = sum of psi(y) mu_n(y) over y in X_n with <y> = gamma^j
    mod p^(n+1).  psi must be tame with modulus dividing dp.
    """
    space = mu.space
    if space.kind != "X":
        raise PreconditionError("project_branch needs a distribution on the X-system")
    p, d = space.p, space.d
    if (d * p) % psi.modulus:
        raise PreconditionError("psi must have modulus dividing dp")
    if not psi.is_tame(p):
        raise PreconditionError("psi order must divide p - 1")
    n = level
    mod = p**N
    dt = _int_dtype(mod)
    table = np.array(psi.padic_table(p, N), dtype=dt)
    logt = _gamma_log_table(p, n)
    # a bucket receives at most (p - 1) d terms per chunk before reduction
    wide = dt is not np.int64 or mod * (p - 1) * d >= 2**63
    acc = np.zeros(p**n, dtype=object if wide else np.int64)
    for pts, vals in mu.padic_chunks(n, N):
        ang = angle_residues(pts, p, n + 1)
        j = logt[(np.asarray(ang, dtype=np.int64) - 1) // p]
        w = mulmod(table[pts % psi.modulus], vals, mod)
        np.add.at(acc, j, w.astype(object) if wide else w)
        acc %= mod
    return GroupRingElement(p, n, N, acc.tolist())
