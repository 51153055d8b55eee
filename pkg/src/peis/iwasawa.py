"""Truncated Iwasawa algebra Lambda = Z_p[[T]] and the measure dictionary.

Gamma = 1 + pZ_p with topological generator gamma = 1 + p; the group ring
element gamma^j corresponds to (1 + T)^j.  A ``LambdaElement`` stores
c_0..c_{M-1} modulo p^N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotIntegralError, PreconditionError, PrecisionError
from .exact import as_fraction, format_rational
from .padic import PadicInt, PadicNumber, _ilog, check_prime, int_valuation

__all__ = [
    "LambdaElement",
    "GroupRingElement",
    "WeierstrassData",
    "WeightTest",
    "KummerSolution",
    "from_group_ring",
    "dirac",
    "evaluate_at_character",
    "weight_point",
    "weierstrass_prepare",
    "lambda_mu_invariants",
    "uniqueness_by_weights",
    "abstract_kummer_solve",
    "interpolate_weights",
    "binomial_loss",
]


def binomial_loss(p: int, M: int) -> int:
    """Digits lost when C(j, i), i < M, is evaluated at a p-adic j: floor(log_p(M-1))."""
    return _ilog(M - 1, p) if M > 1 else 0


def _residue(x, p: int, N: int) -> tuple[int, int]:
    """(residue mod p^N, known precision) for an int/Fraction/PadicInt."""
    if isinstance(x, PadicInt):
        if x.p != p:
            raise PreconditionError("mixing different primes")
        n = min(N, x.N)
        return x.residue % p**n, n
    return PadicInt.from_rational(x, p, N).residue, N


class LambdaElement:
    """An element of Z_p[[T]] modulo (p^N, T^M)."""

    __slots__ = ("p", "N", "M", "coeffs")

    def __init__(self, p: int, N: int, M: int, coeffs=()):
        check_prime(p)
        if M < 1 or N < 0:
            raise PreconditionError("need M >= 1 and N >= 0")
        mod = p**N
        cs = []
        for c in list(coeffs)[:M]:
            if isinstance(c, PadicInt):
                if c.N < N:
                    raise PrecisionError("coefficient known to fewer digits than N")
                cs.append(c.residue % mod)
            else:
                cs.append(PadicInt.from_rational(c, p, N).residue)
        cs += [0] * (M - len(cs))
        self.p, self.N, self.M = p, N, M
        self.coeffs = tuple(cs)

    # constructors

    @classmethod
    def zero(cls, p, N, M):
        return cls(p, N, M)

    @classmethod
    def one(cls, p, N, M):
        return cls(p, N, M, [1])

    @classmethod
    def T(cls, p, N, M):
        return cls(p, N, M, [0, 1])

    # access

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def coeff(self, i: int) -> PadicInt:
        return PadicInt(self.p, self.N, self.coeffs[i] if i < self.M else 0)

    def coefficients(self) -> list[PadicInt]:
        return [self.coeff(i) for i in range(self.M)]

    def truncate(self, N: int | None = None, M: int | None = None) -> "LambdaElement":
        N = self.N if N is None else min(N, self.N)
        M = self.M if M is None else min(M, self.M)
        return LambdaElement(self.p, N, M, self.coeffs[:M])

    def _match(self, other):
        if isinstance(other, LambdaElement):
            if other.p != self.p:
                raise PreconditionError("mixing different primes")
            N, M = min(self.N, other.N), min(self.M, other.M)
            return N, M, other.coeffs
        if isinstance(other, (int, Fraction, PadicInt)):
            r, n = _residue(other, self.p, self.N)
            return n, self.M, (r,) + (0,) * (self.M - 1)
        return None

    # ring operations

    def __add__(self, other):
        m = self._match(other)
        if m is None:
            return NotImplemented
        N, M, oc = m
        return LambdaElement(self.p, N, M, [(a + b) for a, b in zip(self.coeffs[:M], oc[:M])])

    __radd__ = __add__

    def __neg__(self):
        return LambdaElement(self.p, self.N, self.M, [-c for c in self.coeffs])

    def __sub__(self, other):
        m = self._match(other)
        if m is None:
            return NotImplemented
        N, M, oc = m
        return LambdaElement(self.p, N, M, [(a - b) for a, b in zip(self.coeffs[:M], oc[:M])])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicInt)):
            r, n = _residue(other, self.p, self.N)
            return LambdaElement(self.p, n, self.M, [c * r for c in self.coeffs])
        m = self._match(other)
        if m is None:
            return NotImplemented
        N, M, oc = m
        mod = self.p**N
        return LambdaElement(self.p, N, M, _series_mul(self.coeffs, oc, M, mod))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = LambdaElement.one(self.p, self.N, self.M)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_unit(self) -> bool:
        return self.N > 0 and self.coeffs[0] % self.p != 0

    def inverse(self) -> "LambdaElement":
        """Inverse of a unit (constant term prime to p)."""
        if not self.is_unit():
            raise PreconditionError("only elements with unit constant term are invertible")
        return LambdaElement(self.p, self.N, self.M, _series_inv(self.coeffs, self.M, self.modulus))

    def __truediv__(self, other):
        if isinstance(other, LambdaElement):
            return self * other.inverse()
        if isinstance(other, (int, Fraction, PadicInt)):
            r, n = _residue(other, self.p, self.N)
            if r % self.p == 0:
                raise PreconditionError("division by a non-unit constant")
            return LambdaElement(self.p, n, self.M, [c * pow(r, -1, self.p**n) for c in self.coeffs[:self.M]])
        return NotImplemented

    def min_valuation(self) -> int:
        """min_i v_p(c_i), N when the element vanishes at this precision."""
        vals = [int_valuation(c, self.p) for c in self.coeffs if c]
        return min([v for v in vals] + [self.N])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        m = self._match(other) if isinstance(other, (LambdaElement, int, Fraction, PadicInt)) else None
        if m is None:
            return NotImplemented
        N, M, oc = m
        mod = self.p**N
        return all((a - b) % mod == 0 for a, b in zip(self.coeffs[:M], oc[:M]))

    __hash__ = None

    def __call__(self, z) -> PadicInt:
        return evaluate_at_character(self, z)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if self.M > 6 else ""
        return f"LambdaElement(p={self.p}, N={self.N}, M={self.M}, [{shown}{more}])"

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.N, "M": self.M, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "LambdaElement":
        return cls(int(data["p"]), int(data["N"]), int(data["M"]), [int(c) for c in data["coeffs"]])


def _series_mul(a, b, M, mod):
    out = [0] * M
    for i, x in enumerate(a[:M]):
        if x:
            for j in range(min(len(b), M - i)):
                out[i + j] += x * b[j]
    return [c % mod for c in out]


def _series_inv(a, M, mod):
    inv0 = pow(a[0], -1, mod)
    out = [0] * M
    out[0] = inv0
    for m in range(1, M):
        s = 0
        for i in range(1, min(m, len(a) - 1) + 1):
            s += a[i] * out[m - i]
        out[m] = -s * inv0 % mod
    return out


class GroupRingElement:
    """sum_j a_j gamma^j in Z_p[Gamma / Gamma^(p^n)], coefficients mod p^N."""

    __slots__ = ("p", "n", "N", "coeffs")

    def __init__(self, p: int, n: int, N: int, coeffs):
        check_prime(p)
        size = p**n
        cs = np.asarray(coeffs, dtype=object) if not isinstance(coeffs, np.ndarray) else coeffs
        if len(cs) != size:
            raise PreconditionError(f"level {n} needs {size} coefficients")
        mod = p**N
        self.p, self.n, self.N = p, n, N
        self.coeffs = tuple(int(c) % mod for c in cs)

    @classmethod
    def delta(cls, p, n, N, j):
        c = [0] * p**n
        c[j % p**n] = 1
        return cls(p, n, N, c)

    def coeff(self, j: int) -> PadicInt:
        return PadicInt(self.p, self.N, self.coeffs[j % self.p**self.n])

    def total(self) -> PadicInt:
        return PadicInt(self.p, self.N, sum(self.coeffs))

    def reduce(self, m: int) -> "GroupRingElement":
        """Push forward to level m <= n by summing over fibres."""
        if m > self.n:
            raise PreconditionError("can only push forward to a lower level")
        size = self.p**m
        out = [0] * size
        for j, c in enumerate(self.coeffs):
            out[j % size] += c
        return GroupRingElement(self.p, m, self.N, out)

    def __sub__(self, other):
        if (self.p, self.n) != (other.p, other.n):
            raise PreconditionError("group ring elements at different levels")
        return GroupRingElement(self.p, self.n, min(self.N, other.N),
                                [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def to_json(self) -> dict:
        return {"p": self.p, "level": self.n, "N": self.N, "coeffs": [str(c) for c in self.coeffs]}




def _suffix_sums(arr: np.ndarray, mod: int) -> np.ndarray:
    """Strict suffix sums sum_{j > t} arr[j] mod ``mod``."""
    inclusive = np.cumsum(arr[::-1])[::-1]
    out = inclusive - arr
    return out % mod


def from_group_ring(g: GroupRingElement, M: int) -> LambdaElement:
    """Image of sum_j a_j gamma^j, namely sum_j a_j (1 + T)^j mod (p^N, T^M).

    Uses C(j, i) = sum_{t < j} C(t, i - 1): the i-th coefficient is the
    total of the i-fold strict suffix sums of (a_j).
    """
    mod = g.p**g.N
    size = len(g.coeffs)
    use_int = mod * size < 2**62
    arr = np.array(g.coeffs, dtype=np.int64 if use_int else object)
    out = []
    for i in range(M):
        out.append(int(arr.sum() % mod) if use_int else int(sum(arr.tolist()) % mod))
        if i + 1 < M:
            arr = _suffix_sums(arr, mod)
    return LambdaElement(g.p, g.N, M, out)


def dirac(j, p: int | None = None, N: int | None = None, M: int = 12) -> LambdaElement:
    """(1 + T)^j.

    Integers give exact binomial coefficients.  For a p-adic exponent the
    integer representative is used; C(x, i) is p^floor(log_p i)-Lipschitz,
    so the result is known to p^(N_j - floor(log_p(M-1))).
    """
    if isinstance(j, PadicInt):
        p = j.p
        N_out = j.N - binomial_loss(p, M)
        if N is not None:
            N_out = min(N_out, N)
        if N_out < 0:
            raise PrecisionError("exponent precision too small for this truncation")
        J = j.residue
    else:
        if p is None or N is None:
            raise PreconditionError("integer exponents need p and N")
        N_out, J = N, j
    mod = p**N_out
    coeffs = []
    c = Fraction(1)
    for i in range(M):
        if i:
            c = c * (J - i + 1) / i
        coeffs.append(int(c) % mod)
    return LambdaElement(p, N_out, M, coeffs)


def weight_point(s, p: int, N: int) -> PadicInt:
    """z = gamma^s - 1, the point where a Lambda element is integrated against <x>^s."""
    from .padic import angle_power

    if isinstance(s, PadicInt):
        return angle_power(PadicInt(p, s.N, 1 + p), s) - 1
    mod = p**N
    return PadicInt(p, N, pow(1 + p, s, mod) - 1)


def evaluate_at_character(f: LambdaElement, z: PadicInt) -> PadicInt:
    """sum c_i z^i for v(z) >= 1.

    The answer is known to p^min(N, N_z, M*v(z)): the unseen tail
    c_i z^i with i >= M has valuation at least M*v(z).
    """
    if not isinstance(z, PadicInt):
        z = PadicInt.from_rational(z, f.p, f.N)
    if z.p != f.p:
        raise PreconditionError("mixing different primes")
    vz = z.valuation()
    if vz == 0:
        raise PreconditionError("evaluation point must have positive valuation")
    prec = min(f.N, z.N, f.M * vz)
    mod = f.p**prec
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * z.residue + c) % mod
    return PadicInt(f.p, prec, acc)


# Weierstrass preparation


@dataclass(frozen=True, eq=False)
class WeierstrassData:
    """f = p^mu * P * U with P distinguished of degree lambda and U a unit."""

    mu: int
    lam: int
    distinguished: LambdaElement
    unit: LambdaElement
    precision: int

    def reconstruct(self) -> LambdaElement:
        prod = self.distinguished * self.unit
        p = prod.p
        N = prod.N + self.mu
        return LambdaElement(p, N, prod.M, [c * p**self.mu for c in prod.coeffs])

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "lambda": self.lam,
            "distinguished": self.distinguished.to_json(),
            "unit": self.unit.to_json(),
            "precision": self.precision,
        }


def weierstrass_prepare(f: LambdaElement) -> WeierstrassData:
    """Factor f = p^mu P U modulo (p^N, T^M).

    The truncated input is read as the polynomial sum_{i<M} c_i T^i, so
    the factorization is exact for that lift.  P is found by Weierstrass
    division of T^lambda by f/p^mu, a successive approximation in which
    each pass gains one p-adic digit; the working T-length is padded so
    truncation never reaches the returned coefficients.
    """
    p, N, M = f.p, f.N, f.M
    if f.is_zero():
        raise PrecisionError("element is indistinguishable from 0 at this precision")
    mu = f.min_valuation()
    Np = N - mu
    mod = p**Np
    g = [(c // p**mu) % mod for c in f.coeffs]
    lam = next(i for i, c in enumerate(g) if c % p)
    if lam >= M:
        raise PrecisionError("lambda is not below the truncation order")
    if lam == 0:
        P = LambdaElement(p, Np, M, [1])
        return WeierstrassData(mu, 0, P, LambdaElement(p, Np, M, g), Np)
    W = M + lam * (Np + 2)
    A = g[:lam]
    B = g[lam:] + [0] * (W - (M - lam))
    B = B[:W]
    Binv = _series_inv(B, W, mod)
    # w solves tau(T^lam) = w + tau(A * B^-1 * w) where tau drops lam terms
    tau_g = [1] + [0] * (W - 1)
    w = list(tau_g)
    for _ in range(Np + 2):
        t = _series_mul(Binv, w, W, mod)
        t = _series_mul(A, t, W, mod)
        shifted = t[lam:] + [0] * lam
        new = [(a - b) % mod for a, b in zip(tau_g, shifted)]
        if new == w:
            break
        w = new
    q = _series_mul(Binv, w, W, mod)
    # P = T^lam - r with r = -alpha(q A), alpha keeping terms below lam
    qa = _series_mul(q, A, lam, mod)
    P = [c % mod for c in qa] + [1]
    U = _series_inv(q, M, mod)
    return WeierstrassData(mu, lam, LambdaElement(p, Np, M, P), LambdaElement(p, Np, M, U), Np)


def lambda_mu_invariants(f: LambdaElement) -> tuple[int, int]:
    """(mu, lambda) of f."""
    mu = f.min_valuation()
    if f.is_zero():
        raise PrecisionError("element is indistinguishable from 0 at this precision")
    lam = next(i for i, c in enumerate(f.coeffs) if (c // f.p**mu) % f.p)
    return mu, lam


# uniqueness from weights


@dataclass(frozen=True)
class WeightTest:
    equal: bool
    first_failure: int | None
    precision: int
    implied_precision: int

    def __bool__(self):
        return self.equal


def uniqueness_by_weights(f: LambdaElement, g: LambdaElement, K: int) -> WeightTest:
    """Compare f and g through their values at z_k = (1+p)^k - 1, k = 0..K.

    Values are compared at N' = min(N, M) digits (the evaluation bound at
    v(z_k) = 1).  Agreement everywhere implies f = g modulo
    (p^N'', T^M) with N'' = min(N', K+1) - (M-1) - v_p(K!): the Newton
    coefficients of f - g lose at most j + v_p(j!) digits and the basis
    change to powers of T gains back j - m.
    """
    if K < f.M:
        raise PreconditionError("need K >= M")
    d = f - g
    p = d.p
    precs = []
    first = None
    for k in range(K + 1):
        val = evaluate_at_character(d, weight_point(k, p, d.N))
        precs.append(val.N)
        if not val.is_zero() and first is None:
            first = k
    Nprime = min(precs)
    vfact = sum(K // p**j for j in range(1, _ilog(K, p) + 1)) if K else 0
    implied = max(0, min(Nprime, K + 1) - (d.M - 1) - vfact)
    return WeightTest(first is None, first, Nprime, implied)


# abstract Kummer congruences on a finite level


@dataclass(frozen=True)
class KummerSolution:
    """Either integral measure values or a witness combination."""

    values: list | None
    witness: dict | None
    precision: int | None

    @property
    def exists(self) -> bool:
        return self.values is not None


def _exact(x, p):
    if isinstance(x, PadicInt):
        if x.p != p:
            raise PreconditionError("mixing different primes")
        return Fraction(x.residue), x.N
    return as_fraction(x), None


def _rank_rows(rows):
    """Indices of a maximal independent set of rows (exact elimination)."""
    basis = []
    chosen = []
    for idx, row in enumerate(rows):
        r = list(row)
        for piv, brow in basis:
            if r[piv]:
                c = r[piv] / brow[piv]
                r = [a - c * b for a, b in zip(r, brow)]
        nz = next((i for i, a in enumerate(r) if a), None)
        if nz is not None:
            basis.append((nz, r))
            chosen.append(idx)
    return chosen


def _inverse(mat):
    n = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [a / pv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _qval(x: Fraction, p: int):
    if x == 0:
        return math.inf
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


def abstract_kummer_solve(functions, moments, p: int) -> KummerSolution:
    """Find mu on a finite set with sum_y f_i(y) mu(y) = a_i.

    ``functions[i]`` lists the values of f_i at the points y.  Entries may
    be ints, Fractions or PadicInts; PadicInt entries are read through
    their residues and the result precision drops by the largest
    denominator exponent of the inverse matrix.  When some mu(y) is not
    p-integral the witness is the corresponding row b of the inverse: then
    sum_i b_i f_i is the indicator of y (integral) while sum_i b_i a_i =
    mu(y) is not.
    """
    check_prime(p)
    F, precs = [], []
    for row in functions:
        r = []
        for x in row:
            v, n = _exact(x, p)
            r.append(v)
            if n is not None:
                precs.append(n)
        F.append(r)
    a = []
    for x in moments:
        v, n = _exact(x, p)
        a.append(v)
        if n is not None:
            precs.append(n)
    if len(F) != len(a):
        raise PreconditionError("one moment per function is required")
    npts = len(F[0]) if F else 0
    chosen = _rank_rows(F)
    if len(chosen) < npts:
        raise PreconditionError("the functions do not span the space of functions on the level")
    sub = [F[i] for i in chosen]
    inv = _inverse(sub)
    mu = [sum(inv[y][j] * a[chosen[j]] for j in range(npts)) for y in range(npts)]
    loss = max(0, -min(_qval(x, p) for row in inv for x in row if x != 0))
    prec = (min(precs) - loss) if precs else None
    # remaining equations must be consistent
    for i, row in enumerate(F):
        if i in chosen:
            continue
        lhs = sum(fx * m for fx, m in zip(row, mu))
        diff = lhs - a[i]
        if diff != 0 and (prec is None or _qval(diff, p) < prec):
            raise NotIntegralError("moments are inconsistent with the functions",
                                   witness={"equation": i, "residual": format_rational(diff)})
    bad = [y for y in range(npts) if _qval(mu[y], p) < 0]
    if bad:
        y = bad[0]
        coeffs = [Fraction(0)] * len(F)
        for j, i in enumerate(chosen):
            coeffs[i] = inv[y][j]
        witness = {
            "point_index": y,
            "combination": [format_rational(c) for c in coeffs],
            "combined_function": "indicator of the point",
            "combined_moment": format_rational(mu[y]),
            "moment_valuation": _qval(mu[y], p),
        }
        return KummerSolution(None, witness, prec)
    if prec is not None:
        vals = [PadicInt.from_rational(m, p, prec) for m in mu]
    else:
        vals = mu
    return KummerSolution(vals, None, prec)


# interpolation from weight values


def interpolate_weights(exponents, values, p: int, N: int, M: int) -> LambdaElement:
    """The Lambda element f with f(gamma^k - 1) = value_k on the given weights.

    Newton divided differences are formed at nodes z_t = gamma^(k_t) - 1.
    For a genuine element of Lambda every divided difference is integral,
    so a non-integral one certifies that no such element exists
    (``NotIntegralError`` with the offending nodes).  With J nodes the
    result is known modulo (p^min(N, J - M + 1), T^M).
    """
    check_prime(p)
    ks = list(exponents)
    J = len(ks)
    if J != len(values) or J == 0:
        raise PreconditionError("need one value per exponent")
    if len(set(ks)) != J:
        raise PreconditionError("exponents must be distinct")
    # loss per divided-difference order
    level_loss = [0]
    for r in range(1, J):
        level_loss.append(max(1 + int_valuation(ks[t + r] - ks[t], p) for t in range(J - r)))
    total_loss = sum(level_loss)
    W = N + total_loss
    have = W
    res = []
    for k, x in zip(ks, values):
        if isinstance(x, PadicNumber):
            if x.valuation() < 0:
                raise NotIntegralError("value is not p-integral",
                                       witness={"order": 0, "exponents": [k], "valuation": x.valuation()})
            x = x.to_padic_int()
        if not isinstance(x, PadicInt):
            fx = as_fraction(x)
            v = _qval(fx, p)
            if v < 0:
                raise NotIntegralError("value is not p-integral",
                                       witness={"order": 0, "exponents": [k], "valuation": v})
        r, n = _residue(x, p, W)
        res.append(r)
        have = min(have, n)
    mod = p**have
    zs = [(pow(1 + p, k, mod) - 1) % mod if k >= 0 else (pow(pow(1 + p, -1, mod), -k, mod) - 1) % mod
          for k in ks]
    cur = [r % mod for r in res]
    prec = have
    newton = [cur[0]]
    for r in range(1, J):
        prec -= level_loss[r]
        if prec <= 0:
            raise PrecisionError("input precision exhausted by divided differences")
        nxt = []
        for t in range(J - r):
            num = (cur[t + 1] - cur[t]) % mod
            dz = (zs[t + r] - zs[t]) % mod
            vd = 1 + int_valuation(ks[t + r] - ks[t], p)
            vn = int_valuation(num, p) if num else math.inf
            if vn < vd and vn < prec + vd:
                raise NotIntegralError(
                    "divided difference is not p-integral",
                    witness={"order": r, "exponents": ks[t:t + r + 1], "valuation": int(vn - vd)},
                )
            q = (num // p**vd) * pow(dz // p**vd, -1, mod) % mod
            nxt.append(q)
        cur = nxt
        newton.append(cur[0])
    outN = min(N, prec, J - M + 1)
    if outN < 1:
        raise PrecisionError("too few weights for the requested truncation")
    omod = p**outN
    poly = [newton[-1] % omod]
    for j in range(J - 2, -1, -1):
        # poly <- poly * (T - z_j) + c_j
        z = zs[j] % omod
        shifted = [0] + poly
        scaled = [c * z for c in poly] + [0]
        poly = [(a - b) % omod for a, b in zip(shifted, scaled)][:M]
        poly[0] = (poly[0] + newton[j]) % omod
    return LambdaElement(p, outN, M, poly)
