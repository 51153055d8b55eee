"""q-expansions, classical and p-adic Eisenstein series, and the Eisenstein measure.

Weights are characters k = (s, u) of Z_p^x, a -> omega(a)^u <a>^s; an
integer k is (k, k mod p-1).  The p-adic series G*_k has
a_n = sum over d | n, p not dividing d, of d^-1 omega(d)^u <d>^s and
a_0 = zeta*(1-k)/2 with zeta*(1-k) = L_p(1-s, omega^u).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotIntegralError, PreconditionError, PrecisionError
from .exact import (
    as_fraction,
    divisors,
    format_rational,
    rational_valuation,
    sigma_power,
    stabilized_zeta,
    zeta_at_one_minus,
)
from .iwasawa import (
    LambdaElement,
    binomial_loss,
    dirac,
    evaluate_at_character,
    interpolate_weights,
    weight_point,
)
from .lfunctions import interpolated_branch, inverse_trivial_branch, zeta_star
from .padic import (
    PadicInt,
    PadicNumber,
    WeightCharacter,
    angle,
    check_prime,
    gamma_log,
    int_valuation,
    padic_log,
    teichmuller,
    weight_eval,
)

__all__ = [
    "QExpansion",
    "ValuationReport",
    "classical_G",
    "p_stabilize",
    "padic_G_star",
    "valuation_report",
    "WeightAudit",
    "weight_congruence_audit",
    "ConstantTermAudit",
    "constant_term_bound_audit",
    "limit_constant_terms",
    "serre_eisenstein_measure",
    "normalized_family_u0",
    "FSAudit",
    "fs_constant_term_audit",
    "valuation_table_csv",
]

RINGS = ("rational", "padic", "lambda")


def _coeff_json(c):
    if isinstance(c, (PadicInt, PadicNumber, LambdaElement)):
        return c.to_json()
    return format_rational(c)


@dataclass(frozen=True, eq=False)
class QExpansion:
    """a_0 + a_1 q + ... + a_M q^M over one coefficient ring."""

    ring: str
    coeffs: tuple
    weight: dict = field(default_factory=dict)
    p: int | None = None
    N: int | None = None
    M_T: int | None = None

    def __post_init__(self):
        if self.ring not in RINGS:
            raise PreconditionError(f"ring must be one of {RINGS}")
        cs = tuple(self.coeffs)
        if self.ring == "rational":
            cs = tuple(as_fraction(c) for c in cs)
        elif self.ring == "padic":
            for c in cs:
                if not isinstance(c, (PadicInt, PadicNumber)) or c.p != self.p:
                    raise PreconditionError("p-adic coefficients must share the prime")
        else:
            for c in cs:
                if not isinstance(c, LambdaElement) or c.p != self.p or c.M != self.M_T:
                    raise PreconditionError("Lambda coefficients must share p and M_T")
        object.__setattr__(self, "coeffs", cs)

    @property
    def M(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        if other.ring != self.ring or len(other) != len(self):
            raise PreconditionError("need expansions over the same ring and truncation")
        return QExpansion(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
                          {}, self.p, self.N, self.M_T)

    def scale(self, x) -> "QExpansion":
        return QExpansion(self.ring, tuple(c * x for c in self.coeffs), dict(self.weight),
                          self.p, self.N, self.M_T)

    def specialize(self, s) -> "QExpansion":
        """Evaluate every Lambda coefficient at z = (1+p)^s - 1."""
        if self.ring != "lambda":
            raise PreconditionError("only Lambda-valued expansions specialize")
        z = weight_point(s, self.p, self.N)
        vals = tuple(evaluate_at_character(c, z) for c in self.coeffs)
        weight = dict(self.weight)
        weight["s"] = s.to_json() if isinstance(s, PadicInt) else s
        return QExpansion("padic", vals, weight, self.p, min(v.N for v in vals))

    def to_json(self) -> dict:
        out = {"ring": self.ring, "weight": self.weight, "coeffs": [_coeff_json(c) for c in self.coeffs]}
        for key in ("p", "N", "M_T"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


# classical and p-adic Eisenstein series


def classical_G(k: int, M: int = 50) -> QExpansion:
    """G_k = zeta(1-k)/2 + sum sigma_{k-1}(n) q^n."""
    if k < 4 or k % 2:
        raise PreconditionError("classical G_k needs an even k >= 4")
    cs = [zeta_at_one_minus(k) / 2] + [Fraction(sigma_power(n, k - 1)) for n in range(1, M + 1)]
    return QExpansion("rational", tuple(cs), {"k": k})


def p_stabilize(f: QExpansion, k: int, p: int) -> QExpansion:
    """f(q) - p^(k-1) f(q^p) for a rational expansion of weight k."""
    if f.ring != "rational":
        raise PreconditionError("p_stabilize works on rational expansions")
    pk = Fraction(p) ** (k - 1)
    cs = [c - (pk * f[n // p] if n % p == 0 else 0) for n, c in enumerate(f.coeffs)]
    return QExpansion("rational", tuple(cs), {"k": k, "p_stabilized": p}, p)


def _as_weight(k, p: int) -> WeightCharacter:
    if isinstance(k, WeightCharacter):
        return k
    if isinstance(k, int):
        return WeightCharacter.from_integer(k, p)
    s, u = k
    return WeightCharacter(s, u, p)


def _sigma_star_terms(k: WeightCharacter, M: int, N: int) -> dict:
    # d -> d^-1 omega(d)^u <d>^s for prime-to-p d <= M
    p = k.p
    out = {}
    for d in range(1, M + 1):
        if d % p:
            out[d] = weight_eval(k, d, N) / PadicInt(p, N, d)
    return out


def padic_G_star(k, M: int = 50, N: int = 20, p: int | None = None) -> QExpansion:
    """G*_k for a weight k = (s, u) != 0.

    ``k`` may be a WeightCharacter, an integer (with ``p``), or a pair (s, u)
    (with ``p``).  The constant term is exact at integer weights and comes
    from ``zeta_star`` otherwise; it is 0 for odd u.
    """
    if not isinstance(k, WeightCharacter):
        if p is None:
            raise PreconditionError("give p or a WeightCharacter")
        k = _as_weight(k, p)
    p = k.p
    if k.is_zero():
        raise PreconditionError("weight 0 is excluded")
    terms = _sigma_star_terms(k, M, N)
    cs = []
    kint = k.integer_weight()
    if k.u % 2:
        a0 = PadicInt(p, N, 0)
    elif kint is not None and kint >= 2:
        a0 = PadicNumber.from_rational(stabilized_zeta(kint, p) / 2, p, N)
        a0 = a0.to_padic_int() if k.u else a0
    else:
        s = k.s
        zs = zeta_star(1 - s, k.u, p, N)
        a0 = zs / 2 if isinstance(zs, PadicInt) else zs / PadicNumber.from_rational(2, p, N)
    cs.append(a0)
    for n in range(1, M + 1):
        acc = PadicInt(p, N, 0)
        for d in divisors(n):
            if d % p:
                acc = acc + terms[d]
        cs.append(acc)
    weight = {"s": k.s.to_json() if isinstance(k.s, PadicInt) else k.s, "u": k.u}
    return QExpansion("padic", tuple(cs), weight, p, N)


# valuations and congruence audits


@dataclass(frozen=True)
class ValuationReport:
    valuation: float
    index: int | None
    valuations: tuple

    def to_json(self) -> dict:
        fix = lambda v: "inf" if v == math.inf else v
        return {"valuation": fix(self.valuation), "index": self.index,
                "valuations": [fix(v) for v in self.valuations]}


def _coeff_valuation(c, p: int):
    if isinstance(c, PadicInt):
        return math.inf if c.is_zero() else c.valuation()
    if isinstance(c, PadicNumber):
        return math.inf if c.is_zero() else c.valuation()
    if isinstance(c, LambdaElement):
        return math.inf if c.is_zero() else c.min_valuation()
    return rational_valuation(c, p)


def valuation_report(f: QExpansion, p: int | None = None) -> ValuationReport:
    """v_p(f) = inf_n v_p(a_n); zero coefficients count as +inf (at precision)."""
    p = f.p if p is None else p
    if p is None:
        raise PreconditionError("a prime is needed")
    vals = tuple(_coeff_valuation(c, p) for c in f.coeffs)
    best = min(vals) if vals else math.inf
    idx = None if best == math.inf else vals.index(best)
    return ValuationReport(best, idx, vals)


@dataclass(frozen=True)
class WeightAudit:
    k: int
    k2: int
    p: int
    m_observed: float
    required_modulus: int | None
    consistent: bool

    def to_json(self) -> dict:
        m = self.m_observed
        return {"k": self.k, "k2": self.k2, "p": self.p, "m_observed": "inf" if m == math.inf else m,
                "required_modulus": self.required_modulus, "consistent": self.consistent}


def weight_congruence_audit(f: QExpansion, g: QExpansion, k: int, k2: int, p: int) -> WeightAudit:
    """m = v_p(f - g) - v_p(f); if m >= 1 then k = k' mod (p-1)p^(m-1) must hold."""
    vf = valuation_report(f, p).valuation
    if vf == math.inf:
        raise PreconditionError("f must be nonzero")
    m = valuation_report(f - g, p).valuation - vf
    if m == math.inf:
        return WeightAudit(k, k2, p, m, None, k == k2)
    if m < 1:
        return WeightAudit(k, k2, p, m, None, True)
    modulus = (p - 1) * p ** (int(m) - 1)
    return WeightAudit(k, k2, p, m, modulus, (k - k2) % modulus == 0)


@dataclass(frozen=True)
class ConstantTermAudit:
    hypothesis_met: bool
    holds: bool | None
    lhs: float | None
    rhs: float | None

    def to_json(self) -> dict:
        fix = lambda v: "inf" if v == math.inf else v
        return {"hypothesis_met": self.hypothesis_met, "holds": self.holds,
                "lhs": fix(self.lhs), "rhs": fix(self.rhs)}


def weight_image_nonzero(k: WeightCharacter, m: int) -> bool:
    """Is the image of k in X_(m+1) = Z/(p-1)p^m nonzero?"""
    if k.u:
        return True
    if m == 0:
        return False
    s = k.s
    if isinstance(s, PadicInt):
        if s.N < m:
            raise PrecisionError("weight known to too few digits")
        return s.residue % k.p**m != 0
    return s % k.p**m != 0


def constant_term_bound_audit(f: QExpansion, k, m: int) -> ConstantTermAudit:
    """Check v_p(a_0) + m >= inf_{n>=1} v_p(a_n) when k is nonzero in X_(m+1)."""
    p = f.p
    k = _as_weight(k, p)
    if not weight_image_nonzero(k, m):
        return ConstantTermAudit(False, None, None, None)
    vals = valuation_report(f, p).valuations
    lhs = vals[0] + m
    rhs = min(vals[1:]) if len(vals) > 1 else math.inf
    return ConstantTermAudit(True, lhs >= rhs, lhs, rhs)


def limit_constant_terms(k: int, p: int, count: int = 4):
    """Constant terms zeta(1-k_i)/2 of G_(k_i), k_i = k + (p-1)p^i, i = 1..count.

    Returns (values, agreement valuations between consecutive terms).
    """
    ks = [k + (p - 1) * p**i for i in range(1, count + 1)]
    vals = [zeta_at_one_minus(x) / 2 for x in ks]
    diffs = [rational_valuation(a - b, p) for a, b in zip(vals, vals[1:])]
    return ks, vals, diffs


# Lambda-valued families


def _exponent_table(p: int, M: int, N: int) -> dict:
    # d -> e_d = log<d> / log(1+p), known to p^N
    lg = gamma_log(p, N + 1)
    return {d: padic_log(angle(d, p, N + 1)) / lg for d in range(1, M + 1) if d % p}


def _sigma_star_family(u: int, p: int, M: int, N: int, M_T: int):
    # a_n(T) = sum_{d | n, p not dividing d} d^-1 omega(d)^u (1+T)^(e_d)
    exps = _exponent_table(p, M, N)
    Nc = N - binomial_loss(p, M_T)
    if Nc < 1:
        raise PrecisionError(f"N = {N} leaves no digits after the T^{M_T} binomial loss")
    terms = {}
    for d, e in exps.items():
        scal = teichmuller(d, p, Nc) ** u / PadicInt(p, Nc, d)
        terms[d] = dirac(e, M=M_T).truncate(N=Nc) * scal
    out = []
    for n in range(1, M + 1):
        acc = LambdaElement.zero(p, Nc, M_T)
        for d in divisors(n):
            if d % p:
                acc = acc + terms[d]
        out.append(acc)
    return out, Nc


def serre_eisenstein_measure(u: int, p: int = 5, M: int = 50, N: int = 20, M_T: int = 12) -> QExpansion:
    """G*_(s,u) as one q-expansion over Lambda: specializing at (1+p)^s - 1 gives padic_G_star((s, u)).

    Higher coefficients use (1+T)^(e_d); exponents are known to p^N, and
    the binomials below T^M_T cost floor(log_p(M_T - 1)) more digits.  The
    constant term is half the interpolated branch of zeta*.
    """
    check_prime(p)
    u %= p - 1
    if u == 0:
        raise PreconditionError("u = 0 has a pole in the constant term; use normalized_family_u0")
    if u % 2:
        raise PreconditionError("u must be even")
    higher, Nc = _sigma_star_family(u, p, M, N, M_T)
    a0 = interpolated_branch(u, p, Nc, M_T) / 2
    return QExpansion("lambda", (a0, *higher), {"u": u, "family": "eisenstein"}, p, Nc, M_T)


def normalized_family_u0(p: int = 5, M: int = 50, N: int = 20, M_T: int = 12) -> QExpansion:
    """E*_s = (zeta*(1-s)/2)^-1 G*_(s,0) as a Lambda-valued expansion.

    (zeta*/2)^-1 = 2h with h the inverse trivial branch, h = T g(T).
    """
    check_prime(p)
    higher, Nc = _sigma_star_family(0, p, M, N, M_T)
    h2 = inverse_trivial_branch(p, Nc, M_T) * 2
    cs = [LambdaElement.one(p, h2.N, M_T)] + [h2 * a for a in higher]
    Nf = min(c.N for c in cs)
    cs = [c.truncate(N=Nf) for c in cs]
    return QExpansion("lambda", tuple(cs), {"u": 0, "family": "normalized"}, p, Nf, M_T)


@dataclass(frozen=True, eq=False)
class FSAudit:
    """Outcome of rebuilding a_0 of a Lambda-family from its weight specializations."""

    certified: bool
    reconstructed: LambdaElement | None
    witness: dict | None
    weights: tuple
    precision: int | None

    def to_json(self) -> dict:
        return {
            "certified": self.certified,
            "reconstructed": self.reconstructed.to_json() if self.reconstructed is not None else None,
            "witness": self.witness,
            "weights": list(self.weights),
            "precision": self.precision,
        }


def _first_nonzero_level(k: WeightCharacter) -> int:
    m = 0
    while not weight_image_nonzero(k, m):
        m += 1
    return m


def _polynomial_value(f: LambdaElement, z: PadicInt) -> PadicInt:
    """f read as the polynomial sum_{i<M} c_i T^i, evaluated at z (no tail error)."""
    prec = min(f.N, z.N)
    mod = f.p**prec
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * z.residue + c) % mod
    return PadicInt(f.p, prec, acc)


def _node_count(p: int, N: int, M_T: int) -> int:
    """Grid size for interpolating data known only to p^N.

    J nodes spaced by p-1 cost sum_{r<J} (1 + v_p(r)) digits and leave
    J - M_T + 1 of them; pick J maximizing the smaller of the two.
    """
    best, best_prec = M_T, 0
    loss = 0
    for J in range(1, N + M_T):
        if J > 1:
            loss += 1 + int_valuation(J - 1, p)
        prec = min(N - loss, J - M_T + 1)
        if prec > best_prec:
            best, best_prec = J, prec
    if best_prec <= 0:
        raise PrecisionError("family precision too small to interpolate its constant term")
    return best


def fs_constant_term_audit(family: QExpansion, constant_term=None, count: int | None = None) -> FSAudit:
    """Certify that the constant term of a Lambda-family lies in Lambda.

    On the weight grid k_t = u + (p-1)t the constant terms are taken from
    ``constant_term(k)`` (default: the exact zeta*(1-k)/2 for Eisenstein
    families, otherwise the stored a_0 read as a polynomial and specialized).
    Each one is checked against v_p(a_0) + m >= inf_{n>=1} v_p(a_n) of the
    specialized family, with m the least level where k is nonzero in
    X_(m+1) (m = 0 unless u = 0).  Then they are interpolated to an element
    of Lambda, which must match the stored a_0.  Non-integral data yields
    a witness.
    """
    if family.ring != "lambda":
        raise PreconditionError("need a Lambda-valued family")
    p, N, M_T = family.p, family.N, family.M_T
    u = family.weight.get("u", 0) % (p - 1)
    if constant_term is None:
        if family.weight.get("family") == "eisenstein":
            constant_term = lambda k: stabilized_zeta(k, p) / 2
        else:
            a0 = family[0]
            constant_term = lambda k: _polynomial_value(a0, weight_point(k, p, N))
    if count is not None:
        J = count
    elif family.weight.get("family") == "eisenstein":
        J = N + M_T - 1
    else:
        J = _node_count(p, N, M_T)
    start = u if u else p - 1
    ks = tuple(start + (p - 1) * t for t in range(J))
    values = []
    for k in ks:
        c = constant_term(k)
        z = weight_point(k, p, N)
        inf_higher = min(_coeff_valuation(evaluate_at_character(a, z), p) for a in family.coeffs[1:])
        v0 = _coeff_valuation(c, p)
        m = _first_nonzero_level(WeightCharacter(k, u, p))
        if v0 + m < inf_higher:
            return FSAudit(False, None, {"weight": k, "kind": "constant-term bound", "m": m,
                                         "v_a0": v0, "inf_higher": inf_higher}, ks, None)
        values.append(c)
    try:
        rebuilt = interpolate_weights(ks, values, p, N, M_T)
    except NotIntegralError as exc:
        return FSAudit(False, None, {"kind": "not integral", **exc.witness}, ks, None)
    stored = family[0]
    prec = min(rebuilt.N, stored.N)
    ok = rebuilt.truncate(N=prec) == stored.truncate(N=prec)
    witness = None if ok else {"kind": "mismatch with stored constant term"}
    return FSAudit(ok, rebuilt, witness, ks, prec)


def valuation_table_csv(rows, columns) -> str:
    """Render audit rows (dicts) as CSV text with the given column order."""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("inf" if r.get(k) == math.inf else r.get(k)) for k in columns})
    return buf.getvalue()
