"""Counting formulas: partition numbers, irreducible-factor counts of
x^m - 1, simple-module counts, left-cell dimensions, and the parameter
map onto interpolation categories.

All counts are exact big integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InternalCheckError, PreconditionError
from .families import Family, check_lambda

# ---------------------------------------------------------------------------
# field specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """Ground field flavor: algebraically closed char 0, Q, or F_p."""

    kind: str  # "char0-alg-closed" | "rationals" | "prime-field"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("char0-alg-closed", "rationals", "prime-field"):
            raise PreconditionError(f"unknown field kind {self.kind!r}")
        if self.kind == "prime-field":
            if self.p is None or not _is_prime(self.p):
                raise PreconditionError(f"{self.p} is not prime")
        elif self.p is not None:
            raise PreconditionError("characteristic-zero fields take no p")


CHAR0_ALG_CLOSED = FieldSpec("char0-alg-closed")
RATIONALS = FieldSpec("rationals")


def prime_field(p: int) -> FieldSpec:
    return FieldSpec("prime-field", p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# partition numbers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) via the pentagonal-number recurrence."""
    if n < 0:
        raise PreconditionError("partition_count needs a nonnegative argument")
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = 1 if k % 2 == 1 else -1
        if g1 <= n:
            total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


# ---------------------------------------------------------------------------
# N_K(k): monic irreducible factors of x^m(k) - 1
# ---------------------------------------------------------------------------


def m_of_k(field: FieldSpec, k: int) -> int:
    """k itself in characteristic zero, else the p-free part of k."""
    if k <= 0:
        raise PreconditionError("k must be positive")
    if field.kind == "prime-field":
        while k % field.p == 0:
            k //= field.p
    return k


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _euler_phi(n: int) -> int:
    result = n
    d = 2
    while d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
            result -= result // d
        d += 1
    if n > 1:
        result -= result // n
    return result


def _mult_order(a: int, mod: int) -> int:
    if mod == 1:
        return 1
    if math.gcd(a, mod) != 1:
        raise PreconditionError(f"{a} is not invertible mod {mod}")
    x = a % mod
    order = 1
    while x != 1:
        x = x * a % mod
        order += 1
    return order


def n_irreducible_factors(field: FieldSpec, k: int) -> int:
    """Number of monic irreducible factors of x^m(k) - 1 over the field.

    Algebraically closed char 0: m(k) linear factors.  Over Q each
    cyclotomic factor is irreducible, so the count is the number of
    divisors of m(k).  Over F_p (with p coprime to m) the d-th cyclotomic
    polynomial splits into phi(d)/ord_d(p) irreducibles.
    """
    m = m_of_k(field, k)
    if field.kind == "char0-alg-closed":
        return m
    if field.kind == "rationals":
        return len(_divisors(m))
    return sum(_euler_phi(d) // _mult_order(field.p, d) for d in _divisors(m))


def s_value(field: FieldSpec, r: int) -> int:
    """1 + N(r) + N(2r); equals 1 + 3r over algebraically closed char 0."""
    if r <= 0 or r % 2 == 0:
        raise PreconditionError("r must be a positive odd integer")
    return 1 + n_irreducible_factors(field, r) + n_irreducible_factors(field, 2 * r)


# ---------------------------------------------------------------------------
# simple-module counts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleCountQuery:
    family: Family
    n: int
    lambda_ts: int
    field: FieldSpec
    r: int


@dataclass(frozen=True)
class SimpleCount:
    count: int
    exact: bool  # False = upper bound only (non-planar over a general field)


def _tuple_sum_count(parts: list[int], s: int, lam: int) -> int:
    """Number-weighted count: [x^lam] (sum_j parts[j] x^j)^s by convolution."""
    acc = [1] + [0] * lam
    base = parts[: lam + 1] + [0] * max(0, lam + 1 - len(parts))
    for _ in range(s):
        nxt = [0] * (lam + 1)
        for i, a in enumerate(acc):
            if a == 0:
                continue
            for j in range(0, lam + 1 - i):
                if base[j]:
                    nxt[i + j] += a * base[j]
        acc = nxt
    return acc[lam]


def count_simples(q: SimpleCountQuery) -> SimpleCount:
    """Simple modules of apex lambda_ts.

    Planar families: s^lambda over any field.  Non-planar families:
    sum over s-tuples (l_1, ..., l_s) with sum lambda of p(l_1)...p(l_s);
    exact over algebraically closed characteristic zero, an upper bound
    otherwise.
    """
    check_lambda(q.family, q.n, q.lambda_ts)
    s = s_value(q.field, q.r)
    if q.family.planar:
        return SimpleCount(s ** q.lambda_ts, True)
    parts = [partition_count(j) for j in range(q.lambda_ts + 1)]
    total = _tuple_sum_count(parts, s, q.lambda_ts)
    return SimpleCount(total, q.field.kind == "char0-alg-closed")


# ---------------------------------------------------------------------------
# left-cell dimensions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _stirling2(n: int, t: int) -> int:
    if n == 0:
        return 1 if t == 0 else 0
    if t == 0 or t > n:
        return 0
    return t * _stirling2(n - 1, t) + _stirling2(n - 1, t - 1)


def _double_factorial(n: int) -> int:
    # (-1)!! = 1 covers the empty pairing
    if n <= 0:
        return 1
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _narayana(m: int, k: int) -> int:
    if m == 0:
        return 1 if k == 0 else 0
    return math.comb(m, k) * math.comb(m, k - 1) // m


def _planar_partition_dim(n: int, lam: int, y: int) -> int:
    """[x^n] D(x)^(lam+1) * (x / (1 - x D(x)))^lam with D the Narayana
    polynomial generating function D(x) = sum_m sum_k N(m,k) y^k x^m.

    A planar half with lam through blocks is a sequence of through blocks
    separated by gaps; every gap (including the gaps between consecutive
    nodes of one through block) holds an independent noncrossing partition
    of dead blocks, each dead block carrying y = 3K decorations.
    """
    size = n + 1
    d = [0] * size
    d[0] = 1
    for m in range(1, size):
        d[m] = sum(_narayana(m, k) * y**k for k in range(1, m + 1))

    def mul(a: list[int], b: list[int]) -> list[int]:
        c = [0] * size
        for i, ai in enumerate(a):
            if ai:
                for j in range(size - i):
                    if b[j]:
                        c[i + j] += ai * b[j]
        return c

    xd = [0] + d[:-1]
    geom = [0] * size
    geom[0] = 1
    for i in range(1, size):
        geom[i] = sum(xd[j] * geom[i - j] for j in range(1, i + 1))
    term = [0] * size
    term[0] = 1
    for _ in range(lam + 1):
        term = mul(term, d)
    through_factor = [0] + geom[:-1]  # x * geom
    for _ in range(lam):
        term = mul(term, through_factor)
    return term[n]


def dim_left_cell(f: Family, n: int, lambda_ts: int, K: int, check: bool = False) -> int:
    """Closed-form number of left cells (half diagrams) at the given cell.

    Each non-through block carries one of 3K decorations (handle count
    below K, crosscap count at most 2).  With check=True the value is
    verified against explicit half-diagram enumeration; disagreement is
    a hard internal error.
    """
    check_lambda(f, n, lambda_ts)
    if K <= 0:
        raise PreconditionError("K must be positive")
    lam, y = lambda_ts, 3 * K
    if f is Family.PARTITION:
        val = sum(
            _stirling2(n, t) * math.comb(t, lam) * y ** (t - lam)
            for t in range(lam, n + 1)
        )
    elif f is Family.PLANAR_PARTITION:
        val = _planar_partition_dim(n, lam, y)
    elif f is Family.ROOK_BRAUER:
        val = sum(
            math.comb(n, lam) * math.comb(n - lam, 2 * t) * _double_factorial(2 * t - 1)
            * y ** (n - lam - t)
            for t in range(0, (n - lam) // 2 + 1)
        )
    elif f is Family.MOTZKIN:
        val = sum(
            Fraction(lam + 1, lam + t + 1)
            * math.comb(n, lam + 2 * t) * math.comb(lam + 2 * t, t) * y ** (n - lam - t)
            for t in range(0, (n - lam) // 2 + 1)
        )
    elif f is Family.BRAUER:
        val = math.comb(n, lam) * _double_factorial(n - lam - 1) * y ** ((n - lam) // 2)
    elif f is Family.TEMPERLEY_LIEB:
        val = Fraction(2 * lam + 2, n + lam + 2) * math.comb(n, (n - lam) // 2) * y ** ((n - lam) // 2)
    elif f in (Family.ROOK, Family.PLANAR_ROOK):
        val = math.comb(n, lam) * y ** (n - lam)
    else:  # symmetric families: lambda = n forced
        val = 1
    val = int(val) if not isinstance(val, Fraction) else _as_int(val)
    if check:
        from .cells import enumerate_half_diagrams

        enum = len(enumerate_half_diagrams(f, n, lambda_ts, K))
        if enum != val:
            raise InternalCheckError(
                f"dim_left_cell({f.value}, n={n}, lambda={lambda_ts}, K={K}) = {val} "
                f"but enumeration found {enum}"
            )
    return val


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise InternalCheckError(f"expected an integer, got {x}")
    return x.numerator


# ---------------------------------------------------------------------------
# interpolation-category parameters
# ---------------------------------------------------------------------------


def deligne_parameters(alpha0, beta0, gamma0, lam_scale, sqrt_lam):
    """(delta, delta_plus, delta_minus) for geometric evaluation series.

    delta = lam_scale*alpha0 - gamma0 and delta_pm = (gamma0 +- sqrt_lam*beta0)/2,
    where sqrt_lam must square to lam_scale.
    """
    a0, b0, g0 = Fraction(alpha0), Fraction(beta0), Fraction(gamma0)
    lam, sq = Fraction(lam_scale), Fraction(sqrt_lam)
    if sq * sq != lam:
        raise PreconditionError(f"sqrt_lam={sq} does not square to lam_scale={lam}")
    delta = lam * a0 - g0
    delta_plus = Fraction(1, 2) * (g0 + sq * b0)
    delta_minus = Fraction(1, 2) * (g0 - sq * b0)
    return delta, delta_plus, delta_minus
