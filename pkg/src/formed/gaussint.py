"""Exact number theory over the Gaussian integers.

Bounded-effort integer factoring, Gaussian-integer arithmetic, quadratic
characters and Hilbert symbols at Gaussian primes, and a descent solver
for conics with Gaussian-rational coefficients.  Everything returned is
exact: a witness is verified before it is returned, and any question that
would need factoring past the effort bound comes back as None (or the
UNDECIDED sentinel) instead of a guess.

Two structural facts about the field of Gaussian rationals drive the
decision procedures here.  First, -1 is a square, so binary forms split
exactly when the ratio of their coefficients is a square, and symbols with
a -1 slot are trivial.  Second, the field has no real embeddings and its
single even place is controlled by the odd places through the product
formula, so isotropy of a ternary form is decided by tame symbols at odd
Gaussian primes alone.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .scalars import Scalar, ZERO, ONE

GaussInt = Tuple[int, int]

#: Sentinel for number-theoretic questions that were not decided within the
#: factoring effort bound; never a valid answer, never evidence either way.
UNDECIDED = object()

FACTOR_TRIAL_LIMIT = 100_000
FACTOR_BIT_LIMIT = 128
_factor_cache: dict = {}

_G_ONE: GaussInt = (1, 0)
_G_ZERO: GaussInt = (0, 0)
_G_I: GaussInt = (0, 1)
_G_LAMBDA: GaussInt = (1, 1)
_UNITS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def factor_within_effort(n: int) -> Optional[Dict[int, int]]:
    """Prime factorization of n >= 1, or None when it would cost too much.

    Trial division handles the smooth part; a remaining cofactor is factored
    completely only while it is small enough for rho-style methods to be
    reliably fast.  Callers must treat None as "undecided", never as
    evidence: exactness claims built on factorizations stay honest only if
    an unaffordable factorization aborts the claim.
    """
    if n in _factor_cache:
        return _factor_cache[n]
    from sympy import factorint, isprime

    out: Dict[int, int] = {}
    ok = True
    try:
        for base, exp in factorint(n, limit=FACTOR_TRIAL_LIMIT).items():
            if base < FACTOR_TRIAL_LIMIT * FACTOR_TRIAL_LIMIT or isprime(base):
                out[base] = out.get(base, 0) + exp
            elif base.bit_length() > FACTOR_BIT_LIMIT:
                ok = False
                break
            else:
                for prime, extra in factorint(base).items():
                    out[prime] = out.get(prime, 0) + extra * exp
    except ValueError:
        # The solver's stateful factor cache occasionally rejects its own
        # bookkeeping on partially factored input; treat as unaffordable.
        ok = False
    result = out if ok else None
    if len(_factor_cache) < 200_000:
        _factor_cache[n] = result
    return result


# ---------------------------------------------------------------------------
# Gaussian integer arithmetic
# ---------------------------------------------------------------------------


def g_add(a: GaussInt, b: GaussInt) -> GaussInt:
    return (a[0] + b[0], a[1] + b[1])


def g_sub(a: GaussInt, b: GaussInt) -> GaussInt:
    return (a[0] - b[0], a[1] - b[1])


def g_mul(a: GaussInt, b: GaussInt) -> GaussInt:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def g_conj(a: GaussInt) -> GaussInt:
    return (a[0], -a[1])


def g_norm(a: GaussInt) -> int:
    return a[0] * a[0] + a[1] * a[1]


def _round_div(num: int, den: int) -> int:
    """Nearest integer to num/den for den > 0 (ties rounded down)."""
    return (2 * num + den) // (2 * den)


def g_divmod(a: GaussInt, b: GaussInt) -> Tuple[GaussInt, GaussInt]:
    """Euclidean division: a = q b + r with norm(r) <= norm(b) / 2."""
    num = g_mul(a, g_conj(b))
    den = g_norm(b)
    q = (_round_div(num[0], den), _round_div(num[1], den))
    return q, g_sub(a, g_mul(q, b))


def g_div_exact(a: GaussInt, b: GaussInt) -> Optional[GaussInt]:
    """a / b when b divides a exactly, else None."""
    num = g_mul(a, g_conj(b))
    den = g_norm(b)
    if num[0] % den or num[1] % den:
        return None
    return (num[0] // den, num[1] // den)


def g_gcd(a: GaussInt, b: GaussInt) -> GaussInt:
    while b != _G_ZERO:
        _, r = g_divmod(a, b)
        a, b = b, r
    return a


def g_xgcd(a: GaussInt, b: GaussInt) -> Tuple[GaussInt, GaussInt, GaussInt]:
    """(g, u, v) with u a + v b = g and g a greatest common divisor."""
    r0, r1 = a, b
    u0, u1 = _G_ONE, _G_ZERO
    v0, v1 = _G_ZERO, _G_ONE
    while r1 != _G_ZERO:
        q, r = g_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, g_sub(u0, g_mul(q, u1))
        v0, v1 = v1, g_sub(v0, g_mul(q, v1))
    return r0, u0, v0


def g_canonical_associate(z: GaussInt) -> GaussInt:
    """The associate of z lying in the quarter-plane re > 0, im >= 0."""
    for unit in _UNITS:
        w = g_mul(z, unit)
        if w[0] > 0 and w[1] >= 0:
            return w
    return z  # only for z == 0


def g_sqrt(w: GaussInt) -> Optional[GaussInt]:
    """Exact Gaussian-integer square root of w, or None."""
    a, b = w
    if b == 0:
        if a >= 0:
            r = math.isqrt(a)
            return (r, 0) if r * r == a else None
        r = math.isqrt(-a)
        return (0, r) if r * r == -a else None
    c = math.isqrt(a * a + b * b)
    if c * c != a * a + b * b:
        return None
    half = a + c
    if half % 2:
        return None
    x = math.isqrt(half // 2)
    if x * x != half // 2 or x == 0:
        return None
    if b % (2 * x):
        return None
    y = b // (2 * x)
    if x * x - y * y == a and 2 * x * y == b:
        return (x, y)
    return None


# ---------------------------------------------------------------------------
# Factoring over the Gaussian integers
# ---------------------------------------------------------------------------


def two_squares_prime(p: int) -> GaussInt:
    """A Gaussian prime (a, b) with a^2 + b^2 = p, for a prime p = 1 mod 4."""
    from sympy.ntheory.residue_ntheory import sqrt_mod

    z = int(sqrt_mod(-1, p))
    pi = g_gcd((p, 0), (z, -1))
    assert g_norm(pi) == p
    return g_canonical_associate(pi)


def _g_valuation(z: GaussInt, pi: GaussInt) -> Tuple[int, GaussInt]:
    """(v, u) with z = pi^v u and pi not dividing u."""
    v = 0
    while True:
        q = g_div_exact(z, pi)
        if q is None:
            return v, z
        z = q
        v += 1


def gaussian_factor(z: GaussInt) -> Optional[Tuple[GaussInt, Dict[GaussInt, int]]]:
    """(unit, {prime: exponent}) over canonical Gaussian primes, or None.

    None means the rational factoring of norm(z) exceeded the effort bound.
    """
    if z == _G_ZERO:
        raise ValueError("cannot factor zero")
    rational = factor_within_effort(g_norm(z))
    if rational is None:
        return None
    factors: Dict[GaussInt, int] = {}
    for p, m in rational.items():
        if p == 2:
            pi = _G_LAMBDA
            v, z = _g_valuation(z, pi)
            assert v == m
            factors[pi] = v
        elif p % 4 == 3:
            assert m % 2 == 0
            pi = (p, 0)
            v, z = _g_valuation(z, pi)
            assert v == m // 2
            factors[pi] = v
        else:
            pi = two_squares_prime(p)
            v1, z = _g_valuation(z, pi)
            if v1:
                factors[pi] = v1
            if v1 < m:
                bar = g_canonical_associate(g_conj(pi))
                v2, z = _g_valuation(z, bar)
                assert v1 + v2 == m
                factors[bar] = v2
    assert g_norm(z) == 1
    return z, factors


def g_squarefree_split(
    z: GaussInt,
) -> Optional[Tuple[GaussInt, GaussInt]]:
    """(core, mult) with z = core * mult^2, core squarefree with unit 1 or i.

    Folds the sign into the square part (since -1 = i^2), so the core's unit
    factor is either 1 or i.  None when factoring is unaffordable.
    """
    fac = gaussian_factor(z)
    if fac is None:
        return None
    unit, primes = fac
    core = _G_ONE
    mult = _G_ONE
    for pi, e in primes.items():
        if e % 2:
            core = g_mul(core, pi)
        for _ in range(e // 2):
            mult = g_mul(mult, pi)
    if unit == (-1, 0):
        mult = g_mul(mult, _G_I)
    elif unit == (0, 1):
        core = g_mul(core, _G_I)
    elif unit == (0, -1):
        core = g_mul(core, _G_I)
        mult = g_mul(mult, _G_I)
    return core, mult


# ---------------------------------------------------------------------------
# Residue characters and Hilbert symbols at odd Gaussian primes
# ---------------------------------------------------------------------------


class _PrimeInfo:
    """A classified odd Gaussian prime: split over p = 1 (4) or inert p = 3 (4)."""

    __slots__ = ("pi", "p", "split", "imap")

    def __init__(self, pi: GaussInt):
        self.pi = pi
        n = g_norm(pi)
        if pi[1] == 0 or pi[0] == 0:
            self.split = False
            self.p = abs(pi[0]) or abs(pi[1])
        else:
            self.split = True
            self.p = n
            a, b = pi
            # i = -a/b in the residue field of a split prime
            self.imap = (-a * pow(b, self.p - 2, self.p)) % self.p


def _legendre(t: int, p: int) -> int:
    t %= p
    if t == 0:
        return 0
    return 1 if pow(t, (p - 1) // 2, p) == 1 else -1


def _g_pow_mod_p(base: GaussInt, exp: int, p: int) -> GaussInt:
    result = (1, 0)
    base = (base[0] % p, base[1] % p)
    while exp:
        if exp & 1:
            result = g_mul(result, base)
            result = (result[0] % p, result[1] % p)
        base = g_mul(base, base)
        base = (base[0] % p, base[1] % p)
        exp >>= 1
    return result


def residue_character(w: GaussInt, info: _PrimeInfo) -> int:
    """Quadratic character of w in the residue field of an odd prime (0 on it)."""
    p = info.p
    if info.split:
        return _legendre(w[0] + w[1] * info.imap, p)
    if w[0] % p == 0 and w[1] % p == 0:
        return 0
    r = _g_pow_mod_p(w, (p * p - 1) // 2, p)
    return 1 if r == (1, 0) else -1


def hilbert_symbol_odd(alpha: GaussInt, beta: GaussInt, info: _PrimeInfo) -> int:
    """Hilbert symbol of two nonzero Gaussian integers at an odd prime.

    Tame formula; the residue field has 1 mod 4 elements, so the character
    of -1 is trivial and no sign correction term appears.
    """
    a, u = _g_valuation(alpha, info.pi)
    b, v = _g_valuation(beta, info.pi)
    sym = 1
    if b % 2:
        sym *= residue_character(u, info)
    if a % 2:
        sym *= residue_character(v, info)
    return sym


def _odd_prime_infos(values: Sequence[GaussInt]) -> Optional[List[_PrimeInfo]]:
    """Classified odd Gaussian primes dividing any of the values, or None."""
    seen: Dict[GaussInt, _PrimeInfo] = {}
    for z in values:
        fac = gaussian_factor(z)
        if fac is None:
            return None
        for pi in fac[1]:
            if pi != _G_LAMBDA and pi not in seen:
                seen[pi] = _PrimeInfo(pi)
    return list(seen.values())


# ---------------------------------------------------------------------------
# The even place
# ---------------------------------------------------------------------------


def _build_dyadic_squares() -> frozenset:
    # Units are squares at the even place exactly when they are squares
    # modulo lambda^5 (one Hensel step past twice the ramified valuation
    # of 2).  That ideal contains 8Z^2 and (4, 4) + 8Z^2, so membership is
    # a lookup over coordinates mod 8.
    out = set()
    for x in range(8):
        for y in range(8):
            if (x + y) % 2 == 1:
                s = ((x * x - y * y) % 8, (2 * x * y) % 8)
                out.add(s)
                out.add(((s[0] + 4) % 8, (s[1] + 4) % 8))
    return frozenset(out)


_DYADIC_SQUARES = _build_dyadic_squares()


def dyadic_square(z: GaussInt) -> bool:
    """Whether a nonzero Gaussian integer is a square in the even completion."""
    v, u = _g_valuation(z, _G_LAMBDA)
    if v % 2:
        return False
    return (u[0] % 8, u[1] % 8) in _DYADIC_SQUARES


# ---------------------------------------------------------------------------
# Square roots modulo a squarefree Gaussian modulus
# ---------------------------------------------------------------------------


def _sqrt_mod_rational_prime(t: int, p: int) -> Optional[int]:
    t %= p
    if t == 0:
        return 0
    if p % 4 == 3:
        s = pow(t, (p + 1) // 4, p)
        return s if s * s % p == t else None
    from sympy.ntheory.residue_ntheory import sqrt_mod

    s = sqrt_mod(t, p)
    if s is None:
        return None
    s = int(s)
    return s if s * s % p == t else None


def _sqrt_mod_gaussian_prime(a: GaussInt, pi: GaussInt) -> Optional[GaussInt]:
    """t with t^2 = a modulo the Gaussian prime pi, or None when a is not a square."""
    if pi == _G_LAMBDA:
        return (0, 0) if (a[0] + a[1]) % 2 == 0 else (1, 0)
    info = _PrimeInfo(pi)
    p = info.p
    if info.split:
        t = (a[0] + a[1] * info.imap) % p
        s = _sqrt_mod_rational_prime(t, p)
        return None if s is None else (s, 0)
    # inert prime: residue field is the quadratic extension generated by i
    x, y = a[0] % p, a[1] % p
    if x == 0 and y == 0:
        return (0, 0)
    if y == 0:
        s = _sqrt_mod_rational_prime(x, p)
        if s is not None:
            return (s, 0)
        s = _sqrt_mod_rational_prime(-x % p, p)
        return None if s is None else (0, s)
    n = (x * x + y * y) % p
    s = _sqrt_mod_rational_prime(n, p)
    if s is None:
        return None
    inv2 = pow(2, p - 2, p)
    for root in (s, (-s) % p):
        h = (x + root) * inv2 % p
        u = _sqrt_mod_rational_prime(h, p)
        if u is None or u == 0:
            continue
        v = y * pow(2 * u, p - 2, p) % p
        cand = (u, v)
        sq = g_mul(cand, cand)
        if (sq[0] - a[0]) % p == 0 and (sq[1] - a[1]) % p == 0:
            return cand
    return None


def _crt_pair(
    r1: GaussInt, m1: GaussInt, r2: GaussInt, m2: GaussInt
) -> Tuple[GaussInt, GaussInt]:
    g, u, v = g_xgcd(m1, m2)
    assert g_norm(g) == 1, "moduli must be coprime"
    ginv = g_conj(g)  # inverse of a unit
    e1 = g_mul(g_mul(v, ginv), m2)  # 1 mod m1, 0 mod m2
    e2 = g_mul(g_mul(u, ginv), m1)
    m = g_mul(m1, m2)
    x = g_add(g_mul(r1, e1), g_mul(r2, e2))
    _, x = g_divmod(x, m)
    return x, m


def _sqrt_mod_squarefree(a: GaussInt, primes: Sequence[GaussInt]) -> Optional[GaussInt]:
    t, m = (0, 0), _G_ONE
    for pi in primes:
        comp = _sqrt_mod_gaussian_prime(a, pi)
        if comp is None:
            return None
        t, m = _crt_pair(t, m, comp, pi)
    return t


# ---------------------------------------------------------------------------
# Conics over the Gaussian rationals
# ---------------------------------------------------------------------------


def _verify_conic(x: Scalar, y: Scalar, z: Scalar, A: Scalar, B: Scalar) -> bool:
    if not (x or y or z):
        return False
    return x * x == A * y * y + B * z * z


def _solve_conic_int(A: GaussInt, B: GaussInt, depth: int = 0):
    """Nontrivial (x, y, z) with x^2 = A y^2 + B z^2, as Scalars, or None.

    A and B are squarefree Gaussian integers with unit part 1 or i.  Descent
    on the Euclidean norm: take a square root t of A modulo B, divide t^2 - A
    by B, strip squares, and recurse on the strictly smaller right slot; a
    norm-form identity lifts the small solution back up.  Completeness is
    the caller's concern: None never certifies anything.
    """
    if depth > 80:
        return None
    if A == _G_ONE:
        return (ONE, ONE, ZERO)
    if B == _G_ONE:
        return (ONE, ZERO, ONE)
    if g_norm(A) > g_norm(B):
        sol = _solve_conic_int(B, A, depth + 1)
        if sol is None:
            return None
        x, y, z = sol
        return (x, z, y)
    if g_norm(B) <= 2:
        box = range(-4, 5)
        sA, sB = Scalar(*A), Scalar(*B)
        for y0 in box:
            for y1 in box:
                for z0 in box:
                    for z1 in box:
                        if (y0, y1) == (0, 0) and (z0, z1) == (0, 0):
                            continue
                        ysq = g_mul((y0, y1), (y0, y1))
                        zsq = g_mul((z0, z1), (z0, z1))
                        w = g_add(g_mul(A, ysq), g_mul(B, zsq))
                        root = g_sqrt(w) if w != _G_ZERO else _G_ZERO
                        if root is not None:
                            sol = (Scalar(*root), Scalar(y0, y1), Scalar(z0, z1))
                            if _verify_conic(*sol, sA, sB):
                                return sol
        return None
    fac = gaussian_factor(B)
    if fac is None:
        return None
    primes = [pi for pi, e in fac[1].items() for _ in range(e)]
    t = _sqrt_mod_squarefree(A, primes)
    if t is None:
        return None
    _, t = g_divmod(t, B)
    diff = g_sub(g_mul(t, t), A)
    if diff == _G_ZERO:
        return (Scalar(*t), ONE, ZERO)
    D = g_div_exact(diff, B)
    assert D is not None, "square root modulo B must divide t^2 - A"
    split = g_squarefree_split(D)
    if split is None:
        return None
    core, mult = split
    sub = _solve_conic_int(A, core, depth + 1)
    if sub is None:
        return None
    x1, y1, z1 = sub
    sA, sB, sD = Scalar(*A), Scalar(*B), Scalar(*D)
    sT = Scalar(*t)
    z2 = z1 / Scalar(*mult)
    x = sT * x1 + sA * y1
    y = sT * y1 + x1
    z = sD * z2
    if not _verify_conic(x, y, z, sA, sB):
        return None
    return (x, y, z)


def _to_square_scaled_int(s: Scalar) -> Tuple[GaussInt, int]:
    """(integer form of s * d^2, d): scaling by a square keeps the class."""
    d = math.lcm(s.re.denominator, s.im.denominator)
    return (int(s.re * d * d), int(s.im * d * d)), d


def conic_point(A: Scalar, B: Scalar):
    """Nontrivial Scalars (x, y, z) with x^2 = A y^2 + B z^2, or None.

    A returned triple is exact and verified; None proves nothing by itself.
    """
    if not A or not B:
        return None
    Ai, dA = _to_square_scaled_int(A)
    Bi, dB = _to_square_scaled_int(B)
    sA = g_squarefree_split(Ai)
    sB = g_squarefree_split(Bi)
    if sA is None or sB is None:
        return None
    coreA, multA = sA
    coreB, multB = sB
    sol = _solve_conic_int(coreA, coreB)
    if sol is None:
        return None
    x, y, z = sol
    rA = Scalar(*multA) / Scalar(dA)
    rB = Scalar(*multB) / Scalar(dB)
    out = (x, y / rA, z / rB)
    if not _verify_conic(*out, A, B):
        return None
    return out


def ternary_point(a: Scalar, b: Scalar, c: Scalar):
    """Nontrivial Scalars (x, y, z) with a x^2 + b y^2 + c z^2 = 0, or None."""
    if not (a and b and c):
        return None
    sol = conic_point(-(a * b), -(a * c))
    if sol is None:
        return None
    X, Y, Z = sol
    x, y, z = X / a, Y, Z
    if a * x * x + b * y * y + c * z * z != ZERO or not (x or y or z):
        return None
    return (x, y, z)


def ternary_isotropic(a: Scalar, b: Scalar, c: Scalar) -> Optional[bool]:
    """Exact isotropy decision for diag(a, b, c); None when undecidable.

    The form is isotropic exactly when the symbol of (-ab, -ac) is trivial
    at every odd Gaussian prime: there are no real places, and the even
    place follows from the odd ones by the product formula.
    """
    if not (a and b and c):
        return True
    A, _ = _to_square_scaled_int(-(a * b))
    B, _ = _to_square_scaled_int(-(a * c))
    infos = _odd_prime_infos([A, B])
    if infos is None:
        return None
    for info in infos:
        if hilbert_symbol_odd(A, B, info) == -1:
            return False
    return True


def quaternary_isotropic(values: Sequence[Scalar]) -> Optional[bool]:
    """Exact isotropy decision for a nondegenerate diagonal quaternary form.

    Anisotropic exactly when, at some place, the discriminant is a square
    and the Hasse product of pairwise symbols is -1 (the symbol of (-1, -1)
    is trivial here since -1 is a square).  The even place's Hasse product
    is the product of the odd ones, by the product formula.
    """
    assert len(values) == 4
    ints = []
    for v in values:
        vi, _ = _to_square_scaled_int(v)
        ints.append(vi)
    infos = _odd_prime_infos(ints)
    if infos is None:
        return None
    disc = _G_ONE
    for vi in ints:
        disc = g_mul(disc, vi)
    hasse_even = 1
    for info in infos:
        hasse = 1
        for gi, gj in combinations(ints, 2):
            hasse *= hilbert_symbol_odd(gi, gj, info)
        hasse_even *= hasse
        if hasse == -1:
            val, unit = _g_valuation(disc, info.pi)
            if val % 2 == 0 and residue_character(unit, info) == 1:
                return False
    if hasse_even == -1 and dyadic_square(disc):
        return False
    return True
