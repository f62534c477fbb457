"""Formed spaces: exact sesquilinear geometry over the rationals.

A formed space is a finite-dimensional vector space over Q or Q(i)
carrying a reflexive (sigma, epsilon)-sesquilinear form, given here by
its Gram matrix.  Everything in this module is exact: perpendiculars,
radicals, adapted bases (hyperbolic pairs + anisotropic + radical),
rank, constructive Witt extension of partial isometries, and seeded
sampling of isotropic points and of random isometries.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    DegenerateAmbient,
    DimensionMismatch,
    HypothesisViolated,
    InadmissibleParameters,
    IndeterminateIsotropy,
    NoIsotropicVectors,
    NotAnIsometry,
    SingularMatrix,
    WittMatchFailure,
)
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMRankError

from .gaussint import (
    UNDECIDED as _UNDECIDED,
    factor_within_effort as _factor_within_effort,
    quaternary_isotropic as _quaternary_isotropic,
    ternary_isotropic as _gternary_isotropic,
    ternary_point as _gternary_point,
)
from .linalg import (
    Matrix,
    Vector,
    kernel_basis,
    row_space_contains,
    rref,
    solve,
    standard_basis_vector,
    vec,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    zero_vector,
)
from .scalars import (
    IMAG,
    ONE,
    ZERO,
    Base,
    Epsilon,
    FieldSpec,
    Involution,
    Scalar,
    apply_sigma,
    epsilon_scalar,
    format_scalar,
    parse_scalar,
    random_scalar,
)

_HALF = Scalar(Fraction(1, 2))
_TWO = Scalar(2)


def sigma_vector(spec: FieldSpec, v: Vector) -> Vector:
    """Apply the field involution entrywise to a vector."""
    return tuple(apply_sigma(spec, x) for x in v)


def sigma_matrix(spec: FieldSpec, m: Matrix) -> Matrix:
    """Apply the field involution entrywise to a matrix."""
    return m.map(lambda x: apply_sigma(spec, x))


# ---------------------------------------------------------------------------
# Core types
# ---------------------------------------------------------------------------


class FormedSpace:
    """A vector space with a reflexive (sigma, epsilon)-form, via its Gram matrix."""

    __slots__ = ("spec", "n", "gram", "standard", "_adapted")

    def __init__(self, spec: FieldSpec, gram: Matrix, standard=None):
        if gram.nrows != gram.ncols:
            raise DimensionMismatch("Gram matrix must be square")
        self.spec = spec
        self.n = gram.nrows
        for row in gram.rows:
            for entry in row:
                spec.check_scalar(entry)
        expected = sigma_matrix(spec, gram).transpose().scale(epsilon_scalar(spec))
        if expected != gram:
            raise InadmissibleParameters("Gram matrix is not (sigma, epsilon)-reflexive")
        if spec.is_alternating:
            for i in range(self.n):
                if gram[i, i]:
                    raise InadmissibleParameters("alternating form needs a zero diagonal")
        self.gram = gram
        self.standard = standard
        self._adapted = None

    def omega(self, v: Vector, w: Vector) -> Scalar:
        """Evaluate the form: sigma(v)^T . gram . w."""
        if len(v) != self.n or len(w) != self.n:
            raise DimensionMismatch("vector length does not match the ambient dimension")
        jw = self.gram.matvec(w)
        acc = ZERO
        for x, y in zip(v, jw):
            if x and y:
                acc = acc + apply_sigma(self.spec, x) * y
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormedSpace):
            return NotImplemented
        return self.spec == other.spec and self.gram == other.gram

    def __hash__(self):
        return hash((self.spec, self.gram))

    def __repr__(self) -> str:
        return f"FormedSpace(n={self.n}, spec={self.spec!r})"


class ProjectivePoint:
    """A point of projective space: a nonzero vector scaled so its first nonzero coordinate is 1."""

    __slots__ = ("rep",)

    def __init__(self, coords: Iterable):
        v = vec(coords)
        pivot = next((x for x in v if x), None)
        if pivot is None:
            raise InadmissibleParameters("a projective point needs a nonzero representative")
        if not pivot.is_one():
            v = vec_scale(pivot.inverse(), v)
        self.rep = v

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self) -> str:
        return f"ProjectivePoint({[format_scalar(x) for x in self.rep]})"


class Subspace:
    """A linear subspace, stored as the reduced row echelon basis of its span."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable = ()):
        rows = [vec(v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch("spanning vector has the wrong length")
        self.ambient_dim = ambient_dim
        if rows:
            reduced, _ = rref(Matrix(rows))
            self.basis = tuple(r for r in reduced.rows if not vec_is_zero(r))
        else:
            self.basis = ()

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vector) -> bool:
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match the ambient dimension")
        if not self.basis:
            return vec_is_zero(v)
        return row_space_contains(Matrix(self.basis), v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


@dataclass(frozen=True)
class AdaptedBasis:
    """Hyperbolic pairs, an orthogonal anisotropic basis, and a radical basis."""

    hyperbolic_pairs: tuple
    anisotropic: tuple
    radical: tuple

    def ordered_vectors(self) -> tuple:
        """All basis vectors in the order e1, f1, e2, f2, ..., anisotropic, radical."""
        out = []
        for e, f in self.hyperbolic_pairs:
            out.append(e)
            out.append(f)
        out.extend(self.anisotropic)
        out.extend(self.radical)
        return tuple(out)


class Isometry:
    """An invertible matrix preserving the form: sigma(M)^T . J . M = J exactly."""

    __slots__ = ("space", "mat")

    def __init__(self, space: FormedSpace, mat: Matrix):
        if mat.nrows != space.n or mat.ncols != space.n:
            raise DimensionMismatch("isometry matrix has the wrong shape")
        transported = sigma_matrix(space.spec, mat).transpose() @ space.gram @ mat
        if transported != space.gram:
            raise NotAnIsometry("matrix does not preserve the form")
        self.space = space
        self.mat = mat

    @classmethod
    def _trusted(cls, space: FormedSpace, mat: Matrix) -> "Isometry":
        # Internal fast path for products/inverses of already-verified isometries.
        iso = object.__new__(cls)
        iso.space = space
        iso.mat = mat
        return iso

    def apply(self, v: Vector) -> Vector:
        return self.mat.matvec(v)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if self.space != other.space:
            raise DimensionMismatch("isometries live on different spaces")
        return Isometry._trusted(self.space, self.mat @ other.mat)

    def inverse(self) -> "Isometry":
        return Isometry._trusted(self.space, self.mat.inverse())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Isometry):
            return NotImplemented
        return self.space == other.space and self.mat == other.mat

    def __hash__(self):
        return hash((self.space, self.mat))

    def __repr__(self) -> str:
        return f"Isometry(n={self.space.n})"


# ---------------------------------------------------------------------------
# Construction of the reference spaces
# ---------------------------------------------------------------------------


def standard_space(spec: FieldSpec, r: int, d: int = 0) -> FormedSpace:
    """The split-plus-Euclidean model of rank r with d extra orthonormal directions.

    Basis order is (e_r, ..., e_1, h_1, ..., h_d, f_1, ..., f_r); the Gram
    matrix has antidiagonal identity blocks pairing e_i with f_i and a
    middle block (1 + epsilon) * I_d, so each h_j has self-pairing 2.
    """
    if r < 0 or d < 0:
        raise InadmissibleParameters("rank and anisotropic count must be nonnegative")
    if spec.epsilon is Epsilon.MINUS and d != 0:
        raise InadmissibleParameters("alternating spaces are even dimensional (d = 0)")
    if (
        spec.base is Base.GAUSSIAN_RATIONALS
        and spec.sigma is Involution.IDENTITY
        and spec.epsilon is Epsilon.PLUS
        and d > 1
    ):
        raise InadmissibleParameters("symmetric Gaussian spaces admit d in {0, 1} only")
    n = 2 * r + d
    eps = epsilon_scalar(spec)
    rows = [[ZERO] * n for _ in range(n)]
    for a in range(r):
        rows[a][r + d + (r - 1 - a)] = ONE
        rows[r + d + a][r - 1 - a] = eps
    diag = ONE + eps
    for j in range(d):
        rows[r + j][r + j] = diag
    return FormedSpace(spec, Matrix(rows), standard=(r, d))


def _standard_params(space: FormedSpace) -> tuple:
    if space.standard is None:
        raise InadmissibleParameters("operation requires a standard space")
    return space.standard


def standard_e(space: FormedSpace, i: int) -> Vector:
    """The i-th hyperbolic basis vector e_i of a standard space (1-indexed)."""
    r, _ = _standard_params(space)
    if not 1 <= i <= r:
        raise DimensionMismatch(f"e_{i} out of range for rank {r}")
    return standard_basis_vector(space.n, r - i)


def standard_f(space: FormedSpace, i: int) -> Vector:
    """The i-th hyperbolic partner f_i of a standard space (1-indexed)."""
    r, d = _standard_params(space)
    if not 1 <= i <= r:
        raise DimensionMismatch(f"f_{i} out of range for rank {r}")
    return standard_basis_vector(space.n, r + d + i - 1)


def standard_h(space: FormedSpace, j: int) -> Vector:
    """The j-th Euclidean basis vector h_j of a standard space (1-indexed)."""
    r, d = _standard_params(space)
    if not 1 <= j <= d:
        raise DimensionMismatch(f"h_{j} out of range for d = {d}")
    return standard_basis_vector(space.n, r + j - 1)


# ---------------------------------------------------------------------------
# The form, perpendiculars, radicals
# ---------------------------------------------------------------------------


def omega(space: FormedSpace, v: Vector, w: Vector) -> Scalar:
    """Evaluate the form on a pair of vectors (semilinear in the first slot)."""
    return space.omega(vec(v), vec(w))


def _omega_row(space: FormedSpace, a: Vector) -> Vector:
    """The row vector rho with rho . z = omega(a, z) for all z."""
    return space.gram.vecmat(sigma_vector(space.spec, a))


def perp(space: FormedSpace, a: Union[Subspace, Iterable]) -> Subspace:
    """The perpendicular {v : omega(v, x) = 0 for all x in A}."""
    if isinstance(a, Subspace):
        if a.ambient_dim != space.n:
            raise DimensionMismatch("subspace ambient dimension does not match")
        vectors = a.basis
    else:
        vectors = tuple(vec(v) for v in a)
    if not vectors:
        return Subspace.full(space.n)
    # omega(v, a) = 0 is, after applying sigma to the whole equation, the
    # linear condition v . sigma(J a) = 0.
    rows = [sigma_vector(space.spec, space.gram.matvec(a_i)) for a_i in vectors]
    return Subspace(space.n, kernel_basis(Matrix(rows)))


def radical(space: FormedSpace) -> Subspace:
    """The radical: vectors pairing to zero with the whole space."""
    return perp(space, Subspace.full(space.n))


def is_nondegenerate(space: FormedSpace) -> bool:
    """Whether the Gram matrix is invertible (zero radical)."""
    return space.gram.rank() == space.n


def conjugate_space(space: FormedSpace, p: Matrix) -> FormedSpace:
    """The same form written in the basis given by the columns of an invertible p."""
    if p.nrows != space.n or p.ncols != space.n:
        raise DimensionMismatch("change-of-basis matrix has the wrong shape")
    gram = sigma_matrix(space.spec, p).transpose() @ space.gram @ p
    return FormedSpace(space.spec, gram)


# ---------------------------------------------------------------------------
# Exact square roots, norms and ternary forms (isotropy certificates)
# ---------------------------------------------------------------------------


def _fraction_square_root(q: Fraction) -> Optional[Fraction]:
    """The nonnegative rational square root of q, or None if q is not a square."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def _gaussian_square_root(z: Scalar) -> Optional[Scalar]:
    """A square root of z in Q(i), or None when z is not a square there."""
    a, b = z.re, z.im
    if b == 0:
        r = _fraction_square_root(a)
        if r is not None:
            return Scalar(r)
        r = _fraction_square_root(-a)
        if r is not None:
            return Scalar(0, r)
        return None
    c = _fraction_square_root(a * a + b * b)
    if c is None:
        return None
    x = _fraction_square_root((a + c) / 2)
    if x is None:
        return None
    return Scalar(x, b / (2 * x))


def _scalar_square_root(spec: FieldSpec, s: Scalar) -> Optional[Scalar]:
    if spec.base is Base.GAUSSIAN_RATIONALS:
        return _gaussian_square_root(s)
    if s.im:
        return None
    r = _fraction_square_root(s.re)
    return None if r is None else Scalar(r)


def _two_squares_prime(p: int) -> tuple:
    """Integers (a, b) with a^2 + b^2 = p, for a prime p congruent to 1 mod 4.

    Hermite-Serret: run the Euclidean algorithm on (p, t) with t^2 = -1 mod p;
    the first remainder at most sqrt(p) and its successor are the answer.
    """
    from sympy.ntheory import sqrt_mod

    t = int(sqrt_mod(p - 1, p))
    a, b = p, t
    while b * b > p:
        a, b = b, a % b
    return b, a % b


def _sum_of_two_squares(c: Fraction):
    """Rationals (x, y) with x^2 + y^2 = c, None when no pair exists, or
    the _UNDECIDED sentinel when the factoring effort bound is hit.

    c = p/q is a sum of two rational squares exactly when the integer p*q is a
    sum of two integer squares, i.e. when every prime congruent to 3 mod 4
    divides p*q to an even power.  The witness is assembled by multiplying
    Gaussian integers of the right norms.
    """
    if c < 0:
        return None
    if c == 0:
        return (Fraction(0), Fraction(0))
    den = c.denominator
    factors = _factor_within_effort(c.numerator * den)
    if factors is None:
        return _UNDECIDED
    re, im = 1, 0
    for prime, exp in factors.items():
        if prime % 4 == 3:
            if exp % 2:
                return None
            re, im = re * prime ** (exp // 2), im * prime ** (exp // 2)
            continue
        pa, pb = (1, 1) if prime == 2 else _two_squares_prime(prime)
        for _ in range(exp):
            re, im = re * pa - im * pb, re * pb + im * pa
    return (Fraction(abs(re), den), Fraction(abs(im), den))


def _ternary_zero(a: Fraction, b: Fraction, c: Fraction) -> Optional[tuple]:
    """A nontrivial rational zero of a x^2 + b y^2 + c z^2, or None.

    Each coefficient is reduced to its squarefree kernel first, so the
    integer solver only ever sees square-class representatives; its raw
    output on square-laden inputs is not trustworthy.  The answer is
    verified exactly before the square parts are folded back in, so a
    returned triple is always a proof.  None proves nothing.
    """
    if not a or not b or not c:
        hit = [Fraction(0)] * 3
        hit[(a, b, c).index(0)] = Fraction(1)
        return tuple(hit)
    from sympy import symbols
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic

    kernels = []
    scales = []
    for q in (a, b, c):
        part = _squarefree_part(q)
        if part is None:
            return None
        sign, kernel = part
        kernels.append(sign * kernel)
        scales.append(_fraction_square_root(abs(q) / kernel))
    x, y, z = symbols("x y z", integer=True)
    sol = diop_ternary_quadratic(
        kernels[0] * x**2 + kernels[1] * y**2 + kernels[2] * z**2
    )
    if sol is None or any(s is None for s in sol):
        return None
    coords = [Fraction(int(s)) for s in sol]
    if all(not s for s in coords):
        return None
    if sum(k * s * s for k, s in zip(kernels, coords)):
        return None  # reject an unverified answer from the integer solver
    return tuple(s / scale for s, scale in zip(coords, scales))


def _squarefree_part(q: Fraction) -> Optional[tuple]:
    """(sign, squarefree kernel) of a nonzero rational; a square-class invariant.

    None when the factoring effort bound is hit; callers must then treat the
    square class as unknown.
    """
    factors = _factor_within_effort(abs(q.numerator * q.denominator))
    if factors is None:
        return None
    kernel = 1
    for prime, exp in factors.items():
        if exp % 2:
            kernel *= prime
    return (1 if q > 0 else -1), kernel


def _rational_split_search(space, vectors, values) -> Optional[Vector]:
    """Meet-in-the-middle isotropy search over 2+2 splits of a rational diagonal.

    For a split (i, j | k, l), any value represented by <d_i, d_j> that lands
    in the same square class as a value represented by <-d_k, -d_l> splices
    into an exact isotropic vector of the four-coordinate slice.  Finding one
    is a proof; finding none proves nothing.
    """
    m = len(values)
    grid = sorted({Fraction(n, d) for n in range(6) for d in (1, 2, 3)})
    for subset in itertools.combinations(range(m), 4):
        for split in ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)):
            i, j, k, l = (subset[s] for s in split)
            left = {}
            for a in grid:
                for b in grid:
                    t = values[i].re * a * a + values[j].re * b * b
                    if not t:
                        continue
                    key = _squarefree_part(t)
                    if key is not None:
                        left.setdefault(key, (t, a, b))
            for c in grid:
                for e in grid:
                    t2 = -(values[k].re * c * c + values[l].re * e * e)
                    if not t2:
                        continue
                    key = _squarefree_part(t2)
                    hit = None if key is None else left.get(key)
                    if hit is None:
                        continue
                    t1, a, b = hit
                    ratio = _fraction_square_root(t1 / t2)
                    if ratio is None:
                        continue
                    v = zero_vector(space.n)
                    for idx, coef in (
                        (i, Scalar(a)),
                        (j, Scalar(b)),
                        (k, Scalar(ratio * c)),
                        (l, Scalar(ratio * e)),
                    ):
                        if coef:
                            v = vec_add(v, vec_scale(coef, vectors[idx]))
                    return v
    return None


def _padic_unit_part(q: Fraction, p: int) -> tuple:
    """(v_p(q), u) with q = p^v * u and u a p-adic unit, for nonzero q."""
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _legendre_unit(u: Fraction, p: int) -> int:
    """Legendre symbol of a p-adic unit u modulo an odd prime p."""
    residue = pow((u.numerator * u.denominator) % p, (p - 1) // 2, p)
    return 1 if residue == 1 else -1


def _hilbert_symbol(a: Fraction, b: Fraction, p) -> int:
    """The Hilbert symbol (a, b) over Q_p, with p a prime or the string "real".

    Equals 1 when z^2 = a x^2 + b y^2 has a nontrivial local solution and -1
    otherwise, computed by the standard closed formulas.
    """
    if p == "real":
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _padic_unit_part(a, p)
    beta, v = _padic_unit_part(b, p)
    if p == 2:
        m_u = (u.numerator * u.denominator) % 8
        m_v = (v.numerator * v.denominator) % 8
        eps_u = 0 if m_u % 4 == 1 else 1
        eps_v = 0 if m_v % 4 == 1 else 1
        om_u = 0 if m_u in (1, 7) else 1
        om_v = 0 if m_v in (1, 7) else 1
        exponent = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if exponent % 2 else 1
    sym = 1
    if alpha % 2 and beta % 2 and p % 4 == 3:
        sym = -sym
    if beta % 2:
        sym *= _legendre_unit(u, p)
    if alpha % 2:
        sym *= _legendre_unit(v, p)
    return sym


def _is_local_square(a: Fraction, p) -> bool:
    """Whether nonzero a is a square in Q_p (or in R for p = "real")."""
    if p == "real":
        return a > 0
    v, u = _padic_unit_part(a, p)
    if v % 2:
        return False
    if p == 2:
        return (u.numerator * u.denominator) % 8 == 1
    return _legendre_unit(u, p) == 1


def _form_places(values: Sequence[Fraction]) -> Optional[list]:
    """The real place plus every prime at which some entry is a non-unit.

    None when some entry cannot be factored within the effort bound.
    """
    primes = {2}
    for val in values:
        factors = _factor_within_effort(abs(val.numerator * val.denominator))
        if factors is None:
            return None
        primes.update(factors.keys())
    return ["real"] + sorted(primes)


def _rational_isotropy_decision(values: Sequence[Fraction]) -> Optional[bool]:
    """Exact isotropy decision for a nondegenerate diagonal form over Q.

    Local-global: the form is isotropic over Q exactly when it is isotropic
    over R and over every Q_p, and only the primes dividing the entries (and
    2) need checking.  Dimension 2 reduces to a square test, dimensions 3
    and 4 use the Hasse-invariant criteria, and an indefinite form in
    dimension 5 or more is always isotropic.  None means the entries could
    not be factored within the effort bound, so no claim is made.
    """
    n = len(values)
    if n <= 1:
        return False
    if n == 2:
        return _fraction_square_root(-values[0] * values[1]) is not None
    if all(v > 0 for v in values) or all(v < 0 for v in values):
        return False
    if n >= 5:
        return True
    disc = Fraction(1)
    for v in values:
        disc *= v
    minus_one = Fraction(-1)
    places = _form_places(values)
    if places is None:
        return None
    for p in places:
        hasse = 1
        for i in range(n):
            for j in range(i + 1, n):
                hasse *= _hilbert_symbol(values[i], values[j], p)
        if n == 3:
            if _hilbert_symbol(minus_one, -disc, p) != hasse:
                return False
        elif _is_local_square(disc, p) and hasse != _hilbert_symbol(minus_one, minus_one, p):
            return False
    return True


def _four_split_sweep(space, vectors, values) -> Optional[Vector]:
    """Constructive isotropy witness for a rational diagonal of dimension four.

    For each 2+2 split, sweep squarefree candidates t supported on the primes
    of the diagonal and at most one small auxiliary prime.  A candidate
    survives when both ternaries <d_i, d_j, -t> and <d_k, d_l, t> pass the
    exact local decision; the complete ternary solver then closes both sides
    and the two solutions splice into an isotropic vector.
    """
    vals = [v.re for v in values]
    support = {2}
    for val in vals:
        factors = _factor_within_effort(abs(val.numerator * val.denominator))
        if factors is not None:
            support.update(factors.keys())
    support = sorted(support)[:11]
    auxiliary = [1] + [p for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47) if p not in support]
    bases = [1]
    for prime in support:
        bases.extend(base * prime for base in list(bases))
    candidates = []
    for base in bases:
        for extra in auxiliary:
            candidates.append(base * extra)
    candidates = sorted(set(candidates))
    for i, j, k, l in ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)):
        for magnitude in candidates:
            for t in (Fraction(magnitude), Fraction(-magnitude)):
                if _rational_isotropy_decision([vals[i], vals[j], -t]) is not True:
                    continue
                if _rational_isotropy_decision([vals[k], vals[l], t]) is not True:
                    continue
                sol1 = _ternary_zero(vals[i], vals[j], -t)
                sol2 = _ternary_zero(vals[k], vals[l], t)
                if sol1 is None or sol2 is None:
                    continue
                x1, y1, z1 = sol1
                x2, y2, z2 = sol2
                if not z1:
                    return vec_add(
                        vec_scale(Scalar(x1), vectors[i]), vec_scale(Scalar(y1), vectors[j])
                    )
                if not z2:
                    return vec_add(
                        vec_scale(Scalar(x2), vectors[k]), vec_scale(Scalar(y2), vectors[l])
                    )
                v = zero_vector(space.n)
                for idx, coef in (
                    (i, x1 * z2),
                    (j, y1 * z2),
                    (k, x2 * z1),
                    (l, y2 * z1),
                ):
                    if coef:
                        v = vec_add(v, vec_scale(Scalar(coef), vectors[idx]))
                return v
    return None


def _ternary_pattern_zero(
    a: Scalar, b: Scalar, c: Scalar, allow_imaginary: bool
) -> Optional[tuple]:
    """Scalars (x, y, z), not all zero, with a x^2 + b y^2 + c z^2 = 0.

    All three values must be rational.  With allow_imaginary (for forms over
    Q(i)) a coefficient may be pure-imaginary, which flips the sign its
    square contributes, so every sign pattern of the rational ternary is
    tried.  A result is a proof; None proves nothing.
    """
    if allow_imaginary:
        patterns = ((1, 1, 1), (1, -1, 1), (1, 1, -1), (1, -1, -1))
    else:
        patterns = ((1, 1, 1),)
    for s1, s2, s3 in patterns:
        sol = _ternary_zero(s1 * a.re, s2 * b.re, s3 * c.re)
        if sol is None:
            continue
        coeffs = tuple(
            Scalar(value) if sign > 0 else Scalar(value) * IMAG
            for value, sign in zip(sol, (s1, s2, s3))
        )
        return coeffs
    return None


def _gaussian_ternary_zero(a: Fraction, b: Fraction, c: Fraction) -> Optional[tuple]:
    """Scalars (x, y, z), not all zero, with a x^2 + b y^2 + c z^2 = 0 over Q(i).

    Exact local-global decision first, then a descent witness.  A result
    is a proof; None proves nothing.
    """
    sa, sb, sc = Scalar(a), Scalar(b), Scalar(c)
    if _gternary_isotropic(sa, sb, sc) is not True:
        return None
    return _gternary_point(sa, sb, sc)


def _quadratic_root(spec: FieldSpec, a: Scalar, b: Scalar, c: Scalar) -> Optional[Scalar]:
    """An exact field root of a t^2 + b t + c with a != 0, or None."""
    disc = b * b - Scalar(4) * a * c
    s = _scalar_square_root(spec, disc)
    if s is None:
        return None
    return (s - b) / (a * _TWO)


# ---------------------------------------------------------------------------
# Finding isotropic vectors
# ---------------------------------------------------------------------------


def _primitive_rescale(v: Vector) -> Vector:
    """Scale a vector by a positive rational so its parts are coprime integers.

    Keeps spans unchanged and every self-pairing in the same square class,
    while holding entry growth down during elimination.
    """
    denom = 1
    for c in v:
        denom = math.lcm(denom, c.re.denominator, c.im.denominator)
    g = 0
    for c in v:
        g = math.gcd(g, int(c.re * denom), int(c.im * denom))
    if g == 0 or (denom == 1 and g == 1):
        return v
    return vec_scale(Scalar(Fraction(denom, g)), v)


def _reduce_span_basis(vectors: Sequence[Vector]) -> list:
    """Replace a span basis by a short one via integer lattice reduction.

    Real and imaginary parts are interleaved as integer lattice
    coordinates, so reduction minimizes the norms of the Gaussian entries;
    the transform is unimodular over the integers, hence the row span over
    the field is unchanged.  This undoes the entry growth that repeated
    solving, projecting, and intersecting otherwise compound.
    """
    prim = [_primitive_rescale(v) for v in vectors]
    if len(prim) < 2:
        return prim
    rows = [
        [x for c in v for x in (int(c.re), int(c.im))] for v in prim
    ]
    try:
        reduced = DomainMatrix(
            [[ZZ(x) for x in row] for row in rows], (len(rows), len(rows[0])), ZZ
        ).lll()
    except DMRankError:
        return prim
    out = []
    for row in reduced.to_list():
        half = len(row) // 2
        out.append(
            tuple(
                Scalar(Fraction(int(row[2 * i])), Fraction(int(row[2 * i + 1])))
                for i in range(half)
            )
        )
    return out


def _diagonalize(space: FormedSpace):
    """Orthogonalize the standard basis.

    Returns ("iso", v) as soon as a nonzero self-pairing-zero vector shows
    up, else ("diag", (vectors, values)) with all values nonzero.
    """
    n = space.n
    work = [standard_basis_vector(n, i) for i in range(n)]
    for t in range(n):
        for s in range(t, n):
            if not space.omega(work[s], work[s]):
                return "iso", work[s]
        pivot = work[t]
        g = space.omega(pivot, pivot)
        for s in range(t + 1, n):
            coef = space.omega(pivot, work[s]) / g
            if coef:
                work[s] = _primitive_rescale(vec_sub(work[s], vec_scale(coef, pivot)))
    return "diag", (work, [space.omega(w, w) for w in work])


def _diagonal_status(space: FormedSpace, vectors, values):
    """Decide isotropy of a nonzero-diagonal form: found / none / unknown."""
    spec = space.spec
    m = len(values)
    hermitian = spec.is_hermitian
    rational_sym = spec.sigma is Involution.IDENTITY and not spec.is_gaussian
    gaussian_sym = spec.sigma is Involution.IDENTITY and spec.is_gaussian

    if hermitian or rational_sym:
        signs = {values[i].re > 0 for i in range(m)}
        if len(signs) == 1:
            return "none", None  # definite: self-pairings cannot cancel

    undecided_pair = False
    for i in range(m):
        for j in range(i + 1, m):
            if rational_sym:
                root = _fraction_square_root(-(values[j].re / values[i].re))
                if root is not None:
                    return "found", vec_add(vec_scale(Scalar(root), vectors[i]), vectors[j])
            elif gaussian_sym:
                root_s = _gaussian_square_root(-(values[j] / values[i]))
                if root_s is not None:
                    return "found", vec_add(vec_scale(root_s, vectors[i]), vectors[j])
            else:
                pair = _sum_of_two_squares(-(values[j].re / values[i].re))
                if pair is _UNDECIDED:
                    undecided_pair = True
                elif pair is not None:
                    return "found", vec_add(vec_scale(Scalar(*pair), vectors[i]), vectors[j])
    if m <= 2:
        # The pair tests above are complete in dimension <= 2 provided every
        # certificate question was actually decided.
        return ("unknown" if undecided_pair else "none"), None

    if hermitian:
        # Mixed signs in three or more Hermitian slots: the associated
        # rational quadratic form in twice the dimension is indefinite of
        # dimension >= 5, hence isotropic; a witness still has to be built.
        return "isotropic", None

    if gaussian_sym:
        # Complete local-global treatment over the Gaussian rationals: the
        # ternary decision is exact, and a positive decision comes with a
        # descent witness whenever factoring stays affordable.
        undecided = False
        for i, j, k in itertools.combinations(range(m), 3):
            dec = _gternary_isotropic(values[i], values[j], values[k])
            if dec is True:
                coeffs = _gternary_point(values[i], values[j], values[k])
                if coeffs is not None:
                    v = zero_vector(space.n)
                    for coef, u in zip(coeffs, (vectors[i], vectors[j], vectors[k])):
                        v = vec_add(v, vec_scale(coef, u))
                    return "found", v
                return "isotropic", None  # certified; witness left to the searches
            if dec is None:
                undecided = True
        if m == 3:
            return ("unknown" if undecided else "none"), None
        if m == 4:
            dec4 = _quaternary_isotropic(list(values))
            if dec4 is False:
                return "none", None
            if dec4 is True:
                return "isotropic", None
            return "unknown", None
        # Five or more variables over a field with no real embeddings are
        # always isotropic; the witness still has to be built.
        return "isotropic", None

    rational_values = all(not v.im for v in values)
    if rational_sym and rational_values:
        for i, j, k in itertools.combinations(range(m), 3):
            coeffs = _ternary_pattern_zero(values[i], values[j], values[k], False)
            if coeffs is not None:
                v = zero_vector(space.n)
                for coef, u in zip(coeffs, (vectors[i], vectors[j], vectors[k])):
                    v = vec_add(v, vec_scale(coef, u))
                return "found", v
        # The local-global decision is the sole authority for a negative
        # answer; the constructive solvers above only ever certify yes.
        decision = _rational_isotropy_decision([v.re for v in values])
        if decision is True:
            return "isotropic", None  # witness still to be constructed
        if decision is False:
            return "none", None
        return "unknown", None
    return "unknown", None


def _sweep_subsets(space, slots, slot_values) -> Optional[Vector]:
    """Constructive sweeps over every isotropic quadruple of a rational system.

    Quadruples are deduplicated by value multiset and screened with the
    exact local-global decision, so the expensive sweep only runs where a
    witness is known to exist.
    """
    m = len(slot_values)
    seen = set()
    for subset in itertools.combinations(range(m), 4):
        vals = tuple(sorted(slot_values[s].re for s in subset))
        if vals in seen:
            continue
        seen.add(vals)
        if _rational_isotropy_decision(list(vals)) is not True:
            continue
        hit = _four_split_sweep(
            space, [slots[s] for s in subset], [slot_values[s] for s in subset]
        )
        if hit is not None:
            return hit
    return None


def _rational_closer_search(
    space, slots, slot_values, rng, attempts, allow_imaginary
) -> Optional[Vector]:
    """Seeded two-pivot hunt over a rational diagonal slot system.

    Each attempt samples rational coefficients on all but two slots and
    closes the remaining slice with an exact ternary solve.  When
    allow_imaginary is set (trivial involution over the Gaussian field) a
    sampled slot may be twisted by i, flipping the sign its square
    contributes.  Finding a vector is a proof; exhausting the attempts
    proves nothing.
    """
    m = len(slots)
    if m < 3:
        return None
    vals = [v.re for v in slot_values]
    pairs = list(itertools.combinations(range(m), 2))
    for attempt in range(attempts):
        i, j = pairs[attempt % len(pairs)]
        w = zero_vector(space.n)
        residual = Fraction(0)
        for k in range(m):
            if k in (i, j):
                continue
            r = Fraction(rng.randint(-8, 8), rng.randint(1, 5))
            if not r:
                continue
            if allow_imaginary and rng.random() < 0.5:
                w = vec_add(w, vec_scale(Scalar(0, r), slots[k]))
                residual -= vals[k] * r * r
            else:
                w = vec_add(w, vec_scale(Scalar(r), slots[k]))
                residual += vals[k] * r * r
        if not residual:
            if not vec_is_zero(w):
                return w
            continue
        if allow_imaginary:
            coeffs = _gaussian_ternary_zero(vals[i], vals[j], residual)
        else:
            coeffs = _ternary_pattern_zero(
                Scalar(vals[i]), Scalar(vals[j]), Scalar(residual), False
            )
        if coeffs is None:
            continue
        x, y, z = coeffs
        v = vec_add(
            vec_add(vec_scale(x, slots[i]), vec_scale(y, slots[j])),
            vec_scale(z, w),
        )
        if not vec_is_zero(v):
            return v
    return None


def _gaussian_pivot_search(space, vectors, values, rng, attempts) -> Optional[Vector]:
    """Seeded single-pivot hunt over a Gaussian diagonal with complex entries.

    Each attempt samples every coordinate but one and solves the last,
    which needs a residual ratio that is a Gaussian square.  Finding a
    vector is a proof; exhausting the attempts proves nothing.
    """
    spec = space.spec
    m = len(vectors)
    if m == 0:
        return None
    for attempt in range(attempts):
        pivot = attempt % m
        w = zero_vector(space.n)
        for i in range(m):
            if i == pivot:
                continue
            c = random_scalar(spec, rng, bound=6)
            if c:
                w = vec_add(w, vec_scale(c, vectors[i]))
        if vec_is_zero(w):
            continue
        target = -(space.omega(w, w) / values[pivot])
        a = _scalar_square_root(spec, target)
        if a is not None:
            return vec_add(w, vec_scale(a, vectors[pivot]))
    return None


def _gaussian_slice_search(space, vectors, values, rng, attempts) -> Optional[Vector]:
    """Seeded two-pivot hunt over a Gaussian diagonal with complex entries.

    Each attempt samples small Gaussian coefficients off a pivot pair, so
    the pair plus the sampled residual form a ternary slice that the exact
    decision procedure can close with a descent witness.  Finding a vector
    is a proof; exhausting the attempts proves nothing.
    """
    spec = space.spec
    m = len(vectors)
    if m < 3:
        return None
    pairs = list(itertools.combinations(range(m), 2))
    for attempt in range(attempts):
        i, j = pairs[attempt % len(pairs)]
        w = zero_vector(space.n)
        for k in range(m):
            if k in (i, j):
                continue
            c = random_scalar(spec, rng, bound=4)
            if c:
                w = vec_add(w, vec_scale(c, vectors[k]))
        residual = space.omega(w, w)
        if not residual:
            if not vec_is_zero(w):
                return w
            continue
        if _gternary_isotropic(values[i], values[j], residual) is not True:
            continue
        coeffs = _gternary_point(values[i], values[j], residual)
        if coeffs is None:
            continue
        x, y, z = coeffs
        v = vec_add(
            vec_add(vec_scale(x, vectors[i]), vec_scale(y, vectors[j])),
            vec_scale(z, w),
        )
        if not vec_is_zero(v):
            return v
    return None


def _hermitian_norm_search(space, vectors, values, rng, attempts) -> Optional[Vector]:
    """Seeded norm-equation hunt over a Hermitian diagonal.

    A Gaussian coefficient contributes the nonnegative rational norm of
    itself, so a zero on a slot triple (a, b, c) needs nonnegative u, v
    with u a + v b = -c, each a sum of two rational squares.  Solutions
    form a line in (u, v); it is sampled inside the window cut out by the
    two sign constraints.  Finding a vector is a proof; exhausting the
    attempts proves nothing.
    """
    m = len(vectors)
    if m < 3:
        return None
    triples = list(itertools.permutations(range(m), 3))
    empty: set = set()
    for attempt in range(attempts):
        i, j, k = triples[attempt % len(triples)]
        if (i, j, k) in empty:
            continue
        a, b, c = values[i].re, values[j].re, values[k].re
        # The line u = b t, v = -c/b - a t solves u a + v b = -c; each sign
        # constraint bounds t on one side, depending on the signs of a, b.
        lo = Fraction(0) if b > 0 else None
        hi = Fraction(0) if b < 0 else None
        cut = -c / (a * b)
        if a > 0:
            hi = cut if hi is None else min(hi, cut)
        else:
            lo = cut if lo is None else max(lo, cut)
        if lo is not None and hi is not None and lo > hi:
            empty.add((i, j, k))
            continue
        if lo is not None and hi is not None:
            t = lo + (hi - lo) * Fraction(rng.randint(0, 24), 24)
        elif lo is not None:
            t = lo + Fraction(rng.randint(0, 48), rng.randint(1, 6))
        else:
            t = hi - Fraction(rng.randint(0, 48), rng.randint(1, 6))
        u, v = b * t, -c / b - a * t
        su = _sum_of_two_squares(u)
        if not isinstance(su, tuple):
            continue
        sv = _sum_of_two_squares(v)
        if not isinstance(sv, tuple):
            continue
        witness = vec_add(
            vec_add(
                vec_scale(Scalar(su[0], su[1]), vectors[i]),
                vec_scale(Scalar(sv[0], sv[1]), vectors[j]),
            ),
            vectors[k],
        )
        if not space.omega(witness, witness):
            return witness
    return None


def find_isotropic_vector(
    space: FormedSpace, rng: Optional[random.Random] = None, attempts: int = 400
) -> Optional[Vector]:
    """A nonzero vector with omega(v, v) = 0, or None when provably none exists.

    Raises IndeterminateIsotropy when neither a vector nor a proof of
    anisotropy is found; that cannot happen on the standard spaces and
    their restrictions exercised by the test surface.
    """
    n = space.n
    if n == 0:
        return None
    spec = space.spec
    if spec.is_alternating:
        return standard_basis_vector(n, 0)
    g = space.gram
    for i in range(n):
        if not g[i, i]:
            return standard_basis_vector(n, i)
    rad = radical(space)
    if rad.dim > 0:
        return rad.basis[0]
    if spec.sigma is Involution.IDENTITY:
        for i in range(n):
            for j in range(i + 1, n):
                root = _quadratic_root(spec, g[j, j], g[i, j] + g[j, i], g[i, i])
                if root is not None:
                    coords = [ZERO] * n
                    coords[i] = ONE
                    coords[j] = root
                    return tuple(coords)
    kind, payload = _diagonalize(space)
    if kind == "iso":
        return payload
    vectors, values = payload
    status, found = _diagonal_status(space, vectors, values)
    if status == "found":
        return found
    if status == "none":
        return None
    local_rng = rng if rng is not None else random.Random(0x5F0D)
    if all(not v.im for v in values):
        # Present the form as a rational diagonal slot system.  A Hermitian
        # diagonal entry d contributes the rational pair (d, d) on the slots
        # (v, i v): a rational combination x v + y (i v) self-pairs to
        # (x^2 + y^2) d, and the cross pairings of the two slots cancel.
        if spec.is_hermitian:
            hit = _hermitian_norm_search(space, vectors, values, local_rng, attempts)
            if hit is not None:
                return hit
            slots, slot_values = [], []
            for u, d in zip(vectors, values):
                slots.extend((u, vec_scale(IMAG, u)))
                slot_values.extend((d, d))
            allow_imaginary = False
        else:
            slots, slot_values = list(vectors), list(values)
            allow_imaginary = spec.is_gaussian
        if len(slots) >= 4:
            hit = _rational_split_search(space, slots, slot_values)
            if hit is not None:
                return hit
        if status == "isotropic":
            hit = _sweep_subsets(space, slots, slot_values)
            if hit is not None:
                return hit
        hit = _rational_closer_search(
            space, slots, slot_values, local_rng, attempts, allow_imaginary
        )
        if hit is not None:
            return hit
    else:
        hit = _gaussian_slice_search(space, vectors, values, local_rng, attempts)
        if hit is not None:
            return hit
        hit = _gaussian_pivot_search(space, vectors, values, local_rng, attempts)
        if hit is not None:
            return hit
    raise IndeterminateIsotropy(
        "could not find an isotropic vector or certify that none exists"
        f" (diagonal values: {[str(v) for v in values]})"
    )


# ---------------------------------------------------------------------------
# Adapted bases and rank
# ---------------------------------------------------------------------------


def _lift(coords: Vector, vectors: Sequence[Vector]) -> Vector:
    out = zero_vector(len(vectors[0]))
    for c, v in zip(coords, vectors):
        if c:
            out = vec_add(out, vec_scale(c, v))
    return out


def _restricted_gram(space: FormedSpace, vectors: Sequence[Vector]) -> Matrix:
    return Matrix([[space.omega(a, b) for b in vectors] for a in vectors])


def _restricted_space(space: FormedSpace, vectors: Sequence[Vector]) -> FormedSpace:
    return FormedSpace(space.spec, _restricted_gram(space, vectors))


def _extend_to_basis(vectors: Sequence[Vector], dim: int) -> list:
    """Standard basis vectors completing the given independent set to a basis."""
    current = list(vectors)
    current_rank = Matrix(current).rank() if current else 0
    added = []
    for i in range(dim):
        if current_rank == dim:
            break
        candidate = standard_basis_vector(dim, i)
        new_rank = Matrix(current + [candidate]).rank()
        if new_rank > current_rank:
            current.append(candidate)
            added.append(candidate)
            current_rank = new_rank
    return added


def _orthogonalize(space: FormedSpace, vectors: Sequence[Vector]) -> list:
    """Sigma-aware Gram-Schmidt on a span with no isotropic vectors."""
    out = []
    for w in vectors:
        u = w
        for p in out:
            coef = space.omega(p, u) / space.omega(p, p)
            if coef:
                u = vec_sub(u, vec_scale(coef, p))
        u = _primitive_rescale(u)
        assert space.omega(u, u), "anisotropic span produced an isotropic vector"
        out.append(u)
    return out


def adapted_basis(space: FormedSpace) -> AdaptedBasis:
    """Split the space into hyperbolic pairs, an anisotropic part, and the radical.

    Hyperbolic pairs are peeled off one at a time: an exact isotropic
    vector e, a partner u with omega(e, u) = 1, and the correction
    u - (omega(u, u)/2) e making the partner isotropic as well.
    """
    if space._adapted is not None:
        return space._adapted
    eps = epsilon_scalar(space.spec)
    rad = radical(space)
    current = _extend_to_basis(list(rad.basis), space.n)
    pairs = []
    anisotropic: list = []
    while current:
        found = find_isotropic_vector(_restricted_space(space, current))
        if found is None:
            anisotropic = _orthogonalize(space, current)
            break
        e = _primitive_rescale(_lift(found, current))
        partner = next(b for b in current if space.omega(e, b))
        partner = vec_scale(space.omega(e, partner).inverse(), partner)
        partner = vec_sub(partner, vec_scale(space.omega(partner, partner) * _HALF, e))
        pairs.append((e, partner))
        projected = []
        for w in current:
            w1 = vec_sub(w, vec_scale(eps * space.omega(partner, w), e))
            w1 = vec_sub(w1, vec_scale(space.omega(e, w), partner))
            projected.append(w1)
        reduced, _ = rref(Matrix(projected))
        current = _reduce_span_basis(
            [row for row in reduced.rows if not vec_is_zero(row)]
        )
    result = AdaptedBasis(tuple(pairs), tuple(anisotropic), tuple(rad.basis))
    space._adapted = result
    return result


def rank(space: FormedSpace) -> int:
    """The number of hyperbolic pairs in an adapted basis."""
    return len(adapted_basis(space).hyperbolic_pairs)


# ---------------------------------------------------------------------------
# Witt extension
# ---------------------------------------------------------------------------


def _hyperbolic_partners(space: FormedSpace, isotropics, rest) -> list:
    """Isotropic partners z_j with omega(n_i, z_j) = delta_ij, orthogonal to `rest`."""
    partners: list = []
    for j, n_j in enumerate(isotropics):
        rows = []
        rhs = []
        for i, n_i in enumerate(isotropics):
            rows.append(_omega_row(space, n_i))
            rhs.append(ONE if i == j else ZERO)
        for b in rest:
            rows.append(_omega_row(space, b))
            rhs.append(ZERO)
        for z in partners:
            rows.append(_omega_row(space, z))
            rhs.append(ZERO)
        z = solve(Matrix(rows), tuple(rhs))
        if z is None:
            raise WittMatchFailure("no hyperbolic partner exists in the ambient space")
        z = vec_sub(z, vec_scale(space.omega(z, z) * _HALF, n_j))
        partners.append(z)
    return partners


def _perp_within(space: FormedSpace, constraints, basis_vectors) -> list:
    """A basis of {w in span(basis_vectors) : omega(c, w) = 0 for all constraints c}."""
    rows = [[space.omega(c, b) for b in basis_vectors] for c in constraints]
    return _reduce_span_basis(
        [_lift(x, basis_vectors) for x in kernel_basis(Matrix(rows))]
    )


def _adapted_of_span(space: FormedSpace, vectors) -> AdaptedBasis:
    """Adapted basis of a spanned subspace, lifted back to ambient coordinates."""
    sub = _restricted_space(space, vectors)
    ab = adapted_basis(sub)
    return AdaptedBasis(
        tuple((_lift(e, vectors), _lift(f, vectors)) for e, f in ab.hyperbolic_pairs),
        tuple(_primitive_rescale(_lift(a, vectors)) for a in ab.anisotropic),
        tuple(_primitive_rescale(_lift(r, vectors)) for r in ab.radical),
    )


def _represent_value(space: FormedSpace, aniso_vectors, c: Scalar) -> Optional[Vector]:
    """A vector of self-pairing c inside an anisotropic orthogonal span."""
    spec = space.spec
    values = [space.omega(u, u) for u in aniso_vectors]
    m = len(values)
    rational_sym = spec.sigma is Involution.IDENTITY and not spec.is_gaussian
    for i in range(m):
        target = c / values[i]
        if spec.is_hermitian:
            pair = _sum_of_two_squares(target.re)
            a = Scalar(*pair) if isinstance(pair, tuple) else None
        else:
            a = _scalar_square_root(spec, target)
        if a is not None and a:
            return vec_scale(a, aniso_vectors[i])
    box = [Scalar(p) for p in range(-8, 9)]
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            if rational_sym:
                sol = _ternary_zero(values[i].re, values[j].re, -c.re)
                if sol is not None and sol[2] != 0:
                    x, y, z = sol
                    return vec_add(
                        vec_scale(Scalar(x / z), aniso_vectors[i]),
                        vec_scale(Scalar(y / z), aniso_vectors[j]),
                    )
            elif spec.is_hermitian:
                for p in box:
                    for q in box:
                        y_coef = Scalar(p.re, q.re)
                        rem = c - values[j] * Scalar(y_coef.re**2 + y_coef.im**2)
                        pair = _sum_of_two_squares((rem / values[i]).re)
                        if isinstance(pair, tuple):
                            x_coef = Scalar(*pair)
                            if x_coef or y_coef:
                                return vec_add(
                                    vec_scale(x_coef, aniso_vectors[i]),
                                    vec_scale(y_coef, aniso_vectors[j]),
                                )
            else:
                sol = _gternary_point(values[i], values[j], -c)
                if sol is not None and sol[2]:
                    x, y, z = sol
                    return vec_add(
                        vec_scale(x / z, aniso_vectors[i]),
                        vec_scale(y / z, aniso_vectors[j]),
                    )
                for p in box:
                    for q in box:
                        y_coef = Scalar(p.re, q.re)
                        rem = c - values[j] * y_coef * y_coef
                        x_coef = _scalar_square_root(spec, rem / values[i])
                        if x_coef is not None and (x_coef or y_coef):
                            return vec_add(
                                vec_scale(x_coef, aniso_vectors[i]),
                                vec_scale(y_coef, aniso_vectors[j]),
                            )
    if m >= 3:
        rng = random.Random(0x7A11)
        for attempt in range(500):
            pivot = attempt % m
            w = zero_vector(space.n)
            for k in range(m):
                if k == pivot:
                    continue
                coef = random_scalar(spec, rng, bound=5)
                if coef:
                    w = vec_add(w, vec_scale(coef, aniso_vectors[k]))
            rem = (c - space.omega(w, w)) / values[pivot]
            if spec.is_hermitian:
                pair = _sum_of_two_squares(rem.re)
                a = Scalar(*pair) if isinstance(pair, tuple) else None
            else:
                a = _scalar_square_root(spec, rem)
            if a is None:
                continue
            v = vec_add(w, vec_scale(a, aniso_vectors[pivot]))
            if space.omega(v, v) == c and not vec_is_zero(v):
                return v
    return None


def _match_complements(space: FormedSpace, dom: list, img: list):
    """Pair up bases of two isometric non-degenerate spans, anisotropic first."""
    if len(dom) != len(img):
        raise WittMatchFailure("complement dimensions disagree")
    if not dom:
        return [], []
    dom = _reduce_span_basis(dom)
    img = _reduce_span_basis(img)
    dom_ab = _adapted_of_span(space, dom)
    img_ab = _adapted_of_span(space, img)
    if dom_ab.radical or img_ab.radical:
        raise WittMatchFailure("complement of a non-degenerate subspace degenerated")
    if dom_ab.anisotropic:
        va = dom_ab.anisotropic[0]
        c = space.omega(va, va)
        if img_ab.hyperbolic_pairs:
            e, f = img_ab.hyperbolic_pairs[0]
            vb = vec_add(e, vec_scale(c * _HALF, f))
        else:
            vb = _represent_value(space, list(img_ab.anisotropic), c)
            if vb is None:
                raise WittMatchFailure(
                    "could not represent an anisotropic value on the image side"
                )
        rest_dom = _perp_within(space, [va], dom)
        rest_img = _perp_within(space, [vb], img)
        tail_dom, tail_img = _match_complements(space, rest_dom, rest_img)
        return [va] + tail_dom, [vb] + tail_img
    if img_ab.anisotropic or len(dom_ab.hyperbolic_pairs) != len(img_ab.hyperbolic_pairs):
        raise WittMatchFailure("hyperbolic ranks of the complements disagree")
    out_dom: list = []
    out_img: list = []
    for (e1, f1), (e2, f2) in zip(dom_ab.hyperbolic_pairs, img_ab.hyperbolic_pairs):
        out_dom.extend((e1, f1))
        out_img.extend((e2, f2))
    return out_dom, out_img


def witt_extend(space: FormedSpace, sub: Subspace, images: Sequence) -> Isometry:
    """Extend a form-preserving injection on a subspace to a global isometry.

    `images` lists the image of each canonical basis vector of `sub`, in
    order.  The construction splits off the radical of the restricted
    form, adjoins exact hyperbolic partners for it on both sides, and
    matches the perpendicular complements adapted-block by adapted-block.
    """
    if not is_nondegenerate(space):
        raise DegenerateAmbient("Witt extension needs a non-degenerate ambient space")
    if sub.ambient_dim != space.n:
        raise DimensionMismatch("subspace ambient dimension does not match")
    image_vectors = [vec(u) for u in images]
    if len(image_vectors) != sub.dim:
        raise DimensionMismatch("need exactly one image per basis vector")
    for u in image_vectors:
        if len(u) != space.n:
            raise DimensionMismatch("image vector has the wrong length")
    basis = list(sub.basis)
    if basis and Matrix(image_vectors).rank() != sub.dim:
        raise NotAnIsometry("image vectors are linearly dependent")
    for i in range(sub.dim):
        for j in range(sub.dim):
            if space.omega(basis[i], basis[j]) != space.omega(
                image_vectors[i], image_vectors[j]
            ):
                raise NotAnIsometry("the map does not preserve the form on the subspace")

    if basis:
        rad_coords = list(kernel_basis(_restricted_gram(space, basis)))
    else:
        rad_coords = []
    comp_coords = _extend_to_basis(rad_coords, sub.dim)
    n_dom = [_lift(x, basis) for x in rad_coords]
    n_img = [_lift(x, image_vectors) for x in rad_coords]
    b_dom = [_lift(x, basis) for x in comp_coords]
    b_img = [_lift(x, image_vectors) for x in comp_coords]

    z_dom = _hyperbolic_partners(space, n_dom, b_dom)
    z_img = _hyperbolic_partners(space, n_img, b_img)
    dom_ext = n_dom + b_dom + z_dom
    img_ext = n_img + b_img + z_img

    perp_dom = perp(space, Subspace(space.n, dom_ext)) if dom_ext else Subspace.full(space.n)
    perp_img = perp(space, Subspace(space.n, img_ext)) if img_ext else Subspace.full(space.n)
    match_dom, match_img = _match_complements(
        space, list(perp_dom.basis), list(perp_img.basis)
    )

    dom_all = dom_ext + match_dom
    img_all = img_ext + match_img
    try:
        dom_mat = Matrix(tuple(zip(*dom_all)))
        img_mat = Matrix(tuple(zip(*img_all)))
        mat = img_mat @ dom_mat.inverse()
        extension = Isometry(space, mat)
    except (SingularMatrix, NotAnIsometry) as exc:
        raise WittMatchFailure(f"assembled extension is not an isometry: {exc}") from exc
    for b, u in zip(basis, image_vectors):
        if mat.matvec(b) != u:
            raise WittMatchFailure("assembled extension does not restrict to the map")
    return extension


# ---------------------------------------------------------------------------
# Random sampling
# ---------------------------------------------------------------------------


def random_isotropic_point(space: FormedSpace, rng: random.Random) -> ProjectivePoint:
    """A random exact isotropic point, solving one hyperbolic coefficient."""
    ab = adapted_basis(space)
    if not ab.hyperbolic_pairs:
        raise NoIsotropicVectors("the space has no hyperbolic pairs")
    spec = space.spec
    if spec.is_alternating:
        while True:
            v = tuple(random_scalar(spec, rng, bound=9) for _ in range(space.n))
            if not vec_is_zero(v):
                return ProjectivePoint(v)
    e1, f1 = ab.hyperbolic_pairs[0]
    others = [e for e, _ in ab.hyperbolic_pairs[1:]]
    others += [f for _, f in ab.hyperbolic_pairs[1:]]
    others += list(ab.anisotropic) + list(ab.radical)
    coeff = random_scalar(spec, rng, bound=9, nonzero=True)
    y = vec_scale(coeff, e1)
    for b in others:
        c = random_scalar(spec, rng, bound=9)
        if c:
            y = vec_add(y, vec_scale(c, b))
    pairing = space.omega(y, f1)  # equals the e1 coefficient, hence nonzero
    a = -(space.omega(y, y) / (pairing * _TWO))
    v = vec_add(y, vec_scale(a, f1))
    return ProjectivePoint(v)


def _random_nonzero_vector(space: FormedSpace, rng: random.Random, bound: int = 5) -> Vector:
    while True:
        v = tuple(random_scalar(space.spec, rng, bound=bound) for _ in range(space.n))
        if not vec_is_zero(v):
            return v


def _elementary_isometry(space: FormedSpace, v: Vector, coef: Scalar) -> Matrix:
    """The matrix of x -> x + coef * omega(v, x) * v."""
    row = _omega_row(space, v)
    rows = []
    for i in range(space.n):
        scale = coef * v[i]
        base = list(standard_basis_vector(space.n, i))
        if scale:
            for j in range(space.n):
                if row[j]:
                    base[j] = base[j] + scale * row[j]
        rows.append(tuple(base))
    return Matrix(rows)


def random_isometry(space: FormedSpace, rng: random.Random, length: int = 4) -> Isometry:
    """A product of `length` random transvections (alternating) or reflections."""
    if not is_nondegenerate(space):
        raise DegenerateAmbient("random isometries need a non-degenerate space")
    mat = Matrix.identity(space.n)
    produced = 0
    while produced < length:
        v = _random_nonzero_vector(space, rng)
        if space.spec.is_alternating:
            coef = random_scalar(space.spec, rng, bound=5, nonzero=True)
        else:
            g = space.omega(v, v)
            if not g:
                continue
            coef = -(_TWO / g)
        mat = _elementary_isometry(space, v, coef) @ mat
        produced += 1
    return Isometry(space, mat)


def isotropic_span_check(space: FormedSpace, samples: int, rng: random.Random) -> bool:
    """Whether `samples` random isotropic vectors span the whole space."""
    spec = space.spec
    if spec.is_alternating:
        picks = [_random_nonzero_vector(space, rng, bound=9) for _ in range(samples)]
    else:
        r = rank(space)
        if spec.is_hermitian:
            if r < 1:
                raise HypothesisViolated("hermitian span check needs rank >= 1")
        elif r < 2:
            raise HypothesisViolated("symmetric span check needs rank >= 2")
        picks = [random_isotropic_point(space, rng).rep for _ in range(samples)]
    if not picks:
        return space.n == 0
    return Matrix(picks).rank() == space.n


def config_nondegenerate_check(space: FormedSpace, p_points, q_points) -> bool:
    """Check that a dual pair of isotropic configurations spans non-degenerately.

    The hypothesis (verified, else HypothesisViolated): all p-p pairings
    vanish, and p_i pairs to zero with q_j exactly when i != j.  Returns
    whether the span L of all the points has dimension 2(k+1) and
    trivial intersection with its perpendicular.
    """

    def _rep(pt):
        return pt.rep if isinstance(pt, ProjectivePoint) else vec(pt)

    ps = [_rep(p) for p in p_points]
    qs = [_rep(q) for q in q_points]
    if len(ps) != len(qs) or not ps:
        raise HypothesisViolated("need equally many (and at least one) p and q points")
    count = len(ps)
    for i in range(count):
        for j in range(count):
            if space.omega(ps[i], ps[j]):
                raise HypothesisViolated("the p points must pairwise pair to zero")
            crossing = space.omega(ps[i], qs[j])
            if (i == j) == (not crossing):
                raise HypothesisViolated(
                    "p_i must pair to zero with q_j exactly when i != j"
                )
    span = Subspace(space.n, ps + qs)
    if span.dim != 2 * count:
        return False
    return _restricted_gram(space, span.basis).rank() == span.dim


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def encode_vector(v: Vector) -> list:
    return [format_scalar(x) for x in v]


def decode_vector(items: Sequence[str]) -> Vector:
    return tuple(parse_scalar(s) for s in items)


def encode_matrix(m: Matrix) -> list:
    return [encode_vector(row) for row in m.rows]


def decode_matrix(rows: Sequence[Sequence[str]]) -> Matrix:
    return Matrix([decode_vector(r) for r in rows])
