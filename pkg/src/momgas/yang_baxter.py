"""Exact-arithmetic Yang operators on the group algebra of S_N.

The two-particle scattering operator of the momentum-dependent gas acts on
wedge amplitudes (functions on S_N) through the regular representation:

    Y_i(u) = (iu * 1 - (1/lam) * T_i) / (iu - 1/lam),

where T_i is the adjacent transposition of slots i, i+1 and u the momentum
difference entering the exchange.  Everything here is computed over the
Gaussian rationals (complex numbers with Fraction parts), so the three
verdicts this module produces are theorems about the stated matrices, not
float statements:

  * unitarity Y_i(-u) Y_i(u) = identity holds exactly for every admissible
    (u, lam);
  * the Yang-Baxter relation
        Y_i(v) Y_{i+1}(u+v) Y_i(u) = Y_{i+1}(u) Y_i(v+u) Y_{i+1}(v)
    FAILS for this operator at generic (u, v) -- the model is not solvable
    by nesting, even though the one-dimensional boson and fermion sectors
    (where Y is the scalar 1 resp. (iu + 1/lam)/(iu - 1/lam)) are;
  * the delta-interaction operator Y^d_i(u) = (u T_i + ic) / (u - ic)
    passes the same Yang-Baxter check exactly, so the failure above is a
    property of the model and not of the machinery.

Basis and conventions.  S_N is ordered lexicographically in one-line
notation, compose(p, q)(a) = p[q[a]], and rep(R) has entries
delta_{Q', QR}, i.e. (rep(R) v)(Q) = v(QR).  Matrices are stored as sparse
rows (dict column -> entry); products of Yang operators stay very sparse.
The dimension guard N <= 6 keeps the exact 720x720 products desk-scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "MAX_PARTICLES_EXACT",
    "GaussianRational", "RegRepMatrix", "YangOperator", "DefectResult",
    "compose", "perm_sign", "regular_rep",
    "yang_op", "check_unitarity", "yb_defect",
    "delta_yang_op", "delta_variant", "delta_control_defect",
    "check_delta_unitarity",
    "trivial_projection", "sign_projection",
]

# exact N!xN! products; 7! would already mean 5040x5040 rational matrices
MAX_PARTICLES_EXACT = 6


def _fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("pass int, str, or Fraction; floats would smuggle rounding "
                        "into an exact computation")
    return Fraction(value)


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(_fraction(value), Fraction(0))

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.of(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational((self.re * other.re + self.im * other.im) / d,
                                (self.im * other.re - self.re * other.im) / d)

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus re^2 + im^2 (the comparable stand-in for |.|)."""
        return self.re * self.re + self.im * self.im

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re} {sign} {abs(self.im)}i"


GR_ZERO = GaussianRational()
GR_ONE = GaussianRational(Fraction(1), Fraction(0))
GR_I = GaussianRational(Fraction(0), Fraction(1))


def _basis(n: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def _basis_index(n: int) -> dict[tuple[int, ...], int]:
    return {p: a for a, p in enumerate(_basis(n))}


def compose(p, q) -> tuple[int, ...]:
    """(p o q)(a) = p[q[a]]: apply q first, then p."""
    return tuple(p[q[a]] for a in range(len(p)))


def perm_sign(p) -> int:
    sign = 1
    p = tuple(p)
    for a in range(len(p)):
        for b in range(a + 1, len(p)):
            if p[a] > p[b]:
                sign = -sign
    return sign


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_PARTICLES_EXACT:
        raise ValueError(f"N = {n} outside the exact-matrix guard "
                         f"(1..{MAX_PARTICLES_EXACT})")


def _check_perm(r, n: int) -> tuple[int, ...]:
    r = tuple(r)
    if sorted(r) != list(range(n)):
        raise ValueError(f"{r!r} is not a permutation of range({n})")
    return r


class RegRepMatrix:
    """Square matrix over the Gaussian rationals on the S_N basis.

    Rows are stored sparsely as {column: entry} with zero entries dropped,
    so equality is plain structural equality.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows):
        self.n = n
        self.rows = rows   # list of dicts, already zero-free

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def zero(cls, n: int) -> "RegRepMatrix":
        _check_n(n)
        dim = len(_basis(n))
        return cls(n, [{} for _ in range(dim)])

    @classmethod
    def identity(cls, n: int) -> "RegRepMatrix":
        _check_n(n)
        dim = len(_basis(n))
        return cls(n, [{a: GR_ONE} for a in range(dim)])

    def entry(self, row: int, col: int) -> GaussianRational:
        return self.rows[row].get(col, GR_ZERO)

    def __matmul__(self, other: "RegRepMatrix") -> "RegRepMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        rows = []
        for row in self.rows:
            acc: dict[int, GaussianRational] = {}
            for mid, a in row.items():
                for col, b in other.rows[mid].items():
                    prev = acc.get(col)
                    val = a * b if prev is None else prev + a * b
                    if val.is_zero:
                        acc.pop(col, None)
                    else:
                        acc[col] = val
            rows.append(acc)
        return RegRepMatrix(self.n, rows)

    def __add__(self, other: "RegRepMatrix") -> "RegRepMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        rows = []
        for ra, rb in zip(self.rows, other.rows):
            acc = dict(ra)
            for col, b in rb.items():
                val = acc.get(col, GR_ZERO) + b
                if val.is_zero:
                    acc.pop(col, None)
                else:
                    acc[col] = val
            rows.append(acc)
        return RegRepMatrix(self.n, rows)

    def __sub__(self, other: "RegRepMatrix") -> "RegRepMatrix":
        return self + other.scale(GaussianRational(Fraction(-1)))

    def scale(self, factor) -> "RegRepMatrix":
        factor = GaussianRational.of(factor)
        if factor.is_zero:
            return RegRepMatrix.zero(self.n)
        return RegRepMatrix(self.n, [{c: factor * v for c, v in row.items()}
                                     for row in self.rows])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RegRepMatrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    @property
    def is_zero(self) -> bool:
        return all(not row for row in self.rows)

    def first_nonzero(self):
        """Row-major (row, col, entry) of the first nonzero entry, or None."""
        for r, row in enumerate(self.rows):
            if row:
                c = min(row)
                return r, c, row[c]
        return None

    def max_abs_entry(self):
        """(entry, (row, col)) with the largest exact squared modulus;
        (zero, None) for the zero matrix."""
        best = GR_ZERO
        best_pos = None
        best_abs2 = Fraction(0)
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                a2 = v.abs2()
                if a2 > best_abs2:
                    best, best_pos, best_abs2 = v, (r, c), a2
        return best, best_pos

    def __repr__(self) -> str:
        nnz = sum(len(row) for row in self.rows)
        return f"RegRepMatrix(n={self.n}, dim={self.dim}, nnz={nnz})"


def regular_rep(r, n: int) -> RegRepMatrix:
    """Matrix of R in the regular representation: (rep(R) v)(Q) = v(QR)."""
    _check_n(n)
    r = _check_perm(r, n)
    index = _basis_index(n)
    rows = []
    for q in _basis(n):
        rows.append({index[compose(q, r)]: GR_ONE})
    return RegRepMatrix(n, rows)


def _transposition(i: int, n: int) -> tuple[int, ...]:
    # i is the 1-based site: swap slots i-1 and i of the one-line word
    if not 1 <= i <= n - 1:
        raise ValueError(f"site i = {i} outside 1..{n - 1}")
    t = list(range(n))
    t[i - 1], t[i] = t[i], t[i - 1]
    return tuple(t)


@dataclass(frozen=True)
class YangOperator:
    """Exchange operator Y_i(u) = (iu - (1/lam) T_i) / (iu - 1/lam)."""
    n: int
    site: int
    u: Fraction
    inv_lam: Fraction
    matrix: RegRepMatrix

    def trivial_scalar(self) -> GaussianRational:
        """Action on the boson sector (T_i -> +1): always 1."""
        num = GR_I * self.u - GaussianRational.of(self.inv_lam)
        return num / num

    def sign_scalar(self) -> GaussianRational:
        """Action on the fermion sector (T_i -> -1): (iu + 1/lam)/(iu - 1/lam)."""
        c = GaussianRational.of(self.inv_lam)
        return (GR_I * self.u + c) / (GR_I * self.u - c)


def yang_op(i: int, u, lam, n: int) -> YangOperator:
    """Build Y_i(u) exactly for rational u and lam (lam != 0)."""
    _check_n(n)
    u = _fraction(u)
    lam = _fraction(lam)
    if lam == 0:
        raise ValueError("lam must be nonzero")
    inv_lam = 1 / lam
    t = regular_rep(_transposition(i, n), n)
    denom = GR_I * u - GaussianRational.of(inv_lam)   # nonzero: u real, 1/lam != 0
    ident = RegRepMatrix.identity(n)
    matrix = (ident.scale(GR_I * u) + t.scale(-GaussianRational.of(inv_lam))).scale(GR_ONE / denom)
    return YangOperator(n=n, site=i, u=u, inv_lam=inv_lam, matrix=matrix)


def check_unitarity(i: int, u, lam, n: int) -> bool:
    """Exact truth of Y_i(-u) Y_i(u) = identity."""
    u = _fraction(u)
    left = yang_op(i, -u, lam, n).matrix
    right = yang_op(i, u, lam, n).matrix
    return (left @ right) == RegRepMatrix.identity(n)


def trivial_projection(m: RegRepMatrix) -> GaussianRational:
    """Scalar action on the constant vector v(Q) = 1, read off row 0."""
    total = GR_ZERO
    for v in m.rows[0].values():
        total = total + v
    return total


def sign_projection(m: RegRepMatrix) -> GaussianRational:
    """Scalar action on v(Q) = sgn(Q), read off row 0 (row 0 is the identity)."""
    basis = _basis(m.n)
    total = GR_ZERO
    for c, v in m.rows[0].items():
        total = total + v * perm_sign(basis[c])
    return total


@dataclass(frozen=True)
class DefectResult:
    """Difference of the two Yang-Baxter triple products, exactly."""
    matrix: RegRepMatrix
    max_entry: GaussianRational
    max_position: tuple[int, int] | None

    @property
    def is_zero(self) -> bool:
        return self.matrix.is_zero

    def witness(self):
        """First nonzero entry row-major: (row, col, entry), or None."""
        return self.matrix.first_nonzero()


def yb_defect(i: int, u, v, lam, n: int) -> DefectResult:
    """D = Y_i(v) Y_{i+1}(u+v) Y_i(u) - Y_{i+1}(u) Y_i(v+u) Y_{i+1}(v), exact.

    Nonzero at generic (u, v): the exchange phase i/(u lam) is not additive
    in u, which is what the Yang-Baxter relation would require.
    """
    _check_n(n)
    if not 1 <= i <= n - 2:
        raise ValueError(f"yb_defect needs sites i and i+1: i = {i} outside 1..{n - 2}")
    u = _fraction(u)
    v = _fraction(v)
    y = lambda site, arg: yang_op(site, arg, lam, n).matrix
    left = y(i, v) @ y(i + 1, u + v) @ y(i, u)
    right = y(i + 1, u) @ y(i, v + u) @ y(i + 1, v)
    d = left - right
    max_entry, max_pos = d.max_abs_entry()
    return DefectResult(matrix=d, max_entry=max_entry, max_position=max_pos)


def delta_yang_op(i: int, u, c, n: int, variant: tuple[int, int] | None = None) -> RegRepMatrix:
    """Delta-interaction exchange operator (s_u u T_i + s_c ic) / (u - ic).

    variant = (s_u, s_c); None uses the empirically fixed one from
    delta_variant().
    """
    _check_n(n)
    u = _fraction(u)
    c = _fraction(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    if variant is None:
        variant = delta_variant()
    s_u, s_c = variant
    t = regular_rep(_transposition(i, n), n)
    denom = GaussianRational.of(u) - GR_I * c
    ident = RegRepMatrix.identity(n)
    num = t.scale(GaussianRational.of(s_u * u)) + ident.scale(GR_I * (s_c * c))
    return num.scale(GR_ONE / denom)


def _delta_yb_zero(variant, i, u, v, c, n) -> bool:
    y = lambda site, arg: delta_yang_op(site, arg, c, n, variant=variant)
    left = y(i, v) @ y(i + 1, u + v) @ y(i, u)
    right = y(i + 1, u) @ y(i, v + u) @ y(i + 1, v)
    return (left - right).is_zero


def check_delta_unitarity(i: int, u, c, n: int,
                          variant: tuple[int, int] | None = None) -> bool:
    """Exact truth of Y^d_i(-u) Y^d_i(u) = identity."""
    u = _fraction(u)
    prod = delta_yang_op(i, -u, c, n, variant) @ delta_yang_op(i, u, c, n, variant)
    return prod == RegRepMatrix.identity(n)


@lru_cache(maxsize=1)
def delta_variant() -> tuple[int, int]:
    """Sign convention (s_u, s_c) of the delta-interaction operator, fixed by
    probing the four candidates at (u, v, c) = (1, 2, 1), N = 3, i = 1 and
    keeping the first that passes exact unitarity and exact Yang-Baxter."""
    probe = (Fraction(1), Fraction(2), Fraction(1))
    for variant in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        u, v, c = probe
        if (check_delta_unitarity(1, u, c, 3, variant)
                and _delta_yb_zero(variant, 1, u, v, c, 3)):
            return variant
    raise RuntimeError("no sign variant of the delta operator passes the probe")


def delta_control_defect(i: int, u, v, c, n: int) -> RegRepMatrix:
    """Yang-Baxter defect of the delta-interaction operator: exactly the zero
    matrix (the solvable control for yb_defect)."""
    _check_n(n)
    if not 1 <= i <= n - 2:
        raise ValueError(f"delta control needs sites i and i+1: i = {i} outside 1..{n - 2}")
    u = _fraction(u)
    v = _fraction(v)
    variant = delta_variant()
    y = lambda site, arg: delta_yang_op(site, arg, c, n, variant=variant)
    left = y(i, v) @ y(i + 1, u + v) @ y(i, u)
    right = y(i + 1, u) @ y(i, v + u) @ y(i + 1, v)
    return left - right
