"""
Exact rational linear algebra and the polynomial / integer-relation machinery
the Lie algebra modules are built on.

Matrices hold fractions.Fraction entries. Large, sparse systems (derivation
equations) go through EchelonBasis, which keeps rows as {column: value} dicts.
Polynomials convert to sympy.Poly over QQ for Sturm sequences and square-free
decomposition; root approximation and relation search use mpmath.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import mpmath
import sympy
from sympy import QQ, Poly

from errors import (
    DimensionMismatch,
    NotSquare,
    PrecisionError,
    RootIsolationError,
    ZeroPolynomial,
)

logger = logging.getLogger(__name__)

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# transcendental mixing constant used to search real and imaginary parts jointly
_JOINT_WEIGHT_DIGITS = "0.31830988618379067153776752674502872406891929148091"


def to_rational(value) -> Fraction:
    """
    Convert ints, strings like "3/4", Fractions and sympy rationals to Fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {value!r} to a rational number")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class MatrixQ:
    """Dense rational matrix, immutable."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise DimensionMismatch(
                f"matrix entries do not match declared shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "MatrixQ":
        converted = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if cols is None:
            cols = len(converted[0]) if converted else 0
        return cls(len(converted), cols, converted)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls.diagonal([ONE] * n)

    @classmethod
    def diagonal(cls, values: Sequence) -> "MatrixQ":
        n = len(values)
        return cls(
            n,
            n,
            tuple(
                tuple(to_rational(values[i]) if i == j else ZERO for j in range(n))
                for i in range(n)
            ),
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "MatrixQ":
        return cls(
            rows,
            len(columns),
            tuple(tuple(to_rational(col[i]) for col in columns) for i in range(rows)),
        )

    @classmethod
    def from_flat(cls, values: Sequence, rows: int, cols: int) -> "MatrixQ":
        return cls(
            rows,
            cols,
            tuple(
                tuple(to_rational(values[i * cols + j]) for j in range(cols))
                for i in range(rows)
            ),
        )

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(x for row in self.entries for x in row)

    def transpose(self) -> "MatrixQ":
        return MatrixQ(
            self.cols,
            self.rows,
            tuple(self.column(j) for j in range(self.cols)),
        )

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise NotSquare("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), ZERO)

    def apply(self, vector: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"vector of length {len(vector)} for a matrix with {self.cols} columns"
            )
        return tuple(
            sum((a * b for a, b in zip(row, vector) if a and b), ZERO)
            for row in self.entries
        )

    def scale(self, factor) -> "MatrixQ":
        factor = to_rational(factor)
        return MatrixQ(
            self.rows,
            self.cols,
            tuple(tuple(factor * x for x in row) for row in self.entries),
        )

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_same_shape(other)
        return MatrixQ(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_same_shape(other)
        return MatrixQ(
            self.rows,
            self.cols,
            tuple(
                tuple(a - b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
        )

    def __neg__(self) -> "MatrixQ":
        return self.scale(-1)

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        other_cols = [other.column(j) for j in range(other.cols)]
        return MatrixQ(
            self.rows,
            other.cols,
            tuple(
                tuple(
                    sum((a * b for a, b in zip(row, col) if a and b), ZERO)
                    for col in other_cols
                )
                for row in self.entries
            ),
        )

    def commutator(self, other: "MatrixQ") -> "MatrixQ":
        return self @ other - other @ self

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]

    def _check_same_shape(self, other: "MatrixQ"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(
                f"shape {self.rows}x{self.cols} differs from {other.rows}x{other.cols}"
            )

    def __str__(self) -> str:
        return "\n".join(
            "[" + ", ".join(format_rational(x) for x in row) + "]"
            for row in self.entries
        )


class EchelonBasis:
    """
    Incremental row-echelon basis over Q.

    Rows are sparse dicts normalised so the pivot (smallest column) is 1.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def reduce(self, vector: dict[int, Fraction]) -> dict[int, Fraction]:
        row = {col: val for col, val in vector.items() if val}
        while True:
            hits = [col for col in row if col in self._rows]
            if not hits:
                return row
            col = min(hits)
            factor = row[col]
            for other_col, value in self._rows[col].items():
                updated = row.get(other_col, ZERO) - factor * value
                if updated:
                    row[other_col] = updated
                else:
                    row.pop(other_col, None)

    def add(self, vector: dict[int, Fraction]) -> bool:
        """Insert a vector; returns False when it was already in the span."""
        row = self.reduce(vector)
        if not row:
            return False
        pivot = min(row)
        inverse = 1 / row[pivot]
        self._rows[pivot] = {col: val * inverse for col, val in row.items()}
        return True

    def contains(self, vector: dict[int, Fraction]) -> bool:
        return not self.reduce(vector)

    def reduced_rows(self) -> list[tuple[int, dict[int, Fraction]]]:
        """Back-substitute to the reduced row-echelon form."""
        pivots = self.pivots
        rows = {p: dict(r) for p, r in self._rows.items()}
        for p in reversed(pivots):
            pivot_row = rows[p]
            for q in pivots:
                if q >= p:
                    break
                factor = rows[q].get(p)
                if not factor:
                    continue
                target = rows[q]
                for col, value in pivot_row.items():
                    updated = target.get(col, ZERO) - factor * value
                    if updated:
                        target[col] = updated
                    else:
                        target.pop(col, None)
        return [(p, rows[p]) for p in pivots]

    def kernel_vectors(self) -> list[dict[int, Fraction]]:
        """Basis of {x : row . x = 0 for every stored row}."""
        reduced = self.reduced_rows()
        pivot_set = {p for p, _ in reduced}
        vectors = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            vector = {free: ONE}
            for p, row in reduced:
                value = row.get(free)
                if value:
                    vector[p] = -value
            vectors.append(vector)
        return vectors


def _dense(vector: dict[int, Fraction], n: int) -> tuple[Fraction, ...]:
    return tuple(vector.get(i, ZERO) for i in range(n))


def _sparse(vector: Sequence[Fraction]) -> dict[int, Fraction]:
    return {i: to_rational(x) for i, x in enumerate(vector) if x}


class RrefResult(NamedTuple):
    reduced: MatrixQ
    pivots: list[int]
    rank: int


def rref(m: MatrixQ) -> RrefResult:
    """
    Reduced row-echelon form; zero rows are kept at the bottom so the
    result has the shape of the input.
    """
    echelon = EchelonBasis(m.cols)
    for row in m.entries:
        echelon.add(_sparse(row))
    reduced = echelon.reduced_rows()
    rows = [_dense(row, m.cols) for _, row in reduced]
    rows.extend([(ZERO,) * m.cols] * (m.rows - len(rows)))
    return RrefResult(
        MatrixQ(m.rows, m.cols, tuple(rows)),
        [p for p, _ in reduced],
        len(reduced),
    )


@dataclass(frozen=True)
class Subspace:
    """Rational subspace stored by its canonical reduced echelon basis."""

    ambient_dim: int
    basis: MatrixQ

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        echelon = EchelonBasis(ambient_dim)
        for vector in vectors:
            if len(vector) != ambient_dim:
                raise DimensionMismatch(
                    f"vector of length {len(vector)} in ambient dimension {ambient_dim}"
                )
            echelon.add(_sparse(vector))
        return cls._from_echelon(echelon)

    @classmethod
    def _from_echelon(cls, echelon: EchelonBasis) -> "Subspace":
        rows = tuple(_dense(row, echelon.ncols) for _, row in echelon.reduced_rows())
        return cls(echelon.ncols, MatrixQ(len(rows), echelon.ncols, rows))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, MatrixQ(0, ambient_dim, ()))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, MatrixQ.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return list(self.basis.entries)

    def contains_vector(self, vector: Sequence) -> bool:
        if len(vector) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        echelon = EchelonBasis(self.ambient_dim)
        for row in self.basis.entries:
            echelon.add(_sparse(row))
        return echelon.contains(_sparse(vector))

    def coordinates(self, vector: Sequence) -> tuple[Fraction, ...]:
        """
        Coordinates of a member vector in the echelon basis (read off the
        pivot columns).
        """
        pivots = [next(j for j, x in enumerate(row) if x) for row in self.basis.entries]
        coords = tuple(to_rational(vector[p]) for p in pivots)
        rebuilt = [ZERO] * self.ambient_dim
        for c, row in zip(coords, self.basis.entries):
            if c:
                for j, x in enumerate(row):
                    if x:
                        rebuilt[j] += c * x
        if tuple(rebuilt) != tuple(to_rational(x) for x in vector):
            raise DimensionMismatch("vector does not lie in the subspace")
        return coords

    def __str__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel_basis(m: MatrixQ) -> Subspace:
    echelon = EchelonBasis(m.cols)
    for row in m.entries:
        echelon.add(_sparse(row))
    return Subspace.span([_dense(v, m.cols) for v in echelon.kernel_vectors()], m.cols)


def sparse_kernel(rows: Iterable[dict[int, Fraction]], ncols: int) -> Subspace:
    """Kernel of a system given as sparse rows, without densifying the system."""
    echelon = EchelonBasis(ncols)
    count = 0
    for row in rows:
        echelon.add(row)
        count += 1
    logger.debug(f"Solved sparse system: {count} equations, {ncols} unknowns, rank {echelon.rank}")
    return Subspace.span([_dense(v, ncols) for v in echelon.kernel_vectors()], ncols)


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"subspaces live in dimensions {a.ambient_dim} and {b.ambient_dim}"
        )


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(a.vectors() + b.vectors(), a.ambient_dim)


def annihilator(a: Subspace) -> Subspace:
    """All w with v . w = 0 for every v in a."""
    if a.dim == 0:
        return Subspace.full(a.ambient_dim)
    return kernel_basis(a.basis)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    stacked = annihilator(a).vectors() + annihilator(b).vectors()
    if not stacked:
        return Subspace.full(a.ambient_dim)
    return kernel_basis(MatrixQ.from_rows(stacked, a.ambient_dim))


def subspace_contains(a: Subspace, b: Subspace) -> bool:
    """True when b is a subspace of a."""
    _check_ambient(a, b)
    return subspace_sum(a, b).dim == a.dim


@dataclass(frozen=True)
class PolyQ:
    """Rational polynomial, coefficients from low to high degree."""

    coefficients: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        coeffs = [to_rational(c) for c in self.coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_roots(cls, roots: Sequence) -> "PolyQ":
        result = cls((ONE,))
        for root in roots:
            result = result * cls((-to_rational(root), ONE))
        return result

    @classmethod
    def from_sympy(cls, poly: Poly) -> "PolyQ":
        return cls(tuple(to_rational(c) for c in reversed(poly.all_coeffs())))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else ZERO

    def __call__(self, x):
        result = ZERO
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    def __add__(self, other: "PolyQ") -> "PolyQ":
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (ZERO,) * (n - len(self.coefficients))
        b = other.coefficients + (ZERO,) * (n - len(other.coefficients))
        return PolyQ(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "PolyQ":
        return PolyQ(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __mul__(self, other: "PolyQ") -> "PolyQ":
        if self.is_zero or other.is_zero:
            return PolyQ()
        product = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j, b in enumerate(other.coefficients):
                product[i + j] += a * b
        return PolyQ(tuple(product))

    def __pow__(self, exponent: int) -> "PolyQ":
        result = PolyQ((ONE,))
        for _ in range(exponent):
            result = result * self
        return result

    def to_sympy(self, symbol: sympy.Symbol | None = None) -> Poly:
        symbol = symbol or sympy.Symbol("t")
        coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coefficients)]
        return Poly(coeffs or [0], symbol, domain=QQ)

    def square_free_part(self) -> "PolyQ":
        if self.is_zero:
            raise ZeroPolynomial("square-free part of the zero polynomial")
        return PolyQ.from_sympy(self.to_sympy().sqf_part())

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            body = format_rational(magnitude) if (magnitude != 1 or power == 0) else ""
            if power >= 1:
                body += "t" if power == 1 else f"t^{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def evaluate_at_matrix(p: PolyQ, m: MatrixQ) -> MatrixQ:
    """Horner evaluation p(m)."""
    if not m.is_square:
        raise NotSquare("polynomial evaluation needs a square matrix")
    result = MatrixQ.zeros(m.rows, m.cols)
    identity = MatrixQ.identity(m.rows)
    for c in reversed(p.coefficients):
        result = result @ m + identity.scale(c)
    return result


def _hessenberg(m: MatrixQ) -> list[list[Fraction]]:
    """Similarity reduction to upper Hessenberg form by Gaussian elimination."""
    h = m.to_lists()
    n = m.rows
    for j in range(n - 2):
        pivot = next((r for r in range(j + 1, n) if h[r][j]), None)
        if pivot is None:
            continue
        if pivot != j + 1:
            h[pivot], h[j + 1] = h[j + 1], h[pivot]
            for row in h:
                row[pivot], row[j + 1] = row[j + 1], row[pivot]
        for i in range(j + 2, n):
            if not h[i][j]:
                continue
            u = h[i][j] / h[j + 1][j]
            h[i] = [a - u * b for a, b in zip(h[i], h[j + 1])]
            for row in h:
                row[j + 1] += u * row[i]
    return h


def charpoly(m: MatrixQ) -> PolyQ:
    """
    Monic characteristic polynomial det(tI - m), via Hessenberg reduction and
    the standard three-term recurrence on its leading principal minors.
    """
    if not m.is_square:
        raise NotSquare(f"characteristic polynomial of a {m.rows}x{m.cols} matrix")
    n = m.rows
    h = _hessenberg(m)
    t = PolyQ((ZERO, ONE))
    minors = [PolyQ((ONE,))]
    for k in range(1, n + 1):
        current = (t - PolyQ((h[k - 1][k - 1],))) * minors[k - 1]
        product = ONE
        for i in range(1, k):
            product *= h[k - i][k - i - 1]
            if not product:
                break
            coefficient = h[k - i - 1][k - 1] * product
            if coefficient:
                current = current - PolyQ((coefficient,)) * minors[k - i - 1]
        minors.append(current)
    return minors[n]


def inverse(m: MatrixQ) -> MatrixQ:
    if not m.is_square:
        raise NotSquare("inverse of a non-square matrix")
    n = m.rows
    augmented = MatrixQ(
        n,
        2 * n,
        tuple(row + MatrixQ.identity(n).entries[i] for i, row in enumerate(m.entries)),
    )
    result = rref(augmented)
    if result.pivots[:n] != list(range(n)):
        raise DimensionMismatch("matrix is singular")
    return MatrixQ(n, n, tuple(row[n:] for row in result.reduced.entries))


def rational_roots(p: PolyQ) -> dict[Fraction, int] | None:
    """Roots with multiplicities when p splits over Q, otherwise None."""
    if p.is_zero:
        raise ZeroPolynomial("roots of the zero polynomial")
    _, factors = p.to_sympy().sqf_list()
    roots: dict[Fraction, int] = {}
    for factor, multiplicity in factors:
        found = factor.ground_roots()
        if sum(found.values()) != factor.degree():
            return None
        for value in found:
            roots[to_rational(value)] = multiplicity
    return roots


def _sign_changes(values: list) -> int:
    nonzero = [v for v in values if v != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))


def real_root_count(p: PolyQ) -> int:
    """Number of distinct real roots, counted by a Sturm sequence."""
    if p.is_zero:
        raise ZeroPolynomial("real roots of the zero polynomial")
    if p.degree == 0:
        return 0
    sequence = p.square_free_part().to_sympy().sturm()
    at_plus = [q.LC() for q in sequence]
    at_minus = [q.LC() * (-1) ** q.degree() for q in sequence]
    return _sign_changes(at_minus) - _sign_changes(at_plus)


def all_roots_real(p: PolyQ) -> bool:
    if p.degree <= 0:
        return True
    return real_root_count(p) == p.square_free_part().degree


@dataclass(frozen=True)
class ApproxRoot:
    """
    A root isolated in the disk |z - value| <= radius. Rational roots carry
    their exact value and radius 0.
    """

    value: mpmath.mpc
    radius: mpmath.mpf
    multiplicity: int
    exact: Fraction | None = None

    @property
    def is_real(self) -> bool:
        return self.exact is not None or self.value.imag == 0

    @property
    def is_zero(self) -> bool:
        return self.exact is not None and self.exact == 0

    def describe(self, digits: int = 12) -> str:
        if self.exact is not None:
            return format_rational(self.exact)
        if self.is_real:
            return mpmath.nstr(self.value.real, digits)
        return mpmath.nstr(self.value, digits)


def _to_mpf(c: Fraction):
    return mpmath.mpf(c.numerator) / c.denominator


def _isolate_irrational(
    factor: Poly, multiplicity: int, precision: int
) -> list[ApproxRoot]:
    coeffs = [_to_mpf(to_rational(c)) for c in factor.all_coeffs()]
    degree = len(coeffs) - 1
    try:
        approximations = mpmath.polyroots(
            coeffs, maxsteps=60 + 20 * degree, extraprec=precision, cleanup=True
        )
    except mpmath.libmp.NoConvergence as e:
        raise RootIsolationError(
            f"root approximation did not converge at {precision} bits", precision
        ) from e

    # Weierstrass inclusion: every root lies in the union of disks
    # D(z_i, degree * |W_i|), one per connected component member.
    floor_radius = mpmath.mpf(2) ** (-precision + 8)
    roots = []
    for i, z in enumerate(approximations):
        denominator = coeffs[0]
        for j, w in enumerate(approximations):
            if i != j:
                denominator *= z - w
        if denominator == 0:
            raise RootIsolationError("coincident root approximations", precision)
        correction = mpmath.polyval(coeffs, z) / denominator
        radius = degree * abs(correction) + floor_radius * max(1, abs(z))
        roots.append([mpmath.mpc(z), radius])

    # a disk meeting the real axis holds a real root (conjugate symmetry)
    for root in roots:
        z, radius = root
        if abs(z.imag) <= radius:
            root[0] = mpmath.mpc(z.real, 0)
            root[1] = radius + abs(z.imag)

    upper = [r for r in roots if r[0].imag > 0]
    lower = [r for r in roots if r[0].imag < 0]
    if len(upper) != len(lower):
        raise RootIsolationError("nonreal roots are not conjugate-closed", precision)
    for root in upper:
        partner = min(lower, key=lambda r: abs(r[0] - mpmath.conj(root[0])))
        lower.remove(partner)
        radius = max(root[1], partner[1])
        root[1] = radius
        partner[0] = mpmath.conj(root[0])
        partner[1] = radius

    return [ApproxRoot(z, radius, multiplicity) for z, radius in roots]


def complex_roots(p: PolyQ, precision: int = 256) -> list[ApproxRoot]:
    """
    All complex roots of p, grouped by multiplicity through the square-free
    decomposition. Rational roots are exact; the others are isolated in
    disjoint disks of radius at most 2^(-precision/2).
    """
    if p.is_zero:
        raise ZeroPolynomial("roots of the zero polynomial")
    if precision < 64:
        raise ValueError(f"precision must be at least 64 bits, got {precision}")
    if p.degree == 0:
        return []

    t = sympy.Symbol("t")
    _, factors = p.to_sympy(t).sqf_list()
    roots: list[ApproxRoot] = []
    with mpmath.workprec(precision):
        for factor, multiplicity in factors:
            remaining = factor
            for value in factor.ground_roots():
                exact = to_rational(value)
                roots.append(
                    ApproxRoot(
                        mpmath.mpc(_to_mpf(exact), 0), mpmath.mpf(0), multiplicity, exact
                    )
                )
                remaining = remaining.exquo(Poly(t - value, t, domain=QQ))
            if remaining.degree() > 0:
                roots.extend(_isolate_irrational(remaining, multiplicity, precision))

        bound = mpmath.mpf(2) ** (-(precision // 2))
        for root in roots:
            if root.radius > bound:
                raise RootIsolationError(
                    f"isolating disk radius {mpmath.nstr(root.radius, 5)} exceeds "
                    f"2^-{precision // 2}",
                    precision,
                )
        for i, a in enumerate(roots):
            for b in roots[i + 1 :]:
                if abs(a.value - b.value) <= a.radius + b.radius:
                    raise RootIsolationError("isolating disks overlap", precision)

    return sorted(roots, key=lambda r: (float(r.value.real), float(r.value.imag)))


def isolate_roots(p: PolyQ, precision: int, max_precision: int) -> list[ApproxRoot]:
    """complex_roots with precision doubling up to max_precision."""
    while True:
        try:
            return complex_roots(p, precision)
        except RootIsolationError as e:
            if precision * 2 > max_precision:
                raise
            logger.info(f"{e}; retrying root isolation at {precision * 2} bits")
            precision *= 2


class LinearRankResult(NamedTuple):
    rank: int
    relations: list[tuple[int, ...]]
    certainty: str


def _rational_relations(values: list[Fraction]) -> LinearRankResult:
    n = len(values)
    relations = []
    nonzero = [i for i, v in enumerate(values) if v]
    for i, v in enumerate(values):
        if not v:
            relations.append(tuple(1 if k == i else 0 for k in range(n)))
    if nonzero:
        base = nonzero[0]
        x0 = values[base]
        for i in nonzero[1:]:
            xi = values[i]
            scale = math.lcm(xi.denominator, x0.denominator)
            a, b = int(xi * scale), int(-x0 * scale)
            g = math.gcd(a, b)
            vector = [0] * n
            vector[base], vector[i] = a // g, b // g
            relations.append(tuple(vector))
    rank = 1 if nonzero else 0
    return LinearRankResult(rank, relations, "exact")


def _as_number(value):
    if isinstance(value, ApproxRoot):
        return value.exact if value.exact is not None else value.value
    if isinstance(value, int):
        return Fraction(value)
    return value


def q_linear_rank(
    values: Sequence, precision: int = 256, height_bound: int = 10**6, noise=None
) -> LinearRankResult:
    """
    Rank of the additive group generated by the values, i.e. the dimension of
    their Q-span.

    Rational inputs are handled exactly. Otherwise relations are searched with
    PSLQ on Re(v) + w*Im(v) for a transcendental weight w and then checked on
    the real and imaginary parts separately; the rank is reported as heuristic.
    `noise` is an upper bound on the absolute error of the inputs, if known.
    """
    numbers = [_as_number(v) for v in values]
    n = len(numbers)
    if all(isinstance(v, Fraction) for v in numbers):
        return _rational_relations(numbers)

    log2_height = math.log2(max(2, height_bound))
    with mpmath.workprec(precision):
        converted = [
            mpmath.mpc(_to_mpf(v)) if isinstance(v, Fraction) else mpmath.mpc(v)
            for v in numbers
        ]
        tol_bits = (3 * precision) // 4
        tol = mpmath.mpf(2) ** (-tol_bits)
        if noise is not None and noise > 0:
            tol = max(tol, mpmath.mpf(noise) * height_bound * 4 * max(1, n))
        zero_cut = max(tol, mpmath.mpf(2) ** (-(precision // 2)))
        weight = mpmath.mpf(_JOINT_WEIGHT_DIGITS)
        scale = max([abs(v) for v in converted] + [mpmath.mpf(1)])

        relations: list[tuple[int, ...]] = []
        basis: list[int] = []
        for i, v in enumerate(converted):
            if abs(v) <= zero_cut:
                relations.append(tuple(1 if k == i else 0 for k in range(n)))
                continue
            if not basis:
                basis.append(i)
                continue
            members = basis + [i]
            needed = (len(members) - 1) * log2_height + 8
            if needed > -mpmath.log(tol, 2):
                raise PrecisionError(
                    f"{precision} bits cannot separate relations of height "
                    f"{height_bound} among {len(members)} values",
                    precision,
                )
            mixed = [
                (converted[k].real + weight * converted[k].imag) / scale
                for k in members
            ]
            relation = mpmath.pslq(
                mixed, tol=tol, maxcoeff=height_bound, maxsteps=20000
            )
            if relation is None or relation[-1] == 0:
                basis.append(i)
                continue
            real_residual = abs(
                mpmath.fsum(c * converted[k].real for c, k in zip(relation, members))
            )
            imag_residual = abs(
                mpmath.fsum(c * converted[k].imag for c, k in zip(relation, members))
            )
            limit = tol * scale * sum(abs(c) for c in relation) * 16
            if real_residual > limit or imag_residual > limit:
                logger.debug(f"Discarded spurious relation {relation}")
                basis.append(i)
                continue
            vector = [0] * n
            for c, k in zip(relation, members):
                vector[k] = int(c)
            relations.append(tuple(vector))

    certainty = "exact" if not basis else "heuristic"
    return LinearRankResult(len(basis), relations, certainty)
