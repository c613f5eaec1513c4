"""
Lie algebras given by rational structure constants, and the invariants that
come straight from the bracket: derived and lower central series, center,
Killing form, derivations, direct sums and subalgebras.

Basis indices are 0-based internally; files, labels and error messages are
1-based.
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from errors import AntisymmetryViolation, DimensionMismatch, JacobiViolation, RepMismatch
from exactla import (
    ZERO,
    MatrixQ,
    Subspace,
    annihilator,
    kernel_basis,
    rref,
    sparse_kernel,
    subspace_contains,
    to_rational,
)

logger = logging.getLogger(__name__)

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class LieAlgebra:
    """
    Structure constants are stored for i < j only: constants[(i, j, k)] is the
    coefficient of e_k in [e_i, e_j].

    complex_dim is set for realified complex algebras whose basis is
    e_1..e_N followed by i*e_1..i*e_N.
    """

    dim: int
    constants: dict[tuple[int, int, int], Fraction] = field(default_factory=dict)
    labels: tuple[str, ...] = ()
    matrix_rep: tuple[MatrixQ, ...] | None = None
    grading: tuple[Fraction, ...] | None = None
    complex_dim: int | None = None
    origin: str | None = None

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(
                self, "labels", tuple(f"e{i + 1}" for i in range(self.dim))
            )

    @classmethod
    def from_brackets(
        cls, dim: int, entries: Iterable[tuple[int, int, int, object]], **kwargs
    ) -> "LieAlgebra":
        """
        Build from (i, j, k, c) entries meaning [e_i, e_j] has coefficient c on
        e_k (0-based). Entries with i > j are folded onto (j, i) with the sign
        flipped; supplying both orders inconsistently is an error.
        """
        constants: dict[tuple[int, int, int], Fraction] = {}
        seen: dict[tuple[int, int, int], tuple[int, int]] = {}
        for i, j, k, c in entries:
            c = to_rational(c)
            for index in (i, j, k):
                if not 0 <= index < dim:
                    raise DimensionMismatch(
                        f"basis index {index + 1} outside 1..{dim}"
                    )
            if i == j:
                if c:
                    raise AntisymmetryViolation(i, j)
                continue
            key, value = ((i, j, k), c) if i < j else ((j, i, k), -c)
            if key in seen:
                if seen[key] != (i, j) and constants.get(key, ZERO) != value:
                    raise AntisymmetryViolation(i, j)
                if seen[key] == (i, j):
                    constants[key] = constants.get(key, ZERO) + value
            else:
                seen[key] = (i, j)
                constants[key] = value
        constants = {key: value for key, value in constants.items() if value}
        return cls(dim, constants, **kwargs)

    @cached_property
    def table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """Antisymmetric bracket table (i, j) -> {k: c} over both orders."""
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j, k), c in self.constants.items():
            table.setdefault((i, j), {})[k] = c
            table.setdefault((j, i), {})[k] = -c
        return table

    @cached_property
    def ad_basis(self) -> tuple[MatrixQ, ...]:
        return tuple(ad_matrix(self, basis_vector(self.dim, i)) for i in range(self.dim))

    @property
    def is_complex(self) -> bool:
        return self.complex_dim is not None

    def with_origin(self, origin: str) -> "LieAlgebra":
        return replace(self, origin=origin)


def basis_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else ZERO for k in range(n))


def _check_length(L: LieAlgebra, *vectors: Sequence):
    for v in vectors:
        if len(v) != L.dim:
            raise DimensionMismatch(
                f"coefficient vector of length {len(v)} for an algebra of dimension {L.dim}"
            )


def bracket(L: LieAlgebra, u: Sequence, v: Sequence) -> Vector:
    _check_length(L, u, v)
    result = [ZERO] * L.dim
    for (i, j), row in L.table.items():
        a, b = u[i], v[j]
        if not a or not b:
            continue
        ab = a * b
        for k, c in row.items():
            result[k] += ab * c
    return tuple(result)


def ad_matrix(L: LieAlgebra, X: Sequence) -> MatrixQ:
    """Column j is [X, e_j]."""
    _check_length(L, X)
    rows = [[ZERO] * L.dim for _ in range(L.dim)]
    for (i, j), row in L.table.items():
        x = X[i]
        if not x:
            continue
        for k, c in row.items():
            rows[k][j] += x * c
    return MatrixQ(L.dim, L.dim, tuple(tuple(r) for r in rows))


def _jacobi_residual(L: LieAlgebra, i: int, j: int, k: int) -> Vector:
    n = L.dim
    ei, ej, ek = (basis_vector(n, x) for x in (i, j, k))
    parts = (
        bracket(L, ei, bracket(L, ej, ek)),
        bracket(L, ej, bracket(L, ek, ei)),
        bracket(L, ek, bracket(L, ei, ej)),
    )
    return tuple(sum(values, ZERO) for values in zip(*parts))


def _check_matrix_rep(L: LieAlgebra):
    rep = L.matrix_rep
    if len(rep) != L.dim:
        raise RepMismatch(0, 0, f"{len(rep)} matrices for dimension {L.dim}")
    size = rep[0].rows if rep else 0
    for i, m in enumerate(rep):
        if m.rows != size or m.cols != size:
            raise RepMismatch(i, i, "matrices must be square and of one size")

    for i, j in combinations(range(L.dim), 2):
        expected = MatrixQ.zeros(size, size)
        for k, c in L.table.get((i, j), {}).items():
            expected = expected + rep[k].scale(c)
        if rep[i].commutator(rep[j]) != expected:
            raise RepMismatch(i, j)

    flattened = MatrixQ.from_rows([m.flatten() for m in rep], size * size)
    if rref(flattened).rank < L.dim:
        raise RepMismatch(0, 0, "representing matrices are linearly dependent")


def validate_structure(L: LieAlgebra) -> LieAlgebra:
    """
    Return L unchanged if the Jacobi identity holds on every basis triple and
    the matrix realization (if any) reproduces the brackets.
    """
    for (i, j, k) in L.constants:
        if not (0 <= i < j < L.dim and 0 <= k < L.dim):
            raise DimensionMismatch(f"structure constant index ({i + 1}, {j + 1}, {k + 1})")
    for i, j, k in combinations(range(L.dim), 3):
        residual = _jacobi_residual(L, i, j, k)
        if any(residual):
            raise JacobiViolation(i, j, k, list(residual))
    if L.matrix_rep is not None:
        _check_matrix_rep(L)
    if L.grading is not None and len(L.grading) != L.dim:
        raise DimensionMismatch(f"grading of length {len(L.grading)} for dimension {L.dim}")
    logger.debug(f"Validated algebra of dimension {L.dim} ({len(L.constants)} constants)")
    return L


def bracket_span(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    vectors = [bracket(L, a, b) for a in A.vectors() for b in B.vectors()]
    return Subspace.span(vectors, L.dim)


class SeriesResult(NamedTuple):
    terms: list[Subspace]
    length: int | None

    @property
    def dims(self) -> list[int]:
        return [term.dim for term in self.terms]

    @property
    def terminates(self) -> bool:
        return self.length is not None


def _iterate_series(L: LieAlgebra, step) -> SeriesResult:
    terms = [Subspace.full(L.dim)]
    while terms[-1].dim > 0:
        following = step(terms[-1])
        if following.dim == terms[-1].dim:
            return SeriesResult(terms, None)
        terms.append(following)
    return SeriesResult(terms, len(terms) - 1)


def derived_series(L: LieAlgebra) -> SeriesResult:
    """g^(0) = g, g^(j+1) = [g^(j), g^(j)]; length is None when not solvable."""
    return _iterate_series(L, lambda term: bracket_span(L, term, term))


def lower_central_series(L: LieAlgebra) -> SeriesResult:
    """g_(0) = g, g_(j+1) = [g, g_(j)]; length is the nilpotency class, or None."""
    full = Subspace.full(L.dim)
    return _iterate_series(L, lambda term: bracket_span(L, full, term))


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    return subspace_contains(S, bracket_span(L, Subspace.full(L.dim), S))


def center(L: LieAlgebra) -> Subspace:
    # row (j, k): coefficient of e_k in [X, e_j], linear in the coordinates of X
    rows: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), row in L.table.items():
        for k, c in row.items():
            rows.setdefault((j, k), {})[i] = c
    return sparse_kernel(rows.values(), L.dim)


def centralizer(L: LieAlgebra, X: Sequence) -> Subspace:
    return kernel_basis(ad_matrix(L, X))


def normalizer(L: LieAlgebra, S: Subspace) -> Subspace:
    """All Y with [Y, S] inside S."""
    complement = annihilator(S).vectors()
    rows = []
    for s in S.vectors():
        A = ad_matrix(L, s)
        # w . [s, Y] = 0 for every w vanishing on S
        for w in complement:
            row = {}
            for j in range(L.dim):
                value = sum((w[k] * A.entries[k][j] for k in range(L.dim)), ZERO)
                if value:
                    row[j] = value
            rows.append(row)
    return sparse_kernel(rows, L.dim)


def killing_form(L: LieAlgebra) -> MatrixQ:
    ads = L.ad_basis
    n = L.dim
    rows = []
    for i in range(n):
        rows.append(
            tuple(
                sum(
                    (
                        a * b
                        for row_a, col_b in zip(ads[i].entries, ads[j].transpose().entries)
                        for a, b in zip(row_a, col_b)
                        if a and b
                    ),
                    ZERO,
                )
                for j in range(n)
            )
        )
    return MatrixQ(n, n, tuple(rows))


def is_semisimple(L: LieAlgebra) -> bool:
    """Cartan's criterion: the Killing form is nondegenerate."""
    if L.dim == 0:
        return False
    return rref(killing_form(L)).rank == L.dim


def killing_determinant(L: LieAlgebra) -> Fraction:
    """Exact determinant of the Killing form by fraction-exact elimination."""
    rows = [list(row) for row in killing_form(L).entries]
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = rows[r][col] / rows[col][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


def _derivation_rows(L: LieAlgebra) -> list[dict[int, Fraction]]:
    """
    Linear system for D (unknown D[a][b] at index a*n + b, so D e_b has
    coefficient D[a][b] on e_a): D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j].
    """
    n = L.dim
    rows = []
    for i, j in combinations(range(n), 2):
        equations: dict[int, dict[int, Fraction]] = {}
        for m, c in L.table.get((i, j), {}).items():
            for k in range(n):
                eq = equations.setdefault(k, {})
                eq[k * n + m] = eq.get(k * n + m, ZERO) + c
        for a in range(n):
            for k, c in L.table.get((a, j), {}).items():
                eq = equations.setdefault(k, {})
                eq[a * n + i] = eq.get(a * n + i, ZERO) - c
            for k, c in L.table.get((i, a), {}).items():
                eq = equations.setdefault(k, {})
                eq[a * n + j] = eq.get(a * n + j, ZERO) - c
        for eq in equations.values():
            cleaned = {col: val for col, val in eq.items() if val}
            if cleaned:
                rows.append(cleaned)
    return rows


def derivation_algebra(L: LieAlgebra) -> Subspace:
    """All derivations, as a subspace of flattened n x n matrices (row-major)."""
    rows = _derivation_rows(L)
    logger.debug(f"Derivation system: {len(rows)} equations in {L.dim ** 2} unknowns")
    return sparse_kernel(rows, L.dim * L.dim)


def is_derivation(L: LieAlgebra, D: MatrixQ) -> bool:
    if D.rows != L.dim or D.cols != L.dim:
        return False
    for i, j in combinations(range(L.dim), 2):
        ei, ej = basis_vector(L.dim, i), basis_vector(L.dim, j)
        lhs = D.apply(bracket(L, ei, ej))
        rhs1 = bracket(L, D.column(i), ej)
        rhs2 = bracket(L, ei, D.column(j))
        if any(a != b + c for a, b, c in zip(lhs, rhs1, rhs2)):
            return False
    return True


def _block_diagonal(a: MatrixQ, b: MatrixQ) -> MatrixQ:
    rows = [row + (ZERO,) * b.cols for row in a.entries]
    rows += [(ZERO,) * a.cols + row for row in b.entries]
    return MatrixQ(a.rows + b.rows, a.cols + b.cols, tuple(rows))


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    """
    Block structure constants with zero cross brackets. A realified complex
    structure survives only when one side carries it and the other is zero
    dimensional, since the basis interleaving would otherwise break.
    """
    n1 = L1.dim
    constants = dict(L1.constants)
    for (i, j, k), c in L2.constants.items():
        constants[(i + n1, j + n1, k + n1)] = c

    matrix_rep = None
    if L1.matrix_rep is not None and L2.matrix_rep is not None:
        size1 = L1.matrix_rep[0].rows if L1.matrix_rep else 0
        size2 = L2.matrix_rep[0].rows if L2.matrix_rep else 0
        matrix_rep = tuple(
            _block_diagonal(m, MatrixQ.zeros(size2, size2)) for m in L1.matrix_rep
        ) + tuple(_block_diagonal(MatrixQ.zeros(size1, size1), m) for m in L2.matrix_rep)

    grading = None
    if L1.grading is not None and L2.grading is not None:
        grading = L1.grading + L2.grading

    labels = _disambiguate(L1.labels + L2.labels)
    return LieAlgebra(
        n1 + L2.dim,
        constants,
        labels=labels,
        matrix_rep=matrix_rep,
        grading=grading,
    )


def _disambiguate(labels: tuple[str, ...]) -> tuple[str, ...]:
    counts: dict[str, int] = {}
    for label in labels:
        counts[label] = counts.get(label, 0) + 1
    if all(count == 1 for count in counts.values()):
        return labels
    seen: dict[str, int] = {}
    result = []
    for label in labels:
        if counts[label] == 1:
            result.append(label)
            continue
        seen[label] = seen.get(label, 0) + 1
        result.append(f"{label}'{seen[label]}")
    return tuple(result)


def subalgebra(L: LieAlgebra, S: Subspace) -> LieAlgebra:
    """
    The subalgebra spanned by S with induced structure constants in the
    echelon basis of S. S must be closed under the bracket.
    """
    basis = S.vectors()
    entries = []
    for a, b in combinations(range(len(basis)), 2):
        image = bracket(L, basis[a], basis[b])
        try:
            coords = S.coordinates(image)
        except DimensionMismatch:
            raise DimensionMismatch("subspace is not closed under the bracket") from None
        entries.extend((a, b, k, c) for k, c in enumerate(coords) if c)

    labels = []
    for v in basis:
        support = [i for i, x in enumerate(v) if x]
        if len(support) == 1 and v[support[0]] == 1:
            labels.append(L.labels[support[0]])
        else:
            labels.append("+".join(L.labels[i] for i in support))

    matrix_rep = None
    if L.matrix_rep is not None:
        size = L.matrix_rep[0].rows
        matrix_rep = []
        for v in basis:
            combined = MatrixQ.zeros(size, size)
            for i, x in enumerate(v):
                if x:
                    combined = combined + L.matrix_rep[i].scale(x)
            matrix_rep.append(combined)
        matrix_rep = tuple(matrix_rep)

    grading = None
    if L.grading is not None:
        weights = []
        for v in basis:
            support_weights = {L.grading[i] for i, x in enumerate(v) if x}
            if len(support_weights) != 1:
                break
            weights.append(support_weights.pop())
        else:
            grading = tuple(weights)

    return LieAlgebra.from_brackets(
        len(basis),
        entries,
        labels=tuple(labels),
        matrix_rep=matrix_rep,
        grading=grading,
    )


def commutator_subalgebra(L: LieAlgebra) -> LieAlgebra:
    full = Subspace.full(L.dim)
    return subalgebra(L, bracket_span(L, full, full))
