"""
Classification predicates and algebraic-contractibility certificates.

An AC certificate is a rational derivation D that is diagonalizable over Q
with nonnegative spectrum and an abelian zero-weight space. Then exp(-sD)
runs through automorphisms from the identity to the projection P0 onto
ker D, and c * P0 (c from 1 to 0) continues the path to the zero map.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.linalg import expm
from scipy.optimize import linprog

import utils
from config import DEFAULT_CONFIG, AnalysisConfig
from exactla import (
    ONE,
    ZERO,
    MatrixQ,
    PolyQ,
    Subspace,
    all_roots_real,
    charpoly,
    evaluate_at_matrix,
    inverse,
    kernel_basis,
    rational_roots,
    subspace_intersect,
)
from liecore import (
    LieAlgebra,
    ad_matrix,
    basis_vector,
    bracket,
    bracket_span,
    center,
    derivation_algebra,
    derived_series,
    is_derivation,
    is_semisimple,
    killing_determinant,
    lower_central_series,
)
from spectral import WeightTable, cartan_rank, weight_functionals

logger = logging.getLogger(__name__)

AC = "AC"
NOT_AC = "NotAC"
UNKNOWN = "Unknown"

SPOT_CHECK_TIMES = (0.5, 1.0, 2.0)
SPOT_CHECK_TOLERANCE = 1e-10


@dataclass(frozen=True)
class SupersolubleResult:
    value: bool
    certainty: str
    witness: tuple[Fraction, ...] | None = None
    witness_charpoly: PolyQ | None = None
    reason: str = ""


def _pair_candidates(n: int):
    for i, j in combinations(range(n), 2):
        for sign in (-1, 1):
            vector = [ZERO] * n
            vector[i], vector[j] = ONE, Fraction(sign)
            yield tuple(vector)


def _random_element(rng, n: int, box: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-box, box)) for _ in range(n))


def _find_nonreal_witness(L: LieAlgebra, candidates) -> tuple | None:
    for X in candidates:
        p = charpoly(ad_matrix(L, X))
        if not all_roots_real(p):
            return X, p
    return None


def is_supersoluble(
    L: LieAlgebra,
    cfg: AnalysisConfig = DEFAULT_CONFIG,
    solvable: bool | None = None,
    weights: WeightTable | None = None,
) -> SupersolubleResult:
    """
    Solvable with real ad-spectra everywhere. A negative answer comes with an
    exact witness whenever one is found; a positive answer is certified when
    ad triangularizes over Q, and otherwise rests on per-sample Sturm counts.
    """
    if solvable is None:
        solvable = derived_series(L).terminates
    rng = utils.seeded_random(cfg.seed, "supersoluble")
    samples = [
        _random_element(rng, L.dim, cfg.sample_box) for _ in range(cfg.supersoluble_samples)
    ]

    if not solvable:
        found = _find_nonreal_witness(L, list(_pair_candidates(L.dim)) + samples)
        if found:
            X, p = found
            return SupersolubleResult(False, "certified", X, p, "nonreal ad spectrum")
        return SupersolubleResult(False, "certified", reason="not solvable")

    if weights is not None and weights.success:
        return SupersolubleResult(True, "certified", reason="ad triangularizes over Q")

    found = _find_nonreal_witness(L, samples)
    if found:
        X, p = found
        return SupersolubleResult(False, "certified", X, p, "nonreal ad spectrum")
    return SupersolubleResult(
        True,
        "exact-per-sample",
        reason=f"{len(samples)} sampled spectra are real",
    )


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    failed_check: str | None = None
    residual: float | None = None

    def __bool__(self) -> bool:
        return self.valid


def _numeric_structure(L: LieAlgebra) -> np.ndarray:
    C = np.zeros((L.dim, L.dim, L.dim))
    for (i, j), row in L.table.items():
        for k, c in row.items():
            C[i, j, k] = float(c)
    return C


def _projection_onto_kernel(D: MatrixQ, spectrum: dict[Fraction, int]) -> MatrixQ:
    """Lagrange idempotent for the eigenvalue 0 of a diagonalizable D."""
    projection = PolyQ((ONE,))
    for value in spectrum:
        if value:
            projection = projection * PolyQ((ONE, -1 / value))
    return evaluate_at_matrix(projection, D)


def _is_endomorphism(L: LieAlgebra, E: MatrixQ) -> bool:
    for i, j in combinations(range(L.dim), 2):
        lhs = E.apply(bracket(L, basis_vector(L.dim, i), basis_vector(L.dim, j)))
        if lhs != bracket(L, E.column(i), E.column(j)):
            return False
    return True


def verify_ac_certificate(
    L: LieAlgebra, D: MatrixQ, seed: int = 0, pairs: int = 5
) -> CertificateCheck:
    """Exact checks on D, then a numeric spot check of exp(-sD)."""
    n = L.dim
    if D.rows != n or D.cols != n:
        return CertificateCheck(False, "shape")
    if not is_derivation(L, D):
        return CertificateCheck(False, "derivation identity")

    spectrum = rational_roots(charpoly(D)) if n else {}
    if spectrum is None:
        return CertificateCheck(False, "rational spectrum")
    if any(value < 0 for value in spectrum):
        return CertificateCheck(False, "nonnegative spectrum")
    identity = MatrixQ.identity(n)
    for value, multiplicity in spectrum.items():
        if kernel_basis(D - identity.scale(value)).dim != multiplicity:
            return CertificateCheck(False, "diagonalizable over Q")

    zero_weight = kernel_basis(D)
    if bracket_span(L, zero_weight, zero_weight).dim:
        return CertificateCheck(False, "abelian zero-weight space")
    if zero_weight.dim and not _is_endomorphism(L, _projection_onto_kernel(D, spectrum)):
        return CertificateCheck(False, "zero-weight projection")

    if n == 0:
        return CertificateCheck(True, residual=0.0)
    C = _numeric_structure(L)
    Dn = np.array([[float(x) for x in row] for row in D.entries])
    rng = np.random.default_rng(utils.derive_seed(seed, "ac-spot-check"))
    worst = 0.0
    for s in SPOT_CHECK_TIMES:
        E = expm(-s * Dn)
        for _ in range(pairs):
            x, y = rng.standard_normal(n), rng.standard_normal(n)
            lhs = E @ np.einsum("i,j,ijk->k", x, y, C)
            rhs = np.einsum("i,j,ijk->k", E @ x, E @ y, C)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    if worst >= SPOT_CHECK_TOLERANCE:
        return CertificateCheck(False, "automorphism spot check", worst)
    return CertificateCheck(True, residual=worst)


@dataclass(frozen=True)
class ACStatus:
    status: str
    certificate: MatrixQ | None = None
    spectrum: list[Fraction] | None = None
    reason: str = ""
    source: str | None = None
    spot_check_residual: float | None = None

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "source": self.source,
            "certificate": (
                [[str(x) for x in row] for row in self.certificate.entries]
                if self.certificate is not None
                else None
            ),
            "spectrum": [str(x) for x in self.spectrum] if self.spectrum is not None else None,
            "spot_check_residual": self.spot_check_residual,
        }


def _certified(L: LieAlgebra, D: MatrixQ, source: str, seed: int) -> ACStatus | None:
    check = verify_ac_certificate(L, D, seed)
    if not check:
        logger.debug(f"Candidate from {source} rejected: {check.failed_check}")
        return None
    spectrum = []
    for value, multiplicity in (rational_roots(charpoly(D)) or {}).items():
        spectrum.extend([value] * multiplicity)
    return ACStatus(
        AC,
        certificate=D,
        spectrum=sorted(spectrum),
        reason="grading derivation with nonnegative rational spectrum",
        source=source,
        spot_check_residual=check.residual,
    )


def _random_derivation(basis: list, rng, n: int) -> MatrixQ:
    flat = [ZERO] * (n * n)
    for vector in basis:
        c = Fraction(rng.randint(-9, 9))
        if c:
            flat = [a + c * b for a, b in zip(flat, vector)]
    return MatrixQ.from_flat(flat, n, n)


def _diagonal_derivation_by_lp(L: LieAlgebra, lower_bound: float) -> MatrixQ | None:
    """
    Diagonal D = diag(d) is a derivation iff d_k = d_i + d_j whenever
    [e_i, e_j] has a nonzero e_k component.
    """
    n = L.dim
    rows = []
    for i, j, k in L.constants:
        row = np.zeros(n)
        row[k] += 1.0
        row[i] -= 1.0
        row[j] -= 1.0
        rows.append(row)
    A_eq = np.array(rows) if rows else None
    b_eq = np.zeros(len(rows)) if rows else None
    # maximize the total weight so the zero-weight space stays small
    result = linprog(
        -np.ones(n),
        A_eq=A_eq,
        b_eq=b_eq,
        bounds=[(lower_bound, float(n))] * n,
        method="highs",
    )
    if not result.success:
        return None
    weights = [Fraction(float(x)).limit_denominator(1000) for x in result.x]
    return MatrixQ.diagonal(weights)


def _semisimple_part(D: MatrixQ) -> MatrixQ | None:
    spectrum = rational_roots(charpoly(D))
    if spectrum is None:
        return None
    n = D.rows
    identity = MatrixQ.identity(n)
    columns, values = [], []
    for value, multiplicity in spectrum.items():
        shifted = D - identity.scale(value)
        power = identity
        for _ in range(multiplicity):
            power = power @ shifted
        space = kernel_basis(power)
        columns.extend(space.vectors())
        values.extend([value] * space.dim)
    B = MatrixQ.from_columns(columns, n)
    return B @ MatrixQ.diagonal(values) @ inverse(B)


def ac_status(
    L: LieAlgebra,
    cfg: AnalysisConfig = DEFAULT_CONFIG,
    solvable: bool | None = None,
) -> ACStatus:
    if solvable is None:
        solvable = derived_series(L).terminates
    if not solvable:
        return ACStatus(NOT_AC, reason="not solvable")

    if L.grading is not None:
        found = _certified(L, MatrixQ.diagonal(L.grading), "grading", cfg.seed)
        if found:
            return found

    derivations = derivation_algebra(L).vectors()
    rng = utils.seeded_random(cfg.seed, "derivations")
    sampled = [_random_derivation(derivations, rng, L.dim) for _ in range(cfg.derivation_samples)]
    nilpotent = PolyQ((ZERO,) * L.dim + (ONE,))
    if all(charpoly(D) == nilpotent for D in sampled):
        return ACStatus(NOT_AC, reason="unipotent derivation algebra")

    for lower_bound in (1.0, 0.0):
        D = _diagonal_derivation_by_lp(L, lower_bound)
        if D is not None:
            found = _certified(L, D, "linear program", cfg.seed)
            if found:
                return found

    for D in sampled:
        S = _semisimple_part(D)
        if S is None:
            continue
        for candidate in (S, -S):
            found = _certified(L, candidate, "semisimple part", cfg.seed)
            if found:
                return found

    return ACStatus(UNKNOWN, reason="no grading derivation found")


def scalar_free_rep(L: LieAlgebra) -> bool | None:
    """Whether the span of the representing matrices misses the scalars."""
    if L.matrix_rep is None:
        return None
    if not L.matrix_rep:
        return True
    size = L.matrix_rep[0].rows
    span = Subspace.span([m.flatten() for m in L.matrix_rep], size * size)
    scalars = Subspace.span([MatrixQ.identity(size).flatten()], size * size)
    return subspace_intersect(span, scalars).dim == 0


def rep_size(L: LieAlgebra) -> int | None:
    if not L.matrix_rep:
        return None
    return L.matrix_rep[0].rows


@dataclass(frozen=True)
class ClassificationFlags:
    abelian: bool
    nilpotent: bool
    nilpotency_class: int | None
    solvable: bool
    derived_length: int | None
    supersoluble: bool
    supersoluble_certainty: str
    semisimple: bool
    semisimple_rank: int | None
    has_scalar_free_rep: bool | None
    killing_det_sign: int
    supersoluble_witness: tuple[Fraction, ...] | None = None
    supersoluble_witness_charpoly: PolyQ | None = None
    derived_dims: list[int] = field(default_factory=list)
    lower_central_dims: list[int] = field(default_factory=list)
    center_dim: int = 0

    def as_dict(self) -> dict:
        return {
            "abelian": self.abelian,
            "nilpotent": self.nilpotent,
            "nilpotency_class": self.nilpotency_class,
            "solvable": self.solvable,
            "derived_length": self.derived_length,
            "supersoluble": self.supersoluble,
            "supersoluble_certainty": self.supersoluble_certainty,
            "supersoluble_witness": (
                [str(x) for x in self.supersoluble_witness]
                if self.supersoluble_witness is not None
                else None
            ),
            "supersoluble_witness_charpoly": (
                str(self.supersoluble_witness_charpoly)
                if self.supersoluble_witness_charpoly is not None
                else None
            ),
            "semisimple": self.semisimple,
            "semisimple_rank": self.semisimple_rank,
            "has_scalar_free_rep": self.has_scalar_free_rep,
            "killing_det_sign": self.killing_det_sign,
            "derived_dims": list(self.derived_dims),
            "lower_central_dims": list(self.lower_central_dims),
            "center_dim": self.center_dim,
        }


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def classify(
    L: LieAlgebra,
    cfg: AnalysisConfig = DEFAULT_CONFIG,
    weights: WeightTable | None = None,
) -> ClassificationFlags:
    derived = derived_series(L)
    lower = lower_central_series(L)
    semisimple = is_semisimple(L)
    if weights is None and derived.terminates:
        weights = weight_functionals(L)
    supersoluble = is_supersoluble(L, cfg, derived.terminates, weights)
    semisimple_rank = cartan_rank(L, cfg)[0] if semisimple else None

    return ClassificationFlags(
        abelian=not L.constants,
        nilpotent=lower.terminates,
        nilpotency_class=lower.length,
        solvable=derived.terminates,
        derived_length=derived.length,
        supersoluble=supersoluble.value,
        supersoluble_certainty=supersoluble.certainty,
        semisimple=semisimple,
        semisimple_rank=semisimple_rank,
        has_scalar_free_rep=scalar_free_rep(L),
        killing_det_sign=_sign(killing_determinant(L)),
        supersoluble_witness=supersoluble.witness,
        supersoluble_witness_charpoly=supersoluble.witness_charpoly,
        derived_dims=derived.dims,
        lower_central_dims=lower.dims,
        center_dim=center(L).dim,
    )
