"""
Adjoint spectra, weight spaces and spectral ranks.

The spectral rank of a linear map is the rank of the additive group generated
by its spectrum, which equals the dimension of the Q-span of its eigenvalues.
For an algebra the rank is the maximum over all elements. Rational elements
with rational weights only ever produce spectra of Q-rank at most one, so the
sampled estimate evaluates ad X at integer points and also at
algebraic-irrational points whose coordinates are integer multiples of powers
of the real root of t^N - t - 1.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import mpmath
import sympy

import utils
from config import DEFAULT_CONFIG, AnalysisConfig
from errors import NotARoot, NotSquare, PrecisionError, UnsupportedEigenvalue
from exactla import (
    ONE,
    ZERO,
    ApproxRoot,
    MatrixQ,
    PolyQ,
    Subspace,
    all_roots_real,
    charpoly,
    evaluate_at_matrix,
    isolate_roots,
    kernel_basis,
    q_linear_rank,
    rref,
    subspace_intersect,
    to_rational,
)
from liecore import (
    LieAlgebra,
    ad_matrix,
    bracket_span,
    centralizer,
    is_semisimple,
    normalizer,
)

logger = logging.getLogger(__name__)

EXACT_RATIONAL = "exact-rational"
EXACT_WEIGHTS = "exact-weights"
CARTAN_RANK = "cartan-rank"
NUMERIC_SAMPLED = "numeric-sampled"


@dataclass(frozen=True)
class Spectrum:
    charpoly: PolyQ
    roots: list[ApproxRoot]
    all_rational: bool
    all_real: bool

    def distinct_nonzero(self) -> list[ApproxRoot]:
        return [root for root in self.roots if not _is_zero_root(root)]

    def describe(self) -> list[str]:
        return [
            root.describe() + (f" (x{root.multiplicity})" if root.multiplicity > 1 else "")
            for root in self.roots
        ]


def _is_zero_root(root: ApproxRoot) -> bool:
    if root.exact is not None:
        return root.exact == 0
    return abs(root.value) <= root.radius


def spectrum_of(T: MatrixQ, precision: int = 256, max_precision: int = 1024) -> Spectrum:
    p = charpoly(T)
    roots = isolate_roots(p, precision, max_precision)
    return Spectrum(
        charpoly=p,
        roots=roots,
        all_rational=all(root.exact is not None for root in roots),
        all_real=all_roots_real(p),
    )


def ad_spectrum(
    L: LieAlgebra, X: Sequence, precision: int = 256, max_precision: int = 1024
) -> Spectrum:
    return spectrum_of(ad_matrix(L, X), precision, max_precision)


class RootDescriptor(NamedTuple):
    """
    An eigenvalue given exactly: a rational real root, or a nonreal conjugate
    pair through its real part and squared modulus.
    """

    real: Fraction
    norm_squared: Fraction | None = None

    @classmethod
    def rational(cls, value) -> "RootDescriptor":
        return cls(to_rational(value))

    @classmethod
    def pair(cls, real, norm_squared) -> "RootDescriptor":
        return cls(to_rational(real), to_rational(norm_squared))

    @property
    def nonreal(self) -> bool:
        return self.norm_squared is not None

    def polynomial(self) -> PolyQ:
        if not self.nonreal:
            return PolyQ((-self.real, ONE))
        if self.real * self.real >= self.norm_squared:
            raise UnsupportedEigenvalue(
                "a real eigenvalue must be given as an exact rational, not as a "
                "real part and squared modulus"
            )
        return PolyQ((self.norm_squared, -2 * self.real, ONE))


def _root_factor(T: MatrixQ, root: RootDescriptor) -> PolyQ:
    if not T.is_square:
        raise NotSquare("weight spaces need a square matrix")
    q = root.polynomial()
    if charpoly(T).to_sympy().rem(q.to_sympy()).is_zero:
        return q
    raise NotARoot(f"{root} is not an eigenvalue")


def weight_space(T: MatrixQ, root: RootDescriptor) -> Subspace:
    """Generalized eigenspace: kernel of q(T)^n."""
    q = _root_factor(T, root)
    return kernel_basis(evaluate_at_matrix(q ** T.rows, T))


def semisimple_weight_space(T: MatrixQ, root: RootDescriptor) -> Subspace:
    """Kernel of T - lambda or of T^2 - 2 Re(lambda) T + |lambda|^2."""
    q = _root_factor(T, root)
    return kernel_basis(evaluate_at_matrix(q, T))


class RankResult(NamedTuple):
    r: int
    r_nr: int
    certainty: str


def _max_radius(roots: list[ApproxRoot]):
    return max((root.radius for root in roots), default=mpmath.mpf(0))


def spectral_rank_of(T: MatrixQ, cfg: AnalysisConfig = DEFAULT_CONFIG) -> RankResult:
    precision = cfg.precision
    while True:
        spectrum = spectrum_of(T, precision, cfg.max_precision)
        nonzero = spectrum.distinct_nonzero()
        nonreal = [root for root in nonzero if not root.is_real]
        try:
            full = q_linear_rank(
                nonzero, precision, cfg.height_bound, noise=_max_radius(nonzero)
            )
            imaginary = q_linear_rank(
                nonreal, precision, cfg.height_bound, noise=_max_radius(nonreal)
            )
        except PrecisionError as e:
            if precision * 2 > cfg.max_precision:
                raise
            logger.info(f"{e}; retrying at {precision * 2} bits")
            precision *= 2
            continue
        certainty = "exact" if spectrum.all_rational else full.certainty
        return RankResult(full.rank, imaginary.rank, certainty)


@dataclass(frozen=True)
class WeightTable:
    """
    functionals[k][i] is the k-th weight evaluated on e_i, so the weight of X
    is the dot product with the coordinates of X.
    """

    functionals: list[tuple[Fraction, ...]]
    success: bool

    @property
    def rank(self) -> int:
        if not self.functionals:
            return 0
        return rref(MatrixQ.from_rows(self.functionals)).rank

    def evaluate(self, X: Sequence) -> list[Fraction]:
        return [sum((a * x for a, x in zip(row, X)), ZERO) for row in self.functionals]


class _Quotient:
    """Coordinates on g / V through the non-pivot columns of V's echelon basis."""

    def __init__(self, V: Subspace):
        self.V = V
        self.n = V.ambient_dim
        self.pivot_rows = {
            next(j for j, x in enumerate(row) if x): row for row in V.basis.entries
        }
        self.free = [j for j in range(self.n) if j not in self.pivot_rows]

    def project(self, vector: Sequence[Fraction]) -> tuple[Fraction, ...]:
        reduced = list(vector)
        for p, row in self.pivot_rows.items():
            factor = reduced[p]
            if factor:
                reduced = [a - factor * b for a, b in zip(reduced, row)]
        return tuple(reduced[j] for j in self.free)

    def lift(self, coords: Sequence[Fraction]) -> tuple[Fraction, ...]:
        vector = [ZERO] * self.n
        for j, c in zip(self.free, coords):
            vector[j] = c
        return tuple(vector)

    def induced(self, T: MatrixQ) -> MatrixQ:
        columns = [self.project(T.column(j)) for j in self.free]
        return MatrixQ.from_columns(columns, len(self.free))


def _restrict(T: MatrixQ, U: Subspace) -> MatrixQ:
    """Matrix of an operator on an invariant subspace, in U's echelon basis."""
    columns = [U.coordinates(T.apply(u)) for u in U.vectors()]
    return MatrixQ.from_columns(columns, U.dim)


def _common_rational_eigenvector(
    operators: list[MatrixQ], derived_operators: list[MatrixQ], dim: int
) -> tuple[Fraction, ...] | None:
    # weights vanish on g', so common eigenvectors live in the joint kernel
    U = Subspace.full(dim)
    for op in derived_operators:
        U = subspace_intersect(U, kernel_basis(op))
        if U.dim == 0:
            return None
    t = sympy.Symbol("t")
    for op in operators:
        if U.dim == 0:
            return None
        restricted = _restrict(op, U)
        if restricted.is_zero():
            continue
        rational_roots = charpoly(restricted).to_sympy(t).ground_roots()
        if not rational_roots:
            return None
        value = to_rational(min(rational_roots))
        shifted = op - MatrixQ.identity(dim).scale(value)
        U = subspace_intersect(U, kernel_basis(shifted))
    return U.vectors()[0] if U.dim else None


def weight_functionals(L: LieAlgebra) -> WeightTable:
    """
    Triangularize ad over Q by repeatedly splitting off a rational common
    eigenvector of the action on g / V. Fails as soon as some step needs an
    irrational or nonreal eigenvalue.
    """
    n = L.dim
    full = Subspace.full(n)
    derived = bracket_span(L, full, full)
    derived_elements = derived.vectors()
    V = Subspace.zero(n)
    functionals = []
    while V.dim < n:
        quotient = _Quotient(V)
        operators = [quotient.induced(ad) for ad in L.ad_basis]
        derived_operators = [quotient.induced(ad_matrix(L, x)) for x in derived_elements]
        vector = _common_rational_eigenvector(operators, derived_operators, n - V.dim)
        if vector is None:
            logger.debug(f"No rational common eigenvector after {V.dim} flag steps")
            return WeightTable(functionals, False)

        support = next(k for k, x in enumerate(vector) if x)
        weights = tuple(op.apply(vector)[support] / vector[support] for op in operators)
        functionals.append(weights)
        V = Subspace.span(V.vectors() + [quotient.lift(vector)], n)
    return WeightTable(functionals, True)


@dataclass(frozen=True)
class SpectralRankReport:
    """
    r and r_nr as reported and consumed by the rules. For realified complex
    algebras on the sampled path they are ranks of ad X as a complex-linear
    map; r_real and r_nr_real then keep the counts over the real spectrum.
    """

    r: int
    r_nr: int
    method: str
    samples_used: int
    certainty: str
    witness: tuple[str, ...] | None = None
    r_real: int | None = None
    r_nr_real: int | None = None
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "r_nr": self.r_nr,
            "method": self.method,
            "samples_used": self.samples_used,
            "certainty": self.certainty,
            "witness": list(self.witness) if self.witness is not None else None,
            "r_real": self.r_real,
            "r_nr_real": self.r_nr_real,
            "notes": list(self.notes),
        }


def _generic_witness(n: int) -> tuple[str, ...]:
    return tuple("1" if i == 0 else f"theta^{i}" for i in range(n))


def _theta(degree: int):
    """Real root > 1 of t^degree - t - 1 at the current working precision."""
    degree = max(degree, 2)
    return mpmath.findroot(lambda t: t**degree - t - 1, mpmath.mpf("1.5"))


def _ad_numeric(L: LieAlgebra, X: Sequence):
    n = L.dim
    A = mpmath.zeros(n, n)
    for (i, j), row in L.table.items():
        x = X[i]
        if not x:
            continue
        for k, c in row.items():
            A[k, j] += x * (mpmath.mpf(c.numerator) / c.denominator)
    return A


def _complex_block(A, half: int):
    """P + iQ from the realified block form [[P, -Q], [Q, P]]."""
    B = mpmath.zeros(half, half)
    for a in range(half):
        for b in range(half):
            B[a, b] = mpmath.mpc(A[a, b], A[a + half, b])
    return B


def _cluster(eigenvalues, tolerance) -> tuple[list, object]:
    """Group eigenvalues closer than tolerance; returns means and the widest spread."""
    clusters: list[list] = []
    for value in sorted(eigenvalues, key=lambda z: (float(z.real), float(z.imag))):
        for cluster in clusters:
            if abs(cluster[0] - value) <= tolerance:
                cluster.append(value)
                break
        else:
            clusters.append([value])
    means = [mpmath.fsum(cluster) / len(cluster) for cluster in clusters]
    spread = max(
        (abs(v - mean) for cluster, mean in zip(clusters, means) for v in cluster),
        default=mpmath.mpf(0),
    )
    return means, spread


def _sampled_ranks(eigenvalues, precision: int, height_bound: int) -> tuple[int, int]:
    scale = max([abs(z) for z in eigenvalues] + [mpmath.mpf(1)])
    tolerance = mpmath.mpf(2) ** (-(precision // 4)) * scale
    means, spread = _cluster(eigenvalues, tolerance)
    nonzero = [z for z in means if abs(z) > tolerance]
    nonreal = [z for z in nonzero if abs(z.imag) > tolerance]
    noise = max(spread, mpmath.mpf(2) ** (-(3 * precision) // 4) * scale)
    full = q_linear_rank(nonzero, precision, height_bound, noise=noise)
    imaginary = q_linear_rank(nonreal, precision, height_bound, noise=noise)
    return full.rank, imaginary.rank


class SampleRanks(NamedTuple):
    real: tuple[int, int]
    linear: tuple[int, int] | None
    witness: tuple[str, ...]


def _sample_once(
    L: LieAlgebra, coefficients: list[int], algebraic: bool, precision: int, height_bound: int
) -> SampleRanks:
    with mpmath.workprec(precision):
        if algebraic:
            theta = _theta(L.dim)
            X = [c * theta**i for i, c in enumerate(coefficients)]
        else:
            X = [mpmath.mpf(c) for c in coefficients]
        A = _ad_numeric(L, X)
        eigenvalues = [mpmath.mpc(z) for z in mpmath.eig(A, left=False, right=False)]
        real = _sampled_ranks(eigenvalues, precision, height_bound)
        linear = None
        if L.complex_dim is not None:
            B = _complex_block(A, L.complex_dim)
            values = [mpmath.mpc(z) for z in mpmath.eig(B, left=False, right=False)]
            linear = _sampled_ranks(values, precision, height_bound)
    if algebraic:
        witness = tuple(f"{c}" if i == 0 else f"{c}*theta^{i}" for i, c in enumerate(coefficients))
    else:
        witness = tuple(str(c) for c in coefficients)
    return SampleRanks(real, linear, witness)


def _sample_with_retries(
    L: LieAlgebra, coefficients: list[int], algebraic: bool, label: str, cfg: AnalysisConfig
) -> SampleRanks:
    precision = cfg.precision
    while True:
        try:
            return _sample_once(L, coefficients, algebraic, precision, cfg.height_bound)
        except (PrecisionError, mpmath.libmp.NoConvergence, ZeroDivisionError) as e:
            if precision * 2 > cfg.max_precision:
                raise PrecisionError(f"{label} unresolved at {precision} bits: {e}", precision) from e
            logger.info(f"{label}: {e}; retrying at {precision * 2} bits")
            precision *= 2


def sampled_spectral_rank(
    L: LieAlgebra, cfg: AnalysisConfig = DEFAULT_CONFIG
) -> SpectralRankReport:
    """
    Maximum spectral ranks of ad X over two sample families drawn from a box
    that grows with the sample index: integer points, and algebraic-irrational
    points with integer multiples of powers of theta as coordinates.
    """
    best_real = (0, 0)
    best_linear = None
    best_key = None
    witness = None
    for index in range(cfg.samples):
        rng = utils.seeded_random(cfg.seed, "spectral-sample", index)
        box = cfg.sample_box * (index + 1)
        coefficients = [rng.choice([-1, 1]) * rng.randint(1, box) for _ in range(L.dim)]
        for algebraic in (False, True):
            label = f"{'algebraic' if algebraic else 'integer'} sample {index}"
            sample = _sample_with_retries(L, coefficients, algebraic, label, cfg)
            logger.debug(f"{label}: real ranks {sample.real}, complex-linear ranks {sample.linear}")
            best_real = (max(best_real[0], sample.real[0]), max(best_real[1], sample.real[1]))
            best_linear = _max_pair(best_linear, sample.linear)
            key = sample.linear if sample.linear is not None else sample.real
            if best_key is None or key[0] > best_key[0]:
                best_key, witness = key, sample.witness

    notes = [f"theta is the real root > 1 of t^{max(L.dim, 2)} - t - 1"]
    if best_linear is None:
        return SpectralRankReport(
            best_real[0],
            best_real[1],
            NUMERIC_SAMPLED,
            2 * cfg.samples,
            "heuristic",
            witness=witness,
            notes=notes,
        )
    return SpectralRankReport(
        best_linear[0],
        best_linear[1],
        NUMERIC_SAMPLED,
        2 * cfg.samples,
        "heuristic",
        witness=witness,
        r_real=best_real[0],
        r_nr_real=best_real[1],
        notes=notes,
    )


def _max_pair(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return (max(a[0], b[0]), max(a[1], b[1]))


def is_cartan_subalgebra(L: LieAlgebra, C: Subspace) -> bool:
    """Abelian and self-normalizing."""
    return bracket_span(L, C, C).dim == 0 and normalizer(L, C).dim == C.dim


class CartanRank(NamedTuple):
    rank: int
    witness: tuple[str, ...]
    certified: bool


def cartan_rank(L: LieAlgebra, cfg: AnalysisConfig) -> CartanRank:
    """
    Smallest centralizer dimension over integer samples. The value is the rank
    once the smallest centralizer is checked to be a Cartan subalgebra;
    otherwise it is only an upper bound.
    """
    best = None
    for index in range(max(cfg.samples, 1)):
        rng = utils.seeded_random(cfg.seed, "cartan-sample", index)
        X = tuple(Fraction(rng.randint(-cfg.sample_box, cfg.sample_box)) for _ in range(L.dim))
        C = centralizer(L, X)
        if best is None or C.dim < best[0].dim:
            best = (C, X)
    C, X = best
    certified = is_cartan_subalgebra(L, C)
    if not certified:
        logger.warning(f"Centralizer of dimension {C.dim} is not a Cartan subalgebra; rank is an upper bound")
    return CartanRank(C.dim, tuple(str(x) for x in X), certified)


def algebra_spectral_rank(
    L: LieAlgebra,
    cfg: AnalysisConfig = DEFAULT_CONFIG,
    weights: WeightTable | None = None,
    semisimple: bool | None = None,
) -> SpectralRankReport:
    """
    r(g) and r_NR(g) by the first applicable strategy: rational weight
    functionals, the semisimple rank, then sampling.
    """
    if L.dim == 0:
        return SpectralRankReport(0, 0, EXACT_RATIONAL, 0, "exact")

    weights = weights if weights is not None else weight_functionals(L)
    if weights.success:
        rank = weights.rank
        logger.debug(f"Spectral rank {rank} from rational weights")
        return SpectralRankReport(
            rank,
            0,
            EXACT_WEIGHTS if rank else EXACT_RATIONAL,
            0,
            "exact",
            witness=_generic_witness(L.dim),
        )

    semisimple = is_semisimple(L) if semisimple is None else semisimple
    if semisimple:
        cartan = cartan_rank(L, cfg)
        logger.debug(f"Semisimple rank {cartan.rank} from centralizer dimensions")
        return SpectralRankReport(
            cartan.rank,
            cartan.rank,
            CARTAN_RANK,
            max(cfg.samples, 1),
            "exact" if cartan.certified else "heuristic",
            witness=cartan.witness,
        )

    logger.info(f"Sampling spectral rank at {cfg.precision} bits ({cfg.samples} samples per family)")
    return sampled_spectral_rank(L, cfg)
