import random
from fractions import Fraction

import pytest

from config import DEFAULT_CONFIG
from conftest import FAST_CONFIG, algebra
from errors import NotARoot, UnsupportedEigenvalue
from exactla import MatrixQ, Subspace, inverse, rref, subspace_sum
from spectral import (
    CARTAN_RANK,
    EXACT_RATIONAL,
    EXACT_WEIGHTS,
    NUMERIC_SAMPLED,
    RootDescriptor,
    ad_spectrum,
    algebra_spectral_rank,
    cartan_rank,
    is_cartan_subalgebra,
    sampled_spectral_rank,
    semisimple_weight_space,
    spectral_rank_of,
    spectrum_of,
    weight_functionals,
    weight_space,
)

SUPERSOLUBLE = [
    "abelian(3)",
    "st(2,R)",
    "st(3,R)",
    "st(4,R)",
    "nt(3,R)",
    "nt(4,R)",
    "strn(2)",
    "derived(st(4,R))",
    "st(3,R) x abelian(1)",
    "st(2,R) x nt(3,R)",
]


def test_spectrum_of_rotation():
    spectrum = spectrum_of(MatrixQ.from_rows([[0, -1], [1, 0]]))
    assert not spectrum.all_real
    assert not spectrum.all_rational
    assert len(spectrum.distinct_nonzero()) == 2


def test_ad_spectrum_of_sl2():
    spectrum = ad_spectrum(algebra("sl(2,R)"), (0, 1, -1))
    assert str(spectrum.charpoly) == "t^3 + 4t"
    assert not spectrum.all_real
    assert ad_spectrum(algebra("sl(2,R)"), (1, 0, 0)).all_rational


def test_spectral_rank_of_single_maps():
    assert spectral_rank_of(MatrixQ.diagonal([1, 2, 0])) == (1, 0, "exact")
    rotation = spectral_rank_of(MatrixQ.from_rows([[0, -1], [1, 0]]))
    assert (rotation.r, rotation.r_nr) == (1, 1)
    # eigenvalues 1 and +-sqrt(2)
    irrational = spectral_rank_of(MatrixQ.from_rows([[1, 0, 0], [0, 0, 2], [0, 1, 0]]))
    assert (irrational.r, irrational.r_nr) == (2, 0)
    assert irrational.certainty == "heuristic"


def test_weight_space_of_jordan_block():
    T = MatrixQ.from_rows([[2, 1, 0], [0, 2, 0], [0, 0, 3]])
    assert weight_space(T, RootDescriptor.rational(2)).dim == 2
    assert semisimple_weight_space(T, RootDescriptor.rational(2)).dim == 1
    with pytest.raises(NotARoot):
        weight_space(T, RootDescriptor.rational(5))


def test_real_eigenvalue_must_be_exact():
    T = MatrixQ.diagonal([1, 1])
    with pytest.raises(UnsupportedEigenvalue):
        weight_space(T, RootDescriptor.pair(1, 1))


def _random_block_matrix(rng: random.Random) -> tuple[MatrixQ, list[RootDescriptor]]:
    """P B P^-1 with B block diagonal: rational Jordan blocks and rotation-scaling blocks."""
    blocks, roots = [], []
    size = 0
    target = rng.randint(1, 6)
    while size < target:
        if target - size >= 2 and rng.random() < 0.4:
            a, b = rng.randint(-3, 3), rng.randint(1, 3)
            blocks.append([[a, -b], [b, a]])
            root = RootDescriptor.pair(a, a * a + b * b)
        else:
            value = rng.randint(-3, 3)
            length = rng.randint(1, min(2, target - size))
            blocks.append([[value if i == j else (1 if j == i + 1 else 0) for j in range(length)] for i in range(length)])
            root = RootDescriptor.rational(value)
        if root not in roots:
            roots.append(root)
        size += len(blocks[-1])

    B = [[0] * size for _ in range(size)]
    offset = 0
    for block in blocks:
        for i, row in enumerate(block):
            for j, x in enumerate(row):
                B[offset + i][offset + j] = x
        offset += len(block)

    while True:
        P = MatrixQ.from_rows([[rng.randint(-2, 2) for _ in range(size)] for _ in range(size)])
        if rref(P).rank == size:
            break
    return P @ MatrixQ.from_rows(B) @ inverse(P), roots


def test_weight_spaces_decompose_the_space():
    rng = random.Random(5)
    for _ in range(100):
        T, roots = _random_block_matrix(rng)
        total = Subspace.zero(T.rows)
        dims = 0
        for root in roots:
            space = weight_space(T, root)
            dims += space.dim
            total = subspace_sum(total, space)
            for v in space.vectors():
                assert space.contains_vector(T.apply(v))
        assert dims == T.rows
        assert total.dim == T.rows


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_triangular_spectral_rank_is_exact(m):
    report = algebra_spectral_rank(algebra(f"st({m},R)"))
    assert report.r == m - 1
    assert report.r_nr == 0
    assert report.method == EXACT_WEIGHTS
    assert report.certainty == "exact"


@pytest.mark.parametrize("text", SUPERSOLUBLE)
def test_supersoluble_algebras_have_no_nonreal_rank(text):
    report = algebra_spectral_rank(algebra(text))
    assert report.r_nr == 0
    assert report.certainty == "exact"


def test_nilpotent_algebra_has_rank_zero():
    report = algebra_spectral_rank(algebra("nt(4,R)"))
    assert report.r == 0
    assert report.method == EXACT_RATIONAL


def test_weight_functionals_of_st3():
    weights = weight_functionals(algebra("st(3,R)"))
    assert weights.success
    assert weights.rank == 2
    assert not weight_functionals(algebra("sl(2,R)")).success


def test_semisimple_rank_of_sl2():
    report = algebra_spectral_rank(algebra("sl(2,R)"))
    assert (report.r, report.r_nr) == (1, 1)
    assert report.method == CARTAN_RANK


def test_semisimple_rank_is_certified():
    report = algebra_spectral_rank(algebra("sl(2,R)"), FAST_CONFIG)
    assert report.certainty == "exact"
    sl3 = cartan_rank(algebra("sl(3,R)"), FAST_CONFIG)
    assert (sl3.rank, sl3.certified) == (2, True)


def test_cartan_subalgebras_of_sl2():
    sl2 = algebra("sl(2,R)")
    assert is_cartan_subalgebra(sl2, Subspace.span([(1, 0, 0)], 3))
    # compact Cartan subalgebra spanned by e - f
    assert is_cartan_subalgebra(sl2, Subspace.span([(0, 1, -1)], 3))
    # abelian, but normalized by h
    assert not is_cartan_subalgebra(sl2, Subspace.span([(0, 1, 0)], 3))
    assert not is_cartan_subalgebra(sl2, Subspace.span([(1, 0, 0), (0, 1, 0)], 3))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_complex_triangular_ranks_are_sampled(m):
    L = algebra(f"st({m},C)")
    results = []
    for seed in (0, 1, 2):
        cfg = DEFAULT_CONFIG.with_overrides(seed=seed, samples=2)
        report = algebra_spectral_rank(L, cfg)
        assert report.method == NUMERIC_SAMPLED
        assert report.certainty == "heuristic"
        results.append((report.r, report.r_nr, report.r_real, report.r_nr_real))
    assert results[0] == results[1] == results[2]
    assert results[0] == (m - 1, m - 1, 2 * (m - 1), 2 * (m - 1))


def test_complex_sl2_uses_the_cartan_rank():
    report = algebra_spectral_rank(algebra("sl(2,C)"), FAST_CONFIG)
    assert report.method == CARTAN_RANK
    assert (report.r, report.r_nr) == (2, 2)
    assert report.r_real is None


@pytest.mark.parametrize("m", [2, 3, 4])
def test_sampling_agrees_with_exact_weights(m):
    L = algebra(f"st({m},R)")
    sampled = sampled_spectral_rank(L, FAST_CONFIG)
    assert (sampled.r, sampled.r_nr) == (m - 1, 0)
    assert sampled.samples_used == 2 * FAST_CONFIG.samples
    assert sampled.r_real is None


def test_sampled_rank_of_mixed_product():
    report = algebra_spectral_rank(algebra("sl(2,R) x abelian(1)"), FAST_CONFIG)
    assert report.method == NUMERIC_SAMPLED
    assert report.witness is not None
    # ad X has eigenvalues 0 and a pair +-lambda, real or imaginary by sample
    assert report.r == 1
    assert report.r_nr in (0, 1)
    assert report.notes and "theta" in report.notes[0]


def test_root_descriptor_polynomials():
    assert RootDescriptor.rational(Fraction(1, 2)).polynomial().coefficients == (Fraction(-1, 2), 1)
    assert RootDescriptor.pair(1, 2).polynomial().coefficients == (2, -2, 1)
