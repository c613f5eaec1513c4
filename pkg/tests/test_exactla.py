import random
from fractions import Fraction

import mpmath
import pytest

from errors import DimensionMismatch, NotSquare, ZeroPolynomial
from exactla import (
    MatrixQ,
    PolyQ,
    Subspace,
    annihilator,
    charpoly,
    complex_roots,
    evaluate_at_matrix,
    inverse,
    kernel_basis,
    q_linear_rank,
    rational_roots,
    real_root_count,
    rref,
    sparse_kernel,
    subspace_contains,
    subspace_intersect,
    subspace_sum,
)


def random_matrix(rng: random.Random, n: int) -> MatrixQ:
    return MatrixQ.from_rows(
        [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
    )


def test_rref_rank_and_pivots():
    m = MatrixQ.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    result = rref(m)
    assert result.rank == 2
    assert result.pivots == [0, 1]
    assert result.reduced.row(0) == (1, 0, 1)
    assert result.reduced.row(1) == (0, 1, 1)


def test_kernel_basis_is_annihilated():
    m = MatrixQ.from_rows([[1, 2, 3], [2, 4, 6]])
    kernel = kernel_basis(m)
    assert kernel.dim == 2
    for v in kernel.vectors():
        assert m.apply(v) == (0, 0)


def test_sparse_kernel_matches_dense():
    rows = [{0: Fraction(1), 2: Fraction(-1)}, {1: Fraction(2), 3: Fraction(1)}]
    kernel = sparse_kernel(rows, 4)
    dense = kernel_basis(MatrixQ.from_rows([[1, 0, -1, 0], [0, 2, 0, 1]]))
    assert kernel.dim == dense.dim == 2
    assert subspace_contains(kernel, dense) and subspace_contains(dense, kernel)


def test_subspace_operations():
    a = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    b = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)
    assert subspace_sum(a, b).dim == 3
    assert subspace_intersect(a, b).vectors() == [(0, 1, 0)]
    assert annihilator(a).dim == 1
    assert subspace_contains(a, Subspace.span([(2, 3, 0)], 3))
    assert not subspace_contains(a, b)
    assert a.coordinates((2, 5, 0)) == (2, 5)


def test_subspace_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_sum(Subspace.zero(2), Subspace.zero(3))


def test_charpoly_of_companion_matrix():
    # companion matrix of t^3 - 2t + 5
    m = MatrixQ.from_rows([[0, 0, -5], [1, 0, 2], [0, 1, 0]])
    assert charpoly(m) == PolyQ((5, -2, 0, 1))
    assert str(charpoly(m)) == "t^3 - 2t + 5"


def test_charpoly_needs_square_matrix():
    with pytest.raises(NotSquare):
        charpoly(MatrixQ.from_rows([[1, 2]]))


def test_cayley_hamilton_on_random_matrices():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n)
        p = charpoly(m)
        assert p.degree == n
        assert p.leading == 1
        assert evaluate_at_matrix(p, m).is_zero()
        assert p.coefficients[n - 1] == -m.trace()


def test_inverse():
    m = MatrixQ.from_rows([[2, 1], [1, 1]])
    assert m @ inverse(m) == MatrixQ.identity(2)
    with pytest.raises(DimensionMismatch):
        inverse(MatrixQ.from_rows([[1, 2], [2, 4]]))


def test_rational_roots():
    p = PolyQ.from_roots([Fraction(1, 2), Fraction(1, 2), -3])
    assert rational_roots(p) == {Fraction(1, 2): 2, Fraction(-3): 1}
    assert rational_roots(PolyQ((-2, 0, 1))) is None
    with pytest.raises(ZeroPolynomial):
        rational_roots(PolyQ())


def test_real_root_count():
    assert real_root_count(PolyQ((-2, 0, 1))) == 2
    assert real_root_count(PolyQ((1, 0, 1))) == 0
    # t^3 - t has three real roots; repeated roots count once
    assert real_root_count(PolyQ((0, -1, 0, 1))) == 3
    assert real_root_count(PolyQ.from_roots([1, 1, 2])) == 2


def test_complex_roots_of_mixed_polynomial():
    # (t - 1)^2 (t^2 + 1) (t^2 - 2)
    p = PolyQ.from_roots([1, 1]) * PolyQ((1, 0, 1)) * PolyQ((-2, 0, 1))
    roots = complex_roots(p, 128)
    assert sum(root.multiplicity for root in roots) == 6
    exact = [root for root in roots if root.exact is not None]
    assert [(root.exact, root.multiplicity) for root in exact] == [(1, 2)]
    nonreal = [root for root in roots if not root.is_real]
    assert len(nonreal) == 2
    for root in nonreal:
        assert abs(abs(root.value.imag) - 1) < mpmath.mpf(2) ** -60
    irrational_real = [root for root in roots if root.is_real and root.exact is None]
    assert len(irrational_real) == 2
    assert all(root.radius < mpmath.mpf(2) ** -64 for root in roots)


def test_complex_roots_rejects_low_precision():
    with pytest.raises(ValueError):
        complex_roots(PolyQ((1, 0, 1)), 32)


def test_q_linear_rank_of_rationals_is_exact():
    result = q_linear_rank([Fraction(1, 2), Fraction(-3), Fraction(0)])
    assert result.rank == 1
    assert result.certainty == "exact"
    assert (0, 0, 1) in result.relations


def test_q_linear_rank_finds_relation():
    with mpmath.workprec(320):
        values = [mpmath.sqrt(2), mpmath.mpf(1), 1 + mpmath.sqrt(2)]
    result = q_linear_rank(values)
    assert result.rank == 2
    assert result.certainty == "heuristic"
    assert len(result.relations) == 1


def test_q_linear_rank_on_gaussian_values():
    with mpmath.workprec(320):
        values = [mpmath.mpc(0, 1), mpmath.mpc(1, 0), mpmath.mpc(2, -3)]
    assert q_linear_rank(values).rank == 2


def _combination_values(coefficients, scale=Fraction(1)):
    with mpmath.workprec(320):
        generators = [mpmath.mpf(1), mpmath.sqrt(2), mpmath.sqrt(3)]
        factor = mpmath.mpf(scale.numerator) / scale.denominator
        return [factor * mpmath.fsum(c * g for c, g in zip(row, generators)) for row in coefficients]


def test_q_linear_rank_scaling_and_permutation_invariance():
    rng = random.Random(11)
    for _ in range(100):
        size = rng.randint(1, 4)
        coefficients = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(size)]
        expected = rref(MatrixQ.from_rows(coefficients)).rank
        scale = Fraction(rng.choice([-1, 1]) * rng.randint(1, 7), rng.randint(1, 5))
        order = list(range(size))
        rng.shuffle(order)

        plain = q_linear_rank(_combination_values(coefficients)).rank
        scaled = q_linear_rank(_combination_values(coefficients, scale)).rank
        permuted = q_linear_rank(_combination_values([coefficients[i] for i in order])).rank
        assert plain == scaled == permuted == expected
