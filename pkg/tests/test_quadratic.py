from fractions import Fraction

import pytest

from quadalg import corpus
from quadalg.errors import DegreeOverflow, NotFiniteDimensional
from quadalg.linalg import Subspace, annihilator
from quadalg.quadratic import (
    apply_matrix,
    frobenius_check,
    gorenstein_check,
    graded_dims,
    graded_model,
    growth_heuristic,
    is_koszul,
    koszul_complex,
    koszul_dual,
    koszul_homology,
    pairing_is_associative,
    poincare_product_check,
)
from quadalg.tensorspace import ideal_component


def test_koszul_dual_examples():
    s = corpus.symmetric(3)
    d = koszul_dual(s)
    assert d.R.dim == 6
    assert graded_model(d, 5).dims == [1, 3, 3, 1, 0, 0]
    t = koszul_dual(corpus.trivial(2))
    assert t.R.dim == 0
    assert graded_model(t, 5).dims == [2 ** n for n in range(6)]
    assert d.labels == ("x0*", "x1*", "x2*")


@pytest.mark.parametrize("name", sorted(corpus.homogeneous_corpus()))
def test_double_dual_is_identity(name):
    q = corpus.homogeneous_corpus()[name]
    assert koszul_dual(koszul_dual(q)) == q


def test_graded_dims_examples():
    assert graded_dims(corpus.symmetric(3), 4) == ([1, 3, 6, 10, 15], "polynomial-like")
    assert graded_dims(corpus.q_polynomial([[1, 2], [Fraction(1, 2), 1]]), 4)[0] == [1, 2, 3, 4, 5]
    assert graded_dims(corpus.tensor(2), 6)[1] == "exponential-like"


def test_growth_heuristic_labels():
    assert growth_heuristic([1, 3, 6, 10, 15, 21]) == "polynomial-like"
    assert growth_heuristic([1, 2, 4, 8, 16, 32]) == "exponential-like"
    assert growth_heuristic([1, 3, 3, 1, 0]) == "polynomial-like"


def test_model_invariants():
    for q in corpus.homogeneous_corpus().values():
        g = graded_model(q, 4)
        assert g.dims[0] == 1 and g.dims[1] == q.dim_e
        for n in range(2, 5):
            assert g.dims[n] == q.dim_e ** n - ideal_component(q.R, n, q.dim_e).dim
            for m in g.normal[n]:
                cls = g.monomial_class(m, n)
                assert g.lift(cls, n) == {m: 1}


def test_dim_identities():
    for q in corpus.homogeneous_corpus().values():
        perp = annihilator(q.R)
        b = graded_model(koszul_dual(q), 4)
        for n in range(2, 5):
            assert b.dims[n] + ideal_component(perp, n, q.dim_e).dim == q.dim_e ** n


def test_multiply_examples():
    g = graded_model(corpus.exterior(3), 4)
    x = g.generator(0)
    assert g.multiply(g.unit(), 0, x, 1) == x
    assert g.multiply(x, 1, x, 1) == {}
    s = graded_model(corpus.symmetric(3), 3)
    assert s.word((0, 1)) == s.word((1, 0))
    with pytest.raises(DegreeOverflow):
        s.multiply(s.word((0, 1)), 2, s.word((0, 1)), 2)


@pytest.mark.parametrize("name", ["symmetric3", "qpoly3", "twisted_su2", "exterior3"])
def test_multiply_associative(name):
    q = corpus.homogeneous_corpus()[name]
    g = graded_model(q, 4)
    for p in range(1, 3):
        for r in range(1, 3 - p + 1):
            for s in range(1, 4 - p - r + 1):
                for x in g.basis(p):
                    for y in g.basis(r):
                        for z in g.basis(s):
                            lhs = g.multiply(g.multiply(x, p, y, r), p + r, z, s)
                            rhs = g.multiply(x, p, g.multiply(y, r, z, s), r + s)
                            assert lhs == rhs


def test_koszul_examples():
    k = koszul_homology(corpus.symmetric(3), 6)
    assert k.acyclic_from(1) and k.square_zero and k.euler_ok
    assert k.homology[(0, 0)] == 1
    t = koszul_homology(corpus.tensor(2), 6)
    assert t.acyclic_from(1)
    assert t.global_dimension_shape == 1
    with pytest.raises(ValueError):
        koszul_homology(corpus.symmetric(2), 1)


def test_koszul_b_squared_and_rank_bounds():
    for q in corpus.homogeneous_corpus().values():
        dims, maps = koszul_complex(q, 4)
        for (n, m), f in maps.items():
            if (n - 1, m) in maps:
                assert maps[(n - 1, m)].compose(f).is_zero()
        rep = koszul_homology(q, 4)
        for key in rep.homology:
            assert rep.rank_in[key] + rep.rank_out[key] <= rep.dims[key]
        assert rep.euler_ok


def test_non_koszul_detected():
    rels = [{(0, 1): 1, (0, 0): 2, (2, 0): -1}, {(0, 1): 2, (0, 2): 1, (1, 1): 2}, {(1, 0): 2}]
    q = corpus.QuadraticPresentation.from_relations(("x", "y", "z"), rels)
    rep = koszul_homology(q, 5)
    assert rep.euler_ok and rep.square_zero
    assert rep.nonzero_homology(1) == {(2, 4): 3, (2, 5): 10}
    # the series identity fails exactly where the homology appears
    assert poincare_product_check(q, 5) == [0, 0, 0, 3, 10]
    assert gorenstein_check(q, 5).verdict == "NotGorenstein"


def test_gorenstein_examples():
    g = gorenstein_check(corpus.symmetric(3), 6)
    assert g.verdict == "Gorenstein" and g.top_degree == 3 and g.square_zero
    assert gorenstein_check(corpus.trivial(2), 6).verdict == "NotGorenstein"
    q3 = corpus.q_polynomial([[1, 2, Fraction(1, 5)], [Fraction(1, 2), 1, 7], [5, Fraction(1, 7), 1]])
    g3 = gorenstein_check(q3, 6)
    assert g3.verdict == "Gorenstein" and g3.top_degree == 3


def test_gorenstein_tensor_is_not():
    g = gorenstein_check(corpus.tensor(2), 5)
    assert g.verdict == "NotGorenstein"


def test_frobenius_exterior_identity_sigma():
    g = graded_model(corpus.exterior(3), 5)
    f = frobenius_check(g)
    assert f.is_frobenius and f.top_degree == 3
    for n in range(4):
        assert f.nakayama[n] == f.nakayama[n].identity(g.dims[n])
    assert pairing_is_associative(g, f)


def test_frobenius_twisted_su2():
    g = graded_model(koszul_dual(corpus.twisted_su2_quadratic(2)), 5)
    f = frobenius_check(g)
    sig = f.sigma_on_generators()
    assert [sig[i, i] for i in range(3)] == [64, 1, Fraction(1, 64)]
    assert pairing_is_associative(g, f)


def test_frobenius_q_exterior_d2():
    q = [[1, 2], [Fraction(1, 2), 1]]
    f = frobenius_check(graded_model(corpus.q_exterior(q), 4))
    sig = f.sigma_on_generators()
    assert (sig[0, 0], sig[1, 1]) == (-2, Fraction(-1, 2))


def test_frobenius_infinite_raises():
    with pytest.raises(NotFiniteDimensional):
        frobenius_check(graded_model(corpus.tensor(2), 4))


def test_nakayama_property_on_basis():
    g = graded_model(corpus.q_exterior([[1, 3, 2], [Fraction(1, 3), 1, 5], [Fraction(1, 2), Fraction(1, 5), 1]]), 4)
    f = frobenius_check(g)
    D = f.top_degree
    for n in range(D + 1):
        for x in g.basis(n):
            for y in g.basis(D - n):
                assert g.multiply(x, n, y, D - n) == g.multiply(apply_matrix(f.nakayama[D - n], y), D - n, x, n)


def test_poincare_residuals():
    assert poincare_product_check(corpus.symmetric(3), 6) == [0] * 6
    assert poincare_product_check(corpus.trivial(2), 6) == [0] * 6
