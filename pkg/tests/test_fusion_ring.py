import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import su2_fusion_closed_form, su2_fusion_sine
from realverlinde.errors import InputError, NumericConsistencyError, ResourceError
from realverlinde.fusion_ring import (
    FusionTable,
    affine_reduce,
    character_eval,
    fusion_coeffs,
    fusion_table,
    fusion_via_smatrix,
    in_verlinde_ideal,
    level_weights,
    quotient_residual,
    s_matrix,
    special_points,
    tensor_decompose,
    unitarity_defect,
)
from realverlinde.root_system import build_root_datum, conjugate_weight, weyl_dimension

A1, A2, C2, G2 = (build_root_datum(n) for n in ("A1", "A2", "C2", "G2"))
CASES = [("A1", 6), ("A2", 4), ("C2", 3), ("G2", 2)]


def test_level_weights_examples():
    assert level_weights(A1, 3).weights == ((0,), (1,), (2,), (3,))
    assert level_weights(A2, 1).weights == ((0, 0), (0, 1), (1, 0))
    for name in ("A1", "B3", "E8", "G2"):
        assert level_weights(build_root_datum(name), 0).weights == ((0,) * build_root_datum(name).rank,)
    with pytest.raises(InputError):
        level_weights(A1, -1)


@pytest.mark.parametrize("name,k,size", [("A2", 3, 10), ("C2", 2, 6), ("G2", 2, 4), ("E8", 2, 3), ("E6", 1, 3)])
def test_level_set_sizes(name, k, size):
    assert len(level_weights(build_root_datum(name), k)) == size


def test_tensor_examples():
    assert tensor_decompose(A1, (1,), (1,)) == {(0,): 1, (2,): 1}
    assert tensor_decompose(A2, (1, 0), (0, 1)) == {(0, 0): 1, (1, 1): 1}
    assert tensor_decompose(G2, (1, 0), (0, 0)) == {(1, 0): 1}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2", "A3"]).flatmap(
    lambda n: st.tuples(st.just(n),
                        st.tuples(*[st.integers(0, 2)] * build_root_datum(n).rank),
                        st.tuples(*[st.integers(0, 2)] * build_root_datum(n).rank))))
def test_tensor_dimension_count(args):
    name, lam, mu = args
    d = build_root_datum(name)
    prod = tensor_decompose(d, lam, mu)
    assert all(n > 0 for n in prod.values())
    assert sum(n * weyl_dimension(d, nu) for nu, n in prod.items()) == weyl_dimension(d, lam) * weyl_dimension(d, mu)
    assert prod == tensor_decompose(d, mu, lam)


def test_fusion_examples():
    assert fusion_coeffs(A1, 1, (1,), (1,)) == {(0,): 1}
    assert fusion_coeffs(A1, 2, (1,), (1,)) == {(0,): 1, (2,): 1}
    assert fusion_coeffs(A2, 1, (1, 0), (1, 0)) == {(0, 1): 1}
    assert fusion_via_smatrix(A2, 1, (1, 0), (1, 0)) == {(0, 1): 1}
    for mu in level_weights(C2, 3):
        assert fusion_coeffs(C2, 3, (0, 0), mu) == {mu: 1}
    with pytest.raises(InputError):
        fusion_coeffs(A1, 1, (2,), (0,))


def test_affine_reduce_walls_and_guard():
    # level-1 A1: shifted level is 3, (3) sits on the affine wall
    assert affine_reduce(A1, 1, (3,)) == ((3,), 0)
    assert affine_reduce(A1, 1, (4,)) == ((2,), -1)
    with pytest.raises(ResourceError):
        affine_reduce(A1, 1, (10**6,), max_steps=3)


@pytest.mark.parametrize("k", range(1, 7))
def test_su2_against_independent_oracles(k):
    for a in range(k + 1):
        for b in range(k + 1):
            exact = {c[0]: n for c, n in fusion_coeffs(A1, k, (a,), (b,)).items()}
            assert exact == su2_fusion_closed_form(k, a, b) == su2_fusion_sine(k, a, b)


@pytest.mark.parametrize("name,kmax", CASES)
def test_cross_method_and_associativity(name, kmax):
    d = build_root_datum(name)
    for k in range(kmax + 1):
        ws = level_weights(d, k).weights
        table = fusion_table(d, k)
        for lam in ws:
            for mu in ws:
                assert table.product(lam, mu) == fusion_via_smatrix(d, k, lam, mu)
                assert table.product(lam, mu) == table.product(mu, lam)
        if k <= 3:
            for lam in ws:
                for mu in ws:
                    for nu in ws:
                        left, right = {}, {}
                        for t, n in table.product(lam, mu).items():
                            for s, m in table.product(t, nu).items():
                                left[s] = left.get(s, 0) + n * m
                        for t, n in table.product(mu, nu).items():
                            for s, m in table.product(lam, t).items():
                                right[s] = right.get(s, 0) + n * m
                        assert left == right


@pytest.mark.parametrize("name,k", [("A2", 3), ("C2", 3), ("G2", 2), ("A3", 2)])
def test_charge_conjugation_symmetry(name, k):
    d = build_root_datum(name)
    table = fusion_table(d, k)
    for lam in table.weights:
        for mu in table.weights:
            conj = {conjugate_weight(d, nu): n for nu, n in table.product(lam, mu).items()}
            assert table.product(conjugate_weight(d, lam), conjugate_weight(d, mu)) == conj


def test_s_matrix_examples():
    w, s = s_matrix(A1, 1)
    assert np.allclose(s, np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-12)
    _, s2 = s_matrix(A1, 2)
    assert np.all(s2[:, 0].real > 0)
    assert abs(s2[0, 0] - 0.5) < 1e-12
    for name, k in [("A3", 2), ("B3", 2), ("E6", 1), ("E7", 1), ("F4", 2)]:
        assert unitarity_defect(s_matrix(build_root_datum(name), k)[1]) < 1e-9


def test_s_matrix_routes_agree():
    for name, k in [("A2", 3), ("G2", 2), ("B3", 1)]:
        d = build_root_datum(name)
        _, sw = s_matrix(d, k, method="weyl")
        _, sc = s_matrix(d, k, method="weights")
        assert np.allclose(sw, sc, atol=1e-10)


def test_s_matrix_guard():
    with pytest.raises(ResourceError):
        s_matrix(A1, 10, max_alcove=5)
    with pytest.raises(ResourceError):
        fusion_table(A2, 10, max_alcove=20)


def test_special_points_and_characters():
    pts = special_points(A1, 1).points
    assert [p[0] for p in pts] == [pytest.approx(1 / 6), pytest.approx(1 / 3)]
    assert special_points(A1, 1).points[0][0].denominator == 6
    assert abs(character_eval(A1, (1,), pts[0]) - 1) < 1e-12
    assert abs(character_eval(A2, (0, 0), (0.3, 0.1)) - 1) < 1e-12
    assert abs(character_eval(A2, (1, 1), (0, 0), method="weights") - 8) < 1e-12
    with pytest.raises(NumericConsistencyError):
        character_eval(A2, (1, 1), (0, 0), method="weyl")
    for d in (A1, A2, C2):
        for k in range(5):
            for p in special_points(d, k).points:
                for lam in [(1,) * d.rank, (2,) + (0,) * (d.rank - 1)]:
                    a = character_eval(d, lam, p, method="weyl")
                    b = character_eval(d, lam, p, method="weights")
                    assert abs(a - b) < 1e-9


def test_vanishing_ideal_examples():
    assert in_verlinde_ideal(A1, 2, {(3,): 1})
    assert in_verlinde_ideal(A1, 2, {})
    assert not in_verlinde_ideal(A1, 2, {(1,): 1})
    # (2)(2) = (0) + (2) + (4) classically but (0) at level 2
    assert in_verlinde_ideal(A1, 2, {(2,): 1, (4,): 1})
    assert not in_verlinde_ideal(A1, 2, {(2,): 1, (4,): -1})
    assert in_verlinde_ideal(A1, 1, {(2,): 1})


@pytest.mark.parametrize("name,k", CASES)
def test_quotient_consistency(name, k):
    d = build_root_datum(name)
    assert quotient_residual(fusion_table(d, k)) < 1e-8


def test_table_json_round_trip_and_workers():
    t1 = fusion_table(A2, 3)
    t2 = fusion_table(A2, 3, workers=2)
    assert t1.coeffs == t2.coeffs
    again = FusionTable.from_json_dict(t1.to_json_dict())
    assert again.to_json_dict() == t1.to_json_dict()
    assert len(fusion_table(A1, 2).coeffs) == 6
    with pytest.raises(InputError):
        FusionTable.from_json_dict({"type": "A"})
