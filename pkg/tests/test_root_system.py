from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realverlinde.errors import InputError
from realverlinde.root_system import (
    CartanType,
    build_root_datum,
    conjugate_weight,
    dominant_reduce_shifted,
    inner_product,
    level_of,
    reflect,
    to_dominant,
    weight_multiplicities,
    weyl_dimension,
    weyl_orbit,
)

ALL_TYPES = ["A1", "A2", "A3", "A4", "A8", "B2", "B3", "B4", "C2", "C3", "C4",
             "D3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"]

# standard tables: number of positive roots and dual Coxeter number
KNOWN = {
    "A1": (1, 2), "A2": (3, 3), "A3": (6, 4), "A4": (10, 5), "A8": (36, 9),
    "B2": (4, 3), "B3": (9, 5), "B4": (16, 7), "C2": (4, 3), "C3": (9, 4), "C4": (16, 5),
    "D3": (6, 4), "D4": (12, 6), "D5": (20, 8), "E6": (36, 12), "E7": (63, 18),
    "E8": (120, 30), "F4": (24, 9), "G2": (6, 4),
}


@pytest.mark.parametrize("name", ALL_TYPES)
def test_root_datum_invariants(name):
    d = build_root_datum(name)
    npos, hv = KNOWN[name]
    assert len(d.positive_roots) == npos
    assert d.dual_coxeter == hv
    theta = d.alpha_max_labels
    assert inner_product(d, theta, theta) == 2
    assert d.dual_coxeter == 1 + inner_product(d, d.rho, theta)
    a = d.cartan_matrix
    for i in range(d.rank):
        assert a[i][i] == 2
        for j in range(d.rank):
            if i != j:
                assert a[i][j] <= 0
    assert d.rho == (1,) * d.rank


@pytest.mark.parametrize("name", ALL_TYPES)
def test_gram_matrix_symmetric_positive_definite(name):
    g = build_root_datum(name).gram_B
    n = len(g)
    assert all(g[i][j] == g[j][i] for i in range(n) for j in range(n))
    for m in range(1, n + 1):
        rows = [list(r[:m]) for r in g[:m]]
        det = Fraction(1)
        for c in range(m):
            p = next(r for r in range(c, m) if rows[r][c] != 0)
            rows[c], rows[p] = rows[p], rows[c]
            det *= rows[c][c]
            for r in range(c + 1, m):
                f = rows[r][c] / rows[c][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        assert det > 0


def test_positive_roots_sorted_by_height():
    d = build_root_datum("G2")
    heights = [sum(r) for r in d.positive_roots]
    assert heights == sorted(heights)
    assert d.positive_roots == tuple(sorted(d.positive_roots, key=lambda r: (sum(r), r)))


def test_small_examples():
    a1 = build_root_datum("A1")
    assert a1.rho == (1,)
    assert inner_product(a1, (1,), (1,)) == Fraction(1, 2)
    assert inner_product(a1, (0,), (5,)) == 0
    assert build_root_datum("A2").rho == (1, 1)


def test_invalid_types():
    for bad in ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "H3", "X"]:
        with pytest.raises(InputError):
            CartanType.parse(bad)
    with pytest.raises(InputError):
        inner_product(build_root_datum("A2"), (1,), (1, 0))


def test_dominant_reduce_shifted_examples():
    a1 = build_root_datum("A1")
    assert dominant_reduce_shifted(a1, (3,)) == ((3,), 1)
    assert dominant_reduce_shifted(a1, (-1,)) == ((1,), -1)
    assert dominant_reduce_shifted(a1, (0,))[1] == 0


def test_weight_multiplicity_examples():
    a1, a2 = build_root_datum("A1"), build_root_datum("A2")
    assert weight_multiplicities(a1, (2,)) == {(2,): 1, (0,): 1, (-2,): 1}
    assert weight_multiplicities(a2, (1, 1))[(0, 0)] == 2
    assert weight_multiplicities(a2, (0, 0)) == {(0, 0): 1}
    assert weyl_dimension(a2, (1, 1)) == 8
    assert all(weyl_dimension(a1, (k,)) == k + 1 for k in range(10))
    with pytest.raises(InputError):
        weight_multiplicities(a2, (-1, 0))


def test_exceptional_dimensions():
    # frozen from the Weyl dimension formula
    e8 = build_root_datum("E8")
    dims = sorted(weyl_dimension(e8, tuple(1 if j == i else 0 for j in range(8))) for i in range(8))
    assert dims == [248, 3875, 30380, 147250, 2450240, 6696000, 146325270, 6899079264]
    assert weyl_dimension(build_root_datum("G2"), (1, 0)) == 7
    assert weyl_dimension(build_root_datum("F4"), (0, 0, 0, 1)) == 26
    assert weyl_dimension(build_root_datum("E6"), (1, 0, 0, 0, 0, 0)) == 27
    assert weyl_dimension(build_root_datum("E7"), (0, 0, 0, 0, 0, 0, 1)) == 56


def _weights_for(name, max_label):
    d = build_root_datum(name)
    return st.tuples(*[st.integers(0, max_label)] * d.rank).map(lambda w: (d, w))


SMALL = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "F4", "E6"]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL).flatmap(lambda n: _weights_for(n, 2 if n in ("F4", "E6") else 3)))
def test_multiplicities_sum_to_weyl_dimension(pair):
    d, lam = pair
    if weyl_dimension(d, lam) > 10_000:
        return
    mult = weight_multiplicities(d, lam)
    assert sum(mult.values()) == weyl_dimension(d, lam)
    # Weyl-invariant diagram
    for mu, m in list(mult.items())[:50]:
        for i in range(d.rank):
            assert mult[reflect(d, mu, i)] == m


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SMALL).flatmap(
    lambda n: st.tuples(*[st.integers(-6, 6)] * build_root_datum(n).rank).map(lambda w: (n, w))))
def test_reduction_idempotent_and_sign_multiplicative(pair):
    name, xi = pair
    d = build_root_datum(name)
    delta, s = dominant_reduce_shifted(d, xi)
    assert min(delta) >= 0
    assert dominant_reduce_shifted(d, delta) == (delta, s and 1)
    for i in range(d.rank):
        if xi[i] != 0:
            d2, s2 = dominant_reduce_shifted(d, reflect(d, xi, i))
            assert d2 == delta and s2 == -s


@pytest.mark.parametrize("name", ["A3", "B3", "D5", "E6", "G2"])
def test_conjugation_and_orbits(name):
    d = build_root_datum(name)
    theta = d.alpha_max_labels
    assert conjugate_weight(d, theta) == theta
    for i in range(d.rank):
        om = tuple(1 if j == i else 0 for j in range(d.rank))
        star = conjugate_weight(d, om)
        assert conjugate_weight(d, star) == om
        assert level_of(d, star) == level_of(d, om)
        orbit = weyl_orbit(d, om)
        assert len(set(orbit)) == len(orbit)
        assert all(to_dominant(d, w)[0] == om for w in orbit[:200])
