import math
from fractions import Fraction

import pytest

from gkzmirror.backend import Rat
from gkzmirror.gkz import (GkzSpec, apery_series, canonical_coordinate, catalog,
                           coefficient, companion_weights, gkz_operator,
                           gkz_series, harmonic_series, is_admissible,
                           log_companion, mirror_type_map, vp_coefficient)
from gkzmirror.series import LogSeries, TruncatedSeries, is_integral, monomials

SPEC33 = GkzSpec(2, ((3, 3),))


def harmonic(m):
    return sum(Fraction(1, j) for j in range(1, m + 1))


# -- spec validation ----------------------------------------------------------

def test_spec_validation():
    with pytest.raises(ValueError):
        GkzSpec(0, ((1,),))
    with pytest.raises(ValueError):
        GkzSpec(2, ())
    with pytest.raises(ValueError):
        GkzSpec(2, ((1, -1),))
    with pytest.raises(ValueError):
        GkzSpec(2, ((1,),))  # wrong dimension
    with pytest.raises(ValueError):
        GkzSpec(2, ((1, 1),), L=(1, -2))


def test_spec_dict_round_trip():
    spec = GkzSpec(2, ((1, 1), (2, 1)), L=(1, 0))
    rec = spec.to_dict()
    assert rec == {"d": 2, "k": 2, "N": [[1, 1], [2, 1]], "L": [1, 0]}
    assert GkzSpec.from_dict(rec) == spec
    with pytest.raises(ValueError, match="k="):
        GkzSpec.from_dict({"d": 2, "k": 3, "N": [[1, 1]]})


def test_admissibility():
    spec = GkzSpec(2, ((1, 1), (2, 1)))
    assert is_admissible(spec, (1, 1))
    assert is_admissible(spec, (2, 1))  # via the second weight vector
    assert not is_admissible(spec, (2, 2))
    assert not is_admissible(spec, (0, 0, 1))


# -- coefficients -------------------------------------------------------------

def test_coefficient_examples():
    assert coefficient(SPEC33, (1, 1)) == 720
    assert coefficient(GkzSpec(2, ((1, 1), (2, 1))), (1, 1)) == 12
    assert coefficient(SPEC33, (0, 0)) == 1
    assert coefficient(SPEC33, (-1, 2)) == 0


def test_coefficient_single_binomial():
    spec = GkzSpec(2, ((1, 1),))
    for m in range(5):
        for n in range(5):
            assert coefficient(spec, (m, n)) == math.comb(m + n, m)


def test_vp_coefficient_matches_direct():
    spec = GkzSpec(2, ((1, 1), (2, 1)))
    from gkzmirror import exact
    for p in (2, 3):
        for m in monomials(2, 6):
            assert vp_coefficient(spec, m, p) == exact.vp_int(coefficient(spec, m), p)
    assert vp_coefficient(spec, (-1, 0), 2) == float("inf")


# -- series builders ------------------------------------------------------------

def test_gkz_series_coefficients():
    f = gkz_series(SPEC33, 3)
    assert f.constant_term == 1
    assert f.coefficient((1, 1)) == 720
    for m, c in f.terms():
        assert c.numerator >= 0 and c.denominator == 1


def test_harmonic_series_examples():
    g = harmonic_series(SPEC33, (3, 3), 2)
    assert g.constant_term == 0
    assert g.coefficient((1, 0)) == harmonic(3) * 6 == 11
    g10 = harmonic_series(SPEC33, (1, 0), 2)
    assert g10.coefficient((1, 0)) == 6  # H_1 * 6
    with pytest.raises(ValueError):
        harmonic_series(SPEC33, (1, -1), 2)


def test_log_companion_examples():
    g1 = log_companion(SPEC33, 0, 2)
    assert g1.constant_term == 0
    assert g1.coefficient((1, 0)) == (3 * harmonic(3) - 3 * harmonic(1)) * 6 == 15
    assert g1.coefficient((0, 1)) == 3 * harmonic(3) * 6 == 33
    with pytest.raises(ValueError):
        log_companion(SPEC33, 2, 2)


def test_log_companion_against_direct_sum():
    # independent evaluation of the defining sum for a k=2 instance
    spec = GkzSpec(2, ((1, 1), (2, 1)))
    g = log_companion(spec, 0, 4)
    for m, n in monomials(2, 4):
        b = math.comb(m + n, m) * math.factorial(2 * m + n) \
            // (math.factorial(m) ** 2 * math.factorial(n))
        factor = (1 * harmonic(m + n) + 2 * harmonic(2 * m + n)
                  - harmonic(m) * 3)
        assert g.coefficient((m, n)) == factor * b


def test_companion_weights():
    assert companion_weights(SPEC33, 0) == [(-3, (1, 0)), (3, (3, 3))]
    assert companion_weights(SPEC33, 1) == [(-3, (0, 1)), (3, (3, 3))]
    # zero column: the unit-vector term is omitted and the list is empty
    assert companion_weights(GkzSpec(2, ((0, 2),)), 0) == []


def test_companion_weights_dominated():
    for spec in (SPEC33, GkzSpec(2, ((1, 1), (2, 1))), GkzSpec(1, ((3,), (2,)))):
        for i in range(spec.d):
            for c, L in companion_weights(spec, i):
                assert c != 0
                assert is_admissible(spec, L)


@pytest.mark.parametrize("spec", [
    SPEC33,
    GkzSpec(2, ((1, 1), (2, 1))),
    GkzSpec(2, ((2, 0), (1, 3))),
    GkzSpec(1, ((4,),)),
])
def test_companion_reconstruction(spec):
    # sum of weighted harmonic series rebuilds the log companion, degree 5
    for i in range(spec.d):
        total = TruncatedSeries.zero(spec.d, 5)
        for c, L in companion_weights(spec, i):
            total = total + harmonic_series(spec, L, 5).scale(c)
        assert total == log_companion(spec, i, 5)


# -- canonical coordinates and mirror-type maps ----------------------------------

def test_canonical_coordinate_leading_terms():
    q1 = canonical_coordinate(SPEC33, 0, 2)
    assert q1.coefficient((1, 0)) == 1
    assert q1.coefficient((2, 0)) == 15
    assert q1.coefficient((1, 1)) == 33
    assert q1.coefficient((0, 1)) == 0


def test_canonical_coordinate_normalization():
    for spec in (SPEC33, GkzSpec(2, ((1, 1), (2, 1)))):
        for i in range(spec.d):
            q = canonical_coordinate(spec, i, 3)
            unit = tuple(1 if j == i else 0 for j in range(spec.d))
            assert q.coefficient(unit) == 1


def test_mirror_type_map_trivial_weight():
    assert mirror_type_map(SPEC33, (0, 0), 4) == TruncatedSeries.one(2, 4)


def test_mirror_type_map_negative_control():
    # d=1, weights (1,), L=(2,): G/F = sum (H_{2m} - H_{2m-2}) z^m, exp leaks 3/2
    spec = GkzSpec(1, ((1,),))
    q = mirror_type_map(spec, (2,), 1)
    assert q.coefficient((1,)) == Rat(3, 2)


def test_mirror_type_map_integral_instance():
    q = mirror_type_map(SPEC33, (3, 0), 6)
    assert q.constant_term == 1
    assert is_integral(q).passed


def test_product_decomposition():
    # q_i = z_i * prod over (c, L) of the mirror-type maps q_L^c, degree 5
    for spec in (SPEC33, GkzSpec(2, ((1, 1), (2, 1)))):
        for i in range(spec.d):
            prod = TruncatedSeries.variable(spec.d, 5, i)
            for c, L in companion_weights(spec, i):
                t = mirror_type_map(spec, L, 5)
                prod = prod * (t ** c if c > 0 else t.inverse() ** (-c))
            assert prod == canonical_coordinate(spec, i, 5)


def test_coordinate_symmetry():
    # for the symmetric weight (3,3): q_1(w,z) = q_2(z,w), degree 6
    q1 = canonical_coordinate(SPEC33, 0, 6)
    q2 = canonical_coordinate(SPEC33, 1, 6)
    assert q1.coeffs == {tuple(reversed(m)): c for m, c in q2.coeffs.items()}


# -- differential operators -------------------------------------------------------

def test_operator_structure():
    op = gkz_operator(SPEC33, 0)
    assert op.theta_power == 3
    assert op.factors == (((3, 3), 1), ((3, 3), 2), ((3, 3), 3))
    op1 = gkz_operator(GkzSpec(1, ((1,),)), 0)
    assert op1.theta_power == 1
    assert op1.factors == (((1,), 1),)


def test_operator_theta_power_is_weight_sum():
    spec = GkzSpec(2, ((1, 1), (2, 1), (0, 3)))
    for i in range(2):
        assert gkz_operator(spec, i).theta_power == sum(v[i] for v in spec.N)


def test_operator_annihilates_geometric_series():
    # d=1, weights (1,): theta - z(theta+1) kills 1/(1-z)
    spec = GkzSpec(1, ((1,),))
    out = gkz_operator(spec, 0).apply(gkz_series(spec, 8))
    assert out.trusted == 7
    assert out.is_zero_to(out.trusted)


@pytest.mark.parametrize("name", ["bvs-33", "apery-zeta2", "apery-zeta3"])
def test_operator_annihilates_catalog_series(name):
    spec, _ = catalog(name)
    f = gkz_series(spec, 6)
    for i in range(spec.d):
        op = gkz_operator(spec, i)
        assert op.apply(f).is_zero_to(5)
        sol = LogSeries.log_times(i, f) + LogSeries.from_series(log_companion(spec, i, 6))
        out = op.apply(sol)
        assert out.trusted == 5
        assert out.is_zero_to(5)


def test_operator_does_not_annihilate_wrong_series():
    # mutation control: the operator must detect a corrupted solution
    f = gkz_series(SPEC33, 4)
    broken = f + TruncatedSeries(2, 4, {(1, 0): 1})
    assert not gkz_operator(SPEC33, 0).apply(broken).is_zero_to(3)


# -- binomial-sum families ----------------------------------------------------------

def apery_oracle(alpha, beta, k):
    return sum(math.comb(k, j) ** alpha * math.comb(k + j, j) ** beta
               for j in range(k + 1))


def test_apery_series_values():
    fam = apery_series(2, 1, 3)
    assert [fam.a.coefficient((k,)) for k in range(4)] == [1, 3, 19, 147]
    fam = apery_series(2, 2, 3)
    assert [fam.a.coefficient((k,)) for k in range(4)] == [1, 5, 73, 1445]
    fam = apery_series(1, 0, 3)
    assert fam.a.coefficient((2,)) == 4


@pytest.mark.parametrize("alpha,beta", [(2, 1), (2, 2), (1, 0), (3, 1)])
def test_apery_series_against_oracle(alpha, beta):
    fam = apery_series(alpha, beta, 6)
    for k in range(7):
        assert fam.a.coefficient((k,)) == apery_oracle(alpha, beta, k)


@pytest.mark.parametrize("alpha,beta", [(2, 1), (2, 2), (1, 0)])
def test_apery_log_companion_weights(alpha, beta):
    # B = (alpha-beta) B_(1,1) - alpha B_(0,1) + beta B_(2,1)
    fam = apery_series(alpha, beta, 6)
    expect = (fam.parts[(1, 1)].scale(alpha - beta)
              + fam.parts[(0, 1)].scale(-alpha)
              + fam.parts[(2, 1)].scale(beta))
    assert fam.b == expect


def test_apery_twist_oracle():
    # direct double sum for the harmonic-twisted piece, L=(2,1)
    fam = apery_series(2, 1, 5)
    for k in range(6):
        expect = sum(math.comb(k, j) ** 2 * math.comb(k + j, j)
                     * harmonic(2 * j + (k - j)) for j in range(k + 1))
        assert fam.parts[(2, 1)].coefficient((k,)) == expect


def test_apery_parameter_validation():
    with pytest.raises(ValueError):
        apery_series(1, 2, 3)
    with pytest.raises(ValueError):
        apery_series(0, 0, 3)
    with pytest.raises(ValueError):
        apery_series(-1, -1, 3)


# -- catalog ---------------------------------------------------------------------

def test_catalog_entries():
    spec, sub = catalog("bvs-33")
    assert spec == SPEC33 and sub is None
    spec, sub = catalog("bvs-33-diagonal")
    assert spec == SPEC33 and sub is not None
    spec, sub = catalog("apery-zeta2")
    assert spec.N == ((1, 1), (2, 1))
    spec, sub = catalog("apery-zeta3")
    assert spec.N == ((2, 1), (2, 1))
    with pytest.raises(ValueError, match="unknown catalog"):
        catalog("nonexistent")


def test_catalog_diagonal_coefficients():
    # direct sum oracle: (3k)!/k!^3 * sum_j C(k,j)^3 gives 1, 12, 900, 94080
    spec, sub = catalog("bvs-33-diagonal")
    f = gkz_series(spec, 3).specialize(sub)
    for k in range(4):
        expect = (math.factorial(3 * k) // math.factorial(k) ** 3
                  * sum(math.comb(k, j) ** 3 for j in range(k + 1)))
        assert f.coefficient((k,)) == expect
    assert [f.coefficient((k,)) for k in range(4)] == [1, 12, 900, 94080]
