import math
from fractions import Fraction

import pytest

from gkzmirror import exact
from gkzmirror.backend import Rat, factorial


def test_vp_int_examples():
    assert exact.vp_int(0, 5) == exact.INF
    assert exact.vp_int(1, 7) == 0
    assert exact.vp_int(12, 2) == 2
    assert exact.vp_int(-24, 2) == 3


def test_vp_rejects_nonprime():
    for bad in (0, 1, 4, 6, -3, 9):
        with pytest.raises(ValueError):
            exact.vp_int(12, bad)
        with pytest.raises(ValueError):
            exact.vp_rat(Rat(1, 2), bad)


def test_vp_rat_examples():
    assert exact.vp_rat(Rat(1, 3), 3) == -1
    assert exact.vp_rat(Rat(6, 5), 3) == 1
    assert exact.vp_rat(Rat(0), 2) == exact.INF
    assert exact.vp_rat(Rat(8, 6), 2) == 2


def test_vp_factorial_examples():
    assert exact.vp_factorial(10, 2) == 8
    assert exact.vp_factorial(0, 5) == 0
    assert exact.vp_factorial(4, 5) == 0
    with pytest.raises(ValueError):
        exact.vp_factorial(-1, 2)


def test_vp_factorial_matches_direct_valuation():
    # two independent paths: Legendre floor sums vs valuations of the factors
    for p in (2, 3, 5):
        acc = 0
        for n in range(1, 2001):
            acc += exact.vp_int(n, p)
            assert exact.vp_factorial(n, p) == acc
    for n in (100, 500, 2000):
        f = math.factorial(n)
        for p in (2, 3, 5):
            assert exact.vp_factorial(n, p) == exact.vp_int(f, p)


def test_multinomial_examples():
    assert exact.multinomial((3, 3), (1, 0)) == 6
    assert exact.multinomial((3, 3), (1, 1)) == 720
    assert exact.multinomial((2, 1), (-1, 2)) == 0
    assert exact.multinomial((1,), (7,)) == 1
    assert exact.multinomial((), ()) == 1


def test_multinomial_rejects_bad_inputs():
    with pytest.raises(ValueError):
        exact.multinomial((3,), (1, 2))
    with pytest.raises(ValueError):
        exact.multinomial((-1, 2), (1, 1))


def test_multinomial_is_nonnegative_integer_and_matches_factorials():
    for p1 in range(5):
        for p2 in range(5):
            for m1 in range(5):
                for m2 in range(5):
                    got = exact.multinomial((p1, p2), (m1, m2))
                    top = math.factorial(p1 * m1 + p2 * m2)
                    expect = Fraction(top, math.factorial(m1) ** p1
                                      * math.factorial(m2) ** p2)
                    assert expect.denominator == 1
                    assert got == expect
                    assert got >= 0


def test_vp_multinomial_matches_direct():
    for p in (2, 3, 5):
        for p1 in range(5):
            for p2 in range(5):
                for m1 in range(5):
                    for m2 in range(5):
                        direct = exact.vp_int(
                            exact.multinomial((p1, p2), (m1, m2)), p)
                        assert exact.vp_multinomial((p1, p2), (m1, m2), p) == direct
    assert exact.vp_multinomial((2, 1), (-1, 2), 3) == exact.INF
    # single weight 1: the coefficient is always 1
    for n in range(20):
        assert exact.vp_multinomial((1,), (n,), 5) == 0


def test_harmonic_values():
    assert exact.harmonic(0) == 0
    assert exact.harmonic(3) == Fraction(11, 6)
    assert exact.harmonic(4) == Fraction(25, 12)
    for m in (1, 7, 40):
        assert exact.harmonic(m) - exact.harmonic(m - 1) == Fraction(1, m)
    with pytest.raises(ValueError):
        exact.harmonic(-1)


def test_harmonic_reduction_congruence():
    # p*H_J == H_{floor(J/p)} mod p Z_p
    for p in (2, 3, 5):
        for j in range(501):
            value = p * exact.harmonic(j) - exact.harmonic(j // p)
            assert exact.vp_rat(value, p) >= 1, (p, j)


def test_gamma_p_examples():
    for p in (2, 3, 5):
        assert exact.gamma_p(1, p) == -1
    assert exact.gamma_p(6, 5) == 24
    assert factorial(5) // factorial(1) == (-1) ** 6 * 5 * exact.gamma_p(6, 5) == 120
    with pytest.raises(ValueError):
        exact.gamma_p(0, 5)


def test_gamma_factorial_identity():
    for p in (2, 3, 5, 7):
        for n in range(1, 51):
            lhs = factorial(n * p) // factorial(n)
            assert lhs == (-1) ** (n * p + 1) * p ** n * exact.gamma_p(1 + n * p, p)


def test_gamma_shift_congruence():
    # mod p^s for odd p; for p = 2 the bound drops to s-1 exactly at s = 2
    for p, s_top in ((2, 3), (3, 3), (5, 2)):
        for s in range(1, s_top + 1):
            required = s - 1 if (p == 2 and s == 2) else s
            for k in range(1, 13):
                for n in range(1, 7):
                    diff = exact.gamma_p(k + n * p ** s, p) - exact.gamma_p(k, p)
                    if diff:
                        assert exact.vp_int(diff, p) >= required, (p, s, k, n)


def test_gamma_2_modulus_4_counterexample():
    # the congruence printed without the p=2 exception is false: s=2, k=n=1
    assert exact.gamma_p(5, 2) == -3
    assert exact.gamma_p(1, 2) == -1
    assert exact.vp_int(exact.gamma_p(5, 2) - exact.gamma_p(1, 2), 2) == 1


def test_is_prime():
    primes = [2, 3, 5, 7, 11, 13, 97, 101]
    not_primes = [-7, -1, 0, 1, 4, 9, 91, 100]
    assert all(exact.is_prime(p) for p in primes)
    assert not any(exact.is_prime(n) for n in not_primes)
