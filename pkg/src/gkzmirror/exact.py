"""Exact integer/rational number theory primitives.

p-adic valuations, factorial valuations via Legendre-style floor sums,
multinomial coefficients of weighted multi-indices, harmonic numbers and the
p-adic gamma function.  Everything here is a pure function of its arguments;
the only caches are append-only memo tables, safe under the GIL.
"""

import math

from .backend import Rat, factorial, remove_factor

#: Valuation of zero.  Tests of the shape v_p(x) >= c pass vacuously for x = 0.
INF = math.inf


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (the primes here are tiny)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def vp_int(n, p):
    """Largest e with p**e dividing n; INF for n = 0."""
    require_prime(p)
    if n == 0:
        return INF
    return remove_factor(n, p)[1]


def vp_rat(q, p):
    """v_p of a rational: valuation of the numerator minus the denominator's."""
    require_prime(p)
    num, den = q.numerator, q.denominator
    if num == 0:
        return INF
    return remove_factor(num, p)[1] - remove_factor(den, p)[1]


def vp_factorial(n: int, p: int) -> int:
    """v_p(n!) as the floor sum over powers of p, without forming n!."""
    require_prime(p)
    if n < 0:
        raise ValueError("factorial of a negative integer")
    total = 0
    q = n // p
    while q:
        total += q
        q //= p
    return total


def multinomial(weights, idx):
    """(sum_i w_i m_i)! / prod_i (m_i!)**w_i for m >= 0, and 0 otherwise.

    This is the multinomial coefficient of the partition that repeats each
    m_i exactly w_i times, hence always a nonnegative integer.  Negative
    entries zero-extend (factorials are *not* read through the gamma
    function).
    """
    if len(weights) != len(idx):
        raise ValueError("weights and index have different dimensions")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    if any(m < 0 for m in idx):
        return 0
    top = factorial(sum(w * m for w, m in zip(weights, idx)))
    for w, m in zip(weights, idx):
        if w and m > 1:
            top //= factorial(m) ** w
    return top


def vp_multinomial(weights, idx, p):
    """v_p of multinomial(weights, idx) from floor sums only (m >= 0)."""
    require_prime(p)
    if any(m < 0 for m in idx):
        return INF
    top = sum(w * m for w, m in zip(weights, idx))
    total = 0
    q = p
    while q <= top:
        total += top // q - sum(w * (m // q) for w, m in zip(weights, idx))
        q *= p
    return total


_harmonic_memo = [Rat(0)]


def harmonic(m: int):
    """m-th harmonic number sum(1/j, j=1..m) as an exact rational; H_0 = 0."""
    if m < 0:
        raise ValueError("harmonic number of a negative index")
    memo = _harmonic_memo
    while len(memo) <= m:
        n = len(memo)
        memo.append(memo[n - 1] + Rat(1, n))
    return memo[m]


def gamma_p(n: int, p: int) -> int:
    """Morita's p-adic gamma function at a positive integer.

    gamma_p(n) = (-1)**n * prod of k in [1, n) coprime to p.
    """
    require_prime(p)
    if n < 1:
        raise ValueError("gamma_p is defined on positive integers")
    prod = 1
    for k in range(1, n):
        if k % p:
            prod *= k
    return -prod if n % 2 else prod
