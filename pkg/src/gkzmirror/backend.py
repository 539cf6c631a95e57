"""Exact rational arithmetic backend.

Every coefficient in this package is an exact rational.  The hot loops are
dominated by big-integer/rational operations, so when the GMP-backed gmpy2
extension is importable we use its ``mpq``/``mpz``/``fac`` kernels; otherwise
we fall back to the pure-Python ``fractions.Fraction``.  Both backends are
exact and produce identical results; ``benchmarks/compare_backends.py`` times
them against each other.

Set ``GKZMIRROR_BACKEND=python`` (or ``gmp``) to force a backend.
"""

import math
import os
from fractions import Fraction


def _python_backend():
    def remove_factor(n, p):
        # (unit, multiplicity) with n = unit * p**multiplicity, n != 0
        e = 0
        while True:
            q, r = divmod(n, p)
            if r:
                return n, e
            n = q
            e += 1

    return Fraction, math.factorial, remove_factor


def _gmp_backend():
    import gmpy2

    def remove_factor(n, p):
        unit, e = gmpy2.remove(gmpy2.mpz(n), p)
        return unit, e

    return gmpy2.mpq, gmpy2.fac, remove_factor


_choice = os.environ.get("GKZMIRROR_BACKEND", "").strip().lower()
if _choice in ("", "auto"):
    try:
        Rat, factorial, remove_factor = _gmp_backend()
        BACKEND = "gmp"
    except ImportError:
        Rat, factorial, remove_factor = _python_backend()
        BACKEND = "python"
elif _choice == "gmp":
    Rat, factorial, remove_factor = _gmp_backend()
    BACKEND = "gmp"
elif _choice == "python":
    Rat, factorial, remove_factor = _python_backend()
    BACKEND = "python"
else:
    raise ImportError(f"unknown GKZMIRROR_BACKEND {_choice!r} (use 'gmp' or 'python')")


def rat_parts(x):
    """Return (numerator, denominator) of a rational-like value as plain ints."""
    return int(x.numerator), int(x.denominator)


def is_integer(x):
    """True when the rational value x has denominator 1."""
    return x.denominator == 1
