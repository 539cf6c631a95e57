"""Brute-force verifiers for the congruences behind mirror-map integrality.

Every verifier sweeps an explicit finite parameter box, tests a valuation
bound (membership in c*Z_p is v_p(x) >= v_p(c), vacuous for x = 0) on each
case, and returns a report whose witnesses pinpoint every violation.  Sweeps
are exhaustive by construction: a passing report is a certificate for the
swept box, and every verifier can demonstrably fail on corrupted inputs.
"""

import itertools
import random
from dataclasses import dataclass

from .backend import Rat
from . import exact, gkz
from .reports import CongruenceReport, merge_reports
from .series import TruncatedSeries, is_integral, is_p_integral


def iter_box(bounds):
    """All integer tuples 0 <= t <= bounds componentwise, lexicographic."""
    return itertools.product(*[range(b + 1) for b in bounds])


def iter_cube(bound, d):
    return iter_box((bound,) * d)


def meets_valuation(x, p, c):
    """True when v_p(x) >= c, without computing the full valuation."""
    num, den = x.numerator, x.denominator
    if num == 0:
        return True
    if den % p == 0:
        # reduced fraction, so p divides only the denominator
        return -exact.vp_int(den, p) >= c
    if c <= 0:
        return True
    return num % p ** c == 0


def _record_case(report, params, value, p, required, rank):
    report.cases += 1
    if not meets_valuation(value, p, required):
        report.add_witness(dict(params), value, required, exact.vp_rat(value, p), rank)


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vscale(c, a):
    return tuple(c * x for x in a)


class CoeffMap:
    """Evaluation rule from multi-indices to exact rationals, memoized.

    Negative indices evaluate to 0 when ``zero_extend`` is set (the
    convention every congruence sum here relies on).
    """

    def __init__(self, d, fn, name="custom", zero_extend=True):
        self.d = d
        self.fn = fn
        self.name = name
        self.zero_extend = zero_extend
        self._memo = {}

    def __call__(self, m):
        m = tuple(m)
        v = self._memo.get(m)
        if v is None:
            if self.zero_extend and any(x < 0 for x in m):
                v = 0
            else:
                v = self.fn(m)
            self._memo[m] = v
        return v

    @classmethod
    def from_spec(cls, spec):
        return cls(spec.d, lambda m: gkz.coefficient(spec, m),
                   name=f"coeff{spec.N}")

    @classmethod
    def from_table(cls, path, d):
        """Tabulated map; file lines are "m_1 ... m_d num/den"."""
        table = {}
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != d + 1:
                    raise ValueError(f"{path}:{lineno}: expected {d} indices and a value")
                m = tuple(int(x) for x in parts[:d])
                num, _, den = parts[d].partition("/")
                table[m] = Rat(int(num), int(den) if den else 1)

        def lookup(m):
            if m not in table:
                raise ValueError(f"tabulated map has no value at {m}")
            return table[m]

        return cls(d, lookup, name=f"table:{path}")

    @classmethod
    def seeded(cls, d, seed, low=-9, high=9, nonzero=False):
        """Deterministic pseudorandom integer map (independent of call order)."""

        def draw(m):
            rng = random.Random(f"{seed}:{','.join(map(str, m))}")
            v = rng.randint(low, high)
            while nonzero and v == 0:
                v = rng.randint(low, high)
            return v

        return cls(d, draw, name=f"seeded:{seed}")


def _nonzero_guard(cmap):
    def call(m):
        v = cmap(m)
        if v == 0 and all(x >= 0 for x in m):
            raise ValueError(f"map {cmap.name} vanishes at nonnegative index {m}")
        return v

    return call


# -- the multivariate formal-congruence machine ---------------------------

def congruence_summand(A, a, p, k, K):
    """A(a+pk)A(K-k) - A(a+p(K-k))A(k), zero-extended on negative indices."""
    kk = _vsub(K, k)
    return A(_vadd(a, _vscale(p, k))) * A(kk) - A(_vadd(a, _vscale(p, kk))) * A(k)


def congruence_box_sum(A, a, p, m, K, s):
    """Sum of the summand over the k-box p^s m <= k <= p^s (m+1) - 1."""
    ps = p ** s
    total = 0
    for k in itertools.product(*[range(ps * mi, ps * (mi + 1)) for mi in m]):
        total += congruence_summand(A, a, p, k, K)
    return total


def verify_formal_congruence(A, g, primes=(2, 3), s_max=1, m_bound=2,
                             k_bound=None):
    """Exhaustively check that every box sum lies in p^(s+1) g(m) Z_p.

    ``k_bound`` bounds the K box entries; an int, or a callable of p
    (defaults to 3 * p**(s_max+1), scaling the box with the blocks swept).
    """
    d = A.d
    if g.d != d:
        raise ValueError("A and g have different dimensions")
    if k_bound is None:
        k_bound = lambda p: 3 * p ** (s_max + 1)
    Af = _nonzero_guard(A)
    bounds = {p: (k_bound(p) if callable(k_bound) else k_bound) for p in primes}
    report = CongruenceReport(
        "formal-congruence",
        {"A": A.name, "g": g.name, "primes": list(primes), "s_max": s_max,
         "m_bound": m_bound, "k_bound": bounds})
    for p in primes:
        exact.require_prime(p)
        kb = bounds[p]
        for s in range(s_max + 1):
            ps = p ** s
            for a in itertools.product(range(p), repeat=d):
                for m in iter_cube(m_bound, d):
                    gm = g(m)
                    if gm == 0:
                        raise ValueError(f"map {g.name} vanishes at {m}")
                    required = s + 1 + exact.vp_rat(gm, p)
                    # fix the k-box once per (s, a, m); reuse it for every K
                    kpts = [(k, Af(_vadd(a, _vscale(p, k))), Af(k))
                            for k in itertools.product(
                                *[range(ps * mi, ps * (mi + 1)) for mi in m])]
                    for K in iter_cube(kb, d):
                        total = 0
                        for k, a_pk, a_k in kpts:
                            kk = _vsub(K, k)
                            total += a_pk * A(kk) - A(_vadd(a, _vscale(p, kk))) * a_k
                        _record_case(report,
                                     {"p": p, "s": s, "a": list(a), "m": list(m),
                                      "K": list(K)},
                                     total, p, required, (p, s, a, m, K))
    return report.finish()


def verify_ratio_hypothesis(A, g, primes=(2, 3), s_max=1, n_bound=2):
    """Check the hypotheses of the formal-congruence theorem on a sweep.

    The substance is the ratio-shift hypothesis

        A(v+pu+np^(s+1))/A(v+pu) - A(u+np^s)/A(u) in p^(s+1) g(n)/g(v+pu) Z_p

    over 0 <= v < p, 0 <= u < p^s componentwise; the two divisibility
    hypotheses (A(0) a unit, A(n) in g(n) Z_p) are verified on the same box
    so that a pair (A, g) violating them cannot slip through vacuously.
    """
    d = A.d
    if g.d != d:
        raise ValueError("A and g have different dimensions")
    Af = _nonzero_guard(A)
    report = CongruenceReport(
        "ratio-hypothesis",
        {"A": A.name, "g": g.name, "primes": list(primes), "s_max": s_max,
         "n_bound": n_bound})
    zero = (0,) * d
    for p in primes:
        exact.require_prime(p)
        report.cases += 1
        if exact.vp_rat(Af(zero), p) != 0:
            report.add_witness({"p": p, "hypothesis": "unit-at-zero"},
                               A(zero), 0, exact.vp_rat(A(zero), p),
                               (p, -2, zero, zero, zero))
        for n in iter_cube(n_bound, d):
            gn = g(n)
            if gn == 0:
                raise ValueError(f"map {g.name} vanishes at {n}")
            _record_case(report,
                         {"p": p, "hypothesis": "divisibility", "n": list(n)},
                         Rat(Af(n)) / Rat(gn), p, 0, (p, -1, zero, zero, n))
        for s in range(s_max + 1):
            ps, ps1 = p ** s, p ** (s + 1)
            for v in itertools.product(range(p), repeat=d):
                for u in itertools.product(range(ps), repeat=d):
                    vpu = _vadd(v, _vscale(p, u))
                    base = Rat(Af(vpu))
                    base_u = Rat(Af(u))
                    gv = exact.vp_rat(g(vpu), p)
                    for n in iter_cube(n_bound, d):
                        gn = g(n)
                        if gn == 0:
                            raise ValueError(f"map {g.name} vanishes at {n}")
                        lhs = (Rat(A(_vadd(vpu, _vscale(ps1, n)))) / base
                               - Rat(A(_vadd(u, _vscale(ps, n)))) / base_u)
                        required = s + 1 + exact.vp_rat(gn, p) - gv
                        _record_case(report,
                                     {"p": p, "s": s, "v": list(v), "u": list(u),
                                      "n": list(n)},
                                     lhs, p, required, (p, s, v, u, n))
    return report.finish()


# -- harmonic-number congruences ------------------------------------------

def verify_harmonic_gap(N1, L, p, k_bound=4):
    """The multinomial factor absorbs the harmonic gap created by carrying:

    v_p( B(N1, a+pk) * (H_{floor(L.a/p) + L.k} - H_{L.k}) ) >= 1
    for 0 <= L <= N1 and all digit vectors 0 <= a < p.
    """
    N1 = tuple(N1)
    L = tuple(L)
    d = len(N1)
    if not (len(L) == d and all(0 <= x <= y for x, y in zip(L, N1))):
        raise gkz.InadmissibleWeightError(f"need 0 <= L <= {N1}, got {L}")
    exact.require_prime(p)
    report = CongruenceReport(
        "harmonic-gap", {"N1": list(N1), "L": list(L), "p": p, "k_bound": k_bound})
    for a in itertools.product(range(p), repeat=d):
        la = gkz.dot(L, a)
        for k in iter_cube(k_bound, d):
            b = exact.multinomial(N1, _vadd(a, _vscale(p, k)))
            lk = gkz.dot(L, k)
            gap = exact.harmonic(la // p + lk) - exact.harmonic(lk)
            _record_case(report, {"a": list(a), "k": list(k)}, b * gap, p, 1,
                         (a, k))
    return report.finish()


def verify_scaled_harmonic_gap(spec, L, p, s_max=2, m_bound=4):
    """v_p( B(m) * (H_{p^s L.m} - H_{p^(s+1) L.floor(m/p)}) ) >= -s.

    Holds whenever L is dominated by one of the weight vectors (the only case
    the integrality proof uses); the verifier accepts any L >= 0 so that the
    necessity of that hypothesis is demonstrable (e.g. weights (0,0) with
    L=(0,2), p=2, m=(0,1) fails).
    """
    L = tuple(L)
    if len(L) != spec.d or any(x < 0 for x in L):
        raise ValueError(f"bad weight vector L={L}")
    exact.require_prime(p)
    report = CongruenceReport(
        "scaled-harmonic-gap",
        {"N": [list(v) for v in spec.N], "L": list(L), "p": p, "s_max": s_max,
         "m_bound": m_bound})
    for s in range(s_max + 1):
        ps, ps1 = p ** s, p ** (s + 1)
        for m in iter_cube(m_bound, spec.d):
            b = gkz.coefficient(spec, m)
            i1 = ps * gkz.dot(L, m)
            i2 = ps1 * sum(l * (x // p) for l, x in zip(L, m))
            gap = exact.harmonic(i1) - exact.harmonic(i2)
            _record_case(report, {"s": s, "m": list(m)}, b * gap, p, -s, (s, m))
    return report.finish()


def verify_harmonic_reduction(primes=(2, 3, 5), j_max=500):
    """p H_J is congruent to H_{floor(J/p)} mod p Z_p."""
    report = CongruenceReport("harmonic-reduction",
                              {"primes": list(primes), "j_max": j_max})
    for p in primes:
        exact.require_prime(p)
        for j in range(j_max + 1):
            value = p * exact.harmonic(j) - exact.harmonic(j // p)
            _record_case(report, {"p": p, "J": j}, value, p, 1, (p, j))
    return report.finish()


# -- Dwork's box decomposition (exact identity) ----------------------------

def _block_sum(W, p, s, m):
    total = 0
    ps = p ** s
    for k in itertools.product(*[range(ps * mi, ps * (mi + 1)) for mi in m]):
        total += W(k)
    return total


def verify_dwork_box_identity(Z, W, p, r, d=None):
    """Exact equality of both sides of Dwork's box decomposition.

    LHS: sum of Z(k)W(k) over the box 0 <= k <= (p^r - 1).
    RHS: Z(0) * (block sum of W at level r) plus the telescoped double sum
    over levels s < r of (Z(p^s m) - Z(p^(s+1) floor(m/p))) times the level-s
    block sums.
    """
    exact.require_prime(p)
    if r < 0:
        raise ValueError("level count r must be nonnegative")
    d = d if d is not None else Z.d
    if Z.d != d or W.d != d:
        raise ValueError("map dimension mismatch")
    zero = (0,) * d
    lhs = 0
    for k in itertools.product(range(p ** r), repeat=d):
        lhs += Z(k) * W(k)
    rhs = Z(zero) * _block_sum(W, p, r, zero)
    for s in range(r):
        for m in itertools.product(range(p ** (r - s)), repeat=d):
            dz = Z(_vscale(p ** s, m)) - Z(_vscale(p ** (s + 1), tuple(x // p for x in m)))
            if dz != 0:
                rhs += dz * _block_sum(W, p, s, m)
    report = CongruenceReport(
        "box-decomposition", {"Z": Z.name, "W": W.name, "p": p, "r": r, "d": d})
    report.cases = 1
    if lhs != rhs:
        report.add_witness({"lhs_minus_rhs": True}, Rat(lhs) - Rat(rhs))
    return report.finish()


# -- coefficient-ratio congruences -----------------------------------------

RATIO_CHECKS = ("shift-invariance", "frobenius-scaling", "block-divisibility",
                "unit-ratio")


def verify_coefficient_ratio(spec, p, which, s_max=1, n_bound=2, u_bound=4):
    """Congruence family for ratios of the hypergeometric coefficients.

    which:
      "shift-invariance":  B(v+pu+p^(s+1)n)/B(pu+p^(s+1)n) - B(v+pu)/B(pu)
                           has valuation >= s+1;
      "frobenius-scaling": B(pu+p^(s+1)n)/B(u+p^s n) * B(u)/B(pu) - 1
                           has valuation >= s+1;
      "block-divisibility": B(u+np^s)/B(u) lies in B(n) Z_p for 0 <= u < p^s;
      "unit-ratio":        each single factor B(N^(j), p^s u)/B(N^(j), u)
                           has valuation exactly 0.
    """
    exact.require_prime(p)
    if which not in RATIO_CHECKS:
        raise ValueError(f"unknown ratio check {which!r}; known: {RATIO_CHECKS}")
    d = spec.d
    report = CongruenceReport(
        f"coefficient-ratio/{which}",
        {"N": [list(v) for v in spec.N], "p": p, "s_max": s_max,
         "n_bound": n_bound})
    B = CoeffMap.from_spec(spec)

    if which == "unit-ratio":
        for j, v in enumerate(spec.N):
            for s in range(s_max + 1):
                ps = p ** s
                for u in iter_cube(u_bound, d):
                    num = exact.multinomial(v, _vscale(ps, u))
                    den = exact.multinomial(v, u)
                    val = exact.vp_int(num, p) - exact.vp_int(den, p)
                    report.cases += 1
                    if val != 0:
                        report.add_witness({"j": j, "s": s, "u": list(u)},
                                           Rat(num, den), 0, val, (j, s, u))
        return report.finish()

    for s in range(s_max + 1):
        ps, ps1 = p ** s, p ** (s + 1)
        for u in itertools.product(range(ps), repeat=d):
            pu = _vscale(p, u)
            for n in iter_cube(n_bound, d):
                if which == "shift-invariance":
                    tail = _vscale(ps1, n)
                    for v in itertools.product(range(p), repeat=d):
                        value = (Rat(B(_vadd(_vadd(v, pu), tail))) / Rat(B(_vadd(pu, tail)))
                                 - Rat(B(_vadd(v, pu))) / Rat(B(pu)))
                        _record_case(report,
                                     {"s": s, "v": list(v), "u": list(u), "n": list(n)},
                                     value, p, s + 1, (s, v, u, n))
                elif which == "frobenius-scaling":
                    value = (Rat(B(_vadd(pu, _vscale(ps1, n)))) * Rat(B(u))
                             / (Rat(B(_vadd(u, _vscale(ps, n)))) * Rat(B(pu))) - 1)
                    _record_case(report, {"s": s, "u": list(u), "n": list(n)},
                                 value, p, s + 1, (s, u, n))
                else:  # block-divisibility
                    value = Rat(B(_vadd(u, _vscale(ps, n)))) / Rat(B(u))
                    required = gkz.vp_coefficient(spec, n, p)
                    _record_case(report, {"s": s, "u": list(u), "n": list(n)},
                                 value, p, required, (s, u, n))
    return report.finish()


def _gamma_mod_table(p, modulus, up_to):
    """gamma_p(n) mod modulus for 1 <= n <= up_to, in one incremental pass."""
    vals = [None] * (up_to + 1)
    prod = 1
    for n in range(1, up_to + 1):
        vals[n] = (-prod) % modulus if n % 2 else prod % modulus
        if n % p:
            prod = prod * n % modulus
    return vals


def verify_gamma_facts(primes=(2, 3, 5, 7), n_max=50, s_max=3, k_max=20):
    """Sanity facts about the p-adic gamma function.

    (np)!/n! = (-1)^(np+1) p^n gamma_p(1+np) exactly, and gamma_p(k + n p^s)
    is congruent to gamma_p(k) mod p^s -- except for p = 2, s = 2, where the
    congruence only holds mod 2 (e.g. gamma_2(5) = -3 vs gamma_2(1) = -1):
    the classical modulus-4 exception of the 2-adic gamma function.
    """
    from .backend import factorial

    report = CongruenceReport(
        "gamma-facts", {"primes": list(primes), "n_max": n_max, "s_max": s_max,
                        "k_max": k_max})
    for p in primes:
        exact.require_prime(p)
        for n in range(1, n_max + 1):
            lhs = factorial(n * p) // factorial(n)
            rhs = (-1) ** (n * p + 1) * p ** n * exact.gamma_p(1 + n * p, p)
            report.cases += 1
            if lhs != rhs:
                report.add_witness({"p": p, "fact": "factorial-ratio", "n": n},
                                   Rat(lhs - rhs), None, None, (p, 0, 0, n))
        for s in range(1, s_max + 1):
            required = s - 1 if (p == 2 and s == 2) else s
            modulus = p ** required
            table = _gamma_mod_table(p, modulus, k_max + n_max * p ** s)
            for n in range(1, n_max + 1):
                for k in range(1, k_max + 1):
                    report.cases += 1
                    if (table[k + n * p ** s] - table[k]) % modulus:
                        diff = exact.gamma_p(k + n * p ** s, p) - exact.gamma_p(k, p)
                        report.add_witness(
                            {"p": p, "fact": "shift-congruence", "k": k,
                             "n": n, "s": s},
                            diff, required, exact.vp_int(diff, p), (p, s, n, k))
    return report.finish()


# -- series-level checks ----------------------------------------------------

def check_dieudonne_dwork(series, p):
    """Forward direction of the Dieudonne-Dwork criterion on one series:

    compute S(z^p)/S(z)^p and test membership in 1 + p sum z_i Z_p[[z]].
    """
    if series.constant_term != 1:
        raise ValueError("Dieudonne-Dwork needs constant term 1")
    exact.require_prime(p)
    quotient = series.frobenius(p) * (series ** p).inverse()
    rep = is_p_integral(quotient, p, "1+pzZp")
    rep.check = "dieudonne-dwork"
    rep.params = {"p": p, "d": series.nvars, "D": series.trunc}
    return rep


def check_reduction(f, g, p):
    """Membership of F(z)G(z^p) - pF(z^p)G(z) in p sum z_i Z_p[[z]]."""
    if f.constant_term != 1:
        raise ValueError("reduction needs F with constant term 1")
    if g.constant_term != 0:
        raise ValueError("reduction needs G with constant term 0")
    exact.require_prime(p)
    e = f * g.frobenius(p) - (f.frobenius(p) * g).scale(p)
    rep = is_p_integral(e, p, "pzZp")
    rep.check = "reduction"
    rep.params = {"p": p, "d": f.nvars, "D": f.trunc}
    return rep


def verify_dieudonne_dwork_sweep(primes=(2, 3), d=2, degree=6, seed=0, count=5):
    """Forward direction on seeded random integer series with constant term 1."""
    reports = []
    for p in primes:
        for instance in range(count):
            rng = random.Random(f"dd:{seed}:{p}:{instance}")
            entries = {}
            from .series import monomials

            for m in monomials(d, degree):
                if sum(m) == 0:
                    entries[m] = 1
                else:
                    c = rng.randint(-9, 9)
                    if c:
                        entries[m] = c
            s = TruncatedSeries(d, degree, entries)
            rep = check_dieudonne_dwork(s, p)
            rep.params["instance"] = instance
            reports.append(rep)
    return merge_reports("dieudonne-dwork",
                         {"primes": list(primes), "d": d, "D": degree,
                          "seed": seed, "count": count}, reports)


# -- the reduction coefficients C(a + pK) -----------------------------------

def reduction_coefficient(spec, L, p, a, K):
    """Coefficient of z^(a+pK) in F(z)G_L(z^p) - pF(z^p)G_L(z), as a closed sum:

    sum over 0 <= k <= K of B(a+pk)B(K-k)(H_{L.(K-k)} - p H_{L.a + p L.k}).
    """
    L, a, K = tuple(L), tuple(a), tuple(K)
    exact.require_prime(p)
    if any(not 0 <= x < p for x in a):
        raise ValueError("need digit vector 0 <= a < p")
    if any(x < 0 for x in K):
        raise ValueError("need K >= 0")
    la = gkz.dot(L, a)
    total = Rat(0)
    for k in iter_box(K):
        b = gkz.coefficient(spec, _vadd(a, _vscale(p, k))) \
            * gkz.coefficient(spec, _vsub(K, k))
        if b == 0:
            continue
        gap = exact.harmonic(gkz.dot(L, _vsub(K, k))) \
            - p * exact.harmonic(la + p * gkz.dot(L, k))
        total += b * gap
    return total


def check_reduction_coefficients(spec, L, p, k_bound=2, allow_inadmissible=False):
    """Sweep of v_p(C(a+pK)) >= 1 over all digit vectors a and K in a box."""
    L = tuple(L)
    if not allow_inadmissible:
        gkz.require_admissible(spec, L)
    exact.require_prime(p)
    report = CongruenceReport(
        "reduction-coefficients",
        {"N": [list(v) for v in spec.N], "L": list(L), "p": p,
         "k_bound": k_bound})
    for a in itertools.product(range(p), repeat=spec.d):
        for K in iter_cube(k_bound, spec.d):
            value = reduction_coefficient(spec, L, p, a, K)
            _record_case(report, {"a": list(a), "K": list(K)}, value, p, 1, (a, K))
    return report.finish()


# -- end-to-end pipeline -----------------------------------------------------

def _pipeline_target(spec, L, degree, substitution):
    f = gkz.gkz_series(spec, degree)
    g = gkz.harmonic_series(spec, L, degree)
    if substitution is not None:
        f = f.specialize(substitution)
        g = g.specialize(substitution)
    return f, g


def check_pipeline(spec, L=None, primes=(2, 3, 5), degree=6, substitution=None,
                   allow_inadmissible=False):
    """Integrality of the mirror-type map plus the reduction congruence per prime.

    With a weight vector L (argument or spec.L): checks exp(G_L/F).  Without
    one: checks every canonical coordinate z_i exp(G_i/F) instead, pairing
    the integrality test with the reduction congruence on (F, G_i).
    """
    if L is None:
        L = spec.L
    reports = []
    if L is not None:
        L = tuple(L)
        if not allow_inadmissible:
            gkz.require_admissible(spec, L)
        f, g = _pipeline_target(spec, L, degree, substitution)
        q = gkz.series_ratio_exp(g, f)
        rep = is_integral(q)
        rep.params["target"] = f"mirror-type L={list(L)}"
        reports.append(rep)
        for p in primes:
            rep = check_reduction(f, g, p)
            rep.params["target"] = f"reduction L={list(L)} p={p}"
            reports.append(rep)
    else:
        f0 = gkz.gkz_series(spec, degree)
        f = f0.specialize(substitution) if substitution is not None else f0
        for i in range(spec.d):
            g0 = gkz.log_companion(spec, i, degree)
            g = g0.specialize(substitution) if substitution is not None else g0
            # specialize the whole coordinate: the image of z_i may be a monomial
            q = TruncatedSeries.variable(spec.d, degree, i) \
                * gkz.series_ratio_exp(g0, f0)
            if substitution is not None:
                q = q.specialize(substitution)
            rep = is_integral(q)
            rep.params["target"] = f"canonical-coordinate i={i + 1}"
            reports.append(rep)
            for p in primes:
                rep = check_reduction(f, g, p)
                rep.params["target"] = f"reduction i={i + 1} p={p}"
                reports.append(rep)
    params = {"N": [list(v) for v in spec.N],
              "L": list(L) if L is not None else None,
              "primes": list(primes), "D": degree,
              "specialized": substitution is not None}
    merged = CongruenceReport("pipeline", params)
    for r in reports:
        merged.cases += r.cases
        for w in r.witnesses:
            w.params = {"target": r.params.get("target", r.check), **w.params}
            merged.witnesses.append(w)
    return merged


# -- sweep bundles ------------------------------------------------------------

@dataclass
class SweepRange:
    """Bounds for the stock verification sweeps (boxes are cubes, 0..bound)."""

    primes: tuple = (2, 3)
    s_max: int = 1
    d: int = 2
    box: int = 4
    m_bound: int = 2
    degree: int = 6
    seed: int = 0
    count: int = 5
    r: int = 3
    j_max: int = 500


LEMMA_TOKENS = ("dieudonne-dwork", "reduction", "comb", "lemma333", "lemma11",
                "theorem1", "theorem1-iii", "section8", "gamma-p",
                "harmonic-reduction")

_DEFAULT_RATIO_SPEC = lambda: gkz.GkzSpec(2, ((3, 3),))
_DEFAULT_THEOREM_SPEC = lambda: gkz.GkzSpec(2, ((2, 1),))


def run_verifier(name, rng=None, spec=None, L=None):
    """Dispatch one of the stock lemma sweeps by its CLI token."""
    rng = rng or SweepRange()
    if name == "dieudonne-dwork":
        return verify_dieudonne_dwork_sweep(rng.primes, rng.d, rng.degree,
                                            rng.seed, rng.count)
    if name == "reduction":
        spec = spec or _DEFAULT_RATIO_SPEC()
        weights = [tuple(L)] if L is not None else gkz.admissible_weights(spec.N[0])
        f = gkz.gkz_series(spec, rng.degree)
        reports = []
        for w in weights:
            g = gkz.harmonic_series(spec, w, rng.degree)
            for p in rng.primes:
                rep = check_reduction(f, g, p)
                rep.params["L"] = list(w)
                reports.append(rep)
        return merge_reports("reduction-sweep",
                             {"N": [list(v) for v in spec.N], "D": rng.degree,
                              "primes": list(rng.primes)}, reports)
    if name == "comb":
        reports = []
        for i in range(rng.count):
            Z = CoeffMap.seeded(rng.d, f"{rng.seed}:Z:{i}")
            W = CoeffMap.seeded(rng.d, f"{rng.seed}:W:{i}")
            for p in rng.primes:
                reports.append(verify_dwork_box_identity(Z, W, p, rng.r, rng.d))
        return merge_reports("box-decomposition-sweep",
                             {"seed": rng.seed, "count": rng.count, "r": rng.r,
                              "d": rng.d, "primes": list(rng.primes)}, reports)
    if name == "lemma333":
        spec = spec or _DEFAULT_RATIO_SPEC()
        n1 = spec.N[0]
        weights = [tuple(L)] if L is not None else gkz.admissible_weights(n1)
        reports = [verify_harmonic_gap(n1, w, p, rng.box)
                   for w in weights for p in rng.primes]
        return merge_reports("harmonic-gap-sweep",
                             {"N1": list(n1), "primes": list(rng.primes),
                              "box": rng.box}, reports)
    if name == "lemma11":
        spec = spec or _DEFAULT_RATIO_SPEC()
        if L is not None:
            weights = [tuple(L)]
        else:
            weights = sorted({w for v in spec.N for w in gkz.admissible_weights(v)})
        reports = [verify_scaled_harmonic_gap(spec, w, p, rng.s_max, rng.box)
                   for w in weights for p in rng.primes]
        return merge_reports("scaled-harmonic-gap-sweep",
                             {"N": [list(v) for v in spec.N],
                              "primes": list(rng.primes), "s_max": rng.s_max,
                              "box": rng.box}, reports)
    if name == "theorem1":
        spec = spec or _DEFAULT_THEOREM_SPEC()
        cmap = CoeffMap.from_spec(spec)
        return verify_formal_congruence(cmap, cmap, rng.primes, rng.s_max,
                                        rng.m_bound)
    if name == "theorem1-iii":
        spec = spec or _DEFAULT_THEOREM_SPEC()
        cmap = CoeffMap.from_spec(spec)
        return verify_ratio_hypothesis(cmap, cmap, rng.primes, rng.s_max,
                                       rng.m_bound)
    if name == "section8":
        spec = spec or _DEFAULT_RATIO_SPEC()
        reports = [verify_coefficient_ratio(spec, p, which, rng.s_max,
                                            rng.m_bound, rng.box)
                   for which in RATIO_CHECKS for p in rng.primes]
        return merge_reports("coefficient-ratio-sweep",
                             {"N": [list(v) for v in spec.N],
                              "primes": list(rng.primes), "s_max": rng.s_max},
                             reports)
    if name == "gamma-p":
        return verify_gamma_facts(rng.primes)
    if name == "harmonic-reduction":
        return verify_harmonic_reduction(rng.primes, rng.j_max)
    raise ValueError(f"unknown lemma token {name!r}; known: {', '.join(LEMMA_TOKENS)}")
