"""Truncated multivariate formal power series over exact rationals.

A series is a sparse map from exponent vectors (tuples of nonnegative ints,
total degree <= trunc) to exact rational coefficients; absent keys are zero
and zero coefficients are never stored.  All operations stay inside the
truncation ring: monomials whose total degree would exceed the bound are
dropped, which is sound because every construction used here (products,
exp/log, variable substitutions with weights >= 1) never lowers total degree.

``LogSeries`` extends the ring by formal symbols standing for log z_i, enough
to apply the hypergeometric differential operators to logarithmic solutions.
"""

import itertools
import operator
import re

from .backend import Rat, rat_parts
from . import exact
from .reports import CongruenceReport


def grlex_key(m):
    return (sum(m), m)


def monomials(nvars, degree):
    """All exponent vectors with total degree <= degree, in grlex order."""
    out = [m for m in itertools.product(range(degree + 1), repeat=nvars)
           if sum(m) <= degree]
    out.sort(key=grlex_key)
    return out


class TruncatedSeries:
    __slots__ = ("nvars", "trunc", "coeffs")

    def __init__(self, nvars, trunc, entries=()):
        if nvars < 1:
            raise ValueError("need at least one variable")
        if trunc < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.nvars = nvars
        self.trunc = trunc
        coeffs = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for m, c in items:
            m = tuple(m)
            if len(m) != nvars:
                raise ValueError(f"exponent {m} has dimension {len(m)}, expected {nvars}")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            if sum(m) > trunc:
                raise ValueError(f"monomial {m} exceeds truncation degree {trunc}")
            if m in coeffs:
                raise ValueError(f"duplicate monomial {m}")
            if c != 0:
                coeffs[m] = c
        self.coeffs = coeffs

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, nvars, trunc):
        return cls(nvars, trunc)

    @classmethod
    def constant(cls, nvars, trunc, value):
        return cls(nvars, trunc, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars, trunc):
        return cls.constant(nvars, trunc, 1)

    @classmethod
    def variable(cls, nvars, trunc, i):
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range")
        if trunc < 1:
            raise ValueError("truncation degree too small for a variable")
        m = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, trunc, {m: 1})

    def _raw(self, coeffs):
        s = TruncatedSeries.__new__(TruncatedSeries)
        s.nvars, s.trunc, s.coeffs = self.nvars, self.trunc, coeffs
        return s

    # -- inspection ----------------------------------------------------

    def coefficient(self, m):
        return self.coeffs.get(tuple(m), 0)

    @property
    def constant_term(self):
        return self.coeffs.get((0,) * self.nvars, 0)

    def terms(self):
        """(monomial, coefficient) pairs in grlex order."""
        return [(m, self.coeffs[m]) for m in sorted(self.coeffs, key=grlex_key)]

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.nvars == other.nvars and self.trunc == other.trunc
                and self.coeffs == other.coeffs)

    __hash__ = None

    def __repr__(self):
        return f"TruncatedSeries(d={self.nvars}, D={self.trunc}, {self.render()})"

    def render(self, names=None):
        if not self.coeffs:
            return "0"
        if names is None:
            names = [f"z{i + 1}" for i in range(self.nvars)]
        parts = []
        for m, c in self.terms():
            factors = [f"{names[i]}^{e}" if e > 1 else names[i]
                       for i, e in enumerate(m) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    # -- ring operations -----------------------------------------------

    def _compat(self, other):
        if self.nvars != other.nvars or self.trunc != other.trunc:
            raise ValueError("series have mismatched dimension or truncation degree")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.nvars, self.trunc, other)
        self._compat(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = out.get(m, 0) + c
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if c == 0:
            return self._raw({})
        return self._raw({m: c * v for m, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._compat(other)
        # iterate the other factor in increasing degree so each row stops early
        rhs = sorted(((sum(m), m, c) for m, c in other.coeffs.items()))
        out = {}
        bound = self.trunc
        for m1, c1 in self.coeffs.items():
            room = bound - sum(m1)
            for deg2, m2, c2 in rhs:
                if deg2 > room:
                    break
                k = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(k, 0) + c1 * c2
                if v == 0:
                    out.pop(k, None)
                else:
                    out[k] = v
        return self._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("series powers take nonnegative integer exponents")
        result = TruncatedSeries.one(self.nvars, self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, new_trunc):
        if new_trunc > self.trunc:
            raise ValueError("cannot raise the truncation degree of a series")
        out = {m: c for m, c in self.coeffs.items() if sum(m) <= new_trunc}
        s = TruncatedSeries.__new__(TruncatedSeries)
        s.nvars, s.trunc, s.coeffs = self.nvars, new_trunc, out
        return s

    def inverse(self):
        """Multiplicative inverse; needs an invertible (nonzero) constant term."""
        c0 = self.constant_term
        if c0 == 0:
            raise ValueError("series with zero constant term has no inverse")
        r = Rat(1) / Rat(c0)
        rest = (TruncatedSeries.one(self.nvars, self.trunc) - self.scale(r))
        acc = TruncatedSeries.one(self.nvars, self.trunc)
        pw = TruncatedSeries.one(self.nvars, self.trunc)
        for _ in range(self.trunc):
            pw = pw * rest
            if pw.is_zero():
                break
            acc = acc + pw
        return acc.scale(r)

    def exp(self):
        """exp of a series with zero constant term, by its defining expansion."""
        if self.constant_term != 0:
            raise ValueError("exp needs a zero constant term")
        acc = TruncatedSeries.one(self.nvars, self.trunc)
        term = TruncatedSeries.one(self.nvars, self.trunc)
        for n in range(1, self.trunc + 1):
            term = (term * self).scale(Rat(1, n))
            if term.is_zero():
                break
            acc = acc + term
        return acc

    def log(self):
        """log of a series with constant term 1, by its defining expansion."""
        if self.constant_term != 1:
            raise ValueError("log needs constant term 1")
        t = self - TruncatedSeries.one(self.nvars, self.trunc)
        acc = TruncatedSeries.zero(self.nvars, self.trunc)
        pw = TruncatedSeries.one(self.nvars, self.trunc)
        for n in range(1, self.trunc + 1):
            pw = pw * t
            if pw.is_zero():
                break
            acc = acc + pw.scale(Rat(1 if n % 2 else -1, n))
        return acc

    def frobenius(self, p):
        """Substitute z_i -> z_i**p for every variable."""
        if not isinstance(p, int) or p < 1:
            raise ValueError("frobenius exponent must be a positive integer")
        out = {}
        for m, c in self.coeffs.items():
            if p * sum(m) <= self.trunc:
                out[tuple(p * e for e in m)] = c
        return self._raw(out)

    def theta(self, i):
        """Apply the logarithmic derivative z_i d/dz_i."""
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range")
        out = {}
        for m, c in self.coeffs.items():
            if m[i]:
                out[m] = m[i] * c
        return self._raw(out)

    def specialize(self, sub):
        """Apply a variable substitution, landing in the surviving variables."""
        if sub.nvars != self.nvars:
            raise ValueError("substitution dimension mismatch")
        out = {}
        zero_out = (0,) * sub.out_nvars
        for m, c in self.coeffs.items():
            e_acc = list(zero_out)
            factor = c
            for i, mi in enumerate(m):
                if not mi:
                    continue
                ci, ei = sub.images[i]
                if ci != 1:
                    factor *= ci ** mi
                for j, ej in enumerate(ei):
                    if ej:
                        e_acc[j] += mi * ej
            if sum(e_acc) > self.trunc:
                continue
            k = tuple(e_acc)
            v = out.get(k, 0) + factor
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        s = TruncatedSeries.__new__(TruncatedSeries)
        s.nvars, s.trunc, s.coeffs = sub.out_nvars, self.trunc, out
        return s

    def compose(self, args):
        """Evaluate at a vector of series, each with zero constant term."""
        args = list(args)
        if len(args) != self.nvars:
            raise ValueError("composition needs one series per variable")
        nv, tr = args[0].nvars, args[0].trunc
        for a in args:
            if a.nvars != nv or a.trunc != tr:
                raise ValueError("composition arguments must share dimension and truncation")
            if a.constant_term != 0:
                raise ValueError("composition arguments need zero constant terms")
        if self.trunc < tr:
            raise ValueError("outer series is truncated below the requested degree")
        pows = [{0: TruncatedSeries.one(nv, tr), 1: a} for a in args]

        def power(i, e):
            cache = pows[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * cache[1]
            return cache[e]

        acc = TruncatedSeries.zero(nv, tr)
        for m in sorted(self.coeffs, key=grlex_key):
            if sum(m) > tr:
                break
            term = TruncatedSeries.constant(nv, tr, self.coeffs[m])
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return acc

    # -- serialization -------------------------------------------------

    def to_record(self):
        terms = []
        for m, c in self.terms():
            num, den = rat_parts(c)
            terms.append({"m": list(m), "num": str(num), "den": str(den)})
        return {"d": self.nvars, "D": self.trunc, "terms": terms}

    @classmethod
    def from_record(cls, rec):
        entries = [(tuple(t["m"]), Rat(int(t["num"]), int(t["den"])))
                   for t in rec["terms"]]
        return cls(rec["d"], rec["D"], entries)


class Substitution:
    """Per-variable substitution rules: keep, or send z_i to M * z_j**N.

    Equating z_i = z_j is the weighted rule with M = N = 1.  The directed
    graph i -> j must be acyclic and at least one variable must be kept;
    chains resolve transitively.  Weights N >= 1 never decrease total degree,
    so truncated series specialize soundly.
    """

    def __init__(self, nvars, rules=None):
        self.nvars = nvars
        self.rules = {}
        for i, (m, n, j) in dict(rules or {}).items():
            if not 0 <= i < nvars or not 0 <= j < nvars:
                raise ValueError("substitution variable index out of range")
            try:
                m, n = operator.index(m), operator.index(n)
            except TypeError:
                raise ValueError("substitution coefficient and exponent must be integers")
            if m == 0:
                raise ValueError("substitution coefficient must be nonzero")
            if n < 1:
                raise ValueError("substitution exponent must be a positive integer")
            self.rules[i] = (m, n, j)
        for i in self.rules:
            seen = set()
            j = i
            while j in self.rules:
                if j in seen:
                    raise ValueError("cyclic substitution")
                seen.add(j)
                j = self.rules[j][2]
        self.survivors = [i for i in range(nvars) if i not in self.rules]
        if not self.survivors:
            raise ValueError("substitution must keep at least one variable")
        self._out_index = {v: k for k, v in enumerate(self.survivors)}
        self.out_nvars = len(self.survivors)
        self.images = [self._resolve(i, set()) for i in range(nvars)]

    def _resolve(self, i, seen):
        if i in seen:
            raise ValueError("cyclic substitution")
        if i not in self.rules:
            e = [0] * self.out_nvars
            e[self._out_index[i]] = 1
            return (1, tuple(e))
        m, n, j = self.rules[i]
        seen = seen | {i}
        cj, ej = self._resolve(j, seen)
        return (m * cj ** n, tuple(n * e for e in ej))

    @classmethod
    def identity(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def equate(cls, nvars, i, j):
        return cls(nvars, {i: (1, 1, j)})

    _STMT = re.compile(
        r"^z(?P<lhs>\d+)\s*=\s*(?:(?P<coef>[+-]?\d+)\s*\*\s*)?z(?P<rhs>\d+)"
        r"(?:\s*\^\s*(?P<pow>\d+))?$")

    @classmethod
    def parse(cls, text, nvars):
        """Parse "z1=z2" / "z1=2*z2^3" statements separated by ';' or ','."""
        rules = {}
        for stmt in re.split(r"[;,]", text):
            stmt = stmt.strip()
            if not stmt:
                continue
            m = cls._STMT.match(stmt)
            if not m:
                raise ValueError(f"cannot parse substitution {stmt!r}")
            lhs = int(m.group("lhs")) - 1
            rhs = int(m.group("rhs")) - 1
            coef = int(m.group("coef")) if m.group("coef") else 1
            power = int(m.group("pow")) if m.group("pow") else 1
            if lhs in rules:
                raise ValueError(f"duplicate substitution for z{lhs + 1}")
            rules[lhs] = (coef, power, rhs)
        return cls(nvars, rules)


class LogSeries:
    """Finite combination sum_e l^e * S_e(z) with l_i a symbol for log z_i.

    ``trusted`` records the total degree up to which the stored coefficients
    are reliable; applying a differential operator that multiplies by a
    variable lowers it by one.
    """

    def __init__(self, nvars, trunc, parts=None, trusted=None):
        self.nvars = nvars
        self.trunc = trunc
        self.parts = {}
        for e, s in (parts or {}).items():
            e = tuple(e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ValueError(f"bad log exponent {e}")
            if s.nvars != nvars or s.trunc != trunc:
                raise ValueError("log-series part has mismatched dimension or truncation")
            if not s.is_zero():
                self.parts[e] = s
        self.trusted = trunc if trusted is None else trusted

    @classmethod
    def from_series(cls, s, trusted=None):
        return cls(s.nvars, s.trunc, {(0,) * s.nvars: s}, trusted)

    @classmethod
    def log_times(cls, i, s, trusted=None):
        """The product (log z_i) * s as a LogSeries."""
        e = tuple(1 if j == i else 0 for j in range(s.nvars))
        return cls(s.nvars, s.trunc, {e: s}, trusted)

    def part(self, e):
        e = tuple(e)
        return self.parts.get(e, TruncatedSeries.zero(self.nvars, self.trunc))

    @property
    def plain(self):
        """The log-free part."""
        return self.part((0,) * self.nvars)

    def _with(self, parts, trusted=None):
        return LogSeries(self.nvars, self.trunc, parts,
                         self.trusted if trusted is None else trusted)

    def _merge(self, acc, e, s):
        if e in acc:
            acc[e] = acc[e] + s
        else:
            acc[e] = s

    def theta(self, i):
        """z_i d/dz_i, using theta_i(l_j) = 1 if i == j else 0."""
        acc = {}
        for e, s in self.parts.items():
            self._merge(acc, e, s.theta(i))
            if e[i]:
                down = tuple(x - 1 if j == i else x for j, x in enumerate(e))
                self._merge(acc, down, s.scale(e[i]))
        return self._with(acc)

    def __add__(self, other):
        if self.nvars != other.nvars or self.trunc != other.trunc:
            raise ValueError("log-series mismatch")
        acc = dict(self.parts)
        for e, s in other.parts.items():
            self._merge(acc, e, s)
        return self._with(acc, min(self.trusted, other.trusted))

    def __neg__(self):
        return self._with({e: -s for e, s in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._with({e: s.scale(c) for e, s in self.parts.items()})

    def mul_series(self, s):
        return self._with({e: part * s for e, part in self.parts.items()})

    def mul_var(self, i):
        v = TruncatedSeries.variable(self.nvars, self.trunc, i)
        return self.mul_series(v)

    def is_zero_to(self, degree):
        """True when every stored coefficient of total degree <= degree vanishes."""
        for s in self.parts.values():
            if any(sum(m) <= degree for m in s.coeffs):
                return False
        return True

    def max_degree_checked(self):
        return min(self.trusted, self.trunc)


# -- integrality membership tests ---------------------------------------

#: mode -> (required constant term or None for unrestricted, min valuation
#: required of every nonconstant coefficient)
P_INTEGRALITY_MODES = {
    "Zp": (None, 0),
    "1+zZp": (1, 0),
    "pzZp": (0, 1),
    "1+pzZp": (1, 1),
}


def is_p_integral(series, p, mode):
    """Membership report for the p-adic coefficient classes of ``mode``.

    Modes: "Zp" (all of Z_p[[z]]), "1+zZp" (constant term 1), "pzZp"
    (constant term 0, every other coefficient divisible by p), "1+pzZp".
    """
    exact.require_prime(p)
    if mode not in P_INTEGRALITY_MODES:
        raise ValueError(f"unknown p-integrality mode {mode!r}")
    const_required, min_val = P_INTEGRALITY_MODES[mode]
    report = CongruenceReport(
        "p-integrality",
        {"p": p, "mode": mode, "d": series.nvars, "D": series.trunc})
    zero = (0,) * series.nvars
    const = series.constant_term
    report.cases += 1
    if mode == "Zp":
        if exact.vp_rat(Rat(const), p) < 0:
            report.add_witness({"m": list(zero)}, const, 0, exact.vp_rat(Rat(const), p))
    elif const != const_required:
        report.add_witness({"m": list(zero)}, const, None, None)
    for m, c in series.terms():
        if m == zero:
            continue
        report.cases += 1
        v = exact.vp_rat(Rat(c), p)
        if v < min_val:
            report.add_witness({"m": list(m)}, c, min_val, v)
    return report


def is_integral(series):
    """Exact membership in Z[[z]]: every reduced coefficient has denominator 1."""
    report = CongruenceReport(
        "integrality", {"d": series.nvars, "D": series.trunc})
    for m, c in series.terms():
        report.cases += 1
        num, den = rat_parts(c)
        if den != 1:
            q = _smallest_prime_factor(den)
            report.add_witness({"m": list(m)}, c, 0, -exact.vp_int(den, q))
    return report


def _smallest_prime_factor(n):
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def invert_map(qs):
    """Compositional inverse of a map q_i = z_i * (1 + higher order terms).

    Fixed-point iteration z <- q * (1/u)(z) with u_i the unit cofactor of
    q_i; each pass is exact one total degree further, so trunc - 1 passes
    suffice.  The cofactors are only known one degree below the truncation
    bound, which is harmless: their missing top coefficients influence the
    product q_i * w_i(z) beyond the truncation degree only.
    """
    qs = list(qs)
    d = len(qs)
    if d == 0:
        raise ValueError("empty map")
    trunc = qs[0].trunc
    for i, q in enumerate(qs):
        if q.nvars != d or q.trunc != trunc:
            raise ValueError("map components must share dimension and truncation")
        unit = tuple(1 if j == i else 0 for j in range(d))
        if q.coefficient(unit) != 1:
            raise ValueError(f"component {i} is not normalized (coefficient of z_{i + 1} must be 1)")
        if any(m[i] == 0 for m in q.coeffs):
            raise ValueError(f"component {i} is not divisible by z_{i + 1}")
    cofactor_inverses = []
    for i, q in enumerate(qs):
        shifted = {tuple(e - 1 if j == i else e for j, e in enumerate(m)): c
                   for m, c in q.coeffs.items()}
        u = TruncatedSeries(d, trunc, shifted)
        cofactor_inverses.append(u.inverse())
    # iterate z <- q * w(z) in the target coordinates, starting at the identity
    variables = [TruncatedSeries.variable(d, trunc, i) for i in range(d)]
    zs = variables
    for _ in range(max(trunc - 1, 0)):
        nxt = [v * w.compose(zs) for v, w in zip(variables, cofactor_inverses)]
        if nxt == zs:
            break
        zs = nxt
    return zs
