"""Builders for the hypergeometric series family and its mirror-type maps.

A problem instance is a list of nonnegative weight vectors N^(1..k) over d
variables.  The base series has Taylor coefficients that are products of
multinomial coefficients of the weighted index; its logarithmic companions
carry harmonic-number factors.  Canonical coordinates are z_i * exp(G_i/F),
mirror-type maps are exp(G_L/F) for a weight vector L.
"""

import functools
from collections import namedtuple
from dataclasses import dataclass

from . import exact
from .series import LogSeries, Substitution, TruncatedSeries, monomials, grlex_key


class InadmissibleWeightError(ValueError):
    """Raised when a weight vector L is not dominated by any N^(j)."""


@dataclass(frozen=True)
class GkzSpec:
    """Instance data: dimension d, weight vectors N, optional weight L.

    Repeated weight vectors encode multiplicity, keeping the coefficient a
    plain product over the list.
    """

    d: int
    N: tuple
    L: tuple = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be positive")
        n = tuple(tuple(v) for v in self.N)
        if not n:
            raise ValueError("need at least one weight vector")
        for v in n:
            if len(v) != self.d:
                raise ValueError(f"weight vector {v} has wrong dimension")
            if any(x < 0 for x in v):
                raise ValueError(f"weight vector {v} has negative entries")
        object.__setattr__(self, "N", n)
        if self.L is not None:
            l = tuple(self.L)
            if len(l) != self.d or any(x < 0 for x in l):
                raise ValueError(f"bad weight vector L={l}")
            object.__setattr__(self, "L", l)

    @property
    def k(self):
        return len(self.N)

    @classmethod
    def from_dict(cls, rec):
        if "d" not in rec or "N" not in rec:
            raise ValueError("spec record needs keys 'd' and 'N'")
        spec = cls(int(rec["d"]), tuple(tuple(int(x) for x in v) for v in rec["N"]),
                   tuple(int(x) for x in rec["L"]) if rec.get("L") is not None else None)
        if "k" in rec and int(rec["k"]) != spec.k:
            raise ValueError(f"spec record claims k={rec['k']} but lists {spec.k} vectors")
        return spec

    def to_dict(self):
        rec = {"d": self.d, "k": self.k, "N": [list(v) for v in self.N]}
        if self.L is not None:
            rec["L"] = list(self.L)
        return rec


def is_admissible(spec, L):
    """True when 0 <= L <= N^(j) for some j (any j works, by symmetry)."""
    L = tuple(L)
    if len(L) != spec.d or any(x < 0 for x in L):
        return False
    return any(all(a <= b for a, b in zip(L, v)) for v in spec.N)


def require_admissible(spec, L):
    if not is_admissible(spec, L):
        raise InadmissibleWeightError(
            f"L={tuple(L)} is not dominated by any weight vector of {spec.N}")


def admissible_weights(vector):
    """All integer L with 0 <= L <= vector, in grlex order."""
    box = [()]
    for x in vector:
        box = [t + (e,) for t in box for e in range(x + 1)]
    return sorted(box, key=grlex_key)


@functools.lru_cache(maxsize=None)
def coefficient(spec, m):
    """Taylor coefficient at m: the product of weighted multinomials (int)."""
    m = tuple(m)
    prod = 1
    for v in spec.N:
        prod *= exact.multinomial(v, m)
        if prod == 0:
            return 0
    return prod


def vp_coefficient(spec, m, p):
    """v_p of coefficient(spec, m) via floor sums, never forming the factorials."""
    if any(x < 0 for x in m):
        return exact.INF
    return sum(exact.vp_multinomial(v, m, p) for v in spec.N)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def gkz_series(spec, degree):
    """The base hypergeometric series: sum over m of coefficient(m) z^m."""
    entries = {m: coefficient(spec, m) for m in monomials(spec.d, degree)}
    return TruncatedSeries(spec.d, degree, entries)


def harmonic_series(spec, L, degree):
    """Harmonic-weighted companion: sum of H_{L.m} coefficient(m) z^m."""
    L = tuple(L)
    if len(L) != spec.d or any(x < 0 for x in L):
        raise ValueError(f"bad weight vector L={L}")
    entries = {}
    for m in monomials(spec.d, degree):
        h = exact.harmonic(dot(L, m))
        if h:
            entries[m] = h * coefficient(spec, m)
    return TruncatedSeries(spec.d, degree, entries)


def log_companion(spec, i, degree):
    """Holomorphic part G of the logarithmic solution log(z_i) F + G."""
    if not 0 <= i < spec.d:
        raise ValueError(f"variable index {i} out of range")
    weight_total = sum(v[i] for v in spec.N)
    entries = {}
    for m in monomials(spec.d, degree):
        factor = sum(v[i] * exact.harmonic(dot(v, m)) for v in spec.N)
        factor -= exact.harmonic(m[i]) * weight_total
        if factor:
            entries[m] = factor * coefficient(spec, m)
    return TruncatedSeries(spec.d, degree, entries)


def companion_weights(spec, i):
    """Integer weights (c, L) with log_companion(i) = sum c * harmonic_series(L).

    One canonical choice: +N_i^(j) at L = N^(j) for each j, and -(sum_j
    N_i^(j)) at L = e_i.  Every emitted L is dominated by some N^(j).
    """
    if not 0 <= i < spec.d:
        raise ValueError(f"variable index {i} out of range")
    acc = {}
    for v in spec.N:
        if v[i]:
            acc[v] = acc.get(v, 0) + v[i]
    total = sum(v[i] for v in spec.N)
    if total:
        unit = tuple(1 if j == i else 0 for j in range(spec.d))
        acc[unit] = acc.get(unit, 0) - total
    pairs = [(c, L) for L, c in acc.items() if c]
    pairs.sort(key=lambda cl: grlex_key(cl[1]))
    return pairs


def series_ratio_exp(numer, denom):
    """exp(numer/denom) for denom with constant term 1 and numer with 0."""
    return (numer * denom.inverse()).exp()


def canonical_coordinate(spec, i, degree):
    """z_i * exp(G_i/F), truncated at total degree ``degree``."""
    f = gkz_series(spec, degree)
    g = log_companion(spec, i, degree)
    unit = series_ratio_exp(g, f)
    return TruncatedSeries.variable(spec.d, degree, i) * unit


def mirror_type_map(spec, L, degree):
    """exp(G_L/F); integral whenever L is dominated by some weight vector."""
    f = gkz_series(spec, degree)
    g = harmonic_series(spec, L, degree)
    return series_ratio_exp(g, f)


@dataclass(frozen=True)
class GkzOperator:
    """theta_i^(total weight at i) - z_i * prod of shifted Euler forms.

    ``factors`` lists the linear forms (N^(j), r) standing for
    sum_l N^(j)_l theta_l + r, with r = 1 .. N^(j)_i for each j.
    """

    var: int
    theta_power: int
    factors: tuple

    def _theta_form(self, coeffs, shift, x):
        acc = x.scale(shift)
        for l, c in enumerate(coeffs):
            if c:
                acc = acc + x.theta(l).scale(c)
        return acc

    def apply(self, x):
        """Apply to a LogSeries (plain series are lifted first).

        The z_i multiplication makes the top coefficient unreliable, so the
        result's trusted degree drops by one.
        """
        if isinstance(x, TruncatedSeries):
            x = LogSeries.from_series(x)
        if any(len(coeffs) != x.nvars for coeffs, _ in self.factors) \
                or self.var >= x.nvars:
            raise ValueError("operator and series dimensions differ")
        lead = x
        for _ in range(self.theta_power):
            lead = lead.theta(self.var)
        shifted = x
        for coeffs, r in self.factors:
            shifted = self._theta_form(coeffs, r, shifted)
        shifted = shifted.mul_var(self.var)
        out = lead - shifted
        out.trusted = min(x.trusted, x.trunc) - 1
        return out


def gkz_operator(spec, i):
    """The annihilating operator for variable i of the differential system."""
    if not 0 <= i < spec.d:
        raise ValueError(f"variable index {i} out of range")
    factors = []
    for v in spec.N:
        for r in range(1, v[i] + 1):
            factors.append((v, r))
    return GkzOperator(var=i, theta_power=sum(v[i] for v in spec.N),
                       factors=tuple(factors))


AperyFamily = namedtuple("AperyFamily", ["a", "b", "parts"])

#: weight box emitted for the one-variable binomial-sum families
APERY_WEIGHT_BOX = [(l1, l2) for l1 in range(3) for l2 in range(2)]


def apery_spec(alpha, beta):
    """Two-variable instance encoding the binomial-sum family (alpha, beta)."""
    if not 0 <= beta <= alpha:
        raise ValueError("need 0 <= beta <= alpha")
    if alpha == 0:
        raise ValueError("need alpha >= 1")
    weights = ((1, 1),) * (alpha - beta) + ((2, 1),) * beta
    return GkzSpec(2, weights)


def apery_series(alpha, beta, degree):
    """One-variable binomial-sum family obtained by equating the variables.

    Returns the base series A (coefficients sum_j C(k,j)^alpha C(k+j,j)^beta),
    its logarithmic companion B, and the harmonic-twisted pieces for every
    weight in APERY_WEIGHT_BOX, all specialized to the diagonal.
    """
    spec = apery_spec(alpha, beta)
    diag = Substitution.equate(2, 0, 1)
    a = gkz_series(spec, degree).specialize(diag)
    b = log_companion(spec, 1, degree).specialize(diag)
    parts = {}
    for L in APERY_WEIGHT_BOX:
        parts[L] = harmonic_series(spec, L, degree).specialize(diag)
    return AperyFamily(a, b, parts)


_CATALOG = {
    "bvs-33": lambda: (GkzSpec(2, ((3, 3),)), None),
    "bvs-33-diagonal": lambda: (GkzSpec(2, ((3, 3),)), Substitution.equate(2, 0, 1)),
    "apery-zeta2": lambda: (apery_spec(2, 1), Substitution.equate(2, 0, 1)),
    "apery-zeta3": lambda: (apery_spec(2, 2), Substitution.equate(2, 0, 1)),
}

CATALOG_NAMES = sorted(_CATALOG)


def catalog(name):
    """Built-in worked examples: (spec, substitution or None)."""
    if name not in _CATALOG:
        raise ValueError(f"unknown catalog name {name!r}; known: {', '.join(CATALOG_NAMES)}")
    return _CATALOG[name]()
