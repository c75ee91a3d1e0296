"""Closed-form bounds, inequality grids, applicability thresholds, peeling.

All binomials use the total convention: C(a, b) = 0 whenever a < 0, b < 0
or b > a, and C(a, 0) = 1 for a >= 0.  Rational comparisons are exact
(fractions.Fraction); transcendental ones run at >= 80 bits via mpmath with
a conservative 1e-9 margin, so borderline hypotheses report not-applicable
rather than applicable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath import mp

from .graphs import Graph, GraphError, iter_bits

PRECISION_BITS = 120
MARGIN = Fraction(1, 10 ** 9)

THEOREM_IDS = ("T3", "T2-avg", "T5", "T6", "T8")


def binom(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


# -- closed forms ------------------------------------------------------

def ekr_bound(n: int, r: int) -> int:
    """Star size of the empty graph: C(n-1, r-1)."""
    return binom(n - 1, r - 1)


def hm_bound(n: int, r: int) -> int:
    """Largest non-star intersecting r-set family: C(n-1,r-1) - C(n-r-1,r-1) + 1."""
    return binom(n - 1, r - 1) - binom(n - r - 1, r - 1) + 1


def hm_bound_sum_form(n: int, r: int) -> int:
    """Equivalent telescoped form: 1 + sum_{j=2}^{r+1} C(n-j, r-2)."""
    return 1 + sum(binom(n - j, r - 2) for j in range(2, r + 2))


def hm_identity_check(n: int, r: int) -> bool:
    return hm_bound(n, r) == hm_bound_sum_form(n, r)


def frankl_bound(n: int, r: int) -> int:
    """Out-of-star slack C(n-3, r-2), meaningful for r < n/72."""
    return binom(n - 3, r - 2)


def in_half_range(n: int, r: int) -> bool:
    """Range flag for ekr_bound / hm_bound; out-of-range is flagged, not rejected."""
    return 2 * r <= n


def claim_star_lower(n: int, d: int, r: int) -> Fraction:
    """Greedy star lower bound (1/(r-1)!) * prod_{i=1..r-1} (n - i*d).

    Exact rational; collapses to 0 as soon as a factor is nonpositive.
    """
    if r < 1:
        raise GraphError(f"need r >= 1, got {r}")
    num = 1
    for i in range(1, r):
        factor = n - i * d
        if factor <= 0:
            return Fraction(0)
        num *= factor
    return Fraction(num, math.factorial(r - 1))


def spider_star_lower(n: int, k: int, r: int) -> int:
    """Leaf star bound for spiders with k legs: C(n-r-1,r-1) + C(n-k-r-2,r-2)."""
    return binom(n - r - 1, r - 1) + binom(n - k - r - 2, r - 2)


def split_star_lower(n: int, s: int, r: int) -> int:
    """Leaf star bound for trees with s >= 2 branch vertices: C(n-r-s,r-1) + 1."""
    return binom(n - r - s, r - 1) + 1


# -- query/record types ------------------------------------------------

@dataclass(frozen=True)
class BoundQuery:
    """Bag of numeric parameters for threshold and estimate checks."""

    n: Optional[int] = None
    r: Optional[int] = None
    d: Optional[int] = None
    c_density: Optional[Fraction] = None
    s: Optional[int] = None
    k: Optional[int] = None
    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        for name in ("c_density", "x", "y"):
            val = getattr(self, name)
            if val is not None and not isinstance(val, Fraction):
                object.__setattr__(self, name, Fraction(str(val)))


@dataclass(frozen=True)
class IneqResult:
    name: str
    params: str
    lhs: object
    rhs: object
    holds: Optional[bool]
    hypothesis_ok: bool
    boundary: bool = False


@dataclass(frozen=True)
class Applicability:
    theorem: str
    applicable: bool
    conditions: tuple  # (label, ok) pairs
    threshold_r: Optional[str] = None  # decimal string of the r-threshold, if one exists


# -- pointwise estimates -----------------------------------------------

def _mpf_of(x: Fraction):
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)


def check_exp_linear(x, k: int) -> IneqResult:
    """exp(-x) < 1 - (k/(k+1)) x on 0 <= x <= 2k/(k+1)^2; equality only at x = 0."""
    if not isinstance(x, Fraction):
        x = Fraction(str(x))
    if k < 1:
        raise GraphError(f"need k >= 1, got {k}")
    dom_hi = Fraction(2 * k, (k + 1) ** 2)
    hyp_ok = 0 <= x <= dom_hi
    with mp.workprec(PRECISION_BITS):
        lhs = mp.e ** (-_mpf_of(x))
        rhs = 1 - _mpf_of(Fraction(k, k + 1) * x)
        boundary = x == 0
        holds = bool(lhs < rhs) or boundary
    return IneqResult("exp-linear", f"x={x};k={k}", lhs, rhs, holds, hyp_ok, boundary)


def check_one_minus_exp(y, k: int) -> IneqResult:
    """1 - y > exp(-((k+1)/k) y) on 0 <= y <= 2k^2/(k+1)^3; equality only at y = 0."""
    if not isinstance(y, Fraction):
        y = Fraction(str(y))
    if k < 1:
        raise GraphError(f"need k >= 1, got {k}")
    dom_hi = Fraction(2 * k * k, (k + 1) ** 3)
    hyp_ok = 0 <= y <= dom_hi
    with mp.workprec(PRECISION_BITS):
        lhs = 1 - _mpf_of(y)
        rhs = mp.e ** (-_mpf_of(Fraction(k + 1, k) * y))
        boundary = y == 0
        holds = bool(lhs > rhs) or boundary
    return IneqResult("one-minus-exp", f"y={y};k={k}", lhs, rhs, holds, hyp_ok, boundary)


def check_degree_product(r: int, d: int, n: int) -> IneqResult:
    """prod_{i=1..r-1} (1 - (r+i*d)/n) > r/n once 8n >= 27 d r^2; exact rationals."""
    if r < 2 or d < 2:
        raise GraphError(f"need r, d >= 2, got r={r}, d={d}")
    if n < 1:
        raise GraphError(f"need n >= 1, got {n}")
    hyp_ok = 8 * n >= 27 * d * r * r
    lhs = Fraction(1)
    for i in range(1, r):
        lhs *= 1 - Fraction(r + i * d, n)
    rhs = Fraction(r, n)
    return IneqResult("degree-product", f"r={r};d={d};n={n}", lhs, rhs, lhs > rhs, hyp_ok)


def big_star_lower(n: int, r: int, d: int, k: int):
    """Dense-star estimate n^{r-1}/(r-1)! * exp(-(r-1) 2k/(k+1)^2).

    Returns (value, hypothesis_ok); the hypothesis is
    1/(3r) + r*d/n <= 2k^2/(k+1)^3 (exact rational comparison).
    """
    if min(n, r, d, k) < 1:
        raise GraphError("big_star_lower needs positive n, r, d, k")
    hyp_ok = Fraction(1, 3 * r) + Fraction(r * d, n) <= Fraction(2 * k * k, (k + 1) ** 3)
    with mp.workprec(PRECISION_BITS):
        lead = _mpf_of(Fraction(n ** (r - 1), math.factorial(r - 1)))
        value = lead * mp.e ** (-_mpf_of(Fraction((r - 1) * 2 * k, (k + 1) ** 2)))
    return value, hyp_ok


def estimate_checks(q: BoundQuery) -> list[IneqResult]:
    """Run every estimate the query's populated fields support."""
    out = []
    if q.x is not None and q.k is not None:
        out.append(check_exp_linear(q.x, q.k))
    if q.y is not None and q.k is not None:
        out.append(check_one_minus_exp(q.y, q.k))
    if q.r is not None and q.d is not None and q.n is not None:
        out.append(check_degree_product(q.r, q.d, q.n))
        if q.k is not None:
            value, hyp_ok = big_star_lower(q.n, q.r, q.d, q.k)
            out.append(IneqResult("big-star-lower", f"n={q.n};r={q.r};d={q.d};k={q.k}",
                                  value, None, None, hyp_ok))
    if not out:
        raise GraphError("query populates no estimate; set (x,k), (y,k) or (r,d,n)")
    return out


# -- theorem applicability ----------------------------------------------

def _sqrt_log_threshold(n: int, c: Fraction):
    # sqrt(n ln c) - (ln c)/2 at high precision; caller holds the workprec
    ln_c = mp.log(_mpf_of(c))
    return mp.sqrt(n * ln_c) - ln_c / 2


def _r_below_threshold(r: int, n: int, c: Fraction) -> tuple[bool, str]:
    with mp.workprec(PRECISION_BITS):
        t = _sqrt_log_threshold(n, c)
        ok = mp.mpf(r) <= t - _mpf_of(MARGIN)
        return bool(ok), mp.nstr(t, 17)


def hypothesis(theorem: str, q: BoundQuery) -> Applicability:
    """Whether the named threshold theorem applies at the query's parameters."""
    if theorem == "T3":
        if q.n is None or q.r is None or q.d is None:
            raise GraphError("T3 needs n, r, d")
        ok = 8 * q.n > 27 * q.d * q.r * q.r
        return Applicability(theorem, ok, (("8n > 27*d*r^2", ok),))
    if theorem == "T2-avg":
        if q.n is None or q.r is None or q.c_density is None:
            raise GraphError("T2-avg needs n, r, c_density")
        c = q.c_density
        with mp.workprec(PRECISION_BITS):
            c_ok = bool(_mpf_of(c) >= mp.e / 36 + _mpf_of(MARGIN))
        n_ok = Fraction(q.n) > 18 * c * q.r ** 3
        return Applicability(theorem, c_ok and n_ok,
                             (("c >= e/36", c_ok), ("n > 18*c*r^3", n_ok)))
    if theorem == "T5":
        if q.n is None or q.r is None:
            raise GraphError("T5 needs n, r")
        ok, t = _r_below_threshold(q.r, q.n, Fraction(2))
        return Applicability(theorem, ok,
                             (("r <= sqrt(n ln 2) - ln(2)/2", ok),), threshold_r=t)
    if theorem == "T6":
        if q.n is None or q.r is None or q.s is None:
            raise GraphError("T6 needs n, r, s")
        s_ok = 0 < 2 * q.s < q.r
        if not s_ok:
            return Applicability(theorem, False, (("0 < s < r/2", False),))
        c = 2 - Fraction(2 * q.s, q.r)
        ok, t = _r_below_threshold(q.r, q.n, c)
        return Applicability(theorem, ok,
                             (("0 < s < r/2", True),
                              ("r <= sqrt(n ln c) - ln(c)/2, c = 2 - 2s/r", ok)),
                             threshold_r=t)
    if theorem == "T8":
        if q.n is None or q.r is None:
            raise GraphError("T8 needs n, r")
        ok = 72 * q.r < q.n
        return Applicability(theorem, ok, (("r < n/72", ok),))
    raise GraphError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREM_IDS)}")


def rmax(theorem: str, q: BoundQuery) -> list[int]:
    """All r >= 1 at which the named theorem applies for the other parameters."""
    if theorem == "T3":
        if q.n is None or q.d is None:
            raise GraphError("T3 needs n, d")
        out = []
        r = 1
        while 8 * q.n > 27 * q.d * r * r:
            out.append(r)
            r += 1
        return out
    if theorem == "T2-avg":
        if q.n is None or q.c_density is None:
            raise GraphError("T2-avg needs n, c_density")
        out = []
        r = 1
        while hypothesis(theorem, BoundQuery(n=q.n, r=r, c_density=q.c_density)).applicable:
            out.append(r)
            r += 1
        return out
    if theorem == "T5":
        if q.n is None:
            raise GraphError("T5 needs n")
        out = []
        r = 1
        while hypothesis(theorem, BoundQuery(n=q.n, r=r)).applicable:
            out.append(r)
            r += 1
        return out
    if theorem == "T6":
        if q.n is None or q.s is None:
            raise GraphError("T6 needs n, s")
        # c < 2 keeps every admissible r under the T5 threshold, so cap there
        cap = int(math.isqrt(int(q.n * math.log(2)))) + 3
        return [r for r in range(1, cap + 1)
                if hypothesis(theorem, BoundQuery(n=q.n, r=r, s=q.s)).applicable]
    if theorem == "T8":
        if q.n is None:
            raise GraphError("T8 needs n")
        return list(range(1, (q.n - 1) // 72 + 1))
    raise GraphError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREM_IDS)}")


# -- binomial comparison checks ----------------------------------------

def binoms_ineq_check(n: int, r: int, hyp: Optional[bool] = None) -> IneqResult:
    """C(n-1, r-1) < 2 C(n-r-1, r-1); hypothesis is the T5 range for r."""
    if hyp is None:
        hyp = hypothesis("T5", BoundQuery(n=n, r=r)).applicable
    lhs = binom(n - 1, r - 1)
    rhs = 2 * binom(n - r - 1, r - 1)
    return IneqResult("binom-doubling", f"n={n};r={r}", lhs, rhs, lhs < rhs, hyp)


def binoms2_ineq_check(n: int, r: int, s: int, hyp: Optional[bool] = None) -> IneqResult:
    """C(n-1,r-1) <= C(n-r-1,r-1) + C(n-r-s,r-1); hypothesis 1 < s plus T6."""
    if hyp is None:
        hyp = s > 1 and hypothesis("T6", BoundQuery(n=n, r=r, s=s)).applicable
    lhs = binom(n - 1, r - 1)
    rhs = binom(n - r - 1, r - 1) + binom(n - r - s, r - 1)
    return IneqResult("binom-split", f"n={n};r={r};s={s}", lhs, rhs, lhs <= rhs, hyp)


# -- degree peeling -----------------------------------------------------

@dataclass(frozen=True)
class PeelReport:
    source: Graph
    threshold: int
    t: int
    removed: tuple  # (vertex, degree at removal) in removal order
    kept: tuple     # surviving original vertices, ascending
    residual: Graph


def peel(g: Graph, threshold: int) -> PeelReport:
    """Repeatedly delete a vertex of current degree >= threshold.

    Deterministic: always the max-degree vertex, ties to the smallest index.
    Stops when every surviving degree is below the threshold.
    """
    if threshold < 1:
        raise GraphError(f"peel threshold must be >= 1, got {threshold}")
    alive = g.vertex_mask
    removed = []
    while True:
        best_v, best_d = -1, threshold - 1
        for v in iter_bits(alive):
            d = (g.adj[v] & alive).bit_count()
            if d > best_d:
                best_v, best_d = v, d
        if best_v < 0:
            break
        removed.append((best_v, best_d))
        alive ^= 1 << best_v
    residual, kept = g.induced(alive, label=f"{g.label or 'graph'}-peeled")
    return PeelReport(g, threshold, len(removed), tuple(removed), tuple(kept), residual)


def peel_certificates_ok(report: PeelReport) -> bool:
    """Replay the removals and confirm every certificate degree."""
    g = report.source
    alive = g.vertex_mask
    for v, d in report.removed:
        if (g.adj[v] & alive).bit_count() != d or d < report.threshold:
            return False
        alive ^= 1 << v
    if alive != sum(1 << v for v in report.kept):
        return False
    return all((g.adj[v] & alive).bit_count() < report.threshold for v in iter_bits(alive))


def peel_bound_check(report: PeelReport, c: Fraction, r: int) -> dict:
    """Bookkeeping for sparse graphs: with threshold 3cr and <= c*n edges,
    at most n/(3r) removals happen and >= n(1 - 1/(3r)) vertices survive."""
    if not isinstance(c, Fraction):
        c = Fraction(str(c))
    n = report.source.n
    return {
        "threshold_matches": Fraction(report.threshold) == 3 * c * r,
        "edges_sparse": Fraction(report.source.edge_count()) <= c * n,
        "t_bound": Fraction(report.t) <= Fraction(n, 3 * r),
        "residual_bound": Fraction(len(report.kept)) >= n * (1 - Fraction(1, 3 * r)),
    }


# -- grids ---------------------------------------------------------------

@dataclass(frozen=True)
class GridRow:
    theorem_id: str
    parameters: str
    lhs: str
    rhs: str
    holds: bool


def _row(res: IneqResult) -> GridRow:
    def fmt(v):
        if v is None:
            return ""
        if isinstance(v, Fraction):
            return str(v)
        return mp.nstr(v, 17) if isinstance(v, mp.mpf) else str(v)

    return GridRow(res.name, res.params, fmt(res.lhs), fmt(res.rhs), bool(res.holds))


def grid_degree_product(r_lo=2, r_hi=8, d_lo=2, d_hi=8, span=200) -> list[GridRow]:
    rows = []
    for r in range(r_lo, r_hi + 1):
        for d in range(d_lo, d_hi + 1):
            n0 = -(-27 * d * r * r // 8)  # ceil
            for n in range(n0, n0 + span):
                rows.append(_row(check_degree_product(r, d, n)))
    return rows


def _min_admissible_n(applicable, n_max: int):
    """Smallest n <= n_max with applicable(n) true; applicability is monotone in n."""
    if not applicable(n_max):
        return None
    lo, hi = 1, n_max
    while lo < hi:
        mid = (lo + hi) // 2
        if applicable(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def grid_binoms(n_max=5000) -> list[GridRow]:
    # same (n, r) set as {n <= n_max, r in rmax(T5, n)}, grouped by r so the
    # threshold is bisected once per r instead of recomputed per n
    rows = []
    r = 1
    while True:
        n0 = _min_admissible_n(
            lambda n: hypothesis("T5", BoundQuery(n=n, r=r)).applicable, n_max)
        if n0 is None:
            break
        for n in range(n0, n_max + 1):
            res = binoms_ineq_check(n, r, hyp=True)
            rows.append(GridRow(res.name, res.params, str(res.lhs), str(res.rhs),
                                bool(res.holds)))
        r += 1
    return rows


def grid_binoms2(n_max=5000, s_lo=2, s_hi=5, r_cap=16) -> list[GridRow]:
    rows = []
    for s in range(s_lo, s_hi + 1):
        for r in range(2 * s + 1, r_cap + 1):
            n0 = _min_admissible_n(
                lambda n: hypothesis("T6", BoundQuery(n=n, r=r, s=s)).applicable, n_max)
            if n0 is None:
                continue
            for n in range(n0, n_max + 1):
                res = binoms2_ineq_check(n, r, s, hyp=True)
                rows.append(GridRow(res.name, res.params, str(res.lhs), str(res.rhs),
                                    bool(res.holds)))
    return rows


def grid_hm_identity(n_max=60) -> list[GridRow]:
    rows = []
    for n in range(2, n_max + 1):
        for r in range(1, n):
            rows.append(GridRow("hm-identity", f"n={n};r={r}",
                                str(hm_bound(n, r)), str(hm_bound_sum_form(n, r)),
                                hm_identity_check(n, r)))
    return rows


def grid_estimates(k_max=10, samples=100) -> list[GridRow]:
    """Interior sampling of both exponential estimates, 100 points per k."""
    rows = []
    eps = Fraction(1, 10 ** 6)
    for k in range(1, k_max + 1):
        x_hi = Fraction(2 * k, (k + 1) ** 2)
        y_hi = Fraction(2 * k * k, (k + 1) ** 3)
        for j in range(1, samples + 1):
            x = eps + (x_hi - eps) * Fraction(j, samples)
            y = eps + (y_hi - eps) * Fraction(j, samples)
            rows.append(_row(check_exp_linear(x, k)))
            rows.append(_row(check_one_minus_exp(y, k)))
    return rows


GRID_SUITES = ("degree-product", "binoms", "binoms2", "hm-identity", "estimates")


def run_grid(suite: str, **kw) -> list[GridRow]:
    if suite == "degree-product":
        return grid_degree_product(**kw)
    if suite == "binoms":
        return grid_binoms(**kw)
    if suite == "binoms2":
        return grid_binoms2(**kw)
    if suite == "hm-identity":
        return grid_hm_identity(**kw)
    if suite == "estimates":
        return grid_estimates(**kw)
    if suite == "all":
        rows = []
        for name in GRID_SUITES:
            rows.extend(run_grid(name))
        return rows
    raise GraphError(f"unknown grid suite {suite!r}; known: all, {', '.join(GRID_SUITES)}")


def grid_to_csv(rows: list[GridRow]) -> str:
    out = ["theorem-id,parameters,lhs,rhs,holds"]
    for row in rows:
        out.append(f"{row.theorem_id},{row.parameters},{row.lhs},{row.rhs},{str(row.holds).lower()}")
    return "\n".join(out) + "\n"
