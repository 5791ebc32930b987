"""Evaluators for the genus and tau inequalities, as uniform reports.

Every evaluator returns exact rationals and never clamps silently: raw
(possibly vacuous, possibly negative) bound values are reported next to a
clamped-at-zero companion, because the raw values carry information (a
negative raw genus bound certifies nothing but still records how far the
inequality is from biting).

The interval evaluators package the two-sided estimates: cables of a
rationally null-homologous knot satisfy

    p*tau + p(p-1)*lk_n/2  <=  tau(cable)  <=  p*tau + p(p-1)*lk_n/2 + (p-1)

and for a braided pattern of index p with writhe w whose closure has
`comps` components, 2*tau(satellite) lies within (p-1) + comps - 1 of
2*p*tau + (p-1)*p*lk + w.  For torus braids on pn+1 strands the two
evaluators agree exactly, which the acceptance suite sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .complexes import TauSpectrum


@dataclass(frozen=True)
class Interval:
    """A closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def shift(self, t: Fraction) -> "Interval":
        return Interval(self.lo + t, self.hi + t)

    def scale(self, s: Fraction) -> "Interval":
        s = Fraction(s)
        if s < 0:
            return Interval(self.hi * s, self.lo * s)
        return Interval(self.lo * s, self.hi * s)


@dataclass(frozen=True)
class BoundReport:
    """A named inequality evaluated on explicit inputs."""

    name: str
    bound_value: Fraction
    direction: str  # "lower" | "upper"
    inputs: dict
    citation: str
    satisfied: Optional[bool] = None
    clamped_value: Optional[Fraction] = None
    is_equality: bool = False
    anomaly: Optional[str] = None

    def __post_init__(self):
        if not self.citation:
            raise ValueError("citation must be nonempty")
        if self.direction not in ("lower", "upper"):
            raise ValueError(f"direction must be lower|upper, got {self.direction!r}")


@dataclass(frozen=True)
class GradingTableRow:
    """One table cell: the bigrading of an exterior generator in a column."""

    generator: str
    column: str
    a: Fraction
    a_prime: Fraction


def exterior_grading_table(
    p: int,
    n: int,
    lk_n: Fraction,
    maxa: Fraction,
    num_columns: int,
) -> list[list[GradingTableRow]]:
    """Bigradings of the exterior cable generators, rows x_0..x_{2n(p-1)}.

    Column C(maxa - j) starts from the outermost generator at
    (maxa - j, maxa' - j*p) with maxa' = p*maxa + p(p-1)*lk_n/2; going
    down a column alternates the two difference rules: odd steps drop both
    gradings by 1, even steps keep the first and drop the second by p-1.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if num_columns < 1:
        raise ValueError("need at least one column")
    lk_n = Fraction(lk_n)
    maxa = Fraction(maxa)
    maxa_prime = p * maxa + Fraction(p * (p - 1), 2) * lk_n
    num_rows = 2 * n * (p - 1) + 1
    table: list[list[GradingTableRow]] = []
    for i in range(num_rows):
        table.append([])
    for j in range(num_columns):
        column = f"C(maxa-{j})" if j else "C(maxa)"
        a = maxa - j
        a_prime = maxa_prime - j * p
        for i in range(num_rows):
            if i:
                if i % 2:
                    a -= 1
                    a_prime -= 1
                else:
                    a_prime -= p - 1
            table[i].append(GradingTableRow(f"x{i}", column, a, a_prime))
    return table


def cable_tau_interval(p: int, tau_alpha: Fraction, lk_n: Fraction) -> Interval:
    """Two-sided estimate for tau of the (p, pn+1) cable, framing lk_n."""
    if p < 1:
        raise ValueError("p must be >= 1")
    base = p * Fraction(tau_alpha) + Fraction(p * (p - 1), 2) * Fraction(lk_n)
    return Interval(base, base + (p - 1))


def bp_tau_interval(
    p: int,
    tau_alpha: Fraction,
    framing_lk: Fraction,
    w: int,
    comps: int,
) -> Interval:
    """Two-sided estimate for tau of a braided-pattern satellite.

    Centered in doubled-tau terms at 2p*tau + (p-1)p*lk + w with radius
    (p-1) + comps - 1, returned halved as an interval for tau itself.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if not 1 <= comps <= p:
        raise ValueError("component count must lie in 1..p")
    center = 2 * p * Fraction(tau_alpha) + (p - 1) * p * Fraction(framing_lk) + w
    radius = (p - 1) + comps - 1
    return Interval(Fraction(center - radius, 2), Fraction(center + radius, 2))


def crossing_change_propagate(
    interval: Interval, plus_changes: int, minus_changes: int
) -> Interval:
    """Widen a tau interval along crossing changes.

    Turning a negative crossing positive never drops tau and raises it by
    at most 1; so positive changes raise the upper end, negative changes
    lower the lower end.
    """
    if plus_changes < 0 or minus_changes < 0:
        raise ValueError("crossing-change counts must be >= 0")
    return Interval(interval.lo - minus_changes, interval.hi + plus_changes)


def genus_lower_bound_breadth(spectrum: TauSpectrum) -> BoundReport:
    """(breadth - 1)/2 as a lower bound for the rational slice genus.

    The same value bounds the rational PL slice genus, since the breadth
    is insensitive to connected sums with local knots.
    """
    raw = Fraction(spectrum.breadth - 1, 2)
    return BoundReport(
        name="rational-slice-genus-from-tau-breadth",
        bound_value=raw,
        direction="lower",
        inputs={"tau_max": spectrum.tau_max, "tau_min": spectrum.tau_min,
                "breadth": spectrum.breadth},
        citation="tau-breadth-vs-rational-slice-genus",
        clamped_value=max(raw, Fraction(0)),
    )


def surface_bound_with_c(spectrum: TauSpectrum, c: int, p: int) -> BoundReport:
    """Lower bound for -chi of a degree-p rational slice surface at fixed c.

    For surfaces with boundary constant c the doubled tau extremes obey
    max(2*tau_max + c/p, -2*tau_min - c/p) <= (-chi + p)/p; solving for
    -chi gives the reported bound.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    lhs = max(
        2 * spectrum.tau_max + Fraction(c, p),
        -2 * spectrum.tau_min - Fraction(c, p),
    )
    raw = p * lhs - p
    return BoundReport(
        name="neg-euler-bound-at-fixed-c",
        bound_value=raw,
        direction="lower",
        inputs={"c": c, "p": p, "tau_max": spectrum.tau_max,
                "tau_min": spectrum.tau_min, "lhs": lhs},
        citation="surface-bound-at-fixed-boundary-constant",
        clamped_value=max(raw, Fraction(0)),
    )


def optimal_c(
    spectrum: TauSpectrum, p: int
) -> tuple[Fraction, int, BoundReport]:
    """Best boundary constant for the fixed-c surface bound.

    The left side max(2*tau_max + c/p, -2*tau_min - c/p) is piecewise
    linear and convex in c with slopes -1/p and +1/p, so its minimum over
    the integers is attained at floor or ceil of the crossing point
    c* = -p*(tau_max + tau_min); at c* itself the bound equals the
    breadth-based one.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    c_star = -p * (spectrum.tau_max + spectrum.tau_min)
    floor_c = c_star.numerator // c_star.denominator
    candidates = sorted({floor_c, -((-c_star.numerator) // c_star.denominator)})
    best = min(
        candidates,
        key=lambda c: (surface_bound_with_c(spectrum, c, p).bound_value, c),
    )
    return c_star, best, surface_bound_with_c(spectrum, best, p)


def surface_genus_upper(neg_chi: Fraction, p: int) -> Fraction:
    """(-chi + p)/p: what an explicit surface says about 2*genus + 1."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return Fraction(Fraction(neg_chi) + p, p)


def seifert_framed_bound(spectrum: TauSpectrum, p: int) -> BoundReport:
    """Lower bound for -chi of Seifert-framed (c = 0) slice surfaces.

    Each tau obeys 2|tau| <= -chi/p + 1, so -chi >= p*(2*max|tau| - 1).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    max_abs = max(abs(spectrum.tau_max), abs(spectrum.tau_min))
    raw = p * (2 * max_abs - 1)
    return BoundReport(
        name="neg-euler-bound-seifert-framed",
        bound_value=raw,
        direction="lower",
        inputs={"p": p, "max_abs_tau": max_abs, "max_abs_two_tau": 2 * max_abs},
        citation="seifert-framed-surface-bound",
        clamped_value=max(raw, Fraction(0)),
    )


def satellite_breadth_lower(p: int, breadth: Fraction) -> Fraction:
    """Breadth growth under index-p braided satellites that close to knots:
    the satellite's tau breadth is at least p*(breadth - 1) + 1."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return p * (Fraction(breadth) - 1) + 1


def link_cobordism_bound(
    c1_pairing: Fraction,
    self_square: Fraction,
    tau_out: Fraction,
    tau_in: Fraction,
    comps_in: int,
    comps_out: int,
) -> BoundReport:
    """Lower bound for -chi of a link cobordism from its tau change.

    The pairing term, the self-intersection and twice the tau difference
    are at most -chi + |in components| + |out components| - 2.
    """
    if comps_in < 1 or comps_out < 1:
        raise ValueError("component counts must be >= 1")
    raw = (
        Fraction(c1_pairing)
        + Fraction(self_square)
        + 2 * Fraction(tau_out)
        - 2 * Fraction(tau_in)
        - comps_in
        - comps_out
        + 2
    )
    return BoundReport(
        name="neg-euler-bound-link-cobordism",
        bound_value=raw,
        direction="lower",
        inputs={
            "c1_pairing": c1_pairing,
            "self_square": self_square,
            "tau_out": tau_out,
            "tau_in": tau_in,
            "comps_in": comps_in,
            "comps_out": comps_out,
        },
        citation="link-cobordism-adjunction-bound",
        clamped_value=max(raw, Fraction(0)),
    )


def slice_bennequin_check(
    tb_q: Fraction, rot_q: Fraction, chi: int, p: int
) -> BoundReport:
    """Check tb + rot <= -chi/p for a Seifert-framed slice surface.

    The report's satisfied flag is False when the proposed surface is
    impossible; slack is the margin -chi/p - tb - rot.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    slack = Fraction(-chi, p) - Fraction(tb_q) - Fraction(rot_q)
    return BoundReport(
        name="rational-slice-bennequin",
        bound_value=slack,
        direction="lower",
        inputs={"tb_q": tb_q, "rot_q": rot_q, "chi": chi, "p": p},
        citation="rational-slice-bennequin-inequality",
        satisfied=slack >= 0,
        clamped_value=max(slack, Fraction(0)),
    )


def linking_form_breadth_lower(form_values: Sequence[Fraction]) -> Fraction:
    """Largest linking-form representative in [0,1): a tau-breadth floor."""
    values = [Fraction(v) for v in form_values]
    for v in values:
        if not 0 <= v < 1:
            raise ValueError(f"linking form value {v} outside [0, 1)")
    return max(values, default=Fraction(0))


def d_invariant_bound(
    d: dict[str, Fraction], k_action: dict[str, str]
) -> Fraction:
    """max over s of d(s + k) - d(s), for the action of a homology class k."""
    if set(k_action) != set(d) or set(k_action.values()) != set(d):
        raise ValueError("k_action must be a bijection on the d-invariant labels")
    return max(Fraction(d[k_action[s]]) - Fraction(d[s]) for s in d)


def floer_simple_genus(spectrum: TauSpectrum) -> BoundReport:
    """Exact rational Seifert = slice genus of a Floer simple knot.

    Equals (breadth - 1)/2, an equality rather than a bound.  A negative
    value is reported raw with an anomaly flag: it can only occur for
    knots bounding disks, which the genus convention excludes.
    """
    value = Fraction(spectrum.breadth - 1, 2)
    return BoundReport(
        name="floer-simple-rational-genus",
        bound_value=value,
        direction="lower",
        inputs={"breadth": spectrum.breadth},
        citation="floer-simple-genus-formula",
        clamped_value=max(value, Fraction(0)),
        is_equality=True,
        anomaly="disk-bounding: formula is negative" if value < 0 else None,
    )


def turaev_estimates(
    family: Sequence[tuple[str, TauSpectrum, Optional[Fraction]]],
) -> tuple[Fraction, Fraction, Optional[Fraction]]:
    """Estimates for the complexity of a torsion homology class.

    All family members must represent the class.  Returns lower estimates
    for the 3- and 4-dimensional complexity functions (both min breadth
    minus 1, since the 4-dimensional one is the smaller) and, when any
    member carries a genus upper bound, twice the best one as an upper
    estimate for the 3-dimensional function.
    """
    if not family:
        raise ValueError("family must be nonempty")
    min_breadth = min(spectrum.breadth for _, spectrum, _ in family)
    lower = min_breadth - 1
    uppers = [2 * Fraction(g) for _, _, g in family if g is not None]
    upper = min(uppers) if uppers else None
    return lower, lower, upper
