"""Region classification in the (chi_h, c)-plane, the basic-class-count
bound, recipe search for target points, and chart emitters (TSV / SVG).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownSW
from .manifold import KNOWN, ManifoldModel
from .surgery import blowup, seed

NEGATIVE_C = "NegativeC_Unknown"
MANY_BASIC = "ManyBasicClasses"
ONE_BASIC = "OneBasicClass"
GENERAL_TYPE = "GeneralType"
ON_NINE_LINE = "OnNineLine"
ABOVE_NINE = "AboveNine_Unknown"

PASS = "Pass"
FAIL = "Fail"
NOT_APPLICABLE = "NotApplicable"

# Boundary points satisfying two region inequalities take the label of the
# smaller-c region; the chart legend repeats this tie-break.
TIE_BREAK_LEGEND = "boundary points are labelled by the smaller-c region"


@dataclass(frozen=True)
class GeographyPoint:
    chi_h: Fraction
    c: int
    spin_constrained: bool = False

    def __post_init__(self):
        object.__setattr__(self, "chi_h", Fraction(self.chi_h))


@dataclass(frozen=True)
class RegionLabel:
    region: str
    spin_admissible: bool | None = None


def spin_admissible(chi_h: Fraction, c: int) -> bool:
    """The spin congruence c = 8*chi_h mod 16 (only meaningful on integers)."""
    if chi_h.denominator != 1:
        return False
    return (c - 8 * chi_h.numerator) % 16 == 0


def classify_point(p: GeographyPoint) -> RegionLabel:
    chi, c = p.chi_h, Fraction(p.c)
    if c < 0:
        region = NEGATIVE_C
    elif c <= chi - 3:
        region = MANY_BASIC
    elif c <= 2 * chi - 6:
        region = ONE_BASIC
    elif c < 9 * chi:
        region = GENERAL_TYPE
    elif c == 9 * chi:
        region = ON_NINE_LINE
    else:
        region = ABOVE_NINE
    admissible = spin_admissible(chi, p.c) if p.spin_constrained else None
    return RegionLabel(region, admissible)


def verify_basic_class_bound(x: ManifoldModel) -> tuple[str, dict]:
    """At least chi_h - c - 2 basic classes in the 0 <= c <= chi_h - 3 strip.

    Returns (verdict, details).  A Fail on an engine-built model contradicts
    the empirical law for all known manifolds and is a red-alert finding.
    """
    if x.sw_status != KNOWN:
        raise UnknownSW("bound check needs a known invariant")
    chi = x.chi_h
    if chi.denominator != 1:
        return NOT_APPLICABLE, {}
    bound = chi.numerator - x.c - 2
    count = x.sw.term_count()
    details = {"bound": bound, "count": count}
    if 0 <= x.c <= chi.numerator - 3:
        return (PASS if count >= bound else FAIL), details
    if bound <= 0:
        # outside the strip but the bound is vacuous
        return PASS, details
    return NOT_APPLICABLE, details


# ---------------------------------------------------------------------------
# recipe search


@dataclass(frozen=True)
class Realization:
    script: dict
    model: ManifoldModel


def realizable(target: GeographyPoint, budget: int = 64) -> bool:
    """Membership test for the reachable set of realize(): integral
    chi_h >= 1 with -budget <= c <= 0 (blowups drop c one at a time from
    the E(n) line).  Cheap; builds no model."""
    chi = target.chi_h
    return chi.denominator == 1 and chi >= 1 and -budget <= target.c <= 0


def realize(target: GeographyPoint, budget: int = 64) -> Realization | None:
    """Construction script hitting (chi_h, c), searched over elliptic seeds
    plus blowups.  Reachable set: integral chi_h >= 1 with c <= 0 (blowups
    drop c by one from the E(n) line); everything else is NotFound."""
    if not realizable(target, budget):
        return None
    chi = target.chi_h
    n = chi.numerator
    blowups = -target.c
    steps = [{"op": "seed", "args": {"name": f"E({n})"}, "bind": "x0"}]
    model = seed(f"E({n})")
    for i in range(blowups):
        steps.append({"op": "blowup", "args": {"on": f"x{i}"}, "bind": f"x{i + 1}"})
        model = blowup(model)
    assert model.chi_h == chi and model.c == target.c
    return Realization({"steps": steps}, model)


def fibration_genus(n: int, knot_genus: int = 0) -> int:
    """Genus of the induced fibration on a knot-surgered elliptic surface."""
    return 2 * knot_genus + n - 1


# ---------------------------------------------------------------------------
# chart emitters

TSV_COLUMNS = (
    "chi_h", "c", "region", "spin_admissible", "realized", "script_ref",
    "fibration_genus",
)


def _c_range(chi: int) -> range:
    return range(-4, 9 * chi + 5)


def chart_tsv(chi_max: int, spin: bool = False, budget: int = 16) -> str:
    if chi_max < 1:
        raise ValueError("chi_max must be >= 1")
    lines = ["# " + TIE_BREAK_LEGEND, "\t".join(TSV_COLUMNS)]
    for chi in range(1, chi_max + 1):
        for c in _c_range(chi):
            admissible = spin_admissible(Fraction(chi), c)
            if spin and not admissible:
                continue
            point = GeographyPoint(Fraction(chi), c, spin_constrained=spin)
            label = classify_point(point)
            hit = realizable(point, budget=budget)
            realized = "realized" if hit else ""
            script_ref = f"E({chi})+{-c}bl" if hit else ""
            genus = str(fibration_genus(chi)) if hit and c == 0 else ""
            lines.append(
                "\t".join(
                    [
                        str(chi),
                        str(c),
                        label.region,
                        "spin" if admissible else "",
                        realized,
                        script_ref,
                        genus,
                    ]
                )
            )
    return "\n".join(lines) + "\n"


def _svg_line(x1, y1, x2, y2, label: str, color: str) -> str:
    return (
        f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
        f'stroke="{color}" stroke-width="1"/>'
        f'<text x="{x2 + 4:.1f}" y="{y2:.1f}" font-size="10">{label}</text>'
    )


def chart_svg(chi_max: int, spin: bool = False) -> str:
    """Figure-style plot: chi_h horizontal, c vertical, the four boundary
    lines labelled, elliptic-surface dots on the chi_h-axis."""
    if chi_max < 1:
        raise ValueError("chi_max must be >= 1")
    width, height = 640, 480
    c_max = 9 * chi_max

    def px(chi: float) -> float:
        return 60 + (width - 100) * chi / chi_max

    def py(c: float) -> float:
        return height - 60 - (height - 100) * (c + 4) / (c_max + 8)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        # axes
        f'<line x1="{px(0)}" y1="{py(0)}" x2="{px(chi_max)}" y2="{py(0)}" stroke="black"/>',
        f'<line x1="{px(0)}" y1="{py(-4)}" x2="{px(0)}" y2="{py(c_max)}" stroke="black"/>',
        f'<text x="{px(chi_max) - 20}" y="{py(0) + 16}" font-size="12">chi_h</text>',
        f'<text x="{px(0) - 16}" y="{py(c_max) + 10}" font-size="12">c</text>',
    ]
    parts.append(_svg_line(px(0), py(0), px(chi_max), py(9 * chi_max), "c=9chi_h", "#aa0000"))
    parts.append(_svg_line(px(0), py(0), px(chi_max), py(8 * chi_max), "c=8chi_h", "#0000aa"))
    parts.append(_svg_line(px(3), py(0), px(chi_max), py(2 * chi_max - 6), "c=2chi_h-6", "#00aa00"))
    parts.append(_svg_line(px(3), py(0), px(chi_max), py(chi_max - 3), "c=chi_h-3", "#aa8800"))
    for n in range(1, chi_max + 1):
        if spin and not spin_admissible(Fraction(n), 0):
            continue
        parts.append(
            f'<circle cx="{px(n):.1f}" cy="{py(0):.1f}" r="3" fill="black">'
            f"<title>E({n})</title></circle>"
        )
    parts.append(
        f'<text x="60" y="{height - 20}" font-size="10">elliptic surfaces E(n) '
        f"at (n, 0); {TIE_BREAK_LEGEND}</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
