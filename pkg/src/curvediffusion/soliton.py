"""Soliton detection: fit each self-similar ansatz and classify.

A curve evolving under the flow only by scaling, translation, or rotation
must satisfy one of three pointwise equations in its geometric fields:

    shrinker/expander:  kappa_ss + K <gamma, nu>   = 0
    translator:         kappa_ss + <V, nu>         = 0
    rotator:            kappa_ss + 2 S <tangent, gamma> = 0

and a stationary curve has kappa affine in arc length, kappa = k2 s + k1.
Each fit here is an arc-length-weighted least-squares solve of the
corresponding linear model with a closed-form normal equation, so results
are deterministic and need no iterative solver.

Residual normalization. Every residual is the weighted L2 norm of the
defect divided by a curvature-derivative scale, making it dimensionless
and invariant under scaling of the curve. The denominator is

    max(||kappa_ss||, ||kappa|| * (2 pi / L)^2)

rather than ||kappa_ss|| alone: on exact zero-kappa_ss inputs (circles,
clothoids) the raw kappa_ss field is pure discretization noise and a
noise/noise quotient would sit near 1 instead of near 0. Both terms scale
the same way under dilation, so scale invariance is preserved. The
stationary fit divides by ||kappa|| instead (its defect lives at the
level of kappa).

Shrinker fits quotient out translations: the shrinker equation fixes the
homothety center at the origin, so the inner product <gamma, nu> of a
shifted input would be polluted by a <c, nu> term. Fitting K jointly with
a free vector times nu removes exactly that term and makes the reported K
independent of where the input happens to sit in the plane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CurveDiffusionError, DegenerateGeometry, OpenCurve
from .geometry import CurveFields, DiscreteCurve, arc_derivative, curve_fields

# Relative threshold for degenerate normal equations.
_DEGENERATE_COND = 1e12
# Denominator floor for the shrinker and rotator fits, relative to L^3.
_DEGENERATE_DEN = 1e-12
# Default classification tolerance; N=256 exact-soliton samples pass it
# and the seeded perturbed-ellipse fixture fails it.
DEFAULT_TOL = 1e-2

VERDICT_PRIORITY = ("stationary", "shrinker", "translator", "rotator")


@dataclass(frozen=True)
class StationaryFit:
    k1: float
    k2: float
    residual: float


@dataclass(frozen=True)
class ShrinkerFit:
    K: float
    residual: float


@dataclass(frozen=True)
class TranslatorFit:
    V: tuple[float, float]
    residual: float
    # True when the normal directions were too degenerate to identify both
    # components (straight lines): only the component along nu is fitted.
    constrained: bool = False


@dataclass(frozen=True)
class RotatorFit:
    # None means Indeterminate: the curve is invariant enough that S drops
    # out of the equation (origin-centered circles); residual is at S = 0.
    S: float | None
    residual: float


@dataclass(frozen=True)
class SolitonReport:
    stationary: StationaryFit | None
    shrinker: ShrinkerFit | None
    translator: TranslatorFit | None
    rotator: RotatorFit | None
    unavailable: dict
    verdict: str | None


def _wnorm(values: np.ndarray, dl: np.ndarray) -> float:
    return float(np.sqrt(np.sum(values**2 * dl)))


def defect_scale(fields: CurveFields) -> float:
    """Normalization scale for kappa_ss-level defects (see module docstring)."""
    total = fields.length
    return max(
        _wnorm(fields.kappa_ss, fields.dl),
        _wnorm(fields.kappa, fields.dl) * (2.0 * np.pi / total) ** 2,
    )


def _normalized(defect: np.ndarray, fields: CurveFields) -> float:
    scale = defect_scale(fields)
    value = _wnorm(defect, fields.dl)
    return 0.0 if scale == 0.0 else value / scale


def fit_stationary(curve: DiscreteCurve, fields: CurveFields | None = None) -> StationaryFit:
    """Weighted linear regression of kappa against arc length.

    The slope is k2; the intercept k1 is reported at the arc-length
    centroid of the sample, which makes it independent of where the
    sample window starts along the curve. The residual is normalized by
    ||kappa||.
    """
    fields = curve_fields(curve) if fields is None else fields
    dl, s, kap = fields.dl, fields.s, fields.kappa
    total = fields.length
    s_bar = float(np.sum(s * dl) / total)
    ds = s - s_bar
    denom = float(np.sum(ds**2 * dl))
    k2 = float(np.sum(kap * ds * dl) / denom)
    k1 = float(np.sum(kap * dl) / total)
    defect = kap - (k1 + k2 * ds)
    nk = _wnorm(kap, dl)
    residual = 0.0 if nk == 0.0 else _wnorm(defect, dl) / nk
    return StationaryFit(k1=k1, k2=k2, residual=residual)


def fit_shrinker(curve: DiscreteCurve, fields: CurveFields | None = None) -> ShrinkerFit:
    """Least-squares K in kappa_ss + K <gamma, nu> = 0 (translations quotiented).

    K < 0 is the shrinking case with extinction time T = -rho^4 / (4 K);
    K > 0 would expand. Raises DegenerateGeometry when <gamma, nu> is
    identically zero in the weighted sense (straight line through the
    origin), where K is meaningless.
    """
    fields = curve_fields(curve) if fields is None else fields
    dl, nu, kss = fields.dl, fields.normal, fields.kappa_ss
    gdn = np.sum(curve.nodes * nu, axis=1)
    total = fields.length
    if float(np.sum(gdn**2 * dl)) <= _DEGENERATE_DEN * total**3:
        raise DegenerateGeometry(
            "<gamma, nu> vanishes along the curve; the shrinker constant "
            "is not identifiable"
        )
    design = np.column_stack([gdn, nu[:, 0], nu[:, 1]])
    gram = design.T @ (design * dl[:, None])
    if np.linalg.cond(gram) >= _DEGENERATE_COND:
        raise DegenerateGeometry("shrinker normal equations are singular")
    coef = np.linalg.solve(gram, design.T @ (-kss * dl))
    defect = kss + design @ coef
    return ShrinkerFit(K=float(coef[0]), residual=_normalized(defect, fields))


def fit_translator(curve: DiscreteCurve, fields: CurveFields | None = None) -> TranslatorFit:
    """Least-squares V in kappa_ss + <V, nu> = 0.

    When the 2x2 normal-equation matrix is near-singular (all normals
    parallel, e.g. a straight line) only the component of V along nu is
    identifiable; that one-dimensional fit is returned with the
    constrained flag set instead of raising.
    """
    fields = curve_fields(curve) if fields is None else fields
    dl, nu, kss = fields.dl, fields.normal, fields.kappa_ss
    m = nu.T @ (nu * dl[:, None])
    b = nu.T @ (-kss * dl)
    constrained = bool(np.linalg.cond(m) >= _DEGENERATE_COND)
    if constrained:
        w, vecs = np.linalg.eigh(m)
        dominant = vecs[:, -1]
        v = (float(dominant @ b) / float(w[-1])) * dominant
    else:
        v = np.linalg.solve(m, b)
    defect = kss + nu @ v
    return TranslatorFit(
        V=(float(v[0]), float(v[1])),
        residual=_normalized(defect, fields),
        constrained=constrained,
    )


def fit_rotator(curve: DiscreteCurve, fields: CurveFields | None = None) -> RotatorFit:
    """Least-squares S in kappa_ss + 2 S <tangent, gamma> = 0.

    <tangent, gamma> is half the arc-length derivative of |gamma|^2, so it
    vanishes identically on origin-centered circles; the fit then returns
    S = None (Indeterminate) with the residual evaluated at S = 0. That is
    a reported state, not an error.
    """
    fields = curve_fields(curve) if fields is None else fields
    dl, kss = fields.dl, fields.kappa_ss
    g = 2.0 * np.sum(fields.tangent * curve.nodes, axis=1)
    total = fields.length
    denom = float(np.sum(g**2 * dl))
    if denom < _DEGENERATE_DEN * total**3:
        return RotatorFit(S=None, residual=_normalized(kss, fields))
    s_hat = float(-np.sum(kss * g * dl) / denom)
    defect = kss + s_hat * g
    return RotatorFit(S=s_hat, residual=_normalized(defect, fields))


def classify(curve: DiscreteCurve, tol: float = DEFAULT_TOL) -> SolitonReport:
    """Run all four fits and pick a verdict.

    The verdict is the class of smallest residual among those below tol.
    Ties go to the earlier class in the order stationary > shrinker >
    translator > rotator: a curve that is exactly stationary satisfies the
    other three equations trivially (a straight line has residual 0.0 for
    both the stationary and the translator fit, for example), and the more
    specific description should win. A shrinker verdict with K > 0 is
    relabelled "expander". If no residual is below tol the verdict is
    None. Fit errors become per-class entries in `unavailable` rather
    than exceptions.
    """
    fields = curve_fields(curve)
    fits: dict[str, object] = {}
    unavailable: dict[str, str] = {}
    for name, fit in (
        ("stationary", fit_stationary),
        ("shrinker", fit_shrinker),
        ("translator", fit_translator),
        ("rotator", fit_rotator),
    ):
        try:
            fits[name] = fit(curve, fields)
        except CurveDiffusionError as exc:
            unavailable[name] = str(exc)

    candidates = [
        (fits[name].residual, rank, name)
        for rank, name in enumerate(VERDICT_PRIORITY)
        if name in fits and fits[name].residual < tol
    ]
    verdict = min(candidates)[2] if candidates else None
    if verdict == "shrinker" and fits["shrinker"].K > 0.0:
        verdict = "expander"

    return SolitonReport(
        stationary=fits.get("stationary"),
        shrinker=fits.get("shrinker"),
        translator=fits.get("translator"),
        rotator=fits.get("rotator"),
        unavailable=unavailable,
        verdict=verdict,
    )


def _sig6(value: float) -> float:
    return float(f"{value:.6g}")


def report_to_dict(report: SolitonReport) -> dict:
    """JSON-ready dict; residuals are rounded to 6 significant digits."""
    out: dict = {}
    if report.stationary is not None:
        f = report.stationary
        out["stationary"] = {"k1": f.k1, "k2": f.k2, "residual": _sig6(f.residual)}
    else:
        out["stationary"] = {"unavailable": report.unavailable.get("stationary", "")}
    if report.shrinker is not None:
        f = report.shrinker
        out["shrinker"] = {"K": f.K, "residual": _sig6(f.residual)}
    else:
        out["shrinker"] = {"unavailable": report.unavailable.get("shrinker", "")}
    if report.translator is not None:
        f = report.translator
        entry = {"V": [f.V[0], f.V[1]], "residual": _sig6(f.residual)}
        if f.constrained:
            entry["constrained"] = True
        out["translator"] = entry
    else:
        out["translator"] = {"unavailable": report.unavailable.get("translator", "")}
    if report.rotator is not None:
        f = report.rotator
        out["rotator"] = {"S": f.S, "residual": _sig6(f.residual)}
    else:
        out["rotator"] = {"unavailable": report.unavailable.get("rotator", "")}
    out["verdict"] = report.verdict if report.verdict is not None else "none"
    return out


def curvature_energy_identity(curve: DiscreteCurve) -> tuple[float, float]:
    """Closed-curve pair (sum kappa_s^2 dl, sum kappa kappa_ss dl).

    Integration by parts around a closed curve makes the two sums exact
    negatives of each other in the continuum; the discrete defect
    |a + b| is O(h^2) relative to a. The vanishing of this combination is
    what forces closed translators to be trivial.
    """
    if not curve.closed:
        raise OpenCurve("the curvature energy identity is for closed curves")
    fields = curve_fields(curve)
    a = float(np.sum(fields.kappa_s**2 * fields.dl))
    b = float(np.sum(fields.kappa * fields.kappa_ss * fields.dl))
    return a, b


def normal_flux_identity(curve: DiscreteCurve, v) -> float:
    """sum <v, kappa nu> dl for a fixed vector v; O(h^2)-small when closed.

    The curvature vector integrates to zero around a closed curve, so this
    flux vanishes for every direction v.
    """
    if not curve.closed:
        raise OpenCurve("the normal flux identity is for closed curves")
    fields = curve_fields(curve)
    v = np.asarray(v, dtype=float)
    return float(np.sum(fields.kappa * (fields.normal @ v) * fields.dl))


def frame_position_identity(curve: DiscreteCurve) -> tuple[float, float]:
    """Closed-curve pair (sum <nu_s, gamma> dl, sum <nu, gamma_s> dl).

    Their sum is the integral of d/ds <nu, gamma> around the curve, hence
    zero in the continuum; the discrete sum is O(h^2). This is the
    mechanism that forces closed rotators to be trivial.
    """
    if not curve.closed:
        raise OpenCurve("the frame position identity is for closed curves")
    fields = curve_fields(curve)
    nu_s = arc_derivative(curve, fields.normal)
    a = float(np.sum(np.sum(nu_s * curve.nodes, axis=1) * fields.dl))
    b = float(np.sum(np.sum(fields.normal * fields.tangent, axis=1) * fields.dl))
    return a, b


def open_translator_identity(curve: DiscreteCurve, v) -> tuple[float, float]:
    """Open-curve pair (sum kappa_s^2 dl, boundary term [<v, tangent> + kappa kappa_s]).

    For a translator with velocity v the two agree: d/ds of
    <v, tangent> + kappa kappa_s is kappa_s^2 along solutions. The
    boundary term is evaluated last-node minus first-node.
    """
    if curve.closed:
        raise OpenCurve("the boundary identity needs an open curve window")
    fields = curve_fields(curve)
    v = np.asarray(v, dtype=float)
    integral = float(np.sum(fields.kappa_s**2 * fields.dl))
    flux = fields.tangent @ v + fields.kappa * fields.kappa_s
    boundary = float(flux[-1] - flux[0])
    return integral, boundary
