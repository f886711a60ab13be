"""Finite-difference differential geometry for the surface charts.

Everything here treats a chart as a black-box map (x, y) -> ambient
point and measures its claims numerically: induced metric, second
fundamental form, mean and Gauss curvature, the Hopf quantity and its
holomorphy, curve lengths, and a batch runner that scores a list of
charts and serializes the outcome.

Derivatives are central differences with steps proportional to
max(1, |coordinate|): first derivatives use 1e-5, second derivatives
1e-4, and the doubly-nested Gauss-curvature Laplacian 3e-2 (its inner
values carry roundoff from the first-derivative differences, so a much
larger outer step is needed to stay above it).  All residuals converge
as O(h^2) where truncation dominates, which the test suite checks by
halving steps.

Mean curvature uses the full metric trace of the second fundamental
form, so nearly-conformal but broken charts still get an honest
nonzero answer; the Gauss-curvature shortcut genuinely needs conformal
coordinates and asserts them loosely (5 percent) first.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy import integrate

from . import immersions as im
from . import lorentz as lz
from .errors import DomainError, VerificationError

H1_REL = 1e-5
H2_REL = 1e-4
HK_REL = 3e-2
CONFORMAL_SLACK = 0.05

METRIC_H2XR = np.diag([-1.0, 1.0, 1.0, 1.0])
METRIC_H2XH2 = np.diag([-1.0, 1.0, 1.0, -1.0, 1.0, 1.0])

# ambient name -> (metric, [(coordinate slice, quadric target), ...])
AMBIENTS = {
    "H31": (lz.METRIC4, [(slice(0, 4), -1.0)]),
    "H2xR": (METRIC_H2XR, [(slice(0, 3), -1.0)]),
    "H2xH2": (METRIC_H2XH2, [(slice(0, 3), -1.0), (slice(3, 6), -1.0)]),
}

DEFAULT_TOLERANCES = {
    "on_manifold": 1e-10,
    "conformality": 1e-6,
    "factor_match": 1e-6,
    "mean_curvature": 1e-5,
    "hopf_match": 1e-6,
    "cauchy_riemann": 1e-5,
}

SUITE_VERSION = 1


def ambient_inner(ambient, a, b):
    metric, _ = AMBIENTS[ambient]
    return np.einsum("...i,ij,...j->...", a, metric, b)[()]


def on_manifold_residual(chart, x, y):
    """Largest quadric violation over the sampled points."""
    p = chart.at(x, y)
    worst = 0.0
    for sl, target in AMBIENTS[chart.ambient][1]:
        q = p[..., sl]
        metric = AMBIENTS[chart.ambient][0][sl, sl]
        norms = np.einsum("...i,ij,...j->...", q, metric, q)
        worst = max(worst, float(np.max(np.abs(norms - target))))
    return worst


def _steps(coord, rel, h_scale):
    return rel * h_scale * np.maximum(1.0, np.abs(np.asarray(coord, dtype=float)))


def first_fundamental_form(chart, x, y, h_scale=1.0):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    hx = _steps(x, H1_REL, h_scale)
    hy = _steps(y, H1_REL, h_scale)
    fx = (chart.at(x + hx, y) - chart.at(x - hx, y)) / (2.0 * hx[..., None])
    fy = (chart.at(x, y + hy) - chart.at(x, y - hy)) / (2.0 * hy[..., None])
    amb = chart.ambient
    return (
        ambient_inner(amb, fx, fx),
        ambient_inner(amb, fx, fy),
        ambient_inner(amb, fy, fy),
    )


def _second_derivs(chart, x, y, h_scale=1.0):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    hx = _steps(x, H2_REL, h_scale)
    hy = _steps(y, H2_REL, h_scale)
    f0 = chart.at(x, y)
    fxx = (chart.at(x + hx, y) - 2.0 * f0 + chart.at(x - hx, y)) / (
        hx[..., None] ** 2
    )
    fyy = (chart.at(x, y + hy) - 2.0 * f0 + chart.at(x, y - hy)) / (
        hy[..., None] ** 2
    )
    fxy = (
        chart.at(x + hx, y + hy)
        - chart.at(x + hx, y - hy)
        - chart.at(x - hx, y + hy)
        + chart.at(x - hx, y - hy)
    ) / (4.0 * (hx * hy)[..., None])
    return fxx, fxy, fyy


def _assert_loosely_conformal(gxx, gxy, gyy, context):
    rel = np.maximum(np.abs(gxx - gyy), np.abs(gxy)) / np.abs(gxx)
    if np.any(rel > CONFORMAL_SLACK):
        raise VerificationError(
            f"{context}: chart is far from conformal (residual {np.max(rel):.3g})"
        )


def second_fundamental_form(chart, x, y, h_scale=1.0):
    """(hxx, hxy, hyy) against the oriented unit normal.

    The flat coordinate Hessian suffices in both ambients: the
    quadric's curvature correction is radial, and the normal is
    orthogonal to the radial direction by construction.
    """
    if chart.ambient == "H31":
        n = im.unit_normal(chart, x, y, h_scale)
    elif chart.ambient == "H2xR":
        n = h2xr_normal(chart, x, y, h_scale)
    else:
        raise DomainError(f"no second form for ambient {chart.ambient!r}")
    metric = AMBIENTS[chart.ambient][0]
    fxx, fxy, fyy = _second_derivs(chart, x, y, h_scale)
    pair = lambda a: np.einsum("...i,ij,...j->...", a, metric, n)
    return pair(fxx), pair(fxy), pair(fyy)


def mean_curvature(chart, x, y, h_scale=1.0):
    """Mean curvature from the full metric trace of the second form.

    No conformality is assumed, so a sheared or otherwise broken chart
    reports its honest nonzero value instead of a conformal-shortcut
    artifact.
    """
    gxx, gxy, gyy = first_fundamental_form(chart, x, y, h_scale)
    hxx, hxy, hyy = second_fundamental_form(chart, x, y, h_scale)
    det = gxx * gyy - gxy * gxy
    return (gyy * hxx - 2.0 * gxy * hxy + gxx * hyy) / (2.0 * det)


def _h2xr_radial(p):
    out = np.zeros_like(p)
    out[..., :3] = p[..., :3]
    return out


def h2xr_normal(chart, x, y, h_scale=1.0):
    """Unit normal of an H2xR chart inside the product's tangent space:
    orthogonal to both FD tangents and to the hyperboloid radial field,
    spacelike, oriented so that det(radial, F_x, F_y, N) > 0.
    """
    if chart.ambient != "H2xR":
        raise DomainError("h2xr_normal expects an H2xR chart")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    hx = _steps(x, H1_REL, h_scale)
    hy = _steps(y, H1_REL, h_scale)
    fx = (chart.at(x + hx, y) - chart.at(x - hx, y)) / (2.0 * hx[..., None])
    fy = (chart.at(x, y + hy) - chart.at(x, y - hy)) / (2.0 * hy[..., None])
    radial = _h2xr_radial(chart.at(x, y))
    rows = np.stack([fx, fy, radial], axis=-2) @ METRIC_H2XR
    _, _, vt = np.linalg.svd(rows)
    n = vt[..., 3, :]
    nn = ambient_inner("H2xR", n, n)
    n = n / np.sqrt(np.abs(nn))[..., None]
    frame = np.stack([radial, fx, fy, n], axis=-2)
    sign = np.sign(np.linalg.det(frame))
    return n * sign[..., None]


def shape_norm_sq(chart, x, y, h_scale=1.0):
    """|sigma|^2 = tr(g^{-1} h g^{-1} h)."""
    gxx, gxy, gyy = first_fundamental_form(chart, x, y, h_scale)
    hxx, hxy, hyy = second_fundamental_form(chart, x, y, h_scale)
    det = gxx * gyy - gxy * gxy
    # entries of S = g^{-1} h
    s11 = (gyy * hxx - gxy * hxy) / det
    s12 = (gyy * hxy - gxy * hyy) / det
    s21 = (gxx * hxy - gxy * hxx) / det
    s22 = (gxx * hyy - gxy * hxy) / det
    return s11 * s11 + 2.0 * s12 * s21 + s22 * s22


def principal_curvatures(chart, x, y, h_scale=1.0):
    """Eigenvalues of the shape operator, smaller first."""
    gxx, gxy, gyy = first_fundamental_form(chart, x, y, h_scale)
    hxx, hxy, hyy = second_fundamental_form(chart, x, y, h_scale)
    det = gxx * gyy - gxy * gxy
    s11 = (gyy * hxx - gxy * hxy) / det
    s12 = (gyy * hxy - gxy * hyy) / det
    s21 = (gxx * hxy - gxy * hxx) / det
    s22 = (gxx * hyy - gxy * hxy) / det
    half_tr = 0.5 * (s11 + s22)
    disc = np.sqrt(np.maximum(half_tr * half_tr - (s11 * s22 - s12 * s21), 0.0))
    return half_tr - disc, half_tr + disc


def hopf_differential(chart, x, y, h_scale=1.0):
    """The quadratic-differential coefficient theta(x, y) as a complex array.

    For H31 charts this is the complex pairing of the z-derivatives of
    position and normal, computed through the identity
    <phi_z, N_z> = -<phi_zz, N> (differentiate <phi_z, N> = 0), which
    needs one normal per point instead of a difference of normals.

    For H2xR charts it is the Hopf differential of the hyperboloid
    factor as a harmonic map, <F_z, F_z> in the factor metric; for a
    conformal chart this equals minus the squared z-derivative of the
    line coordinate, so it is the quantity that is constant exactly
    when the chart is one of the minimal companions.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if chart.ambient == "H31":
        hxx, hxy, hyy = second_fundamental_form(chart, x, y, h_scale)
        return -0.25 * ((hxx - hyy) - 2.0j * hxy)
    if chart.ambient == "H2xR":
        hx = _steps(x, H1_REL, h_scale)
        hy = _steps(y, H1_REL, h_scale)
        fx = (chart.at(x + hx, y) - chart.at(x - hx, y)) / (2.0 * hx[..., None])
        fy = (chart.at(x, y + hy) - chart.at(x, y - hy)) / (2.0 * hy[..., None])
        fx3 = fx[..., :3]
        fy3 = fy[..., :3]
        def pair3(a, b):
            return np.einsum("...i,ij,...j->...", a, lz.METRIC3, b)
        re = pair3(fx3, fx3) - pair3(fy3, fy3)
        imag = 2.0 * pair3(fx3, fy3)
        return 0.25 * (re - 1.0j * imag)
    raise DomainError(f"no Hopf formula for ambient {chart.ambient!r}")


def angle_function(chart, x, y, h_scale=1.0):
    """Vertical component of the H2xR unit normal."""
    return h2xr_normal(chart, x, y, h_scale)[..., 3]


def cauchy_riemann_residual(theta, dx, dy):
    """max |d theta/dx + i d theta/dy| / 2 over interior grid points.

    ``theta`` is a 2-D complex array sampled on a uniform grid with x
    varying along the last axis.
    """
    theta = np.asarray(theta)
    if theta.ndim != 2 or theta.shape[0] < 3 or theta.shape[1] < 3:
        raise DomainError("need at least a 3x3 grid of theta values")
    tx = (theta[1:-1, 2:] - theta[1:-1, :-2]) / (2.0 * dx)
    ty = (theta[2:, 1:-1] - theta[:-2, 1:-1]) / (2.0 * dy)
    return float(np.max(np.abs(0.5 * (tx + 1.0j * ty))))


def gauss_curvature(chart, x, y, h_scale=1.0):
    """K = -exp(-2u) * Laplacian(u) with u = half log g_xx."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    gxx, gxy, gyy = first_fundamental_form(chart, x, y, h_scale)
    _assert_loosely_conformal(gxx, gxy, gyy, "gauss_curvature")

    def u(xx, yy):
        g, _, _ = first_fundamental_form(chart, xx, yy, h_scale)
        return 0.5 * np.log(g)

    hx = _steps(x, HK_REL, h_scale)
    hy = _steps(y, HK_REL, h_scale)
    u0 = 0.5 * np.log(gxx)
    lap = (u(x + hx, y) - 2.0 * u0 + u(x - hx, y)) / hx ** 2 + (
        u(x, y + hy) - 2.0 * u0 + u(x, y - hy)
    ) / hy ** 2
    return -np.exp(-2.0 * u0) * lap


def curve_length(chart, gamma, t0, t1, h_scale=1.0):
    """Arc length of t -> chart(gamma(t)) by adaptive quadrature.

    ``gamma`` maps a parameter value to a coordinate pair; its velocity
    is taken by central differences.
    """

    def speed(t):
        ht = 1e-6 * max(1.0, abs(t))
        xa, ya = gamma(t - ht)
        xb, yb = gamma(t + ht)
        dxdt = (xb - xa) / (2.0 * ht)
        dydt = (yb - ya) / (2.0 * ht)
        xm, ym = gamma(t)
        gxx, gxy, gyy = first_fundamental_form(
            chart, np.asarray(xm), np.asarray(ym), h_scale
        )
        val = gxx * dxdt * dxdt + 2.0 * gxy * dxdt * dydt + gyy * dydt * dydt
        return math.sqrt(max(float(val), 0.0))

    length, _ = integrate.quad(speed, t0, t1, epsabs=1e-11, epsrel=1e-10, limit=200)
    return length


@dataclass(frozen=True)
class CheckResult:
    residual: float
    tolerance: float
    passed: bool


@dataclass
class ChartReport:
    label: str
    nx: int
    ny: int
    bounds: Tuple[float, float, float, float]
    checks: Dict[str, CheckResult] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks.values())


@dataclass
class VerificationReport:
    charts: List[ChartReport] = field(default_factory=list)
    h_scale: float = 1.0

    @property
    def passed(self):
        return all(c.passed for c in self.charts)

    def to_text(self):
        lines = [f"suite_version: {SUITE_VERSION}", f"h_scale: {self.h_scale:g}"]
        for ch in self.charts:
            lines.append(f"chart: {ch.label}")
            x0, x1, y0, y1 = ch.bounds
            lines.append(
                f"  grid: {ch.nx}x{ch.ny} over [{x0:.6g},{x1:.6g}]x[{y0:.6g},{y1:.6g}]"
            )
            for name, res in ch.checks.items():
                verdict = "pass" if res.passed else "FAIL"
                lines.append(
                    f"  {name}: residual={res.residual:.6e} tol={res.tolerance:.1e} {verdict}"
                )
            for note in ch.notes:
                lines.append(f"  note: {note}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        doc = {
            "version": SUITE_VERSION,
            "h_scale": self.h_scale,
            "overall_pass": self.passed,
            "charts": [
                {
                    "label": ch.label,
                    "grid": {"nx": ch.nx, "ny": ch.ny, "bounds": list(ch.bounds)},
                    "passed": ch.passed,
                    "checks": {
                        name: {
                            "residual": res.residual,
                            "tolerance": res.tolerance,
                            "passed": res.passed,
                        }
                        for name, res in ch.checks.items()
                    },
                    "notes": ch.notes,
                }
                for ch in self.charts
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True)


CR_MIN_SPAN = 1e-2


def _cr_stride(step, n):
    want = max(3, math.ceil(CR_MIN_SPAN / step)) if step > 0 else 3
    return max(1, min(want, (n - 1) // 2))


def _inner_window(domain, keep=0.9):
    x0, x1, y0, y1 = domain
    mx = 0.5 * (1.0 - keep) * (x1 - x0)
    my = 0.5 * (1.0 - keep) * (y1 - y0)
    return (x0 + mx, x1 - mx, y0 + my, y1 - my)


def run_suite(charts, grid=(61, 61), tolerances=None, h_scale=1.0):
    """Score every chart on its inner-90% window; never aborts on a
    failing check, only records it.

    Paired-Gauss charts (ambient H2xH2) evaluate through a second FD
    layer, which raises their metric noise floor; their conformality
    and factor tolerances are widened tenfold to compensate.
    """
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    nx, ny = grid
    if nx < 3 or ny < 3:
        raise DomainError(f"grid {nx}x{ny} is too small to verify anything")
    report = VerificationReport(h_scale=h_scale)
    for chart in charts:
        bounds = _inner_window(chart.domain)
        x0, x1, y0, y1 = bounds
        xs = np.linspace(x0, x1, nx)
        ys = np.linspace(y0, y1, ny)
        xg, yg = np.meshgrid(xs, ys)
        ch = ChartReport(label=chart.label, nx=nx, ny=ny, bounds=bounds)
        report.charts.append(ch)
        metric_scale = 10.0 if chart.ambient == "H2xH2" else 1.0

        def record(name, fn, tol_scale=1.0):
            limit = tol[name] * tol_scale
            try:
                resid = float(fn())
            except Exception as exc:  # noqa: BLE001 - aggregate, never abort
                ch.checks[name] = CheckResult(math.inf, limit, False)
                ch.notes.append(f"{name} raised {type(exc).__name__}: {exc}")
                return
            ch.checks[name] = CheckResult(resid, limit, resid < limit)

        record("on_manifold", lambda: on_manifold_residual(chart, xg, yg), metric_scale)

        forms = {}

        def conformality():
            gxx, gxy, gyy = first_fundamental_form(chart, xg, yg, h_scale)
            forms["g"] = (gxx, gxy, gyy)
            return np.max(np.maximum(np.abs(gxx - gyy), np.abs(gxy)) / gxx)

        record("conformality", conformality, metric_scale)

        if chart.conformal_factor is not None and "g" in forms:
            def factor_match():
                gxx = forms["g"][0]
                decl = chart.conformal_factor(xg, yg)
                return np.max(np.abs(gxx - decl) / np.abs(decl))

            record("factor_match", factor_match, metric_scale)

        if chart.ambient in ("H31", "H2xR"):
            record(
                "mean_curvature",
                lambda: np.max(np.abs(mean_curvature(chart, xg, yg, h_scale))),
            )
            thetas = {}

            def hopf_match():
                th = hopf_differential(chart, xg, yg, h_scale)
                thetas["theta"] = th
                if chart.hopf_constant is None:
                    return 0.0
                return np.max(np.abs(th - complex(chart.hopf_constant)))

            if chart.hopf_constant is not None:
                record("hopf_match", hopf_match)
                if "theta" in thetas:
                    # subsample so the CR differences span at least ~1e-2
                    # in each coordinate, else grid roundoff in theta is
                    # amplified by the small spacing
                    sx = _cr_stride(xs[1] - xs[0], nx)
                    sy = _cr_stride(ys[1] - ys[0], ny)
                    record(
                        "cauchy_riemann",
                        lambda: cauchy_riemann_residual(
                            thetas["theta"][::sy, ::sx],
                            (xs[1] - xs[0]) * sx,
                            (ys[1] - ys[0]) * sy,
                        ),
                    )
    return report
