"""Explicit surface charts and the Gauss-map constructions linking them.

A SurfaceChart bundles a conformal parametrization (x, y) -> ambient
point with its declared conformal factor and (constant) Hopf quantity,
so the verification layer can score every claim numerically.  Ambient
points are flat arrays:

    "H31"   (..., 4)  on <p,p> = -1 in the ++-- space,
    "H2xR"  (..., 4)  first three = hyperboloid factor (timelike first),
                      last = the real line coordinate,
    "H2xH2" (..., 6)  two hyperboloid factors side by side.

Chart families:

  * the totally geodesic plane cut out by x4 = 0, in a half-plane
    conformal chart (factor 1/y^2),
  * the flat hyperbolic cylinders, one for each phase t (factor 1),
  * the energy family of maximal charts built on a sinh-Gordon profile
    v (factor e^{2v}, Hopf sign(E)/2), one formula per sign of the
    energy,
  * their minimal companions in H2xR (factor 4 cosh^2 v, Hopf -i).

The Gauss map sends a point of an H31 chart to the pair of unit
timelike bivectors (e1^e2 +- N^phi)/sqrt(2), expressed in hyperboloid
coordinates of the two star eigenspaces; pairing the + half of one
chart with the - half of a matched-Hopf chart is what produces minimal
surfaces in H2xH2, and against a cylinder specifically, in H2xR.

Every chart evaluation is pure; grids may be evaluated in any order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from . import lorentz as lz
from . import sinhgordon as sg
from .errors import (
    DegenerateTangentError,
    DomainError,
    HopfMismatchError,
    OffManifoldError,
)

FD_STEP_REL = 1e-5
HOPF_MATCH_TOL = 1e-8

# default x-ranges for verification grids back away from blow-up: keep
# |v| below V_CAP and, for negative energy, the squared normal-component
# -2E - e^{2v} above F_FLOOR_FRAC of its largest value on the range
V_CAP = 1.8
F_FLOOR_FRAC = 0.5

AMBIENT_DIMS = {"H31": 4, "H2xR": 4, "H2xH2": 6}


@dataclass(frozen=True)
class SurfaceChart:
    """A conformal parametrization with its declared invariants.

    ``eval_fn`` maps broadcastable coordinate arrays (x, y) to ambient
    points of shape (..., dim).  ``conformal_factor`` is the declared
    function (x, y) -> induced g_xx; ``hopf_constant`` the declared
    constant of the quadratic differential, or None when the family has
    no declared value.  ``domain`` is the open rectangle
    (x_lo, x_hi, y_lo, y_hi) that samples must stay inside.
    """

    label: str
    ambient: str
    domain: tuple
    eval_fn: Callable
    conformal_factor: Optional[Callable]
    hopf_constant: Optional[complex]

    def at(self, x, y):
        return self.eval_fn(x, y)


class GaussPair(NamedTuple):
    plus: np.ndarray
    minus: np.ndarray


def totally_geodesic_B(u, phi):
    """Point (sinh u cos phi, sinh u sin phi, cosh u, 0) of the x4 = 0 plane."""
    u = np.asarray(u, dtype=float)
    phi = np.asarray(phi, dtype=float)
    shape = np.broadcast(u, phi).shape
    comps = [np.sinh(u) * np.cos(phi), np.sinh(u) * np.sin(phi),
             np.cosh(u), np.zeros(shape)]
    return np.stack(
        [np.broadcast_to(np.asarray(ci, dtype=float), shape) for ci in comps],
        axis=-1,
    )


def geodesic_plane_chart(domain=(-0.9, 0.9, 0.35, 2.4)):
    """Conformal chart of the totally geodesic plane, factor 1/y^2.

    Built on the upper half-plane model of the hyperbolic plane; the
    x -> -x mirror is baked in so that the chart is positively oriented
    for the package's normal convention (the Gauss map then lands on the
    upper hyperboloid sheets).
    """

    def eval_fn(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        r2 = x * x + y * y
        p1 = (1.0 + r2) / (2.0 * y)
        p2 = -x / y
        p3 = (1.0 - r2) / (2.0 * y)
        return np.stack([p2, p3, p1, np.zeros_like(p1)], axis=-1)

    return SurfaceChart(
        label="totally-geodesic-plane",
        ambient="H31",
        domain=domain,
        eval_fn=eval_fn,
        conformal_factor=lambda x, y: 1.0 / np.asarray(y, dtype=float) ** 2,
        hopf_constant=0.0 + 0.0j,
    )


def hyperbolic_cylinder(t, domain=(-1.2, 1.2, -1.2, 1.2)):
    """The flat maximal cylinder of phase t; factor 1, Hopf (i/2)e^{it}."""
    t = float(t)
    ct, st = math.cos(0.5 * t), math.sin(0.5 * t)
    r = 1.0 / math.sqrt(2.0)

    def eval_fn(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        a = (x + y) * ct + (x - y) * st
        b = (y - x) * ct + (x + y) * st
        return np.stack(
            [r * np.sinh(a), r * np.sinh(b), r * np.cosh(a), r * np.cosh(b)],
            axis=-1,
        )

    return SurfaceChart(
        label=f"hyperbolic-cylinder(t={t:g})",
        ambient="H31",
        domain=domain,
        eval_fn=eval_fn,
        conformal_factor=lambda x, y: np.ones(np.broadcast(x, y).shape),
        hopf_constant=0.5j * complex(math.cos(t), math.sin(t)),
    )


def _G_on_grid(s, x, base):
    """Phase integral over an array, deduplicating repeated x values."""
    flat = np.asarray(x, dtype=float).ravel()
    out = np.empty(flat.shape)
    cache = {}
    for i, xv in enumerate(flat):
        key = float(xv)
        if key not in cache:
            cache[key] = sg.G_integral(s, key, base)
        out[i] = cache[key]
    return out.reshape(np.shape(x))


def _profile_x_range(s):
    """Definition interval (E >= 0) or admissible interval (E < 0)."""
    if s.energy < 0.0:
        return sg.admissible_interval(s)
    return s.interval


def tame_x_bounds(s, v_cap=V_CAP, f_floor_frac=F_FLOOR_FRAC):
    """Default verification x-range: the component of the base point where
    |v| stays below ``v_cap`` and (negative energy only) the quantity
    -2E - e^{2v} keeps at least ``f_floor_frac`` of its ceiling.

    Finite-difference truncation errors blow up with exp(|v|) and with
    the phase-integral denominator, so verification grids stay here;
    figure meshes may use wider eval-only ranges.
    """
    lo, hi = _profile_x_range(s)
    lo = max(lo, -4.0)
    hi = min(hi, 4.0)
    if s.branch == "ConstantZero":
        return (lo, hi)
    base = sg.default_base_point(s)
    base = min(max(base, lo + 1e-12), hi - 1e-12)

    pad = 1e-9 * (hi - lo)
    probe = np.sort(np.append(np.linspace(lo + pad, hi - pad, 800), base))
    if s.energy < 0.0:
        # floor for -2E - e^{2v} is a fraction of its sup over the range,
        # not of -2E itself: near the energy floor the sup is tiny
        ceiling = -2.0 * s.energy
        e2v_inf = min(math.exp(2.0 * sg.eval_v(s, float(xv))) for xv in probe)
        f2_floor = f_floor_frac * (ceiling - e2v_inf)
        if f2_floor <= 0.0:
            raise DomainError("admissible range is entirely degenerate")

    v_cap = max(v_cap, abs(sg.eval_v(s, base)) + 0.5)

    def ok(xv):
        v = sg.eval_v(s, xv)
        if abs(v) > v_cap:
            return False
        if s.energy < 0.0 and ceiling - math.exp(2.0 * v) < f2_floor:
            return False
        return True

    if not ok(base):
        raise DomainError(
            f"no tame verification window around the base point for {s.branch}"
        )

    def edge(a, b):
        # a is ok, b is not (or b is the hard boundary); bisect the flip
        for _ in range(80):
            m = 0.5 * (a + b)
            if ok(m):
                a = m
            else:
                b = m
        return a

    xs = probe
    mask = np.array([ok(float(xv)) for xv in xs])
    i0 = int(np.searchsorted(xs, base))
    i_lo = i0
    while i_lo > 0 and mask[i_lo - 1]:
        i_lo -= 1
    i_hi = i0
    while i_hi < len(xs) - 1 and mask[i_hi + 1]:
        i_hi += 1
    left = edge(xs[i_lo], xs[i_lo - 1]) if i_lo > 0 else xs[0]
    right = edge(xs[i_hi], xs[i_hi + 1]) if i_hi < len(xs) - 1 else xs[-1]
    return (float(left), float(right))


def maximal_phi_E(s, x_bounds=None, y_bounds=(-1.0, 1.0), base=None):
    """Maximal chart in H31 over a sinh-Gordon profile; Hopf sign(E)/2.

    The energy's sign selects the circular or hyperbolic formula; both
    carry the overall prefactor 1/sqrt(2|E|) on every component.  x must
    stay in the definition interval (positive energy) or the admissible
    interval (negative energy); energy 0 has no formula and is rejected.

    With the positively-oriented normal frame the Hopf constant of the
    hyperbolic formula comes out -1/2, not +1/2: the two formulas differ
    by an orientation-reversing ambient isometry (swap the first two
    coordinates at E = -1 to land on a standard cylinder), which flips
    the sign of the Hopf differential.  The declared constant records
    the sign the formula actually realises.
    """
    if s.energy == 0.0:
        raise DomainError("no immersion formula at energy 0")
    if base is None:
        base = sg.default_base_point(s)
    x_lo, x_hi = x_bounds if x_bounds is not None else tame_x_bounds(s)
    rng_lo, rng_hi = _profile_x_range(s)
    if not (rng_lo <= x_lo < x_hi <= rng_hi):
        raise DomainError("x_bounds leave the chart's admissible range")
    energy = s.energy
    c = math.sqrt(2.0 * abs(energy))

    def eval_fn(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        _reject_outside(x, rng_lo, rng_hi)
        v = sg.eval_v(s, x)
        g = _G_on_grid(s, x, base)
        ev = np.exp(v)
        if energy > 0.0:
            f = np.sqrt(2.0 * energy + ev * ev)
            comps = [
                ev * np.cos(c * y),
                -ev * np.sin(c * y),
                -f * np.cos(c * g),
                -f * np.sin(c * g),
            ]
        else:
            f2 = -2.0 * energy - ev * ev
            if np.any(f2 <= 0.0):
                raise DomainError("point outside the admissible region")
            f = np.sqrt(f2)
            comps = [
                f * np.sinh(c * g),
                ev * np.sinh(c * y),
                ev * np.cosh(c * y),
                f * np.cosh(c * g),
            ]
        shape = np.broadcast(x, y).shape
        comps = [np.broadcast_to(np.asarray(ci, dtype=float), shape) for ci in comps]
        return np.stack(comps, axis=-1) / c

    def factor(x, y):
        v = sg.eval_v(s, np.asarray(x, dtype=float))
        return np.broadcast_to(np.exp(2.0 * v), np.broadcast(x, y).shape).copy()

    return SurfaceChart(
        label=f"ads-maximal(E={energy:g})",
        ambient="H31",
        domain=(x_lo, x_hi, y_bounds[0], y_bounds[1]),
        eval_fn=eval_fn,
        conformal_factor=factor,
        hopf_constant=complex(math.copysign(0.5, energy)),
    )


def _reject_outside(x, lo, hi):
    if np.any(x <= lo) or np.any(x >= hi):
        raise DomainError(f"x outside the open range ]{lo}, {hi}[")


def minimal_Phi_E(s, x_bounds=None, y_bounds=(-1.0, 1.0), base=None):
    """Minimal chart in H2xR over the same profile; factor 4 cosh^2 v.

    The hyperboloid factor is timelike-first for both energy signs (the
    quadric forces it; see the coordinate-role note in the README); the
    line coordinate is sqrt(2) (y - x).  Declared Hopf constant -i.
    """
    if s.energy == 0.0:
        raise DomainError("no immersion formula at energy 0")
    if base is None:
        base = sg.default_base_point(s)
    x_lo, x_hi = x_bounds if x_bounds is not None else tame_x_bounds(s)
    rng_lo, rng_hi = _profile_x_range(s)
    if not (rng_lo <= x_lo < x_hi <= rng_hi):
        raise DomainError("x_bounds leave the chart's admissible range")
    energy = s.energy
    c = math.sqrt(2.0 * abs(energy))

    def eval_fn(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        _reject_outside(x, rng_lo, rng_hi)
        v = sg.eval_v(s, x)
        dv = sg.eval_v_prime(s, x)
        g = _G_on_grid(s, x, base)
        ev = np.exp(v)
        w = c * (y - g)
        if energy > 0.0:
            f = np.sqrt(2.0 * energy + ev * ev)
            a = (c / ev) * np.cos(w) - dv * ev * np.sin(w)
            b = (c / ev) * np.sin(w) + dv * ev * np.cos(w)
            q = [dv + 0.0 * w, a / f, b / f]
        else:
            f2 = -2.0 * energy - ev * ev
            if np.any(f2 <= 0.0):
                raise DomainError("point outside the admissible region")
            f = np.sqrt(f2)
            a = (c / ev) * np.cosh(w) - dv * ev * np.sinh(w)
            b = -(c / ev) * np.sinh(w) + dv * ev * np.cosh(w)
            q = [a / f, dv + 0.0 * w, b / f]
        line = math.sqrt(2.0) * (y - x) + 0.0 * w
        return np.stack([q[0] / c, q[1] / c, q[2] / c, line], axis=-1)

    def factor(x, y):
        v = sg.eval_v(s, np.asarray(x, dtype=float))
        return np.broadcast_to(
            4.0 * np.cosh(v) ** 2, np.broadcast(x, y).shape
        ).copy()

    return SurfaceChart(
        label=f"h2xr-minimal(E={energy:g})",
        ambient="H2xR",
        domain=(x_lo, x_hi, y_bounds[0], y_bounds[1]),
        eval_fn=eval_fn,
        conformal_factor=factor,
        hopf_constant=-1.0j,
    )


def _fd_step(coord):
    return FD_STEP_REL * np.maximum(1.0, np.abs(coord))


def _tangents(chart, x, y, h_scale=1.0):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    hx = (_fd_step(x) * h_scale)[..., None]
    hy = (_fd_step(y) * h_scale)[..., None]
    hx0 = hx[..., 0]
    hy0 = hy[..., 0]
    fx = (chart.at(x + hx0, y) - chart.at(x - hx0, y)) / (2.0 * hx)
    fy = (chart.at(x, y + hy0) - chart.at(x, y - hy0)) / (2.0 * hy)
    return fx, fy


def unit_normal(chart, x, y, h_scale=1.0):
    """FD unit normal of an H31 chart: timelike, orthogonal to the
    tangents and the position, and completing them to a positive frame.
    """
    if chart.ambient != "H31":
        raise DomainError("unit_normal expects an H31 chart")
    f = chart.at(x, y)
    fx, fy = _tangents(chart, x, y, h_scale)
    # Gram of the FD tangents decides whether the point is degenerate
    gxx = lz.inner4(fx, fx)
    gxy = lz.inner4(fx, fy)
    gyy = lz.inner4(fy, fy)
    det = gxx * gyy - gxy * gxy
    trace = np.abs(gxx) + np.abs(gyy)
    if np.any(det <= trace * trace * 1e-12):
        raise DegenerateTangentError("FD tangent Gram matrix is singular")
    rows = np.stack([fx, fy, f], axis=-2) @ lz.METRIC4
    # nullspace of the 3x4 system <N, fx> = <N, fy> = <N, f> = 0
    _, _, vt = np.linalg.svd(rows)
    n = vt[..., 3, :]
    nn = lz.inner4(n, n)
    if np.any(nn >= 0.0):
        raise DegenerateTangentError("normal direction is not timelike")
    n = n / np.sqrt(-nn)[..., None]
    # orientation: det(fx, fy, f, N) > 0
    frame = np.stack([fx, fy, f, n], axis=-2)
    sign = np.sign(np.linalg.det(frame))
    return n * sign[..., None]


def gauss_map(chart, x, y, h_scale=1.0):
    """Both halves of the Gauss map as hyperboloid 3-vectors.

    Projects the unit tangent bivector onto the two star eigenspaces,
    scaled back to unit norm; for an exact tangent plane the projections
    coincide with (e1^e2 +- N^p)/sqrt(2), and projecting keeps the FD
    approximation inside the eigenspace by construction.

    The minus half is read in the self-dual frame's displayed basis; the
    plus half is read in the basis with the third vector negated.  That
    reflection is the unique constant normalization under which the
    totally geodesic plane's Gauss map comes out literally diagonal
    while the cylinder's minus half keeps its cosh/sinh geodesic form
    (isometry-invariant quantities never see it).

    A unit timelike bivector and its negative carry the same
    tangent-plane datum; each half is returned as the upper-sheet
    representative of that pair (the maximal family's raw halves lie
    entirely on the lower sheet, the plane's and the cylinder's on the
    upper, so the choice is a global sign per chart).
    """
    if chart.ambient != "H31":
        raise DomainError("gauss_map expects an H31 chart")
    fx, fy = _tangents(chart, x, y, h_scale)
    sq = lz.inner4(fx, fx)
    if np.any(sq <= 0.0):
        raise DegenerateTangentError("first FD tangent is not spacelike")
    e1 = fx / np.sqrt(sq)[..., None]
    e2r = fy - lz.inner4(fy, e1)[..., None] * e1
    sq = lz.inner4(e2r, e2r)
    if np.any(sq <= 0.0):
        raise DegenerateTangentError("FD tangent plane is degenerate")
    e2 = e2r / np.sqrt(sq)[..., None]
    tangent_biv = lz.wedge(e1, e2)
    dual_biv = lz.star(tangent_biv)
    r = 1.0 / math.sqrt(2.0)
    plus = lz.lambda_pm_coords(r * (tangent_biv + dual_biv), "+").copy()
    plus[..., 2] = -plus[..., 2]
    minus = lz.lambda_pm_coords(r * (tangent_biv - dual_biv), "-").copy()
    plus *= np.sign(plus[..., :1])
    minus *= np.sign(minus[..., :1])
    for half in (plus, minus):
        if np.any(np.abs(lz.inner3(half, half) + 1.0) > 1e-8):
            raise OffManifoldError("Gauss-map half is not a unit timelike bivector")
    return GaussPair(plus, minus)


def _require_matching_hopf(a, b):
    if a.hopf_constant is None or b.hopf_constant is None:
        raise HopfMismatchError("both charts need declared Hopf constants")
    if abs(complex(a.hopf_constant) - complex(b.hopf_constant)) > HOPF_MATCH_TOL:
        raise HopfMismatchError(
            f"Hopf constants differ: {a.hopf_constant} vs {b.hopf_constant}"
        )


def pair_gauss_map(a, b, x, y, h_scale=1.0):
    """(plus half of a, minus half of b); Hopf constants must agree."""
    _require_matching_hopf(a, b)
    return GaussPair(
        gauss_map(a, x, y, h_scale).plus, gauss_map(b, x, y, h_scale).minus
    )


def _squared_shape_norm(chart):
    """|sigma|^2 from the declared data: 8 |hopf|^2 / factor^2 (H = 0)."""
    h2 = 8.0 * abs(complex(chart.hopf_constant)) ** 2

    def fn(x, y):
        rho = chart.conformal_factor(x, y)
        return h2 / rho ** 2

    return fn


def pair_gauss_chart(a, b, inner_h_scale=1.0):
    """The paired Gauss map as an H2xH2 chart with its declared metric

        g = [(2 + |sigma_a|^2) g_a + (2 + |sigma_b|^2) g_b] / 2.

    inner_h_scale tunes the FD step used inside the Gauss map; outer
    derivatives of the returned chart amplify the inner roundoff, so a
    verification pass may want it above 1.
    """
    _require_matching_hopf(a, b)
    sa = _squared_shape_norm(a)
    sb = _squared_shape_norm(b)
    dom = (
        max(a.domain[0], b.domain[0]),
        min(a.domain[1], b.domain[1]),
        max(a.domain[2], b.domain[2]),
        min(a.domain[3], b.domain[3]),
    )

    def eval_fn(x, y):
        pair = pair_gauss_map(a, b, x, y, inner_h_scale)
        return np.concatenate([pair.plus, pair.minus], axis=-1)

    def factor(x, y):
        return 0.5 * (
            (2.0 + sa(x, y)) * a.conformal_factor(x, y)
            + (2.0 + sb(x, y)) * b.conformal_factor(x, y)
        )

    return SurfaceChart(
        label=f"gauss-pair[{a.label} | {b.label}]",
        ambient="H2xH2",
        domain=dom,
        eval_fn=eval_fn,
        conformal_factor=factor,
        hopf_constant=None,
    )


def modified_gauss_map(chart, inner_h_scale=1.0):
    """Pair a maximal chart of Hopf modulus 1/2 with the equal-Hopf
    cylinder's minus half, realized directly in H2xR: the hyperboloid
    factor is the plus half of the Gauss map, the line factor is the
    geodesic parameter 2 Im(z e^{it/2}) of that cylinder's minus half.

    The phase solves (i/2) e^{it} = hopf; for Hopf +1/2 it is -pi/2 and
    the line factor is sqrt(2) (y - x).  The output is minimal with
    factor rho + 1/rho + 2 where rho is the input factor (equal to
    4 cosh^2 v when rho = e^{2v}) and declared Hopf constant e^{it}.

    inner_h_scale tunes the FD step inside the Gauss map; see
    pair_gauss_chart.
    """
    if chart.ambient != "H31":
        raise DomainError("modified_gauss_map expects an H31 chart")
    if chart.hopf_constant is None or abs(abs(chart.hopf_constant) - 0.5) > HOPF_MATCH_TOL:
        raise HopfMismatchError(
            f"modified Gauss map needs |Hopf| = 1/2, chart declares {chart.hopf_constant}"
        )
    phase = -2.0j * complex(chart.hopf_constant)
    phase /= abs(phase)
    half_t = cmath.phase(phase) / 2.0
    cs, sn = math.cos(half_t), math.sin(half_t)

    def eval_fn(x, y):
        plus = gauss_map(chart, x, y, inner_h_scale).plus
        y_arr = np.asarray(y, dtype=float)
        x_arr = np.asarray(x, dtype=float)
        line = np.broadcast_to(
            2.0 * (x_arr * sn + y_arr * cs), plus.shape[:-1]
        )
        return np.concatenate([plus, line[..., None]], axis=-1)

    def factor(x, y):
        rho = chart.conformal_factor(x, y)
        return rho + 1.0 / rho + 2.0

    return SurfaceChart(
        label=f"modified-gauss[{chart.label}]",
        ambient="H2xR",
        domain=chart.domain,
        eval_fn=eval_fn,
        conformal_factor=factor,
        hopf_constant=phase,
    )


def screw_action(energy, theta, point, ambient="H31"):
    """One isometry of the 1-parameter screw group fixing the chart family.

    Calibrated so that shifting y by theta / sqrt(2|E|) in the energy-E
    chart equals applying this map to its points (for H2xR the line
    coordinate additionally shifts by theta / sqrt(|E|)).
    """
    energy = float(energy)
    theta = float(theta)
    if energy == 0.0:
        raise DomainError("screw action needs nonzero energy")
    point = np.asarray(point, dtype=float)
    if ambient == "H31":
        m = np.eye(4)
        if energy > 0.0:
            cs, sn = math.cos(theta), math.sin(theta)
            m[0, 0], m[0, 1], m[1, 0], m[1, 1] = cs, sn, -sn, cs
        else:
            ch, sh = math.cosh(theta), math.sinh(theta)
            m[1, 1], m[1, 2], m[2, 1], m[2, 2] = ch, sh, sh, ch
        return point @ m.T
    if ambient == "H2xR":
        m = np.eye(3)
        if energy > 0.0:
            cs, sn = math.cos(theta), math.sin(theta)
            m[1, 1], m[1, 2], m[2, 1], m[2, 2] = cs, -sn, sn, cs
        else:
            ch, sh = math.cosh(theta), math.sinh(theta)
            m[0, 0], m[0, 2], m[2, 0], m[2, 2] = ch, -sh, -sh, ch
        out = point.copy()
        out[..., :3] = point[..., :3] @ m.T
        out[..., 3] = point[..., 3] + theta / math.sqrt(abs(energy))
        return out
    raise DomainError(f"unknown ambient {ambient!r}")
