"""Closed-form solutions of the reduced ODE v'' = 2 sinh(2v).

The first integral  energy = v'^2/2 - cosh(2v)  is conserved, and the
energy decides which elliptic (or elementary) expression solves the
initial-value problem

    v(0) = v0 >= 0,    v'(0) = +sqrt(2*(energy + cosh(2*v0))).

Branches, each valid on a maximal open interval:

    energy > 1    "Tn"            v = log(scale * tn(u))
    |energy| <= 1 "TnDn"          v = log(tn(u) * dn(u)),
                                  degenerating at energy = -1 to the
                                  elementary coth form (v0 > 0)
    energy = -1   "ConstantZero"  v = 0 on all of R (v0 = 0)
    energy < -1   "Sn"            v = log(scale / sn(u))

with u an affine function of x fixed by the initial data.  Every solve
can also be asked for the mirrored solution -v (``negated``), which
solves the same ODE.

Also here: a classical RK4 integrator for the same ODE, kept free of any
elliptic-function code so it can serve as an independent check, and the
phase integral

    G(x) = int_base^x dt / (2*energy + exp(2 v(t))),

whose integrand blows up where 2*energy + exp(2v) vanishes; for negative
energy the locus exp(2v) < -2*energy where the denominator is negative
is the admissible region that the corresponding surfaces live over.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

from . import elliptic as el
from .errors import DomainError, IntervalError, SingularIntegrandError

ENERGY_TOL = 1e-12

# admissible-boundary points are excluded with this margin when guarding
# the phase integral
_ZERO_GUARD = 1e-12

_EVAL_MARGIN_REL = 1e-9

_BLOWUP_CAP = 50.0


@dataclass(frozen=True)
class SinhGordonSolution:
    """One solved initial-value problem, immutable and re-entrant.

    ``interval`` is the maximal open interval of definition (entries may
    be infinite).  ``scale``, ``mu`` and ``phase`` are the elliptic
    ingredients of the branch formula; for the elementary branches they
    hold whatever degenerate values the limit dictates.  ``negated``
    marks the v -> -v mirror solution.
    """

    energy: float
    v0: float
    branch: str
    scale: float
    mu: float
    phase: float
    interval: tuple
    negated: bool


def _form_of(s):
    """Which evaluator a solution uses: tn | tndn | coth | zero | sn."""
    if s.branch == "ConstantZero":
        return "zero"
    if s.branch == "Tn":
        return "tn"
    if s.branch == "Sn":
        return "sn"
    return "coth" if s.mu == 1.0 else "tndn"


def solve(energy, v0, negated=False):
    """Solve the initial-value problem; see the module docstring.

    Raises DomainError for v0 < 0 or energy < -cosh(2*v0), the energies
    no real solution attains.
    """
    energy = float(energy)
    v0 = float(v0)
    if v0 < 0.0:
        raise DomainError(f"initial value v0={v0!r} must be >= 0")
    if energy + math.cosh(2.0 * v0) < -ENERGY_TOL:
        raise DomainError(
            f"energy {energy!r} below -cosh(2*v0) = {-math.cosh(2.0 * v0)!r}"
        )

    if energy > 1.0:
        scale = math.sqrt(energy - math.sqrt(energy * energy - 1.0))
        mu = 1.0 - scale ** 4
        phase = el.arctn(math.exp(v0) / scale, mu)
        kk = el.ellip_K(mu)
        interval = (-scale * phase, scale * (kk - phase))
        return SinhGordonSolution(energy, v0, "Tn", scale, mu, phase, interval, negated)

    if energy == -1.0:
        if v0 == 0.0:
            return SinhGordonSolution(
                energy, v0, "ConstantZero", 1.0, 1.0, 0.0, (-math.inf, math.inf), negated
            )
        # K(mu) diverges at mu = 1; the branch formula degenerates to
        # v = log(coth(phase - x)), which tends to 0 at -infinity.
        phase = math.atanh(math.exp(-v0))
        return SinhGordonSolution(
            energy, v0, "TnDn", 1.0, 1.0, phase, (-math.inf, phase), negated
        )

    if energy >= -1.0:
        mu = 0.5 * (1.0 - energy)
        kk = el.ellip_K(mu)
        phase = kk - 0.5 * el.arccn(math.tanh(v0), mu)
        interval = (-phase, kk - phase)
        return SinhGordonSolution(energy, v0, "TnDn", 1.0, mu, phase, interval, negated)

    # energy < -1
    scale = math.sqrt(-energy + math.sqrt(energy * energy - 1.0))
    mu = scale ** -4
    arg = scale * math.exp(-v0)
    if arg > 1.0 + ENERGY_TOL:
        raise DomainError(
            f"energy {energy!r} below -cosh(2*v0) = {-math.cosh(2.0 * v0)!r}"
        )
    kk = el.ellip_K(mu)
    phase = 2.0 * kk - el.arcsn(min(arg, 1.0), mu)
    interval = ((-phase) / scale, (2.0 * kk - phase) / scale)
    return SinhGordonSolution(energy, v0, "Sn", scale, mu, phase, interval, negated)


def _clipped(s, x):
    """Validate x against the open interval, then back off the endpoints.

    The branch formulas lose all precision at blow-up, so points inside
    the interval but closer to an endpoint than a relative margin are
    clamped onto the margin.
    """
    lo, hi = s.interval
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= lo) or np.any(arr >= hi) or not np.all(np.isfinite(arr)):
        raise IntervalError(f"argument outside the open interval ]{lo}, {hi}[")
    span = hi - lo
    lo_m = lo + min(_EVAL_MARGIN_REL * max(1.0, abs(lo)), 0.25 * span) if math.isfinite(lo) else lo
    hi_m = hi - min(_EVAL_MARGIN_REL * max(1.0, abs(hi)), 0.25 * span) if math.isfinite(hi) else hi
    return np.clip(arr, lo_m, hi_m)


def _eval_both(s, x):
    """(v, v') as arrays, before the mirror sign."""
    form = _form_of(s)
    if form == "zero":
        z = np.zeros_like(np.asarray(x, dtype=float))
        return z, z.copy()
    xc = _clipped(s, x)
    if form == "coth":
        t = s.phase - xc
        v = np.log(1.0 / np.tanh(t))
        dv = 2.0 / np.sinh(2.0 * t)
        return v, dv
    if form == "tn":
        u = xc / s.scale + s.phase
        sn, cn, dn = el.jacobi_sn_cn_dn(u, s.mu)
        v = np.log(s.scale * sn / cn)
        dv = dn / (sn * cn) / s.scale
        return v, dv
    if form == "tndn":
        u = xc + s.phase
        sn, cn, dn = el.jacobi_sn_cn_dn(u, s.mu)
        v = np.log(sn * dn / cn)
        dv = (dn * dn - s.mu * (sn * cn) ** 2) / (sn * cn * dn)
        return v, dv
    # form == "sn"
    u = s.scale * xc + s.phase
    sn, cn, dn = el.jacobi_sn_cn_dn(u, s.mu)
    v = np.log(s.scale / sn)
    dv = -s.scale * cn * dn / sn
    return v, dv


def eval_v(s, x):
    """v(x); accepts scalars or arrays of points inside the interval."""
    v, _ = _eval_both(s, x)
    if s.negated:
        v = -v
    return float(v) if np.isscalar(x) or v.ndim == 0 else v


def eval_v_prime(s, x):
    """v'(x), from the exact derivative of the branch formula."""
    _, dv = _eval_both(s, x)
    if s.negated:
        dv = -dv
    return float(dv) if np.isscalar(x) or dv.ndim == 0 else dv


class RKPath(NamedTuple):
    xs: np.ndarray
    v: np.ndarray
    v_prime: np.ndarray
    energy_drift: float


def rk_oracle(energy, v0, v0prime, x_max, h):
    """Integrate v'' = 2 sinh(2v) from 0 to x_max with classical RK4.

    Deliberately independent of the closed forms (no elliptic functions
    anywhere).  The initial data must reproduce ``energy`` to 1e-12.
    Integration stops early if |v| exceeds 50; the path up to the stop
    is still returned.  ``energy_drift`` is the worst deviation of the
    first integral along the computed path.
    """
    if h <= 0.0:
        raise DomainError("step size must be positive")
    e0 = 0.5 * v0prime * v0prime - math.cosh(2.0 * v0)
    if abs(e0 - energy) > ENERGY_TOL * max(1.0, abs(energy)):
        raise DomainError(
            f"initial data has energy {e0!r}, inconsistent with {energy!r}"
        )
    n = max(1, int(round(abs(x_max) / h)))
    step = (x_max - 0.0) / n
    xs = [0.0]
    vs = [v0]
    ps = [v0prime]
    x, v, p = 0.0, v0, v0prime

    def rhs(vv):
        # clamp keeps a step that already left the guarded region finite
        return 2.0 * math.sinh(min(max(2.0 * vv, -700.0), 700.0))

    for _ in range(n):
        # y = (v, p), y' = (p, 2 sinh 2v)
        k1v, k1p = p, rhs(v)
        v2 = v + 0.5 * step * k1v
        k2v, k2p = p + 0.5 * step * k1p, rhs(v2)
        v3 = v + 0.5 * step * k2v
        k3v, k3p = p + 0.5 * step * k2p, rhs(v3)
        v4 = v + step * k3v
        k4v, k4p = p + step * k3p, rhs(v4)
        v += (step / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        p += (step / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        x += step
        xs.append(x)
        vs.append(v)
        ps.append(p)
        if abs(v) > _BLOWUP_CAP:
            break
    xs = np.array(xs)
    vs = np.array(vs)
    ps = np.array(ps)
    # drift only over the guarded part; a final runaway point is excluded
    ok = np.abs(vs) <= _BLOWUP_CAP
    drift = float(
        np.max(np.abs(0.5 * ps[ok] * ps[ok] - np.cosh(2.0 * vs[ok]) - energy))
    )
    return RKPath(xs, vs, ps, drift)


def admissible_interval(s):
    """Maximal open subinterval where exp(2v) < -2*energy.

    Only meaningful for negative energy (IntervalError otherwise); it is
    never empty there.  Its finite endpoints interior to the definition
    interval are exactly the zeros of the phase-integral denominator.
    """
    if s.energy >= 0.0:
        raise IntervalError("admissible interval requires negative energy")
    lo, hi = s.interval
    form = _form_of(s)
    if form == "zero":
        return (lo, hi)
    if form == "coth":
        if s.negated:
            # exp(2v) = tanh^2 < 1 <= -2*energy everywhere
            return (lo, hi)
        return (lo, s.phase - math.atanh(1.0 / math.sqrt(2.0)))
    if form == "tndn":
        # v crosses log(-2*energy)/2 exactly once (v is strictly
        # increasing); solve tn(u)*dn(u) = c via the quadratic in sn^2.
        c2 = 1.0 / (-2.0 * s.energy) if s.negated else -2.0 * s.energy
        disc = (1.0 + c2) ** 2 - 4.0 * s.mu * c2
        sn2 = 2.0 * c2 / (1.0 + c2 + math.sqrt(max(disc, 0.0)))
        u_star = el.arcsn(math.sqrt(min(sn2, 1.0)), s.mu)
        x_star = u_star - s.phase
        return (x_star, hi) if s.negated else (lo, x_star)
    # form == "sn"
    if s.negated:
        # exp(2v) <= scale^-2 < -2*energy everywhere
        return (lo, hi)
    kk = el.ellip_K(s.mu)
    rho = s.scale ** 2 / math.sqrt(1.0 + s.scale ** 4)
    u_c = el.arcsn(rho, s.mu)
    return ((u_c - s.phase) / s.scale, (2.0 * kk - u_c - s.phase) / s.scale)


def _denominator_zeros(s):
    """Roots of 2*energy + exp(2v) inside the definition interval."""
    if s.energy >= 0.0:
        return ()
    lo, hi = s.interval
    alo, ahi = admissible_interval(s)
    zeros = []
    if math.isfinite(alo) and alo > lo:
        zeros.append(alo)
    if math.isfinite(ahi) and ahi < hi:
        zeros.append(ahi)
    return tuple(zeros)


def default_base_point(s):
    """Canonical base for the phase integral.

    0 when the relevant domain (admissible interval for negative energy,
    else the definition interval) contains it; otherwise the domain's
    midpoint, or one unit in from its finite end when half-infinite.
    """
    if s.energy < 0.0:
        lo, hi = admissible_interval(s)
    else:
        lo, hi = s.interval
    if lo < 0.0 < hi:
        return 0.0
    if math.isfinite(lo) and math.isfinite(hi):
        return 0.5 * (lo + hi)
    if math.isfinite(hi):
        return hi - 1.0
    return lo + 1.0


@functools.lru_cache(maxsize=16384)
def _g_cached(s, x, x_base):
    if _form_of(s) == "zero":
        # integrand is identically 1/(2*energy + 1) = -1
        return -(x - x_base)
    _clipped(s, (x, x_base))  # endpoint validation only
    a, b = (x_base, x) if x_base <= x else (x, x_base)
    for z in _denominator_zeros(s):
        if a - _ZERO_GUARD <= z <= b + _ZERO_GUARD:
            raise SingularIntegrandError(
                f"phase-integral denominator vanishes at {z!r} inside the range"
            )
    two_e = 2.0 * s.energy

    def integrand(t):
        return 1.0 / (two_e + math.exp(2.0 * eval_v(s, t)))

    val, _err = quad(integrand, x_base, x, epsabs=1e-14, epsrel=1e-12, limit=200)
    return val


def G_integral(s, x, x_base=None):
    """The phase integral from x_base (default: default_base_point) to x.

    Raises SingularIntegrandError when the integration range touches a
    zero of 2*energy + exp(2v); both endpoints must lie inside the
    definition interval.
    """
    if x_base is None:
        x_base = default_base_point(s)
    return _g_cached(s, float(x), float(x_base))
