"""Jacobi elliptic functions and incomplete integrals of the first kind.

Convention: all routines take the *parameter* ``mu`` that multiplies
``sin^2`` inside the defining integral,

    F(phi, mu) = integral_0^phi dtheta / sqrt(1 - mu * sin(theta)^2),

so ``mu`` plays the role often written ``m = k^2``.  The amplitude
``am(x, mu)`` is the inverse of ``phi -> F(phi, mu)``, and

    sn = sin(am),  cn = cos(am),  dn = sqrt(1 - mu*sn^2),  tn = sn/cn.

Everything is computed with the descending Landen (AGM) recursion, which
gives close to machine accuracy uniformly in ``mu``; a short series takes
over within ~1e-12 of the endpoints mu = 0 and mu = 1, where the recursion
loses nothing but the series is cheaper and avoids degenerate iterates.
At mu = 1 exactly the functions collapse to hyperbolic ones and K diverges.

Quasi-periodicity is built in through argument reduction: am(x + 2K) =
am(x) + pi, hence sn and cn flip sign under x -> x + 2K while dn and tn
are 2K-periodic.

Principal inverses arcsn, arccn ([0,1] -> [0,K]) and arctn ([0,inf) ->
[0,K)) are the exact compositions F(arcsin y), F(arccos y), F(arctan y).

Arguments ``x``/``phi`` may be scalars or numpy arrays; ``mu`` is scalar.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, PoleError

# Tolerated floating noise on the parameter: mu in [-MU_NOISE, 1+MU_NOISE]
# is clamped to [0, 1]; anything further out is a caller error.
MU_NOISE = 1e-14

# Below this distance from an endpoint the first-order series in mu (or
# 1-mu) is already accurate to ~1e-24 and the AGM start values degenerate.
_SERIES_CUTOFF = 1e-12

_MAX_AGM_ITER = 32


def _clean_mu(mu, *, allow_one=True):
    mu = float(mu)
    if not (-MU_NOISE <= mu <= 1.0 + MU_NOISE):
        raise DomainError(f"elliptic parameter mu={mu!r} outside [0, 1]")
    mu = min(max(mu, 0.0), 1.0)
    if mu == 1.0 and not allow_one:
        raise DomainError("elliptic parameter mu=1 diverges here")
    return mu


def _agm_scheme(mu):
    """AGM iterates (a_n, b_n, c_n) for the Landen recursion, plus K(mu)."""
    a = [1.0]
    b = [math.sqrt(1.0 - mu)]
    c = [math.sqrt(mu)]
    while c[-1] > 5e-17 * a[-1] and len(a) < _MAX_AGM_ITER:
        an, bn = a[-1], b[-1]
        a.append(0.5 * (an + bn))
        b.append(math.sqrt(an * bn))
        c.append(0.5 * (an - bn))
    kk = math.pi / (2.0 * a[-1])
    return a, b, c, kk


def ellip_K(mu):
    """Complete integral K(mu) = F(pi/2, mu).  Diverges at mu = 1."""
    mu = _clean_mu(mu, allow_one=False)
    if mu == 0.0:
        return 0.5 * math.pi
    return _agm_scheme(mu)[3]


def _am_core(x, mu):
    """Amplitude on reduced arguments; x is an ndarray, 0 < mu < 1."""
    a, _, c, kk = _agm_scheme(mu)
    n_iter = len(a) - 1
    # Reduce modulo the quasi-period so the backward recursion starts from
    # a bounded angle: am(x + 2K) = am(x) + pi.
    shift = np.floor((x + kk) / (2.0 * kk))
    x_red = x - 2.0 * kk * shift
    phi = (2.0 ** n_iter) * a[n_iter] * x_red
    for n in range(n_iter, 0, -1):
        s = np.clip((c[n] / a[n]) * np.sin(phi), -1.0, 1.0)
        phi = 0.5 * (phi + np.arcsin(s))
    return phi + math.pi * shift


def jacobi_am(x, mu):
    """Jacobi amplitude am(x, mu), the inverse of phi -> F(phi, mu)."""
    mu = _clean_mu(mu)
    x_arr = np.asarray(x, dtype=float)
    if mu < _SERIES_CUTOFF:
        out = x_arr - 0.25 * mu * (x_arr - np.sin(x_arr) * np.cos(x_arr))
    elif 1.0 - mu < _SERIES_CUTOFF:
        # Gudermannian limit with the leading 1-mu correction, good for
        # |x| up to ~K(mu) which is itself only ~0.5*log(16/(1-mu)).
        out = np.arctan(np.sinh(x_arr)) + 0.25 * (1.0 - mu) * (
            np.sinh(x_arr) * np.cosh(x_arr) - x_arr
        ) / np.cosh(x_arr)
    else:
        out = _am_core(x_arr, mu)
    return float(out) if np.isscalar(x) or x_arr.ndim == 0 else out


def _F_core(r, mu):
    """F on reduced amplitudes r in [-pi/2, pi/2]; ascending Landen."""
    a, b, _, _ = _agm_scheme(mu)
    n_iter = len(a) - 1
    phi = np.asarray(r, dtype=float).copy()
    for n in range(n_iter):
        k = np.round(phi / math.pi)
        rr = phi - math.pi * k
        phi = phi + math.pi * k + np.arctan2(b[n] * np.sin(rr), a[n] * np.cos(rr))
    return phi / ((2.0 ** n_iter) * a[n_iter])


def ellip_F(phi, mu):
    """Incomplete integral F(phi, mu); odd in phi, F(phi + pi) = F(phi) + 2K."""
    mu = _clean_mu(mu)
    phi_arr = np.asarray(phi, dtype=float)
    if mu == 1.0:
        if np.any(np.abs(phi_arr) >= 0.5 * math.pi):
            raise DomainError("F(phi, 1) diverges for |phi| >= pi/2")
        out = np.arcsinh(np.tan(phi_arr))
    elif mu < _SERIES_CUTOFF:
        out = phi_arr + 0.25 * mu * (phi_arr - np.sin(phi_arr) * np.cos(phi_arr))
    elif 1.0 - mu < _SERIES_CUTOFF:
        kk = _agm_scheme(mu)[3]
        n = np.round(phi_arr / math.pi)
        r = phi_arr - math.pi * n
        t = np.tan(r)
        f0 = np.arcsinh(t)
        out = f0 - 0.25 * (1.0 - mu) * (t / np.cos(r) - f0) + 2.0 * kk * n
    else:
        kk = _agm_scheme(mu)[3]
        n = np.round(phi_arr / math.pi)
        r = phi_arr - math.pi * n
        out = _F_core(r, mu) + 2.0 * kk * n
    return float(out) if np.isscalar(phi) or phi_arr.ndim == 0 else out


def jacobi_sn_cn_dn(x, mu):
    """The triple (sn, cn, dn) at once; cheaper than separate calls."""
    mu = _clean_mu(mu)
    am = jacobi_am(x, mu)
    sn = np.sin(am)
    cn = np.cos(am)
    # dn^2 = 1 - mu*sn^2 rewritten as a sum of non-negatives; the naive
    # form cancels catastrophically when mu -> 1 and |sn| -> 1.
    dn = np.sqrt(cn * cn + (1.0 - mu) * sn * sn)
    return sn, cn, dn


def jacobi_sn(x, mu):
    return jacobi_sn_cn_dn(x, mu)[0]


def jacobi_cn(x, mu):
    return jacobi_sn_cn_dn(x, mu)[1]


def jacobi_dn(x, mu):
    return jacobi_sn_cn_dn(x, mu)[2]


_POLE_TOL = 1e-12


def jacobi_tn(x, mu):
    """tn = sn/cn.  Poles at x = K(mu) mod 2K(mu), where cn vanishes."""
    mu = _clean_mu(mu)
    if mu < 1.0:
        kk = _agm_scheme(mu)[3] if mu > 0.0 else 0.5 * math.pi
        # distance from the nearest odd multiple of K
        r = np.remainder(np.asarray(x, dtype=float) - kk, 2.0 * kk)
        off = np.minimum(r, 2.0 * kk - r)
        if np.any(off < _POLE_TOL):
            raise PoleError("tn evaluated at a pole (x = K mod 2K)")
    sn, cn, _ = jacobi_sn_cn_dn(x, mu)
    return sn / cn


def _clamp_unit(y, name):
    y = float(y)
    if not (-MU_NOISE <= y <= 1.0 + MU_NOISE):
        raise DomainError(f"{name} argument {y!r} outside [0, 1]")
    return min(max(y, 0.0), 1.0)


def arcsn(y, mu):
    """Principal inverse of sn on [0, K]; arcsn(y) = F(arcsin y)."""
    y = _clamp_unit(y, "arcsn")
    return float(ellip_F(math.asin(y), mu))


def arccn(y, mu):
    """Principal inverse of cn on [0, K]; arccn(y) = F(arccos y)."""
    y = _clamp_unit(y, "arccn")
    return float(ellip_F(math.acos(y), mu))


def arctn(y, mu):
    """Principal inverse of tn on [0, K); arctn(y) = F(arctan y), y >= 0."""
    y = float(y)
    if y < 0.0:
        raise DomainError(f"arctn argument {y!r} outside [0, inf)")
    return float(ellip_F(math.atan(y), mu))
