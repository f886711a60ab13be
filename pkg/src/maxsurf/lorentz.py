"""Linear algebra of the flat index-2 space R^4_2 and its bivectors.

Points of R^4_2 are plain numpy arrays with four components and inner
product  <u,v> = u1 v1 + u2 v2 - u3 v3 - u4 v4  (signature ++--).  The
anti-De Sitter space H^3_1 is the quadric <p,p> = -1 inside it.  Under
z = x1 + i x2, w = x3 + i x4 this is |z|^2 - |w|^2 = -1.

The hyperbolic plane H^2 lives in a 3-space with the *timelike-first*
inner product  <x,y> = -x1 y1 + x2 y2 + x3 y3  and is the sheet p1 > 0
of <p,p> = -1.  Every 3-vector this module hands out uses that ordering,
including the circle factor of H^2 x R inside H^2 x H^2: the embedded
line is t -> (cosh t, 0, sinh t), which squares to -1 as it must.

Bivectors carry six components in the ordered basis

    e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4,

with the induced metric g(v^w, v'^w') = <v,w'><w,v'> - <v,v'><w,w'>.
The star operator is *defined* by a ^ (star b) = g(a, b) * Omega with
Omega the volume form normalized to +1 on the canonical basis, and is
constructed here by solving that linear system numerically instead of
trusting hand-derived component signs.  Its +1/-1 eigenspaces are
spanned by the frames E+ / E- returned by ``frames``; each eigenspace
carries a (-,+,+) metric, so unit timelike bivectors in either one form
a copy of H^2.

All point-valued functions accept leading batch axes (shape (..., 4),
(..., 6), (..., 3)).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, EigenspaceError, FrameError, OffManifoldError

METRIC4 = np.diag([1.0, 1.0, -1.0, -1.0])
METRIC3 = np.diag([-1.0, 1.0, 1.0])

BASIS_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

ON_MANIFOLD_TOL = 1e-9
EIGENSPACE_TOL = 1e-9
FRAME_TOL = 1e-9


def inner4(u, v):
    """Index-2 inner product on R^4_2; batched over leading axes."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.einsum("...i,...i->...", u @ METRIC4, v)[()]


def inner3(x, y):
    """Timelike-first Minkowski product on the H^2 ambient 3-space."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.einsum("...i,...i->...", x @ METRIC3, y)[()]


def wedge(u, v):
    """u ^ v as a six-component bivector; batched."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    comps = [
        u[..., a] * v[..., b] - u[..., b] * v[..., a] for a, b in BASIS_PAIRS
    ]
    return np.stack(comps, axis=-1)


def _build_biv_metric():
    g = np.zeros((6, 6))
    e = np.eye(4)
    for i, (a, b) in enumerate(BASIS_PAIRS):
        for j, (c, d) in enumerate(BASIS_PAIRS):
            g[i, j] = inner4(e[a], e[d]) * inner4(e[b], e[c]) - inner4(
                e[a], e[c]
            ) * inner4(e[b], e[d])
    return g


BIV_METRIC = _build_biv_metric()


def biv_inner(a, b):
    """Bivector metric, the bilinear extension of the wedge-pair formula."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.einsum("...i,...i->...", a @ BIV_METRIC, b)[()]


def _perm_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _build_wedge4_pairing():
    """W[i,j] = volume coefficient of basis_i ^ basis_j, Omega = +1."""
    w = np.zeros((6, 6))
    for i, (a, b) in enumerate(BASIS_PAIRS):
        for j, (c, d) in enumerate(BASIS_PAIRS):
            if len({a, b, c, d}) == 4:
                w[i, j] = _perm_sign((a, b, c, d))
    return w


# star is the solution S of  W @ S = BIV_METRIC,  i.e. the defining
# relation a ^ (S b) = g(a, b) Omega tested against every basis a.
STAR_MATRIX = np.linalg.solve(_build_wedge4_pairing(), BIV_METRIC)


def star(a):
    """The involutive star operator on bivectors; batched."""
    return np.asarray(a, dtype=float) @ STAR_MATRIX.T


def frames(frame):
    """Self-dual and anti-self-dual triples built from a vector frame.

    ``frame`` has rows e1..e4; it must be orthonormal for the ++--
    metric (Gram matrix METRIC4 to 1e-9) and positively oriented.
    Returns (eplus, eminus), each 3x6, rows

        (e1^e2 +- e4^e3, e1^e3 +- e4^e2, e1^e4 +- e2^e3) / sqrt(2),

    which are star-eigenvectors for +1 resp. -1 and g-orthonormal with
    signs (-,+,+) in each eigenspace.
    """
    frame = np.asarray(frame, dtype=float)
    if frame.shape != (4, 4):
        raise FrameError(f"expected a 4x4 frame, got shape {frame.shape}")
    gram = frame @ METRIC4 @ frame.T
    if np.max(np.abs(gram - METRIC4)) > FRAME_TOL:
        raise FrameError("frame is not orthonormal for the ++-- metric")
    if np.linalg.det(frame) < 0.0:
        raise FrameError("frame is negatively oriented")
    e1, e2, e3, e4 = frame
    r = 1.0 / math.sqrt(2.0)
    pairs = [(wedge(e1, e2), wedge(e4, e3)),
             (wedge(e1, e3), wedge(e4, e2)),
             (wedge(e1, e4), wedge(e2, e3))]
    eplus = np.stack([r * (a + b) for a, b in pairs])
    eminus = np.stack([r * (a - b) for a, b in pairs])
    return eplus, eminus


E_PLUS, E_MINUS = frames(np.eye(4))

# metric signs of each eigenspace triple
EIGEN_SIGNS = np.array([-1.0, 1.0, 1.0])


def lambda_pm_coords(a, side):
    """Coordinates of an eigenspace bivector in its E+/E- triple.

    ``side`` is "+" or "-".  The input must actually lie in that star
    eigenspace (residual below 1e-9 relative); the returned 3-vector is
    timelike-first Minkowski, matching the eigenspace metric (-,+,+).
    """
    if side not in ("+", "-"):
        raise DomainError(f"side must be '+' or '-', got {side!r}")
    a = np.asarray(a, dtype=float)
    sgn = 1.0 if side == "+" else -1.0
    resid = np.abs(star(a) - sgn * a).max(axis=-1)
    scale = np.maximum(1.0, np.abs(a).max(axis=-1))
    if np.any(resid > EIGENSPACE_TOL * scale):
        raise EigenspaceError(
            f"bivector is not in the {side} eigenspace (residual {np.max(resid):.3e})"
        )
    basis = E_PLUS if side == "+" else E_MINUS
    # invert the orthonormal expansion a = sum_k c_k E_k, g(E_k,E_k) = eps_k
    return EIGEN_SIGNS * (a @ BIV_METRIC @ basis.T)


def ads_submersion(p):
    """Fiber projection of H^3_1 onto a hyperboloid of squared radius 1/4.

    With z = p1 + i p2, w = p3 + i p4, returns the timelike-first
    3-vector (|z|^2/2 + |w|^2/2, Re(z conj(w)), Im(z conj(w))), which
    satisfies <q,q> = -1/4 and is unchanged along the circle fiber
    (z, w) -> (z e^{is}, w e^{is}).
    """
    p = np.asarray(p, dtype=float)
    if np.any(np.abs(inner4(p, p) + 1.0) > ON_MANIFOLD_TOL):
        raise OffManifoldError("point is not on the <p,p> = -1 quadric")
    z = p[..., 0] + 1j * p[..., 1]
    w = p[..., 2] + 1j * p[..., 3]
    zw = z * np.conj(w)
    return np.stack(
        [0.5 * (np.abs(z) ** 2 + np.abs(w) ** 2), zw.real, zw.imag], axis=-1
    )


def _check_h2(p):
    p = np.asarray(p, dtype=float)
    bad = np.abs(inner3(p, p) + 1.0) > ON_MANIFOLD_TOL
    if np.any(bad) or np.any(p[..., 0] <= 0.0):
        raise OffManifoldError("point is not on the upper-sheet hyperboloid")
    return p


def h2xr_embed(p, t):
    """A point (p, t) of H^2 x R as a pair of hyperboloid points.

    The line factor is t -> (cosh t, 0, sinh t) in the timelike-first
    ordering, a unit-speed geodesic of norm -1 for every t.
    """
    p = _check_h2(p)
    t = np.asarray(t, dtype=float)
    circ = np.stack([np.cosh(t), np.zeros_like(t), np.sinh(t)], axis=-1)
    return p, circ


def disc_projection(p):
    """Poincare-disc coordinates (p2, p3)/(1 + p1) of hyperboloid points."""
    p = _check_h2(p)
    d = 1.0 + p[..., 0]
    return np.stack([p[..., 1] / d, p[..., 2] / d], axis=-1)


def disc_lift(uv):
    """Inverse of disc_projection; the input must be inside the unit disc."""
    uv = np.asarray(uv, dtype=float)
    r2 = np.sum(uv * uv, axis=-1)
    if np.any(r2 >= 1.0):
        raise DomainError("disc point has radius >= 1")
    f = 1.0 / (1.0 - r2)
    return np.stack(
        [(1.0 + r2) * f, 2.0 * uv[..., 0] * f, 2.0 * uv[..., 1] * f], axis=-1
    )
