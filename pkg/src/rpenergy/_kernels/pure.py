"""Pure numpy implementations of the per-sample kernels.

Reference backend: the native extension must match these bit-for-bit up to
the usual reassociation slack (tests compare at 1e-13).  All inputs are
float64 arrays; the leading axis indexes samples.
"""

from __future__ import annotations

import numpy as np

NAME = "pure"


def row_norms(x: np.ndarray) -> np.ndarray:
    return np.sqrt(np.einsum("ij,ij->i", x, x))


def normalize_rows(x: np.ndarray) -> np.ndarray:
    return x / row_norms(x)[:, None]


def frobsq(j: np.ndarray) -> np.ndarray:
    """Squared Frobenius norm per sample; j has shape (m, D, k)."""
    return np.einsum("ijk,ijk->i", j, j)


def sv2_from_gram(g11: np.ndarray, g12: np.ndarray, g22: np.ndarray):
    """Singular values (s1 >= s2 >= 0) from the 2x2 Gram matrix entries."""
    h = 0.5 * (g11 + g22)
    det = g11 * g22 - g12 * g12
    disc = np.sqrt(np.maximum(h * h - det, 0.0))
    lam1 = np.maximum(h + disc, 0.0)
    lam2 = np.maximum(h - disc, 0.0)
    return np.sqrt(lam1), np.sqrt(lam2)


def householder_frames(x: np.ndarray) -> np.ndarray:
    """Orthonormal tangent frames at unit rows of x, shape (m, d+1, d).

    Columns are the images of e_1..e_d under the Householder reflection
    sending e_0 to -sign(x_0) x; each column is orthogonal to x.
    """
    m, dp1 = x.shape
    sign = np.where(x[:, 0] >= 0.0, 1.0, -1.0)
    v = x.copy()
    v[:, 0] += sign
    vv = np.einsum("ij,ij->i", v, v)
    coef = 2.0 * v[:, 1:] / vv[:, None]  # (m, d)
    frames = -v[:, :, None] * coef[:, None, :]
    idx = np.arange(dp1 - 1)
    frames[:, idx + 1, idx] += 1.0
    return frames


def dilation_factor(c: np.ndarray, t: float) -> np.ndarray:
    """Conformal factor of the stereographic dilation at cos-angle c to the pole.

    The rational form 2t / ((1+c) + t^2 (1-c)) is finite on the whole sphere,
    including both poles (value t at c=1, 1/t at c=-1).
    """
    return 2.0 * t / ((1.0 + c) + t * t * (1.0 - c))


def dilation_apply(x: np.ndarray, pole: np.ndarray, t: float) -> np.ndarray:
    """Apply the dilation with parameter t fixing +-pole; x has unit rows."""
    c = x @ pole
    w = x - c[:, None] * pole
    s = row_norms(w)
    den = (1.0 + c) + t * t * (1.0 - c)
    cos_new = ((1.0 + c) - t * t * (1.0 - c)) / den
    sin_new = 2.0 * t * s / den
    safe = np.maximum(s, 1e-300)
    y = cos_new[:, None] * pole + (sin_new / safe)[:, None] * w
    # on the axis the meridian direction is undefined but the image is the pole
    axis = s < 1e-14
    if np.any(axis):
        y[axis] = np.sign(c[axis])[:, None] * pole
    return normalize_rows(y)


def dilation_push(x: np.ndarray, w: np.ndarray, pole: np.ndarray,
                  t: float) -> np.ndarray:
    """Pushforward of tangent vectors under the dilation.

    x: (m, d+1) unit base points, w: (m, d+1, k) tangent vectors at x.
    Returns (m, d+1, k).  Meridian components rotate to the image meridian,
    latitude components keep their ambient direction; both scale by the
    conformal factor.
    """
    c = x @ pole
    wp = x - c[:, None] * pole
    s = row_norms(wp)
    den = (1.0 + c) + t * t * (1.0 - c)
    lam = 2.0 * t / den
    cos_new = ((1.0 + c) - t * t * (1.0 - c)) / den
    sin_new = 2.0 * t * s / den

    safe = np.maximum(s, 1e-300)[:, None]
    what = wp / safe
    u_x = -s[:, None] * pole + c[:, None] * what
    u_y = -sin_new[:, None] * pole + cos_new[:, None] * what

    a = np.einsum("ij,ijk->ik", u_x, w)  # meridian component per column
    perp = w - u_x[:, :, None] * a[:, None, :]
    out = lam[:, None, None] * (u_y[:, :, None] * a[:, None, :] + perp)

    axis = s < 1e-14
    if np.any(axis):
        # at the poles the differential is lam * identity on the tangent space
        out[axis] = lam[axis, None, None] * w[axis]
    return out


def fermi_split(x: np.ndarray, pole: np.ndarray):
    """Distance to the equator pole-perp and the nearest equator point.

    Returns (r, foot) with x = cos(r) foot + sin(r) pole for rows with
    nonnegative pole component.  Rows at the pole give foot = nan; callers
    enforce the pole-singularity contract.
    """
    c = np.clip(x @ pole, -1.0, 1.0)
    r = np.arcsin(c)
    w = x - c[:, None] * pole
    nw = row_norms(w)
    with np.errstate(invalid="ignore", divide="ignore"):
        foot = w / nw[:, None]
    return r, foot
