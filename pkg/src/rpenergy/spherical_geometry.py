"""Round-sphere and projective-space primitives.

Volumes via the dimension recurrence, counter-based invariant-measure
samplers (sphere, unit tangent bundle, Grassmannian of projective
subspaces, isometry group), stereographic and Fermi coordinates, and the
canonical-lift convention for RP^n.

Batch variants return raw float64 arrays with the sample index on the
leading axis; the single-sample operations wrap them in validated types.
All samplers are pure functions of (seed, index).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np
from scipy.special import betainc, betaincinv

from . import _kernels as K
from . import rng
from .errors import PoleError

_ORTHO_TOL = 1e-10


@lru_cache(maxsize=None)
def sphere_volume(n: int) -> float:
    """Volume sigma(n) of the unit n-sphere.

    Computed by sigma(n) = (2 pi / (n-1)) sigma(n-2) from sigma(0) = 2,
    sigma(1) = 2 pi; no gamma-function evaluation involved.
    """
    if n < 0:
        raise ValueError(f"sphere dimension must be >= 0, got {n}")
    if n == 0:
        return 2.0
    if n == 1:
        return 2.0 * math.pi
    return 2.0 * math.pi / (n - 1) * sphere_volume(n - 2)


def projective_volume(n: int) -> float:
    """Volume of RP^n with the metric covered by the unit sphere."""
    return 0.5 * sphere_volume(n)


@dataclass(frozen=True)
class SpherePoint:
    """Unit vector in ambient (n+1)-space."""

    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=np.float64)
        object.__setattr__(self, "coords", coords)
        if abs(float(np.linalg.norm(coords)) - 1.0) > 1e-12:
            raise ValueError(f"point norm {np.linalg.norm(coords)} is not 1 within 1e-12")

    @property
    def n(self) -> int:
        return self.coords.shape[0] - 1


@dataclass(frozen=True)
class TangentFrame:
    """Orthonormal basis of the tangent space at a point."""

    base: SpherePoint
    vectors: np.ndarray  # (n, n+1), rows are the frame vectors

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=np.float64)
        object.__setattr__(self, "vectors", v)
        x = self.base.coords
        if np.max(np.abs(v @ x)) > _ORTHO_TOL:
            raise ValueError("frame vectors not orthogonal to base within 1e-10")
        gram = v @ v.T
        if np.max(np.abs(gram - np.eye(v.shape[0]))) > _ORTHO_TOL:
            raise ValueError("frame vectors not orthonormal within 1e-10")


@dataclass(frozen=True)
class UnitTangentSample:
    """A point of the unit tangent bundle."""

    base: SpherePoint
    direction: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=np.float64)
        object.__setattr__(self, "direction", d)
        if abs(float(d @ d) - 1.0) > _ORTHO_TOL:
            raise ValueError("direction is not unit within 1e-10")
        if abs(float(d @ self.base.coords)) > _ORTHO_TOL:
            raise ValueError("direction not tangent within 1e-10")


@dataclass(frozen=True)
class GrassmannPlane:
    """Lifted totally geodesic RP^k in RP^n: a (k+1)-frame in (n+1)-space."""

    frame: np.ndarray  # (k+1, n+1), rows orthonormal
    k: int

    def __post_init__(self):
        f = np.asarray(self.frame, dtype=np.float64)
        object.__setattr__(self, "frame", f)
        if f.shape[0] != self.k + 1:
            raise ValueError(f"frame has {f.shape[0]} rows, expected k+1 = {self.k + 1}")
        gram = f @ f.T
        if np.max(np.abs(gram - np.eye(self.k + 1))) > _ORTHO_TOL:
            raise ValueError("plane frame not orthonormal within 1e-10")
        if not 1 <= self.k <= f.shape[1] - 2:
            raise ValueError(f"k must satisfy 1 <= k <= n-1, got k={self.k}")


def tangent_frame(x: SpherePoint) -> TangentFrame:
    """Deterministic orthonormal tangent frame (Householder construction)."""
    cols = K.householder_frames(x.coords[None, :])[0]  # (n+1, n)
    return TangentFrame(base=x, vectors=cols.T)


def canonical_lift(x: np.ndarray, pole: np.ndarray) -> np.ndarray:
    """Representative of [x] in the closed hemisphere <x, pole> >= 0.

    Ties on the equator take the lift whose first nonzero coordinate is
    positive.  Accepts a single point or a batch (leading sample axis).
    """
    single = x.ndim == 1
    xb = np.atleast_2d(np.asarray(x, dtype=np.float64))
    c = xb @ pole
    sign = np.sign(c)
    tie = sign == 0.0
    if np.any(tie):
        rows = xb[tie]
        first = rows[np.arange(rows.shape[0]),
                     np.argmax(np.abs(rows) > 0.0, axis=1)]
        s = np.sign(first)
        s[s == 0.0] = 1.0
        sign[tie] = s
    out = xb * sign[:, None]
    return out[0] if single else out


# ---------------------------------------------------------------------------
# samplers

def sample_uniform_sphere_batch(n: int, seed: int, start: int, count: int) -> np.ndarray:
    """Uniform points on S^n, shape (count, n+1); row i depends only on start+i."""
    if n < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {n}")
    g = rng.normals(seed, rng.TAG_SPHERE, start, count, n + 1)
    return K.normalize_rows(g)


def sample_uniform_sphere(n: int, seed: int, index: int) -> SpherePoint:
    return SpherePoint(sample_uniform_sphere_batch(n, seed, index, 1)[0])


def _tangent_direction(x: np.ndarray, g: np.ndarray) -> np.ndarray:
    d = g - np.einsum("ij,ij->i", g, x)[:, None] * x
    norms = K.row_norms(d)
    bad = norms < 1e-12
    if np.any(bad):
        # measure-zero fallback: first Householder frame column
        d[bad] = K.householder_frames(x[bad])[:, :, 0]
        norms = K.row_norms(d)
    return d / norms[:, None]


def sample_unit_tangent_batch(n: int, seed: int, start: int, count: int):
    """Uniform unit-tangent-bundle samples; returns (bases, directions)."""
    if n < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {n}")
    g = rng.normals(seed, rng.TAG_TANGENT, start, count, 2 * (n + 1))
    x = K.normalize_rows(g[:, : n + 1])
    u = _tangent_direction(x, g[:, n + 1 :])
    return x, u


def sample_unit_tangent(n: int, seed: int, index: int) -> UnitTangentSample:
    x, u = sample_unit_tangent_batch(n, seed, index, 1)
    return UnitTangentSample(base=SpherePoint(x[0]), direction=u[0])


def tangent_fiber_directions(x: SpherePoint, seed: int, start: int, count: int) -> np.ndarray:
    """Uniform unit tangent directions at a fixed base point."""
    g = rng.normals(seed, rng.TAG_TANGENT, start, count, x.coords.shape[0])
    return _tangent_direction(np.broadcast_to(x.coords, g.shape).copy(), g)


def _qr_orthonormal(g: np.ndarray) -> np.ndarray:
    """Stacked QR with the R-diagonal sign fix; columns Haar-orthonormal."""
    q, r = np.linalg.qr(g)
    d = np.sign(np.einsum("...ii->...i", r))
    d[d == 0.0] = 1.0
    return q * d[..., None, :]


def sample_grassmann_batch(n: int, k: int, seed: int, start: int, count: int) -> np.ndarray:
    """Invariant-measure plane frames, shape (count, k+1, n+1)."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must satisfy 1 <= k <= n-1, got k={k}, n={n}")
    words = (k + 1) * (n + 1)
    g = rng.normals(seed, rng.TAG_GRASSMANN, start, count, words)
    g = g.reshape(count, n + 1, k + 1)
    q = _qr_orthonormal(g)
    return np.ascontiguousarray(np.swapaxes(q, 1, 2))


def sample_grassmann(n: int, k: int, seed: int, index: int) -> GrassmannPlane:
    return GrassmannPlane(frame=sample_grassmann_batch(n, k, seed, index, 1)[0], k=k)


def random_isometry_batch(n: int, seed: int, start: int, count: int) -> np.ndarray:
    """Haar orthogonal (n+1)x(n+1) matrices, shape (count, n+1, n+1)."""
    words = (n + 1) * (n + 1)
    g = rng.normals(seed, rng.TAG_ISOMETRY, start, count, words)
    return _qr_orthonormal(g.reshape(count, n + 1, n + 1))


def random_isometry(n: int, seed: int, index: int) -> np.ndarray:
    return random_isometry_batch(n, seed, index, 1)[0]


# ---------------------------------------------------------------------------
# charts

def chart_basis(pole: np.ndarray) -> np.ndarray:
    """Fixed orthonormal basis of pole-perp, shape (n, n+1)."""
    cols = K.householder_frames(np.asarray(pole, dtype=np.float64)[None, :])[0]
    return cols.T


def stereographic_forward(x: np.ndarray, pole: np.ndarray,
                          basis: np.ndarray | None = None) -> np.ndarray:
    """Chart coordinates with the pole at the origin and the equator on |xi| = 1.

    Projection is from -pole; points within 1e-8 of -pole are rejected.
    Accepts a single point or a batch.
    """
    single = x.ndim == 1
    xb = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if basis is None:
        basis = chart_basis(pole)
    c = xb @ pole
    if np.any(1.0 + c < 1e-8):
        raise PoleError("stereographic chart undefined at the antipode of the pole")
    w = xb - c[:, None] * pole
    xi = (w @ basis.T) / (1.0 + c)[:, None]
    return xi[0] if single else xi


def stereographic_inverse(xi: np.ndarray, pole: np.ndarray,
                          basis: np.ndarray | None = None) -> np.ndarray:
    """Inverse chart; maps |xi| -> polar angle 2 arctan|xi| from the pole."""
    single = xi.ndim == 1
    xib = np.atleast_2d(np.asarray(xi, dtype=np.float64))
    if basis is None:
        basis = chart_basis(pole)
    rho2 = np.einsum("ij,ij->i", xib, xib)
    x = ((1.0 - rho2)[:, None] * pole + 2.0 * (xib @ basis)) / (1.0 + rho2)[:, None]
    return x[0] if single else x


def fermi_split(x: np.ndarray, pole: np.ndarray):
    """Split x = cos(r) foot + sin(r) pole about the equator pole-perp.

    r in [0, pi/2] is the geodesic distance to the equator; callers pass
    canonical lifts (<x, pole> >= 0).  Raises PoleError within 1e-8 of the
    pole, where the foot is undefined.  Accepts a single point or a batch.
    """
    single = x.ndim == 1
    xb = np.atleast_2d(np.asarray(x, dtype=np.float64))
    r, foot = K.fermi_split(xb, np.asarray(pole, dtype=np.float64))
    if np.any(np.cos(r) < 1e-8):
        raise PoleError("foot point undefined at the pole")
    return (float(r[0]), foot[0]) if single else (r, foot)


# ---------------------------------------------------------------------------
# latitude laws: the uniform measure on S^n has density proportional to
# cos^(n-1)(r) dr in the distance r to a fixed equator

def cos_power_integral(m: int, r_hi: float = math.pi / 2.0, r_lo: float = 0.0) -> float:
    """Integral of cos^m(r) dr over [r_lo, r_hi] within [0, pi/2], closed form.

    Uses the regularized incomplete beta function; the full integral is
    sigma(m+1) / (2 sigma(m)).
    """
    if m < 0:
        raise ValueError(f"cosine power must be >= 0, got {m}")
    if not 0.0 <= r_lo <= r_hi <= math.pi / 2.0 + 1e-15:
        raise ValueError(f"need 0 <= r_lo <= r_hi <= pi/2, got [{r_lo}, {r_hi}]")
    full = sphere_volume(m + 1) / (2.0 * sphere_volume(m))
    a, b = 0.5, (m + 1) / 2.0
    hi = betainc(a, b, min(math.sin(r_hi) ** 2, 1.0))
    lo = betainc(a, b, math.sin(r_lo) ** 2)
    return full * float(hi - lo)


def band_volume(n: int, r_lo: float, r_hi: float) -> float:
    """Volume of the latitude band r_lo <= r <= r_hi in one hemisphere of S^n."""
    return sphere_volume(n - 1) * cos_power_integral(n - 1, r_hi, r_lo)


def sample_latitude(m: int, seed: int, tag: int, start: int, count: int,
                    r_lo: float = 0.0, r_hi: float = math.pi / 2.0) -> np.ndarray:
    """Latitudes r with density proportional to cos^m(r) on [r_lo, r_hi].

    Closed-form inverse CDF through sin^2(r) ~ Beta(1/2, (m+1)/2).
    """
    v = rng.uniforms(seed, tag, start, count, 1)[:, 0]
    a, b = 0.5, (m + 1) / 2.0
    g_lo = betainc(a, b, math.sin(r_lo) ** 2)
    g_hi = betainc(a, b, min(math.sin(r_hi) ** 2, 1.0))
    z = betaincinv(a, b, g_lo + v * (g_hi - g_lo))
    return np.arcsin(np.sqrt(np.clip(z, 0.0, 1.0)))


def sample_equator_batch(n: int, seed: int, tag: int, start: int, count: int) -> np.ndarray:
    """Uniform points of the equator S^(n-1) = pole-perp, embedded in (n+1)-space."""
    g = rng.normals(seed, tag, start, count, n)
    v = np.zeros((count, n + 1))
    v[:, :n] = K.normalize_rows(g)
    return v
