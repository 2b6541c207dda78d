"""Smooth maps from round spheres into embedded targets.

A map carries a batch evaluator, an optional analytic pushforward, an
equivariance flag (whether it descends to the projective quotient), and an
embedded target described by projection callables.  Differentials default
to central finite differences along domain geodesics; energy and area
densities, the tension field, and the conformal residual are derived from
them.  `catalog` builds the named example maps.

Batch functions put the sample index on the leading axis; single-point
operations wrap them with validated types.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable
import math

import numpy as np

from . import _kernels as K
from .errors import ConformalPreconditionError, PoleError, TargetConsistencyError
from .spherical_geometry import SpherePoint, TangentFrame, tangent_frame

FD_STEP = 1e-4
FD_STEP2 = 1e-3

EQUIVARIANCE_FLAGS = ("invariant", "antipode", "none")


@dataclass(frozen=True)
class EmbeddedTarget:
    """Riemannian target given extrinsically: ambient dimension, nearest-point
    projection, and tangent projector.  All curvature enters through these."""

    ambient_dim: int
    project: Callable[[np.ndarray], np.ndarray]
    tangent_project: Callable[[np.ndarray, np.ndarray], np.ndarray]
    name: str = "target"


def sphere_target(ambient_dim: int) -> EmbeddedTarget:
    """Unit sphere in R^ambient_dim."""

    def project(y: np.ndarray) -> np.ndarray:
        return K.normalize_rows(y)

    def tangent_project(y: np.ndarray, v: np.ndarray) -> np.ndarray:
        coef = np.einsum("ij,ijk->ik", y, v)
        return v - y[:, :, None] * coef[:, None, :]

    return EmbeddedTarget(ambient_dim, project, tangent_project,
                          name=f"S^{ambient_dim - 1}")


def product_sphere_target(d1: int, d2: int, radius2: float) -> EmbeddedTarget:
    """Product of the unit sphere in R^d1 with a radius-radius2 sphere in R^d2."""

    def project(y: np.ndarray) -> np.ndarray:
        out = np.empty_like(y)
        out[:, :d1] = K.normalize_rows(y[:, :d1])
        out[:, d1:] = radius2 * K.normalize_rows(y[:, d1:])
        return out

    def tangent_project(y: np.ndarray, v: np.ndarray) -> np.ndarray:
        out = v.copy()
        y1 = y[:, :d1]
        coef = np.einsum("ij,ijk->ik", y1, v[:, :d1, :])
        out[:, :d1, :] -= y1[:, :, None] * coef[:, None, :]
        y2 = y[:, d1:] / radius2
        coef = np.einsum("ij,ijk->ik", y2, v[:, d1:, :])
        out[:, d1:, :] -= y2[:, :, None] * coef[:, None, :]
        return out

    return EmbeddedTarget(d1 + d2, project, tangent_project,
                          name=f"S^{d1 - 1} x sqrt-scaled S^{d2 - 1}")


@dataclass(frozen=True)
class SmoothMap:
    """Evaluable map from S^domain_dim into an embedded target.

    equivariance: "invariant" (F(-x) = F(x)), "antipode" (F(-x) = -F(x)),
    or "none"; the first two descend to the projective quotient.
    push_batch, when given, is the analytic differential (maps tangent
    vectors at x to tangent vectors at F(x)); otherwise central finite
    differences with step fd_step are used.
    """

    domain_dim: int
    target: EmbeddedTarget
    eval_batch: Callable[[np.ndarray], np.ndarray]
    equivariance: str = "none"
    push_batch: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    fd_step: float = FD_STEP
    name: str = "map"

    def __post_init__(self):
        if self.equivariance not in EQUIVARIANCE_FLAGS:
            raise ValueError(
                f"equivariance must be one of {EQUIVARIANCE_FLAGS}, got {self.equivariance!r}")

    @property
    def descends(self) -> bool:
        """True when the map induces a map of RP^domain_dim."""
        return self.equivariance != "none"

    @property
    def differential_mode(self) -> str:
        return "analytic" if self.push_batch is not None else f"fd(h={self.fd_step})"

    def eval(self, x: SpherePoint) -> np.ndarray:
        """Single-point evaluation with the target-consistency check."""
        y = self.eval_batch(x.coords[None, :])
        if float(np.linalg.norm(self.target.project(y) - y)) > 1e-8:
            raise TargetConsistencyError(
                f"{self.name} evaluates off the target manifold at {x.coords}")
        return y[0]


@dataclass(frozen=True)
class MapDifferential:
    """Images of a tangent frame under dF, as columns."""

    base: SpherePoint
    matrix: np.ndarray  # (target ambient_dim, domain_dim)
    frame: TangentFrame


def _frames_or_default(x: np.ndarray, frames: np.ndarray | None) -> np.ndarray:
    if frames is None:
        return K.householder_frames(x)
    return frames


def _fd_differential(F: SmoothMap, x: np.ndarray, frames: np.ndarray) -> np.ndarray:
    m, dp1, d = frames.shape
    h = F.fd_step
    ch, sh = math.cos(h), math.sin(h)
    # stack all 2d shifted evaluations into one call
    plus = ch * x[:, :, None] + sh * frames  # (m, dp1, d)
    minus = ch * x[:, :, None] - sh * frames
    pts = np.concatenate([np.moveaxis(plus, 2, 1), np.moveaxis(minus, 2, 1)],
                         axis=1).reshape(2 * m * d, dp1)
    vals = F.eval_batch(pts).reshape(m, 2 * d, -1)
    diff = (vals[:, :d, :] - vals[:, d:, :]) / (2.0 * sh)
    cols = np.moveaxis(diff, 1, 2)  # (m, D, d)
    base_vals = F.eval_batch(x)
    return F.target.tangent_project(base_vals, cols)


def differential_batch(F: SmoothMap, x: np.ndarray,
                       frames: np.ndarray | None = None) -> np.ndarray:
    """dF at each row of x applied to frame columns; shape (m, D, d).

    Finite-difference columns follow the domain geodesics
    s -> cos(s) x + sin(s) e_j and are tangent-projected at F(x).
    """
    frames = _frames_or_default(x, frames)
    if F.push_batch is not None:
        return F.push_batch(x, frames)
    return _fd_differential(F, x, frames)


def pushforward_batch(F: SmoothMap, x: np.ndarray, w: np.ndarray) -> np.ndarray:
    """dF applied to arbitrary (not necessarily unit) tangent columns.

    Analytic pushforwards are linear in w; the finite-difference path
    normalizes each column, steps along the unit geodesic, and rescales.
    """
    if F.push_batch is not None:
        return F.push_batch(x, w)
    norms = np.sqrt(np.einsum("mjk,mjk->mk", w, w))
    safe = np.maximum(norms, 1e-300)
    out = _fd_differential(F, x, w / safe[:, None, :])
    out *= norms[:, None, :]
    return out


def differential(F: SmoothMap, x: SpherePoint,
                 frame: TangentFrame | None = None) -> MapDifferential:
    if frame is None:
        frame = tangent_frame(x)
    mat = differential_batch(F, x.coords[None, :], frame.vectors.T[None, :, :])[0]
    return MapDifferential(base=x, matrix=mat, frame=frame)


def direction_derivative_batch(F: SmoothMap, x: np.ndarray, u: np.ndarray) -> np.ndarray:
    """dF(u) for one tangent direction per sample; shape (m, D)."""
    if F.push_batch is not None:
        return F.push_batch(x, u[:, :, None])[:, :, 0]
    h = F.fd_step
    ch, sh = math.cos(h), math.sin(h)
    vals = F.eval_batch(np.concatenate([ch * x + sh * u, ch * x - sh * u]))
    m = x.shape[0]
    diff = (vals[:m] - vals[m:]) / (2.0 * sh)
    base_vals = F.eval_batch(x)
    return F.target.tangent_project(base_vals, diff[:, :, None])[:, :, 0]


def energy_density_batch(F: SmoothMap, x: np.ndarray,
                         frames: np.ndarray | None = None) -> np.ndarray:
    """Half the squared Frobenius norm of dF, per sample."""
    return 0.5 * K.frobsq(differential_batch(F, x, frames))


def energy_density(F: SmoothMap, x: SpherePoint,
                   frame: TangentFrame | None = None) -> float:
    if frame is None:
        frame = tangent_frame(x)
    return float(energy_density_batch(F, x.coords[None, :],
                                      frame.vectors.T[None, :, :])[0])


def singular_values_batch(J: np.ndarray) -> np.ndarray:
    """Singular values of each differential, descending; J is (m, D, d)."""
    d = J.shape[2]
    if d == 2:
        g = np.einsum("ipj,ipk->ijk", J, J)
        s1, s2 = K.sv2_from_gram(g[:, 0, 0], g[:, 0, 1], g[:, 1, 1])
        return np.stack([s1, s2], axis=1)
    gram = np.einsum("ipj,ipk->ijk", J, J)
    ev = np.linalg.eigvalsh(gram)  # ascending
    return np.sqrt(np.maximum(ev[:, ::-1], 0.0))


def _require_2d(F: SmoothMap, op: str) -> None:
    if F.domain_dim != 2:
        raise ValueError(f"{op} requires a 2-dimensional domain, got {F.domain_dim}")


def area_density_2d_batch(F: SmoothMap, x: np.ndarray,
                          frames: np.ndarray | None = None) -> np.ndarray:
    """sqrt(det(df^T df)) = product of the two singular values."""
    _require_2d(F, "area_density_2d")
    sv = singular_values_batch(differential_batch(F, x, frames))
    return sv[:, 0] * sv[:, 1]


def area_density_2d(F: SmoothMap, x: SpherePoint,
                    frame: TangentFrame | None = None) -> float:
    if frame is None:
        frame = tangent_frame(x)
    return float(area_density_2d_batch(F, x.coords[None, :],
                                       frame.vectors.T[None, :, :])[0])


def conformal_defect_2d_batch(F: SmoothMap, x: np.ndarray,
                              frames: np.ndarray | None = None) -> np.ndarray:
    """Energy density minus area density = (s1 - s2)^2 / 2; zero iff semiconformal."""
    _require_2d(F, "conformal_defect_2d")
    sv = singular_values_batch(differential_batch(F, x, frames))
    return 0.5 * (sv[:, 0] - sv[:, 1]) ** 2


def conformal_defect_2d(F: SmoothMap, x: SpherePoint,
                        frame: TangentFrame | None = None) -> float:
    if frame is None:
        frame = tangent_frame(x)
    return float(conformal_defect_2d_batch(F, x.coords[None, :],
                                           frame.vectors.T[None, :, :])[0])


def tension_field_batch(F: SmoothMap, x: np.ndarray,
                        frames: np.ndarray | None = None,
                        h2: float = FD_STEP2) -> np.ndarray:
    """Trace of the second fundamental form of F at each row of x.

    Sum over frame directions of the second central difference of F along
    the domain geodesic, tangent-projected at F(x); vanishes iff harmonic.
    """
    frames = _frames_or_default(x, frames)
    m, dp1, d = frames.shape
    ch, sh = math.cos(h2), math.sin(h2)
    plus = ch * x[:, :, None] + sh * frames
    minus = ch * x[:, :, None] - sh * frames
    pts = np.concatenate([np.moveaxis(plus, 2, 1), np.moveaxis(minus, 2, 1)],
                         axis=1).reshape(2 * m * d, dp1)
    vals = F.eval_batch(pts).reshape(m, 2 * d, -1)
    base_vals = F.eval_batch(x)
    second = (vals[:, :d, :] + vals[:, d:, :] - 2.0 * base_vals[:, None, :]) / (h2 * h2)
    total = second.sum(axis=1)
    return F.target.tangent_project(base_vals, total[:, :, None])[:, :, 0]


def tension_field(F: SmoothMap, x: SpherePoint,
                  frame: TangentFrame | None = None,
                  h2: float = FD_STEP2) -> np.ndarray:
    if frame is None:
        frame = tangent_frame(x)
    return tension_field_batch(F, x.coords[None, :],
                               frame.vectors.T[None, :, :], h2=h2)[0]


def _log_conformal_factor(F: SmoothMap, pts: np.ndarray) -> np.ndarray:
    """log of the root-mean-square singular value (= the common factor when
    the map is conformal)."""
    J = differential_batch(F, pts)
    d = J.shape[2]
    return 0.5 * np.log(K.frobsq(J) / d)


def conformal_residual(F: SmoothMap, x: SpherePoint,
                       frame: TangentFrame | None = None,
                       h: float = FD_STEP, h2: float = FD_STEP2) -> float:
    """Norm of Tr(alpha_F) - (2 - n) dF(grad log(conformal factor)).

    Vanishes for conformal maps onto a target filled by the image (zero mean
    curvature); the caller asserts that geometry.  Raises when the probe is
    not conformal: the singular values must agree to 1e-3 relative spread.
    """
    if frame is None:
        frame = tangent_frame(x)
    fr = frame.vectors.T[None, :, :]
    J = differential_batch(F, x.coords[None, :], fr)
    sv = singular_values_batch(J)[0]
    mean_s = float(sv.mean())
    if mean_s <= 0.0 or float(sv[0] - sv[-1]) / mean_s > 1e-3:
        raise ConformalPreconditionError(
            f"probe is not conformal: singular values {sv}")
    n = F.domain_dim
    tau = tension_field(F, x, frame, h2=h2)
    ch, sh = math.cos(h), math.sin(h)
    d = frame.vectors.shape[0]
    plus = ch * x.coords[None, :] + sh * frame.vectors  # (d, dp1)
    minus = ch * x.coords[None, :] - sh * frame.vectors
    eta = _log_conformal_factor(F, np.concatenate([plus, minus]))
    grad = (eta[:d] - eta[d:]) / (2.0 * sh)
    push_grad = J[0] @ grad
    return float(np.linalg.norm(tau - (2.0 - n) * push_grad))


# ---------------------------------------------------------------------------
# composition helpers

def precompose_frame(F: SmoothMap, frame_rows: np.ndarray,
                     name: str | None = None) -> SmoothMap:
    """F restricted to the great subsphere spanned by orthonormal frame rows.

    frame_rows has shape (k+1, n+1); the result is a map on S^k, the
    composition of y -> y @ frame_rows with F.  Equivariance is inherited
    (the parametrization is linear, so it commutes with the antipode).
    """
    A = np.asarray(frame_rows, dtype=np.float64)

    def ev(y: np.ndarray) -> np.ndarray:
        return F.eval_batch(y @ A)

    push = None
    if F.push_batch is not None:
        def push(y: np.ndarray, w: np.ndarray) -> np.ndarray:
            return F.push_batch(y @ A, np.einsum("pq,mpk->mqk", A, w))

    return SmoothMap(
        domain_dim=A.shape[0] - 1,
        target=F.target,
        eval_batch=ev,
        equivariance=F.equivariance,
        push_batch=push,
        fd_step=F.fd_step,
        name=name or f"{F.name}|slice",
    )


def equator_frame(n: int) -> np.ndarray:
    """Standard frame of the equator x_n = 0, rows e_0 .. e_(n-1)."""
    return np.eye(n + 1)[:n]


def restrict_to_equator(F: SmoothMap) -> SmoothMap:
    """The induced map on the equatorial S^(n-1) (hyperplane x_n = 0)."""
    return precompose_frame(F, equator_frame(F.domain_dim), name=f"{F.name}'")


def precompose_isometry(F: SmoothMap, M: np.ndarray) -> SmoothMap:
    """x -> F(M x) for an orthogonal matrix M."""
    return precompose_frame(F, np.asarray(M, dtype=np.float64).T,
                            name=f"{F.name}_rotated")


def standard_pole(n: int) -> np.ndarray:
    """The distinguished pole: the last coordinate axis of ambient (n+1)-space."""
    p = np.zeros(n + 1)
    p[n] = 1.0
    return p


# ---------------------------------------------------------------------------
# catalog

def quadratic_profile() -> tuple[Callable[[np.ndarray], np.ndarray],
                                 Callable[[np.ndarray], np.ndarray]]:
    """The canonical warp profile rho(r) = (2/pi) r^2 on [0, pi/2].

    rho(0) = 0, rho(pi/2) = pi/2, rho'(0) = 0, so the warp is continuous at
    the poles and C^1 across the equator.
    """
    c = 2.0 / math.pi
    return (lambda r: c * r * r), (lambda r: 2.0 * c * r)


def _identity_map(n: int) -> SmoothMap:
    return SmoothMap(
        domain_dim=n,
        target=sphere_target(n + 1),
        eval_batch=lambda x: x.copy(),
        equivariance="antipode",
        push_batch=lambda x, w: w.copy(),
        name=f"identity({n})",
    )


def _constant_map(n: int) -> SmoothMap:
    def ev(x: np.ndarray) -> np.ndarray:
        out = np.zeros((x.shape[0], n + 1))
        out[:, 0] = 1.0
        return out

    return SmoothMap(
        domain_dim=n,
        target=sphere_target(n + 1),
        eval_batch=ev,
        equivariance="invariant",
        push_batch=lambda x, w: np.zeros((x.shape[0], n + 1, w.shape[2])),
        name=f"constant({n})",
    )


def _inclusion_map(k: int, n: int) -> SmoothMap:
    if not 1 <= k <= n:
        raise ValueError(f"inclusion requires 1 <= k <= n, got k={k}, n={n}")

    def ev(x: np.ndarray) -> np.ndarray:
        out = np.zeros((x.shape[0], n + 1))
        out[:, : k + 1] = x
        return out

    def push(x: np.ndarray, w: np.ndarray) -> np.ndarray:
        out = np.zeros((x.shape[0], n + 1, w.shape[2]))
        out[:, : k + 1, :] = w
        return out

    return SmoothMap(
        domain_dim=k,
        target=sphere_target(n + 1),
        eval_batch=ev,
        equivariance="antipode",
        push_batch=push,
        name=f"inclusion({k},{n})",
    )


def _retraction_map(n: int) -> SmoothMap:
    """Nearest-point retraction onto the equator hyperplane, undefined at the poles."""
    pole = standard_pole(n)

    def ev(x: np.ndarray) -> np.ndarray:
        w = x - (x @ pole)[:, None] * pole
        norms = K.row_norms(w)
        if np.any(norms < 1e-12):
            raise PoleError("retraction undefined at the pole")
        return w / norms[:, None]

    def push(x: np.ndarray, w: np.ndarray) -> np.ndarray:
        # dR(v) = (P v - R <R, P v>) / |P x|  with P the hyperplane projector
        c = x @ pole
        xp = x - c[:, None] * pole
        norms = K.row_norms(xp)
        if np.any(norms < 1e-12):
            raise PoleError("retraction differential undefined at the pole")
        R = xp / norms[:, None]
        pv = w - pole[None, :, None] * np.einsum("j,mjk->mk", pole, w)[:, None, :]
        coef = np.einsum("mj,mjk->mk", R, pv)
        return (pv - R[:, :, None] * coef[:, None, :]) / norms[:, None, None]

    return SmoothMap(
        domain_dim=n,
        target=sphere_target(n + 1),
        eval_batch=ev,
        equivariance="antipode",
        push_batch=push,
        name=f"retraction_to_hyperplane({n})",
    )


def _dilation_map(n: int, t: float, fixed_point: np.ndarray | None = None) -> SmoothMap:
    if t <= 0.0:
        raise ValueError(f"dilation parameter must be > 0, got {t}")
    pole = standard_pole(n) if fixed_point is None else np.asarray(fixed_point, float)

    return SmoothMap(
        domain_dim=n,
        target=sphere_target(n + 1),
        eval_batch=lambda x: K.dilation_apply(x, pole, t),
        equivariance="antipode" if t == 1.0 else "none",
        push_batch=lambda x, w: K.dilation_push(x, w, pole, t),
        name=f"dilation({n},t={t:g})",
    )


def _polar_warp_map(n: int, profile=None) -> SmoothMap:
    """Latitude warp (r, v) -> (profile(r), v) about the standard equator.

    r is the unsigned distance to the equator; the hemisphere sign is
    preserved, so the map descends for any admissible profile.
    """
    if profile is None or profile == "quadratic":
        rho, drho = quadratic_profile()
    elif isinstance(profile, str):
        raise ValueError(f"unknown polar_warp profile {profile!r}")
    else:
        rho, drho = profile
    pole = standard_pole(n)

    def split(x: np.ndarray):
        c = np.clip(x @ pole, -1.0, 1.0)
        r = np.arcsin(np.abs(c))
        cr = np.sqrt(np.maximum(1.0 - c * c, 0.0))
        w = x - c[:, None] * pole
        return c, r, cr, w

    def ev(x: np.ndarray) -> np.ndarray:
        c, r, cr, w = split(x)
        rr = rho(r)
        sgn = np.where(c >= 0.0, 1.0, -1.0)
        safe = np.maximum(cr, 1e-300)
        y = (np.cos(rr) / safe)[:, None] * w + (sgn * np.sin(rr))[:, None] * pole
        polar = cr < 1e-14
        if np.any(polar):
            y[polar] = sgn[polar, None] * pole
        return K.normalize_rows(y)

    def push(x: np.ndarray, w_in: np.ndarray) -> np.ndarray:
        c, r, cr, w = split(x)
        sgn = np.where(c >= 0.0, 1.0, -1.0)
        ell_s, ell_c = c, cr          # sin/cos of the signed latitude
        L = sgn * rho(r)              # image signed latitude
        dL = drho(r)                  # dL/d(ell), even in the sign
        safe = np.maximum(cr, 1e-300)
        what = w / safe[:, None]
        u_x = -ell_s[:, None] * what + ell_c[:, None] * pole
        u_y = -np.sin(L)[:, None] * what + np.cos(L)[:, None] * pole
        lat_scale = np.where(cr < 1e-12, dL, np.cos(L) / safe)
        a = np.einsum("mj,mjk->mk", u_x, w_in)
        perp = w_in - u_x[:, :, None] * a[:, None, :]
        return (u_y[:, :, None] * (dL[:, None] * a)[:, None, :]
                + lat_scale[:, None, None] * perp)

    return SmoothMap(
        domain_dim=n,
        target=sphere_target(n + 1),
        eval_batch=ev,
        equivariance="antipode",
        push_batch=push,
        name=f"polar_warp({n})",
    )


def graph_map(f: SmoothMap, r: float) -> SmoothMap:
    """The graph-type product of f with the homothety onto a radius-sqrt(r) sphere.

    Energy density gains exactly r/2 * |d id|^2 = r * (domain dim)/2 over f's;
    for f the identity of S^2 both singular values are sqrt(1 + r).
    """
    if f.domain_dim != 2:
        raise ValueError(f"graph maps require a 2-dimensional domain, got {f.domain_dim}")
    if r <= 0.0:
        raise ValueError(f"graph inflation parameter must be > 0, got {r}")
    if f.target.ambient_dim != 3:
        raise ValueError("graph base map must take values in a surface in R^3")
    sr = math.sqrt(r)

    def ev(x: np.ndarray) -> np.ndarray:
        return np.concatenate([f.eval_batch(x), sr * x], axis=1)

    push = None
    if f.push_batch is not None:
        def push(x: np.ndarray, w: np.ndarray) -> np.ndarray:
            return np.concatenate([f.push_batch(x, w), sr * w], axis=1)

    return SmoothMap(
        domain_dim=2,
        target=product_sphere_target(f.target.ambient_dim, 3, sr),
        eval_batch=ev,
        equivariance="antipode" if f.equivariance == "antipode" else "none",
        push_batch=push,
        fd_step=f.fd_step,
        name=f"graph({f.name},r={r:g})",
    )


_CATALOG_IDS = ("identity", "constant", "inclusion", "retraction_to_hyperplane",
                "dilation", "polar_warp", "graph")


def catalog(map_id: str, n: int, **params) -> SmoothMap:
    """Named example maps.

    identity(n), constant(n), inclusion(k, n), retraction_to_hyperplane(n),
    dilation(n, t), polar_warp(n, profile), graph(base, r) with a
    2-dimensional base map (default the identity of S^2).
    """
    if map_id == "identity":
        _no_extra(map_id, params)
        return _identity_map(n)
    if map_id == "constant":
        _no_extra(map_id, params)
        return _constant_map(n)
    if map_id == "inclusion":
        k = int(params.pop("k", 2))
        _no_extra(map_id, params)
        return _inclusion_map(k, n)
    if map_id in ("retraction_to_hyperplane", "retraction"):
        _no_extra(map_id, params)
        return _retraction_map(n)
    if map_id == "dilation":
        t = float(params.pop("t", 2.0))
        fixed_point = params.pop("fixed_point", None)
        _no_extra(map_id, params)
        return _dilation_map(n, t, fixed_point)
    if map_id == "polar_warp":
        profile = params.pop("profile", "quadratic")
        _no_extra(map_id, params)
        return _polar_warp_map(n, profile)
    if map_id == "graph":
        r = float(params.pop("r", 0.1))
        base = params.pop("base", None)
        _no_extra(map_id, params)
        if base is None or base == "identity":
            base = _identity_map(2)
        elif isinstance(base, str):
            base = catalog(base, 2)
        return graph_map(base, r)
    raise ValueError(f"unknown catalog map {map_id!r}; known: {_CATALOG_IDS}")


def _no_extra(map_id: str, params: dict) -> None:
    if params:
        raise ValueError(f"unexpected parameters for {map_id}: {sorted(params)}")
