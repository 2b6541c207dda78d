"""Monte Carlo estimators of the energy E_2(F) = (1/2) integral |dF|^2.

Three independent routes: the direct density integral, the unit-tangent-
bundle average (value = (n/2) Vol(domain) mean |dF(u)|^2), and the
Grassmannian slice decomposition (plane-average of slice energies times the
total measure n sigma(n) / (k sigma(k))).  Plus the 2-dimensional area
functional and the pointwise-coupled semiconformality defect.

Projective-domain quadrature samples the covering sphere and multiplies by
Vol(RP^n) = sigma(n)/2; the density is antipodally symmetric for every map
that descends, so no fundamental-domain bookkeeping is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from . import rng
from . import _kernels as K
from .errors import EquivarianceError
from .map_model import (
    SmoothMap,
    area_density_2d_batch,
    differential_batch,
    direction_derivative_batch,
    energy_density_batch,
    precompose_frame,
    singular_values_batch,
)
from .spherical_geometry import (
    projective_volume,
    sample_grassmann_batch,
    sample_uniform_sphere_batch,
    sample_unit_tangent_batch,
    sphere_volume,
)

DOMAINS = ("sphere", "projective", "auto")


@dataclass(frozen=True)
class EnergyEstimate:
    """Monte Carlo estimate: value, standard error of the mean, sample count."""

    value: float
    std_error: float
    samples: int
    method: str

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"estimate value is not finite: {self.value}")
        if self.std_error < 0.0:
            raise ValueError(f"std_error must be >= 0, got {self.std_error}")


def default_samples(n: int) -> int:
    """Desk-scale default sample counts: 1e5 for n <= 3, 4e5 above."""
    return 100_000 if n <= 3 else 400_000


def resolve_domain(F: SmoothMap, domain: str) -> str:
    """Resolve "auto" to projective when the map descends, sphere otherwise."""
    if domain not in DOMAINS:
        raise ValueError(f"domain must be one of {DOMAINS}, got {domain!r}")
    if domain == "auto":
        return "projective" if F.descends else "sphere"
    return domain


def _domain_volume(F: SmoothMap, domain: str) -> float:
    if domain == "projective":
        if not F.descends:
            raise EquivarianceError(
                f"{F.name} does not descend to RP^{F.domain_dim}; "
                "projective-domain quadrature is undefined")
        return projective_volume(F.domain_dim)
    return sphere_volume(F.domain_dim)


def _mean_estimate(values: np.ndarray, scale: float, method: str) -> EnergyEstimate:
    m = values.shape[0]
    if m < 1:
        raise ValueError("need at least one sample")
    se = 0.0 if m == 1 else float(values.std(ddof=1) / math.sqrt(m))
    return EnergyEstimate(value=scale * float(values.mean()),
                          std_error=scale * se, samples=m, method=method)


def direct_energy(F: SmoothMap, domain: str = "auto",
                  samples: int | None = None, seed: int = 0) -> EnergyEstimate:
    """Energy by uniform sampling of the energy density."""
    domain = resolve_domain(F, domain)
    vol = _domain_volume(F, domain)
    m = samples if samples is not None else default_samples(F.domain_dim)
    x = sample_uniform_sphere_batch(F.domain_dim, seed, 0, m)
    dens = energy_density_batch(F, x)
    return _mean_estimate(dens, vol, "direct")


def croke_energy(F: SmoothMap, domain: str = "auto",
                 samples: int | None = None, seed: int = 0) -> EnergyEstimate:
    """Energy by averaging |dF(u)|^2 over the unit tangent bundle.

    E_2(F) = n / (2 sigma(n-1)) * integral over the bundle; with the bundle
    volume Vol(domain) sigma(n-1) this reduces to (n/2) Vol(domain) times
    the sample mean.
    """
    domain = resolve_domain(F, domain)
    vol = _domain_volume(F, domain)
    n = F.domain_dim
    m = samples if samples is not None else default_samples(n)
    x, u = sample_unit_tangent_batch(n, seed, 0, m)
    du = direction_derivative_batch(F, x, u)
    vals = np.einsum("ij,ij->i", du, du)
    return _mean_estimate(vals, 0.5 * n * vol, "croke")


def slice_total_measure(n: int, k: int) -> float:
    """Total invariant measure of the space of totally geodesic RP^k in RP^n."""
    return n * sphere_volume(n) / (k * sphere_volume(k))


def slice_energy(F: SmoothMap, k: int, planes: int | None = None,
                 samples_per_plane: int | None = None, seed: int = 0) -> EnergyEstimate:
    """Energy as the measure-weighted average of slice energies E_2(F|_Q).

    Each sampled plane Q is parametrized isometrically by its frame and the
    restricted map is estimated over RP^k; the reported standard error is
    the spread of per-plane energies over sqrt(planes), which carries both
    the between-plane and the within-plane variance.
    """
    n = F.domain_dim
    if not 1 <= k <= n - 1:
        raise ValueError(f"slice dimension must satisfy 1 <= k <= n-1, got k={k}, n={n}")
    if not F.descends:
        raise EquivarianceError(
            f"{F.name} does not descend to RP^{n}; slices are projective")
    if planes is None or samples_per_plane is None:
        total = default_samples(n)
        p0, s0 = split_slice_budget(total)
        planes = planes if planes is not None else p0
        samples_per_plane = samples_per_plane if samples_per_plane is not None else s0
    if planes < 2:
        raise ValueError(f"need at least 2 planes for an error estimate, got {planes}")

    frames = sample_grassmann_batch(n, k, seed, 0, planes)
    vol_k = projective_volume(k)
    plane_energies = np.empty(planes)
    for p in range(planes):
        Fq = precompose_frame(F, frames[p])
        y = _slice_points(k, seed, p * samples_per_plane, samples_per_plane)
        dens = energy_density_batch(Fq, y)
        plane_energies[p] = vol_k * float(dens.mean())
    scale = slice_total_measure(n, k)
    est = _mean_estimate(plane_energies, scale, f"slice({k})")
    return EnergyEstimate(value=est.value, std_error=est.std_error,
                          samples=planes * samples_per_plane, method=est.method)


def _slice_points(k: int, seed: int, start: int, count: int) -> np.ndarray:
    g = rng.normals(seed, rng.TAG_SLICE_POINT, start, count, k + 1)
    return K.normalize_rows(g)


def split_slice_budget(samples: int) -> tuple[int, int]:
    """Deterministic split of a total budget into (planes, samples_per_plane)."""
    planes = max(2, math.ceil(math.sqrt(samples)))
    return planes, max(1, math.ceil(samples / planes))


def area_2d(F: SmoothMap, domain: str = "auto",
            samples: int | None = None, seed: int = 0) -> EnergyEstimate:
    """Area of the image (with multiplicity) of a 2-domain map."""
    if F.domain_dim != 2:
        raise ValueError(f"area_2d requires a 2-dimensional domain, got {F.domain_dim}")
    domain = resolve_domain(F, domain)
    vol = _domain_volume(F, domain)
    m = samples if samples is not None else default_samples(2)
    x = sample_uniform_sphere_batch(2, seed, 0, m)
    dens = area_density_2d_batch(F, x)
    return _mean_estimate(dens, vol, "area")


def total_conformal_defect(F: SmoothMap, domain: str = "auto",
                           samples: int | None = None, seed: int = 0) -> EnergyEstimate:
    """Integral of energy density minus area density, pointwise-coupled.

    Both densities come from the same differentials at the same points, so
    the estimate is nonnegative up to rounding and vanishes within noise
    exactly for semiconformal maps.
    """
    if F.domain_dim != 2:
        raise ValueError(
            f"total_conformal_defect requires a 2-dimensional domain, got {F.domain_dim}")
    domain = resolve_domain(F, domain)
    vol = _domain_volume(F, domain)
    m = samples if samples is not None else default_samples(2)
    x = sample_uniform_sphere_batch(2, seed, 0, m)
    sv = singular_values_batch(differential_batch(F, x))
    dens = 0.5 * (sv[:, 0] - sv[:, 1]) ** 2
    return _mean_estimate(dens, vol, "defect")
