"""Self-check suites: constant identities, estimator cross-agreement, and
deformation behavior, each reported as deterministic pass/fail lines.

Every check prints the measured discrepancy next to its allowance; output
is a pure function of (suite, seed, samples), so repeated runs are
byte-identical.  Monte Carlo comparisons allow 3 combined standard errors
plus a 64-ulp absolute guard for exactly-reproduced values whose standard
error is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from . import rng
from .bounds import (
    bounds_report,
    constant_C,
    constant_D,
    HomotopyClassData,
    prop5_ratio,
    pu_predicate,
    upper_constant_identity,
)
from .deformations import (
    deformed_energy,
    dilation_energy_curve,
    graph_inflation_report,
    projective_deformation_apply,
    quadrature_identity_check,
    retraction_limit_energy,
    standard_projective_deformation,
)
from .energy_estimators import (
    area_2d,
    croke_energy,
    default_samples,
    direct_energy,
    slice_energy,
    split_slice_budget,
    total_conformal_defect,
)
from .map_model import catalog, precompose_isometry, restrict_to_equator
from .spherical_geometry import (
    random_isometry,
    sample_equator_batch,
    sample_uniform_sphere_batch,
    sphere_volume,
)

SUITES = ("constants", "estimators", "deformations", "all")

_EPS_GUARD = 64.0 * np.finfo(np.float64).eps


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.name}: {self.detail}"


def _allow(*values: float, se: float = 0.0, k: float = 3.0) -> float:
    scale = max([1.0] + [abs(v) for v in values])
    return k * se + _EPS_GUARD * scale


def _agree(name: str, a: float, b: float, se: float) -> CheckResult:
    allowed = _allow(a, b, se=se)
    diff = abs(a - b)
    return CheckResult(name, diff <= allowed,
                       f"|{a:.6f} - {b:.6f}| = {diff:.3e} <= {allowed:.3e}")


# ---------------------------------------------------------------------------
# constants

def run_constants(seed: int = 0, samples: int | None = None) -> list[CheckResult]:
    checks: list[CheckResult] = []

    exact = {0: 2.0, 1: 2.0 * math.pi, 2: 4.0 * math.pi,
             3: 2.0 * math.pi ** 2, 4: 8.0 * math.pi ** 2 / 3.0}
    worst = max(abs(sphere_volume(n) - v) for n, v in exact.items())
    checks.append(CheckResult(
        "constants/sphere-volume-recurrence", worst <= 1e-12,
        f"max deviation from closed forms {worst:.3e} <= 1e-12"))

    worst = max(abs(constant_C(n) - constant_C(n - 1) * constant_D(n)) / constant_C(n)
                for n in range(3, 13))
    checks.append(CheckResult(
        "constants/telescoping-C-D", worst <= 1e-11,
        f"max relative defect of C(n) = C(n-1) D(n) over 3..12 is {worst:.3e} <= 1e-11"))

    worst = max(abs(l - r) for l, r in map(upper_constant_identity, range(3, 13)))
    checks.append(CheckResult(
        "constants/upper-bound-identity", worst <= 1e-12,
        f"max |sigma(n-2)/2 - 2((n-1)/n) C_n| over 3..12 is {worst:.3e} <= 1e-12"))

    worst = max(abs(l - r) for l, r in map(quadrature_identity_check, range(3, 13)))
    checks.append(CheckResult(
        "constants/latitude-quadrature-identity", worst <= 1e-9,
        f"max |2 int cos^(n-3) - sigma(n-2)/sigma(n-3)| over 3..12 is {worst:.3e} <= 1e-9"))

    ratios = [prop5_ratio(n) for n in range(3, 13)]
    decreasing = all(a > b for a, b in zip(ratios, ratios[1:]))
    tail = abs(prop5_ratio(100) - 9801.0 / 9800.0)
    checks.append(CheckResult(
        "constants/hyperplane-ratio-decay", decreasing and tail <= 1e-6,
        f"strictly decreasing over 3..12 = {decreasing}, "
        f"|ratio(100) - 9801/9800| = {tail:.3e} <= 1e-6"))

    spots = [abs(constant_C(2) - 1.0),
             abs(constant_C(3) - 3.0 * math.pi / 4.0),
             abs(constant_C(4) - 4.0 * math.pi / 3.0),
             abs(constant_D(3) - 3.0 * math.pi / 4.0),
             abs(constant_D(4) - 16.0 / 9.0)]
    worst = max(spots)
    checks.append(CheckResult(
        "constants/spot-values", worst <= 1e-12,
        f"max deviation of C_2, C_3, C_4, D_3, D_4 is {worst:.3e} <= 1e-12"))

    pairs = rng.uniforms(seed, rng.TAG_PROBE, 0, 1000, 2)
    mismatches = 0
    for a_star, l_half in pairs:
        area_star = 4.0 * a_star
        length_star = 2.0 * l_half
        rep = bounds_report(HomotopyClassData(n=3, area_star=area_star,
                                              length_star=length_star))
        algebra = rep.lower_thm1 >= rep.lower_thm2 - 1e-9 * rep.C_n
        if pu_predicate(area_star, length_star) != algebra:
            mismatches += 1
    checks.append(CheckResult(
        "constants/pu-predicate-equivalence", mismatches == 0,
        f"{mismatches} of 1000 random (A*, L*) pairs disagree with the bound ordering"))

    return checks


# ---------------------------------------------------------------------------
# estimators

def _slice_args(n: int, samples: int | None) -> tuple[int, int]:
    return split_slice_budget(samples if samples is not None else default_samples(n))


def run_estimators(seed: int = 0, samples: int | None = None) -> list[CheckResult]:
    checks: list[CheckResult] = []

    for n in range(2, 7):
        est = direct_energy(catalog("identity", n), "projective", samples, seed)
        closed = n * sphere_volume(n) / 4.0
        checks.append(_agree(f"estimators/identity-closed-form-n{n}",
                             est.value, closed, est.std_error))

    const = catalog("constant", 3)
    zeros = [direct_energy(const, "projective", samples, seed).value,
             croke_energy(const, "projective", samples, seed).value,
             slice_energy(const, 1, *_slice_args(3, samples), seed).value]
    worst = max(abs(v) for v in zeros)
    checks.append(CheckResult(
        "estimators/constant-map-exact-zero", worst == 0.0,
        f"max |value| over direct, tangent-average, slice is {worst:.3e} (exact zero required)"))

    for n in (2, 3, 4):
        maps = [catalog("identity", n), catalog("polar_warp", n)]
        if n >= 3:
            maps.append(catalog("inclusion", n, k=2))
        for F in maps:
            d = F.domain_dim
            ests = [direct_energy(F, "projective", samples, seed),
                    croke_energy(F, "projective", samples, seed)]
            for k in sorted({1, 2, d - 1} & set(range(1, d))):
                ests.append(slice_energy(F, k, *_slice_args(d, samples), seed))
            base = ests[0]
            for other in ests[1:]:
                se = math.hypot(base.std_error, other.std_error)
                checks.append(_agree(
                    f"estimators/agreement-{F.name}-{other.method}",
                    base.value, other.value, se))

    ident4 = catalog("identity", 4)
    target = sphere_volume(4)
    for k in (1, 2, 3):
        est = slice_energy(ident4, k, *_slice_args(4, samples), seed)
        checks.append(_agree(f"estimators/slice-total-measure-k{k}",
                             est.value, target, est.std_error))

    warp3 = catalog("polar_warp", 3)
    rotated = precompose_isometry(warp3, random_isometry(3, seed, 0))
    a = direct_energy(warp3, "projective", samples, seed)
    b = direct_energy(rotated, "projective", samples, seed + 1)
    checks.append(_agree("estimators/isometry-invariance",
                         a.value, b.value, math.hypot(a.std_error, b.std_error)))

    ident2 = catalog("identity", 2)
    area = area_2d(ident2, "projective", samples, seed)
    checks.append(_agree("estimators/projective-plane-area",
                         area.value, 2.0 * math.pi, area.std_error))

    defect_id = total_conformal_defect(ident2, "projective", samples, seed)
    checks.append(CheckResult(
        "estimators/identity-defect-vanishes", abs(defect_id.value) <= 1e-6,
        f"|defect| = {abs(defect_id.value):.3e} <= 1e-6"))

    warp2 = catalog("polar_warp", 2)
    defect_w = total_conformal_defect(warp2, "projective", samples, seed)
    ok = (defect_w.value > 3.0 * defect_w.std_error and defect_w.value >= -1e-8)
    checks.append(CheckResult(
        "estimators/warp-defect-positive", ok,
        f"defect = {defect_w.value:.6f} > 3 SE = {3.0 * defect_w.std_error:.3e} and >= -1e-8"))

    return checks


# ---------------------------------------------------------------------------
# deformations

def run_deformations(seed: int = 0, samples: int | None = None) -> list[CheckResult]:
    checks: list[CheckResult] = []
    t_grid = [1.0, 2.0, 5.0, 10.0, 100.0]

    probes = sample_uniform_sphere_batch(3, seed, 0, 1000)
    t1, t2 = 2.3, 1.7
    d_a = catalog("dilation", 3, t=t1)
    d_b = catalog("dilation", 3, t=t2)
    d_ab = catalog("dilation", 3, t=t1 * t2)
    worst = float(np.max(np.abs(d_a.eval_batch(d_b.eval_batch(probes))
                                - d_ab.eval_batch(probes))))
    checks.append(CheckResult(
        "deformations/dilation-group-law", worst <= 1e-9,
        f"max composition defect over 1000 probes is {worst:.3e} <= 1e-9"))

    curve2 = dilation_energy_curve(2, t_grid, samples, seed)
    worst = max(abs(e.value - 4.0 * math.pi) for e in curve2)
    allowed = max(_allow(e.value, 4.0 * math.pi, se=e.std_error) for e in curve2)
    checks.append(CheckResult(
        "deformations/surface-dilation-energy-constant", worst <= allowed,
        f"max |E - 4 pi| over t in {{1,2,5,10,100}} is {worst:.3e} <= {allowed:.3e}"))

    curve3 = dilation_energy_curve(3, t_grid, samples, seed)
    drops = [a.value - b.value - 3.0 * math.hypot(a.std_error, b.std_error)
             for a, b in zip(curve3, curve3[1:])]
    decay = curve3[-1].value < 0.05 * curve3[0].value
    checks.append(CheckResult(
        "deformations/dilation-energy-decay", min(drops) > 0.0 and decay,
        f"min pairwise drop beyond 3 SE is {min(drops):.4f} > 0, "
        f"E(t=100)/E(t=1) = {curve3[-1].value / curve3[0].value:.4f} < 0.05"))

    P = standard_projective_deformation(3, 3.0)
    rho = 1.0 / P.t
    feet = sample_equator_batch(3, seed, rng.TAG_PROBE, 0, 1000)
    pole = P.pole.coords
    worst = 0.0
    for v in feet:
        images = []
        for r in (rho - 1e-6, rho + 1e-6):
            psi = math.pi / 2.0 - 2.0 * math.atan(r)
            y = projective_deformation_apply(P, math.cos(psi) * v + math.sin(psi) * pole)
            images.append(y)
        c = abs(float(images[0] @ images[1]))
        worst = max(worst, math.acos(min(c, 1.0)))
    checks.append(CheckResult(
        "deformations/cap-boundary-continuity", worst <= 1e-4,
        f"max projective distance across the cap boundary is {worst:.3e} <= 1e-4"))

    ident3 = catalog("identity", 3)
    at_one = deformed_energy(ident3, 1.0, samples, seed)
    ref = direct_energy(ident3, "projective", samples, seed)
    se = math.hypot(at_one.total.std_error, ref.std_error)
    checks.append(_agree("deformations/deformed-energy-at-identity",
                         at_one.total.value, ref.value, se))
    checks.append(CheckResult(
        "deformations/no-retraction-at-identity", at_one.retract_value == 0.0,
        f"retraction contribution at t = 1 is {at_one.retract_value!r} (exact zero required)"))

    limit = 2.0 * math.pi ** 2
    at_fifty = deformed_energy(ident3, 50.0, samples, seed)
    rel = abs(at_fifty.total.value - limit) / limit
    checks.append(CheckResult(
        "deformations/deformation-limit-t50", rel < 0.05,
        f"relative gap to the limit 2 pi^2 at t = 50 is {rel:.4f} < 0.05"))

    lim = retraction_limit_energy(restrict_to_equator(ident3), 3, samples, seed)
    se = math.hypot(lim.closed_form_std_error, lim.numeric.std_error)
    checks.append(_agree("deformations/retraction-limit-cross-check",
                         lim.closed_form, lim.numeric.value, se))

    rows = graph_inflation_report(catalog("identity", 2), [0.1], samples, seed)
    closed = 4.0 * math.pi * 1.1
    checks.append(_agree("deformations/graph-inflation-energy",
                         rows[0].energy.value, closed, rows[0].energy.std_error))
    checks.append(_agree("deformations/graph-inflation-area",
                         rows[0].area.value, closed, rows[0].area.std_error))

    return checks


def run_suite(suite: str, seed: int = 0, samples: int | None = None) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"suite must be one of {SUITES}, got {suite!r}")
    checks: list[CheckResult] = []
    if suite in ("constants", "all"):
        checks.extend(run_constants(seed, samples))
    if suite in ("estimators", "all"):
        checks.extend(run_estimators(seed, samples))
    if suite in ("deformations", "all"):
        checks.extend(run_deformations(seed, samples))
    return checks


def report_lines(suite: str, checks: list[CheckResult], seed: int) -> list[str]:
    lines = [c.line() for c in checks]
    failures = sum(1 for c in checks if not c.ok)
    lines.append(f"suite={suite} checks={len(checks)} failures={failures} seed={seed}")
    return lines
