"""Sharp energy-bound constants and the inequality reports.

C_n = n sigma(n) / (8 pi) and D_n = n sigma(n) / ((n-1) sigma(n-1)) control
the two-sided area estimate, the squared-length lower bound, and the
hyperplane-class estimate; `bounds_report` evaluates every bound whose
inputs are present and records the consistency predicates relating them.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

from .spherical_geometry import sphere_volume


def constant_C(n: int) -> float:
    """n sigma(n) / (8 pi); equals 1 at n = 2."""
    if n < 2:
        raise ValueError(f"constant_C needs n >= 2, got {n}")
    return n * sphere_volume(n) / (8.0 * math.pi)


def constant_D(n: int) -> float:
    """n sigma(n) / ((n-1) sigma(n-1)); the telescoping factor C(n)/C(n-1)."""
    if n < 3:
        raise ValueError(f"constant_D needs n >= 3, got {n}")
    return n * sphere_volume(n) / ((n - 1) * sphere_volume(n - 1))


def upper_constant_identity(n: int) -> tuple[float, float]:
    """(sigma(n-2)/2, 2((n-1)/n) C_n): two forms of the upper-bound constant."""
    if n < 3:
        raise ValueError(f"upper_constant_identity needs n >= 3, got {n}")
    lhs = 0.5 * sphere_volume(n - 2)
    rhs = 2.0 * (n - 1) / n * constant_C(n)
    return lhs, rhs


def prop5_ratio(n: int) -> float:
    """(n-1)^2 / (n(n-2)): upper/lower ratio of the hyperplane-class estimate.

    Strictly decreasing in n with limit 1.
    """
    if n < 3:
        raise ValueError(f"prop5_ratio needs n >= 3, got {n}")
    return (n - 1) ** 2 / (n * (n - 2))


PROP5_OMITTED_REASON = "hyperplane-class bound needs n >= 3"


@dataclass(frozen=True)
class HomotopyClassData:
    """Geometric invariants of a homotopy class, supplied by the caller.

    area_star: infimal area of the induced projective-plane class;
    length_star: infimal length of curves freely homotopic to the image of
    a generator loop; beta: infimal energy of the induced hyperplane class.
    These are analytic infima and are never computed here, only consumed.
    For the identity class, area_star = 2 pi and length_star = pi.
    """

    n: int
    area_star: float | None = None
    length_star: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"bounds need n >= 2, got {self.n}")
        for label, v in (("area_star", self.area_star),
                         ("length_star", self.length_star),
                         ("beta", self.beta)):
            if v is not None and v < 0.0:
                raise ValueError(f"{label} must be nonnegative, got {v}")


@dataclass(frozen=True)
class BoundsReport:
    """Every bound evaluable from the provided invariants.

    lower_thm1 = C_n A*, upper_thm1 = 2((n-1)/n) C_n A*;
    lower_thm2 = n sigma(n) / (4 pi^2) L*^2;
    lower_prop5 = D_n beta, upper_prop5 = (n-1)^2/(n(n-2)) D_n beta (n >= 3);
    pu_consistent: A* >= (2/pi) L*^2 - 1e-9 when both are given, exactly the
    condition lower_thm1 >= lower_thm2.
    """

    n: int
    sigma_n: float
    C_n: float
    D_n: float | None
    lower_thm1: float | None
    upper_thm1: float | None
    lower_thm2: float | None
    lower_prop5: float | None
    upper_prop5: float | None
    pu_consistent: bool | None
    ratios: dict
    prop5_reason: str | None = None

    def to_dict(self) -> dict:
        """Serialization order matches the field declarations; absent values
        are omitted rather than written as null."""
        out: dict = {"n": self.n, "sigma_n": self.sigma_n, "C_n": self.C_n}
        if self.D_n is not None:
            out["D_n"] = self.D_n
        for key in ("lower_thm1", "upper_thm1", "lower_thm2",
                    "lower_prop5", "upper_prop5"):
            v = getattr(self, key)
            if v is not None:
                out[key] = v
        if self.pu_consistent is not None:
            out["pu_consistent"] = self.pu_consistent
        out["ratios"] = dict(self.ratios)
        if self.prop5_reason is not None:
            out["prop5_reason"] = self.prop5_reason
        return out


def pu_predicate(area_star: float, length_star: float) -> bool:
    """A* >= (2/pi) L*^2 within 1e-9 slack."""
    return area_star >= (2.0 / math.pi) * length_star ** 2 - 1e-9


def bounds_report(data: HomotopyClassData) -> BoundsReport:
    """Evaluate all bounds whose inputs are present.

    At least one of area_star, length_star, beta must be provided.  For
    n = 2 with beta given, the hyperplane-class fields are omitted and
    prop5_reason explains why.
    """
    n = data.n
    if data.area_star is None and data.length_star is None and data.beta is None:
        raise ValueError("at least one of area_star, length_star, beta is required")
    sigma_n = sphere_volume(n)
    c_n = constant_C(n)
    d_n = constant_D(n) if n >= 3 else None

    lower_thm1 = upper_thm1 = None
    if data.area_star is not None:
        lower_thm1 = c_n * data.area_star
        upper_thm1 = 2.0 * (n - 1) / n * c_n * data.area_star

    lower_thm2 = None
    if data.length_star is not None:
        lower_thm2 = n * sigma_n / (4.0 * math.pi ** 2) * data.length_star ** 2

    lower_prop5 = upper_prop5 = None
    prop5_reason = None
    if data.beta is not None:
        if n >= 3:
            lower_prop5 = d_n * data.beta
            upper_prop5 = prop5_ratio(n) * d_n * data.beta
        else:
            prop5_reason = PROP5_OMITTED_REASON

    pu_consistent = None
    if data.area_star is not None and data.length_star is not None:
        pu_consistent = pu_predicate(data.area_star, data.length_star)

    ratios = {"thm1": 2.0 * (n - 1) / n}
    if n >= 3:
        ratios["prop5"] = prop5_ratio(n)

    return BoundsReport(
        n=n, sigma_n=sigma_n, C_n=c_n, D_n=d_n,
        lower_thm1=lower_thm1, upper_thm1=upper_thm1, lower_thm2=lower_thm2,
        lower_prop5=lower_prop5, upper_prop5=upper_prop5,
        pu_consistent=pu_consistent, ratios=ratios, prop5_reason=prop5_reason,
    )
