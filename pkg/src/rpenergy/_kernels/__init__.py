"""Kernel backend selection.

The native Cython extension is used when present; otherwise the pure numpy
backend.  `use_backend` switches explicitly (the benchmark and the parity
tests need both); there is no environment-variable override.
"""

from __future__ import annotations

from . import pure

try:
    from . import _native
except ImportError:
    _native = None

_active = _native if _native is not None else pure

_EXPORTED = (
    "row_norms",
    "normalize_rows",
    "frobsq",
    "sv2_from_gram",
    "householder_frames",
    "dilation_factor",
    "dilation_apply",
    "dilation_push",
    "fermi_split",
)


def backend_name() -> str:
    return _active.NAME


def available_backends() -> tuple[str, ...]:
    return ("pure", "native") if _native is not None else ("pure",)


def get_backend(name: str):
    if name == "pure":
        return pure
    if name == "native":
        if _native is None:
            raise ValueError("native backend not built")
        return _native
    raise ValueError(f"unknown backend {name!r}")


def use_backend(name: str) -> None:
    global _active
    _active = get_backend(name)


def __getattr__(attr: str):
    if attr in _EXPORTED:
        return getattr(_active, attr)
    raise AttributeError(f"module {__name__!r} has no attribute {attr!r}")
