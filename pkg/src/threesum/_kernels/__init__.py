"""Kernel selection: compiled extension when importable, numpy fallback otherwise.

``THREESUM_PURE=1`` in the environment forces the fallback.  Benchmarks and
equivalence tests switch at runtime via :func:`set_implementation`.
"""

from __future__ import annotations

import os

from ..errors import DomainError
from . import pure as _pure

_IMPLS = {"pure": _pure}
try:  # the extension is optional by design
    from . import _native as _native_mod

    _IMPLS["native"] = _native_mod
except ImportError:
    _native_mod = None

if os.environ.get("THREESUM_PURE", "").lower() in ("1", "true", "yes") or _native_mod is None:
    _active = _pure
else:
    _active = _native_mod


def implementation_name() -> str:
    return "native" if _active is _native_mod else "pure"


def available_implementations() -> list[str]:
    return sorted(_IMPLS)


def set_implementation(name: str) -> str:
    """Switch the active kernels; returns the previous implementation name."""
    global _active
    if name not in _IMPLS:
        raise DomainError(f"unknown kernel implementation {name!r}; have {available_implementations()}")
    previous = implementation_name()
    _active = _IMPLS[name]
    return previous


def get_implementation(name: str):
    if name not in _IMPLS:
        raise DomainError(f"unknown kernel implementation {name!r}; have {available_implementations()}")
    return _IMPLS[name]


def group_pairs_by_sum(a, b):
    return _active.group_pairs_by_sum(a, b)


def congruent_triples(a, b, c, m, limit=-1):
    return _active.congruent_triples(a, b, c, int(m), int(limit))


def count_present_pairs(aidx, bidx, amask, bmask, starts, ends, seg, nseg):
    return _active.count_present_pairs(aidx, bidx, amask, bmask, starts, ends, seg, int(nseg))
