"""Uniform access to the three engines for the CLI, verifier, and benchmarks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import DomainError
from .generators import Instance
from .known_c import preprocess_known_c, query_known_c
from .unknown_c_det import preprocess_unknown_c_det, query_unknown_c_det
from .unknown_c_rand import preprocess_unknown_c_rand, query_unknown_c_rand

ALGOS = ("known-c", "unknown-c-rand", "unknown-c-det")


@dataclass(frozen=True)
class Engine:
    name: str
    needs_c: bool  # requires a preprocessed target universe
    unknown_c: bool  # queries accept arbitrary targets
    deterministic: bool
    query: Callable

    def preprocess(self, inst: Instance, seed: int | None, **kwargs):
        if self.name == "known-c":
            if inst.c is None:
                raise DomainError("known-c preprocessing requires a C set")
            return preprocess_known_c(inst.a, inst.b, inst.c, seed, universe=inst.universe, **kwargs)
        if self.name == "unknown-c-rand":
            return preprocess_unknown_c_rand(inst.a, inst.b, seed, universe=inst.universe, **kwargs)
        kwargs.pop("force_modulus", None)
        return preprocess_unknown_c_det(inst.a, inst.b, universe=inst.universe, **kwargs)


_ENGINES = {
    "known-c": Engine("known-c", needs_c=True, unknown_c=False, deterministic=False, query=query_known_c),
    "unknown-c-rand": Engine(
        "unknown-c-rand", needs_c=False, unknown_c=True, deterministic=False, query=query_unknown_c_rand
    ),
    "unknown-c-det": Engine(
        "unknown-c-det", needs_c=False, unknown_c=True, deterministic=True, query=query_unknown_c_det
    ),
}


def engine(name: str) -> Engine:
    if name not in _ENGINES:
        raise DomainError(f"unknown algorithm {name!r}; have {ALGOS}")
    return _ENGINES[name]
