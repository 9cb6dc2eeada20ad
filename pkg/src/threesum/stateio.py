"""Versioned binary state blobs.

Layout: one ASCII line with magic and engine tag, one JSON metadata line
(sorted keys, no whitespace), then the raw bytes of each declared array in
order.  Writing the same state twice yields identical bytes, which the
deterministic engine's tests rely on.

The randomized unknown-C state is persisted as (A, B, modulus, seed) only
and its quadratic witness table is rebuilt on load; the deterministic state
additionally stores the moduli plan so loading skips the selection loop.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ParseError
from .known_c import KnownCState
from .unknown_c_det import ModuliPlan, RoundStats, UnknownCDetState
from .unknown_c_rand import UnknownCRandState
from .witness import RemainderLists, WitnessTable

MAGIC = "3sumq-state/1"

ALGO_KNOWN_C = "known-c"
ALGO_UNKNOWN_C_RAND = "unknown-c-rand"
ALGO_UNKNOWN_C_DET = "unknown-c-det"


def _write_blob(path, engine: str, meta: dict, arrays: list[tuple[str, np.ndarray]]) -> None:
    specs = [
        {"name": name, "dtype": np.dtype(arr.dtype).str, "shape": [int(s) for s in arr.shape]}
        for name, arr in arrays
    ]
    header = json.dumps({"meta": meta, "arrays": specs}, sort_keys=True, separators=(",", ":"))
    with open(path, "wb") as fh:
        fh.write(f"{MAGIC} {engine}\n".encode("ascii"))
        fh.write(header.encode("ascii") + b"\n")
        for _, arr in arrays:
            fh.write(np.ascontiguousarray(arr).tobytes())


def _read_blob(path) -> tuple[str, dict, dict[str, np.ndarray]]:
    with open(path, "rb") as fh:
        first = fh.readline().decode("ascii", errors="replace").rstrip("\n")
        parts = first.split(" ", 1)
        if len(parts) != 2 or parts[0] != MAGIC:
            raise ParseError(path, 1, f"not a {MAGIC} blob")
        engine = parts[1]
        try:
            header = json.loads(fh.readline().decode("ascii"))
        except (ValueError, UnicodeDecodeError):
            raise ParseError(path, 2, "corrupt metadata header") from None
        arrays = {}
        for spec in header["arrays"]:
            dtype = np.dtype(spec["dtype"])
            count = int(np.prod(spec["shape"], dtype=np.int64)) if spec["shape"] else 1
            raw = fh.read(count * dtype.itemsize)
            if len(raw) != count * dtype.itemsize:
                raise ParseError(path, 2, f"truncated array {spec['name']!r}")
            arr = np.frombuffer(raw, dtype=dtype).reshape(spec["shape"]).copy()
            arr.setflags(write=False)
            arrays[spec["name"]] = arr
    return engine, header["meta"], arrays


def save_state(path, state) -> str:
    """Serialize an engine state; returns the engine tag written."""
    if isinstance(state, KnownCState):
        meta = {
            "universe": state.universe,
            "size": state.size,
            "modulus": state.modulus,
            "fp_cap": state.fp_cap,
            "restarts": state.restarts,
            "forced": state.forced,
            "rng_seed": state.rng_seed,
        }
        arrays = [
            ("a", state.a),
            ("b", state.b),
            ("c", state.c),
            ("fa", state.fa),
            ("fb", state.fb),
            ("fc", state.fc),
        ]
        _write_blob(path, ALGO_KNOWN_C, meta, arrays)
        return ALGO_KNOWN_C
    if isinstance(state, UnknownCRandState):
        meta = {
            "universe": state.universe,
            "size": state.size,
            "modulus": state.modulus,
            "rng_seed": state.rng_seed,
            "forced": state.forced,
        }
        _write_blob(path, ALGO_UNKNOWN_C_RAND, meta, [("a", state.a), ("b", state.b)])
        return ALGO_UNKNOWN_C_RAND
    if isinstance(state, UnknownCDetState):
        plan = state.plan
        meta = {
            "universe": state.universe,
            "size": state.size,
            "threshold": state.threshold,
            "moduli": list(plan.moduli),
            "rounds": [
                {"modulus": r.modulus, "x_size": r.x_size, "fp_sum": r.fp_sum, "removed": r.removed}
                for r in plan.rounds
            ],
        }
        arrays = [
            ("a", state.a),
            ("b", state.b),
            ("heavy_keys", state.table.keys[plan.heavy_positions]),
            ("heavy_mod_idx", plan.heavy_mod_idx),
            ("heavy_fp", plan.heavy_fp),
        ]
        _write_blob(path, ALGO_UNKNOWN_C_DET, meta, arrays)
        return ALGO_UNKNOWN_C_DET
    raise TypeError(f"unknown state type {type(state)!r}")


def load_state(path):
    """Deserialize a state blob, rebuilding any structures stored by reference."""
    engine, meta, arrays = _read_blob(path)
    if engine == ALGO_KNOWN_C:
        return KnownCState(
            a=arrays["a"],
            b=arrays["b"],
            c=arrays["c"],
            universe=int(meta["universe"]),
            size=int(meta["size"]),
            modulus=int(meta["modulus"]),
            fp_cap=int(meta["fp_cap"]),
            fa=arrays["fa"],
            fb=arrays["fb"],
            fc=arrays["fc"],
            restarts=int(meta["restarts"]),
            forced=bool(meta["forced"]),
            rng_seed=meta["rng_seed"],
        )
    if engine == ALGO_UNKNOWN_C_RAND:
        a, b = arrays["a"], arrays["b"]
        table = WitnessTable.build(a, b)
        m = int(meta["modulus"])
        return UnknownCRandState(
            a=a,
            b=b,
            universe=int(meta["universe"]),
            size=int(meta["size"]),
            modulus=m,
            table=table,
            rem=RemainderLists.build(table.keys, m),
            rng_seed=meta["rng_seed"],
            forced=bool(meta["forced"]),
        )
    if engine == ALGO_UNKNOWN_C_DET:
        a, b = arrays["a"], arrays["b"]
        table = WitnessTable.build(a, b)
        heavy_positions = table.find_many(arrays["heavy_keys"])
        if np.any(heavy_positions < 0):
            raise ParseError(path, 2, "stored heavy elements are not sumset members")
        plan = ModuliPlan(
            moduli=[int(m) for m in meta["moduli"]],
            heavy_positions=heavy_positions,
            heavy_mod_idx=arrays["heavy_mod_idx"],
            heavy_fp=arrays["heavy_fp"],
            rounds=[
                RoundStats(
                    modulus=int(r["modulus"]),
                    x_size=int(r["x_size"]),
                    fp_sum=int(r["fp_sum"]),
                    removed=int(r["removed"]),
                )
                for r in meta["rounds"]
            ],
            remainder_lists=[RemainderLists.build(table.keys, int(m)) for m in meta["moduli"]],
        )
        plan.heavy_positions.setflags(write=False)
        return UnknownCDetState(
            a=a,
            b=b,
            universe=int(meta["universe"]),
            size=int(meta["size"]),
            threshold=int(meta["threshold"]),
            table=table,
            plan=plan,
        )
    raise ParseError(path, 1, f"unknown engine tag {engine!r}")
