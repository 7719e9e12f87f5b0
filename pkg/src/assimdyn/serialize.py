"""Deterministic serialization helpers.

The stdlib JSON encoder emits shortest-roundtrip floats, which is
representation-dependent; outputs here pin floats to 17 significant
digits so identical inputs produce byte-identical documents.  Non-finite
floats become null, complex numbers become {"re": ..., "im": ...}.
"""

from __future__ import annotations

import dataclasses
import json
import math

import numpy as np

from .dynamics import BasinGrid, Trajectory, VectorFieldGrid
from .equilibria import SteadyState
from .model import State


def fmt_float(x: float) -> str:
    """Locale-independent decimal text with 17 significant digits."""
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return "null"
    s = format(x, ".17g")
    if "e" not in s and "E" not in s and "." not in s:
        s += ".0"
    return s


def _scalar(o):
    if isinstance(o, np.generic):
        o = o.item()
    return o


def dumps(obj, indent: int = 2) -> str:
    """Serialize to JSON with pinned float formatting and key order."""
    out: list[str] = []

    def emit(o, depth: int) -> None:
        o = _scalar(o)
        pad = " " * (indent * (depth + 1))
        end = " " * (indent * depth)
        if o is None:
            out.append("null")
        elif isinstance(o, bool):
            out.append("true" if o else "false")
        elif isinstance(o, int):
            out.append(str(o))
        elif isinstance(o, float):
            out.append(fmt_float(o))
        elif isinstance(o, str):
            out.append(json.dumps(o))
        elif isinstance(o, dict):
            if not o:
                out.append("{}")
                return
            out.append("{\n")
            for i, (k, v) in enumerate(o.items()):
                out.append(pad + json.dumps(str(k)) + ": ")
                emit(v, depth + 1)
                out.append(",\n" if i < len(o) - 1 else "\n")
            out.append(end + "}")
        elif isinstance(o, (list, tuple, np.ndarray)):
            seq = list(o)
            if not seq:
                out.append("[]")
                return
            out.append("[\n")
            for i, v in enumerate(seq):
                out.append(pad)
                emit(v, depth + 1)
                out.append(",\n" if i < len(seq) - 1 else "\n")
            out.append(end + "]")
        else:
            raise TypeError(f"cannot serialize {type(o).__name__}")

    emit(obj, 0)
    return "".join(out)


def to_jsonable(obj):
    """Convert package objects to plain dict/list structures."""
    obj = _scalar(obj)
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, State):
        return {"p": obj.p, "q": obj.q}
    if isinstance(obj, SteadyState):
        d = {"state": to_jsonable(obj.state) if isinstance(obj.state, State) else {"q": obj.state}}
        d.update(
            case_label=obj.case_label,
            in_domain=obj.in_domain,
            eigenvalues=[to_jsonable(e) for e in obj.eigenvalues],
            stability=obj.stability,
        )
        return d
    if isinstance(obj, Trajectory):
        cols = {"t": obj.t.tolist()}
        if obj.states.shape[1] == 2:
            cols["p"] = obj.states[:, 0].tolist()
            cols["q"] = obj.states[:, 1].tolist()
        else:
            cols["q"] = obj.states[:, 0].tolist()
        return {
            **cols,
            "terminal": to_jsonable(obj.terminal) if isinstance(obj.terminal, State) else obj.terminal,
            "steps": obj.steps,
            "converged": obj.converged,
            "converged_to": to_jsonable(obj.converged_to) if obj.converged_to else None,
            "max_clamp": obj.max_clamp,
        }
    if isinstance(obj, VectorFieldGrid):
        d = {"resolution": list(obj.resolution)}
        if obj.p is not None:
            d["p"] = obj.p.tolist()
        d["q"] = obj.q.tolist()
        if obj.dp is not None:
            d["dp"] = obj.dp.tolist()
        d["dq"] = obj.dq.tolist()
        return d
    if isinstance(obj, BasinGrid):
        return {
            "resolution": obj.resolution,
            "p_centers": obj.p_centers.tolist(),
            "q_centers": obj.q_centers.tolist(),
            "labels": [[str(v) for v in row] for row in obj.labels],
            "shares": dict(obj.shares),
            "equilibria": [to_jsonable(s) for s in obj.equilibria],
        }
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot convert {type(obj).__name__}")
