"""Kernel backend selection: compiled extension when built, else pure Python.

Set ``ASSIMDYN_BACKEND=python`` (or ``c``) to force a backend; forcing
``c`` fails loudly when the extension is not built.
"""

from __future__ import annotations

import importlib
import os

_FORCED = os.environ.get("ASSIMDYN_BACKEND", "").strip().lower()

if _FORCED in ("py", "python"):
    from . import _integrate_py as kernels

    BACKEND = "python"
elif _FORCED in ("", "c", "compiled"):
    try:
        from . import _integrate_c as kernels  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        if _FORCED:
            raise
        from . import _integrate_py as kernels  # type: ignore[no-redef]

        BACKEND = "python"
else:
    raise ImportError(f"unknown ASSIMDYN_BACKEND value: {_FORCED!r}")


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by backend name (for benchmarks/tests)."""
    out = {"python": importlib.import_module("assimdyn._integrate_py")}
    try:
        out["c"] = importlib.import_module("assimdyn._integrate_c")
    except ImportError:
        pass
    return out
