"""Backend selection for the enumeration kernel.

The compiled kernel (Cython, 64-bit arithmetic) is used when it imported
successfully, unless the environment variable FLEAJUMP_PURE is set to a
truthy value.  The pure-Python kernel has identical semantics and
unbounded integers; it is also the safety net for bounds large enough
that 64-bit state components could overflow (component magnitudes grow
like bound squared, so the compiled path is capped well below the i64
range).
"""

from __future__ import annotations

import os

from . import _kernel_py

try:
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

_FORCE_PURE = os.environ.get("FLEAJUMP_PURE", "").lower() in ("1", "true", "yes")

# bound^2 <= 2^52 keeps every intermediate far inside i64
_COMPILED_MAX_BOUND = 1 << 26
_COMPILED_MAX_COORD = 1 << 40


def available_backends() -> tuple[str, ...]:
    return ("pure",) if _compiled is None else ("compiled", "pure")


def default_backend() -> str:
    if _compiled is None or _FORCE_PURE:
        return "pure"
    return "compiled"


def run_buckets(frontier, bound: int, max_pending: int = 0, backend: str | None = None):
    """Dispatch to the selected backend; see _kernel_py.run_buckets."""
    frontier = list(frontier)
    name = backend or default_backend()
    if name == "compiled":
        fits = bound <= _COMPILED_MAX_BOUND and all(
            abs(x) <= _COMPILED_MAX_COORD for st in frontier for x in st
        )
        if not fits:
            if backend == "compiled":
                raise ValueError("bound or state magnitude too large for the compiled kernel")
            name = "pure"
    if name == "compiled":
        if _compiled is None:
            raise ValueError("compiled kernel is not available")
        return _compiled.run_buckets(frontier, bound, max_pending)
    if name != "pure":
        raise ValueError("unknown backend %r" % (name,))
    return _kernel_py.run_buckets(frontier, bound, max_pending)


iter_reach_states = _kernel_py.iter_reach_states
