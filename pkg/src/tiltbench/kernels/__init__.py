"""Gibbs sweep kernels with a compiled fast path.

The compiled extension and the pure-numpy kernels implement the same
sweeps and draw their variates through the same numpy C routines in the
same order, so each backend is fully deterministic under a fixed seed.
Floating-point accumulation orders differ between the two (BLAS/pairwise
sums vs. plain C loops), so cross-backend agreement is statistical, not
bit-level.

Set ``TILTBENCH_PURE_PYTHON=1`` to force the fallback even when the
extension is importable.
"""

import os

from . import pure

try:
    from . import _compiled
except ImportError:  # extension not built
    _compiled = None

HAVE_COMPILED = _compiled is not None

if HAVE_COMPILED and os.environ.get("TILTBENCH_PURE_PYTHON", "") in ("", "0"):
    _active = _compiled
    BACKEND = "compiled"
else:
    _active = pure
    BACKEND = "pure"

fh_chain = _active.fh_chain
pg_chain = _active.pg_chain

EFFECT_FAMILY_CODES = {"normal": 0, "laplace": 1, "horseshoe": 2}


def get_backend(name: str):
    """Return a kernel module by name ('pure' or 'compiled')."""
    if name == "pure":
        return pure
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available in this install")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")
