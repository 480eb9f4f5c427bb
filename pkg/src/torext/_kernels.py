"""Backend selection for the elimination kernel.

Prefers the compiled module when it imported cleanly; set TOREXT_PURE=1
to force the pure-Python twin.  Both backends implement the identical
algorithm, so results never depend on which one is active.
"""

import os

if os.environ.get("TOREXT_PURE"):
    from . import _snfpure as _impl
else:
    try:
        from . import _snfcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _snfpure as _impl

BACKEND = _impl.BACKEND
xgcd = _impl.xgcd
snf_diagonalize = _impl.snf_diagonalize
