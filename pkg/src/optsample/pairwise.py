"""Backend selection for the pairwise-kernel hot path.

The compiled extension is preferred when it imported successfully;
set ``OPTSAMPLE_BACKEND=python`` or ``OPTSAMPLE_BACKEND=compiled`` to
force a choice (forcing ``compiled`` without the extension is an error).
"""

import os

from . import _pairwise_np

try:
    from . import _pairwise_cy
except ImportError:
    _pairwise_cy = None

_CHOICE = os.environ.get("OPTSAMPLE_BACKEND", "auto").lower()

if _CHOICE == "python":
    _impl = _pairwise_np
elif _CHOICE == "compiled":
    if _pairwise_cy is None:
        raise ImportError(
            "OPTSAMPLE_BACKEND=compiled but the optsample._pairwise_cy "
            "extension is not built; run `python setup.py build_ext --inplace`"
        )
    _impl = _pairwise_cy
elif _CHOICE == "auto":
    _impl = _pairwise_cy if _pairwise_cy is not None else _pairwise_np
else:
    raise ValueError(f"unknown OPTSAMPLE_BACKEND {_CHOICE!r}")

sqdist = _impl.sqdist
sinc_gram = _impl.sinc_gram


def backend_name() -> str:
    """Name of the active backend, 'compiled' or 'python'."""
    return "compiled" if _impl is _pairwise_cy else "python"
