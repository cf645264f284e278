"""Select the numerical kernel implementation at import time.

The compiled Cython core (``coldprobe._kernels``) is preferred; the pure
Python twin (``coldprobe._pure``) is used when the extension is missing or
when the environment variable ``COLDPROBE_PURE`` is set to a non-empty
value.  Every kernel entry point exists in both modules with identical
signatures and semantics.
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("COLDPROBE_PURE"):
    impl = _pure
else:
    try:
        from . import _kernels as impl  # type: ignore[no-redef]
    except ImportError:
        impl = _pure

backend_name: str = impl.BACKEND_NAME

pure = _pure


def available_backends() -> tuple[str, ...]:
    names = ["pure"]
    try:
        from . import _kernels  # noqa: F401
        names.insert(0, "compiled")
    except ImportError:
        pass
    return tuple(names)
