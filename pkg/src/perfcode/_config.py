"""Runtime knobs read from the environment.

``PERFCODE_CAP``      largest vector count any exhaustive scan or enumeration
                      may touch (default ``2**26``).
``PERFCODE_BACKEND``  ``numba`` (default when importable) or ``numpy``.
"""

from __future__ import annotations

import os

DEFAULT_CAP = 2**26


class CapExceeded(RuntimeError):
    """A requested enumeration would touch more vectors than the cap allows."""

    def __init__(self, what: str, required: int, cap: int):
        super().__init__(
            f"{what} needs {required} vectors but the enumeration cap is {cap}; "
            "raise it with PERFCODE_CAP / --cap or use sampled mode"
        )
        self.required = required
        self.cap = cap


def enumeration_cap(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    raw = os.environ.get("PERFCODE_CAP")
    if raw:
        return int(raw)
    return DEFAULT_CAP


def check_cap(what: str, required: int, cap: int | None = None) -> None:
    limit = enumeration_cap(cap)
    if required > limit:
        raise CapExceeded(what, required, limit)
