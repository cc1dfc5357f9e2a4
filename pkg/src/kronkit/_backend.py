"""Kernel backend selection.

The compiled Cython module is used when it imports; otherwise the numpy
fallback. :func:`use` switches at runtime (tests and benchmarks).
"""
import contextlib

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _fallback}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

DEFAULT = "compiled" if _compiled is not None else "python"
_current = _BACKENDS[DEFAULT]


def available():
    return sorted(_BACKENDS)


def get():
    """The active kernel module."""
    return _current


def name():
    return _current.NAME


def set_backend(which):
    global _current
    try:
        _current = _BACKENDS[which]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {which!r}; have {available()}") from None


@contextlib.contextmanager
def use(which):
    """Temporarily switch the kernel backend."""
    previous = _current.NAME
    set_backend(which)
    try:
        yield get()
    finally:
        set_backend(previous)
