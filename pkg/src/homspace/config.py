"""Global structural tolerance.

The kernel compares against a single structural epsilon unless a caller
passes an explicit ``tol``. The default can be overridden globally (the
service honors the HOMSPACE_TOL environment variable at startup).
"""

DEFAULT_TOL = 1e-9

_tol = DEFAULT_TOL


def get_tol(tol=None):
    """Return the effective tolerance: ``tol`` if given, else the global one."""
    return _tol if tol is None else tol


def set_tol(tol):
    """Set the global structural tolerance. Returns the previous value."""
    global _tol
    previous = _tol
    _tol = float(tol)
    return previous
