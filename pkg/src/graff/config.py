"""Global numerical tolerances.

Rank and orthogonality checks use a single default tolerance, interpreted
relative to the largest singular value of the matrix under test.  The value
may be changed process-wide; all modules read it at call time.
"""

_default_tol = 1e-10


def get_default_tol() -> float:
    """Return the current default rank/orthogonality tolerance."""
    return _default_tol


def set_default_tol(tol: float) -> None:
    """Set the process-wide default tolerance. Must be a positive finite float."""
    global _default_tol
    tol = float(tol)
    if not tol > 0.0 or tol != tol or tol == float("inf"):
        raise ValueError(f"tolerance must be positive and finite, got {tol!r}")
    _default_tol = tol
