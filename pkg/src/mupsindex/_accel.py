"""Optional numba acceleration.

Kernels decorated with @njit run compiled when numba is importable and
as plain Python otherwise; both paths execute the same source.
"""

try:
    from numba import njit as _numba_njit

    HAVE_NUMBA = True

    def njit(fn):
        return _numba_njit(cache=True)(fn)

except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(fn):
        return fn
