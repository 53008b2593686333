"""Kernel selection: compiled extension when available, pure Python otherwise.

``partition_table(n, M)`` is the single hot entry point.  The compiled
kernel only handles moduli below 2^31; larger prime powers (which never
occur in practice) fall through to the reference implementation.
"""

from . import _refkernels

try:
    from . import _fastkernels

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - build-environment dependent
    _fastkernels = None
    HAVE_COMPILED = False


def partition_table(n_terms, modulus):
    """Array of p(n) mod modulus for 0 <= n < n_terms."""
    if HAVE_COMPILED and modulus < 1 << 31:
        return _fastkernels.partition_table(n_terms, modulus)
    return _refkernels.partition_table(n_terms, modulus)


partition_table_reference = _refkernels.partition_table
