"""Numeric kernels with a compiled fast path.

Three hot loops live here: the cyclic Jacobi eigensolver, the canonical
labeling search, and the labeled-graph bitmask filter used by exhaustive
enumeration.  A Cython build (gmlap._kernels._fastcore) is preferred when
importable; otherwise the pure-Python implementation is used.  Both
backends implement identical algorithms with identical operation order,
so results do not depend on which one is active.

Selection can be forced with GMLAP_BACKEND=pure or GMLAP_BACKEND=ext.
"""

import os

_choice = os.environ.get("GMLAP_BACKEND", "auto")
if _choice not in ("auto", "ext", "pure"):
    raise RuntimeError(f"GMLAP_BACKEND must be auto, ext, or pure; got {_choice!r}")

if _choice == "pure":
    from gmlap._kernels import _pure as _impl

    BACKEND = "pure"
else:
    try:
        from gmlap._kernels import _fastcore as _impl

        BACKEND = "ext"
    except ImportError:
        if _choice == "ext":
            raise
        from gmlap._kernels import _pure as _impl

        BACKEND = "pure"

jacobi_eigh = _impl.jacobi_eigh
canon_bits = _impl.canon_bits
canon_bits_batch = _impl.canon_bits_batch
degree_sorted_masks = _impl.degree_sorted_masks
