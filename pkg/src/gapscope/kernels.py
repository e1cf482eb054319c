"""Kernel backend selection.

Imports the compiled extension when it is available, otherwise the
pure-Python twin. Set GAPSCOPE_PURE_PYTHON=1 to force the fallback (the
parity tests and the backend benchmark rely on this). `BACKEND` names
the implementation actually in use.
"""

import os

if os.environ.get("GAPSCOPE_PURE_PYTHON", "0") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND_NAME

sieve_first = _impl.sieve_first
neumaier_sum = _impl.neumaier_sum
ratio_series = _impl.ratio_series
frac_root_sum = _impl.frac_root_sum
star_discrepancy_sorted = _impl.star_discrepancy_sorted
weyl_modulus = _impl.weyl_modulus
riemann_sum = _impl.riemann_sum
inv_index_sum = _impl.inv_index_sum
recip_sum = _impl.recip_sum
power_index_sum = _impl.power_index_sum
power_sum = _impl.power_sum
gap_scan = _impl.gap_scan
cramer_max = _impl.cramer_max

FN_ONE = _impl.FN_ONE
FN_IDENTITY = _impl.FN_IDENTITY
FN_SQUARE = _impl.FN_SQUARE
FN_ROOT = _impl.FN_ROOT
FN_COS = _impl.FN_COS

FORM_CRAMER_GRANVILLE = _impl.FORM_CRAMER_GRANVILLE
FORM_EQ10 = _impl.FORM_EQ10
FORM_EQ27 = _impl.FORM_EQ27
FORM_EQ20 = _impl.FORM_EQ20
FORM_EQ28 = _impl.FORM_EQ28
