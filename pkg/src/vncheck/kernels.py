"""Backend selection for the enumeration kernels.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``VNCHECK_PURE`` is set to a non-empty value, the
pure-Python module is used.  Both expose ``associative_tables`` and
``is_associative`` with identical results.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

if _compiled is not None and not os.environ.get("VNCHECK_PURE"):
    backend = "compiled"
else:
    backend = "python"

_impl = BACKENDS[backend]
associative_tables = _impl.associative_tables
is_associative = _impl.is_associative


def get_backend(name: str):
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
