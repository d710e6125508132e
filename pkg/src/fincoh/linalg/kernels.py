"""Kernel selection: the compiled Cython core when built, pure Python otherwise."""
from . import _kernels_py

try:
    from . import _kernels as _impl  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

smith_dense = _impl.smith_dense
row_hermite = _impl.row_hermite
reduce_chain_complex = _impl.reduce_chain_complex
project_vector = _impl.project_vector
include_vector = _impl.include_vector
