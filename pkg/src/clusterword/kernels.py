"""Kernel selection: compiled extension if it imports, numpy fallback otherwise.

Set CLUSTERWORD_PURE_PYTHON=1 to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if not os.environ.get("CLUSTERWORD_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

leq_right = _impl.leq_right
leq_left = _impl.leq_left
leq_two_sided = _impl.leq_two_sided
associativity_witness = _impl.associativity_witness
ambiguity_witness = _impl.ambiguity_witness
equidivisibility_witness = _impl.equidivisibility_witness
factorization_edges = _impl.factorization_edges
