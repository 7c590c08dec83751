"""Backend selection for the integer polynomial kernels.

The compiled extension is used when it imports; setting the environment
variable ``REALRANK_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

if os.environ.get("REALRANK_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

strip = _impl.strip
content = _impl.content
primitive = _impl.primitive
derivative = _impl.derivative
mul = _impl.mul
prem_pos = _impl.prem_pos
sturm_chain = _impl.sturm_chain
eval_hom = _impl.eval_hom
sign_variations = _impl.sign_variations
sign_variations_inf = _impl.sign_variations_inf
exact_div = _impl.exact_div
poly_gcd = _impl.poly_gcd
squarefree_part = _impl.squarefree_part
count_real_roots = _impl.count_real_roots
bareiss_det = _impl.bareiss_det

__all__ = [
    "BACKEND", "strip", "content", "primitive", "derivative", "mul",
    "prem_pos", "sturm_chain", "eval_hom", "sign_variations",
    "sign_variations_inf", "exact_div", "poly_gcd", "squarefree_part",
    "count_real_roots", "bareiss_det",
]
