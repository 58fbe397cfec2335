"""Select the compiled kernels when built, else the pure-Python ones.

Set ``PRIMESINE_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("PRIMESINE_PURE_PYTHON"):
    from primesine._pykernels import BACKEND, mod_factorial, prime_terms, quad_solutions
else:
    try:
        from primesine._kernels import BACKEND, mod_factorial, prime_terms, quad_solutions
    except ImportError:
        from primesine._pykernels import BACKEND, mod_factorial, prime_terms, quad_solutions

__all__ = ["BACKEND", "mod_factorial", "prime_terms", "quad_solutions"]
