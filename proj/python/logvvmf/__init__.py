"""Logarithmic vector-valued modular forms toolkit.

Python surface over the C++ core: Eichler words in SL2(Z), representation
evaluation, truncated matrix-valued Poincare series with modularity checks
and q-expansion extraction, and minimal MLDE discovery.
"""

from ._logvvmf import *  # noqa: F401,F403
from ._logvvmf import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
