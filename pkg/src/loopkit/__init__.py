"""Finite loop theory toolkit.

Loops as multiplication tables, permutation-group machinery, the
loop/folder correspondence, PGL2(q) counting lemmas, and desk-scale
verification of the direct-product, Sylow, Lagrange and Hall theorems
for Bruck loops.
"""

__version__ = "0.1.0"

from .loopcore import Loop  # noqa: F401
from .permgrp import PermGroup  # noqa: F401
from .folder import LoopFolder, baer_envelope, loop_from_folder  # noqa: F401
