"""Khovanov homology of tangles, arc algebras and cobordism maps."""

from .homology import HomologyTable, homology
from .khovanov import KhComplex
from .tangles import Tangle

__all__ = ["HomologyTable", "KhComplex", "Tangle", "homology"]
__version__ = "0.1.0"
