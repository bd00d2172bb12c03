"""Linear codes over the mixed alphabet Z_{p^e} + Z_{p^(e-1)} and Eisenstein-additive codes."""

from .kernel import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
