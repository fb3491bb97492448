"""specinv: min-max critical values and Legendrian spectra on grid manifolds."""

from ._kernel import KERNEL

__version__ = "0.1.0"
__all__ = ["KERNEL", "__version__"]
