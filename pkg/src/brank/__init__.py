"""brank: exact tensor rank / border rank toolkit."""

from .tensor import MatSpace, Tensor3, is_one_generic

__version__ = "0.1.0"

__all__ = ["Tensor3", "MatSpace", "is_one_generic", "__version__"]
