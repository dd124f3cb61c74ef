"""Web-corpus cleaning with an open-set n-gram language identifier."""
from .labels import LabelId

__version__ = "0.1.0"

__all__ = ["LabelId", "__version__"]
