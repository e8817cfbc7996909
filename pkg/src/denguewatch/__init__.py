"""denguewatch: real-time notifiable-disease surveillance service."""

from .errors import SurveillanceError
from .service import SurveillanceService

__version__ = "0.1.0"

__all__ = ["SurveillanceService", "SurveillanceError", "__version__"]
