"""Sun/shade place classification from GNSS signal strength.

Pipeline: NMEA 0183 logs -> satellite observations -> per-minute features
(+ solar geometry) -> UV-threshold labels -> a 12-method classification
benchmark with leave-one-day-out cross-validation, permutation feature
importance, and feature-set ablation. A built-in scene simulator provides
synthetic logs so the whole pipeline can be validated end to end.
"""

__version__ = "0.1.0"

from sunshade._core import backend_name

__all__ = ["__version__", "backend_name"]
