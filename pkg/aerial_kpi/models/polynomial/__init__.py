"""aerial_kpi.models.polynomial"""
from aerial_kpi.models.polynomial.polynomial import MODEL_FAMILY

__all__ = ("MODEL_FAMILY",)
