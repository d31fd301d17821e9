"""aerial_kpi.models.forest"""
from aerial_kpi.models.forest.forest import MODEL_FAMILY

__all__ = ("MODEL_FAMILY",)
