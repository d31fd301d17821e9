"""aerial_kpi.models.gbt"""
from aerial_kpi.models.gbt.gbt import MODEL_FAMILY

__all__ = ("MODEL_FAMILY",)
