"""aerial_kpi.models.mlp"""
from aerial_kpi.models.mlp.mlp import MODEL_FAMILY

__all__ = ("MODEL_FAMILY",)
