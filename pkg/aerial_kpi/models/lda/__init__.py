"""aerial_kpi.models.lda"""
from aerial_kpi.models.lda.lda import LdaModel, classify_rank, fit_lda

__all__ = ("LdaModel", "classify_rank", "fit_lda")
