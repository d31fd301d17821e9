"""aerial_kpi.evaluation"""
