"""aerial_kpi.models"""
