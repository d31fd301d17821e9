"""aerial_kpi.data"""
