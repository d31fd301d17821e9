"""aerial_kpi air-to-ground cellular KPI modeling library"""

__version__ = "2026.10.19"
