"""
Residual diagnostics for fitted QULS-ARMA models.
"""

from .residuals import ResidualSet, qq_data, residuals, write_qq_svg

__all__ = ["ResidualSet", "qq_data", "residuals", "write_qq_svg"]
