from .bootstrap import bootstrap_std, visibility_statistic
from .residuals import grid_order, residual_map, write_residual_map
from .runs_test import runs_test

__all__ = ["runs_test", "bootstrap_std", "visibility_statistic", "residual_map", "write_residual_map", "grid_order"]
