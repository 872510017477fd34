from .surrogate import omega, gamma_static, varrho
from .search import (
    AlphaSearchResult, maximize_quasiconcave, suboptimal_alpha,
    optimal_alpha_grid, alpha_grid, surrogate_for,
)
