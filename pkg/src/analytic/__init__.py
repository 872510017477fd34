from .special import (
    compositions, multinomial, binomial, upper_incomplete_gamma,
    log_scaled_upper_gamma, merge_roots, partial_fractions,
    PartialFractionExpansion, chi,
)
from .conditional import (
    f_z_cdf, f_w_cdf, xi1, xi2, xi_e2e, vartheta, phi1, phi1_table,
    theta_fn, phi2, phi2_table,
)
from .outage import (
    outage_bulk_dynamic, outage_bulk_static, outage_ps_dynamic,
    outage_ps_static, outage_half_analytic, analytic_outage, effective_params,
)
