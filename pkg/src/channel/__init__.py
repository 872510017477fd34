from .params import NetworkParams, FIELD_NAMES, db_to_linear, linear_to_db, default_params
from .realization import (
    ChannelRealization, exp_cdf, make_rng, sample_batch, sample_realization,
)
