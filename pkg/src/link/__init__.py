from .modes import (
    PowerControlMode, SelectionScheme, DuplexMode, OutageEstimate,
    parse_enum, wilson_halfwidth, monte_carlo_estimate,
)
from .sir import (
    source_power, relay_power, sir_first_hop, sir_second_hop, sir_end_to_end,
    source_power_all, relay_power_all, sir_first_hop_all, sir_second_hop_all,
    sir_end_to_end_all,
)
from .selection import (
    select_relays, selected_sir, is_outage, outage_threshold,
    cellular_sir, cellular_outage_events,
)
from .montecarlo import estimate_outage, cellular_outage, mean_end_to_end_sir
