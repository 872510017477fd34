"""
Estimador Monte Carlo de outage (oráculo de referencia de las fórmulas).

Cada worker recibe un hijo de SeedSequence(seed) y procesa su partición de
ensayos por lotes de tamaño fijo, de modo que el resultado depende sólo de
(seed, workers). Los conteos se suman de forma exacta.

Dentro de un lote el orden de extracción es siempre el mismo: realización
completa y después el índice aleatorio de relé, se use o no. Así dos
esquemas o modos dúplex con la misma semilla ven exactamente los mismos
canales.
"""

import math

import numpy as np
from joblib import Parallel, delayed

from config import MC_BATCH_ELEMENTS
from src.channel import make_rng, sample_batch
from src.link.modes import (
    DuplexMode, PowerControlMode, SelectionScheme, OutageEstimate,
    monte_carlo_estimate, parse_enum, wilson_halfwidth,
)
from src.link.selection import (
    cellular_outage_events, draw_random_relay, outage_threshold, selected_sir,
)
from src.validators import check_params


_STATISTICS = ("outage", "cellular_mean", "cellular_any", "sir_sum")


def _batch_size(params):
    return max(1, MC_BATCH_ELEMENTS // (params.n_relays * params.n_subcarriers))


def _batch_statistic(real, params, mode, duplex, scheme, random_index, statistic):
    index, sir = selected_sir(real, params, mode, duplex, scheme, random_index=random_index)
    if statistic == "outage":
        return int(np.count_nonzero(sir.min(axis=-1) < outage_threshold(params, duplex)))
    if statistic == "sir_sum":
        return math.fsum(sir.ravel())
    events = cellular_outage_events(real, params, mode, index)
    if statistic == "cellular_any":
        return int(np.count_nonzero(events.any(axis=-1)))
    return int(np.count_nonzero(events))


def _run_chunk(params, mode, duplex, scheme, trials, seed_seq, statistic):
    """Acumula ``statistic`` sobre ``trials`` ensayos de un solo stream."""
    rng = make_rng(seed_seq)
    batch = _batch_size(params)
    totals = []
    remaining = trials
    while remaining > 0:
        size = min(batch, remaining)
        real = sample_batch(params, rng, size)
        random_index = draw_random_relay(params, rng, (size,))
        totals.append(_batch_statistic(real, params, mode, duplex, scheme, random_index, statistic))
        remaining -= size
    if statistic == "sir_sum":
        return math.fsum(totals)
    return sum(totals)


def _partition(trials, workers):
    base, extra = divmod(trials, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def _accumulate(params, mode, duplex, scheme, trials, seed, workers, statistic):
    if statistic not in _STATISTICS:
        raise ValueError(f"Estadístico desconocido: {statistic}")
    if trials < 1:
        raise ValueError("trials debe ser >= 1")
    if workers < 1:
        raise ValueError("workers debe ser >= 1")
    check_params(params)
    mode = parse_enum(PowerControlMode, mode)
    duplex = parse_enum(DuplexMode, duplex)
    scheme = parse_enum(SelectionScheme, scheme)

    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    if workers == 1:
        return _run_chunk(params, mode, duplex, scheme, trials, root, statistic)

    children = root.spawn(workers)
    shares = _partition(trials, workers)
    partials = Parallel(n_jobs=workers)(
        delayed(_run_chunk)(params, mode, duplex, scheme, share, child, statistic)
        for share, child in zip(shares, children)
        if share > 0
    )
    if statistic == "sir_sum":
        return math.fsum(partials)
    return sum(partials)


def estimate_outage(params, mode, duplex, scheme, trials, seed, workers=1):
    """Fraction of trials in outage with a 95% Wilson half-width.

    Deterministic for a given (seed, workers).
    """
    count = _accumulate(params, mode, duplex, scheme, trials, seed, workers, "outage")
    return monte_carlo_estimate(count, trials)


def cellular_outage(params, mode, duplex, scheme, trials, seed, workers=1, aggregate="mean"):
    """Outage del enlace celular tras la selección de relés.

    aggregate="mean": probabilidad por subportadora promediada en k.
    aggregate="any": probabilidad de que alguna subportadora falle.
    """
    if aggregate == "any":
        count = _accumulate(params, mode, duplex, scheme, trials, seed, workers, "cellular_any")
        return monte_carlo_estimate(count, trials)
    if aggregate != "mean":
        raise ValueError(f"aggregate debe ser 'mean' o 'any' ({aggregate!r})")

    count = _accumulate(params, mode, duplex, scheme, trials, seed, workers, "cellular_mean")
    probability = count / (trials * params.n_subcarriers)
    # Las K subportadoras de un ensayo no son independientes entre sí
    # (comparten el relé en bulk), así que el intervalo usa n = trials.
    return OutageEstimate(
        probability=probability,
        half_width=wilson_halfwidth(probability * trials, trials),
        trials=trials,
        source="monte-carlo",
    )


def mean_end_to_end_sir(params, mode, duplex, scheme, trials, seed, workers=1):
    """Media de Γ_SRñD(k) sobre ensayos y subportadoras tras la selección."""
    total = _accumulate(params, mode, duplex, scheme, trials, seed, workers, "sir_sum")
    return total / (trials * params.n_subcarriers)
