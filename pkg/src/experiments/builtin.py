"""
Experimentos predefinidos (fig2 … fig7) sobre el escenario de referencia.
"""

from dataclasses import replace

from config import DEFAULT_NK_PAIRS, FIG5_KAPPAS
from src.channel import default_params
from src.errors import ConfigError
from src.experiments.sweep import SweepSpec
from src.link.modes import DuplexMode, PowerControlMode, SelectionScheme

_BOTH_MODES = (PowerControlMode.DYNAMIC, PowerControlMode.STATIC)
_BULK_PS = (SelectionScheme.BULK, SelectionScheme.PER_SUBCARRIER)


def _db_range(start, stop, step=5):
    return tuple(float(v) for v in range(start, stop + 1, step))


def _four_by_four():
    """N = K = 4 con P̄_S = P̄_R = 1."""
    return default_params(n_relays=4, n_subcarriers=4, p_s_max=1.0, p_r_max=1.0)


def _fig2():
    return SweepSpec(
        base=default_params(),
        swept_key="p_s_max_db+p_r_max_db",
        values=_db_range(-10, 30),
        schemes=_BULK_PS,
        modes=_BOTH_MODES,
        variants=tuple({"n_relays": n, "n_subcarriers": k} for n, k in DEFAULT_NK_PAIRS),
    )


def _fig3():
    return SweepSpec(
        base=_four_by_four(),
        swept_key="mu_sr_db+mu_rd_db",
        values=_db_range(10, 40),
        schemes=_BULK_PS + (SelectionScheme.RANDOM,),
        modes=_BOTH_MODES,
    )


def _fig4a():
    return SweepSpec(
        base=_four_by_four(),
        swept_key="mu_sb_db+mu_rb_db",
        values=_db_range(0, 20),
        schemes=_BULK_PS,
        modes=_BOTH_MODES,
    )


def _fig4b():
    return SweepSpec(
        base=_four_by_four(),
        swept_key="mu_cr_db+mu_cd_db",
        values=_db_range(-10, 10),
        schemes=_BULK_PS,
        modes=_BOTH_MODES,
    )


def _fig5():
    return SweepSpec(
        base=_four_by_four(),
        swept_key="mu_cb_db",
        values=_db_range(0, 40),
        schemes=_BULK_PS,
        modes=_BOTH_MODES,
        variants=tuple({"kappa": float(kappa)} for kappa in FIG5_KAPPAS),
        metrics=("d2d", "cellular"),
    )


def _fig6():
    return SweepSpec(
        base=_four_by_four(),
        swept_key="phi_bar_db",
        values=_db_range(-10, 20),
        schemes=_BULK_PS,
        modes=_BOTH_MODES,
        duplexes=(DuplexMode.FULL, DuplexMode.HALF, DuplexMode.IDEAL_FULL),
    )


def _fig7():
    return SweepSpec(
        base=_four_by_four(),
        swept_key="alpha",
        values=tuple(round(0.05 * i, 2) for i in range(1, 20)),
        schemes=_BULK_PS,
        modes=_BOTH_MODES,
        optimizer_markers=True,
    )


_BUILDERS = {
    "fig2": _fig2,
    "fig3": _fig3,
    "fig4a": _fig4a,
    "fig4b": _fig4b,
    "fig5": _fig5,
    "fig6": _fig6,
    "fig7": _fig7,
}
# fig4 a secas es el barrido de ganancias hacia la BS
_ALIASES = {"fig4": "fig4a"}

BUILTIN_NAMES = tuple(_BUILDERS) + tuple(_ALIASES)


def builtin_names(include_aliases=False):
    """Nombres de los experimentos predefinidos, sin alias por defecto."""
    return BUILTIN_NAMES if include_aliases else tuple(_BUILDERS)


def builtin_experiment(name, **overrides):
    """SweepSpec of a predefined experiment.

    Args:
        name: one of BUILTIN_NAMES.
        **overrides: SweepSpec fields to replace (trials, seed, workers, ...).

    Raises:
        ConfigError: unknown name.
    """
    key = _ALIASES.get(name, name)
    if key not in _BUILDERS:
        raise ConfigError(f"Experimento desconocido '{name}' (disponibles: {', '.join(BUILTIN_NAMES)})")
    spec = replace(_BUILDERS[key](), name=key)
    return replace(spec, **overrides) if overrides else spec
