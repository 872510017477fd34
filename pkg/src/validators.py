"""
Detección de errores en los parámetros de un escenario.
"""

import math

from src.errors import ConfigError

_POSITIVE_FIELDS = (
    "mu_sr", "mu_rd", "mu_sb", "mu_rb", "mu_cr", "mu_cd", "mu_cb",
    "phi_bar", "p_c", "p_s_max", "p_r_max", "xi", "s", "kappa",
)


def detect_param_errors(params):
    """Detect invalid values in a NetworkParams.

    Returns:
        List of dicts with keys: Campo, Valor, Error.
    """
    errors = []

    def add_error(campo, mensaje):
        errors.append({
            "Campo": campo,
            "Valor": getattr(params, campo, None),
            "Error": mensaje,
        })

    for campo in _POSITIVE_FIELDS:
        val = getattr(params, campo)
        if not isinstance(val, (int, float)) or isinstance(val, bool):
            add_error(campo, f"no numérico ({val!r})")
        elif not math.isfinite(val):
            add_error(campo, f"no finito ({val})")
        elif val <= 0:
            add_error(campo, f"debe ser > 0 ({val})")

    if not 0.0 < params.alpha < 1.0:
        add_error("alpha", f"fuera de (0, 1) ({params.alpha})")

    for campo in ("n_relays", "n_subcarriers"):
        val = getattr(params, campo)
        if not isinstance(val, int) or isinstance(val, bool):
            add_error(campo, f"debe ser entero ({val!r})")
        elif val < 1:
            add_error(campo, f"debe ser >= 1 ({val})")

    return errors


def check_params(params):
    """Lanza ConfigError si el escenario tiene algún error."""
    errors = detect_param_errors(params)
    if errors:
        detalle = "; ".join(f"{e['Campo']}: {e['Error']}" for e in errors)
        raise ConfigError(f"Escenario inválido: {detalle}")
    return params
