"""
Lectura y escritura de ficheros de escenario (formato plano clave = valor).

    # comentario
    mu_sr_db = 30
    n_relays = 4
    sweep.key = p_s_max_db+p_r_max_db
    sweep.values = -10, -5, 0, 5, 10

Las claves sin prefijo son campos de NetworkParams (sufijo _db si el valor
va en dB); las claves sweep.* definen el barrido. Cualquier error se
informa con fichero y línea.
"""

import glob
import itertools
import os
from dataclasses import dataclass

from config import DB_CAPABLE_FIELDS, INTEGER_FIELDS, SCENARIOS_DIR
from src.channel import FIELD_NAMES, db_to_linear, default_params
from src.errors import ConfigError
from src.experiments.sweep import SweepSpec, parse_swept_key, validate_spec
from src.link.modes import DuplexMode, PowerControlMode, SelectionScheme, parse_enum
from src.validators import detect_param_errors

SCENARIO_SUFFIX = ".cfg"

_TRUE = ("1", "true", "yes", "si", "sí", "on")
_FALSE = ("0", "false", "no", "off")


@dataclass(frozen=True)
class Scenario:
    """Escenario leído: parámetros base y, si lo hay, el barrido."""

    path: str
    params: object
    sweep: object = None


def _find_scenario(name_or_path, scenarios_dir=SCENARIOS_DIR):
    """Find a scenario file by path or by name inside scenarios_dir."""
    if os.path.isfile(name_or_path):
        return name_or_path

    exact = os.path.join(scenarios_dir, f"{name_or_path}{SCENARIO_SUFFIX}")
    if os.path.exists(exact):
        return exact

    pattern = os.path.join(scenarios_dir, "**", f"{name_or_path}*{SCENARIO_SUFFIX}")
    matches = sorted(glob.glob(pattern, recursive=True))
    if matches:
        return matches[0]

    return None


# ── Conversión de valores ─────────────────────────────────────────────────

def _split_list(text):
    return [item.strip() for item in text.split(",") if item.strip()]


def _parse_float(text):
    return float(text.replace("_", ""))


def _parse_int(text):
    value = float(text.replace("_", ""))
    if not value.is_integer():
        raise ValueError(f"'{text}' no es entero")
    return int(value)


def _parse_bool(text):
    low = text.strip().lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise ValueError(f"'{text}' no es booleano")


def _parse_nk_pairs(text):
    pairs = []
    for item in _split_list(text):
        n, sep, k = item.lower().partition("x")
        if not sep:
            raise ValueError(f"par N,K '{item}' sin 'x' (p. ej. 2x4)")
        pairs.append((_parse_int(n.strip()), _parse_int(k.strip())))
    return pairs


def _parse_key(text):
    parse_swept_key(text)
    return text.strip()


def _enum_list(enum_cls):
    return lambda text: tuple(parse_enum(enum_cls, item) for item in _split_list(text))


def _nonempty(parser):
    def parse(text):
        value = parser(text)
        if not value:
            raise ValueError("lista vacía")
        return value
    return parse


_SWEEP_PARSERS = {
    "key": _parse_key,
    "values": _nonempty(lambda text: tuple(_parse_float(v) for v in _split_list(text))),
    "schemes": _nonempty(_enum_list(SelectionScheme)),
    "modes": _nonempty(_enum_list(PowerControlMode)),
    "duplexes": _nonempty(_enum_list(DuplexMode)),
    "trials": _parse_int,
    "seed": _parse_int,
    "emit_analytic": _parse_bool,
    "emit_mc": _parse_bool,
    "nk_pairs": _nonempty(_parse_nk_pairs),
    "kappas": _nonempty(lambda text: [_parse_float(v) for v in _split_list(text)]),
    "metrics": _nonempty(lambda text: tuple(_split_list(text))),
    "optimizer_markers": _parse_bool,
    "grid_points": _parse_int,
    "name": str.strip,
}


def _parse_param(key, text):
    """(campo, valor lineal) de una línea de parámetro."""
    in_db = key.endswith("_db")
    name = key[:-3] if in_db else key
    if name not in FIELD_NAMES:
        raise ValueError(f"clave desconocida '{key}'")
    if in_db and name not in DB_CAPABLE_FIELDS:
        raise ValueError(f"'{name}' no admite dB")
    if name in INTEGER_FIELDS:
        return name, _parse_int(text)
    value = _parse_float(text)
    return name, db_to_linear(value) if in_db else value


def _variants(sweep_values):
    """Cruza nk_pairs × kappas en sustituciones de parámetros."""
    nk = [{"n_relays": n, "n_subcarriers": k} for n, k in sweep_values.pop("nk_pairs", [])] or [{}]
    kappas = [{"kappa": kappa} for kappa in sweep_values.pop("kappas", [])] or [{}]
    return tuple({**a, **b} for a, b in itertools.product(nk, kappas))


# ── Lectura ───────────────────────────────────────────────────────────────

def parse_scenario(lines, source="<texto>"):
    """Parse scenario lines into a Scenario; ConfigError names source:line."""
    overrides = {}
    sweep_values = {}
    seen = {}

    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        key, sep, text = line.partition("=")
        key, text = key.strip(), text.strip()
        if not sep or not key:
            raise ConfigError(f"{where}: se esperaba 'clave = valor' ('{line}')")

        # mu_sr y mu_sr_db son la misma clave
        canonical = key[:-3] if key.endswith("_db") and not key.startswith("sweep.") else key
        if canonical in seen:
            raise ConfigError(f"{where}: clave '{key}' repetida (ya en la línea {seen[canonical]})")
        seen[canonical] = lineno

        try:
            if key.startswith("sweep."):
                field = key[len("sweep."):]
                if field not in _SWEEP_PARSERS:
                    raise ValueError(f"clave de barrido desconocida '{key}'")
                sweep_values[field] = _SWEEP_PARSERS[field](text)
            else:
                name, value = _parse_param(key, text)
                overrides[name] = value
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None

    params = default_params(**overrides)
    errors = detect_param_errors(params)
    if errors:
        detalle = "; ".join(f"{e['Campo']}: {e['Error']}" for e in errors)
        raise ConfigError(f"{source}: escenario inválido: {detalle}")

    sweep = None
    if sweep_values:
        for required in ("key", "values"):
            if required not in sweep_values:
                raise ConfigError(f"{source}: falta sweep.{required}")
        variants = _variants(sweep_values)
        try:
            swept_key = sweep_values.pop("key")
            sweep = validate_spec(SweepSpec(
                base=params, swept_key=swept_key, variants=variants, **sweep_values
            ))
        except ConfigError as exc:
            raise ConfigError(f"{source}: {exc}") from None

    return Scenario(path=source, params=params, sweep=sweep)


def load_scenario(name_or_path, scenarios_dir=SCENARIOS_DIR):
    """Read a scenario file (path, or name under scenarios_dir)."""
    path = _find_scenario(name_or_path, scenarios_dir)
    if not path:
        raise FileNotFoundError(f"No se encuentra el escenario {name_or_path}")

    print(f"  Leyendo {path}...")
    with open(path, encoding="utf-8") as fh:
        scenario = parse_scenario(fh.read().splitlines(), source=path)
    if scenario.sweep is None:
        print("  Escenario sin barrido.")
    else:
        print(
            f"  Barrido de {scenario.sweep.swept_key}: {len(scenario.sweep.values)} valores, "
            f"{len(scenario.sweep.variants)} variante(s)."
        )
    return scenario


# ── Escritura ─────────────────────────────────────────────────────────────

def _variant_lines(variants):
    """Inverse of _variants: sweep.nk_pairs / sweep.kappas lines."""
    nk = list(dict.fromkeys(
        (v["n_relays"], v["n_subcarriers"]) for v in variants if "n_relays" in v
    ))
    kappas = list(dict.fromkeys(v["kappa"] for v in variants if "kappa" in v))
    rebuilt = {"nk_pairs": nk, "kappas": kappas}
    if _variants({k: v for k, v in rebuilt.items() if v}) != tuple(variants):
        raise ValueError("Las variantes no son un producto de nk_pairs y kappas")
    lines = []
    if nk:
        lines.append("sweep.nk_pairs = " + ", ".join(f"{n}x{k}" for n, k in nk))
    if kappas:
        lines.append("sweep.kappas = " + ", ".join(repr(float(k)) for k in kappas))
    return lines


def _joined(items):
    return ", ".join(getattr(item, "value", item) for item in items)


def dump_scenario(spec, path):
    """Write a SweepSpec as a scenario file that load_scenario reads back."""
    lines = []
    if spec.name:
        lines.append(f"# {spec.name}")
    lines.append("# Parámetros base (lineales)")
    for name, value in spec.base.as_dict().items():
        lines.append(f"{name} = {value!r}")
    lines += [
        "",
        "# Barrido",
        f"sweep.key = {spec.swept_key}",
        "sweep.values = " + ", ".join(repr(float(v)) for v in spec.values),
        f"sweep.schemes = {_joined(spec.schemes)}",
        f"sweep.modes = {_joined(spec.modes)}",
        f"sweep.duplexes = {_joined(spec.duplexes)}",
        f"sweep.trials = {spec.trials}",
        f"sweep.seed = {spec.seed}",
        f"sweep.emit_analytic = {str(spec.emit_analytic).lower()}",
        f"sweep.emit_mc = {str(spec.emit_mc).lower()}",
        f"sweep.metrics = {', '.join(spec.metrics)}",
        f"sweep.optimizer_markers = {str(spec.optimizer_markers).lower()}",
        f"sweep.grid_points = {spec.grid_points}",
    ]
    if spec.name:
        lines.append(f"sweep.name = {spec.name}")
    lines += _variant_lines(spec.variants)

    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path
