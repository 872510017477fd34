"""
Configuración central del laboratorio de outage D2D.
"""

import os

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
OUTPUT_DIR = os.path.join(BASE_DIR, "output")
SCENARIOS_DIR = os.path.join(BASE_DIR, "scenarios")

# ── Parámetros por defecto del escenario de referencia ────────────────────
# Ganancias medias y SI residual en dB (se convierten con db_to_linear)
REFERENCE_DEFAULTS_DB = {
    "mu_sr": 30.0,
    "mu_rd": 30.0,
    "mu_sb": 10.0,
    "mu_rb": 10.0,
    "mu_cr": 2.0,
    "mu_cd": 2.0,
    "mu_cb": 20.0,
    "phi_bar": 5.0,
}

# Umbrales, potencias y contadores en lineal
REFERENCE_DEFAULTS_LINEAR = {
    "p_c": 1.0,
    "p_s_max": 1.0,
    "p_r_max": 1.0,
    "xi": 1.0,
    "s": 1.0,
    "alpha": 0.5,
    "kappa": 4.0,
    "n_relays": 2,
    "n_subcarriers": 2,
}

# Campos que se pueden dar en dB en un fichero de escenario (sufijo _db)
DB_CAPABLE_FIELDS = (
    "mu_sr", "mu_rd", "mu_sb", "mu_rb", "mu_cr", "mu_cd", "mu_cb",
    "phi_bar", "p_c", "p_s_max", "p_r_max", "xi", "s", "kappa",
)
INTEGER_FIELDS = ("n_relays", "n_subcarriers")

# ── Tolerancias numéricas ─────────────────────────────────────────────────
QUAD_EPSREL = 1e-8
QUAD_EPSABS = 1e-14
QUAD_LIMIT = 2000
ROOT_MERGE_RTOL = 1e-9
FZ_BRANCH_RTOL = 1e-9
N_MAX_ANALYTIC = 12
CLAMP_TOL = 1e-6
# Cociente máximo Σ|término| / |Σ término| admitido en la suma de fracciones parciales de χ
CHI_AMPLIFICATION_LIMIT = 1e6
# Umbral x a partir del cual Γ(a, x) se evalúa por fracción continua
GAMMA_CF_THRESHOLD = 1.0
CELLULAR_SIR_RTOL = 1e-12

# ── Monte Carlo ───────────────────────────────────────────────────────────
# Elementos N*K por lote; fija el tamaño de lote y por tanto el stream
MC_BATCH_ELEMENTS = 1_000_000
WILSON_LEVEL = 0.95
DEFAULT_TRIALS = 100_000
DEFAULT_SEED = 20170601

# ── Optimizador ───────────────────────────────────────────────────────────
GOLDEN_TOL = 1e-6
DEFAULT_GRID_POINTS = 99

# ── Experimentos ──────────────────────────────────────────────────────────
# Valores de κ barridos en fig5
FIG5_KAPPAS = (2.0, 4.0, 8.0)
DEFAULT_NK_PAIRS = ((2, 2), (2, 4), (4, 2), (4, 4))

CSV_COLUMNS = [
    "swept_value_db", "swept_value_linear", "scheme", "mode", "duplex",
    "analytic", "mc_estimate", "mc_halfwidth", "trials", "seed", "wall_ms",
    "n_relays", "n_subcarriers", "kappa", "metric",
    "alpha_suboptimal", "alpha_optimal", "status",
]
FLOAT_FORMAT = "%.12e"

# ── Códigos de salida ─────────────────────────────────────────────────────
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNSTABLE = 3
