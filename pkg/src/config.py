import os

from dotenv import load_dotenv

load_dotenv()

# Cache en disco de polinomios de división
CACHE_ENABLED = os.getenv("DIVPOLY_CACHE_ENABLED", "true").lower() == "true"
CACHE_DIR = os.getenv("DIVPOLY_CACHE_DIR", ".divpoly_cache")
# Se reporta en versions.cache; subirlo invalida archivos viejos
CACHE_FORMAT_VERSION = "1"

# Semilla por defecto (factorización aleatoria, muestreo de curvas)
DEFAULT_SEED = int(os.getenv("VERIFY_SEED", "0"))

# Presupuesto: grado máximo en x de ψ̄_p, que es (p²−1)/2
BUDGET_PRESETS: dict[str, int] = {
    "low": 200,
    "medium": 500,
    "high": 2000,
}
DEFAULT_BUDGET = os.getenv("VERIFY_BUDGET", "medium")

# Un worker por primo, acotado por el pool
MAX_WORKERS = int(os.getenv("VERIFY_MAX_WORKERS", "4"))

# Conteo naive de puntos: se rechaza q por encima de este límite
POINT_COUNT_BUDGET = int(os.getenv("POINT_COUNT_BUDGET", "1000000"))

# Torre de torsión: tope del grado absoluto [𝔽_q(x_n):𝔽_p] previsto
TOWER_DEGREE_BUDGET = int(os.getenv("TOWER_DEGREE_BUDGET", "2000"))

# Logging de progreso a stderr
VERBOSE = os.getenv("VERIFY_VERBOSE", "false").lower() == "true"

# Con timings apagados millis=0 y los reportes son byte-idénticos
RECORD_TIMINGS = os.getenv("VERIFY_RECORD_TIMINGS", "false").lower() == "true"

# Validaciones
if DEFAULT_BUDGET not in BUDGET_PRESETS:
    raise ValueError(
        f"VERIFY_BUDGET='{DEFAULT_BUDGET}' no es válido. "
        f"Disponibles: {list(BUDGET_PRESETS.keys())}"
    )

if MAX_WORKERS < 1:
    raise ValueError("VERIFY_MAX_WORKERS debe ser >= 1")

if POINT_COUNT_BUDGET < 1:
    raise ValueError("POINT_COUNT_BUDGET debe ser >= 1")

if TOWER_DEGREE_BUDGET < 1:
    raise ValueError("TOWER_DEGREE_BUDGET debe ser >= 1")
