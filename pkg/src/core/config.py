import os

# === Oracle Budget ===
BUDGET_ENV = "IPLKIT_BUDGET"          # "worlds,depth", e.g. "3,200"
DEFAULT_MAX_WORLDS = 3                # Countermodel search bound (worlds)
DEFAULT_PROOF_DEPTH = 200             # Sequent search recursion bound
SEARCH_NODE_LIMIT = 50000             # Sequents visited before the search gives up
WITNESS_SEARCH_CARDINALITY = 3        # Largest |Φ|+|Ω| tried when minimizing pair witnesses

# === Algebra Limits ===
MAX_ALGEBRA_SIZE = 64                 # Dense operation tables beyond this are rejected
MAX_ISOMORPHISM_SIZE = 8              # Brute-force isomorphism checks only up to this size

# === Logging ===
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
LOG_DIR = os.environ.get("IPLKIT_LOG_DIR", os.path.abspath(os.path.join(BASE_DIR, "../../logs")))
LOG_FILE = os.environ.get("IPLKIT_LOG_FILE", os.path.join(LOG_DIR, "events.json"))
LOG_LEVEL = os.environ.get("IPLKIT_LOG_LEVEL", "INFO").upper()    # Levels: DEBUG, INFO, WARNING, ERROR
LOCK_TIMEOUT = 5                      # Seconds to wait for the log file lock

# === Workers ===
WORKERS = int(os.environ.get("IPLKIT_WORKERS", "0") or 0)         # 0 = sequential sweeps

# === Test Harness ===
RANDOM_SEED = 20240611                # Seed for generated formula corpora

# === CLI Exit Status ===
EXIT_POSITIVE = 0                     # Valid / provable / holds
EXIT_NEGATIVE = 1                     # Definitive negative, witness in the output
EXIT_USAGE = 2                        # Usage or input error, message on stderr
EXIT_UNKNOWN = 3                      # Budget exhausted without a verdict
