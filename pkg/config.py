APP_DESCRIPTION = (
    "Exact computations in the Maslov central extension of surface mapping class groups: "
    "algebraic cocycles, linking-matrix signatures of Dehn-twist words, and TQFT phase scalars."
)

SCHEMA_VERSION = 1

SEED_ENV_VAR = "MASLOVKIT_SEED"
DEFAULT_SEED = 0

DEFAULT_TRIALS = 100
DEFAULT_WORKERS = 1

MAX_RANDOM_GENUS = 4
MAX_WORD_LENGTH = 24
MAX_PARSED_WORD_LENGTH = 100_000
RANDOM_CLASS_BOUND = 2
RANDOM_SYMPLECTIC_LENGTH = 6

SUPPORTED_PRIMES = (5, 7, 11, 13)

VERIFY_SUITES = (
    "maslov",
    "cocycle",
    "walker",
    "turaev-mod4",
    "closure-mod4",
    "mod2",
    "surgery-congruence",
    "orientation",
    "completion",
    "cyclo",
    "surgery-exact",
)

OUTPUT_FORMATS = ("json", "text")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
DEFAULT_LOG_LEVEL = "WARNING"

TABLE_MAX_COLUMNS = 12
