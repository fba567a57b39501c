"""Constants used across the KLM prover."""

# Logics
LOGIC_C = "c"
LOGIC_CL = "cl"
LOGIC_P = "p"
LOGIC_R = "r"

SUPPORTED_LOGICS = [
    LOGIC_C,
    LOGIC_CL,
    LOGIC_P,
    LOGIC_R,
]

# Weakest first: every theorem of a logic is a theorem of the ones after it
LOGIC_STRENGTH_ORDER = [
    LOGIC_C,
    LOGIC_CL,
    LOGIC_P,
    LOGIC_R,
]

STATE_LOGICS = [LOGIC_C, LOGIC_CL]
WORLD_LOGICS = [LOGIC_P, LOGIC_R]

# Language layers
LAYER_BASE = "base"
LAYER_CALCULUS = "calculus"

LANGUAGE_LAYERS = [
    LAYER_BASE,
    LAYER_CALCULUS,
]

# Verdict statuses
STATUS_SAT = "SAT"
STATUS_UNSAT = "UNSAT"
STATUS_NO_MODEL = "NO_MODEL_WITHIN_BOUND"
STATUS_ERROR = "ERROR"

# Query modes
MODE_SAT = "sat"
MODE_VALID = "valid"
MODE_ENTAILS = "entails"

QUERY_MODES = [
    MODE_SAT,
    MODE_VALID,
    MODE_ENTAILS,
]

# Engines
ENGINE_DEFAULT = "default"
ENGINE_NAIVE = "naive"
ENGINE_ORACLE = "oracle"
ENGINE_BOTH = "both"

ENGINES = [
    ENGINE_DEFAULT,
    ENGINE_NAIVE,
    ENGINE_ORACLE,
    ENGINE_BOTH,
]

# Output formats
OUTPUT_TEXT = "text"
OUTPUT_JSON = "json"

OUTPUT_FORMATS = [
    OUTPUT_TEXT,
    OUTPUT_JSON,
]

# Exit codes
EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2
EXIT_INCONCLUSIVE = 3

# Oracle bounds
DEFAULT_ORACLE_BOUND = 4

# Rule names (trace records)
RULE_NEG_NEG = "neg-neg"
RULE_AND_POS = "and+"
RULE_AND_NEG = "and-"
RULE_OR_POS = "or+"
RULE_OR_NEG = "or-"
RULE_IMP_POS = "imp+"
RULE_IMP_NEG = "imp-"
RULE_COND_POS = "cond+"
RULE_COND_NEG = "cond-"
RULE_BOX_NEG = "box-"
RULE_BOX_NEG_STRONG = "box-s"
RULE_L_NEG = "L-"
RULE_MODULARITY = "<"
RULE_REUSE = "reuse"
RULE_AXIOM = "ax"

BOOLEAN_RULES = [
    RULE_NEG_NEG,
    RULE_AND_POS,
    RULE_AND_NEG,
    RULE_OR_POS,
    RULE_OR_NEG,
    RULE_IMP_POS,
    RULE_IMP_NEG,
]

# Projection selectors
PROJECT_BOX = "box"
PROJECT_BOXDOWN = "boxdown"
PROJECT_CONDPOS = "condpos"
PROJECT_CONDNEG = "condneg"
PROJECT_CONDPM = "condpm"
PROJECT_LDOWN = "Ldown"

# Refutability table entries (logic C)
REFUTABLE = "REFUTABLE"
OPEN = "OPEN"
PENDING = "PENDING"

# Report
REPORT_VERSION = "v1"
