from pathlib import Path

# The path (directory) to where experiment artifacts are stored
WORKING_DIRECTORY: Path = Path.cwd()
DEFAULT_OUTPUT_PATH: Path = WORKING_DIRECTORY / "runs"

# Artifact file names (relative to an experiment's output directory)
DATASET_FILE_NAME: str = "doa_dataset.txt"
MODEL_FILE_NAME: str = "predictor.txt"
SEARCH_TRACE_FILE_NAME: str = "search_trace.csv"
COMPARE_SUMMARY_FILE_NAME: str = "compare_summary.csv"
COMPARE_TRACES_FILE_NAME: str = "compare_traces.csv"
SWEEP_FILE_NAME: str = "sweep_k.csv"
ENCODINGS_FILE_NAME: str = "compare_encodings.csv"
REGISTRY_FILE_NAME: str = "artifacts.db"

# Enumeration guard used by exhaustive operations
DEFAULT_ENUMERATION_LIMIT: int = 1_000_000

# Oracles
DEFAULT_PAIR_WEIGHT: float = 0.4
DEFAULT_PROXY_SIGMA: float = 0.02

# DoA dataset (k edits, n repeated measurements per encoding)
DEFAULT_EDIT_DISTANCE: int = 1
DEFAULT_SAMPLES_PER_ENCODING: int = 4

# Predictor training
DEFAULT_EPOCHS: int = 200
DEFAULT_BATCH_SIZE: int = 64
DEFAULT_LEARNING_RATE: float = 1e-3
DEFAULT_L2: float = 1e-4
DEFAULT_HIDDEN_LAYERS: tuple[int, ...] = (64, 64)

# Search
DEFAULT_POPULATION_SIZE: int = 256
DEFAULT_MAX_ITERATIONS: int = 100
DEFAULT_TOURNAMENT_SIZE: int = 10
DEFAULT_EPSILON: float = 1e-3  # relative gap to the optimum that counts as "reached"

# Formatting
SCORE_COLOR_THRESHOLDS: tuple[float, ...] = (1e-3, 1e-2)


# Helper function to generate create table queries
def _create_table_helper(table_name: str, fields: tuple[str, ...]) -> str:
    return f"CREATE TABLE IF NOT EXISTS {table_name} ({', '.join(fields)})"


# Tables
DATABASE_TABLE_QUERIES: tuple[str, ...] = (
    _create_table_helper("artifacts", ("id INTEGER PRIMARY KEY",
                                       "command TEXT NOT NULL",
                                       "config_hash varchar(64) NOT NULL",
                                       "path TEXT NOT NULL",
                                       "digest varchar(64) NOT NULL",
                                       "UNIQUE (command, config_hash)")),)
