import os
from pathlib import Path

VERSION = "0.4.0"

# Base directory
BASE_DIR = Path(__file__).parent.parent.resolve()

# Path settings
ASSETS_DIR = BASE_DIR / "assets"
CONFIGS_DIR = ASSETS_DIR / "configs"
DYADS_DIR = ASSETS_DIR / "dyads"
DEFAULT_OUTPUT_DIR = BASE_DIR / "runs"

# Physical constants (SI)
SPEED_OF_LIGHT = 299_792_458.0
MU0 = 1.25663706212e-6
ETA0 = 376.730313668

# Reference operating point and dyad table
DEFAULT_FREQUENCY_HZ = 1.5e9
DEFAULT_FEED_Q = 1.14
TABLE2_THETA_INC_DEG = 31.25
TABLE2_THETA_TOLERANCE_DEG = 1.5
USER_TABLE_THETA_TOLERANCE_DEG = 2.0

# Efficiency budget constants
ETA_ST_FULL_DISH = 0.82
ETA_ST_REALLOCATED_RIM = 0.731

# Meshing
SAMPLES_PER_WAVELENGTH = 4
CELL_SUBGRID = 3

# Radiation integral
SOURCE_CHUNK = 8192
DIRECTION_BLOCK = 16

# Parallelism
WORKERS_ENV = "RIMNULLX_WORKERS"
FULL_SCALE_ENV = "RIMNULLX_FULL_SCALE"


def default_workers() -> int:
    """Worker count from the environment, falling back to 1."""
    raw = os.environ.get(WORKERS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
