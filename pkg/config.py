"""Configuration settings for the tilekit tiling toolkit."""
import os
from dotenv import load_dotenv

load_dotenv()

# Search and check depths
DEFAULT_DEPTH = int(os.getenv("TILEKIT_DEPTH", "8"))
DEFAULT_CAP = int(os.getenv("TILEKIT_CAP", "64"))
MULT_CHECK_DEPTH = int(os.getenv("TILEKIT_MULT_CHECK_DEPTH", "8"))

# Verification window, as "x0,x1,y0,y1"
DEFAULT_WINDOW = os.getenv("TILEKIT_WINDOW", "-4,4,-4,4")
DEFAULT_RESOLUTION = int(os.getenv("TILEKIT_RESOLUTION", "256"))
AXIS_EXCLUSION = os.getenv("TILEKIT_AXIS_EXCLUSION", "1/16")

# Constructions
SEED_BANDS = int(os.getenv("TILEKIT_SEED_BANDS", "6"))
ITERATION_STEPS = int(os.getenv("TILEKIT_ITERATION_STEPS", "5"))

# Continued fractions
CF_COUNT = int(os.getenv("TILEKIT_CF_COUNT", "12"))
CF_PERIOD_SEARCH = int(os.getenv("TILEKIT_CF_PERIOD_SEARCH", "24"))

# Gram spot-check
GRAM_DPS = int(os.getenv("TILEKIT_GRAM_DPS", "30"))
GRAM_TOLERANCE = float(os.getenv("TILEKIT_GRAM_TOLERANCE", "1e-6"))
GRAM_LEVELS = int(os.getenv("TILEKIT_GRAM_LEVELS", "2"))

# Output
RESULTS_DIR = os.getenv("TILEKIT_RESULTS_DIR", "results")
LOG_LEVEL = os.getenv("TILEKIT_LOG_LEVEL", "WARNING").upper()
