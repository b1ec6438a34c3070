import logging
import os


# Configure logging
logging.basicConfig(
    level=os.getenv("ASLW_LOG_LEVEL", "INFO").upper(),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)
logger = logging.getLogger(__name__)

# Constants
CACHE_DIR = os.getenv("ASLW_CACHE_DIR", ".aslw_cache")
DEFAULTS_FILE = os.getenv("ASLW_DEFAULTS_FILE", "config-defaults.yaml")
CHECK_NAMES = [
    "convexity",
    "monotonicity",
    "flags",
    "imaginary",
    "conjecture",
    "wset",
    "bracketing",
    "addition",
    "lifting",
    "smallest",
]
