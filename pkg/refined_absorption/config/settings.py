import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file if it exists
load_dotenv()

# Base paths
BASE_DIR = Path(__file__).parent.parent.parent
DATA_DIR = Path(os.getenv('RA_DATA_DIR', BASE_DIR / "data"))
LOG_DIR = Path(os.getenv('RA_LOG_DIR', BASE_DIR / "logs"))

# Create necessary directories
DATA_DIR.mkdir(parents=True, exist_ok=True)
LOG_DIR.mkdir(parents=True, exist_ok=True)

# Randomness
DEFAULT_SEED = int(os.getenv('RA_SEED', '0'))

# Search caps and budgets
COPY_CAP = int(os.getenv('RA_COPY_CAP', '12'))  # max v(F) for copy counting
EMBED_CAP = int(os.getenv('RA_EMBED_CAP', '2000000'))  # search nodes
EXACT_COVER_BUDGET = int(os.getenv('RA_EXACT_COVER_BUDGET', '2000000'))
MATCHING_BUDGET = int(os.getenv('RA_MATCHING_BUDGET', '200000'))
LP_CAP = int(os.getenv('RA_LP_CAP', '40000'))  # rows * columns of a tableau
OMNI_EDGE_CAP = int(os.getenv('RA_OMNI_EDGE_CAP', '10'))
RESERVE_RETRIES = int(os.getenv('RA_RESERVE_RETRIES', '10'))
TAIL_EXHAUSTIVE_CAP = int(os.getenv('RA_TAIL_EXHAUSTIVE_CAP', '200000'))
ENUMERATION_CAP = int(os.getenv('RA_ENUMERATION_CAP', '250000'))  # s-sets, subsets

# Pipeline knobs
RESERVE_P = float(os.getenv('RA_RESERVE_P', '0.08'))
SUBSET_SIZE = int(os.getenv('RA_SUBSET_SIZE', '5'))
BITE = float(os.getenv('RA_BITE', '0.3'))
SLOTS = int(os.getenv('RA_SLOTS', '2'))
NIBBLE_ROUNDS = int(os.getenv('RA_NIBBLE_ROUNDS', '30'))

# Stage invariants inside the integral recursion
DEBUG_CHECKS = os.getenv('RA_DEBUG_CHECKS', '1') == '1'

# Logging configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        },
        'simple': {
            'format': '%(levelname)s - %(message)s'
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
            'level': os.getenv('RA_CONSOLE_LEVEL', 'INFO'),
        },
        'file': {
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': LOG_DIR / 'refined_absorption.log',
            'maxBytes': 1024 * 1024 * 5,  # 5 MB
            'backupCount': 5,
            'formatter': 'verbose',
            'level': 'DEBUG',
        },
    },
    'loggers': {
        'refined_absorption': {
            'handlers': ['console', 'file'],
            'level': 'DEBUG',
            'propagate': True,
        },
    },
}
