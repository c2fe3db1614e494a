import logging
import os
import sys
from pathlib import Path

from configs.global_config import IS_DEBUG

PROJECT_DIR = Path(__file__).parent.parent
LOG_DIR = Path(os.environ.get("CROOKED_LOG_DIR", PROJECT_DIR))
LOG_FILE = LOG_DIR / 'crooked.log'
LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s - %(message)s'

LOG_DIR.mkdir(parents=True, exist_ok=True)

# stdout is reserved for command output
logging.basicConfig(
    level=logging.DEBUG if IS_DEBUG else logging.INFO,
    format=LOG_FORMAT,
    handlers=[
        logging.FileHandler(LOG_FILE, encoding='utf-8'),
        logging.StreamHandler(sys.stderr)
    ]
)


def get_logger(name):
    return logging.getLogger(name)


def set_console_level(level):
    for handler in logging.getLogger().handlers:
        if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
            handler.setLevel(level)
