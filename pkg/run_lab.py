import logging
import os
import sys

from dotenv import load_dotenv

# Carica variabili ambiente
load_dotenv()

# Configurazione logging colorato PRIMA di qualsiasi altro import che usa logging
from core.logger import setup_colored_logging
setup_colored_logging("lab", level=getattr(logging, os.getenv("LOG_LEVEL", "INFO").upper(), logging.INFO))

from cli.main import run

logger = logging.getLogger(__name__)

if __name__ == "__main__":
    try:
        sys.exit(run(sys.argv[1:]))
    except Exception as e:
        logger.error(f"Errore non gestito: {e}")
        raise
