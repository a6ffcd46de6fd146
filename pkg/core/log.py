import json
import logging
import sys

from core.config import app_config, env_path, numerics_config


def setup_logging():
    """Configure logging for the application"""
    logging.basicConfig(
        level=getattr(logging, app_config.LOG_LEVEL.upper(), logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        # stdout занят отчетами
        handlers=[logging.StreamHandler(sys.stderr)],
    )

    if app_config.DEBUG:
        if env_path.exists():
            logger.debug(f"Environment variables loaded from {env_path}")
        logger.debug(
            "Numerics settings initialized: "
            f"{json.dumps(numerics_config.model_dump(), indent=2, default=str)}"
        )


# Configure logging
logger = logging.getLogger(__name__)
