"""
Logger "plethysm": stderr, archivo local opcional y Application Insights opcional.

stdout queda reservado para los resultados de la CLI.
"""
import logging
import sys
from pathlib import Path
from typing import Optional

from opencensus.ext.azure.log_exporter import AzureLogHandler
from config import Settings, get_settings


LOGGER_NAME = "plethysm"
LOG_FORMAT = "[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def _file_handler(path: str, formatter: logging.Formatter) -> logging.Handler:
    log_file = Path(path)
    log_file.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(log_file, encoding="utf-8")
    handler.setFormatter(formatter)
    return handler


def _insights_handler(settings: Settings, formatter: logging.Formatter) -> Optional[logging.Handler]:
    """None si Application Insights está deshabilitado o no se pudo conectar."""
    if not (settings.appinsights_enabled and settings.appinsights_instrumentation_key):
        return None
    try:
        handler = AzureLogHandler(
            connection_string=f"InstrumentationKey={settings.appinsights_instrumentation_key}"
        )
    except Exception as e:
        sys.stderr.write(f"[WARNING] No se pudo configurar Application Insights: {e}\n")
        return None
    handler.setFormatter(formatter)
    handler.setLevel(logging.INFO)
    return handler


def setup_logging(settings: Optional[Settings] = None) -> logging.Logger:
    settings = settings or get_settings()
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(getattr(logging, settings.log_level.upper(), logging.INFO))

    # ya configurado (reimportación del módulo)
    if logger.handlers:
        return logger

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(formatter)
    logger.addHandler(console)

    if settings.log_file_path:
        logger.addHandler(_file_handler(settings.log_file_path, formatter))

    insights = _insights_handler(settings, formatter)
    if insights is not None:
        logger.addHandler(insights)
        logger.info(f"[APP INSIGHTS] {settings.app_name} conectado a Application Insights")

    return logger


logger = setup_logging()
