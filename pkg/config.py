"""
Settings del motor pletístico, leídos de config/config.cfg.

PLETHYSM_CONFIG apunta a otro archivo INI con las mismas secciones.
"""
from configparser import ConfigParser, Error as ConfigParserError
from functools import lru_cache
from typing import Optional
import os


CONFIG_ENV_VAR = "PLETHYSM_CONFIG"
DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config", "config.cfg")


class Settings:
    """Valores de [General], [Engine], [Verification] y [AppInsights]"""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path or os.environ.get(CONFIG_ENV_VAR, DEFAULT_CONFIG_PATH)
        self._config = self._load_config(self.config_path)

        self.app_name = "PlethysmEngine"
        self.app_version = "1.0.0"

        # [Engine]
        self.truncation = self._get_int("Engine", "truncation", 5, minimum=1)
        self.size_bound = self._get_int("Engine", "size_bound", 4, minimum=1)
        self.seed = self._get_int("Engine", "seed", 1, minimum=0)
        self.output_format = self._get_param("Engine", "output_format", "json").strip().lower()
        self.cache_ttl_seconds = self._get_int("Engine", "cache_ttl_seconds", 0, minimum=0)
        self.cache_max_size = self._get_int("Engine", "cache_max_size", 4096, minimum=0)

        # [Verification]: una cota por suite
        self.duality_pairs = self._get_int("Verification", "duality_pairs", 20, minimum=1)
        self.objective_weight = self._get_int("Verification", "objective_weight", 4, minimum=1)
        self.automorphism_size = self._get_int("Verification", "automorphism_size", 6, minimum=1)
        self.partition_ground_size = self._get_int("Verification", "partition_ground_size", 5, minimum=1)
        self.square_size = self._get_int("Verification", "square_size", 3, minimum=1)
        self.classical_max_n = self._get_int("Verification", "classical_max_n", 6, minimum=1)
        self.consistency_weight = self._get_int("Verification", "consistency_weight", 5, minimum=1)

        # [AppInsights]
        self.appinsights_enabled = self._get_bool("AppInsights", "enabled", False)
        self.appinsights_instrumentation_key = self._get_param("AppInsights", "instrumentation_key", "")

        # [General]
        self.log_level = self._get_param("General", "log_level", "INFO")
        self.log_file_path = self._get_param("General", "log_file_path", "./logs/plethysm-engine.log")

    @staticmethod
    def _load_config(path: str) -> ConfigParser:
        if not os.path.exists(path):
            raise FileNotFoundError(
                f"Archivo de configuración no encontrado: {path}\n"
                f"Crea config/config.cfg o define {CONFIG_ENV_VAR}"
            )
        config = ConfigParser()
        config.read(path, encoding="utf-8")
        return config

    def _get_param(self, section: str, key: str, default: Optional[str] = None) -> str:
        """
        Raises:
            ValueError: si el parámetro falta y no tiene default
        """
        try:
            return self._config.get(section, key)
        except ConfigParserError:
            if default is None:
                raise ValueError(f"Parámetro requerido no encontrado: [{section}] {key}")
            return default

    def _get_int(self, section: str, key: str, default: int, minimum: int) -> int:
        raw = self._get_param(section, key, str(default))
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"[{section}] {key} debe ser entero (valor: {raw!r})")
        if value < minimum:
            raise ValueError(f"[{section}] {key} debe ser ≥ {minimum} (valor: {value})")
        return value

    def _get_bool(self, section: str, key: str, default: bool) -> bool:
        return self._get_param(section, key, str(default)).strip().lower() in ("true", "1", "yes")


@lru_cache()
def get_settings() -> Settings:
    """Se carga una sola vez por proceso"""
    return Settings()
