"""
Cache manager para coproductos de generadores A_σ.
Implementación en memoria con TTL opcional y tamaño máximo.
"""
from collections import OrderedDict
from datetime import datetime, timedelta
from typing import Optional, Dict, Any
from threading import Lock

from config import get_settings
from core.logging import logger


class CacheManager:
    """
    Gestor de caché en memoria con Time-To-Live (TTL) opcional.
    Thread-safe: lecturas concurrentes y escrituras idempotentes.

    Los valores guardados son inmutables, por lo que un resultado leído del
    cache es idéntico al que se obtendría recalculando.
    """

    def __init__(self, max_size: Optional[int] = None, ttl_seconds: Optional[int] = None):
        self._settings = get_settings()
        self._cache: "OrderedDict[str, Any]" = OrderedDict()
        self._cache_expiry: Dict[str, datetime] = {}
        self._lock = Lock()
        self._max_size = max_size if max_size is not None else self._settings.cache_max_size
        self._ttl_seconds = ttl_seconds if ttl_seconds is not None else self._settings.cache_ttl_seconds
        self._hits = 0
        self._misses = 0

    def get(self, key: str) -> Optional[Any]:
        """
        Obtiene un valor del cache si existe y no ha expirado
        """
        with self._lock:
            if key not in self._cache:
                self._misses += 1
                return None

            # Verificar si expiró
            if key in self._cache_expiry and datetime.now() > self._cache_expiry[key]:
                logger.debug(f"Cache expirado para key: {key}")
                del self._cache[key]
                del self._cache_expiry[key]
                self._misses += 1
                return None

            self._hits += 1
            logger.debug(f"Cache hit para key: {key}")
            return self._cache[key]

    def set(self, key: str, value: Any, ttl_seconds: Optional[int] = None) -> None:
        """
        Guarda un valor en cache. Con TTL 0 la entrada no expira.
        """
        if ttl_seconds is None:
            ttl_seconds = self._ttl_seconds

        with self._lock:
            self._cache[key] = value
            self._cache.move_to_end(key)
            if ttl_seconds > 0:
                self._cache_expiry[key] = datetime.now() + timedelta(seconds=ttl_seconds)
            else:
                self._cache_expiry.pop(key, None)

            # Expulsar la entrada más antigua si se supera el tamaño máximo
            while self._max_size > 0 and len(self._cache) > self._max_size:
                oldest, _ = self._cache.popitem(last=False)
                self._cache_expiry.pop(oldest, None)
                logger.debug(f"Cache lleno, expulsada key: {oldest}")

    def clear(self, key: Optional[str] = None) -> None:
        """
        Limpia el cache. Si key es None, limpia todo el cache
        """
        with self._lock:
            if key is None:
                self._cache.clear()
                self._cache_expiry.clear()
                self._hits = 0
                self._misses = 0
                logger.debug("Cache completamente limpiado")
            elif key in self._cache:
                del self._cache[key]
                self._cache_expiry.pop(key, None)
                logger.debug(f"Cache limpiado para key: {key}")

    def get_stats(self) -> Dict[str, Any]:
        """
        Retorna estadísticas del cache
        """
        with self._lock:
            return {
                "total_keys": len(self._cache),
                "hits": self._hits,
                "misses": self._misses,
                "max_size": self._max_size,
                "ttl_seconds": self._ttl_seconds
            }


# Singleton del cache de coproductos
coproduct_cache = CacheManager()
