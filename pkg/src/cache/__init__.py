"""
Módulo de caché de polinomios de división.

Persistencia en disco con header validado; ver cache_service.
"""

from .cache_service import PolynomialCacheService, get_cache_service, reset_cache_service

__all__ = [
    "PolynomialCacheService",
    "get_cache_service",
    "reset_cache_service",
]
