"""
Cache Service - Cache en disco de polinomios de división.

Un archivo por polinomio:
    ring=<Z|Fp:p> m=<m> parity=<0|1>
    <lista canónica de términos>
    md5=<hash de la línea de términos>

El header y el hash se validan en cada lectura: un archivo corrupto se
loguea, se descarta y se recalcula, nunca se confía en él. La escritura es
atómica (archivo temporal + os.replace) para que varios workers puedan
compartir el directorio.
"""

from __future__ import annotations

import hashlib
import os
import re
import tempfile
from pathlib import Path
from typing import Optional

try:
    from .. import config
    from ..console import log, log_error
    from ..algebra.weighted_poly import CoefficientRing, XPoly, format_terms, parse_terms
except ImportError:
    from src import config
    from src.console import log, log_error
    from src.algebra.weighted_poly import CoefficientRing, XPoly, format_terms, parse_terms

_HEADER = re.compile(r"ring=(Z|Fp:\d+) m=(\d+) parity=([01])")


class PolynomialCacheService:
    """
    Cache persistente de ψ_m por (anillo, m).

    Nunca propaga errores de I/O: si el disco falla, el llamador recalcula.
    """

    # Prefijo para todos los archivos
    KEY_PREFIX = "psi"

    def __init__(self, cache_dir: Optional[str] = None, enabled: Optional[bool] = None) -> None:
        self._dir = Path(cache_dir or config.CACHE_DIR)
        self._enabled = config.CACHE_ENABLED if enabled is None else enabled
        self._stats = {"hits": 0, "misses": 0, "corrupted": 0, "writes": 0}

    @property
    def enabled(self) -> bool:
        return self._enabled

    @property
    def directory(self) -> Path:
        return self._dir

    def _make_key(self, ring: CoefficientRing, m: int) -> str:
        """psi_Z_5, psi_Fp31_31, ..."""
        return f"{self.KEY_PREFIX}_{ring.tag.replace(':', '')}_{m}"

    def _path(self, key: str) -> Path:
        return self._dir / f"{key}.txt"

    def get(self, ring: CoefficientRing, m: int) -> Optional[XPoly]:
        """
        Lee ψ_m del disco.

        Returns:
            El polinomio o None si no existe / está corrupto / cache apagada
        """
        if not self._enabled:
            return None
        key = self._make_key(ring, m)
        path = self._path(key)
        if not path.exists():
            self._stats["misses"] += 1
            log("Cache", f"MISS: {key}")
            return None
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
            match = _HEADER.fullmatch(lines[0].strip())
            if not match:
                raise ValueError("header inválido")
            tag, m_file, parity = match.group(1), int(match.group(2)), match.group(3) == "1"
            if tag != ring.tag or m_file != m or parity != (m % 2 == 0):
                raise ValueError(f"header no coincide: {lines[0]}")
            body = lines[1]
            if lines[2].strip() != f"md5={self.checksum(body)}":
                raise ValueError("hash no coincide")
            poly = XPoly.from_terms(ring, parse_terms(body), parity)
            self._stats["hits"] += 1
            log("Cache", f"HIT: {key}")
            return poly
        except Exception as e:
            self._stats["corrupted"] += 1
            log_error("Cache", f"Archivo corrupto {path.name}, se descarta y se recalcula: {e}")
            self.delete(ring, m)
            return None

    def set(self, ring: CoefficientRing, m: int, poly: XPoly) -> bool:
        """
        Guarda ψ_m de forma atómica.

        Returns:
            True si se guardó
        """
        if not self._enabled:
            return False
        key = self._make_key(ring, m)
        try:
            self._dir.mkdir(parents=True, exist_ok=True)
            body = poly.to_str()
            content = (
                f"ring={ring.tag} m={m} parity={1 if poly.y_parity else 0}\n"
                f"{body}\n"
                f"md5={self.checksum(body)}\n"
            )
            fd, tmp = tempfile.mkstemp(dir=self._dir, prefix=f".{key}.")
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(content)
            os.replace(tmp, self._path(key))
            self._stats["writes"] += 1
            return True
        except Exception as e:
            log_error("Cache", f"Error en set({key}): {e}")
            return False

    def delete(self, ring: CoefficientRing, m: int) -> bool:
        """Borra la entrada de ψ_m si existe (get la usa para desalojar archivos corruptos)."""
        try:
            self._path(self._make_key(ring, m)).unlink(missing_ok=True)
            return True
        except Exception as e:
            log_error("Cache", f"Error en delete: {e}")
            return False

    def clear(self) -> int:
        """Elimina todos los archivos de la cache; devuelve cuántos."""
        if not self._dir.exists():
            return 0
        count = 0
        for path in self._dir.glob(f"{self.KEY_PREFIX}_*.txt"):
            try:
                path.unlink()
                count += 1
            except Exception as e:
                log_error("Cache", f"No se pudo borrar {path.name}: {e}")
        return count

    def stats(self) -> dict[str, int]:
        return dict(self._stats)

    @staticmethod
    def checksum(body: str) -> str:
        """MD5 de la lista de términos; es la última línea de cada archivo."""
        return hashlib.md5(body.encode("utf-8")).hexdigest()


# Instancia global singleton
_cache_service: Optional[PolynomialCacheService] = None


def get_cache_service() -> PolynomialCacheService:
    """Obtiene la instancia singleton del servicio de caché."""
    global _cache_service
    if _cache_service is None:
        _cache_service = PolynomialCacheService()
    return _cache_service


def reset_cache_service(cache_dir: Optional[str] = None, enabled: Optional[bool] = None) -> PolynomialCacheService:
    """Reemplaza el singleton (CLI con --cache-dir, tests)."""
    global _cache_service
    _cache_service = PolynomialCacheService(cache_dir, enabled)
    return _cache_service
