"""
ClaimRegistry: Claims del verificador con versión + integridad SHA256.

Carga claims.yaml como fuente de verdad. Cada Claim tiene:
  - id         : identificador del chequeo (clave del YAML)
  - description: qué se verifica
  - version    : semver string
  - enabled    : si run_all lo ejecuta
  - hash       : SHA256[:16] del contenido canónico

El hash del registry completo es ``versions.code`` en cada reporte: si
alguien edita un claim sin bump de versión, el fingerprint cambia igual.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Optional

import yaml


class Claim:
    """Un chequeo del verificador."""

    def __init__(self, claim_id: str, data: dict) -> None:
        self.id = claim_id
        self.description = " ".join(str(data.get("description", "")).split())
        self.version = str(data["version"])
        self.enabled = bool(data.get("enabled", True))
        self.hash = hashlib.sha256(self.canonical().encode("utf-8")).hexdigest()[:16]

    def canonical(self) -> str:
        return json.dumps(
            {
                "id": self.id,
                "description": self.description,
                "version": self.version,
                "enabled": self.enabled,
            },
            sort_keys=True,
            ensure_ascii=False,
        )

    def __repr__(self) -> str:
        return f"<Claim id={self.id} v={self.version} hash={self.hash}>"


class ClaimRegistry:
    """
    Singleton a nivel de módulo: usar get_claim_registry().
    """

    def __init__(self, registry_path: Optional[str] = None) -> None:
        if registry_path is None:
            registry_path = str(Path(__file__).parent / "claims.yaml")
        self._path = Path(registry_path)
        self._claims: dict[str, Claim] = {}
        self._load()

    def _load(self) -> None:
        if not self._path.exists():
            raise FileNotFoundError(
                f"Claim registry no encontrado en: {self._path}\n"
                "Asegurate de que src/verification/claims.yaml exista."
            )
        with open(self._path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
        if not data:
            raise ValueError("El claims.yaml está vacío.")
        # yaml.safe_load preserva el orden del archivo
        for claim_id, entry in data.items():
            self._claims[claim_id] = Claim(claim_id, entry)

    def get(self, claim_id: str) -> Claim:
        if claim_id not in self._claims:
            raise KeyError(
                f"Claim '{claim_id}' no encontrado en registry. "
                f"Disponibles: {list(self._claims.keys())}"
            )
        return self._claims[claim_id]

    def ids(self) -> list[str]:
        return list(self._claims.keys())

    def enabled_ids(self) -> list[str]:
        """Claims habilitados en orden de registry."""
        return [cid for cid, claim in self._claims.items() if claim.enabled]

    @property
    def hash(self) -> str:
        """SHA256[:16] de todos los claims, en orden."""
        joined = "\n".join(claim.canonical() for claim in self._claims.values())
        return hashlib.sha256(joined.encode("utf-8")).hexdigest()[:16]

    def list_claims(self) -> list[dict]:
        return [
            {
                "id": claim.id,
                "version": claim.version,
                "enabled": claim.enabled,
                "hash": claim.hash,
            }
            for claim in self._claims.values()
        ]


# --------------------------------------------------------------------------
# Singleton a nivel de módulo
# --------------------------------------------------------------------------

_registry: Optional[ClaimRegistry] = None


def get_claim_registry() -> ClaimRegistry:
    """Retorna el singleton de ClaimRegistry, inicializándolo si es necesario."""
    global _registry
    if _registry is None:
        _registry = ClaimRegistry()
    return _registry
