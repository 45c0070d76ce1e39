"""
Verification Models: Pydantic models de los reportes del verificador.

Cada primo genera un VerificationReport con un CheckResult por claim
habilitado, en el orden del registry. Las fallas científicas viajan como
status + witness; nunca como excepciones.
"""

from __future__ import annotations

import hashlib
import json
from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field


class CheckStatus(str, Enum):
    """Resultado de un chequeo."""
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


class CheckResult(BaseModel):
    id: str
    status: CheckStatus
    witness: dict[str, Any] = Field(default_factory=dict)
    millis: int = 0

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS


class EisensteinCertificate(BaseModel):
    """
    Primo Q y órdenes ord_Q de los coeficientes.

    Un orden None significa coeficiente nulo (orden infinito, cuenta como ≥ 1).
    En el certificado de η ``ord_lead`` es None: la valuación del término
    principal queda fuera de lo que se computa acá.
    """

    p: int
    kind: str                      # "theta" | "eta"
    Q: str
    ord_lead: Optional[int] = None
    ord_middle: list[Optional[int]] = Field(default_factory=list)
    ord_const: Optional[int] = None

    @property
    def holds(self) -> bool:
        if self.kind == "theta" and self.ord_lead != 1:
            return False
        if not self.ord_middle and self.p >= 5:
            return False
        middles_ok = all(o is None or o >= 1 for o in self.ord_middle)
        return middles_ok and self.ord_const == 0


class LedgerRow(BaseModel):
    floor: str
    separable: int
    inseparable: int


class DegreeLedger(BaseModel):
    """Grados separable / inseparable piso por piso de la torre de p^n-división."""

    p: int
    n: int
    rows: list[LedgerRow] = Field(default_factory=list)
    certified: bool = False

    @property
    def totals(self) -> tuple[int, int]:
        sep, insep = 1, 1
        for row in self.rows:
            sep *= row.separable
            insep *= row.inseparable
        return sep, insep

    def to_payload(self) -> dict:
        payload = self.model_dump()
        sep, insep = self.totals
        payload["totals"] = {"separable": sep, "inseparable": insep, "degree": sep * insep}
        return payload


class VerificationReport(BaseModel):
    """Reporte de un primo: {p, n, checks, versions}."""

    p: int
    n: int
    checks: list[CheckResult] = Field(default_factory=list)
    versions: dict[str, str] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failing_ids(self) -> list[str]:
        return [check.id for check in self.checks if not check.passed]

    def get(self, check_id: str) -> CheckResult:
        for check in self.checks:
            if check.id == check_id:
                return check
        raise KeyError(
            f"Check '{check_id}' no está en el reporte. "
            f"Disponibles: {[c.id for c in self.checks]}"
        )

    def to_payload(self) -> dict:
        return self.model_dump(mode="json")

    def content_hash(self) -> str:
        """SHA256 del payload canónico; igual config ⇒ igual hash."""
        payload = json.dumps(self.to_payload(), sort_keys=True, default=str)
        return hashlib.sha256(payload.encode()).hexdigest()
