"""
Specialization Models: Pydantic models de los reportes del especializador.

Un SampleReport por curva muestreada, con una fila por n; el
SpecializationReport agrupa la corrida completa de un (p, q).
"""

from typing import Any, Optional

from pydantic import BaseModel, Field


class LevelResult(BaseModel):
    """Predicción vs observación para un n."""

    n: int
    unit_root: int
    predicted_degree: int          # orden de u en (ℤ/p^n)^×
    predicted_x_degree: int        # mínimo d con u^d ≡ ±1
    observed_x_degree: int
    observed_point_degree: int
    level_degrees: list[int] = Field(default_factory=list)
    y_in_same_field: bool
    order_ok: bool
    rho_check: bool
    divides_group_order: bool

    @property
    def matches(self) -> bool:
        return (
            self.predicted_degree == self.observed_point_degree
            and self.predicted_x_degree == self.observed_x_degree
            and self.order_ok
            and self.rho_check
            and self.divides_group_order
        )


class SpotCheck(BaseModel):
    """ψ_m especializado: libre de cuadrados y raíces = x de la m-torsión."""

    m: int
    squarefree: bool
    roots_match: bool


class SampleReport(BaseModel):
    curve: dict[str, Any]
    count: int
    trace: int
    classification: str
    classify_consistent: bool
    j_invariant: Any
    levels: list[LevelResult] = Field(default_factory=list)
    spot_checks: list[SpotCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.classify_consistent
            and all(level.matches for level in self.levels)
            and all(sc.squarefree and sc.roots_match for sc in self.spot_checks)
        )


class SpecializationReport(BaseModel):
    """Corrida completa: muestras ordinarias + estadística de grado máximo."""

    p: int
    q: int
    n_max: int
    seed: int
    samples_requested: int
    supersingular_skipped: int = 0
    samples: list[SampleReport] = Field(default_factory=list)
    max_degree_n1: Optional[int] = None
    full_group_realized: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return all(sample.passed for sample in self.samples)

    def to_payload(self) -> dict:
        """Dict listo para serializar (incluye el veredicto)."""
        payload = self.model_dump()
        payload["passed"] = self.passed
        for sample, raw in zip(self.samples, payload["samples"]):
            raw["passed"] = sample.passed
            for level, raw_level in zip(sample.levels, raw["levels"]):
                raw_level["matches"] = level.matches
        return payload
