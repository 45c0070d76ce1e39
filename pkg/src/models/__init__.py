"""
Models package: Modelos Pydantic del proyecto.

Contiene:
- run_config: configuración validada de la CLI
- specialization: reportes del especializador
"""

from .run_config import RunConfig
from .specialization import LevelResult, SampleReport, SpecializationReport, SpotCheck

__all__ = [
    "RunConfig",
    "LevelResult",
    "SampleReport",
    "SpecializationReport",
    "SpotCheck",
]
