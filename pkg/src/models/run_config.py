"""
RunConfig: configuración validada de una corrida de la CLI.

Cualquier ValidationError se traduce a error de uso (exit code 2).
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator
from sympy import isprime

try:
    from .. import config
except ImportError:
    from src import config


class RunConfig(BaseModel):
    """
    Attributes:
        primes:    primos a verificar (todos ≥ 5)
        n_max:     profundidad de la torre / del especializador
        seed:      semilla de factorización y muestreo
        budget:    preset de presupuesto ("low" | "medium" | "high")
        cache_dir: directorio de la cache de ψ (None → config)
        output:    archivo de salida (None → stdout)
        format:    "json" | "text" (TOON)
        q:         orden del cuerpo del especializador (potencia de primes[0])
        samples:   curvas ordinarias a muestrear
    """

    primes: list[int]
    n_max: int = 1
    seed: int = Field(default_factory=lambda: config.DEFAULT_SEED)
    budget: str = Field(default_factory=lambda: config.DEFAULT_BUDGET)
    cache_dir: Optional[str] = None
    output: Optional[str] = None
    format: Literal["json", "text"] = "json"
    q: Optional[int] = None
    samples: int = 0

    model_config = {"extra": "forbid", "validate_assignment": True}

    @field_validator("primes")
    @classmethod
    def _primes_valid(cls, value: list[int]) -> list[int]:
        if not value:
            raise ValueError("Se necesita al menos un primo")
        for p in value:
            if p < 5 or not isprime(p):
                raise ValueError(f"p={p} debe ser primo y ≥ 5")
        return value

    @field_validator("n_max")
    @classmethod
    def _n_valid(cls, value: int) -> int:
        if value < 1:
            raise ValueError("n_max debe ser ≥ 1")
        return value

    @field_validator("samples")
    @classmethod
    def _samples_valid(cls, value: int) -> int:
        if value < 0:
            raise ValueError("samples debe ser ≥ 0")
        return value

    @field_validator("budget")
    @classmethod
    def _budget_valid(cls, value: str) -> str:
        if value not in config.BUDGET_PRESETS:
            raise ValueError(
                f"Presupuesto '{value}' no existe. Disponibles: {list(config.BUDGET_PRESETS.keys())}"
            )
        return value

    @model_validator(mode="after")
    def _q_power_of_p(self) -> "RunConfig":
        if self.q is None:
            return self
        p = self.primes[0]
        rest = self.q
        while rest % p == 0 and rest > 1:
            rest //= p
        if rest != 1 or self.q < p:
            raise ValueError(f"q={self.q} debe ser potencia de p={p}")
        return self

    @property
    def budget_limit(self) -> int:
        return config.BUDGET_PRESETS[self.budget]
