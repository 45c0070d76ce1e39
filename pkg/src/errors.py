"""
Jerarquía de errores del verificador.

Las fallas "científicas" (un monomio fuera de lugar, rutas de f_ss que no
coinciden, un patrón de Eisenstein roto) NO son excepciones: se registran
como entradas del reporte. Estas clases cubren violaciones de contrato,
presupuesto y errores internos.
"""

from typing import Any


class VerifierError(Exception):
    """Base de todos los errores del paquete."""


class ContractError(VerifierError, ValueError):
    """Precondición violada (p no primo, m < 1, polinomio cero, ...)."""


class DivisibilityError(ContractError):
    """División exacta con resto no nulo; el resto viaja en la excepción."""

    def __init__(self, message: str, remainder: Any = None) -> None:
        super().__init__(message)
        self.remainder = remainder


class InhomogeneousError(ContractError):
    """Se pidió una operación que exige homogeneidad de peso."""


class BudgetExceededError(VerifierError, RuntimeError):
    """El cómputo supera el presupuesto configurado."""

    def __init__(self, message: str, estimate: int = 0, limit: int = 0) -> None:
        super().__init__(message)
        self.estimate = estimate
        self.limit = limit


class InternalInvariantError(VerifierError, RuntimeError):
    """Un invariante interno que nunca debería fallar, falló."""
