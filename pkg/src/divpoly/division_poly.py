"""
Motor de polinomios de división ψ_m sobre ℤ[s,t] y 𝔽_p[s,t].

Curva: y² = x³ + s·x + t  (F := x³ + sx + t).

Representación: se guarda el núcleo f_m en x, con
    ψ_m = f_m        (m impar)
    ψ_m = y · f_m    (m par)
y toda potencia y² se sustituye por F en el momento. Así el recurrente
queda en polinomios en x (paridad falsa) y la paridad sólo se agrega al
devolver ψ_m.

Casos base:
    f_1 = 1,  f_2 = 2,  f_3 = 3x⁴ + 6sx² + 12tx − s²
    f_4 = 4(x⁶ + 5sx⁴ + 20tx³ − 5s²x² − 4stx − 8t² − s³)

Recurrente (m ≥ 2 para 2m+1, m ≥ 3 para 2m):
    f_{2m+1} = F²·f_{m+2}·f_m³ − f_{m−1}·f_{m+1}³          (m par)
             = f_{m+2}·f_m³ − F²·f_{m−1}·f_{m+1}³          (m impar)
    f_{2m}   = f_m·(f_{m+2}f_{m−1}² − f_{m−2}f_{m+1}²)/2    (m par)
             = F·f_m·(f_{m+2}f_{m−1}² − f_{m−2}f_{m+1}²)/2  (m impar)
La división por 2 es exacta en ℤ (se verifica) y en 𝔽_p es por 2⁻¹.

Concurrencia: cada tabla tiene un único escritor; después de ``warm`` queda
congelada y se puede compartir.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

try:
    from ..algebra.weighted_poly import ZZ, CoefficientRing, XPoly, curve_rhs, fp, x_power
    from ..cache.cache_service import PolynomialCacheService, get_cache_service
    from ..console import log
    from ..errors import ContractError, InternalInvariantError
except ImportError:
    from src.algebra.weighted_poly import ZZ, CoefficientRing, XPoly, curve_rhs, fp, x_power
    from src.cache.cache_service import PolynomialCacheService, get_cache_service
    from src.console import log
    from src.errors import ContractError, InternalInvariantError


def _base_case(ring: CoefficientRing, m: int) -> XPoly:
    if m == 1:
        return XPoly.const(ring, 1)
    if m == 2:
        return XPoly.const(ring, 2)
    if m == 3:
        return XPoly.from_terms(ring, {
            (4, 0, 0): 3, (2, 1, 0): 6, (1, 0, 1): 12, (0, 2, 0): -1,
        })
    return XPoly.from_terms(ring, {
        (6, 0, 0): 4, (4, 1, 0): 20, (3, 0, 1): 80, (2, 2, 0): -20,
        (1, 1, 1): -16, (0, 0, 2): -32, (0, 3, 0): -4,
    })


class DivPolyTable:
    """
    Memo m → f_m para un anillo de coeficientes.

    Consulta la cache en disco antes de recalcular y escribe cada entrada
    nueva; la cache guarda ψ_m con su paridad.
    """

    def __init__(
        self,
        ring: CoefficientRing,
        cache: Optional[PolynomialCacheService] = None,
    ) -> None:
        self.ring = ring
        self._cache = cache
        self._cores: dict[int, XPoly] = {}
        self._frozen = False
        self._rhs = curve_rhs(ring)
        self._rhs_sq = self._rhs * self._rhs

    @property
    def frozen(self) -> bool:
        return self._frozen

    def core(self, m: int) -> XPoly:
        """f_m (ψ_m sin el factor y)."""
        if m < 1:
            raise ContractError(f"m={m} debe ser ≥ 1")
        cached = self._cores.get(m)
        if cached is not None:
            return cached
        if self._frozen:
            raise InternalInvariantError(f"Tabla congelada: m={m} no fue precalculado")
        if self._cache is not None:
            from_disk = self._cache.get(self.ring, m)
            if from_disk is not None:
                self._cores[m] = from_disk.with_parity(False)
                return self._cores[m]
        value = self._compute(m)
        self._cores[m] = value
        if self._cache is not None:
            self._cache.set(self.ring, m, value.with_parity(m % 2 == 0))
        return value

    def _compute(self, n: int) -> XPoly:
        if n <= 4:
            return _base_case(self.ring, n)
        m = n // 2
        f = self.core
        if n % 2:
            log("DivPoly", f"{self.ring.tag}: f_{n} = f_{m+2}·f_{m}³ − f_{m-1}·f_{m+1}³")
            fm = f(m)
            fm1 = f(m + 1)
            left = f(m + 2) * fm * fm * fm
            right = f(m - 1) * fm1 * fm1 * fm1
            if m % 2 == 0:
                left = left * self._rhs_sq
            else:
                right = right * self._rhs_sq
            return left - right
        log("DivPoly", f"{self.ring.tag}: f_{n} desde f_{m-2}..f_{m+2}")
        bracket = f(m + 2) * f(m - 1) * f(m - 1) - f(m - 2) * f(m + 1) * f(m + 1)
        # el y del corchete y el de ψ_m (o y² en el corchete) se cancelan con 2y
        return (f(m) * bracket).exact_halve()

    def psi(self, m: int) -> XPoly:
        """ψ_m con su bandera de paridad (True ⇔ m par)."""
        return self.core(m).with_parity(m % 2 == 0)

    def warm(self, m_max: int) -> None:
        """Calcula f_1..f_{m_max} y congela la tabla (sólo lectura)."""
        for m in range(1, m_max + 1):
            self.core(m)
        self._frozen = True


# ── Registro de tablas por anillo ─────────────────────────────────────────

_tables: dict[str, DivPolyTable] = {}


def get_table(ring: CoefficientRing) -> DivPolyTable:
    """Tabla singleton por anillo, conectada a la cache global."""
    table = _tables.get(ring.tag)
    if table is None:
        cache = get_cache_service()
        table = DivPolyTable(ring, cache if cache.enabled else None)
        _tables[ring.tag] = table
    return table


def reset_tables() -> None:
    _tables.clear()


def division_poly(m: int, ring: CoefficientRing = ZZ) -> XPoly:
    """
    ψ_m sobre ``ring``; paridad True exactamente cuando m es par.

    Raises:
        ContractError: m < 1
    """
    if m < 1:
        raise ContractError(f"m={m} debe ser ≥ 1")
    return get_table(ring).psi(m)


def reduce_mod_p(f: XPoly, p: int) -> XPoly:
    """red_p coeficiente a coeficiente (descarta los términos que se anulan)."""
    if not f.ring.is_integer:
        raise ContractError("reduce_mod_p espera un polinomio sobre ℤ")
    return f.reduce_mod(p)


def mult_by_m_x(m: int, ring: CoefficientRing = ZZ) -> tuple[XPoly, XPoly]:
    """
    x([m]P) = numerador / denominador, ambos en x (paridad resuelta):
        numerador   = x·ψ_m² − ψ_{m−1}ψ_{m+1}
        denominador = ψ_m²

    Raises:
        ContractError: m < 2
    """
    if m < 2:
        raise ContractError(f"m={m} debe ser ≥ 2")
    table = get_table(ring)
    x = x_power(ring, 1)
    psi_m = table.psi(m)
    denominator = psi_m * psi_m
    numerator = x * denominator - table.psi(m - 1) * table.psi(m + 1)
    return numerator, denominator


@dataclass(frozen=True)
class SigmaPoly:
    """
    σ(x) = constant(x) + x̃ · linear(x), con
        constant = x·ψ_p² − ψ_{p+1}ψ_{p−1}
        linear   = −ψ_p²
    Homogéneo de peso p² con wt(x̃) = 1.
    """

    p: int
    constant: XPoly
    linear: XPoly

    @property
    def ring(self) -> CoefficientRing:
        return self.constant.ring

    @property
    def degree(self) -> int:
        return max(self.constant.degree, self.linear.degree if not self.linear.is_zero else 0)

    @property
    def leading_coefficient(self) -> int:
        """Coeficiente (escalar) de x^{p²} en la parte constante en x̃."""
        return self.constant.coefficient(self.p * self.p).terms.get((0, 0), 0)

    def reduce_mod(self, p: int) -> "SigmaPoly":
        return SigmaPoly(self.p, self.constant.reduce_mod(p), self.linear.reduce_mod(p))


def sigma_poly(p: int, ring: Optional[CoefficientRing] = None) -> SigmaPoly:
    """
    σ sobre ℤ por defecto; ``ring=fp(p)`` la calcula directamente mod p.

    Raises:
        ContractError: p < 5 o no primo
    """
    fp(p)  # valida p
    ring = ring or ZZ
    table = get_table(ring)
    x = x_power(ring, 1)
    psi_p = table.psi(p)
    square = psi_p * psi_p
    constant = x * square - table.psi(p + 1) * table.psi(p - 1)
    return SigmaPoly(p, constant, -square)
