"""
θ y η: los datos de división mod p escritos como polinomios en X = x^p.

    θ(x^p) = ψ̄_p(x)            X-grado (p−1)/2
    η(x^p) = σ̄(x)              mónico de X-grado p

Índices (el subíndice de cada coeficiente es su peso):
    θ(X) = a_{(p−1)/2} X^{(p−1)/2} + Σ_{i=1}^{(p−3)/2} a_{(p−1)/2+pi} X^{(p−1)/2−i} + a_{(p²−1)/2}
    η(X) = X^p + Σ_{i=1}^{p} (b_{pi} + x̃·c_{pi−1}) X^{p−i}

Un monomio x^d con p ∤ d ("stray") o un coeficiente con peso equivocado
es un hallazgo que se reporta; la extracción no lanza excepciones por eso.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

try:
    from .. import config
    from ..algebra.weighted_poly import INHOMOGENEOUS, WeightedBivar, XPoly, fp, weight_of
    from ..console import log
    from ..errors import BudgetExceededError, ContractError
    from .division_poly import division_poly, sigma_poly
except ImportError:
    from src import config
    from src.algebra.weighted_poly import INHOMOGENEOUS, WeightedBivar, XPoly, fp, weight_of
    from src.console import log
    from src.errors import BudgetExceededError, ContractError
    from src.divpoly.division_poly import division_poly, sigma_poly


# ── Presupuesto ───────────────────────────────────────────────────────────

def estimate_size(p: int) -> int:
    """x-grado de ψ̄_p, la medida de costo que se compara con el presupuesto."""
    return (p * p - 1) // 2


def check_budget(p: int, budget: Optional[str] = None) -> None:
    """
    Raises:
        BudgetExceededError: (p²−1)/2 supera el preset
        ContractError: preset desconocido
    """
    name = budget or config.DEFAULT_BUDGET
    if name not in config.BUDGET_PRESETS:
        raise ContractError(
            f"Presupuesto '{name}' no existe. Disponibles: {list(config.BUDGET_PRESETS.keys())}"
        )
    limit = config.BUDGET_PRESETS[name]
    estimate = estimate_size(p)
    if estimate > limit:
        raise BudgetExceededError(
            f"p={p} demasiado grande para el presupuesto '{name}': "
            f"x-grado {estimate} > {limit}",
            estimate=estimate,
            limit=limit,
        )


def _weight_mismatches(coeffs: dict[int, WeightedBivar]) -> list[int]:
    bad = []
    for k, wb in sorted(coeffs.items()):
        if wb.is_zero:
            continue
        w = weight_of(wb)
        if w == INHOMOGENEOUS or w != k:
            bad.append(k)
    return bad


# ── θ ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ThetaData:
    """Coeficientes a_k de θ, indexados por peso."""

    p: int
    a: dict[int, WeightedBivar]
    stray_exponents: tuple[int, ...] = ()
    weight_mismatches: tuple[int, ...] = ()

    @property
    def lead_index(self) -> int:
        return (self.p - 1) // 2

    @property
    def const_index(self) -> int:
        return (self.p * self.p - 1) // 2

    @property
    def middle_indices(self) -> list[int]:
        return [self.lead_index + self.p * i for i in range(1, (self.p - 3) // 2 + 1)]

    @property
    def lead(self) -> WeightedBivar:
        return self.a[self.lead_index]

    @property
    def const(self) -> WeightedBivar:
        return self.a[self.const_index]

    @property
    def x_degree(self) -> int:
        """X-grado de θ."""
        nonzero = [self._x_power(k) for k, wb in self.a.items() if not wb.is_zero]
        return max(nonzero) if nonzero else 0

    @property
    def is_valid(self) -> bool:
        return (
            not self.stray_exponents
            and not self.weight_mismatches
            and not self.lead.is_zero
            and self.x_degree == self.lead_index
        )

    def _x_power(self, k: int) -> int:
        """Exponente de X que lleva a_k."""
        return (self.const_index - k) // self.p

    def reassemble(self) -> XPoly:
        """θ(x^p) como XPoly en x."""
        ring = fp(self.p)
        terms = {}
        for k, wb in self.a.items():
            d = self.p * self._x_power(k)
            for (es, et), c in wb.terms.items():
                terms[(d, es, et)] = c
        return XPoly.from_terms(ring, terms)

    def to_json(self) -> dict:
        return {f"a{k}": self.a[k].to_str() for k in sorted(self.a)}


def extract_theta(p: int) -> ThetaData:
    """
    Reindexa ψ̄_p = ψ_p mod p como polinomio en X = x^p.

    Raises:
        ContractError: p no primo o p < 5
    """
    ring = fp(p)
    psi_bar = division_poly(p, ring)
    log("Theta", f"p={p}: ψ̄_p con {psi_bar.term_count()} términos")
    strays = tuple(d for d, wb in enumerate(psi_bar.coeffs) if d % p and not wb.is_zero)
    const_index = (p * p - 1) // 2
    a: dict[int, WeightedBivar] = {}
    for i in range((p - 1) // 2 + 1):
        a[const_index - p * i] = psi_bar.coefficient(p * i)
    mismatches = tuple(_weight_mismatches(a))
    if strays or mismatches:
        log("Theta", f"p={p}: estructura rota (strays={strays[:5]}, pesos={mismatches})")
    return ThetaData(p, a, strays, mismatches)


# ── η ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class EtaData:
    """b_{pi} (parte constante en x̃) y c_{pi−1} (parte lineal), i = 1..p."""

    p: int
    b: dict[int, WeightedBivar]
    c: dict[int, WeightedBivar]
    monic: bool = True
    stray_exponents: tuple[int, ...] = ()
    weight_mismatches: tuple[int, ...] = ()
    top_linear_vanishes: bool = True

    @property
    def x_degree(self) -> int:
        return self.p

    @property
    def is_valid(self) -> bool:
        return (
            self.monic
            and self.top_linear_vanishes
            and not self.stray_exponents
            and not self.weight_mismatches
        )

    def c_part(self) -> XPoly:
        """Σ c_{pi−1} x^{p²−pi}: la parte lineal en x̃ de σ̄ devuelta a x."""
        p = self.p
        terms = {}
        for i in range(1, p + 1):
            d = p * p - p * i
            for (es, et), coef in self.c[p * i - 1].terms.items():
                terms[(d, es, et)] = coef
        return XPoly.from_terms(fp(p), terms)

    def b_part(self) -> XPoly:
        """x^{p²} + Σ b_{pi} x^{p²−pi}."""
        p = self.p
        terms = {(p * p, 0, 0): 1}
        for i in range(1, p + 1):
            d = p * p - p * i
            for (es, et), coef in self.b[p * i].terms.items():
                terms[(d, es, et)] = coef
        return XPoly.from_terms(fp(p), terms)

    def to_json(self) -> dict:
        return {
            "b": {f"b{k}": self.b[k].to_str() for k in sorted(self.b)},
            "c": {f"c{k}": self.c[k].to_str() for k in sorted(self.c)},
        }


def extract_eta(p: int) -> EtaData:
    """
    Calcula σ̄ directamente en 𝔽_p[s,t] y lo parte en b / c.

    Raises:
        ContractError: p no primo o p < 5
    """
    ring = fp(p)
    sigma = sigma_poly(p, ring)
    constant, linear = sigma.constant, sigma.linear
    log("Eta", f"p={p}: σ̄ de x-grado {constant.degree}")

    strays = sorted(
        {d for d, wb in enumerate(constant.coeffs) if d % p and not wb.is_zero}
        | {d for d, wb in enumerate(linear.coeffs) if d % p and not wb.is_zero}
    )
    top = constant.coefficient(p * p)
    monic = constant.degree == p * p and top == WeightedBivar.const(ring, 1)
    top_linear_vanishes = linear.coefficient(p * p).is_zero

    b: dict[int, WeightedBivar] = {}
    c: dict[int, WeightedBivar] = {}
    for i in range(1, p + 1):
        d = p * p - p * i
        b[p * i] = constant.coefficient(d)
        c[p * i - 1] = linear.coefficient(d)
    mismatches = tuple(_weight_mismatches(b) + _weight_mismatches(c))
    return EtaData(p, b, c, monic, tuple(strays), mismatches, top_linear_vanishes)


# ── Relación de los c ─────────────────────────────────────────────────────

@dataclass(frozen=True)
class CRelation:
    """
    Resultado de comparar la parte en x̃ de η con −ψ̄_p².

    ``normalization`` indica con qué coeficiente principal cumplen los
    datos: "lead_squared" (−a_lead² · x^{p(p−1)}) o "monic" (−x^{p(p−1)}).
    """

    p: int
    holds: bool
    residual: XPoly
    const_relation: bool
    normalization: str = field(default="lead_squared")


def check_c_relation(
    p: int,
    theta: Optional[ThetaData] = None,
    eta: Optional[EtaData] = None,
) -> CRelation:
    """
    Σ_{i=1}^{p−1} c_{pi−1} x^{p²−pi} + c_{p²−1} = −(ψ̄_p(x))², exacto.

    También verifica c_{p²−1} = −a²_{(p²−1)/2}. Acepta datos ya extraídos
    (o alterados a propósito) para los controles negativos.
    """
    theta = theta or extract_theta(p)
    eta = eta or extract_eta(p)
    psi_bar = theta.reassemble()
    target = -(psi_bar * psi_bar)
    c_part = eta.c_part()
    residual = c_part - target
    const_relation = eta.c[p * p - 1] == -(theta.const * theta.const)

    normalization = "lead_squared"
    top_degree = p * (p - 1)
    top = c_part.coefficient(top_degree)
    if top == WeightedBivar.const(fp(p), -1):
        normalization = "monic"
    elif top != -(theta.lead * theta.lead):
        normalization = "other"
    return CRelation(p, residual.is_zero and const_relation, residual, const_relation, normalization)
