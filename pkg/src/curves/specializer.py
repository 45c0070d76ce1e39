"""
Especializaciones (s, t) = (s₀, t₀) ∈ 𝔽_q²: curvas concretas donde se
contrasta la acción de Frobenius sobre E[p^n] con el grupo (ℤ/p^nℤ)^×.

Para una curva ordinaria con traza a, la raíz unidad u de T² − aT + q
mod p^n da la acción de Frobenius sobre los puntos de orden p^n:
    grado de P_n sobre 𝔽_q   = orden de u en (ℤ/p^n)^×
    grado de x_n sobre 𝔽_q   = mínimo d con u^d ≡ ±1 (mod p^n)
La torre construye x_1, ..., x_n con raíces de θ y η especializados
(cada nivel es una extensión L_k = L_{k−1}[X]/(g_k)) y compara ambos
grados con la predicción.

Los cuerpos finitos son perfectos: el grado inseparable p^n no tiene
análogo acá, sólo se contrastan las predicciones del lado separable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Optional

from sympy import n_order

try:
    from .. import config
    from ..algebra.finite_field import ExtField, FiniteField, field_make
    from ..algebra.unipoly import UniPoly, poly_factor, roots_in, squarefree_decomposition
    from ..algebra.weighted_poly import fp
    from ..console import log
    from ..divpoly.division_poly import division_poly
    from ..divpoly.frobenius_form import EtaData, ThetaData, extract_eta, extract_theta
    from ..errors import BudgetExceededError, ContractError, InternalInvariantError
    from ..models.specialization import LevelResult, SampleReport, SpecializationReport, SpotCheck
    from .group_law import WeierstrassGroup, has_exact_order, x_multiple
    from .supersingular import supersingular_table
except ImportError:
    from src import config
    from src.algebra.finite_field import ExtField, FiniteField, field_make
    from src.algebra.unipoly import UniPoly, poly_factor, roots_in, squarefree_decomposition
    from src.algebra.weighted_poly import fp
    from src.console import log
    from src.divpoly.division_poly import division_poly
    from src.divpoly.frobenius_form import EtaData, ThetaData, extract_eta, extract_theta
    from src.errors import BudgetExceededError, ContractError, InternalInvariantError
    from src.models.specialization import LevelResult, SampleReport, SpecializationReport, SpotCheck
    from src.curves.group_law import WeierstrassGroup, has_exact_order, x_multiple
    from src.curves.supersingular import supersingular_table

FINITE_FIELD_NOTE = (
    "Los cuerpos finitos son perfectos: los grados inseparables no tienen análogo acá. "
    "Sólo se contrastan las predicciones del lado separable; los cuerpos finitos no "
    "son hilbertianos, así que estas muestras ilustran y no verifican el teorema."
)


# ── Curva ─────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class CurveSpec:
    """E_{s₀,t₀}: y² = x³ + s₀x + t₀ sobre 𝔽_q, no singular."""

    field: FiniteField
    s0: Any
    t0: Any

    def __post_init__(self) -> None:
        if self.field.is_zero(self.disc):
            raise ContractError(f"Curva singular: 4s₀³ + 27t₀² = 0 (s₀={self.s0}, t₀={self.t0})")

    @property
    def disc(self) -> Any:
        F = self.field
        return F.add(F.mul(F.from_int(4), F.pow(self.s0, 3)), F.mul(F.from_int(27), F.square(self.t0)))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def j_invariant(self) -> Any:
        """j = 1728 · 4s₀³ / (4s₀³ + 27t₀²)."""
        F = self.field
        four_s3 = F.mul(F.from_int(4), F.pow(self.s0, 3))
        return F.div(F.mul(F.from_int(1728), four_s3), self.disc)

    def rhs(self, x: Any, target: Optional[FiniteField] = None) -> Any:
        L = target or self.field
        s0 = L.lift(self.s0, self.field)
        t0 = L.lift(self.t0, self.field)
        return L.add(L.mul(L.add(L.square(x), s0), x), t0)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "s0": self.field.to_json(self.s0),
            "t0": self.field.to_json(self.t0),
        }


def make_curve(q: int, s0: int, t0: int) -> CurveSpec:
    """Atajo para 𝔽_p (q primo) con s₀, t₀ enteros."""
    F = field_make(q, 1)
    return CurveSpec(F, F.from_int(s0), F.from_int(t0))


def twist(c: CurveSpec, d: Any) -> CurveSpec:
    """
    Twist cuadrático (s₀, t₀) ↦ (d²s₀, d³t₀).

    Raises:
        ContractError: d = 0
    """
    F = c.field
    if F.is_zero(d):
        raise ContractError("El twist requiere d ≠ 0")
    return CurveSpec(F, F.mul(F.square(d), c.s0), F.mul(F.pow(d, 3), c.t0))


# ── Conteo y clasificación ────────────────────────────────────────────────

def count_points(c: CurveSpec, budget: Optional[int] = None) -> int:
    """
    #E(𝔽_q) por enumeración de x con test de residuo cuadrático.

    Raises:
        BudgetExceededError: q > presupuesto
    """
    limit = budget or config.POINT_COUNT_BUDGET
    if c.q > limit:
        raise BudgetExceededError(
            f"q={c.q} supera el presupuesto de conteo {limit}", estimate=c.q, limit=limit
        )
    F = c.field
    total = 1
    for x in F.elements():
        value = c.rhs(x)
        if F.is_zero(value):
            total += 1
        elif F.is_square(value):
            total += 2
    return total


def trace_of(c: CurveSpec, count: Optional[int] = None) -> int:
    count = count_points(c) if count is None else count
    return c.q + 1 - count


@dataclass(frozen=True)
class Classification:
    kind: str  # "ordinary" | "supersingular"
    trace: int
    lead_vanishes: bool
    j_supersingular: bool
    consistent: bool


def classify(c: CurveSpec, theta: Optional[ThetaData] = None, count: Optional[int] = None) -> Classification:
    """
    ordinaria ⇔ traza ≢ 0 (mod p), contrastado con a_{(p−1)/2}(s₀, t₀) y
    con la tabla supersingular (j ∈ J_ss).
    """
    p = c.p
    F = c.field
    trace = trace_of(c, count)
    kind = "ordinary" if trace % p else "supersingular"

    theta = theta or extract_theta(p)
    lead_vanishes = F.is_zero(theta.lead.evaluate(F, c.s0, c.t0))

    table = supersingular_table(p)
    j = c.j_invariant
    if F.is_zero(j):
        j_ss = bool(table.e3)
    elif j == F.from_int(1728):
        j_ss = bool(table.e4)
    else:
        j_ss = F.is_zero(table.fss.evaluate(j, F)) if table.fss.degree > 0 else False

    supersingular = kind == "supersingular"
    consistent = (lead_vanishes == supersingular) and (j_ss == supersingular)
    return Classification(kind, trace, lead_vanishes, j_ss, consistent)


# ── Raíz unidad ───────────────────────────────────────────────────────────

def _unit_root_from_trace(trace: int, q: int, p: int, n: int) -> int:
    """Raíz unidad de T² − aT + q mod p^n por Newton desde a mod p."""
    modulus = p ** n
    u = trace % p
    for _ in range(n.bit_length() + 1):
        f_u = (u * u - trace * u + q) % modulus
        if f_u == 0:
            break
        u = (u - f_u * pow(2 * u - trace, -1, modulus)) % modulus
    if (u * u - trace * u + q) % modulus:
        raise InternalInvariantError(f"Newton no convergió mod {p}^{n}")
    return u


def frobenius_unit_root(c: CurveSpec, n: int, count: Optional[int] = None) -> int:
    """
    Raíz unidad u del polinomio de Frobenius de ``c`` reducida mod p^n.

    Raises:
        ContractError: curva supersingular (a ≡ 0 mod p) o n < 1
    """
    if n < 1:
        raise ContractError(f"n={n} debe ser ≥ 1")
    trace = trace_of(c, count)
    if trace % c.p == 0:
        raise ContractError("Curva supersingular: no hay raíz unidad")
    return _unit_root_from_trace(trace, c.q, c.p, n)


def x_degree_of_unit(u: int, modulus: int) -> int:
    """Mínimo d con u^d ≡ ±1 (mod modulus)."""
    order = n_order(u, modulus)
    minus = modulus - 1
    acc = 1
    for d in range(1, order + 1):
        acc = acc * u % modulus
        if acc in (1, minus):
            return d
    return order


@dataclass(frozen=True)
class FrobeniusData:
    curve: CurveSpec
    count: int
    trace: int
    ordinary: bool
    n: int
    unit_root_mod_pn: Optional[int] = None
    predicted_degree: Optional[int] = None
    predicted_x_degree: Optional[int] = None


def frobenius_data(c: CurveSpec, n: int, count: Optional[int] = None) -> FrobeniusData:
    count = count_points(c) if count is None else count
    trace = c.q + 1 - count
    if trace % c.p == 0:
        return FrobeniusData(c, count, trace, False, n)
    modulus = c.p ** n
    u = _unit_root_from_trace(trace, c.q, c.p, n)
    return FrobeniusData(
        c, count, trace, True, n,
        unit_root_mod_pn=u,
        predicted_degree=n_order(u, modulus),
        predicted_x_degree=x_degree_of_unit(u, modulus),
    )


# ── Torre de torsión ──────────────────────────────────────────────────────

@dataclass(frozen=True)
class TorsionWitness:
    """Cadena x_1, ..., x_n y los grados observados sobre 𝔽_q."""

    n: int
    x_degree: int
    point_degree: int
    y_in_same_field: bool
    level_degrees: tuple[int, ...]
    x_chain: tuple
    order_ok: bool
    rho_check: bool


def _theta_specialized(theta: ThetaData, c: CurveSpec) -> UniPoly:
    F = c.field
    coeffs = [F.zero] * (theta.lead_index + 1)
    for k, wb in theta.a.items():
        coeffs[theta._x_power(k)] = wb.evaluate(F, c.s0, c.t0)
    return UniPoly(F, coeffs, "X")


def _eta_specialized(eta: EtaData, c: CurveSpec, L: FiniteField, x_tilde: Any) -> UniPoly:
    p = eta.p
    s0 = L.lift(c.s0, c.field)
    t0 = L.lift(c.t0, c.field)
    coeffs = [L.zero] * (p + 1)
    coeffs[p] = L.one
    for i in range(1, p + 1):
        b = eta.b[p * i].evaluate(L, s0, t0)
        cc = eta.c[p * i - 1].evaluate(L, s0, t0)
        coeffs[p - i] = L.add(b, L.mul(x_tilde, cc))
    return UniPoly(L, coeffs, "X")


def _adjoin_root(L: FiniteField, f: UniPoly, seed: int, level: int) -> tuple[FiniteField, Any]:
    """Primer factor irreducible de f: (cuerpo con una raíz, la raíz)."""
    factors = poly_factor(f, seed)
    if not factors:
        raise InternalInvariantError("Polinomio constante en la torre")
    g = factors[0][0]
    if g.degree == 1:
        return L, L.neg(g.coeffs[0])
    ext = ExtField(L, g.coeffs, name=f"X{level}", assume_irreducible=True)
    return ext, ext.gen


def torsion_tower(
    c: CurveSpec,
    n: int,
    u: int,
    theta: Optional[ThetaData] = None,
    eta: Optional[EtaData] = None,
    seed: int = 0,
    budget: Optional[int] = None,
) -> TorsionWitness:
    """
    x_1 desde θ especializado (X = x^p, y x = X^{1/p}); x_{k+1} desde η
    especializado en x̃ = x_k. Valida orden exacto p^n y x_n^q = x([u]P_n).

    Raises:
        ContractError: n < 1 o u no es unidad mod p
        BudgetExceededError: el grado absoluto previsto de la torre, [𝔽_q:𝔽_p]·d,
            supera el presupuesto
    """
    if n < 1:
        raise ContractError(f"n={n} debe ser ≥ 1")
    p = c.p
    F = c.field
    if u % p == 0:
        raise ContractError(f"u={u} no es unidad mod {p}")
    limit = budget or config.TOWER_DEGREE_BUDGET
    estimate = F.absolute_degree * x_degree_of_unit(u, p ** n)
    if estimate > limit:
        raise BudgetExceededError(
            f"Torre de grado {estimate} sobre 𝔽_{p} supera el presupuesto {limit}",
            estimate=estimate,
            limit=limit,
        )
    theta = theta or extract_theta(p)

    L, X = _adjoin_root(F, _theta_specialized(theta, c), seed, 1)
    x = L.pth_root(X)
    chain = [L.to_json(x)]
    levels = [L.absolute_degree // F.absolute_degree]
    for k in range(2, n + 1):
        eta = eta or extract_eta(p)
        L_next, X = _adjoin_root(L, _eta_specialized(eta, c, L, x), seed, k)
        x = L_next.pth_root(X)
        L = L_next
        chain.append(L.to_json(x))
        levels.append(L.absolute_degree // F.absolute_degree)

    x_degree = levels[-1]
    y_same = L.is_square(c.rhs(x, L))
    s0 = L.lift(c.s0, F)
    t0 = L.lift(c.t0, F)
    order_ok = has_exact_order(L, s0, t0, x, p, n)
    rho = L.pow(x, F.order) == x_multiple(L, s0, t0, x, u)
    log("Specialize", f"{c.to_json()} n={n}: grado x={x_degree}, y en el mismo cuerpo={y_same}")
    return TorsionWitness(
        n=n,
        x_degree=x_degree,
        point_degree=x_degree * (1 if y_same else 2),
        y_in_same_field=y_same,
        level_degrees=tuple(levels),
        x_chain=tuple(chain),
        order_ok=order_ok,
        rho_check=rho,
    )


# ── Controles puntuales de ψ_m ────────────────────────────────────────────

def divpoly_spot_check(c: CurveSpec, m: int) -> tuple[bool, bool]:
    """
    (libre de cuadrados, raíces = x de la m-torsión) para ψ_m especializado.

    Sólo sobre 𝔽_p: la torsión se enumera en E(𝔽_{p²}), donde todo x ∈ 𝔽_p
    tiene su y.

    Raises:
        ContractError: q no primo o p | m
    """
    F = c.field
    if not F.is_prime:
        raise ContractError("El control puntual requiere q primo")
    if m % c.p == 0:
        raise ContractError(f"p={c.p} divide a m={m}")
    core = division_poly(m, fp(c.p)).specialize(F, c.s0, c.t0)
    if m % 2 == 0:
        cubic = UniPoly(F, [c.t0, c.s0, F.zero, F.one], "x")
        core = core * cubic
    squarefree = all(mult == 1 for _, mult in squarefree_decomposition(core))
    roots = roots_in(core)

    F2 = field_make(c.p, 2)
    group = WeierstrassGroup(F2, F2.lift(c.s0, F), F2.lift(c.t0, F))
    torsion = [F2.as_prime(x) for x in group.torsion_x_coordinates(m)]
    rational = sorted(x for x in torsion if x is not None)
    return squarefree, roots == rational


# ── Muestreo ──────────────────────────────────────────────────────────────

class Specializer:
    """
    Corre muestras de curvas ordinarias sobre 𝔽_q para un primo.

    Memoiza por (s₀, t₀, n) dentro de la corrida: el muestreo es con
    reemplazo y una curva repetida no se recalcula.
    """

    # Cota de intentos por muestra pedida (curvas singulares o supersingulares)
    MAX_DRAWS_PER_SAMPLE = 50

    def __init__(self, p: int, q: int, seed: int = 0) -> None:
        F = field_make(p, 1)
        k, rest = 0, q
        while rest % p == 0 and rest > 1:
            rest //= p
            k += 1
        if rest != 1 or k < 1:
            raise ContractError(f"q={q} no es potencia de p={p}")
        self.p = p
        self.q = q
        self.seed = seed
        self.field = field_make(p, k)
        self._prime = F
        self._theta: Optional[ThetaData] = None
        self._eta: Optional[EtaData] = None
        self._memo: dict[tuple, LevelResult] = {}

    @property
    def theta(self) -> ThetaData:
        if self._theta is None:
            self._theta = extract_theta(self.p)
        return self._theta

    @property
    def eta(self) -> EtaData:
        if self._eta is None:
            self._eta = extract_eta(self.p)
        return self._eta

    def _level(self, c: CurveSpec, n: int, count: int) -> LevelResult:
        key = (c.s0, c.t0, n)
        if key in self._memo:
            return self._memo[key]
        data = frobenius_data(c, n, count)
        witness = torsion_tower(
            c, n, data.unit_root_mod_pn,
            theta=self.theta,
            eta=self.eta if n > 1 else None,
            seed=self.seed,
        )
        group_order = self.p ** (n - 1) * (self.p - 1)
        result = LevelResult(
            n=n,
            unit_root=data.unit_root_mod_pn,
            predicted_degree=data.predicted_degree,
            predicted_x_degree=data.predicted_x_degree,
            observed_x_degree=witness.x_degree,
            observed_point_degree=witness.point_degree,
            level_degrees=list(witness.level_degrees),
            y_in_same_field=witness.y_in_same_field,
            order_ok=witness.order_ok,
            rho_check=witness.rho_check,
            divides_group_order=group_order % data.predicted_degree == 0,
        )
        self._memo[key] = result
        return result

    def sample_report(self, c: CurveSpec, n_max: int, spot_m: tuple[int, ...] = ()) -> SampleReport:
        count = count_points(c)
        cls = classify(c, self.theta, count)
        levels = []
        if cls.kind == "ordinary":
            levels = [self._level(c, n, count) for n in range(1, n_max + 1)]
        spots = []
        if self.field.is_prime:
            for m in spot_m:
                if m % self.p:
                    squarefree, match = divpoly_spot_check(c, m)
                    spots.append(SpotCheck(m=m, squarefree=squarefree, roots_match=match))
        return SampleReport(
            curve=c.to_json(),
            count=count,
            trace=cls.trace,
            classification=cls.kind,
            classify_consistent=cls.consistent,
            j_invariant=self.field.to_json(c.j_invariant),
            levels=levels,
            spot_checks=spots,
        )

    def run(self, samples: int, n_max: int, spot_m: tuple[int, ...] = (3, 4)) -> SpecializationReport:
        """
        Junta ``samples`` curvas ordinarias al azar (semilla fija).

        Raises:
            ContractError: samples < 0 o n_max < 1
        """
        if samples < 0:
            raise ContractError("samples debe ser ≥ 0")
        if n_max < 1:
            raise ContractError("n_max debe ser ≥ 1")
        rng = random.Random(self.seed)
        F = self.field
        reports = []
        skipped = 0
        draws = 0
        limit = self.MAX_DRAWS_PER_SAMPLE * max(samples, 1)
        while len(reports) < samples and draws < limit:
            draws += 1
            s0, t0 = F.random_element(rng), F.random_element(rng)
            try:
                c = CurveSpec(F, s0, t0)
            except ContractError:
                continue
            report = self.sample_report(c, n_max, spot_m)
            if report.classification != "ordinary":
                skipped += 1
                continue
            reports.append(report)
        if len(reports) < samples:
            log("Specialize", f"p={self.p} q={self.q}: sólo {len(reports)}/{samples} curvas ordinarias")

        degrees_n1 = [s.levels[0].observed_point_degree for s in reports if s.levels]
        max_degree = max(degrees_n1) if degrees_n1 else None
        return SpecializationReport(
            p=self.p,
            q=self.q,
            n_max=n_max,
            seed=self.seed,
            samples_requested=samples,
            supersingular_skipped=skipped,
            samples=reports,
            max_degree_n1=max_degree,
            full_group_realized=max_degree == self.p - 1,
            note=FINITE_FIELD_NOTE,
        )
