"""
Verificador por primo de la estructura de ψ̄_p, σ̄ y la torre de p^n-división.

Cada claim de claims.yaml tiene un runner acá que recibe el contexto del
primo y devuelve (status, witness). θ, η y los certificados se calculan
una sola vez por contexto y se comparten entre claims.

Los únicos errores que se propagan son de contrato (p no primo, n < 1) y
de presupuesto; todo hallazgo matemático termina en el reporte.
"""

from __future__ import annotations

import random
import time
from functools import cached_property
from math import lcm
from typing import Any, Callable, Optional

from sympy import isprime

try:
    from .. import config
    from ..algebra.finite_field import field_make
    from ..algebra.unipoly import roots_in
    from ..algebra.weighted_poly import (
        WeightedBivar,
        ord_of,
        prime_factors,
        wb_exact_div,
        wb_gcd,
        wb_squarefree_check,
        weighted_factorization,
    )
    from ..console import log
    from ..curves.supersingular import (
        compare_B_with_fss,
        fss_is_separable,
        fss_routes,
        supersingular_table,
    )
    from ..divpoly.frobenius_form import (
        EtaData,
        ThetaData,
        check_budget,
        check_c_relation,
        extract_eta,
        extract_theta,
    )
    from ..errors import ContractError, DivisibilityError, InternalInvariantError
    from ..models.run_config import RunConfig
    from .claim_registry import get_claim_registry
    from .models import (
        CheckResult,
        CheckStatus,
        DegreeLedger,
        EisensteinCertificate,
        LedgerRow,
        VerificationReport,
    )
except ImportError:
    from src import config
    from src.algebra.finite_field import field_make
    from src.algebra.unipoly import roots_in
    from src.algebra.weighted_poly import (
        WeightedBivar,
        ord_of,
        prime_factors,
        wb_exact_div,
        wb_gcd,
        wb_squarefree_check,
        weighted_factorization,
    )
    from src.console import log
    from src.curves.supersingular import (
        compare_B_with_fss,
        fss_is_separable,
        fss_routes,
        supersingular_table,
    )
    from src.divpoly.frobenius_form import (
        EtaData,
        ThetaData,
        check_budget,
        check_c_relation,
        extract_eta,
        extract_theta,
    )
    from src.errors import ContractError, DivisibilityError, InternalInvariantError
    from src.models.run_config import RunConfig
    from src.verification.claim_registry import get_claim_registry
    from src.verification.models import (
        CheckResult,
        CheckStatus,
        DegreeLedger,
        EisensteinCertificate,
        LedgerRow,
        VerificationReport,
    )

# Puntos por familia de ceros de a_{(p−1)/2}
VANISHING_SAMPLES = 3
# Grado máximo del cuerpo agrandado para factores sin raíces en 𝔽_{p²}
VANISHING_MAX_DEGREE = 6
# Tope de violaciones que se copian al witness
MAX_WITNESSES = 5


def _require_prime(p: int) -> None:
    if p < 5 or not isprime(p):
        raise ContractError(f"p={p} debe ser primo y ≥ 5")


# ── Cheques sobre θ ───────────────────────────────────────────────────────

def _nonzero(F: Any, rng: random.Random) -> Any:
    while True:
        z = F.random_element(rng)
        if z != F.zero:
            return z


def _core_roots(q: Any, p: int, seed: int) -> tuple[Any, list]:
    """
    Raíces de un factor del núcleo: primero en 𝔽_{p²}; si no hay, una sola
    vez en 𝔽_{p^k} con k = mcm(2, deg q), acotado por VANISHING_MAX_DEGREE.
    """
    F2 = field_make(p, 2)
    roots = roots_in(q, F2, seed)
    if roots:
        return F2, roots
    k = lcm(2, q.degree)
    if k <= 2 or k > VANISHING_MAX_DEGREE:
        return F2, []
    log("Verify", f"p={p}: {q} sin raíces en 𝔽_p², se agranda a 𝔽_p^{k}")
    big = field_make(p, k)
    return big, roots_in(q, big, seed)


def check_vanishing_propagation(
    p: int,
    samples: int = VANISHING_SAMPLES,
    seed: int = 0,
    theta: Optional[ThetaData] = None,
) -> CheckResult:
    """
    Muestrea ceros (s₀, t₀) de a_{(p−1)/2} por familia: (0, t₀) si s | a,
    (s₀, 0) si t | a, y (u₀λ², u₀λ³) para cada raíz u₀ de un factor del
    núcleo. En cada punto los intermedios deben anularse y la constante no.
    Los puntos viven en 𝔽_{p²}, salvo factores sin raíces ahí.
    """
    _require_prime(p)
    theta = theta or extract_theta(p)
    F2 = field_make(p, 2)
    rng = random.Random(seed)
    fac = weighted_factorization(theta.lead, seed)

    families: list[tuple[str, Any, list[tuple[Any, Any]]]] = []
    if fac.s_exp:
        families.append(("s", F2, [(F2.zero, _nonzero(F2, rng)) for _ in range(samples)]))
    if fac.t_exp:
        families.append(("t", F2, [(_nonzero(F2, rng), F2.zero) for _ in range(samples)]))
    for q, _ in fac.factors:
        L, roots = _core_roots(q, p, seed)
        points = []
        for u0 in roots:
            for _ in range(samples):
                lam = _nonzero(L, rng)
                lam_sq = L.square(lam)
                points.append((L.mul(u0, lam_sq), L.mul(u0, L.mul(lam_sq, lam))))
        families.append((str(q), L, points))

    report_families = []
    violations = []
    unsampled = []
    for name, L, points in families:
        if not points:
            unsampled.append(name)
        for s0, t0 in points:
            point = [L.to_json(s0), L.to_json(t0)]
            if theta.lead.evaluate(L, s0, t0) != L.zero:
                raise InternalInvariantError(f"p={p}: {point} no es cero de a_lead")
            for k in theta.middle_indices:
                if theta.a[k].evaluate(L, s0, t0) != L.zero:
                    violations.append({"point": point, "coefficient": f"a{k}", "reason": "middle_nonzero"})
            if theta.const.evaluate(L, s0, t0) == L.zero:
                violations.append({"point": point, "coefficient": f"a{theta.const_index}", "reason": "const_zero"})
        report_families.append({"family": name, "field_order": L.order, "points": len(points)})

    witness = {
        "families": report_families,
        "unsampled": unsampled,
        "violations": violations[:MAX_WITNESSES],
    }
    if violations:
        status = CheckStatus.FAIL
    elif unsampled or not families:
        status = CheckStatus.INCONCLUSIVE
    else:
        status = CheckStatus.PASS
    return CheckResult(id="vanishing_propagation", status=status, witness=witness)


def check_coefficient_structure(p: int, theta: Optional[ThetaData] = None) -> CheckResult:
    """(a) a_lead libre de cuadrados (b) a_lead | intermedios (c) coprimo con la constante."""
    _require_prime(p)
    theta = theta or extract_theta(p)
    lead = theta.lead
    if lead.is_zero:
        return CheckResult(
            id="coefficient_structure",
            status=CheckStatus.FAIL,
            witness={"reason": "lead_zero"},
        )

    squarefree, repeated = wb_squarefree_check(lead)
    quotients: dict[str, str] = {}
    failures: dict[str, str] = {}
    for k in theta.middle_indices:
        try:
            quotients[f"a{k}"] = wb_exact_div(theta.a[k], lead).to_str()
        except DivisibilityError as e:
            failures[f"a{k}"] = str(e.remainder)
    g = wb_gcd(lead, theta.const)
    coprime = g == WeightedBivar.const(lead.ring, 1)

    witness = {
        "squarefree": squarefree,
        "repeated_prime": str(repeated) if repeated is not None else None,
        "quotients": quotients,
        "division_failures": failures,
        "gcd_with_const": g.to_str(),
    }
    ok = squarefree and not failures and coprime
    return CheckResult(
        id="coefficient_structure",
        status=CheckStatus.PASS if ok else CheckStatus.FAIL,
        witness=witness,
    )


def canonical_prime(lead: WeightedBivar, seed: int = 0) -> WeightedBivar:
    """s, luego t, luego el primer factor del núcleo en u."""
    factors = prime_factors(lead, seed)
    if not factors:
        raise InternalInvariantError(f"a_lead={lead} sin factor primo")
    return factors[0]


def eisenstein_certificate_theta(
    p: int,
    theta: Optional[ThetaData] = None,
    seed: int = 0,
) -> EisensteinCertificate:
    _require_prime(p)
    theta = theta or extract_theta(p)
    Q = canonical_prime(theta.lead, seed)
    return EisensteinCertificate(
        p=p,
        kind="theta",
        Q=Q.to_str(),
        ord_lead=ord_of(Q, theta.lead),
        ord_middle=[ord_of(Q, theta.a[k]) for k in theta.middle_indices],
        ord_const=ord_of(Q, theta.const),
    )


def eisenstein_certificate_eta(
    p: int,
    Q: Optional[WeightedBivar] = None,
    theta: Optional[ThetaData] = None,
    eta: Optional[EtaData] = None,
    seed: int = 0,
) -> EisensteinCertificate:
    """ord_Q(c_{pi−1}) ≥ 1 para 1 ≤ i ≤ p−1 y ord_Q(c_{p²−1}) = 0."""
    _require_prime(p)
    if Q is None:
        theta = theta or extract_theta(p)
        Q = canonical_prime(theta.lead, seed)
    eta = eta or extract_eta(p)
    return EisensteinCertificate(
        p=p,
        kind="eta",
        Q=Q.to_str(),
        ord_lead=None,
        ord_middle=[ord_of(Q, eta.c[p * i - 1]) for i in range(1, p)],
        ord_const=ord_of(Q, eta.c[p * p - 1]),
    )


def degree_ledger(p: int, n: int, certified: bool = False) -> DegreeLedger:
    """
    Raises:
        ContractError: n < 1
    """
    if n < 1:
        raise ContractError(f"n={n} debe ser ≥ 1")
    rows = [LedgerRow(floor="x1", separable=(p - 1) // 2, inseparable=p)]
    rows.extend(LedgerRow(floor=f"x{k}", separable=p, inseparable=p) for k in range(2, n + 1))
    rows.append(LedgerRow(floor="y", separable=2, inseparable=1))
    return DegreeLedger(p=p, n=n, rows=rows, certified=certified)


# ── Contexto y runners ────────────────────────────────────────────────────

class VerificationContext:
    """Estado compartido por los claims de un primo."""

    def __init__(self, p: int, n: int, seed: int = 0) -> None:
        self.p = p
        self.n = n
        self.seed = seed

    @cached_property
    def theta(self) -> ThetaData:
        return extract_theta(self.p)

    @cached_property
    def eta(self) -> EtaData:
        return extract_eta(self.p)

    @cached_property
    def theta_certificate(self) -> Optional[EisensteinCertificate]:
        if not self.theta.is_valid:
            return None
        return eisenstein_certificate_theta(self.p, self.theta, self.seed)

    @cached_property
    def eta_certificate(self) -> Optional[EisensteinCertificate]:
        if not (self.theta.is_valid and self.eta.is_valid):
            return None
        Q = canonical_prime(self.theta.lead, self.seed)
        return eisenstein_certificate_eta(self.p, Q, self.theta, self.eta, self.seed)


Runner = Callable[[VerificationContext], tuple[CheckStatus, dict]]


def _status(ok: bool) -> CheckStatus:
    return CheckStatus.PASS if ok else CheckStatus.FAIL


def _theta_invalid(ctx: VerificationContext) -> tuple[CheckStatus, dict]:
    return CheckStatus.INCONCLUSIVE, {"reason": "theta_invalid"}


def _run_theta_structure(ctx: VerificationContext) -> tuple[CheckStatus, dict]:
    theta = ctx.theta
    return _status(theta.is_valid), {
        "x_degree": theta.x_degree,
        "expected_x_degree": theta.lead_index,
        "stray_exponents": list(theta.stray_exponents[:MAX_WITNESSES]),
        "weight_mismatches": list(theta.weight_mismatches),
        "term_counts": {f"a{k}": len(theta.a[k].terms) for k in sorted(theta.a)},
    }


def _run_eta_structure(ctx: VerificationContext) -> tuple[CheckStatus, dict]:
    eta = ctx.eta
    return _status(eta.is_valid), {
        "monic": eta.monic,
        "x_degree": eta.x_degree,
        "top_linear_vanishes": eta.top_linear_vanishes,
        "stray_exponents": list(eta.stray_exponents[:MAX_WITNESSES]),
        "weight_mismatches": list(eta.weight_mismatches),
    }


def _run_c_relation(ctx: VerificationContext) -> tuple[CheckStatus, dict]:
    rel = check_c_relation(ctx.p, ctx.theta, ctx.eta)
    return _status(rel.holds), {
        "const_relation": rel.const_relation,
        "normalization": rel.normalization,
        "residual_terms": rel.residual.term_count(),
    }


def _run_fss_routes(ctx: VerificationContext) -> tuple[CheckStatus, dict]:
    p = ctx.p
    table = supersingular_table(p)
    routes = fss_routes(p)
    expected_degree = (p - 1) // 12
    e3, e4 = table.e3, table.e4
    witness = table.to_json()
    witness.update({
        "route_a": str(routes.route_a) if routes.route_a is not None else None,
        "route_b": str(routes.route_b),
        "degree": routes.route_b.degree,
        "expected_degree": expected_degree,
        "separable": fss_is_separable(routes.route_b),
    })
    ok = (
        routes.agree
        and routes.route_b.degree == expected_degree
        and witness["separable"]
        and table.contains_0 == bool(e3)
        and table.contains_1728 == bool(e4)
        and table.hasse_splits
    )
    return _status(ok), witness


def _run_b_equals_c_fss(ctx: VerificationContext) -> tuple[CheckStatus, dict]:
    if not ctx.theta.is_valid:
        return _theta_invalid(ctx)
    comparison = compare_B_with_fss(ctx.p, ctx.theta.lead)
    return _status(comparison.matched), comparison.to_json()


def _run_vanishing(ctx: VerificationContext) -> tuple[CheckStatus, dict]:
    if not ctx.theta.is_valid:
        return _theta_invalid(ctx)
    result = check_vanishing_propagation(ctx.p, VANISHING_SAMPLES, ctx.seed, ctx.theta)
    return result.status, result.witness


def _run_coefficient_structure(ctx: VerificationContext) -> tuple[CheckStatus, dict]:
    if not ctx.theta.is_valid:
        return _theta_invalid(ctx)
    result = check_coefficient_structure(ctx.p, ctx.theta)
    return result.status, result.witness


def _run_eisenstein_theta(ctx: VerificationContext) -> tuple[CheckStatus, dict]:
    cert = ctx.theta_certificate
    if cert is None:
        return _theta_invalid(ctx)
    return _status(cert.holds), cert.model_dump()


def _run_eisenstein_eta(ctx: VerificationContext) -> tuple[CheckStatus, dict]:
    cert = ctx.eta_certificate
    if cert is None:
        return CheckStatus.INCONCLUSIVE, {"reason": "theta_or_eta_invalid"}
    return _status(cert.holds), cert.model_dump()


def _run_degree_ledger(ctx: VerificationContext) -> tuple[CheckStatus, dict]:
    p, n = ctx.p, ctx.n
    certified = bool(
        ctx.theta_certificate and ctx.theta_certificate.holds
        and ctx.eta_certificate and ctx.eta_certificate.holds
    )
    ledger = degree_ledger(p, n, certified)
    if ledger.totals != (p ** (n - 1) * (p - 1), p ** n):
        raise InternalInvariantError(f"Totales del ledger {ledger.totals} para p={p}, n={n}")
    status = CheckStatus.PASS if certified else CheckStatus.INCONCLUSIVE
    return status, ledger.to_payload()


CHECK_RUNNERS: dict[str, Runner] = {
    "theta_structure": _run_theta_structure,
    "eta_structure": _run_eta_structure,
    "c_relation": _run_c_relation,
    "fss_routes": _run_fss_routes,
    "b_equals_c_fss": _run_b_equals_c_fss,
    "vanishing_propagation": _run_vanishing,
    "coefficient_structure": _run_coefficient_structure,
    "eisenstein_theta": _run_eisenstein_theta,
    "eisenstein_eta": _run_eisenstein_eta,
    "degree_ledger": _run_degree_ledger,
}


def _get_runner(check_id: str) -> Runner:
    if check_id not in CHECK_RUNNERS:
        raise KeyError(
            f"Claim '{check_id}' sin runner. Disponibles: {list(CHECK_RUNNERS.keys())}"
        )
    return CHECK_RUNNERS[check_id]


def run_all(p: int, n: int, run_config: Optional[RunConfig] = None) -> VerificationReport:
    """
    Ejecuta los claims habilitados en orden de registry.

    Raises:
        ContractError: p no primo o < 5, n < 1
        BudgetExceededError: (p²−1)/2 supera el presupuesto
    """
    _require_prime(p)
    if n < 1:
        raise ContractError(f"n={n} debe ser ≥ 1")
    check_budget(p, run_config.budget if run_config else None)
    seed = run_config.seed if run_config else config.DEFAULT_SEED

    registry = get_claim_registry()
    ctx = VerificationContext(p, n, seed)
    checks = []
    for check_id in registry.enabled_ids():
        runner = _get_runner(check_id)
        start = time.perf_counter()
        status, witness = runner(ctx)
        millis = int((time.perf_counter() - start) * 1000) if config.RECORD_TIMINGS else 0
        checks.append(CheckResult(id=check_id, status=status, witness=witness, millis=millis))
        log("Verify", f"p={p} {check_id}: {status.value}")

    report = VerificationReport(
        p=p,
        n=n,
        checks=checks,
        versions={"cache": config.CACHE_FORMAT_VERSION, "code": registry.hash},
    )
    log("Verify", f"p={p} n={n}: {'PASS' if report.passed else 'FAIL ' + str(report.failing_ids)}")
    return report
