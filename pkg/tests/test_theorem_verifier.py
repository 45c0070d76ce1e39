"""
Tests del verificador: claims por primo, certificados, registry y servicio.

Cubre:
  1. run_all: reportes completos, contratos y presupuesto
  2. Determinismo del reporte
  3. Certificados de Eisenstein y primo canónico
  4. Contabilidad de grados
  5. Controles negativos (θ corrompido)
  6. Claim registry
  7. VerificationService (async)
"""

import os

import pytest

os.environ.setdefault("DIVPOLY_CACHE_ENABLED", "false")
os.environ.setdefault("VERIFY_VERBOSE", "false")
os.environ.setdefault("VERIFY_RECORD_TIMINGS", "false")


# ════════════════════════════════════════════════════════════════════════
# 1. run_all
# ════════════════════════════════════════════════════════════════════════

class TestRunAll:

    @pytest.mark.parametrize(
        "p,n",
        [(5, 2), (7, 1), (11, 1), (13, 1)]
        + [pytest.param(p, 1, marks=pytest.mark.slow) for p in (17, 19)],
    )
    def test_all_claims_pass(self, p, n):
        from src.verification.claim_registry import get_claim_registry
        from src.verification.theorem_verifier import run_all

        report = run_all(p, n)
        assert report.passed, report.failing_ids
        assert [c.id for c in report.checks] == get_claim_registry().enabled_ids()

    def test_versions_published(self):
        from src import config
        from src.verification.claim_registry import get_claim_registry
        from src.verification.theorem_verifier import run_all

        report = run_all(5, 1)
        assert report.versions["cache"] == config.CACHE_FORMAT_VERSION
        assert report.versions["code"] == get_claim_registry().hash

    @pytest.mark.parametrize("p", [2, 3, 9, 15])
    def test_rejects_small_or_composite(self, p):
        from src.errors import ContractError
        from src.verification.theorem_verifier import run_all

        with pytest.raises(ContractError):
            run_all(p, 1)

    def test_rejects_n_zero(self):
        from src.errors import ContractError
        from src.verification.theorem_verifier import run_all

        with pytest.raises(ContractError):
            run_all(5, 0)

    def test_budget_refusal(self):
        from src.errors import BudgetExceededError
        from src.models.run_config import RunConfig
        from src.verification.theorem_verifier import run_all

        with pytest.raises(BudgetExceededError) as exc_info:
            run_all(31, 1, RunConfig(primes=[31], budget="low"))
        assert exc_info.value.estimate == 480
        assert exc_info.value.limit == 200

    def test_get_unknown_check_lists_available(self):
        from src.verification.theorem_verifier import run_all

        report = run_all(5, 1)
        with pytest.raises(KeyError, match="Disponibles"):
            report.get("no_such_claim")


# ════════════════════════════════════════════════════════════════════════
# 2. Determinismo
# ════════════════════════════════════════════════════════════════════════

class TestDeterminism:

    def test_same_config_same_hash(self):
        from src.models.run_config import RunConfig
        from src.verification.theorem_verifier import run_all

        cfg = RunConfig(primes=[7], n_max=2, seed=11)
        first = run_all(7, 2, cfg)
        second = run_all(7, 2, cfg)
        assert first.content_hash() == second.content_hash()
        assert first.to_payload() == second.to_payload()

    def test_millis_zero_without_timings(self):
        from src.verification.theorem_verifier import run_all

        assert all(check.millis == 0 for check in run_all(5, 1).checks)


# ════════════════════════════════════════════════════════════════════════
# 3. Certificados de Eisenstein
# ════════════════════════════════════════════════════════════════════════

ALL_PRIMES = [5, 7, 11, 13] + [pytest.param(p, marks=pytest.mark.slow) for p in (17, 19, 23, 29, 31)]


class TestEisenstein:

    def test_theta_p5_prime_is_s(self):
        from src.verification.theorem_verifier import eisenstein_certificate_theta

        cert = eisenstein_certificate_theta(5)
        assert cert.Q == "1*s"
        assert (cert.ord_lead, cert.ord_middle, cert.ord_const) == (1, [2], 0)
        assert cert.holds

    def test_theta_p7_prime_is_t(self):
        from src.verification.theorem_verifier import eisenstein_certificate_theta

        cert = eisenstein_certificate_theta(7)
        assert cert.Q == "1*t"
        assert cert.holds

    def test_theta_p13_uses_core_factor(self):
        from src.verification.theorem_verifier import eisenstein_certificate_theta

        cert = eisenstein_certificate_theta(13)
        assert cert.Q not in ("1*s", "1*t")
        assert cert.ord_lead == 1
        assert cert.holds

    @pytest.mark.parametrize("p", [5, 7, 11] + [pytest.param(p, marks=pytest.mark.slow) for p in (13, 17, 19)])
    def test_eta_certificate(self, p):
        from src.verification.theorem_verifier import eisenstein_certificate_eta

        cert = eisenstein_certificate_eta(p)
        assert cert.kind == "eta"
        assert len(cert.ord_middle) == p - 1
        assert cert.holds

    @pytest.mark.parametrize("p", ALL_PRIMES)
    def test_theta_certificate_and_structure(self, p):
        from src.verification.models import CheckStatus
        from src.verification.theorem_verifier import (
            check_coefficient_structure,
            eisenstein_certificate_theta,
        )

        cert = eisenstein_certificate_theta(p)
        assert cert.holds
        assert len(cert.ord_middle) == (p - 3) // 2
        assert check_coefficient_structure(p).status == CheckStatus.PASS

    def test_certificate_rules(self):
        from src.verification.models import EisensteinCertificate

        base = dict(p=5, kind="theta", Q="1*s", ord_lead=1, ord_middle=[None], ord_const=0)
        assert EisensteinCertificate(**base).holds
        assert not EisensteinCertificate(**{**base, "ord_lead": 2}).holds
        assert not EisensteinCertificate(**{**base, "ord_middle": [0]}).holds
        assert not EisensteinCertificate(**{**base, "ord_const": 1}).holds


# ════════════════════════════════════════════════════════════════════════
# 4. Contabilidad de grados
# ════════════════════════════════════════════════════════════════════════

class TestDegreeLedger:

    @pytest.mark.parametrize("p,n,expected", [(7, 3, (294, 343)), (5, 1, (4, 5)), (5, 2, (20, 25))])
    def test_totals(self, p, n, expected):
        from src.verification.theorem_verifier import degree_ledger

        ledger = degree_ledger(p, n)
        assert ledger.totals == expected
        sep, insep = expected
        # grado total de la torre: p^{2n−1}(p−1)
        assert sep * insep == p ** (2 * n - 1) * (p - 1)

    @pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_totals_all_primes(self, p, n):
        from src.verification.theorem_verifier import degree_ledger

        sep, insep = degree_ledger(p, n).totals
        assert sep == (p - 1) * p ** (n - 1)
        assert insep == p ** n

    def test_rows(self):
        from src.verification.theorem_verifier import degree_ledger

        ledger = degree_ledger(5, 1)
        assert [r.floor for r in ledger.rows] == ["x1", "y"]
        assert (ledger.rows[0].separable, ledger.rows[0].inseparable) == (2, 5)
        payload = ledger.to_payload()
        assert payload["totals"] == {"separable": 4, "inseparable": 5, "degree": 20}

    def test_rejects_n_zero(self):
        from src.errors import ContractError
        from src.verification.theorem_verifier import degree_ledger

        with pytest.raises(ContractError):
            degree_ledger(5, 0)


# ════════════════════════════════════════════════════════════════════════
# 5. Controles negativos
# ════════════════════════════════════════════════════════════════════════

class TestNegativeControls:

    def test_coefficient_structure_pass(self):
        from src.verification.models import CheckStatus
        from src.verification.theorem_verifier import check_coefficient_structure

        result = check_coefficient_structure(7)
        assert result.status == CheckStatus.PASS
        assert result.witness["squarefree"]
        assert result.witness["gcd_with_const"] == "1"

    def test_corrupted_middle_fails_division(self):
        from dataclasses import replace

        from src.algebra.weighted_poly import WeightedBivar
        from src.divpoly.frobenius_form import extract_theta
        from src.verification.models import CheckStatus
        from src.verification.theorem_verifier import check_coefficient_structure

        theta = extract_theta(5)
        ring = theta.lead.ring
        # t no es múltiplo de s
        corrupted = dict(theta.a)
        corrupted[7] = theta.a[7] + WeightedBivar.monomial(ring, 0, 1)
        result = check_coefficient_structure(5, replace(theta, a=corrupted))
        assert result.status == CheckStatus.FAIL
        assert "a7" in result.witness["division_failures"]

    def test_vanishing_pass(self):
        from src.verification.models import CheckStatus
        from src.verification.theorem_verifier import check_vanishing_propagation

        result = check_vanishing_propagation(11, seed=3)
        assert result.status == CheckStatus.PASS
        assert result.witness["violations"] == []
        assert result.witness["families"]

    @pytest.mark.parametrize("p", ALL_PRIMES)
    def test_vanishing_all_primes(self, p):
        from src.verification.models import CheckStatus
        from src.verification.theorem_verifier import check_vanishing_propagation

        result = check_vanishing_propagation(p)
        assert result.status == CheckStatus.PASS
        assert not result.witness["unsampled"]

    def test_core_factor_without_roots_in_fp2_uses_larger_field(self):
        from src.algebra.finite_field import prime_field
        from src.algebra.unipoly import UniPoly
        from src.algebra.weighted_poly import WeightedBivar, fp, homogenize_core
        from src.divpoly.frobenius_form import ThetaData
        from src.verification.models import CheckStatus
        from src.verification.theorem_verifier import check_vanishing_propagation

        # u³ + u + 1 es irreducible sobre 𝔽_5: sus raíces viven en 𝔽_{5⁶}
        lead = homogenize_core(UniPoly.from_ints(prime_field(5), [1, 1, 0, 1], "u"))
        theta = ThetaData(5, {2: lead, 7: lead, 12: WeightedBivar.const(fp(5), 1)})
        result = check_vanishing_propagation(5, samples=2, theta=theta)
        assert result.status == CheckStatus.PASS
        assert result.witness["unsampled"] == []
        families = {f["field_order"]: f["points"] for f in result.witness["families"]}
        assert families == {5 ** 6: 6}

    def test_core_factor_beyond_enlargement_is_inconclusive(self, monkeypatch):
        from src.algebra.finite_field import prime_field
        from src.algebra.unipoly import UniPoly
        from src.algebra.weighted_poly import WeightedBivar, fp, homogenize_core
        from src.divpoly.frobenius_form import ThetaData
        from src.verification import theorem_verifier
        from src.verification.models import CheckStatus

        monkeypatch.setattr(theorem_verifier, "VANISHING_MAX_DEGREE", 4)
        lead = homogenize_core(UniPoly.from_ints(prime_field(5), [1, 1, 0, 1], "u"))
        theta = ThetaData(5, {2: lead, 7: lead, 12: WeightedBivar.const(fp(5), 1)})
        result = theorem_verifier.check_vanishing_propagation(5, theta=theta)
        assert result.status == CheckStatus.INCONCLUSIVE
        assert len(result.witness["unsampled"]) == 1

    def test_const_vanishing_on_family_fails(self):
        from dataclasses import replace

        from src.algebra.weighted_poly import WeightedBivar
        from src.divpoly.frobenius_form import extract_theta
        from src.verification.models import CheckStatus
        from src.verification.theorem_verifier import check_vanishing_propagation

        theta = extract_theta(5)
        ring = theta.lead.ring
        corrupted = dict(theta.a)
        # s⁶ tiene peso 12 y se anula en la familia s = 0
        corrupted[theta.const_index] = WeightedBivar.monomial(ring, 6, 0)
        result = check_vanishing_propagation(5, theta=replace(theta, a=corrupted))
        assert result.status == CheckStatus.FAIL
        assert {v["reason"] for v in result.witness["violations"]} == {"const_zero"}


# ════════════════════════════════════════════════════════════════════════
# 6. Claim registry
# ════════════════════════════════════════════════════════════════════════

CLAIMS_YAML = """
theta_structure:
  description: estructura de θ
  version: "1.0.0"
  enabled: true
fss_routes:
  description: rutas de F_ss
  version: "1.0.0"
  enabled: false
degree_ledger:
  description: contabilidad
  version: "2.0.0"
  enabled: true
"""


class TestClaimRegistry:

    def test_default_registry_order(self):
        from src.verification.claim_registry import get_claim_registry

        ids = get_claim_registry().ids()
        assert ids[0] == "theta_structure"
        assert ids[-1] == "degree_ledger"
        assert len(ids) == 10

    def test_unknown_claim_lists_available(self):
        from src.verification.claim_registry import get_claim_registry

        with pytest.raises(KeyError, match="Disponibles"):
            get_claim_registry().get("nope")

    def test_disabled_claims_are_skipped(self, tmp_path, monkeypatch):
        from src.verification import theorem_verifier
        from src.verification.claim_registry import ClaimRegistry

        path = tmp_path / "claims.yaml"
        path.write_text(CLAIMS_YAML, encoding="utf-8")
        registry = ClaimRegistry(str(path))
        assert registry.enabled_ids() == ["theta_structure", "degree_ledger"]

        monkeypatch.setattr(theorem_verifier, "get_claim_registry", lambda: registry)
        report = theorem_verifier.run_all(5, 1)
        assert [c.id for c in report.checks] == ["theta_structure", "degree_ledger"]
        assert report.versions["code"] == registry.hash

    def test_hash_changes_with_version(self, tmp_path):
        from src.verification.claim_registry import ClaimRegistry

        first = tmp_path / "a.yaml"
        second = tmp_path / "b.yaml"
        first.write_text(CLAIMS_YAML, encoding="utf-8")
        second.write_text(CLAIMS_YAML.replace('"2.0.0"', '"2.0.1"'), encoding="utf-8")
        assert ClaimRegistry(str(first)).hash != ClaimRegistry(str(second)).hash
        assert len(ClaimRegistry(str(first)).hash) == 16

    def test_missing_file(self, tmp_path):
        from src.verification.claim_registry import ClaimRegistry

        with pytest.raises(FileNotFoundError):
            ClaimRegistry(str(tmp_path / "missing.yaml"))


# ════════════════════════════════════════════════════════════════════════
# 7. VerificationService
# ════════════════════════════════════════════════════════════════════════

class TestVerificationService:

    @pytest.mark.asyncio
    async def test_reports_sorted_by_prime(self):
        from src.models.run_config import RunConfig
        from src.verification.verification_service import VerificationService

        service = VerificationService(max_workers=2, use_processes=False)
        reports = await service.verify_primes(RunConfig(primes=[7, 5], n_max=1))
        assert [r.p for r in reports] == [5, 7]
        assert all(r.passed for r in reports)

    @pytest.mark.asyncio
    async def test_budget_checked_before_workers(self):
        from src.errors import BudgetExceededError
        from src.models.run_config import RunConfig
        from src.verification.verification_service import VerificationService

        service = VerificationService(use_processes=False)
        with pytest.raises(BudgetExceededError):
            await service.verify_primes(RunConfig(primes=[5, 31], budget="low"))
