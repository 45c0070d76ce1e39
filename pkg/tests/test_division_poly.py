"""
Tests de polinomios de división: ψ_m, [m]-mapa, σ, θ/η y la cache en disco.

Cubre:
  1. ψ_m sobre ℤ y 𝔽_p (valores, grados, pesos, reducción)
  2. x([m]P) y raíces de ψ_m contra la ley de grupo
  3. σ (coeficiente principal, reducción)
  4. Extracción de θ y η, relación de los c
  5. Presupuesto
  6. Cache en disco de ψ
"""

import dataclasses
import os

import pytest

os.environ.setdefault("DIVPOLY_CACHE_ENABLED", "false")
os.environ.setdefault("VERIFY_VERBOSE", "false")


# ════════════════════════════════════════════════════════════════════════
# 1. ψ_m
# ════════════════════════════════════════════════════════════════════════

class TestDivisionPoly:

    def test_psi3_over_integers(self):
        from src.divpoly.division_poly import division_poly

        assert str(division_poly(3)) == "3*x^4 + 6*s*x^2 + 12*t*x + -1*s^2"

    def test_psi3_mod_7(self):
        from src.algebra.weighted_poly import fp
        from src.divpoly.division_poly import division_poly

        assert str(division_poly(3, fp(7))) == "3*x^4 + 6*s*x^2 + 5*t*x + 6*s^2"

    def test_psi1_and_psi2(self):
        from src.algebra.weighted_poly import WeightedBivar, ZZ
        from src.divpoly.division_poly import division_poly

        assert str(division_poly(1)) == "1"
        psi2 = division_poly(2)
        assert psi2.y_parity
        assert psi2.coeffs == (WeightedBivar.const(ZZ, 2),)

    def test_psi4_known_coefficients(self):
        from src.algebra.weighted_poly import WeightedBivar, ZZ
        from src.divpoly.division_poly import division_poly

        psi4 = division_poly(4)
        assert psi4.y_parity
        assert psi4.degree == 6
        assert psi4.coefficient(6) == WeightedBivar.const(ZZ, 4)
        assert psi4.coefficient(0) == WeightedBivar(ZZ, {(3, 0): -4, (0, 2): -32})

    def test_m_zero_rejected(self):
        from src.divpoly.division_poly import division_poly
        from src.errors import ContractError

        with pytest.raises(ContractError):
            division_poly(0)

    @pytest.mark.parametrize("m", range(1, 26))
    def test_degree_leading_coefficient_and_weight(self, m):
        from src.algebra.weighted_poly import WeightedBivar, ZZ, weight_of
        from src.divpoly.division_poly import division_poly

        psi = division_poly(m)
        expected = (m * m - 1) // 2 if m % 2 else (m * m - 4) // 2
        assert psi.degree == expected
        assert psi.lc == WeightedBivar.const(ZZ, m)
        assert weight_of(psi) == expected
        assert psi.y_parity == (m % 2 == 0)

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_reduction_commutes_with_recurrence(self, p):
        from src.algebra.weighted_poly import fp
        from src.divpoly.division_poly import division_poly, reduce_mod_p

        for m in range(1, 16):
            assert reduce_mod_p(division_poly(m), p) == division_poly(m, fp(p))

    @pytest.mark.parametrize("m,degree", [(5, 12), (6, 16), (7, 24), (16, 126)])
    def test_known_degrees(self, m, degree):
        from src.algebra.weighted_poly import WeightedBivar, ZZ
        from src.divpoly.division_poly import division_poly

        psi = division_poly(m)
        assert psi.degree == degree
        assert psi.lc == WeightedBivar.const(ZZ, m)

    def test_psi6_satisfies_cleared_doubling_identity(self):
        from src.divpoly.division_poly import division_poly

        # 2y·ψ₆ = ψ₃·(ψ₅ψ₂² − ψ₁ψ₄²), con y² reemplazado por x³ + sx + t
        psi = {m: division_poly(m) for m in range(1, 7)}
        bracket = psi[5] * psi[2] * psi[2] - psi[1] * psi[4] * psi[4]
        assert psi[6] * psi[2] == psi[3] * bracket

    def test_reduce_mod_p_requires_integers(self):
        from src.algebra.weighted_poly import fp
        from src.divpoly.division_poly import division_poly, reduce_mod_p
        from src.errors import ContractError

        with pytest.raises(ContractError):
            reduce_mod_p(division_poly(3, fp(7)), 7)


# ════════════════════════════════════════════════════════════════════════
# 2. Contra la ley de grupo
# ════════════════════════════════════════════════════════════════════════

CURVES = [(7, 1, 1), (13, 2, 3)]


class TestAgainstGroupLaw:

    def _group(self, p, s, t):
        from src.algebra.finite_field import prime_field
        from src.curves.group_law import WeierstrassGroup

        F = prime_field(p)
        return F, WeierstrassGroup(F, s, t)

    @pytest.mark.parametrize("p,s,t", CURVES)
    @pytest.mark.parametrize("m", range(2, 9))
    def test_mult_by_m_x(self, m, p, s, t):
        from src.algebra.weighted_poly import fp
        from src.divpoly.division_poly import mult_by_m_x

        F, group = self._group(p, s, t)
        num, den = mult_by_m_x(m, fp(p))
        num_u = num.specialize(F, s, t)
        den_u = den.specialize(F, s, t)
        for P in group.points():
            mP = group.multiply(m, P)
            d = den_u.evaluate(P[0])
            if mP is None:
                assert d == F.zero
            else:
                assert F.div(num_u.evaluate(P[0]), d) == mP[0]

    def test_mult_by_m_x_rejects_m_below_2(self):
        from src.divpoly.division_poly import mult_by_m_x
        from src.errors import ContractError

        with pytest.raises(ContractError):
            mult_by_m_x(1)

    @pytest.mark.parametrize("p,s,t", CURVES)
    @pytest.mark.parametrize("m", [3, 5, 9])
    def test_odd_psi_vanishes_exactly_on_torsion(self, m, p, s, t):
        from src.algebra.weighted_poly import fp
        from src.divpoly.division_poly import division_poly

        F, group = self._group(p, s, t)
        psi = division_poly(m, fp(p)).specialize(F, s, t)
        for P in group.points():
            is_torsion = group.multiply(m, P) is None
            assert (psi.evaluate(P[0]) == F.zero) == is_torsion

    def test_psi7_over_f13(self):
        from src.algebra.weighted_poly import fp
        from src.divpoly.division_poly import division_poly

        F, group = self._group(13, 2, 3)
        psi = division_poly(7, fp(13)).specialize(F, 2, 3)
        for P in group.points():
            assert (psi.evaluate(P[0]) == F.zero) == (group.multiply(7, P) is None)

    def test_x_ladder_matches_affine_multiple(self):
        from src.curves.group_law import x_multiple

        F, group = self._group(7, 1, 1)
        for P in group.points():
            for k in range(1, 8):
                expected = group.multiply(k, P)
                got = x_multiple(F, 1, 1, P[0], k)
                assert got == (None if expected is None else expected[0])


# ════════════════════════════════════════════════════════════════════════
# 3. σ
# ════════════════════════════════════════════════════════════════════════

class TestSigma:

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_leading_coefficient_is_one(self, p):
        from src.divpoly.division_poly import sigma_poly

        sigma = sigma_poly(p)
        assert sigma.degree == p * p
        assert sigma.leading_coefficient == 1
        assert sigma.leading_coefficient == (1 - p * p) % p

    def test_reduction_matches_direct_mod_p(self):
        from src.algebra.weighted_poly import fp
        from src.divpoly.division_poly import sigma_poly

        over_z = sigma_poly(5).reduce_mod(5)
        direct = sigma_poly(5, fp(5))
        assert over_z.constant == direct.constant
        assert over_z.linear == direct.linear

    def test_rejects_small_prime(self):
        from src.divpoly.division_poly import sigma_poly
        from src.errors import ContractError

        with pytest.raises(ContractError):
            sigma_poly(3)


# ════════════════════════════════════════════════════════════════════════
# 4. θ y η
# ════════════════════════════════════════════════════════════════════════

THETA_PRIMES = [5, 7, 11, 13] + [pytest.param(p, marks=pytest.mark.slow) for p in (17, 19, 23, 29, 31)]
ETA_PRIMES = [5, 7, 11] + [pytest.param(p, marks=pytest.mark.slow) for p in (13, 17, 19)]


class TestFrobeniusForm:

    def test_theta_p5_keys_and_degree(self):
        from src.divpoly.frobenius_form import extract_theta

        theta = extract_theta(5)
        assert sorted(theta.a) == [2, 7, 12]
        assert theta.is_valid
        assert theta.x_degree == 2
        assert set(theta.to_json()) == {"a2", "a7", "a12"}

    def test_theta_p5_middle_is_scalar_times_st(self):
        from src.algebra.weighted_poly import wb_exact_div
        from src.divpoly.frobenius_form import extract_theta

        theta = extract_theta(5)
        quotient = wb_exact_div(theta.a[7], theta.lead)
        assert list(quotient.terms) == [(1, 1)]

    @pytest.mark.parametrize("p", THETA_PRIMES)
    def test_theta_reassembles_psi_bar(self, p):
        from src.algebra.weighted_poly import fp
        from src.divpoly.division_poly import division_poly
        from src.divpoly.frobenius_form import extract_theta

        theta = extract_theta(p)
        assert theta.is_valid
        assert not theta.stray_exponents
        assert theta.reassemble() == division_poly(p, fp(p))

    @pytest.mark.parametrize("p", ETA_PRIMES)
    def test_eta_structure(self, p):
        from src.divpoly.frobenius_form import extract_eta

        eta = extract_eta(p)
        assert eta.is_valid
        assert eta.monic
        assert sorted(eta.c) == [p * i - 1 for i in range(1, p + 1)]
        assert sorted(eta.b) == [p * i for i in range(1, p + 1)]

    @pytest.mark.parametrize("p", ETA_PRIMES)
    def test_c_relation_holds(self, p):
        from src.divpoly.frobenius_form import check_c_relation

        relation = check_c_relation(p)
        assert relation.holds
        assert relation.const_relation
        assert relation.residual.is_zero

    def test_c_relation_detects_corrupted_constant(self):
        from src.algebra.weighted_poly import WeightedBivar, fp
        from src.divpoly.frobenius_form import check_c_relation, extract_theta

        theta = extract_theta(5)
        a = dict(theta.a)
        a[12] = a[12] + WeightedBivar.monomial(fp(5), 6, 0)
        broken = dataclasses.replace(theta, a=a)
        relation = check_c_relation(5, theta=broken)
        assert not relation.holds

    def test_theta_rejects_non_prime(self):
        from src.divpoly.frobenius_form import extract_theta
        from src.errors import ContractError

        with pytest.raises(ContractError):
            extract_theta(4)


# ════════════════════════════════════════════════════════════════════════
# 5. Presupuesto
# ════════════════════════════════════════════════════════════════════════

class TestBudget:

    def test_p31_refused_with_low_budget(self):
        from src.divpoly.frobenius_form import check_budget
        from src.errors import BudgetExceededError

        with pytest.raises(BudgetExceededError) as exc:
            check_budget(31, "low")
        assert exc.value.estimate == 480
        assert exc.value.limit == 200

    def test_p31_accepted_with_medium_budget(self):
        from src.divpoly.frobenius_form import check_budget

        check_budget(31, "medium")

    def test_unknown_preset(self):
        from src.divpoly.frobenius_form import check_budget
        from src.errors import ContractError

        with pytest.raises(ContractError):
            check_budget(5, "huge")


# ════════════════════════════════════════════════════════════════════════
# 6. Cache en disco
# ════════════════════════════════════════════════════════════════════════

class TestPolynomialCache:

    def test_set_then_get(self, tmp_path):
        from src.algebra.weighted_poly import ZZ
        from src.cache.cache_service import PolynomialCacheService
        from src.divpoly.division_poly import division_poly

        cache = PolynomialCacheService(str(tmp_path), enabled=True)
        psi = division_poly(4)
        assert cache.set(ZZ, 4, psi)
        assert cache.get(ZZ, 4) == psi
        assert cache.stats()["hits"] == 1

    def test_header_format(self, tmp_path):
        from src.algebra.weighted_poly import ZZ
        from src.cache.cache_service import PolynomialCacheService
        from src.divpoly.division_poly import division_poly

        cache = PolynomialCacheService(str(tmp_path), enabled=True)
        cache.set(ZZ, 3, division_poly(3))
        lines = (tmp_path / "psi_Z_3.txt").read_text().splitlines()
        assert lines[0] == "ring=Z m=3 parity=0"
        assert lines[1] == "3*x^4 + 6*s*x^2 + 12*t*x + -1*s^2"

    def test_corrupted_file_is_recomputed(self, tmp_path):
        from src.algebra.weighted_poly import fp
        from src.cache.cache_service import PolynomialCacheService
        from src.divpoly.division_poly import DivPolyTable, division_poly

        ring = fp(7)
        cache = PolynomialCacheService(str(tmp_path), enabled=True)
        cache.set(ring, 5, division_poly(5, ring))
        path = tmp_path / "psi_Fp7_5.txt"
        path.write_text("ring=Fp:7 m=5 parity=0\n1*x^3\nmd5=deadbeef\n")

        assert cache.get(ring, 5) is None
        assert cache.stats()["corrupted"] == 1
        # la entrada corrupta se desaloja al leerla
        assert not path.exists()

        table = DivPolyTable(ring, cache)
        assert table.psi(5) == division_poly(5, ring)
        # se reescribió con el valor correcto
        assert cache.get(ring, 5) == division_poly(5, ring)

    def test_delete(self, tmp_path):
        from src.algebra.weighted_poly import ZZ
        from src.cache.cache_service import PolynomialCacheService
        from src.divpoly.division_poly import division_poly

        cache = PolynomialCacheService(str(tmp_path), enabled=True)
        cache.set(ZZ, 3, division_poly(3))
        assert cache.delete(ZZ, 3)
        assert not (tmp_path / "psi_Z_3.txt").exists()
        # borrar lo que no está no es error
        assert cache.delete(ZZ, 3)
        assert cache.get(ZZ, 3) is None

    def test_wrong_header_is_rejected(self, tmp_path):
        from src.algebra.weighted_poly import ZZ
        from src.cache.cache_service import PolynomialCacheService
        from src.divpoly.division_poly import division_poly

        cache = PolynomialCacheService(str(tmp_path), enabled=True)
        cache.set(ZZ, 3, division_poly(3))
        good = (tmp_path / "psi_Z_3.txt").read_text()
        (tmp_path / "psi_Z_3.txt").write_text(good.replace("m=3", "m=4"))
        assert cache.get(ZZ, 3) is None

    def test_disabled_cache_is_noop(self, tmp_path):
        from src.algebra.weighted_poly import ZZ
        from src.cache.cache_service import PolynomialCacheService
        from src.divpoly.division_poly import division_poly

        cache = PolynomialCacheService(str(tmp_path), enabled=False)
        assert not cache.set(ZZ, 3, division_poly(3))
        assert cache.get(ZZ, 3) is None

    def test_clear(self, tmp_path):
        from src.algebra.weighted_poly import ZZ
        from src.cache.cache_service import PolynomialCacheService
        from src.divpoly.division_poly import division_poly

        cache = PolynomialCacheService(str(tmp_path), enabled=True)
        for m in (1, 2, 3):
            cache.set(ZZ, m, division_poly(m))
        assert cache.clear() == 3

    def test_frozen_table_refuses_new_entries(self):
        from src.algebra.weighted_poly import fp
        from src.divpoly.division_poly import DivPolyTable
        from src.errors import InternalInvariantError

        table = DivPolyTable(fp(5))
        table.warm(6)
        assert table.frozen
        table.psi(6)
        with pytest.raises(InternalInvariantError):
            table.psi(9)
