"""
Tests de curvas: tabla supersingular, B vs F_ss, conteo, raíz unidad y torre.

Cubre:
  1. Hasse, J_ss y f_ss por dos rutas
  2. a_{(p−1)/2} = s^{e₃}t^{e₄}·C·F_ss
  3. Curvas, twists, conteo y clasificación
  4. Raíz unidad de Frobenius y grados
  5. Torre de torsión y controles puntuales de ψ_m
  6. Especializador (determinismo, memo, casos borde)
"""

import os

import pytest

os.environ.setdefault("DIVPOLY_CACHE_ENABLED", "false")
os.environ.setdefault("VERIFY_VERBOSE", "false")


# ════════════════════════════════════════════════════════════════════════
# 1. Tabla supersingular
# ════════════════════════════════════════════════════════════════════════

class TestSupersingularTable:

    def test_hasse_p5(self):
        from src.curves.supersingular import hasse_poly

        # λ² + 4λ + 1
        assert hasse_poly(5).coeffs == (1, 4, 1)

    def test_p13_fss_is_j_minus_5(self):
        from src.curves.supersingular import supersingular_table

        table = supersingular_table(13)
        assert str(table.fss) == "j + 8"
        assert table.to_json()["j_set"] == [5]

    def test_p5_only_j_zero(self):
        from src.curves.supersingular import supersingular_table

        data = supersingular_table(5).to_json()
        assert data["fss"] == "1"
        assert data["j_set"] == [0]
        assert data["contains_0"]
        assert not data["contains_1728"]

    def test_p7_only_1728(self):
        from src.curves.supersingular import supersingular_table

        data = supersingular_table(7).to_json()
        assert data["j_set"] == [6]
        assert data["e4"] == 1
        assert data["e3"] == 0

    @pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43])
    def test_degree_routes_and_special_values(self, p):
        from src.curves.supersingular import (
            e3_e4,
            fss_is_separable,
            fss_routes,
            supersingular_table,
        )

        routes = fss_routes(p)
        assert routes.agree
        assert routes.route_b.degree == (p - 1) // 12
        assert fss_is_separable(routes.route_b)

        table = supersingular_table(p)
        e3, e4 = e3_e4(p)
        assert table.contains_0 == (p % 3 == 2) == bool(e3)
        assert table.contains_1728 == (p % 4 == 3) == bool(e4)
        assert table.hasse_splits

    def test_j_of_lambda_minus_one_is_1728(self):
        from src.algebra.finite_field import prime_field
        from src.curves.supersingular import j_of_lambda

        F = prime_field(11)
        assert j_of_lambda(F, F.from_int(-1)) == F.from_int(1728)


# ════════════════════════════════════════════════════════════════════════
# 2. B = C·F_ss
# ════════════════════════════════════════════════════════════════════════

class TestLeadingCoefficientVsFss:

    @pytest.mark.parametrize(
        "p", [5, 7, 11, 13, 17] + [pytest.param(p, marks=pytest.mark.slow) for p in (19, 23, 29, 31)]
    )
    def test_matches_with_nonzero_constant(self, p):
        from src.curves.supersingular import compare_B_with_fss
        from src.divpoly.frobenius_form import extract_theta

        comparison = compare_B_with_fss(p, extract_theta(p).lead)
        assert comparison.matched, comparison.reason
        assert comparison.C not in (None, 0)

    def test_wrong_monomial_is_a_result_not_an_exception(self):
        from src.algebra.weighted_poly import WeightedBivar, fp
        from src.curves.supersingular import compare_B_with_fss

        # p = 5 exige s | a_lead; t² no lo cumple
        comparison = compare_B_with_fss(5, WeightedBivar.monomial(fp(5), 0, 2))
        assert not comparison.matched
        assert comparison.reason == "monomial_division"


# ════════════════════════════════════════════════════════════════════════
# 3. Curvas y conteo
# ════════════════════════════════════════════════════════════════════════

class TestCurves:

    def test_count_and_twist(self):
        from src.curves.specializer import count_points, make_curve, twist

        c = make_curve(5, 1, 1)
        assert count_points(c) == 9
        # 2 no es cuadrado en 𝔽_5
        assert count_points(twist(c, 2)) == 3

    def test_singular_curve_rejected(self):
        from src.curves.specializer import make_curve
        from src.errors import ContractError

        with pytest.raises(ContractError):
            make_curve(5, 0, 0)

    def test_count_matches_group_enumeration(self):
        from src.curves.group_law import WeierstrassGroup
        from src.curves.specializer import count_points, make_curve

        c = make_curve(11, 1, 1)
        group = WeierstrassGroup(c.field, c.s0, c.t0)
        assert count_points(c) == len(list(group.points())) + 1

    def test_vanishing_discriminant_over_f11_rejected(self):
        from src.curves.specializer import make_curve
        from src.errors import ContractError

        # 4·8 + 27·9 = 275 = 25·11
        with pytest.raises(ContractError):
            make_curve(11, 2, 3)

    def test_count_budget(self):
        from src.curves.specializer import count_points, make_curve
        from src.errors import BudgetExceededError

        with pytest.raises(BudgetExceededError):
            count_points(make_curve(11, 1, 1), budget=5)

    def test_classify_ordinary(self):
        from src.curves.specializer import classify, make_curve

        cls = classify(make_curve(5, 1, 1))
        assert cls.kind == "ordinary"
        assert cls.trace == -3
        assert cls.consistent

    def test_classify_supersingular_j_zero(self):
        from src.curves.specializer import classify, make_curve

        # j = 0 es supersingular para p ≡ 2 mod 3
        cls = classify(make_curve(5, 0, 1))
        assert cls.kind == "supersingular"
        assert cls.lead_vanishes
        assert cls.consistent

    def test_j_invariant_of_s_only_curve(self):
        from src.curves.specializer import make_curve

        c = make_curve(7, 1, 0)
        assert c.j_invariant == 1728 % 7


# ════════════════════════════════════════════════════════════════════════
# 4. Raíz unidad
# ════════════════════════════════════════════════════════════════════════

class TestUnitRoot:

    def test_unit_root_mod_p_and_p2(self):
        from src.curves.specializer import frobenius_unit_root, make_curve

        # #E = 9, traza −3: u² + 3u + 5 ≡ 0
        c = make_curve(5, 1, 1)
        assert frobenius_unit_root(c, 1) == 2
        assert frobenius_unit_root(c, 2) == 7

    def test_precomputed_count_is_used(self):
        from src.curves.specializer import frobenius_unit_root, make_curve

        c = make_curve(5, 1, 1)
        assert frobenius_unit_root(c, 2, count=9) == frobenius_unit_root(c, 2)

    def test_supersingular_has_no_unit_root(self):
        from src.curves.specializer import frobenius_unit_root, make_curve
        from src.errors import ContractError

        with pytest.raises(ContractError, match="supersingular"):
            frobenius_unit_root(make_curve(5, 0, 1), 1)

    def test_rejects_n_zero(self):
        from src.curves.specializer import frobenius_unit_root, make_curve
        from src.errors import ContractError

        with pytest.raises(ContractError):
            frobenius_unit_root(make_curve(5, 1, 1), 0)

    def test_degrees_against_sympy(self):
        from sympy.ntheory import n_order

        from src.curves.specializer import frobenius_data, make_curve, x_degree_of_unit

        data = frobenius_data(make_curve(5, 1, 1), 1)
        assert data.unit_root_mod_pn == 2
        assert data.predicted_degree == n_order(2, 5) == 4
        assert data.predicted_x_degree == x_degree_of_unit(2, 5) == 2

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_unit_root_solves_characteristic_polynomial(self, n):
        from src.curves.specializer import classify, frobenius_unit_root, make_curve, trace_of
        from src.errors import ContractError

        checked = 0
        for s0 in range(7):
            for t0 in range(7):
                try:
                    c = make_curve(7, s0, t0)
                except ContractError:
                    continue
                if classify(c).kind != "ordinary":
                    continue
                trace = trace_of(c)
                u = frobenius_unit_root(c, n)
                assert (u * u - trace * u + 7) % 7 ** n == 0
                assert u % 7 != 0
                checked += 1
        assert checked > 0


# ════════════════════════════════════════════════════════════════════════
# 5. Torre de torsión
# ════════════════════════════════════════════════════════════════════════

class TestTorsionTower:

    def test_p5_first_level(self):
        from src.curves.specializer import make_curve, torsion_tower

        witness = torsion_tower(make_curve(5, 1, 1), 1, 2)
        assert witness.x_degree == 2
        assert witness.point_degree == 4
        assert witness.order_ok
        assert witness.rho_check

    def test_p5_second_level_matches_prediction(self):
        from src.curves.specializer import frobenius_data, make_curve, torsion_tower

        c = make_curve(5, 1, 1)
        data = frobenius_data(c, 2)
        witness = torsion_tower(c, 2, data.unit_root_mod_pn)
        assert witness.x_degree == data.predicted_x_degree
        assert witness.point_degree == data.predicted_degree
        assert witness.order_ok
        assert witness.rho_check
        assert len(witness.x_chain) == 2

    def test_tower_over_budget_refused(self):
        from src.curves.specializer import make_curve, torsion_tower
        from src.errors import BudgetExceededError

        with pytest.raises(BudgetExceededError) as exc_info:
            torsion_tower(make_curve(5, 1, 1), 1, 2, budget=1)
        assert exc_info.value.estimate == 2
        assert exc_info.value.limit == 1

    def test_tower_budget_from_config(self, monkeypatch):
        from src import config
        from src.curves.specializer import frobenius_data, make_curve, torsion_tower
        from src.errors import BudgetExceededError

        c = make_curve(5, 1, 1)
        data = frobenius_data(c, 2)
        monkeypatch.setattr(config, "TOWER_DEGREE_BUDGET", data.predicted_x_degree - 1)
        with pytest.raises(BudgetExceededError):
            torsion_tower(c, 2, data.unit_root_mod_pn)

    def test_tower_rejects_non_unit(self):
        from src.curves.specializer import make_curve, torsion_tower
        from src.errors import ContractError

        with pytest.raises(ContractError):
            torsion_tower(make_curve(5, 1, 1), 1, 5)

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_divpoly_spot_check(self, m):
        from src.curves.specializer import divpoly_spot_check, make_curve

        squarefree, roots_match = divpoly_spot_check(make_curve(7, 1, 1), m)
        assert squarefree
        assert roots_match

    def test_spot_check_rejects_multiple_of_p(self):
        from src.curves.specializer import divpoly_spot_check, make_curve
        from src.errors import ContractError

        with pytest.raises(ContractError):
            divpoly_spot_check(make_curve(7, 1, 1), 7)


# ════════════════════════════════════════════════════════════════════════
# 6. Especializador
# ════════════════════════════════════════════════════════════════════════

class TestSpecializer:

    def test_q_must_be_power_of_p(self):
        from src.curves.specializer import Specializer
        from src.errors import ContractError

        with pytest.raises(ContractError):
            Specializer(5, 4)

    def test_zero_samples(self):
        from src.curves.specializer import Specializer

        report = Specializer(5, 5, seed=1).run(0, 1)
        assert report.samples == []
        assert report.passed
        assert report.max_degree_n1 is None

    def test_run_passes_and_is_deterministic(self):
        from src.curves.specializer import Specializer

        first = Specializer(5, 5, seed=7).run(8, 2).to_payload()
        second = Specializer(5, 5, seed=7).run(8, 2).to_payload()
        assert first == second
        assert first["passed"]
        assert first["note"]
        assert "perfectos" in first["note"]
        for sample in first["samples"]:
            assert sample["classification"] == "ordinary"
            for level in sample["levels"]:
                assert level["matches"]
                assert (5 ** (level["n"] - 1) * 4) % level["predicted_degree"] == 0

    def test_max_degree_statistic(self):
        from src.curves.specializer import Specializer

        report = Specializer(7, 7, seed=3).run(12, 1, spot_m=())
        assert report.max_degree_n1 is not None
        assert 6 % report.max_degree_n1 == 0
        assert report.full_group_realized == (report.max_degree_n1 == 6)

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_hundred_curves_two_levels(self, p):
        from src.curves.specializer import Specializer

        report = Specializer(p, p, seed=p).run(100, 2, spot_m=())
        assert len(report.samples) == 100
        assert report.passed
        assert report.full_group_realized
        for sample in report.samples:
            assert [level.n for level in sample.levels] == [1, 2]
            assert all(level.matches for level in sample.levels)

    def test_extension_field_samples(self):
        from src.curves.specializer import Specializer

        report = Specializer(5, 25, seed=2).run(3, 1)
        assert report.q == 25
        assert report.passed
        # sin controles puntuales fuera de 𝔽_p
        assert all(not s.spot_checks for s in report.samples)
