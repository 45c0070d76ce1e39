"""
Lado supersingular: polinomio de Hasse, J_ss ⊆ 𝔽_{p²}, f_ss e índices e₃/e₄.

f_ss se construye por dos rutas independientes que deben coincidir:
- Ruta A (enumeración): raíces de Hasse en 𝔽_{p²} → j(λ) → ∏ (j − j₀)
  sobre J_ss ∖ {0, 1728}, bajando los coeficientes a 𝔽_p.
- Ruta B (resultante): Res_λ(H(λ), j·λ²(λ−1)² − 256(λ²−λ+1)³) en 𝔽_p[j],
  parte libre de cuadrados sin los factores j y j − 1728, mónica.

La ruta B no supone nada sobre dónde viven las raíces λ; la ruta A supone
𝔽_{p²} y lo verifica contando raíces (``hasse_splits``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Any, Optional

try:
    from ..algebra.finite_field import FiniteField, field_make, prime_field
    from ..algebra.unipoly import PolynomialDomain, UniPoly, poly_factor, poly_gcd, resultant_coeffs, roots_in
    from ..algebra.weighted_poly import WeightedBivar, dehomogenize, fp, wb_exact_div
    from ..console import log
    from ..errors import DivisibilityError
except ImportError:
    from src.algebra.finite_field import FiniteField, field_make, prime_field
    from src.algebra.unipoly import PolynomialDomain, UniPoly, poly_factor, poly_gcd, resultant_coeffs, roots_in
    from src.algebra.weighted_poly import WeightedBivar, dehomogenize, fp, wb_exact_div
    from src.console import log
    from src.errors import DivisibilityError


def hasse_poly(p: int) -> UniPoly:
    """Σ_{k=0}^{(p−1)/2} binom((p−1)/2, k)² λ^k mod p."""
    F = prime_field(p)
    m = (p - 1) // 2
    return UniPoly.from_ints(F, [comb(m, k) ** 2 for k in range(m + 1)], "λ")


def e3_e4(p: int) -> tuple[int, int]:
    """(e₃, e₄) = ([p ≡ 2 mod 3], [p ≡ 3 mod 4])."""
    prime_field(p)
    return (1 if p % 3 == 2 else 0, 1 if p % 4 == 3 else 0)


def j_of_lambda(F: FiniteField, lam: Any) -> Any:
    """j = 256(λ²−λ+1)³ / (λ²(λ−1)²)."""
    lam_sq = F.square(lam)
    num = F.add(F.sub(lam_sq, lam), F.one)
    den = F.mul(lam_sq, F.square(F.sub(lam, F.one)))
    return F.div(F.mul(F.from_int(256), F.pow(num, 3)), den)


@dataclass(frozen=True)
class SupersingularTable:
    """Datos supersingulares de un primo."""

    p: int
    hasse: UniPoly
    j_set: tuple
    fss: UniPoly
    e3: int
    e4: int
    contains_0: bool
    contains_1728: bool
    hasse_splits: bool

    def to_json(self) -> dict:
        F2 = field_make(self.p, 2)
        j_values = []
        for j in self.j_set:
            as_int = F2.as_prime(j)
            j_values.append(as_int if as_int is not None else F2.to_json(j))
        return {
            "p": self.p,
            "hasse": list(self.hasse.to_json()),
            "j_set": j_values,
            "fss": str(self.fss),
            "fss_coeffs": list(self.fss.to_json()),
            "e3": self.e3,
            "e4": self.e4,
            "contains_0": self.contains_0,
            "contains_1728": self.contains_1728,
            "hasse_splits_fp2": self.hasse_splits,
        }


def _hasse_roots(p: int) -> tuple[list, bool]:
    F2 = field_make(p, 2)
    hasse = hasse_poly(p)
    roots = roots_in(hasse, F2)
    return roots, len(roots) == hasse.degree


def supersingular_j_set(p: int) -> tuple:
    """
    J_ss como tupla ordenada canónicamente de elementos de 𝔽_{p²}.

    Si Hasse no se parte en 𝔽_{p²} se loguea; ``supersingular_table``
    registra el hallazgo en ``hasse_splits``.
    """
    F2 = field_make(p, 2)
    roots, splits = _hasse_roots(p)
    if not splits:
        log("Supersingular", f"p={p}: Hasse no se parte en 𝔽_{{p²}}")
    js = {j_of_lambda(F2, lam) for lam in roots}
    return tuple(sorted(js, key=F2.key))


# ── f_ss por dos rutas ────────────────────────────────────────────────────

@dataclass(frozen=True)
class FssRoutes:
    p: int
    route_a: Optional[UniPoly]
    route_b: UniPoly

    @property
    def agree(self) -> bool:
        return self.route_a is not None and self.route_a == self.route_b


def fss_by_enumeration(p: int, j_set: Optional[tuple] = None) -> Optional[UniPoly]:
    """
    Ruta A. None si algún coeficiente del producto no cae en 𝔽_p (J_ss no
    sería estable bajo Frobenius).
    """
    F = prime_field(p)
    F2 = field_make(p, 2)
    j_set = supersingular_j_set(p) if j_set is None else j_set
    special = {F2.from_int(0), F2.from_int(1728)}
    product = UniPoly.one(F2, "j")
    for j0 in j_set:
        if j0 in special:
            continue
        product = product * UniPoly(F2, [F2.neg(j0), F2.one], "j")
    coeffs = [F2.as_prime(c) for c in product.coeffs]
    if any(c is None for c in coeffs):
        return None
    return UniPoly(F, coeffs, "j")


def fss_by_resultant(p: int) -> UniPoly:
    """Ruta B: todo dentro de 𝔽_p[j]."""
    F = prime_field(p)
    domain = PolynomialDomain(F, "j")
    hasse = hasse_poly(p)
    lam = UniPoly.monomial(F, 1, var="λ")
    one = UniPoly.one(F, "λ")
    weight = lam * lam * (lam - one) * (lam - one)
    cubic = lam * lam - lam + one
    cubic = cubic * cubic * cubic

    n = max(len(weight.coeffs), len(cubic.coeffs))
    c256 = F.from_int(256)
    g_coeffs = []
    for k in range(n):
        a_k = weight.coeffs[k] if k < len(weight.coeffs) else F.zero
        b_k = cubic.coeffs[k] if k < len(cubic.coeffs) else F.zero
        g_coeffs.append(UniPoly(F, [F.neg(F.mul(c256, b_k)), a_k], "j"))
    h_coeffs = [UniPoly(F, [c], "j") for c in hasse.coeffs]

    res = resultant_coeffs(h_coeffs, g_coeffs, domain)
    log("Supersingular", f"p={p}: Res_λ de grado {res.degree} en j")
    skip = {
        UniPoly(F, [F.zero, F.one], "j"),
        UniPoly(F, [F.neg(F.from_int(1728)), F.one], "j"),
    }
    out = UniPoly.one(F, "j")
    for factor, _ in poly_factor(res):
        if factor not in skip:
            out = out * factor
    return out.monic()


def fss_routes(p: int) -> FssRoutes:
    return FssRoutes(p, fss_by_enumeration(p), fss_by_resultant(p))


def fss_poly(p: int) -> UniPoly:
    """f_ss mónico (ruta B); la comparación con la ruta A vive en ``fss_routes``."""
    return fss_by_resultant(p)


@lru_cache(maxsize=None)
def supersingular_table(p: int) -> SupersingularTable:
    F2 = field_make(p, 2)
    j_set = supersingular_j_set(p)
    _, splits = _hasse_roots(p)
    e3, e4 = e3_e4(p)
    return SupersingularTable(
        p=p,
        hasse=hasse_poly(p),
        j_set=j_set,
        fss=fss_poly(p),
        e3=e3,
        e4=e4,
        contains_0=F2.from_int(0) in j_set,
        contains_1728=F2.from_int(1728) in j_set,
        hasse_splits=splits,
    )


def fss_is_separable(fss: UniPoly) -> bool:
    if fss.degree == 0:
        return True
    return poly_gcd(fss, fss.derivative()).is_one()


# ── B = C · F_ss ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class BComparison:
    """b(u) = C·g(u) con C ≠ 0 cuando ``matched``."""

    p: int
    b_dehom: Optional[UniPoly]
    g: UniPoly
    C: Optional[int]
    matched: bool
    reason: str = ""
    remainder: Optional[str] = field(default=None)

    def to_json(self) -> dict:
        return {
            "b": str(self.b_dehom) if self.b_dehom is not None else None,
            "g": str(self.g),
            "C": self.C,
            "reason": self.reason,
            "remainder": self.remainder,
        }


def fss_dehomogenized(p: int, fss: Optional[UniPoly] = None) -> UniPoly:
    """g(u) = Σ f_i u^i ((u + 27/4)/1728)^{d−i}."""
    F = prime_field(p)
    fss = fss if fss is not None else fss_poly(p)
    d = fss.degree
    u = UniPoly.monomial(F, 1, var="u")
    shift = F.div(F.from_int(27), F.from_int(4))
    y = (u + UniPoly(F, [shift], "u")).scale(F.inv(F.from_int(1728)))
    out = UniPoly.zero(F, "u")
    for i, f_i in enumerate(fss.coeffs):
        term = UniPoly(F, [f_i], "u")
        for _ in range(i):
            term = term * u
        for _ in range(d - i):
            term = term * y
        out = out + term
    return out


def compare_B_with_fss(p: int, a_lead: WeightedBivar, fss: Optional[UniPoly] = None) -> BComparison:
    """
    Divide a_{(p−1)/2} por s^{e₃}t^{e₄}, deshomogeneiza y resuelve b = C·g.
    Una división inexacta es un resultado ``matched=False``, no una excepción.
    """
    F = prime_field(p)
    e3, e4 = e3_e4(p)
    g = fss_dehomogenized(p, fss)
    monomial = WeightedBivar.monomial(fp(p), e3, e4)
    try:
        quotient = wb_exact_div(a_lead, monomial)
    except DivisibilityError as e:
        return BComparison(p, None, g, None, False, "monomial_division", str(e.remainder))
    if quotient.is_zero:
        return BComparison(p, None, g, None, False, "zero_quotient")
    form = dehomogenize(quotient)
    if form.exp_s or form.exp_t:
        return BComparison(p, form.upoly, g, None, False, "residue_monomial")
    b = form.upoly
    if b.degree != g.degree:
        return BComparison(p, b, g, None, False, "degree")
    C = F.div(b.lc, g.lc)
    if b != g.scale(C):
        return BComparison(p, b, g, None, False, "not_proportional")
    return BComparison(p, b, g, C, True)
