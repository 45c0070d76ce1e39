"""
Polinomios con graduación de peso wt(x)=1, wt(s)=2, wt(t)=3.

Tipos:
- CoefficientRing : ℤ o 𝔽_p (tag "Z" o "Fp:p", el mismo del header de cache)
- WeightedBivar   : polinomio disperso en s, t ({(exp_s, exp_t): coef})
- XPoly           : denso en x con coeficientes WeightedBivar + bandera de
                    paridad en y (True → representa y · polinomio)
- DehomForm       : s^α t^β t^{2N} · upoly(s³/t²) con α = 2w mod 3,
                    β = w mod 2 (los residuos del peso w)

Factorización de un homogéneo sobre 𝔽_p (todo se reduce a una variable):
    a = c · s^{e_s} · t^{e_t} · ∏ Q_i(s³, t²)^{m_i}
con Q_i el homogeneizado de un irreducible mónico q_i(u), q_i(0) ≠ 0.

Serialización canónica (usada por la cache de division_poly y la CLI):
    "3*x^4 + 6*s*x^2 + 12*t*x + -1*s^2"
ordenada por grado en x descendente, luego exp_s y exp_t descendentes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Iterator, Optional, Union

try:
    from ..errors import ContractError, DivisibilityError, InhomogeneousError, InternalInvariantError
    from .finite_field import FiniteField, PrimeField, prime_field
    from .kronecker import kronecker_multiply
    from .unipoly import UniPoly, poly_factor, poly_gcd, squarefree_decomposition
except ImportError:
    from src.errors import ContractError, DivisibilityError, InhomogeneousError, InternalInvariantError
    from src.algebra.finite_field import FiniteField, PrimeField, prime_field
    from src.algebra.kronecker import kronecker_multiply
    from src.algebra.unipoly import UniPoly, poly_factor, poly_gcd, squarefree_decomposition

INHOMOGENEOUS = "inhomogeneous"


# ── Anillo de coeficientes ────────────────────────────────────────────────

class CoefficientRing:
    """ℤ (modulus=None) o 𝔽_p."""

    __slots__ = ("modulus",)

    def __init__(self, modulus: Optional[int] = None) -> None:
        if modulus is not None:
            prime_field(modulus)  # valida primo ≥ 5
        self.modulus = modulus

    @property
    def is_integer(self) -> bool:
        return self.modulus is None

    @property
    def tag(self) -> str:
        return "Z" if self.modulus is None else f"Fp:{self.modulus}"

    @property
    def field(self) -> PrimeField:
        if self.modulus is None:
            raise ContractError("ℤ no es un cuerpo")
        return prime_field(self.modulus)

    def normalize(self, c: int) -> int:
        return c if self.modulus is None else c % self.modulus

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoefficientRing) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("ring", self.modulus))

    def __repr__(self) -> str:
        return self.tag

    @classmethod
    def parse(cls, tag: str) -> "CoefficientRing":
        if tag == "Z":
            return ZZ
        match = re.fullmatch(r"Fp:(\d+)", tag)
        if not match:
            raise ContractError(f"Tag de anillo inválido: '{tag}'")
        return fp(int(match.group(1)))


ZZ = CoefficientRing(None)


@lru_cache(maxsize=None)
def fp(p: int) -> CoefficientRing:
    return CoefficientRing(p)


def _check_ring(x: Any, y: Any) -> None:
    if x.ring != y.ring:
        raise ContractError(f"Anillos distintos: {x.ring} vs {y.ring}")


# ── WeightedBivar ─────────────────────────────────────────────────────────

class WeightedBivar:
    """Polinomio disperso en (s, t); nunca guarda coeficientes nulos."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CoefficientRing, terms: Optional[dict] = None) -> None:
        self.ring = ring
        clean: dict[tuple[int, int], int] = {}
        for key, c in (terms or {}).items():
            c = ring.normalize(c)
            if c:
                clean[key] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring: CoefficientRing, terms: dict) -> "WeightedBivar":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, ring: CoefficientRing) -> "WeightedBivar":
        return cls._raw(ring, {})

    @classmethod
    def const(cls, ring: CoefficientRing, c: int) -> "WeightedBivar":
        return cls(ring, {(0, 0): c})

    @classmethod
    def monomial(cls, ring: CoefficientRing, exp_s: int, exp_t: int, c: int = 1) -> "WeightedBivar":
        return cls(ring, {(exp_s, exp_t): c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "WeightedBivar") -> "WeightedBivar":
        _check_ring(self, other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return WeightedBivar(self.ring, out)

    def __neg__(self) -> "WeightedBivar":
        return WeightedBivar(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "WeightedBivar") -> "WeightedBivar":
        return self + (-other)

    def __mul__(self, other: "WeightedBivar") -> "WeightedBivar":
        _check_ring(self, other)
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return WeightedBivar(self.ring, out)

    def __pow__(self, n: int) -> "WeightedBivar":
        result = WeightedBivar.const(self.ring, 1)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: int) -> "WeightedBivar":
        return WeightedBivar(self.ring, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeightedBivar)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def leading_key(self) -> tuple[int, int]:
        """Monomio líder en orden lex (s antes que t)."""
        return max(self.terms)

    def reduce_mod(self, p: int) -> "WeightedBivar":
        return WeightedBivar(fp(p), self.terms)

    def evaluate(self, field: FiniteField, s0: Any, t0: Any) -> Any:
        """Valor en (s0, t0) ∈ field² (coeficientes vía from_int)."""
        acc = field.zero
        spow: dict[int, Any] = {}
        tpow: dict[int, Any] = {}
        for (a, b), c in self.terms.items():
            if a not in spow:
                spow[a] = field.pow(s0, a)
            if b not in tpow:
                tpow[b] = field.pow(t0, b)
            term = field.mul(field.from_int(c), field.mul(spow[a], tpow[b]))
            acc = field.add(acc, term)
        return acc

    def to_str(self) -> str:
        return format_terms({(0, a, b): c for (a, b), c in self.terms.items()})

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"WeightedBivar({self.to_str()}, {self.ring})"


def wb_add(a: WeightedBivar, b: WeightedBivar) -> WeightedBivar:
    return a + b


def wb_mul(a: WeightedBivar, b: WeightedBivar) -> WeightedBivar:
    return a * b


def wb_exact_div(a: WeightedBivar, b: WeightedBivar) -> WeightedBivar:
    """
    Cociente exacto q con q·b = a (división por término líder, orden lex).

    Raises:
        ContractError: b es cero
        DivisibilityError: b no divide a; ``remainder`` es el resto parcial
    """
    _check_ring(a, b)
    if b.is_zero:
        raise ContractError("División por el polinomio cero")
    ring = a.ring
    lead_b = b.leading_key()
    cb = b.terms[lead_b]
    inv_cb = None if ring.is_integer else pow(cb, -1, ring.modulus)
    quotient: dict[tuple[int, int], int] = {}
    rest = dict(a.terms)
    while rest:
        lead = max(rest)
        c = rest[lead]
        if lead[0] < lead_b[0] or lead[1] < lead_b[1]:
            raise DivisibilityError(
                "El divisor no divide exactamente", remainder=WeightedBivar(ring, rest)
            )
        if inv_cb is None:
            if c % cb:
                raise DivisibilityError(
                    "Coeficiente no divisible en ℤ", remainder=WeightedBivar(ring, rest)
                )
            factor = c // cb
        else:
            factor = c * inv_cb % ring.modulus
        shift = (lead[0] - lead_b[0], lead[1] - lead_b[1])
        quotient[shift] = factor
        for (ea, eb), cv in b.terms.items():
            key = (ea + shift[0], eb + shift[1])
            value = ring.normalize(rest.get(key, 0) - factor * cv)
            if value:
                rest[key] = value
            else:
                rest.pop(key, None)
    return WeightedBivar(ring, quotient)


# ── XPoly ─────────────────────────────────────────────────────────────────

class XPoly:
    """
    Σ_d coeffs[d] · x^d, con coeficientes WeightedBivar.

    ``y_parity=True`` significa que el objeto representado es y · (esto);
    al multiplicar dos factores con paridad se sustituye y² = x³ + sx + t.
    """

    __slots__ = ("ring", "coeffs", "y_parity")

    def __init__(
        self,
        ring: CoefficientRing,
        coeffs: Iterable[WeightedBivar],
        y_parity: bool = False,
    ) -> None:
        cs = list(coeffs)
        while cs and cs[-1].is_zero:
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)
        self.y_parity = y_parity

    @classmethod
    def zero(cls, ring: CoefficientRing, y_parity: bool = False) -> "XPoly":
        return cls(ring, (), y_parity)

    @classmethod
    def const(cls, ring: CoefficientRing, c: int, y_parity: bool = False) -> "XPoly":
        return cls(ring, [WeightedBivar.const(ring, c)], y_parity)

    @classmethod
    def from_terms(
        cls,
        ring: CoefficientRing,
        terms: dict[tuple[int, int, int], int],
        y_parity: bool = False,
    ) -> "XPoly":
        """Construye desde {(d, exp_s, exp_t): coef}."""
        if not terms:
            return cls(ring, (), y_parity)
        by_degree: dict[int, dict[tuple[int, int], int]] = {}
        for (d, a, b), c in terms.items():
            by_degree.setdefault(d, {})[(a, b)] = c
        top = max(by_degree)
        return cls(
            ring,
            [WeightedBivar(ring, by_degree.get(d, {})) for d in range(top + 1)],
            y_parity,
        )

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ContractError("El polinomio cero no tiene grado")
        return len(self.coeffs) - 1

    @property
    def lc(self) -> WeightedBivar:
        return self.coeffs[-1]

    def coefficient(self, d: int) -> WeightedBivar:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return WeightedBivar.zero(self.ring)

    def terms(self) -> Iterator[tuple[int, int, int, int]]:
        """(d, exp_s, exp_t, coef) para cada término no nulo."""
        for d, wb in enumerate(self.coeffs):
            for (a, b), c in wb.terms.items():
                yield d, a, b, c

    def term_count(self) -> int:
        return sum(len(wb.terms) for wb in self.coeffs)

    def with_parity(self, y_parity: bool) -> "XPoly":
        return XPoly(self.ring, self.coeffs, y_parity)

    # ── Anillo ─────────────────────────────────────────────────────────────

    def _check_parity(self, other: "XPoly") -> None:
        _check_ring(self, other)
        if self.y_parity != other.y_parity and not (self.is_zero or other.is_zero):
            raise ContractError("No se pueden sumar polinomios con distinta paridad en y")

    def __add__(self, other: "XPoly") -> "XPoly":
        self._check_parity(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, wb in enumerate(b):
            out[i] = out[i] + wb
        parity = self.y_parity if not self.is_zero else other.y_parity
        return XPoly(self.ring, out, parity)

    def __neg__(self) -> "XPoly":
        return XPoly(self.ring, [-wb for wb in self.coeffs], self.y_parity)

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __mul__(self, other: "XPoly") -> "XPoly":
        _check_ring(self, other)
        core = multiply_core(self, other)
        if self.y_parity and other.y_parity:
            return multiply_core(core, curve_rhs(self.ring))
        return core.with_parity(self.y_parity or other.y_parity)

    def scale(self, c: int) -> "XPoly":
        return XPoly(self.ring, [wb.scale(c) for wb in self.coeffs], self.y_parity)

    def mul_bivar(self, c: WeightedBivar) -> "XPoly":
        return XPoly(self.ring, [wb * c for wb in self.coeffs], self.y_parity)

    def shift_x(self, n: int) -> "XPoly":
        """Multiplica por x^n."""
        if self.is_zero:
            return self
        return XPoly(self.ring, [WeightedBivar.zero(self.ring)] * n + list(self.coeffs), self.y_parity)

    def exact_halve(self) -> "XPoly":
        """
        Divide por 2. En ℤ exige coeficientes pares; en 𝔽_p multiplica por 2⁻¹.

        Raises:
            InternalInvariantError: algún coeficiente impar en ℤ
        """
        if not self.ring.is_integer:
            return self.scale(pow(2, -1, self.ring.modulus))
        out = []
        for wb in self.coeffs:
            halved = {}
            for key, c in wb.terms.items():
                if c % 2:
                    raise InternalInvariantError("División por 2 no exacta en el recurrente")
                halved[key] = c // 2
            out.append(WeightedBivar._raw(self.ring, halved))
        return XPoly(self.ring, out, self.y_parity)

    def reduce_mod(self, p: int) -> "XPoly":
        ring = fp(p)
        return XPoly(ring, [WeightedBivar(ring, wb.terms) for wb in self.coeffs], self.y_parity)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, XPoly)
            and other.ring == self.ring
            and other.y_parity == self.y_parity
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.y_parity, self.coeffs))

    # ── Especialización ────────────────────────────────────────────────────

    def specialize(self, field: FiniteField, s0: Any, t0: Any, var: str = "x") -> UniPoly:
        """Sustituye (s, t) = (s0, t0) y devuelve un UniPoly en x (sin el factor y)."""
        return UniPoly(field, [wb.evaluate(field, s0, t0) for wb in self.coeffs], var)

    def to_str(self) -> str:
        return format_terms({(d, a, b): c for d, a, b, c in self.terms()})

    def __str__(self) -> str:
        body = self.to_str()
        return f"y*({body})" if self.y_parity else body

    def __repr__(self) -> str:
        return f"XPoly({self}, {self.ring})"


def curve_rhs(ring: CoefficientRing) -> XPoly:
    """x³ + s·x + t."""
    return XPoly.from_terms(ring, {(3, 0, 0): 1, (1, 1, 0): 1, (0, 0, 1): 1})


def x_power(ring: CoefficientRing, n: int) -> XPoly:
    return XPoly.from_terms(ring, {(n, 0, 0): 1})


def _homogeneous_weight(poly: XPoly) -> Optional[int]:
    weight = None
    for d, a, b, _ in poly.terms():
        w = d + 2 * a + 3 * b
        if weight is None:
            weight = w
        elif w != weight:
            return None
    return weight


def multiply_core(left: XPoly, right: XPoly) -> XPoly:
    """
    Producto ignorando la paridad. Si ambos son homogéneos de peso usa el
    kernel de Kronecker; si no, el producto término a término.
    """
    ring = left.ring
    if left.is_zero or right.is_zero:
        return XPoly.zero(ring)
    wl = _homogeneous_weight(left)
    wr = _homogeneous_weight(right)
    if wl is not None and wr is not None:
        packed = kronecker_multiply(
            {(d, a): c for d, a, _, c in left.terms()},
            {(d, a): c for d, a, _, c in right.terms()},
            ring.modulus,
        )
        w = wl + wr
        by_degree: dict[int, dict[tuple[int, int], int]] = {}
        for (d, a), c in packed.items():
            b3 = w - d - 2 * a
            if b3 < 0 or b3 % 3:
                raise InternalInvariantError("Producto homogéneo fuera de la grilla de peso")
            by_degree.setdefault(d, {})[(a, b3 // 3)] = c
        if not by_degree:
            return XPoly.zero(ring)
        top = max(by_degree)
        return XPoly(ring, [WeightedBivar._raw(ring, by_degree.get(d, {})) for d in range(top + 1)])

    out: dict[tuple[int, int, int], int] = {}
    for d1, a1, b1, c1 in left.terms():
        for d2, a2, b2, c2 in right.terms():
            key = (d1 + d2, a1 + a2, b1 + b2)
            out[key] = out.get(key, 0) + c1 * c2
    return XPoly.from_terms(ring, out)


def weight_of(a: Union[WeightedBivar, XPoly]) -> Union[int, str]:
    """
    Peso común de todos los monomios, o INHOMOGENEOUS.

    Raises:
        ContractError: polinomio cero
    """
    if a.is_zero:
        raise ContractError("El polinomio cero no tiene peso")
    if isinstance(a, XPoly):
        w = _homogeneous_weight(a)
        return INHOMOGENEOUS if w is None else w
    weights = {2 * s + 3 * t for s, t in a.terms}
    return weights.pop() if len(weights) == 1 else INHOMOGENEOUS


# ── Deshomogeneización en u = s³/t² ───────────────────────────────────────

@dataclass(frozen=True)
class DehomForm:
    """a = s^exp_s · t^exp_t · t^{2N} · upoly(s³/t²), N = (w − 2·exp_s − 3·exp_t)/6."""

    exp_s: int
    exp_t: int
    upoly: UniPoly


def _require_field_ring(a: WeightedBivar) -> PrimeField:
    if a.ring.is_integer:
        raise ContractError("La deshomogeneización trabaja sobre 𝔽_p")
    return a.ring.field


def _require_weight(a: WeightedBivar) -> int:
    w = weight_of(a)
    if w == INHOMOGENEOUS:
        raise InhomogeneousError(f"{a} no es homogéneo de peso")
    return w


def dehomogenize(a: WeightedBivar) -> DehomForm:
    """
    Raises:
        ContractError: a es cero o está sobre ℤ
        InhomogeneousError: a no es homogéneo
    """
    F = _require_field_ring(a)
    w = _require_weight(a)
    alpha = (2 * w) % 3
    beta = w % 2
    n_total = (w - 2 * alpha - 3 * beta) // 6
    coeffs = [0] * (n_total + 1)
    for (es, et), c in a.terms.items():
        i, ri = divmod(es - alpha, 3)
        j, rj = divmod(et - beta, 2)
        if ri or rj or i < 0 or j < 0 or i + j != n_total:
            raise InternalInvariantError(f"Monomio s^{es} t^{et} fuera de la grilla (3i, 2j)")
        coeffs[i] = c
    return DehomForm(alpha, beta, UniPoly(F, coeffs, "u"))


def rehomogenize(d: DehomForm, weight: int) -> WeightedBivar:
    """
    Inversa de dehomogenize.

    Raises:
        ContractError: el peso no es consistente con la forma
    """
    ring = fp(d.upoly.field.p)
    rest = weight - 2 * d.exp_s - 3 * d.exp_t
    if rest < 0 or rest % 6:
        raise ContractError(
            f"Peso {weight} inconsistente con s^{d.exp_s} t^{d.exp_t}"
        )
    n_total = rest // 6
    if d.upoly.is_zero:
        return WeightedBivar.zero(ring)
    if d.upoly.degree > n_total:
        raise ContractError(
            f"Peso {weight} insuficiente para grado {d.upoly.degree} en u"
        )
    terms = {
        (d.exp_s + 3 * i, d.exp_t + 2 * (n_total - i)): c
        for i, c in enumerate(d.upoly.coeffs)
        if c
    }
    return WeightedBivar(ring, terms)


def homogenize_core(q: UniPoly) -> WeightedBivar:
    """q(u) ↦ Q(s³, t²) = Σ q_i s^{3i} t^{2(deg q − i)}."""
    ring = fp(q.field.p)
    e = q.degree
    return WeightedBivar(ring, {(3 * i, 2 * (e - i)): c for i, c in enumerate(q.coeffs) if c})


@dataclass(frozen=True)
class WeightedFactorization:
    """a = scalar · s^s_exp · t^t_exp · ∏ homogenize_core(q)^m."""

    scalar: int
    s_exp: int
    t_exp: int
    core: UniPoly
    factors: list[tuple[UniPoly, int]] = field(default_factory=list)


def _split(a: WeightedBivar) -> tuple[int, int, int, UniPoly]:
    """(s_exp, t_exp, escalar, núcleo mónico con núcleo(0) ≠ 0)."""
    w = _require_weight(a)
    dh = dehomogenize(a)
    n_total = (w - 2 * dh.exp_s - 3 * dh.exp_t) // 6
    coeffs = dh.upoly.coeffs
    k = next(i for i, c in enumerate(coeffs) if c)
    top = len(coeffs) - 1
    core = UniPoly(dh.upoly.field, coeffs[k:], "u")
    scalar = core.lc
    return dh.exp_s + 3 * k, dh.exp_t + 2 * (n_total - top), scalar, core.monic()


def weighted_factorization(a: WeightedBivar, seed: int = 0) -> WeightedFactorization:
    """Factorización en primos del anillo graduado (ver docstring del módulo)."""
    _require_field_ring(a)
    s_exp, t_exp, scalar, core = _split(a)
    factors = poly_factor(core, seed) if core.degree > 0 else []
    return WeightedFactorization(scalar, s_exp, t_exp, core, factors)


def prime_factors(a: WeightedBivar, seed: int = 0) -> list[WeightedBivar]:
    """Divisores primos en orden canónico: s, t, luego factores en u ordenados."""
    fac = weighted_factorization(a, seed)
    ring = a.ring
    out = []
    if fac.s_exp:
        out.append(WeightedBivar.monomial(ring, 1, 0))
    if fac.t_exp:
        out.append(WeightedBivar.monomial(ring, 0, 1))
    out.extend(homogenize_core(q) for q, _ in fac.factors)
    return out


def monic_normalize(a: WeightedBivar) -> WeightedBivar:
    """Divide por el coeficiente principal del núcleo en u."""
    if a.is_zero:
        return a
    _, _, scalar, _ = _split(a)
    return a.scale(pow(scalar, -1, a.ring.modulus))


def wb_gcd(a: WeightedBivar, b: WeightedBivar) -> WeightedBivar:
    """
    MCD homogéneo: s^min · t^min · homogeneizado(gcd de núcleos), normalizado.

    Raises:
        InhomogeneousError: alguna entrada no homogénea
    """
    _check_ring(a, b)
    _require_field_ring(a)
    if a.is_zero and b.is_zero:
        return a
    if b.is_zero:
        _require_weight(a)
        return monic_normalize(a)
    if a.is_zero:
        _require_weight(b)
        return monic_normalize(b)
    sa, ta, _, ca = _split(a)
    sb, tb, _, cb = _split(b)
    g = poly_gcd(ca, cb)
    mono = WeightedBivar.monomial(a.ring, min(sa, sb), min(ta, tb))
    return mono * homogenize_core(g)


def wb_squarefree_check(a: WeightedBivar) -> tuple[bool, Optional[WeightedBivar]]:
    """
    (True, None) si ningún primo divide a dos veces; si no (False, primo repetido).

    Raises:
        ContractError: a es cero
        InhomogeneousError: a no es homogéneo
    """
    if a.is_zero:
        raise ContractError("Chequeo libre de cuadrados sobre el cero")
    _require_field_ring(a)
    s_exp, t_exp, _, core = _split(a)
    if s_exp >= 2:
        return False, WeightedBivar.monomial(a.ring, 1, 0)
    if t_exp >= 2:
        return False, WeightedBivar.monomial(a.ring, 0, 1)
    if core.degree > 0:
        for part, mult in squarefree_decomposition(core):
            if mult >= 2:
                return False, homogenize_core(part)
    return True, None


def ord_of(q: WeightedBivar, a: WeightedBivar) -> Optional[int]:
    """Máximo e con q^e | a; None si a = 0 (orden infinito)."""
    if a.is_zero:
        return None
    if weight_of(q) in (0, INHOMOGENEOUS):
        raise ContractError("El primo debe ser homogéneo de peso positivo")
    count = 0
    current = a
    while True:
        try:
            current = wb_exact_div(current, q)
        except DivisibilityError:
            return count
        count += 1


# ── Serialización canónica ────────────────────────────────────────────────

def format_terms(terms: dict[tuple[int, int, int], int]) -> str:
    """{(d, exp_s, exp_t): c} → "c*s^a*t^b*x^d + ..." (orden canónico)."""
    if not terms:
        return "0"
    parts = []
    for (d, a, b) in sorted(terms, key=lambda k: (-k[0], -k[1], -k[2])):
        factors = [str(terms[(d, a, b)])]
        for name, e in (("s", a), ("t", b), ("x", d)):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        parts.append("*".join(factors))
    return " + ".join(parts)


_FACTOR = re.compile(r"([stx])(?:\^(\d+))?")


def parse_terms(text: str) -> dict[tuple[int, int, int], int]:
    """
    Inversa de format_terms.

    Raises:
        ValueError: texto mal formado
    """
    text = text.strip()
    if text == "0":
        return {}
    out: dict[tuple[int, int, int], int] = {}
    for chunk in text.split(" + "):
        pieces = chunk.split("*")
        coeff = int(pieces[0])
        exps = {"s": 0, "t": 0, "x": 0}
        for piece in pieces[1:]:
            match = _FACTOR.fullmatch(piece)
            if not match:
                raise ValueError(f"Factor inválido: '{piece}'")
            exps[match.group(1)] = int(match.group(2) or 1)
        key = (exps["x"], exps["s"], exps["t"])
        if key in out:
            raise ValueError(f"Monomio repetido: '{chunk}'")
        out[key] = coeff
    return out
