"""
Ley de grupo de y² = x³ + s₀x + t₀ sobre un cuerpo finito.

Dos niveles:
- Afín (x, y) con None como punto al infinito: oráculo por fuerza bruta
  para validar ψ_m y x([m]P) sobre cuerpos chicos.
- Sólo-x en coordenadas proyectivas (X : Z): escalera de Montgomery con
  duplicación y suma diferencial. No necesita y, así que funciona aunque
  y_n viva en una extensión cuadrática de 𝔽_q(x_n).

Fórmulas proyectivas (a = s₀, b = t₀):
    dbl:  X₃ = (X² − aZ²)² − 8bXZ³
          Z₃ = 4Z(X³ + aXZ² + bZ³)
    add:  X₅ = 2(X₂Z₃ + X₃Z₂)(X₂X₃ + aZ₂Z₃) + 4bZ₂²Z₃² − x_D(X₂Z₃ − X₃Z₂)²
          Z₅ = (X₂Z₃ − X₃Z₂)²
con x_D la coordenada afín de la diferencia. Z = 0 representa el infinito.
"""

from typing import Any, Iterator, Optional

try:
    from ..algebra.finite_field import FiniteField
    from ..errors import ContractError
except ImportError:
    from src.algebra.finite_field import FiniteField
    from src.errors import ContractError

Point = Optional[tuple[Any, Any]]


class WeierstrassGroup:
    """Aritmética afín sobre E_{s₀,t₀}(F)."""

    def __init__(self, field: FiniteField, s0: Any, t0: Any) -> None:
        self.field = field
        self.s0 = s0
        self.t0 = t0

    def rhs(self, x: Any) -> Any:
        F = self.field
        return F.add(F.mul(F.add(F.square(x), self.s0), x), self.t0)

    def contains(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        return self.field.square(y) == self.rhs(x)

    def neg(self, P: Point) -> Point:
        if P is None:
            return None
        return (P[0], self.field.neg(P[1]))

    def add(self, P: Point, Q: Point) -> Point:
        F = self.field
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if F.add(y1, y2) == F.zero:
                return None
            # Tangente
            num = F.add(F.mul(F.from_int(3), F.square(x1)), self.s0)
            lam = F.div(num, F.mul(F.from_int(2), y1))
        else:
            lam = F.div(F.sub(y2, y1), F.sub(x2, x1))
        x3 = F.sub(F.sub(F.square(lam), x1), x2)
        y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
        return (x3, y3)

    def double(self, P: Point) -> Point:
        return self.add(P, P)

    def multiply(self, k: int, P: Point) -> Point:
        if k < 0:
            return self.multiply(-k, self.neg(P))
        result: Point = None
        addend = P
        while k:
            if k & 1:
                result = self.add(result, addend)
            addend = self.double(addend)
            k >>= 1
        return result

    def points(self) -> Iterator[Point]:
        """Todos los puntos afines (sólo para cuerpos chicos)."""
        F = self.field
        roots_of: dict[Any, list] = {}
        for y in F.elements():
            roots_of.setdefault(F.square(y), []).append(y)
        for x in F.elements():
            for y in roots_of.get(self.rhs(x), []):
                yield (x, y)

    def torsion_x_coordinates(self, m: int) -> list:
        """x de los puntos no nulos con [m]P = O, orden canónico, sin repetir."""
        if m < 1:
            raise ContractError(f"m={m} debe ser ≥ 1")
        xs = {P[0] for P in self.points() if self.multiply(m, P) is None}
        return sorted(xs, key=self.field.key)


# ── Sólo-x ────────────────────────────────────────────────────────────────

def x_double(F: FiniteField, a: Any, b: Any, X: Any, Z: Any) -> tuple[Any, Any]:
    XX = F.square(X)
    ZZ = F.square(Z)
    left = F.square(F.sub(XX, F.mul(a, ZZ)))
    X3 = F.sub(left, F.mul(F.from_int(8), F.mul(b, F.mul(X, F.mul(ZZ, Z)))))
    inner = F.add(F.add(F.mul(XX, X), F.mul(a, F.mul(X, ZZ))), F.mul(b, F.mul(ZZ, Z)))
    Z3 = F.mul(F.from_int(4), F.mul(Z, inner))
    return X3, Z3


def x_diff_add(
    F: FiniteField, a: Any, b: Any,
    X2: Any, Z2: Any, X3: Any, Z3: Any, x_diff: Any,
) -> tuple[Any, Any]:
    cross_sum = F.add(F.mul(X2, Z3), F.mul(X3, Z2))
    cross_diff = F.sub(F.mul(X2, Z3), F.mul(X3, Z2))
    zz = F.mul(Z2, Z3)
    main = F.mul(F.from_int(2), F.mul(cross_sum, F.add(F.mul(X2, X3), F.mul(a, zz))))
    X5 = F.sub(F.add(main, F.mul(F.from_int(4), F.mul(b, F.square(zz)))), F.mul(x_diff, F.square(cross_diff)))
    Z5 = F.square(cross_diff)
    return X5, Z5


def x_ladder(F: FiniteField, a: Any, b: Any, x: Any, k: int) -> tuple[Any, Any]:
    """(X : Z) de [k]P con x(P) = x, k ≥ 0."""
    if k < 0:
        raise ContractError("k debe ser ≥ 0")
    if k == 0:
        return F.one, F.zero
    R0 = (x, F.one)
    R1 = x_double(F, a, b, x, F.one)
    for bit in bin(k)[3:]:
        if bit == "1":
            R0 = x_diff_add(F, a, b, *R0, *R1, x)
            R1 = x_double(F, a, b, *R1)
        else:
            R1 = x_diff_add(F, a, b, *R0, *R1, x)
            R0 = x_double(F, a, b, *R0)
    return R0


def x_multiple(F: FiniteField, a: Any, b: Any, x: Any, k: int) -> Optional[Any]:
    """x([k]P) afín, o None si [k]P = O."""
    X, Z = x_ladder(F, a, b, x, k)
    if Z == F.zero:
        return None
    return F.div(X, Z)


def has_exact_order(F: FiniteField, a: Any, b: Any, x: Any, p: int, n: int) -> bool:
    """[p^{n−1}]P ≠ O y [p^n]P = O, usando sólo x."""
    before = x_multiple(F, a, b, x, p ** (n - 1))
    if before is None:
        return False
    return x_multiple(F, a, b, before, p) is None
