"""
Cuerpos finitos: 𝔽_p y extensiones 𝔽_{q^k} en base polinomial.

Estrategia:
- Los elementos NO son objetos: 𝔽_p usa int en [0, p) y una extensión usa
  tuplas de elementos de su base (coeficientes de menor a mayor grado).
  Todas las operaciones pasan por el cuerpo (``F.mul(a, b)``), igual que en
  una librería de aritmética modular clásica.
- Las extensiones pueden apilarse (torres L_k = L_{k-1}[X]/(g_k)); el
  especializador construye así los cuerpos de división sin buscar raíces en
  cuerpos planos enormes.
- El módulo de ``field_make`` es determinístico: el primer mónico irreducible
  en orden lexicográfico de (c_{k-1}, ..., c_0), así los reportes son
  reproducibles bit a bit.

Frobenius:
- ``frobenius(a)`` = a^{|base|}, lineal sobre la base: se aplica con una
  matriz de columnas X^{j·|base|} mod g calculada una sola vez.
- ``pth_root(a)`` reutiliza esa matriz: a^{1/p} = Σ a_j^{1/p} · Y^j con
  Y = X^{1/p} precomputado.
"""

from __future__ import annotations

import itertools
import random
from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Any, Iterator, Optional

from sympy import isprime, legendre_symbol

try:
    from ..errors import ContractError
except ImportError:
    from src.errors import ContractError

# Aritmética en palabra de máquina: productos de dos residuos < 2^62
MAX_PRIME = 2**31


class FiniteField(ABC):
    """Interfaz común de 𝔽_p y de las extensiones."""

    p: int
    order: int

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @property
    @abstractmethod
    def one(self) -> Any: ...

    @property
    @abstractmethod
    def is_prime(self) -> bool: ...

    @property
    @abstractmethod
    def absolute_degree(self) -> int: ...

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def sub(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def neg(self, a: Any) -> Any: ...

    @abstractmethod
    def mul(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def inv(self, a: Any) -> Any: ...

    @abstractmethod
    def from_int(self, n: int) -> Any: ...

    @abstractmethod
    def frobenius(self, a: Any) -> Any:
        """a^{|base|} (identidad en 𝔽_p)."""

    @abstractmethod
    def pth_root(self, a: Any) -> Any:
        """La única raíz p-ésima de a."""

    @abstractmethod
    def norm_to_prime(self, a: Any) -> int:
        """Norma absoluta N_{F/𝔽_p}(a)."""

    @abstractmethod
    def elements(self) -> Iterator[Any]: ...

    @abstractmethod
    def random_element(self, rng: random.Random) -> Any: ...

    @abstractmethod
    def key(self, a: Any) -> tuple:
        """Clave de orden canónico (para ordenar factores y raíces)."""

    @abstractmethod
    def to_json(self, a: Any) -> Any: ...

    @abstractmethod
    def lift(self, a: Any, source: "FiniteField") -> Any:
        """Embebe un elemento de un subcuerpo de la torre."""

    @abstractmethod
    def as_prime(self, a: Any) -> Optional[int]:
        """El int correspondiente si a ∈ 𝔽_p, si no None."""

    # ── Operaciones derivadas ──────────────────────────────────────────────

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    def div(self, a: Any, b: Any) -> Any:
        return self.mul(a, self.inv(b))

    def pow(self, a: Any, e: int) -> Any:
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def square(self, a: Any) -> Any:
        return self.mul(a, a)

    def is_square(self, a: Any) -> bool:
        """Carácter cuadrático vía norma: χ_F(a) = χ_{𝔽_p}(N(a))."""
        if self.is_zero(a):
            return True
        return legendre_symbol(self.norm_to_prime(a), self.p) == 1


class PrimeField(FiniteField):
    """𝔽_p con p primo, 5 ≤ p < 2^31."""

    def __init__(self, p: int) -> None:
        if not isinstance(p, int) or not isprime(p):
            raise ContractError(f"p={p} no es primo")
        if p < 5:
            raise ContractError(f"p={p} < 5: se asume característica ≥ 5")
        if p >= MAX_PRIME:
            raise ContractError(f"p={p} excede 2^31")
        self.p = p
        self.order = p

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def is_prime(self) -> bool:
        return True

    @property
    def absolute_degree(self) -> int:
        return 1

    @property
    def degree(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 no es invertible en GF({self.p})")
        return pow(a, -1, self.p)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def from_int(self, n: int) -> int:
        return n % self.p

    def frobenius(self, a: int) -> int:
        return a

    def pth_root(self, a: int) -> int:
        return a

    def norm_to_prime(self, a: int) -> int:
        return a

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        return legendre_symbol(a, self.p) == 1

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def key(self, a: int) -> tuple:
        return (a,)

    def to_json(self, a: int) -> int:
        return a

    def lift(self, a: Any, source: FiniteField) -> int:
        if source != self:
            raise ContractError(f"{source} no es subcuerpo de {self}")
        return a

    def as_prime(self, a: int) -> Optional[int]:
        return a


class ExtField(FiniteField):
    """
    Extensión F = base[X]/(modulus) en base polinomial.

    Args:
        base: cuerpo base (primo o a su vez una extensión)
        modulus: coeficientes del módulo, de menor a mayor grado, mónico
        name: nombre de la variable para mostrar
        assume_irreducible: omite el test de irreducibilidad (factores que
            ya salen irreducibles de la factorización)
    """

    def __init__(
        self,
        base: FiniteField,
        modulus: tuple,
        name: str = "T",
        assume_irreducible: bool = False,
    ) -> None:
        modulus = tuple(modulus)
        if len(modulus) < 2:
            raise ContractError("El módulo debe tener grado ≥ 1")
        if modulus[-1] != base.one:
            raise ContractError("El módulo debe ser mónico")
        self.base = base
        self.modulus = modulus
        self.k = len(modulus) - 1
        self.name = name
        self.p = base.p
        self.order = base.order ** self.k
        self._zero = (base.zero,) * self.k
        self._one = (base.one,) + (base.zero,) * (self.k - 1)
        self._frob_cols: Optional[list] = None
        self._root_cols: Optional[list] = None
        if not assume_irreducible:
            from .unipoly import UniPoly, is_irreducible
            if not is_irreducible(UniPoly(base, modulus, name)):
                raise ContractError(f"El módulo {modulus} no es irreducible sobre {base}")

    def __repr__(self) -> str:
        return f"Ext({self.base}, deg={self.k}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ExtField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash(("Ext", self.base, self.modulus))

    @property
    def zero(self) -> tuple:
        return self._zero

    @property
    def one(self) -> tuple:
        return self._one

    @property
    def is_prime(self) -> bool:
        return False

    @property
    def degree(self) -> int:
        return self.k

    @property
    def absolute_degree(self) -> int:
        return self.k * self.base.absolute_degree

    @property
    def gen(self) -> tuple:
        """La clase de X (para k = 1 es la raíz del módulo lineal)."""
        if self.k == 1:
            return (self.base.neg(self.modulus[0]),)
        return (self.base.zero, self.base.one) + (self.base.zero,) * (self.k - 2)

    # ── Aritmética ─────────────────────────────────────────────────────────

    def add(self, a: tuple, b: tuple) -> tuple:
        B = self.base
        if B.is_prime:
            p = B.p
            return tuple((x + y) % p for x, y in zip(a, b))
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a: tuple, b: tuple) -> tuple:
        B = self.base
        if B.is_prime:
            p = B.p
            return tuple((x - y) % p for x, y in zip(a, b))
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a: tuple) -> tuple:
        B = self.base
        return tuple(B.neg(x) for x in a)

    def scale(self, c: Any, a: tuple) -> tuple:
        """Producto de un escalar de la base por un elemento."""
        B = self.base
        if B.is_prime:
            p = B.p
            return tuple(c * x % p for x in a)
        return tuple(B.mul(c, x) for x in a)

    def mul(self, a: tuple, b: tuple) -> tuple:
        k = self.k
        B = self.base
        mod = self.modulus
        if B.is_prime:
            p = B.p
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
            for i in range(2 * k - 2, k - 1, -1):
                c = prod[i] % p
                if c:
                    off = i - k
                    for j in range(k):
                        prod[off + j] -= c * mod[j]
            return tuple(c % p for c in prod[:k])

        zero = B.zero
        prod = [zero] * (2 * k - 1)
        for i, x in enumerate(a):
            if x != zero:
                for j, y in enumerate(b):
                    if y != zero:
                        prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c != zero:
                off = i - k
                for j in range(k):
                    if mod[j] != zero:
                        prod[off + j] = B.sub(prod[off + j], B.mul(c, mod[j]))
        return tuple(prod[:k])

    def inv(self, a: tuple) -> tuple:
        from .unipoly import UniPoly, poly_xgcd

        if a == self._zero:
            raise ZeroDivisionError("0 no es invertible")
        g, s, _ = poly_xgcd(UniPoly(self.base, a), UniPoly(self.base, self.modulus))
        if g.degree != 0:
            raise ContractError("Elemento no invertible: el módulo no es irreducible")
        return self._from_poly(s.scale(self.base.inv(g.coeffs[0])))

    def _from_poly(self, f) -> tuple:
        coeffs = list(f.coeffs) + [self.base.zero] * (self.k - len(f.coeffs))
        return tuple(coeffs[: self.k])

    def from_int(self, n: int) -> tuple:
        return (self.base.from_int(n),) + (self.base.zero,) * (self.k - 1)

    # ── Frobenius y raíces p-ésimas ────────────────────────────────────────

    def _frobenius_columns(self) -> list:
        if self._frob_cols is None:
            xq = self.pow(self.gen, self.base.order)
            cols = [self._one]
            for _ in range(1, self.k):
                cols.append(self.mul(cols[-1], xq))
            self._frob_cols = cols
        return self._frob_cols

    def frobenius(self, a: tuple) -> tuple:
        cols = self._frobenius_columns()
        result = self._zero
        for coeff, col in zip(a, cols):
            if coeff != self.base.zero:
                result = self.add(result, self.scale(coeff, col))
        return result

    def _root_columns(self) -> list:
        if self._root_cols is None:
            z = self.gen
            for _ in range(self.k - 1):
                z = self.frobenius(z)
            # gen^{|base|^{k-1}} elevado a |base|/p da gen^{|F|/p}
            y = self.pow(z, self.base.order // self.p)
            cols = [self._one]
            for _ in range(1, self.k):
                cols.append(self.mul(cols[-1], y))
            self._root_cols = cols
        return self._root_cols

    def pth_root(self, a: tuple) -> tuple:
        cols = self._root_columns()
        B = self.base
        result = self._zero
        for coeff, col in zip(a, cols):
            if coeff != B.zero:
                result = self.add(result, self.scale(B.pth_root(coeff), col))
        return result

    def norm_to_prime(self, a: tuple) -> int:
        """N_{F/base}(a) = Res(módulo, a(X)) y se baja recursivamente."""
        from .unipoly import UniPoly, resultant

        if a == self._zero:
            return 0
        rep = UniPoly(self.base, a)
        if rep.degree == 0:
            norm = self.base.pow(rep.coeffs[0], self.k)
        else:
            norm = resultant(UniPoly(self.base, self.modulus), rep)
        return self.base.norm_to_prime(norm)

    # ── Enumeración, orden canónico, serialización ─────────────────────────

    def elements(self) -> Iterator[tuple]:
        for combo in itertools.product(list(self.base.elements()), repeat=self.k):
            yield tuple(combo)

    def random_element(self, rng: random.Random) -> tuple:
        return tuple(self.base.random_element(rng) for _ in range(self.k))

    def key(self, a: tuple) -> tuple:
        return tuple(self.base.key(c) for c in reversed(a))

    def to_json(self, a: tuple) -> list:
        return [self.base.to_json(c) for c in a]

    def lift(self, a: Any, source: FiniteField) -> tuple:
        if source == self:
            return a
        inner = a if source == self.base else self.base.lift(a, source)
        return (inner,) + (self.base.zero,) * (self.k - 1)

    def as_prime(self, a: tuple) -> Optional[int]:
        if any(c != self.base.zero for c in a[1:]):
            return None
        return self.base.as_prime(a[0])


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    """Singleton por primo."""
    return PrimeField(p)


def first_irreducible(base: FiniteField, k: int) -> tuple:
    """
    Primer mónico irreducible de grado k sobre ``base``.

    Se recorren los vectores (c_{k-1}, ..., c_0) en orden lexicográfico;
    para 𝔽_5 y k = 2 el resultado es T² + 2.
    """
    from .unipoly import UniPoly, is_irreducible

    elems = list(base.elements())
    for combo in itertools.product(elems, repeat=k):
        coeffs = tuple(reversed(combo)) + (base.one,)
        if is_irreducible(UniPoly(base, coeffs)):
            return coeffs
    raise ContractError(f"No hay irreducible de grado {k} sobre {base}")


@lru_cache(maxsize=None)
def field_make(p: int, k: int) -> FiniteField:
    """
    Cuerpo de orden p^k con módulo determinístico.

    Para k = 1 devuelve el propio 𝔽_p.

    Raises:
        ContractError: p no primo, p < 5 o k < 1
    """
    if k < 1:
        raise ContractError(f"k={k} debe ser ≥ 1")
    base = prime_field(p)
    if k == 1:
        return base
    return ExtField(base, first_irreducible(base, k), name="T", assume_irreducible=True)


def field_of_order(q: int) -> FiniteField:
    """Resuelve q = p^k y construye 𝔽_q."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, rest = 0, q
            while rest % p == 0:
                rest //= p
                k += 1
            if rest != 1:
                raise ContractError(f"q={q} no es potencia de un primo")
            return field_make(p, k)
    raise ContractError(f"q={q} inválido")
