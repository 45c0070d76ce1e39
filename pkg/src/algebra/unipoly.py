"""
UniPoly: polinomios en una variable sobre un cuerpo finito.

Pipeline de factorización (``poly_factor``):
  1. Descomposición libre de cuadrados (Yun, con raíz p-ésima de
     coeficientes cuando la derivada se anula).
  2. Factorización por grados distintos, usando la matriz de Frobenius
     (X^{q·i} mod f): aplicar h ↦ h^q es lineal sobre 𝔽_q.
  3. Separación de grados iguales (Cantor–Zassenhaus), aleatorizada con
     ``random.Random(seed)`` (Mersenne Twister): misma semilla → mismo orden.

El resultante usa la sucesión de subresultantes sobre un "dominio" genérico
(cuerpo o anillo de polinomios con división exacta), así el mismo código
sirve para Res_λ(·,·) ∈ 𝔽_p[j].

Convenciones:
- coeffs en orden de menor a mayor grado, sin ceros finales.
- El polinomio cero NO tiene grado: ``is_zero`` es la bandera explícita y
  ``degree`` lanza ContractError sobre él.
"""

from __future__ import annotations

import random
from typing import Any, Iterable, Optional, Sequence

try:
    from ..errors import ContractError, InternalInvariantError
    from .finite_field import FiniteField
except ImportError:
    from src.errors import ContractError, InternalInvariantError
    from src.algebra.finite_field import FiniteField


class UniPoly:
    """Polinomio inmutable en ``var`` con coeficientes en ``field``."""

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field: FiniteField, coeffs: Iterable[Any], var: str = "X") -> None:
        cs = list(coeffs)
        zero = field.zero
        while cs and cs[-1] == zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self.var = var

    # ── Constructores ──────────────────────────────────────────────────────

    @classmethod
    def zero(cls, field: FiniteField, var: str = "X") -> "UniPoly":
        return cls(field, (), var)

    @classmethod
    def one(cls, field: FiniteField, var: str = "X") -> "UniPoly":
        return cls(field, (field.one,), var)

    @classmethod
    def monomial(cls, field: FiniteField, degree: int, coeff: Any = None, var: str = "X") -> "UniPoly":
        c = field.one if coeff is None else coeff
        return cls(field, [field.zero] * degree + [c], var)

    @classmethod
    def from_ints(cls, field: FiniteField, ints: Sequence[int], var: str = "X") -> "UniPoly":
        """Coeficientes enteros, de menor a mayor grado."""
        return cls(field, [field.from_int(c) for c in ints], var)

    # ── Propiedades ────────────────────────────────────────────────────────

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ContractError("El polinomio cero no tiene grado")
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Any:
        if not self.coeffs:
            raise ContractError("El polinomio cero no tiene coeficiente principal")
        return self.coeffs[-1]

    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    def _new(self, coeffs: Iterable[Any]) -> "UniPoly":
        return UniPoly(self.field, coeffs, self.var)

    def _check(self, other: "UniPoly") -> None:
        if other.field != self.field:
            raise ContractError(f"Cuerpos distintos: {self.field} vs {other.field}")

    # ── Anillo ─────────────────────────────────────────────────────────────

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return self._new(out)

    def __neg__(self) -> "UniPoly":
        return self._new(self.field.neg(c) for c in self.coeffs)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return self._new(())
        F = self.field
        a, b = self.coeffs, other.coeffs
        if F.is_prime:
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return self._new(c % p for c in out)
        zero = F.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x != zero:
                for j, y in enumerate(b):
                    if y != zero:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return self._new(out)

    def scale(self, c: Any) -> "UniPoly":
        F = self.field
        return self._new(F.mul(c, x) for x in self.coeffs)

    def shift(self, n: int) -> "UniPoly":
        """Multiplica por var^n."""
        if not self.coeffs:
            return self
        return self._new([self.field.zero] * n + list(self.coeffs))

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lc))

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("División por el polinomio cero")
        F = self.field
        db = len(other.coeffs) - 1
        rem = list(self.coeffs)
        if len(rem) - 1 < db:
            return self._new(()), self
        inv_lc = F.inv(other.lc)
        b = other.coeffs
        quot = [F.zero] * (len(rem) - db)
        if F.is_prime:
            p = F.p
            for i in range(len(rem) - 1, db - 1, -1):
                c = rem[i] % p
                if c:
                    c = c * inv_lc % p
                    quot[i - db] = c
                    off = i - db
                    for j, y in enumerate(b):
                        rem[off + j] -= c * y
            return self._new(quot), self._new(c % p for c in rem[:db])
        zero = F.zero
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c != zero:
                c = F.mul(c, inv_lc)
                quot[i - db] = c
                off = i - db
                for j, y in enumerate(b):
                    if y != zero:
                        rem[off + j] = F.sub(rem[off + j], F.mul(c, y))
        return self._new(quot), self._new(rem[:db])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise InternalInvariantError(f"División no exacta: resto {r}")
        return q

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, UniPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    # ── Cálculo ────────────────────────────────────────────────────────────

    def derivative(self) -> "UniPoly":
        F = self.field
        return self._new(F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs) if i > 0)

    def evaluate(self, x: Any, target: Optional[FiniteField] = None) -> Any:
        """
        Horner. Si ``target`` es una extensión de ``field``, x vive en
        target y los coeficientes se embeben.
        """
        F = target or self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            coeff = c if target is None else target.lift(c, self.field)
            acc = F.add(F.mul(acc, x), coeff)
        return acc

    def pow_mod(self, e: int, modulus: "UniPoly") -> "UniPoly":
        result = UniPoly.one(self.field, self.var) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def change_field(self, target: FiniteField) -> "UniPoly":
        """Embebe los coeficientes en un cuerpo que contiene a ``field``."""
        return UniPoly(target, (target.lift(c, self.field) for c in self.coeffs), self.var)

    def pth_root(self) -> "UniPoly":
        """Raíz p-ésima de un polinomio en var^p."""
        p = self.field.p
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs):
            if i % p:
                if c != F.zero:
                    raise InternalInvariantError("El polinomio no está en var^p")
            else:
                out.append(F.pth_root(c))
        return self._new(out)

    # ── Presentación ───────────────────────────────────────────────────────

    def sort_key(self) -> tuple:
        F = self.field
        return (len(self.coeffs), tuple(F.key(c) for c in reversed(self.coeffs)))

    def to_json(self) -> list:
        return [self.field.to_json(c) for c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        F = self.field
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == F.zero:
                continue
            cj = F.to_json(c)
            cs = str(cj) if not isinstance(cj, list) else "(" + ",".join(map(str, cj)) + ")"
            if i == 0:
                parts.append(cs)
                continue
            mono = self.var if i == 1 else f"{self.var}^{i}"
            parts.append(mono if c == F.one else f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UniPoly({self}, over {self.field})"


# ── gcd ───────────────────────────────────────────────────────────────────

def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """
    MCD mónico. gcd(f, 0) = monic(f); gcd(0, 0) = 0.

    Raises:
        ContractError: cuerpos distintos
    """
    f._check(g)
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """(d, s, t) con s·f + t·g = d, d mónico."""
    f._check(g)
    F = f.field
    r0, r1 = f, g
    s0, s1 = UniPoly.one(F, f.var), UniPoly.zero(F, f.var)
    t0, t1 = UniPoly.zero(F, f.var), UniPoly.one(F, f.var)
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# ── Resultante por subresultantes ─────────────────────────────────────────

class FieldDomain:
    """Adaptador de un cuerpo finito como dominio de coeficientes."""

    def __init__(self, field: FiniteField) -> None:
        self.field = field
        self.zero = field.zero
        self.one = field.one

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    def add(self, a: Any, b: Any) -> Any:
        return self.field.add(a, b)

    def sub(self, a: Any, b: Any) -> Any:
        return self.field.sub(a, b)

    def mul(self, a: Any, b: Any) -> Any:
        return self.field.mul(a, b)

    def neg(self, a: Any) -> Any:
        return self.field.neg(a)

    def exquo(self, a: Any, b: Any) -> Any:
        return self.field.div(a, b)

    def pow(self, a: Any, e: int) -> Any:
        return self.field.pow(a, e)


class PolynomialDomain:
    """𝔽[var] como dominio: los coeficientes son UniPoly y la división es exacta."""

    def __init__(self, field: FiniteField, var: str) -> None:
        self.field = field
        self.var = var
        self.zero = UniPoly.zero(field, var)
        self.one = UniPoly.one(field, var)

    def is_zero(self, a: UniPoly) -> bool:
        return a.is_zero

    def add(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return a + b

    def sub(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return a - b

    def mul(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return a * b

    def neg(self, a: UniPoly) -> UniPoly:
        return -a

    def exquo(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return a.exact_div(b)

    def pow(self, a: UniPoly, e: int) -> UniPoly:
        result = self.one
        for _ in range(e):
            result = result * a
        return result


def _trim(coeffs: list, domain: Any) -> list:
    while coeffs and domain.is_zero(coeffs[-1]):
        coeffs.pop()
    return coeffs


def _prem(a: list, b: list, domain: Any) -> list:
    """Pseudo-resto lc(b)^{δ+1}·a mod b, sin divisiones."""
    db = len(b) - 1
    lcb = b[-1]
    rem = list(a)
    e = len(a) - len(b) + 1
    while rem and len(rem) - 1 >= db:
        lcr = rem[-1]
        shift = len(rem) - 1 - db
        rem = [domain.mul(lcb, c) for c in rem]
        for i, c in enumerate(b):
            rem[i + shift] = domain.sub(rem[i + shift], domain.mul(lcr, c))
        rem = _trim(rem, domain)
        e -= 1
    factor = domain.pow(lcb, e)
    return [domain.mul(factor, c) for c in rem]


def resultant_coeffs(a: Sequence[Any], b: Sequence[Any], domain: Any) -> Any:
    """
    Resultante de dos polinomios dados como listas de coeficientes del
    dominio (menor a mayor grado). Convención:
    Res(f, g) = lc(f)^{deg g} · ∏_{f(α)=0} g(α).
    """
    a = _trim(list(a), domain)
    b = _trim(list(b), domain)
    if not a or not b:
        raise ContractError("Resultante con un polinomio cero")
    sign = 1
    if len(a) < len(b):
        if (len(a) - 1) * (len(b) - 1) % 2:
            sign = -1
        a, b = b, a
    if len(b) == 1:
        res = domain.pow(b[0], len(a) - 1)
        return res if sign == 1 else domain.neg(res)

    g = domain.one
    h = domain.one
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = _prem(a, b, domain)
        a = b
        if not r:
            return domain.zero
        divisor = domain.mul(g, domain.pow(h, delta))
        b = [domain.exquo(c, divisor) for c in r]
        g = a[-1]
        if delta:
            h = domain.exquo(domain.pow(g, delta), domain.pow(h, delta - 1))
        if len(b) == 1:
            da = len(a) - 1
            res = domain.exquo(domain.pow(b[0], da), domain.pow(h, da - 1))
            return res if sign == 1 else domain.neg(res)


def resultant(f: UniPoly, g: UniPoly) -> Any:
    """
    Resultante de f y g sobre su cuerpo (subresultantes).

    Raises:
        ContractError: alguno es cero, o cuerpos/variables distintos
    """
    f._check(g)
    if f.var != g.var:
        raise ContractError(f"Variables distintas: {f.var} vs {g.var}")
    if f.is_zero or g.is_zero:
        raise ContractError("Resultante con un polinomio cero")
    return resultant_coeffs(f.coeffs, g.coeffs, FieldDomain(f.field))


# ── Irreducibilidad y factorización ───────────────────────────────────────

def frobenius_powers(f: UniPoly) -> list[UniPoly]:
    """Columnas X^{q·i} mod f, 0 ≤ i < deg f (q = |cuerpo|)."""
    x = UniPoly.monomial(f.field, 1, var=f.var)
    xq = x.pow_mod(f.field.order, f)
    cols = [UniPoly.one(f.field, f.var) % f]
    for _ in range(1, f.degree):
        cols.append((cols[-1] * xq) % f)
    return cols


def _apply_frobenius(h: UniPoly, cols: list[UniPoly]) -> UniPoly:
    """h ↦ h^q mod f, lineal sobre 𝔽_q."""
    F = h.field
    acc = [F.zero] * len(cols)
    for c, col in zip(h.coeffs, cols):
        if c == F.zero:
            continue
        for i, y in enumerate(col.coeffs):
            acc[i] = F.add(acc[i], F.mul(c, y))
    return UniPoly(F, acc, h.var)


def is_irreducible(f: UniPoly) -> bool:
    """Test de Ben-Or: gcd(X^{q^i} − X, f) = 1 para i ≤ deg/2."""
    if f.is_zero or f.degree < 1:
        return False
    if f.degree == 1:
        return True
    f = f.monic()
    x = UniPoly.monomial(f.field, 1, var=f.var)
    cols = frobenius_powers(f)
    h = x % f
    for _ in range(f.degree // 2):
        h = _apply_frobenius(h, cols)
        if not poly_gcd(h - x, f).is_one():
            return False
    return True


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """
    Pares (factor libre de cuadrados mónico, multiplicidad) con
    ∏ factor^mult = monic(f). Maneja derivada nula (f en X^p).
    """
    if f.is_zero:
        raise ContractError("Descomposición del polinomio cero")
    f = f.monic()
    if f.degree == 0:
        return []
    p = f.field.p
    out: list[tuple[UniPoly, int]] = []
    d = f.derivative()
    if d.is_zero:
        for g, m in squarefree_decomposition(f.pth_root()):
            out.append((g, m * p))
        return out
    c = poly_gcd(f, d)
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c.exact_div(y)
    if not c.is_one():
        for g, m in squarefree_decomposition(c.pth_root()):
            out.append((g, m * p))
    return out


def distinct_degree_factorization(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """f mónico libre de cuadrados → [(producto de irreducibles de grado d, d)]."""
    out: list[tuple[UniPoly, int]] = []
    rest = f
    x = UniPoly.monomial(f.field, 1, var=f.var)
    if rest.degree == 0:
        return out
    cols = frobenius_powers(rest)
    h = x % rest
    d = 0
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = _apply_frobenius(h, cols)
        g = poly_gcd(h - x, rest)
        if not g.is_one():
            out.append((g, d))
            rest = rest.exact_div(g)
            if rest.degree == 0:
                return out
            h = h % rest
            cols = [c % rest for c in cols[: rest.degree]]
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _random_poly(field: FiniteField, degree_bound: int, var: str, rng: random.Random) -> UniPoly:
    return UniPoly(field, (field.random_element(rng) for _ in range(degree_bound)), var)


def equal_degree_factorization(f: UniPoly, d: int, rng: random.Random) -> list[UniPoly]:
    """Cantor–Zassenhaus para q impar: separa f en irreducibles de grado d."""
    if f.degree == d:
        return [f]
    F = f.field
    cols = frobenius_powers(f)
    one = UniPoly.one(F, f.var)
    exponent = (F.order - 1) // 2
    while True:
        a = _random_poly(F, f.degree, f.var, rng)
        if a.is_zero or a.degree == 0:
            continue
        g = poly_gcd(a, f)
        if 0 < g.degree < f.degree:
            break
        # a^{(q^d−1)/2} = (a · a^q ⋯ a^{q^{d−1}})^{(q−1)/2}
        t = a % f
        cur = t
        for _ in range(d - 1):
            cur = _apply_frobenius(cur, cols)
            t = (t * cur) % f
        b = t.pow_mod(exponent, f) - one
        if b.is_zero:
            continue
        g = poly_gcd(b, f)
        if 0 < g.degree < f.degree:
            break
    return (
        equal_degree_factorization(g, d, rng)
        + equal_degree_factorization(f.exact_div(g), d, rng)
    )


def poly_factor(f: UniPoly, seed: int = 0) -> list[tuple[UniPoly, int]]:
    """
    Factorización completa en irreducibles mónicos con multiplicidad,
    ordenados por (grado, coeficientes lexicográficos).

    Raises:
        ContractError: f es cero
    """
    if f.is_zero:
        raise ContractError("Factorización del polinomio cero")
    rng = random.Random(seed)
    factors: list[tuple[UniPoly, int]] = []
    for part, mult in squarefree_decomposition(f):
        for chunk, d in distinct_degree_factorization(part):
            for irreducible in equal_degree_factorization(chunk, d, rng):
                factors.append((irreducible, mult))
    factors.sort(key=lambda fm: (fm[0].sort_key(), fm[1]))
    return factors


def roots_in(f: UniPoly, F: Optional[FiniteField] = None, seed: int = 0) -> list[Any]:
    """
    Raíces de f en F (sin multiplicidad, orden canónico). F debe contener
    al cuerpo de f; por defecto el propio cuerpo de f.

    Raises:
        ContractError: f es cero
    """
    if f.is_zero:
        raise ContractError("Raíces del polinomio cero")
    target = F or f.field
    g = f.change_field(target).monic() if target != f.field else f.monic()
    if g.degree == 0:
        return []
    x = UniPoly.monomial(target, 1, var=g.var)
    h = x.pow_mod(target.order, g)
    split = poly_gcd(h - x, g)
    if split.degree == 0:
        return []
    rng = random.Random(seed)
    roots = [
        target.neg(lin.coeffs[0])
        for lin in equal_degree_factorization(split, 1, rng)
    ]
    return sorted(set(roots), key=target.key)
