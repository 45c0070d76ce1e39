"""
Multiplicación por sustitución de Kronecker para polinomios en (x, s, t).

Los polinomios de división son homogéneos de peso: en cada monomio
x^d s^a t^b el exponente b queda fijado por (d, a) y el peso total. Eso
permite empaquetar sólo los índices (d, a) en un entero grande (una
"ranura" de bytes por índice), multiplicar con el entero nativo de Python
y desempaquetar. Es mucho más rápido que el producto diccionario a
diccionario para ψ_p con p ≈ 30.

Ranuras:
- 𝔽_p: coeficientes en [0, p), ranura sin signo; se reduce mod p al final.
- ℤ: coeficientes con signo; se empaqueta parte positiva menos negativa y
  se suma un sesgo de 2^{K−1} por ranura antes de leer, así cada ranura
  queda en [0, 2^K) sin préstamos.
"""

from __future__ import annotations

import sys
from array import array
from typing import Optional

_TYPECODES = {1: "B", 2: "H", 4: "I", 8: "Q"}


def _slot_bytes(bits: int) -> int:
    nbytes = (bits + 7) // 8
    for size in (1, 2, 4, 8):
        if nbytes <= size:
            return size
    return nbytes


def _pack(terms: dict[tuple[int, int], int], stride: int, slot: int, nslots: int) -> int:
    pos = bytearray(nslots * slot)
    neg: Optional[bytearray] = None
    for (d, a), c in terms.items():
        off = (d * stride + a) * slot
        if c >= 0:
            pos[off:off + slot] = c.to_bytes(slot, "little")
        else:
            if neg is None:
                neg = bytearray(nslots * slot)
            neg[off:off + slot] = (-c).to_bytes(slot, "little")
    value = int.from_bytes(pos, "little")
    if neg is not None:
        value -= int.from_bytes(neg, "little")
    return value


def _unpack(raw: bytes, slot: int):
    code = _TYPECODES.get(slot)
    if code is not None and array(code).itemsize == slot:
        values = array(code)
        values.frombytes(raw)
        if sys.byteorder == "big":
            values.byteswap()
        return values
    return [int.from_bytes(raw[i:i + slot], "little") for i in range(0, len(raw), slot)]


def kronecker_multiply(
    left: dict[tuple[int, int], int],
    right: dict[tuple[int, int], int],
    modulus: Optional[int] = None,
) -> dict[tuple[int, int], int]:
    """
    Producto de dos polinomios dados como {(d, a): coeficiente}.

    Args:
        left, right: términos con coeficientes ya normalizados
            (en [0, p) si hay módulo, enteros con signo si no)
        modulus: p para 𝔽_p, None para ℤ

    Returns:
        {(d, a): coeficiente} del producto, sin ceros
    """
    if not left or not right:
        return {}
    signed = modulus is None
    max_l = max(abs(c) for c in left.values())
    max_r = max(abs(c) for c in right.values())
    bound = max_l * max_r * min(len(left), len(right))
    slot = _slot_bytes(bound.bit_length() + (2 if signed else 1))

    stride = max(a for _, a in left) + max(a for _, a in right) + 1
    d_max = max(d for d, _ in left) + max(d for d, _ in right)
    nslots = (d_max + 1) * stride

    product = _pack(left, stride, slot, nslots) * _pack(right, stride, slot, nslots)

    half = 0
    if signed:
        half = 1 << (8 * slot - 1)
        bias_slot = b"\x00" * (slot - 1) + b"\x80"
        product += int.from_bytes(bias_slot * nslots, "little")

    values = _unpack(product.to_bytes(nslots * slot, "little"), slot)
    out: dict[tuple[int, int], int] = {}
    for idx, v in enumerate(values):
        if signed:
            v -= half
        elif v:
            v %= modulus
        if v:
            out[divmod(idx, stride)] = v
    return out
