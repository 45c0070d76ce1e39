"""
Salida de diagnóstico con tags entre corchetes ([Cache], [DivPoly], ...).

Todo va a stderr: stdout queda reservado para los reportes, que deben
ser byte-idénticos entre corridas.
"""

import sys

from . import config


def log(tag: str, message: str) -> None:
    """Imprime una línea de progreso; silenciosa salvo VERIFY_VERBOSE=true."""
    if config.VERBOSE:
        print(f"[{tag}] {message}", file=sys.stderr)


def log_error(tag: str, message: str) -> None:
    """Imprime siempre (errores que el usuario tiene que ver)."""
    print(f"[{tag}][ERROR] {message}", file=sys.stderr)
