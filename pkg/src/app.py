"""
Punto de entrada de la CLI del verificador.

Subcomandos:
    divpoly     ψ_m sobre ℤ o 𝔽_p
    theta       coeficientes a_k de θ
    eta         tablas b / c de η
    ssj         tabla supersingular de p
    verify      claims por primo (reporte por primo, ordenado)
    specialize  muestras de curvas ordinarias sobre 𝔽_q
    warm        precalcula la cache de ψ hasta m_max

Uso:
    python -m src.app divpoly --m 3 --ring Z
    python -m src.app verify --primes 5,7,11,13 --n 2
    python -m src.app specialize --p 5 --q 5 --samples 50 --n 2 --seed 7

Exit codes: 0 todo pasa, 1 falla de verificación, 2 error de uso o presupuesto.
"""

import argparse
import asyncio
import sys
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError

from . import config
from .algebra.weighted_poly import ZZ, fp
from .cache.cache_service import get_cache_service, reset_cache_service
from .console import log, log_error
from .curves.specializer import Specializer
from .curves.supersingular import supersingular_table
from .divpoly.division_poly import division_poly, get_table, reset_tables
from .divpoly.frobenius_form import check_budget, extract_eta, extract_theta
from .errors import BudgetExceededError, ContractError
from .models.run_config import RunConfig
from .serialization import get_serializer
from .verification.verification_service import VerificationService

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _parse_primes(text: str) -> list[int]:
    try:
        return [int(chunk) for chunk in text.split(",") if chunk.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Lista de primos inválida: '{text}'")


def parse_arguments(argv: Optional[list[str]] = None) -> argparse.Namespace:
    """Parsea los argumentos de línea de comandos."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--cache-dir",
        type=str,
        default=None,
        help=f"Directorio de la cache de ψ (default: {config.CACHE_DIR})",
    )
    common.add_argument(
        "--format",
        choices=["json", "text"],
        default="json",
        help="Formato del reporte (default: json)",
    )
    common.add_argument(
        "--output",
        type=str,
        default=None,
        help="Archivo de salida (default: stdout)",
    )

    parser = argparse.ArgumentParser(
        description="Verificador de polinomios de división mod p y torres de p^n-torsión"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_div = sub.add_parser("divpoly", parents=[common], help="ψ_m sobre ℤ o 𝔽_p")
    p_div.add_argument("--m", type=int, required=True)
    p_div.add_argument("--ring", choices=["Z", "Fp"], default="Z")
    p_div.add_argument("--p", type=int, default=None, help="Primo (requerido con --ring Fp)")

    for name, help_text in (("theta", "Coeficientes de θ"), ("eta", "Tablas b / c de η"), ("ssj", "Tabla supersingular")):
        p_one = sub.add_parser(name, parents=[common], help=help_text)
        p_one.add_argument("--p", type=int, required=True)
        if name != "ssj":
            p_one.add_argument("--budget", type=str, default=config.DEFAULT_BUDGET)

    p_ver = sub.add_parser("verify", parents=[common], help="Claims por primo")
    p_ver.add_argument("--primes", type=_parse_primes, required=True, help="Ej: 5,7,11,13")
    p_ver.add_argument("--n", type=int, default=1)
    p_ver.add_argument("--budget", type=str, default=config.DEFAULT_BUDGET)
    p_ver.add_argument("--seed", type=int, default=config.DEFAULT_SEED)

    p_spec = sub.add_parser("specialize", parents=[common], help="Especializaciones sobre 𝔽_q")
    p_spec.add_argument("--p", type=int, required=True)
    p_spec.add_argument("--q", type=int, default=None, help="Orden del cuerpo (default: p)")
    p_spec.add_argument("--samples", type=int, default=10)
    p_spec.add_argument("--n", type=int, default=1)
    p_spec.add_argument("--seed", type=int, default=config.DEFAULT_SEED)

    p_warm = sub.add_parser("warm", parents=[common], help="Precalcula la cache de ψ")
    p_warm.add_argument("--m-max", type=int, required=True)
    p_warm.add_argument("--ring", choices=["Z", "Fp"], default="Z")
    p_warm.add_argument("--p", type=int, default=None)

    return parser.parse_args(argv)


def _emit(args: argparse.Namespace, data: Any) -> None:
    text = data if isinstance(data, str) else get_serializer(args.format).serialize(data)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        log("CLI", f"Reporte escrito en {args.output}")
    else:
        sys.stdout.write(text + "\n")


def _ring_from_args(args: argparse.Namespace):
    if args.ring == "Z":
        return ZZ
    if args.p is None:
        raise ContractError("--ring Fp requiere --p")
    RunConfig(primes=[args.p])
    return fp(args.p)


# ── Subcomandos ───────────────────────────────────────────────────────────

def cmd_divpoly(args: argparse.Namespace) -> int:
    if args.m < 1:
        raise ContractError(f"--m={args.m} debe ser ≥ 1")
    psi = division_poly(args.m, _ring_from_args(args))
    _emit(args, str(psi))
    return EXIT_OK


def cmd_theta(args: argparse.Namespace) -> int:
    RunConfig(primes=[args.p], budget=args.budget)
    check_budget(args.p, args.budget)
    _emit(args, extract_theta(args.p).to_json())
    return EXIT_OK


def cmd_eta(args: argparse.Namespace) -> int:
    RunConfig(primes=[args.p], budget=args.budget)
    check_budget(args.p, args.budget)
    _emit(args, extract_eta(args.p).to_json())
    return EXIT_OK


def cmd_ssj(args: argparse.Namespace) -> int:
    RunConfig(primes=[args.p])
    _emit(args, supersingular_table(args.p).to_json())
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    run_config = RunConfig(
        primes=args.primes,
        n_max=args.n,
        seed=args.seed,
        budget=args.budget,
        cache_dir=args.cache_dir,
        output=args.output,
        format=args.format,
    )
    reports = asyncio.run(VerificationService().verify_primes(run_config))
    _emit(args, [report.to_payload() for report in reports])
    failed = [r for r in reports if not r.passed]
    for report in failed:
        log_error("Verify", f"p={report.p}: fallan {report.failing_ids}")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_specialize(args: argparse.Namespace) -> int:
    run_config = RunConfig(
        primes=[args.p],
        q=args.q if args.q is not None else args.p,
        n_max=args.n,
        seed=args.seed,
        samples=args.samples,
        cache_dir=args.cache_dir,
        output=args.output,
        format=args.format,
    )
    specializer = Specializer(args.p, run_config.q, run_config.seed)
    report = specializer.run(run_config.samples, run_config.n_max)
    _emit(args, report.to_payload())
    if not report.passed:
        log_error("Specialize", f"p={args.p} q={run_config.q}: alguna muestra no coincide")
        return EXIT_FAILED
    return EXIT_OK


def cmd_warm(args: argparse.Namespace) -> int:
    if args.m_max < 1:
        raise ContractError(f"--m-max={args.m_max} debe ser ≥ 1")
    ring = _ring_from_args(args)
    get_table(ring).warm(args.m_max)
    _emit(args, {"ring": ring.tag, "m_max": args.m_max, "cache": get_cache_service().stats()})
    return EXIT_OK


COMMANDS = {
    "divpoly": cmd_divpoly,
    "theta": cmd_theta,
    "eta": cmd_eta,
    "ssj": cmd_ssj,
    "verify": cmd_verify,
    "specialize": cmd_specialize,
    "warm": cmd_warm,
}


def main(argv: Optional[list[str]] = None) -> int:
    """Función principal; devuelve el exit code."""
    args = parse_arguments(argv)

    if args.cache_dir:
        # un directorio explícito activa la cache aunque el entorno la apague
        reset_cache_service(args.cache_dir, enabled=True)
        reset_tables()

    try:
        return COMMANDS[args.command](args)
    except BudgetExceededError as e:
        log_error("CLI", f"{e} (estimado={e.estimate}, límite={e.limit})")
        return EXIT_USAGE
    except ValidationError as e:
        log_error("CLI", f"Configuración inválida: {e.errors()[0]['msg']}")
        return EXIT_USAGE
    except ContractError as e:
        log_error("CLI", str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
