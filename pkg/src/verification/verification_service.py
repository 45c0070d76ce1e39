"""
VerificationService: corre run_all para varios primos en paralelo.

Un worker por primo, acotado por VERIFY_MAX_WORKERS. run_all es síncrono
y CPU-bound, así que va a un ProcessPoolExecutor vía run_in_executor; los
reportes se devuelven ordenados por primo sin importar cuál termina antes.
"""

from __future__ import annotations

import asyncio
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from functools import partial
from typing import Optional

try:
    from .. import config
    from ..cache.cache_service import reset_cache_service
    from ..console import log
    from ..divpoly.division_poly import reset_tables
    from ..divpoly.frobenius_form import check_budget
    from ..models.run_config import RunConfig
    from .models import VerificationReport
    from .theorem_verifier import run_all
except ImportError:
    from src import config
    from src.cache.cache_service import reset_cache_service
    from src.console import log
    from src.divpoly.division_poly import reset_tables
    from src.divpoly.frobenius_form import check_budget
    from src.models.run_config import RunConfig
    from src.verification.models import VerificationReport
    from src.verification.theorem_verifier import run_all


def _verify_in_worker(p: int, n: int, run_config: RunConfig) -> VerificationReport:
    """Punto de entrada del worker: apunta la cache al directorio pedido."""
    if run_config.cache_dir:
        reset_cache_service(run_config.cache_dir, enabled=True)
        reset_tables()
    return run_all(p, n, run_config)


class VerificationService:

    def __init__(self, max_workers: Optional[int] = None, use_processes: bool = True) -> None:
        self._max_workers = max_workers or config.MAX_WORKERS
        self._use_processes = use_processes

    def _make_executor(self, jobs: int) -> Executor:
        workers = max(1, min(self._max_workers, jobs))
        if self._use_processes:
            return ProcessPoolExecutor(max_workers=workers)
        return ThreadPoolExecutor(max_workers=workers)

    async def verify_primes(self, run_config: RunConfig) -> list[VerificationReport]:
        """
        Raises:
            BudgetExceededError: algún primo supera el presupuesto (antes de lanzar workers)
        """
        primes = sorted(set(run_config.primes))
        for p in primes:
            check_budget(p, run_config.budget)

        loop = asyncio.get_running_loop()
        log("Verify", f"{len(primes)} primos, hasta {self._max_workers} workers")
        with self._make_executor(len(primes)) as executor:
            tasks = [
                loop.run_in_executor(
                    executor, partial(_verify_in_worker, p, run_config.n_max, run_config)
                )
                for p in primes
            ]
            reports = await asyncio.gather(*tasks)
        return sorted(reports, key=lambda r: r.p)
