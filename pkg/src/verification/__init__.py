"""
Verificación por primo: claims versionados, certificados y reportes.
"""

from .claim_registry import Claim, ClaimRegistry, get_claim_registry
from .models import (
    CheckResult,
    CheckStatus,
    DegreeLedger,
    EisensteinCertificate,
    LedgerRow,
    VerificationReport,
)
from .theorem_verifier import (
    check_coefficient_structure,
    check_vanishing_propagation,
    degree_ledger,
    eisenstein_certificate_eta,
    eisenstein_certificate_theta,
    run_all,
)
from .verification_service import VerificationService

__all__ = [
    "Claim",
    "ClaimRegistry",
    "get_claim_registry",
    "CheckResult",
    "CheckStatus",
    "DegreeLedger",
    "EisensteinCertificate",
    "LedgerRow",
    "VerificationReport",
    "check_coefficient_structure",
    "check_vanishing_propagation",
    "degree_ledger",
    "eisenstein_certificate_eta",
    "eisenstein_certificate_theta",
    "run_all",
    "VerificationService",
]
