"""Точная арифметика циклической рациональной алгебры Чередника и колчанного многообразия."""

from .params import DeformParam, EtaSequence, RegimeError, StabParam, theta_order
from .schemas import ClaimRecord, RunReport, VerificationResult
from .series import TruncatedSeries
from .services.verification import CollectingSink, VerificationRunner
from .weyl import CommMonomial, WeylElement

__all__ = [
    "ClaimRecord",
    "CollectingSink",
    "CommMonomial",
    "DeformParam",
    "EtaSequence",
    "RegimeError",
    "RunReport",
    "StabParam",
    "TruncatedSeries",
    "VerificationResult",
    "VerificationRunner",
    "WeylElement",
    "theta_order",
]
