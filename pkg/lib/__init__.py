# Core shared components for the matroid certificate toolkit

from .config import config
from .call_ledger import CallLedger
from .data_models import (
    AxiomReport,
    VerificationReport,
    CensusResult,
    Overflow,
    FreedomReport,
    BudgetScan,
)
from .errors import MatroidError
from .gf_linalg import FieldElement, FieldMatrix, Flat
from .utils import load_json, save_json, subsets, format_duration

__all__ = [
    'config',
    'CallLedger',
    'AxiomReport', 'VerificationReport', 'CensusResult', 'Overflow', 'FreedomReport', 'BudgetScan',
    'MatroidError',
    'FieldElement', 'FieldMatrix', 'Flat',
    'load_json', 'save_json', 'subsets', 'format_duration',
]
