"""Faultline - fault-tolerant resource estimates for quantum chemistry"""

__version__ = "1.0.0"

# Export main classes for easy importing
from .clifford_frame import CliffordFrame
from .config_manager import ConfigManager, RunConfig
from .cost_model import CostReport, ErrorBudget, MolecularInstance, total_cost
from .factorizer import FactorizedHamiltonian, factorize
from .ft_overhead import FtParams, FtReport, NoiseRegime, estimate_overhead
from .molecule_table import MoleculeTable, ingest
from .pauli import PauliString

__all__ = [
    "CliffordFrame",
    "ConfigManager",
    "RunConfig",
    "CostReport",
    "ErrorBudget",
    "MolecularInstance",
    "total_cost",
    "FactorizedHamiltonian",
    "factorize",
    "FtParams",
    "FtReport",
    "NoiseRegime",
    "estimate_overhead",
    "MoleculeTable",
    "ingest",
    "PauliString",
]
