"""poprec: lossy population recovery over binary strings.

Samples pass through a bit-erasure channel that reveals each coordinate
independently with probability mu. This package samples that channel
reproducibly, computes minimum-sensitivity local inverses of its count
matrix by exact rational linear programming, recovers sparse distributions
by prefix extension, and ships an analysis lab for the duality and
complex-analysis facts behind the sensitivity bounds.

Everything probabilistic is exact: probabilities, matrices, LP pivots and
certificates all live in rational arithmetic (gmpy2 when available).
"""

from .channel import ListOracle, SampleOracle, erase, erase_block
from .core import (
    CountHistogram,
    OracleExhausted,
    Params,
    PoprecError,
    SparseDistribution,
    ValidationError,
    load_distribution,
    load_samples,
    rat,
    rational_backend,
    save_distribution,
    save_samples,
)
from .estimate import MassEstimate, compute_sample_count, estimate_mass
from .inverse import (
    LocalInverseCertificate,
    natural_estimator,
    sensitivity_report,
    solve_local_inverse,
)
from .recover import (
    RecoveryConfig,
    RecoveryResult,
    recover_population,
    recover_single,
)

__version__ = "0.1.0"

__all__ = [
    "CountHistogram",
    "ListOracle",
    "LocalInverseCertificate",
    "LossyChannel",
    "MassEstimate",
    "OracleExhausted",
    "Params",
    "PopulationRecoverer",
    "PoprecError",
    "RecoveryConfig",
    "RecoveryResult",
    "SampleOracle",
    "SparseDistribution",
    "ValidationError",
    "__version__",
    "compute_sample_count",
    "erase",
    "erase_block",
    "estimate_mass",
    "load_distribution",
    "load_samples",
    "natural_estimator",
    "rat",
    "rational_backend",
    "recover_population",
    "recover_single",
    "save_distribution",
    "save_samples",
    "sensitivity_report",
    "solve_local_inverse",
]

_LAZY = {"LossyChannel": "estimator", "PopulationRecoverer": "estimator"}


def __getattr__(name: str):
    # The sklearn facade is loaded on first use so that importing poprec
    # does not pull in scikit-learn.
    if name in _LAZY:
        from importlib import import_module

        module = import_module(f".{_LAZY[name]}", __name__)
        value = getattr(module, name)
        globals()[name] = value
        return value
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__():
    return sorted(set(globals()) | set(_LAZY))
