"""
ToriCount Core Module
=====================

Provides the experiment layer of ToriCount:
- Report types
- Configuration management
- Counting service
- JSON and CSV export

Version: 1.0.0
"""

__version__ = "1.0.0"

# Report types
from .types import (
    CountMethod,
    CountReport,
    CosetDecomposition,
    Char0MainTerm,
    LangWeilRow,
    LangWeilReport,
)

# Configuration management
from .config import (
    LimitsConfig,
    NumericsConfig,
    ReportConfig,
    ToriCountConfig,
    get_config,
    reload_config,
    reset_config,
    set_config,
)

# Counting service
from .counter import (
    TorsionCounter,
    bound_exponent,
    general_bound_exponent,
    hypersurface_exponent,
    empirical_exponent,
    fink_minkowski_bound,
    cylinder_bound,
)

# Export service
from .exporter import (
    Exporter,
)

__all__ = [
    # Version
    "__version__",
    # Types
    "CountMethod",
    "CountReport",
    "CosetDecomposition",
    "Char0MainTerm",
    "LangWeilRow",
    "LangWeilReport",
    # Config
    "LimitsConfig",
    "NumericsConfig",
    "ReportConfig",
    "ToriCountConfig",
    "get_config",
    "reload_config",
    "reset_config",
    "set_config",
    # Counter
    "TorsionCounter",
    "bound_exponent",
    "general_bound_exponent",
    "hypersurface_exponent",
    "empirical_exponent",
    "fink_minkowski_bound",
    "cylinder_bound",
    # Exporter
    "Exporter",
]
