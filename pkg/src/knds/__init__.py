"""Kerr-Newman-de Sitter horizons, temperatures and zero-temperature configurations."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    CONSTANTS,
    SourceParams,
    eval_metric,
    from_geometric,
    horizon_polynomial,
    horizon_polynomial_deriv,
    to_geometric,
)
from .errors import (  # noqa: E402
    DomainError,
    KNdSError,
    NoStableSolution,
    NumericalFailure,
    OracleFailure,
)
from .horizons import (  # noqa: E402
    Coincidence,
    HorizonSet,
    classify_region,
    detect_coincidence,
    solve_horizons,
    solve_horizons_kn,
)
from .stability import (  # noqa: E402
    StableSolution,
    check_regge_relations,
    cosmos_mass,
    stable_mass_closed_form,
    stable_solution_oracle,
    triple_coincidence,
)
from .thermo import temperature_report  # noqa: E402

__all__ = [
    "__version__",
    "CONSTANTS",
    "SourceParams",
    "eval_metric",
    "from_geometric",
    "horizon_polynomial",
    "horizon_polynomial_deriv",
    "to_geometric",
    "DomainError",
    "KNdSError",
    "NoStableSolution",
    "NumericalFailure",
    "OracleFailure",
    "Coincidence",
    "HorizonSet",
    "classify_region",
    "detect_coincidence",
    "solve_horizons",
    "solve_horizons_kn",
    "StableSolution",
    "check_regge_relations",
    "cosmos_mass",
    "stable_mass_closed_form",
    "stable_solution_oracle",
    "triple_coincidence",
    "temperature_report",
]
