"""burnside_sharp"""

# pylint: disable=wrong-import-position

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("burnside-sharp")
except PackageNotFoundError:
    __version__ = "0.0.0"

from .errors import (  # noqa: F401,E402
    BracketError,
    BurnsideSharpError,
    ConfigError,
    ConvergenceError,
    DomainError,
    MagnitudeError,
    NonFiniteError,
    RegimeError,
    SweepRangeError,
)
from .extprec import (  # noqa: F401,E402
    HALF_LOG_2PI,
    LN2,
    PI,
    ExtReal,
    ext_add,
    ext_div,
    ext_exp,
    ext_expm1,
    ext_log,
    ext_log1p,
    ext_mul,
    ext_sub,
)
from .iterable import Stream  # noqa: F401,E402
from .logfact import (  # noqa: F401,E402
    LogFactorial,
    Regime,
    log_factorial,
    log_factorial_exact,
    log_factorial_series,
    log_factorial_sweep,
    stirling_partial_sum,
)
from .approx import (  # noqa: F401,E402
    ApproxKind,
    ApproxTag,
    a_star,
    error_budget,
    log_approx,
    log_burnside,
    log_f,
    log_sharp_lower,
    log_sharp_upper,
    log_stirling,
    signed_rel_error,
)
from .solver import (  # noqa: F401,E402
    RootResult,
    residual_g,
    residual_h,
    solve_a_n,
    solve_a_star,
)
from .verify import (  # noqa: F401,E402
    BoundReport,
    BoundStatus,
    LimitRow,
    MonotoneVerdict,
    accuracy_comparison,
    check_ladder,
    limit_diagnostics,
    probe_lower_optimality,
    probe_upper_optimality,
    verify_bounds,
    verify_monotone,
)
