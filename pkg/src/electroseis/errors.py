"""Exception hierarchy shared across the toolkit.

Two broad failure classes matter for the command line surface: setup problems
(bad config, inadmissible parameters, geometry errors) and failures that occur
while number-crunching (blow-up, non-convergence, degenerate systems).
"""


class ElectroseisError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(ElectroseisError):
    """Invalid configuration, geometry, or input data (CLI exit code 1)."""


class AdmissibilityError(ValidationError):
    """Material parameters violate a positivity/SPD requirement."""


class NumericalError(ElectroseisError):
    """Runtime numerical failure: blow-up, non-convergence, degeneracy (CLI exit code 2)."""
