"""Exception and warning types raised by springgp."""


class SpringGPError(Exception):
    """Base class for all springgp errors."""


class NoAdmissibleIndex(SpringGPError):
    """Raised when g(k) > 0 for every k > 1, so no spring index admits a design."""

    def __init__(self, k_star, message=None):
        self.k_star = k_star
        if message is None:
            message = (
                f"no admissible spring index: positive root k*={k_star:.6g} "
                "does not exceed 1"
            )
        super().__init__(message)


class CaseInapplicable(SpringGPError):
    """Raised when a closed-form KKT case is requested outside its validity range."""


class OracleInfeasible(SpringGPError):
    """Raised when the grid oracle finds no feasible point inside its bracket."""

    def __init__(self, message, x1_bounds=None, x2_bounds=None):
        self.x1_bounds = x1_bounds
        self.x2_bounds = x2_bounds
        super().__init__(message)


class ParseError(SpringGPError):
    """Malformed or incomplete design-problem config."""

    def __init__(self, message, line=None, key=None):
        self.line = line
        self.key = key
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class ValidationError(SpringGPError):
    """Config values that parse but violate physical invariants.

    ``problems`` lists every violation found, not only the first.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class MultipleRootsSuspected(UserWarning):
    """g(k) changes sign more than once on (1, k*]."""


class PowerIndexWarning(UserWarning):
    """Power-law index outside the usual range for Hollomon metals (n > 1)."""
