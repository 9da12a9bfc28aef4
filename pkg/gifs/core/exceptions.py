"""
GIFS error hierarchy
Every error carries the process exit code the CLI reports for it
"""

from typing import Any, Dict, Optional


class GifsError(Exception):
    """Base class for all toolkit errors"""
    
    exit_code: int = 1
    
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ConfigurationError(GifsError, ValueError):
    """Definition file or command line settings are invalid"""
    
    def __init__(self, message: str, field: Optional[str] = None, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)
        self.field = field


class DimensionMismatchError(GifsError, ValueError):
    """Points, matrices or clouds disagree on the ambient dimension"""


class ArityError(GifsError, ValueError):
    """A map received a number of arguments different from its order"""


class EmptyCloudError(GifsError, ValueError):
    """An operation that needs a nonempty point cloud received an empty one"""


class AddressError(GifsError, ValueError):
    """Malformed code-space address, level block, path or index pair"""


class NonAffineSystemError(GifsError, ValueError):
    """A closed-form algorithm was asked to work on a non-affine map"""


class SingularSystemError(GifsError, ValueError):
    """(I - sum of the map's matrices) has no inverse"""


class ConvergenceError(GifsError):
    """Fixed-point iteration did not settle within the iteration limit"""


class BudgetExceededError(GifsError):
    """A doubly exponential enumeration or table would exceed its budget"""
    
    exit_code = 3
    
    def __init__(self, what: str, requested: int, budget: int):
        super().__init__(
            f"{what} needs {requested} entries, budget is {budget} (raise GIFS_BUDGET to allow it)",
            {"what": what, "requested": requested, "budget": budget},
        )
        self.requested = requested
        self.budget = budget


class OutputError(GifsError):
    """An image or report could not be written or read back"""
    
    def __init__(self, message: str, path: str):
        super().__init__(f"{message}: {path}", {"path": path})
        self.path = path
