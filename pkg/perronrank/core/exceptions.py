from typing import Any, Dict, List, Optional


class PerronRankException(Exception):
    """Base exception for the perronrank toolkit."""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)


class ValidationException(PerronRankException):
    """Raised when a flag or input value fails validation before computing."""

    def __init__(self, field_name: str, reason: str):
        super().__init__(
            message=f"Validation failed for '{field_name}': {reason}",
            error_code="VALIDATION_ERROR",
            details={"field_name": field_name, "reason": reason}
        )


class OverflowRiskException(PerronRankException):
    """Raised when exp would be evaluated beyond the safe exponent range."""

    def __init__(self, exponent: float, threshold: float):
        super().__init__(
            message=(
                f"exp argument magnitude {exponent:.6g} exceeds {threshold:g}; "
                "use the log-domain solver instead"
            ),
            error_code="OVERFLOW_RISK",
            details={"exponent": exponent, "threshold": threshold}
        )


class NonPositiveEntryException(PerronRankException):
    """Raised when a vector expected to be positive is not."""

    def __init__(self, index: int, value: float):
        super().__init__(
            message=f"Entry {index} is not a positive finite number: {value!r}",
            error_code="NON_POSITIVE_ENTRY",
            details={"index": index, "value": value}
        )


class NoConvergenceException(PerronRankException):
    """Raised when an iterative solver exhausts its iteration budget."""

    def __init__(self, solver: str, iterations: int, residual: float):
        super().__init__(
            message=f"Solver '{solver}' did not converge in {iterations} iterations (residual {residual:.3e})",
            error_code="NO_CONVERGENCE",
            details={"solver": solver, "iterations": iterations, "residual": residual}
        )


class NonUniqueTropicalException(PerronRankException):
    """Raised when a unique tropical eigenvector is required but several exist."""

    def __init__(self, eigen_data: Any):
        self.eigen_data = eigen_data
        super().__init__(
            message=(
                f"Tropical eigenvector is not unique: {len(eigen_data.basis)} distinct "
                f"critical columns at nodes {eigen_data.critical_nodes}"
            ),
            error_code="NON_UNIQUE_TROPICAL",
            details=eigen_data.model_dump(mode="json")
        )


class PositiveCycleException(PerronRankException):
    """Raised when a max-plus closure is requested for a matrix with a positive cycle."""

    def __init__(self, cycle_mean: float):
        super().__init__(
            message=f"Max cycle mean {cycle_mean:.6g} is positive; the Kleene star diverges",
            error_code="POSITIVE_CYCLE",
            details={"cycle_mean": cycle_mean}
        )


class DegenerateDenominatorException(PerronRankException):
    """Raised when n*kappa - 2*||Xi|| is not positive."""

    def __init__(self, norm_xi: float, n: int, kappa: float):
        super().__init__(
            message=f"n*kappa - 2*||Xi|| = {n * kappa - 2 * norm_xi:.6g} is not positive",
            error_code="DEGENERATE_DENOMINATOR",
            details={"norm_xi": norm_xi, "n": n, "kappa": kappa}
        )


class NotApplicableException(PerronRankException):
    """Raised when the perturbation bound is requested outside rho < 1/2."""

    def __init__(self, rho: float):
        super().__init__(
            message=f"Perturbation bound not applicable: rho = {rho:.6g} >= 1/2",
            error_code="NOT_APPLICABLE",
            details={"rho": rho}
        )


class NotInFiberException(PerronRankException):
    """Raised when a matrix does not have the requested Perron pair."""

    def __init__(self, row_sums: List[float], tol: float):
        super().__init__(
            message="Matrix is not in the requested Kalman fiber (row sums of Psi differ from 1)",
            error_code="NOT_IN_FIBER",
            details={"row_sums": row_sums, "tol": tol}
        )


class NotInZeroFiberException(PerronRankException):
    """Raised when an additive matrix is not ranked as zero at the given k."""

    def __init__(self, k_label: str, spread: float, row_constants: List[float], tol: float):
        super().__init__(
            message=f"Matrix is not in the zero fiber at k={k_label}: row-constant spread {spread:.3e} > {tol:.1e}",
            error_code="NOT_IN_ZERO_FIBER",
            details={"k": k_label, "spread": spread, "row_constants": row_constants, "tol": tol}
        )


class InternalInconsistencyException(PerronRankException):
    """Raised when an identity that must hold by construction fails."""

    def __init__(self, operation: str, reason: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=f"Internal inconsistency in '{operation}': {reason}",
            error_code="INTERNAL_INCONSISTENCY",
            details={"operation": operation, "reason": reason, **(details or {})}
        )


class MissingObjectiveException(PerronRankException):
    """Raised when a sweep table holds no data for the requested objective."""

    def __init__(self, objective: str):
        super().__init__(
            message=f"Sweep table has no populated cells for objective '{objective}'",
            error_code="MISSING_OBJECTIVE",
            details={"objective": objective}
        )
