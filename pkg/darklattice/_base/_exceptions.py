from typing import Literal, Sequence


class DarkLatticeError(Exception):
    """Base class for every error raised by darklattice."""


class InvalidInput(DarkLatticeError):
    """
    Raised when the caller asked for something outside the model's domain.

    The command line maps this branch to exit status 2.
    """


class NumericalFailure(DarkLatticeError):
    """
    Raised when a computation ran but its result cannot be trusted.

    The command line maps this branch to exit status 1.
    """


class CapacityExceeded(InvalidInput):
    """
    Exception raised when a subspace or count is larger than the configured limit.

    Args:
        what (str): The quantity that overflowed (e.g. "lower dimension")
        value (int): The computed size
        limit (int): The configured limit
    """

    def __init__(self, what, value, limit):
        message = f"Capacity exceeded: {what} is {value}, limit is {limit}"
        super().__init__(message)


class StateNotInSubspace(InvalidInput):
    """
    Exception raised when a Fock state is looked up in a basis it does not belong to.

    Args:
        state (str): The serialized state
        reason (str): Why the state is not part of the subspace
    """

    def __init__(self, state, reason):
        message = f"State {state} is not in the subspace: {reason}"
        super().__init__(message)


class PositionOutOfRange(InvalidInput):
    """
    Exception raised when a basis position is outside its sector.

    Args:
        sector (str): "upper" or "lower"
        position (int): The requested position
        size (int): The sector dimension
    """

    def __init__(self, sector, position, size):
        message = f"Position {position} out of range for {sector} sector of size {size}"
        super().__init__(message)


class DimensionMismatch(InvalidInput):
    """
    Exception raised when two objects that must agree in shape do not.

    Args:
        context (str): Where the mismatch was detected
        expected: The expected dimension
        recieved: The dimension that was provided
    """

    def __init__(self, context, expected, recieved):
        message = f"Dimension mismatch in {context}. Expected: {expected} - Recieved: {recieved}"
        super().__init__(message)


class NonFiniteInput(InvalidInput):
    """
    Exception raised when a matrix or parameter contains NaN or infinity.

    Args:
        where (str): Name of the offending input
    """

    def __init__(self, where):
        super().__init__(f"Non-finite values in {where}")


class ZeroCoupling(InvalidInput):
    """
    Exception raised when an operation requires every coupling to be nonzero.

    A vanishing g_j decouples mode j entirely and changes the number of dark states, so it
    is rejected rather than silently producing a different count.

    Args:
        modes (Sequence[int]): 1-based indices of the zero couplings
    """

    def __init__(self, modes: Sequence[int]):
        listed = ", ".join(f"g{m}" for m in modes)
        message = f"Zero coupling for {listed}: every g_j must be nonzero"
        super().__init__(message)


class NonDegenerateDetunings(InvalidInput):
    """
    Exception raised when dark eigenstates are requested with unequal detunings.

    Args:
        spread (float): max |Delta_i - Delta_j|
        tolerance (float): The degeneracy tolerance that was exceeded
    """

    def __init__(self, spread, tolerance):
        message = (
            f"Detunings are not degenerate (spread {spread:.3e} > {tolerance:.3e}). "
            "Null vectors of C are then not eigenstates; pass the override flag to "
            "compute them anyway"
        )
        super().__init__(message)


class NonDegenerateFrequencies(InvalidInput):
    """
    Exception raised when the dark-mode construction is asked for unequal mode frequencies.

    Args:
        spread (float): max |omega_i - omega_j|
    """

    def __init__(self, spread):
        message = (
            f"Mode frequencies are not degenerate (spread {spread:.3e}); dark modes only "
            "decouple when every omega_j is equal"
        )
        super().__init__(message)


class ClosedFormIndexError(InvalidInput):
    """
    Exception raised when closed-form labels are outside their allowed ranges.

    Args:
        family (str): Which closed form was requested
        message (str): Description of the violated range
    """

    def __init__(self, family, message):
        super().__init__(f"Invalid index for {family}: {message}")


class InvalidSchedule(InvalidInput):
    """
    Exception raised for an unknown schedule kind or inconsistent schedule parameters.

    Args:
        kind (str): The requested schedule kind
        message (str): Description of the problem
    """

    def __init__(self, kind, message):
        super().__init__(f"Invalid schedule '{kind}': {message}")


class InvalidInitialState(InvalidInput):
    """
    Exception raised when a propagation starts from a state outside the subspace.

    Args:
        reason (str): What is wrong with the state
    """

    def __init__(self, reason):
        super().__init__(f"Invalid initial state: {reason}")


class ConfigError(InvalidInput):
    """
    Exception raised when a run configuration cannot be parsed or validated.

    Args:
        reason (Literal["parse", "validation", "override"]): Which stage failed
        detail (str): The underlying message, including position or offending key
    """

    def __init__(self, reason: Literal["parse", "validation", "override"], detail):
        match reason:
            case "parse":
                message = f"Config is not valid JSON: {detail}"
            case "validation":
                message = f"Config failed validation:\n{detail}"
            case "override":
                message = f"Invalid command-line override: {detail}"
            case _:
                message = f"Config error: {detail}"
        super().__init__(message)


class ParameterValidationError(InvalidInput):
    """
    Exception raised when model parameters fail validation.
    Aggregates all validation problems into a single error message.
    """

    def __init__(self, problems):
        message = "Model parameters failed to be validated: \n"
        message += "\n".join(problems)
        super().__init__(message)


class PivotBreakdown(NumericalFailure):
    """
    Exception raised when echelon elimination meets a pivot that is not usable.

    Args:
        column (int): 0-based pivot column
        reason (str): What was wrong with the pivot block
    """

    def __init__(self, column, reason):
        super().__init__(f"Pivot breakdown at column {column}: {reason}")


class RankDeficiency(NumericalFailure):
    """
    Exception raised when Gram-Schmidt meets a vector in the span of its predecessors.

    Args:
        index (int): 0-based index of the dependent vector
        ratio (float): Remaining norm relative to the original norm
    """

    def __init__(self, index, ratio):
        message = (
            f"Vector {index} is linearly dependent on the previous vectors "
            f"(remaining norm ratio {ratio:.3e})"
        )
        super().__init__(message)


class TemplateViolation(NumericalFailure):
    """
    Exception raised when a coupling matrix does not have the expected block form.
    Aggregates all offending entries into a single error message.
    """

    def __init__(self, problems):
        message = "Coupling matrix violates the block template: \n"
        message += "\n".join(problems)
        super().__init__(message)


class DarkCountMismatch(NumericalFailure):
    """
    Exception raised when a numerical null space disagrees with the counting law.

    Args:
        N (int): Mode count
        n (int): Excitation number
        expected (int): C(N+n-2, N-2)
        recieved (int): The dimension that was found
    """

    def __init__(self, N, n, expected, recieved):
        message = (
            f"Dark-state count mismatch for N={N}, n={n}. "
            f"Expected: {expected} - Recieved: {recieved}"
        )
        super().__init__(message)


class DriftBudgetExceeded(NumericalFailure):
    """
    Exception raised when RK4 step halving cannot bring the norm drift under budget.

    Args:
        drift (float): Drift reached at the finest step
        budget (float): The requested bound
        steps (int): Number of steps used in the last attempt
    """

    def __init__(self, drift, budget, steps):
        message = (
            f"Norm drift {drift:.3e} exceeds budget {budget:.3e} "
            f"after refining to {steps} steps"
        )
        super().__init__(message)


class VerificationFailed(NumericalFailure):
    """
    Exception raised when a verification report contains failed checks.

    Args:
        failed (Sequence[str]): Names of the failed checks
    """

    def __init__(self, failed: Sequence[str]):
        super().__init__("Verification failed: " + ", ".join(failed))
