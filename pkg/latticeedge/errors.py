"""Exception types raised by latticeedge"""


class LatticeEdgeError(Exception):
    """Base class for all latticeedge errors"""


class InvalidModelError(LatticeEdgeError, ValueError):
    """A law, model, sample set or configuration violates its invariants"""


class OracleInfeasibleError(LatticeEdgeError, RuntimeError):
    """The exact convolution oracle would exceed its atom budget"""

    def __init__(self, atoms: int, budget: int):
        self.atoms = atoms
        self.budget = budget
        super().__init__(
            f"oracle infeasible: {atoms} atoms exceeds budget of {budget}"
        )


class PrecisionExhaustedError(LatticeEdgeError, ArithmeticError):
    """A continued-fraction quotient cannot be certified at the stored precision"""

    def __init__(self, depth: int, name: str = ""):
        self.depth = depth
        label = f" for {name}" if name else ""
        super().__init__(
            f"precision exhausted{label}: partial quotient at depth {depth} "
            "is not certified by the stored decimal value"
        )


class ConvergentOverflowError(LatticeEdgeError, OverflowError):
    """Convergent numerator or denominator exceeded 128 bits"""


class UndefinedBoundError(LatticeEdgeError, ValueError):
    """A discrepancy bound has a vanishing sine in its denominator"""
