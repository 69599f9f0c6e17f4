"""Exception types shared across the toolkit."""


class LoopkitError(Exception):
    """Base class for all toolkit errors."""


class InvalidLoopTable(LoopkitError):
    """The table is not a normalized Latin square (identity at index 0)."""


class NoTwoSidedInverse(LoopkitError):
    def __init__(self, element):
        super().__init__(f"element {element} has no two-sided inverse")
        self.element = element


class NotBol(LoopkitError):
    """Powers were requested on a loop that fails the right Bol identity."""


class NotBruck(LoopkitError):
    """The folder or loop is not Bruck (Bol + automorphic inverses)."""


class NotFaithful(LoopkitError):
    """The folder has a nontrivial core, so H-side constructions are ambiguous."""


class OrderBoundExceeded(LoopkitError):
    """Exhaustive loop routine invoked above the configured order bound."""


class NotNormal(LoopkitError):
    """The given subloop is not normal."""


class DegreeMismatch(LoopkitError):
    """Permutations of different degrees were mixed."""


class NotContained(LoopkitError):
    """An element or subgroup is not contained where required."""


class EnumerationBoundExceeded(LoopkitError):
    """Element enumeration invoked above the configured bound."""


class NotATransversal(LoopkitError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoFactorization(LoopkitError):
    """U != (U n H)(U n K); carries a witness element of U outside the product."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AutomorphismUnrealizable(LoopkitError):
    """The map fixing H and inverting K does not extend to an automorphism."""


class UnsupportedQ(LoopkitError):
    """q outside the supported odd prime powers."""


class ClassNotFound(LoopkitError):
    """The expected conjugacy class structure is absent."""


class NonIntegralNJ(LoopkitError):
    """A computed n_J value is not a nonnegative integer."""


class EvenOrder(LoopkitError):
    """The square-root loop construction needs a group of odd order."""


class NodeBudgetExceeded(LoopkitError):
    """Backtracking search exceeded its node budget."""


class ShapeMismatch(LoopkitError):
    def __init__(self, message, clause=None):
        super().__init__(message)
        self.clause = clause


class DecompositionFailed(LoopkitError):
    """The odd x 2-power-exponent decomposition failed; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
