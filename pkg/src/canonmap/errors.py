"""Exception hierarchy. Each error carries a stable ``code`` used by the CLI."""


class CanonMapError(Exception):
    code = "ERROR"


class ModulusMismatch(CanonMapError, ValueError):
    code = "MODULUS_MISMATCH"


class SingularMatrix(CanonMapError, ValueError):
    code = "SINGULAR_MATRIX"


class FormulaMismatch(CanonMapError):
    code = "FORMULA_MISMATCH"


class SumMismatch(CanonMapError, ValueError):
    code = "SUM_MISMATCH"


class DegenerateNet(CanonMapError):
    code = "DEGENERATE_NET"


class DepthExceeded(CanonMapError):
    code = "DEPTH_EXCEEDED"


class HypothesisFailed(CanonMapError):
    code = "HYPOTHESIS_FAILED"


class ClassInconsistent(CanonMapError):
    code = "CLASS_INCONSISTENT"
