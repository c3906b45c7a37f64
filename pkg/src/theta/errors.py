class SiegelError(ValueError):
    """ Period matrix is not a point of the Siegel upper half-space """
    pass

class DimensionError(ValueError):
    """ Vector, bit vector or matrix sizes do not match g """
    pass

class IllConditionedError(RuntimeError):
    """ Truncation radius needed for the requested accuracy exceeds the cap """
    pass

class ConvergenceError(RuntimeError):
    """ Iterative search did not converge within its budget """
    pass
