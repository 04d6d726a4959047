"""Exception types shared across the package."""


class DyLoomError(Exception):
    pass


class DegreeMismatch(DyLoomError, ValueError):
    pass


class SizeMismatch(DyLoomError, ValueError):
    pass


class InvalidCycle(DyLoomError, ValueError):
    pass


class DegenerateGrid(DyLoomError, ValueError):
    pass


class RoutingBreak(DyLoomError, RuntimeError):
    """A strand could not be followed to the boundary."""


class CocycleRequired(DyLoomError, RuntimeError):
    """A bracket output feeds a cobracket; normalizing would need the cocycle rule."""


class NonTermination(DyLoomError, RuntimeError):
    pass


class BudgetExceeded(DyLoomError, RuntimeError):
    pass


class CacheCorrupt(DyLoomError, RuntimeError):
    pass
