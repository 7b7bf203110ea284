"""Exception types shared across the package."""


class DcRecoverError(Exception):
    pass


class DimensionError(DcRecoverError, ValueError):
    """Image or grid shapes are incompatible (e.g. not a multiple of N)."""


class ParseError(DcRecoverError, ValueError):
    pass


class UnsupportedError(DcRecoverError, ValueError):
    pass


class EmptyRange(DcRecoverError, ValueError):
    """A DC search interval is inverted or not finite."""


class TooSmall(DimensionError):
    pass
