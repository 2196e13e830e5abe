"""Shared exception types."""


class CartanError(ValueError):
    """Cartan matrix is malformed or not of finite type."""


class DominanceError(ValueError):
    """A dominant coweight was required."""


class GalleryError(ValueError):
    """A sequence of alcoves does not form a gallery of the requested type."""


class OracleMismatch(AssertionError):
    """A combinatorial count disagrees with an independent formula."""


class PrecisionExhausted(RuntimeError):
    """Truncated series arithmetic cannot certify a needed valuation."""


class GenericityError(RuntimeError):
    """Could not sample a chart point satisfying the genericity conditions."""
