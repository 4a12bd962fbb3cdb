class ConsistencyError(RuntimeError):
    """Two exact computations that must agree did not.

    Raised only for internal arithmetic bugs; a correct build never
    produces one. Kept separate from ``ValueError`` so callers can tell a
    bad argument from a broken invariant.
    """
