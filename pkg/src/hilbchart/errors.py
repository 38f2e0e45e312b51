"""Exception types shared across modules."""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class ResourceError(RuntimeError):
    """A configured budget (degree cap, assignment count) was exhausted."""


class InconclusiveError(ResourceError):
    """A partial Groebner basis cannot decide the question asked."""
