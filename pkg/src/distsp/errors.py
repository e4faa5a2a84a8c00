"""Exception types shared across the package."""


class GraphError(ValueError):
    """Invalid graph input: bad endpoint, bad weight, or malformed file."""


class ProtocolError(RuntimeError):
    """A distributed-protocol invariant was violated (implementation bug)."""


class TerminationSafetyError(ProtocolError):
    """A clean termination verdict was issued while work was still pending."""


class BenchError(RuntimeError):
    """Experiment harness failure, e.g. oracle mismatch under a clean verdict."""
