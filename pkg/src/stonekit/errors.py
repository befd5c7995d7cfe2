"""Exception types shared across the package.

User-facing validation errors derive from StonekitError directly.  States
that the underlying theory declares impossible derive from InternalError;
hitting one of those is a bug trap, never a property of the input.
"""


class StonekitError(Exception):
    """Base class for every error raised by this package."""


class CycleError(StonekitError):
    """Closing a relation would identify two distinct elements (x <= y <= x)."""


class SizeError(StonekitError):
    """An enumeration would exceed the configured cap."""


class NotALattice(StonekitError):
    def __init__(self, law, witness):
        super().__init__(f"{law} fails at {witness}")
        self.law = law
        self.witness = witness


class NotDistributive(StonekitError):
    def __init__(self, triple):
        a, b, c = triple
        super().__init__(
            f"a&(b|c) != (a&b)|(a&c) at (a,b,c)=({a},{b},{c})"
        )
        self.triple = triple


class NotMonotone(StonekitError):
    """A map fails to preserve order (equivalently, fails continuity)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotJoinPreserving(StonekitError):
    def __init__(self, witness):
        super().__init__(f"f(a|b) != f(a)|f(b) at (a,b)={witness}")
        self.witness = witness


class NotMeetPreserving(StonekitError):
    def __init__(self, witness):
        super().__init__(f"f(a&b) != f(a)&f(b) at (a,b)={witness}")
        self.witness = witness


class BoundsViolated(StonekitError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotT0(StonekitError):
    """The operation needs a T0 space and got one with indistinguishable points."""


class MissingSplitting(StonekitError):
    """A fork decision needs splitting maps that were not supplied."""


class HypothesisFailed(StonekitError):
    """A ladder diagram violates one of a lemma's hypotheses."""

    def __init__(self, which, witness):
        super().__init__(f"hypothesis {which} fails (witness: {witness})")
        self.which = which
        self.witness = witness


class SplitEquationFailed(StonekitError):
    def __init__(self, which, witness):
        super().__init__(f"split equation {which} fails at {witness}")
        self.which = which
        self.witness = witness


class NotAutomorphism(StonekitError):
    """A group element assignment is not an order-automorphism."""


class InternalError(StonekitError):
    """A theorem-guaranteed property failed; this is a bug, not bad input."""


class NotEqualizerImage(InternalError):
    """Split equations hold but image(f) misses part of the agreement set."""

    def __init__(self, missing):
        super().__init__(f"agreement elements missing from image(f): {missing}")
        self.missing = missing


class OracleMismatch(InternalError):
    """A construction disagrees with its independent brute-force oracle."""


class InvariantViolation(InternalError):
    """A corpus suite observed a counterexample to a checked invariant."""
