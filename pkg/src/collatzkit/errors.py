"""Exception types shared across the package."""


class DomainError(ValueError):
    """A value lies outside the domain of the requested map or operation."""


class InvalidModulusError(ValueError):
    """A modulus was zero or negative."""


class SplitRequiredError(Exception):
    """A residue class straddles several branch guards of a piecewise map.

    The class can only be propagated after refining it to the stated modulus.
    """

    def __init__(self, cls, refinement_modulus, guards):
        self.cls = cls
        self.refinement_modulus = refinement_modulus
        self.guards = tuple(guards)
        super().__init__(
            f"{cls} meets {len(self.guards)} branch guards; "
            f"refine to modulus {refinement_modulus} first"
        )


class BranchInconsistencyError(RuntimeError):
    """An affine branch produced a non-integer value; indicates a broken branch table."""


class TransienceError(RuntimeError):
    """An orbit violated the expected transient behaviour (should be impossible)."""


class CheckpointError(Exception):
    """A checkpoint file is corrupt, has an unknown version, or does not match the run."""
