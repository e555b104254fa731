"""Exception types raised by the engine."""


class GroupTooLarge(ValueError):
    """A closure or construction exceeded the configured maximum order."""


class LatticeTooLarge(ValueError):
    """Subgroup enumeration hit the order cap or the subgroup-count cap."""


class ParentMismatch(ValueError):
    """Two subgroups of different parent groups were combined."""


class NotASubgroup(ValueError):
    pass


class InvalidAction(ValueError):
    """A semidirect-product action failed an automorphism/homomorphism axiom."""


class GroupParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, record: str | None = None):
        self.line = line
        self.record = record
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
