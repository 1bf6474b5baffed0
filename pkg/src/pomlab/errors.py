"""Exception types shared across the package."""


class PomLabError(Exception):
    """Base class for all package errors."""


class InputError(PomLabError):
    """Invalid user input (parse failures, bad payloads, broken invariants)."""


class DuplicateInRow(InputError):
    def __init__(self, row: int, element: str):
        self.row = row
        self.element = element
        super().__init__(f"element {element!r} appears twice in row {row + 1}")


class EmptyRow(InputError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"row {row + 1} is empty")


class EmptyMatrix(InputError):
    def __init__(self):
        super().__init__("matrix has no rows")


class ReservedToken(InputError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"token {token!r} uses the reserved '~' prefix")


class InvalidPermutation(InputError):
    def __init__(self, detail: str):
        super().__init__(f"invalid permutation: {detail}")


class InvalidMatching(InputError):
    def __init__(self, detail: str):
        super().__init__(f"invalid matching: {detail}")


class UnknownElement(InputError):
    def __init__(self, element: str):
        self.element = element
        super().__init__(f"element {element!r} does not occur in the matrix")


class NotTwoColumn(InputError):
    def __init__(self, row: int, length: int):
        super().__init__(f"row {row + 1} has {length} entries; this operation needs rows of length <= 2")


class LevelTooLarge(InputError):
    def __init__(self, k: int, limit: int):
        super().__init__(f"construction level {k} exceeds the desk-scale guard {limit}")


class GraphNotConnected(InputError):
    def __init__(self):
        super().__init__("input graph is not connected")


class ElementNotUnavoidable(InputError):
    def __init__(self, element: str):
        self.element = element
        super().__init__(f"element {element!r} is not unavoidable in this matrix")


class InvalidDegreeList(InputError):
    def __init__(self, detail: str):
        super().__init__(f"invalid degree list: {detail}")


class BudgetExceeded(PomLabError):
    """State exploration passed its budget; the instance is beyond desk scale."""

    def __init__(self, states_explored: int, budget: int):
        self.states_explored = states_explored
        self.budget = budget
        super().__init__(
            f"state budget exceeded: {states_explored} states explored (budget {budget})"
        )
