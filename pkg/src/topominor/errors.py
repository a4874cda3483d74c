"""Exception types shared across the package."""

from __future__ import annotations


class BudgetExceeded(RuntimeError):
    """A backtracking search ran out of its node budget.

    This is the "unknown" outcome: callers must not read it as "absent".
    """

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: node budget of {budget} exhausted")
        self.what = what
        self.budget = budget


class HypothesisViolation(ValueError):
    """A structural precondition or certificate clause failed.

    ``block``, ``role`` and ``vertex`` are filled in when the failure can be
    pinned to a specific place; ``clause`` names the condition that failed.
    """

    def __init__(self, clause: str, *, block=None, role=None, vertex=None, detail: str = ""):
        parts = [clause]
        if block is not None:
            parts.append(f"block={block}")
        if role is not None:
            parts.append(f"role={role}")
        if vertex is not None:
            parts.append(f"vertex={vertex}")
        if detail:
            parts.append(detail)
        super().__init__("; ".join(parts))
        self.clause = clause
        self.block = block
        self.role = role
        self.vertex = vertex
        self.detail = detail

    def to_json(self) -> dict:
        return {
            "clause": self.clause,
            "block": self.block,
            "role": self.role,
            "vertex": self.vertex,
            "detail": self.detail,
        }


class Budget:
    """Mutable node counter threaded through a search."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, limit: int | None, what: str = "search"):
        self.limit = limit
        self.used = 0
        self.what = what

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(self.what, self.limit)
