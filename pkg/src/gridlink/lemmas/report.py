"""Result records shared by the lemma checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


class LemmaDefect(Exception):
    """A lemma operation found no certificate where the claim promises one.

    The quadrant lemmas assert universal feasibility over their instance
    families, so this surfacing during a verification campaign means either
    a bug in the construction or a genuine counterexample; campaigns record
    the offending instance instead of letting the exception propagate.
    """


@dataclass(frozen=True)
class LemmaReport:
    """Outcome of checking one lemma over its full instance family.

    ``instances_checked == feasible + len(exceptional)`` always holds;
    ``elapsed`` is wall-clock seconds and is excluded from report
    comparisons.
    """

    lemma_id: str
    instances_checked: int
    feasible: int
    exceptional: tuple[Any, ...] = field(default=())
    elapsed: float = 0.0
    strategy: str = "exhaustive"
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "exceptional", tuple(self.exceptional))
        if self.instances_checked != self.feasible + len(self.exceptional):
            raise ValueError(
                "inconsistent report: %d checked != %d feasible + %d exceptional"
                % (self.instances_checked, self.feasible, len(self.exceptional))
            )

    @property
    def clean(self) -> bool:
        return not self.exceptional
