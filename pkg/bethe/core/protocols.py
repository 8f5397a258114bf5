from typing import Protocol, runtime_checkable

from bethe.core.models import Alphabet, EnsembleKind


@runtime_checkable
class Ensemble(Protocol):
    """Random sparse factor-graph ensemble (regular, irregular or Poisson)."""

    @property
    def kind(self) -> EnsembleKind: ...

    @property
    def alphabet(self) -> Alphabet: ...

    @property
    def q(self) -> int: ...
