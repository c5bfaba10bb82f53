"""Finite normal-form games over exact rational payoffs.

A game is either payoff-maximizing or cost-minimizing and stores one
dense payoff vector per joint strategy.  All numbers are
``fractions.Fraction``; nothing in this package ever rounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    DimensionMismatch,
    DuplicateLabel,
    EmptyStrategySet,
    GameError,
    IndexOutOfRange,
    PlayerCountTooSmall,
    ZeroDenominator,
)

#: A joint strategy: one strategy index per player.
Profile = tuple[int, ...]

#: Anything parse_rational accepts.
RationalLike = "Fraction | int | str"


class Orientation(str, Enum):
    """Whether players maximize payoffs or minimize costs."""

    PAYOFF_MAX = "payoff"
    COST_MIN = "cost"


def parse_rational(value) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction.

    Floats are rejected: binary floating point cannot represent the
    exact table entries this package promises to preserve.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise GameError(f"not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise GameError(
            f"floating-point value {value!r} rejected; write it as an "
            f"integer or a 'p/q' string"
        )
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text or "E" in text:
            raise GameError(f"not an exact rational literal: {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ZeroDenominator(f"zero denominator in {value!r}") from None
        except ValueError:
            raise GameError(f"not a rational literal: {value!r}") from None
    raise GameError(f"not a rational value: {value!r}")


def format_rational(q: Fraction) -> str:
    """Render a Fraction in lowest terms as "p" or "p/q"."""
    return str(q)


def _coerce_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)


@dataclass(frozen=True)
class Game:
    """A finite strategic game with exact rational payoffs.

    ``payoffs`` holds one length-n vector per joint strategy, flattened
    in lexicographic order of the index tuples (player 1's index varies
    slowest).  For cost games the stored values are costs; no sign
    convention is applied at this level.
    """

    orientation: Orientation
    strategy_labels: tuple[tuple[str, ...], ...]
    payoffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        labels = tuple(tuple(per_player) for per_player in self.strategy_labels)
        cells = tuple(_coerce_vector(vec) for vec in self.payoffs)
        object.__setattr__(self, "strategy_labels", labels)
        object.__setattr__(self, "payoffs", cells)
        self.validate()

    # --- construction -----------------------------------------------------

    @classmethod
    def from_dense(cls, orientation: Orientation, strategy_labels, nested) -> "Game":
        """Build a game from a nested payoff table.

        The table is nested once per player (outermost index: player 1's
        strategy) and its innermost entries are length-n payoff vectors.
        """
        labels = tuple(tuple(per_player) for per_player in strategy_labels)
        n = len(labels)
        counts = tuple(len(per_player) for per_player in labels)
        flat: list[tuple] = []

        def walk(node, depth: int):
            if depth == n:
                if not isinstance(node, (list, tuple)) or len(node) != n:
                    raise DimensionMismatch(
                        f"expected a vector of {n} payoffs, got {node!r}"
                    )
                flat.append(tuple(node))
                return
            if not isinstance(node, (list, tuple)) or len(node) != counts[depth]:
                raise DimensionMismatch(
                    f"expected {counts[depth]} entries for player {depth + 1}, "
                    f"got {len(node) if isinstance(node, (list, tuple)) else node!r}"
                )
            for child in node:
                walk(child, depth + 1)

        walk(nested, 0)
        return cls(orientation, labels, tuple(flat))

    @classmethod
    def from_profile_map(cls, orientation: Orientation, strategy_labels, cells) -> "Game":
        """Build a game from a mapping of index profiles to payoff vectors."""
        labels = tuple(tuple(per_player) for per_player in strategy_labels)
        counts = tuple(len(per_player) for per_player in labels)
        flat = []
        for profile in itertools.product(*(range(m) for m in counts)):
            try:
                flat.append(tuple(cells[profile]))
            except KeyError:
                raise DimensionMismatch(f"no payoff vector for profile {profile}") from None
        return cls(orientation, labels, tuple(flat))

    # --- invariants ---------------------------------------------------------

    def validate(self) -> None:
        """Raise the first violated structural invariant, if any."""
        if len(self.strategy_labels) < 2:
            raise PlayerCountTooSmall(
                f"a strategic game needs more than one player, got {len(self.strategy_labels)}"
            )
        for i, per_player in enumerate(self.strategy_labels):
            if not per_player:
                raise EmptyStrategySet(f"player {i + 1} has no strategies")
            if len(set(per_player)) != len(per_player):
                raise DuplicateLabel(f"player {i + 1} has duplicate strategy labels")
        expected = 1
        for per_player in self.strategy_labels:
            expected *= len(per_player)
        if len(self.payoffs) != expected:
            raise DimensionMismatch(
                f"payoff tensor has {len(self.payoffs)} cells, expected {expected}"
            )
        n = len(self.strategy_labels)
        for vec in self.payoffs:
            if len(vec) != n:
                raise DimensionMismatch(
                    f"payoff cell has {len(vec)} values, expected one per player ({n})"
                )

    # --- shape --------------------------------------------------------------

    @property
    def player_count(self) -> int:
        return len(self.strategy_labels)

    @cached_property
    def strategy_counts(self) -> tuple[int, ...]:
        return tuple(len(per_player) for per_player in self.strategy_labels)

    @cached_property
    def cell_count(self) -> int:
        total = 1
        for m in self.strategy_counts:
            total *= m
        return total

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = [1] * self.player_count
        for i in range(self.player_count - 2, -1, -1):
            strides[i] = strides[i + 1] * self.strategy_counts[i + 1]
        return tuple(strides)

    def flat_index(self, profile: Profile) -> int:
        counts = self.strategy_counts
        if len(profile) != len(counts):
            raise IndexOutOfRange(f"profile {profile} has wrong length")
        index = 0
        for pos, stride, m in zip(profile, self._strides, counts):
            if not 0 <= pos < m:
                raise IndexOutOfRange(f"strategy index {pos} out of range in {profile}")
            index += pos * stride
        return index

    # --- lookups ------------------------------------------------------------

    def payoff_vector(self, profile: Profile) -> tuple[Fraction, ...]:
        return self.payoffs[self.flat_index(profile)]

    def payoff(self, profile: Profile, player: int) -> Fraction:
        """The stored payoff (or cost) of ``player`` at ``profile``."""
        if not 0 <= player < self.player_count:
            raise IndexOutOfRange(f"player index {player} out of range")
        return self.payoffs[self.flat_index(profile)][player]

    def social_value(self, profile: Profile) -> Fraction:
        """Sum of all players' values at ``profile``.

        Social welfare for payoff games, social cost for cost games.
        """
        return sum(self.payoff_vector(profile), Fraction(0))

    def joint_strategies(self) -> Iterator[Profile]:
        """All joint strategies in lexicographic index order."""
        return itertools.product(*(range(m) for m in self.strategy_counts))

    # --- labels -------------------------------------------------------------

    @cached_property
    def _label_index(self) -> tuple[dict, ...]:
        return tuple(
            {label: i for i, label in enumerate(per_player)}
            for per_player in self.strategy_labels
        )

    def labels_for(self, profile: Profile) -> tuple[str, ...]:
        return tuple(
            self.strategy_labels[i][pos] for i, pos in enumerate(profile)
        )

    def profile_from_labels(self, labels) -> Profile:
        if len(labels) != self.player_count:
            raise IndexOutOfRange(f"label tuple {labels!r} has wrong length")
        profile = []
        for i, label in enumerate(labels):
            try:
                profile.append(self._label_index[i][label])
            except KeyError:
                raise IndexOutOfRange(
                    f"player {i + 1} has no strategy labelled {label!r}"
                ) from None
        return tuple(profile)

    # --- derived games --------------------------------------------------------

    def with_payoffs(self, cells) -> "Game":
        """Same shape and orientation, new payoff cells (flat order)."""
        return Game(self.orientation, self.strategy_labels, tuple(cells))

    def negated(self) -> "Game":
        """Flip orientation and negate every value.

        A cost game and its negation have the same equilibria, optima,
        and deviation structure, which gives the analysis code a single
        maximizing code path.
        """
        flipped = (
            Orientation.COST_MIN
            if self.orientation is Orientation.PAYOFF_MAX
            else Orientation.PAYOFF_MAX
        )
        return Game(
            flipped,
            self.strategy_labels,
            tuple(tuple(-v for v in vec) for vec in self.payoffs),
        )
