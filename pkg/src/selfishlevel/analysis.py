"""Equilibrium and selfishness-level analysis of finite games.

The selfishness level of a game is the smallest altruism share alpha >= 0
such that the altruistic version of the game (every payoff augmented by
alpha times the social welfare) has a pure Nash equilibrium that is a
social optimum; it is infinite when no such alpha exists.

For finite games the level is determined by the stable social optima:
social optima from which no player gains by unilaterally moving to
another social optimum.  At a stable social optimum every strictly
improving unilateral deviation lowers social welfare, and its appeal
factor is the payoff gain divided by that welfare drop.  The level is
the minimum over stable social optima of the largest appeal factor.

Cost-minimizing games are analyzed through their negation, which has the
same equilibria and optima; reported gains and drops are then the cost
decrease and social-cost increase, both positive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import Game, Orientation, Profile, parse_rational
from .errors import GameError, NegativeAlpha, NotImproving, NotStableOptimum

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeviationRecord:
    """One strictly improving unilateral deviation and its appeal factor.

    Values are in the game's native orientation: for cost games,
    ``payoff_gain`` is the deviator's cost decrease and ``welfare_drop``
    the social-cost increase.  Both are strictly positive.
    """

    player: int
    profile: Profile
    to_strategy: int
    payoff_gain: Fraction
    welfare_drop: Fraction
    appeal_factor: Fraction

    def __post_init__(self):
        if self.payoff_gain <= 0:
            raise GameError("deviation record requires a strict payoff gain")
        if self.welfare_drop <= 0:
            raise GameError("deviation record requires a strict welfare drop")
        if self.appeal_factor != self.payoff_gain / self.welfare_drop:
            raise GameError("appeal factor must equal gain / drop exactly")


@dataclass(frozen=True)
class UpperContourSet:
    """The strictly improving deviations of one player at one profile."""

    player: int
    profile: Profile
    strategies: frozenset[int]


class LevelKind(Enum):
    ZERO = "zero"
    FINITE = "finite"
    INFINITE = "infinite"


class InfiniteReason(Enum):
    NO_STABLE_SOCIAL_OPTIMUM = "no_stable_social_optimum"


@dataclass(frozen=True)
class LevelResult:
    """Selfishness level of a finite game, with witnesses.

    Zero: some social optimum is already a Nash equilibrium.
    Finite: the positive level, the stable social optimum attaining it,
    and the deviation whose appeal factor equals the level.
    Infinite: the game has no stable social optimum.

    For finite games the infimum over workable altruism shares is always
    attained (the candidates form a finite set of appeal factors), so a
    finite result carries the exact share at which the game first has an
    optimal equilibrium; only pathological infinite games can have an
    unattained infimum, and those are outside this type's domain.
    """

    kind: LevelKind
    value: Fraction | None = None
    witness_optimum: Profile | None = None
    witness_deviation: DeviationRecord | None = None
    infinite_reason: InfiniteReason | None = None

    def __post_init__(self):
        if self.kind is LevelKind.FINITE:
            if self.value is None or self.value <= 0:
                raise GameError("finite level must carry a positive value")
            if self.witness_optimum is None or self.witness_deviation is None:
                raise GameError("finite level must carry witnesses")
        elif self.kind is LevelKind.ZERO:
            if self.witness_optimum is None:
                raise GameError("zero level must carry a witness optimum")
        elif self.infinite_reason is None:
            raise GameError("infinite level must carry a reason")

    @classmethod
    def zero(cls, witness: Profile) -> "LevelResult":
        return cls(LevelKind.ZERO, witness_optimum=witness)

    @classmethod
    def finite(cls, value: Fraction, witness: Profile, deviation: DeviationRecord) -> "LevelResult":
        return cls(LevelKind.FINITE, value=value, witness_optimum=witness,
                   witness_deviation=deviation)

    @classmethod
    def infinite(cls) -> "LevelResult":
        return cls(LevelKind.INFINITE,
                   infinite_reason=InfiniteReason.NO_STABLE_SOCIAL_OPTIMUM)

    @property
    def is_infinite(self) -> bool:
        return self.kind is LevelKind.INFINITE

    def level(self) -> Fraction | None:
        """The level as a number: 0, a positive rational, or None for infinity."""
        if self.kind is LevelKind.ZERO:
            return ZERO
        return self.value

    def render(self) -> str:
        if self.kind is LevelKind.ZERO:
            return "0"
        if self.kind is LevelKind.FINITE:
            return str(self.value)
        return "inf"


# ---------------------------------------------------------------------------
# equilibria and optima
# ---------------------------------------------------------------------------

def _maximizing(game: Game) -> Game:
    """The game itself, or its negation for cost games."""
    if game.orientation is Orientation.PAYOFF_MAX:
        return game
    return game.negated()


def _pure_nash_max(g: Game) -> list[Profile]:
    n = g.player_count
    best: list[dict] = [{} for _ in range(n)]
    for s, vec in zip(g.joint_strategies(), g.payoffs):
        for i in range(n):
            key = s[:i] + s[i + 1:]
            current = best[i].get(key)
            if current is None or vec[i] > current:
                best[i][key] = vec[i]
    out = []
    for s, vec in zip(g.joint_strategies(), g.payoffs):
        if all(vec[i] == best[i][s[:i] + s[i + 1:]] for i in range(n)):
            out.append(s)
    return out


def pure_nash(game: Game) -> list[Profile]:
    """All pure Nash equilibria, lexicographically sorted (possibly none)."""
    return _pure_nash_max(_maximizing(game))


def is_nash(game: Game, profile: Profile) -> bool:
    """Whether no player can strictly improve by a unilateral deviation."""
    g = _maximizing(game)
    base = g.payoff_vector(profile)
    for i, m in enumerate(g.strategy_counts):
        for alt in range(m):
            if alt == profile[i]:
                continue
            if g.payoff(profile[:i] + (alt,) + profile[i + 1:], i) > base[i]:
                return False
    return True


def _social_optima_max(g: Game) -> list[Profile]:
    best = None
    out: list[Profile] = []
    for s, vec in zip(g.joint_strategies(), g.payoffs):
        sw = sum(vec, ZERO)
        if best is None or sw > best:
            best = sw
            out = [s]
        elif sw == best:
            out.append(s)
    return out


def social_optima(game: Game) -> list[Profile]:
    """All welfare-maximizing (cost-minimizing) profiles, ties included."""
    return _social_optima_max(_maximizing(game))


def social_optimum_value(game: Game) -> Fraction:
    """The optimal social value in the game's native orientation."""
    values = (game.social_value(s) for s in game.joint_strategies())
    if game.orientation is Orientation.PAYOFF_MAX:
        return max(values)
    return min(values)


def _stable_social_optima_max(g: Game) -> list[Profile]:
    optima = _social_optima_max(g)
    optimum_set = set(optima)
    out = []
    for s in optima:
        stable = True
        for i, m in enumerate(g.strategy_counts):
            base = g.payoff(s, i)
            for alt in range(m):
                if alt == s[i]:
                    continue
                t = s[:i] + (alt,) + s[i + 1:]
                if t in optimum_set and g.payoff(t, i) > base:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            out.append(s)
    return out


def stable_social_optima(game: Game) -> list[Profile]:
    """Social optima from which no player gains by moving to another optimum."""
    return _stable_social_optima_max(_maximizing(game))


def upper_contour(game: Game, profile: Profile, player: int) -> UpperContourSet:
    """Player's strictly improving unilateral deviations at ``profile``."""
    g = _maximizing(game)
    base = g.payoff(profile, player)
    improving = frozenset(
        alt
        for alt in range(g.strategy_counts[player])
        if alt != profile[player]
        and g.payoff(profile[:player] + (alt,) + profile[player + 1:], player) > base
    )
    return UpperContourSet(player, profile, improving)


# ---------------------------------------------------------------------------
# appeal factors and the level
# ---------------------------------------------------------------------------

def _deviation_record(g: Game, profile: Profile, player: int, to_strategy: int,
                      sw_base: Fraction) -> DeviationRecord:
    target = profile[:player] + (to_strategy,) + profile[player + 1:]
    gain = g.payoff(target, player) - g.payoff(profile, player)
    drop = sw_base - g.social_value(target)
    return DeviationRecord(player, profile, to_strategy, gain, drop, gain / drop)


def appeal_factor(game: Game, profile: Profile, player: int,
                  to_strategy: int) -> DeviationRecord:
    """Appeal factor of one deviation from a stable social optimum.

    Raises NotStableOptimum unless ``profile`` is a stable social
    optimum, and NotImproving unless the deviation strictly improves the
    deviator.  The welfare drop is then guaranteed positive.
    """
    g = _maximizing(game)
    if profile not in _stable_social_optima_max(g):
        raise NotStableOptimum(f"{profile} is not a stable social optimum")
    target = profile[:player] + (to_strategy,) + profile[player + 1:]
    if g.payoff(target, player) <= g.payoff(profile, player):
        raise NotImproving(
            f"strategy {to_strategy} does not improve player {player} at {profile}"
        )
    return _deviation_record(g, profile, player, to_strategy, g.social_value(profile))


def _optimum_alpha(g: Game, profile: Profile) -> tuple[Fraction, DeviationRecord | None]:
    """Largest appeal factor at a stable social optimum of the maximizing game.

    Returns (0, None) when no player has a strictly improving deviation;
    otherwise the maximum and its lexicographically first attaining
    deviation (by player, then strategy index).
    """
    sw_base = g.social_value(profile)
    best: Fraction | None = None
    witness: DeviationRecord | None = None
    for i, m in enumerate(g.strategy_counts):
        base = g.payoff(profile, i)
        for alt in range(m):
            if alt == profile[i]:
                continue
            target = profile[:i] + (alt,) + profile[i + 1:]
            gain = g.payoff(target, i) - base
            if gain <= 0:
                continue
            drop = sw_base - g.social_value(target)
            factor = gain / drop
            if best is None or factor > best:
                best = factor
                witness = DeviationRecord(i, profile, alt, gain, drop, factor)
    if best is None:
        return ZERO, None
    return best, witness


def stabilizing_alpha(game: Game, profile: Profile) -> Fraction:
    """The least altruism share making a stable social optimum an equilibrium.

    Zero when the optimum already is a Nash equilibrium; otherwise the
    maximum appeal factor over all improving deviations at it.
    """
    g = _maximizing(game)
    if profile not in _stable_social_optima_max(g):
        raise NotStableOptimum(f"{profile} is not a stable social optimum")
    alpha, _ = _optimum_alpha(g, profile)
    return alpha


def selfishness_level(game: Game) -> LevelResult:
    """Selfishness level of a finite game, with witnesses.

    Infinite exactly when the game has no stable social optimum.  The
    witness optimum is the lexicographically first stable social optimum
    attaining the minimum.
    """
    g = _maximizing(game)
    stable = _stable_social_optima_max(g)
    if not stable:
        return LevelResult.infinite()
    best_alpha: Fraction | None = None
    best_profile: Profile | None = None
    best_deviation: DeviationRecord | None = None
    for s in stable:
        alpha, deviation = _optimum_alpha(g, s)
        if best_alpha is None or alpha < best_alpha:
            best_alpha, best_profile, best_deviation = alpha, s, deviation
            if best_alpha == 0:
                break
    if best_alpha == 0:
        return LevelResult.zero(best_profile)
    return LevelResult.finite(best_alpha, best_profile, best_deviation)


def is_alpha_selfish(game: Game, alpha) -> bool:
    """Whether the altruistic version at ``alpha`` has an equilibrium that
    is a social optimum of the original game (the two optimum sets agree)."""
    from .transforms import altruistic

    transformed = altruistic(game, alpha)
    optima = set(social_optima(game))
    return any(ne in optima for ne in pure_nash(transformed))


# ---------------------------------------------------------------------------
# prices of stability and anarchy
# ---------------------------------------------------------------------------

def _equilibrium_values(game: Game) -> list[Fraction]:
    return [game.social_value(ne) for ne in pure_nash(game)]


def price_of_stability(game: Game) -> Fraction | None:
    """Optimum-to-best-equilibrium social value ratio (>= 1), or None.

    None when the game has no pure Nash equilibrium or the ratio's
    denominator is not positive.
    """
    values = _equilibrium_values(game)
    if not values:
        return None
    optimum = social_optimum_value(game)
    if game.orientation is Orientation.PAYOFF_MAX:
        best = max(values)
        return optimum / best if best > 0 else None
    best = min(values)
    return best / optimum if optimum > 0 else None


def price_of_anarchy(game: Game) -> Fraction | None:
    """Optimum-to-worst-equilibrium social value ratio (>= 1), or None."""
    values = _equilibrium_values(game)
    if not values:
        return None
    optimum = social_optimum_value(game)
    if game.orientation is Orientation.PAYOFF_MAX:
        worst = min(values)
        return optimum / worst if worst > 0 else None
    worst = max(values)
    return worst / optimum if optimum > 0 else None


def selfishness_function(game: Game, alphas: Iterable) -> list[tuple[Fraction, Fraction | None]]:
    """Price of stability of the altruistic version at each altruism share.

    The selfishness level is the least share at which this function
    first equals 1.  Pairs are returned in input order.
    """
    from .transforms import altruistic

    out = []
    for raw in alphas:
        alpha = parse_rational(raw)
        if alpha < 0:
            raise NegativeAlpha(f"altruism share must be >= 0, got {alpha}")
        out.append((alpha, price_of_stability(altruistic(game, alpha))))
    return out


# ---------------------------------------------------------------------------
# symmetric games in compact form
# ---------------------------------------------------------------------------

def symmetric_selfishness_level(
    player_count: int,
    strategy_count: int,
    payoff: Callable[[int, Sequence[int]], Fraction],
    *,
    orientation: Orientation = Orientation.PAYOFF_MAX,
) -> LevelResult:
    """Selfishness level of a symmetric game given in compact form.

    ``payoff(j, rest)`` is the common payoff of a player choosing
    strategy ``j`` while the other players' choices have per-strategy
    counts ``rest`` (a tuple of length ``strategy_count`` summing to
    ``player_count - 1``).  In a symmetric game permuting players
    permutes payoffs, so welfare, optimality, stability, and appeal
    factors are constant on permutation orbits; enumerating one sorted
    representative per orbit gives the same level as the full joint
    strategy space at a fraction of the cost.
    """
    n, m = player_count, strategy_count
    sign = 1 if orientation is Orientation.PAYOFF_MAX else -1
    cache: dict[tuple[int, tuple[int, ...]], Fraction] = {}

    def pay(j: int, rest: tuple[int, ...]) -> Fraction:
        key = (j, rest)
        if key not in cache:
            cache[key] = sign * payoff(j, rest)
        return cache[key]

    def counts_of(profile: tuple[int, ...]) -> tuple[int, ...]:
        counts = [0] * m
        for j in profile:
            counts[j] += 1
        return tuple(counts)

    def without(counts: tuple[int, ...], j: int) -> tuple[int, ...]:
        return counts[:j] + (counts[j] - 1,) + counts[j + 1:]

    def with_extra(counts: tuple[int, ...], j: int) -> tuple[int, ...]:
        return counts[:j] + (counts[j] + 1,) + counts[j + 1:]

    classes = list(itertools.combinations_with_replacement(range(m), n))
    welfare: dict[tuple[int, ...], Fraction] = {}
    for profile in classes:
        counts = counts_of(profile)
        total = ZERO
        for j in range(m):
            if counts[j]:
                total += counts[j] * pay(j, without(counts, j))
        welfare[counts] = total

    best_welfare = max(welfare.values())
    optimum_counts = {c for c, sw in welfare.items() if sw == best_welfare}

    best_alpha: Fraction | None = None
    best_profile: tuple[int, ...] | None = None
    best_deviation: DeviationRecord | None = None
    found_stable = False
    for profile in classes:
        counts = counts_of(profile)
        if counts not in optimum_counts:
            continue
        stable = True
        alpha = ZERO
        deviation: DeviationRecord | None = None
        for j in range(m):
            if not counts[j]:
                continue
            rest = without(counts, j)
            base = pay(j, rest)
            for j2 in range(m):
                if j2 == j:
                    continue
                value = pay(j2, rest)
                if value <= base:
                    continue
                target = with_extra(rest, j2)
                if target in optimum_counts:
                    stable = False
                    break
                gain = value - base
                drop = welfare[counts] - welfare[target]
                factor = gain / drop
                if deviation is None or factor > alpha:
                    alpha = factor
                    deviation = DeviationRecord(
                        profile.index(j), profile, j2, gain, drop, factor
                    )
            if not stable:
                break
        if not stable:
            continue
        found_stable = True
        if best_alpha is None or alpha < best_alpha:
            best_alpha, best_profile, best_deviation = alpha, profile, deviation
            if best_alpha == 0:
                break
    if not found_stable:
        return LevelResult.infinite()
    if best_alpha == 0:
        return LevelResult.zero(best_profile)
    return LevelResult.finite(best_alpha, best_profile, best_deviation)
