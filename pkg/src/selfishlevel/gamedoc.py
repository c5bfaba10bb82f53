"""Game documents and analysis reports as JSON text.

A game document carries the orientation, per-player names and strategy
labels, and the payoff tensor, either dense (nested arrays, outermost
index = player 1's strategy, innermost entry = one value per player) or
sparse (a list of {profile, values} records covering every joint
strategy exactly once).  Rationals are written as integers or "p/q"
strings; floats are rejected.

Reports echo the parsed game, so re-parsing a report's game section
reproduces the game exactly.  Timings live outside the comparable
report body.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from . import analysis, dynamics
from .core import Game, Orientation, Profile, format_rational
from .errors import (
    DocumentSyntaxError,
    DuplicateProfile,
    GameDocumentError,
    MissingProfile,
)


@dataclass(frozen=True)
class GameDocument:
    """A validated game plus its document-level player names."""

    game: Game
    player_names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.player_names)
        object.__setattr__(self, "player_names", names)
        if len(names) != self.game.player_count:
            raise GameDocumentError(
                f"{len(names)} player names for {self.game.player_count} players"
            )
        if len(set(names)) != len(names):
            raise GameDocumentError("duplicate player names")

    @classmethod
    def from_game(cls, game: Game, player_names=None) -> "GameDocument":
        if player_names is None:
            player_names = tuple(f"p{i + 1}" for i in range(game.player_count))
        return cls(game, tuple(player_names))


def _reject_float(text: str):
    raise GameDocumentError(
        f"floating-point value {text!r} rejected; use an integer or a 'p/q' string"
    )


def _load_json(text: str):
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, e.lineno, e.colno) from None


def _parse_players(obj) -> tuple[tuple[str, ...], tuple[tuple[str, ...], ...]]:
    players = obj.get("players")
    if not isinstance(players, list) or not players:
        raise GameDocumentError("document needs a non-empty 'players' list")
    names = []
    labels = []
    for entry in players:
        if not isinstance(entry, dict):
            raise GameDocumentError(f"player entry must be an object, got {entry!r}")
        name = entry.get("name")
        strategies = entry.get("strategies")
        if not isinstance(name, str) or not name:
            raise GameDocumentError(f"player needs a non-empty 'name', got {name!r}")
        if (not isinstance(strategies, list) or not strategies
                or not all(isinstance(s, str) for s in strategies)):
            raise GameDocumentError(
                f"player {name!r} needs a non-empty list of strategy labels"
            )
        names.append(name)
        labels.append(tuple(strategies))
    return tuple(names), tuple(labels)


def _parse_sparse(entries, orientation, labels) -> Game:
    shape = tuple(len(per_player) for per_player in labels)
    label_maps = [
        {label: i for i, label in enumerate(per_player)} for per_player in labels
    ]
    n = len(labels)
    cells: dict[Profile, tuple] = {}
    for entry in entries:
        if not isinstance(entry, dict) or "profile" not in entry or "values" not in entry:
            raise GameDocumentError(
                f"sparse payoff entry needs 'profile' and 'values', got {entry!r}"
            )
        raw_profile = entry["profile"]
        if not isinstance(raw_profile, list) or len(raw_profile) != n:
            raise GameDocumentError(f"profile {raw_profile!r} must list {n} labels")
        profile = []
        for i, label in enumerate(raw_profile):
            if label not in label_maps[i]:
                raise GameDocumentError(
                    f"player {i + 1} has no strategy labelled {label!r}"
                )
            profile.append(label_maps[i][label])
        profile = tuple(profile)
        if profile in cells:
            raise DuplicateProfile(f"profile {raw_profile!r} appears twice")
        values = entry["values"]
        if not isinstance(values, list) or len(values) != n:
            raise GameDocumentError(
                f"profile {raw_profile!r} needs exactly {n} values"
            )
        cells[profile] = tuple(values)
    for profile in itertools.product(*(range(m) for m in shape)):
        if profile not in cells:
            readable = [labels[i][j] for i, j in enumerate(profile)]
            raise MissingProfile(f"no payoffs for profile {readable}")
    return Game.from_profile_map(orientation, labels, cells)


def parse_game_document(text: str) -> GameDocument:
    """Parse and validate a game document; errors carry position or context."""
    obj = _load_json(text)
    if not isinstance(obj, dict):
        raise GameDocumentError("document root must be an object")
    raw_orientation = obj.get("orientation")
    try:
        orientation = Orientation(raw_orientation)
    except ValueError:
        raise GameDocumentError(
            f"orientation must be 'payoff' or 'cost', got {raw_orientation!r}"
        ) from None
    names, labels = _parse_players(obj)
    payoffs = obj.get("payoffs")
    if payoffs is None:
        raise GameDocumentError("document needs a 'payoffs' field")
    if isinstance(payoffs, list) and payoffs and all(isinstance(e, dict) for e in payoffs):
        game = _parse_sparse(payoffs, orientation, labels)
    else:
        game = Game.from_dense(orientation, labels, payoffs)
    return GameDocument(game, names)


def parse_game(text: str) -> Game:
    """Parse a game document, returning just the validated game."""
    return parse_game_document(text).game


def _payoff_json(value: Fraction):
    if value.denominator == 1:
        return value.numerator
    return format_rational(value)


def _dense_payoffs(game: Game):
    def build(depth: int, prefix: Profile):
        if depth == game.player_count:
            return [_payoff_json(v) for v in game.payoff_vector(prefix)]
        return [build(depth + 1, prefix + (j,))
                for j in range(game.strategy_counts[depth])]

    return build(0, ())


def document_to_obj(doc: GameDocument) -> dict:
    return {
        "orientation": doc.game.orientation.value,
        "players": [
            {"name": name, "strategies": list(per_player)}
            for name, per_player in zip(doc.player_names, doc.game.strategy_labels)
        ],
        "payoffs": _dense_payoffs(doc.game),
    }


def render_game_document(doc: GameDocument) -> str:
    """Canonical dense JSON text; parsing it back reproduces the game."""
    return json.dumps(document_to_obj(doc), indent=2) + "\n"


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _labels(game: Game, profile: Profile) -> list[str]:
    return list(game.labels_for(profile))


def _optional_rational(value: Fraction | None):
    return None if value is None else format_rational(value)


def _deviation_obj(doc: GameDocument, record: analysis.DeviationRecord) -> dict:
    game = doc.game
    return {
        "player": doc.player_names[record.player],
        "profile": _labels(game, record.profile),
        "to": game.strategy_labels[record.player][record.to_strategy],
        "payoff_gain": format_rational(record.payoff_gain),
        "welfare_drop": format_rational(record.welfare_drop),
        "appeal_factor": format_rational(record.appeal_factor),
    }


def level_obj(doc: GameDocument, result: analysis.LevelResult) -> dict:
    obj: dict = {"kind": result.kind.value}
    if result.kind is analysis.LevelKind.INFINITE:
        obj["reason"] = result.infinite_reason.value
        return obj
    obj["value"] = "0" if result.kind is analysis.LevelKind.ZERO else format_rational(result.value)
    obj["optimum"] = _labels(doc.game, result.witness_optimum)
    if result.witness_deviation is not None:
        obj["deviation"] = _deviation_obj(doc, result.witness_deviation)
    return obj


def analyze_report(doc: GameDocument) -> dict:
    """Full analysis body: equilibria, optima, level, prices."""
    game = doc.game
    return {
        "game": document_to_obj(doc),
        "pure_nash": [_labels(game, s) for s in analysis.pure_nash(game)],
        "social_optima": [_labels(game, s) for s in analysis.social_optima(game)],
        "stable_social_optima": [
            _labels(game, s) for s in analysis.stable_social_optima(game)
        ],
        "social_optimum_value": format_rational(analysis.social_optimum_value(game)),
        "selfishness_level": level_obj(doc, analysis.selfishness_level(game)),
        "price_of_stability": _optional_rational(analysis.price_of_stability(game)),
        "price_of_anarchy": _optional_rational(analysis.price_of_anarchy(game)),
    }


def dynamics_report(doc: GameDocument, cap: int) -> dict:
    game = doc.game
    certificate = dynamics.ordinal_potential_certificate(game, cap)
    return {
        "game": document_to_obj(doc),
        "finite_improvement_property": dynamics.has_fip(game, cap),
        "weakly_acyclic": dynamics.is_weakly_acyclic(game, cap),
        "ordinal_potential_certificate": certificate is not None,
    }


def sweep_report(doc: GameDocument, alphas) -> dict:
    table = analysis.selfishness_function(doc.game, alphas)
    return {
        "game": document_to_obj(doc),
        "selfishness_function": [
            {"alpha": format_rational(alpha), "price_of_stability": _optional_rational(pos)}
            for alpha, pos in table
        ],
    }


def render_report(body: dict, timings: dict | None = None) -> str:
    """Wrap a deterministic report body with segregated timings."""
    return json.dumps({"report": body, "timings": timings or {}}, indent=2) + "\n"
