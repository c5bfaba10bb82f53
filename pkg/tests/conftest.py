from fractions import Fraction

import pytest

from selfishlevel import (
    BadNash3x3,
    BattleOfSexes,
    Game,
    MatchingPennies,
    NoNash2x2,
    Orientation,
    PrisonersDilemmaN,
    TravelersDilemma,
    WeaklyAcyclic3x3,
    generate,
)


def two_player(rows, labels=(("C", "D"), ("C", "D")),
               orientation=Orientation.PAYOFF_MAX) -> Game:
    """Build a 2-player game from a row-major table of payoff pairs."""
    return Game.from_dense(orientation, labels, rows)


@pytest.fixture
def pd():
    return generate(PrisonersDilemmaN(2))


@pytest.fixture
def matching_pennies():
    return generate(MatchingPennies())


@pytest.fixture
def battle_of_sexes():
    return generate(BattleOfSexes())


@pytest.fixture
def bad_nash():
    return generate(BadNash3x3())


@pytest.fixture
def no_nash():
    return generate(NoNash2x2())


@pytest.fixture
def weakly_acyclic_game():
    return generate(WeaklyAcyclic3x3())


@pytest.fixture(scope="session")
def travelers():
    return generate(TravelersDilemma())


@pytest.fixture
def half():
    return Fraction(1, 2)
