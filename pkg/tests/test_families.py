"""Family generators: paper tables reproduced, analytic levels met,
symmetry, guards."""

import itertools
import random
from fractions import Fraction

import pytest

from selfishlevel import (
    Congestion,
    CostSharing,
    FLevelGame,
    GeneralizedPD,
    Orientation,
    PrisonersDilemmaN,
    PublicGoodsGrid,
    TightFamily,
    TravelersDilemma,
    cost_sharing_gap_instance,
    generate,
    price_of_stability,
    pure_nash,
    selfishness_level,
    social_optima,
    symmetric_form,
    tight_instance,
)
from selfishlevel.errors import ExplosionGuard, InfeasibleParams, ParamOutOfRange


class TestPrisonersDilemmaN:
    def test_two_players_reproduce_classic_table(self):
        game = generate(PrisonersDilemmaN(2))
        assert game.strategy_labels == (("C", "D"), ("C", "D"))
        assert game.payoffs == (
            (Fraction(2), Fraction(2)), (Fraction(0), Fraction(3)),
            (Fraction(3), Fraction(0)), (Fraction(1), Fraction(1)),
        )

    @pytest.mark.parametrize("n", range(2, 9))
    def test_level_formula(self, n):
        result = selfishness_level(generate(PrisonersDilemmaN(n)))
        assert result.level() == Fraction(1, 2 * n - 3)

    def test_rejects_single_player(self):
        with pytest.raises(ParamOutOfRange):
            PrisonersDilemmaN(1)


class TestGeneralizedPD:
    def test_table_for_alpha_two_beta_three(self):
        game = generate(GeneralizedPD(alpha=2, beta=3))
        assert game.payoffs == (
            (Fraction(1), Fraction(1)), (Fraction(0), Fraction(5, 3)),
            (Fraction(5, 3), Fraction(0)), (Fraction(1, 3), Fraction(1, 3)),
        )

    @pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1), Fraction(2)])
    @pytest.mark.parametrize("beta", [Fraction(3, 2), Fraction(5)])
    def test_level_and_stability_price(self, alpha, beta):
        game = generate(GeneralizedPD(alpha=alpha, beta=beta))
        assert selfishness_level(game).level() == alpha
        assert price_of_stability(game) == beta

    def test_parameter_ranges(self):
        with pytest.raises(ParamOutOfRange):
            GeneralizedPD(alpha=0, beta=2)
        with pytest.raises(ParamOutOfRange):
            GeneralizedPD(alpha=1, beta=1)


class TestPublicGoodsGrid:
    def test_grid_contains_endpoints(self):
        spec = PublicGoodsGrid(n=2, b=3, c=2, grid_steps=5)
        values = spec.grid_values()
        assert values[0] == 0 and values[-1] == 3
        assert len(values) == 6

    @pytest.mark.parametrize("n,c,expected", [
        (2, Fraction(3, 2), Fraction(1, 2)),
        (4, 2, Fraction(1, 2)),
        (10, 2, Fraction(4, 5)),
        (2, 2, Fraction(0)),
        (2, 4, Fraction(0)),
    ])
    def test_level_formula_small_grids(self, n, c, expected):
        for k in (1, 2):
            game = generate(PublicGoodsGrid(n=n, b=1, c=c, grid_steps=k))
            assert selfishness_level(game).level() == expected

    def test_zero_budget_collapses_grid(self):
        game = generate(PublicGoodsGrid(n=2, b=0, c=2, grid_steps=3))
        assert game.strategy_counts == (1, 1)
        assert selfishness_level(game).level() == 0


class TestTravelersDilemma:
    def test_shape_and_low_claim_payoff(self, travelers):
        assert travelers.strategy_counts == (99, 99)
        low_vs_high = travelers.profile_from_labels(("2", "100"))
        assert travelers.payoff(low_vs_high, 0) == 4
        assert travelers.payoff(low_vs_high, 1) == 0

    def test_level_equilibrium_optimum(self, travelers):
        assert selfishness_level(travelers).level() == Fraction(1, 2)
        assert [travelers.labels_for(s) for s in pure_nash(travelers)] == [("2", "2")]
        assert [travelers.labels_for(s) for s in social_optima(travelers)] == [("100", "100")]


class TestFLevelGame:
    def test_payoffs_for_three_players(self):
        game = generate(FLevelGame(n=3, f_value=7))
        all_ones = (0, 0, 0)
        assert game.payoff_vector(all_ones) == (0, 0, 0)
        deviator_first = game.profile_from_labels(("0", "1", "1"))
        assert game.payoff(deviator_first, 0) == 7
        assert game.social_value(all_ones) == 0
        for s in game.joint_strategies():
            if s != all_ones:
                assert game.social_value(s) == -1

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("f", [0, 1, Fraction(7), 100])
    def test_level_is_pinned(self, n, f):
        result = selfishness_level(generate(FLevelGame(n=n, f_value=f)))
        assert result.level() == f


class TestSymmetry:
    def _assert_symmetric(self, game):
        # relabeling players by perm sends s to t with t[perm[k]] = s[k]
        # and must send player i's payoff to player perm[i]'s payoff
        n = game.player_count
        for s in game.joint_strategies():
            for perm in itertools.permutations(range(n)):
                t = [0] * n
                for k in range(n):
                    t[perm[k]] = s[k]
                t = tuple(t)
                for i in range(n):
                    assert game.payoff(s, i) == game.payoff(t, perm[i])

    def test_pd_n(self):
        self._assert_symmetric(generate(PrisonersDilemmaN(3)))

    def test_public_goods(self):
        self._assert_symmetric(generate(PublicGoodsGrid(n=3, b=1, c=2, grid_steps=2)))

    def test_travelers_two_by_two_slice(self):
        # full game is large; permutation symmetry of a 2-player game is
        # transposition symmetry of the payoff table
        game = generate(TravelersDilemma())
        rng = random.Random(11)
        for _ in range(200):
            a, b = rng.randrange(99), rng.randrange(99)
            assert game.payoff((a, b), 0) == game.payoff((b, a), 1)

    def test_symmetric_form_agrees_with_tensor(self):
        for spec in (PrisonersDilemmaN(3),
                     PublicGoodsGrid(n=3, b=1, c=2, grid_steps=2)):
            game = generate(spec)
            form = symmetric_form(spec)
            m = len(form.strategy_labels)
            for s in game.joint_strategies():
                for i in range(game.player_count):
                    rest = [0] * m
                    for k, j in enumerate(s):
                        if k != i:
                            rest[j] += 1
                    assert form.payoff(s[i], tuple(rest)) == game.payoff(s, i)


class TestCostSharing:
    def test_singleton_tight_instance(self):
        spec = tight_instance(TightFamily.COST_SHARING_SINGLETON, c_max=10, c_min=1)
        game = generate(spec)
        assert game.orientation is Orientation.COST_MIN
        assert selfishness_level(game).level() == 4

    def test_singleton_tight_requires_gap(self):
        with pytest.raises(ParamOutOfRange):
            tight_instance(TightFamily.COST_SHARING_SINGLETON, c_max=2, c_min=1)

    @pytest.mark.parametrize("L,c_max", [(3, 2), (1, 4), (2, 3), (5, 2)])
    def test_integer_tight_instance(self, L, c_max):
        spec = tight_instance(TightFamily.COST_SHARING_INTEGER, L=L, c_max=c_max)
        expected = max(Fraction(0), Fraction(L * c_max, 2) - 1)
        assert selfishness_level(generate(spec)).level() == expected

    def test_gap_instance_level(self):
        spec = cost_sharing_gap_instance(c_max=10, c_min=1, gap=Fraction(1, 2))
        # (c_max/2 - gap) / gap = (5 - 1/2) / (1/2) = 9
        assert selfishness_level(generate(spec)).level() == 9

    def test_shared_cost_split(self):
        spec = CostSharing(
            facility_costs={"e1": Fraction(6), "e2": Fraction(2)},
            strategies=((("e1",),), (("e1",), ("e2",))),
        )
        game = generate(spec)
        both = game.profile_from_labels(("e1", "e1"))
        assert game.payoff(both, 0) == 3
        assert game.payoff(both, 1) == 3

    def test_unknown_facility_rejected(self):
        with pytest.raises(ParamOutOfRange):
            CostSharing(facility_costs={"e1": 1},
                        strategies=((("e1",),), (("e2",),)))


class TestCongestion:
    @pytest.mark.parametrize("delta", [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
    def test_singleton_tight_instance(self, delta):
        spec = tight_instance(TightFamily.CONGESTION_SINGLETON, delta=delta, a=1)
        expected = delta / (1 - delta)
        assert selfishness_level(generate(spec)).level() == expected

    @pytest.mark.parametrize("L,d_max,d_min",
                             [(2, 3, 1), (1, 5, 2), (4, 2, 1), (2, 2, 1), (2, 1, 1)])
    def test_integer_tight_instance(self, L, d_max, d_min):
        spec = tight_instance(TightFamily.CONGESTION_INTEGER,
                              L=L, d_max=d_max, d_min=d_min)
        expected = Fraction(L * d_max - d_min - 1, 2)
        assert selfishness_level(generate(spec)).level() == expected

    def test_integer_tight_infeasible(self):
        with pytest.raises(InfeasibleParams):
            tight_instance(TightFamily.CONGESTION_INTEGER, L=3, d_max=1, d_min=1)

    def test_delay_accumulates_over_users(self):
        spec = Congestion(
            facilities={"e": (Fraction(2), Fraction(1))},
            strategies=((("e",),), (("e",),)),
        )
        game = generate(spec)
        assert game.payoff((0, 0), 0) == 2 * 2 + 1


class TestGuards:
    def test_explosion_guard(self):
        with pytest.raises(ExplosionGuard):
            generate(PublicGoodsGrid(n=10, b=1, c=2, grid_steps=5))

    def test_cap_override(self):
        game = generate(PrisonersDilemmaN(3), cap=8)
        assert game.cell_count == 8
        with pytest.raises(ExplosionGuard):
            generate(PrisonersDilemmaN(3), cap=7)
