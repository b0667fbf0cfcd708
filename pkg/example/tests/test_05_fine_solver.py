import dataclasses

from fractions import Fraction

from django.test import override_settings

from siteflow.datagen import GenParams, generate_instance
from siteflow.exceptions import InstanceTooLarge, InvalidDecision
from siteflow.network import BuildDecision, FineInstance, FineSite, Line, Load
from siteflow.solvers.base import evaluate_decision
from siteflow.solvers.fine import (BRANCH_AND_BOUND,
                                   BRUTE_FORCE,
                                   BranchAndBound,
                                   PartialDecision,
                                   SeparableBound,
                                   branch_order,
                                   brute_force_solve,
                                   relaxation_bound,
                                   solve)
from siteflow.utils import to_centi

from . base import BaseSiteflowTest, load_fixture, random_fine_instance


def _one_by_one(budget):
    """ site cost 10, line cost 5 """
    return FineInstance((FineSite(0, to_centi('10'), (to_centi('30'),)),),
                        (Load(0, (to_centi('20'),)),),
                        ((Line(to_centi('5'), to_centi('25')),),),
                        budget=to_centi(budget), num_periods=1)


def _check_solution(instance, solution):
    decision = solution.decision
    decision.check(instance)
    assert solution.total_cost == decision.cost(instance) <= instance.budget
    flows = tuple(r.total_flow for r in evaluate_decision(instance, decision))
    assert solution.flow_by_period == flows
    assert solution.objective == sum(flows)
    if instance.total_demand:
        assert solution.demand_met == Fraction(solution.objective, instance.total_demand)


class FixtureSolveTest(BaseSiteflowTest):
    def test_zero_budget(self):
        instance = load_fixture('fine_zero_budget')
        solution = solve(instance)
        assert solution.decision == BuildDecision.nothing(2, 2)
        assert solution.objective == 0
        assert solution.demand_met_percent == 0
        assert solution.method == BRANCH_AND_BOUND

    def test_all_affordable(self):
        instance = load_fixture('fine_all_affordable')
        solution = solve(instance)
        _check_solution(instance, solution)
        everything = evaluate_decision(instance, BuildDecision.everything(2, 2))
        assert solution.objective == sum(r.total_flow for r in everything) == 15000
        assert solution.demand_met == Fraction(150, 170)
        assert round(solution.demand_met_percent, 2) == 88.24

    def test_four_by_three_matches_brute_force(self):
        instance = load_fixture('fine_four_by_three')
        solution = solve(instance)
        oracle = brute_force_solve(instance)
        _check_solution(instance, solution)
        _check_solution(instance, oracle)
        assert solution.objective == oracle.objective
        assert oracle.method == BRUTE_FORCE

    def test_six_by_four(self):
        instance = load_fixture('fine_six_by_four')
        solution = solve(instance)
        _check_solution(instance, solution)
        stats = solution.search_stats
        assert stats.nodes_explored >= 1
        assert stats.warm_start_objective <= solution.objective <= stats.root_bound

    def test_deterministic(self):
        instance = load_fixture('fine_six_by_four')
        assert solve(instance) == solve(instance)


class SmallCasesTest(BaseSiteflowTest):
    def test_line_needs_site(self):
        solution = brute_force_solve(_one_by_one('14'))
        assert solution.objective == 0
        assert solve(_one_by_one('14')).objective == 0

    def test_both_affordable(self):
        for solver in (solve, brute_force_solve):
            solution = solver(_one_by_one('15'))
            assert solution.decision == BuildDecision.everything(1, 1)
            assert solution.objective == to_centi('20')

    def test_no_demand(self):
        instance = dataclasses.replace(_one_by_one('15'), loads=(Load(0, (0,)),))
        solution = solve(instance)
        assert solution.objective == 0
        assert solution.demand_met == 0

    def test_multi_period_shares_decisions(self):
        instance = FineInstance(
            (FineSite(0, 1000, (5000, 0)), FineSite(1, 1000, (0, 4000))),
            (Load(0, (6000, 6000)),),
            ((Line(100, 10000),), (Line(100, 10000),)),
            budget=1100, num_periods=2)
        solution = solve(instance)
        assert solution.flow_by_period == (5000, 0)
        assert solution.decision.built_sites == [0]


class RelaxationBoundTest(BaseSiteflowTest):
    def setUp(self):
        super().setUp()
        self.instance = load_fixture('fine_four_by_three')

    def test_fully_decided(self):
        decision = BuildDecision((True, False, True, False),
                                 ((True, False, False), (False,) * 3,
                                  (False, True, True), (False,) * 3))
        partial = PartialDecision.from_decision(decision)
        expected = sum(r.total_flow for r in evaluate_decision(self.instance, decision))
        assert relaxation_bound(self.instance, partial) == expected

    def test_undecided_is_everything(self):
        huge = dataclasses.replace(self.instance, budget=self.instance.total_cost)
        partial = PartialDecision.undecided(4, 3)
        everything = evaluate_decision(huge, BuildDecision.everything(4, 3))
        assert relaxation_bound(huge, partial) == sum(r.total_flow for r in everything)

    def test_forcing_a_site_off(self):
        parent = PartialDecision.undecided(4, 3)
        child = PartialDecision.undecided(4, 3)
        child.x[2] = False
        assert relaxation_bound(self.instance, child) <= relaxation_bound(self.instance, parent)

    def test_root_bounds_the_optimum(self):
        bound = relaxation_bound(self.instance, PartialDecision.undecided(4, 3))
        assert bound >= brute_force_solve(self.instance).objective

    def test_coupling_violation(self):
        partial = PartialDecision.undecided(4, 3)
        partial.x[1] = False
        partial.y[1][0] = True
        with self.assertRaises(InvalidDecision):
            relaxation_bound(self.instance, partial)

    def test_over_budget(self):
        partial = PartialDecision.from_decision(BuildDecision.everything(4, 3))
        assert relaxation_bound(self.instance, partial) == 0


class BranchOrderTest(BaseSiteflowTest):
    def test_sites_first(self):
        instance = load_fixture('fine_six_by_four')
        order = branch_order(instance)
        assert [var[0] for var in order] == ['site'] * 6 + ['line'] * 24
        # maximum capacity / cost, 150 / 60 first and 220 / 120 last
        assert order[:6] == [('site', 3), ('site', 1), ('site', 2),
                             ('site', 5), ('site', 4), ('site', 0)]
        assert order[-1][0] == 'line'

    def test_free_builds_first(self):
        instance = dataclasses.replace(
            _one_by_one('0'),
            sites=(FineSite(0, 0, (3000,)),),
            lines=((Line(0, 2500),),))
        assert branch_order(instance) == [('site', 0), ('line', 0, 0)]
        assert solve(instance).objective == 2000


class RandomSolveTest(BaseSiteflowTest):
    def test_matches_brute_force(self):
        for _ in range(30):
            n = int(self.rng.integers(1, 5))
            m = int(self.rng.integers(1, 4))
            periods = int(self.rng.integers(1, 4))
            fraction = float(self.rng.uniform(0.1, 0.8))
            instance = random_fine_instance(self.rng, n, m, periods, fraction)
            solution = solve(instance)
            oracle = brute_force_solve(instance)
            _check_solution(instance, solution)
            assert solution.objective == oracle.objective

    def test_budget_monotone_and_saturates(self):
        instance = random_fine_instance(self.rng, 4, 3, 2)
        objectives = [solve(dataclasses.replace(instance, budget=b)).objective
                      for b in range(0, instance.total_cost + 1, max(1, instance.total_cost // 8))]
        assert objectives == sorted(objectives)
        full = solve(dataclasses.replace(instance, budget=instance.total_cost))
        assert full.objective >= objectives[-1]


class BruteForceLimitsTest(BaseSiteflowTest):
    def test_too_large(self):
        with self.assertRaises(InstanceTooLarge):
            brute_force_solve(load_fixture('fine_six_by_four'))

    @override_settings(SITEFLOW_BRUTE_FORCE_MAX_LOADS=2)
    def test_limit_from_settings(self):
        with self.assertRaises(InstanceTooLarge):
            brute_force_solve(load_fixture('fine_four_by_three'))


class PropagateTest(BaseSiteflowTest):
    def test_lines_of_a_site_forced_off(self):
        instance = FineInstance((FineSite(0, to_centi('10'), (to_centi('30'),)),),
                                (Load(0, (to_centi('20'),)),),
                                ((Line(to_centi('1'), to_centi('25')),),),
                                budget=to_centi('5'), num_periods=1)
        search = BranchAndBound(instance)
        forced = search.propagate(instance.budget)
        assert forced == [('site', 0), ('line', 0, 0)]
        assert search.partial.x == [False]
        assert search.partial.y == [[False]]
        assert search.partial.relaxed() == BuildDecision.nothing(1, 1)

    def test_generated_small_instances(self):
        for seed in (19, 27, 32):
            instance = generate_instance(GenParams(seed=seed, n_sites=4, m_loads=3,
                                                   num_periods=2))
            solution = solve(instance)
            _check_solution(instance, solution)
            assert solution.objective == brute_force_solve(instance).objective
        for seed in (17, 19, 20, 23):
            instance = generate_instance(GenParams(seed=seed, n_sites=5, m_loads=4,
                                                   num_periods=3))
            _check_solution(instance, solve(instance))


class SeparableBoundTest(BaseSiteflowTest):
    def test_options_are_a_pareto_front(self):
        instance = random_fine_instance(self.rng, 3, 4, 2)
        bound = SeparableBound(instance, range(3))
        for i in range(3):
            for undecided in (False, True):
                options = bound.options(i, undecided)
                assert options[0].cost == 0
                assert all(a.cost < b.cost and a.value < b.value
                           for a, b in zip(options, options[1:]))
        options = bound.options(0, required=0b0011, excluded=0b0100)
        assert all(option.lines & 0b0011 == 0b0011 and not option.lines & 0b0100
                   for option in options)

    def test_bounds_the_optimum(self):
        for _ in range(20):
            n = int(self.rng.integers(1, 5))
            m = int(self.rng.integers(1, 4))
            instance = random_fine_instance(self.rng, n, m, int(self.rng.integers(1, 4)),
                                            float(self.rng.uniform(0.1, 0.8)))
            bound = SeparableBound(instance, range(n))
            assert bound.prepare() >= brute_force_solve(instance).objective

    def test_budget_steps(self):
        instance = random_fine_instance(self.rng, 4, 3, 2)
        with self.settings(SITEFLOW_SEPARABLE_BUDGET_STEPS=16):
            bound = SeparableBound(instance, range(4))
        assert bound.span <= 16
        assert bound.prepare() >= brute_force_solve(instance).objective

    @override_settings(SITEFLOW_SEPARABLE_MAX_LOADS=0)
    def test_search_without_it(self):
        for _ in range(10):
            instance = random_fine_instance(self.rng, int(self.rng.integers(1, 5)),
                                            int(self.rng.integers(1, 4)), 2,
                                            float(self.rng.uniform(0.1, 0.8)))
            assert BranchAndBound(instance).separable is None
            assert solve(instance).objective == brute_force_solve(instance).objective


class DefaultInstanceTest(BaseSiteflowTest):
    def test_default_parameters(self):
        instance = generate_instance(GenParams(seed=3))
        solution = solve(instance)
        _check_solution(instance, solution)
        stats = solution.search_stats
        assert stats.warm_start_objective <= solution.objective <= stats.root_bound
