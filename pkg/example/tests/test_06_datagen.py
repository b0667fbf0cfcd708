import dataclasses

from siteflow.datagen import (CoarseGenParams,
                              GENERATOR_NAME,
                              GenParams,
                              SweepAxis,
                              coarse_from_fine,
                              generate_instance,
                              generator_metadata,
                              scale_demand,
                              scale_supply,
                              supply_saturated,
                              sweep,
                              with_budget)
from siteflow.exceptions import InvalidInstance
from siteflow.solvers.fine import solve

from . base import BaseSiteflowTest, load_fixture


SMALL = GenParams(seed=7, n_sites=4, m_loads=3, num_periods=2)


class GenerateTest(BaseSiteflowTest):
    def test_default_shape(self):
        instance = generate_instance(GenParams())
        assert instance.num_sites == 14
        assert instance.num_loads == 9
        assert instance.num_periods == 12

    def test_deterministic(self):
        assert generate_instance(SMALL) == generate_instance(SMALL)
        assert generate_instance(SMALL) != generate_instance(dataclasses.replace(SMALL, seed=8))

    def test_ranges(self):
        params = GenParams(seed=3)
        instance = generate_instance(params)
        for site in instance.sites:
            assert 1363 <= site.build_cost <= 40214
            assert 1500 <= site.maximum <= 40300
            for cap in site.capacity_by_period:
                assert 1500 <= cap <= site.maximum
        for row in instance.lines:
            for line in row:
                assert 127 <= line.build_cost <= 11730
                assert 25000 <= line.capacity <= 100000
        for load in instance.loads:
            for demand in load.demand_by_period:
                assert 0 <= demand <= 405748

    def test_budget_fraction(self):
        instance = generate_instance(SMALL)
        assert instance.budget == round(instance.total_cost * 0.3)
        rich = generate_instance(dataclasses.replace(SMALL, budget_fraction=1.0))
        assert rich.budget == rich.total_cost

    def test_no_noise(self):
        params = dataclasses.replace(SMALL, variance_vector=(0, 0, 0, 0, 0, 0))
        instance = generate_instance(params)
        for site in instance.sites:
            assert len(set(site.capacity_by_period)) == 1
        for row in instance.lines:
            for line in row:
                assert line.capacity in (25000, 50000, 75000, 100000)

    def test_default_variances(self):
        assert GenParams().variances == (38.851, 38.8, 38.8, 75.0, 11.603, 405.748)

    def test_invalid_params(self):
        with self.assertRaises(InvalidInstance):
            GenParams(n_sites=-1)
        with self.assertRaises(InvalidInstance):
            GenParams(variance_vector=(1, 2, 3))
        with self.assertRaises(InvalidInstance):
            GenParams(site_cost_range=(10.0, 5.0))
        with self.assertRaises(InvalidInstance):
            GenParams(num_periods=0)

    def test_metadata(self):
        metadata = generator_metadata(SMALL)
        assert metadata['name'] == GENERATOR_NAME
        assert metadata['seed'] == 7
        assert metadata['params']['n_sites'] == 4
        assert len(metadata['params']['variance_vector']) == 6


class CoarseFromFineTest(BaseSiteflowTest):
    def test_shape(self):
        fine = generate_instance(SMALL)
        coarse = coarse_from_fine(fine, CoarseGenParams(seed=7, budget=2))
        assert coarse.num_sites == 4
        assert len(coarse.demand_points) == 3
        assert coarse.num_subintervals == 2
        assert coarse.budget == 2
        for point in coarse.demand_points:
            assert 0 <= point.location.x <= 100 and 0 <= point.location.y <= 100

    def test_threshold(self):
        fine = load_fixture('fine_six_by_four')
        coarse = coarse_from_fine(fine, CoarseGenParams(threshold=300.0))
        assert [p.demand_by_subinterval for p in coarse.demand_points] == \
            [(1, 0), (0, 0), (1, 1), (0, 0)]
        assert coarse_from_fine(fine, CoarseGenParams(budget=10)).budget == 6


class ScalingTest(BaseSiteflowTest):
    def setUp(self):
        super().setUp()
        self.instance = load_fixture('fine_six_by_four')

    def test_budget(self):
        assert with_budget(self.instance, 120.5).budget == 12050

    def test_supply_clamped(self):
        scaled = scale_supply(self.instance, 1.5)
        # site 1: 80.00 -> 120.00, limited to 100.00
        assert scaled.sites[1].capacity_by_period == (10000, 10000)
        assert scaled.sites[4].capacity_by_period == (2250, 2500)
        assert scaled.sites[1].maximum == 10000
        assert not supply_saturated(self.instance, 1.0)
        assert supply_saturated(self.instance, 3.0)

    def test_demand(self):
        scaled = scale_demand(self.instance, 2.0)
        assert scaled.loads[0].demand_by_period == (64000, 56100)


class SweepTest(BaseSiteflowTest):
    def setUp(self):
        super().setUp()
        self.instance = generate_instance(SMALL)

    def test_budget_sweep(self):
        top = self.instance.total_cost / 100
        grid = [0, top / 4, top / 2, top]
        results = sweep(self.instance, SweepAxis.BUDGET, grid)
        assert [value for value, _ in results] == grid
        objectives = [solution.objective for _, solution in results]
        assert objectives[0] == 0
        assert objectives == sorted(objectives)

    def test_identity_supply(self):
        results = sweep(self.instance, 'supply_scale', [1.0])
        assert len(results) == 1
        assert results[0][1].objective == solve(self.instance).objective

    def test_supply_monotone(self):
        for seed in range(3):
            instance = generate_instance(dataclasses.replace(SMALL, seed=seed))
            grid = [1.0, 1.1, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0]
            objectives = [solution.objective
                          for _, solution in sweep(instance, SweepAxis.SUPPLY, grid)]
            assert objectives == sorted(objectives)

    def test_supply_curve_ends_when_saturated(self):
        results = sweep(self.instance, SweepAxis.SUPPLY, [1.0, 50.0, 60.0])
        assert [value for value, _ in results] == [1.0, 50.0]

    def test_demand_dilution(self):
        results = sweep(self.instance, SweepAxis.DEMAND, [1.0, 2.0, 4.0])
        percent = [solution.demand_met_percent for _, solution in results]
        objectives = [solution.objective for _, solution in results]
        for low, high in zip(percent[1:], percent):
            assert low <= high + 0.01
        assert objectives == sorted(objectives)

    def test_bad_grid(self):
        with self.assertRaises(ValueError):
            sweep(self.instance, SweepAxis.DEMAND, [])
        with self.assertRaises(ValueError):
            sweep(self.instance, SweepAxis.DEMAND, [-1.0])
        with self.assertRaises(ValueError):
            sweep(self.instance, 'wind', [1.0])
