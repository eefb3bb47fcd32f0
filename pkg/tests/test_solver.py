import json
import random

import pytest

import oracles
from pdcost.datasets import nordic32
from pdcost.forts import min_fort_number
from pdcost.graph import cartesian_product, clique, cycle, path, to_mask
from pdcost.propagation import observed_mask
from pdcost.solver import (
    ObservanceTable,
    SolverLimitError,
    greedy_observance,
    marginal_obs,
    max_obs,
    minimum_power_dominating_set,
    observance_table,
    power_domination_number,
    state_budget,
)

NORDIC = (0, 10, 18, 26, 35, 41, 47, 50, 53, 56, 58, 60)


@pytest.fixture(scope="module")
def nordic_table():
    return observance_table(nordic32(), 11)


class TestMaxObs:
    def test_nordic_values(self, nordic_table):
        assert nordic_table.row(4).max_obs == 35
        assert nordic_table.row(9).max_obs == 56

    def test_empty_budget(self):
        assert max_obs(cycle(5), 0) == (0, (), True)
        assert max_obs(path(4), 0).value == 0

    def test_hexagon(self):
        assert max_obs(cycle(6), 1).value == 6

    def test_budget_past_gamma_is_padded(self):
        res = max_obs(path(4), 3)
        assert res.value == 4 and len(res.witness) == 3

    def test_bad_budget(self):
        with pytest.raises(ValueError):
            max_obs(path(3), 4)
        with pytest.raises(ValueError):
            max_obs(path(3), -1)

    def test_oracle_equivalence(self):
        rng = random.Random(101)
        for _ in range(120):
            n = rng.randint(1, 12)
            G = oracles.random_graph(rng, n, rng.choice([0.1, 0.2, 0.35, 0.5, 0.8]))
            adj = oracles.adjacency(G)
            table = observance_table(G, min(3, n))
            for row in table.rows:
                assert row.max_obs == oracles.brute_max_obs(adj, row.k)

    def test_full_tables_match_brute_force(self):
        rng = random.Random(102)
        for _ in range(60):
            G = oracles.random_graph(rng, rng.randint(1, 9), rng.choice([0.15, 0.3, 0.5]))
            assert list(observance_table(G).values) == oracles.brute_table(oracles.adjacency(G))


class TestTable:
    def test_nordic(self, nordic_table):
        assert nordic_table.values == NORDIC
        assert nordic_table.gamma_p == 11
        assert nordic_table.all_exact and nordic_table.complete()

    def test_witnesses_reproduce_values(self, nordic_table):
        G = nordic32()
        for row in nordic_table.rows:
            assert len(row.witness) == row.k
            assert observed_mask(G, to_mask(row.witness)).bit_count() == row.max_obs

    def test_witness_is_lexicographically_least(self):
        table = observance_table(cycle(6))
        assert table.rows[1].witness == (0,)

    def test_clique(self):
        table = observance_table(clique(4), 4)
        assert table.values == (0, 4) and table.gamma_p == 1

    def test_prism_cylinder(self):
        G = cartesian_product(path(2), cycle(10))
        table = observance_table(G, power_domination_number(G))
        assert table.values[-1] == 20
        assert list(table.values) == oracles.brute_table(oracles.adjacency(G))

    def test_stops_at_kmax(self):
        table = observance_table(nordic32(), 3)
        assert table.values == NORDIC[:4] and table.gamma_p is None
        assert not table.complete()

    def test_bad_kmax(self):
        with pytest.raises(ValueError):
            observance_table(path(3), 5)

    def test_json_roundtrip(self, nordic_table):
        data = nordic_table.to_json()
        assert data["n"] == 60 and data["gammaP"] == 11
        assert data["rows"][4] == {"k": 4, "maxObs": 35, "witness": list(nordic_table.rows[4].witness), "exact": True}
        back = ObservanceTable.from_json(json.loads(json.dumps(data)))
        assert back == nordic_table

    def test_strictly_increasing(self):
        rng = random.Random(103)
        for _ in range(80):
            G = oracles.random_graph(rng, rng.randint(1, 12), rng.choice([0.15, 0.3, 0.5]))
            m = observance_table(G).values
            assert all(a < b for a, b in zip(m, m[1:]))


class TestResourceLimit:
    def test_truncation_marks_rows_inexact(self):
        table = observance_table(nordic32(), 11, max_states=5)
        assert not table.all_exact
        assert not table.complete()
        for row, exact_value in zip(table.rows, NORDIC):
            assert row.max_obs <= exact_value
            if row.exact:
                assert row.max_obs == exact_value
            assert observed_mask(nordic32(), to_mask(row.witness)).bit_count() == row.max_obs

    def test_strict_raises(self):
        with pytest.raises(SolverLimitError):
            observance_table(nordic32(), 11, max_states=5, strict=True)
        with pytest.raises(SolverLimitError):
            max_obs(nordic32(), 6, max_states=5)

    def test_budget_from_environment(self, monkeypatch):
        monkeypatch.setenv("PDCOST_MEMO_MB", "1")
        assert state_budget() == 2500
        monkeypatch.delenv("PDCOST_MEMO_MB")
        assert state_budget() > 10**6


class TestPowerDomination:
    def test_nordic(self):
        assert power_domination_number(nordic32()) == 11
        S = minimum_power_dominating_set(nordic32())
        assert observed_mask(nordic32(), to_mask(S)) == nordic32().full

    def test_paths(self):
        for n in range(1, 9):
            assert power_domination_number(path(n)) == 1

    def test_matches_brute_force(self):
        rng = random.Random(104)
        for _ in range(60):
            G = oracles.random_graph(rng, rng.randint(1, 10), rng.choice([0.1, 0.3, 0.5]))
            assert power_domination_number(G) == oracles.brute_gamma_p(oracles.adjacency(G))


class TestMarginal:
    def test_nordic(self, nordic_table):
        assert marginal_obs(nordic_table, 1) == 10
        assert marginal_obs(nordic_table, 11) == 2
        assert marginal_obs(nordic_table, 6) == 6

    def test_range(self, nordic_table):
        with pytest.raises(ValueError):
            marginal_obs(nordic_table, 0)
        with pytest.raises(ValueError):
            marginal_obs(nordic_table, 12)

    def test_inexact_rows_refused(self):
        table = observance_table(nordic32(), 11, max_states=5)
        k = next(r.k for r in table.rows if not r.exact)
        with pytest.raises(ValueError):
            marginal_obs(table, k)

    def test_gamma_row_at_least_fort_number(self):
        for G in oracles.small_family():
            table = observance_table(G)
            f = min_fort_number(G)
            assert marginal_obs(table, table.gamma_p) >= f


class TestGreedy:
    def test_examples(self):
        assert greedy_observance(clique(4), 1).value == 4
        assert greedy_observance(nordic32(), 1).value == 10
        res = greedy_observance(nordic32(), 11)
        assert not res.exact and res.value <= 60 and len(res.witness) == 11

    def test_lower_bound(self):
        rng = random.Random(105)
        for _ in range(60):
            G = oracles.random_graph(rng, rng.randint(1, 11), rng.choice([0.15, 0.3, 0.5]))
            table = observance_table(G)
            for k in range(G.n + 1):
                res = greedy_observance(G, k)
                exact = table.values[min(k, table.k_max)]
                assert res.value <= exact
                assert observed_mask(G, to_mask(res.witness)).bit_count() >= res.value
