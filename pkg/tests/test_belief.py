import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from credal_communities.belief import (
    CredalPartition,
    FocalSetCatalog,
    MassFunction,
    bel,
    contour,
    format_set,
    hard_credal_assignment,
    imprecise_mass,
    members_of,
    outlier_flags,
    parse_set,
    pignistic,
    pl,
    to_mask,
)
from credal_communities.errors import InputError, NumericalError
from oracles import bel_bruteforce, pignistic_bruteforce, pl_bruteforce, powerset

C2 = FocalSetCatalog.build(2)
C3 = FocalSetCatalog.build(3)


def example_bba():
    # c=2: m(empty)=0.2, m({w1})=0.3, m(Omega)=0.5
    return MassFunction.from_dict(C2, {(): 0.2, (0,): 0.3, (0, 1): 0.5})


class TestCatalog:
    def test_full_order(self):
        assert C3.labels() == ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        assert C3.is_full

    def test_pair_restricted(self):
        cat = FocalSetCatalog.build(5, max_card=2)
        assert len(cat) == 1 + 5 + 10 + 1
        assert cat.labels()[-1] == "{1,2,3,4,5}"
        assert not cat.is_full
        assert max(cat.cardinalities[:-1]) == 2

    @pytest.mark.parametrize("c", range(1, 7))
    def test_invariants(self, c):
        for max_card in range(1, c + 1):
            cat = FocalSetCatalog.build(c, max_card)
            assert cat.sets[0] == 0 and cat.sets[-1] == cat.omega
            assert len(set(cat.sets)) == len(cat)
            assert all(1 << k in cat.sets for k in range(c))
            assert cat.is_full == (len(cat) == 2 ** c)
            card = list(cat.cardinalities[:-1])
            assert card == sorted(card)

    def test_membership_matrix(self):
        np.testing.assert_array_equal(C2.membership, [[0, 0], [1, 0], [0, 1], [1, 1]])

    def test_set_strings_round_trip(self):
        for s in C3.sets:
            assert parse_set(format_set(s)) == s
        assert format_set(0) == "{}"
        assert members_of(to_mask([2, 0])) == (0, 2)
        with pytest.raises(InputError):
            parse_set("1,2")


class TestBelPl:
    def test_vacuous(self):
        m = MassFunction.from_dict(C2, {(0, 1): 1.0})
        assert bel(m, [0]) == 0.0
        assert pl(m, [0]) == 1.0

    def test_certain(self):
        m = MassFunction.from_dict(C2, {(0,): 1.0})
        assert bel(m, [0]) == 1.0

    def test_example(self):
        m = example_bba()
        assert bel(m, [0]) == pytest.approx(0.3, abs=1e-15)
        assert pl(m, [0]) == pytest.approx(0.8, abs=1e-15)
        assert pl(m, [0, 1]) == pytest.approx(1 - 0.2, abs=1e-15)

    def test_contour_examples(self):
        np.testing.assert_allclose(contour(example_bba()), [0.8, 0.5], atol=1e-15)
        np.testing.assert_array_equal(contour(MassFunction.from_dict(C3, {(1,): 1.0})), [0, 1, 0])
        np.testing.assert_array_equal(contour(MassFunction.from_dict(C3, {(0, 1, 2): 1.0})), [1, 1, 1])

    def test_normalised_contour(self):
        np.testing.assert_allclose(contour(example_bba(), normalized=True), [1.0, 0.625])
        with pytest.raises(NumericalError):
            contour(MassFunction.from_dict(C2, {(): 1.0}), normalized=True)


class TestPignistic:
    def test_certain(self):
        np.testing.assert_array_equal(pignistic(MassFunction.from_dict(C3, {(0,): 1.0})), [1, 0, 0])

    def test_vacuous(self):
        np.testing.assert_allclose(pignistic(MassFunction.from_dict(C2, {(0, 1): 1.0})), [0.5, 0.5])

    def test_example(self):
        np.testing.assert_allclose(pignistic(example_bba()), [0.6875, 0.3125], atol=1e-15)

    def test_total_conflict_is_an_error(self):
        with pytest.raises(NumericalError, match="m\\(empty\\) = 1"):
            pignistic(MassFunction.from_dict(C2, {(): 1.0}))


def test_mass_function_validation():
    with pytest.raises(InputError, match="sum to 1"):
        MassFunction(C2, [0.5, 0.2, 0.2, 0.0])
    with pytest.raises(InputError, match="non-negative"):
        MassFunction(C2, [0.5, -0.5, 1.0, 0.0])
    with pytest.raises(InputError, match="expected 4"):
        MassFunction(C2, [1.0])


class TestHardCredal:
    def test_singleton_and_pair(self):
        p = CredalPartition(C3, [[0, 1, 0, 0, 0, 0, 0, 0], [0.1, 0.1, 0, 0, 0.6, 0.1, 0, 0.1]])
        h = hard_credal_assignment(p)
        assert [C3.labels()[j] for j in h.indices] == ["{1}", "{1,2}"]
        assert h.imprecise.tolist() == [False, True]

    def test_empty_set_never_wins(self):
        p = CredalPartition(C2, [[0.9, 0.02, 0.05, 0.03]])
        assert C2.labels()[hard_credal_assignment(p).indices[0]] == "{2}"
        assert outlier_flags(p).tolist() == [True]

    def test_ties_prefer_smaller_sets(self):
        p = CredalPartition(C2, [[0, 0, 0.5, 0.5], [0, 0.4, 0.4, 0.2]])
        h = hard_credal_assignment(p)
        assert [C2.labels()[j] for j in h.indices] == ["{2}", "{1}"]

    def test_imprecise_mass_readings(self):
        p = CredalPartition(C3, [[0, 0.1, 0, 0, 0.5, 0.1, 0, 0.3]])
        im = imprecise_mass(p)
        assert im["pair"][0] == pytest.approx(0.6)
        assert im["all"][0] == pytest.approx(0.9)


def test_from_labels():
    p = CredalPartition.from_labels([0, 2, 1], 3)
    np.testing.assert_array_equal(contour(p), np.eye(3)[[0, 2, 1]])


def random_bba(rng, cat, sparsity=0.5):
    m = rng.random(len(cat)) * (rng.random(len(cat)) < sparsity)
    if m.sum() == 0:
        m[rng.integers(len(cat))] = 1.0
    return MassFunction(cat, m / m.sum())


def as_dict(m):
    return {frozenset(members_of(s)): v for s, v in zip(m.catalog.sets, m.masses)}


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_bel_pl_against_bruteforce(c, cap, seed):
    rng = np.random.default_rng(seed)
    cat = FocalSetCatalog.build(c, min(cap, c))
    m = random_bba(rng, cat)
    md = as_dict(m)
    omega = frozenset(range(c))
    empty = m.masses[0]
    for A in powerset(c):
        b, p = bel(m, A), pl(m, A)
        assert b == pytest.approx(bel_bruteforce(md, A), abs=1e-12)
        assert p == pytest.approx(pl_bruteforce(md, A), abs=1e-12)
        assert b <= p + 1e-12
        assert b + pl(m, omega - A) == pytest.approx(1 - empty, abs=1e-12)
    assert np.all(contour(m) <= 1 - empty + 1e-12)
    if empty < 1:
        bp = pignistic(m)
        np.testing.assert_allclose(bp, pignistic_bruteforce(md, c), atol=1e-12)
        assert bp.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(bp >= 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_bayesian_bba_contour_equals_pignistic(c, seed):
    rng = np.random.default_rng(seed)
    cat = FocalSetCatalog.build(c)
    p = rng.dirichlet(np.ones(c))
    m = np.zeros(len(cat))
    m[cat.singleton_indices()] = p
    bba = MassFunction(cat, m)
    np.testing.assert_array_equal(contour(bba), p)
    np.testing.assert_allclose(pignistic(bba), p, rtol=0, atol=1e-15)


def test_partition_vectorised_matches_rows(rng):
    cat = FocalSetCatalog.build(4)
    rows = np.stack([random_bba(rng, cat).masses for _ in range(20)])
    p = CredalPartition(cat, rows)
    for i in range(20):
        np.testing.assert_allclose(contour(p)[i], contour(p.row(i)))
        np.testing.assert_allclose(pignistic(p)[i], pignistic(p.row(i)))
