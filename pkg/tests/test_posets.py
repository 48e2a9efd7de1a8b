from fractions import Fraction

import pytest
from hypothesis import given

import upcube as uc
from upcube.errors import InvalidBias, InvalidParams, NotUpwardClosed, TooLarge
from upcube.posets import (
    WeightedPoset,
    load_poset,
    poset_from_json,
    poset_to_json,
    save_poset,
)

from cube_strategies import open_biases

GRID = [Fraction(k, 32) for k in range(1, 32)]


def antichain(k: int) -> WeightedPoset:
    return WeightedPoset(
        elements=tuple(f"x{i}" for i in range(k)),
        covers=(),
        weights=(Fraction(1, k),) * k,
    )


def chain(k: int) -> WeightedPoset:
    return WeightedPoset(
        elements=tuple(f"c{i}" for i in range(k)),
        covers=tuple((f"c{i}", f"c{i+1}") for i in range(k - 1)),
        weights=(Fraction(1, k),) * k,
    )


class TestWeightedPoset:
    def test_transitive_closure(self):
        poset = chain(4)
        assert (0, 3) in poset.less
        assert (3, 0) not in poset.less

    def test_cycle_rejected(self):
        with pytest.raises(InvalidParams):
            WeightedPoset(("a", "b"), (("a", "b"), ("b", "a")), (Fraction(1, 2),) * 2)

    def test_weight_validation(self):
        with pytest.raises(InvalidParams):
            WeightedPoset(("a", "b"), (), (Fraction(1, 2), Fraction(1, 3)))
        with pytest.raises(InvalidParams):
            WeightedPoset(("a", "b"), (), (Fraction(3, 2), Fraction(-1, 2)))
        with pytest.raises(InvalidParams):
            WeightedPoset(("a", "a"), (), (Fraction(1, 2),) * 2)
        with pytest.raises(InvalidParams):
            WeightedPoset(("a", "b"), (("a", "zzz"),), (Fraction(1, 2),) * 2)

    def test_json_round_trip(self, tmp_path):
        poset = uc.diamond_poset(Fraction(3, 8))
        again = poset_from_json(poset_to_json(poset))
        assert again == poset
        path = tmp_path / "poset.json"
        save_poset(poset, path)
        assert load_poset(path) == poset

    def test_bad_json(self):
        with pytest.raises(InvalidParams):
            poset_from_json({"elements": ["a"]})


class TestEnumerateUpsets:
    def test_small_shapes(self):
        assert len(uc.enumerate_upsets(antichain(3))) == 8
        assert len(uc.enumerate_upsets(chain(3))) == 4

    def test_diamond_has_ten(self):
        ups = uc.enumerate_upsets(uc.diamond_poset(Fraction(1, 2)))
        assert len(ups) == 10

    def test_each_is_upset_and_distinct(self):
        poset = uc.diamond_poset(Fraction(1, 3))
        ups = uc.enumerate_upsets(poset)
        assert len(set(ups)) == len(ups)
        assert all(poset.is_upset(m) for m in ups)

    def test_closed_under_intersection(self):
        poset = uc.diamond_poset(Fraction(2, 5))
        ups = set(uc.enumerate_upsets(poset))
        assert all(u & v in ups for u in ups for v in ups)

    def test_too_large(self):
        with pytest.raises(TooLarge):
            uc.enumerate_upsets(antichain(21))


class TestDiamondPoset:
    def test_weights_at_half(self):
        poset = uc.diamond_poset(Fraction(1, 2))
        assert poset.weights == (
            Fraction(1, 6),
            Fraction(1, 6),
            Fraction(1, 6),
            Fraction(1, 6),
            Fraction(1, 3),
        )

    def test_weight_a_at_third(self):
        assert uc.diamond_poset(Fraction(1, 3)).weights[4] == Fraction(1, 6)

    @given(open_biases)
    def test_normalization(self, p):
        assert sum(uc.diamond_poset(p).weights) == 1

    def test_degenerate_bias_rejected(self):
        for p in (0, 1, Fraction(5, 4)):
            with pytest.raises(InvalidBias):
                uc.diamond_poset(p)

    @given(open_biases)
    def test_two_element_upsets_have_weight_p(self, p):
        poset = uc.diamond_poset(p)
        idx = {e: i for i, e in enumerate(poset.elements)}
        for i in (1, 2, 3):
            mask = 1 << idx["A"] | 1 << idx[f"p{i}"]
            assert poset.is_upset(mask)
            assert poset.weight_of(mask) == p


class TestHKScan:
    @pytest.mark.parametrize("p", GRID)
    def test_min_defect_nonneg_on_grid(self, p):
        md, _ = uc.poset_hk_scan(uc.diamond_poset(p))
        assert md >= 0

    @pytest.mark.parametrize("p", [Fraction(1, 2), Fraction(3, 8), Fraction(5, 7)])
    def test_size_three_pair_defect_formula(self, p):
        poset = uc.diamond_poset(p)
        idx = {e: i for i, e in enumerate(poset.elements)}
        u = 1 << idx["A"] | 1 << idx["p1"] | 1 << idx["p2"]
        v = 1 << idx["A"] | 1 << idx["p1"] | 1 << idx["p3"]
        d = uc.poset_hk_defect(poset, u, v)
        assert d == p - (2 * p / (1 + p)) ** 2
        assert d == p * (1 - p) ** 2 / (1 + p) ** 2

    def test_pair_defect_at_half_is_1_18(self):
        poset = uc.diamond_poset(Fraction(1, 2))
        idx = {e: i for i, e in enumerate(poset.elements)}
        u = 1 << idx["A"] | 1 << idx["p1"] | 1 << idx["p2"]
        v = 1 << idx["A"] | 1 << idx["p1"] | 1 << idx["p3"]
        assert uc.poset_hk_defect(poset, u, v) == Fraction(1, 18)

    def test_full_vs_any_is_zero(self):
        poset = uc.diamond_poset(Fraction(2, 5))
        full = (1 << 5) - 1
        for v in uc.enumerate_upsets(poset):
            assert uc.poset_hk_defect(poset, full, v) == 0

    def test_antichain_scan_goes_negative(self):
        md, (u, v) = uc.poset_hk_scan(antichain(2))
        assert md == Fraction(-1, 4)
        assert u != v

    def test_non_upset_rejected(self):
        poset = uc.diamond_poset(Fraction(1, 2))
        with pytest.raises(NotUpwardClosed):
            uc.poset_hk_defect(poset, 0b00001, 0b11111)  # {a} alone is not an upset


class TestPosetOccupancy:
    def test_trivial_triples(self):
        poset = uc.diamond_poset(Fraction(1, 2))
        full = (1 << 5) - 1
        assert uc.poset_occupancy(poset, 0, 0, 0) == (1, 0, 0, 0)
        assert uc.poset_occupancy(poset, full, full, full) == (0, 0, 0, 1)

    @given(open_biases)
    def test_two_element_triple_realizes_lp_profile(self, p):
        poset = uc.diamond_poset(p)
        idx = {e: i for i, e in enumerate(poset.elements)}
        masks = [1 << idx["A"] | 1 << idx[f"p{i}"] for i in (1, 2, 3)]
        assert uc.poset_occupancy(poset, *masks) == uc.optimal_profile(p)

    @given(open_biases)
    def test_three_element_triple_gives_transposed_profile(self, p):
        poset = uc.diamond_poset(p)
        idx = {e: i for i, e in enumerate(poset.elements)}
        masks = [
            (1 << idx["A"]) | sum(1 << idx[f"p{j}"] for j in (1, 2, 3) if j != i)
            for i in (1, 2, 3)
        ]
        s = uc.poset_occupancy(poset, *masks)
        opt = uc.optimal_profile(p)
        assert s == (opt[0], opt[2], opt[1], opt[3])

    def test_rejects_non_upset(self):
        poset = uc.diamond_poset(Fraction(1, 2))
        with pytest.raises(NotUpwardClosed):
            uc.poset_occupancy(poset, 0b00001, 0, 0)
