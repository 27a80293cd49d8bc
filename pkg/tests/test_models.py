"""The six shuffle models: samplers, exact laws, and convolution."""

import itertools
import random
from collections import Counter
from fractions import Fraction
from math import comb

import pytest
from scipy import stats

from shuffle_lab import ppartitions as pp
from shuffle_lab.models import (
    MODELS,
    RIFFLE_MODELS,
    SHELF_MODELS,
    ShuffleSpec,
    convolve,
    exact_dist_to_json_dict,
    exact_distribution,
    exact_prob,
    group_algebra_product_check,
    iter_shelf_placements,
    simulate_riffle,
    simulate_riffle_uniform,
    simulate_shelf,
)
from shuffle_lab.permutations import (
    all_permutations,
    descents,
    format_permutation,
    identity,
    inverse,
)

from .oracles import ScriptedRNG

SHELF_OF_RIFFLE = dict(zip(RIFFLE_MODELS, SHELF_MODELS))


def test_spec_validation():
    with pytest.raises(ValueError):
        ShuffleSpec(4, 2, "overhand")
    with pytest.raises(ValueError):
        ShuffleSpec(0, 2, "shelf-lazy")
    with pytest.raises(ValueError):
        ShuffleSpec(4, -1, "shelf-lazy")
    # only the full-alphabet models keep an outcome at m = 0
    assert ShuffleSpec(4, 0, "shelf-lazy").total_outcomes == 1
    assert ShuffleSpec(4, 0, "riffle-updown").total_outcomes == 1
    for model in ("shelf-standard", "shelf-strict", "riffle-downup", "riffle-classic"):
        with pytest.raises(ValueError):
            ShuffleSpec(4, 0, model)


def test_spec_properties():
    per_card = {
        "shelf-lazy": 7,
        "shelf-standard": 6,
        "shelf-strict": 3,
        "riffle-updown": 7,
        "riffle-downup": 6,
        "riffle-classic": 3,
    }
    kinds = {"all": "lpk", "nonzero": "pk", "positive": "des"}
    for model, choices in per_card.items():
        spec = ShuffleSpec(5, 3, model)
        assert spec.choices_per_card == choices
        assert spec.total_outcomes == choices**5
        assert spec.statistic_kind == kinds[spec.mode]


def test_exact_prob_examples():
    strict = ShuffleSpec(4, 1, "shelf-strict")
    for p in all_permutations(4):
        assert exact_prob(p, strict) == (1 if p == identity(4) else 0)
    lazy = ShuffleSpec(2, 1, "shelf-lazy")
    assert exact_prob((1, 2), lazy) == Fraction(5, 9)
    assert exact_prob((2, 1), lazy) == Fraction(4, 9)
    classic = ShuffleSpec(3, 2, "riffle-classic")
    for p in all_permutations(3):
        des_inv = descents(inverse(p))[0]
        assert exact_prob(p, classic) == Fraction(comb(2 + 3 - des_inv - 1, 3), 8)


def test_exact_prob_normalizes():
    for model in MODELS:
        spec = ShuffleSpec(4, 2, model)
        assert sum(exact_prob(p, spec) for p in all_permutations(4)) == 1


def test_exact_prob_riffles_read_the_inverse():
    p = (2, 4, 1, 3)  # lpk 1, but its inverse has lpk 2
    assert exact_prob(p, ShuffleSpec(4, 1, "shelf-lazy")) == Fraction(4, 81)
    assert exact_prob(p, ShuffleSpec(4, 1, "riffle-updown")) == 0
    with pytest.raises(ValueError):
        exact_prob((1, 2), ShuffleSpec(3, 1, "shelf-lazy"))


def test_full_outcome_space_reproduces_exact_probs():
    for model, n, m in itertools.product(SHELF_MODELS, range(1, 6), (1, 2)):
        spec = ShuffleSpec(n, m, model)
        counts = Counter(
            pp.sorting_permutation(f) for f in iter_shelf_placements(spec)
        )
        for p in all_permutations(n):
            assert counts[p] == exact_prob(p, spec) * spec.total_outcomes


def test_riffle_shelf_inverse_duality():
    for riffle, shelf in SHELF_OF_RIFFLE.items():
        for n, m in itertools.product(range(1, 7), (1, 2)):
            a, b = ShuffleSpec(n, m, riffle), ShuffleSpec(n, m, shelf)
            for p in all_permutations(n):
                assert exact_prob(p, a) == exact_prob(inverse(p), b)


def test_simulate_shelf_scripted_worked_examples():
    # strict, m=3: shelves (3,1,1,2,2,2,3,3,2), deck 234569178
    rng = ScriptedRNG([2, 0, 0, 1, 1, 1, 2, 2, 1])
    outcome, perm = simulate_shelf(ShuffleSpec(9, 3, "shelf-strict"), rng)
    assert format_permutation(perm) == "234569178"
    assert outcome.composition == (2, 4, 3)
    assert rng.exhausted()

    # standard, m=2: placements (1t,1b,2t,2t,1b,2b,2t,1t,1t), deck 981257436
    rng = ScriptedRNG([0, 1, 2, 2, 1, 3, 2, 0, 0])
    outcome, perm = simulate_shelf(ShuffleSpec(9, 2, "shelf-standard"), rng)
    assert format_permutation(perm) == "981257436"
    assert outcome.composition == (3, 2, 3, 1)
    assert rng.exhausted()

    # lazy, m=2: placements (1t,1b,2t,0,1b,2b,2t,0,1t), deck 489125736
    rng = ScriptedRNG([1, 2, 3, 0, 2, 4, 3, 0, 1])
    outcome, perm = simulate_shelf(ShuffleSpec(9, 2, "shelf-lazy"), rng)
    assert format_permutation(perm) == "489125736"
    assert outcome.composition == (2, 2, 2, 2, 1)
    assert rng.exhausted()


def test_simulate_shelf_outcome_is_consistent():
    spec = ShuffleSpec(6, 2, "shelf-standard")
    rng = random.Random(11)
    for _ in range(200):
        outcome, perm = simulate_shelf(spec, rng)
        assert perm == outcome.permutation
        assert sum(outcome.composition) == 6
        f = pp.ppartition_from_shelf_outcome(outcome, spec.mode)
        assert pp.sorting_permutation(f) == perm


def test_simulate_requires_matching_family():
    rng = random.Random(0)
    with pytest.raises(ValueError):
        simulate_shelf(ShuffleSpec(4, 2, "riffle-classic"), rng)
    with pytest.raises(ValueError):
        simulate_riffle(ShuffleSpec(4, 2, "shelf-lazy"), rng)


def test_simulate_riffle_outcome_is_consistent():
    for model in RIFFLE_MODELS:
        spec = ShuffleSpec(6, 2, model)
        variant = {"riffle-updown": "up-down", "riffle-downup": "down-up", "riffle-classic": "classic"}[model]
        rng = random.Random(13)
        for _ in range(200):
            outcome, perm = simulate_riffle(spec, rng)
            assert perm == outcome.permutation
            assert sum(outcome.composition) == 6
            # the pair is a genuine machine outcome: the conversion accepts it
            f = pp.riffle_outcome_to_ppartition(outcome.composition, perm, variant)
            assert pp.sorting_permutation(f) == inverse(perm)


def _chi_square_against_exact(sampler, spec, samples, seed):
    rng = random.Random(seed)
    counts = Counter()
    for _ in range(samples):
        _, perm = sampler(spec, rng)
        counts[perm] += 1
    observed, expected = [], []
    for p in all_permutations(spec.n):
        probability = exact_prob(p, spec)
        if probability == 0:
            assert counts[p] == 0, f"impossible deck order {p} was sampled"
        else:
            observed.append(counts[p])
            expected.append(float(probability) * samples)
    return stats.chisquare(observed, expected).pvalue


def test_simulate_shelf_statistics():
    spec = ShuffleSpec(4, 1, "shelf-lazy")
    assert _chi_square_against_exact(simulate_shelf, spec, 50_000, 2001) > 1e-3


def test_simulate_riffle_statistics():
    spec = ShuffleSpec(4, 1, "riffle-updown")
    assert _chi_square_against_exact(simulate_riffle, spec, 50_000, 2002) > 1e-3


def test_riffle_interleaving_samplers_agree():
    # proportional dropping and a uniformly random interleaving induce the
    # same law; both must match the exact distribution
    spec = ShuffleSpec(4, 1, "riffle-downup")
    assert _chi_square_against_exact(simulate_riffle, spec, 50_000, 2003) > 1e-3
    assert _chi_square_against_exact(simulate_riffle_uniform, spec, 50_000, 2004) > 1e-3


def test_riffle_cut_is_multinomial():
    spec = ShuffleSpec(10, 3, "riffle-classic")
    rng = random.Random(2005)
    samples = 100_000
    counts = Counter()
    for _ in range(samples):
        outcome, _ = simulate_riffle(spec, rng)
        counts[outcome.composition] += 1
    observed, expected = [], []
    tail_observed, tail_expected = 0, 0.0
    for cut in itertools.product(range(11), repeat=3):
        if sum(cut) != 10:
            continue
        probability = comb(10, cut[0]) * comb(10 - cut[0], cut[1]) / 3**10
        if probability * samples < 20:
            tail_observed += counts[cut]
            tail_expected += probability * samples
        else:
            observed.append(counts[cut])
            expected.append(probability * samples)
    observed.append(tail_observed)
    expected.append(tail_expected)
    assert stats.chisquare(observed, expected).pvalue > 1e-3


def test_classic_single_pile_is_identity():
    spec = ShuffleSpec(5, 1, "riffle-classic")
    rng = random.Random(3)
    for _ in range(20):
        outcome, perm = simulate_riffle(spec, rng)
        assert perm == identity(5)
        assert outcome.composition == (5,)


def test_exact_distribution_examples():
    dist = exact_distribution(ShuffleSpec(2, 1, "shelf-lazy"))
    assert dist.statistic == "lpk"
    assert dist.classes == ((0, Fraction(5, 9), 1), (1, Fraction(4, 9), 1))
    assert dist.prob(1) == Fraction(4, 9)
    assert dist.class_size(0) == 1
    with pytest.raises(KeyError):
        dist.prob(2)
    # normalization holds for a larger strict table too
    strict = exact_distribution(ShuffleSpec(6, 3, "shelf-strict"))
    assert sum(prob * count for _, prob, count in strict.classes) == 1


def test_exact_distribution_rejects_bad_normalization():
    dist = exact_distribution(ShuffleSpec(3, 1, "shelf-lazy"))
    with pytest.raises(ValueError):
        type(dist)(dist.spec, dist.statistic, dist.classes[:1])


def test_exact_distribution_json_shape():
    payload = exact_dist_to_json_dict(exact_distribution(ShuffleSpec(2, 1, "shelf-lazy")))
    assert payload == {
        "model": "shelf-lazy",
        "n": 2,
        "m": 1,
        "statistic": "lpk",
        "classes": [
            {"k": 0, "count": "1", "prob_num": "5", "prob_den": "9"},
            {"k": 1, "count": "1", "prob_num": "4", "prob_den": "9"},
        ],
    }


def test_lazy_support_is_bounded_by_shelf_count():
    dist = exact_distribution(ShuffleSpec(6, 2, "shelf-lazy"))
    assert dist.prob(3) == 0
    assert dist.prob(2) > 0
    big = exact_distribution(ShuffleSpec(52, 10, "shelf-lazy"))
    assert all(prob == 0 for k, prob, _ in big.classes if k > 10)
    assert sum(prob * count for _, prob, count in big.classes) == 1


def test_convolve_rules():
    assert convolve(ShuffleSpec(52, 10, "shelf-lazy"), ShuffleSpec(52, 10, "shelf-lazy")).m == 220
    assert convolve(ShuffleSpec(8, 4, "shelf-strict"), ShuffleSpec(8, 4, "shelf-strict")).m == 16
    assert convolve(ShuffleSpec(8, 2, "shelf-standard"), ShuffleSpec(8, 3, "shelf-standard")).m == 12
    assert convolve(ShuffleSpec(8, 2, "riffle-updown"), ShuffleSpec(8, 3, "riffle-updown")).m == 17
    assert convolve(ShuffleSpec(8, 0, "shelf-lazy"), ShuffleSpec(8, 3, "shelf-lazy")).m == 3
    with pytest.raises(ValueError):
        convolve(ShuffleSpec(8, 2, "shelf-lazy"), ShuffleSpec(9, 2, "shelf-lazy"))
    with pytest.raises(ValueError):
        convolve(ShuffleSpec(8, 2, "shelf-lazy"), ShuffleSpec(8, 2, "shelf-strict"))
    with pytest.raises(ValueError):
        convolve(ShuffleSpec(8, 2, "shelf-lazy"), ShuffleSpec(8, 2, "riffle-updown"))


def test_group_algebra_product_check():
    for family in ("lazy", "standard", "strict"):
        assert group_algebra_product_check(4, 1, 1, family).ok
    assert group_algebra_product_check(5, 1, 2, "lazy").ok
    assert group_algebra_product_check(4, 0, 2, "lazy").ok
    report = group_algebra_product_check(3, 2, 3, "riffle-downup")
    assert report.ok and report.to_dict()["ok"] is True
    with pytest.raises(ValueError):
        group_algebra_product_check(7, 1, 1, "lazy")
