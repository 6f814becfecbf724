import random
from fractions import Fraction as F

import pytest

from gamedecomp import (
    CoMeasureVector,
    DuplicationSpec,
    Game,
    MeasureVector,
    PermutationSpec,
    PreconditionError,
    RedundancySpec,
    StrategySpace,
    ValidationError,
    co_measure_inverse,
    co_measure_quotient,
    decompose,
    extend_duplicate,
    is_harmonic,
    permute,
    permute_params,
    reduce_duplicate,
    reduce_redundant,
    scale,
    translate_nonstrategic,
)
from gamedecomp.laws import random_game, random_gamma, random_mu, random_space
from conftest import load_fixture


# -- permutations ------------------------------------------------------------------


def test_permute_basics(matching_pennies):
    doc = matching_pennies
    identity = PermutationSpec(0, (0, 1))
    assert permute(doc.game, identity) == doc.game

    swap = PermutationSpec(0, (1, 0))
    swapped = permute(doc.game, swap)
    assert swapped.flat(0) == [F(-1), F(1), F(1), F(-1)]
    mu_s, gamma_s = permute_params(doc.mu, doc.gamma, swap)
    assert is_harmonic(swapped, mu_s, gamma_s)
    assert permute(swapped, swap) == doc.game

    with pytest.raises(ValidationError, match="invalid permutation"):
        permute(doc.game, PermutationSpec(0, (0, 0)))


def test_permute_params_moves_gamma_axis():
    space = StrategySpace((("a", "b", "c"), ("x", "y")))
    gamma = CoMeasureVector.from_tensors(space, [[1, 2], [3, 4, 5]])
    mu = MeasureVector.from_weights(space, [[1, 2, 3], [1, 1]])
    spec = PermutationSpec(0, (2, 0, 1))
    mu_s, gamma_s = permute_params(mu, gamma, spec)
    assert mu_s.weights[0].tolist() == [3, 1, 2]
    assert gamma_s.tensors[0].tolist() == [1, 2]  # player 1's own gamma untouched
    assert gamma_s.tensors[1].tolist() == [5, 3, 4]


# -- pseudo-translations ---------------------------------------------------------------


def test_translate_nonstrategic(matching_pennies):
    doc = matching_pennies
    zero = Game.zeros(doc.space)
    assert translate_nonstrategic(doc.game, zero) == doc.game

    constant_row = Game.from_payoffs(doc.space, [[5, 5, 5, 5], [0, 0, 0, 0]])
    shifted = translate_nonstrategic(doc.game, constant_row)
    parts = decompose(shifted, doc.mu, doc.gamma)
    assert parts.nonstrategic == constant_row
    assert parts.potential.is_zero()
    assert parts.harmonic == doc.game

    with pytest.raises(PreconditionError, match="not nonstrategic"):
        translate_nonstrategic(doc.game, doc.game)


# -- scalings ----------------------------------------------------------------------------


def test_scale_examples(depend):
    doc = depend
    ones = CoMeasureVector.from_generator(doc.space, [[1, 1], [1, 1]])
    assert scale(doc.game, ones) == doc.game
    assert co_measure_quotient(doc.gamma, CoMeasureVector.uniform(doc.space)) == doc.gamma

    beta = CoMeasureVector.from_generator(doc.space, [[1, 3], [2, 1]])
    scaled = scale(doc.game, beta)
    assert scaled.flat(0) == [F(8), F(-3), F(-8), F(3)]
    assert scaled.flat(1) == [F(-1), F(1), F(0), F(0)]

    # scale(g, 1/beta) inverts; iterated scaling multiplies entrywise
    assert scale(scaled, co_measure_inverse(beta)) == doc.game
    twice = scale(scale(doc.game, beta), beta)
    direct = Game.from_payoffs(
        doc.space,
        [
            [b * b * v for b, v in zip([2, 1, 2, 1], doc.game.flat(0))],
            [b * b * v for b, v in zip([1, 1, 3, 3], doc.game.flat(1))],
        ],
    )
    assert twice == direct


def test_column_scaled_mp_is_scaling_of_mp(matching_pennies):
    bar = load_fixture("mp-col-scaled.game")
    beta = CoMeasureVector.from_tensors(matching_pennies.space, [[2, 1], [1, 1]])
    assert scale(matching_pennies.game, beta) == bar.game


# -- duplication --------------------------------------------------------------------------


def test_extend_duplicate_builds_gd(matching_pennies):
    doc = matching_pennies
    spec = DuplicationSpec(0, "t", "t1", lam=F(1, 2))
    extended, mu_e, gamma_e = extend_duplicate(doc.game, doc.mu, doc.gamma, spec)
    gd = load_fixture("mp-dup.game")
    assert extended.space.labels[0] == ("s", "t", "t1")
    assert extended.flat(0) == gd.game.flat(0)
    assert extended.flat(1) == gd.game.flat(1)
    assert mu_e.weights[0].tolist() == [1, F(1, 2), F(1, 2)]
    assert mu_e.weights[1].tolist() == [1, 1]
    # co-measure slices are replicated, not split
    assert gamma_e.tensors[1].tolist() == [1, 1, 1]
    assert is_harmonic(extended, mu_e, gamma_e)

    with pytest.raises(ValidationError, match="label collision"):
        extend_duplicate(doc.game, doc.mu, doc.gamma, DuplicationSpec(0, "t", "s"))
    with pytest.raises(ValidationError, match="split"):
        DuplicationSpec(0, "t", "t1", lam=F(3, 2)).validate()


def test_extension_preserves_harmonicity_random():
    rng = random.Random(31)
    for _ in range(20):
        space = random_space(rng, (2, 3), (2, 3))
        g = random_game(rng, space)
        mu, gamma = random_mu(rng, space), random_gamma(rng, space)
        harmonic = decompose(g, mu, gamma).harmonic
        player = rng.randrange(space.n_players)
        spec = DuplicationSpec(
            player, rng.choice(space.labels[player]), "zz", lam=F(1, 3)
        )
        extended, mu_e, gamma_e = extend_duplicate(harmonic, mu, gamma, spec)
        assert is_harmonic(extended, mu_e, gamma_e)


def test_reduce_duplicate_multi_example():
    doc = load_fixture("multi.game")
    reduced, mu_r, gamma_r = reduce_duplicate(
        doc.game, doc.mu, doc.gamma, 0, "s0", "s1"
    )
    assert reduced.space.labels[0] == ("s1", "t")
    assert reduced.flat(0) == [F(2), F(-1), F(-1), F(-4), F(2), F(2)]
    assert mu_r.weights[0].tolist() == [2, 1]
    assert gamma_r.tensors[1].tolist() == [1, 1]  # restriction keeps the common value
    assert is_harmonic(reduced, mu_r, gamma_r)

    again, mu_rr, gamma_rr = reduce_duplicate(reduced, mu_r, gamma_r, 1, "t0", "t1")
    assert again.flat(0) == [F(2), F(-1), F(-4), F(2)]
    assert mu_rr.weights[1].tolist() == [1, 2]
    assert is_harmonic(again, mu_rr, gamma_rr)


def test_reduce_duplicate_errors(matching_pennies):
    doc = matching_pennies
    with pytest.raises(PreconditionError, match="not a duplicate"):
        reduce_duplicate(doc.game, doc.mu, doc.gamma, 0, "s", "t")

    spec = DuplicationSpec(0, "t", "t1")
    extended, mu_e, gamma_e = extend_duplicate(doc.game, doc.mu, doc.gamma, spec)
    bad_gamma = CoMeasureVector.from_tensors(
        extended.space, [[1, 1], [1, 2, 3]]
    )
    with pytest.raises(PreconditionError, match="not coherent"):
        reduce_duplicate(extended, mu_e, bad_gamma, 0, "t1", "t")


def test_extend_then_reduce_roundtrip():
    rng = random.Random(32)
    for _ in range(15):
        space = random_space(rng, (2, 3), (2, 4))
        g = random_game(rng, space)
        mu, gamma = random_mu(rng, space), random_gamma(rng, space)
        player = rng.randrange(space.n_players)
        spec = DuplicationSpec(
            player, rng.choice(space.labels[player]), "zz", lam=F(2, 3)
        )
        extended, mu_e, gamma_e = extend_duplicate(g, mu, gamma, spec)
        back, mu_b, gamma_b = reduce_duplicate(
            extended, mu_e, gamma_e, player, "zz", spec.source
        )
        assert back == g and mu_b == mu and gamma_b == gamma


# -- redundancy -----------------------------------------------------------------------------


def test_reduce_redundant_point_mass_matches_duplicate(matching_pennies):
    doc = matching_pennies
    spec = DuplicationSpec(0, "t", "t1", lam=F(1, 2))
    extended, mu_e, gamma_e = extend_duplicate(doc.game, doc.mu, doc.gamma, spec)
    # alpha = point mass on the source strategy t
    red = RedundancySpec(0, "t1", (F(0), F(1)))
    via_alpha, mu_a, gamma_a = reduce_redundant(extended, mu_e, gamma_e, red)
    via_dup, mu_d, gamma_d = reduce_duplicate(extended, mu_e, gamma_e, 0, "t1", "t")
    assert via_alpha == via_dup
    assert mu_a == mu_d
    assert gamma_a == gamma_d


def test_redscale_chain():
    doc = load_fixture("redscale.game")
    theta = F(1, 3)
    assert is_harmonic(doc.game, doc.mu, doc.gamma)

    spec = RedundancySpec(0, "r", (theta, 1 - theta))
    reduced, mu_r, gamma_r = reduce_redundant(doc.game, doc.mu, doc.gamma, spec)
    assert reduced.space.labels[0] == ("s", "t")
    assert mu_r.weights[0].tolist() == [1, 1]
    assert is_harmonic(reduced, mu_r, gamma_r)

    beta = CoMeasureVector.from_tensors(
        reduced.space, [[1, 1], [F(1, 2), F(1, 2)]]
    )
    pennies = scale(reduced, beta)
    assert pennies.flat(0) == [F(1), F(-1), F(-1), F(1)]
    assert pennies.flat(1) == [F(-1), F(1), F(1), F(-1)]
    quotient = co_measure_quotient(gamma_r, beta)
    assert all(v == 1 for t in quotient.tensors for v in t.reshape(-1).tolist())
    assert is_harmonic(pennies, mu_r, quotient)


def test_reduce_redundant_errors():
    doc = load_fixture("redscale.game")
    bad_alpha = RedundancySpec(0, "r", (F(1, 2), F(1, 2)))
    with pytest.raises(PreconditionError, match="not alpha-redundant"):
        reduce_redundant(doc.game, doc.mu, doc.gamma, bad_alpha)

    good = RedundancySpec(0, "r", (F(1, 3), F(2, 3)))
    nonuniform = CoMeasureVector.from_tensors(
        doc.space, [[1, 2], [1, 1, 1]]
    )
    with pytest.raises(PreconditionError, match="not uniform"):
        reduce_redundant(doc.game, doc.mu, nonuniform, good)

    with pytest.raises(ValidationError, match="sum to exactly 1"):
        RedundancySpec(0, "r", (F(1, 2), F(1, 3))).validate(doc.space)


# -- the two-transformations example ------------------------------------------------------


def test_two_transformations_example(depend):
    doc = load_fixture("two-transformations.game")
    base = decompose(depend.game, depend.mu, depend.gamma)

    beta = CoMeasureVector.from_generator(depend.space, [[1, 3], [2, 1]])
    spec = DuplicationSpec(0, "s", "s0", lam=F(1, 2))

    # scale first, then duplicate; fixture stores the published composite
    scaled_parts = [scale(c, beta) for c in base.components()]
    composite, mu_c, gamma_c = extend_duplicate(
        scale(depend.game, beta),
        depend.mu,
        co_measure_quotient(depend.gamma, beta),
        spec,
    )
    relabel = composite  # fixture labels s0, s1 with s duplicated before itself
    assert relabel.flat(0) == doc.game.flat(0)
    assert relabel.flat(1) == doc.game.flat(1)
    assert mu_c == doc.mu
    assert gamma_c == doc.gamma

    parts = decompose(composite, mu_c, gamma_c)
    for component, scaled in zip(parts.components(), scaled_parts):
        extended, _, _ = extend_duplicate(
            scaled, depend.mu, co_measure_quotient(depend.gamma, beta), spec
        )
        assert component == extended

    # published tables for the transformed potential and harmonic parts
    assert parts.potential.flat(0) == [F(4), F(-1), F(4), F(-1), F(-4), F(1)]
    assert parts.potential.flat(1) == [F(1), F(-1), F(1), F(-1), F(-6), F(6)]
    assert parts.harmonic.flat(0) == [F(4), F(-2), F(4), F(-2), F(-4), F(2)]
    assert parts.harmonic.flat(1) == [F(-2), F(2), F(-2), F(2), F(6), F(-6)]
