import random
from fractions import Fraction as F

import pytest

from gamedecomp import (
    CoMeasureVector,
    Game,
    MeasureVector,
    PreconditionError,
    ScalarField,
    StrategySpace,
    closest_potential,
    decompose,
    epsilon_bound,
    extract_potential,
    game_norm_sq,
    inner_product_game,
    is_gamma_potential,
    is_harmonic,
    is_mu_normalized,
    is_nonstrategic,
)
from gamedecomp.laws import random_game, random_gamma, random_mu, random_space
from conftest import load_fixture


def cells(game, player):
    return game.flat(player)


# -- published decomposition tables -----------------------------------------------


def test_matching_pennies_is_purely_harmonic(matching_pennies):
    doc = matching_pennies
    parts = decompose(doc.game, doc.mu, doc.gamma)
    assert parts.nonstrategic.is_zero()
    assert parts.potential.is_zero()
    assert parts.harmonic == doc.game


def test_duplicated_matching_pennies_tables(mp_duplicated):
    doc = mp_duplicated
    parts = decompose(doc.game, doc.mu, doc.gamma)
    assert cells(parts.potential, 0) == [
        F(4, 15), F(-4, 15), F(-2, 15), F(2, 15), F(-2, 15), F(2, 15)
    ]
    assert cells(parts.potential, 1) == [
        F(3, 5), F(-3, 5), F(1, 5), F(-1, 5), F(1, 5), F(-1, 5)
    ]
    assert cells(parts.harmonic, 0) == [
        F(16, 15), F(-16, 15), F(-8, 15), F(8, 15), F(-8, 15), F(8, 15)
    ]
    assert cells(parts.harmonic, 1) == [
        F(-8, 5), F(8, 5), F(4, 5), F(-4, 5), F(4, 5), F(-4, 5)
    ]
    assert cells(parts.nonstrategic, 0) == [F(-1, 3), F(1, 3)] * 3
    assert cells(parts.nonstrategic, 1) == [F(0)] * 6


def test_doubled_matching_pennies_tables():
    doc = load_fixture("mp-doubled.game")
    parts = decompose(doc.game, doc.mu, doc.gamma)
    assert cells(parts.potential, 0) == [F(1, 2), F(-1, 2), F(-1, 2), F(1, 2)]
    assert cells(parts.potential, 1) == [F(1, 2), F(-1, 2), F(-1, 2), F(1, 2)]
    assert cells(parts.harmonic, 0) == [F(3, 2), F(-3, 2), F(-3, 2), F(3, 2)]
    assert cells(parts.harmonic, 1) == [F(-3, 2), F(3, 2), F(3, 2), F(-3, 2)]
    assert parts.nonstrategic.is_zero()


def test_column_scaled_matching_pennies_tables():
    doc = load_fixture("mp-col-scaled.game")
    parts = decompose(doc.game, doc.mu, doc.gamma)
    assert cells(parts.potential, 0) == [F(3, 4), F(1, 4), F(-3, 4), F(-1, 4)]
    assert cells(parts.potential, 1) == [F(1, 4), F(-1, 4), F(-1, 4), F(1, 4)]
    assert cells(parts.harmonic, 0) == [F(5, 4), F(-5, 4), F(-5, 4), F(5, 4)]
    assert cells(parts.harmonic, 1) == [F(-5, 4), F(5, 4), F(5, 4), F(-5, 4)]
    assert parts.nonstrategic.is_zero()


def test_depend_tables(depend):
    doc = depend
    assert is_mu_normalized(doc.game, doc.mu)
    parts = decompose(doc.game, doc.mu, doc.gamma)
    assert cells(parts.potential, 0) == [F(2), F(-1), F(-2), F(1)]
    assert cells(parts.potential, 1) == [F(1), F(-1), F(-2), F(2)]
    assert cells(parts.harmonic, 0) == [F(2), F(-2), F(-2), F(2)]
    assert cells(parts.harmonic, 1) == [F(-2), F(2), F(2), F(-2)]
    assert parts.nonstrategic.is_zero()


def test_noncontinuity_fixture_at_eps_one_tenth():
    doc = load_fixture("noncontinuous.game")
    parts = decompose(doc.game, doc.mu, doc.gamma)
    eps = F(1, 10)
    normalized = parts.potential + parts.harmonic
    assert cells(normalized, 0) == [
        (4 - eps) / 3, -(4 - eps) / 3,
        -(2 + eps) / 3, (2 + eps) / 3,
        -2 * (1 - eps) / 3, 2 * (1 - eps) / 3,
    ]
    assert cells(normalized, 1) == [
        F(-1), F(1), F(1), F(-1), 1 - eps, -(1 - eps)
    ]
    assert cells(parts.nonstrategic, 0) == [-(1 - eps) / 3, (1 - eps) / 3] * 3
    assert cells(parts.nonstrategic, 1) == [F(0)] * 6


# -- predicates ---------------------------------------------------------------------


def test_is_nonstrategic(matching_pennies):
    space = matching_pennies.space
    constant = Game.from_payoffs(space, [[7] * 4, [7] * 4])
    assert is_nonstrategic(constant)
    assert not is_nonstrategic(matching_pennies.game)

    doc = load_fixture("mp-dup.game")
    parts = decompose(doc.game, doc.mu, doc.gamma)
    assert is_nonstrategic(parts.nonstrategic)


def test_is_mu_normalized(depend):
    assert is_mu_normalized(depend.game, depend.mu)
    space = depend.space
    assert is_mu_normalized(Game.zeros(space), depend.mu)
    constant = Game.from_payoffs(space, [[3] * 4, [3] * 4])
    assert not is_mu_normalized(constant, depend.mu)


def test_is_gamma_potential(matching_pennies, depend):
    space = matching_pennies.space
    uniform = matching_pennies.gamma
    nonstrategic = Game.from_payoffs(space, [[1, 2, 1, 2], [5, 5, 3, 3]])
    assert is_gamma_potential(nonstrategic, uniform)
    assert not is_gamma_potential(matching_pennies.game, uniform)

    # scaled potential component of Example depend under gamma/beta
    parts = decompose(depend.game, depend.mu, depend.gamma)
    beta = CoMeasureVector.from_generator(space, [[1, 3], [2, 1]])
    from gamedecomp import co_measure_quotient, scale

    scaled = scale(parts.potential, beta)
    ones = CoMeasureVector.from_generator(space, [[1, 1], [1, 1]])
    tilde = co_measure_quotient(ones, beta)
    assert tilde.generator[0].tolist() == [F(1), F(1, 3)]
    assert tilde.generator[1].tolist() == [F(1, 2), F(1)]
    assert is_gamma_potential(scaled, tilde)
    assert is_harmonic(scale(parts.harmonic, beta), depend.mu, tilde)


def test_is_harmonic_examples():
    multi = load_fixture("multi.game")
    assert is_harmonic(multi.game, multi.mu, multi.gamma)

    redscale = load_fixture("redscale.game")
    assert is_harmonic(redscale.game, redscale.mu, redscale.gamma)

    incompatible = load_fixture("incompatible1.game")
    assert is_harmonic(incompatible.game, incompatible.mu, incompatible.gamma)

    space = StrategySpace((("s", "t"), ("s", "t")))
    constant = Game.from_payoffs(space, [[4] * 4, [4] * 4])
    uniform_mu = MeasureVector.uniform(space)
    uniform_gamma = CoMeasureVector.uniform(space)
    assert is_harmonic(constant, uniform_mu, uniform_gamma)
    assert is_nonstrategic(constant)


# -- potential extraction --------------------------------------------------------------


def test_extract_potential(depend):
    space = depend.space
    uniform = depend.gamma
    nonstrategic = Game.from_payoffs(space, [[1, 2, 1, 2], [5, 5, 3, 3]])
    assert extract_potential(nonstrategic, uniform) == ScalarField.zeros(space)

    parts = decompose(depend.game, depend.mu, depend.gamma)
    psi = extract_potential(parts.potential, uniform)
    assert psi.value((1, 0)) - psi.value((0, 0)) == -4

    with pytest.raises(PreconditionError, match="not gamma-potential"):
        extract_potential(load_fixture("mp.game").game, uniform)


def test_extract_potential_matches_phi_up_to_constant():
    rng = random.Random(21)
    for _ in range(15):
        space = random_space(rng, (2, 3), (2, 3))
        g = random_game(rng, space)
        mu, gamma = random_mu(rng, space), random_gamma(rng, space)
        parts = decompose(g, mu, gamma)
        psi = extract_potential(parts.potential, gamma)
        diff = {
            psi.value(p) - parts.phi.value(p) for p in space.profiles()
        }
        assert len(diff) == 1


# -- closest potential game and the bound ------------------------------------------------


def test_closest_potential_examples(matching_pennies):
    doc = matching_pennies
    closest, dist_sq = closest_potential(doc.game, doc.mu, doc.gamma)
    assert closest.is_zero()
    assert dist_sq == 16
    assert epsilon_bound(doc.game, doc.mu, doc.gamma) == 32

    space = doc.space
    coordination = Game.from_payoffs(space, [[1, 0, 0, 1], [1, 0, 0, 1]])
    closest, dist_sq = closest_potential(coordination, doc.mu, doc.gamma)
    assert closest == coordination and dist_sq == 0
    assert epsilon_bound(coordination, doc.mu, doc.gamma) == 0

    dup = load_fixture("mp-dup.game")
    parts = decompose(dup.game, dup.mu, dup.gamma)
    closest, dist_sq = closest_potential(dup.game, dup.mu, dup.gamma)
    assert closest == parts.nonstrategic + parts.potential
    assert dist_sq == game_norm_sq(parts.harmonic, dup.mu, dup.gamma)


def test_epsilon_bound_invariant_under_uniform_gamma_scaling(matching_pennies):
    # components are unchanged under (mu, theta*gamma) and d and gamma rescale
    # together, so the bound on actual payoff gains cannot move
    doc = matching_pennies
    base = epsilon_bound(doc.game, doc.mu, doc.gamma)
    assert epsilon_bound(doc.game, doc.mu, doc.gamma.scaled(F(2))) == base
    assert epsilon_bound(doc.game, doc.mu.scaled(F(3)), doc.gamma) == base


# -- global structure ---------------------------------------------------------------------


def test_decomposition_invariants_on_random_games():
    rng = random.Random(77)
    for _ in range(40):
        space = random_space(rng, (2, 3), (2, 4))
        g = random_game(rng, space)
        mu, gamma = random_mu(rng, space), random_gamma(rng, space)
        parts = decompose(g, mu, gamma)
        assert parts.total() == g
        assert is_nonstrategic(parts.nonstrategic)
        assert is_mu_normalized(parts.potential, mu)
        assert is_mu_normalized(parts.harmonic, mu)
        assert is_harmonic(parts.harmonic, mu, gamma)
        for a in parts.components():
            for b in parts.components():
                if a is not b:
                    assert inner_product_game(a, b, mu, gamma) == 0
        # phi is pinned to mu-mean zero
        assert (mu.product_array() * parts.phi.values).sum() == 0


def test_class_idempotence():
    rng = random.Random(78)
    for _ in range(10):
        space = random_space(rng, (2, 2), (2, 3))
        g = random_game(rng, space)
        mu, gamma = random_mu(rng, space), random_gamma(rng, space)
        parts = decompose(g, mu, gamma)
        again_pot = decompose(parts.potential, mu, gamma)
        assert again_pot.potential == parts.potential
        assert again_pot.harmonic.is_zero() and again_pot.nonstrategic.is_zero()
        again_har = decompose(parts.harmonic, mu, gamma)
        assert again_har.harmonic == parts.harmonic
        assert again_har.potential.is_zero() and again_har.nonstrategic.is_zero()
        again_ns = decompose(parts.nonstrategic, mu, gamma)
        assert again_ns.nonstrategic == parts.nonstrategic
        assert again_ns.potential.is_zero() and again_ns.harmonic.is_zero()


def test_normalized_harmonic_characterization():
    # mu-normalized harmonic games satisfy sum_i mu^i(S^i) gamma^i g^i = 0 pointwise
    rng = random.Random(79)
    for _ in range(15):
        space = random_space(rng, (2, 3), (2, 3))
        g = random_game(rng, space)
        mu, gamma = random_mu(rng, space), random_gamma(rng, space)
        harmonic = decompose(g, mu, gamma).harmonic
        acc = None
        for i in space.players:
            term = gamma.expanded(i) * harmonic.payoffs[i] * mu.total(i)
            acc = term if acc is None else acc + term
        assert all(v == 0 for v in acc.reshape(-1).tolist())
