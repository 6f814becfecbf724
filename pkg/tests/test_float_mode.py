import random

import numpy as np

from gamedecomp import (
    CoMeasureVector,
    Game,
    MeasureVector,
    decompose,
    deviation_divergence,
    is_harmonic,
    solve_poisson,
)
from gamedecomp.cli import main
from gamedecomp.laws import random_game, random_gamma, random_mu, random_space
from conftest import FIXTURES


def to_float(game, mu, gamma):
    space = game.space
    g = Game.from_payoffs(space, [game.flat(i) for i in space.players], exact=False)
    m = MeasureVector.from_weights(
        space, [w.tolist() for w in mu.weights], exact=False
    )
    c = CoMeasureVector.from_tensors(
        space, [t.reshape(-1).tolist() for t in gamma.tensors], exact=False
    )
    return g, m, c


def test_float_decompose_tracks_exact():
    rng = random.Random(55)
    for _ in range(10):
        space = random_space(rng, (2, 3), (2, 4))
        g = random_game(rng, space)
        mu, gamma = random_mu(rng, space), random_gamma(rng, space)
        exact_parts = decompose(g, mu, gamma)
        gf, mf, cf = to_float(g, mu, gamma)
        float_parts = decompose(gf, mf, cf)
        for a, b in zip(exact_parts.components(), float_parts.components()):
            for i in space.players:
                want = np.array([float(v) for v in a.flat(i)])
                got = np.array(b.flat(i))
                assert np.max(np.abs(want - got)) <= 1e-9


def test_float_solver_and_predicates():
    rng = random.Random(56)
    space = random_space(rng, (2, 2), (2, 3))
    g = random_game(rng, space)
    mu, gamma = random_mu(rng, space), random_gamma(rng, space)
    gf, mf, cf = to_float(g, mu, gamma)
    h = deviation_divergence(gf, mf, cf)
    phi = solve_poisson(h, mf)
    assert not phi.exact
    harmonic = decompose(gf, mf, cf).harmonic
    assert is_harmonic(harmonic, mf, cf)  # tolerance-based zero test


def test_cli_float_flag(capsys):
    code = main(["--float", "classify", str(FIXTURES / "mp.game")])
    out = capsys.readouterr().out
    assert code == 0
    assert "(mu,gamma)-harmonic (HG): yes" in out


def test_epsilon_bound_mode_dependent_shape():
    from gamedecomp import epsilon_bound, parse_game

    text = (FIXTURES / "mp.game").read_text()
    exact_doc = parse_game(text)
    float_doc = parse_game(text, exact=False)
    bound_sq = epsilon_bound(exact_doc.game, exact_doc.mu, exact_doc.gamma)
    bound = epsilon_bound(float_doc.game, float_doc.mu, float_doc.gamma)
    assert bound_sq == 32  # exact mode: squared, rational
    assert abs(bound - float(bound_sq) ** 0.5) <= 1e-12  # float mode: the root
