"""Exact equilibrium verification and the closed-form harmonic equilibria.

There is no general Nash solver here: the library only verifies candidate
profiles, constructs the known equilibrium of harmonic games, maps equilibria
through product scalings, and searches potential-function argmaxes.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import PreconditionError
from .numeric import is_zero
from .games import CoMeasureVector, Game, MeasureVector, MixedProfile
from .decomposition import extract_potential, is_gamma_potential, is_harmonic
from .spaces import require_same_space


def _opponent_payoff_vector(g: Game, x: MixedProfile, player: int) -> list:
    """Expected payoff of each pure strategy of ``player`` against x^{-i}."""
    values = g.payoffs[player]
    # contract every axis except the player's own, highest axis first
    for axis in range(g.space.n_players - 1, -1, -1):
        if axis == player:
            continue
        probs = x.probs[axis].tolist()
        acc = None
        for k, p in enumerate(probs):
            term = np.take(values, k, axis=axis) * p
            acc = term if acc is None else acc + term
        values = acc
    return list(np.atleast_1d(values).tolist())


def expected_payoff(g: Game, x: MixedProfile, player: int):
    """sum_s prod_j x^j(s^j) g^i(s), exactly."""
    require_same_space(g, x)
    vector = _opponent_payoff_vector(g, x, player)
    return sum(p * v for p, v in zip(x.probs[player].tolist(), vector))


def best_response_epsilon(g: Game, x: MixedProfile):
    """Largest gain any player gets from a unilateral pure deviation, floored at 0.

    x is a Nash equilibrium iff the result is exactly 0; scanning pure
    deviations suffices because a best response to fixed opponents is pure.
    """
    require_same_space(g, x)
    zero = Fraction(0) if g.exact else 0.0
    worst = zero
    for i in g.space.players:
        vector = _opponent_payoff_vector(g, x, i)
        current = sum(p * v for p, v in zip(x.probs[i].tolist(), vector))
        gain = max(vector) - current
        if gain > worst:
            worst = gain
    return worst


def harmonic_equilibrium(
    g: Game, mu: MeasureVector, gamma: CoMeasureVector
) -> MixedProfile:
    """The completely mixed equilibrium normalized(mu^i c^i) of a harmonic game.

    Requires gamma to be a product co-measure with stored generator c, or
    constant per player (then c = 1 and the profile is normalized mu).
    """
    space = require_same_space(g, mu, gamma)
    if not is_harmonic(g, mu, gamma):
        raise PreconditionError("not harmonic")
    if gamma.generator is not None:
        weights = [
            [m * c for m, c in zip(mu.weights[i].tolist(), gamma.generator[i].tolist())]
            for i in space.players
        ]
    elif all(gamma.is_player_constant(i) for i in space.players):
        weights = [mu.weights[i].tolist() for i in space.players]
    else:
        raise PreconditionError("gamma not product: no generator stored")
    profile = MixedProfile.from_positive_weights(space, weights, exact=g.exact)
    eps = best_response_epsilon(g, profile)
    if not is_zero(eps, g.exact):
        raise PreconditionError(
            f"constructed profile fails the equilibrium check (eps = {eps})"
        )
    return profile


def map_equilibrium_under_scaling(x: MixedProfile, b_generator) -> MixedProfile:
    """Transport an equilibrium of g to one of (beta . g), beta generated by b.

    y^i is x^i / b^i renormalized; Nash equilibria map onto Nash equilibria
    for product scalings.
    """
    space = x.space
    gen = [np.asarray(c).reshape(-1).tolist() for c in b_generator]
    for i in space.players:
        if len(gen[i]) != space.sizes[i]:
            raise PreconditionError(
                "beta not product: generator shape does not match the space"
            )
    weights = [
        [p / c for p, c in zip(x.probs[i].tolist(), gen[i])] for i in space.players
    ]
    return MixedProfile.from_positive_weights(space, weights, exact=x.exact)


def pure_equilibrium_from_potential(
    g: Game, gamma: CoMeasureVector
) -> list[tuple[int, ...]]:
    """All global argmax profiles of the potential function, in canonical order.

    Every returned profile is a pure Nash equilibrium of g.
    """
    require_same_space(g, gamma)
    if not is_gamma_potential(g, gamma):
        raise PreconditionError("not gamma-potential")
    psi = extract_potential(g, gamma)
    flat = psi.flat()
    best = max(flat)
    return [
        g.space.profile(idx) for idx, v in enumerate(flat) if v == best
    ]
