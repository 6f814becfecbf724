"""Removing duplicate and redundant strategies while staying harmonic.

A 3x3 harmonic game with a duplicate row and a duplicate column reduces in
two steps to a 2x2 game; each reduction folds the removed strategy's measure
weight into its twin, and harmonicity survives every step.  The closed-form
mixed equilibrium (the normalized measure) is verified exactly along the way.

The second half removes an alpha-redundant row - a strategy that is a convex
combination of the others - and then rescales the result into matching
pennies.
"""

from fractions import Fraction as F
from pathlib import Path

from gamedecomp import (
    CoMeasureVector,
    RedundancySpec,
    best_response_epsilon,
    co_measure_quotient,
    harmonic_equilibrium,
    is_harmonic,
    parse_game,
    reduce_duplicate,
    reduce_redundant,
    scale,
)

FIXTURES = Path(__file__).parent.parent / "fixtures"


def main():
    doc = parse_game((FIXTURES / "multi.game").read_text())
    print("3x3 game harmonic under uniform parameters:",
          is_harmonic(doc.game, doc.mu, doc.gamma))

    reduced, mu_r, gamma_r = reduce_duplicate(doc.game, doc.mu, doc.gamma, 0, "s0", "s1")
    print("\nafter removing the duplicate row:")
    print("  measure of the row player:", mu_r.weights[0].tolist())
    print("  still harmonic:", is_harmonic(reduced, mu_r, gamma_r))
    eq = harmonic_equilibrium(reduced, mu_r, gamma_r)
    print("  mixed equilibrium:", [p.tolist() for p in eq.probs],
          "eps =", best_response_epsilon(reduced, eq))

    final, mu_f, gamma_f = reduce_duplicate(reduced, mu_r, gamma_r, 1, "t0", "t1")
    print("\nafter also removing the duplicate column:")
    print("  measures:", [w.tolist() for w in mu_f.weights])
    print("  still harmonic:", is_harmonic(final, mu_f, gamma_f))

    print("\n== redundant-row example ==")
    doc = parse_game((FIXTURES / "redscale.game").read_text())
    theta = F(1, 3)
    print("row r equals theta*s + (1-theta)*t with theta = 1/3")
    print("harmonic before reduction:", is_harmonic(doc.game, doc.mu, doc.gamma))

    spec = RedundancySpec(0, "r", (theta, 1 - theta))
    reduced, mu_r, gamma_r = reduce_redundant(doc.game, doc.mu, doc.gamma, spec)
    print("reduced measure of the row player:", mu_r.weights[0].tolist())
    print("harmonic after reduction:", is_harmonic(reduced, mu_r, gamma_r))

    beta = CoMeasureVector.from_tensors(reduced.space, [[1, 1], [F(1, 2), F(1, 2)]])
    pennies = scale(reduced, beta)
    print("after halving the column player's payoffs:", pennies.flat(0), pennies.flat(1))
    quotient = co_measure_quotient(gamma_r, beta)
    print("now harmonic under the unit parameters:",
          is_harmonic(pennies, mu_r, quotient))


if __name__ == "__main__":
    main()
