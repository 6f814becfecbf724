"""Scalings commute with the decomposition once gamma is divided by beta.

Start from a 2x2 normalized game, scale the row player's payoffs by (2, 1)
across the columns and the column player's by (1, 3) across the rows, and
decompose the scaled game under gamma/beta.  The components come out exactly
as the scaled components of the original decomposition, and both mixed
equilibria move by the inverse-generator rule x -> x/b (renormalized).
"""

from pathlib import Path

from gamedecomp import (
    CoMeasureVector,
    MixedProfile,
    best_response_epsilon,
    co_measure_quotient,
    decompose,
    map_equilibrium_under_scaling,
    parse_game,
    scale,
)

FIXTURES = Path(__file__).parent.parent / "fixtures"


def main():
    doc = parse_game((FIXTURES / "depend.game").read_text())
    base = decompose(doc.game, doc.mu, doc.gamma)
    print("original potential  (player 1):", base.potential.flat(0))
    print("original harmonic   (player 1):", base.harmonic.flat(0))

    beta_gen = [[1, 3], [2, 1]]
    beta = CoMeasureVector.from_generator(doc.space, beta_gen)
    scaled_game = scale(doc.game, beta)
    quotient = co_measure_quotient(doc.gamma, beta)
    print("\nscaled game (player 1):", scaled_game.flat(0))
    print("gamma/beta generator:", [c.tolist() for c in quotient.generator])

    direct = decompose(scaled_game, doc.mu, quotient)
    for name, a, b in zip(
        ("nonstrategic", "potential", "harmonic"),
        direct.components(),
        base.components(),
    ):
        print(f"decompose(beta.g).{name} == beta.decompose(g).{name}:",
              a == scale(b, beta))

    print("\nequilibrium transport through the scaling:")
    from fractions import Fraction as F

    pot_eq = MixedProfile.from_probs(doc.space, [[F(2, 3), F(1, 3)], [F(1, 3), F(2, 3)]])
    mapped = map_equilibrium_under_scaling(pot_eq, beta_gen)
    print("  potential mixed eq", [p.tolist() for p in pot_eq.probs],
          "->", [p.tolist() for p in mapped.probs],
          "eps =", best_response_epsilon(scale(base.potential, beta), mapped))

    har_eq = MixedProfile.uniform(doc.space)
    mapped = map_equilibrium_under_scaling(har_eq, beta_gen)
    print("  harmonic mixed eq", [p.tolist() for p in har_eq.probs],
          "->", [p.tolist() for p in mapped.probs],
          "eps =", best_response_epsilon(scale(base.harmonic, beta), mapped))


if __name__ == "__main__":
    main()
