"""Command-line surface.

Exit codes: 0 success, 1 input or validation error, 2 law violation found.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

from .errors import GameDecompError
from .numeric import format_scalar, parse_scalar
from .games import (
    CoMeasureVector,
    Game,
    MeasureVector,
    game_norm_sq,
    inner_product_game,
)
from .gamedoc import GameDocument, parse_game, serialize_game
from .decomposition import (
    closest_potential,
    decompose,
    epsilon_bound,
    is_gamma_potential,
    is_harmonic,
    is_mu_normalized,
    is_nonstrategic,
)
from .equilibrium import best_response_epsilon
from .laws import LAWS, run_law
from .transforms import (
    DuplicationSpec,
    PermutationSpec,
    RedundancySpec,
    co_measure_quotient,
    extend_duplicate,
    permute,
    permute_params,
    reduce_duplicate,
    reduce_redundant,
    scale,
    translate_nonstrategic,
)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except GameDecompError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamedecomp",
        description=(
            "Decompose finite normal-form games into nonstrategic, potential, "
            "and harmonic components under exact rational arithmetic."
        ),
    )
    parser.add_argument(
        "--float",
        dest="float_mode",
        action="store_true",
        help="use floating-point scalars instead of exact rationals",
    )
    parser.add_argument("--seed", type=int, default=0, help="global random seed")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="write the three components plus phi")
    p.add_argument("game", type=Path)
    p.add_argument("--mu", help="override mu: per-player comma lists joined by ';'")
    p.add_argument("--gamma", help="override gamma: tensors, 'uniform', or 'gen:...'")
    p.add_argument("--out", type=Path, help="directory for component documents")
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("classify", help="membership in NSG / muNG / gammaPG / harmonic")
    p.add_argument("game", type=Path)
    p.add_argument("--mu")
    p.add_argument("--gamma")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("transform", help="apply a game transformation")
    p.add_argument("game", type=Path)
    p.add_argument(
        "--op",
        required=True,
        choices=["permute", "translate", "scale", "extend", "reduce", "reduce-redundant"],
    )
    p.add_argument("--player", type=int, help="1-based player index")
    p.add_argument("--sigma", help="permutation as comma-separated 0-based indices")
    p.add_argument("--ns", type=Path, help="nonstrategic game document to add")
    p.add_argument("--beta", help="scaling co-measure, same syntax as --gamma")
    p.add_argument("--source", help="strategy label to duplicate")
    p.add_argument("--label", help="label of the inserted duplicate")
    p.add_argument("--lam", default="1/2", help="measure split in (0,1)")
    p.add_argument("--s0", help="strategy to remove")
    p.add_argument("--s1", help="strategy that keeps the merged weight")
    p.add_argument("--alpha", help="comma-separated mixture weights for --op reduce-redundant")
    p.add_argument("--out", type=Path, help="output document path (default stdout)")
    p.set_defaults(handler=_cmd_transform)

    p = sub.add_parser("check-eq", help="exact best-response epsilon of a named profile")
    p.add_argument("game", type=Path)
    p.add_argument("--profile", required=True)
    p.set_defaults(handler=_cmd_check_eq)

    p = sub.add_parser("closest-potential", help="closest potential game, d^2, and B^2")
    p.add_argument("game", type=Path)
    p.add_argument("--out", type=Path)
    p.set_defaults(handler=_cmd_closest)

    p = sub.add_parser("verify", help="run a randomized law suite")
    p.add_argument("law", choices=sorted(LAWS) + ["all"])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument(
        "--seed", dest="seed_override", type=int, help="seed for this suite"
    )
    p.add_argument("--players", type=int, default=3, help="max player count")
    p.add_argument("--strategies", type=int, default=4, help="max strategies per player")
    p.set_defaults(handler=_cmd_verify)

    return parser


def _load(args) -> GameDocument:
    doc = parse_game(args.game.read_text(), exact=not args.float_mode)
    mu_text = getattr(args, "mu", None)
    gamma_text = getattr(args, "gamma", None)
    if mu_text:
        doc.mu = _parse_mu(mu_text, doc.space, exact=not args.float_mode)
    if gamma_text:
        doc.gamma = _parse_gamma(gamma_text, doc.space, exact=not args.float_mode)
    return doc


def _parse_groups(text: str, exact: bool) -> list[list]:
    return [
        [parse_scalar(tok, exact) for tok in group.replace(",", " ").split()]
        for group in text.split(";")
    ]


def _parse_mu(text: str, space, exact: bool) -> MeasureVector:
    return MeasureVector.from_weights(space, _parse_groups(text, exact), exact)


def _parse_gamma(text: str, space, exact: bool) -> CoMeasureVector:
    text = text.strip()
    if text == "uniform":
        return CoMeasureVector.uniform(space, exact=exact)
    if text.startswith("gen:"):
        return CoMeasureVector.from_generator(
            space, _parse_groups(text[4:], exact), exact
        )
    return CoMeasureVector.from_tensors(space, _parse_groups(text, exact), exact)


def _sqrt_note(value) -> str:
    return f"{format_scalar(value)} (sqrt ~ {math.sqrt(float(value)):.12g})"


def _cmd_decompose(args) -> int:
    doc = _load(args)
    parts = decompose(doc.game, doc.mu, doc.gamma)
    named = {
        "nonstrategic": parts.nonstrategic,
        "potential": parts.potential,
        "harmonic": parts.harmonic,
    }

    report = ["decomposition report"]
    for name, component in named.items():
        norm = game_norm_sq(component, doc.mu, doc.gamma)
        report.append(f"norm2 {name}: {format_scalar(norm)}")
    pairs = [("nonstrategic", "potential"), ("nonstrategic", "harmonic"), ("potential", "harmonic")]
    for a, b in pairs:
        residual = inner_product_game(named[a], named[b], doc.mu, doc.gamma)
        report.append(f"orthogonality {a}/{b}: {format_scalar(residual)}")
    reconstructed = parts.total() == doc.game
    report.append(f"reconstruction exact: {reconstructed}")
    report_text = "\n".join(report) + "\n"

    phi_lines = [
        " ".join(doc.space.profile_labels(profile))
        + ": "
        + format_scalar(parts.phi.value(profile))
        for profile in doc.space.profiles()
    ]
    phi_text = "\n".join(phi_lines) + "\n"

    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        for name, component in named.items():
            out_doc = GameDocument(component, doc.mu, doc.gamma)
            (args.out / f"{name}.game").write_text(
                serialize_game(out_doc, comment=f"{name} component of {args.game.name}")
            )
        (args.out / "phi.txt").write_text(phi_text)
        (args.out / "report.txt").write_text(report_text)
        print(f"wrote {', '.join(sorted(n + '.game' for n in named))}, phi.txt, report.txt to {args.out}")
    else:
        for name, component in named.items():
            print(serialize_game(GameDocument(component, doc.mu, doc.gamma), comment=f"{name} component"))
        print("phi:")
        sys.stdout.write(phi_text)
    sys.stdout.write(report_text)
    return 0


def _cmd_classify(args) -> int:
    doc = _load(args)
    rows = [
        ("nonstrategic (NSG)", is_nonstrategic(doc.game)),
        ("mu-normalized (muNG)", is_mu_normalized(doc.game, doc.mu)),
        ("gamma-potential (gammaPG)", is_gamma_potential(doc.game, doc.gamma)),
        ("(mu,gamma)-harmonic (HG)", is_harmonic(doc.game, doc.mu, doc.gamma)),
    ]
    for name, member in rows:
        print(f"{name}: {'yes' if member else 'no'}")
    return 0


def _cmd_transform(args) -> int:
    doc = _load(args)
    exact = not args.float_mode
    game, mu, gamma = doc.game, doc.mu, doc.gamma

    if args.op == "permute":
        _require(args.player is not None and args.sigma, "--op permute needs --player and --sigma")
        spec = PermutationSpec(
            args.player - 1, tuple(int(x) for x in args.sigma.split(","))
        )
        game = permute(game, spec)
        mu, gamma = permute_params(mu, gamma, spec)
    elif args.op == "translate":
        _require(args.ns, "--op translate needs --ns <document>")
        ns_doc = parse_game(args.ns.read_text(), exact=exact)
        game = translate_nonstrategic(game, ns_doc.game)
    elif args.op == "scale":
        _require(args.beta, "--op scale needs --beta")
        beta = _parse_gamma(args.beta, game.space, exact)
        game = scale(game, beta)
        gamma = co_measure_quotient(gamma, beta)
    elif args.op == "extend":
        _require(
            args.player is not None and args.source and args.label,
            "--op extend needs --player, --source, --label",
        )
        spec = DuplicationSpec(
            args.player - 1, args.source, args.label, Fraction(args.lam)
        )
        game, mu, gamma = extend_duplicate(game, mu, gamma, spec)
    elif args.op == "reduce":
        _require(
            args.player is not None and args.s0 and args.s1,
            "--op reduce needs --player, --s0, --s1",
        )
        game, mu, gamma = reduce_duplicate(
            game, mu, gamma, args.player - 1, args.s0, args.s1
        )
    elif args.op == "reduce-redundant":
        _require(
            args.player is not None and args.s0 and args.alpha,
            "--op reduce-redundant needs --player, --s0, --alpha",
        )
        alpha = tuple(Fraction(x) for x in args.alpha.split(","))
        spec = RedundancySpec(args.player - 1, args.s0, alpha)
        game, mu, gamma = reduce_redundant(game, mu, gamma, spec)

    text = serialize_game(
        GameDocument(game, mu, gamma), comment=f"{args.op} of {args.game.name}"
    )
    if args.out:
        args.out.write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_check_eq(args) -> int:
    doc = _load(args)
    if args.profile not in doc.profiles:
        print(f"error: no profile named {args.profile!r} in the document", file=sys.stderr)
        return 1
    eps = best_response_epsilon(doc.game, doc.profiles[args.profile])
    print(f"epsilon: {format_scalar(eps)}")
    print(f"nash equilibrium: {'yes' if eps == 0 else 'no'}")
    return 0


def _cmd_closest(args) -> int:
    doc = _load(args)
    closest, dist_sq = closest_potential(doc.game, doc.mu, doc.gamma)
    bound_sq = epsilon_bound(doc.game, doc.mu, doc.gamma)
    text = serialize_game(
        GameDocument(closest, doc.mu, doc.gamma),
        comment=f"closest potential game to {args.game.name}",
    )
    if args.out:
        args.out.write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    print(f"d^2: {_sqrt_note(dist_sq)}")
    print(f"B^2: {_sqrt_note(bound_sq)}")
    return 0


def _cmd_verify(args) -> int:
    laws = sorted(LAWS) if args.law == "all" else [args.law]
    players = (2, max(2, args.players))
    strategies = (2, max(2, args.strategies))
    seed = args.seed if args.seed_override is None else args.seed_override
    failed = False
    for law in laws:
        report = run_law(law, args.trials, seed, players, strategies)
        if report.ok:
            print(f"{law}: pass ({report.trials} trials, seed {report.seed})")
        else:
            failed = True
            print(f"{law}: FAIL at trial {report.failed_trial}: {report.message}")
            print("minimized counterexample:")
            sys.stdout.write(report.counterexample)
    return 2 if failed else 0


def _require(condition, message: str) -> None:
    if not condition:
        raise GameDecompError(message)


if __name__ == "__main__":
    sys.exit(main())
