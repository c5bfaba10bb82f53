"""Command-line surface.

Subcommands: analyze, level, transform, generate, dynamics, sweep,
closedform.  Game documents are read from a file argument ("-" or
omitted means standard input) and reports are written to standard
output, so generate/transform pipe into the analysis commands.

Exit codes: 0 on success, 2 on parse or validation errors, 3 when a
generation would exceed the joint-strategy cell cap.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import analysis, closedform, families, gamedoc, transforms
from .core import parse_rational
from .errors import ExplosionGuard, GameError, ParamOutOfRange


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _parse_params(groups: list[list[str]] | None) -> dict[str, Fraction]:
    params: dict[str, Fraction] = {}
    for pair in (pair for group in groups or [] for pair in group):
        key, sep, raw = pair.partition("=")
        if not sep or not key:
            raise ParamOutOfRange(f"expected --param key=value, got {pair!r}")
        if key in params:
            raise ParamOutOfRange(f"parameter {key!r} given twice")
        params[key] = parse_rational(raw)
    return params


def _take(params: dict, key: str, *, integer: bool = False, default=None):
    if key not in params:
        if default is not None:
            return default
        raise ParamOutOfRange(f"missing required parameter {key!r}")
    value = params.pop(key)
    if integer:
        if value.denominator != 1:
            raise ParamOutOfRange(f"parameter {key!r} must be an integer, got {value}")
        return int(value)
    return value


def _done(params: dict) -> None:
    if params:
        raise ParamOutOfRange(f"unknown parameters: {', '.join(sorted(params))}")


def _family_spec(name: str, params: dict) -> families.FamilySpec:
    if name == "pd_n":
        spec = families.PrisonersDilemmaN(n=_take(params, "n", integer=True))
    elif name == "generalized_pd":
        spec = families.GeneralizedPD(alpha=_take(params, "alpha"),
                                      beta=_take(params, "beta"))
    elif name == "public_goods":
        spec = families.PublicGoodsGrid(
            n=_take(params, "n", integer=True),
            b=_take(params, "b"),
            c=_take(params, "c"),
            grid_steps=_take(params, "k", integer=True),
        )
    elif name == "travelers":
        spec = families.TravelersDilemma()
    elif name == "matching_pennies":
        spec = families.MatchingPennies()
    elif name == "battle_of_sexes":
        spec = families.BattleOfSexes()
    elif name == "bad_nash_3x3":
        spec = families.BadNash3x3()
    elif name == "no_nash_2x2":
        spec = families.NoNash2x2()
    elif name == "weakly_acyclic_3x3":
        spec = families.WeaklyAcyclic3x3()
    elif name == "f_level":
        spec = families.FLevelGame(n=_take(params, "n", integer=True),
                                   f_value=_take(params, "f"))
    elif name == "cost_sharing_singleton_tight":
        spec = families.tight_instance(
            families.TightFamily.COST_SHARING_SINGLETON,
            c_max=_take(params, "c_max"), c_min=_take(params, "c_min"),
        )
    elif name == "cost_sharing_integer_tight":
        spec = families.tight_instance(
            families.TightFamily.COST_SHARING_INTEGER,
            L=_take(params, "L", integer=True),
            c_max=_take(params, "c_max", integer=True),
        )
    elif name == "congestion_singleton_tight":
        spec = families.tight_instance(
            families.TightFamily.CONGESTION_SINGLETON,
            delta=_take(params, "delta"), a=_take(params, "a"),
        )
    elif name == "congestion_integer_tight":
        spec = families.tight_instance(
            families.TightFamily.CONGESTION_INTEGER,
            L=_take(params, "L", integer=True),
            d_max=_take(params, "d_max", integer=True),
            d_min=_take(params, "d_min", integer=True),
        )
    elif name == "cost_sharing_gap":
        spec = families.cost_sharing_gap_instance(
            c_max=_take(params, "c_max"),
            c_min=_take(params, "c_min"),
            gap=_take(params, "gap"),
        )
    else:
        raise ParamOutOfRange(f"unknown family {name!r}")
    _done(params)
    return spec


def _closed_form_spec(name: str, params: dict):
    if name == "tragedy":
        spec = closedform.TragedyParams(n=_take(params, "n", integer=True))
    elif name == "cournot":
        spec = closedform.CournotParams(a=_take(params, "a"), b=_take(params, "b"),
                                        c=_take(params, "c"))
    elif name == "bertrand":
        spec = closedform.BertrandParams(a=_take(params, "a"), b=_take(params, "b"),
                                         c=_take(params, "c"))
    elif name == "public_goods":
        spec = closedform.PublicGoodsCont(
            n=_take(params, "n", integer=True),
            b=_take(params, "b", default=Fraction(1)),
            c=_take(params, "c"),
        )
    else:
        return _family_spec(name, params)
    _done(params)
    return spec


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    doc = gamedoc.parse_game_document(_read_text(args.file))
    started = time.perf_counter()
    body = gamedoc.analyze_report(doc)
    elapsed = time.perf_counter() - started
    sys.stdout.write(gamedoc.render_report(body, {"analyze_seconds": elapsed}))
    return 0


def cmd_level(args) -> int:
    doc = gamedoc.parse_game_document(_read_text(args.file))
    result = analysis.selfishness_level(doc.game)
    sys.stdout.write(result.render() + "\n")
    return 0


def cmd_transform(args) -> int:
    doc = gamedoc.parse_game_document(_read_text(args.file))
    game = doc.game
    alpha = parse_rational(args.alpha)
    model = transforms.AltruismModel(args.model)
    if args.inverse:
        if model is not transforms.AltruismModel.A:
            raise ParamOutOfRange("--inverse only applies to model A")
        game = transforms.inverse_altruistic(game, alpha)
    elif model is transforms.AltruismModel.A:
        game = transforms.altruistic(game, alpha)
    else:
        param = transforms.convert_param(alpha, model, game.player_count)
        game = transforms.altruistic_model(game, param)
    if args.scale is not None:
        game = transforms.scale(game, parse_rational(args.scale))
    if args.shift is not None:
        game = transforms.shift(game, parse_rational(args.shift))
    sys.stdout.write(gamedoc.render_game_document(
        gamedoc.GameDocument(game, doc.player_names)
    ))
    return 0


def cmd_generate(args) -> int:
    spec = _family_spec(args.family, _parse_params(args.param))
    game = families.generate(spec, cap=args.cap)
    sys.stdout.write(gamedoc.render_game_document(gamedoc.GameDocument.from_game(game)))
    return 0


def cmd_dynamics(args) -> int:
    doc = gamedoc.parse_game_document(_read_text(args.file))
    started = time.perf_counter()
    body = gamedoc.dynamics_report(doc, args.cap)
    elapsed = time.perf_counter() - started
    sys.stdout.write(gamedoc.render_report(body, {"dynamics_seconds": elapsed}))
    return 0


def cmd_sweep(args) -> int:
    doc = gamedoc.parse_game_document(_read_text(args.file))
    alphas = [parse_rational(part) for part in args.alphas.split(",") if part]
    if not alphas:
        raise ParamOutOfRange("--alphas needs at least one value")
    body = gamedoc.sweep_report(doc, alphas)
    sys.stdout.write(gamedoc.render_report(body))
    return 0


def cmd_closedform(args) -> int:
    spec = _closed_form_spec(args.family, _parse_params(args.param))
    result = closedform.closed_form_level(spec, cap=args.cap)
    body = {
        "family": args.family,
        "result": {
            "kind": result.kind.value,
            "value": None if result.value is None else str(result.value),
            "tight": result.tight,
        },
    }
    sys.stdout.write(gamedoc.render_report(body))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selfishlevel",
        description="Exact selfishness-level analysis of finite strategic games",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_file(p):
        p.add_argument("file", nargs="?", default=None,
                       help="game document ('-' or omitted: standard input)")

    def add_cap(p):
        p.add_argument("--cap", type=int, default=families.DEFAULT_CELL_CAP,
                       help="maximum number of joint strategies")

    p = sub.add_parser("analyze", help="equilibria, optima, level, prices")
    add_file(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("level", help="print the selfishness level: 0, p/q, or inf")
    add_file(p)
    p.set_defaults(func=cmd_level)

    p = sub.add_parser("transform", help="altruistic / shift / scale / inverse transform")
    add_file(p)
    p.add_argument("--alpha", default="0", help="altruism share (model-A scale)")
    p.add_argument("--model", choices=["A", "B", "C", "D"], default="A")
    p.add_argument("--shift", default=None, help="add a constant to every value")
    p.add_argument("--scale", default=None, help="multiply every value by a positive constant")
    p.add_argument("--inverse", action="store_true",
                   help="invert the altruistic transform instead of applying it")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("generate", help="emit a game document for a family")
    p.add_argument("family")
    p.add_argument("--param", action="append", nargs="+", metavar="KEY=VALUE",
                   help="family parameters, e.g. --param n=4 c=2")
    add_cap(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("dynamics", help="improvement-path properties")
    add_file(p)
    add_cap(p)
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("sweep", help="price of stability of the altruistic versions")
    add_file(p)
    p.add_argument("--alphas", required=True, help="comma-separated altruism shares")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("closedform", help="analytic level or bound for a family")
    p.add_argument("family")
    p.add_argument("--param", action="append", nargs="+", metavar="KEY=VALUE",
                   help="family parameters, e.g. --param n=4 c=2")
    add_cap(p)
    p.set_defaults(func=cmd_closedform)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except ExplosionGuard as e:
        sys.stderr.write(f"error: {e}\n")
        return 3
    except GameError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
