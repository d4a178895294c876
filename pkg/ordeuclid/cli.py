"""
Command-line front end. Every subcommand becomes one :class:`Message` dispatched through
the assembled workbench; text output is the reply's ``as_text()``, JSON output is the
whole reply envelope.
"""

import argparse
import logging
import sys
import typing

from pydantic import ValidationError

from ordeuclid.application import DEFAULT_SEED, Session
from ordeuclid.eucworld import RingConfig
from ordeuclid.factoring import FactorBudget
from ordeuclid.fields import FieldConfig
from ordeuclid.motzkin import DEFAULT_MAX_ELEMENTS
from ordeuclid.ordinals import parse as parse_ordinal
from ordeuclid.properties import SUITES
from ordeuclid.routing import Message, MessageT
from ordeuclid.service import service

MessageBuilder = typing.Callable[[argparse.Namespace], Message]


def _common_options() -> argparse.ArgumentParser:
    # defaults are suppressed so flags given before the subcommand survive
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--field", type=FieldConfig.parse, help="f2 (default), f3, f<p> or q")
    common.add_argument("--alpha", type=parse_ordinal, help="order type w^alpha (default 1)")
    common.add_argument("--variant", choices=["base", "z"], help="ring variant")
    common.add_argument("--format", choices=["text", "json"], help="output format")
    common.add_argument("--seed", type=int, help=f"random seed (default {DEFAULT_SEED})")
    common.add_argument("--budget", type=int, help="factorization candidate limit")
    common.add_argument(
        "--max-elements",
        type=int,
        help=f"largest Motzkin model (default {DEFAULT_MAX_ELEMENTS})",
    )
    common.add_argument(
        "--unverified-minimality",
        action="store_true",
        help="allow the z-variant over a finite field",
    )
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return common


def _message(command: str, **fields: str) -> MessageBuilder:
    """Build a message whose payload maps payload fields to namespace attributes."""

    def build(args: argparse.Namespace) -> Message:
        return Message(
            type=command,
            payload={field: getattr(args, attr) for field, attr in fields.items()},
        )

    return build


def _script_message(args: argparse.Namespace) -> Message:
    with args.file as handle:
        lines = handle.read().splitlines()
    return Message(type="ring.run", payload={"lines": lines})


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="ordeuclid",
        description="Transfinite Euclidean domains: ordinal norms, division traces, "
        "Motzkin strata.",
        parents=[common],
    )
    groups = parser.add_subparsers(dest="group", required=True, metavar="COMMAND")

    def leaf(sub: typing.Any, name: str, builder: MessageBuilder, help: str) -> typing.Any:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(build=builder)
        return p

    ord_group = groups.add_parser("ord", help="ordinal arithmetic").add_subparsers(
        dest="command", required=True, metavar="COMMAND"
    )
    leaf(ord_group, "eval", _message("ord.eval", expr="expr"), "evaluate").add_argument(
        "expr"
    )
    p = leaf(ord_group, "cmp", _message("ord.cmp", a="a", b="b"), "compare two ordinals")
    p.add_argument("a")
    p.add_argument("b")
    leaf(
        ord_group,
        "indecomposable",
        _message("ord.indecomposable", expr="expr"),
        "test for a power of w",
    ).add_argument("expr")

    ring_group = groups.add_parser("ring", help="the constructed ring").add_subparsers(
        dest="command", required=True, metavar="COMMAND"
    )
    leaf(ring_group, "norm", _message("ring.norm", element="element"), "norm").add_argument(
        "element"
    )
    for name, help in (("divide", "division with remainder"), ("adjoin", "quotient variable")):
        p = leaf(ring_group, name, _message(f"ring.{name}", n="n", d="d"), help)
        p.add_argument("n")
        p.add_argument("d")
    p = leaf(ring_group, "gcd", _message("ring.gcd", a="a", b="b"), "Euclidean gcd trace")
    p.add_argument("a")
    p.add_argument("b")
    leaf(
        ring_group,
        "demo-nonmult",
        _message("ring.demo-nonmult", k="k"),
        "no multiplicative norm exists",
    ).add_argument("k", type=int)
    leaf(
        ring_group,
        "demo-monoid",
        _message("ring.demo-monoid", element="element"),
        "monoid norm of the z-variant",
    ).add_argument("element")
    leaf(ring_group, "run", _script_message, "run a command file, - for stdin").add_argument(
        "file", type=argparse.FileType("r")
    )

    motzkin_group = groups.add_parser("motzkin", help="Motzkin strata").add_subparsers(
        dest="command", required=True, metavar="COMMAND"
    )
    leaf(
        motzkin_group, "stratify", _message("motzkin.stratify", model="model"), "rank table"
    ).add_argument("--model", required=True, help="int:<N> or poly:<q>:<D>")
    p = leaf(
        motzkin_group,
        "lenstra",
        _message("motzkin.lenstra", model="model", samples="samples"),
        "rank growth of products",
    )
    p.add_argument("--model", required=True, help="int:<N> or poly:<q>:<D>")
    p.add_argument("--samples", type=int, default=0, help="0 checks every pair")

    p = leaf(
        groups,
        "check",
        _message("check.run", suite="suite", scale="scale"),
        "seeded property suites",
    )
    p.add_argument("suite", nargs="?", default="all", choices=["all", *SUITES])
    p.add_argument("--scale", type=float, default=1.0, help="shrink sample sizes")

    leaf(groups, "schema", lambda args: Message(type="schema"), "JSON schema catalogue")
    return parser


def _session(args: argparse.Namespace) -> Session:
    ring: dict[str, typing.Any] = {}
    for key in ("field", "alpha", "variant", "unverified_minimality"):
        if hasattr(args, key):
            ring[key] = getattr(args, key)
    session: dict[str, typing.Any] = {"ring_config": RingConfig(**ring)}
    if hasattr(args, "budget"):
        session["budget"] = FactorBudget(max_candidates=args.budget)
    for key in ("seed", "format", "max_elements"):
        if hasattr(args, key):
            session[key] = getattr(args, key)
    return Session(**session)


def _emit(reply: MessageT | None, fmt: str) -> None:
    if reply is None:
        return
    if fmt == "json":
        print(reply.model_dump_json(indent=2))
        return
    payload = getattr(reply, "payload", None)
    if payload is None:
        return
    stream = sys.stderr if reply.type == "error" else sys.stdout
    print(payload.as_text(), file=stream)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return typing.cast(int, exc.code or 0)

    verbose = getattr(args, "verbose", False)
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    service.debug = verbose
    fmt = getattr(args, "format", "text")

    try:
        session = _session(args)
    except ValidationError as exc:
        reply, status = service.handle_exception(exc)
        _emit(reply, fmt)
        return status
    reply, status = service.dispatch(args.build(args), session=session)
    _emit(reply, fmt)
    return status


if __name__ == "__main__":
    sys.exit(main())
