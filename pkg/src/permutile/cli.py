"""Command-line front-end.

Thin client over the same handlers the HTTP service uses: every command
produces a response document; text and DOT outputs are rendered from the
document, so what is printed is exactly what is serialized.

Exit codes: 0 success (and `equiv` verdict equivalent), 1 `equiv` verdict
not equivalent or failed verification, 2 invalid input, 3 fuel or budget
exhaustion, 4 oracle disagreement, 5 factorisation or universality
failure.
"""

from __future__ import annotations

import json
from pathlib import Path

import click
from pydantic import ValidationError

from .core import errors
from .render import statespace_dot
from .service import handlers
from .service.models import BoundsModel, DocumentModel, InstanceModel

_EXIT_CODES = [
    (
        (
            errors.ParseError,
            errors.NotARedex,
            errors.InvalidOccurrence,
            errors.SamePosition,
            errors.EndpointMismatch,
            errors.NonComposable,
            errors.NotStandard,
            errors.InvalidApplication,
        ),
        2,
    ),
    ((errors.FuelExhausted, errors.ClosureBudgetExceeded, errors.EnumerationBudgetExceeded), 3),
    (
        (
            errors.FactorisationCheckFailed,
            errors.NoFactorisation,
            errors.MultipleFactorisations,
            errors.InstanceCoherenceError,
        ),
        5,
    ),
]


def _exit_code_for(error: errors.PermutileError) -> int:
    for classes, code in _EXIT_CODES:
        if isinstance(error, classes):
            return code
    return 2


def _fail(ctx: click.Context, error: errors.PermutileError):
    click.echo(f"error: {error}", err=True)
    ctx.exit(_exit_code_for(error))


def _script_text(script: list[str]) -> str:
    return "[" + ", ".join(script) + "]"


def _ancestor_text(table: list[int]) -> str:
    return "{" + ", ".join(f"{j}↦{v}" for j, v in enumerate(table, start=1)) + "}"


def _path_block(label: str, payload: dict) -> list[str]:
    return [
        f"{label}: {_script_text(payload['script'])}",
        f"  {payload['term']} ↠ {payload['target']}",
    ]


def _trace_block(witness: dict) -> list[str]:
    lines = []
    applications = witness["applications"]
    if not applications:
        lines.append("trace: (empty)")
    else:
        lines.append("trace:")
        for i, application in enumerate(applications, start=1):
            tile = application["tile"]
            kind = "reversible" if tile["reversible"] else "irreversible"
            lines.append(
                f"  {i}. k={application['index']} {kind} "
                f"{_script_text(tile['source']['script'])} => "
                f"{_script_text(tile['target']['script'])} "
                f"ancestor {_ancestor_text(tile['ancestor']['table'])}"
            )
    lines.append(f"composite ancestor: {_ancestor_text(witness['composite_ancestor']['table'])}")
    return lines


def _text_standardize(doc: DocumentModel) -> list[str]:
    result, witness = doc.result, doc.witness or {}
    lines = [
        f"input: {_script_text(doc.input.script or [])}",
        f"  term: {doc.input.term}",
        f"input standard: {'yes' if result['input_was_standard'] else 'no'}",
    ]
    lines += _path_block("standard", result["standard"])
    lines += _trace_block(witness)
    return lines


def _text_equiv(doc: DocumentModel) -> list[str]:
    result = doc.result
    lines = [f"equivalent: {'yes' if result['equivalent'] else 'no'}"]
    lines += _path_block("canonical form of first", result["canonical"])
    lines += _path_block("canonical form of second", result["canonical2"])
    oracle = result.get("oracle")
    if oracle:
        verdict = (
            "agrees" if oracle["agrees"] else "disagrees" if oracle["conclusive"] else "inconclusive"
        )
        lines.append(
            f"zig-zag oracle (bound {oracle['bound']}): "
            f"{'witness found' if oracle['found'] else 'no witness'}, {verdict}"
        )
    return lines


def _text_factorize(doc: DocumentModel) -> list[str]:
    result = doc.result
    lines = _path_block("external", result["external"])
    lines += _path_block("internal", result["internal"])
    checks = result["checks"]
    lines.append(
        "checks: external "
        + ("ok" if checks["external_is_external"] else "FAILED")
        + ", internal "
        + ("ok" if checks["internal_is_internal"] else "FAILED")
        + f", equivalence ok (continuation bound {checks['ext_bound']})"
    )
    return lines


def _text_cone(doc: DocumentModel) -> list[str]:
    result = doc.result
    lines = [
        f"apex: {result['apex']}",
        f"head-values: {result['head_values']}",
        f"branches ({len(result['branches'])}, bound {result['bound']}):",
    ]
    for i, branch in enumerate(result["branches"], start=1):
        lines.append(
            f"  {i}. {_script_text(branch['path']['script'])} ↠ {branch['value']}"
        )
    universal = result.get("universal")
    if universal:
        lines.append(
            f"universal property: {universal['paths_checked']} value paths "
            f"(bound {universal['bound']}) factor uniquely"
        )
    return lines


def _text_statespace(doc: DocumentModel) -> list[str]:
    result = doc.result
    lines = [f"nodes ({len(result['nodes'])}):"]
    for i, label in enumerate(result["nodes"]):
        lines.append(f"  p{i}: {label}")
    lines.append(f"edges ({len(result['edges'])}):")
    for edge in result["edges"]:
        kind = "reversible" if edge["reversible"] else "irreversible"
        lines.append(f"  p{edge['from']} -> p{edge['to']} (k={edge['index']}, {kind})")
    return lines


_TEXT = {
    "standardize": _text_standardize,
    "equiv": _text_equiv,
    "factorize": _text_factorize,
    "cone": _text_cone,
    "statespace": _text_statespace,
}


def _emit(ctx: click.Context, doc: DocumentModel):
    fmt = ctx.obj["format"]
    if fmt == "json":
        click.echo(json.dumps(doc.payload(), indent=2, ensure_ascii=False))
    elif fmt == "dot":
        if doc.command != "statespace":
            raise click.UsageError("dot output is only defined for statespace")
        click.echo(statespace_dot(doc.result), nl=False)
    else:
        click.echo("\n".join(_TEXT[doc.command](doc)))


def _session(ctx: click.Context, **bound_overrides) -> handlers.Session:
    obj = ctx.obj
    rules_text = None
    if obj["rules"] is not None:
        path = Path(obj["rules"])
        if not path.is_file():
            raise errors.ParseError(f"rule file {obj['rules']!r} does not exist")
        rules_text = path.read_text()
    head = None
    if obj["head"] is not None:
        head = [part.strip() for part in obj["head"].split(",") if part.strip()]
    instance = InstanceModel(
        kind=obj["instance"], policy=obj["policy"], rules=rules_text, head=head
    )
    bounds = BoundsModel(
        fuel=obj["fuel"], ext=obj["ext_bound"], zigzag=obj["zigzag"], **bound_overrides
    )
    return handlers.build_session(instance, bounds)


def _verify_file(ctx: click.Context, filename: str):
    path = Path(filename)
    if not path.is_file():
        click.echo(f"error: no such file {filename!r}", err=True)
        ctx.exit(2)
    try:
        document = DocumentModel.model_validate(json.loads(path.read_text()))
    except (json.JSONDecodeError, ValidationError) as error:
        click.echo(f"error: not a response document: {error}", err=True)
        ctx.exit(2)
    try:
        verdict = handlers.run_verify(document)
    except errors.PermutileError as error:
        _fail(ctx, error)
        return
    click.echo(verdict.detail)
    ctx.exit(0 if verdict.ok else 1)


@click.group(invoke_without_command=True)
@click.option("--instance", type=click.Choice(["lambda", "trs"]), default="lambda")
@click.option("--rules", default=None, help="rule file for the TRS instance")
@click.option("--policy", type=click.Choice(["symmetric", "leftmost"]), default="symmetric")
@click.option("--head", default=None, help="comma-separated head-value terms (TRS)")
@click.option("--fuel", type=int, default=10_000, help="tile applications per standardisation")
@click.option("--ext-bound", type=int, default=3, help="continuation length for externality")
@click.option("--zigzag", type=int, default=0, help="re-check equiv with the zig-zag oracle")
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json", "dot"]), default="text"
)
@click.option("--verify", "verify_file", default=None, help="re-verify an emitted JSON document")
@click.pass_context
def main(ctx, instance, rules, policy, head, fuel, ext_bound, zigzag, fmt, verify_file):
    """Standardisation, permutation equivalence, factorisation, and cones."""
    ctx.obj = {
        "instance": instance,
        "rules": rules,
        "policy": policy,
        "head": head,
        "fuel": fuel,
        "ext_bound": ext_bound,
        "zigzag": zigzag,
        "format": fmt,
    }
    if verify_file is not None:
        _verify_file(ctx, verify_file)
    elif ctx.invoked_subcommand is None:
        raise click.UsageError("a command (or --verify FILE) is required")


@main.command()
@click.argument("term")
@click.argument("script", default="")
@click.pass_context
def standardize(ctx, term, script):
    """Normalize TERM's path SCRIPT to canonical standard form."""
    try:
        session = _session(ctx)
        doc = handlers.run_standardize(session, term, _split_script(session, script))
    except errors.PermutileError as error:
        return _fail(ctx, error)
    _emit(ctx, doc)


@main.command()
@click.argument("term")
@click.argument("script1")
@click.argument("script2")
@click.pass_context
def equiv(ctx, term, script1, script2):
    """Decide permutation equivalence of two coinitial path scripts."""
    try:
        session = _session(ctx)
        doc = handlers.run_equiv(
            session, term, _split_script(session, script1), _split_script(session, script2)
        )
    except errors.PermutileError as error:
        return _fail(ctx, error)
    _emit(ctx, doc)
    oracle = doc.result.get("oracle")
    if oracle and oracle["conclusive"] and oracle["agrees"] is False:
        click.echo("error: oracle disagrees with the decision procedure", err=True)
        ctx.exit(4)
    if not doc.result["equivalent"]:
        ctx.exit(1)


@main.command()
@click.argument("term")
@click.argument("script", default="")
@click.pass_context
def factorize(ctx, term, script):
    """Split TERM's path SCRIPT into external and internal parts."""
    try:
        session = _session(ctx)
        doc = handlers.run_factorize(session, term, _split_script(session, script))
    except errors.PermutileError as error:
        return _fail(ctx, error)
    _emit(ctx, doc)


@main.command()
@click.argument("term")
@click.option("--bound", type=int, default=4, help="value-path length bound")
@click.option(
    "--check-universal",
    type=int,
    default=0,
    help="verify unique factorisation of all value paths up to this length",
)
@click.pass_context
def cone(ctx, term, bound, check_universal):
    """Compute the cone of external value-reaching paths from TERM."""
    try:
        session = _session(ctx, cone=bound, universal=check_universal)
        doc = handlers.run_cone(session, term)
    except errors.PermutileError as error:
        return _fail(ctx, error)
    _emit(ctx, doc)


@main.command()
@click.argument("term")
@click.argument("script", default="")
@click.pass_context
def statespace(ctx, term, script):
    """Emit the graph of paths reachable from SCRIPT by tile moves."""
    try:
        session = _session(ctx)
        doc = handlers.run_statespace(session, term, _split_script(session, script))
    except errors.PermutileError as error:
        return _fail(ctx, error)
    _emit(ctx, doc)


def _split_script(session: handlers.Session, script: str) -> list[str]:
    return [occ.render() for occ in session.system.parse_script(script)]


if __name__ == "__main__":
    main()
