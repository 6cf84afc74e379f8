"""Command execution shared by the HTTP service and the CLI.

Each run_* function builds the full response document; verification
replays a document from its own instance/input description and demands
the regenerated document match, after independently re-checking the
recorded witness trace.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..analysis import Analyzer
from ..core.ancestry import AncestorFunction
from ..core.errors import InvalidApplication, ParseError
from ..core.paths import RewritingPath
from ..core.system import OrientationPolicy, RewritingSystem
from ..core.tiles import StandardisationTrace, apply_tile
from ..engine.engine import Engine, ZigzagResult
from ..lam.system import LambdaSystem
from ..render import statespace_payload
from ..trs.system import TrsSystem
from ..trs import terms as trs_terms
from .models import BoundsModel, DocumentModel, InputModel, InstanceModel, VerifyResponse


@dataclass
class Session:
    instance: InstanceModel
    bounds: BoundsModel
    system: RewritingSystem
    engine: Engine
    analyzer: Analyzer


def build_session(instance: InstanceModel, bounds: BoundsModel) -> Session:
    policy = OrientationPolicy(instance.policy)
    if instance.kind == "lambda":
        if instance.rules is not None:
            raise ParseError("the λ-calculus instance takes no rule file")
        if instance.head is not None:
            raise ParseError("head-values are built in for the λ-calculus")
        system: RewritingSystem = LambdaSystem(policy)
    else:
        if instance.rules is None:
            raise ParseError("the TRS instance needs a rule file")
        definition = trs_terms.parse_system(instance.rules)
        head_values = None
        if instance.head is not None:
            head_values = tuple(
                trs_terms.parse_ground_term(text, definition.signature) for text in instance.head
            )
        system = TrsSystem(definition, policy, head_values)
    engine = Engine(system, fuel=bounds.fuel, closure_budget=bounds.closure)
    analyzer = Analyzer(engine, ext_bound=bounds.ext)
    return Session(instance, bounds, system, engine, analyzer)


def parse_path(session: Session, term_text: str, script: list[str]) -> RewritingPath:
    term = session.system.parse_term(term_text)
    occurrences = [session.system.parse_occurrence(token) for token in script]
    return session.system.path(term, occurrences)


# --- payload builders ---------------------------------------------------


def path_payload(system: RewritingSystem, path: RewritingPath) -> dict:
    return {
        "term": system.render_term(path.source),
        "script": system.render_script(path),
        "target": system.render_term(path.target),
    }


def ancestor_payload(fn: AncestorFunction) -> dict:
    return {"domain": fn.domain, "codomain": fn.codomain, "table": list(fn.table)}


def tile_payload(system: RewritingSystem, tile) -> dict:
    return {
        "source": path_payload(system, tile.source),
        "target": path_payload(system, tile.target),
        "ancestor": ancestor_payload(tile.ancestor),
        "reversible": tile.reversible,
    }


def trace_payload(system: RewritingSystem, trace: StandardisationTrace) -> dict:
    return {
        "start": path_payload(system, trace.start),
        "end": path_payload(system, trace.end),
        "applications": [
            {"index": app.index, "tile": tile_payload(system, app.tile)}
            for app in trace.applications
        ],
        "composite_ancestor": ancestor_payload(trace.composite_ancestor),
    }


def zigzag_payload(system: RewritingSystem, result: ZigzagResult, bound: int) -> dict:
    payload = {"bound": bound, "found": result.found, "exhaustive": result.exhaustive}
    if result.found:
        payload["moves"] = [
            {
                "direction": move.direction,
                "index": move.index,
                "tile": tile_payload(system, move.tile),
            }
            for move in result.moves
        ]
    return payload


def _document(session: Session, command: str, input_model: InputModel, result, witness=None):
    return DocumentModel(
        command=command,
        instance=session.instance,
        input=input_model,
        result=result,
        witness=witness,
    )


# --- commands -------------------------------------------------------------


def run_standardize(session: Session, term_text: str, script: list[str]) -> DocumentModel:
    path = parse_path(session, term_text, script)
    was_standard = session.engine.is_standard(path)
    form = session.engine.standardize(path)
    irreversible = sum(1 for app in form.witness.applications if not app.tile.reversible)
    result = {
        "standard": path_payload(session.system, form.path),
        "input_was_standard": was_standard,
        "irreversible_applications": irreversible,
    }
    witness = trace_payload(session.system, form.witness)
    input_model = InputModel(term=term_text, script=script, bounds=session.bounds)
    return _document(session, "standardize", input_model, result, witness)


def run_equiv(
    session: Session, term_text: str, script: list[str], script2: list[str]
) -> DocumentModel:
    f = parse_path(session, term_text, script)
    g = parse_path(session, term_text, script2)
    verdict = session.engine.equivalent(f, g)
    form_f = session.engine.standardize(f)
    form_g = session.engine.standardize(g)
    result = {
        "equivalent": verdict,
        "canonical": path_payload(session.system, form_f.path),
        "canonical2": path_payload(session.system, form_g.path),
    }
    witness = {
        "trace": trace_payload(session.system, form_f.witness),
        "trace2": trace_payload(session.system, form_g.witness),
    }
    if session.bounds.zigzag > 0:
        oracle = session.engine.zigzag_witness(f, g, session.bounds.zigzag)
        conclusive = oracle.found or oracle.exhaustive
        result["oracle"] = {
            "bound": session.bounds.zigzag,
            "found": oracle.found,
            "conclusive": conclusive,
            "agrees": (oracle.found == verdict) if conclusive else None,
        }
        witness["zigzag"] = zigzag_payload(session.system, oracle, session.bounds.zigzag)
    input_model = InputModel(
        term=term_text, script=script, script2=script2, bounds=session.bounds
    )
    return _document(session, "equiv", input_model, result, witness)


def run_factorize(session: Session, term_text: str, script: list[str]) -> DocumentModel:
    f = parse_path(session, term_text, script)
    factorisation = session.analyzer.factorize(f)
    result = {
        "external": path_payload(session.system, factorisation.external),
        "internal": path_payload(session.system, factorisation.internal),
        "checks": {
            "external_is_external": session.analyzer.is_external(factorisation.external),
            "internal_is_internal": session.analyzer.is_internal(factorisation.internal),
            "equivalent": True,
            "ext_bound": session.bounds.ext,
        },
    }
    witness = {
        "canonical": path_payload(session.system, factorisation.canonical),
        "trace": trace_payload(session.system, factorisation.witness),
    }
    input_model = InputModel(term=term_text, script=script, bounds=session.bounds)
    return _document(session, "factorize", input_model, result, witness)


def run_cone(session: Session, term_text: str) -> DocumentModel:
    term = session.system.parse_term(term_text)
    cone = session.analyzer.stability_cone(term, session.bounds.cone)
    result = {
        "apex": session.system.render_term(term),
        "head_values": session.system.head_value_label(),
        "bound": session.bounds.cone,
        "branches": [
            {
                "path": path_payload(session.system, branch),
                "value": session.system.render_term(branch.target),
            }
            for branch in cone.branches
        ],
    }
    witness = None
    if session.bounds.universal > 0:
        factorisations = []
        for path in session.analyzer.value_paths(term, session.bounds.universal):
            index, completion = session.analyzer.factor_through_cone(
                path, cone, session.bounds.universal
            )
            factorisations.append(
                {
                    "script": session.system.render_script(path),
                    "branch": index,
                    "completion": session.system.render_script(completion),
                }
            )
        result["universal"] = {
            "bound": session.bounds.universal,
            "paths_checked": len(factorisations),
        }
        witness = {"factorisations": factorisations}
    input_model = InputModel(term=term_text, bounds=session.bounds)
    return _document(session, "cone", input_model, result, witness)


def run_statespace(session: Session, term_text: str, script: list[str]) -> DocumentModel:
    path = parse_path(session, term_text, script)
    space = session.engine.statespace(path)
    result = statespace_payload(space)
    input_model = InputModel(term=term_text, script=script, bounds=session.bounds)
    return _document(session, "statespace", input_model, result, witness=None)


COMMANDS = {
    "standardize": lambda s, i: run_standardize(s, i.term, i.script or []),
    "equiv": lambda s, i: run_equiv(s, i.term, i.script or [], i.script2 or []),
    "factorize": lambda s, i: run_factorize(s, i.term, i.script or []),
    "cone": lambda s, i: run_cone(s, i.term),
    "statespace": lambda s, i: run_statespace(s, i.term, i.script or []),
}


def replay_trace(session: Session, witness: dict) -> None:
    """Re-run a recorded standardisation trace and re-check its claims."""
    start = parse_path(session, witness["start"]["term"], witness["start"]["script"])
    current = start
    applications = []
    for entry in witness["applications"]:
        k = entry["index"]
        window = tuple(step.redex for step in current.steps[k - 1 : k + 1])
        tile = session.engine.term_tiles(current.steps[k - 1].source).by_source.get(window)
        if tile is None:
            raise InvalidApplication(f"no tile applies at index {k}")
        recorded = entry["tile"]
        if tile.reversible != recorded["reversible"] or list(tile.ancestor.table) != recorded[
            "ancestor"
        ]["table"]:
            raise InvalidApplication(f"tile at index {k} differs from the recorded one")
        application = apply_tile(current, k, tile)
        applications.append(application)
        current = application.after
    trace = StandardisationTrace(start, tuple(applications))
    end = parse_path(session, witness["end"]["term"], witness["end"]["script"])
    if trace.end != end:
        raise InvalidApplication("replayed trace ends elsewhere than recorded")
    if list(trace.composite_ancestor.table) != witness["composite_ancestor"]["table"]:
        raise InvalidApplication("replayed composite ancestor differs from the recorded one")


def run_verify(document: DocumentModel) -> VerifyResponse:
    if document.command not in COMMANDS:
        return VerifyResponse(ok=False, detail=f"unknown command {document.command!r}")
    session = build_session(document.instance, document.input.bounds)
    if document.command in ("standardize", "equiv", "factorize") and document.witness:
        for key in ("trace", "trace2"):
            if key in (document.witness or {}):
                replay_trace(session, document.witness[key])
        if "applications" in (document.witness or {}):
            replay_trace(session, document.witness)
    regenerated = COMMANDS[document.command](session, document.input)
    if regenerated.payload() == document.payload():
        return VerifyResponse(ok=True, detail="document reproduced")
    recorded, fresh = document.payload(), regenerated.payload()
    for key in fresh:
        if recorded.get(key) != fresh[key]:
            return VerifyResponse(ok=False, detail=f"mismatch under {key!r}")
    return VerifyResponse(ok=False, detail="mismatch")
