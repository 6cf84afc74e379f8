"""Text and DOT rendering of paths, traces, and derivation spaces."""

from __future__ import annotations

from .core.ancestry import AncestorFunction
from .core.paths import RewritingPath
from .core.system import RewritingSystem
from .core.tiles import StandardisationTrace
from .engine.engine import Statespace


def render_ancestor(fn: AncestorFunction) -> str:
    entries = ", ".join(f"{j}↦{fn(j)}" for j in range(1, fn.domain + 1))
    return "{" + entries + "}"


def render_path_terms(system: RewritingSystem, path: RewritingPath) -> str:
    pieces = [system.render_term(path.source)]
    for step in path.steps:
        pieces.append(system.render_term(step.target))
    return " -> ".join(pieces)


def path_lines(system: RewritingSystem, label: str, path: RewritingPath) -> list[str]:
    return [f"{label}: {path.render()}", f"  {render_path_terms(system, path)}"]


def trace_lines(trace: StandardisationTrace) -> list[str]:
    lines = []
    if not trace.applications:
        lines.append("trace: (empty)")
    else:
        lines.append("trace:")
        for i, app in enumerate(trace.applications, start=1):
            kind = "reversible" if app.tile.reversible else "irreversible"
            lines.append(
                f"  {i}. k={app.index} {kind} {app.tile.source.render()} => "
                f"{app.tile.target.render()} ancestor {render_ancestor(app.tile.ancestor)}"
            )
    lines.append(f"composite ancestor: {render_ancestor(trace.composite_ancestor)}")
    return lines


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def statespace_payload(space: Statespace) -> dict:
    return {
        "nodes": [node.render() for node in space.nodes],
        "edges": [
            {
                "from": edge.source,
                "to": edge.target,
                "index": edge.index,
                "reversible": edge.reversible,
            }
            for edge in space.edges
        ],
    }


def statespace_dot(payload: dict) -> str:
    lines = ["digraph derivation_space {", "  rankdir=LR;", "  node [shape=box];"]
    for i, label in enumerate(payload["nodes"]):
        lines.append(f'  p{i} [label="{_dot_escape(label)}"];')
    for edge in payload["edges"]:
        kind = "reversible" if edge["reversible"] else "irreversible"
        style = "dashed" if edge["reversible"] else "solid"
        lines.append(
            f'  p{edge["from"]} -> p{edge["to"]} [label="k={edge["index"]} {kind}", style={style}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
