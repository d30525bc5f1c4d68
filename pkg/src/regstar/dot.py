"""DOT renderings: egg-box diagrams, friendship graphs and Hasse diagrams."""
from __future__ import annotations

from .core import StarSemigroup, eggbox, projection_algebra_of, special_elements
from .palg import ProjectionAlgebra, relations_of


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _html(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def eggbox_dot(S: StarSemigroup) -> str:
    """One table node per D-class; rows are R-classes, columns L-classes.
    Idempotents are marked with a trailing '*'."""
    idem = set(special_elements(S).idempotents)
    lines = ["digraph eggbox {", "  node [shape=plaintext];"]
    for k, box in enumerate(eggbox(S)):
        rows = []
        for row in box.cells:
            tds = []
            for cell in row:
                text = " ".join(S.label(a) + ("*" if a in idem else "") for a in cell)
                tds.append(f"<td>{_html(text)}</td>")
            rows.append("<tr>" + "".join(tds) + "</tr>")
        table = '<table border="0" cellborder="1" cellspacing="0">' + "".join(rows) + "</table>"
        lines.append(f"  d{k} [label=<{table}>];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def friendship_dot(P: ProjectionAlgebra) -> str:
    rel = relations_of(P)
    lines = ["graph friendship {"]
    for p in range(P.size):
        lines.append(f"  n{p} [label={_q(P.label(p))}];")
    for p, q in rel.edges:
        lines.append(f"  n{p} -- n{q};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_dot(P: ProjectionAlgebra) -> str:
    rel = relations_of(P)
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for p in range(P.size):
        lines.append(f"  n{p} [label={_q(P.label(p))}];")
    for p, q in rel.covers:
        lines.append(f"  n{p} -> n{q};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(kind: str, obj) -> str:
    if kind == "eggbox":
        if not isinstance(obj, StarSemigroup):
            raise ValueError("eggbox needs a semigroup")
        return eggbox_dot(obj)
    P = projection_algebra_of(obj) if isinstance(obj, StarSemigroup) else obj
    if kind == "friendship":
        return friendship_dot(P)
    if kind == "hasse":
        return hasse_dot(P)
    raise ValueError(f"unknown diagram kind {kind!r}")
