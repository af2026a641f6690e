"""DOT and aligned-text rendering of I-posets, orbit diagrams and complexification reports."""
from __future__ import annotations

from .complexify import ComplexificationReport, IPoset, OrbitDiagram
from .field import INFINITE


def _label(cls):
    p, m = cls.signature
    return f"({p},{m}) {cls.invariant.name}"


def _poset_lines(poset: IPoset, prefix="", indent="  "):
    lines = []
    for i, c in enumerate(poset.nodes, 1):
        lines.append(f'{indent}{prefix}c{i} [label="{_label(c)}"];')
    if poset.truncated:
        lines.append(f'{indent}{prefix}more [label="...", shape=plaintext];')
    for i, j in poset.covers:
        lines.append(f"{indent}{prefix}c{i + 1} -> {prefix}c{j + 1};")
    return lines


def _diagram_lines(nodes, edges, classes, prefix="", hollow=(), truncated=False, indent="  "):
    lines = []
    for i, r in nodes:
        style = ", style=dashed" if (i, r) in hollow else ""
        lines.append(f'{indent}{prefix}c{i + 1}_{r} [label="{_label(classes[i])}"{style}];')
    if truncated:
        lines.append(f'{indent}{prefix}more [label="...", shape=plaintext];')
    for (i, a), (j, b) in edges:
        style = " [style=dashed]" if (i, a) in hollow or (j, b) in hollow else ""
        lines.append(f"{indent}{prefix}c{i + 1}_{a} -> {prefix}c{j + 1}_{b}{style};")
    return lines


def _dot_poset(poset):
    body = _poset_lines(poset)
    return "\n".join(["digraph iposet {", "  rankdir=BT;", "  node [shape=circle];"] + body + ["}"]) + "\n"


def _dot_orbits(d: OrbitDiagram):
    body = _diagram_lines(d.nodes, d.edges, d.poset.nodes, truncated=d.poset.truncated)
    return "\n".join(["digraph orbits {", "  rankdir=BT;", "  node [shape=circle];"] + body + ["}"]) + "\n"


def _report_sides(rep: ComplexificationReport):
    dom_q = rep.domain_quotients or [1] * len(rep.domain_poset.nodes)
    cod_q = rep.codomain_quotients or [1] * len(rep.codomain_poset.nodes)
    dom = OrbitDiagram(rep.domain_poset, dom_q)
    cod = OrbitDiagram(rep.codomain_poset, cod_q)
    if rep.orbit_map is not None:
        hollow = {key for key in rep.cokernel}
        mapping = sorted(rep.orbit_map.items())
    else:
        hollow = {(j, 1) for j in rep.cokernel_classes}
        mapping = [((i, 1), (j, 1)) for i, j in sorted(rep.class_map.items())]
    return dom, cod, hollow, mapping


def _dot_report(rep: ComplexificationReport):
    dom, cod, hollow, mapping = _report_sides(rep)
    lines = ["digraph complexification {", "  rankdir=BT;", "  node [shape=circle];",
             "  subgraph cluster_k {", f'    label="{rep.field.spec}";']
    lines += _diagram_lines(dom.nodes, dom.edges, dom.poset.nodes, "k_", truncated=dom.poset.truncated,
                            indent="    ")
    lines += ["  }", "  subgraph cluster_kbar {", '    label="closure";']
    lines += _diagram_lines(cod.nodes, cod.edges, cod.poset.nodes, "kbar_", hollow, indent="    ")
    lines += ["  }"]
    for (i, a), (j, b) in mapping:
        lines.append(f"  k_c{i + 1}_{a} -> kbar_c{j + 1}_{b} [style=dotted, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _text_poset(poset, quotients=None):
    rows = []
    for i, c in enumerate(poset.nodes):
        q = "" if quotients is None else f"  x{quotients[i]}"
        rows.append((f"c{i + 1}", f"sig=({c.signature.dim_plus},{c.signature.dim_minus})",
                     f"inv={c.invariant.name}", q))
    if poset.truncated:
        rows.append(("...", "", "", ""))
    width = [max((len(r[k]) for r in rows), default=0) for k in range(4)]
    out = ["  ".join(r[k].ljust(width[k]) for k in range(4)).rstrip() for r in rows]
    covers = ", ".join(f"c{i + 1}<c{j + 1}" for i, j in poset.covers)
    out.append(f"covers: {covers or 'none'}")
    return out


def _text_report(rep: ComplexificationReport):
    out = [f"SL({rep.n}) over {rep.field.spec}, theta = {rep.theta.canonical}", "domain:"]
    out += ["  " + s for s in _text_poset(rep.domain_poset, rep.domain_quotients)]
    out.append("codomain (closure):")
    out += ["  " + s for s in _text_poset(rep.codomain_poset, rep.codomain_quotients)]
    if rep.fibers is not None:
        fibers = ", ".join(f"c{j + 1}_{b}:{'inf' if s == INFINITE else s}" for (j, b), s in sorted(rep.fibers.items()))
        out.append(f"fibers: {fibers}")
    cok = ", ".join(f"c{j + 1}" + (f"_{b}" if b is not None else "") for j, b in rep.cokernel)
    out.append(f"cokernel: {cok or 'empty'}")
    if rep.rank_evidence:
        out.append(f"rank(H) = {rep.rank_evidence[0]}, k-rank(H) = {rep.rank_evidence[1]}")
    out.append(f"surjective: {'yes' if rep.surjective else 'no'}")
    return "\n".join(out) + "\n"


def emit_diagram(obj, fmt: str = "dot") -> str:
    if fmt not in ("dot", "text"):
        raise ValueError(f"unknown diagram format {fmt!r}")
    if isinstance(obj, ComplexificationReport):
        return _dot_report(obj) if fmt == "dot" else _text_report(obj)
    if isinstance(obj, OrbitDiagram):
        if fmt == "dot":
            return _dot_orbits(obj)
        return "\n".join(_text_poset(obj.poset, obj.quotients)) + "\n"
    if isinstance(obj, IPoset):
        return _dot_poset(obj) if fmt == "dot" else "\n".join(_text_poset(obj)) + "\n"
    raise TypeError(f"cannot render {type(obj).__name__}")
