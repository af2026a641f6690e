"""Command-line front end.  Every subcommand parses specs, calls one library
function and serializes the result; no computation happens here."""
from __future__ import annotations

import argparse
import json
import sys

from .complexify import build_iposet, complexify, expand_to_orbit_diagram, rank_criterion
from .diagram import emit_diagram
from .errors import CriteriaDisagree, SymkError, UnsupportedCombination
from .field import INFINITE, Finite
from .group import default_budget
from .orbits import enumerate_double_cosets, orbit_count, vk_orbits
from .specs import parse_field, parse_group, parse_involution
from .tori import classify_torus_classes
from .weyl import weyl_quotient

COMMANDS = ("orbits", "tori", "weyl", "poset", "complexify", "oracle", "ranks")


class RunConfig:
    def __init__(self, command, n, field, involution, fmt="text", budget=None, out=None,
                 truncate=4, expand=False):
        self.command, self.n, self.field, self.involution = command, n, field, involution
        self.format, self.budget, self.out = fmt, budget, out
        self.truncate, self.expand = truncate, expand

    @classmethod
    def from_args(cls, args):
        n = parse_group(args.group) if args.group else args.n
        if n is None:
            n = 2
        if args.command == "oracle":
            if args.q is None and args.field is None:
                raise SymkError("oracle needs --q or a finite --field")
            field = Finite(args.q) if args.q is not None else parse_field(args.field)
        else:
            field = parse_field(args.field or "R")
        involution = parse_involution(args.involution, n)
        budget = args.budget if args.budget is not None else default_budget()
        return cls(args.command, n, field, involution, args.format, budget, args.out,
                   args.truncate, args.expand)


def _count(x):
    return "inf" if x == INFINITE else x


def _header(cfg):
    return {"group": f"sl:{cfg.n}", "field": cfg.field.spec, "involution": cfg.involution.canonical}


def _realise(cfg):
    try:
        return cfg.involution.spec(cfg.field)
    except ValueError as exc:
        raise UnsupportedCombination(f"{cfg.involution.canonical} over {cfg.field.spec}: {exc}") from None


def _text_table(rows):
    width = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))] if rows else []
    return "\n".join("  ".join(str(c).ljust(w) for c, w in zip(r, width)).rstrip() for r in rows) + "\n"


def cmd_orbits(cfg):
    theta = _realise(cfg)
    oc = orbit_count(cfg.n, cfg.involution, cfg.field, budget=cfg.budget)
    if cfg.format == "json":
        return dict(_header(cfg), **oc.to_json())
    if cfg.format == "dot":
        classes = [c for c, _ in oc.per_class]
        return emit_diagram(expand_to_orbit_diagram(build_iposet(classes, theta, cfg.field), theta, cfg.field))
    rows = [("signature", "invariant", "orbits")]
    rows += [(f"({c.signature.dim_plus},{c.signature.dim_minus})", c.invariant.name, q) for c, q in oc.per_class]
    text = _text_table(rows) + f"total: {_count(oc.total)}\n"
    return text + "".join(f"note: {n}\n" for n in oc.notes)


def cmd_tori(cfg):
    _realise(cfg)
    classes = classify_torus_classes(cfg.n, cfg.involution, cfg.field, budget=cfg.budget, limit=cfg.truncate)
    if cfg.format == "json":
        return dict(_header(cfg), classes=[c.to_json() for c in classes])
    rows = [("signature", "invariant", "count")]
    rows += [(f"({c.signature.dim_plus},{c.signature.dim_minus})", c.invariant.name,
              _count(c.multiplicity_context)) for c in classes]
    return _text_table(rows)


def cmd_weyl(cfg):
    theta = _realise(cfg)
    classes = classify_torus_classes(cfg.n, cfg.involution, cfg.field, budget=cfg.budget, limit=cfg.truncate)
    quotients = [weyl_quotient(c, theta, cfg.field) for c in classes]
    if cfg.format == "json":
        return dict(_header(cfg), quotients=[w.to_json() for w in quotients])
    rows = [("signature", "invariant", "|W_G|", "|W_H|", "quotient")]
    rows += [(f"({w.torus_class.signature.dim_plus},{w.torus_class.signature.dim_minus})",
              w.torus_class.invariant.name, w.order_WG, w.order_WH, w.quotient_order) for w in quotients]
    return _text_table(rows)


def cmd_poset(cfg):
    theta = _realise(cfg)
    classes = classify_torus_classes(cfg.n, cfg.involution, cfg.field, budget=cfg.budget, limit=cfg.truncate)
    poset = build_iposet(classes, theta, cfg.field)
    obj = expand_to_orbit_diagram(poset, theta, cfg.field) if cfg.expand else poset
    if cfg.format == "json":
        out = dict(_header(cfg), nodes=[c.to_json() for c in poset.nodes],
                   order=[list(p) for p in poset.order_pairs], covers=[list(p) for p in poset.covers],
                   truncated=poset.truncated)
        if cfg.expand:
            out["orbit_nodes"] = [list(v) for v in obj.nodes]
            out["orbit_edges"] = [[list(a), list(b)] for a, b in obj.edges]
        return out
    return emit_diagram(obj, "dot" if cfg.format == "dot" else "text")


def cmd_complexify(cfg):
    _realise(cfg)
    report = complexify(cfg.n, cfg.involution, cfg.field, limit=cfg.truncate)
    if cfg.format == "json":
        return report.to_json()
    return emit_diagram(report, cfg.format)


def cmd_oracle(cfg):
    theta = _realise(cfg)
    k = cfg.field
    table = enumerate_double_cosets(cfg.n, theta, k, budget=cfg.budget)
    formula = orbit_count(cfg.n, cfg.involution, k, budget=cfg.budget).total
    vk = len(vk_orbits(cfg.n, theta, k, budget=cfg.budget))
    agree = table.count == formula == vk
    result = dict(_header(cfg), oracle=table.count, formula=_count(formula), vk=vk, agree=agree,
                  table=table.to_json())
    if not agree:
        raise CriteriaDisagree(f"oracle {table.count}, formula {formula}, V_k {vk}")
    if cfg.format == "json":
        return result
    return f"oracle={table.count} formula={_count(formula)} vk={vk} agree={'yes' if agree else 'no'}\n"


def cmd_ranks(cfg):
    _realise(cfg)
    r, kr, surj = rank_criterion(cfg.n, cfg.involution, cfg.field)
    if cfg.format == "json":
        return dict(_header(cfg), rank=r, krank=kr, surjective=surj)
    return f"rank(H) = {r}\nk-rank(H) = {kr}\nsurjective: {'yes' if surj else 'no'}\n"


HANDLERS = {
    "orbits": cmd_orbits, "tori": cmd_tori, "weyl": cmd_weyl, "poset": cmd_poset,
    "complexify": cmd_complexify, "oracle": cmd_oracle, "ranks": cmd_ranks,
}


def run(cfg: RunConfig) -> str:
    """Execute a parsed configuration and return the serialized artifact."""
    result = HANDLERS[cfg.command](cfg)
    if isinstance(result, dict):
        return json.dumps(result, indent=2) + "\n"
    return result


def build_parser():
    parser = argparse.ArgumentParser(prog="symk", description="Orbits of minimal parabolics on symmetric "
                                                             "k-varieties of SL(n), with exact arithmetic.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--group", help="group spec, e.g. sl:2")
    parser.add_argument("--n", type=int, help="shorthand for --group sl:N")
    parser.add_argument("--field", help="field spec: Q, R, Qp:5, Fq:7, Q(sqrt:-1), Cbar (default R)")
    parser.add_argument("--q", type=int, help="finite field size for the oracle")
    parser.add_argument("--involution", default="antidiag",
                        help="antidiag, symplectic, blockJ:n=4,i=1, Lx:m=2,x=2, transpose-inverse, inner:[[..]]")
    parser.add_argument("--format", choices=("json", "dot", "text"), default="text")
    parser.add_argument("--budget", type=int, help="element-count cap (default $SYMK_BUDGET or 10^7)")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--truncate", type=int, default=4,
                        help="split-type classes shown when there are infinitely many")
    parser.add_argument("--expand", action="store_true", help="poset: expand to the orbit diagram")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        text = run(cfg)
    except SymkError as exc:
        print(f"symk: error: {exc}", file=sys.stderr)
        return exc.exit_code
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
