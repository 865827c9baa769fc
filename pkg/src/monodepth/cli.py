"""Command line front end: ``monodepth <command> FILE NAME [ARG] [flags]``."""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .clutters import (
    Clutter,
    IncidenceMatrix,
    classify,
    cover_dual,
    edge_ideal,
    find_transversal_cover,
    find_transversal_edge,
    mfmc_bounded,
    monotone_sequences,
    scp_vertices,
)
from .config import Caps, default_caps
from .errors import ContextMismatchError, ParseError, PreconditionError, ResourceError
from .graphs import Graph, cm_square_predicates, structure
from .homology import betti_table, homological_summary
from .ideals import MonomialIdeal, alexander_dual, colon, power, radical, symbolic_power
from .linalg import FieldSpec
from .parser import Session, parse, parse_monomial
from .polarization import (
    WeightedDigraph,
    format_polarized,
    latex_var,
    lower_top_degree,
    polarize_full,
    weighted_digraph_ideal,
)
from .results import ResultDoc
from .suite import paper_suite

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_RESOURCE = 0, 1, 2, 3

# commands taking an extra positional argument, with its meaning
_EXTRA = {"colon": "monomial", "power": "k", "symbolic": "k", "lower": "variable"}
COMMANDS = ("depth", "reg", "betti", "summary", "polarize", "dual", "radical", "colon", "power",
            "symbolic", "lower", "classify", "scp", "mfmc", "sequences", "cm2", "paper")


def _ideal(obj) -> MonomialIdeal:
    if isinstance(obj, MonomialIdeal):
        return obj
    if isinstance(obj, Graph):
        return obj.ideal()
    if isinstance(obj, Clutter):
        return edge_ideal(obj)
    if isinstance(obj, WeightedDigraph):
        return weighted_digraph_ideal(obj)
    raise PreconditionError(f"cannot turn {type(obj).__name__} into an ideal")


def _clutter(obj) -> Clutter:
    if isinstance(obj, Clutter):
        return obj
    if isinstance(obj, Graph):
        return obj.as_clutter()
    if isinstance(obj, MonomialIdeal) and obj.is_squarefree() and obj.is_proper() and not obj.is_zero():
        return Clutter.from_sets(obj.context, (g.support for g in obj.gens))
    raise PreconditionError("this command needs a clutter, a graph or a squarefree ideal")


def _positive_int(text: str, what: str) -> int:
    try:
        k = int(text)
    except (TypeError, ValueError):
        raise PreconditionError(f"{what} must be an integer, got {text!r}") from None
    if k < 1:
        raise PreconditionError(f"{what} must be >= 1")
    return k


def _betti_rows(table):
    return [{"i": i, "degree": list(a), "value": v} for i, a, v in table.rows()]


def run(command: str, session: Session | None, name: str | None, arg: str | None,
        field: FieldSpec, max_k: int, caps: Caps) -> ResultDoc:
    """Dispatch one command and collect its outputs."""
    if command == "paper":
        return paper_suite(caps)
    obj = session.get(name)
    inputs = {"name": name}
    if arg is not None:
        inputs[_EXTRA.get(command, "arg")] = arg
    out: dict = {}
    notes: list[str] = []

    if command in ("depth", "reg", "summary"):
        s = homological_summary(_ideal(obj), field, caps)
        if command == "depth":
            out["depth"] = s.depth
        elif command == "reg":
            out.update(reg=s.reg, reg_ideal=s.reg_ideal)
        else:
            out.update(s.as_dict())
            out.pop("field")
    elif command == "betti":
        t = betti_table(_ideal(obj), field, caps)
        out.update(pd=t.pd, depth=t.depth, reg=t.reg, totals=t.totals(), entries=_betti_rows(t),
                   table=t.format().splitlines())
    elif command == "polarize":
        pol = polarize_full(_ideal(obj))
        out["gens"] = [str(m) for m in pol.polarized_gens()]
        out["latex"] = [format_polarized(pol, e) for e in pol.images]
        out["new_vars"] = list(pol.new_vars)
        out["new_vars_latex"] = [latex_var(v) for v in pol.new_vars]
    elif command == "dual":
        if isinstance(obj, (Clutter, Graph)):
            out["covers"] = [list(c) for c in cover_dual(_clutter(obj)).edge_names()]
        else:
            out["dual"] = alexander_dual(_ideal(obj), caps)
    elif command == "radical":
        out["radical"] = radical(_ideal(obj))
    elif command == "colon":
        I = _ideal(obj)
        if arg is None:
            raise PreconditionError("colon needs a monomial argument")
        try:
            f = parse_monomial(arg, I.context)
        except ParseError as exc:
            raise PreconditionError(f"bad monomial {arg!r}: {exc}") from None
        out["colon"] = colon(I, f)
    elif command == "power":
        out["power"] = power(_ideal(obj), _positive_int(arg, "k"), caps)
    elif command == "symbolic":
        out["symbolic"] = symbolic_power(_ideal(obj), _positive_int(arg, "k"), caps)
    elif command == "lower":
        if arg is None:
            raise PreconditionError("lower needs a variable argument")
        d = lower_top_degree(_ideal(obj), arg)
        out.update(q=d.q, p=d.p, B=[str(m) for m in d.B], A=[str(m) for m in d.A],
                   L=d.L, clause=d.clause, relation=d.depth_relation)
    elif command == "classify":
        C = _clutter(obj)
        out.update(classify(C).__dict__)
        out["transversal_edge"] = find_transversal_edge(C)
        out["transversal_cover"] = find_transversal_cover(C)
        if isinstance(obj, Graph):
            out["structure"] = structure(obj)
    elif command == "scp":
        rep = scp_vertices(IncidenceMatrix.of(_clutter(obj)), caps)
        out.update(vertices=[list(v) for v in rep.vertices], integral=rep.integral,
                   fractional_witness=None if rep.fractional_witness is None else list(rep.fractional_witness))
    elif command == "mfmc":
        r = mfmc_bounded(_clutter(obj), max_k, caps)
        out.update(K=r.K, holds_up_to_K=r.holds_up_to_K)
        if not r.holds_up_to_K:
            out.update(fails_at=r.first_failure_k, witness=r.witness)
        notes.append("bounded check: agreement up to K is evidence, not proof")
    elif command == "sequences":
        rep = monotone_sequences(_ideal(obj), max_k, arg or "ordinary", field, caps)
        out.update(rep.as_dict())
        out.pop("field")
        notes += [f"k={k}: {why}" for k, why in rep.gaps]
    elif command == "cm2":
        if not isinstance(obj, Graph):
            raise PreconditionError("cm2 needs a graph")
        out.update(cm_square_predicates(obj, field, caps).__dict__)
    else:
        raise PreconditionError(f"unknown command {command!r}")
    return ResultDoc(command, inputs, field.characteristic, out, notes)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monodepth",
                                description="Depth, regularity and combinatorial checks for monomial ideals.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="file in the monodepth input language ('-' for stdin)")
    p.add_argument("name", nargs="?", help="binding to act on")
    p.add_argument("arg", nargs="?", help="extra argument: monomial (colon), k (power, symbolic), "
                                          "variable (lower), mode (sequences)")
    p.add_argument("--char", type=int, default=0, help="field characteristic: 0 or a prime (default 0)")
    p.add_argument("--max-k", type=int, default=3, help="largest power for mfmc and sequences (default 3)")
    p.add_argument("--caps", default="", help="resource caps, e.g. lattice=50000,faces=100000")
    p.add_argument("--out", help="write the JSON document here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds in the output")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        field = FieldSpec(args.char)
        caps = Caps.parse(args.caps, default_caps())
        session = None
        if args.command != "paper":
            if not args.input or not args.name:
                raise PreconditionError(f"{args.command} needs an input file and a binding name")
            text = sys.stdin.read() if args.input == "-" else _read(args.input)
            session = parse(text)
        doc = run(args.command, session, args.name, args.arg, field, args.max_k, caps)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, ContextMismatchError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if args.timing:
        doc.timing = time.perf_counter() - start
    text = doc.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", 0, 0) from None


if __name__ == "__main__":
    sys.exit(main())
