"""Command-line entry point: ``unknotter <command> ...``."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import corpus as corpus_mod
from .diagram import (
    ResolvedDiagram,
    ShadowDiagram,
    parse,
    parse_gauss_shadow,
    parse_pd_shadow,
    serialize,
    to_pd_text,
    validate,
)
from .dissect import ChordSystem, dissect, sequence_table
from .errors import MalformedWord, TooLarge, UnknotterError
from .resolve import cells_tsv, descending_resolution, loop_erasure_resolution, min_extrema, optimal_profile
from .tower import TowerScript, descend

EXIT_OK, EXIT_INVALID, EXIT_UNVERIFIED, EXIT_BUDGET = 0, 2, 3, 4


class CommandFailed(Exception):
    def __init__(self, code: int, name: str, message: str):
        super().__init__(message)
        self.code, self.name = code, name


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CommandFailed(EXIT_INVALID, "FileError", str(exc)) from None


def _load_diagram(args) -> ShadowDiagram | ResolvedDiagram:
    text = _read(args.file)
    fmt = getattr(args, "format", "auto")
    bp = getattr(args, "basepoint", None)
    if fmt == "gauss":
        d = parse_gauss_shadow(text, bp)
    elif fmt == "pd":
        d = parse_pd_shadow(text)
        if bp is not None:
            d = ShadowDiagram(d.word, d.planar, bp)
    else:
        d = parse(text, bp)
    problems = validate(d)
    if problems:
        raise MalformedWord("; ".join(problems))
    return d


def _load_shadow(args) -> ShadowDiagram:
    d = _load_diagram(args)
    return d.shadow if isinstance(d, ResolvedDiagram) else d


def _load_resolved(args) -> ResolvedDiagram:
    d = _load_diagram(args)
    if not isinstance(d, ResolvedDiagram):
        if d.word:
            raise MalformedWord("expected a resolved diagram (O/U word or X lines)")
        d = ResolvedDiagram(d)
    return d


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text if text.endswith("\n") or not text else text + "\n")


def _emit(text: str) -> None:
    if text:
        print(text)


def cmd_parse(args) -> int:
    d = _load_diagram(args)
    if args.emit == "pd":
        _emit(to_pd_text(d))
    elif args.emit == "gauss":
        sh = d.shadow if isinstance(d, ResolvedDiagram) else d
        _emit(serialize(ShadowDiagram(sh.word, None, sh.basepoint)))
    else:
        _emit(serialize(d))
    return EXIT_OK


def cmd_resolve(args) -> int:
    shadow = _load_shadow(args)
    if args.strategy == "descending":
        resolved, profile = descending_resolution(shadow)
        if args.profile:
            _write(args.profile, "position\theight\n" + "".join(f"{i}\t{h:.6f}\n" for i, h in enumerate(profile.heights)))
        if args.svg:
            from .render import render_profile

            render_profile(resolved, profile, args.svg)
    else:
        result = loop_erasure_resolution(shadow)
        resolved = result.diagram
        if args.cells:
            _write(args.cells, cells_tsv(result))
        if args.svg:
            from .render import render_gauss

            render_gauss(resolved, args.svg)
    text = serialize(resolved)
    _write(args.out, text)
    _emit(text)
    return EXIT_OK


def cmd_dissect(args) -> int:
    system = ChordSystem.from_json(_read(args.file))
    tree, seq = dissect(system)
    print("\n".join(sequence_table(seq)))
    if args.tree_svg:
        from .render import render_tree

        render_tree(tree, args.tree_svg)
    return EXIT_OK


def cmd_descend(args) -> int:
    base = Path(args.file).parent if args.file != "-" else None
    script = TowerScript.from_json(_read(args.file), base)
    result = descend(script)
    text = "\n".join(result.lines())
    _write(args.out, text)
    print(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import kauffman_bracket, reidemeister_reduce

    d = _load_resolved(args)
    if args.method == "bracket":
        poly = kauffman_bracket(d)
        print(f"status\t{'unknot-consistent' if poly.is_one() else 'knotted'}")
        print(f"bracket\t{poly.sparse()}")
        return EXIT_OK if poly.is_one() else EXIT_UNVERIFIED
    result = reidemeister_reduce(d, max_states=args.max_states, max_crossings=args.max_crossings)
    if result:
        print(f"status\treduced\nmoves\t{len(result)}\nstates\t{result.states_explored}")
        for line in result.lines():
            print(line)
        return EXIT_OK
    status = "budget-exceeded" if result.budget_exceeded else "not-reduced"
    print(f"status\t{status}\nstates\t{result.states_explored}\ncrossings\t{result.crossings}")
    if result.budget_exceeded:
        raise CommandFailed(EXIT_BUDGET, "BudgetExceeded", f"state budget exhausted after {result.states_explored} states")
    return EXIT_UNVERIFIED


def cmd_corpus(args) -> int:
    if args.family == "standard":
        entries = corpus_mod.standard()
    else:
        entries = [corpus_mod.CorpusEntry(f"foxartin_{args.k}", corpus_mod.foxartin(args.k), corpus_mod.UNKNOTTABLE)]
    if args.outdir:
        out = Path(args.outdir)
        out.mkdir(parents=True, exist_ok=True)
        for e in entries:
            _write(str(out / f"{e.name}.shadow"), serialize(e.shadow))
    if args.emit:
        blocks = []
        for e in entries:
            head = f"# {e.name}" if len(entries) > 1 else ""
            blocks.append("\n".join(x for x in (head, serialize(e.shadow)) if x))
        print("\n\n".join(blocks))
    else:
        print("name\tcrossings\texpected")
        for e in entries:
            print(f"{e.name}\t{e.shadow.crossing_count}\t{'; '.join(e.expected)}")
    return EXIT_OK


def cmd_render(args) -> int:
    from .render import render_chords, render_gauss

    text = _read(args.file)
    if text.lstrip().startswith("{"):
        render_chords(ChordSystem.from_json(text), args.svg)
    else:
        render_gauss(_load_diagram(args), args.svg)
    print(args.svg)
    return EXIT_OK


def cmd_extrema(args) -> int:
    d = _load_resolved(args)
    bound = args.bound
    if bound is None and os.environ.get("UNKNOTTER_EXTREMA_BOUND"):
        bound = int(os.environ["UNKNOTTER_EXTREMA_BOUND"])
    count = min_extrema(d, bound)
    profile = optimal_profile(d, bound)
    print(f"min_extrema\t{count}")
    print("position\theight")
    for i, h in enumerate(profile.heights):
        print(f"{i}\t{h:.6f}")
    if args.svg:
        from .render import render_profile

        render_profile(d, profile, args.svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="unknotter", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def diagram_input(sp):
        sp.add_argument("file", help="diagram file, or - for stdin")
        sp.add_argument("--format", choices=("auto", "gauss", "pd"), default="auto")
        sp.add_argument("--basepoint", type=int, default=None, help="basepoint gap index")

    sp = sub.add_parser("parse", help="validate a diagram and print it in a chosen format")
    diagram_input(sp)
    sp.add_argument("--emit", choices=("text", "gauss", "pd"), default="text")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("resolve", help="choose crossings that unknot a shadow")
    diagram_input(sp)
    sp.add_argument("--strategy", choices=("descending", "loop-erasure"), default="descending")
    sp.add_argument("--out", help="also write the resolved diagram here")
    sp.add_argument("--cells", help="loop-erasure: write the cells table (TSV) here")
    sp.add_argument("--profile", help="descending: write the height profile (TSV) here")
    sp.add_argument("--svg", help="write a figure (profile or Gauss diagram)")
    sp.set_defaults(func=cmd_resolve)

    sp = sub.add_parser("dissect", help="dissect a chord system into a great sequence")
    sp.add_argument("file", help="chord-system JSON file")
    sp.add_argument("--tree-svg", help="write the dissection tree figure here")
    sp.set_defaults(func=cmd_dissect)

    sp = sub.add_parser("descend", help="run a tower descent script")
    sp.add_argument("file", help="tower script JSON file")
    sp.add_argument("--out", help="also write the result table here")
    sp.set_defaults(func=cmd_descend)

    sp = sub.add_parser("verify", help="certify that a resolved diagram is unknotted")
    diagram_input(sp)
    sp.add_argument("--method", choices=("reidemeister", "bracket"), default="reidemeister")
    sp.add_argument("--max-states", type=int, default=None)
    sp.add_argument("--max-crossings", type=int, default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("corpus", help="list or emit corpus shadows")
    sp.add_argument("--family", choices=("standard", "foxartin"), default="standard")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--emit", action="store_true", help="print the shadows themselves")
    sp.add_argument("--outdir", help="write one .shadow file per entry")
    sp.set_defaults(func=cmd_corpus)

    sp = sub.add_parser("render", help="draw a chord system or a Gauss diagram")
    diagram_input(sp)
    sp.add_argument("--svg", required=True, help="output file (format from suffix)")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("extrema", help="fewest local maxima over compatible height profiles")
    diagram_input(sp)
    sp.add_argument("--bound", type=int, default=None, help="largest crossing count to search")
    sp.add_argument("--svg", help="write the optimal profile figure here")
    sp.set_defaults(func=cmd_extrema)
    return p


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandFailed as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return exc.code
    except TooLarge as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UnknotterError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_code


def main() -> None:
    sys.exit(run())
