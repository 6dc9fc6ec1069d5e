"""Command-line front end: ``compute``, ``gen``, ``verify`` and ``td-stats``.

Exit codes: 0 success, 1 internal failure, 2 bad input or parameters,
3 width budget exceeded, 4 the two algorithms (or a recorded expected
value) disagree.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import diagram as dg
from .errors import DiagramError, HomflyError, WidthBudgetExceeded
from .fpt import DEFAULT_WIDTH_BUDGET, decompose, dp_stats, run_fpt
from .kauffman import run_kauffman
from .poly import BiLaurent, from_machine, parse, render, to_machine
from .treewidth import FORGET, HEURISTICS, INTRODUCE, JOIN, LEAF, greedy_decomposition, nice_violations, validate

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_DISAGREE = 0, 2, 3, 4
BOTH_DEFAULT_LIMIT = 12


class Disagreement(HomflyError):
    def __init__(self, message: str, fpt: str, kauffman: str):
        super().__init__(message)
        self.fpt = fpt
        self.kauffman = kauffman


# -- input -------------------------------------------------------------------


def read_diagram(text: str, fmt: str | None, name: str = "<input>") -> tuple[dg.LinkDiagram, dict]:
    """Parse ``text``; returns the diagram and the raw JSON document (or {})."""
    if not text.strip():
        raise DiagramError(f"{name}: empty input")
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "pd"
    if fmt == "pd":
        return dg.parse_pd(text), {}
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"{name}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DiagramError(f"{name}: diagram JSON must be an object")
    return dg.from_json(doc), doc


def _format_for(path: Path, fmt: str | None) -> str | None:
    if fmt:
        return fmt
    if path.suffix == ".json":
        return "json"
    if path.suffix == ".pd":
        return "pd"
    return None


def _load(source: str, fmt: str | None) -> tuple[dg.LinkDiagram, dict]:
    if source == "-":
        return read_diagram(sys.stdin.read(), fmt, "<stdin>")
    path = Path(source)
    if path.exists():
        try:
            text = path.read_text()
        except OSError as exc:
            raise DiagramError(f"{source}: {exc.strerror}") from None
        return read_diagram(text, _format_for(path, fmt), source)
    # Not a file: treat the argument as inline code.
    if "X" in source or source.lstrip().startswith("{"):
        return read_diagram(source.replace(";", "\n"), fmt, "<inline>")
    raise DiagramError(f"{source}: no such file")


def expected_of(doc: dict) -> BiLaurent | None:
    value = doc.get("expected")
    if value is None:
        return None
    if isinstance(value, str):
        return parse(value, BiLaurent)
    return from_machine(value, BiLaurent)


# -- computation -------------------------------------------------------------


def compute(diagram: dg.LinkDiagram, algorithm: str, heuristic: str, width_budget: int | None, threads: int):
    """Run the requested algorithm(s); returns ``(polynomial, stats)``."""
    stats: dict = {}
    result = None
    start = time.perf_counter()
    if algorithm in ("fpt", "both"):
        run = run_fpt(diagram, heuristic=heuristic, width_budget=width_budget, threads=threads)
        stats.update(dp_stats(run))
        result = run.polynomial
    if algorithm in ("kauffman", "both"):
        kr = run_kauffman(diagram)
        stats["leaves_visited"] = kr.leaves_visited
        if result is not None and result != kr.polynomial:
            raise Disagreement("fpt and kauffman disagree", render(result), render(kr.polynomial))
        result = kr.polynomial
    stats["wall_ms"] = round((time.perf_counter() - start) * 1e3, 3)
    return result, stats


def _pick_algorithm(requested: str | None, diagram: dg.LinkDiagram) -> str:
    if requested:
        return requested
    return "both" if diagram.n_crossings <= BOTH_DEFAULT_LIMIT else "fpt"


def _emit(payload: dict, output: str, human_lines: list[str]):
    if output == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


# -- commands ----------------------------------------------------------------


def cmd_compute(args) -> int:
    d, _ = _load(args.input, args.format)
    algorithm = _pick_algorithm(args.algorithm, d)
    poly, stats = compute(d, algorithm, args.heuristic, args.width_budget, args.threads)
    payload = {"algorithm": algorithm, "polynomial": render(poly), "terms": to_machine(poly)}
    lines = [render(poly)]
    if args.stats:
        payload["stats"] = stats
        lines.append(json.dumps(stats, sort_keys=True))
    _emit(payload, args.output, lines)
    return EXIT_OK


def _parse_range(text: str, what: str) -> tuple[int, int]:
    try:
        if "-" in text.strip("-"):
            lo, hi = (int(x) for x in text.split("-", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise DiagramError(f"{what} must be N or A-B, got {text!r}") from None
    if lo > hi:
        raise DiagramError(f"{what} range {text!r} is empty")
    return lo, hi


def cmd_gen(args) -> int:
    s_lo, s_hi = _parse_range(args.strands, "strands")
    l_lo, l_hi = _parse_range(args.length, "length")
    if s_lo < 2:
        raise DiagramError("strands must be at least 2")
    if l_lo < 1 or args.count < 1:
        raise DiagramError("length and count must be positive")
    rng = random.Random(args.seed)
    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    width = max(4, len(str(args.count - 1)))
    written = []
    for i in range(args.count):
        strands = rng.randint(s_lo, s_hi)
        word = dg.random_braid_word(strands, rng.randint(l_lo, l_hi), rng)
        d = dg.generate_braid_closure(word, strands)
        extra = {"braid": word, "strands": strands}
        if args.expected:
            extra["expected"] = render(run_kauffman(d).polynomial)
        path = out / f"{args.prefix}{i:0{width}d}.json"
        path.write_text(dg.dumps(d, **extra))
        written.append(str(path))
    _emit({"written": written}, args.output, [f"wrote {len(written)} diagrams to {out}"])
    return EXIT_OK


def _verify_one(job):
    path, fmt, heuristic, width_budget, max_crossings = job
    name = Path(path).name
    try:
        d, doc = _load(path, fmt)
        if max_crossings is not None and d.n_crossings > max_crossings:
            return {"file": name, "status": "skipped", "crossings": d.n_crossings}
        f = run_fpt(d, heuristic=heuristic, width_budget=width_budget).polynomial
        k = run_kauffman(d).polynomial
        want = expected_of(doc)
    except WidthBudgetExceeded as exc:
        return {"file": name, "status": "budget", "message": str(exc)}
    except HomflyError as exc:
        return {"file": name, "status": "error", "message": str(exc)}
    row = {"file": name, "fpt": render(f), "kauffman": render(k), "crossings": d.n_crossings}
    if f != k:
        row["status"] = "unequal"
    elif want is not None and want != f:
        row["status"] = "unexpected"
        row["expected"] = render(want)
    else:
        row["status"] = "equal"
    return row


def cmd_verify(args) -> int:
    root = Path(args.corpus)
    if not root.is_dir():
        raise DiagramError(f"{root}: not a directory")
    files = sorted(p for p in root.iterdir() if p.suffix in (".json", ".pd") and p.is_file())
    jobs = [(str(p), args.format, args.heuristic, args.width_budget, args.max_crossings) for p in files]
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(_verify_one, jobs))
    else:
        rows = [_verify_one(j) for j in jobs]
    checked = [r for r in rows if r["status"] != "skipped"]
    bad = [r for r in rows if r["status"] in ("unequal", "unexpected")]
    errors = [r for r in rows if r["status"] in ("error", "budget")]
    lines = []
    for r in rows:
        if r["status"] == "equal":
            lines.append(f"equal      {r['file']}  {r['fpt']}")
        elif r["status"] == "skipped":
            lines.append(f"skipped    {r['file']}  ({r['crossings']} crossings)")
        elif r["status"] in ("error", "budget"):
            lines.append(f"{r['status']:<10} {r['file']}  {r['message']}")
        else:
            lines.append(f"{r['status']:<10} {r['file']}")
    lines.append(f"{len(checked) - len(errors)} checked, {len(bad)} disagreements, {len(errors)} errors")
    _emit({"results": rows, "checked": len(checked) - len(errors), "disagreements": len(bad)}, args.output, lines)
    if not checked:
        print("warning: 0 checked", file=sys.stderr)
    if bad:
        first = bad[0]
        if first["status"] == "unequal":
            print(f"{first['file']}: fpt gives {first['fpt']} but kauffman gives {first['kauffman']}", file=sys.stderr)
        else:
            print(f"{first['file']}: computed {first['fpt']} but expected {first['expected']}", file=sys.stderr)
        return EXIT_DISAGREE
    if any(r["status"] == "budget" for r in errors):
        return EXIT_BUDGET
    if errors:
        return EXIT_INPUT
    return EXIT_OK


def cmd_td_stats(args) -> int:
    d, _ = _load(args.input, args.format)
    stripped, twists, zero = dg.untwist_and_strip(d)
    payload: dict = {"crossings": d.n_crossings, "twists_removed": twists, "zero_components": zero}
    if stripped.is_empty():
        payload.update(width=-1, bags=0, nice_bags=0)
    else:
        graph = dg.diagram_graph(stripped)
        td = greedy_decomposition(graph, args.heuristic)
        ntd = decompose(stripped, args.heuristic)
        kinds = [n.kind for n in ntd.nodes]
        payload.update(
            width=td.width,
            bags=len(td.bags),
            nice_bags=len(ntd.nodes),
            leaf=kinds.count(LEAF),
            introduce=kinds.count(INTRODUCE),
            forget=kinds.count(FORGET),
            join=kinds.count(JOIN),
            valid=not validate(td, graph) and not nice_violations(ntd, graph),
        )
    if args.stats and not stripped.is_empty():
        run = run_fpt(d, heuristic=args.heuristic, width_budget=args.width_budget, threads=args.threads)
        payload["dp"] = dp_stats(run)
    lines = [f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in payload.items()]
    _emit(payload, args.output, lines)
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homflypt", description="HOMFLY-PT polynomials of link diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, algorithm=False):
        sp.add_argument("--format", choices=("pd", "json"), help="input format (default: by extension or content)")
        sp.add_argument("--output", choices=("human", "json"), default="human")
        sp.add_argument("--heuristic", choices=HEURISTICS, default="min-degree")
        sp.add_argument("--width-budget", type=_positive, default=DEFAULT_WIDTH_BUDGET,
                        help="largest DP table allowed (default %(default)s)")
        sp.add_argument("--threads", type=_positive, default=1)
        sp.add_argument("--seed", type=int, default=0)
        if algorithm:
            sp.add_argument("--algorithm", choices=("kauffman", "fpt", "both"),
                            help=f"default: both up to {BOTH_DEFAULT_LIMIT} crossings, else fpt")
            sp.add_argument("--stats", action="store_true", help="also print run statistics as JSON")

    c = sub.add_parser("compute", help="print the HOMFLY-PT polynomial of a diagram")
    c.add_argument("input", help="file path, '-' for stdin, or inline PD code ('X(..);X(..)')")
    common(c, algorithm=True)
    c.set_defaults(func=cmd_compute)

    g = sub.add_parser("gen", help="write random braid-closure diagrams")
    g.add_argument("strands", help="strand count N or range A-B")
    g.add_argument("length", help="word length N or range A-B")
    g.add_argument("count", type=_positive)
    g.add_argument("--dir", default=".", help="output directory")
    g.add_argument("--prefix", default="braid_")
    g.add_argument("--expected", action="store_true", help="record the polynomial as 'expected'")
    common(g)
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run both algorithms over a corpus directory")
    v.add_argument("corpus")
    v.add_argument("--max-crossings", type=int, default=None)
    common(v)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("td-stats", help="tree decomposition statistics")
    t.add_argument("input")
    common(t)
    t.add_argument("--stats", action="store_true", help="also run the DP and report its statistics")
    t.set_defaults(func=cmd_td_stats)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Disagreement as exc:
        print(f"error: {exc}: fpt gives {exc.fpt}, kauffman gives {exc.kauffman}", file=sys.stderr)
        return EXIT_DISAGREE
    except WidthBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DiagramError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HomflyError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
