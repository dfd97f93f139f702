"""``refchain`` command line.

Exit codes: 0 ok, 2 missing/unreadable file or bad usage, 3 parse error,
4 evaluation requested on a corpus without gold annotation.

Precedence of settings: flags > config file > built-in defaults. The config
path defaults to ``$REFCHAIN_CONFIG`` when ``--config`` is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import evaluation
from .corpus import CorpusError, Lexicon, attach_markers, parse_corpus, parse_lexicon
from .resolver import Method, ResolverConfig, load_config, resolve_document

EXIT_MISSING = 2
EXIT_PARSE = 3
EXIT_NO_GOLD = 4


class CliError(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


def _read(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_MISSING) from None


def _load_inputs(args):
    config_path = args.config or os.environ.get("REFCHAIN_CONFIG")
    method = args.method
    try:
        if config_path:
            if not Path(config_path).is_file():
                raise CliError(f"cannot read {config_path}: no such file", EXIT_MISSING)
            cfg = load_config(config_path, method=method)
        else:
            cfg = ResolverConfig() if method is None else ResolverConfig(method=Method.parse(method))
        lexicon = parse_lexicon(_read(args.lexicon)) if args.lexicon else Lexicon()
        items = parse_corpus(_read(args.corpus))
    except OSError as exc:
        raise CliError(f"cannot read {exc.filename}: {exc.strerror}", EXIT_MISSING) from None
    except (CorpusError, ValueError) as exc:
        raise CliError(f"parse error: {exc}", EXIT_PARSE) from None
    items = [(attach_markers(doc, lexicon), gold) for doc, gold in items]
    return cfg, items


def _resolve_one(job):
    doc, cfg = job
    return resolve_document(doc, cfg)


def resolve_all(docs, cfg: ResolverConfig, jobs: int = 1) -> list:
    """Decisions per document, in input order."""
    work = [(doc, cfg) for doc in docs]
    if jobs <= 1 or len(work) <= 1:
        return [_resolve_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_resolve_one, work))


def cmd_resolve(args) -> int:
    cfg, items = _load_inputs(args)
    docs = [doc for doc, _ in items]
    lines = []
    for doc, decisions in zip(docs, resolve_all(docs, cfg, args.jobs)):
        for d in decisions:
            rec = {"document": doc.id}
            rec.update(d.to_json())
            lines.append(json.dumps(rec, ensure_ascii=False))
    text = "".join(line + "\n" for line in lines)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_eval(args) -> int:
    cfg, items = _load_inputs(args)
    missing = [doc.id for doc, gold in items if gold is None]
    if missing:
        raise CliError(f"no gold annotation for document(s): {', '.join(missing)}", EXIT_NO_GOLD)
    methods = list(Method) if args.ablation else [cfg.method]
    docs = [doc for doc, _ in items]
    reports = {}
    for m in methods:
        decided = resolve_all(docs, cfg.with_method(m), args.jobs)
        total = evaluation.Counts()
        for (doc, gold), decisions in zip(items, decided):
            total = total + evaluation.score(decisions, gold)
        reports[m] = total
    text = evaluation.report_json(reports) if args.json else evaluation.report_table(reports)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="refchain",
                                     description="Rule-based noun phrase coreference.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--corpus", required=True, help="line-delimited JSON corpus")
        p.add_argument("--lexicon", help="noun<TAB>markers lexicon")
        p.add_argument("--config", help="resolver config (JSON); default $REFCHAIN_CONFIG")
        p.add_argument("--method", choices=["1", "2", "3", "4"], help="override the method")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--jobs", type=int, default=1, help="documents resolved in parallel")

    p = sub.add_parser("resolve", help="write one decision record per mention")
    common(p)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("eval", help="precision / recall against gold chains")
    common(p)
    p.add_argument("--ablation", action="store_true", help="report methods 1-4")
    p.add_argument("--json", action="store_true", help="JSON report instead of a table")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"refchain: {exc}", file=sys.stderr)
        return exc.status


if __name__ == "__main__":
    sys.exit(main())
