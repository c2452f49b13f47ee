"""``tablesense`` command line.

Exit codes: 0 success, 2 usage/config or source errors, 3 missing or
incompatible models, 4 corpus errors, 5 training errors.  Machine-readable
results go to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

from . import __version__
from .classifiers import Family, Model, Task, predict, train
from .corpus import load_corpus, run_benchmark
from .errors import (
    CorpusError,
    DegenerateTable,
    IncompatibleModels,
    ModelFormatError,
    SourceError,
    TooFewColumns,
    TooFewRows,
    TrainingError,
    UnknownTable,
)
from .extraction import CellGrid, expand_spans, extract_tables, fetch_source, parse_document
from .heuristics import compute_trace
from .pipeline import (
    DEFAULT_BASE_URI,
    GENUINENESS_MODEL_FILE,
    PipelineConfig,
    classify_grid,
    load_models,
    process_source,
    relabel_and_retrain,
    write_outputs,
)
from .similarity import MetricConfig

EXIT_USAGE = 2
EXIT_SOURCE = 2
EXIT_MODELS = 3
EXIT_CORPUS = 4
EXIT_TRAINING = 5

CONFIG_ENV = "TABLESENSE_CONFIG"

_METRIC_KEYS = ("kind", "modified", "ngram_n", "long_string_word_limit", "long_string_cap",
                "jw_prefix_scale", "jw_max_prefix")
_OTHER_KEYS = ("base_uri", "fetch_timeout", "family", "k", "folds", "seed", "corpus", "models")
CONFIG_KEYS = _METRIC_KEYS + _OTHER_KEYS

DEFAULTS = {
    "base_uri": DEFAULT_BASE_URI,
    "fetch_timeout": 10.0,
    "family": "knn",
    "folds": 5,
    "seed": 0,
}


class UsageError(Exception):
    pass


def _bool(value: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {value!r}")


_CASTS = {
    "modified": _bool, "ngram_n": int, "long_string_word_limit": int, "long_string_cap": float,
    "jw_prefix_scale": float, "jw_max_prefix": int, "fetch_timeout": float, "k": int,
    "folds": int, "seed": int,
}


def read_config(path) -> Dict[str, object]:
    """Parse a ``key=value`` file; blank lines and ``#`` comments are ignored."""
    values: Dict[str, object] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _CASTS.get(key, str)(value)
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


class Settings:
    """Resolves each setting as flag > config file > built-in default."""

    def __init__(self, args: argparse.Namespace):
        path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
        self.file = read_config(path) if path else {}
        self.args = args

    def get(self, key: str, default=None):
        flag = getattr(self.args, key, None)
        if flag is not None:
            return flag
        if key in self.file:
            return self.file[key]
        return DEFAULTS.get(key, default)

    def explicit(self, key: str) -> bool:
        return getattr(self.args, key, None) is not None or key in self.file

    def metric_config(self) -> MetricConfig:
        base = MetricConfig().to_dict()
        values = {k: self.get(k, base[k]) for k in _METRIC_KEYS}
        try:
            return MetricConfig.from_dict(values)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

    def metric_explicit(self) -> bool:
        return any(self.explicit(k) for k in _METRIC_KEYS)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _err(msg: str) -> None:
    print(f"tablesense: {msg}", file=sys.stderr)


def read_csv_grid(path) -> CellGrid:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh)]
    width = max((len(r) for r in rows), default=0)
    rows = [r + [""] * (width - len(r)) for r in rows]
    grid = CellGrid.from_rows(rows, source=(str(path), 0)) if rows and width else None
    if grid is None or grid.n < 2 or grid.m < 2:
        raise DegenerateTable(f"{path}: grid must be at least 2x2")
    return grid


def _hyperparams(settings: Settings, family: Family) -> dict:
    hp = {}
    args = settings.args
    if family is Family.KNN and settings.get("k") is not None:
        hp["k"] = settings.get("k")
    if family is Family.SVM:
        hp["seed"] = settings.get("seed")
        for name in ("epochs", "lam", "eta0"):
            if getattr(args, name, None) is not None:
                hp[name] = getattr(args, name)
    if family is Family.DECISION_TREE:
        for name in ("max_depth", "min_leaf"):
            if getattr(args, name, None) is not None:
                hp[name] = getattr(args, name)
    return hp


# -- commands ---------------------------------------------------------------

def cmd_extract(settings: Settings) -> int:
    args = settings.args
    doc = fetch_source(args.source, settings.get("fetch_timeout"))
    tables = parse_document(doc)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"source": args.source, "tables": []}
    for raw in tables:
        rows = expand_spans(raw)
        name = f"table{raw.index}.csv"
        with open(out / name, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh, lineterminator="\r\n").writerows(rows)
        n, m = len(rows), len(rows[0]) if rows else 0
        manifest["tables"].append({"source": args.source, "index": raw.index, "n": n, "m": m,
                                   "file": name, "degenerate": n < 2 or m < 2})
    with open(out / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    _emit({"source": args.source, "tables": len(tables), "out": str(out)})
    return 0


def cmd_trace(settings: Settings) -> int:
    args = settings.args
    cfg = settings.metric_config()
    if args.csv:
        grids = [read_csv_grid(args.csv)]
    else:
        grids = []
        for raw, grid in extract_tables(fetch_source(args.source, settings.get("fetch_timeout"))):
            if isinstance(grid, Exception):
                _err(str(grid))
                continue
            grids.append(grid)
    for grid in grids:
        _emit(compute_trace(grid, cfg).to_record())
    return 0


def cmd_train(settings: Settings) -> int:
    args = settings.args
    cfg = settings.metric_config()
    family = Family.parse(settings.get("family"))
    corpus = settings.get("corpus")
    if not corpus:
        raise UsageError("--corpus is required (flag or config key)")
    samples = load_corpus(corpus, cfg)
    hp = _hyperparams(settings, family)
    tasks = list(Task) if args.task == "both" else [Task.parse(args.task)]
    out = Path(args.out or settings.get("models") or "models")
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for task in tasks:
        subset = samples if task is Task.GENUINENESS else [s for s in samples if s.genuine]
        model = train(family, task, subset, hp, cfg)
        path = out / f"{task.value}.model.json"
        model.save(path)
        written.append(str(path))
    _emit({"family": family.value, "metric_config": cfg.to_dict(), "models": written,
           "samples": len(samples)})
    return 0


def _load_pipeline(settings: Settings) -> PipelineConfig:
    models_dir = settings.get("models")
    if not models_dir:
        raise IncompatibleModels("--models is required")
    gen, ori = load_models(models_dir)
    cfg = settings.metric_config() if settings.metric_explicit() else gen.metric_config
    return PipelineConfig(cfg, gen, ori, base_uri=settings.get("base_uri"),
                          fetch_timeout=settings.get("fetch_timeout"))


def cmd_run(settings: Settings) -> int:
    args = settings.args
    pipeline = _load_pipeline(settings)
    results = process_source(args.source, pipeline)
    written = write_outputs(results, args.out)
    for r in results:
        sys.stdout.write(r.report_line() + "\n")
    _err(f"{len(results)} tables, {len(written)} Turtle files written to {args.out}")
    return 0


def cmd_classify(settings: Settings) -> int:
    args = settings.args
    grid = read_csv_grid(args.csv)
    path = Path(args.model)
    if path.is_dir():
        if not (path / GENUINENESS_MODEL_FILE).exists():
            raise IncompatibleModels(f"no models in {path}")
        settings.args.models = str(path)
        result = classify_grid(grid, _load_pipeline(settings))
        record = result.report_record()
        record.pop("triples")
        _emit(record)
        return 0
    try:
        model = Model.load(path)
    except (OSError, ModelFormatError) as exc:
        raise IncompatibleModels(f"cannot load model {path}: {exc}") from exc
    trace = compute_trace(grid, model.metric_config)
    record = {"task": model.task.value, "label": predict(model, trace.values())}
    record.update(trace.to_record())
    _emit(record)
    return 0


def cmd_benchmark(settings: Settings) -> int:
    args = settings.args
    corpus = settings.get("corpus")
    if not corpus:
        raise UsageError("--corpus is required (flag or config key)")
    base = settings.metric_config()
    hp = {f: _hyperparams(settings, f) or None for f in Family}
    report = run_benchmark(corpus, folds=settings.get("folds"), seed=settings.get("seed"),
                           hyperparams=hp, base_config=base)
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.text:
        Path(args.text).write_text(report.to_text(), encoding="utf-8")
    sys.stdout.write(text)
    _err(f"overall performance {report.overall_performance:.2f}")
    return 0


def cmd_relabel(settings: Settings) -> int:
    args = settings.args
    corpus = settings.get("corpus")
    if not corpus:
        raise UsageError("--corpus is required (flag or config key)")
    if args.genuine and not args.orientation:
        raise UsageError("--genuine needs --orientation horizontal|vertical")
    pipeline = _load_pipeline(settings)
    gen, ori = relabel_and_retrain((args.source, args.index), args.genuine,
                                   args.orientation if args.genuine else None,
                                   corpus, pipeline, model_dir=settings.get("models"))
    _emit({"source": args.source, "index": args.index, "genuine": args.genuine,
           "orientation": args.orientation if args.genuine else None,
           "models": settings.get("models")})
    return 0


def cmd_export_models(settings: Settings) -> int:
    args = settings.args
    gen, ori = load_models(settings.get("models"))
    bundle = {"genuineness": json.loads(gen.to_json()), "orientation": json.loads(ori.to_json())}
    text = json.dumps(bundle, indent=1, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return 0


# -- parser -----------------------------------------------------------------

def _metric_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("string metric")
    g.add_argument("--metric", dest="kind", choices=["levenshtein", "jaro-winkler", "ngram"])
    g.add_argument("--modified", dest="modified", action="store_true", default=None)
    g.add_argument("--unmodified", dest="modified", action="store_false")
    g.add_argument("--ngram-n", dest="ngram_n", type=int)
    g.add_argument("--long-string-word-limit", dest="long_string_word_limit", type=int)
    g.add_argument("--long-string-cap", dest="long_string_cap", type=float)
    g.add_argument("--jw-prefix-scale", dest="jw_prefix_scale", type=float)
    g.add_argument("--jw-max-prefix", dest="jw_max_prefix", type=int)


def _training_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("classifier")
    g.add_argument("--family", choices=[f.value for f in Family] + ["tree", "nb"])
    g.add_argument("--k", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--max-depth", dest="max_depth", type=int)
    g.add_argument("--min-leaf", dest="min_leaf", type=int)
    g.add_argument("--epochs", type=int)
    g.add_argument("--lam", type=float)
    g.add_argument("--eta0", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tablesense",
        description="Extract HTML tables, classify genuineness and orientation, emit RDF.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"key=value config file (fallback: ${CONFIG_ENV})")
    common.add_argument("--timeout", dest="fetch_timeout", type=float)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[common], help="write every leaf table as CSV")
    p.add_argument("--source", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("trace", parents=[common], help="print heuristic traces as JSON lines")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--source")
    src.add_argument("--csv")
    _metric_flags(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("train", parents=[common], help="train and persist models from a corpus")
    p.add_argument("--corpus")
    p.add_argument("--task", choices=["genuineness", "orientation", "both"], default="both")
    p.add_argument("--out", help="model directory (default: config 'models' or ./models)")
    _metric_flags(p)
    _training_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", parents=[common], help="classify one CSV grid")
    p.add_argument("--model", required=True, help="model file or model directory")
    p.add_argument("--csv", required=True)
    p.add_argument("--base-uri", dest="base_uri")
    _metric_flags(p)
    p.set_defaults(func=cmd_classify, models=None)

    p = sub.add_parser("run", parents=[common], help="full pipeline: source to Turtle + report")
    p.add_argument("--source", required=True)
    p.add_argument("--models")
    p.add_argument("--base-uri", dest="base_uri")
    p.add_argument("--out", required=True)
    _metric_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("benchmark", parents=[common], help="cross-validate all configurations")
    p.add_argument("--corpus")
    p.add_argument("--folds", type=int)
    p.add_argument("--out", help="also write the JSON report here")
    p.add_argument("--text", help="write the aligned text table here")
    _metric_flags(p)
    _training_flags(p)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("relabel", parents=[common], help="label one table and retrain")
    p.add_argument("--source", required=True)
    p.add_argument("--index", type=int, required=True)
    lab = p.add_mutually_exclusive_group(required=True)
    lab.add_argument("--genuine", dest="genuine", action="store_true")
    lab.add_argument("--non-genuine", dest="genuine", action="store_false")
    p.add_argument("--orientation", choices=["horizontal", "vertical"])
    p.add_argument("--corpus")
    p.add_argument("--models")
    p.add_argument("--base-uri", dest="base_uri")
    p.set_defaults(func=cmd_relabel)

    p = sub.add_parser("export-models", parents=[common], help="dump a model pair as one JSON bundle")
    p.add_argument("--models")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_models)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = Settings(args)
        return args.func(settings)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except (SourceError, UnknownTable) as exc:
        _err(str(exc))
        return EXIT_SOURCE
    except IncompatibleModels as exc:
        _err(str(exc))
        return EXIT_MODELS
    except CorpusError as exc:
        _err(str(exc))
        return EXIT_CORPUS
    except TrainingError as exc:
        _err(str(exc))
        return EXIT_TRAINING
    except (DegenerateTable, TooFewRows, TooFewColumns) as exc:
        _err(str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
