"""Labelled table corpus and the evaluation harness built on it.

A corpus is a UTF-8 JSON-lines file; each line names one leaf table by
document path and index and gives its labels::

    {"document_path": "pages/people.html", "table_index": 0, "genuine": true, "orientation": "horizontal"}

Relative document paths resolve against the corpus file's directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .classifiers import (
    ORIENTATIONS,
    EvalReport,
    Family,
    LabeledSample,
    Task,
    cross_validate,
)
from .errors import (
    CorpusWriteError,
    DegenerateTable,
    EmptyReport,
    MalformedEntry,
    MissingDocument,
    MissingTableIndex,
    SourceError,
    TooFewSamples,
)
from .extraction import CellGrid, fetch_source, normalize_grid, parse_document
from .heuristics import compute_trace
from .similarity import MetricConfig, MetricKind

ENTRY_KEYS = ("document_path", "table_index", "genuine", "orientation")


@dataclass(frozen=True)
class CorpusEntry:
    document_path: str
    table_index: int
    genuine: bool
    orientation: Optional[str] = None

    def to_line(self) -> str:
        return json.dumps(
            {"document_path": self.document_path, "table_index": self.table_index,
             "genuine": self.genuine, "orientation": self.orientation},
            ensure_ascii=False,
        )


def _parse_entry(obj, lineno: int) -> CorpusEntry:
    if not isinstance(obj, dict):
        raise MalformedEntry(f"line {lineno}: expected a JSON object", lineno)
    missing = [k for k in ("document_path", "table_index", "genuine") if k not in obj]
    if missing:
        raise MalformedEntry(f"line {lineno}: missing keys {missing}", lineno)
    extra = set(obj) - set(ENTRY_KEYS)
    if extra:
        raise MalformedEntry(f"line {lineno}: unknown keys {sorted(extra)}", lineno)
    path, index, genuine = obj["document_path"], obj["table_index"], obj["genuine"]
    orientation = obj.get("orientation")
    if not isinstance(path, str) or not path:
        raise MalformedEntry(f"line {lineno}: document_path must be a non-empty string", lineno)
    if isinstance(index, bool) or not isinstance(index, int) or index < 0:
        raise MalformedEntry(f"line {lineno}: table_index must be a non-negative integer", lineno)
    if not isinstance(genuine, bool):
        raise MalformedEntry(f"line {lineno}: genuine must be true or false", lineno)
    if genuine and orientation not in ORIENTATIONS:
        raise MalformedEntry(f"line {lineno}: genuine tables need orientation horizontal|vertical", lineno)
    if not genuine and orientation is not None:
        raise MalformedEntry(f"line {lineno}: non-genuine tables cannot have an orientation", lineno)
    return CorpusEntry(path, index, genuine, orientation)


def read_entries(path) -> List[CorpusEntry]:
    entries: List[CorpusEntry] = []
    seen: Dict[Tuple[str, int], int] = {}
    base = Path(path).parent
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedEntry(f"line {lineno}: invalid JSON ({exc.msg})", lineno) from exc
            entry = _parse_entry(obj, lineno)
            key = (os.path.normpath(str(base / entry.document_path)), entry.table_index)
            if key in seen:
                raise MalformedEntry(
                    f"line {lineno}: duplicate of line {seen[key]} "
                    f"({entry.document_path}, table {entry.table_index})",
                    lineno,
                )
            seen[key] = lineno
            entries.append(entry)
    return entries


def write_entries(path, entries: Iterable[CorpusEntry]) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            for e in entries:
                fh.write(e.to_line() + "\n")
        os.replace(tmp, path)
    except OSError as exc:
        raise CorpusWriteError(f"cannot write corpus {path}: {exc}") from exc


def resolve_document(corpus_path, document_path: str) -> str:
    if "://" in document_path or os.path.isabs(document_path):
        return document_path
    return str(Path(corpus_path).parent / document_path)


def load_grids(path, entries: Optional[Sequence[CorpusEntry]] = None) -> List[Tuple[CorpusEntry, CellGrid]]:
    """Extract the grid behind every entry, reporting all failures at once."""
    entries = read_entries(path) if entries is None else entries
    documents: Dict[str, list] = {}
    missing_docs, missing_tables = [], []
    out = []
    for e in entries:
        uri = resolve_document(path, e.document_path)
        if uri not in documents:
            try:
                documents[uri] = parse_document(fetch_source(uri))
            except SourceError as exc:
                documents[uri] = exc
        tables = documents[uri]
        if isinstance(tables, Exception):
            missing_docs.append(f"{e.document_path}: {tables}")
            continue
        if e.table_index >= len(tables):
            missing_tables.append(
                f"{e.document_path}: table {e.table_index} requested, document has {len(tables)}"
            )
            continue
        try:
            out.append((e, normalize_grid(tables[e.table_index])))
        except DegenerateTable as exc:
            missing_tables.append(f"{e.document_path}: table {e.table_index} unusable ({exc})")
    if missing_docs:
        raise MissingDocument("unresolvable documents:\n  " + "\n  ".join(missing_docs + missing_tables))
    if missing_tables:
        raise MissingTableIndex("unresolvable tables:\n  " + "\n  ".join(missing_tables))
    return out


def samples_from_grids(pairs, cfg: MetricConfig) -> List[LabeledSample]:
    samples = []
    for entry, grid in pairs:
        trace = compute_trace(grid, cfg)
        samples.append(LabeledSample(trace.values(), entry.genuine, entry.orientation, grid.source))
    return samples


def load_corpus(path, cfg: MetricConfig) -> List[LabeledSample]:
    return samples_from_grids(load_grids(path), cfg)


# -- benchmark --------------------------------------------------------------

@dataclass(frozen=True)
class BenchmarkCell:
    task: Task
    family: Family
    kind: MetricKind
    modified: bool
    report: EvalReport

    def to_dict(self) -> dict:
        d = {"task": self.task.value, "family": self.family.value,
             "metric": self.kind.value, "modified": self.modified}
        d.update(self.report.to_dict())
        return d


@dataclass
class BenchmarkReport:
    rows: List[BenchmarkCell] = field(default_factory=list)
    overall_performance: Optional[float] = None
    folds: int = 0
    seed: int = 0

    def cells(self, task) -> List[BenchmarkCell]:
        task = Task.parse(task)
        return [c for c in self.rows if c.task is task]

    def to_dict(self) -> dict:
        return {
            "folds": self.folds,
            "seed": self.seed,
            "overall_performance": self.overall_performance,
            "cells": [c.to_dict() for c in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = []
        for task in Task:
            cells = self.cells(task)
            if not cells:
                continue
            lines.append(f"{task.value} check (positive class: {task.positive})")
            lines.append(f"{'Family':<14} {'Metric':<13} {'Variant':<11} "
                         f"{'Precision':>9} {'Recall':>7} {'F-Measure':>9} {'Accuracy':>8}")
            for c in cells:
                r = c.report
                lines.append(
                    f"{c.family.value:<14} {c.kind.value:<13} "
                    f"{'modified' if c.modified else 'unmodified':<11} "
                    f"{r.precision:>9.3f} {r.recall:>7.3f} {r.f_measure:>9.3f} {r.accuracy:>8.3f}"
                )
            lines.append("")
        if self.overall_performance is not None:
            lines.append(f"overall performance: {self.overall_performance:.2f}")
        return "\n".join(lines) + "\n"


def overall_performance(report: BenchmarkReport) -> float:
    """Best genuineness F-measure times best orientation precision."""
    gen = report.cells(Task.GENUINENESS)
    ori = report.cells(Task.ORIENTATION)
    if not gen or not ori:
        raise EmptyReport("need at least one genuineness and one orientation cell")
    return max(c.report.f_measure for c in gen) * max(c.report.precision for c in ori)


def run_benchmark(corpus_path, folds: int = 5, seed: int = 0,
                  families: Sequence = tuple(Family),
                  kinds: Sequence = tuple(MetricKind),
                  variants: Sequence[bool] = (False, True),
                  hyperparams: Optional[Dict] = None,
                  base_config: MetricConfig = MetricConfig()) -> BenchmarkReport:
    pairs = load_grids(corpus_path)
    genuine = [e for e, _ in pairs if e.genuine]
    for label, count in (("genuine", len(genuine)), ("non_genuine", len(pairs) - len(genuine))):
        if count < folds:
            raise TooFewSamples(f"corpus has {count} {label} tables, need at least {folds}")
    for o in ORIENTATIONS:
        count = sum(e.orientation == o for e in genuine)
        if count < folds:
            raise TooFewSamples(f"corpus has {count} {o} tables, need at least {folds}")

    hyperparams = hyperparams or {}
    report = BenchmarkReport(folds=folds, seed=seed)
    by_task: Dict[Task, List[BenchmarkCell]] = {t: [] for t in Task}
    for kind in kinds:
        for modified in variants:
            cfg = base_config.with_(kind=MetricKind.parse(kind), modified=modified)
            samples = samples_from_grids(pairs, cfg)
            for family in families:
                family = Family.parse(family)
                hp = hyperparams.get(family) or hyperparams.get(family.value)
                for task in Task:
                    r = cross_validate(family, task, samples, folds, hp, seed, cfg)
                    by_task[task].append(BenchmarkCell(task, family, cfg.kind, modified, r))
    fam_order = list(Family)
    kind_order = list(MetricKind)
    for task in Task:
        report.rows.extend(sorted(
            by_task[task],
            key=lambda c: (fam_order.index(c.family), kind_order.index(c.kind), c.modified),
        ))
    report.overall_performance = overall_performance(report)
    return report
