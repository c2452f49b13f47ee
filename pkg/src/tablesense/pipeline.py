"""End-to-end processing: source -> leaf tables -> traces -> verdicts -> RDF."""

from __future__ import annotations

import json
import os
import re
import urllib.parse
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .classifiers import Model, Task, predict, train
from .corpus import CorpusEntry, load_corpus, read_entries, write_entries
from .errors import (
    DegenerateTable,
    IncompatibleModels,
    ModelFormatError,
    UnknownTable,
)
from .extraction import CellGrid, SourceDocument, fetch_source, normalize_grid, parse_document
from .heuristics import TableTrace, compute_trace
from .rdf import TripleSet, check_base_uri, serialize_turtle, to_triples
from .similarity import MetricConfig

GENUINENESS_MODEL_FILE = "genuineness.model.json"
ORIENTATION_MODEL_FILE = "orientation.model.json"
DEFAULT_BASE_URI = "http://example.org/tables/"


@dataclass(frozen=True)
class PipelineConfig:
    metric_config: MetricConfig
    genuineness_model: Model
    orientation_model: Model
    base_uri: str = DEFAULT_BASE_URI
    fetch_timeout: float = 10.0

    def __post_init__(self):
        check_base_uri(self.base_uri)
        check_model_pair(self.genuineness_model, self.orientation_model, self.metric_config)

    @classmethod
    def from_models(cls, genuineness_model: Model, orientation_model: Model, **kw) -> "PipelineConfig":
        return cls(genuineness_model.metric_config, genuineness_model, orientation_model, **kw)


def check_model_pair(gen: Model, ori: Model, cfg: Optional[MetricConfig] = None) -> None:
    if gen.task is not Task.GENUINENESS:
        raise IncompatibleModels(f"genuineness slot holds a {gen.task.value} model")
    if ori.task is not Task.ORIENTATION:
        raise IncompatibleModels(f"orientation slot holds a {ori.task.value} model")
    if gen.dimension != ori.dimension:
        raise IncompatibleModels("models expect different feature dimensions")
    if gen.metric_config != ori.metric_config:
        raise IncompatibleModels(
            f"models were trained with different metrics "
            f"({gen.metric_config.label()} vs {ori.metric_config.label()})"
        )
    if cfg is not None and cfg != gen.metric_config:
        raise IncompatibleModels(
            f"models were trained with {gen.metric_config.to_dict()}, pipeline uses {cfg.to_dict()}"
        )


def save_models(directory, gen: Model, ori: Model) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    gen.save(directory / GENUINENESS_MODEL_FILE)
    ori.save(directory / ORIENTATION_MODEL_FILE)


def load_models(directory) -> Tuple[Model, Model]:
    directory = Path(directory)
    try:
        gen = Model.load(directory / GENUINENESS_MODEL_FILE)
        ori = Model.load(directory / ORIENTATION_MODEL_FILE)
    except FileNotFoundError as exc:
        raise IncompatibleModels(f"missing model file: {exc.filename}") from exc
    except ModelFormatError as exc:
        raise IncompatibleModels(str(exc)) from exc
    check_model_pair(gen, ori)
    return gen, ori


@dataclass(frozen=True)
class ProcessedTable:
    source: Tuple[str, int]
    trace: Optional[TableTrace]
    verdict: str  # "genuine" | "non_genuine"
    orientation: Optional[str] = None
    triples: Optional[TripleSet] = None
    message: str = ""
    grid: Optional[CellGrid] = None

    @property
    def genuine(self) -> bool:
        return self.verdict == "genuine"

    def report_record(self) -> dict:
        return {
            "document_uri": self.source[0],
            "table_index": self.source[1],
            "verdict": self.verdict,
            "orientation": self.orientation,
            "trace": dict(zip(("max_sim_hor", "max_sim_vert", "avg_sim_hor", "avg_sim_vert"),
                              self.trace.values())) if self.trace else None,
            "triples": len(self.triples) if self.triples is not None else 0,
            "message": self.message,
        }

    def report_line(self) -> str:
        return json.dumps(self.report_record(), ensure_ascii=False)


def classify_grid(grid: CellGrid, cfg: PipelineConfig) -> ProcessedTable:
    trace = compute_trace(grid, cfg.metric_config)
    where = f"table {grid.source[1]} of {grid.source[0]}"
    gen_model = cfg.genuineness_model
    if predict(gen_model, trace.values()) != "genuine":
        return ProcessedTable(
            grid.source, trace, "non_genuine",
            message=f"{where} is not genuine according to the {gen_model.family.value} classifier",
            grid=grid,
        )
    orientation = predict(cfg.orientation_model, trace.values())
    triples = to_triples(grid, orientation, cfg.base_uri)
    return ProcessedTable(
        grid.source, trace, "genuine", orientation, triples,
        message=f"{where} is genuine ({orientation}); {len(triples)} triples",
        grid=grid,
    )


def process_document(doc: SourceDocument, cfg: PipelineConfig) -> List[ProcessedTable]:
    results = []
    for raw in parse_document(doc):
        try:
            grid = normalize_grid(raw)
        except DegenerateTable as exc:
            results.append(ProcessedTable(raw.source, None, "non_genuine", message=str(exc)))
            continue
        results.append(classify_grid(grid, cfg))
    return results


def process_source(uri: str, cfg: PipelineConfig) -> List[ProcessedTable]:
    return process_document(fetch_source(uri, cfg.fetch_timeout), cfg)


def document_slug(uri: str) -> str:
    parts = urllib.parse.urlsplit(uri)
    if parts.scheme in ("http", "https"):
        stem = parts.netloc + "-" + parts.path
    else:
        stem = Path(parts.path if parts.scheme == "file" else uri).stem
    return re.sub(r"[^a-z0-9]+", "-", stem.lower()).strip("-") or "document"


def write_outputs(results: Sequence[ProcessedTable], out_dir) -> List[Path]:
    """Write one Turtle file per genuine table plus ``report.jsonl``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for r in results:
        if r.triples is None:
            continue
        path = out_dir / f"{document_slug(r.source[0])}-table{r.source[1]}.ttl"
        path.write_text(serialize_turtle(r.triples), encoding="utf-8")
        written.append(path)
    with open(out_dir / "report.jsonl", "w", encoding="utf-8") as fh:
        for r in results:
            fh.write(r.report_line() + "\n")
    return written


# -- relabelling ------------------------------------------------------------

def _corpus_relative(corpus_path, document_uri: str) -> str:
    if "://" in document_uri:
        return document_uri
    base = Path(corpus_path).resolve().parent
    target = Path(document_uri).resolve()
    try:
        return target.relative_to(base).as_posix()
    except ValueError:
        return str(target)


def retrain(corpus_path, cfg: PipelineConfig) -> Tuple[Model, Model]:
    samples = load_corpus(corpus_path, cfg.metric_config)
    gen_m, ori_m = cfg.genuineness_model, cfg.orientation_model
    gen = train(gen_m.family, Task.GENUINENESS, samples, gen_m.hyperparams, cfg.metric_config)
    ori = train(ori_m.family, Task.ORIENTATION, [s for s in samples if s.genuine],
                ori_m.hyperparams, cfg.metric_config)
    return gen, ori


def relabel_and_retrain(sample_source: Tuple[str, int], genuine: bool, orientation: Optional[str],
                        corpus_path, cfg: PipelineConfig, model_dir=None) -> Tuple[Model, Model]:
    """Record a user's label for one table, then retrain both models from scratch.

    The corpus file is rewritten only when the label actually changes.  If
    ``model_dir`` is given the retrained pair is persisted there.
    """
    document_uri, index = sample_source
    if genuine and orientation not in ("horizontal", "vertical"):
        raise ValueError("a genuine label needs an orientation")
    if not genuine:
        orientation = None

    tables = parse_document(fetch_source(document_uri, cfg.fetch_timeout))
    if not 0 <= index < len(tables):
        raise UnknownTable(f"{document_uri} has {len(tables)} leaf tables; no table {index}")
    try:
        normalize_grid(tables[index])
    except DegenerateTable as exc:
        raise UnknownTable(f"table {index} of {document_uri} cannot be labelled: {exc}") from exc

    corpus_path = Path(corpus_path)
    entries = read_entries(corpus_path) if corpus_path.exists() else []
    rel = _corpus_relative(corpus_path, document_uri)
    target = os.path.normpath(str(corpus_path.parent / rel))
    new_entry = CorpusEntry(rel, index, genuine, orientation)

    updated, replaced = [], False
    for e in entries:
        same = (os.path.normpath(str(corpus_path.parent / e.document_path)) == target
                and e.table_index == index)
        if same:
            replaced = True
            updated.append(CorpusEntry(e.document_path, index, genuine, orientation))
        else:
            updated.append(e)
    if not replaced:
        updated.append(new_entry)
    if updated != entries or not corpus_path.exists():
        write_entries(corpus_path, updated)

    gen, ori = retrain(corpus_path, cfg)
    if model_dir is not None:
        save_models(model_dir, gen, ori)
    return gen, ori
