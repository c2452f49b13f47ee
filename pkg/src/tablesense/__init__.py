"""Web table extraction, genuineness/orientation classification and RDF export."""

__version__ = "0.1.0"

from .classifiers import (
    EvalReport,
    Family,
    LabeledSample,
    Model,
    Task,
    cross_validate,
    evaluate,
    predict,
    train,
)
from .corpus import BenchmarkReport, CorpusEntry, load_corpus, overall_performance, run_benchmark
from .extraction import CellGrid, RawTable, SourceDocument, fetch_source, normalize_grid, parse_document
from .heuristics import TableTrace, avg_sim_hor, avg_sim_vert, compute_trace, max_sim_hor, max_sim_vert
from .pipeline import PipelineConfig, ProcessedTable, process_source, relabel_and_retrain
from .rdf import TripleSet, serialize_turtle, to_triples
from .similarity import (
    MetricConfig,
    MetricKind,
    canonicalize_cell,
    jaro_winkler,
    levenshtein_distance,
    levenshtein_similarity,
    ngram_similarity,
    similarity,
)
