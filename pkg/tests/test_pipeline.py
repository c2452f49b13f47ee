import shutil

import pytest

from conftest import write_page
from tablesense.classifiers import Family, Task, predict, train
from tablesense.corpus import load_corpus, read_entries
from tablesense.errors import IncompatibleModels, UnknownTable
from tablesense.pipeline import (
    PipelineConfig,
    document_slug,
    load_models,
    process_source,
    relabel_and_retrain,
    save_models,
    write_outputs,
)
from tablesense.similarity import MetricConfig, MetricKind

CFG = MetricConfig(modified=True)
KNN1 = {"k": 1}


@pytest.fixture(scope="module")
def models(request):
    from conftest import CORPUS
    samples = load_corpus(CORPUS, CFG)
    gen = train(Family.KNN, Task.GENUINENESS, samples, KNN1, CFG)
    ori = train(Family.KNN, Task.ORIENTATION, [s for s in samples if s.genuine], KNN1, CFG)
    return gen, ori


@pytest.fixture
def pipeline(models):
    return PipelineConfig.from_models(*models, base_uri="http://example.org/t/")


@pytest.fixture
def corpus_copy(tmp_path, corpus):
    shutil.copytree(corpus.parent, tmp_path / "corpus")
    return tmp_path / "corpus" / corpus.name


MIXED = """<html><body>
<table><tr><td><a href="/a">Home</a></td><td><a href="/b">News</a></td><td><a href="/c">About us</a></td>
<td><a href="/d">Contact</a></td></tr></table>
<table>
<tr><th>Name</th><th>City</th><th>Phone</th><th>e-mail</th></tr>
<tr><td>Ivanov I. I.</td><td>Berlin</td><td>1112233</td><td>ivanov@mail.de</td></tr>
<tr><td>Petrov P.P</td><td>Berlin</td><td>2223344</td><td>petrov@mail.de</td></tr>
<tr><td>Sidorov S. S.</td><td>Moscow</td><td>3334455</td><td>sidorov@ya.ru</td></tr>
</table></body></html>"""


def test_mixed_page(tmp_path, pipeline):
    path = write_page(tmp_path, "mixed.html", MIXED)
    layout, data = process_source(str(path), pipeline)
    assert layout.verdict == "non_genuine" and layout.triples is None
    assert layout.trace is None  # a single row is below the 2x2 minimum
    assert data.verdict == "genuine" and data.orientation == "horizontal"
    assert len(data.triples) == 3 * 5

    written = write_outputs([layout, data], tmp_path / "out")
    assert [p.name for p in written] == ["mixed-table1.ttl"]
    report = (tmp_path / "out" / "report.jsonl").read_text().splitlines()
    assert len(report) == 2


def test_zero_tables(tmp_path, pipeline):
    path = write_page(tmp_path, "none.html", "<p>no tables here</p>")
    assert process_source(str(path), pipeline) == []


def test_contacts_page(pages, pipeline):
    (result,) = process_source(str(pages / "contacts.html"), pipeline)
    assert (result.verdict, result.orientation, len(result.triples)) == ("genuine", "horizontal", 20)


def test_results_in_document_order(pages, pipeline):
    results = process_source(str(pages / "countries.html"), pipeline)
    assert [r.source[1] for r in results] == list(range(len(results)))


def test_metric_mismatch_is_rejected(models):
    with pytest.raises(IncompatibleModels):
        PipelineConfig(MetricConfig(kind=MetricKind.NGRAM), *models)
    gen, ori = models
    with pytest.raises(IncompatibleModels):
        PipelineConfig.from_models(ori, gen)


def test_model_pair_persistence(tmp_path, models):
    save_models(tmp_path, *models)
    gen, ori = load_models(tmp_path)
    assert gen.parameters == models[0].parameters
    with pytest.raises(IncompatibleModels):
        load_models(tmp_path / "empty")


def test_document_slug():
    assert document_slug("/x/Big_Report.html") == "big-report"
    assert document_slug("https://example.org/a/b.html") == "example-org-a-b-html"


def non_genuine_entry(corpus_path):
    return next(e for e in read_entries(corpus_path) if not e.genuine)


def test_relabel_as_genuine(corpus_copy, pipeline, tmp_path):
    entry = non_genuine_entry(corpus_copy)
    doc = str(corpus_copy.parent / entry.document_path)
    before = read_entries(corpus_copy)
    gen, ori = relabel_and_retrain((doc, entry.table_index), True, "horizontal", corpus_copy, pipeline,
                                   model_dir=tmp_path / "m")
    after = read_entries(corpus_copy)
    assert sum(e.genuine for e in after) == sum(e.genuine for e in before) + 1
    assert len(after) == len(before)
    (result,) = [r for r in process_source(doc, pipeline) if r.source[1] == entry.table_index]
    assert predict(gen, result.trace.values()) == "genuine"
    assert (tmp_path / "m" / "genuineness.model.json").exists()


def test_relabel_with_same_label_is_idempotent(corpus_copy, pipeline):
    entry = non_genuine_entry(corpus_copy)
    doc = str(corpus_copy.parent / entry.document_path)
    before = corpus_copy.read_bytes()
    mtime = corpus_copy.stat().st_mtime_ns
    first = relabel_and_retrain((doc, entry.table_index), False, None, corpus_copy, pipeline)
    second = relabel_and_retrain((doc, entry.table_index), False, None, corpus_copy, pipeline)
    assert corpus_copy.read_bytes() == before
    assert corpus_copy.stat().st_mtime_ns == mtime
    assert first == second


def test_relabel_new_table_appends(tmp_path, corpus_copy, pipeline):
    page = write_page(corpus_copy.parent / "pages", "extra.html", MIXED)
    relabel_and_retrain((str(page), 1), True, "horizontal", corpus_copy, pipeline)
    last = read_entries(corpus_copy)[-1]
    assert (last.document_path, last.table_index, last.orientation) == ("pages/extra.html", 1, "horizontal")


def test_relabel_unknown_index(corpus_copy, pipeline):
    entry = non_genuine_entry(corpus_copy)
    doc = str(corpus_copy.parent / entry.document_path)
    with pytest.raises(UnknownTable):
        relabel_and_retrain((doc, 99), False, None, corpus_copy, pipeline)
