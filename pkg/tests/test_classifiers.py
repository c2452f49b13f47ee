import json

import numpy as np
import pytest

from conftest import separable_set
from tablesense.classifiers import (
    EvalReport,
    Family,
    LabeledSample,
    Model,
    Task,
    cross_validate,
    decide,
    evaluate,
    f_measure,
    predict,
    stratified_folds,
    svm_score,
    train,
)
from tablesense.errors import (
    DimensionMismatch,
    EmptyTestSet,
    EmptyTrainingSet,
    ModelFormatError,
    SingleClassTraining,
    TooFewSamples,
)
from tablesense.similarity import MetricConfig, MetricKind

G = Task.GENUINENESS
FULL_TREE = {"max_depth": None, "min_leaf": 1}


def sample(x, genuine, orientation="horizontal"):
    return LabeledSample(tuple(x), genuine, orientation if genuine else None)


@pytest.fixture(scope="module")
def blobs():
    return separable_set(seed=0)


@pytest.mark.parametrize("family", list(Family))
def test_training_accuracy_on_separable_set(family, blobs):
    hp = FULL_TREE if family is Family.DECISION_TREE else None
    model = train(family, G, blobs, hp)
    assert evaluate(model, blobs).accuracy == 1.0


def test_knn_stores_training_set(blobs):
    model = train(Family.KNN, G, blobs, {"k": 1})
    assert np.allclose(model.parameters["X"], [s.features for s in blobs])
    for s in blobs:
        assert predict(model, s.features) == s.label(G)


def test_svm_decision_is_sign_of_score(blobs):
    model = train(Family.SVM, G, blobs)
    rng = np.random.default_rng(1)
    w, w0 = np.array(model.parameters["w"]), model.parameters["w0"]
    for x in rng.uniform(-0.5, 1.5, (500, 4)):
        assert decide(model, x) == (1 if x @ w - w0 >= 0 else -1)
        assert svm_score(model, x) == pytest.approx(x @ w - w0)


def test_svm_hand_weights():
    model = Model(Family.SVM, G, {"w": [1, 0, 0, 0], "w0": 0.5, "dimension": 4})
    assert predict(model, (0.9, 0, 0, 0)) == "genuine"
    assert predict(model, (0.4, 0, 0, 0)) == "non_genuine"


def test_nb_query_at_blob_mean(blobs):
    model = train(Family.NAIVE_BAYES, G, blobs)
    assert predict(model, model.parameters["pos"]["mean"]) == "genuine"
    assert predict(model, model.parameters["neg"]["mean"]) == "non_genuine"


def test_tree_threshold_goes_left():
    data = [sample((0.0,), False), sample((0.2,), False), sample((0.8,), True), sample((1.0,), True)]
    model = train(Family.DECISION_TREE, G, data, FULL_TREE)
    root = model.parameters["nodes"][0]
    assert root["threshold"] == pytest.approx(0.5)
    assert predict(model, (0.5,)) == "non_genuine"
    assert predict(model, (0.5000001,)) == "genuine"


def test_training_errors():
    with pytest.raises(EmptyTrainingSet):
        train(Family.KNN, G, [])
    with pytest.raises(SingleClassTraining):
        train(Family.SVM, G, [sample((0.1, 0.2), True), sample((0.3, 0.1), True)])
    with pytest.raises(DimensionMismatch):
        train(Family.KNN, G, [sample((0.1, 0.2), True), sample((0.3,), False)])
    with pytest.raises(ValueError):
        train(Family.KNN, G, [sample((0.1,), True), sample((0.3,), False)], {"depth": 3})


def test_predict_dimension_check(blobs):
    model = train(Family.NAIVE_BAYES, G, blobs)
    with pytest.raises(DimensionMismatch):
        predict(model, (0.1, 0.2))


def test_orientation_labels():
    data = [sample((0.9, 0.1), True, "horizontal"), sample((0.1, 0.9), True, "vertical")] * 3
    model = train(Family.KNN, Task.ORIENTATION, data, {"k": 1})
    assert predict(model, (0.8, 0.2)) == "horizontal"
    assert predict(model, (0.2, 0.8)) == "vertical"


def test_eval_report_hand_arithmetic():
    r = EvalReport.from_counts(tp=93, fp=7, fn=47, tn=53, positive_class="genuine")
    assert r.precision == pytest.approx(0.93)
    assert r.recall == pytest.approx(93 / 140)
    assert r.f_measure == pytest.approx(2 * 0.93 * (93 / 140) / (0.93 + 93 / 140))
    assert r.f_measure == pytest.approx(0.775, abs=0.001)
    assert r.total == 200
    perfect = EvalReport.from_counts(5, 0, 0, 5, "genuine")
    assert (perfect.precision, perfect.recall, perfect.f_measure) == (1.0, 1.0, 1.0)
    with pytest.raises(EmptyTestSet):
        EvalReport.from_counts(0, 0, 0, 0, "genuine")


def test_reported_cell_f_measure():
    assert f_measure(0.943, 0.667) == pytest.approx(0.78, abs=0.005)


def test_stratified_folds_two_by_two():
    labels = ["genuine", "genuine", "non_genuine", "non_genuine"]
    folds = stratified_folds(labels, 2, seed=4)
    for fold in folds:
        assert sorted(labels[i] for i in fold) == ["genuine", "non_genuine"]
    assert sorted(i for f in folds for i in f) == [0, 1, 2, 3]


@pytest.mark.parametrize("family", list(Family))
def test_cross_validation_consistency(family, blobs):
    a = cross_validate(family, G, blobs, folds=5, seed=3)
    b = cross_validate(family, G, blobs, folds=5, seed=3)
    assert a == b
    assert a.f_measure * (a.precision + a.recall) == pytest.approx(2 * a.precision * a.recall, abs=1e-9)
    assert a.total == len(blobs)
    assert len(a.folds) == 5


def test_cross_validation_needs_enough_samples():
    data = [sample((0.1,), True), sample((0.2,), False), sample((0.3,), False)]
    with pytest.raises(TooFewSamples):
        cross_validate(Family.KNN, G, data, folds=2)


@pytest.mark.parametrize("family", list(Family))
def test_model_json_round_trip(family, blobs, tmp_path):
    cfg = MetricConfig(kind=MetricKind.NGRAM, modified=True)
    model = train(family, G, blobs, metric_config=cfg)
    path = tmp_path / "m.json"
    model.save(path)
    again = Model.load(path)
    assert again.metric_config == cfg
    assert again.family is family
    probes = np.random.default_rng(2).uniform(0, 1, (100, 4))
    assert [predict(model, x) for x in probes] == [predict(again, x) for x in probes]


def test_model_format_errors():
    with pytest.raises(ModelFormatError):
        Model.from_json("not json")
    with pytest.raises(ModelFormatError):
        Model.from_json(json.dumps({"format": "other", "version": 1}))


def test_sample_validation():
    with pytest.raises(ValueError):
        LabeledSample((0.1,), True, None)
    with pytest.raises(ValueError):
        LabeledSample((0.1,), False, "vertical")
    with pytest.raises(ValueError):
        LabeledSample((float("nan"),), False)
