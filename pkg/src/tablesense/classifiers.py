"""Binary classifiers for the genuineness and orientation decisions.

Four families are implemented directly on numpy: Gaussian naive Bayes, a
CART-style decision tree, k-nearest neighbours and a linear SVM trained by
sub-gradient descent.  A trained :class:`Model` is an immutable record of
learned parameters that serializes to a versioned JSON document.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyTestSet,
    EmptyTrainingSet,
    ModelFormatError,
    SingleClassTraining,
    TooFewSamples,
)
from .similarity import MetricConfig

MODEL_FORMAT = "tablesense-model"
MODEL_VERSION = 1


class Family(str, enum.Enum):
    NAIVE_BAYES = "naive-bayes"
    DECISION_TREE = "decision-tree"
    KNN = "knn"
    SVM = "svm"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"nb": "naive-bayes", "bayes": "naive-bayes", "naivebayes": "naive-bayes",
                   "tree": "decision-tree", "decisiontree": "decision-tree", "dt": "decision-tree"}
        key = aliases.get(key, key)
        for fam in cls:
            if fam.value == key:
                return fam
        raise ValueError(f"unknown classifier family {value!r}")


class Task(str, enum.Enum):
    GENUINENESS = "genuineness"
    ORIENTATION = "orientation"

    @classmethod
    def parse(cls, value) -> "Task":
        return value if isinstance(value, cls) else cls(str(value).strip().lower())

    @property
    def labels(self) -> Tuple[str, str]:
        """(positive, negative) label names."""
        if self is Task.GENUINENESS:
            return ("genuine", "non_genuine")
        return ("horizontal", "vertical")

    @property
    def positive(self) -> str:
        return self.labels[0]


ORIENTATIONS = ("horizontal", "vertical")

DEFAULT_HYPERPARAMS: Dict[Family, dict] = {
    Family.NAIVE_BAYES: {"var_floor": 1e-9},
    Family.DECISION_TREE: {"max_depth": 8, "min_leaf": 2},
    Family.KNN: {"k": 5},
    Family.SVM: {"epochs": 200, "lam": 1e-3, "eta0": 1.0, "seed": 0},
}


@dataclass(frozen=True)
class LabeledSample:
    features: Tuple[float, ...]
    genuine: bool
    orientation: Optional[str] = None
    source: Tuple[str, int] = ("", 0)

    def __post_init__(self):
        feats = tuple(float(v) for v in self.features)
        if not all(math.isfinite(v) for v in feats):
            raise ValueError(f"non-finite feature value in {feats}")
        object.__setattr__(self, "features", feats)
        if self.genuine and self.orientation not in ORIENTATIONS:
            raise ValueError("a genuine sample needs an orientation (horizontal or vertical)")
        if not self.genuine and self.orientation is not None:
            raise ValueError("a non-genuine sample cannot carry an orientation")

    def label(self, task: Task) -> str:
        if task is Task.GENUINENESS:
            return "genuine" if self.genuine else "non_genuine"
        if self.orientation is None:
            raise ValueError("orientation label requested for a non-genuine sample")
        return self.orientation


@dataclass(frozen=True)
class Model:
    family: Family
    task: Task
    parameters: dict
    metric_config: MetricConfig = field(default_factory=MetricConfig)
    hyperparams: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return int(self.parameters["dimension"])

    def predict(self, x: Sequence[float]) -> str:
        return predict(self, x)

    # -- persistence --

    def to_json(self) -> str:
        record = {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "family": self.family.value,
            "task": self.task.value,
            "metric_config": self.metric_config.to_dict(),
            "hyperparams": self.hyperparams,
            "parameters": self.parameters,
        }
        return json.dumps(record, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Model":
        try:
            record = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"model file is not valid JSON: {exc}") from exc
        if record.get("format") != MODEL_FORMAT:
            raise ModelFormatError(f"unexpected format tag {record.get('format')!r}")
        if record.get("version") != MODEL_VERSION:
            raise ModelFormatError(f"unsupported model version {record.get('version')!r}")
        try:
            return cls(
                family=Family.parse(record["family"]),
                task=Task.parse(record["task"]),
                parameters=record["parameters"],
                metric_config=MetricConfig.from_dict(record["metric_config"]),
                hyperparams=record.get("hyperparams", {}),
            )
        except (KeyError, ValueError) as exc:
            raise ModelFormatError(f"malformed model record: {exc}") from exc

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path) -> "Model":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f_measure: float
    accuracy: float
    confusion: Tuple[Tuple[int, int], Tuple[int, int]]  # ((TP, FN), (FP, TN))
    positive_class: str
    folds: Tuple["EvalReport", ...] = ()

    @property
    def total(self) -> int:
        return sum(sum(r) for r in self.confusion)

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int, tn: int, positive_class: str) -> "EvalReport":
        total = tp + fp + fn + tn
        if total == 0:
            raise EmptyTestSet("cannot evaluate on an empty test set")
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        return cls(
            precision=p,
            recall=r,
            f_measure=f_measure(p, r),
            accuracy=(tp + tn) / total,
            confusion=((tp, fn), (fp, tn)),
            positive_class=positive_class,
        )

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f_measure": self.f_measure,
            "accuracy": self.accuracy,
            "confusion": [list(r) for r in self.confusion],
            "positive_class": self.positive_class,
        }


def f_measure(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


# -- training ---------------------------------------------------------------

def _design(samples: Sequence[LabeledSample], task: Task):
    if not samples:
        raise EmptyTrainingSet("no training samples")
    dims = {len(s.features) for s in samples}
    if len(dims) != 1:
        raise DimensionMismatch(f"samples have differing feature lengths {sorted(dims)}")
    if task is Task.ORIENTATION and not all(s.genuine for s in samples):
        raise ValueError("orientation models are trained on genuine samples only")
    X = np.array([s.features for s in samples], dtype=float)
    pos = task.positive
    y = np.array([1 if s.label(task) == pos else -1 for s in samples], dtype=int)
    if len(samples) < 2 or len(set(y.tolist())) < 2:
        raise SingleClassTraining(f"{task.value} training needs both classes present")
    return X, y


def _train_nb(X, y, hp):
    params = {}
    for cls_sign, name in ((1, "pos"), (-1, "neg")):
        Xc = X[y == cls_sign]
        params[name] = {
            "prior": len(Xc) / len(X),
            "mean": Xc.mean(axis=0).tolist(),
            "var": np.maximum(Xc.var(axis=0), hp["var_floor"]).tolist(),
        }
    return params


def _gini(pos: float, total: float) -> float:
    if total == 0:
        return 0.0
    p = pos / total
    return 2.0 * p * (1.0 - p)


def _best_split(X, y, idx, min_leaf):
    best = None
    n = len(idx)
    total_pos = int(np.sum(y[idx] == 1))
    for f in range(X.shape[1]):
        order = idx[np.argsort(X[idx, f], kind="stable")]
        vals = X[order, f]
        pos_left = 0
        for cut in range(1, n):
            pos_left += y[order[cut - 1]] == 1
            if vals[cut] == vals[cut - 1]:
                continue
            if cut < min_leaf or n - cut < min_leaf:
                continue
            impurity = (cut * _gini(pos_left, cut)
                        + (n - cut) * _gini(total_pos - pos_left, n - cut)) / n
            threshold = (vals[cut - 1] + vals[cut]) / 2.0
            key = (impurity, threshold, f)
            if best is None or key < best:
                best = key
    return best


def _leaf_label(y_node) -> int:
    pos = int(np.sum(y_node == 1))
    return 1 if pos * 2 >= len(y_node) else -1


def _train_tree(X, y, hp):
    max_depth = hp["max_depth"]
    min_leaf = hp["min_leaf"]
    nodes: List[dict] = []

    def build(idx, depth) -> int:
        node_id = len(nodes)
        nodes.append({})
        labels = y[idx]
        pure = np.all(labels == labels[0])
        split = None
        if not pure and (max_depth is None or depth < max_depth):
            split = _best_split(X, y, idx, min_leaf)
        if split is None:
            nodes[node_id] = {"leaf": _leaf_label(labels)}
            return node_id
        _, threshold, f = split
        left = idx[X[idx, f] <= threshold]
        right = idx[X[idx, f] > threshold]
        node = {"feature": int(f), "threshold": float(threshold)}
        node["left"] = build(left, depth + 1)
        node["right"] = build(right, depth + 1)
        nodes[node_id] = node
        return node_id

    build(np.arange(len(y)), 0)
    return {"nodes": nodes}


def _train_svm(X, y, hp):
    """Hinge loss + L2 by SGD; returns the mean iterate over the second half of training."""
    rng = np.random.default_rng(hp["seed"])
    lam, eta0, epochs = hp["lam"], hp["eta0"], hp["epochs"]
    w = np.zeros(X.shape[1])
    w0 = 0.0
    w_avg = np.zeros_like(w)
    w0_avg = 0.0
    t = averaged = 0
    for epoch in range(epochs):
        for i in rng.permutation(len(y)):
            eta = eta0 / (1.0 + eta0 * lam * t)
            t += 1
            margin = y[i] * (X[i] @ w - w0)
            w *= 1.0 - eta * lam
            if margin < 1.0:
                w += eta * y[i] * X[i]
                w0 -= eta * y[i]
            if epoch >= epochs // 2:
                averaged += 1
                w_avg += (w - w_avg) / averaged
                w0_avg += (w0 - w0_avg) / averaged
    return {"w": w_avg.tolist(), "w0": float(w0_avg)}


def train(family, task, samples: Sequence[LabeledSample], hyperparams: Optional[dict] = None,
          metric_config: Optional[MetricConfig] = None) -> Model:
    family, task = Family.parse(family), Task.parse(task)
    hp = dict(DEFAULT_HYPERPARAMS[family])
    if hyperparams:
        unknown = set(hyperparams) - set(hp)
        if unknown:
            raise ValueError(f"unknown {family.value} hyperparameters: {sorted(unknown)}")
        hp.update(hyperparams)
    X, y = _design(samples, task)

    if family is Family.NAIVE_BAYES:
        params = _train_nb(X, y, hp)
    elif family is Family.DECISION_TREE:
        params = _train_tree(X, y, hp)
    elif family is Family.KNN:
        if hp["k"] < 1:
            raise ValueError("k must be >= 1")
        params = {"X": X.tolist(), "y": y.tolist()}
    else:
        params = _train_svm(X, y, hp)
    params["dimension"] = X.shape[1]
    return Model(family=family, task=task, parameters=params,
                 metric_config=metric_config or MetricConfig(), hyperparams=hp)


# -- prediction -------------------------------------------------------------

def _log_gaussian(x, mean, var):
    return -0.5 * np.sum(np.log(2.0 * np.pi * var) + (x - mean) ** 2 / var)


def _decide_nb(p, x) -> int:
    scores = {}
    for sign, name in ((1, "pos"), (-1, "neg")):
        c = p[name]
        scores[sign] = math.log(c["prior"]) + _log_gaussian(x, np.array(c["mean"]), np.array(c["var"]))
    return 1 if scores[1] >= scores[-1] else -1


def _decide_tree(p, x) -> int:
    nodes = p["nodes"]
    node = nodes[0]
    while "leaf" not in node:
        node = nodes[node["left"] if x[node["feature"]] <= node["threshold"] else node["right"]]
    return node["leaf"]


def _decide_knn(p, x, k) -> int:
    X = np.asarray(p["X"], dtype=float)
    y = np.asarray(p["y"], dtype=int)
    dist = np.sqrt(np.sum((X - x) ** 2, axis=1))
    nearest = np.lexsort((np.arange(len(dist)), dist))[: min(k, len(dist))]
    votes = {1: 0, -1: 0}
    spread = {1: 0.0, -1: 0.0}
    for i in nearest:
        votes[int(y[i])] += 1
        spread[int(y[i])] += float(dist[i])
    if votes[1] != votes[-1]:
        return 1 if votes[1] > votes[-1] else -1
    if spread[1] != spread[-1]:
        return 1 if spread[1] < spread[-1] else -1
    return 1


def svm_score(model: Model, x: Sequence[float]) -> float:
    return float(np.dot(np.asarray(x, dtype=float), np.asarray(model.parameters["w"])) - model.parameters["w0"])


def decide(model: Model, x: Sequence[float]) -> int:
    """Return +1 for the task's positive class and -1 otherwise."""
    x = np.asarray(x, dtype=float)
    if x.shape != (model.dimension,):
        raise DimensionMismatch(f"expected {model.dimension} features, got {x.shape[0] if x.ndim else 0}")
    p = model.parameters
    if model.family is Family.NAIVE_BAYES:
        return _decide_nb(p, x)
    if model.family is Family.DECISION_TREE:
        return _decide_tree(p, x)
    if model.family is Family.KNN:
        return _decide_knn(p, x, int(model.hyperparams.get("k", 5)))
    return 1 if svm_score(model, x) >= 0 else -1


def predict(model: Model, x: Sequence[float]) -> str:
    pos, neg = model.task.labels
    return pos if decide(model, x) == 1 else neg


# -- evaluation -------------------------------------------------------------

def evaluate(model: Model, test: Sequence[LabeledSample]) -> EvalReport:
    if not test:
        raise EmptyTestSet("cannot evaluate on an empty test set")
    pos = model.task.positive
    tp = fp = fn = tn = 0
    for s in test:
        actual = s.label(model.task) == pos
        predicted = predict(model, s.features) == pos
        if actual and predicted:
            tp += 1
        elif actual:
            fn += 1
        elif predicted:
            fp += 1
        else:
            tn += 1
    return EvalReport.from_counts(tp, fp, fn, tn, pos)


def stratified_folds(labels: Sequence[str], folds: int, seed: int) -> List[List[int]]:
    rng = np.random.default_rng(seed)
    out: List[List[int]] = [[] for _ in range(folds)]
    for label in sorted(set(labels)):
        members = [i for i, lab in enumerate(labels) if lab == label]
        for rank, i in enumerate(rng.permutation(members)):
            out[rank % folds].append(int(i))
    return [sorted(f) for f in out]


def cross_validate(family, task, samples: Sequence[LabeledSample], folds: int = 5,
                   hyperparams: Optional[dict] = None, seed: int = 0,
                   metric_config: Optional[MetricConfig] = None) -> EvalReport:
    """Stratified k-fold cross-validation.

    Precision, recall and accuracy are averaged over folds; the F-measure is
    recomputed from the averaged precision and recall, and the confusion
    counts are summed, so the result is internally consistent.
    """
    task = Task.parse(task)
    if folds < 2:
        raise ValueError("folds must be >= 2")
    if task is Task.ORIENTATION:
        samples = [s for s in samples if s.genuine]
    labels = [s.label(task) for s in samples]
    for lab in task.labels:
        count = labels.count(lab)
        if count < folds:
            raise TooFewSamples(
                f"{task.value}: class {lab!r} has {count} samples, fewer than {folds} folds"
            )
    per_fold = []
    for test_idx in stratified_folds(labels, folds, seed):
        held = set(test_idx)
        train_set = [s for i, s in enumerate(samples) if i not in held]
        model = train(family, task, train_set, hyperparams, metric_config)
        per_fold.append(evaluate(model, [samples[i] for i in test_idx]))

    p = float(np.mean([r.precision for r in per_fold]))
    r = float(np.mean([r.recall for r in per_fold]))
    confusion = tuple(
        tuple(sum(rep.confusion[a][b] for rep in per_fold) for b in range(2)) for a in range(2)
    )
    return EvalReport(
        precision=p,
        recall=r,
        f_measure=f_measure(p, r),
        accuracy=float(np.mean([rep.accuracy for rep in per_fold])),
        confusion=confusion,
        positive_class=task.positive,
        folds=tuple(per_fold),
    )
