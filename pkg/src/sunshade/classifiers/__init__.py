"""Twelve binary classifiers behind one train/predict contract.

Every method consumes a numeric matrix and integer labels {0, 1}
(0 = shade, 1 = sun) and fits with documented default hyperparameters.
`TrainedModel` bundles the fitted method with its standardizer stats and
feature mask, and serializes to a versioned JSON document that restores a
bit-identical predictor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from sunshade.classifiers.bayes import GaussianNBModel
from sunshade.classifiers.boost import AdaBoostModel
from sunshade.classifiers.linear import LdaModel, LogisticModel, QdaModel
from sunshade.classifiers.neighbors import KnnModel
from sunshade.classifiers.svm import SvmModel
from sunshade.classifiers.tree import DecisionTreeModel, RandomForestModel
from sunshade.errors import (DimensionError, NonFiniteError,
                             SingleClassError)
from sunshade.features import FeatureSetMask, StandardizerStats, \
    standardize_apply

MODEL_FORMAT = "sunshade-model/1"


class ClassifierMethod(Enum):
    SVM_LINEAR = "svm-linear"
    SVM_POLY = "svm-poly"
    SVM_RBF = "svm-rbf"
    SVM_SIGMOID = "svm-sigmoid"
    DECISION_TREE = "decision-tree"
    RANDOM_FOREST = "random-forest"
    LOGISTIC_REGRESSION = "logistic-regression"
    ADABOOST = "adaboost"
    GAUSSIAN_NB = "gaussian-nb"
    K_NEAREST = "k-nearest"
    QDA = "qda"
    LDA = "lda"


# Pretty names used in report tables.
METHOD_TITLES = {
    ClassifierMethod.SVM_RBF: "SVM (RBF)",
    ClassifierMethod.SVM_LINEAR: "SVM (Linear)",
    ClassifierMethod.SVM_POLY: "SVM (Polynomial)",
    ClassifierMethod.SVM_SIGMOID: "SVM (Sigmoid)",
    ClassifierMethod.DECISION_TREE: "Decision Tree",
    ClassifierMethod.RANDOM_FOREST: "Random Forest",
    ClassifierMethod.LOGISTIC_REGRESSION: "Logistic Regression",
    ClassifierMethod.ADABOOST: "AdaBoost",
    ClassifierMethod.GAUSSIAN_NB: "Naive Bayes",
    ClassifierMethod.K_NEAREST: "K-nearest Neighbor",
    ClassifierMethod.QDA: "QDA",
    ClassifierMethod.LDA: "LDA",
}

_SVM_COMMON = {"C": 1.0, "tol": 1e-3, "max_passes": 10000,
               "cache_mb": 384.0}

_DEFAULTS = {
    ClassifierMethod.SVM_LINEAR: dict(_SVM_COMMON),
    ClassifierMethod.SVM_POLY: dict(_SVM_COMMON, gamma="scale", coef0=0.0,
                                    degree=3),
    ClassifierMethod.SVM_RBF: dict(_SVM_COMMON, gamma="scale"),
    ClassifierMethod.SVM_SIGMOID: dict(_SVM_COMMON, gamma="scale",
                                       coef0=0.0),
    ClassifierMethod.DECISION_TREE: {"min_samples_split": 2},
    ClassifierMethod.RANDOM_FOREST: {"n_trees": 100,
                                     "max_features": "sqrt",
                                     "min_samples_split": 2},
    ClassifierMethod.LOGISTIC_REGRESSION: {"C": 1.0, "tol": 1e-6,
                                           "max_iter": 100},
    ClassifierMethod.ADABOOST: {"n_estimators": 50},
    ClassifierMethod.GAUSSIAN_NB: {"var_smoothing": 1e-9},
    ClassifierMethod.K_NEAREST: {"k": 5},
    ClassifierMethod.QDA: {"ridge": 1e-6},
    ClassifierMethod.LDA: {},
}

_FITTERS = {
    ClassifierMethod.SVM_LINEAR:
        lambda X, y, h, s: SvmModel.fit(X, y, h, s, "linear"),
    ClassifierMethod.SVM_POLY:
        lambda X, y, h, s: SvmModel.fit(X, y, h, s, "poly"),
    ClassifierMethod.SVM_RBF:
        lambda X, y, h, s: SvmModel.fit(X, y, h, s, "rbf"),
    ClassifierMethod.SVM_SIGMOID:
        lambda X, y, h, s: SvmModel.fit(X, y, h, s, "sigmoid"),
    ClassifierMethod.DECISION_TREE: DecisionTreeModel.fit,
    ClassifierMethod.RANDOM_FOREST: RandomForestModel.fit,
    ClassifierMethod.LOGISTIC_REGRESSION: LogisticModel.fit,
    ClassifierMethod.ADABOOST: AdaBoostModel.fit,
    ClassifierMethod.GAUSSIAN_NB: GaussianNBModel.fit,
    ClassifierMethod.K_NEAREST: KnnModel.fit,
    ClassifierMethod.QDA: QdaModel.fit,
    ClassifierMethod.LDA: LdaModel.fit,
}

_STATE_CLASSES = {
    ClassifierMethod.SVM_LINEAR: SvmModel,
    ClassifierMethod.SVM_POLY: SvmModel,
    ClassifierMethod.SVM_RBF: SvmModel,
    ClassifierMethod.SVM_SIGMOID: SvmModel,
    ClassifierMethod.DECISION_TREE: DecisionTreeModel,
    ClassifierMethod.RANDOM_FOREST: RandomForestModel,
    ClassifierMethod.LOGISTIC_REGRESSION: LogisticModel,
    ClassifierMethod.ADABOOST: AdaBoostModel,
    ClassifierMethod.GAUSSIAN_NB: GaussianNBModel,
    ClassifierMethod.K_NEAREST: KnnModel,
    ClassifierMethod.QDA: QdaModel,
    ClassifierMethod.LDA: LdaModel,
}


def default_hyperparameters(method: ClassifierMethod) -> dict:
    return dict(_DEFAULTS[method])


@dataclass
class ClassifierSpec:
    method: ClassifierMethod
    hyperparameters: dict = field(default_factory=dict)
    seed: int = 0

    def resolved_hyperparameters(self) -> dict:
        hyper = default_hyperparameters(self.method)
        hyper.update(self.hyperparameters)
        return hyper


@dataclass
class TrainedModel:
    spec: ClassifierSpec
    model: object
    standardizer: Optional[StandardizerStats] = None
    mask: Optional[FeatureSetMask] = None
    feature_names: Optional[list] = None

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2:
            raise DimensionError("predict expects a 2-d matrix")
        if self.feature_names is not None \
                and X.shape[1] != len(self.feature_names):
            raise DimensionError(
                f"matrix has {X.shape[1]} columns, model was trained on "
                f"{len(self.feature_names)}")
        if self.standardizer is not None:
            X = standardize_apply(X, self.standardizer)
        return self.model.predict(X)

    def to_document(self) -> dict:
        return {
            "format": MODEL_FORMAT,
            "method": self.spec.method.value,
            "hyperparameters": self.spec.hyperparameters,
            "seed": self.spec.seed,
            "feature_names": self.feature_names,
            "mask": self.mask.code if self.mask is not None else None,
            "standardizer": (
                {"mean": list(self.standardizer.mean),
                 "std": list(self.standardizer.std)}
                if self.standardizer is not None else None),
            "params": self.model.to_state(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_document(), sort_keys=True)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())
            fh.write("\n")

    @classmethod
    def from_document(cls, doc: dict) -> "TrainedModel":
        if doc.get("format") != MODEL_FORMAT:
            raise ValueError(
                f"unsupported model format {doc.get('format')!r}")
        method = ClassifierMethod(doc["method"])
        spec = ClassifierSpec(method=method,
                              hyperparameters=doc["hyperparameters"],
                              seed=doc["seed"])
        model = _STATE_CLASSES[method].from_state(doc["params"])
        std = doc.get("standardizer")
        standardizer = (StandardizerStats(mean=tuple(std["mean"]),
                                          std=tuple(std["std"]))
                        if std else None)
        mask = (FeatureSetMask.from_code(doc["mask"])
                if doc.get("mask") else None)
        return cls(spec=spec, model=model, standardizer=standardizer,
                   mask=mask, feature_names=doc.get("feature_names"))

    @classmethod
    def loads(cls, text: str) -> "TrainedModel":
        return cls.from_document(json.loads(text))

    @classmethod
    def load(cls, path) -> "TrainedModel":
        with open(path) as fh:
            return cls.loads(fh.read())


def train(spec: ClassifierSpec, X, y,
          standardizer: Optional[StandardizerStats] = None,
          mask: Optional[FeatureSetMask] = None,
          feature_names: Optional[list] = None) -> TrainedModel:
    """Fit one method on (already standardized) features.

    Raises SingleClassError when y has one class and NonFiniteError when X
    contains NaN/inf. Emits ConvergenceWarning when an iterative method
    hits its cap (the model is still returned)."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise DimensionError("X must be a non-empty 2-d matrix")
    if X.shape[0] != y.shape[0]:
        raise DimensionError("X and y row counts differ")
    if not np.isfinite(X).all():
        raise NonFiniteError("training matrix contains NaN or inf")
    classes = np.unique(y)
    if classes.size < 2:
        raise SingleClassError("training labels contain a single class")
    if not np.isin(classes, (0, 1)).all():
        raise ValueError("labels must be 0 (shade) or 1 (sun)")
    hyper = spec.resolved_hyperparameters()
    model = _FITTERS[spec.method](X, y, hyper, spec.seed)
    return TrainedModel(spec=spec, model=model, standardizer=standardizer,
                        mask=mask, feature_names=feature_names)


def predict(model: TrainedModel, X) -> np.ndarray:
    """Deterministic labels for a fitted model."""
    return model.predict(X)
