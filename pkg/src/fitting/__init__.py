from .cross_validation import CrossValidationResult, FoldScore, cross_validate, fold_indices, rank_tiers
from .least_squares import Dataset, FitResult, evaluate, fit, score
from .model_spec import ModelSpec, ParameterSpec, model_eval

__all__ = [
    "ModelSpec",
    "ParameterSpec",
    "model_eval",
    "Dataset",
    "FitResult",
    "fit",
    "evaluate",
    "score",
    "CrossValidationResult",
    "FoldScore",
    "cross_validate",
    "fold_indices",
    "rank_tiers",
]
