"""Margin bounds, joint input-weight attacks, and robust training for ReLU MLPs."""

from .attack import AttackConfig, AttackResult, clip_to_ball, pgd
from .bounds import (
    MarginBoundReport,
    PerturbationBudget,
    WorstRegularizers,
    hidden_envelope,
    margin_bound_joint,
    margin_bound_single_layer,
    shifted_hidden,
    tau,
    worst_regularizer_pair,
    zeta,
)
from .grid import GridEvalResult, GridSpec, auc_score, eval_cell, run_grid
from .loss import (
    GradientBundle,
    LossConfig,
    backprop,
    cross_entropy,
    regularized_backprop,
    regularized_loss,
)
from .mnist import Dataset, load_idx_images, load_idx_labels, load_mnist, to_dataset
from .network import Mlp
from .trainer import AdamState, TrainConfig, adam_step, init_mlp, make_batch_loss, train

__version__ = "0.1.0"

__all__ = [
    "AttackConfig",
    "AttackResult",
    "AdamState",
    "Dataset",
    "GradientBundle",
    "GridEvalResult",
    "GridSpec",
    "LossConfig",
    "MarginBoundReport",
    "Mlp",
    "PerturbationBudget",
    "TrainConfig",
    "WorstRegularizers",
    "adam_step",
    "auc_score",
    "backprop",
    "clip_to_ball",
    "cross_entropy",
    "eval_cell",
    "hidden_envelope",
    "init_mlp",
    "load_idx_images",
    "load_idx_labels",
    "load_mnist",
    "make_batch_loss",
    "margin_bound_joint",
    "margin_bound_single_layer",
    "pgd",
    "predict",
    "regularized_backprop",
    "regularized_loss",
    "run_grid",
    "shifted_hidden",
    "tau",
    "to_dataset",
    "train",
    "worst_regularizer_pair",
    "zeta",
]
