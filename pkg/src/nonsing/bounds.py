"""Worst-case margin bounds under joint input-weight perturbations.

Given a network W, an input x, and element-wise l-infinity perturbation radii
(eps_x for the input, eps_m for each weight matrix), these functions bound how
far any pairwise class margin f_i(x) - f_j(x) can move when both the input and
the weights are perturbed inside their balls:

    perturbed margin <= clean margin + tau + zeta

tau collects the input-perturbation sensitivity, amplified by majorized weight
norms; zeta collects the pure weight-perturbation sensitivity, which depends
on x through the l1 mass of worst-case hidden activations. A single perturbed
layer admits the tighter single-layer bound below.

The zeta term charges each hidden layer once via an activation-mass envelope:
the first layer is shifted by sign(x_j) * eps_1 (the exact entry-wise worst
case), and deeper layers use |W^m| + eps_m. Shifting deeper layers by +eps_m
without the absolute value does NOT upper-bound the reachable activation mass:
perturbations in earlier layers can concentrate mass on hidden units whose
outgoing weights are negative, so the plainly-shifted network can come out
*smaller* than an attainable perturbed one. The rectified envelope restores a
sound bound and coincides with the plain shift whenever the deeper weights are
nonnegative. The plainly-shifted network itself is still exposed as
`shifted_hidden` since it collapses to the clean activations at zero radius.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import mat_inf_norm, mat_one_norm, relu, row_diff_l1, vec_l1
from .network import Mlp


@dataclass(frozen=True)
class PerturbationBudget:
    """Input radius eps_x plus one element-wise radius per weight matrix."""

    eps_x: float
    eps_layers: tuple

    def __post_init__(self):
        if self.eps_x < 0.0:
            raise ValueError(f"eps_x must be >= 0, got {self.eps_x}")
        object.__setattr__(self, "eps_layers", tuple(float(e) for e in self.eps_layers))
        if any(e < 0.0 for e in self.eps_layers):
            raise ValueError(f"layer radii must be >= 0, got {self.eps_layers}")

    @classmethod
    def uniform(cls, eps_x: float, eps_w: float, depth: int) -> "PerturbationBudget":
        """One shared weight radius broadcast to every layer."""
        return cls(float(eps_x), (float(eps_w),) * depth)

    @classmethod
    def zero(cls, depth: int) -> "PerturbationBudget":
        return cls(0.0, (0.0,) * depth)

    def is_zero(self) -> bool:
        return self.eps_x == 0.0 and all(e == 0.0 for e in self.eps_layers)


@dataclass(frozen=True)
class MarginBoundReport:
    """Certified upper bound on one perturbed pairwise margin."""

    class_i: int
    class_j: int
    margin: float
    tau: float
    zeta: float
    upper_bound: float

    def as_dict(self) -> dict:
        return {
            "class_i": self.class_i,
            "class_j": self.class_j,
            "margin": self.margin,
            "tau": self.tau,
            "zeta": self.zeta,
            "upper_bound": self.upper_bound,
        }


def _check_budget(net: Mlp, budget: PerturbationBudget) -> None:
    if len(budget.eps_layers) != net.depth:
        raise ValueError(
            f"budget has {len(budget.eps_layers)} layer radii, "
            f"network has {net.depth} layers"
        )


def shifted_first_layer(w1: np.ndarray, x: np.ndarray, eps_1: float) -> np.ndarray:
    """First layer with every entry shifted by sign(x_j) * eps_1 (sign(0) = 0)."""
    return w1 + np.sign(x)[None, :] * eps_1


def shifted_hidden(net: Mlp, x, budget: PerturbationBudget, k: int) -> np.ndarray:
    """Hidden output of the radius-shifted network.

    Layer 1 is shifted entry-wise by sign(x_j) * eps_1, deeper layers by +eps_m
    on every entry. With a zero budget this equals layer_output(x, k) exactly.
    """
    _check_budget(net, budget)
    if not (1 <= k <= net.depth - 1):
        raise IndexError(f"hidden layer index {k} out of range 1..{net.depth - 1}")
    x = net._check_input(x)
    z = relu(shifted_first_layer(net.layers[0], x, budget.eps_layers[0]) @ x)
    for m in range(1, k):
        z = relu((net.layers[m] + budget.eps_layers[m]) @ z)
    return z


def hidden_envelope_chain(net: Mlp, x, budget: PerturbationBudget) -> list:
    """Entry-wise envelopes t^1..t^{L-1} of the reachable hidden activations.

    t^1 uses the sign-aligned first-layer shift; t^m = (|W^m| + eps_m) t^{m-1}
    for m >= 2. Every attainable relu(W-hat^m ... relu(W-hat^1 x)) with weights
    in the budget balls is <= t^m entry-wise, so ||t^m||_1 caps the activation
    mass any perturbed network can present to layer m+1.
    """
    _check_budget(net, budget)
    x = net._check_input(x)
    t = relu(shifted_first_layer(net.layers[0], x, budget.eps_layers[0]) @ x)
    chain = [t]
    for m in range(1, net.depth - 1):
        t = (np.abs(net.layers[m]) + budget.eps_layers[m]) @ t
        chain.append(t)
    return chain


def hidden_envelope(net: Mlp, x, budget: PerturbationBudget, k: int) -> np.ndarray:
    """Entry-wise envelope t^k for one hidden layer (see hidden_envelope_chain)."""
    if not (1 <= k <= net.depth - 1):
        raise IndexError(f"hidden layer index {k} out of range 1..{net.depth - 1}")
    return hidden_envelope_chain(net, x, budget)[k - 1]


def tau_prefactor(net: Mlp, budget: PerturbationBudget) -> float:
    """eps_x * prod_{m<L} (||W^m||_inf + d_m eps_m), shared by every class pair."""
    _check_budget(net, budget)
    prod = 1.0
    for m in range(net.depth - 1):
        w = net.layers[m]
        prod *= mat_inf_norm(w) + w.shape[1] * budget.eps_layers[m]
    return budget.eps_x * prod


def tau(net: Mlp, budget: PerturbationBudget, i: int, j: int) -> float:
    """Input-sensitivity term of the joint margin bound.

    Zero exactly when eps_x is zero, and nondecreasing in every radius.
    """
    net._check_class(i)
    net._check_class(j)
    w_last = net.layers[-1]
    d_last = w_last.shape[1]
    row_term = row_diff_l1(w_last, i, j) + 2.0 * d_last * budget.eps_layers[-1]
    return tau_prefactor(net, budget) * row_term


def zeta_parts(net: Mlp, x, budget: PerturbationBudget) -> tuple:
    """(layer_charge_sum, last_layer_term) shared by every class pair.

    zeta(i, j) = ||W^L_i - W^L_j||_1 * layer_charge_sum + last_layer_term.
    The charge for hidden layer k+1 is eps_{k+1} * ||t^k||_1 scaled by the
    inf-norms of the layers above it; the last layer contributes
    2 eps_L ||t^{L-1}||_1 on its own.
    """
    _check_budget(net, budget)
    depth = net.depth
    chain = hidden_envelope_chain(net, x, budget)
    masses = [vec_l1(x)] + [float(np.sum(t)) for t in chain]

    # suffix_norms[k] = prod_{m=k+2}^{L-1} ||W^m||_inf (1-indexed layers)
    inf_norms = [mat_inf_norm(w) for w in net.layers[:-1]]
    charge = 0.0
    suffix = 1.0
    for k in range(depth - 2, -1, -1):
        charge += budget.eps_layers[k] * masses[k] * suffix
        if k >= 1:
            suffix *= inf_norms[k]
    tail = 2.0 * budget.eps_layers[-1] * masses[depth - 1]
    return charge, tail


def zeta(net: Mlp, x, budget: PerturbationBudget, i: int, j: int) -> float:
    """Weight-sensitivity term of the joint margin bound.

    Independent of eps_x; zero exactly when every layer radius is zero.
    """
    net._check_class(i)
    net._check_class(j)
    charge, tail = zeta_parts(net, x, budget)
    return row_diff_l1(net.layers[-1], i, j) * charge + tail


def margin_bound_joint(
    net: Mlp, x, budget: PerturbationBudget, i: int, j: int
) -> MarginBoundReport:
    """Upper bound on the (i, j) margin under joint input-weight perturbation."""
    margin = net.pairwise_margin(x, i, j)
    t = tau(net, budget, i, j)
    z = zeta(net, x, budget, i, j)
    return MarginBoundReport(
        class_i=i,
        class_j=j,
        margin=margin,
        tau=t,
        zeta=z,
        upper_bound=margin + t + z,
    )


def margin_bound_single_layer(
    net: Mlp, x, layer: int, eps_layer: float, eps_x: float, i: int, j: int
) -> float:
    """Margin bound when only weight matrix `layer` (1-based) and x move.

    For a hidden or first layer the error enters at that layer and propagates
    through the inf-norms above it; for the last layer the perturbed rows act
    on the l1 mass of the final hidden activation, bounded through induced
    1-norms. Equals the clean margin when both radii are zero.
    """
    if not (1 <= layer <= net.depth):
        raise IndexError(f"layer index {layer} out of range 1..{net.depth}")
    if eps_layer < 0.0 or eps_x < 0.0:
        raise ValueError("perturbation radii must be >= 0")
    net._check_class(i)
    net._check_class(j)
    x = net._check_input(x)

    margin = net.pairwise_margin(x, i, j)
    depth = net.depth
    row_term = row_diff_l1(net.layers[-1], i, j)
    inf_norms = [mat_inf_norm(w) for w in net.layers]

    if layer == depth:
        prod_inf = 1.0
        prod_one = 1.0
        for m in range(depth - 1):
            prod_inf *= inf_norms[m]
            prod_one *= mat_one_norm(net.layers[m])
        input_term = eps_x * row_term * prod_inf
        weight_term = 2.0 * eps_layer * prod_one * (vec_l1(x) + x.shape[0] * eps_x)
        return margin + input_term + weight_term

    # z^0 is the input itself when the first layer is the perturbed one.
    z_prev = x if layer == 1 else net.layer_output(x, layer - 1)
    above = 1.0
    for m in range(layer, depth - 1):
        above *= inf_norms[m]
    below = 1.0
    for m in range(layer - 1):
        below *= inf_norms[m]
    d_layer = net.layers[layer - 1].shape[1]
    inner = eps_layer * vec_l1(z_prev) + eps_x * below * (
        inf_norms[layer - 1] + d_layer * eps_layer
    )
    return margin + row_term * above * inner


@dataclass(frozen=True)
class WorstRegularizers:
    """Per-regularizer worst competitor class and value for a labeled input."""

    tau_class: int
    tau_value: float
    zeta_class: int
    zeta_value: float


def worst_regularizer_pair(
    net: Mlp, x, budget: PerturbationBudget, y: int
) -> WorstRegularizers:
    """Maximize tau and zeta independently over competitor classes y' != y.

    The two maxima may land on different classes; ties break to the smallest
    class index.
    """
    k = net.class_count
    if k < 2:
        raise ValueError(f"need at least 2 classes, got {k}")
    net._check_class(y)

    pre = tau_prefactor(net, budget)
    w_last = net.layers[-1]
    two_dl_eps = 2.0 * w_last.shape[1] * budget.eps_layers[-1]
    charge, tail = zeta_parts(net, x, budget)

    tau_best = zeta_best = None
    tau_cls = zeta_cls = -1
    for cand in range(k):
        if cand == y:
            continue
        diff = row_diff_l1(w_last, cand, y)
        t_val = pre * (diff + two_dl_eps)
        z_val = diff * charge + tail
        if tau_best is None or t_val > tau_best:
            tau_best, tau_cls = t_val, cand
        if zeta_best is None or z_val > zeta_best:
            zeta_best, zeta_cls = z_val, cand
    return WorstRegularizers(tau_cls, tau_best, zeta_cls, zeta_best)
