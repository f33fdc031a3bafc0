"""Feed-forward ReLU network without bias terms.

The model is an ordered chain of dense weight matrices W^1..W^L applied as
logits = W^L relu(W^{L-1} ... relu(W^1 x)). There is no activation after the
final layer. Networks are immutable: training produces new instances.
"""

import json

import numpy as np

from .linalg import DimensionMismatchError, as_matrix, relu

CHECKPOINT_FORMAT_VERSION = 1


class Mlp:
    """ReLU multi-layer perceptron defined by its weight matrices alone.

    Layer m maps a vector of dim W^m.cols to dim W^m.rows, so the chain needs
    W^{m+1}.cols == W^m.rows. At least two layers are required.
    """

    def __init__(self, layers):
        mats = tuple(as_matrix(w).copy() for w in layers)
        if len(mats) < 2:
            raise ValueError(f"network needs at least 2 layers, got {len(mats)}")
        for m in range(len(mats) - 1):
            if mats[m + 1].shape[1] != mats[m].shape[0]:
                raise DimensionMismatchError(
                    f"layer {m + 2} expects input dim {mats[m + 1].shape[1]} "
                    f"but layer {m + 1} outputs dim {mats[m].shape[0]}"
                )
        for w in mats:
            w.setflags(write=False)
        self.layers = mats

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def input_dim(self) -> int:
        return self.layers[0].shape[1]

    @property
    def class_count(self) -> int:
        return self.layers[-1].shape[0]

    def _check_input(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.input_dim,):
            raise DimensionMismatchError(
                f"input has shape {x.shape}, network expects ({self.input_dim},)"
            )
        return x

    def forward(self, x) -> np.ndarray:
        """Logits for a single input vector (no activation on the last layer)."""
        z = self._check_input(x)
        for w in self.layers[:-1]:
            z = relu(w @ z)
        return self.layers[-1] @ z

    def forward_batch(self, xs: np.ndarray) -> np.ndarray:
        """Logits for a (batch, input_dim) matrix of inputs."""
        z = np.asarray(xs, dtype=np.float64)
        if z.ndim != 2 or z.shape[1] != self.input_dim:
            raise DimensionMismatchError(
                f"batch has shape {z.shape}, expected (n, {self.input_dim})"
            )
        for w in self.layers[:-1]:
            z = np.maximum(z @ w.T, 0.0)
        return z @ self.layers[-1].T

    def layer_output(self, x, k: int) -> np.ndarray:
        """Hidden activation after layer k, for k in 1..L-1."""
        if not (1 <= k <= self.depth - 1):
            raise IndexError(f"hidden layer index {k} out of range 1..{self.depth - 1}")
        z = self._check_input(x)
        for w in self.layers[:k]:
            z = relu(w @ z)
        return z

    def pairwise_margin(self, x, i: int, j: int) -> float:
        """Logit difference [f(x)]_i - [f(x)]_j."""
        self._check_class(i)
        self._check_class(j)
        logits = self.forward(x)
        return float(logits[i] - logits[j])

    def predict(self, x) -> int:
        """Argmax class; ties break to the smallest index."""
        return int(np.argmax(self.forward(x)))

    def predict_batch(self, xs: np.ndarray) -> np.ndarray:
        return np.argmax(self.forward_batch(xs), axis=1)

    def _check_class(self, c: int) -> None:
        if not (0 <= c < self.class_count):
            raise IndexError(f"class index {c} out of range 0..{self.class_count - 1}")

    def to_json(self) -> str:
        doc = {
            "layers": [w.tolist() for w in self.layers],
            "format_version": CHECKPOINT_FORMAT_VERSION,
        }
        return json.dumps(doc)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def from_json(cls, text: str) -> "Mlp":
        doc = json.loads(text)
        if not isinstance(doc, dict) or "layers" not in doc:
            raise ValueError("checkpoint must be a JSON object with a 'layers' field")
        version = doc.get("format_version")
        if version != CHECKPOINT_FORMAT_VERSION:
            raise ValueError(
                f"unsupported checkpoint format_version {version!r}, "
                f"expected {CHECKPOINT_FORMAT_VERSION}"
            )
        return cls(doc["layers"])

    @classmethod
    def load(cls, path) -> "Mlp":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())
