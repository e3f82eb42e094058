"""Bidirectional GRU sequence classifier, written directly in numpy.

Structure: stacked bidirectional GRU layers, a shared per-timestep
dense layer (tanh), and a scalar sigmoid activation head. The
activation output of every timestep forms the trace used for
explanations; the classification probability is the activation output
at the last non-padding timestep.

Training is minibatch gradient descent with the Adamax update, binary
cross-entropy on the final activation, and backpropagation through
time across all layers and both directions. Everything is float64 and
seeded: the same dataset and seed reproduce the same parameters bit
for bit. Dropout sits between stacked layers and is active only in
training mode.

GRU cell (per direction), with h_0 = 0:

    z_t = sigmoid(Wz x_t + Uz h_{t-1} + bz)
    r_t = sigmoid(Wr x_t + Ur h_{t-1} + br)
    c_t = tanh(Wh x_t + Uh (r_t * h_{t-1}) + bh)
    h_t = (1 - z_t) * h_{t-1} + z_t * c_t
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field

import numpy as np

from .vectorize import SampleVector


class ModelError(Exception):
    pass


@dataclass(frozen=True)
class Hyperparams:
    input_dim: int = 16
    seq_len: int = 50
    hidden_dim: int = 32
    layers: int = 1
    dense_dim: int = 16
    dropout: float = 0.2
    batch_size: int = 16
    epochs: int = 80
    learning_rate: float = 0.01
    seed: int = 0
    threshold: float = 0.5

    def __post_init__(self):
        for name in (
            "input_dim",
            "seq_len",
            "hidden_dim",
            "layers",
            "dense_dim",
            "batch_size",
            "epochs",
        ):
            if getattr(self, name) < 1:
                raise ModelError(f"{name} must be positive")
        if not 0.0 <= self.dropout < 1.0:
            raise ModelError("dropout must be in [0, 1)")
        if not 0.0 < self.threshold < 1.0:
            raise ModelError("threshold must be in (0, 1)")
        if self.learning_rate <= 0:
            raise ModelError("learning rate must be positive")

    @property
    def theta(self) -> int:
        return self.seq_len * self.input_dim


# Published presets: "paper" mirrors the reported training setup,
# "desk" fits CPU-only runs and the bundled mini corpus.
PRESETS: dict[str, Hyperparams] = {
    "paper": Hyperparams(
        input_dim=30,
        seq_len=500,
        hidden_dim=500,
        layers=2,
        dense_dim=256,
        dropout=0.2,
        batch_size=16,
        epochs=20,
        learning_rate=0.002,
    ),
    "desk": Hyperparams(),
}


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(x, -60.0, 60.0)))


def param_keys(hp: Hyperparams) -> list[str]:
    keys = []
    for layer in range(hp.layers):
        for direction in ("f", "b"):
            for gate in ("z", "r", "h"):
                for kind in ("W", "U", "b"):
                    keys.append(f"l{layer}.{direction}.{kind}{gate}")
    keys += ["dense.W", "dense.b", "head.w", "head.b"]
    return keys


@dataclass
class BgruParams:
    """All trainable arrays, keyed canonically (see param_keys)."""

    arrays: dict[str, np.ndarray]
    hp: Hyperparams

    def copy(self) -> "BgruParams":
        return BgruParams({k: v.copy() for k, v in self.arrays.items()}, self.hp)

    def zeros_like(self) -> dict[str, np.ndarray]:
        return {k: np.zeros_like(v) for k, v in self.arrays.items()}

    def __getitem__(self, key: str) -> np.ndarray:
        return self.arrays[key]


def init_params(hp: Hyperparams, seed: int | None = None) -> BgruParams:
    """Glorot-uniform weights, zero biases, in canonical key order."""
    rng = np.random.default_rng(hp.seed if seed is None else seed)
    arrays: dict[str, np.ndarray] = {}

    def glorot(shape: tuple[int, ...]) -> np.ndarray:
        fan_in = shape[-1] if len(shape) > 1 else shape[0]
        fan_out = shape[0]
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        return rng.uniform(-limit, limit, size=shape)

    h = hp.hidden_dim
    for layer in range(hp.layers):
        in_dim = hp.input_dim if layer == 0 else 2 * h
        for direction in ("f", "b"):
            for gate in ("z", "r", "h"):
                arrays[f"l{layer}.{direction}.W{gate}"] = glorot((h, in_dim))
                arrays[f"l{layer}.{direction}.U{gate}"] = glorot((h, h))
                arrays[f"l{layer}.{direction}.b{gate}"] = np.zeros(h)
    arrays["dense.W"] = glorot((hp.dense_dim, 2 * h))
    arrays["dense.b"] = np.zeros(hp.dense_dim)
    arrays["head.w"] = glorot((hp.dense_dim,))
    arrays["head.b"] = np.zeros(1)
    return BgruParams(arrays, hp)


@dataclass
class ActivationTrace:
    """Per-timestep activation outputs; the final one is the verdict."""

    outputs: np.ndarray  # shape (T,), each in (0, 1)

    @property
    def final(self) -> float:
        return float(self.outputs[-1])


# --------------------------------------------------------------------------
# forward / backward
# --------------------------------------------------------------------------


def _gru_scan(x: np.ndarray, p: dict, prefix: str) -> tuple[np.ndarray, dict]:
    """Run one GRU direction over x (T, in_dim); returns (H, cache)."""
    T = x.shape[0]
    hidden = p[f"{prefix}.Uz"].shape[0]
    h = np.zeros(hidden)
    outs = np.empty((T, hidden))
    zs = np.empty((T, hidden))
    rs = np.empty((T, hidden))
    cs = np.empty((T, hidden))
    prevs = np.empty((T, hidden))
    Wz, Uz, bz = p[f"{prefix}.Wz"], p[f"{prefix}.Uz"], p[f"{prefix}.bz"]
    Wr, Ur, br = p[f"{prefix}.Wr"], p[f"{prefix}.Ur"], p[f"{prefix}.br"]
    Wh, Uh, bh = p[f"{prefix}.Wh"], p[f"{prefix}.Uh"], p[f"{prefix}.bh"]
    for t in range(T):
        xt = x[t]
        prevs[t] = h
        z = _sigmoid(Wz @ xt + Uz @ h + bz)
        r = _sigmoid(Wr @ xt + Ur @ h + br)
        c = np.tanh(Wh @ xt + Uh @ (r * h) + bh)
        h = (1.0 - z) * h + z * c
        zs[t], rs[t], cs[t], outs[t] = z, r, c, h
    cache = {"x": x, "z": zs, "r": rs, "c": cs, "prev": prevs}
    return outs, cache


def _gru_backward(
    cache: dict, d_out: np.ndarray, p: dict, prefix: str, grads: dict
) -> np.ndarray:
    """BPTT for one direction; accumulates into grads, returns dX."""
    x, zs, rs, cs, prevs = (
        cache["x"],
        cache["z"],
        cache["r"],
        cache["c"],
        cache["prev"],
    )
    T = x.shape[0]
    Wz, Uz = p[f"{prefix}.Wz"], p[f"{prefix}.Uz"]
    Wr, Ur = p[f"{prefix}.Wr"], p[f"{prefix}.Ur"]
    Wh, Uh = p[f"{prefix}.Wh"], p[f"{prefix}.Uh"]
    gWz, gUz, gbz = (
        grads[f"{prefix}.Wz"],
        grads[f"{prefix}.Uz"],
        grads[f"{prefix}.bz"],
    )
    gWr, gUr, gbr = (
        grads[f"{prefix}.Wr"],
        grads[f"{prefix}.Ur"],
        grads[f"{prefix}.br"],
    )
    gWh, gUh, gbh = (
        grads[f"{prefix}.Wh"],
        grads[f"{prefix}.Uh"],
        grads[f"{prefix}.bh"],
    )
    dx_all = np.zeros_like(x)
    carry = np.zeros(Uz.shape[0])
    for t in range(T - 1, -1, -1):
        dh = d_out[t] + carry
        z, r, c, h_prev, xt = zs[t], rs[t], cs[t], prevs[t], x[t]
        dz = dh * (c - h_prev)
        dc = dh * z
        dh_prev = dh * (1.0 - z)

        da_h = dc * (1.0 - c * c)
        gWh += np.outer(da_h, xt)
        gUh += np.outer(da_h, r * h_prev)
        gbh += da_h
        dx = Wh.T @ da_h
        drh = Uh.T @ da_h
        dr = drh * h_prev
        dh_prev = dh_prev + drh * r

        da_z = dz * z * (1.0 - z)
        gWz += np.outer(da_z, xt)
        gUz += np.outer(da_z, h_prev)
        gbz += da_z
        dx += Wz.T @ da_z
        dh_prev = dh_prev + Uz.T @ da_z

        da_r = dr * r * (1.0 - r)
        gWr += np.outer(da_r, xt)
        gUr += np.outer(da_r, h_prev)
        gbr += da_r
        dx += Wr.T @ da_r
        dh_prev = dh_prev + Ur.T @ da_r

        dx_all[t] = dx
        carry = dh_prev
    return dx_all


def _forward_sample(
    x: np.ndarray,
    params: BgruParams,
    hp: Hyperparams,
    train_mode: bool,
    rng: np.random.Generator | None,
) -> tuple[np.ndarray, list[dict]]:
    """Full forward pass for one (T, d) sample; returns (trace, caches)."""
    if x.ndim != 2 or x.shape[1] != hp.input_dim:
        raise ModelError(
            f"sample shape {x.shape} does not match input dimension "
            f"{hp.input_dim}"
        )
    if x.shape[0] < 1:
        raise ModelError("sample has no timesteps")
    p = params.arrays
    layer_caches: list[dict] = []
    current = x
    for layer in range(hp.layers):
        fwd_out, fwd_cache = _gru_scan(current, p, f"l{layer}.f")
        bwd_out_rev, bwd_cache = _gru_scan(current[::-1], p, f"l{layer}.b")
        bwd_out = bwd_out_rev[::-1]
        combined = np.concatenate([fwd_out, bwd_out], axis=1)
        mask = None
        if layer < hp.layers - 1 and train_mode and hp.dropout > 0.0:
            assert rng is not None, "training mode needs an RNG for dropout"
            keep = 1.0 - hp.dropout
            mask = (rng.random(combined.shape) < keep) / keep
            combined = combined * mask
        layer_caches.append(
            {"f": fwd_cache, "b": bwd_cache, "mask": mask, "out": combined}
        )
        current = combined
    feat = current  # (T, 2H)
    dense_pre = feat @ p["dense.W"].T + p["dense.b"]
    u = np.tanh(dense_pre)
    o = _sigmoid(u @ p["head.w"] + p["head.b"][0])
    layer_caches.append({"feat": feat, "u": u, "o": o})
    return o, layer_caches


def bgru_forward(
    sample: np.ndarray | SampleVector,
    params: BgruParams,
    hp: Hyperparams,
    train_mode: bool = False,
    rng: np.random.Generator | None = None,
) -> ActivationTrace:
    """Activation trace for one sample (matrix or SampleVector).

    SampleVector inputs are trimmed to their non-padding timesteps, so
    the trace's final entry is the last meaningful position.
    """
    x = _sample_matrix(sample, hp)
    trace, _ = _forward_sample(x, params, hp, train_mode, rng)
    return ActivationTrace(outputs=trace)


def _sample_matrix(sample: np.ndarray | SampleVector, hp: Hyperparams) -> np.ndarray:
    if isinstance(sample, SampleVector):
        if sample.dimension != hp.input_dim:
            raise ModelError(
                f"sample dimension {sample.dimension} != model input "
                f"{hp.input_dim}"
            )
        steps = max(1, min(sample.kept_symbols, sample.capacity))
        return sample.matrix()[:steps]
    return np.asarray(sample, dtype=np.float64)


def loss_and_gradients(
    batch: list[tuple[np.ndarray, int]],
    params: BgruParams,
    hp: Hyperparams,
    rng: np.random.Generator | None = None,
    train_mode: bool = False,
) -> tuple[float, dict[str, np.ndarray]]:
    """Mean binary cross-entropy and gradients over a batch.

    Batch entries are (timesteps x input_dim matrix, 0/1 label). The
    loss reads the activation at each sample's final timestep.
    """
    if not batch:
        raise ModelError("empty batch")
    p = params.arrays
    grads = params.zeros_like()
    total = 0.0
    scale = 1.0 / len(batch)
    for idx, (x, label) in enumerate(batch):
        if label not in (0, 1):
            raise ModelError(f"sample {idx}: label must be 0 or 1, got {label!r}")
        trace, caches = _forward_sample(
            np.asarray(x, dtype=np.float64), params, hp, train_mode, rng
        )
        prob = float(trace[-1])
        eps = 1e-12
        loss = -(
            label * np.log(max(prob, eps))
            + (1 - label) * np.log(max(1.0 - prob, eps))
        )
        if not np.isfinite(loss):
            raise ModelError(f"non-finite loss for sample {idx}")
        total += loss * scale

        head_cache = caches[-1]
        feat, u = head_cache["feat"], head_cache["u"]
        T = feat.shape[0]
        d_head_pre = (prob - label) * scale
        grads["head.w"] += d_head_pre * u[-1]
        grads["head.b"][0] += d_head_pre
        du_last = d_head_pre * p["head.w"]
        da_dense = du_last * (1.0 - u[-1] * u[-1])
        grads["dense.W"] += np.outer(da_dense, feat[-1])
        grads["dense.b"] += da_dense
        d_feat = np.zeros_like(feat)
        d_feat[-1] = p["dense.W"].T @ da_dense

        d_current = d_feat
        for layer in range(hp.layers - 1, -1, -1):
            cache = caches[layer]
            if cache["mask"] is not None:
                d_current = d_current * cache["mask"]
            h = hp.hidden_dim
            d_fwd = d_current[:, :h]
            d_bwd = d_current[:, h:]
            dx_f = _gru_backward(cache["f"], d_fwd, p, f"l{layer}.f", grads)
            dx_b_rev = _gru_backward(
                cache["b"], d_bwd[::-1], p, f"l{layer}.b", grads
            )
            d_current = dx_f + dx_b_rev[::-1]
    return total, grads


# --------------------------------------------------------------------------
# Adamax
# --------------------------------------------------------------------------


@dataclass
class AdamaxState:
    m: dict[str, np.ndarray]
    u: dict[str, np.ndarray]
    t: int = 0

    @classmethod
    def fresh(cls, params: BgruParams) -> "AdamaxState":
        return cls(m=params.zeros_like(), u=params.zeros_like(), t=0)


def adamax_step(
    params: BgruParams,
    grads: dict[str, np.ndarray],
    state: AdamaxState,
    lr: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> BgruParams:
    """One Adamax update, in place; returns the updated params.

    theta -= lr/(1 - beta1^t) * m / max(u, eps); the eps only guards the
    all-zero-gradient corner, so a single unit step moves by exactly
    lr * g / |g| components when the state is fresh.
    """
    state.t += 1
    correction = 1.0 - beta1**state.t
    for key, g in grads.items():
        m = state.m[key]
        u = state.u[key]
        m *= beta1
        m += (1.0 - beta1) * g
        np.maximum(beta2 * u, np.abs(g), out=u)
        params.arrays[key] -= (lr / correction) * m / np.maximum(u, eps)
    return params


# --------------------------------------------------------------------------
# training / prediction / explanation
# --------------------------------------------------------------------------


@dataclass
class TrainReport:
    epoch_losses: list[float] = field(default_factory=list)
    epochs: int = 0
    seed: int = 0
    samples: int = 0


def _dataset_matrices(
    dataset: list[SampleVector], hp: Hyperparams
) -> list[tuple[np.ndarray, int]]:
    pairs = []
    for i, sample in enumerate(dataset):
        if sample.label not in (0, 1):
            raise ModelError(f"dataset sample {i} has no 0/1 label")
        pairs.append((_sample_matrix(sample, hp), int(sample.label)))
    return pairs


def train(
    dataset: list[SampleVector], hp: Hyperparams
) -> tuple[BgruParams, TrainReport]:
    """Seeded minibatch Adamax training over labeled sample vectors."""
    if not dataset:
        raise ModelError("cannot train on an empty dataset")
    seeds = np.random.SeedSequence(hp.seed).spawn(3)
    params = init_params(hp, seed=seeds[0])
    shuffle_rng = np.random.default_rng(seeds[1])
    dropout_rng = np.random.default_rng(seeds[2])
    state = AdamaxState.fresh(params)
    pairs = _dataset_matrices(dataset, hp)
    report = TrainReport(epochs=hp.epochs, seed=hp.seed, samples=len(pairs))
    for _ in range(hp.epochs):
        order = shuffle_rng.permutation(len(pairs))
        epoch_loss = 0.0
        batches = 0
        for start in range(0, len(order), hp.batch_size):
            chosen = [pairs[i] for i in order[start : start + hp.batch_size]]
            loss, grads = loss_and_gradients(
                chosen, params, hp, rng=dropout_rng, train_mode=True
            )
            adamax_step(params, grads, state, hp.learning_rate)
            epoch_loss += loss
            batches += 1
        report.epoch_losses.append(epoch_loss / max(1, batches))
    return params, report


def predict(
    sample: np.ndarray | SampleVector,
    params: BgruParams,
    hp: Hyperparams,
    threshold: float | None = None,
) -> tuple[int, float]:
    """(label, probability) for one sample; label 1 iff prob >= threshold."""
    cut = hp.threshold if threshold is None else threshold
    trace = bgru_forward(sample, params, hp, train_mode=False)
    prob = trace.final
    return (1 if prob >= cut else 0), prob


@dataclass(frozen=True)
class CriticalToken:
    position: int  # timestep (0-based) of the critical token
    symbol: str
    direction: str  # "vulnerable" | "not-vulnerable"
    delta: float


def explain(
    trace: ActivationTrace, symbols: list[str], delta: float = 0.6
) -> list[CriticalToken]:
    """Tokens whose activation jump crosses +-delta between timesteps.

    A rise of at least delta marks the right-hand token as critical
    toward vulnerable; a fall of at least delta marks it critical
    toward not vulnerable.
    """
    outputs = trace.outputs
    if len(symbols) != len(outputs):
        raise ModelError(
            f"{len(symbols)} symbols vs {len(outputs)} trace steps; "
            "pass the kept (non-padding) symbol window"
        )
    report: list[CriticalToken] = []
    for t in range(len(outputs) - 1):
        jump = float(outputs[t + 1] - outputs[t])
        if jump >= delta:
            report.append(CriticalToken(t + 1, symbols[t + 1], "vulnerable", jump))
        elif jump <= -delta:
            report.append(
                CriticalToken(t + 1, symbols[t + 1], "not-vulnerable", jump)
            )
    return report


# --------------------------------------------------------------------------
# checkpoints
# --------------------------------------------------------------------------

_CKPT_MAGIC = b"BGRU"
_CKPT_VERSION = 1


def save_checkpoint(path: str, params: BgruParams, root_seed: int) -> None:
    hp = params.hp
    header = {
        "version": _CKPT_VERSION,
        "seed": root_seed,
        "theta": hp.theta,
        "hyperparams": {
            "input_dim": hp.input_dim,
            "seq_len": hp.seq_len,
            "hidden_dim": hp.hidden_dim,
            "layers": hp.layers,
            "dense_dim": hp.dense_dim,
            "dropout": hp.dropout,
            "batch_size": hp.batch_size,
            "epochs": hp.epochs,
            "learning_rate": hp.learning_rate,
            "seed": hp.seed,
            "threshold": hp.threshold,
        },
        "keys": param_keys(hp),
    }
    blob = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as handle:
        handle.write(_CKPT_MAGIC)
        handle.write(struct.pack("<I", len(blob)))
        handle.write(blob)
        for key in param_keys(hp):
            arr = params.arrays[key]
            shape = arr.shape
            handle.write(struct.pack("<B", len(shape)))
            for dim in shape:
                handle.write(struct.pack("<I", dim))
            handle.write(arr.astype("<f8").tobytes())


def load_checkpoint(
    path: str, expect_theta: int | None = None, expect_dim: int | None = None
) -> tuple[BgruParams, int]:
    """Load (params, root_seed); refuses dimension mismatches."""
    with open(path, "rb") as handle:
        if handle.read(4) != _CKPT_MAGIC:
            raise ModelError(f"{path}: not a checkpoint file")
        (header_len,) = struct.unpack("<I", handle.read(4))
        header = json.loads(handle.read(header_len).decode("utf-8"))
        if header["version"] != _CKPT_VERSION:
            raise ModelError(f"{path}: unsupported checkpoint version")
        hp = Hyperparams(**header["hyperparams"])
        if expect_theta is not None and hp.theta != expect_theta:
            raise ModelError(
                f"{path}: checkpoint theta {hp.theta} != expected {expect_theta}"
            )
        if expect_dim is not None and hp.input_dim != expect_dim:
            raise ModelError(
                f"{path}: checkpoint input dimension {hp.input_dim} != "
                f"expected {expect_dim}"
            )
        arrays: dict[str, np.ndarray] = {}
        for key in header["keys"]:
            (rank,) = struct.unpack("<B", handle.read(1))
            shape = tuple(
                struct.unpack("<I", handle.read(4))[0] for _ in range(rank)
            )
            count = int(np.prod(shape)) if shape else 1
            data = np.frombuffer(handle.read(count * 8), dtype="<f8")
            arrays[key] = data.reshape(shape).copy()
    params = BgruParams(arrays, hp)
    for key in param_keys(hp):
        if key not in arrays:
            raise ModelError(f"{path}: missing parameter block {key}")
    return params, header["seed"]
