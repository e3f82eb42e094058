"""Token embeddings: skip-gram with negative sampling, plus a hashed mode.

The skip-gram trainer is deliberately single-threaded and seeded so the
same corpus and seed always produce the same table, bit for bit. The
"hash" mode derives every vector from a keyed blake2 digest instead of
training; it is the fast deterministic fallback used by tests and as
the out-of-vocabulary rule at encode time.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

MODE_SKIPGRAM = "skipgram"
MODE_HASH = "hash"


class EmbeddingError(Exception):
    pass


def hash_vector(symbol: str, dimension: int, seed: int) -> np.ndarray:
    """Deterministic unit-norm vector for a symbol, keyed by the seed."""
    digest = hashlib.blake2b(
        symbol.encode("utf-8"), key=str(seed).encode("ascii"), digest_size=8
    ).digest()
    rng = np.random.default_rng(int.from_bytes(digest, "big"))
    vec = rng.standard_normal(dimension)
    norm = float(np.linalg.norm(vec))
    return vec / norm if norm > 0 else vec


@dataclass
class EmbeddingTable:
    """Symbol -> d-vector lookup with a total OOV fallback."""

    dimension: int
    vectors: dict[str, np.ndarray] = field(default_factory=dict)
    seed: int = 0
    mode: str = MODE_SKIPGRAM

    def lookup(self, symbol: str) -> np.ndarray:
        if self.mode == MODE_HASH:
            return hash_vector(symbol, self.dimension, self.seed)
        hit = self.vectors.get(symbol)
        if hit is not None:
            return hit
        return hash_vector(symbol, self.dimension, self.seed)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.vectors

    def save(self, path: str) -> None:
        payload = {
            "dimension": self.dimension,
            "seed": self.seed,
            "mode": self.mode,
            "vectors": {
                sym: [float(x) for x in vec]
                for sym, vec in sorted(self.vectors.items())
            },
        }
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, sort_keys=True)
            handle.write("\n")

    @classmethod
    def load(cls, path: str) -> "EmbeddingTable":
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
        return cls(
            dimension=payload["dimension"],
            vectors={
                sym: np.asarray(vec, dtype=np.float64)
                for sym, vec in payload["vectors"].items()
            },
            seed=payload["seed"],
            mode=payload["mode"],
        )


def hash_table(dimension: int, seed: int) -> EmbeddingTable:
    return EmbeddingTable(dimension=dimension, seed=seed, mode=MODE_HASH)


def train_embeddings(
    corpus: list[list[str]],
    dimension: int = 30,
    seed: int = 0,
    window: int = 5,
    negatives: int = 5,
    epochs: int = 5,
    initial_lr: float = 0.025,
    min_lr: float = 1e-4,
) -> EmbeddingTable:
    """Train skip-gram with negative sampling over symbol sequences.

    Window offsets are sampled uniformly in [1, window] per center (the
    usual dynamic window), negatives from the unigram^0.75 table, and
    the learning rate decays linearly over all scheduled updates.
    """
    sentences = [s for s in corpus if s]
    if not sentences:
        raise EmbeddingError("cannot train embeddings on an empty corpus")
    if dimension < 1:
        raise EmbeddingError(f"embedding dimension must be >= 1, got {dimension}")

    counts: dict[str, int] = {}
    for sentence in sentences:
        for symbol in sentence:
            counts[symbol] = counts.get(symbol, 0) + 1
    vocab = sorted(counts, key=lambda s: (-counts[s], s))
    index = {s: i for i, s in enumerate(vocab)}
    v = len(vocab)

    rng = np.random.default_rng(seed)
    table_weights = np.array([counts[s] ** 0.75 for s in vocab], dtype=np.float64)
    table_cdf = np.cumsum(table_weights / table_weights.sum())

    center_vecs = (rng.random((v, dimension)) - 0.5) / dimension
    context_vecs = np.zeros((v, dimension), dtype=np.float64)

    total_tokens = sum(len(s) for s in sentences)
    scheduled = max(1, total_tokens * epochs)
    done = 0
    for _ in range(epochs):
        for sentence in sentences:
            ids = [index[s] for s in sentence]
            for pos, center in enumerate(ids):
                lr = max(min_lr, initial_lr * (1.0 - done / scheduled))
                done += 1
                reach = int(rng.integers(1, window + 1))
                lo = max(0, pos - reach)
                hi = min(len(ids), pos + reach + 1)
                for ctx_pos in range(lo, hi):
                    if ctx_pos == pos:
                        continue
                    context = ids[ctx_pos]
                    targets = np.empty(negatives + 1, dtype=np.int64)
                    labels = np.zeros(negatives + 1)
                    targets[0] = context
                    labels[0] = 1.0
                    draws = rng.random(negatives)
                    targets[1:] = np.searchsorted(table_cdf, draws)
                    cv = center_vecs[center]
                    out = context_vecs[targets]
                    logits = np.clip(out @ cv, -60.0, 60.0)
                    scores = 1.0 / (1.0 + np.exp(-logits))
                    gradient = (labels - scores) * lr
                    center_grad = gradient @ out
                    # add.at accumulates correctly when a negative draw
                    # repeats an index
                    np.add.at(context_vecs, targets, np.outer(gradient, cv))
                    center_vecs[center] = cv + center_grad
    return EmbeddingTable(
        dimension=dimension,
        vectors={s: center_vecs[index[s]].copy() for s in vocab},
        seed=seed,
        mode=MODE_SKIPGRAM,
    )
