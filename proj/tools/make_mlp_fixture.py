#!/usr/bin/env python3
"""Train the tiny 8x8 two-class MLP used by the benchmark and write its fixtures.

Class 0 images carry a horizontal bar, class 1 images a vertical bar, both on
a noisy background. The network is 64 -> 64 -> 64 -> 2 with ReLU hidden
layers. Outputs (relative to the repository root):

    data/mlp8x8.weights      weights in the lhsba text format
    data/mlp8x8_points.txt   20 correctly classified test images (10 per class)
"""

import argparse
import pathlib

import numpy as np

SIDE = 8


def make_images(rng, n, label):
    imgs = rng.uniform(0.0, 0.35, size=(n, SIDE, SIDE))
    pos = rng.integers(1, SIDE - 1, size=n)
    width = rng.integers(1, 3, size=n)
    for i in range(n):
        lo, hi = pos[i], min(SIDE, pos[i] + width[i])
        if label == 0:
            imgs[i, lo:hi, :] = rng.uniform(0.65, 1.0, size=(hi - lo, SIDE))
        else:
            imgs[i, :, lo:hi] = rng.uniform(0.65, 1.0, size=(SIDE, hi - lo))
    return imgs.reshape(n, SIDE * SIDE)


def dataset(rng, n_per_class):
    x = np.concatenate([make_images(rng, n_per_class, 0), make_images(rng, n_per_class, 1)])
    y = np.concatenate([np.zeros(n_per_class, dtype=int), np.ones(n_per_class, dtype=int)])
    order = rng.permutation(len(y))
    return x[order], y[order]


def init_layer(rng, fan_in, fan_out):
    return rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_out, fan_in)), np.zeros(fan_out)


def forward(params, x):
    acts = [x]
    h = x
    for i, (w, b) in enumerate(params):
        z = h @ w.T + b
        h = np.maximum(z, 0.0) if i < len(params) - 1 else z
        acts.append(h)
    return acts


def train(rng, x, y, epochs=60, lr=1e-2, batch=64):
    params = [init_layer(rng, 64, 64), init_layer(rng, 64, 64), init_layer(rng, 64, 2)]
    m = [(np.zeros_like(w), np.zeros_like(b)) for w, b in params]
    v = [(np.zeros_like(w), np.zeros_like(b)) for w, b in params]
    step = 0
    for _ in range(epochs):
        order = rng.permutation(len(y))
        for start in range(0, len(y), batch):
            idx = order[start:start + batch]
            acts = forward(params, x[idx])
            logits = acts[-1]
            p = np.exp(logits - logits.max(axis=1, keepdims=True))
            p /= p.sum(axis=1, keepdims=True)
            grad = p
            grad[np.arange(len(idx)), y[idx]] -= 1.0
            grad /= len(idx)
            step += 1
            for layer in reversed(range(len(params))):
                w, b = params[layer]
                gw = grad.T @ acts[layer]
                gb = grad.sum(axis=0)
                if layer > 0:
                    grad = (grad @ w) * (acts[layer] > 0)
                new = []
                for k, (g, param) in enumerate(((gw, w), (gb, b))):
                    mk = 0.9 * m[layer][k] + 0.1 * g
                    vk = 0.999 * v[layer][k] + 0.001 * g * g
                    m[layer] = (mk, m[layer][1]) if k == 0 else (m[layer][0], mk)
                    v[layer] = (vk, v[layer][1]) if k == 0 else (v[layer][0], vk)
                    mhat = mk / (1 - 0.9 ** step)
                    vhat = vk / (1 - 0.999 ** step)
                    new.append(param - lr * mhat / (np.sqrt(vhat) + 1e-8))
                params[layer] = (new[0], new[1])
    return params


def predict(params, x):
    return forward(params, x)[-1].argmax(axis=1)


def fmt(v):
    return " ".join(repr(float(a)) for a in v)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path(__file__).resolve().parents[1] / "data")
    parser.add_argument("--seed", type=int, default=2024)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    x_train, y_train = dataset(rng, 1000)
    x_test, y_test = dataset(rng, 200)
    params = train(rng, x_train, y_train)
    acc = (predict(params, x_test) == y_test).mean()
    print(f"test accuracy {acc:.4f}")

    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "mlp8x8.weights", "w") as f:
        f.write(f"# 8x8 bars classifier, test accuracy {acc:.4f}\n")
        f.write(f"mlp k=2 layers={len(params)}\n")
        for i, (w, b) in enumerate(params):
            act = "relu" if i < len(params) - 1 else "identity"
            f.write(f"layer {w.shape[0]} {w.shape[1]} {act}\n")
            for row in w:
                f.write(fmt(row) + "\n")
            f.write(fmt(b) + "\n")

    pred = predict(params, x_test)
    chosen = []
    for label in (0, 1):
        hits = np.flatnonzero((y_test == label) & (pred == label))[:10]
        chosen.extend(hits.tolist())
    with open(args.out / "mlp8x8_points.txt", "w") as f:
        for i in chosen:
            f.write(fmt(x_test[i]) + "\n")
    print(f"wrote {len(chosen)} originals")


if __name__ == "__main__":
    main()
