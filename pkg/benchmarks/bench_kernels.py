"""Benchmark the tree kernels and tree-based model training under the numba
path and the pure-numpy fallback.

Run both variants and print a comparison table:

    python benchmarks/bench_kernels.py

The script re-executes itself with PITCHGATE_NO_NUMBA=1 for the fallback
column, so each variant gets a clean import of the kernel module.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time

import numpy as np


def _bench(label: str, func, repeats: int = 5) -> float:
    func()  # warmup (includes jit compile on the numba path)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - start)
    return best


def run_inner() -> dict:
    from pitchgate.classifiers import ModelConfig, train
    from pitchgate.classifiers import _kernels
    from pitchgate.classifiers.tree import build_tree
    from pitchgate.features import FeatureMatrix, LabelVector
    from pitchgate.classifiers.base import TrainingSet

    rng = np.random.default_rng(0)
    n, d = 4000, 8
    X = rng.normal(size=(n, d))
    y = (X[:, 0] + 0.5 * X[:, 3] > 0).astype(np.int64)
    r = rng.normal(size=n)
    feats = np.arange(d, dtype=np.int64)

    data = TrainingSet(
        X=FeatureMatrix(values=X[:600], columns=[f"c{i}" for i in range(d)],
                        pitch_ids=[str(i) for i in range(600)]),
        y=LabelVector(y[:600]),
    )

    results = {
        "path": "numba" if _kernels.HAVE_NUMBA else "numpy",
        "best_split_gini (4000x8)": _bench(
            "gini", lambda: _kernels.best_split_gini(X, y, feats, 2)
        ),
        "best_split_sse (4000x8)": _bench(
            "sse", lambda: _kernels.best_split_sse(X, r, feats, 2)
        ),
        "build_tree depth6 (4000x8)": _bench(
            "tree", lambda: build_tree(X, y, max_depth=6, min_samples_leaf=2)
        ),
        "random_forest 100 trees (600x8)": _bench(
            "forest",
            lambda: train(ModelConfig.make("random_forest", n_trees=100, seed=1), data),
            repeats=3,
        ),
        "gradient_boosting 100 stages (600x8)": _bench(
            "boost",
            lambda: train(ModelConfig.make("gradient_boosting", seed=1), data),
            repeats=3,
        ),
    }
    return results


def main() -> None:
    if "--inner" in sys.argv:
        print(json.dumps(run_inner()))
        return

    variants = {}
    for label, env_value in (("numba", "0"), ("numpy fallback", "1")):
        env = dict(os.environ, PITCHGATE_NO_NUMBA=env_value)
        out = subprocess.run(
            [sys.executable, __file__, "--inner"],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        variants[label] = json.loads(out.stdout.strip().splitlines()[-1])

    keys = [k for k in variants["numba"] if k != "path"]
    width = max(len(k) for k in keys) + 2
    print(f"{'kernel / model':<{width}}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for key in keys:
        nb = variants["numba"][key]
        py = variants["numpy fallback"][key]
        print(f"{key:<{width}}{nb * 1e3:>10.2f}ms{py * 1e3:>10.2f}ms{py / nb:>9.1f}x")
    if variants["numba"]["path"] != "numba":
        print("note: numba not importable; both columns ran the numpy fallback")


if __name__ == "__main__":
    main()
