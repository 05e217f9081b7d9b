"""Seeded random edge perturbation: the add/del/mix graph anonymizers."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import BudgetError
from .graph import Graph, complement_size, write_edge_list


class Method(enum.Enum):
    ADD = "add"
    DEL = "del"
    MIX = "mix"

    @classmethod
    def parse(cls, text: str) -> "Method":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown perturbation method {text!r}; "
                             f"expected add, del or mix") from None


@dataclass(frozen=True)
class PerturbationSpec:
    """One perturbation setting: method, strength, seed, repetition count."""

    method: Method
    percentage: float
    seed: int
    runs: int = 1

    def __post_init__(self):
        if not 0.0 <= self.percentage <= 100.0:
            raise ValueError(f"percentage must be in [0, 100], got {self.percentage}")
        if self.runs < 1:
            raise ValueError(f"runs must be positive, got {self.runs}")


def derive_budget(m: int, percentage: float) -> int:
    """Edge budget w = percentage/100 of m, rounded half-up.

    Exact rational arithmetic so .5 cases never fall to float noise.
    """
    if not 0.0 <= percentage <= 100.0:
        raise ValueError(f"percentage must be in [0, 100], got {percentage}")
    return int(Fraction(percentage) * m / 100 + Fraction(1, 2))


def _rng_for_run(seed: int, run_index: int) -> np.random.Generator:
    # each run gets its own stream so runs replay independently and in parallel
    return np.random.default_rng(np.random.SeedSequence(entropy=seed,
                                                        spawn_key=(run_index,)))


def _sample_deletions(g: Graph, w: int, rng: np.random.Generator) -> np.ndarray:
    idx = rng.choice(g.m, size=w, replace=False)
    mask = np.ones(g.m, dtype=bool)
    mask[idx] = False
    return mask


def _sample_additions(g: Graph, w: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Draw w distinct complement edges uniformly.

    Rejection sampling on random vertex pairs (expected O(w) on sparse
    graphs); falls back to materializing the complement when the rejection
    rate gets pathological on dense graphs.
    """
    comp = complement_size(g)
    n = g.n
    chosen: set[tuple[int, int]] = set()
    budget_draws = 40 * w + 1000
    draws = 0
    while len(chosen) < w and draws < budget_draws:
        u = int(rng.integers(n))
        v = int(rng.integers(n))
        draws += 1
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in chosen or g.has_edge(*key):
            continue
        chosen.add(key)
    if len(chosen) < w:
        # dense graph: enumerate the remaining complement explicitly
        existing = {(int(u), int(v)) for u, v in g.edges}
        pool = [(u, v) for u in range(n) for v in range(u + 1, n)
                if (u, v) not in existing and (u, v) not in chosen]
        idx = rng.choice(len(pool), size=w - len(chosen), replace=False)
        chosen.update(pool[i] for i in idx)
    assert len(chosen) == w and comp >= w
    return sorted(chosen)


def perturb(g: Graph, spec: PerturbationSpec, run_index: int = 0) -> Graph:
    """Random edge perturbation of ``g``; deterministic in (seed, run_index).

    ADD inserts w uniform complement edges, DEL removes w uniform existing
    edges, MIX does floor(w/2) deletions then ceil(w/2) additions. Additions
    always come from the complement of the *original* edge set, so a mixed
    run never re-inserts an edge it just deleted.
    """
    if not 0 <= run_index < spec.runs:
        raise ValueError(f"run_index {run_index} outside 0..{spec.runs - 1}")
    w = derive_budget(g.m, spec.percentage)
    w_del, w_add = 0, 0
    if spec.method is Method.DEL:
        w_del = w
    elif spec.method is Method.ADD:
        w_add = w
    else:
        w_del, w_add = w // 2, w - w // 2

    comp = complement_size(g)
    if w_del > g.m:
        raise BudgetError(f"cannot delete {w_del} of {g.m} edges")
    if w_add > comp:
        raise BudgetError(f"cannot add {w_add} edges; complement has only {comp}")

    rng = _rng_for_run(spec.seed, run_index)
    keep_mask = _sample_deletions(g, w_del, rng) if w_del else np.ones(g.m, dtype=bool)
    added = _sample_additions(g, w_add, rng) if w_add else []

    kept = g.edges[keep_mask]
    if added:
        new_edges = np.vstack([kept, np.array(added, dtype=np.int64)])
    else:
        new_edges = kept.copy()
    order = np.lexsort((new_edges[:, 1], new_edges[:, 0]))
    return Graph(g.n, new_edges[order], labels=g.labels)


def perturbed_filename(label: str, spec: PerturbationSpec, run_index: int) -> str:
    pct = format(spec.percentage, "g")
    return f"{label}_{spec.method.value}{pct}_r{run_index}.txt"


def write_perturbed_runs(g: Graph, spec: PerturbationSpec, label: str,
                         out_dir: str | Path) -> list[Path]:
    """Generate all runs of a spec and save them as edge-list files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for r in range(spec.runs):
        h = perturb(g, spec, r)
        path = out / perturbed_filename(label, spec, r)
        write_edge_list(h, path)
        paths.append(path)
    return paths
