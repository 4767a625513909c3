"""Batch generation of verified benchmark instances."""
from __future__ import annotations

import random

from .domains import GenerationFailed, generate_instance
from .perturb import BenchInstance, PerturbationFailed, perturb_unsolvable, select_target_plan


def make_instance(
    kind: str, seed: int, k: int | None = None,
    k_range: tuple[int, int] = (1, 4), **size,
) -> BenchInstance:
    """One perturbed instance with its target plan; deterministic in
    (kind, seed, k, size). When k is not given it is drawn from k_range,
    clamped to the facts the instance can spare."""
    model, family = generate_instance(kind, seed=seed, **size)
    if k is None:
        rng = random.Random(f"corpus:{kind}:{seed}")
        lo, hi = k_range
        k = rng.randint(lo, max(lo, min(hi, len(family.removable))))
    inst = perturb_unsolvable(
        model, family, k, seed=seed, domain_kind=kind,
        instance_id=f"{kind}_{seed:05d}_k{k}",
    )
    select_target_plan(inst)
    return inst


def generate_corpus(
    kinds, count_per_kind: int, seed: int = 0, k: int | None = None,
    k_range: tuple[int, int] = (1, 4), **size,
) -> list[BenchInstance]:
    """count_per_kind instances per domain kind; instances that fail to
    perturb are skipped by advancing the seed (bounded)."""
    out: list[BenchInstance] = []
    for kind in kinds:
        made = 0
        s = seed
        attempts = 0
        while made < count_per_kind:
            attempts += 1
            if attempts > count_per_kind * 10:
                raise GenerationFailed(f"could not generate {count_per_kind} '{kind}' instances")
            try:
                out.append(make_instance(kind, seed=s, k=k, k_range=k_range, **size))
                made += 1
            except PerturbationFailed:
                pass
            s += 1
    return out
