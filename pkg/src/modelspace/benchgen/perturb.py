"""Perturbation: manufacture unsolvable/inexecutable instances with a known
minimal repair, by deleting 1-4 reasonable initial-state facts from a
solvable model."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..pddl import GroundAtom, Model, ground_task
from ..pddl.errors import PddlError
from ..planner import Plan, solve, validate_plan
from .families import ROOMBA_FAMILY, ReasonableFamily

_OBSTACLES = ("chair_blocking_path_between", "table_blocking_path_between")


class PerturbationFailed(PddlError):
    pass


class InvariantViolation(PddlError):
    pass


@dataclass
class BenchInstance:
    id: str
    domain_kind: str
    solvable: Model
    perturbed: Model
    deleted_facts: frozenset[GroundAtom]
    family: ReasonableFamily
    k: int
    seed: int
    target_plan: Plan | None = None
    extra: dict = field(default_factory=dict)


def _perturb_init(model: Model, chosen, family_id: str, rng) -> frozenset[GroundAtom]:
    init = set(model.problem.init) - set(chosen)
    if family_id == ROOMBA_FAMILY:
        # the inverse transform: the cleared path becomes blocked by furniture
        for atom in chosen:
            init.add(GroundAtom(rng.choice(_OBSTACLES), atom.args))
    return frozenset(init)


def perturb_unsolvable(
    model: Model,
    family: ReasonableFamily,
    k: int,
    seed: int = 0,
    domain_kind: str = "",
    instance_id: str = "",
    max_tries: int = 30,
) -> BenchInstance:
    """Delete k family facts so the model becomes provably unsolvable;
    resamples the choice of facts up to max_tries times."""
    if not 1 <= k <= 4:
        raise ValueError("k must be in 1..4")
    candidates = sorted(family.removable)
    if k > len(candidates):
        raise PerturbationFailed(
            f"only {len(candidates)} removable facts available, need {k}"
        )
    rng = random.Random(f"perturb:{domain_kind}:{seed}:{k}")
    for _ in range(max_tries):
        chosen = frozenset(rng.sample(candidates, k))
        perturbed = model.with_init(_perturb_init(model, chosen, family.family_id, rng))
        if not solve(ground_task(perturbed)).proven_unsolvable:
            continue
        restored = perturbed.with_init(perturbed.problem.init | chosen)
        if not solve(ground_task(restored)).solved:
            continue
        return BenchInstance(
            id=instance_id,
            domain_kind=domain_kind,
            solvable=model,
            perturbed=perturbed,
            deleted_facts=chosen,
            family=family,
            k=k,
            seed=seed,
        )
    raise PerturbationFailed(f"no {k}-subset of removable facts yields unsolvability")


def select_target_plan(inst: BenchInstance) -> Plan:
    """The planner's deterministic plan for the solvable original; stored on
    the instance. Must be broken by the perturbation."""
    verdict = solve(ground_task(inst.solvable))
    if not verdict.solved:
        raise InvariantViolation("solvable original did not solve")
    if validate_plan(inst.perturbed, verdict.plan).valid:
        raise InvariantViolation("target plan survived the perturbation")
    inst.target_plan = verdict.plan
    return verdict.plan


def verify_instance(inst: BenchInstance) -> bool:
    """Independent re-check of all instance invariants."""
    if not solve(ground_task(inst.solvable)).solved:
        return False
    if not solve(ground_task(inst.perturbed)).proven_unsolvable:
        return False
    restored = inst.perturbed.with_init(inst.perturbed.problem.init | inst.deleted_facts)
    if not solve(ground_task(restored)).solved:
        return False
    if inst.target_plan is not None:
        if not validate_plan(inst.solvable, inst.target_plan).valid:
            return False
        if validate_plan(inst.perturbed, inst.target_plan).valid:
            return False
    return True
