"""Combinatorial search over edit sets.

Both entry points compile candidate edits into zero-parameter actions that
are only applicable in an initial "editing" phase, then run uniform-cost
search on the combined task: the edit actions appearing in a goal-reaching
plan are the repair. Returned solutions are re-verified against the
objective metric before being handed back.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from heapq import heappop, heappush

from .compilation import compile_executability
from .edits import (
    ADD_INIT,
    UNSOLVABILITY,
    ModelEdit,
    RepairTask,
    apply_edits,
)
from .pddl import GroundAtom, GroundTask, Model, ground_task
from .pddl.ground import GroundAction
from .planner import Budget, SearchStats, solve, validate_plan

PROVEN_INSUFFICIENT = "proven_insufficient"
BUDGET_EXHAUSTED = "budget_exhausted"

# Paper-scale enumeration budgets: expansions per use case, 2-hour wall clock.
ENUM_EXPANSIONS_UNSOLVABILITY = 5_000
ENUM_EXPANSIONS_EXECUTABILITY = 10_000
ENUM_MAX_SECONDS = 7_200.0

MAX_RETAINED_SOLUTIONS = 20


@dataclass
class RepairSolution:
    edits: frozenset[ModelEdit]
    repaired: Model
    total_cost: float
    stats: SearchStats = field(default_factory=SearchStats)


@dataclass
class NoSolution:
    reason: str  # PROVEN_INSUFFICIENT | BUDGET_EXHAUSTED
    stats: SearchStats = field(default_factory=SearchStats)


@dataclass
class _Compiled:
    task: GroundTask
    edit_actions: list[GroundAction]  # index-aligned with edits/costs
    edits: list[ModelEdit]
    costs: list[float]
    other_actions: list[GroundAction]


def _normalize_space(space) -> tuple[list[ModelEdit], list[float]]:
    edits, costs = [], []
    seen = set()
    for item in space:
        edit, cost = item if isinstance(item, tuple) else (item, 1.0)
        if edit in seen:
            continue
        seen.add(edit)
        edits.append(edit)
        costs.append(float(cost))
    return edits, costs


def _compile_edit_search(task: RepairTask, space) -> _Compiled:
    base = task.base
    model = (
        base
        if task.use_case == UNSOLVABILITY
        else compile_executability(base, task.target_plan)
    )
    gt = ground_task(model)
    edits, costs = _normalize_space(space)

    atoms = list(gt.atoms)
    atom_index = dict(gt.atom_index)
    phase = "editing"
    while GroundAtom(phase) in atom_index or GroundAtom("x" + phase) in atom_index:
        phase = "x" + phase
    editing = GroundAtom(phase)
    executing = GroundAtom("x" + phase)
    for extra in (editing, executing):
        atom_index[extra] = len(atoms)
        atoms.append(extra)
    e_idx, x_idx = atom_index[editing], atom_index[executing]

    # Preconditions are positive-only, so an edit whose atom appears in no
    # precondition and not in the goal can never be part of a minimal
    # solution; dropping such edits (and hallucinated atoms outside the
    # universe entirely) keeps the branching factor down.
    relevant = set(gt.goal)
    for act in gt.actions:
        relevant |= act.pre

    edit_actions = []
    kept_edits, kept_costs = [], []
    for edit, cost in zip(edits, costs):
        idx = atom_index.get(edit.atom)
        if idx is None or idx not in relevant:
            continue
        i = len(edit_actions)
        if edit.kind == ADD_INIT:
            pre, add, dele = frozenset({e_idx}), frozenset({idx}), frozenset()
        else:
            pre, add, dele = frozenset({e_idx, idx}), frozenset(), frozenset({idx})
        edit_actions.append(
            GroundAction(f"_edit_{i:04d}", (), pre=pre, add=add, dele=dele, cost=cost)
        )
        kept_edits.append(edit)
        kept_costs.append(cost)
    edits, costs = kept_edits, kept_costs

    end_editing = GroundAction(
        "_end_editing", (), pre=frozenset({e_idx}),
        add=frozenset({x_idx}), dele=frozenset({e_idx}), cost=0.0,
    )
    originals = [
        GroundAction(a.name, a.args, a.pre | {x_idx}, a.add, a.dele, cost=0.0)
        for a in gt.actions
    ]
    compiled_task = GroundTask(
        atoms=tuple(atoms),
        atom_index=atom_index,
        actions=tuple(edit_actions) + (end_editing,) + tuple(originals),
        init=gt.init | {e_idx},
        goal=gt.goal,
    )
    return _Compiled(compiled_task, edit_actions, edits, costs, [end_editing] + originals)


def _search(comp: _Compiled, budget: Budget, enumerate_all: bool):
    """Uniform-cost search over (state, applied-edit-set) nodes.

    Edits are forced into ascending index order so each edit set is explored
    once. Returns (solutions, exhausted, stats): solutions is a list of
    (edit frozenset, cost); with enumerate_all=False it has at most one entry.
    """
    task = comp.task
    goal = task.goal
    start = time.monotonic()
    stats = SearchStats()
    n_edits = len(comp.edit_actions)

    root = (task.init, frozenset())
    heap = [(0.0, 0, task.init, frozenset(), -1)]
    best = {root: 0.0}
    closed = set()
    counter = 1
    cached: list[frozenset] = []
    cached_costs: list[float] = []

    while heap:
        g, _, state, edset, max_idx = heappop(heap)
        key = (state, edset)
        if key in closed:
            continue
        closed.add(key)
        # supersets (and duplicates) of cached solutions cannot yield new
        # minimal solutions
        if any(c <= edset for c in cached):
            continue
        if goal <= state:
            cached.append(edset)
            cached_costs.append(g)
            if not enumerate_all:
                stats.elapsed = time.monotonic() - start
                return list(zip(cached, cached_costs)), False, stats
            continue
        if stats.expansions >= budget.max_expansions or (
            stats.expansions % 256 == 0
            and time.monotonic() - start > budget.max_seconds
        ):
            stats.elapsed = time.monotonic() - start
            return list(zip(cached, cached_costs)), False, stats
        stats.expansions += 1

        for i in range(max_idx + 1, n_edits):
            act = comp.edit_actions[i]
            if act.pre <= state:
                succ = (state - act.dele) | act.add
                nedset = edset | {comp.edits[i]}
                _push(heap, best, succ, nedset, i, g + act.cost, counter)
                counter += 1
                stats.generated += 1
        for act in comp.other_actions:
            if act.pre <= state:
                succ = (state - act.dele) | act.add
                _push(heap, best, succ, edset, n_edits, g + act.cost, counter)
                counter += 1
                stats.generated += 1

    stats.elapsed = time.monotonic() - start
    return list(zip(cached, cached_costs)), True, stats


def _push(heap, best, state, edset, max_idx, cost, counter):
    key = (state, edset)
    old = best.get(key)
    if old is None or cost < old:
        best[key] = cost
        heappush(heap, (cost, counter, state, edset, max_idx))


def verify_repair(task: RepairTask, edits, budget: Budget | None = None) -> bool:
    """Recompute the objective metric on the repaired model."""
    repaired = apply_edits(task.base, edits)
    if task.use_case == UNSOLVABILITY:
        return solve(ground_task(repaired), budget).solved
    return validate_plan(repaired, task.target_plan).valid


def repair_min_cost(
    task: RepairTask, space, budget: Budget | None = None
) -> RepairSolution | NoSolution:
    """Min-cost sound edit set expressible from `space` (Dijkstra-optimal)."""
    budget = budget or Budget()
    comp = _compile_edit_search(task, space)
    solutions, exhausted, stats = _search(comp, budget, enumerate_all=False)
    if not solutions:
        reason = PROVEN_INSUFFICIENT if exhausted else BUDGET_EXHAUSTED
        return NoSolution(reason, stats)
    edits, cost = solutions[0]
    repaired = apply_edits(task.base, edits)
    if not verify_repair(task, edits):
        raise AssertionError(
            "internal invariant violation: search returned an unsound repair"
        )
    return RepairSolution(edits, repaired, cost, stats)


def enumerate_solutions(
    task: RepairTask, space, budget: Budget | None = None
) -> list[frozenset] | NoSolution:
    """Exhaustive-until-budget enumeration of sound edit sets under unit
    edit costs; strict supersets of found sets are pruned; at most 20
    retained, ordered by (cardinality, lexicographic)."""
    if budget is None:
        expansions = (
            ENUM_EXPANSIONS_UNSOLVABILITY
            if task.use_case == UNSOLVABILITY
            else ENUM_EXPANSIONS_EXECUTABILITY
        )
        budget = Budget(max_expansions=expansions, max_seconds=ENUM_MAX_SECONDS)
    uniform = [(e if not isinstance(e, tuple) else e[0], 1.0) for e in space]
    comp = _compile_edit_search(task, uniform)
    solutions, exhausted, stats = _search(comp, budget, enumerate_all=True)
    if not solutions:
        return NoSolution(
            PROVEN_INSUFFICIENT if exhausted else BUDGET_EXHAUSTED, stats
        )
    sets = [s for s, _ in solutions]
    minimal = [s for s in sets if not any(o < s for o in sets)]
    minimal.sort(key=lambda s: (len(s), sorted(s)))
    return minimal[:MAX_RETAINED_SOLUTIONS]
