"""Forward uniform-cost search and VAL-style plan validation.

Both entry points are pure functions over immutable inputs; running many
instances in parallel worker threads is safe.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from heapq import heappop, heappush

from .pddl import GroundAtom, GroundTask, Model
from .pddl.errors import PddlError

SOLVED = "solved"
UNSOLVABLE = "unsolvable"
BUDGET_EXHAUSTED = "budget_exhausted"

# Generator-produced instances are desk scale; exhaustion within these
# budgets marks an instance ineligible rather than unsolvable.
DEFAULT_MAX_EXPANSIONS = 200_000
DEFAULT_MAX_SECONDS = 30.0


class UnknownAction(PddlError):
    """A plan step names an action or binding absent from the task."""


@dataclass(frozen=True)
class Budget:
    max_expansions: int = DEFAULT_MAX_EXPANSIONS
    max_seconds: float = DEFAULT_MAX_SECONDS


@dataclass(frozen=True)
class Plan:
    steps: tuple[tuple[str, tuple[str, ...]], ...]
    cost: float = 0.0

    def __len__(self):
        return len(self.steps)


@dataclass
class SearchStats:
    expansions: int = 0
    generated: int = 0
    elapsed: float = 0.0


@dataclass
class SolveVerdict:
    status: str  # SOLVED | UNSOLVABLE | BUDGET_EXHAUSTED
    plan: Plan | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def solved(self) -> bool:
        return self.status == SOLVED

    @property
    def proven_unsolvable(self) -> bool:
        return self.status == UNSOLVABLE


@dataclass
class ValidationReport:
    valid: bool
    failing_step: int | None = None
    unmet_preconditions: frozenset[GroundAtom] = frozenset()
    goal_satisfied: bool = False


def solve(task: GroundTask, budget: Budget | None = None) -> SolveVerdict:
    """Dijkstra with duplicate detection; lexicographic tie-breaking via the
    pre-sorted action order. Zero-cost actions are permitted.

    UNSOLVABLE is returned only after the reachable state set is exhausted.
    """
    budget = budget or Budget()
    start = time.monotonic()
    stats = SearchStats()
    init, goal = task.init, task.goal

    heap: list[tuple[float, int, frozenset[int]]] = [(0.0, 0, init)]
    best: dict[frozenset[int], float] = {init: 0.0}
    parents: dict[frozenset[int], tuple[frozenset[int], object] | None] = {init: None}
    closed: set[frozenset[int]] = set()
    counter = 1

    while heap:
        g, _, state = heappop(heap)
        if state in closed:
            continue
        closed.add(state)
        if goal <= state:
            stats.elapsed = time.monotonic() - start
            return SolveVerdict(SOLVED, _reconstruct(parents, state, g), stats)
        if stats.expansions >= budget.max_expansions or (
            stats.expansions % 1024 == 0
            and time.monotonic() - start > budget.max_seconds
        ):
            stats.elapsed = time.monotonic() - start
            return SolveVerdict(BUDGET_EXHAUSTED, None, stats)
        stats.expansions += 1
        for act in task.actions:
            if act.pre <= state:
                succ = (state - act.dele) | act.add
                ng = g + act.cost
                old = best.get(succ)
                if old is None or ng < old:
                    best[succ] = ng
                    parents[succ] = (state, act)
                    heappush(heap, (ng, counter, succ))
                    counter += 1
                    stats.generated += 1

    stats.elapsed = time.monotonic() - start
    return SolveVerdict(UNSOLVABLE, None, stats)


def _reconstruct(parents, state, cost) -> Plan:
    steps = []
    while parents[state] is not None:
        state, act = parents[state]
        steps.append((act.name, act.args))
    steps.reverse()
    return Plan(tuple(steps), cost)


def ground_plan_step(
    model: Model, name: str, args: tuple[str, ...]
) -> tuple[frozenset[GroundAtom], frozenset[GroundAtom], frozenset[GroundAtom]]:
    """Instantiate one plan step against the model; returns (pre, add, del)."""
    schema = model.domain.action(name)
    if schema is None:
        raise UnknownAction(f"unknown action '{name}'")
    if len(args) != len(schema.parameters):
        raise UnknownAction(
            f"action '{name}' expects {len(schema.parameters)} args, got {len(args)}"
        )
    binding = {}
    for (var, want), obj in zip(schema.parameters, args):
        got = model.problem.objects.get(obj)
        if got is None or not model.domain.is_subtype(got, want):
            raise UnknownAction(f"binding '{obj}' is not a valid '{want}' in '{name}'")
        binding[var] = obj

    def inst(lifted):
        out = set()
        for atom in lifted:
            resolved = tuple(binding.get(a, a) for a in atom.args)
            for arg in resolved:
                if arg not in model.problem.objects:
                    raise UnknownAction(f"constant '{arg}' unknown in step ({name})")
            out.add(GroundAtom(atom.predicate, resolved))
        return frozenset(out)

    return inst(schema.preconditions), inst(schema.add_effects), inst(schema.del_effects)


def validate_plan(model: Model, plan) -> ValidationReport:
    """Simulate the plan from init; report the first step whose positive
    preconditions are unmet, then check the goal."""
    steps = plan.steps if isinstance(plan, Plan) else tuple(plan)
    state = set(model.problem.init)
    for i, (name, args) in enumerate(steps):
        pre, add, dele = ground_plan_step(model, name, args)
        unmet = pre - state
        if unmet:
            return ValidationReport(
                valid=False, failing_step=i, unmet_preconditions=frozenset(unmet)
            )
        state -= dele
        state |= add
    goal_ok = model.problem.goal <= state
    return ValidationReport(valid=goal_ok, failing_step=None, goal_satisfied=goal_ok)
