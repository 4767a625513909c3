"""Ground-truth "reasonable change" families, one per domain.

A family decides which edit sets count as preferred repairs. Membership is a
pure function of (edit set, model), so a family can be reconstructed from its
id alone when an instance is loaded from disk; the `removable` tuple is only
used at generation time to pick perturbation targets.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..edits import ADD_INIT, REMOVE_INIT, ModelEdit
from ..pddl import GroundAtom, Model

TRAVEL_FAMILY = "travel_services"
ROOMBA_FAMILY = "roomba_clear_paths"
BARMAN_FAMILY = "barman_clean_containers"
LOGISTICS_SIMPLE_FAMILY = "logistics_simple_ready_trucks"
LOGISTICS_FAMILY = "logistics_vehicle_positions"

_OBSTACLES = ("chair_blocking_path_between", "table_blocking_path_between")


def _is_travel_member(edit: ModelEdit, model: Model) -> bool:
    # new taxi or bus services between neighboring cities only
    return (
        edit.kind == ADD_INIT
        and edit.atom.predicate in ("has_taxi", "has_bus")
        and GroundAtom("neighboring", edit.atom.args) in model.problem.init
    )


def _cell_coords(name: str) -> tuple[int, int] | None:
    parts = name.split("_")
    if len(parts) != 3 or parts[0] != "cell":
        return None
    try:
        return int(parts[1]), int(parts[2])
    except ValueError:
        return None


def _adjacent(x: str, y: str) -> bool:
    a, b = _cell_coords(x), _cell_coords(y)
    if a is None or b is None:
        return False
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


def _is_roomba_member_set(edits, model: Model) -> bool:
    # clearing paths between adjacent cells; an obstacle may be removed only
    # together with the matching path-clear addition
    adds = set()
    removes = []
    for e in edits:
        if e.kind == ADD_INIT and e.atom.predicate == "path_is_clear" and _adjacent(*e.atom.args):
            adds.add(e.atom.args)
        elif e.kind == REMOVE_INIT and e.atom.predicate in _OBSTACLES:
            removes.append(e.atom.args)
        else:
            return False
    return all(args in adds for args in removes)


def _is_barman_member(edit: ModelEdit, model: Model) -> bool:
    # marking containers as clean
    if edit.kind != ADD_INIT or edit.atom.predicate != "clean" or len(edit.atom.args) != 1:
        return False
    obj_type = model.problem.objects.get(edit.atom.args[0])
    return obj_type is not None and model.domain.is_subtype(obj_type, "container")


def _is_logistics_simple_member(edit: ModelEdit, model: Model) -> bool:
    # marking trucks as ready
    if edit.kind != ADD_INIT or edit.atom.predicate != "ready" or len(edit.atom.args) != 1:
        return False
    return model.problem.objects.get(edit.atom.args[0]) == "truck"


def _is_logistics_member(edit: ModelEdit, model: Model) -> bool:
    # vehicle placements consistent with the city structure: trucks anywhere,
    # airplanes only at airports
    if edit.kind != ADD_INIT or len(edit.atom.args) != 2:
        return False
    vehicle, place = edit.atom.args
    if edit.atom.predicate == "at_truck":
        return model.problem.objects.get(vehicle) == "truck"
    if edit.atom.predicate == "at_airplane":
        return (
            model.problem.objects.get(vehicle) == "airplane"
            and GroundAtom("airport", (place,)) in model.problem.init
        )
    return False


_MEMBER_FNS = {
    TRAVEL_FAMILY: _is_travel_member,
    BARMAN_FAMILY: _is_barman_member,
    LOGISTICS_SIMPLE_FAMILY: _is_logistics_simple_member,
    LOGISTICS_FAMILY: _is_logistics_member,
}


@dataclass(frozen=True)
class ReasonableFamily:
    family_id: str
    removable: tuple[GroundAtom, ...] = ()

    def is_member_set(self, edits, model: Model) -> bool:
        if self.family_id == ROOMBA_FAMILY:
            return _is_roomba_member_set(edits, model)
        fn = _MEMBER_FNS.get(self.family_id)
        if fn is None:
            raise ValueError(f"unknown family '{self.family_id}'")
        return all(fn(e, model) for e in edits)


def family_for(family_id: str) -> ReasonableFamily:
    """Reconstruct a family (without perturbation targets) from its id."""
    if family_id != ROOMBA_FAMILY and family_id not in _MEMBER_FNS:
        raise ValueError(f"unknown family '{family_id}'")
    return ReasonableFamily(family_id)
