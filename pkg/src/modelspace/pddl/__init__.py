from .errors import (
    ArityMismatch,
    GroundingBlowup,
    PddlError,
    PddlSyntaxError,
    TypeMismatch,
    UnknownObject,
    UnknownPredicate,
    UnknownType,
    UnsupportedFeature,
)
from .ground import (
    DEFAULT_GROUNDING_CAP,
    GroundAction,
    GroundTask,
    enumerate_ground_atoms,
    ground_task,
)
from .model import (
    ROOT_TYPE,
    ActionSchema,
    Atom,
    DomainModel,
    GroundAtom,
    Model,
    ProblemModel,
    check_ground_atom,
    is_ground_atom_well_typed,
)
from .parser import parse_domain, parse_model, parse_plan_text, parse_problem, parse_sexpr
from .render import (
    render_atom,
    render_domain,
    render_model,
    render_plan,
    render_problem,
)

__all__ = [
    "ArityMismatch",
    "GroundingBlowup",
    "PddlError",
    "PddlSyntaxError",
    "TypeMismatch",
    "UnknownObject",
    "UnknownPredicate",
    "UnknownType",
    "UnsupportedFeature",
    "DEFAULT_GROUNDING_CAP",
    "GroundAction",
    "GroundTask",
    "enumerate_ground_atoms",
    "ground_task",
    "ROOT_TYPE",
    "ActionSchema",
    "Atom",
    "DomainModel",
    "GroundAtom",
    "Model",
    "ProblemModel",
    "check_ground_atom",
    "is_ground_atom_well_typed",
    "parse_domain",
    "parse_model",
    "parse_plan_text",
    "parse_problem",
    "parse_sexpr",
    "render_atom",
    "render_domain",
    "render_model",
    "render_plan",
    "render_problem",
]
