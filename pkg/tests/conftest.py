import pathlib

import pytest

from modelspace.pddl import Model, parse_domain, parse_plan_text, parse_problem
from modelspace.planner import Plan

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
GOLDEN = pathlib.Path(__file__).parent / "golden"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


def load_model(domain_name: str, problem_name: str) -> Model:
    domain = parse_domain(fixture_text(domain_name))
    return Model(domain, parse_problem(fixture_text(problem_name), domain))


def load_plan(name: str) -> Plan:
    steps = tuple(parse_plan_text(fixture_text(name)))
    return Plan(steps, float(len(steps)))


@pytest.fixture(scope="session")
def travel_model():
    """Appendix-style 14-city travel task with goal (at city_c)."""
    return load_model("d1_domain.pddl", "d1_problem.pddl")


@pytest.fixture(scope="session")
def travel_exec_model():
    return load_model("d1_domain.pddl", "d5_problem.pddl")


@pytest.fixture(scope="session")
def barman_model():
    return load_model("d3_domain.pddl", "d3_problem.pddl")


@pytest.fixture(scope="session")
def cleaning_model():
    return load_model("d4_domain.pddl", "d4_problem.pddl")


@pytest.fixture(scope="session")
def t2():
    """Tiny three-city chain a -> b -> c with both services on both hops."""
    from modelspace.benchgen.domains import travel_domain
    from modelspace.pddl import GroundAtom, ProblemModel

    init = {
        GroundAtom("at", ("a",)),
        GroundAtom("neighboring", ("a", "b")),
        GroundAtom("neighboring", ("b", "c")),
        GroundAtom("has_taxi", ("a", "b")),
        GroundAtom("has_bus", ("a", "b")),
    }
    return Model(
        travel_domain(),
        ProblemModel(
            name="t2",
            domain_name="domaingotocity",
            objects={"a": "city", "b": "city", "c": "city"},
            init=frozenset(init),
            goal=frozenset({GroundAtom("at", ("c",))}),
        ),
    )
