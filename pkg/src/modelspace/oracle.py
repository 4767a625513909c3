"""Ground-truth-backed mock provider.

Answers every prompt for a benchmark instance with the best response the
instance's ground truth supports: the deleted facts as additions, or the
first all-family option. Used as the ceiling baseline in place of a live
LLM.
"""
from __future__ import annotations

import re

from .benchgen.perturb import BenchInstance
from .edits import ADD_INIT, REMOVE_INIT, ModelEdit
from .llm.client import FunctionProvider
from .pddl import GroundAtom

_OPTION_RE = re.compile(r"^Option (\d+): (.*)$", re.MULTILINE)
_SIGNED_ATOM_RE = re.compile(r"\(([+-]) \(([^()]+)\)\)")


def _parse_option_edits(line: str) -> frozenset[ModelEdit]:
    edits = set()
    for sign, inner in _SIGNED_ATOM_RE.findall(line):
        parts = inner.split()
        kind = ADD_INIT if sign == "+" else REMOVE_INIT
        edits.add(ModelEdit(kind, GroundAtom(parts[0], tuple(parts[1:]))))
    return frozenset(edits)


class OracleProvider(FunctionProvider):
    def __init__(self, inst: BenchInstance):
        super().__init__(self._answer, name="mock-oracle")
        self.inst = inst

    def _ground_truth_lines(self) -> str:
        return "\n".join(str(a) for a in sorted(self.inst.deleted_facts))

    def _answer(self, prompt: str) -> str:
        if "Pick the most reasonable option" in prompt:
            for num, line in _OPTION_RE.findall(prompt):
                edits = _parse_option_edits(line)
                if edits and self.inst.family.is_member_set(edits, self.inst.perturbed):
                    return num
            return "1"
        # ranked-list and direct-edit prompts both take the deleted facts,
        # one atom per line
        return self._ground_truth_lines()
