"""Parser for the :strips + :typing PDDL subset.

Accepted surface: typed object/variable lists, positive conjunctive
preconditions and goals, add/delete effects. Anything else raises
UnsupportedFeature. Identifiers are case-insensitive and normalized to
lowercase.
"""
from __future__ import annotations

from .errors import PddlSyntaxError, UnsupportedFeature
from .model import (
    ROOT_TYPE,
    ActionSchema,
    Atom,
    DomainModel,
    GroundAtom,
    Model,
    ProblemModel,
)

SUPPORTED_REQUIREMENTS = {":strips", ":typing"}


class _Token(str):
    line = 0
    column = 0


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            tok = _Token(ch)
            tok.line, tok.column = line, col
            tokens.append(tok)
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and text[i] not in " \t\r\n();":
                i += 1
                col += 1
            tok = _Token(text[start:i].lower())
            tok.line, tok.column = line, start_col
            tokens.append(tok)
    return tokens


def _read_sexpr(tokens: list[_Token], pos: int):
    """Return (tree, next_pos). Trees are nested lists of tokens."""
    if pos >= len(tokens):
        raise PddlSyntaxError("unexpected end of input")
    tok = tokens[pos]
    if tok == "(":
        items = []
        pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            item, pos = _read_sexpr(tokens, pos)
            items.append(item)
        if pos >= len(tokens):
            raise PddlSyntaxError("unbalanced '('", tok.line, tok.column)
        return items, pos + 1
    if tok == ")":
        raise PddlSyntaxError("unexpected ')'", tok.line, tok.column)
    return tok, pos + 1


def parse_sexpr(text: str):
    tokens = _tokenize(text)
    if not tokens:
        raise PddlSyntaxError("empty input")
    tree, pos = _read_sexpr(tokens, 0)
    if pos != len(tokens):
        extra = tokens[pos]
        raise PddlSyntaxError("trailing input after expression", extra.line, extra.column)
    return tree


def _err(node, message: str) -> PddlSyntaxError:
    tok = node
    while isinstance(tok, list):
        tok = tok[0] if tok else None
        if tok is None:
            return PddlSyntaxError(message)
    return PddlSyntaxError(message, getattr(tok, "line", None), getattr(tok, "column", None))


def _parse_typed_list(items) -> list[tuple[str, str]]:
    """Parse `a b - t c - u d` into [(a,t),(b,t),(c,u),(d,object)].

    Tolerates the glued `-type` form seen in hand-written files.
    """
    out: list[tuple[str, str]] = []
    pending: list[str] = []
    i = 0
    while i < len(items):
        tok = items[i]
        if isinstance(tok, list):
            raise _err(tok, "unexpected '(' in typed list")
        if tok == "-":
            if i + 1 >= len(items) or isinstance(items[i + 1], list):
                raise _err(tok, "missing type after '-'")
            t = str(items[i + 1])
            out.extend((name, t) for name in pending)
            pending = []
            i += 2
        elif tok.startswith("-") and len(tok) > 1:
            out.extend((name, tok[1:]) for name in pending)
            pending = []
            i += 1
        else:
            pending.append(str(tok))
            i += 1
    out.extend((name, ROOT_TYPE) for name in pending)
    return out


def _parse_atom(node) -> Atom:
    if not isinstance(node, list) or not node or any(isinstance(x, list) for x in node):
        raise _err(node, "expected an atom '(predicate args...)'")
    return Atom(str(node[0]), tuple(str(a) for a in node[1:]))


def _parse_conjunction(node, what: str) -> list:
    """Flatten `(and ...)`, a bare atom, or `()` into a list of item nodes."""
    if not isinstance(node, list):
        raise _err(node, f"expected {what}")
    if not node:
        return []
    if node[0] == "and":
        return node[1:]
    return [node]


def _check_supported(node, context: str) -> None:
    if isinstance(node, list) and node:
        head = node[0]
        if not isinstance(head, list) and head in (
            "not", "or", "imply", "exists", "forall", "when", "=", "increase",
            "decrease", "assign",
        ):
            raise UnsupportedFeature(f"'{head}' not supported in {context}")


def parse_domain(text: str) -> DomainModel:
    tree = parse_sexpr(text)
    if not isinstance(tree, list) or len(tree) < 2 or tree[0] != "define":
        raise _err(tree, "expected '(define (domain ...) ...)'")
    head = tree[1]
    if not isinstance(head, list) or len(head) != 2 or head[0] != "domain":
        raise _err(head, "expected '(domain name)'")
    name = str(head[1])

    hierarchy: dict[str, str | None] = {ROOT_TYPE: None}
    predicates: dict[str, tuple[str, ...]] = {}
    actions: list[ActionSchema] = []

    for section in tree[2:]:
        if not isinstance(section, list) or not section:
            raise _err(section, "expected a domain section")
        key = section[0]
        if key == ":requirements":
            for req in section[1:]:
                if req not in SUPPORTED_REQUIREMENTS:
                    raise UnsupportedFeature(f"requirement '{req}' not supported")
        elif key == ":types":
            for child, parent in _parse_typed_list(section[1:]):
                hierarchy[child] = parent
                hierarchy.setdefault(parent, None if parent == ROOT_TYPE else ROOT_TYPE)
            for t, parent in list(hierarchy.items()):
                if parent is None and t != ROOT_TYPE:
                    hierarchy[t] = ROOT_TYPE
        elif key == ":predicates":
            for decl in section[1:]:
                if not isinstance(decl, list) or not decl:
                    raise _err(decl, "expected a predicate declaration")
                pname = str(decl[0])
                if pname in predicates:
                    raise _err(decl, f"duplicate predicate '{pname}'")
                predicates[pname] = tuple(t for _, t in _parse_typed_list(decl[1:]))
        elif key == ":action":
            actions.append(_parse_action(section))
        else:
            raise UnsupportedFeature(f"domain section '{key}' not supported")

    domain = DomainModel(name, hierarchy, predicates, tuple(actions))
    domain.validate()
    return domain


def _parse_action(section) -> ActionSchema:
    if len(section) < 2 or isinstance(section[1], list):
        raise _err(section, "expected action name")
    name = str(section[1])
    fields = {}
    i = 2
    while i < len(section):
        key = section[i]
        if isinstance(key, list) or not key.startswith(":"):
            raise _err(key, "expected an action keyword")
        if i + 1 >= len(section):
            raise _err(key, f"missing value for '{key}'")
        fields[str(key)] = section[i + 1]
        i += 2
    if ":parameters" not in fields:
        raise _err(section, f"action '{name}' has no :parameters")
    params = tuple(_parse_typed_list(fields[":parameters"]))

    pre: set[Atom] = set()
    for item in _parse_conjunction(fields.get(":precondition", []), "precondition"):
        _check_supported(item, f"preconditions of '{name}'")
        pre.add(_parse_atom(item))

    adds: set[Atom] = set()
    dels: set[Atom] = set()
    for item in _parse_conjunction(fields.get(":effect", []), "effect"):
        if isinstance(item, list) and item and item[0] == "not":
            if len(item) != 2:
                raise _err(item, "expected '(not (atom))'")
            dels.add(_parse_atom(item[1]))
        else:
            _check_supported(item, f"effects of '{name}'")
            adds.add(_parse_atom(item))
    # `(and p (not p))` style conflicts: delete-then-add semantics are out of
    # subset, reject them outright
    return ActionSchema(name, params, frozenset(pre), frozenset(adds), frozenset(dels))


def parse_problem(text: str, domain: DomainModel) -> ProblemModel:
    tree = parse_sexpr(text)
    if not isinstance(tree, list) or len(tree) < 2 or tree[0] != "define":
        raise _err(tree, "expected '(define (problem ...) ...)'")
    head = tree[1]
    if not isinstance(head, list) or len(head) != 2 or head[0] != "problem":
        raise _err(head, "expected '(problem name)'")
    name = str(head[1])

    domain_name = domain.name
    objects: dict[str, str] = {}
    init: set[GroundAtom] = set()
    goal: set[GroundAtom] = set()

    for section in tree[2:]:
        if not isinstance(section, list) or not section:
            raise _err(section, "expected a problem section")
        key = section[0]
        if key == ":domain":
            domain_name = str(section[1])
        elif key == ":objects":
            for obj, t in _parse_typed_list(section[1:]):
                objects[obj] = t
        elif key == ":init":
            for node in section[1:]:
                _check_supported(node, "init")
                atom = _parse_atom(node)
                init.add(GroundAtom(atom.predicate, atom.args))
        elif key == ":goal":
            if len(section) != 2:
                raise _err(section, "expected a single goal formula")
            for node in _parse_conjunction(section[1], "goal"):
                _check_supported(node, "goal")
                atom = _parse_atom(node)
                goal.add(GroundAtom(atom.predicate, atom.args))
        else:
            raise UnsupportedFeature(f"problem section '{key}' not supported")

    problem = ProblemModel(name, domain_name, objects, frozenset(init), frozenset(goal))
    Model(domain, problem).validate()
    return problem


def parse_model(domain_text: str, problem_text: str) -> Model:
    domain = parse_domain(domain_text)
    return Model(domain, parse_problem(problem_text, domain))


def parse_plan_text(text: str) -> list[tuple[str, tuple[str, ...]]]:
    """Parse a VAL-style plan file: one '(action args...)' per line,
    ';'-prefixed comment lines ignored."""
    steps: list[tuple[str, tuple[str, ...]]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        tree = parse_sexpr(line)
        atom = _parse_atom(tree)
        steps.append((atom.predicate, atom.args))
    return steps
