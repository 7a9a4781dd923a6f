"""Problem files (``.slt``), model serializations and Hasse diagrams.

Problem grammar, one statement per line, ``#`` starts a comment::

    constants: a b c
    assert: a + b <= c
    query: a <= c

``constants:`` must come first and appear once. A term is one or more
constant names joined with ``+``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .core import NAME_RE, ConstantTable, Duple, Term, intern_constants, iter_bits
from .errors import FormatError
from .model import ENUMERATION_GUARD, Model, check_guard, lower_table, model_classes

_STATEMENT_RE = re.compile(r"\s*([A-Za-z_]+)\s*:")
_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op><=|\+)|(?P<bad>\S+))")
_ATOM_LINE_RE = re.compile(r"atom\s*\{([^}]*)\}\s*\Z")


@dataclass(frozen=True)
class Problem:
    table: ConstantTable
    assertions: tuple[Duple, ...] = field(default=())
    queries: tuple[Duple, ...] = field(default=())


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _tokens(text: str, offset: int, lineno: int) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = m.lastgroup
        col = offset + m.start(kind) + 1
        if kind == "bad":
            raise FormatError(f"unexpected {m.group(kind)!r}", lineno, col)
        out.append((kind, m.group(kind), col))
        pos = m.end()
    return out


def _parse_term(
    tokens: list[tuple[str, str, int]], table: ConstantTable, lineno: int, end_col: int
) -> Term:
    if not tokens:
        raise FormatError("empty term", lineno, end_col)
    names = []
    expect_name = True
    for kind, value, col in tokens:
        if expect_name:
            if kind != "name":
                raise FormatError(f"expected a constant name, found {value!r}", lineno, col)
            if value not in table:
                raise FormatError(f"undeclared constant {value!r}", lineno, col)
            names.append(value)
        elif value != "+":
            raise FormatError(f"expected '+', found {value!r}", lineno, col)
        expect_name = not expect_name
    if expect_name:
        raise FormatError("empty term after '+'", lineno, tokens[-1][2] + 1)
    return table.term(*names)


def parse_problem(text: str) -> Problem:
    table: ConstantTable | None = None
    assertions: list[Duple] = []
    seen: set[Duple] = set()
    queries: list[Duple] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw.rstrip("\r"))
        if not line.strip():
            continue
        m = _STATEMENT_RE.match(line)
        if m is None:
            col = len(line) - len(line.lstrip()) + 1
            raise FormatError("expected 'constants:', 'assert:' or 'query:'", lineno, col)
        keyword, rest, offset = m.group(1), line[m.end():], m.end()
        if keyword == "constants":
            if table is not None:
                raise FormatError("'constants:' declared twice", lineno, m.start(1) + 1)
            toks = _tokens(rest, offset, lineno)
            if not toks:
                raise FormatError("no constants declared", lineno, offset + 1)
            names = []
            for kind, value, col in toks:
                if kind != "name":
                    raise FormatError(f"invalid constant name {value!r}", lineno, col)
                if value in names:
                    raise FormatError(f"duplicate constant name {value!r}", lineno, col)
                names.append(value)
            table = intern_constants(names)
        elif keyword in ("assert", "query"):
            if table is None:
                raise FormatError(f"'{keyword}:' before 'constants:'", lineno, m.start(1) + 1)
            toks = _tokens(rest, offset, lineno)
            split = [i for i, tok in enumerate(toks) if tok[1] == "<="]
            if len(split) != 1:
                col = toks[split[1]][2] if len(split) > 1 else len(line) + 1
                raise FormatError("expected exactly one '<='", lineno, col)
            i = split[0]
            left = _parse_term(toks[:i], table, lineno, toks[i][2])
            right = _parse_term(toks[i + 1:], table, lineno, len(line) + 1)
            duple = Duple(left, right)
            if keyword == "query":
                queries.append(duple)
            elif duple not in seen:
                seen.add(duple)
                assertions.append(duple)
        else:
            raise FormatError(f"unknown statement {keyword!r}", lineno, m.start(1) + 1)
    if table is None:
        raise FormatError("missing 'constants:' line")
    return Problem(table, tuple(assertions), tuple(queries))


def term_text(table: ConstantTable, t: Term | int, sep: str = " + ") -> str:
    return sep.join(table.names_of(t))


def duple_text(table: ConstantTable, r: Duple) -> str:
    return f"{term_text(table, r.left)} <= {term_text(table, r.right)}"


def serialize_problem(problem: Problem) -> str:
    lines = ["constants: " + " ".join(problem.table.names)]
    lines += ["assert: " + duple_text(problem.table, r) for r in problem.assertions]
    lines += ["query: " + duple_text(problem.table, r) for r in problem.queries]
    return "\n".join(lines) + "\n"


def model_document(M: Model) -> dict:
    """Plain-data form of a model; atoms in canonical order."""
    return {
        "constants": list(M.table.names),
        "atoms": [M.table.names_of(m) for m in M.sorted_masks],
    }


def serialize_model(M: Model, style: str = "text") -> str:
    if style == "text":
        return "".join(
            "atom {" + ",".join(M.table.names_of(m)) + "}\n" for m in M.sorted_masks
        )
    if style == "structured":
        return json.dumps(model_document(M), indent=2) + "\n"
    raise ValueError(f"unknown style {style!r}")


def _atom_mask(table: ConstantTable, names: list[str], lineno: int | None) -> int:
    if not names:
        raise FormatError("atom with no constants", lineno)
    mask = 0
    for name in names:
        if name not in table:
            raise FormatError(f"undeclared constant {name!r}", lineno)
        mask |= 1 << table.index(name)
    return mask


def parse_model(text: str, table: ConstantTable | None = None) -> Model:
    """Read either serialization style.

    The text style carries no constant list, so ``table`` is required for it.
    A structured document must match ``table`` when one is given.
    """
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
            names = doc["constants"]
            atoms = doc["atoms"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise FormatError(f"malformed structured model: {exc}") from None
        if not isinstance(names, list) or not isinstance(atoms, list):
            raise FormatError("'constants' and 'atoms' must be arrays")
        doc_table = intern_constants(names)
        if table is not None and doc_table != table:
            raise FormatError(
                "model constants " + " ".join(doc_table.names)
                + " do not match problem constants " + " ".join(table.names)
            )
        masks = set()
        for a in atoms:
            if not isinstance(a, list):
                raise FormatError("each atom must be an array of constant names")
            masks.add(_atom_mask(doc_table, a, None))
        return Model(doc_table, frozenset(masks))
    if table is None:
        raise FormatError("text-style models need the constant table of a problem file")
    masks = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw.rstrip("\r")).strip()
        if not line:
            continue
        m = _ATOM_LINE_RE.match(line)
        if m is None:
            raise FormatError("expected 'atom {c1,c2,...}'", lineno)
        names = [s.strip() for s in m.group(1).split(",") if s.strip()]
        for name in names:
            if not NAME_RE.match(name):
                raise FormatError(f"invalid constant name {name!r}", lineno)
        masks.add(_atom_mask(table, names, lineno))
    return Model(table, frozenset(masks))


def hasse_dot(M: Model, guard: int | None = None) -> str:
    """DOT digraph of the model's elements with covering edges pointing upward."""
    check_guard(M.table, guard, ENUMERATION_GUARD, "Hasse diagram")
    classes = model_classes(M, guard)
    lower = lower_table(M)
    segs = [lower[c[0]] for c in classes]
    k = len(classes)
    # strictly above, as bitsets over class positions
    above = []
    for i in range(k):
        row = 0
        for j in range(k):
            if i != j and segs[i] & ~segs[j] == 0:
                row |= 1 << j
        above.append(row)
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box];"]
    for i, members in enumerate(classes):
        label = term_text(M.table, members[0], "+")
        lines.append(f'  n{i} [label="{label}"];')
    for i in range(k):
        indirect = 0
        for j in iter_bits(above[i]):
            indirect |= above[j]
        for j in iter_bits(above[i] & ~indirect):
            lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
