"""JSON exchange format for proof trees.

Schema (one object per node):
    {
      "rule": "Backchain",                      # rule name string
      "sequent": {"antecedent": ["p \\/ q"],    # formulas in the ASCII
                  "succedent": ["r"]},          # grammar, fully parenthesized
      "principal": 0,                           # occurrence index or null
      "witness": "f(a)",                        # term text or null
      "eigen": "c",                             # constant name or null
      "clause_instance": {                      # Atomic/Backchain only
          "body": "p" | null,
          "heads": ["q", "r"],
          "used": 1,
          "terms": ["a"]},
      "premises": [ ... ]
    }

Bit-exactness is not required across writers; structural equality of the
decoded trees is. Generated names (_h*, _w*) are legal here even though
the user-facing parser rejects them: proof documents are emitted
artifacts, not user input.
"""

from __future__ import annotations

import json
from typing import Optional

from .kernel import Instance, ProofTree, Sequent
from .parser import _Parser, ParseError, parse
from .syntax import Formula, Term, term_to_text, to_text


def parse_term(text: str) -> Term:
    p = _Parser(text, allow_reserved=True)
    t = p.term()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", pos, text)
    return t


def _formula_in(text: str) -> Formula:
    return parse(text, allow_reserved=True)


def tree_to_dict(tree: ProofTree) -> dict:
    d = {
        "rule": tree.rule,
        "sequent": {
            "antecedent": [to_text(f) for f in tree.conclusion.antecedent],
            "succedent": [to_text(f) for f in tree.conclusion.succedent],
        },
        "principal": tree.principal,
        "witness": None if tree.witness is None else term_to_text(tree.witness),
        "eigen": tree.eigen,
        "premises": [tree_to_dict(p) for p in tree.premises],
    }
    if tree.instance is not None:
        inst = tree.instance
        d["clause_instance"] = {
            "body": None if inst.body is None else to_text(inst.body),
            "heads": [to_text(h) for h in inst.heads],
            "used": inst.used,
            "terms": [term_to_text(t) for t in inst.terms],
        }
    return d


def tree_from_dict(d: dict) -> ProofTree:
    try:
        rule = d["rule"]
        sequent = Sequent(
            tuple(_formula_in(t) for t in d["sequent"]["antecedent"]),
            tuple(_formula_in(t) for t in d["sequent"]["succedent"]))
        witness = d.get("witness")
        instance = None
        if d.get("clause_instance") is not None:
            ci = d["clause_instance"]
            instance = Instance(
                None if ci.get("body") is None else _formula_in(ci["body"]),
                tuple(_formula_in(h) for h in ci["heads"]),
                int(ci["used"]),
                tuple(parse_term(t) for t in ci.get("terms", [])))
        return ProofTree(
            conclusion=sequent,
            rule=rule,
            premises=tuple(tree_from_dict(p) for p in d.get("premises", [])),
            principal=d.get("principal"),
            witness=None if witness is None else parse_term(witness),
            eigen=d.get("eigen"),
            instance=instance)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed proof document: {exc}") from exc


def dumps(tree: ProofTree) -> str:
    return json.dumps(tree_to_dict(tree), indent=2)


def loads(text: str) -> ProofTree:
    return tree_from_dict(json.loads(text))


def save(tree: ProofTree, path: str):
    with open(path, "w") as fh:
        fh.write(dumps(tree))
        fh.write("\n")


def load(path: str) -> ProofTree:
    with open(path) as fh:
        return loads(fh.read())
