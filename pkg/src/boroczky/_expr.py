"""Tiny arithmetic-expression evaluator used by every text parser.

Expressions use ``^`` (or ``**``) for powers and explicit ``*``.  They are
parsed with :mod:`ast` and folded over caller-supplied values, so the same
grammar serves field elements and polynomials.
"""

from __future__ import annotations

import ast
import re
from typing import Any, Callable, Mapping

from .errors import ParseError


def evaluate(
    text: str,
    symbols: Mapping[str, Any],
    number: Callable[[int], Any],
    *,
    allow_division: bool = True,
) -> Any:
    """Evaluate ``text`` with integer literals mapped through ``number``.

    ``symbols`` maps names (including the literal ``sqrt(d)`` atoms, which are
    rewritten to placeholder identifiers) to values supporting ``+ - * / **``.
    """
    src = text.strip()
    if not src:
        raise ParseError("empty expression")
    table: dict[str, Any] = {}
    roots: dict[str, str] = {}
    for key, val in symbols.items():
        if key.startswith("sqrt("):
            name = f"__sqrt{len(roots)}"
            roots[_squash(key[5:-1])] = name
            table[name] = val
        else:
            table[key] = val
    src = _replace_sqrt(src, roots, text)
    src = src.replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}") from exc

    def walk(node: ast.AST) -> Any:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return number(node.value)
        if isinstance(node, ast.Name):
            if node.id not in table:
                raise ParseError(f"unknown symbol {node.id!r} in {text!r}")
            return table[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = walk(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                neg = False
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    exp, neg = exp.operand, True
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ParseError(f"exponent must be an integer literal in {text!r}")
                base = walk(node.left)
                return base ** (-exp.value if neg else exp.value)
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not allow_division:
                    raise ParseError(f"division not allowed in {text!r}")
                return left / right
        raise ParseError(f"unsupported syntax in {text!r}")

    return walk(tree)


def _squash(s: str) -> str:
    return re.sub(r"\s+", "", s)


def _replace_sqrt(src: str, roots: Mapping[str, str], text: str) -> str:
    out = []
    i = 0
    while True:
        j = src.find("sqrt(", i)
        if j < 0:
            out.append(src[i:])
            return "".join(out)
        depth, k = 0, j + 4
        while k < len(src):
            if src[k] == "(":
                depth += 1
            elif src[k] == ")":
                depth -= 1
                if depth == 0:
                    break
            k += 1
        else:
            raise ParseError(f"unbalanced sqrt( in {text!r}")
        arg = _squash(src[j + 5 : k])
        if arg not in roots:
            raise ParseError(f"sqrt({arg}) is not a generator here")
        out.append(src[i:j])
        out.append(roots[arg])
        i = k + 1


def needs_parens(s: str) -> bool:
    """True when ``s`` has a top-level ``+``/``-`` beyond a leading sign."""
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0 and s[i - 1] not in "*/^(":
            return True
    return False
