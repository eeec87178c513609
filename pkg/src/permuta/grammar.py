"""Parse group descriptions such as ``S(4)``, ``GL(2,3)`` or ``perm[(1 2),(1 2 3)]``."""

from __future__ import annotations

import re

from . import groups, matrices
from .errors import GroupSpecError
from .groups import FiniteGroup
from .permutations import Perm

_CALL = re.compile(r"^(S|D|C|GL|SL)\((\d+)(?:,(\d+))?\)$")


def parse_group(text: str, cap: int | None = None) -> FiniteGroup:
    """Build the group named by ``text``.

    Accepted forms: ``S(n)``, ``D(n)`` (order 2n), ``C(n)``, ``Q8``, ``M16``,
    ``GL(n,q)``, ``SL(n,q)``, ``perm[(1 2),(1 2 3)]`` and ``cayley:<path>``.
    """
    raw = text.strip()
    if raw.startswith("cayley:"):
        path = raw[len("cayley:") :]
        if not path:
            raise GroupSpecError("cayley: needs a file path")
        try:
            return groups.load_cayley(path)
        except (OSError, ValueError) as exc:
            raise GroupSpecError(str(exc)) from exc
    body = re.sub(r"\s+", "", raw)
    if body == "Q8":
        return groups.quaternion()
    if body == "M16":
        return groups.modular16()
    if body.startswith("perm[") and body.endswith("]"):
        return _perm_group(raw[raw.index("[") + 1 : raw.rindex("]")], cap)
    m = _CALL.match(body)
    if not m:
        raise GroupSpecError(f"unrecognized group spec {text!r}")
    kind, a, b = m.group(1), int(m.group(2)), m.group(3)
    if a < 1:
        raise GroupSpecError(f"{kind} needs n >= 1")
    if kind in ("GL", "SL"):
        if b is None:
            raise GroupSpecError(f"{kind} needs two arguments: {kind}(n,q)")
        try:
            build = matrices.generate_GL if kind == "GL" else matrices.generate_SL
            return build(a, int(b), cap=cap)
        except ValueError as exc:
            raise GroupSpecError(str(exc)) from exc
    if b is not None:
        raise GroupSpecError(f"{kind} takes one argument")
    return {"S": groups.symmetric, "D": groups.dihedral, "C": groups.cyclic}[kind](a)


def _perm_group(inner: str, cap: int | None) -> FiniteGroup:
    parts = re.findall(r"\([^()]*\)(?:\([^()]*\))*", inner)
    rest = re.sub(r"\([^()]*\)", "", inner).replace(",", "").strip()
    if not parts or rest:
        raise GroupSpecError(f"bad permutation list {inner!r}")
    try:
        gens = [Perm.parse(p) for p in parts]
    except ValueError as exc:
        raise GroupSpecError(str(exc)) from exc
    name = "perm[" + ",".join(str(g) for g in gens) + "]"
    return groups.generate_group(gens, cap=cap, name=name)
