"""Plain-text problem files.

Keyword sections, one item per line, diff-friendly:

    FIELD
    prime 2147483647
    VARS
    x
    y
    DIM
    1
    GENS
    x^2+y^2-1
    OBJECTIVE
    x^3+2*y^3
    DELTA
    2
    2

``FIELD``, ``VARS`` and ``DIM`` also accept their items inline after the
keyword.  Lines starting with ``#`` are comments.
"""

from __future__ import annotations

from dataclasses import dataclass

from .parsing import ParseError, parse_poly
from .ring import QQ, CoefficientField, MultiPoly, Ring

__all__ = ["ProblemFile", "load_problem", "parse_problem", "format_problem"]

_KEYWORDS = ("FIELD", "VARS", "DIM", "GENS", "OBJECTIVE", "DELTA")


@dataclass
class ProblemFile:
    ring: Ring
    dim: int
    generators: list
    objective: MultiPoly | None = None
    delta: list[int] | None = None

    @property
    def field(self) -> CoefficientField:
        return self.ring.field


def parse_problem(text: str) -> ProblemFile:
    sections: dict[str, list[str]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(None, 1)
        if head[0].upper() in _KEYWORDS:
            current = head[0].upper()
            sections.setdefault(current, [])
            if len(head) > 1:
                sections[current].append(head[1].strip())
            continue
        if current is None:
            raise ParseError(f"line {lineno}: content before any section keyword", 0)
        sections[current].append(line)

    field = QQ
    if "FIELD" in sections:
        spec = " ".join(sections["FIELD"]).split()
        if not spec:
            raise ParseError("empty FIELD section", 0)
        if spec[0].lower() in ("rationals", "qq", "q"):
            field = QQ
        elif spec[0].lower() == "prime":
            if len(spec) < 2:
                raise ParseError("FIELD prime requires a modulus", 0)
            field = CoefficientField(int(spec[1]))
        else:
            raise ParseError(f"unknown field spec {spec[0]!r}", 0)
    if "VARS" not in sections or not sections["VARS"]:
        raise ParseError("missing VARS section", 0)
    names: list[str] = []
    for item in sections["VARS"]:
        names.extend(item.split())
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names", 0)
    ring = Ring(tuple(names), field)
    if "DIM" not in sections or not sections["DIM"]:
        raise ParseError("missing DIM section", 0)
    dim = int(" ".join(sections["DIM"]).split()[0])
    if not 0 <= dim < ring.nvars:
        raise ParseError(f"dimension {dim} out of range for {ring.nvars} variables", 0)
    gens = [parse_poly(item, ring) for item in sections.get("GENS", [])]
    objective = None
    if sections.get("OBJECTIVE"):
        objective = parse_poly(" ".join(sections["OBJECTIVE"]), ring)
    delta = None
    if "DELTA" in sections:
        flat: list[int] = []
        for item in sections["DELTA"]:
            flat.extend(int(tok) for tok in item.replace(",", " ").split())
        delta = flat
    return ProblemFile(ring, dim, gens, objective, delta)


def load_problem(path: str) -> ProblemFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem(fh.read())


def format_problem(problem: ProblemFile) -> str:
    lines = ["FIELD"]
    if problem.field.modulus is None:
        lines.append("rationals")
    else:
        lines.append(f"prime {problem.field.modulus}")
    lines.append("VARS")
    lines.extend(problem.ring.variables)
    lines.append("DIM")
    lines.append(str(problem.dim))
    if problem.generators:
        lines.append("GENS")
        lines.extend(g.format() for g in problem.generators)
    if problem.objective is not None:
        lines.append("OBJECTIVE")
        lines.append(problem.objective.format())
    if problem.delta is not None:
        lines.append("DELTA")
        lines.extend(str(x) for x in problem.delta)
    return "\n".join(lines) + "\n"
