"""Text format for bound quiver presentations.

::

    # KA_3 modulo the path of length two
    [quiver]
    vertices = 1 2 3
    arrows = a:1->2 b:2->3
    [relations]
    1*a.b
    [options]
    cap = 3
    field = fp:32003
    [meta]
    tag = {"kind": "rad2", ...}

Relation terms are ``coefficient*path`` joined by ``+`` (a leading ``-`` is
accepted); paths are dot-joined arrow ids and coefficients are integers or
fractions ``p/q``. A bare path means coefficient 1. The ``[meta]`` section
records how a presentation was built, with factor presentations embedded as
text in the same format.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .algebra import BoundPresentation, ConstructionTag, PresentationError
from .field import Field
from .quiver import Arrow, Quiver

SECTIONS = ("quiver", "relations", "options", "meta")
_KEYVAL = re.compile(r"([A-Za-z_]+)\s*=")
_ARROW = re.compile(r"^([A-Za-z0-9_']+):([A-Za-z0-9_']+)->([A-Za-z0-9_']+)$")
_TERM = re.compile(r"^(?:([+-]?\d+(?:/\d+)?)\s*\*\s*)?([A-Za-z0-9_'.]+)$")


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _split_keyvals(text: str, lineno: int) -> list[tuple[str, str]]:
    marks = list(_KEYVAL.finditer(text))
    if not marks or marks[0].start() != 0:
        raise ParseError(lineno, f"expected 'key = value', got {text!r}")
    out = []
    for k, m in enumerate(marks):
        end = marks[k + 1].start() if k + 1 < len(marks) else len(text)
        out.append((m.group(1), text[m.end():end].strip()))
    return out


def _parse_relation(text: str, lineno: int) -> tuple:
    # normalise "a - b" into "a + -b" before splitting on "+"
    text = re.sub(r"(?<=[A-Za-z0-9_'])\s*-\s*", " + -", text.strip())
    terms = []
    for raw in text.split("+"):
        raw = raw.strip().replace(" ", "")
        if not raw:
            raise ParseError(lineno, "empty relation term")
        if raw.startswith("-") and "*" not in raw:
            raw = "-1*" + raw[1:]
        m = _TERM.match(raw)
        if not m:
            raise ParseError(lineno, f"cannot read relation term {raw!r}")
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        path = tuple(m.group(2).split("."))
        if any(not p for p in path):
            raise ParseError(lineno, f"malformed path {m.group(2)!r}")
        terms.append((path, coeff))
    return tuple(terms)


def parse_algebra(text: str) -> BoundPresentation:
    section = None
    vertices: list[str] | None = None
    arrows: list[Arrow] = []
    relations = []
    cap, fld, tag = 10, Field(), None
    seen_quiver_keys: set[str] = set()
    quiver_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            m = re.match(r"^\[([a-z]+)\]\s*(.*)$", line)
            if not m or m.group(1) not in SECTIONS:
                raise ParseError(lineno, f"unknown section header {line!r}")
            section = m.group(1)
            line = m.group(2).strip()
            if not line:
                continue
        if section is None:
            raise ParseError(lineno, "content before the first section header")
        if section == "quiver":
            for key, val in _split_keyvals(line, lineno):
                if key in seen_quiver_keys:
                    raise ParseError(lineno, f"duplicate key {key!r}")
                seen_quiver_keys.add(key)
                quiver_line = lineno
                if key == "vertices":
                    vertices = val.split()
                elif key == "arrows":
                    for tok in val.split():
                        am = _ARROW.match(tok)
                        if not am:
                            raise ParseError(lineno, f"cannot read arrow {tok!r} (expected name:src->tgt)")
                        arrows.append(Arrow(*am.groups()))
                else:
                    raise ParseError(lineno, f"unknown quiver key {key!r}")
        elif section == "relations":
            relations.append((lineno, _parse_relation(line, lineno)))
        elif section == "options":
            for key, val in _split_keyvals(line, lineno):
                if key == "cap":
                    try:
                        cap = int(val)
                    except ValueError:
                        raise ParseError(lineno, f"cap must be an integer, got {val!r}") from None
                elif key == "field":
                    try:
                        fld = Field.parse(val)
                    except ValueError as exc:
                        raise ParseError(lineno, str(exc)) from None
                else:
                    raise ParseError(lineno, f"unknown option {key!r}")
        elif section == "meta":
            m = re.match(r"^tag\s*=\s*(.*)$", line)
            if not m:
                raise ParseError(lineno, f"unknown meta entry {line!r}")
            try:
                tag = _tag_from_json(json.loads(m.group(1)), fld)
            except (ValueError, KeyError, TypeError) as exc:
                raise ParseError(lineno, f"bad tag: {exc}") from None
    if vertices is None:
        raise ParseError(0, "missing 'vertices' in [quiver]")
    try:
        quiver = Quiver(tuple(vertices), tuple(arrows))
    except ValueError as exc:
        raise ParseError(quiver_line, str(exc)) from None
    for lineno, rel in relations:
        try:
            BoundPresentation(quiver, (rel,), max(cap, 2), fld)
        except PresentationError as exc:
            raise ParseError(lineno, str(exc)) from None
    try:
        return BoundPresentation(quiver, tuple(r for _, r in relations), cap, fld, tag)
    except PresentationError as exc:
        raise ParseError(0, str(exc)) from None


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def serialize_algebra(pres: BoundPresentation, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    q = pres.quiver
    lines.append("[quiver]")
    lines.append("vertices = " + " ".join(q.vertices))
    lines.append("arrows = " + " ".join(f"{a.name}:{a.source}->{a.target}" for a in q.arrows))
    lines.append("[relations]")
    for rel in pres.relations:
        lines.append(" + ".join(f"{_fmt_coeff(c)}*{'.'.join(p)}" for p, c in rel))
    lines.append("[options]")
    lines.append(f"cap = {pres.cap}")
    lines.append(f"field = {pres.field.spec()}")
    if pres.tag is not None:
        lines.append("[meta]")
        lines.append("tag = " + json.dumps(_tag_to_json(pres.tag), sort_keys=True))
    return "\n".join(lines) + "\n"


def _tag_to_json(tag: ConstructionTag) -> dict:
    return {
        "kind": tag.kind,
        "n": tag.n,
        "params": {k: v for k, v in tag.params},
        "factors": [serialize_algebra(f) for f in tag.factors],
    }


def _tag_from_json(data: dict, fld: Field) -> ConstructionTag:
    factors = tuple(parse_algebra(t) for t in data.get("factors", []))
    params = tuple(sorted(data.get("params", {}).items()))
    return ConstructionTag(data["kind"], factors, data.get("n"), params)


def load_algebra(path: str | Path) -> BoundPresentation:
    path = Path(path)
    return parse_algebra(path.read_text())


def save_algebra(pres: BoundPresentation, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(serialize_algebra(pres, comment))
