"""Plain-text algebra documents.

Grammar (one statement per line; ``#`` starts a comment, blank lines are
ignored, tokens are separated by whitespace)::

    document   := header* section*
    header     := "kind:" ("ainf" | "linf")
                | "max-arity:" INT
    section    := "[basis]" NEWLINE (NAME INT)*
                | "[differential]" NEWLINE (NAME "->" NAME SCALAR)*
                | "[operation " INT "]" NEWLINE (NAME+ "->" NAME SCALAR)*
                | "[morphism-target]" NEWLINE (NAME INT)*
                | "[morphism " INT "]" NEWLINE (NAME+ "->" NAME SCALAR)*
    SCALAR     := ["-"] DIGITS ["/" DIGITS]
    NAME       := any token without whitespace, "#", "[", "]" or "->"

``kind`` is required and must come first.  Operation n lists structure
constants op_n(inputs) = Σ scalar · output; morphism n lists the component
f_n from the document's space to the ``morphism-target`` space.  Every
entry must respect degrees: d lowers degree by one, op_n raises the total
input degree by n - 2 and f_n by n - 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .exactlin import GradedMap, GradedSpace
from .halg import AInfAlgebra, AInfMorphism, LInfAlgebra, structure_map

_SCALAR = re.compile(r"-?\d+(/\d+)?")
_FORBIDDEN = re.compile(r"[#\[\]]|->")
_SECTION = re.compile(r"\[(basis|differential|morphism-target|operation|morphism)(?:\s+(\S+))?\]$")

Entry = tuple[tuple[str, ...], str, Fraction]


class DocumentError(ValueError):
    """Parse or validation error, located by line number and field."""

    def __init__(self, line: int | None, fieldname: str, message: str):
        self.line = line
        self.field = fieldname
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{fieldname}: {message}")


def parse_scalar(text: str, line: int | None = None, fieldname: str = "scalar") -> Fraction:
    if not _SCALAR.fullmatch(text):
        raise DocumentError(line, fieldname, f"{text!r} is not an exact rational p or p/q")
    den = text.partition("/")[2]
    if den and int(den) == 0:
        raise DocumentError(line, fieldname, f"{text!r} has a zero denominator")
    return Fraction(text)


def format_scalar(value: Fraction) -> str:
    return str(Fraction(value))


@dataclass
class AlgebraDocument:
    kind: str
    basis: list[tuple[str, int]]
    differential: list[tuple[str, str, Fraction]] = field(default_factory=list)
    operations: dict[int, list[Entry]] = field(default_factory=dict)
    max_arity: int | None = None
    morphism_target: list[tuple[str, int]] | None = None
    morphism: dict[int, list[Entry]] = field(default_factory=dict)
    # line numbers for diagnostics; not part of the content
    lines: dict = field(default_factory=dict, compare=False, repr=False)

    def validate(self) -> "AlgebraDocument":
        if self.kind not in ("ainf", "linf"):
            raise DocumentError(self.lines.get("kind"), "kind", f"unknown kind {self.kind!r}")
        degrees = _degree_table(self.basis, self.lines, "basis")
        target = degrees
        if self.morphism_target is not None:
            target = _degree_table(self.morphism_target, self.lines, "morphism-target")
        elif self.morphism:
            raise DocumentError(None, "morphism", "morphism given without [morphism-target]")
        for k, (src, dst, _) in enumerate(self.differential):
            where = self.lines.get(("differential", k))
            _known(degrees, (src, dst), where, "differential")
            if degrees[dst] != degrees[src] - 1:
                raise DocumentError(where, "differential",
                                    f"{src} -> {dst} does not lower degree by one")
        for n, entries in self.operations.items():
            if n < 2:
                raise DocumentError(self.lines.get(("operation", n)), "operation", "arity must be >= 2")
            if self.max_arity is not None and n > self.max_arity:
                raise DocumentError(self.lines.get(("operation", n)), "operation",
                                    f"arity {n} above max-arity {self.max_arity}")
            _check_entries(entries, n, n - 2, degrees, degrees, self.lines, ("operation", n))
        for n, entries in self.morphism.items():
            if n < 1:
                raise DocumentError(self.lines.get(("morphism", n)), "morphism", "arity must be >= 1")
            _check_entries(entries, n, n - 1, degrees, target, self.lines, ("morphism", n))
        return self

    # conversion --------------------------------------------------------------

    def space(self) -> GradedSpace:
        return GradedSpace.from_pairs(self.basis)

    def to_algebra(self, max_arity: int | None = None):
        """Build the algebra; operations not listed are zero up to max_arity."""
        self.validate()
        V = self.space()
        top = max_arity or self.max_arity or max(self.operations, default=2)
        if any(n > top for n in self.operations):
            raise DocumentError(None, "max-arity", f"document has operations above arity {top}")
        d = GradedMap.from_entries(V, V, -1, [(s, t, c) for s, t, c in self.differential])
        ops = {n: structure_map(V, n, n - 2, entries) for n, entries in self.operations.items()}
        cls = AInfAlgebra if self.kind == "ainf" else LInfAlgebra
        return cls(V, d, ops, top)

    def morphism_maps(self) -> dict[int, GradedMap]:
        if self.morphism_target is None:
            return {}
        V = self.space()
        W = GradedSpace.from_pairs(self.morphism_target)
        return {n: structure_map(V, n, n - 1, entries, target=W) for n, entries in self.morphism.items()}

    @classmethod
    def from_algebra(cls, A, morphism: AInfMorphism | None = None) -> "AlgebraDocument":
        kind = "linf" if isinstance(A, LInfAlgebra) else "ainf"
        V = A.space
        diff = [(V.names[j], V.names[i], v) for i, j, v in A.d.nonzero_entries()]
        ops = {}
        for n in sorted(A.ops):
            if not A.ops[n].is_zero():
                ops[n] = _entries(A.ops[n], V)
        doc = cls(kind, list(V.basis), diff, ops, A.max_arity)
        if morphism is not None:
            doc.morphism_target = list(morphism.target.space.basis)
            doc.morphism = {n: _entries(f, V) for n, f in sorted(morphism.components.items())
                            if not f.is_zero()}
        return doc.validate()


def _entries(m: GradedMap, V: GradedSpace) -> list[Entry]:
    out = []
    for i, j, v in m.nonzero_entries():
        inputs = tuple(V.names[k] for k in m.source.split(j)) if m.source.arity > 1 \
            else (V.names[j],)
        out.append((inputs, m.target.names[i], v))
    return out


def _degree_table(basis, lines, fieldname) -> dict[str, int]:
    table = {}
    for k, (name, deg) in enumerate(basis):
        if name in table:
            raise DocumentError(lines.get((fieldname, k)), fieldname, f"duplicate basis name {name!r}")
        if _FORBIDDEN.search(name):
            raise DocumentError(lines.get((fieldname, k)), fieldname, f"invalid basis name {name!r}")
        table[name] = deg
    return table


def _known(degrees, names, line, fieldname):
    for name in names:
        if name not in degrees:
            raise DocumentError(line, fieldname, f"unknown basis element {name!r}")


def _check_entries(entries, n, degree, source, target, lines, key):
    seen = set()
    for k, (inputs, output, _) in enumerate(entries):
        where = lines.get(key + (k,))
        fieldname = f"{key[0]} {n}"
        if len(inputs) != n:
            raise DocumentError(where, fieldname, f"expected {n} inputs, got {len(inputs)}")
        _known(source, inputs, where, fieldname)
        _known(target, (output,), where, fieldname)
        want = sum(source[a] for a in inputs) + degree
        if target[output] != want:
            raise DocumentError(where, fieldname,
                                f"{' '.join(inputs)} -> {output} breaks degree {degree}")
        if (inputs, output) in seen:
            raise DocumentError(where, fieldname, f"duplicate entry {' '.join(inputs)} -> {output}")
        seen.add((inputs, output))


# ---------------------------------------------------------------------------
# text


def loads(text: str) -> AlgebraDocument:
    kind = None
    max_arity = None
    basis: list[tuple[str, int]] = []
    target: list[tuple[str, int]] | None = None
    diff = []
    ops: dict[int, list[Entry]] = {}
    morph: dict[int, list[Entry]] = {}
    lines: dict = {}
    section = None
    current: list | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION.match(line)
        if line.startswith("["):
            if not m:
                raise DocumentError(lineno, "section", f"unknown section header {line!r}")
            if kind is None:
                raise DocumentError(lineno, "kind", "the document must start with 'kind:'")
            section, arg = m.group(1), m.group(2)
            if section in ("operation", "morphism"):
                if arg is None or not arg.isdigit():
                    raise DocumentError(lineno, section, "section needs an arity, e.g. [operation 2]")
                n = int(arg)
                table = ops if section == "operation" else morph
                if n in table:
                    raise DocumentError(lineno, section, f"arity {n} given twice")
                current = table[n] = []
                lines[(section, n)] = lineno
                section = (section, n)
            elif arg is not None:
                raise DocumentError(lineno, section, "section takes no argument")
            elif section == "morphism-target":
                if target is not None:
                    raise DocumentError(lineno, section, "section given twice")
                target = []
            continue
        if section is None:
            key, sep, value = line.partition(":")
            key, value = key.strip(), value.strip()
            if not sep:
                raise DocumentError(lineno, "header", f"expected 'key: value', got {line!r}")
            if key == "kind":
                if kind is not None:
                    raise DocumentError(lineno, "kind", "given twice")
                kind = value
                lines["kind"] = lineno
            elif key == "max-arity":
                if kind is None:
                    raise DocumentError(lineno, "kind", "the document must start with 'kind:'")
                if not value.isdigit():
                    raise DocumentError(lineno, "max-arity", f"{value!r} is not a positive integer")
                max_arity = int(value)
            else:
                raise DocumentError(lineno, "header", f"unknown key {key!r}")
            continue

        tokens = line.split()
        if section in ("basis", "morphism-target"):
            if len(tokens) != 2 or not re.fullmatch(r"-?\d+", tokens[1]):
                raise DocumentError(lineno, section, "expected 'NAME DEGREE'")
            dest = basis if section == "basis" else target
            lines[(section, len(dest))] = lineno
            dest.append((tokens[0], int(tokens[1])))
        elif section == "differential":
            if len(tokens) != 4 or tokens[1] != "->":
                raise DocumentError(lineno, "differential", "expected 'FROM -> TO SCALAR'")
            lines[("differential", len(diff))] = lineno
            diff.append((tokens[0], tokens[2], parse_scalar(tokens[3], lineno, "differential")))
        else:
            name = f"{section[0]} {section[1]}"
            if "->" not in tokens or tokens.index("->") != len(tokens) - 3:
                raise DocumentError(lineno, name, "expected 'IN ... -> OUT SCALAR'")
            inputs = tuple(tokens[:-3])
            lines[section + (len(current),)] = lineno
            current.append((inputs, tokens[-2], parse_scalar(tokens[-1], lineno, name)))

    if kind is None:
        raise DocumentError(None, "kind", "missing 'kind:' header")
    doc = AlgebraDocument(kind, basis, diff, ops, max_arity, target, morph, lines)
    return doc.validate()


def dumps(doc: AlgebraDocument) -> str:
    out = [f"kind: {doc.kind}"]
    if doc.max_arity is not None:
        out.append(f"max-arity: {doc.max_arity}")
    out.append("")
    out.append("[basis]")
    out += [f"{name} {deg}" for name, deg in doc.basis]
    if doc.differential:
        out += ["", "[differential]"]
        out += [f"{s} -> {t} {format_scalar(c)}" for s, t, c in doc.differential]
    for n in sorted(doc.operations):
        out += ["", f"[operation {n}]"]
        out += [f"{' '.join(i)} -> {o} {format_scalar(c)}" for i, o, c in doc.operations[n]]
    if doc.morphism_target is not None:
        out += ["", "[morphism-target]"]
        out += [f"{name} {deg}" for name, deg in doc.morphism_target]
        for n in sorted(doc.morphism):
            out += ["", f"[morphism {n}]"]
            out += [f"{' '.join(i)} -> {o} {format_scalar(c)}" for i, o, c in doc.morphism[n]]
    return "\n".join(out) + "\n"


def load(path) -> AlgebraDocument:
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(doc: AlgebraDocument, path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
