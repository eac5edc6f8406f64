"""Neutral OWL 2 axiom data model with a functional-style serializer/parser.

Supported subset: class/object-property/data-property declarations,
SubClassOf, EquivalentClasses (binary), DisjointClasses (binary),
ObjectPropertyRange, DataPropertyDomain, DataPropertyRange, and class
expressions built from named classes, owl:Thing, ObjectComplementOf,
ObjectIntersectionOf, ObjectUnionOf, ObjectSomeValuesFrom and
ObjectAllValuesFrom. ``parse_functional`` inverts ``serialize_functional``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class OwlError(Exception):
    pass


class UndeclaredNameError(OwlError):
    """An axiom references a name with no declaration in the ontology."""


class OwlSyntaxError(OwlError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnsupportedConstructError(OwlSyntaxError):
    """Valid-looking OWL construct outside the supported subset."""


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_DATATYPE_RE = re.compile(r"xsd:[A-Za-z][A-Za-z0-9]*\Z")


# --- class expressions -----------------------------------------------------

class ClassExpression:
    __slots__ = ()


@dataclass(frozen=True)
class Thing(ClassExpression):
    """owl:Thing, the top concept."""


THING = Thing()


@dataclass(frozen=True)
class NamedClass(ClassExpression):
    name: str


@dataclass(frozen=True)
class ComplementOf(ClassExpression):
    operand: ClassExpression


@dataclass(frozen=True)
class IntersectionOf(ClassExpression):
    operands: tuple[ClassExpression, ...]

    def __post_init__(self):
        if len(self.operands) < 2:
            raise OwlError("ObjectIntersectionOf needs at least 2 operands")


@dataclass(frozen=True)
class UnionOf(ClassExpression):
    operands: tuple[ClassExpression, ...]

    def __post_init__(self):
        if len(self.operands) < 2:
            raise OwlError("ObjectUnionOf needs at least 2 operands")


@dataclass(frozen=True)
class SomeValuesFrom(ClassExpression):
    property: str
    filler: ClassExpression


@dataclass(frozen=True)
class AllValuesFrom(ClassExpression):
    property: str
    filler: ClassExpression


# --- axioms ----------------------------------------------------------------

class EntityKind(Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    DATA_PROPERTY = "DataProperty"


class Axiom:
    __slots__ = ()


@dataclass(frozen=True)
class Declaration(Axiom):
    kind: EntityKind
    name: str


@dataclass(frozen=True)
class SubClassOf(Axiom):
    sub: ClassExpression
    sup: ClassExpression


@dataclass(frozen=True)
class EquivalentClasses(Axiom):
    a: ClassExpression
    b: ClassExpression


@dataclass(frozen=True)
class DisjointClasses(Axiom):
    a: NamedClass
    b: NamedClass


@dataclass(frozen=True)
class ObjectPropertyRange(Axiom):
    property: str
    range: ClassExpression


@dataclass(frozen=True)
class DataPropertyDomain(Axiom):
    property: str
    domain: NamedClass


@dataclass(frozen=True)
class DataPropertyRange(Axiom):
    property: str
    datatype: str  # prefixed name, e.g. "xsd:decimal"


@dataclass(frozen=True)
class Ontology:
    iri: str
    axioms: tuple[Axiom, ...]


# --- validation ------------------------------------------------------------

def validate_ontology(ontology: Ontology) -> None:
    """Check declaration closure: unique declarations per kind, every used

    name declared, names lexically valid. Raises OwlError subclasses.
    """
    if not ontology.iri or any(ch in ontology.iri for ch in "<> \t\n"):
        raise OwlError(f"invalid ontology IRI {ontology.iri!r}")
    declared: dict[EntityKind, set[str]] = {kind: set() for kind in EntityKind}
    for axiom in ontology.axioms:
        if isinstance(axiom, Declaration):
            if not _NAME_RE.match(axiom.name):
                raise OwlError(f"invalid entity name {axiom.name!r}")
            if axiom.name in declared[axiom.kind]:
                raise OwlError(f"duplicate {axiom.kind.value} declaration '{axiom.name}'")
            declared[axiom.kind].add(axiom.name)

    def need(kind: EntityKind, name: str) -> None:
        if name not in declared[kind]:
            raise UndeclaredNameError(f"{kind.value} '{name}' used but not declared")

    def check_expr(expr: ClassExpression) -> None:
        if isinstance(expr, Thing):
            return
        if isinstance(expr, NamedClass):
            need(EntityKind.CLASS, expr.name)
        elif isinstance(expr, ComplementOf):
            check_expr(expr.operand)
        elif isinstance(expr, (IntersectionOf, UnionOf)):
            for op in expr.operands:
                check_expr(op)
        elif isinstance(expr, (SomeValuesFrom, AllValuesFrom)):
            need(EntityKind.OBJECT_PROPERTY, expr.property)
            check_expr(expr.filler)
        else:
            raise OwlError(f"unknown class expression {expr!r}")

    for axiom in ontology.axioms:
        if isinstance(axiom, Declaration):
            continue
        if isinstance(axiom, SubClassOf):
            check_expr(axiom.sub)
            check_expr(axiom.sup)
        elif isinstance(axiom, EquivalentClasses):
            check_expr(axiom.a)
            check_expr(axiom.b)
        elif isinstance(axiom, DisjointClasses):
            check_expr(axiom.a)
            check_expr(axiom.b)
        elif isinstance(axiom, ObjectPropertyRange):
            need(EntityKind.OBJECT_PROPERTY, axiom.property)
            check_expr(axiom.range)
        elif isinstance(axiom, DataPropertyDomain):
            need(EntityKind.DATA_PROPERTY, axiom.property)
            check_expr(axiom.domain)
        elif isinstance(axiom, DataPropertyRange):
            need(EntityKind.DATA_PROPERTY, axiom.property)
            if not _DATATYPE_RE.match(axiom.datatype):
                raise OwlError(f"unsupported datatype {axiom.datatype!r}")
        else:
            raise OwlError(f"unknown axiom {axiom!r}")


# --- serialization ---------------------------------------------------------

def _render_expr(expr: ClassExpression) -> str:
    if isinstance(expr, Thing):
        return "owl:Thing"
    if isinstance(expr, NamedClass):
        return f":{expr.name}"
    if isinstance(expr, ComplementOf):
        return f"ObjectComplementOf({_render_expr(expr.operand)})"
    if isinstance(expr, IntersectionOf):
        return f"ObjectIntersectionOf({' '.join(_render_expr(e) for e in expr.operands)})"
    if isinstance(expr, UnionOf):
        return f"ObjectUnionOf({' '.join(_render_expr(e) for e in expr.operands)})"
    if isinstance(expr, SomeValuesFrom):
        return f"ObjectSomeValuesFrom(:{expr.property} {_render_expr(expr.filler)})"
    if isinstance(expr, AllValuesFrom):
        return f"ObjectAllValuesFrom(:{expr.property} {_render_expr(expr.filler)})"
    raise OwlError(f"unknown class expression {expr!r}")


def _render_axiom(axiom: Axiom) -> str:
    if isinstance(axiom, Declaration):
        return f"Declaration({axiom.kind.value}(:{axiom.name}))"
    if isinstance(axiom, SubClassOf):
        return f"SubClassOf({_render_expr(axiom.sub)} {_render_expr(axiom.sup)})"
    if isinstance(axiom, EquivalentClasses):
        return f"EquivalentClasses({_render_expr(axiom.a)} {_render_expr(axiom.b)})"
    if isinstance(axiom, DisjointClasses):
        return f"DisjointClasses({_render_expr(axiom.a)} {_render_expr(axiom.b)})"
    if isinstance(axiom, ObjectPropertyRange):
        return f"ObjectPropertyRange(:{axiom.property} {_render_expr(axiom.range)})"
    if isinstance(axiom, DataPropertyDomain):
        return f"DataPropertyDomain(:{axiom.property} {_render_expr(axiom.domain)})"
    if isinstance(axiom, DataPropertyRange):
        return f"DataPropertyRange(:{axiom.property} {axiom.datatype})"
    raise OwlError(f"unknown axiom {axiom!r}")


def serialize_functional(ontology: Ontology) -> str:
    """Render the ontology in OWL 2 functional-style syntax.

    One axiom per line between the header and the closing parenthesis,
    so the output has exactly len(axioms) + 3 lines. The owl: and xsd:
    prefixes are treated as built-ins and not declared.
    """
    validate_ontology(ontology)
    lines = [f"Prefix(:=<{ontology.iri}>)", f"Ontology(<{ontology.iri}>"]
    lines.extend(_render_axiom(a) for a in ontology.axioms)
    lines.append(")")
    return "\n".join(lines) + "\n"


def write_functional(ontology: Ontology, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_functional(ontology))


# --- parsing ---------------------------------------------------------------

_AXIOM_KEYWORDS = frozenset({
    "Declaration", "SubClassOf", "EquivalentClasses", "DisjointClasses",
    "ObjectPropertyRange", "DataPropertyDomain", "DataPropertyRange",
})
_EXPR_KEYWORDS = frozenset({
    "ObjectComplementOf", "ObjectIntersectionOf", "ObjectUnionOf",
    "ObjectSomeValuesFrom", "ObjectAllValuesFrom",
})
_ENTITY_KINDS = {kind.value: kind for kind in EntityKind}

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<lparen>\()
      | (?P<rparen>\))
      | (?P<assign>:=)
      | (?P<iri><[^<>\s]*>)
      | (?P<pname>(?:[A-Za-z][A-Za-z0-9_]*)?:[A-Za-z][A-Za-z0-9_]*)
      | (?P<word>[A-Za-z][A-Za-z0-9_]*)
      | (?P<number>[0-9]+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _OwlToken:
    kind: str  # "(", ")", ":=", "iri", "pname", "word", "eof"
    value: str
    line: int
    column: int

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else f"'{self.value}'"


def _tokenize_functional(text: str) -> list[_OwlToken]:
    tokens = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise OwlSyntaxError(f"unexpected character {text[i]!r}", line, i - line_start + 1)
        col = m.start() - line_start + 1
        if m.lastgroup == "ws":
            line += m.group().count("\n")
            if "\n" in m.group():
                line_start = m.start() + m.group().rindex("\n") + 1
        elif m.lastgroup == "lparen":
            tokens.append(_OwlToken("(", "(", line, col))
        elif m.lastgroup == "rparen":
            tokens.append(_OwlToken(")", ")", line, col))
        elif m.lastgroup == "assign":
            tokens.append(_OwlToken(":=", ":=", line, col))
        elif m.lastgroup == "iri":
            tokens.append(_OwlToken("iri", m.group()[1:-1], line, col))
        else:
            tokens.append(_OwlToken(m.lastgroup, m.group(), line, col))
        i = m.end()
    tokens.append(_OwlToken("eof", "", line, len(text) - line_start + 1))
    return tokens


class _OwlParser:
    def __init__(self, tokens: list[_OwlToken]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _OwlToken:
        return self.tokens[self.pos]

    def advance(self) -> _OwlToken:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _OwlToken:
        tok = self.peek()
        if tok.kind != kind:
            raise OwlSyntaxError(f"expected '{kind}', got {tok.describe()}",
                                 tok.line, tok.column)
        return self.advance()

    def expect_word(self, word: str) -> _OwlToken:
        tok = self.peek()
        if tok.kind != "word" or tok.value != word:
            raise OwlSyntaxError(f"expected '{word}', got {tok.describe()}",
                                 tok.line, tok.column)
        return self.advance()

    def local_name(self, what: str) -> str:
        # a name in the default (empty) prefix, e.g. ":AISCO"
        tok = self.peek()
        if tok.kind != "pname" or not tok.value.startswith(":"):
            raise OwlSyntaxError(f"expected {what} (:Name), got {tok.describe()}",
                                 tok.line, tok.column)
        self.advance()
        return tok.value[1:]

    def parse_ontology(self) -> Ontology:
        self.expect_word("Prefix")
        self.expect("(")
        self.expect(":=")
        self.expect("iri")
        self.expect(")")
        self.expect_word("Ontology")
        self.expect("(")
        iri = self.expect("iri").value
        axioms = []
        while self.peek().kind != ")":
            if self.peek().kind == "eof":
                tok = self.peek()
                raise OwlSyntaxError("unclosed 'Ontology(': expected ')'",
                                     tok.line, tok.column)
            axioms.append(self.parse_axiom())
        self.advance()
        tok = self.peek()
        if tok.kind != "eof":
            raise OwlSyntaxError(f"unexpected {tok.describe()} after ontology",
                                 tok.line, tok.column)
        return Ontology(iri, tuple(axioms))

    def parse_axiom(self) -> Axiom:
        tok = self.peek()
        if tok.kind != "word":
            raise OwlSyntaxError(f"expected an axiom, got {tok.describe()}",
                                 tok.line, tok.column)
        if tok.value not in _AXIOM_KEYWORDS:
            raise UnsupportedConstructError(f"unsupported construct '{tok.value}'",
                                            tok.line, tok.column)
        self.advance()
        self.expect("(")
        if tok.value == "Declaration":
            kind_tok = self.peek()
            if kind_tok.kind != "word":
                raise OwlSyntaxError(f"expected entity kind, got {kind_tok.describe()}",
                                     kind_tok.line, kind_tok.column)
            if kind_tok.value not in _ENTITY_KINDS:
                raise UnsupportedConstructError(
                    f"unsupported declaration kind '{kind_tok.value}'",
                    kind_tok.line, kind_tok.column)
            self.advance()
            self.expect("(")
            name = self.local_name("entity name")
            self.expect(")")
            axiom: Axiom = Declaration(_ENTITY_KINDS[kind_tok.value], name)
        elif tok.value == "SubClassOf":
            axiom = SubClassOf(self.parse_expr(), self.parse_expr())
        elif tok.value == "EquivalentClasses":
            axiom = EquivalentClasses(self.parse_expr(), self.parse_expr())
            self.reject_extra_operands("EquivalentClasses")
        elif tok.value == "DisjointClasses":
            axiom = DisjointClasses(self.parse_named("disjoint class"),
                                    self.parse_named("disjoint class"))
            self.reject_extra_operands("DisjointClasses")
        elif tok.value == "ObjectPropertyRange":
            axiom = ObjectPropertyRange(self.local_name("object property"), self.parse_expr())
        elif tok.value == "DataPropertyDomain":
            axiom = DataPropertyDomain(self.local_name("data property"),
                                       self.parse_named("domain class"))
        else:  # DataPropertyRange
            prop = self.local_name("data property")
            dt_tok = self.peek()
            if dt_tok.kind != "pname" or dt_tok.value.startswith(":"):
                raise OwlSyntaxError(f"expected a datatype, got {dt_tok.describe()}",
                                     dt_tok.line, dt_tok.column)
            self.advance()
            axiom = DataPropertyRange(prop, dt_tok.value)
        self.expect(")")
        return axiom

    def reject_extra_operands(self, construct: str) -> None:
        tok = self.peek()
        if tok.kind != ")":
            raise UnsupportedConstructError(
                f"n-ary {construct} is not supported (expected exactly 2 operands)",
                tok.line, tok.column)

    def parse_named(self, what: str) -> NamedClass:
        return NamedClass(self.local_name(what))

    def parse_expr(self) -> ClassExpression:
        tok = self.peek()
        if tok.kind == "pname":
            if tok.value.startswith(":"):
                self.advance()
                return NamedClass(tok.value[1:])
            if tok.value == "owl:Thing":
                self.advance()
                return THING
            raise OwlSyntaxError(f"expected a class expression, got {tok.describe()}",
                                 tok.line, tok.column)
        if tok.kind != "word":
            raise OwlSyntaxError(f"expected a class expression, got {tok.describe()}",
                                 tok.line, tok.column)
        if tok.value not in _EXPR_KEYWORDS:
            raise UnsupportedConstructError(f"unsupported construct '{tok.value}'",
                                            tok.line, tok.column)
        self.advance()
        self.expect("(")
        if tok.value == "ObjectComplementOf":
            expr: ClassExpression = ComplementOf(self.parse_expr())
        elif tok.value in ("ObjectIntersectionOf", "ObjectUnionOf"):
            operands = [self.parse_expr(), self.parse_expr()]
            while self.peek().kind != ")":
                operands.append(self.parse_expr())
            ctor = IntersectionOf if tok.value == "ObjectIntersectionOf" else UnionOf
            expr = ctor(tuple(operands))
        else:  # ObjectSomeValuesFrom / ObjectAllValuesFrom
            prop = self.local_name("object property")
            filler = self.parse_expr()
            ctor = SomeValuesFrom if tok.value == "ObjectSomeValuesFrom" else AllValuesFrom
            expr = ctor(prop, filler)
        self.expect(")")
        return expr


def parse_functional(text: str) -> Ontology:
    """Parse the functional-style subset emitted by serialize_functional.

    Raises OwlSyntaxError (with position) on malformed input and
    UnsupportedConstructError on OWL constructs outside the subset.
    """
    return _OwlParser(_tokenize_functional(text)).parse_ontology()


def parse_functional_file(path) -> Ontology:
    with open(path, encoding="utf-8") as fh:
        return parse_functional(fh.read())
