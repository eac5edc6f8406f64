"""Ontology to web-application scaffold mapping.

Phase 1 maps each declared OWL class to a site category and each object
property to a typed predicate (valid_from/valid_to rules); phase 2 maps
datatype properties to form fields on their domain category's template.
Field names matching the trigger registry (exact, case-insensitive) get a
business-logic annotation such as Sum.

The output is framework-neutral JSON plus template stubs; the
zotonic_notes flag adds header notes naming the framework artifact each
file mirrors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .owl import (
    DataPropertyDomain,
    DataPropertyRange,
    Declaration,
    EntityKind,
    EquivalentClasses,
    NamedClass,
    ObjectPropertyRange,
    Ontology,
    OwlError,
    SomeValuesFrom,
    SubClassOf,
    validate_ontology,
)

TRIGGER_KINDS = ("Sum", "Count", "Average")
DEFAULT_TRIGGERS = {"total": "Sum", "count": "Count", "average": "Average"}


class ScaffoldError(Exception):
    pass


@dataclass(frozen=True)
class Category:
    name: str
    is_rule_class: bool


@dataclass(frozen=True)
class Predicate:
    name: str
    valid_from: tuple[str, ...]  # empty = unrestricted
    valid_to: tuple[str, ...]


@dataclass(frozen=True)
class FormField:
    name: str
    datatype: str
    business_logic: str | None = None


@dataclass(frozen=True)
class FormSpec:
    category: str
    fields: tuple[FormField, ...]


@dataclass(frozen=True)
class SiteScaffold:
    site: str
    categories: tuple[Category, ...]
    predicates: tuple[Predicate, ...]
    forms: tuple[FormSpec, ...]

    def __post_init__(self):
        names = [c.name for c in self.categories]
        if len(set(names)) != len(names):
            raise ScaffoldError("duplicate category names")
        known = set(names)
        seen_predicates = set()
        for p in self.predicates:
            if p.name in seen_predicates:
                raise ScaffoldError(f"duplicate predicate '{p.name}'")
            seen_predicates.add(p.name)
            for cat in (*p.valid_from, *p.valid_to):
                if cat not in known:
                    raise ScaffoldError(
                        f"predicate '{p.name}' references unknown category '{cat}'")
        for form in self.forms:
            if form.category not in known:
                raise ScaffoldError(f"form for unknown category '{form.category}'")
            field_names = [f.name for f in form.fields]
            if len(set(field_names)) != len(field_names):
                raise ScaffoldError(f"duplicate form fields on '{form.category}'")


def normalize_triggers(registry: dict) -> dict[str, str]:
    """Lowercase the patterns and check the logic kinds."""
    normalized: dict[str, str] = {}
    for pattern, kind in registry.items():
        key = str(pattern).lower()
        if key in normalized:
            raise ScaffoldError(f"duplicate trigger pattern '{key}' (case-insensitive)")
        if kind not in TRIGGER_KINDS:
            raise ScaffoldError(
                f"unknown trigger kind {kind!r} for '{pattern}' "
                f"(expected one of {', '.join(TRIGGER_KINDS)})")
        normalized[key] = kind
    return normalized


def load_triggers(path) -> dict[str, str]:
    """Read a JSON trigger registry: {"pattern": "Sum" | "Count" | "Average"}."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScaffoldError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ScaffoldError(f"{path}: trigger registry must be a JSON object")
    return normalize_triggers(raw)


def generate(ontology: Ontology, registry: dict[str, str] | None = None,
             include_rule_classes: bool = True) -> SiteScaffold:
    """Map an ontology in the compiler's output shape to a SiteScaffold.

    One category per declared class; one predicate per object property
    with valid_to from its range axiom and valid_from from direct
    SubClassOf(C, someValuesFrom(P, _)) restrictions, where a rule class C
    is resolved to its feature class via the C ≡ ∃hasF.F equivalence.
    One form per category with a field per datatype property on it.
    """
    try:
        validate_ontology(ontology)
    except OwlError as exc:
        raise ScaffoldError(str(exc)) from exc
    triggers = normalize_triggers(DEFAULT_TRIGGERS if registry is None else registry)

    classes: list[str] = []
    properties: list[str] = []
    data_properties: list[str] = []
    for axiom in ontology.axioms:
        if isinstance(axiom, Declaration):
            if axiom.kind is EntityKind.CLASS:
                classes.append(axiom.name)
            elif axiom.kind is EntityKind.OBJECT_PROPERTY:
                properties.append(axiom.name)
            else:
                data_properties.append(axiom.name)

    # C ≡ ∃P.F marks C as the rule class for feature class F
    feature_of: dict[str, str] = {}
    for axiom in ontology.axioms:
        if not isinstance(axiom, EquivalentClasses):
            continue
        for named, expr in ((axiom.a, axiom.b), (axiom.b, axiom.a)):
            if (isinstance(named, NamedClass) and isinstance(expr, SomeValuesFrom)
                    and isinstance(expr.filler, NamedClass)
                    and named.name not in feature_of):
                feature_of[named.name] = expr.filler.name

    ranges: dict[str, str] = {}
    domains: dict[str, list[str]] = {p: [] for p in properties}
    for axiom in ontology.axioms:
        if isinstance(axiom, ObjectPropertyRange):
            if not isinstance(axiom.range, NamedClass):
                raise ScaffoldError(
                    f"range of '{axiom.property}' must be a named class")
            ranges.setdefault(axiom.property, axiom.range.name)
        elif (isinstance(axiom, SubClassOf) and isinstance(axiom.sub, NamedClass)
              and isinstance(axiom.sup, SomeValuesFrom)):
            # unions/complements never pin a domain, only direct existentials
            domain = feature_of.get(axiom.sub.name, axiom.sub.name)
            bucket = domains[axiom.sup.property]
            if domain not in bucket:
                bucket.append(domain)

    categories = tuple(
        Category(name, name in feature_of)
        for name in classes
        if include_rule_classes or name not in feature_of)
    predicates = tuple(
        Predicate(p, tuple(domains[p]),
                  (ranges[p],) if p in ranges else ())
        for p in properties)

    field_domain: dict[str, str] = {}
    field_type: dict[str, str] = {}
    for axiom in ontology.axioms:
        if isinstance(axiom, DataPropertyDomain):
            field_domain.setdefault(axiom.property, axiom.domain.name)
        elif isinstance(axiom, DataPropertyRange):
            field_type.setdefault(axiom.property, axiom.datatype.removeprefix("xsd:"))

    forms = []
    for category in categories:
        fields = tuple(
            FormField(name, field_type.get(name, "string"), triggers.get(name.lower()))
            for name in data_properties
            if field_domain.get(name) == category.name)
        forms.append(FormSpec(category.name, fields))

    site = classes[0] if classes else "site"
    return SiteScaffold(site, categories, predicates, tuple(forms))


def _prepare(paths: list[Path], overwrite: bool) -> None:
    if not overwrite:
        existing = [str(p) for p in paths if p.exists()]
        if existing:
            raise ScaffoldError(
                f"refusing to overwrite existing file(s): {', '.join(existing)} "
                "(pass overwrite to replace)")


def write_phase1(scaffold: SiteScaffold, outdir, overwrite: bool = False,
                 zotonic_notes: bool = False) -> list[Path]:
    """Write install_data.json: categories, predicates, and their rules."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    target = outdir / "install_data.json"
    _prepare([target], overwrite)
    document: dict = {}
    if zotonic_notes:
        document["_note"] = ("mirrors a Zotonic site's priv/install_data: "
                             "categories and predicates with valid_from/valid_to rules")
    document["site"] = scaffold.site
    document["categories"] = [
        {"name": c.name, "is_rule_class": c.is_rule_class} for c in scaffold.categories]
    document["predicates"] = [
        {"name": p.name, "valid_from": list(p.valid_from), "valid_to": list(p.valid_to)}
        for p in scaffold.predicates]
    target.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    return [target]


def write_phase2(scaffold: SiteScaffold, outdir, overwrite: bool = False,
                 zotonic_notes: bool = False) -> list[Path]:
    """Write one templates/<category>_form.tpl.txt stub per category."""
    templates = Path(outdir) / "templates"
    templates.mkdir(parents=True, exist_ok=True)
    fields_by_category = {form.category: form.fields for form in scaffold.forms}
    targets = [templates / f"{c.name}_form.tpl.txt" for c in scaffold.categories]
    _prepare(targets, overwrite)
    for category, target in zip(scaffold.categories, targets):
        lines = []
        if zotonic_notes:
            lines.append(f"# mirrors a Zotonic admin edit template for {category.name}")
        lines.append(f"# form for category: {category.name}")
        for f in fields_by_category.get(category.name, ()):
            line = f"field: {f.name} ({f.datatype})"
            if f.business_logic is not None:
                line += f" [read-only, computed: {f.business_logic}]"
            lines.append(line)
        target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return targets
