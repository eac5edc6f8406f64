"""Feature-model data structures and structural validation.

A feature model is a tree of named features plus cross-tree constraints.
A child feature is mandatory, optional, or a member of an or/alternative
group owned by its parent. Attributes attach typed data fields to a
feature; they never influence which configurations are valid.

All values are immutable after construction and safe to share.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum


class Variability(Enum):
    MANDATORY = "mandatory"
    OPTIONAL = "optional"
    GROUP_MEMBER = "group-member"


class GroupKind(Enum):
    OR = "or"
    ALTERNATIVE = "alternative"


class ConstraintKind(Enum):
    REQUIRES = "requires"
    EXCLUDES = "excludes"


# Attribute datatypes; they map one-to-one onto xsd datatypes.
DATATYPES = ("string", "integer", "decimal", "boolean", "date")

# Feature and attribute names double as OWL names and scaffold identifiers,
# so they are restricted to a form that needs no escaping anywhere.
NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ModelError(ValueError):
    """A feature model violates a structural invariant."""


class UnknownFeatureError(ModelError):
    """A configuration references features that are not in the model."""

    def __init__(self, names):
        self.names = tuple(names)
        listed = ", ".join(f"'{n}'" for n in self.names)
        super().__init__(f"unknown feature(s): {listed}")


@dataclass(frozen=True)
class Attribute:
    name: str
    datatype: str


@dataclass(frozen=True)
class CrossTreeConstraint:
    kind: ConstraintKind
    source: str
    target: str


@dataclass(frozen=True)
class Group:
    """An or/alternative group; members are children of the owner feature."""

    id: int
    owner: str
    kind: GroupKind
    members: tuple[str, ...]


@dataclass(frozen=True)
class Feature:
    name: str
    parent: str | None
    variability: Variability
    group: int | None = None
    attributes: tuple[Attribute, ...] = ()


@dataclass(frozen=True)
class FeatureModel:
    """A parsed feature model: the compiler's input representation.

    ``features`` preserves declaration order (parents before their
    children); that order drives every deterministic downstream output.
    """

    root: str
    features: tuple[Feature, ...]
    groups: tuple[Group, ...] = ()
    constraints: tuple[CrossTreeConstraint, ...] = ()

    _by_name: dict = field(init=False, repr=False, compare=False, default=None)
    _children: dict = field(init=False, repr=False, compare=False, default=None)
    _groups_by_id: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        by_name = {f.name: f for f in self.features}
        children: dict[str, list[Feature]] = {f.name: [] for f in self.features}
        for f in self.features:
            if f.parent is not None and f.parent in children:
                children[f.parent].append(f)
        object.__setattr__(self, "_by_name", by_name)
        object.__setattr__(self, "_children", {k: tuple(v) for k, v in children.items()})
        object.__setattr__(self, "_groups_by_id", {g.id: g for g in self.groups})

    def feature(self, name: str) -> Feature:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownFeatureError([name]) from None

    def has_feature(self, name: str) -> bool:
        return name in self._by_name

    def children(self, name: str) -> tuple[Feature, ...]:
        return self._children.get(name, ())

    def group(self, group_id: int) -> Group:
        return self._groups_by_id[group_id]

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)


def validate(model: FeatureModel) -> None:
    """Check every structural invariant; raise ModelError on the first failure.

    The DSL parser cannot produce an invalid model, so this mainly guards
    programmatically built models (generators, tests, future tooling).
    """
    names = [f.name for f in model.features]
    if len(names) != len(set(names)):
        dupes = sorted({n for n in names if names.count(n) > 1})
        raise ModelError(f"duplicate feature name(s): {', '.join(dupes)}")
    for name in names:
        if not NAME_RE.match(name):
            raise ModelError(f"invalid feature name '{name}'")

    roots = [f for f in model.features if f.parent is None]
    if len(roots) != 1:
        raise ModelError(f"expected exactly one root feature, found {len(roots)}")
    root = roots[0]
    if root.name != model.root:
        raise ModelError(f"root field is '{model.root}' but the parentless feature is '{root.name}'")
    if root.variability is not Variability.MANDATORY:
        raise ModelError("the root feature must be mandatory")

    for f in model.features:
        if f.parent is not None and not model.has_feature(f.parent):
            raise ModelError(f"feature '{f.name}' has unknown parent '{f.parent}'")
        if (f.variability is Variability.GROUP_MEMBER) != (f.group is not None):
            raise ModelError(f"feature '{f.name}': group id and group-member variability must occur together")
        attr_names = [a.name for a in f.attributes]
        if len(attr_names) != len(set(attr_names)):
            raise ModelError(f"feature '{f.name}' declares duplicate attribute names")
        for a in f.attributes:
            if not NAME_RE.match(a.name):
                raise ModelError(f"invalid attribute name '{a.name}' on feature '{f.name}'")
            if a.datatype not in DATATYPES:
                raise ModelError(f"attribute '{a.name}' has unknown datatype '{a.datatype}'")

    # Parent links must form a tree rooted at the single root.
    for f in model.features:
        seen = set()
        cur = f
        while cur.parent is not None:
            if cur.name in seen:
                raise ModelError(f"cycle in parent references involving '{cur.name}'")
            seen.add(cur.name)
            cur = model.feature(cur.parent)

    group_ids = [g.id for g in model.groups]
    if len(group_ids) != len(set(group_ids)):
        raise ModelError("duplicate group ids")
    for g in model.groups:
        if not model.has_feature(g.owner):
            raise ModelError(f"group {g.id} has unknown owner '{g.owner}'")
        if len(g.members) < 2:
            raise ModelError(f"group {g.id} under '{g.owner}' needs at least 2 members")
        expected = {c.name for c in model.children(g.owner)
                    if c.variability is Variability.GROUP_MEMBER and c.group == g.id}
        if set(g.members) != expected or len(set(g.members)) != len(g.members):
            raise ModelError(
                f"group {g.id} members must be exactly the group-member children of '{g.owner}'")
    for f in model.features:
        if f.group is not None and f.group not in model._groups_by_id:
            raise ModelError(f"feature '{f.name}' references unknown group {f.group}")

    for c in model.constraints:
        for endpoint in (c.source, c.target):
            if not model.has_feature(endpoint):
                raise ModelError(f"constraint references unknown feature '{endpoint}'")
        if c.source == c.target:
            raise ModelError(f"constraint source and target are the same feature '{c.source}'")
