"""Feature-model compiler.

Parse textual feature models, emit OWL 2 ontologies, analyze consistency
with a built-in satisfiability procedure, and generate framework-neutral
web-application scaffolds.
"""

from .analysis import (
    ENUMERATION_CAP,
    EnumerationCapError,
    VoidModelError,
    analyze,
    check_consistency,
    count_configurations,
    dead_features,
    solve,
)
from .compiler import CompileError, compile_model, default_iri
from .dsl import ParseError, parse, parse_configuration, parse_file, to_source
from .model import (
    Attribute,
    CrossTreeConstraint,
    Feature,
    FeatureModel,
    Group,
    ModelError,
    UnknownFeatureError,
    validate,
)
from .owl import (
    Ontology,
    OwlError,
    OwlSyntaxError,
    UndeclaredNameError,
    UnsupportedConstructError,
    parse_functional,
    parse_functional_file,
    serialize_functional,
    validate_ontology,
    write_functional,
)
from .propositional import (
    PropositionalFormula,
    Violation,
    is_valid_configuration,
    satisfies,
    to_propositional,
)
from .scaffold import (
    DEFAULT_TRIGGERS,
    Category,
    FormField,
    FormSpec,
    Predicate,
    ScaffoldError,
    SiteScaffold,
    generate,
    load_triggers,
    write_phase1,
    write_phase2,
)

__version__ = "0.1.0"

__all__ = [
    "ENUMERATION_CAP",
    "Attribute",
    "Category",
    "CompileError",
    "CrossTreeConstraint",
    "DEFAULT_TRIGGERS",
    "EnumerationCapError",
    "Feature",
    "FeatureModel",
    "FormField",
    "FormSpec",
    "Group",
    "ModelError",
    "Ontology",
    "OwlError",
    "OwlSyntaxError",
    "ParseError",
    "Predicate",
    "PropositionalFormula",
    "ScaffoldError",
    "SiteScaffold",
    "UndeclaredNameError",
    "UnknownFeatureError",
    "UnsupportedConstructError",
    "Violation",
    "VoidModelError",
    "analyze",
    "check_consistency",
    "compile_model",
    "count_configurations",
    "dead_features",
    "default_iri",
    "generate",
    "is_valid_configuration",
    "load_triggers",
    "parse",
    "parse_configuration",
    "parse_file",
    "parse_functional",
    "parse_functional_file",
    "satisfies",
    "serialize_functional",
    "solve",
    "to_propositional",
    "to_source",
    "validate",
    "validate_ontology",
    "write_functional",
    "write_phase1",
    "write_phase2",
]
