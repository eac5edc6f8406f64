import itertools
import random

import pytest

from fmc.dsl import parse
from fmc.model import UnknownFeatureError
from fmc.propositional import (
    PropositionalFormula,
    is_valid_configuration,
    satisfies,
    to_propositional,
)

from helpers import oracle_configurations, random_model


def all_satisfying_subsets(model):
    formula = to_propositional(model)
    names = formula.variables
    found = set()
    for bits in itertools.product((False, True), repeat=formula.num_vars):
        assignment = {i + 1: b for i, b in enumerate(bits)}
        if satisfies(formula, assignment):
            found.add(frozenset(n for n, b in zip(names, bits) if b))
    return found


def test_formula_invariants_enforced():
    with pytest.raises(ValueError, match="at least one variable"):
        PropositionalFormula(0, (), ())
    with pytest.raises(ValueError, match="out of range"):
        PropositionalFormula(1, ((2,),), ("A",))
    with pytest.raises(ValueError, match="out of range"):
        PropositionalFormula(1, ((0,),), ("A",))
    with pytest.raises(ValueError, match="negation"):
        PropositionalFormula(1, ((1, -1),), ("A",))
    with pytest.raises(ValueError, match="empty clause"):
        PropositionalFormula(1, ((),), ("A",))
    with pytest.raises(ValueError, match="unique"):
        PropositionalFormula(2, (), ("A", "A"))


def test_variable_map_is_bijective():
    model = parse("feature A { mandatory B optional C }")
    formula = to_propositional(model)
    assert formula.variables == ("A", "B", "C")
    assert [formula.variable(n) for n in formula.variables] == [1, 2, 3]
    assert [formula.feature(i) for i in (1, 2, 3)] == ["A", "B", "C"]


def test_two_node_mandatory_clauses():
    formula = to_propositional(parse("feature A { mandatory B }"))
    # A; B -> A; A -> B
    assert set(formula.clauses) == {(1,), (-2, 1), (-1, 2)}


def test_alternative_rejects_double_selection():
    model = parse("feature A { alternative { B C } }")
    assert frozenset({"A", "B", "C"}) not in all_satisfying_subsets(model)
    valid, violations = is_valid_configuration(model, {"A", "B", "C"})
    assert not valid
    assert [v.rule for v in violations] == ["alternative"]


def test_or_group_requires_a_member():
    model = parse("feature A { or { B C } }")
    valid, violations = is_valid_configuration(model, {"A"})
    assert not valid and violations[0].rule == "or"
    assert is_valid_configuration(model, {"A", "C"})[0]


def test_violation_reports_involved_features():
    model = parse("feature A { optional B optional C }\n"
                  "constraints { B requires C }")
    valid, violations = is_valid_configuration(model, {"A", "B"})
    assert not valid
    assert violations[0].rule == "requires"
    assert violations[0].features == ("B", "C")
    assert "'B' requires 'C'" in str(violations[0])


def test_excludes_and_missing_parent_violations():
    model = parse("feature A { optional B { optional D } optional C }\n"
                  "constraints { B excludes C }")
    valid, violations = is_valid_configuration(model, {"A", "B", "C"})
    assert [v.rule for v in violations] == ["excludes"]
    valid, violations = is_valid_configuration(model, {"A", "D"})
    assert [v.rule for v in violations] == ["parent"]


def test_empty_configuration_violates_root_rule():
    model = parse("feature A")
    valid, violations = is_valid_configuration(model, set())
    assert not valid
    assert [v.rule for v in violations] == ["root"]


def test_unknown_feature_in_configuration():
    model = parse("feature A")
    with pytest.raises(UnknownFeatureError):
        is_valid_configuration(model, {"A", "Ghost"})


def test_formula_agrees_with_checker_exhaustively():
    rng = random.Random(99)
    for _ in range(40):
        model = random_model(rng, max_features=9)
        names = model.feature_names
        by_formula = all_satisfying_subsets(model)
        by_checker = set()
        for bits in itertools.product((False, True), repeat=len(names)):
            subset = frozenset(n for n, b in zip(names, bits) if b)
            if is_valid_configuration(model, subset)[0]:
                by_checker.add(subset)
        assert by_formula == by_checker == oracle_configurations(model)


def test_full_selection_valid_without_groups_or_excludes():
    from dataclasses import replace

    from fmc.model import ConstraintKind

    rng = random.Random(7)
    for _ in range(30):
        model = random_model(rng, allow_groups=False)
        requires_only = replace(model, constraints=tuple(
            c for c in model.constraints if c.kind is ConstraintKind.REQUIRES))
        assert is_valid_configuration(requires_only, set(model.feature_names))[0]
