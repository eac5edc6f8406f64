"""Feature-model analyses: satisfiability, dead features, configuration count.

Consistency is decided on the propositional semantics with a built-in
DPLL procedure (unit propagation + branching with backtracking); counting
uses exhaustive enumeration pruned by the tree structure, capped at
ENUMERATION_CAP features.
"""

from __future__ import annotations

from collections import Counter

from .model import ConstraintKind, FeatureModel, GroupKind, Variability
from .propositional import PropositionalFormula, satisfies, to_propositional

ENUMERATION_CAP = 24


class VoidModelError(Exception):
    """Analysis that requires a consistent model was called on a void one."""


class EnumerationCapError(Exception):
    """Model too large for exhaustive configuration counting."""


def solve(formula: PropositionalFormula) -> dict[int, bool] | None:
    """DPLL satisfiability: a satisfying total assignment, or None.

    Branching picks the most frequent unassigned variable among open
    clauses (ties to the lowest index), trying True first. Don't-care
    variables default to False, so an empty formula yields all-false.
    The assignment is re-checked against every clause before returning.
    """
    assignment: dict[int, bool] = {}
    if not _dpll(formula.clauses, assignment):
        return None
    full = {v: assignment.get(v, False) for v in range(1, formula.num_vars + 1)}
    if not satisfies(formula, full):
        raise AssertionError("solver returned a non-satisfying assignment")
    return full


def _dpll(clauses: tuple[tuple[int, ...], ...], assignment: dict[int, bool]) -> bool:
    trail: list[int] = []

    def undo() -> None:
        for var in trail:
            del assignment[var]

    # unit propagation to fixpoint
    changed = True
    while changed:
        changed = False
        for clause in clauses:
            unit = 0
            open_clause = True
            for lit in clause:
                value = assignment.get(abs(lit))
                if value is None:
                    if unit:
                        open_clause = False  # two unassigned literals
                        break
                    unit = lit
                elif value == (lit > 0):
                    open_clause = False
                    break
            if not open_clause:
                continue
            if unit == 0:
                undo()
                return False
            assignment[abs(unit)] = unit > 0
            trail.append(abs(unit))
            changed = True

    counts: Counter[int] = Counter()
    for clause in clauses:
        if any(assignment.get(abs(lit)) == (lit > 0) for lit in clause):
            continue
        counts.update(abs(lit) for lit in clause if abs(lit) not in assignment)
    if not counts:
        return True  # every clause satisfied
    var = max(counts, key=lambda v: (counts[v], -v))

    for value in (True, False):
        assignment[var] = value
        if _dpll(clauses, assignment):
            return True
        del assignment[var]
    undo()
    return False


def check_consistency(model: FeatureModel) -> bool:
    """True iff the model has at least one valid configuration."""
    return solve(to_propositional(model)) is not None


def dead_features(model: FeatureModel) -> set[str]:
    """Features that appear in no valid configuration.

    Raises VoidModelError if the model itself has no valid configuration.
    One satisfiability call per feature not already witnessed alive.
    """
    formula = to_propositional(model)
    base = solve(formula)
    if base is None:
        raise VoidModelError("model has no valid configuration")
    alive = {var for var, value in base.items() if value}
    dead = set()
    for var in range(1, formula.num_vars + 1):
        if var in alive:
            continue
        witness = solve(PropositionalFormula(
            formula.num_vars, formula.clauses + ((var,),), formula.variables))
        if witness is None:
            dead.add(formula.feature(var))
        else:
            alive.update(v for v, value in witness.items() if value)
    return dead


def count_configurations(model: FeatureModel) -> int:
    """Exact number of valid configurations by pruned enumeration.

    The tree prunes the search: children of unselected parents are forced
    off, mandatory children of selected parents forced on. Group and
    cross-tree rules are checked as soon as all involved features are
    decided. Models beyond ENUMERATION_CAP features raise
    EnumerationCapError rather than approximating.
    """
    n = len(model.features)
    if n > ENUMERATION_CAP:
        raise EnumerationCapError(
            f"model has {n} features; counting is capped at {ENUMERATION_CAP}")

    index = {f.name: i for i, f in enumerate(model.features)}
    parent_of = [index[f.parent] if f.parent is not None else -1 for f in model.features]
    mandatory = [f.variability is Variability.MANDATORY for f in model.features]

    # rule checks scheduled at the last involved feature's position
    checks: list[list] = [[] for _ in range(n)]

    def add_check(positions, predicate):
        checks[max(positions)].append(predicate)

    for group in model.groups:
        owner = index[group.owner]
        members = tuple(index[m] for m in group.members)
        if group.kind is GroupKind.OR:
            add_check((owner, *members),
                      lambda sel, o=owner, ms=members: not sel[o] or any(sel[m] for m in ms))
        else:
            add_check((owner, *members),
                      lambda sel, o=owner, ms=members:
                          not sel[o] or sum(sel[m] for m in ms) == 1)
    for c in model.constraints:
        src, tgt = index[c.source], index[c.target]
        if c.kind is ConstraintKind.REQUIRES:
            add_check((src, tgt), lambda sel, s=src, t=tgt: not sel[s] or sel[t])
        else:
            add_check((src, tgt), lambda sel, s=src, t=tgt: not (sel[s] and sel[t]))

    selected = [False] * n

    def walk(i: int) -> int:
        if i == n:
            return 1
        if parent_of[i] == -1:
            choices = (True,)
        elif not selected[parent_of[i]]:
            choices = (False,)
        elif mandatory[i]:
            choices = (True,)
        else:
            choices = (False, True)
        total = 0
        for value in choices:
            selected[i] = value
            if all(check(selected) for check in checks[i]):
                total += walk(i + 1)
        selected[i] = False
        return total

    return walk(0)


def analyze(model: FeatureModel) -> dict:
    """Full analysis report.

    Returns {"consistent": bool, "dead_features": [names in feature
    order], "configuration_count": int | None}; the count is None when
    the model exceeds the enumeration cap.
    """
    consistent = check_consistency(model)
    dead = dead_features(model) if consistent else set()
    try:
        count = count_configurations(model)
    except EnumerationCapError:
        count = None
    return {
        "consistent": consistent,
        "dead_features": [name for name in model.feature_names if name in dead],
        "configuration_count": count,
    }
