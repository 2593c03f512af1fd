"""Evaluation of formulas in Kripke models and in modal algebras.

Model evaluation follows the complex-algebra convention for diamonds:
a world satisfies <>p when one of its successors satisfies p.  That
makes frame validity and validity in the frame's complex algebra agree
by construction.  All validity-style checks are brute force over the
full valuation/assignment space, guarded by an explicit budget so that
runaway requests fail loudly instead of silently truncating.
"""

from __future__ import annotations

from itertools import product as iter_product
from typing import Iterable, Mapping

from .errors import BindingError, BudgetError
from .formulas import (
    And, Bottom, Box, Diamond, Formula, Iff, Implies, Not, Or, Top, Var,
    variables,
)
from .frames import Frame
from .operators import ModalAlgebra

DEFAULT_BUDGET = 1 << 24

Valuation = Mapping[str, int]
Assignment = Mapping[str, int]


def _guard(space: int, var_count: int, budget: int | None) -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    if space ** max(var_count, 1) > limit:
        raise BudgetError(
            f"{space}**{var_count} exceeds the evaluation budget {limit}; "
            "raise the budget explicitly to proceed"
        )


def eval_in_model(frame: Frame, valuation: Valuation, formula: Formula) -> int:
    """World-set of the formula in the model, as a bitmask."""
    top = (1 << frame.n_worlds) - 1

    def go(node: Formula) -> int:
        if isinstance(node, Var):
            try:
                return valuation[node.name] & top
            except KeyError:
                raise BindingError(f"variable {node.name!r} has no value") from None
        if isinstance(node, Top):
            return top
        if isinstance(node, Bottom):
            return 0
        if isinstance(node, Not):
            return top ^ go(node.child)
        if isinstance(node, And):
            return go(node.left) & go(node.right)
        if isinstance(node, Or):
            return go(node.left) | go(node.right)
        if isinstance(node, Implies):
            return (top ^ go(node.left)) | go(node.right)
        if isinstance(node, Iff):
            return top ^ (go(node.left) ^ go(node.right))
        if isinstance(node, Diamond):
            worlds = go(node.child)
            out = 0
            for x in range(frame.n_worlds):
                if frame.rows[x] & worlds:
                    out |= 1 << x
            return out
        if isinstance(node, Box):
            worlds = top ^ go(node.child)
            out = 0
            for x in range(frame.n_worlds):
                if frame.rows[x] & worlds:
                    out |= 1 << x
            return top ^ out
        raise TypeError(f"not a formula node: {node!r}")

    return go(formula)


def frame_validates(frame: Frame, formula: Formula, budget: int | None = None):
    """Brute-force validity over all valuations.

    Returns (valid, falsifying valuation or None); the witness is the
    first failure in lexicographic order of the sorted variable names,
    so results do not depend on any partitioning of the search space.
    """
    names = sorted(variables(formula))
    space = 1 << frame.n_worlds
    _guard(space, len(names), budget)
    top = space - 1
    for masks in iter_product(range(space), repeat=len(names)):
        valuation = dict(zip(names, masks))
        if eval_in_model(frame, valuation, formula) != top:
            return False, valuation
    return True, None


def _term_evaluator(algebra: ModalAlgebra):
    table = algebra.op.table()
    top = algebra.base.top

    def go(node: Formula, assignment: Mapping[str, int]) -> int:
        if isinstance(node, Var):
            try:
                return assignment[node.name]
            except KeyError:
                raise BindingError(f"variable {node.name!r} has no value") from None
        if isinstance(node, Top):
            return top
        if isinstance(node, Bottom):
            return 0
        if isinstance(node, Not):
            return top ^ go(node.child, assignment)
        if isinstance(node, And):
            return go(node.left, assignment) & go(node.right, assignment)
        if isinstance(node, Or):
            return go(node.left, assignment) | go(node.right, assignment)
        if isinstance(node, Implies):
            return (top ^ go(node.left, assignment)) | go(node.right, assignment)
        if isinstance(node, Iff):
            return top ^ (go(node.left, assignment) ^ go(node.right, assignment))
        if isinstance(node, Diamond):
            return table[go(node.child, assignment)]
        if isinstance(node, Box):
            return top ^ table[top ^ go(node.child, assignment)]
        raise TypeError(f"not a formula node: {node!r}")

    return go


def eval_in_algebra(algebra: ModalAlgebra, assignment: Assignment,
                    formula: Formula) -> int:
    """Value of the formula as an algebra term under the assignment."""
    return _term_evaluator(algebra)(formula, assignment)


def algebra_validates(algebra: ModalAlgebra, formula: Formula,
                      budget: int | None = None):
    """Whether the term equals top under every assignment."""
    names = sorted(variables(formula))
    space = algebra.base.size
    _guard(space, len(names), budget)
    top = algebra.base.top
    evaluate = _term_evaluator(algebra)
    for values in iter_product(range(space), repeat=len(names)):
        assignment = dict(zip(names, values))
        if evaluate(formula, assignment) != top:
            return False, assignment
    return True, None


def quasiidentity_holds(algebra: ModalAlgebra, premises: Iterable[Formula],
                        conclusion: Formula, budget: int | None = None):
    """Every assignment making all premises equal top makes the conclusion top.

    Returns (holds, refuting assignment or None).
    """
    premises = tuple(premises)
    names = sorted(set().union(
        variables(conclusion), *(variables(p) for p in premises)
    ))
    space = algebra.base.size
    _guard(space, len(names), budget)
    top = algebra.base.top
    evaluate = _term_evaluator(algebra)
    for values in iter_product(range(space), repeat=len(names)):
        assignment = dict(zip(names, values))
        if all(evaluate(p, assignment) == top for p in premises):
            if evaluate(conclusion, assignment) != top:
                return False, assignment
    return True, None


def premises_active(algebra: ModalAlgebra, premises: Iterable[Formula],
                    budget: int | None = None):
    """Whether some assignment makes all premises equal top.

    This is activeness relative to the given finite algebra only, not
    the logic-level notion quantifying over all substitutions.
    """
    premises = tuple(premises)
    names = sorted(set().union(*(variables(p) for p in premises), frozenset()))
    space = algebra.base.size
    _guard(space, len(names), budget)
    top = algebra.base.top
    evaluate = _term_evaluator(algebra)
    for values in iter_product(range(space), repeat=len(names)):
        assignment = dict(zip(names, values))
        if all(evaluate(p, assignment) == top for p in premises):
            return True, assignment
    return False, None
