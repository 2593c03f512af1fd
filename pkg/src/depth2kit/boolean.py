"""Finite Boolean algebras as powerset algebras over indexed atoms.

Elements are plain ints read as atom-index bitmasks: bit i stands for
atom i, 0 is bottom, the all-ones mask is top.  Every finite Boolean
algebra is of this form up to isomorphism, so the algebra object only
needs to carry its atom count and all operations reduce to bit
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import DomainError, SizeError

# Hard cap so that full-carrier enumeration (2**n elements) stays bounded.
MAX_ATOMS = 20


def atom_indices(mask: int) -> Iterator[int]:
    """Yield the indices of the atoms below ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FiniteBA:
    """The powerset algebra on ``n_atoms`` indexed atoms."""

    n_atoms: int

    def __post_init__(self):
        if not 1 <= self.n_atoms <= MAX_ATOMS:
            raise SizeError(
                f"atom count must be between 1 and {MAX_ATOMS}, got {self.n_atoms}"
            )

    @property
    def size(self) -> int:
        return 1 << self.n_atoms

    @property
    def top(self) -> int:
        return (1 << self.n_atoms) - 1

    def atom(self, i: int) -> int:
        if not 0 <= i < self.n_atoms:
            raise DomainError(f"no atom with index {i}")
        return 1 << i

    def atoms(self) -> tuple[int, ...]:
        return tuple(1 << i for i in range(self.n_atoms))

    def elements(self) -> range:
        return range(1 << self.n_atoms)

    def check(self, x: int) -> int:
        if not 0 <= x <= self.top:
            raise DomainError(f"element {x} not in an algebra with {self.n_atoms} atoms")
        return x

    def join(self, x: int, y: int) -> int:
        return self.check(x) | self.check(y)

    def meet(self, x: int, y: int) -> int:
        return self.check(x) & self.check(y)

    def complement(self, x: int) -> int:
        return self.top ^ self.check(x)

    def leq(self, x: int, y: int) -> bool:
        return self.check(x) & self.check(y) == x

    def downset(self, x: int) -> frozenset[int]:
        """The principal ideal of all elements below ``x``."""
        self.check(x)
        out, sub = [], x
        while True:
            out.append(sub)
            if sub == 0:
                return frozenset(out)
            sub = (sub - 1) & x

    def upset(self, x: int) -> frozenset[int]:
        """The principal filter of all elements above ``x``."""
        self.check(x)
        out, sup = [], x
        while True:
            out.append(sup)
            if sup == self.top:
                return frozenset(out)
            sup = (sup + 1) | x


def powerset_algebra(n_atoms: int) -> FiniteBA:
    """Build the finite Boolean algebra with ``2**n_atoms`` elements."""
    return FiniteBA(n_atoms)


@dataclass(frozen=True)
class SubsetClass:
    """Classification flags for a subset of a finite Boolean algebra."""

    is_ideal: bool
    is_filter: bool
    is_bounded_sublattice: bool


def subset_class(ba: FiniteBA, members: Iterable[int]) -> SubsetClass:
    """Classify a subset as ideal / filter / bounded sublattice.

    An ideal is nonempty, downward closed and join closed; a filter is
    the order dual; a bounded sublattice contains 0 and top and is
    closed under meet and join.  The empty set gets all flags false.
    """
    subset = frozenset(ba.check(x) for x in members)
    if not subset:
        return SubsetClass(False, False, False)

    down_closed = all(ba.downset(x) <= subset for x in subset)
    up_closed = all(ba.upset(x) <= subset for x in subset)
    join_closed = all(x | y in subset for x, y in combinations(subset, 2))
    meet_closed = all(x & y in subset for x, y in combinations(subset, 2))

    return SubsetClass(
        is_ideal=down_closed and join_closed,
        is_filter=up_closed and meet_closed,
        is_bounded_sublattice=(
            0 in subset and ba.top in subset and join_closed and meet_closed
        ),
    )
