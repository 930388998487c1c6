"""Coset spaces and double-coset counting via the flag orbit.

The pseudo-Borel B is the stabilizer of the standard flag, so G/B is the
orbit of that flag.  For a right subgroup L' containing B, the fibers of
G/B -> G/L' are computed by saturating points under right multiplication
by generators of L'; double cosets L\\G/L' are then left orbits on fibers.
A fully element-level partition of G doubles as an independent oracle on
enumerable instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..concave import ConcaveFunction
from .group import FiniteParahoricGroup, Mat
from .kernels import BudgetExceeded, FlagOrbit
from .subgroups import Subgroup, solvable_order

DEFAULT_COSET_BUDGET = 10**5
DEFAULT_ELEMENT_BUDGET = 10**6


class FlagSpace:
    """The orbit of the standard flag = G/B, with cached quotient labelings."""

    def __init__(self, g: FiniteParahoricGroup, budget: int = DEFAULT_COSET_BUDGET):
        self.group = g
        self.orbit = FlagOrbit(g.n, g.mod, g.p, g.flag_k)
        self.orbit.build(g.gens(), max_points=budget)
        self._quotients: dict[tuple, list[int]] = {}
        expected, rem = divmod(g.order(), self._borel_order())
        if rem or expected != len(self.orbit):
            raise AssertionError(
                f"flag orbit has {len(self.orbit)} points, |G|/|B| = {expected}"
            )

    def _borel_order(self) -> int:
        from ..concave import pseudo_borel_function

        return solvable_order(self.group, pseudo_borel_function(self.group.rs, self.group.h))

    def __len__(self) -> int:
        return len(self.orbit)

    def quotient_labels(self, f: ConcaveFunction) -> list[int]:
        """Fiber labels of G/B -> G/P_f; requires f = 0 on the positive system."""
        if any(f[a] != 0 for a in self.group.rs.positive_roots):
            raise ValueError("right subgroup must contain the standard pseudo-Borel")
        key = f.values
        if key not in self._quotients:
            extra = [
                self.group.u(a, self.group.p ** f[a])
                for a in sorted(self.group.rs.negative_roots)
                if f[a] < self.group.h
            ]
            self._quotients[key] = self.orbit.quotient(extra)
        return self._quotients[key]

    def coset_count(self, f: ConcaveFunction) -> int:
        return len(set(self.quotient_labels(f)))

    def contains(self, f: ConcaveFunction, mat) -> bool:
        """Membership of a group element in P_f (for f containing B):
        g is in P_f iff the flag gB lies in the fiber of the base point."""
        labels = self.quotient_labels(f)
        return labels[self.orbit.locate(mat)] == labels[0]


@dataclass
class DoubleCosetTable:
    left: str
    right: str
    count: int
    representatives: list[Mat]


def double_coset_count_flags(flags: FlagSpace, left_gens: list[Mat],
                             right_f: ConcaveFunction) -> int:
    labels = flags.quotient_labels(right_f)
    merged = flags.orbit.left_orbit_labels(left_gens, labels)
    return len(set(merged))


def double_cosets_flags(flags: FlagSpace, left_gens: list[Mat],
                        right_f: ConcaveFunction,
                        left_name: str = "L", right_name: str = "L'") -> DoubleCosetTable:
    labels = flags.quotient_labels(right_f)
    merged = flags.orbit.left_orbit_labels(left_gens, labels)
    reps: dict[int, Mat] = {}
    for i, lab in enumerate(merged):
        if lab not in reps:
            reps[lab] = flags.orbit.reps[i]
    out = [reps[lab] for lab in sorted(reps)]
    return DoubleCosetTable(left_name, right_name, len(out), out)


def brute_force_double_cosets(group, elements: set, left_gens, right_gens) -> int:
    """Element-level partition of an enumerated group: the independent oracle."""
    index = {g: i for i, g in enumerate(sorted(elements))}
    order = sorted(elements)
    parent = list(range(len(order)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    for g, i in index.items():
        for s in left_gens:
            union(i, index[group.mul(s, g)])
        for x in right_gens:
            union(i, index[group.mul(g, x)])
    return len({find(i) for i in range(len(order))})


def double_cosets(g: FiniteParahoricGroup, left: Subgroup, right: Subgroup,
                  flags: FlagSpace | None = None,
                  coset_budget: int = DEFAULT_COSET_BUDGET,
                  element_budget: int = DEFAULT_ELEMENT_BUDGET) -> DoubleCosetTable:
    """#(left \\ G / right) with canonical representatives.

    Uses the flag space when the right subgroup contains the pseudo-Borel
    (its descriptor vanishes on the positive system); otherwise falls back
    to the element-level partition, which must fit the element budget.
    """
    if right.f is not None and all(right.f[a] == 0 for a in g.rs.positive_roots):
        flags = flags or FlagSpace(g, budget=coset_budget)
        return double_cosets_flags(
            flags, left.gens, right.f, left.name or "L", right.name or "L'"
        )
    if g.order() > element_budget:
        raise BudgetExceeded(
            "right subgroup does not contain B and the group is not enumerable"
        )
    from .subgroups import mulclose

    elements = mulclose(g, g.gens(), maxsize=element_budget)
    count = brute_force_double_cosets(g, elements, left.gens, right.gens)
    return DoubleCosetTable(left.name or "L", right.name or "L'", count, [])
