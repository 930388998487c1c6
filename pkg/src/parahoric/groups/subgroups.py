"""Subgroups of G(Z/p^h) described by concave functions or generator lists."""

from __future__ import annotations

from ..concave import ConcaveFunction
from .group import FiniteParahoricGroup, Mat


class BudgetExceeded(RuntimeError):
    pass


def mulclose(group, gens, maxsize: int | None = None) -> set:
    """Closure of a generator list under multiplication."""
    els = {group.identity if hasattr(group, "identity") else group.identity_el()}
    els.update(gens)
    frontier = list(els)
    while frontier:
        nxt = []
        for b in frontier:
            for a in gens:
                c = group.mul(a, b)
                if c not in els:
                    els.add(c)
                    nxt.append(c)
                    if maxsize and len(els) > maxsize:
                        raise BudgetExceeded(f"closure exceeded {maxsize} elements")
        frontier = nxt
    return els


class Subgroup:
    """A subgroup given by generators, optionally backed by a concave function."""

    def __init__(self, group: FiniteParahoricGroup, gens: list[Mat],
                 f: ConcaveFunction | None = None, name: str = ""):
        self.group = group
        self.gens = gens
        self.f = f
        self.name = name
        self._elements: set[Mat] | None = None

    def elements(self, budget: int = 10**6) -> set[Mat]:
        if self._elements is None:
            self._elements = mulclose(self.group, self.gens, maxsize=budget)
        return self._elements

    def order(self, budget: int = 10**6) -> int:
        """Product-formula order for solvable descriptors, else by closure."""
        if self.f is not None and self.f.is_solvable():
            return solvable_order(self.group, self.f)
        return len(self.elements(budget))

    def contains(self, g: Mat, budget: int = 10**6) -> bool:
        return g in self.elements(budget)

    def __repr__(self) -> str:
        tag = self.name or (repr(self.f) if self.f is not None else f"{len(self.gens)} gens")
        return f"Subgroup({tag})"


def solvable_order(g: FiniteParahoricGroup, f: ConcaveFunction) -> int:
    """|P_f| = |H| * prod_a p^(h - f(a)) for solvable f (clamped values)."""
    total = g.torus_order()
    for a in g.rs.roots:
        total *= g.p ** max(0, g.h - f[a])
    return total


def subgroup_gens(g: FiniteParahoricGroup, f: ConcaveFunction) -> list[Mat]:
    """Torus generators plus one filtration generator per root."""
    gens = list(g.torus_gens())
    for a in sorted(g.rs.roots):
        i = f[a]
        if i < g.h:
            gens.append(g.u(a, g.p**i))
    return gens


def subgroup_from_concave(g: FiniteParahoricGroup, f: ConcaveFunction,
                          name: str = "") -> Subgroup:
    if f.h != g.h:
        raise ValueError("depth mismatch between group and concave function")
    return Subgroup(g, subgroup_gens(g, f), f=f, name=name)


def borel(g: FiniteParahoricGroup) -> Subgroup:
    from ..concave import pseudo_borel_function

    return subgroup_from_concave(g, pseudo_borel_function(g.rs, g.h), name="B")


def unipotent_part_gens(g: FiniteParahoricGroup, f: ConcaveFunction,
                        sign: int) -> list[Mat]:
    """Generators of the positive (sign=+1) or negative unipotent part of P_f."""
    out = []
    for a in sorted(g.rs.roots):
        if (min(a) >= 0) != (sign > 0):
            continue
        i = f[a]
        if i < g.h:
            out.append(g.u(a, g.p**i))
    return out


def ru_borel_gens(g: FiniteParahoricGroup) -> list[Mat]:
    """Generators of R_u(B): the depth part of H plus all positive u_a."""
    gens = list(g.torus_congruence_gens())
    for a in sorted(g.rs.positive_roots):
        gens.append(g.u(a, 1))
    return gens
