"""Pointed premodular categories as metric groups (A, q), and the exact
brute-force condensation oracle H -> H_perp / H."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import abelian
from .abelian import Element
from .cyclo import Cyclo, root_of_unity, turn_mod1
from .errors import InputError, InternalFault
from .fusion import FusionRing
from .premodular import Premodular


def element_label(a: Element) -> str:
    return "(" + ",".join(str(x) for x in a) + ")"


@dataclass
class MetricGroup:
    """Finite abelian group with a quadratic form q valued in rational turns."""

    invariant_factors: list[int]
    q: dict[Element, Fraction]
    name: str = "metric"

    def __post_init__(self):
        self.invariant_factors = [int(n) for n in self.invariant_factors]
        if any(n < 1 for n in self.invariant_factors):
            raise InputError("invariant factors must be positive")
        elems = self.elements()
        for a in elems:
            if a not in self.q:
                raise InputError(f"q is missing element {element_label(a)}")
        self.q = {a: turn_mod1(self.q[a]) for a in elems}

    def elements(self) -> list[Element]:
        return abelian.iter_elements(self.invariant_factors)

    def order(self) -> int:
        return abelian.group_order(self.invariant_factors)

    def add(self, a: Element, b: Element) -> Element:
        return abelian.add(self.invariant_factors, a, b)

    def neg(self, a: Element) -> Element:
        return abelian.neg(self.invariant_factors, a)

    def zero(self) -> Element:
        return abelian.zero(self.invariant_factors)

    def bilinear(self, a: Element, b: Element) -> Fraction:
        return turn_mod1(self.q[self.add(a, b)] - self.q[a] - self.q[b])

    def validate(self) -> list[str]:
        bad: list[str] = []
        if self.q[self.zero()] != 0:
            bad.append("q(0) != 0")
        elems = self.elements()
        for a in elems:
            if self.q[self.neg(a)] != self.q[a]:
                bad.append(f"q(-a) != q(a) at a = {element_label(a)}")
        for a in elems:
            for b in elems:
                for c in elems:
                    lhs = self.bilinear(self.add(a, b), c)
                    rhs = turn_mod1(self.bilinear(a, c) + self.bilinear(b, c))
                    if lhs != rhs:
                        bad.append(
                            f"B not biadditive at ({element_label(a)},"
                            f"{element_label(b)},{element_label(c)})")
        return bad

    def is_perfect_pairing(self) -> bool:
        """B nondegenerate: only 0 pairs trivially with everything."""
        elems = self.elements()
        for a in elems:
            if a == self.zero():
                continue
            if all(self.bilinear(a, b) == 0 for b in elems):
                return False
        return True

    # -- subgroups -----------------------------------------------------------

    def subgroup(self, gens) -> list[Element]:
        return abelian.subgroup_closure(self.invariant_factors, gens)

    def orthogonal_complement(self, subgroup: list[Element]) -> list[Element]:
        sub = [abelian.check_element(self.invariant_factors, h) for h in subgroup]
        return [a for a in self.elements()
                if all(self.bilinear(a, h) == 0 for h in sub)]

    def is_isotropic(self, subgroup: list[Element]) -> bool:
        sub = [abelian.check_element(self.invariant_factors, h) for h in subgroup]
        return all(self.q[h] == 0 for h in sub)

    # -- condensation oracle ---------------------------------------------------

    def condense(self, subgroup_gens) -> "MetricGroup":
        """Exact condensation by an isotropic subgroup: (H_perp / H, q-bar)."""
        H = self.subgroup(subgroup_gens)
        if not self.is_isotropic(H):
            bad = next(h for h in H if self.q[h] != 0)
            raise InputError(
                f"subgroup is not isotropic: q({element_label(bad)}) = {self.q[bad]}")
        Hperp = self.orthogonal_complement(H)
        if any(h not in set(Hperp) for h in H):
            raise InternalFault("isotropic subgroup not inside its complement")
        # q descends to cosets: isotropy makes q constant on x + H
        for x in Hperp:
            for h in H:
                if self.q[self.add(x, h)] != self.q[x]:
                    raise InternalFault("q is not constant on a coset")
        pres = abelian.quotient_presentation(self.invariant_factors, Hperp, H)
        new_q = {}
        for t in abelian.iter_elements(pres.invariant_factors):
            new_q[t] = self.q[pres.from_coords(t)]
        return MetricGroup(pres.invariant_factors, new_q,
                           name=f"{self.name}/H{len(H)}")

    # -- categorification --------------------------------------------------------

    def to_premodular(self, name: str = "", check_smatrix: bool = True) -> Premodular:
        elems = self.elements()
        labels = [element_label(a) for a in elems]
        lab = {a: element_label(a) for a in elems}
        dual = {lab[a]: lab[self.neg(a)] for a in elems}
        fusion = {(lab[a], lab[b], lab[self.add(a, b)]): 1
                  for a in elems for b in elems}
        ring = FusionRing(labels, dual, fusion)
        one = Cyclo.one()
        P = Premodular(ring, {x: one for x in labels},
                       {lab[a]: self.q[a] for a in elems},
                       name=name or self.name)
        if check_smatrix:
            # the balancing formula pairs i* with j, so the pointed S-matrix
            # realizes B(a, -b), the conjugate of the pairing
            for a in elems:
                for b in elems:
                    if P.s_entry(lab[a], lab[b]) != root_of_unity(self.bilinear(a, self.neg(b))):
                        raise InternalFault(
                            f"pointed S-matrix differs from the pairing at "
                            f"({lab[a]},{lab[b]})")
        return P


def quadratic_form_from_rule(factors: list[int],
                             coeffs: dict[tuple[int, int], Fraction]) -> dict[Element, Fraction]:
    """Evaluate q(x) = sum_(i<=j) c_ij x_i x_j on every element."""
    r = len(factors)
    for (i, j) in coeffs:
        if not (0 <= i <= j < r):
            raise InputError(f"bad coefficient index ({i},{j})")
    out = {}
    for a in abelian.iter_elements(factors):
        val = Fraction(0)
        for (i, j), c in coeffs.items():
            val += c * a[i] * a[j]
        out[a] = turn_mod1(val)
    return out
