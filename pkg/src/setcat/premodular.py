"""Premodular (ribbon fusion) category data: exact dimensions and twists on
top of a fusion ring, the derived unnormalized S-matrix, and the centralizer
calculus (transparency, Mueger center, nondegeneracy)."""

from __future__ import annotations

from fractions import Fraction

from .cyclo import Cyclo, root_of_unity, turn_mod1
from .errors import InputError, InternalFault
from .fusion import FusionRing, pair_label

_ONE = Cyclo.one()


class Premodular:
    """Fusion ring plus exact quantum dimensions and rational twist turns.

    The S-matrix is never supplied; it is derived from the balancing formula
    S_ij = sum_k N_(i*,j)^k * e^(2 pi i (r_k - r_i - r_j)) * d_k and cached.
    """

    def __init__(self, ring: FusionRing, dims: dict[str, Cyclo],
                 twists: dict[str, Fraction], name: str = ""):
        self.ring = ring
        self.name = name or "unnamed"
        for x in ring.labels:
            if x not in dims:
                raise InputError(f"missing dimension for label {x!r}")
            if x not in twists:
                raise InputError(f"missing twist for label {x!r}")
        self.dims = {x: dims[x] for x in ring.labels}
        self.twists = {x: turn_mod1(twists[x]) for x in ring.labels}
        self._s: dict[tuple[str, str], Cyclo] = {}
        self._s_full = False
        self._inv_dims: dict[str, Cyclo] = {}
        self._nondeg: bool | None = None

    # -- conveniences --------------------------------------------------------

    @property
    def labels(self) -> list[str]:
        return self.ring.labels

    @property
    def unit(self) -> str:
        return self.ring.unit

    def dual(self, x: str) -> str:
        return self.ring.dual[x]

    def dim(self, x: str) -> Cyclo:
        return self.dims[x]

    def twist(self, x: str) -> Fraction:
        return self.twists[x]

    def theta(self, x: str) -> Cyclo:
        return root_of_unity(self.twists[x])

    def is_invertible(self, x: str) -> bool:
        return self.dims[x] == _ONE

    def _inv_dim(self, x: str) -> Cyclo:
        if x not in self._inv_dims:
            self._inv_dims[x] = self.dims[x].inverse()
        return self._inv_dims[x]

    # -- derived S-matrix ------------------------------------------------------

    def s_entry(self, i: str, j: str) -> Cyclo:
        key = (i, j)
        val = self._s.get(key)
        if val is None:
            ri, rj = self.twists[i], self.twists[j]
            val = Cyclo.zero()
            for k, n in self.ring.fuse(self.dual(i), j).items():
                term = root_of_unity(self.twists[k] - ri - rj) * self.dims[k]
                val = val + (term if n == 1 else term * n)
            self._s[key] = val
        return val

    def smatrix(self) -> dict[tuple[str, str], Cyclo]:
        if not self._s_full:
            for i in self.labels:
                for j in self.labels:
                    self.s_entry(i, j)
            self._s_full = True
        return self._s

    def s_row(self, i: str) -> list[Cyclo]:
        return [self.s_entry(i, j) for j in self.labels]

    # -- centralizer calculus -------------------------------------------------

    def centralizes(self, i: str, j: str) -> bool:
        """Mueger's criterion: trivial double braiding iff S_ij = d_i d_j."""
        return self.s_entry(i, j) == self.dims[i] * self.dims[j]

    def monodromy(self, e: str, x: str) -> Cyclo:
        """Scalar of the double braiding of an invertible e around x."""
        if not self.is_invertible(e):
            raise InputError(f"monodromy requires an invertible label, got {e!r}")
        return self.s_entry(e, x) * self._inv_dim(x)

    def centralizer(self, subset: list[str]) -> list[str]:
        seen = set(subset)
        for s in subset:
            if s not in self.ring.index:
                raise InputError(f"unknown label {s!r}")
            if self.dual(s) not in seen:
                raise InputError(f"centralizer input is not dual-closed at {s!r}")
        return [x for x in self.labels if all(self.centralizes(x, s) for s in subset)]

    def muger_center(self) -> list[str]:
        return self.centralizer(self.labels)

    def is_nondegenerate(self) -> bool:
        """Trivial Mueger center, cross-checked against exact S-matrix invertibility."""
        if self._nondeg is None:
            claim = self.muger_center() == [self.unit]
            invertible = self._smatrix_invertible()
            if claim != invertible:
                raise InternalFault(
                    f"{self.name}: Mueger-center criterion ({claim}) disagrees with "
                    f"S-matrix invertibility ({invertible}); data corrupted")
            self._nondeg = claim
        return self._nondeg

    def _smatrix_invertible(self) -> bool:
        # S * conj(S)^T = (global dim) * Id holds exactly iff nondegenerate
        d2 = self.global_dim()
        for i in self.labels:
            for j in self.labels:
                acc = Cyclo.zero()
                for k in self.labels:
                    acc = acc + self.s_entry(i, k) * self.s_entry(j, k).conjugate()
                want = d2 if i == j else Cyclo.zero()
                if acc != want:
                    return False
        return True

    # -- scalar invariants -----------------------------------------------------

    def global_dim(self) -> Cyclo:
        total = Cyclo.zero()
        for x in self.labels:
            total = total + self.dims[x] * self.dims[x]
        return total

    def gauss_sum(self) -> Cyclo:
        total = Cyclo.zero()
        for x in self.labels:
            total = total + root_of_unity(self.twists[x]) * self.dims[x] * self.dims[x]
        return total

    # -- constructions -----------------------------------------------------------

    def deligne(self, other: "Premodular", check_smatrix: bool = True) -> "Premodular":
        """Deligne product: dimensions multiply, twist turns add mod 1."""
        ring = self.ring.product(other.ring)
        dims = {}
        twists = {}
        for a in self.labels:
            for b in other.labels:
                lab = pair_label(a, b)
                dims[lab] = self.dims[a] * other.dims[b]
                twists[lab] = turn_mod1(self.twists[a] + other.twists[b])
        prod = Premodular(ring, dims, twists, name=f"{self.name} (x) {other.name}")
        if check_smatrix:
            for a in self.labels:
                for b in other.labels:
                    for c in self.labels:
                        for d in other.labels:
                            got = prod.s_entry(pair_label(a, b), pair_label(c, d))
                            want = self.s_entry(a, c) * other.s_entry(b, d)
                            if got != want:
                                raise InternalFault(
                                    f"Deligne product S-matrix is not the Kronecker "
                                    f"product at (({a},{b}),({c},{d}))")
        return prod

    def reverse(self, check_smatrix: bool = True) -> "Premodular":
        """Same fusion and dimensions, inverse braiding: twists negate mod 1."""
        twists = {x: turn_mod1(-self.twists[x]) for x in self.labels}
        rev = Premodular(self.ring, self.dims, twists, name=f"rev({self.name})")
        if check_smatrix:
            for i in self.labels:
                for j in self.labels:
                    if rev.s_entry(i, j) != self.s_entry(i, j).conjugate():
                        raise InternalFault(
                            f"reversed braiding S-matrix is not the conjugate at ({i},{j})")
        return rev

    def restrict(self, labels: list[str], name: str = "") -> "Premodular":
        ring = self.ring.restrict(labels)
        return Premodular(ring, {x: self.dims[x] for x in ring.labels},
                          {x: self.twists[x] for x in ring.labels},
                          name=name or f"{self.name}|{{{','.join(ring.labels)}}}")

    # -- validation ---------------------------------------------------------------

    def validate(self) -> list[str]:
        bad = [f"ring: {msg}" for msg in self.ring.validate()]
        one = self.unit
        if self.dims[one] != _ONE:
            bad.append(f"dims: d[{one}] != 1")
        if self.twists[one] != 0:
            bad.append(f"twists: theta[{one}] != 1")
        for x in self.labels:
            d = self.dims[x]
            if d.conjugate() != d:
                bad.append(f"dims: d[{x}] is not real")
            elif d.approx().real <= 0:
                bad.append(f"dims: d[{x}] is not positive")
            if self.dims[self.dual(x)] != d:
                bad.append(f"dims: d[{self.dual(x)}] != d[{x}]")
            if self.twists[self.dual(x)] != self.twists[x]:
                bad.append(f"twists: theta[{self.dual(x)}] != theta[{x}]")
        for i in self.labels:
            for j in self.labels:
                rhs = Cyclo.zero()
                for k, n in self.ring.fuse(i, j).items():
                    rhs = rhs + self.dims[k] * n
                if self.dims[i] * self.dims[j] != rhs:
                    bad.append(f"dims: dimension equation fails at ({i},{j})")
        for i in self.labels:
            for j in self.labels:
                if self.ring.fuse(i, j) != self.ring.fuse(j, i):
                    bad.append(f"braiding: fusion is not commutative at ({i},{j})")
                    break
        if not bad:
            smat = self.smatrix()
            for a, i in enumerate(self.labels):
                if smat[(one, i)] != self.dims[i]:
                    bad.append(f"smatrix: first row differs from dims at {i}")
                for j in self.labels[a:]:
                    if smat[(i, j)] != smat[(j, i)]:
                        bad.append(f"smatrix: not symmetric at ({i},{j})")
                    if smat[(self.dual(i), j)] != smat[(i, j)].conjugate():
                        bad.append(f"smatrix: dual row is not the conjugate at ({i},{j})")
            fp = self.ring.fp_dims()
            for x, f in zip(self.labels, fp):
                if abs(self.dims[x].approx().real - f) > 1e-6:
                    bad.append(f"dims: d[{x}] disagrees with the Frobenius-Perron value")
        return bad

    def __repr__(self):
        return f"Premodular({self.name}, rank {self.ring.rank()})"
