"""Fusion rings: Grothendieck-level fusion data with validation, the
Frobenius-Perron dimension cross-check, and Deligne products."""

from __future__ import annotations

import numpy as np

from .errors import InputError

_FP_TOL = 1e-12
_FP_MAX_ITER = 20000


def pair_label(a: str, b: str) -> str:
    return f"({a},{b})"


class FusionRing:
    """Simple-object labels with duals and sparse fusion multiplicities.

    The first label is the tensor unit.  Fusion data is a map
    (i, j, k) -> N_ij^k with absent entries meaning zero.
    """

    def __init__(self, labels: list[str], dual: dict[str, str],
                 fusion: dict[tuple[str, str, str], int]):
        if not labels:
            raise InputError("a fusion ring needs at least the unit label")
        if len(set(labels)) != len(labels):
            raise InputError("duplicate labels")
        self.labels = list(labels)
        self.unit = labels[0]
        self.index = {x: i for i, x in enumerate(labels)}
        for x in labels:
            if x not in dual:
                raise InputError(f"dual map misses label {x!r}")
            if dual[x] not in self.index:
                raise InputError(f"dual of {x!r} is the unknown label {dual[x]!r}")
        self.dual = {x: dual[x] for x in labels}
        self.N: dict[tuple[str, str, str], int] = {}
        self._fuse: dict[tuple[str, str], dict[str, int]] = {}
        for (i, j, k), n in fusion.items():
            if i not in self.index or j not in self.index or k not in self.index:
                raise InputError(f"fusion entry {(i, j, k)} uses unknown labels")
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise InputError(f"fusion multiplicity N[{i},{j}]^{k} must be a nonnegative integer")
            if n:
                self.N[(i, j, k)] = n
                self._fuse.setdefault((i, j), {})[k] = n

    def n(self, i: str, j: str, k: str) -> int:
        return self.N.get((i, j, k), 0)

    def fuse(self, i: str, j: str) -> dict[str, int]:
        return self._fuse.get((i, j), {})

    def rank(self) -> int:
        return len(self.labels)

    # -- validation --------------------------------------------------------

    def validate(self) -> list[str]:
        """Exhaustive invariant check; returns violations in deterministic order."""
        bad: list[str] = []
        one = self.unit
        for j in self.labels:
            for k in self.labels:
                want = 1 if j == k else 0
                if self.n(one, j, k) != want:
                    bad.append(f"unit: N[{one},{j}]^{k} = {self.n(one, j, k)}, expected {want}")
                if self.n(j, one, k) != want:
                    bad.append(f"unit: N[{j},{one}]^{k} = {self.n(j, one, k)}, expected {want}")
        for i in self.labels:
            if self.dual[self.dual[i]] != i:
                bad.append(f"duality: dual(dual({i})) = {self.dual[self.dual[i]]}")
        if self.dual[one] != one:
            bad.append(f"duality: dual({one}) = {self.dual[one]}, expected {one}")
        for i in self.labels:
            for j in self.labels:
                want = 1 if j == self.dual[i] else 0
                if self.n(i, j, one) != want:
                    bad.append(f"duality: N[{i},{j}]^{one} = {self.n(i, j, one)}, expected {want}")
        for i in self.labels:
            for j in self.labels:
                for k in self.labels:
                    nijk = self.n(i, j, k)
                    if nijk != self.n(self.dual[i], k, j):
                        bad.append(f"frobenius: N[{i},{j}]^{k} != N[{self.dual[i]},{k}]^{j}")
                    if nijk != self.n(k, self.dual[j], i):
                        bad.append(f"frobenius: N[{i},{j}]^{k} != N[{k},{self.dual[j]}]^{i}")
        for i in self.labels:
            for j in self.labels:
                for k in self.labels:
                    lhs: dict[str, int] = {}
                    for m, nij in self.fuse(i, j).items():
                        for l, nmk in self.fuse(m, k).items():
                            lhs[l] = lhs.get(l, 0) + nij * nmk
                    rhs: dict[str, int] = {}
                    for m, njk in self.fuse(j, k).items():
                        for l, nim in self.fuse(i, m).items():
                            rhs[l] = rhs.get(l, 0) + njk * nim
                    if lhs != rhs:
                        bad.append(f"associativity: ({i} x {j}) x {k} != {i} x ({j} x {k})")
        return bad

    # -- Frobenius-Perron dimensions (float cross-check only) ---------------

    def fp_dims(self) -> list[float]:
        n = self.rank()
        T = np.zeros((n, n))
        for (i, j, k), mult in self.N.items():
            T[self.index[j], self.index[k]] += mult
        v = np.ones(n)
        for _ in range(_FP_MAX_ITER):
            w = T @ v
            norm = np.max(np.abs(w))
            if norm == 0:
                raise InputError("fp_dims: fusion matrix is nilpotent; ring invalid")
            w /= norm
            if np.max(np.abs(w - v)) < _FP_TOL:
                v = w
                break
            v = w
        else:
            raise InputError("fp_dims: power iteration did not converge; ring invalid")
        u = self.index[self.unit]
        if v[u] <= 0:
            raise InputError("fp_dims: Perron vector is not positive; ring invalid")
        d = v / v[u]
        if np.any(d <= 0):
            raise InputError("fp_dims: nonpositive dimension; ring invalid")
        return [float(x) for x in d]

    # -- products and restriction -------------------------------------------

    def product(self, other: "FusionRing") -> "FusionRing":
        labels = [pair_label(a, b) for a in self.labels for b in other.labels]
        dual = {pair_label(a, b): pair_label(self.dual[a], other.dual[b])
                for a in self.labels for b in other.labels}
        fusion: dict[tuple[str, str, str], int] = {}
        for (i, j, k), n1 in self.N.items():
            for (a, b, c), n2 in other.N.items():
                fusion[(pair_label(i, a), pair_label(j, b), pair_label(k, c))] = n1 * n2
        return FusionRing(labels, dual, fusion)

    def restrict(self, labels: list[str]) -> "FusionRing":
        keep = set(labels)
        if self.unit not in keep:
            raise InputError("restriction must contain the unit")
        for x in labels:
            if x not in self.index:
                raise InputError(f"unknown label {x!r}")
            if self.dual[x] not in keep:
                raise InputError(f"restriction is not dual-closed at {x!r}")
        for i in labels:
            for j in labels:
                for k in self.fuse(i, j):
                    if k not in keep:
                        raise InputError(f"restriction is not fusion-closed: {i} x {j} hits {k}")
        ordered = [x for x in self.labels if x in keep]
        fusion = {(i, j, k): n for (i, j, k), n in self.N.items()
                  if i in keep and j in keep and k in keep}
        return FusionRing(ordered, {x: self.dual[x] for x in ordered}, fusion)
