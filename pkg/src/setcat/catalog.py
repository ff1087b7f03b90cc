"""Built-in fixture catalog: small exact categories with their declared
symmetry embeddings.  Every entry is validated on first access."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cyclo import Cyclo, parse_cyclo
from .double import drinfeld_double, rep_abelian
from .embedding import SymmetryEmbedding
from .errors import InternalFault
from .fusion import FusionRing
from .premodular import Premodular

F = Fraction
_ONE = Cyclo.one()


@dataclass
class CatalogEntry:
    name: str
    category: Premodular
    embeddings: dict[str, SymmetryEmbedding] = field(default_factory=dict)


def _group_category(name: str, labels: list[str], add, neg,
                    twists: dict[str, Fraction]) -> Premodular:
    fusion = {(a, b, add(a, b)): 1 for a in labels for b in labels}
    ring = FusionRing(labels, {a: neg(a) for a in labels}, fusion)
    return Premodular(ring, {a: _ONE for a in labels}, twists, name=name)


def _vec() -> CatalogEntry:
    ring = FusionRing(["1"], {"1": "1"}, {("1", "1", "1"): 1})
    cat = Premodular(ring, {"1": _ONE}, {"1": F(0)}, name="vec")
    return CatalogEntry("vec", cat)


def _z2_pointed(name: str, twist: Fraction) -> Premodular:
    labels = ["1", "s"]
    add = lambda a, b: "1" if a == b else ("s" if "s" in (a, b) else "1")
    return _group_category(name, labels, add, lambda a: a,
                           {"1": F(0), "s": twist})


def _rep_z2() -> CatalogEntry:
    labels = ["1", "e"]
    add = lambda a, b: "1" if a == b else "e"
    cat = _group_category("rep_z2", labels, add, lambda a: a,
                          {"1": F(0), "e": F(0)})
    emb = SymmetryEmbedding([2], "rep_z2", {(0,): "1", (1,): "e"})
    return CatalogEntry("rep_z2", cat, {"identity": emb})


def _rep_z4() -> CatalogEntry:
    cat, emb = rep_abelian([4])
    cat.name = "rep_z4"
    emb = SymmetryEmbedding([4], "rep_z4", dict(emb.mapping))
    return CatalogEntry("rep_z4", cat, {"identity": emb})


def _semion(name: str, twist: Fraction) -> CatalogEntry:
    return CatalogEntry(name, _z2_pointed(name, twist))


def _double_semion() -> CatalogEntry:
    labels = ["1", "s", "sb", "b"]
    table = {
        ("1", x): x for x in labels
    }
    pairs = {("s", "s"): "1", ("s", "sb"): "b", ("s", "b"): "sb",
             ("sb", "sb"): "1", ("sb", "b"): "s", ("b", "b"): "1",
             ("sb", "s"): "b", ("b", "s"): "sb", ("b", "sb"): "s"}

    def add(a, b):
        if a == "1":
            return b
        if b == "1":
            return a
        return pairs[(a, b)]

    cat = _group_category("double_semion", labels, add, lambda a: a,
                          {"1": F(0), "s": F(1, 4), "sb": F(3, 4), "b": F(0)})
    emb = SymmetryEmbedding([2], "double_semion", {(0,): "1", (1,): "b"})
    return CatalogEntry("double_semion", cat, {"boson": emb})


def _toric() -> CatalogEntry:
    labels = ["1", "e", "m", "f"]
    pairs = {("e", "m"): "f", ("e", "f"): "m", ("m", "f"): "e",
             ("m", "e"): "f", ("f", "e"): "m", ("f", "m"): "e"}

    def add(a, b):
        if a == "1":
            return b
        if b == "1":
            return a
        if a == b:
            return "1"
        return pairs[(a, b)]

    cat = _group_category("toric_code", labels, add, lambda a: a,
                          {"1": F(0), "e": F(0), "m": F(0), "f": F(1, 2)})
    emb_e = SymmetryEmbedding([2], "toric_code", {(0,): "1", (1,): "e"})
    emb_m = SymmetryEmbedding([2], "toric_code", {(0,): "1", (1,): "m"})
    return CatalogEntry("toric_code", cat, {"e": emb_e, "m": emb_m})


def _double(factors: list[int]) -> CatalogEntry:
    cat, emb = drinfeld_double(factors)
    return CatalogEntry(cat.name, cat, {"canonical": emb})


def _ising(reverse: bool) -> CatalogEntry:
    labels = ["1", "psi", "sigma"]
    fusion = {
        ("1", "1", "1"): 1, ("1", "psi", "psi"): 1, ("1", "sigma", "sigma"): 1,
        ("psi", "1", "psi"): 1, ("sigma", "1", "sigma"): 1,
        ("psi", "psi", "1"): 1,
        ("psi", "sigma", "sigma"): 1, ("sigma", "psi", "sigma"): 1,
        ("sigma", "sigma", "1"): 1, ("sigma", "sigma", "psi"): 1,
    }
    ring = FusionRing(labels, {x: x for x in labels}, fusion)
    name = "ising_rev" if reverse else "ising"
    tw = F(15, 16) if reverse else F(1, 16)
    cat = Premodular(ring, {"1": _ONE, "psi": _ONE, "sigma": parse_cyclo("z8 + z8^7")},
                     {"1": F(0), "psi": F(1, 2), "sigma": tw}, name=name)
    return CatalogEntry(name, cat)


def _fibonacci() -> CatalogEntry:
    labels = ["1", "tau"]
    fusion = {("1", "1", "1"): 1, ("1", "tau", "tau"): 1, ("tau", "1", "tau"): 1,
              ("tau", "tau", "1"): 1, ("tau", "tau", "tau"): 1}
    ring = FusionRing(labels, {x: x for x in labels}, fusion)
    cat = Premodular(ring, {"1": _ONE, "tau": parse_cyclo("1 + z5 + z5^4")},
                     {"1": F(0), "tau": F(2, 5)}, name="fibonacci")
    return CatalogEntry("fibonacci", cat)


@lru_cache(maxsize=1)
def catalog() -> dict[str, CatalogEntry]:
    """All fixtures, keyed by name, each validated as a startup self-test."""
    entries = [
        _vec(),
        _rep_z2(),
        _rep_z4(),
        _semion("semion", F(1, 4)),
        _semion("anti_semion", F(3, 4)),
        _double_semion(),
        _toric(),
        _double([2]),
        _double([3]),
        _double([4]),
        _ising(reverse=False),
        _ising(reverse=True),
        _fibonacci(),
    ]
    out: dict[str, CatalogEntry] = {}
    for entry in entries:
        report = entry.category.validate()
        if report:
            raise InternalFault(
                f"catalog fixture {entry.name!r} fails validation: {report[0]}")
        for key, emb in entry.embeddings.items():
            emb_report = emb.validate(entry.category)
            if emb_report:
                raise InternalFault(
                    f"catalog embedding {entry.name}:{key} invalid: {emb_report[0]}")
        out[entry.name] = entry
    return out


def get(name: str) -> CatalogEntry:
    entries = catalog()
    if name not in entries:
        raise InternalFault(f"no catalog fixture named {name!r}")
    return entries[name]
