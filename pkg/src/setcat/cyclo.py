"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is stored in a unique canonical form: rational coefficients over the
power basis 1, z, ..., z^(phi(n)-1) of Q(zeta_n) where n is the conductor,
the smallest cyclotomic field containing the value (conductors are never
congruent to 2 mod 4).  Exact equality is therefore a plain comparison of
(order, coefficient map), and values can be hashed and sorted.
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import InputError, SyntaxInputError

__all__ = ["Cyclo", "root_of_unity", "parse_cyclo", "format_cyclo", "turn_mod1"]


def turn_mod1(r) -> Fraction:
    """Normalize a rational turn into [0, 1)."""
    return Fraction(r) % 1


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    # den is monic; the division must be exact (integer quotient, zero rest).
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dd]
        q[i] = c
        if c:
            for j, y in enumerate(den):
                num[i + j] -= c * y
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending degree."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in _divisors(n):
        if d < n:
            den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    return tuple(_poly_div_exact(num, den))


@lru_cache(maxsize=None)
def _degree(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e - deg gives the basis coefficients of z^e for deg <= e < n."""
    deg = _degree(n)
    phi = cyclotomic_polynomial(n)
    rows: list[tuple[int, ...]] = []
    cur = [-c for c in phi[:deg]]  # z^deg
    rows.append(tuple(cur))
    for _ in range(deg + 1, n):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] += top * rows[0][i]
        rows.append(tuple(cur))
    return tuple(rows)


def _canonical(n: int, raw: dict[int, Fraction]) -> dict[int, Fraction]:
    """Reduce arbitrary exponents mod Phi_n to the power basis."""
    deg = _degree(n)
    rows = None
    out: dict[int, Fraction] = {}
    for e, c in raw.items():
        if not c:
            continue
        e %= n
        if e < deg:
            out[e] = out.get(e, 0) + c
        else:
            if rows is None:
                rows = _reduction_rows(n)
            row = rows[e - deg]
            for i, r in enumerate(row):
                if r:
                    out[i] = out.get(i, 0) + c * r
    return {e: c for e, c in out.items() if c}


def _lift(coeffs: dict[int, Fraction], n: int, big: int) -> dict[int, Fraction]:
    if n == big:
        return coeffs
    f = big // n
    return _canonical(big, {e * f: c for e, c in coeffs.items()})


def _minimize(n: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    """Rewrite at the conductor of the value."""
    while True:
        if not coeffs:
            return 1, {}
        if n == 1:
            return 1, coeffs
        if n % 4 == 2:
            # zeta_2m = -zeta_m^((m+1)/2) for odd m
            m = n // 2
            k = (m + 1) // 2
            raw: dict[int, Fraction] = {}
            for e, c in coeffs.items():
                ne = (e * k) % m
                nc = -c if e % 2 else c
                raw[ne] = raw.get(ne, 0) + nc
            n, coeffs = m, _canonical(m, raw)
            continue
        if max(coeffs) == 0:
            return 1, coeffs
        reduced = False
        for p in _prime_factors(n):
            m = n // p
            if m % p == 0:
                # p^2 | n: membership in Q(zeta_m) is support divisibility
                if all(e % p == 0 for e in coeffs):
                    coeffs = _canonical(m, {e // p: c for e, c in coeffs.items()})
                    n = m
                    reduced = True
                    break
            else:
                # p || n with p odd: Galois-average projection onto Q(zeta_m)
                inv_p = pow(p, -1, m) if m > 1 else 0
                raw = {}
                for e, c in coeffs.items():
                    if e % p == 0:
                        ne, nc = e // p, c
                    else:
                        ne, nc = (e * inv_p) % m, c * Fraction(-1, p - 1)
                    raw[ne] = raw.get(ne, 0) + nc
                cand = _canonical(m, raw)
                if _lift(cand, m, n) == coeffs:
                    n, coeffs = m, cand
                    reduced = True
                    break
        if not reduced:
            return n, coeffs


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Cyclo:
    """An exact element of some cyclotomic field, in canonical form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: dict[int, Fraction], _canonical_form: bool = False):
        if not _canonical_form:
            coeffs = _canonical(order, {e: Fraction(c) for e, c in coeffs.items()})
            order, coeffs = _minimize(order, coeffs)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("Cyclo values are immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(q) -> "Cyclo":
        q = Fraction(q)
        return Cyclo(1, {0: q} if q else {}, _canonical_form=True)

    @staticmethod
    def zero() -> "Cyclo":
        return _ZERO

    @staticmethod
    def one() -> "Cyclo":
        return _ONE

    # -- basic predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return self.order == 1

    def as_fraction(self) -> Fraction:
        if self.order != 1:
            raise InputError(f"value {self} is not rational")
        return self.coeffs.get(0, Fraction(0))

    def is_real(self) -> bool:
        return self.conjugate() == self

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Cyclo":
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclo.from_rational(x)
        return NotImplemented

    def __add__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == 1 and other.order == 1:
            return Cyclo.from_rational(self.as_fraction() + other.as_fraction())
        big = _lcm(self.order, other.order)
        a = _lift(self.coeffs, self.order, big)
        b = _lift(other.coeffs, other.order, big)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        n, out = _minimize(big, out)
        return Cyclo(n, out, _canonical_form=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, {e: -c for e, c in self.coeffs.items()}, _canonical_form=True)

    def __sub__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return _ZERO
            return Cyclo(self.order, {e: c * other for e, c in self.coeffs.items()},
                         _canonical_form=True)
        if not isinstance(other, Cyclo):
            return NotImplemented
        if self.order == 1:
            return other * self.as_fraction()
        if other.order == 1:
            return self * other.as_fraction()
        big = _lcm(self.order, other.order)
        a = _lift(self.coeffs, self.order, big)
        b = _lift(other.coeffs, other.order, big)
        raw: dict[int, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1 + e2) % big
                raw[e] = raw.get(e, 0) + c1 * c2
        out = _canonical(big, raw)
        n, out = _minimize(big, out)
        return Cyclo(n, out, _canonical_form=True)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise InputError("division by zero in cyclotomic field")
        if self.order == 1:
            return Cyclo.from_rational(1 / self.as_fraction())
        # norm trick: multiply the remaining Galois conjugates, divide by the norm
        prod = _ONE
        n = self.order
        for k in range(2, n):
            if gcd(k, n) == 1:
                prod = prod * self.galois(k)
        norm = self * prod
        return prod * (1 / norm.as_fraction())

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclo._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- Galois actions ----------------------------------------------------

    def galois(self, k: int) -> "Cyclo":
        """Apply zeta_n -> zeta_n^k; k must be coprime to the order."""
        n = self.order
        if n == 1:
            return self
        if gcd(k, n) != 1:
            raise InputError(f"galois exponent {k} not coprime to order {n}")
        out = _canonical(n, {(e * k) % n: c for e, c in self.coeffs.items()})
        return Cyclo(n, out, _canonical_form=True)

    def conjugate(self) -> "Cyclo":
        if self.order == 1:
            return self
        return self.galois(self.order - 1)

    # -- numeric embedding -------------------------------------------------

    def approx(self) -> complex:
        n = self.order
        return sum((complex(c) * cmath.exp(2j * cmath.pi * e / n)
                    for e, c in self.coeffs.items()), complex(0))

    # -- comparisons, hashing, ordering keys -------------------------------

    def __eq__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def sort_key(self):
        """Deterministic total-order key (no numeric meaning)."""
        items = tuple(sorted((e, c.numerator, c.denominator)
                             for e, c in self.coeffs.items()))
        return (self.order, items)

    def __str__(self):
        return format_cyclo(self)

    def __repr__(self):
        return f"Cyclo({format_cyclo(self)})"


_ZERO = Cyclo(1, {}, _canonical_form=True)
_ONE = Cyclo(1, {0: Fraction(1)}, _canonical_form=True)


@lru_cache(maxsize=None)
def _root(p: int, q: int) -> Cyclo:
    return Cyclo(q, {p: Fraction(1)})


def root_of_unity(r, q: int | None = None) -> Cyclo:
    """Exact e^(2*pi*i*r) for a rational turn r (or a p, q pair of ints)."""
    if q is not None:
        if q == 0:
            raise InputError("root_of_unity: zero denominator")
        r = Fraction(r, q)
    r = turn_mod1(r)
    return _root(r.numerator, r.denominator)


# -- textual value grammar --------------------------------------------------

_TOKEN = re.compile(r"\s*(z\d+\^\d+|z\d+|\d+/\d+|\d+|[+\-*()])")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise SyntaxInputError(f"bad token at {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self) -> Cyclo:
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> Cyclo:
        val = self.factor()
        while self.peek() == "*":
            self.take()
            val = val * self.factor()
        return val

    def factor(self) -> Cyclo:
        tok = self.take()
        if tok is None:
            raise SyntaxInputError("unexpected end of expression")
        if tok == "-":
            return -self.factor()
        if tok == "(":
            val = self.expr()
            if self.take() != ")":
                raise SyntaxInputError("unbalanced parenthesis")
            return val
        if tok.startswith("z"):
            body = tok[1:]
            if "^" in body:
                n_s, k_s = body.split("^")
                n, k = int(n_s), int(k_s)
            else:
                n, k = int(body), 1
            if n == 0:
                raise SyntaxInputError("z0 is not a root of unity")
            return root_of_unity(Fraction(k, n))
        if re.fullmatch(r"\d+/\d+", tok):
            p_s, q_s = tok.split("/")
            if int(q_s) == 0:
                raise SyntaxInputError("zero denominator")
            return Cyclo.from_rational(Fraction(int(p_s), int(q_s)))
        if re.fullmatch(r"\d+", tok):
            return Cyclo.from_rational(int(tok))
        raise SyntaxInputError(f"unexpected token {tok!r}")


def parse_cyclo(text: str) -> Cyclo:
    """Parse the exact value grammar: integers, rationals p/q, zN^k, +, -, *."""
    if not isinstance(text, str):
        raise SyntaxInputError("exact values must be strings")
    tokens = _tokenize(text)
    if not tokens:
        raise SyntaxInputError("empty expression")
    parser = _Parser(tokens)
    val = parser.expr()
    if parser.peek() is not None:
        raise SyntaxInputError(f"trailing input at {parser.peek()!r}")
    return val


def format_cyclo(v: Cyclo) -> str:
    """Canonical textual form; parse(format(v)) == v."""
    if v.is_zero():
        return "0"
    parts = []
    for e in sorted(v.coeffs):
        c = v.coeffs[e]
        if e == 0:
            term = str(c) if c > 0 else f"-{-c}"
        else:
            base = f"z{v.order}" if e == 1 else f"z{v.order}^{e}"
            if c == 1:
                term = base
            elif c == -1:
                term = f"-{base}"
            elif c > 0:
                term = f"{c}*{base}"
            else:
                term = f"-{-c}*{base}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += f" - {term[1:]}"
        else:
            out += f" + {term}"
    return out
