"""Exact multivariate Laurent polynomials with integer coefficients.

A polynomial lives in Z[x_1^{+-1}, ..., x_n^{+-1}] and is stored as a map from
exponent tuples (length n, entries may be negative) to nonzero Python ints.
Values are immutable and hashable; the term map is canonical, so two equal
polynomials always carry identical maps.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping


class InexactDivision(ArithmeticError):
    """Raised when a quotient does not exist in the Laurent ring."""


class LaurentPoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has length != {nvars}")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, c, nvars):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars):
        return cls.constant(1, nvars)

    @classmethod
    def monomial(cls, exps, coeff=1):
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def variable(cls, i, nvars, power=1):
        """The monomial x_i^power, with 0-based index ``i``."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = power
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- basic protocol -----------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self):
        """Terms in lexicographic order of exponent vectors."""
        return sorted(self._terms.items())

    def coeff(self, exps) -> int:
        return self._terms.get(tuple(exps), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other):
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
        return other

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._check(other)
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise InexactDivision("only monomials have negative powers")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise InexactDivision("monomial coefficient is not a unit")
            return LaurentPoly._raw(self.nvars, {tuple(k * a for a in e): c ** (-k)})
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps):
        """Multiply by the monomial x^exps."""
        return LaurentPoly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()},
        )

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Return q with q * divisor == self, or raise InexactDivision.

        Leading-term elimination under the lexicographic order, which is a
        group order on Z^n, so leading and trailing terms multiply. Every
        quotient term must sit inside the box of per-variable degree ranges
        forced by the Newton polytopes, which makes the loop terminate.
        """
        divisor = self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.nvars)
        n = self.nvars
        lt_b = max(divisor._terms)
        lt_b_c = divisor._terms[lt_b]
        lo = [min(e[i] for e in self._terms) - min(e[i] for e in divisor._terms) for i in range(n)]
        hi = [max(e[i] for e in self._terms) - max(e[i] for e in divisor._terms) for i in range(n)]
        if any(a > b for a, b in zip(lo, hi)):
            raise InexactDivision("degree ranges are incompatible")
        floor = tuple(a - b for a, b in zip(min(self._terms), min(divisor._terms)))
        rem = dict(self._terms)
        quot = {}
        b_terms = list(divisor._terms.items())
        while rem:
            lt_r = max(rem)
            c_r = rem[lt_r]
            m = tuple(a - b for a, b in zip(lt_r, lt_b))
            if c_r % lt_b_c or m < floor or any(not lo[i] <= m[i] <= hi[i] for i in range(n)):
                raise InexactDivision("remainder cannot be cleared")
            c = c_r // lt_b_c
            quot[m] = c
            for e, cb in b_terms:
                t = tuple(a + b for a, b in zip(m, e))
                v = rem.get(t, 0) - c * cb
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return LaurentPoly._raw(n, quot)

    # -- queries used by the lemmas ------------------------------------------

    def is_subtraction_free(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def degree_wrt(self, indices: Iterable[int]):
        """Per-term degree in the given 0-based variables.

        Returns ``(degrees, max_degree, min_degree)`` where ``degrees`` maps
        each exponent vector to the sum of its entries over ``indices``.
        The extremes are None for the zero polynomial.
        """
        idx = list(indices)
        for i in idx:
            if not 0 <= i < self.nvars:
                raise IndexError(f"variable index {i} out of range")
        degs = {e: sum(e[i] for i in idx) for e in self._terms}
        if not degs:
            return degs, None, None
        return degs, max(degs.values()), min(degs.values())

    def denominator_vector(self) -> tuple:
        if self.is_zero():
            raise ValueError("the zero polynomial has no denominator vector")
        return tuple(
            max(0, -min(e[i] for e in self._terms)) for i in range(self.nvars)
        )

    def substitute(self, values) -> "LaurentPoly":
        """Evaluate at Laurent polynomials ``values[i]`` for x_i.

        Negative powers are handled by clearing a common denominator and
        dividing exactly, so the result must itself be a Laurent polynomial.
        """
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        if self.is_zero():
            return LaurentPoly.zero(values[0].nvars if values else 0)
        target = values[0].nvars
        neg = [max(0, -min(e[i] for e in self._terms)) for i in range(self.nvars)]
        powers = {}

        def power(i, k):
            if (i, k) not in powers:
                powers[i, k] = values[i] ** k
            return powers[i, k]

        num = LaurentPoly.zero(target)
        for e, c in self._terms.items():
            term = LaurentPoly.constant(c, target)
            for i, a in enumerate(e):
                if a + neg[i]:
                    term = term * power(i, a + neg[i])
            num = num + term
        den = LaurentPoly.one(target)
        for i, k in enumerate(neg):
            if k:
                den = den * power(i, k)
        return num.divide_exact(den)

    # -- serialization ----------------------------------------------------------

    def to_dict(self):
        return {
            "numVars": self.nvars,
            "terms": [{"exponents": list(e), "coeff": str(c)} for e, c in self.sorted_terms()],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data):
        return cls(data["numVars"], {tuple(t["exponents"]): int(t["coeff"]) for t in data["terms"]})

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self.sorted_terms()!r})"

    def __str__(self):
        return format_fraction(self)


def _monomial_text(exps, names):
    parts = []
    for i, a in enumerate(exps):
        if a == 1:
            parts.append(names[i])
        elif a:
            parts.append(f"{names[i]}^{a}")
    return " ".join(parts)


def format_fraction(poly: LaurentPoly, names=None) -> str:
    """Render as ``(numerator) / (denominator)`` over a common monomial denominator.

    Numerator terms run by increasing total degree, then decreasing lex
    order, so ``1 + x1^2 + x2^2`` reads naturally.
    """
    n = poly.nvars
    names = names or [f"x{i + 1}" for i in range(n)]
    if poly.is_zero():
        return "0"
    den = poly.denominator_vector()
    shifted = [(tuple(a + d for a, d in zip(e, den)), c) for e, c in poly.items()]
    shifted.sort(key=lambda t: (sum(t[0]), tuple(-a for a in t[0])))
    pieces = []
    for e, c in shifted:
        mono = _monomial_text(e, names)
        mag = abs(c)
        body = mono if mono and mag == 1 else (f"{mag} {mono}" if mono else str(mag))
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    num = " ".join(pieces)
    den_text = _monomial_text(den, names)
    if not den_text:
        return num
    if len(shifted) > 1:
        num = f"({num})"
    if sum(1 for d in den if d) > 1:
        den_text = f"({den_text})"
    return f"{num} / {den_text}"


def lp_add(a, b):
    return a + b


def lp_mul(a, b):
    return a * b


def lp_divide_exact(a, b):
    return a.divide_exact(b)
