"""Exact rational polynomials: univariate (PolyQ) and bivariate (BivarPolyQ).

PolyQ is a dense univariate polynomial over Fraction, used both for map
numerators/denominators (variable x) and for expansion coefficients
(variable X). BivarPolyQ is a sparse bivariate polynomial in (L, C) where
L stands for ln(n) and C for the Abel constant; it appears in w-side series
and residual output.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    return Fraction(v)


class PolyQ:
    """Immutable dense polynomial with Fraction coefficients (index = degree)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyQ is immutable")

    # --- constructors ---

    @classmethod
    def const(cls, c) -> "PolyQ":
        return cls((c,))

    @classmethod
    def x(cls) -> "PolyQ":
        return cls((0, 1))

    # --- basic queries ---

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __getitem__(self, d: int) -> Fraction:
        """Coefficient of degree d (0 beyond the stored length)."""
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    # --- arithmetic ---

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == PolyQ.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "PolyQ":
        return PolyQ(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            other = PolyQ.const(other)
        if not isinstance(other, PolyQ):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ(out)

    def __radd__(self, other) -> "PolyQ":
        return self.__add__(other)

    def __sub__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            other = PolyQ.const(other)
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PolyQ":
        return (-self) + other

    def __mul__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PolyQ()
            return PolyQ(tuple(c * other for c in self.coeffs))
        if not isinstance(other, PolyQ):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyQ()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return PolyQ(out)

    def __rmul__(self, other) -> "PolyQ":
        return self.__mul__(other)

    def shift_up(self, k: int) -> "PolyQ":
        """Multiply by x^k."""
        if not self.coeffs or k == 0:
            return self if self.coeffs else PolyQ()
        return PolyQ((Fraction(0),) * k + self.coeffs)

    # --- calculus / evaluation ---

    def derivative(self) -> "PolyQ":
        return PolyQ(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def eval(self, x):
        """Horner evaluation; works for Fraction, int and mpmath floats."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # --- division (for rational-function reduction) ---

    def divmod(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = len(dv) - 1
        lead = dv[-1]
        if len(rem) - 1 < dd:
            return PolyQ(), self
        q = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                f = c / lead
                q[i - dd] = f
                for j, d in enumerate(dv):
                    rem[i - dd + j] -= f * d
        return PolyQ(q), PolyQ(rem)

    __divmod__ = divmod

    def monic(self) -> "PolyQ":
        if not self.coeffs:
            return self
        return self * (1 / self.leading)

    def __repr__(self) -> str:
        return f"PolyQ({list(self.coeffs)!r})"

    def render(self, var: str = "X") -> str:
        """Human-readable ascending form, e.g. '-3/2 - X + X^2'."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                pw = var if d == 1 else f"{var}^{d}"
                body = pw if mag == 1 else f"{mag}*{pw}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic gcd over Q via the Euclidean algorithm."""
    while b:
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic() if a else a


def poly_to_strings(p: PolyQ) -> list[str]:
    """Serialize as a JSON-friendly list of 'p/q' strings, index = degree."""
    return [str(c) for c in p.coeffs]


def poly_from_strings(items: Iterable[str]) -> PolyQ:
    return PolyQ(tuple(Fraction(s) for s in items))


class BivarPolyQ:
    """Immutable sparse polynomial in (L, C) with Fraction coefficients.

    Keys are (i, j) exponent pairs for L^i * C^j.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Fraction] | None = None):
        cleaned = {}
        if terms:
            for (i, j), c in terms.items():
                c = _frac(c)
                if c != 0:
                    cleaned[(int(i), int(j))] = c
        object.__setattr__(self, "terms", dict(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("BivarPolyQ is immutable")

    @classmethod
    def zero(cls) -> "BivarPolyQ":
        return cls()

    @classmethod
    def const(cls, c) -> "BivarPolyQ":
        return cls({(0, 0): _frac(c)})

    @classmethod
    def from_poly_in_x(cls, p: PolyQ, b1: Fraction) -> "BivarPolyQ":
        """Substitute X = -b1*L - C into a polynomial in X."""
        lin = cls({(1, 0): -_frac(b1), (0, 1): Fraction(-1)})
        acc = cls.zero()
        for c in reversed(p.coeffs):
            acc = acc * lin + cls.const(c)
        return acc

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, BivarPolyQ):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == BivarPolyQ.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "BivarPolyQ":
        return BivarPolyQ({k: -c for k, c in self.terms.items()})

    def __add__(self, other) -> "BivarPolyQ":
        if isinstance(other, (int, Fraction)):
            other = BivarPolyQ.const(other)
        if not isinstance(other, BivarPolyQ):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return BivarPolyQ(out)

    def __radd__(self, other) -> "BivarPolyQ":
        return self.__add__(other)

    def __sub__(self, other) -> "BivarPolyQ":
        if isinstance(other, (int, Fraction)):
            other = BivarPolyQ.const(other)
        if not isinstance(other, BivarPolyQ):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "BivarPolyQ":
        if isinstance(other, (int, Fraction)):
            return BivarPolyQ({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, BivarPolyQ):
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return BivarPolyQ(out)

    def __rmul__(self, other) -> "BivarPolyQ":
        return self.__mul__(other)

    def degree_l(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_c(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def eval(self, l_val, c_val):
        acc = 0
        for (i, j), c in self.terms.items():
            acc += c * l_val**i * c_val**j
        return acc

    def __repr__(self) -> str:
        return f"BivarPolyQ({self.terms!r})"

    def render(self) -> str:
        """Readable form, L terms before constants before C, e.g. 'L + 1/2 + C'."""
        if not self.terms:
            return "0"
        def key(item):
            (i, j), _ = item
            return (-i, j)
        parts: list[str] = []
        for (i, j), c in sorted(self.terms.items(), key=key):
            mag = abs(c)
            body = ""
            if i:
                body = "L" if i == 1 else f"L^{i}"
            if j:
                cpart = "C" if j == 1 else f"C^{j}"
                body = f"{body}*{cpart}" if body else cpart
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def to_triples(self) -> list[list]:
        """Serialize as sorted [i, j, 'p/q'] triples."""
        return [[i, j, str(c)] for (i, j), c in sorted(self.terms.items())]

    @classmethod
    def from_triples(cls, triples) -> "BivarPolyQ":
        return cls({(int(i), int(j)): Fraction(s) for i, j, s in triples})
