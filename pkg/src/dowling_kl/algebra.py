"""Exact polynomial arithmetic in q and in t over Z[q].

``QPoly`` is a dense univariate polynomial with integer coefficients,
stored ascending.  ``TQPoly`` is a polynomial in t whose coefficients are
``QPoly``.  Both are immutable and canonical (no trailing zeros), so
``==`` and ``hash`` are structural.

The KL recursion only ever needs one nontrivial step, the palindromic
completion in :func:`palindromic_complete`; everything else here is
plumbing around it.
"""
from fractions import Fraction
from functools import total_ordering

from .errors import (
    InconsistentSamples,
    NonIntegerCoefficients,
    NotCompletable,
    NotDivisible,
)

# exact rationals; Fraction already keeps gcd(num, den) = 1 and den > 0
QRat = Fraction

# degree of the zero polynomial
DEG_ZERO = float("-inf")


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


@total_ordering
class QPoly:
    """Polynomial in q with integer coefficients, ``coeffs[i]`` is the q^i term."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        cs = _trim(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"QPoly coefficients must be int, got {type(c).__name__}")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def q(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, k, c=1):
        return cls((0,) * k + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant(self):
        return self.coeffs[0] if self.coeffs else 0

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __lt__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        return (len(self.coeffs), self.coeffs[::-1]) < (len(other.coeffs), other.coeffs[::-1])

    def __hash__(self):
        return hash(("QPoly", self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return QPoly(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return QPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = QPoly(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, q0):
        return qpoly_eval(self, q0)

    def content(self):
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def __repr__(self):
        return f"QPoly({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self.coeffs, "q")


def format_poly(coeffs, var, descending=True):
    """Plain-text rendering, e.g. ``q^3 + 4*q^2 - 1``."""
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        terms.append((c < 0, body))
    if not terms:
        return "0"
    if descending:
        terms.reverse()
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


def qpoly_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def qpoly_eval(p, q0):
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * q0 + c
    return acc


def _taylor_shift(coeffs, a):
    # coefficients of p(x + a)
    out = []
    for c in reversed(coeffs):
        # out <- out * (x + a) + c
        nxt = [0] * (len(out) + 1)
        for i, v in enumerate(out):
            nxt[i + 1] += v
            nxt[i] += a * v
        nxt[0] += c
        out = nxt
    return out


def qpoly_shift_to_u(p):
    """Re-expand ``p`` in u = q - 1, i.e. return p(u + 1)."""
    return QPoly(_taylor_shift(p.coeffs, 1))


def qpoly_shift_from_u(p):
    """Inverse of :func:`qpoly_shift_to_u`: return p(q - 1)."""
    return QPoly(_taylor_shift(p.coeffs, -1))


def qpoly_interpolate(values, degree_bound):
    """Integer polynomial of degree <= ``degree_bound`` through ``values``.

    ``values`` is an iterable of ``(q0, v)`` pairs.  Extra samples beyond
    ``degree_bound + 1`` are used as consistency checks.
    """
    pts = {}
    for q0, v in values:
        if q0 in pts and pts[q0] != v:
            raise InconsistentSamples(f"two values at q = {q0}")
        pts[q0] = v
    if len(pts) < degree_bound + 1:
        raise InconsistentSamples(
            f"need {degree_bound + 1} distinct points, got {len(pts)}"
        )
    xs = sorted(pts)
    base = xs[: degree_bound + 1]
    # Newton divided differences, then expand to monomial basis
    dd = [Fraction(pts[x]) for x in base]
    for j in range(1, len(base)):
        for i in range(len(base) - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (base[i] - base[i - j])
    poly = [Fraction(0)]
    for i in range(len(base) - 1, -1, -1):
        # poly <- poly * (x - base[i]) + dd[i]
        nxt = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= base[i] * c
        nxt[0] += dd[i]
        poly = nxt
    for x in xs[degree_bound + 1:]:
        val = sum(c * x**k for k, c in enumerate(poly))
        if val != pts[x]:
            raise InconsistentSamples(f"sample at q = {x} is off the interpolant")
    if any(c.denominator != 1 for c in poly):
        raise NonIntegerCoefficients(f"interpolant {poly} is not integral")
    return QPoly([int(c) for c in poly])


class TQPoly:
    """Polynomial in t with ``QPoly`` coefficients, ascending in t."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = []
        for c in coeffs:
            if isinstance(c, int):
                c = QPoly(c)
            elif not isinstance(c, QPoly):
                c = QPoly(c)
            cs.append(c)
        object.__setattr__(self, "coeffs", _trim(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TQPoly is immutable")

    @classmethod
    def from_nested(cls, rows):
        return cls([QPoly(r) for r in rows])

    def to_nested(self):
        return [list(c.coeffs) for c in self.coeffs]

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else QPoly()

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TQPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("TQPoly", self.coeffs))

    def __add__(self, other):
        if not isinstance(other, TQPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return TQPoly([self[i] + other[i] for i in range(n)])

    def __neg__(self):
        return TQPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, QPoly)):
            return TQPoly([c * other for c in self.coeffs])
        if not isinstance(other, TQPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return TQPoly()
        out = [QPoly()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return TQPoly(out)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        return TQPoly((QPoly(),) * k + self.coeffs)

    def is_palindromic(self, d):
        if len(self.coeffs) != d + 1:
            return False
        return all(self.coeffs[i] == self.coeffs[d - i] for i in range(d + 1))

    def __repr__(self):
        return f"TQPoly({self.to_nested()})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif len([x for x in c.coeffs if x]) > 1:
                parts.append(f"({cs})*{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)


def palindromic_complete(known, d):
    """Solve for the KL polynomial of a rank-``d`` matroid.

    ``known`` is sum over non-bottom flats F of t^rk(F) * P_{M/F}(t).
    Returns P with deg P < d/2 such that P + known is palindromic of
    degree d.  The output is re-checked rather than trusted.
    """
    if d == 0:
        if known:
            raise NotCompletable("rank 0 matroid has no nonzero proper part")
        return TQPoly([1])
    if known[d] != QPoly(1) or len(known) != d + 1:
        raise NotCompletable(f"coefficient of t^{d} must be 1 and top degree d")
    if not known[0].is_zero():
        raise NotCompletable("constant term of the known part must vanish")
    half = (d + 1) // 2  # indices 0 <= i < d/2
    P = TQPoly([known[d - i] - known[i] for i in range(half)])
    if P[0] != QPoly(1):
        raise NotCompletable(f"constant term of P came out as {P[0]}")
    Z = P + known
    if not Z.is_palindromic(d):
        raise NotCompletable(f"Z = {Z} is not palindromic of degree {d}")
    return P


def scale_t_by_qsquared(p):
    """Substitute t -> t/q^2, requiring the result to stay in Z[q][t]."""
    out = []
    for i, c in enumerate(p.coeffs):
        k = 2 * i
        if any(c.coeffs[:k]):
            raise NotDivisible(f"coefficient of t^{i} ({c}) is not divisible by q^{k}")
        out.append(QPoly(c.coeffs[k:]))
    return TQPoly(out)


def unscale_t_by_qsquared(p):
    return TQPoly([QPoly((0,) * (2 * i) + c.coeffs) if c else c for i, c in enumerate(p.coeffs)])


def tq_eval_at_q(p, q0):
    """Specialize q = q0; returns the integer coefficient list of a polynomial in t."""
    out = [qpoly_eval(c, q0) for c in p.coeffs]
    while out and not out[-1]:
        out.pop()
    return out
