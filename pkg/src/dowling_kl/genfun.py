"""Truncated bivariate power series in x with polynomial-in-y coefficients.

A :class:`BiSeries` of order N stores, for each 0 <= i <= N, the
coefficient of x^i as a dense list of ``Fraction`` (ascending in y).
All arithmetic is exact modulo x^(N+1).

The named series are the exponential generating functions (in x, marking
ground-set size; y marks rank) of

* ``series_C``: connected series-parallel matroids,
* ``series_A``: quasi series-parallel matroids, ``A = exp(C)``,
* ``series_S``: simple quasi series-parallel matroids (empty one included),
  ``S = A(log(1+x), y) / (1+x)``,

and their G-labeled versions ``series_AG = A(qx, y)^(1/q)`` and
``series_SG = S(qx, y)^(1/q)`` for a group of order q.
"""
from fractions import Fraction
from math import factorial

from .errors import BadConstantTerm, NonIntegralCoefficient, NotInvertible

MAX_ORDER = 20


def _ytrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _yadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ytrim(out)


def _yscale(a, c):
    if not c:
        return []
    return [x * c for x in a]


def _ymul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ytrim(out)


class BiSeries:
    """sum_{i <= N} coeffs[i](y) x^i, exact rationals."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N, coeffs=None):
        self.N = N
        cs = [_ytrim(Fraction(c) for c in row) for row in (coeffs or [])][: N + 1]
        cs += [[] for _ in range(N + 1 - len(cs))]
        self.coeffs = cs

    @classmethod
    def constant(cls, N, c=1):
        return cls(N, [[c]])

    @classmethod
    def x(cls, N):
        return cls(N, [[], [1]])

    def coeff(self, i, k=None):
        """Coefficient of x^i (a y-polynomial) or of x^i y^k."""
        row = self.coeffs[i] if 0 <= i <= self.N else []
        if k is None:
            return list(row)
        return row[k] if 0 <= k < len(row) else Fraction(0)

    def scaled_coeff(self, i, k):
        """i! * [x^i y^k]; the labeled count when the series is exponential."""
        return self.coeff(i, k) * factorial(i)

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        n = min(self.N, other.N)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __repr__(self):
        return f"BiSeries(N={self.N}, coeffs={[[str(c) for c in r] for r in self.coeffs]})"

    def truncate(self, N):
        return BiSeries(N, self.coeffs[: N + 1])

    def __add__(self, other):
        N = min(self.N, other.N)
        return BiSeries(N, [_yadd(self.coeffs[i], other.coeffs[i]) for i in range(N + 1)])

    def __neg__(self):
        return BiSeries(self.N, [[-c for c in r] for r in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiSeries(self.N, [_yscale(r, Fraction(other)) for r in self.coeffs])
        N = min(self.N, other.N)
        out = [[] for _ in range(N + 1)]
        for i in range(N + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(N + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = _yadd(out[i + j], _ymul(a, b))
        return BiSeries(N, out)

    __rmul__ = __mul__

    def mul_y(self, p):
        """Multiply by a polynomial in y."""
        p = [Fraction(c) for c in p]
        return BiSeries(self.N, [_ymul(r, p) for r in self.coeffs])

    def derivative(self):
        cs = [_yscale(self.coeffs[i], i) for i in range(1, self.N + 1)]
        return BiSeries(self.N - 1, cs)

    def y_degrees(self):
        return [len(r) - 1 if r else None for r in self.coeffs]


def series_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def integrate_x(a):
    """Antiderivative in x with zero constant term, kept at order ``a.N``."""
    cs = [[]] + [_yscale(a.coeffs[i], Fraction(1, i + 1)) for i in range(a.N)]
    return BiSeries(a.N, cs)


def _is_const(row, value):
    return _ytrim(row) == ([Fraction(value)] if value else [])


def reciprocal(a):
    """1/a; the x^0 coefficient must be a nonzero constant."""
    a0 = a.coeffs[0]
    if len(a0) != 1:
        raise NotInvertible("x^0 coefficient must be a nonzero constant")
    inv0 = 1 / a0[0]
    out = [[inv0]]
    for n in range(1, a.N + 1):
        acc = []
        for k in range(1, n + 1):
            if a.coeffs[k] and out[n - k]:
                acc = _yadd(acc, _ymul(a.coeffs[k], out[n - k]))
        out.append(_yscale(acc, -inv0))
    return BiSeries(a.N, out)


def exp_series(a):
    """exp(a) for a(0, y) = 0, by n f_n = sum_k k a_k f_{n-k}."""
    if a.coeffs[0]:
        raise BadConstantTerm("exp needs a vanishing constant term")
    f = [[Fraction(1)]]
    for n in range(1, a.N + 1):
        acc = []
        for k in range(1, n + 1):
            if a.coeffs[k] and f[n - k]:
                acc = _yadd(acc, _yscale(_ymul(a.coeffs[k], f[n - k]), k))
        f.append(_yscale(acc, Fraction(1, n)))
    return BiSeries(a.N, f)


def log_series(a):
    """log(a) for a(0, y) = 1, by n L_n = n a_n - sum_{k<n} k L_k a_{n-k}."""
    if not _is_const(a.coeffs[0], 1):
        raise BadConstantTerm("log needs constant term 1")
    L = [[]]
    for n in range(1, a.N + 1):
        acc = _yscale(a.coeffs[n], n)
        for k in range(1, n):
            if L[k] and a.coeffs[n - k]:
                acc = _yadd(acc, _yscale(_ymul(L[k], a.coeffs[n - k]), -k))
        L.append(_yscale(acc, Fraction(1, n)))
    return BiSeries(a.N, L)


def compose_x(outer, inner):
    """outer(inner(x, y), y), requiring inner(0, y) = 0 (Horner in x)."""
    if inner.coeffs[0]:
        raise BadConstantTerm("inner series must vanish at x = 0")
    N = min(outer.N, inner.N)
    acc = BiSeries(N, [outer.coeffs[N]])
    for k in range(N - 1, -1, -1):
        acc = acc * inner
        acc.coeffs[0] = _yadd(acc.coeffs[0], outer.coeffs[k])
    return acc


def scale_x(a, c):
    """a(c x, y)."""
    return BiSeries(a.N, [_yscale(r, Fraction(c) ** i) for i, r in enumerate(a.coeffs)])


def comp_inverse_x(f):
    """Compositional inverse in x of f = x + O(x^2).

    Newton iteration g <- g - (f(g) - x) / f'(g), doubling the number of
    correct terms at each step.
    """
    if f.coeffs[0]:
        raise NotInvertible("f must vanish at x = 0")
    if not _is_const(f.coeffs[1], 1):
        raise NotInvertible("f must have linear coefficient 1")
    N = f.N
    fp = f.derivative()
    g = BiSeries.x(1)
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        g = g.truncate(prec)
        fg = compose_x(f.truncate(prec), g)
        fpg = compose_x(fp.truncate(prec), g)
        resid = fg - BiSeries.x(prec)
        g = g - resid * reciprocal(fpg)
    return g.truncate(N) if N >= 1 else BiSeries.x(N)


def nth_root(a, r):
    """a^(1/r) for a(0, y) = 1."""
    if not _is_const(a.coeffs[0], 1):
        raise BadConstantTerm("nth_root needs constant term 1")
    return exp_series(log_series(a) * Fraction(1, r))


def power(a, k):
    out = BiSeries.constant(a.N)
    for _ in range(k):
        out = out * a
    return out


def _check_order(N):
    if N > MAX_ORDER:
        raise ValueError(f"series order is capped at {MAX_ORDER}")


def _assert_ydeg(s, slack=0):
    for i, d in enumerate(s.y_degrees()):
        if d is not None and d > i + slack:
            raise AssertionError(f"y-degree {d} exceeds {i} at x^{i}")


def log1p_x(N):
    """log(1 + x)."""
    return BiSeries(N, [[]] + [[Fraction((-1) ** (k + 1), k)] for k in range(1, N + 1)])


def inverse_kernel(N):
    """(1/y) log(1 + xy) + log(1 + x) - x, whose inverse drives series_C."""
    rows = [[]]
    for k in range(1, N + 1):
        c = Fraction((-1) ** (k + 1), k)
        row = [Fraction(0)] * k
        row[k - 1] += c  # x^k y^(k-1) / k from (1/y) log(1 + xy)
        if k >= 2:
            row[0] += c  # from log(1 + x) - x
        rows.append(row)
    return BiSeries(N, rows)


def series_C(N):
    _check_order(N)
    g = comp_inverse_x(inverse_kernel(N + 1))
    C = integrate_x(g).truncate(N).mul_y([0, 1])
    if N >= 1:
        C.coeffs[1] = _yadd(C.coeffs[1], [Fraction(1), Fraction(1)])
    _assert_ydeg(C)
    return C


def series_A(N):
    A = exp_series(series_C(N))
    _assert_ydeg(A)
    return A


def series_S(N):
    A = series_A(N)
    S = compose_x(A, log1p_x(N)) * reciprocal(BiSeries(N, [[1], [1]]))
    _assert_ydeg(S)
    return S


def _check_integral(s, what):
    for i in range(s.N + 1):
        f = factorial(i)
        for k, c in enumerate(s.coeffs[i]):
            v = c * f
            if v.denominator != 1 or v < 0:
                raise NonIntegralCoefficient(f"{what}: {i}! [x^{i} y^{k}] = {v}")


def series_AG(N, q):
    if q < 1:
        raise ValueError("q must be a positive integer")
    out = nth_root(scale_x(series_A(N), q), q)
    _check_integral(out, f"A_G(q={q})")
    return out


def series_SG(N, q):
    if q < 1:
        raise ValueError("q must be a positive integer")
    out = nth_root(scale_x(series_S(N), q), q)
    _check_integral(out, f"S_G(q={q})")
    return out


def labeled_counts(s):
    """{(n, k): n! [x^n y^k]} as ints; raises if any value is not integral."""
    out = {}
    for i in range(s.N + 1):
        f = factorial(i)
        for k, c in enumerate(s.coeffs[i]):
            v = c * f
            if v.denominator != 1:
                raise NonIntegralCoefficient(f"{i}! [x^{i} y^{k}] = {v}")
            if v:
                out[(i, k)] = int(v)
    return out
