"""Bezout matrices, total-positivity certificates, and Sturm real-root counts.

Polynomials here are plain ascending coefficient lists (ints, Fractions or
``QPoly``), except where a function says otherwise.
"""
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebra import QPoly, qpoly_eval, qpoly_shift_to_u
from .errors import DegreeMismatch, TooLarge

try:  # GMP multiplication makes the full minor sweep several times faster
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover
    _bigint = int

FULL_SWEEP_MAX_DIM = 10


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _degree(p):
    return len(_trim(p)) - 1


class SymMatrix:
    """Symmetric square matrix over a commutative ring."""

    def __init__(self, entries):
        entries = [list(row) for row in entries]
        d = len(entries)
        if any(len(row) != d for row in entries):
            raise ValueError("matrix must be square")
        for i in range(d):
            for j in range(i):
                if entries[i][j] != entries[j][i]:
                    raise ValueError(f"not symmetric at ({i}, {j})")
        self.dim = d
        self.entries = entries

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if isinstance(other, SymMatrix):
            other = other.entries
        return self.entries == [list(r) for r in other]

    def map(self, fn):
        return SymMatrix([[fn(x) for x in row] for row in self.entries])

    def __repr__(self):
        return f"SymMatrix({self.entries!r})"


def bezout_matrix(f, g):
    """B(f, g)_{ij} = [x^i y^j] (f(x) g(y) - f(y) g(x)) / (x - y).

    The quotient is taken by synthetic division in x over the ring of
    polynomials in y; a nonzero remainder is an internal error.
    """
    f, g = _trim(f), _trim(g)
    d = len(f) - 1
    if d < 1:
        raise DegreeMismatch("deg f must be at least 1")
    e = len(g) - 1
    if e not in (d, d - 1):
        raise DegreeMismatch(f"deg g = {e} must be {d} or {d - 1}")
    zero = f[-1] - f[-1]
    g = g + [zero] * (d + 1 - len(g))
    # N[a][b] = coefficient of x^a y^b
    N = [[f[a] * g[b] - f[b] * g[a] for b in range(d + 1)] for a in range(d + 1)]
    Q = [None] * d
    carry = [zero] * (d + 1)
    for a in range(d, 0, -1):
        # Q_{a-1}(y) = N_a(y) + y Q_a(y)
        row = [N[a][b] + (carry[b - 1] if b else zero) for b in range(d + 1)]
        Q[a - 1] = row
        carry = row
    rem = [N[0][b] + (carry[b - 1] if b else zero) for b in range(d + 1)]
    if any(rem):
        raise ArithmeticError("division by x - y left a remainder")
    if any(Q[i][d] for i in range(d)):
        raise ArithmeticError("quotient exceeds degree d - 1 in y")
    return SymMatrix([[Q[i][j] for j in range(d)] for i in range(d)])


def bezout_closed_form(f, g):
    """Same matrix from (x^a y^b - x^b y^a)/(x - y) = sum_s x^(b+s) y^(a-1-s); an oracle."""
    f, g = _trim(f), _trim(g)
    d = len(f) - 1
    zero = f[-1] - f[-1]
    g = g + [zero] * (d + 1 - len(g))
    B = [[zero] * d for _ in range(d)]
    for a in range(d + 1):
        for b in range(a):
            c = f[a] * g[b] - f[b] * g[a]
            for s in range(a - b):
                B[b + s][a - 1 - s] = B[b + s][a - 1 - s] + c
    return SymMatrix(B)


def bareiss_leading_minors(rows):
    """Leading principal minors of an integer matrix, by fraction-free elimination.

    Stops (returning the minors so far plus a zero) at the first vanishing pivot.
    """
    A = [list(r) for r in rows]
    d = len(A)
    out = []
    prev = 1
    for k in range(d):
        pivot = A[k][k]
        out.append(pivot)
        if pivot == 0:
            return out
        for i in range(k + 1, d):
            for j in range(k + 1, d):
                A[i][j] = (A[i][j] * pivot - A[i][k] * A[k][j]) // prev
        prev = pivot
    return out


def det(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return 1
    if all(isinstance(x, int) for r in rows for x in r):
        m = bareiss_leading_minors(rows)
        return m[-1] if len(m) == len(rows) else 0
    # generic ring: Laplace expansion (small matrices only)
    if len(rows) == 1:
        return rows[0][0]
    total = None
    for j, a in enumerate(rows[0]):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def is_positive_definite_at(M, q0=None):
    """All leading principal minors of M (evaluated at q = q0 if symbolic) are positive."""
    ent = M.entries
    if q0 is not None:
        ent = [[qpoly_eval(x, q0) if isinstance(x, QPoly) else x for x in row] for row in ent]
    if any(isinstance(x, Fraction) for row in ent for x in row):
        from math import lcm

        den = 1
        for row in ent:
            for x in row:
                den = lcm(den, Fraction(x).denominator)
        ent = [[int(Fraction(x) * den) for x in row] for row in ent]
    minors = bareiss_leading_minors(ent)
    return len(minors) == len(ent) and all(m > 0 for m in minors)


# -- Kronecker substitution: a polynomial in u with |coeffs| < 2^(B-1) is
# -- encoded as its value at u = 2^B; ring operations commute with this.


def _encode(p, B):
    v = _bigint(0)
    for c in reversed(p.coeffs):
        v = (v << B) + c
    return v


def _decode(v, B):
    v = int(v)
    coeffs = []
    mask = (1 << B) - 1
    half = 1 << (B - 1)
    while v:
        digit = v & mask
        if digit >= half:
            digit -= 1 << B
        coeffs.append(digit)
        v = (v - digit) >> B
    return QPoly(coeffs)


def _coefficient_bits(rows_u):
    # every minor's coefficient l1-norm is at most prod of row l1-sums
    bound = 1
    for row in rows_u:
        s = sum(sum(abs(c) for c in x.coeffs) for x in row)
        bound *= max(1, s)
    return bound.bit_length() + 2


def _max_degree(rows_u):
    return max((x.degree for row in rows_u for x in row if x), default=0)


class _PositivityTester:
    """Tests 'every u-coefficient up to the degree is a positive integer' on
    encoded values: subtracting 1 from each chunk must not borrow, and no
    chunk may reach 2^(B-1)."""

    def __init__(self, B, max_deg):
        self.B = B
        chunks = max_deg + 2
        self.top_bits = _bigint(sum(1 << (B * i + B - 1) for i in range(chunks)))
        self.max_bits = B * chunks
        self.ones = [_bigint(0)]
        for i in range(chunks):
            self.ones.append(self.ones[-1] + (_bigint(1) << (B * i)))

    def __call__(self, v):
        if v <= 0 or v.bit_length() > self.max_bits:
            return False
        if v & self.top_bits:
            return False
        w = v - self.ones[(v.bit_length() - 1) // self.B + 1]
        return w >= 0 and not (w & self.top_bits)


@dataclass
class Certificate:
    kind: str
    n: int
    q: object
    verdict: bool
    witness: object = None
    level: str = None
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        d = {"kind": self.kind, "n": self.n, "q": self.q, "verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.level is not None:
            d["level"] = self.level
        for k, v in self.detail.items():
            d[k] = v
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass
class MinorSweep:
    certified: bool
    minors_checked: int
    witness: tuple = None
    witness_poly: QPoly = None


def all_minors_positive_in_u(M, max_dim=FULL_SWEEP_MAX_DIM):
    """Certify that every square minor of M, expanded in u = q - 1, has all
    coefficients positive (hence is positive for every real q >= 1).
    ``minors_checked`` counts minors up to transposition.

    All minors are computed at once by Laplace expansion along the smallest
    row, keyed by (row set, column set) bit masks, on Kronecker-encoded
    integers.  On failure the first violating minor is returned as witness.
    """
    d = M.dim
    if d > max_dim:
        raise TooLarge(f"full minor sweep is capped at dimension {max_dim}")
    rows_u = [[qpoly_shift_to_u(x if isinstance(x, QPoly) else QPoly(x)) for x in row]
              for row in M.entries]
    B = _coefficient_bits(rows_u)
    B += (-B) % 8
    deg = _max_degree(rows_u) * d
    ok = _PositivityTester(B, deg)
    enc = [[_encode(x, B) for x in row] for row in rows_u]
    checked = 0

    def fail(R, C, v):
        rs = tuple(i for i in range(d) if R >> i & 1)
        cs = tuple(j for j in range(d) if C >> j & 1)
        return MinorSweep(False, checked, (rs, cs), _decode(v, B))

    # M is symmetric, so minor(R, C) = minor(C, R): store only R <= C
    layer = {}
    for i in range(d):
        for j in range(i, d):
            v = enc[i][j]
            checked += 1
            if not ok(v):
                return fail(1 << i, 1 << j, v)
            layer[(1 << i, 1 << j)] = v
    for k in range(2, d + 1):
        new = {}
        sets = sorted(sum(1 << j for j in c) for c in combinations(range(d), k))
        for R in sets:
            r0 = (R & -R).bit_length() - 1
            Rrest = R & ~(1 << r0)
            row = enc[r0]
            for C in sets:
                if C < R:
                    continue
                v = 0
                sign = 1
                cc = C
                while cc:
                    low = cc & -cc
                    j = low.bit_length() - 1
                    Crest = C & ~low
                    sub = layer[(Rrest, Crest) if Rrest <= Crest else (Crest, Rrest)]
                    if sign > 0:
                        v += row[j] * sub
                    else:
                        v -= row[j] * sub
                    sign = -sign
                    cc ^= low
                checked += 1
                if not ok(v):
                    return fail(R, C, v)
                new[(R, C)] = v
        layer = new
    return MinorSweep(True, checked)


def leading_minors_positive_in_u(M):
    """The weaker certificate: leading principal minors only (positive
    definiteness for every q >= 1).  Returns (certified, minors in u)."""
    rows_u = [[qpoly_shift_to_u(x if isinstance(x, QPoly) else QPoly(x)) for x in row]
              for row in M.entries]
    B = _coefficient_bits(rows_u)
    deg = _max_degree(rows_u) * M.dim
    ok = _PositivityTester(B, deg)
    enc = [[_encode(x, B) for x in row] for row in rows_u]
    vals = bareiss_leading_minors(enc)
    polys = [_decode(v, B) for v in vals]
    return len(vals) == M.dim and all(ok(v) for v in vals), polys


def sampled_minors_positive(M, q_values, samples=200, seed=0):
    """Numeric spot check: random square minors are positive at each q."""
    rng = random.Random(seed)
    d = M.dim
    for q0 in q_values:
        ent = [[qpoly_eval(x, q0) if isinstance(x, QPoly) else x for x in row] for row in M.entries]
        for _ in range(samples):
            k = rng.randint(1, d)
            R = sorted(rng.sample(range(d), k))
            C = sorted(rng.sample(range(d), k))
            if det([[ent[i][j] for j in C] for i in R]) <= 0:
                return False, (q0, tuple(R), tuple(C))
    return True, None


# -- univariate polynomials over Q, ascending lists of Fraction


def _pnorm(p):
    return _trim(Fraction(c) for c in p)


def _pderiv(p):
    return _trim(i * p[i] for i in range(1, len(p)))


def _pdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        s = len(a) - len(b)
        q[s] = c
        for i, bc in enumerate(b):
            a[s + i] -= c * bc
        a = _trim(a)
    return _trim(q), a


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return [c / a[-1] for c in a]


def _sign_changes(signs):
    signs = [s for s in signs if s]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


@dataclass
class SturmResult:
    real_rooted: bool
    distinct_real_roots: int
    squarefree_degree: int


def sturm_real_rooted(f):
    """Count distinct real roots of f by a Sturm chain on its squarefree part."""
    f = _pnorm(f)
    if not f:
        raise ValueError("zero polynomial")
    if len(f) == 1:
        return SturmResult(True, 0, 0)
    g = _pgcd(f, _pderiv(f))
    sq = _pdivmod(f, g)[0]
    chain = [sq, _pderiv(sq)]
    while True:
        r = _pdivmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append([-c for c in r])

    def sgn(x):
        return (x > 0) - (x < 0)

    at_pos = [sgn(p[-1]) for p in chain]
    at_neg = [sgn(p[-1]) * (-1) ** (len(p) - 1) for p in chain]
    count = _sign_changes(at_neg) - _sign_changes(at_pos)
    degree = len(sq) - 1
    return SturmResult(count == degree, count, degree)


def interlaces(f, g, spot_check=True):
    """g strictly interlaces f iff B(f, g) is positive definite.

    With ``spot_check`` the verdict is cross-checked against Sturm
    real-rootedness of both polynomials when it is positive.
    """
    B = bezout_matrix([Fraction(c) for c in f], [Fraction(c) for c in g])
    verdict = is_positive_definite_at(B)
    if verdict and spot_check:
        for p in (f, g):
            if len(_trim(p)) > 1 and not sturm_real_rooted(p).real_rooted:
                raise ArithmeticError("positive definite Bezoutian for a non-real-rooted polynomial")
    return verdict
