"""Kazhdan-Lusztig and Z-polynomials, by two independent routes.

* :func:`pz_from_lattice` works on any explicit graded lattice of flats
  and solves the defining recursion interval by interval.
* :func:`dowling_pz` is symbolic in q: every contraction of Q_n(G)
  simplifies to Q_k(G) (k = number of blocks of the flat), so

      Z_{Q_n} = sum_k W(n, k) t^(n-k) P_{Q_k}

  with W(n, k) the number of flats with k blocks.
"""
import json
from dataclasses import dataclass
from functools import lru_cache

from math import comb

from .algebra import QPoly, TQPoly, palindromic_complete, qpoly_eval, qpoly_interpolate, tq_eval_at_q
from .dowling import build_lattice, whitney
from .errors import Mismatch, NotGraded, TooLarge
from .genfun import labeled_counts, series_A, series_AG, series_C, series_S, series_SG
from .group import make_cyclic
from .qsp import connected_sp, diamond_matroid, g_labelings, qsp_all, weighted_counts

LATTICE_MAX_FLATS = 50_000
SYMBOLIC_MAX_N = 40


@dataclass(frozen=True)
class PZResult:
    """``q`` is "symbolic" or the order of the concrete group used."""

    n: int
    P: TQPoly
    Z: TQPoly
    provenance: str = "symbolic"
    q: object = "symbolic"

    def check(self):
        """Assert the defining properties; returns self."""
        n = self.n
        if not self.Z.is_palindromic(n):
            raise AssertionError(f"Z_{n} not palindromic of degree {n}")
        if n > 0 and not 2 * self.P.degree < n:
            raise AssertionError(f"deg P_{n} = {self.P.degree} >= {n}/2")
        if self.P[0] != QPoly(1) or self.Z[0] != QPoly(1):
            raise AssertionError("constant terms must be 1")
        return self

    def to_dict(self):
        return {"n": self.n, "q": self.q, "P": self.P.to_nested(), "Z": self.Z.to_nested()}

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d):
        q = d.get("q", "symbolic")
        prov = "symbolic" if q == "symbolic" else f"q={q}"
        return cls(d["n"], TQPoly.from_nested(d["P"]), TQPoly.from_nested(d["Z"]), prov, q)


class FiniteLattice:
    """A bounded poset given by elements and a ``leq`` predicate.

    Ranks are computed as lengths of longest chains from the bottom; the
    constructor raises ``NotGraded`` when some cover relation skips a rank.
    """

    def __init__(self, elements, leq):
        elements = list(elements)
        if len(elements) > LATTICE_MAX_FLATS:
            raise TooLarge(f"more than {LATTICE_MAX_FLATS} elements")
        m = len(elements)
        above = [
            frozenset(j for j in range(m) if j != i and leq(elements[i], elements[j]))
            for i in range(m)
        ]
        bottoms = [i for i in range(m) if len(above[i]) == m - 1]
        tops = [i for i in range(m) if not above[i]]
        if len(bottoms) != 1 or len(tops) != 1:
            raise NotGraded("lattice must have a unique bottom and top")
        rank = {}
        order = sorted(range(m), key=lambda i: -len(above[i]))
        for i in order:
            below = [j for j in range(m) if i in above[j]]
            rank[i] = max((rank[j] for j in below), default=-1) + 1
        for i in range(m):
            for j in above[i]:
                covers = not any(k in above[i] and j in above[k] for k in above[i])
                if covers and rank[j] != rank[i] + 1:
                    raise NotGraded(f"cover {i} < {j} jumps from rank {rank[i]} to {rank[j]}")
        self.elements = elements
        self.above = above
        self.ranks = [rank[i] for i in range(m)]
        self.bottom = bottoms[0]
        self.top = tops[0]

    def __len__(self):
        return len(self.elements)


def boolean_lattice(r):
    return FiniteLattice(range(1 << r), lambda a, b: a & b == a)


def lattice_of_flats(M):
    """Lattice of flats of a loopless ``LabeledMatroid``."""
    flats = set()
    # closure of every subset, fine at desk scale
    els = M.elements
    for mask in range(1 << len(els)):
        S = 0
        for i, e in enumerate(els):
            if mask >> i & 1:
                S |= 1 << e
        r = M.rank_of(S)
        cl = S
        for e in els:
            if not S >> e & 1 and M.rank_of(S | 1 << e) == r:
                cl |= 1 << e
        flats.add(cl)
    return FiniteLattice(sorted(flats), lambda a, b: a & b == a)


def _add_into(acc, poly, shift):
    for i, c in enumerate(poly):
        acc[i + shift] += c


def pz_from_lattice(L):
    """(P, Z) of the matroid whose lattice of flats is ``L``, as integer TQPoly.

    ``L`` needs ``ranks``, ``above`` (indices strictly above each element),
    ``bottom`` and ``top``.  P of each upper interval [F, top] is solved
    by decreasing corank, corank 0 giving P = 1.
    """
    if len(L.ranks) > LATTICE_MAX_FLATS:
        raise TooLarge(f"more than {LATTICE_MAX_FLATS} flats")
    ranks = L.ranks
    top_rank = ranks[L.top]
    if ranks[L.bottom] != 0:
        raise NotGraded("bottom must have rank 0")
    for i, ups in enumerate(L.above):
        if i != L.top and L.top not in ups:
            raise NotGraded("top must lie above every element")
    order = sorted(range(len(ranks)), key=lambda i: -ranks[i])
    P = {}
    Zbottom = None
    for i in order:
        d = top_rank - ranks[i]
        if d == 0:
            P[i] = (1,)
            continue
        known = [0] * (d + 1)
        for j in L.above[i]:
            _add_into(known, P[j], ranks[j] - ranks[i])
        p = palindromic_complete(TQPoly(known), d)
        P[i] = tuple(c.constant() for c in p)
        if i == L.bottom:
            Zbottom = p + TQPoly(known)
    if Zbottom is None:  # rank 0
        Zbottom = TQPoly([1])
    return TQPoly(P[L.bottom]), Zbottom


@lru_cache(maxsize=None)
def _dowling_P(n):
    if n == 0:
        return TQPoly([1])
    known = TQPoly()
    for k in range(n):
        known = known + (TQPoly([whitney(n, k)]) * _dowling_P(k)).shift(n - k)
    return palindromic_complete(known, n)


def dowling_pz(n):
    """P and Z of Q_n(G), symbolic in q = |G|."""
    if n < 0 or n > SYMBOLIC_MAX_N:
        raise TooLarge(f"symbolic recursion is capped at n = {SYMBOLIC_MAX_N}")
    P = _dowling_P(n)
    Z = TQPoly()
    for k in range(n + 1):
        Z = Z + (TQPoly([whitney(n, k)]) * _dowling_P(k)).shift(n - k)
    return PZResult(n, P, Z, "symbolic").check()


def lattice_pz(n, G):
    """P and Z of Q_n(G) from the explicit lattice of a concrete group."""
    P, Z = pz_from_lattice(build_lattice(n, G))
    return PZResult(n, P, Z, G.name, G.order).check()


def interpolate_pz(samples):
    """Lift concrete results {q: PZResult} to one symbolic in q.

    Every q-coefficient has degree at most n, so n + 1 samples determine
    it; extra samples are checked for consistency.
    """
    ns = {r.n for r in samples.values()}
    if len(ns) != 1:
        raise ValueError("samples must share n")
    n = ns.pop()
    qs = sorted(samples)

    def lift(which):
        polys = [getattr(samples[q], which) for q in qs]
        width = max(p.degree for p in polys) + 1
        out = []
        for i in range(width):
            values = [(q, polys[k][i].constant()) for k, q in enumerate(qs)]
            out.append(qpoly_interpolate(values, n))
        return TQPoly(out)

    return PZResult(n, lift("P"), lift("Z"), "interpolated").check()


@dataclass
class Report:
    name: str
    checks: list

    @property
    def ok(self):
        return all(c["ok"] for c in self.checks)

    def add(self, what, left, right):
        self.checks.append({"check": what, "left": str(left), "right": str(right), "ok": left == right})

    def raise_on_failure(self):
        for c in self.checks:
            if not c["ok"]:
                raise Mismatch(f"{self.name}: {c['check']}: {c['left']} != {c['right']}",
                               where=c["check"], left=c["left"], right=c["right"])
        return self


def verify_theorem1(n, mode="P", counts=None):
    """Coefficient of t^i in P (resp. Z) equals the weighted simple (resp. all)
    QSP count at rank n - i, as exact polynomials in q."""
    pz = dowling_pz(n)
    counts = counts or weighted_counts(n)
    poly = pz.P if mode == "P" else pz.Z
    report = Report(f"theorem1[{mode}] n={n}", [])
    for i in range(n + 1):
        enum = counts.simple_at(n - i) if mode == "P" else counts.all_at(n - i)
        report.add(f"n={n} t^{i}", poly[i], enum)
    return report.raise_on_failure()


def _ints(p):
    return [c.constant() for c in p]


def verify_group_independence(n, groups):
    """Each concrete lattice engine agrees with the symbolic one at q = |G|."""
    pz = dowling_pz(n)
    report = Report(f"group-independence n={n}", [])
    for G in groups:
        res = lattice_pz(n, G)
        report.add(f"n={n} {G.name} P", _ints(res.P), tq_eval_at_q(pz.P, G.order))
        report.add(f"n={n} {G.name} Z", _ints(res.Z), tq_eval_at_q(pz.Z, G.order))
    return report.raise_on_failure()


def _census(matroids):
    out = {}
    for M in matroids:
        key = (M.n, M.rank)
        out[key] = out.get(key, 0) + 1
    return out


def verify_genfun(max_n, qs=(1, 2, 3)):
    """n! [x^n y^k] of C, A, S, A_G, S_G against enumeration."""
    report = Report(f"genfun max_n={max_n}", [])
    C, A, S = (labeled_counts(f(max_n)) for f in (series_C, series_A, series_S))
    for n in range(1, max_n + 1):
        conn = _census(connected_sp(n, cap=max_n))
        counts = weighted_counts(n, cap=max_n)
        everything = _census(qsp_all(n, cap=max_n))
        for k in range(n + 1):
            report.add(f"C n={n} k={k}", C.get((n, k), 0), conn.get((n, k), 0))
            report.add(f"A n={n} k={k}", A.get((n, k), 0), everything.get((n, k), 0))
            report.add(f"S n={n} k={k}", S.get((n, k), 0), qpoly_eval(counts.simple_at(k), 1))
    for q in qs:
        AG, SG = labeled_counts(series_AG(max_n, q)), labeled_counts(series_SG(max_n, q))
        for n in range(1, max_n + 1):
            counts = weighted_counts(n, cap=max_n)
            for k in range(n + 1):
                report.add(f"A_G q={q} n={n} k={k}", AG.get((n, k), 0), qpoly_eval(counts.all_at(k), q))
                report.add(f"S_G q={q} n={n} k={k}", SG.get((n, k), 0), qpoly_eval(counts.simple_at(k), q))
    return report.raise_on_failure()


def verify_labelings(max_n, orders=(2, 3)):
    """Number of canonical G-labelings is |G|^(n - c(M)) for every QSP matroid."""
    report = Report(f"labelings max_n={max_n}", [])
    for q in orders:
        G = make_cyclic(q)
        for n in range(1, max_n + 1):
            bad = 0
            total = 0
            for M in qsp_all(n, cap=max_n):
                total += 1
                if len(g_labelings(M, G)) != q ** (n - M.num_components()):
                    bad += 1
            report.add(f"{G.name} n={n}: {total} matroids, mismatches", bad, 0)
    fig = diamond_matroid()
    report.add("diamond matroid, cyclic:2", len(g_labelings(fig, make_cyclic(2))), 16)
    return report.raise_on_failure()


def double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def leading_simple_count(m):
    """(2m-3)!! (2m-1)^(m-2): connected simple rank-m matroids counted on 2m-1 elements."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return double_factorial(2 * m - 3) * (2 * m - 1) ** (m - 2)


def verify_leading(max_m, enumerate_up_to=4):
    """Leading coefficient of P for odd n = 2m - 1 against the closed form,
    and the closed form against enumeration for small m."""
    report = Report(f"leading max_m={max_m}", [])
    for m in range(2, max_m + 1):
        n = 2 * m - 1
        expected = leading_simple_count(m)
        P = dowling_pz(n).P
        report.add(f"m={m} deg P", P.degree, m - 1)
        report.add(f"m={m} leading P", P[m - 1], QPoly.monomial(2 * m - 2, expected))
        if m <= enumerate_up_to:
            found = sum(1 for M in connected_sp(n, cap=n) if M.rank == m and M.is_simple())
            report.add(f"m={m} enumeration", found, expected)
    return report.raise_on_failure()


def verify_structure(n):
    """Hyperplane counts and (for n = 3) the atom relation on P."""
    pz = dowling_pz(n)
    report = Report(f"structure n={n}", [])
    if n >= 1:
        report.add(f"n={n} [t^(n-1)] Z = hyperplanes", pz.Z[n - 1], whitney(n, 1))
    if n == 3:
        report.add("n=3 [t] P = hyperplanes - atoms", pz.P[1], whitney(3, 1) - whitney(3, 2))
    atoms = QPoly([n, comb(n, 2)])
    report.add(f"n={n} atoms", whitney(n, n - 1) if n >= 1 else QPoly(), atoms if n >= 1 else QPoly())
    for poly in (pz.P, pz.Z):
        for c in poly:
            report.add(f"n={n} nonnegative", all(x >= 0 for x in c.coeffs), True)
    return report.raise_on_failure()
