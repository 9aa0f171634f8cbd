"""Enumeration of (G-labeled) quasi series-parallel matroids on {1..n}.

Connected series-parallel matroids are generated by closing the one-element
matroids under series and parallel extensions; arbitrary quasi
series-parallel matroids are direct sums of those over set partitions of
the ground set.  Counts weighted by q^(n - c(M)) are returned as ``QPoly``.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .algebra import QPoly
from .errors import CapExceeded, InvalidSite
from .matroid import (
    LabeledMatroid,
    coloop,
    elements_of,
    loop,
    parallel_extension,
    relabel,
    series_extension,
)

DEFAULT_CAP = 8
LABELING_MAX_N = 8
LABELING_MAX_ORDER = 6


def _check_cap(n, cap):
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise CapExceeded(f"enumeration is capped at n = {cap}")


def _insert_label(mask, x):
    # shift labels >= x up by one, freeing label x
    low = mask & ((1 << x) - 1)
    return low | ((mask >> x) << (x + 1))


def _extensions(M, new):
    for at in elements_of(M.ground):
        for ext in (parallel_extension, series_extension):
            try:
                yield ext(M, at, new)
            except InvalidSite:
                continue


@lru_cache(maxsize=None)
def _connected_sp(n):
    if n == 0:
        return ()
    if n == 1:
        return tuple(sorted([loop(1), coloop(1)]))
    seen = {}
    for M in _connected_sp(n - 1):
        for x in range(1, n + 1):
            shifted = LabeledMatroid(
                _insert_label(M.ground, x), [_insert_label(b, x) for b in M.bases]
            )
            for N in _extensions(shifted, x):
                if N.is_connected():
                    seen.setdefault(N.key, N)
    return tuple(sorted(seen.values()))


def connected_sp(n, cap=DEFAULT_CAP):
    """All connected series-parallel matroids on exactly {1..n}."""
    _check_cap(n, cap)
    if n < 1:
        raise ValueError("connected_sp needs n >= 1")
    return list(_connected_sp(n))


def set_partitions(elements):
    """Set partitions of ``elements`` as lists of blocks, in restricted-growth order."""
    elements = list(elements)
    n = len(elements)
    if n == 0:
        yield []
        return
    rgs = [0] * n

    def rec(i, m):
        if i == n:
            blocks = [[] for _ in range(m)]
            for e, b in zip(elements, rgs):
                blocks[b].append(e)
            yield blocks
            return
        for b in range(m + 1):
            rgs[i] = b
            yield from rec(i + 1, max(m, b + 1))

    rgs[0] = 0
    yield from rec(1, 1)


@lru_cache(maxsize=None)
def _pieces_on(block, simple):
    """Connected SP matroids placed on the labels ``block`` (a sorted tuple)."""
    pieces = _connected_sp(len(block))
    if simple:
        pieces = [P for P in pieces if P.is_simple()]
    mp = dict(zip(range(1, len(block) + 1), block))
    return tuple(relabel(P, mp) for P in pieces)


def iter_qsp(n, simple=False, cap=DEFAULT_CAP):
    """Yield every quasi series-parallel matroid on {1..n} (each exactly once).

    With ``simple=True`` only connected pieces that are simple are used;
    a direct sum is simple exactly when each summand is.
    """
    _check_cap(n, cap)
    if n == 0:
        yield LabeledMatroid(0, [0])
        return
    for blocks in set_partitions(range(1, n + 1)):
        choices = [_pieces_on(tuple(b), simple) for b in blocks]
        for combo in product(*choices):
            ground = 0
            bases = [0]
            for P in combo:
                ground |= P.ground
                bases = [a | b for a in bases for b in P.bases]
            yield LabeledMatroid(ground, bases)


@lru_cache(maxsize=None)
def _qsp_all(n):
    return tuple(sorted(iter_qsp(n, cap=n)))


def qsp_all(n, cap=DEFAULT_CAP):
    _check_cap(n, cap)
    return list(_qsp_all(n))


def qsp_simple(n, cap=DEFAULT_CAP):
    """Simple members of :func:`qsp_all`."""
    _check_cap(n, cap)
    return [M for M in _qsp_all(n) if M.is_simple()]


@dataclass
class WeightedCountTable:
    """Per-rank sums of q^(n - c(M)) over all and over simple QSP matroids on [n]."""

    n: int
    count_all: dict = field(default_factory=dict)
    count_simple: dict = field(default_factory=dict)

    def rows(self):
        return [
            {
                "rank": r,
                "count_all_qpoly": list(self.count_all.get(r, QPoly()).coeffs),
                "count_simple_qpoly": list(self.count_simple.get(r, QPoly()).coeffs),
            }
            for r in range(self.n + 1)
        ]

    def all_at(self, r):
        return self.count_all.get(r, QPoly())

    def simple_at(self, r):
        return self.count_simple.get(r, QPoly())


def _accumulate(matroids, n):
    raw = {}
    for M in matroids:
        k = n - M.num_components()
        row = raw.setdefault(M.rank, {})
        row[k] = row.get(k, 0) + 1
    return {r: QPoly([row.get(k, 0) for k in range(n + 1)]) for r, row in raw.items()}


def weighted_counts(n, cap=DEFAULT_CAP):
    """Sum of q^(n - c(M)) per rank over QSP matroids on [n] (all / simple)."""
    _check_cap(n, cap)
    all_ = _accumulate(iter_qsp(n, cap=cap), n)
    simple = _accumulate(iter_qsp(n, simple=True, cap=cap), n)
    return WeightedCountTable(n, all_, simple)


@dataclass(frozen=True)
class GLabeling:
    """A G-labeling in canonical form.

    ``labels[i]`` is the group element on the i-th smallest ground element;
    the minimum of every connected component carries the identity.
    """

    matroid: LabeledMatroid
    labels: tuple

    def as_dict(self):
        return dict(zip(self.matroid.elements, self.labels))


def canonical_labeling(M, labels, G, components=None):
    """Canonical representative of the class of ``labels`` (aligned with ``M.elements``)."""
    els = M.elements
    pos = {e: i for i, e in enumerate(els)}
    out = list(labels)
    for comp in components or M.components():
        ce = elements_of(comp)
        shift = G.inv(labels[pos[ce[0]]])
        for e in ce:
            out[pos[e]] = G.mul(shift, labels[pos[e]])
    return GLabeling(M, tuple(out))


def g_labelings(M, G):
    """One canonical labeling per equivalence class; there are |G|^(n - c(M))."""
    if M.n > LABELING_MAX_N or G.order > LABELING_MAX_ORDER:
        raise CapExceeded(
            f"labelings are materialized only for n <= {LABELING_MAX_N}, |G| <= {LABELING_MAX_ORDER}"
        )
    els = M.elements
    pos = {e: i for i, e in enumerate(els)}
    mins = {elements_of(c)[0] for c in M.components()}
    free = [e for e in els if e not in mins]
    out = []
    for vals in product(range(G.order), repeat=len(free)):
        labels = [G.identity] * len(els)
        for e, v in zip(free, vals):
            labels[pos[e]] = v
        out.append(GLabeling(M, tuple(labels)))
    return out


def diamond_matroid():
    """Cycle matroid of the diamond graph: a 4-cycle with one diagonal (5 edges, rank 3)."""
    from .matroid import graphic_matroid

    # square bl-br-tr-tl with diagonal tl-br
    return graphic_matroid([(0, 1), (1, 2), (2, 3), (3, 0), (3, 1)])
