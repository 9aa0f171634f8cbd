"""Dowling lattices: partial G-partitions, flat types, and the symmetry action.

A flat of the Dowling geometry Q_n(G) is an equivalence class of partial
G-partitions of {1..n}.  The canonical representative used throughout
sorts blocks by their minimum and puts the group identity on each block's
minimum (labels on a block are only defined up to one left translation).
"""
import json
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial

from .algebra import QPoly
from .errors import CapExceeded, InvalidGroup
from .qsp import set_partitions

LATTICE_MAX_N = 6
LATTICE_MAX_ORDER = 6
LATTICE_MAX_FLATS = 50_000


@dataclass(frozen=True)
class FlatType:
    """(n0, block sizes): n0 unused elements and the multiset of block sizes."""

    n0: int
    sizes: tuple

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(sorted(self.sizes, reverse=True)))
        if self.n0 < 0 or any(s < 1 for s in self.sizes):
            raise ValueError(f"invalid flat type {self}")

    @property
    def n(self):
        return self.n0 + sum(self.sizes)

    @property
    def k(self):
        return len(self.sizes)


@dataclass(frozen=True)
class PartialGPartition:
    """Canonical partial G-partition of {1..n}.

    ``blocks`` is a tuple of sorted tuples ordered by minimum; ``labels``
    has length n with ``labels[e-1]`` the group element on e, or ``None``
    when e is outside the support.
    """

    n: int
    blocks: tuple
    labels: tuple

    @property
    def support(self):
        return frozenset(e for b in self.blocks for e in b)

    @property
    def rank(self):
        return self.n - len(self.blocks)

    @property
    def type(self):
        return FlatType(self.n - len(self.support), tuple(len(b) for b in self.blocks))

    def label(self, e):
        return self.labels[e - 1]

    def to_dict(self):
        return {
            "S": sorted(self.support),
            "blocks": [list(b) for b in self.blocks],
            "labels": {str(e): self.labels[e - 1] for e in sorted(self.support)},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))


def make_flat(n, G, blocks, labels):
    """Canonicalize a partial G-partition.

    ``labels`` maps each element of the support to a group element.
    """
    blocks = sorted((tuple(sorted(b)) for b in blocks if b), key=lambda b: b[0])
    out = [None] * n
    seen = set()
    for b in blocks:
        if seen.intersection(b):
            raise ValueError("blocks overlap")
        seen.update(b)
        shift = G.inv(labels[b[0]])
        for e in b:
            out[e - 1] = G.mul(shift, labels[e])
    return PartialGPartition(n, tuple(blocks), tuple(out))


def flat_from_dict(d, n, G):
    labels = {int(k): v for k, v in d["labels"].items()}
    return make_flat(n, G, d["blocks"], labels)


def _integer_partitions(total, k, max_part=None):
    """Partitions of ``total`` into exactly k parts, non-increasing."""
    if max_part is None:
        max_part = total
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total - (k - 1), max_part), 0, -1):
        for rest in _integer_partitions(total - first, k - 1, first):
            yield (first,) + rest


def flat_types(n, k=None):
    """All flat types for Q_n, ordered by number of blocks then n0."""
    ks = range(n + 1) if k is None else [k]
    out = []
    for kk in ks:
        for n0 in range(n - kk, -1, -1):
            for lam in _integer_partitions(n - n0, kk):
                out.append(FlatType(n0, lam))
    return out


def flat_count(ft, n=None):
    """Number of flats of a given type, as a polynomial in q = |G|.

    n!/(n0! prod n_i! prod m_s!) set-theoretic choices, times q^(n_i - 1)
    inequivalent labelings of each block of size n_i.
    """
    if n is not None and ft.n != n:
        raise ValueError(f"type {ft} does not live on {n} elements")
    denom = factorial(ft.n0)
    for s in ft.sizes:
        denom *= factorial(s)
    for m in Counter(ft.sizes).values():
        denom *= factorial(m)
    return QPoly.monomial(sum(s - 1 for s in ft.sizes), factorial(ft.n) // denom)


@lru_cache(maxsize=None)
def stirling2(m, k):
    if m == k:
        return 1
    if k == 0 or k > m:
        return 0
    return k * stirling2(m - 1, k) + stirling2(m - 1, k - 1)


@lru_cache(maxsize=None)
def whitney(n, k_blocks):
    """Number of flats with k blocks (rank n - k) of Q_n(G), symbolic in q.

    Choose the support (m elements), partition it into k blocks, and label
    each block up to translation: sum_m C(n, m) S(m, k) q^(m - k).
    """
    coeffs = [0] * (n - k_blocks + 1) if k_blocks <= n else []
    for m in range(k_blocks, n + 1):
        coeffs[m - k_blocks] += comb(n, m) * stirling2(m, k_blocks)
    return QPoly(coeffs)


def whitney_by_types(n, k_blocks):
    """Same count as :func:`whitney`, summed over flat types."""
    total = QPoly()
    for ft in flat_types(n, k_blocks):
        total = total + flat_count(ft)
    return total


def atom_count(n):
    """n + q C(n, 2)."""
    return QPoly([n, comb(n, 2)])


def enumerate_flats(n, G):
    """Every canonical partial G-partition of {1..n}."""
    out = []
    for m in range(n, -1, -1):
        for S in combinations(range(1, n + 1), m):
            for blocks in set_partitions(S):
                free = [e for b in blocks for e in b[1:]]
                for vals in product(range(G.order), repeat=len(free)):
                    lab = [None] * n
                    for b in blocks:
                        lab[b[0] - 1] = G.identity
                    for e, v in zip(free, vals):
                        lab[e - 1] = v
                    out.append(
                        PartialGPartition(n, tuple(tuple(b) for b in blocks), tuple(lab))
                    )
    return out


def leq(a, b, G):
    """True iff flat ``a`` lies below ``b``, i.e. ``b`` is obtained from ``a``
    by deleting and merging blocks (with a left translation per merged block).
    """
    if not b.support <= a.support:
        return False
    owner = {}
    for j, B in enumerate(b.blocks):
        for e in B:
            owner[e] = j
    for A in a.blocks:
        first = A[0]
        if first not in owner:
            if any(e in owner for e in A):
                return False
            continue
        j = owner[first]
        if any(owner.get(e) != j for e in A):
            return False
        # b|A must equal g * a|A for a single g
        g = G.mul(b.label(first), G.inv(a.label(first)))
        if any(b.label(e) != G.mul(g, a.label(e)) for e in A):
            return False
    return True


def coarsenings(F, G, small=None):
    """All flats weakly above F.

    They correspond to partial G-partitions of the block indices of F:
    delete some blocks, merge others, and left-translate each block.
    ``small`` may pass precomputed ``enumerate_flats(k, G)``.
    """
    k = len(F.blocks)
    if small is None:
        small = enumerate_flats(k, G)
    out = []
    for H in small:
        blocks = []
        labels = {}
        for hb in H.blocks:
            merged = []
            for j in hb:
                g = H.label(j)
                for e in F.blocks[j - 1]:
                    labels[e] = G.mul(g, F.label(e))
                    merged.append(e)
            blocks.append(merged)
        out.append(make_flat(F.n, G, blocks, labels))
    return out


def single_moves(F, G):
    """Flats reached from F by deleting one block or merging two blocks."""
    out = []
    blocks = F.blocks
    lab = {e: F.label(e) for b in blocks for e in b}
    for i in range(len(blocks)):
        rest = [b for j, b in enumerate(blocks) if j != i]
        out.append(make_flat(F.n, G, rest, lab))
    for i, j in combinations(range(len(blocks)), 2):
        rest = [b for t, b in enumerate(blocks) if t not in (i, j)]
        for g in G.elements:
            new = dict(lab)
            for e in blocks[j]:
                new[e] = G.mul(g, lab[e])
            out.append(make_flat(F.n, G, rest + [blocks[i] + blocks[j]], new))
    return out


def generative_order(n, G):
    """{flat: set of flats weakly above it}, by closing single merge/delete moves.

    Only meant as an oracle for :func:`leq` on tiny cases.
    """
    flats = enumerate_flats(n, G)
    up = {}
    for F in sorted(flats, key=lambda f: -f.rank):
        reach = {F}
        for H in single_moves(F, G):
            reach |= up[H]
        up[F] = reach
    return up


class DowlingLattice:
    """Explicit lattice of flats of Q_n(G) for a concrete group.

    ``flats`` is sorted by rank; ``above[i]`` lists indices of flats strictly
    above flat i.  ``bottom`` and ``top`` are indices.
    """

    def __init__(self, n, G, flats, above):
        self.n = n
        self.group = G
        self.flats = flats
        self.index = {F: i for i, F in enumerate(flats)}
        self.above = above
        self.ranks = [F.rank for F in flats]
        self.bottom = 0
        self.top = len(flats) - 1

    def __len__(self):
        return len(self.flats)

    def leq(self, i, j):
        return i == j or j in self.above[i]

    def by_rank(self):
        out = [[] for _ in range(self.n + 1)]
        for i, r in enumerate(self.ranks):
            out[r].append(i)
        return out

    def rank_census(self):
        return [len(x) for x in self.by_rank()]

    def type_census(self):
        return Counter(F.type for F in self.flats)


def lattice_size(n, q):
    """Total number of flats of Q_n(G), |G| = q."""
    return sum(whitney(n, k)(q) for k in range(n + 1))


def build_lattice(n, G, max_n=LATTICE_MAX_N, max_flats=LATTICE_MAX_FLATS):
    if n > max_n or G.order > LATTICE_MAX_ORDER:
        raise CapExceeded(
            f"explicit lattices are capped at n <= {max_n}, |G| <= {LATTICE_MAX_ORDER}"
        )
    if lattice_size(n, G.order) > max_flats:
        raise CapExceeded(f"Q_{n} over {G.name} exceeds {max_flats} flats")
    flats = enumerate_flats(n, G)
    flats.sort(key=lambda F: (F.rank, F.blocks, tuple(-1 if x is None else x for x in F.labels)))
    index = {F: i for i, F in enumerate(flats)}
    small = {k: enumerate_flats(k, G) for k in range(n + 1)}
    above = []
    for i, F in enumerate(flats):
        ups = {index[H] for H in coarsenings(F, G, small[len(F.blocks)])}
        ups.discard(i)
        above.append(frozenset(ups))
    return DowlingLattice(n, G, flats, above)


@dataclass(frozen=True)
class GammaElement:
    """((g_1..g_n), sigma, phi) in (G wr S_n) x| Aut(G).

    ``perm[i-1] = sigma(i)``; ``aut[a] = phi(a)``.
    """

    translations: tuple
    perm: tuple
    aut: tuple

    def inverse_perm(self):
        inv = [0] * len(self.perm)
        for i, s in enumerate(self.perm, start=1):
            inv[s - 1] = i
        return tuple(inv)


def make_gamma(G, translations, perm, aut):
    n = len(translations)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError("perm must be a permutation of 1..n")
    if not G.is_automorphism(aut):
        raise InvalidGroup("aut is not an automorphism of G")
    return GammaElement(tuple(translations), tuple(perm), tuple(aut))


def gamma_identity(n, G):
    return GammaElement((G.identity,) * n, tuple(range(1, n + 1)), tuple(G.elements))


def gamma_mul(G, a, b):
    """a * b = ((phi(h_i) g_{tau(i)})_i, sigma tau, phi psi)."""
    g, sigma, phi = a.translations, a.perm, a.aut
    h, tau, psi = b.translations, b.perm, b.aut
    n = len(g)
    trans = tuple(G.mul(phi[h[i]], g[tau[i] - 1]) for i in range(n))
    perm = tuple(sigma[tau[i] - 1] for i in range(n))
    aut = tuple(phi[psi[x]] for x in G.elements)
    return GammaElement(trans, perm, aut)


def _act_labels(G, gamma, labels):
    # (gamma . f)(i) = phi(f(sigma^-1 i)) g_{sigma^-1 i}; labels is a dict on elements
    g, sigma, phi = gamma.translations, gamma.perm, gamma.aut
    return {sigma[e - 1]: G.mul(phi[v], g[e - 1]) for e, v in labels.items()}


def gamma_apply(G, gamma, x):
    """Act on a flat or on a canonical G-labeling, returning a canonical result."""
    from .matroid import relabel
    from .qsp import GLabeling, canonical_labeling

    sigma = gamma.perm
    if isinstance(x, PartialGPartition):
        labels = {e: x.label(e) for b in x.blocks for e in b}
        new = _act_labels(G, gamma, labels)
        blocks = [[sigma[e - 1] for e in b] for b in x.blocks]
        return make_flat(x.n, G, blocks, new)
    if isinstance(x, GLabeling):
        M = x.matroid
        labels = dict(zip(M.elements, x.labels))
        new = _act_labels(G, gamma, labels)
        M2 = relabel(M, {e: sigma[e - 1] for e in M.elements})
        return canonical_labeling(M2, [new[e] for e in M2.elements], G)
    raise TypeError(f"cannot act on {type(x).__name__}")


def n_element(n, G, g):
    """((g,...,g), id, inn_g), which acts trivially on classes."""
    return GammaElement((g,) * n, tuple(range(1, n + 1)), G.inner(g))


def standard_generators(n, G):
    """Generators of the full group: translations in each slot, adjacent swaps, Aut(G)."""
    e = G.identity
    ident_perm = tuple(range(1, n + 1))
    ident_aut = tuple(G.elements)
    gens = []
    for i in range(n):
        for g in G.elements:
            if g != e:
                t = [e] * n
                t[i] = g
                gens.append(GammaElement(tuple(t), ident_perm, ident_aut))
    for i in range(n - 1):
        p = list(ident_perm)
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(GammaElement((e,) * n, tuple(p), ident_aut))
    for phi in G.automorphisms():
        if phi != ident_aut:
            gens.append(GammaElement((e,) * n, ident_perm, phi))
    return gens


def orbits(items, generators, act):
    """Orbit partition of ``items`` under the group generated by ``generators``.

    ``act(gamma, x)`` must return an element of ``items``.
    """
    items = list(items)
    seen = set()
    out = []
    for x in items:
        if x in seen:
            continue
        orbit = [x]
        seen.add(x)
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for gamma in generators:
                z = act(gamma, y)
                if z not in seen:
                    seen.add(z)
                    orbit.append(z)
                    queue.append(z)
        out.append(orbit)
    return out
