"""Labeled matroids stored by their bases.

Elements are positive integers; a subset is an int bit mask with bit ``e``
set for element ``e``.  Two matroids are equal exactly when they have the
same ground set and the same basis family, so there is no isomorphism
quotient anywhere in this module except :func:`is_isomorphic`.
"""
import json
from itertools import combinations, permutations

from .errors import InvalidSite, NotAMatroid, TooLarge

EXCHANGE_CHECK_MAX = 12
ALL_MATROIDS_MAX = 5


def bit(e):
    return 1 << e


def to_mask(elements):
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask):
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def popcount(mask):
    return bin(mask).count("1")


def _exchange_ok(bases):
    bset = set(bases)
    for b1 in bases:
        for b2 in bases:
            diff = b1 & ~b2
            if not diff:
                continue
            cand = b2 & ~b1
            for x in elements_of(diff):
                base = b1 & ~bit(x)
                if not any((base | bit(y)) in bset for y in elements_of(cand)):
                    return False
    return True


class LabeledMatroid:
    """A matroid on a finite set of positive integer labels.

    ``ground`` is the ground-set mask and ``bases`` a sorted tuple of basis
    masks.  Use :func:`from_bases` for validated construction.
    """

    __slots__ = ("ground", "bases", "rank", "_basis_set", "_hash")

    def __init__(self, ground, bases):
        self.ground = ground
        self.bases = tuple(sorted(set(bases)))
        self.rank = popcount(self.bases[0])
        self._basis_set = None
        self._hash = None

    @property
    def n(self):
        return popcount(self.ground)

    @property
    def elements(self):
        return elements_of(self.ground)

    @property
    def basis_set(self):
        if self._basis_set is None:
            self._basis_set = frozenset(self.bases)
        return self._basis_set

    @property
    def key(self):
        return (self.ground, self.bases)

    def __eq__(self, other):
        if not isinstance(other, LabeledMatroid):
            return NotImplemented
        return self.ground == other.ground and self.bases == other.bases

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ground, self.bases))
        return self._hash

    def __lt__(self, other):
        return (self.ground, self.rank, self.bases) < (other.ground, other.rank, other.bases)

    def __repr__(self):
        bs = ["".join(map(str, elements_of(b))) or "{}" for b in self.bases]
        return f"LabeledMatroid(E={self.elements}, r={self.rank}, bases=[{' '.join(bs)}])"

    def is_basis(self, mask):
        return mask in self.basis_set

    def is_independent(self, mask):
        return any(mask & b == mask for b in self.bases)

    def rank_of(self, mask):
        return max(popcount(mask & b) for b in self.bases)

    def loops(self):
        union = 0
        for b in self.bases:
            union |= b
        return self.ground & ~union

    def coloops(self):
        inter = self.ground
        for b in self.bases:
            inter &= b
        return inter

    def circuits(self):
        """Minimal dependent sets, brute force over subsets by size."""
        out = []
        for size in range(1, self.rank + 2):
            for combo in combinations(self.elements, size):
                m = to_mask(combo)
                if any(c & m == c for c in out):
                    continue
                if not self.is_independent(m):
                    out.append(m)
        return out

    def parallel_classes(self):
        """Partition of the non-loops into parallel classes (masks, sorted by minimum)."""
        loops = self.loops()
        classes = []
        seen = 0
        for e in self.elements:
            if loops & bit(e) or seen & bit(e):
                continue
            cls = bit(e)
            for f in self.elements:
                if f > e and not loops & bit(f) and self.rank_of(bit(e) | bit(f)) == 1:
                    cls |= bit(f)
            seen |= cls
            classes.append(cls)
        return classes

    def is_simple(self):
        if self.loops():
            return False
        return all(popcount(c) == 1 for c in self.parallel_classes())

    def components(self):
        """Connected components as masks, sorted by minimum element.

        Uses the fundamental circuits with respect to one basis: two
        elements lie in the same component exactly when they are linked
        through these circuits.
        """
        B = self.bases[0]
        parent = {e: e for e in self.elements}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        bs = self.basis_set
        for e in elements_of(self.ground & ~B):
            for b in elements_of(B):
                if (B & ~bit(b)) | bit(e) in bs:
                    ra, rb = find(e), find(b)
                    if ra != rb:
                        parent[ra] = rb
        groups = {}
        for e in self.elements:
            groups[find(e)] = groups.get(find(e), 0) | bit(e)
        return sorted(groups.values(), key=lambda m: (m & -m))

    def num_components(self):
        return len(self.components())

    def is_connected(self):
        return self.num_components() == 1

    def to_dict(self):
        d = {"n": self.n, "bases": sorted(sorted(elements_of(b)) for b in self.bases)}
        if self.ground != full_ground(self.n):
            d["ground"] = self.elements
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))


def full_ground(n):
    """Mask of {1..n}."""
    return ((1 << n) - 1) << 1


def from_bases(n, bases, ground=None, check=True):
    """Validated constructor.

    ``n`` is the ground-set size ({1..n}) unless an explicit ``ground``
    iterable of labels is given.  Bases may be masks or iterables of labels.
    """
    gmask = to_mask(ground) if ground is not None else full_ground(n)
    masks = []
    for b in bases:
        m = b if isinstance(b, int) else to_mask(b)
        if m & ~gmask:
            raise NotAMatroid(f"basis {elements_of(m)} leaves the ground set")
        masks.append(m)
    if not masks:
        raise NotAMatroid("a matroid needs at least one basis")
    sizes = {popcount(m) for m in masks}
    if len(sizes) != 1:
        raise NotAMatroid("bases are not equicardinal")
    masks = sorted(set(masks))
    if check and popcount(gmask) <= EXCHANGE_CHECK_MAX and not _exchange_ok(masks):
        raise NotAMatroid("basis exchange axiom fails")
    return LabeledMatroid(gmask, masks)


def from_dict(d):
    ground = d.get("ground")
    return from_bases(d["n"], d["bases"], ground=ground)


def from_json(s):
    return from_dict(json.loads(s))


def uniform(r, n, ground=None):
    labels = list(ground) if ground is not None else list(range(1, n + 1))
    return LabeledMatroid(to_mask(labels), [to_mask(c) for c in combinations(labels, r)])


def loop(e=1):
    return LabeledMatroid(bit(e), [0])


def coloop(e=1):
    return LabeledMatroid(bit(e), [bit(e)])


def graphic_matroid(edges):
    """Cycle matroid of a graph; edge ``i`` (0-based in ``edges``) becomes element i+1."""
    vertices = sorted({v for e in edges for v in e})
    m = len(edges)

    def forest_rank(idx):
        parent = {v: v for v in vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i in idx:
            a, b = find(edges[i][0]), find(edges[i][1])
            if a != b:
                parent[a] = b
                r += 1
        return r

    r = forest_rank(range(m))
    bases = [to_mask(i + 1 for i in c) for c in combinations(range(m), r) if forest_rank(c) == r]
    return LabeledMatroid(full_ground(m), bases)


def k4():
    """Cycle matroid of K_4 on {1..6}."""
    return graphic_matroid([(a, b) for a, b in combinations(range(4), 2)])


def dual(M):
    g = M.ground
    return LabeledMatroid(g, [g & ~b for b in M.bases])


def relabel(M, mapping):
    """Apply an injective relabeling ``mapping`` (dict) to the ground set."""
    def image(mask):
        out = 0
        for e in elements_of(mask):
            out |= bit(mapping[e])
        return out

    return LabeledMatroid(image(M.ground), [image(b) for b in M.bases])


def direct_sum(M1, M2):
    """Direct sum of matroids on disjoint ground sets."""
    if M1.ground & M2.ground:
        raise ValueError("direct_sum needs disjoint ground sets")
    return LabeledMatroid(M1.ground | M2.ground, [a | b for a in M1.bases for b in M2.bases])


def direct_sum_into(M1, S1, M2, S2):
    """Place ``M1`` on labels ``S1`` and ``M2`` on ``S2`` (order-preserving) and sum."""
    A = relabel(M1, dict(zip(M1.elements, sorted(S1))))
    B = relabel(M2, dict(zip(M2.elements, sorted(S2))))
    return direct_sum(A, B)


def delete(M, e):
    b = bit(e)
    if not M.ground & b:
        raise ValueError(f"{e} is not in the ground set")
    kept = [B for B in M.bases if not B & b]
    if not kept:  # e is a coloop
        kept = [B & ~b for B in M.bases]
    return LabeledMatroid(M.ground & ~b, kept)


def contract(M, e):
    b = bit(e)
    if not M.ground & b:
        raise ValueError(f"{e} is not in the ground set")
    kept = [B & ~b for B in M.bases if B & b]
    if not kept:  # e is a loop
        kept = list(M.bases)
    return LabeledMatroid(M.ground & ~b, kept)


def restrict(M, mask):
    """M restricted to ``mask`` (delete the complement)."""
    r = M.rank_of(mask)
    return LabeledMatroid(mask, [B & mask for B in M.bases if popcount(B & mask) == r])


def contract_set(M, mask):
    r = M.rank_of(mask)
    return LabeledMatroid(M.ground & ~mask, [B & ~mask for B in M.bases if popcount(B & mask) == r])


def simplify(M):
    """Delete loops and keep the minimum element of each parallel class.

    Returns ``(simple matroid, {representative: class mask})``.
    """
    classes = M.parallel_classes()
    reps = {elements_of(c)[0]: c for c in classes}
    return restrict(M, to_mask(reps)), reps


def parallel_extension(M, at, new):
    a, n = bit(at), bit(new)
    if not M.ground & a or M.ground & n:
        raise InvalidSite(f"need {at} in the ground set and {new} outside it")
    if M.loops() & a:
        raise InvalidSite(f"{at} is a loop")
    extra = [(B & ~a) | n for B in M.bases if B & a]
    return LabeledMatroid(M.ground | n, list(M.bases) + extra)


def series_extension(M, at, new):
    a, n = bit(at), bit(new)
    if not M.ground & a or M.ground & n:
        raise InvalidSite(f"need {at} in the ground set and {new} outside it")
    if M.coloops() & a:
        raise InvalidSite(f"{at} is a coloop")
    bases = [B | n for B in M.bases] + [B | a for B in M.bases if not B & a]
    return LabeledMatroid(M.ground | n, bases)


def is_isomorphic(M1, M2):
    """Naive permutation search; meant for ground sets of at most 6 elements."""
    if M1.n != M2.n or M1.rank != M2.rank or len(M1.bases) != len(M2.bases):
        return False
    if M1.n > 8:
        raise TooLarge("isomorphism search is capped at 8 elements")
    e1, e2 = M1.elements, M2.elements
    target = M2.basis_set
    for perm in permutations(e2):
        mp = dict(zip(e1, perm))
        if all(_image(B, mp) in target for B in M1.bases):
            return True
    return False


def _image(mask, mp):
    out = 0
    for e in elements_of(mask):
        out |= bit(mp[e])
    return out


def _is_u24(M):
    return M.n == 4 and M.rank == 2 and len(M.bases) == 6


_K4 = None


def _is_k4(M):
    global _K4
    if M.n != 6 or M.rank != 3 or len(M.bases) != 16:
        return False
    if _K4 is None:
        _K4 = k4()
    return is_isomorphic(M, _K4)


def has_excluded_minor(M):
    """True iff M has a minor isomorphic to U_{2,4} or M(K_4)."""
    els = M.elements
    n = len(els)
    if n < 4:
        return False
    for csize in range(0, n - 3):
        for C in combinations(els, csize):
            cm = to_mask(C)
            MC = contract_set(M, cm) if cm else M
            rest = [e for e in els if not cm & bit(e)]
            for target in (4, 6):
                dsize = len(rest) - target
                if dsize < 0:
                    continue
                for D in combinations(rest, dsize):
                    dm = to_mask(D)
                    minor = restrict(MC, MC.ground & ~dm) if dm else MC
                    if target == 4 and _is_u24(minor):
                        return True
                    if target == 6 and _is_k4(minor):
                        return True
    return False


def all_matroids(n):
    """Every matroid on {1..n}, by brute force over basis families (n <= 5)."""
    if n > ALL_MATROIDS_MAX:
        raise TooLarge(f"all_matroids is capped at n = {ALL_MATROIDS_MAX}")
    g = full_ground(n)
    out = []
    for r in range(n + 1):
        cands = [to_mask(c) for c in combinations(range(1, n + 1), r)]
        k = len(cands)
        for sel in range(1, 1 << k):
            fam = [cands[i] for i in range(k) if sel >> i & 1]
            if _exchange_ok(fam):
                out.append(LabeledMatroid(g, fam))
    return sorted(out)
