"""Finite groups given by Cayley tables."""
from itertools import permutations

from .errors import InvalidGroup, TooLarge

ASSOC_CHECK_MAX = 24


class FiniteGroup:
    """A finite group on elements ``0..order-1``.

    ``table[a][b]`` is the index of the product ``a*b``.  The table is
    validated on construction (Latin square, identity, inverses, and
    associativity up to order 24).
    """

    def __init__(self, table, name=None):
        table = tuple(tuple(int(x) for x in row) for row in table)
        order = len(table)
        if order == 0 or any(len(row) != order for row in table):
            raise InvalidGroup("table must be a nonempty square")
        full = set(range(order))
        for row in table:
            if set(row) != full:
                raise InvalidGroup("table is not a Latin square")
        for j in range(order):
            if {table[i][j] for i in range(order)} != full:
                raise InvalidGroup("table is not a Latin square")
        ids = [e for e in range(order) if table[e] == tuple(range(order))]
        if len(ids) != 1 or any(table[a][ids[0]] != a for a in range(order)):
            raise InvalidGroup("no two-sided identity")
        e = ids[0]
        if order <= ASSOC_CHECK_MAX:
            for a in range(order):
                ra = table[a]
                for b in range(order):
                    ab = ra[b]
                    for c in range(order):
                        if table[ab][c] != ra[table[b][c]]:
                            raise InvalidGroup(f"not associative at ({a}, {b}, {c})")
        self.order = order
        self.table = table
        self.identity = e
        self.inverses = tuple(row.index(e) for row in table)
        self.name = name or f"group of order {order}"

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverses[a]

    @property
    def elements(self):
        return range(self.order)

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in self.elements)

    def is_automorphism(self, phi):
        t = self.table
        if sorted(phi) != list(self.elements):
            return False
        return all(phi[t[a][b]] == t[phi[a]][phi[b]] for a in self.elements for b in self.elements)

    def automorphisms(self):
        """All automorphisms as tuples ``phi[a]``; brute force, order <= 8."""
        if self.order > 8:
            raise TooLarge("automorphism search is capped at order 8")
        e = self.identity
        rest = [a for a in self.elements if a != e]
        out = []
        for img in permutations(rest):
            phi = [0] * self.order
            phi[e] = e
            for a, b in zip(rest, img):
                phi[a] = b
            if self.is_automorphism(phi):
                out.append(tuple(phi))
        return out

    def inner(self, g):
        """The inner automorphism h -> g h g^-1."""
        gi = self.inverses[g]
        return tuple(self.table[self.table[g][h]][gi] for h in self.elements)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name!r})"


def gmul(G, a, b):
    return G.table[a][b]


def ginv(G, a):
    return G.inverses[a]


def make_cyclic(m):
    if m < 1:
        raise InvalidGroup("cyclic group needs m >= 1")
    return FiniteGroup([[(a + b) % m for b in range(m)] for a in range(m)], name=f"cyclic:{m}")


def make_symmetric(k):
    """Symmetric group on k letters; element i is the i-th permutation in lex order."""
    if k < 1:
        raise InvalidGroup("symmetric group needs k >= 1")
    if k > 5:
        raise TooLarge("make_symmetric is capped at k = 5")
    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (a*b)(x) = a(b(x))
    table = [[index[tuple(a[b[x]] for x in range(k))] for b in perms] for a in perms]
    G = FiniteGroup(table, name=f"sym:{k}")
    G.perms = perms
    return G


def parse_group(spec):
    """Parse ``"cyclic:m"`` or ``"sym:k"``."""
    kind, _, arg = spec.partition(":")
    try:
        value = int(arg)
    except ValueError:
        raise InvalidGroup(f"bad group spec {spec!r}") from None
    if kind == "cyclic":
        return make_cyclic(value)
    if kind == "sym":
        return make_symmetric(value)
    raise InvalidGroup(f"bad group spec {spec!r}; expected cyclic:m or sym:k")
