import pytest

from dowling_kl.algebra import QPoly, qpoly_eval
from dowling_kl.errors import CapExceeded
from dowling_kl.group import make_cyclic, make_symmetric
from dowling_kl.klengine import leading_simple_count
from dowling_kl.matroid import (
    all_matroids,
    coloop,
    direct_sum,
    dual,
    elements_of,
    has_excluded_minor,
    loop,
    uniform,
)
from dowling_kl.qsp import (
    canonical_labeling,
    connected_sp,
    diamond_matroid,
    g_labelings,
    iter_qsp,
    qsp_all,
    qsp_simple,
    set_partitions,
    weighted_counts,
)

# connected series-parallel matroids on [n], n = 1..7; frozen from the
# excluded-minor oracle for n <= 5 and from the generating function C beyond
CONNECTED_SP = [2, 1, 2, 8, 52, 472, 5504]


def test_connected_sp_examples():
    assert connected_sp(1) == sorted([loop(1), coloop(1)])
    assert connected_sp(3) == sorted([uniform(1, 3), uniform(2, 3)])
    with pytest.raises(CapExceeded):
        connected_sp(9)


@pytest.mark.parametrize("n", range(1, 8))
def test_connected_sp_counts(n):
    ms = connected_sp(n)
    assert len(ms) == CONNECTED_SP[n - 1]
    assert all(M.is_connected() and M.n == n for M in ms)


def test_set_partitions():
    parts = list(set_partitions([1, 2, 3]))
    assert parts == [[[1, 2, 3]], [[1, 2], [3]], [[1, 3], [2]], [[1], [2, 3]], [[1], [2], [3]]]
    assert [len(list(set_partitions(range(n)))) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_qsp_examples():
    two = qsp_all(2)
    assert len(two) == 5
    assert sorted(M.rank for M in two) == [0, 1, 1, 1, 2]
    assert [M for M in qsp_simple(3) if M.rank == 2] == [uniform(2, 3)]
    assert len(list(iter_qsp(4))) == len(set(iter_qsp(4)))


@pytest.mark.parametrize("n", range(0, 6))
def test_oracle_equivalence(n):
    brute = {M for M in all_matroids(n) if not has_excluded_minor(M)}
    assert set(qsp_all(n)) == brute


@pytest.mark.parametrize("n", range(1, 7))
def test_duals_are_qsp(n):
    everything = set(qsp_all(n))
    for M in everything:
        assert dual(M) in everything


@pytest.mark.parametrize("n", range(1, 8))
def test_simple_rank_bound(n):
    for M in qsp_simple(n):
        assert 2 * M.rank > n


def test_weighted_count_examples():
    q = QPoly.q()
    c3 = weighted_counts(3)
    assert c3.simple_at(2) == q**2 and c3.simple_at(3) == QPoly(1)
    assert weighted_counts(4).simple_at(3) == QPoly([0, 0, 4, 1])
    for m in (2, 3, 4):
        c = weighted_counts(2 * m - 1)
        assert c.simple_at(m) == QPoly.monomial(2 * m - 2, leading_simple_count(m))


def test_leading_closed_form_values():
    assert [leading_simple_count(m) for m in (2, 3, 4)] == [1, 15, 735]


@pytest.mark.parametrize("n", range(0, 8))
def test_weighted_counts_duality(n):
    c = weighted_counts(n)
    for r in range(n + 1):
        assert c.all_at(r) == c.all_at(n - r)
        assert all(x >= 0 for x in c.all_at(r).coeffs)
    assert qpoly_eval(sum((c.all_at(r) for r in range(n + 1)), QPoly()), 1) == len(qsp_all(n))


def test_rows_format():
    rows = weighted_counts(2).rows()
    assert rows[1] == {"rank": 1, "count_all_qpoly": [2, 1], "count_simple_qpoly": []}


def test_diamond_labelings():
    fig = diamond_matroid()
    assert fig.n == 5 and fig.rank == 3
    assert len(g_labelings(fig, make_cyclic(2))) == 16


def test_labeling_examples():
    assert len(g_labelings(diamond_matroid(), make_cyclic(1))) == 1
    M = direct_sum(coloop(1), coloop(2))
    assert len(g_labelings(M, make_cyclic(3))) == 1
    with pytest.raises(CapExceeded):
        g_labelings(M, make_cyclic(7))


@pytest.mark.parametrize("G", [make_cyclic(2), make_cyclic(3), make_symmetric(3)], ids=lambda G: G.name)
def test_labeling_counts(G):
    for n in range(1, 5):
        for M in qsp_all(n):
            assert len(g_labelings(M, G)) == G.order ** (n - M.num_components())


def test_canonical_labeling_is_a_class_invariant():
    # brute force on a two-component matroid: all |G|^n labelings collapse to |G|^(n - c)
    from itertools import product

    G = make_symmetric(3)
    M = direct_sum(uniform(1, 2), uniform(1, 2, ground=[3, 4]))
    reps = {canonical_labeling(M, labels, G) for labels in product(range(G.order), repeat=4)}
    assert len(reps) == G.order ** 2
    assert reps == set(g_labelings(M, G))
    # shifting one component by a group element does not change the representative
    labels = (1, 2, 3, 4)
    shifted = tuple(G.mul(5, x) for x in labels[:2]) + labels[2:]
    assert canonical_labeling(M, labels, G) == canonical_labeling(M, shifted, G)


def test_labels_keep_identity_on_component_minima():
    G = make_cyclic(3)
    for M in qsp_all(4):
        mins = {elements_of(c)[0] for c in M.components()}
        for L in g_labelings(M, G):
            assert all(L.as_dict()[e] == G.identity for e in mins)
