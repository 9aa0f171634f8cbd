"""Kazhdan-Lusztig and Z-polynomials of Dowling geometries Q_n(G).

Symbolic in q = |G|, cross-checked against explicit lattices of flats,
enumeration of G-labeled quasi series-parallel matroids, and exact
generating functions.
"""
from .algebra import QPoly, TQPoly, palindromic_complete, scale_t_by_qsquared, tq_eval_at_q
from .dowling import build_lattice, enumerate_flats, flat_count, whitney
from .errors import *  # noqa: F401,F403
from .genfun import BiSeries, series_A, series_AG, series_C, series_S, series_SG
from .group import make_cyclic, make_symmetric, parse_group
from .klengine import PZResult, dowling_pz, lattice_pz, pz_from_lattice, verify_theorem1
from .matroid import LabeledMatroid
from .qsp import connected_sp, g_labelings, qsp_all, qsp_simple, weighted_counts
from .rootcheck import all_minors_positive_in_u, bezout_matrix, interlaces, sturm_real_rooted

__version__ = "0.1.0"
