"""Exact abelian quantum invariants of closed oriented 3-manifolds.

Chern-Simons and BF partition functions on torsion linking forms, abelian
Reshetikhin-Turaev invariants of surgery links, and the abelian Turaev-Viro
state sum of cell decompositions, with verifiers that check each against the
gcd-product closed forms.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .exact_linalg import IntegerMatrix, RationalMatrix, SnfResult, rational_inverse, signature, \
    smith_normal_form, solution_count_mod_n
from .cells import CellComplex
from .topology import HomologyProfile, LinkingForm, ParityClassification, classify_parity, \
    cup_obstruction_vanishes, h1_order_mod_n, homology_from_complex, linking_eval
from .manifolds import Cells, ConnectedSum, HomologyData, Named, Surgery, SurgeryLink, blow_up, \
    cell_complex, connected_sum, from_surgery, homology_data, lens_chain, lens_space, \
    parse_manifold, rp3_heegaard, s1_x_s2, serialize_manifold, sphere3, surgery_link
from .category import CategoryZn, PhaseExponent, braiding, gauss_delta, gauss_delta_half, \
    is_modular, s_matrix, twist, verify_ribbon_axioms
from .partition import PartitionResult, bf_partition_bruteforce, bf_partition_closed, \
    cs_abs_squared_closed, cs_partition, verify_lemma2
from .rt import RtValue, f_value, kirby_blowup_check, rt_even, rt_odd, rt_raw, \
    tau_abs_squared_closed, tau_odd_abs_squared_closed, verify_lemma3_part1
from .tv import Gauging, Labeling, face_sum, gauging_differential, tv_algebraic, tv_bruteforce, \
    verify_lemma3_tv
