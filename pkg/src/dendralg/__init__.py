"""Exact computer algebra for dendriform dialgebras.

The package splits an associative product into two half-products, derives
the pre-Lie and Lie structure, and mechanically verifies the identities that
follow: power-sum expansions over compositions, the Dynkin/Magnus circle of
results, symmetrized Bohnenblust-Spitzer identities with their Lyndon-word
combinatorics, and the specializations to Rota-Baxter operator algebras.
All coefficients are rational and every check is exact equality.
"""

from .dendriform import (
    DendriformStructure, OppositeStructure, assoc, ell, lie_bracket, opposite,
    prelie_left, prelie_right, r, w_left, w_right,
)
from .errors import (
    AxiomCheckFailure, DendralgError, EmptyArgumentList, EmptyWord,
    InvalidPermutation, NormalizationError, RBWeightCheckFailure, SortMismatch,
    UnitMisuse,
)
from .hopf import (
    comp_antipode, comp_coproduct, comp_dynkin, compositions, comp_denominator,
    convolution_expansion, convolve, dynkin_w, dynkin_word, gamma,
    ordered_partition_expansion, w_antipode, w_left_from_compositions,
    w_right_from_compositions,
)
from .lyndon import (
    bohnenblust_spitzer_check, census_formula, cfl_factorize, is_lyndon,
    lyn_set, lyndon_census, pbw_expansion, profile, spitzer_sums, t_sigma,
    u_sigma,
)
from .magnus import (
    bernoulli_numbers, dynkin_ode_check, magnus_omega, power_sum_series,
    star_exp, star_log,
)
from .ncalg import (
    Elem, Perm, Series, Word, multilinear_part, parse_word_elem, series_inverse,
    series_mul,
)
from .structures import (
    STANDARD_SELECTORS, FreeStructure, MaxStructure, MRStructure, RBStructure,
    ShuffleStructure, from_selector, free_structure, max_structure,
    mr_structure, random_element, rb_polymat_structure, rb_seqmat_structure,
    shuffle_structure,
)
from .suites import SUITES, Options, SuiteReport, run_suites

__version__ = "0.1.0"
