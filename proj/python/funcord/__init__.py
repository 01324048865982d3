"""Order calculus of representable positive functionals on finite-dimensional *-algebras."""

from ._core import (
    FuncordError,
    Functional,
    StarAlgebra,
    __version__,
    algebra,
    approx_equal,
    check_representable,
    direct_sum,
    domination_constant,
    extreme_equivalences,
    extreme_meet,
    function_algebra,
    gns_triple,
    gram_matrix,
    hilbert_bound,
    infimum,
    involute,
    is_absolutely_continuous,
    is_extreme_in_interval,
    is_positive,
    is_representable,
    is_singular,
    lebesgue_decompose,
    leq,
    matrix_algebra,
    multiply,
    oracle_check,
    parallel_sum,
    regular_part,
    regular_part_commutant,
    variational_value,
    zero_product_algebra,
)


def error_kind(err: FuncordError) -> str:
    """The library error kind carried by a FuncordError, e.g. "NotRepresentable"."""
    return err.args[1] if len(err.args) > 1 else ""
