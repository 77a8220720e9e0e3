"""Prouhet-Tarry-Escott partitions, Latin square expansions and fair pouring."""

import json

from . import _pte
from ._pte import (
    Error,
    ParseError,
    PreconditionError,
    apply_latin,
    canonicalize,
    construct_three_letter,
    construct_two_letter,
    count,
    cup_amounts,
    cyclic_square,
    det,
    encoding_matrix,
    enumerate,
    kernel_witness,
    klein_square,
    max_regularity,
    power_sums,
    product_group_square,
    prouhet_word,
    reduce_by_swaps,
    run_cli,
    seven_singular_square,
    shuffle,
    switch_count,
    thue_morse,
)


def word_report(word, alphabet_size=None):
    return json.loads(_pte.word_report_json(word, alphabet_size))


def verify_pouring(density, word, derivative_bound=None):
    """density is "poly:c0,c1,...", "exp:a" or "file:<csv>"."""
    return json.loads(_pte.verify_pouring_json(density, word, derivative_bound))

