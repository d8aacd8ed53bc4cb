"""Text index for minimal unique palindromic substrings (MUPSs).

Preprocesses a string T in near-linear time and answers what-if
single-character substitution queries sub(i, s): which MUPSs disappear
and which appear in the edited string, in time proportional to the size
of the change plus polylogarithmic overhead.
"""

from .core import (
    Interval,
    MupsDelta,
    MupsSet,
    SubstitutionQuery,
    Text,
    apply_substitution,
    make_substitution,
    make_text,
)
from .lce import LceIndex, SuffixTreeView, build_lce
from .palindromes import Eertree, build_eertree, maximal_palindromes, one_mismatch_maximal_palindromes
from .static_mups import compute_mups
from .center import CenterAnswer, CenterIndex, build_center_index, longest_center_palindrome
from .index import SubstIndex, build_subst_index

__all__ = [
    "Interval",
    "MupsDelta",
    "MupsSet",
    "SubstitutionQuery",
    "Text",
    "apply_substitution",
    "make_substitution",
    "make_text",
    "LceIndex",
    "SuffixTreeView",
    "build_lce",
    "Eertree",
    "build_eertree",
    "maximal_palindromes",
    "one_mismatch_maximal_palindromes",
    "compute_mups",
    "CenterAnswer",
    "CenterIndex",
    "build_center_index",
    "longest_center_palindrome",
    "SubstIndex",
    "build_subst_index",
]
