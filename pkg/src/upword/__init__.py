"""Universal words and cycles for permutations."""
from .perm_core import reduce, order_isomorphic
from .pword import DIAMOND, Diamond, PWord, restricted, verify
from .textio import format_pword, parse_pword

__version__ = "0.1.0"

__all__ = ["reduce", "order_isomorphic", "DIAMOND", "Diamond", "PWord", "restricted",
           "verify", "format_pword", "parse_pword", "__version__"]
