"""Exact-arithmetic toolkit for sofic measures and digit numeration.

Subpackages by topic: algebra (the number field Q(beta)), automata (sofic
subshifts), sofic (Markov and matrix-product measures), bernoulli
(integer-base convolutions and representation counts), pisot (carry
transducers and Pisot-base measures), spectrum (level sets and density
profiles).  The ``soficonv`` executable exposes everything as subcommands.
"""

__version__ = "0.1.0"

from .errors import DomainError, ResourceCapError, SoficError

__all__ = ["DomainError", "ResourceCapError", "SoficError", "__version__"]
