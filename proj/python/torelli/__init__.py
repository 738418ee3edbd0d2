"""Exact toolkit for hyperplane arrangements: Steiner matrices, unstable
hyperplanes, Kronecker-Weierstrass certificates and Torelli verdicts.

All functions exchange the same JSON documents as the command-line tool.
"""

from _torelli import (  # noqa: F401
    InputError,
    DecomposeError,
    build_matrix,
    unstable,
    scan,
    torelli,
    kw_certify,
    decompose,
    hilbert,
)

__all__ = [
    "InputError",
    "DecomposeError",
    "build_matrix",
    "unstable",
    "scan",
    "torelli",
    "kw_certify",
    "decompose",
    "hilbert",
]
