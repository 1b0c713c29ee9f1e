"""Exact, finite desk checks for ordinary and second-kind acyclicity.

Modules:

* ``linalg``: exact matrices over F_p, Q and Z.
* ``chain``: cohomological complexes, cones, shifts, hom complexes.
* ``simplicial``, ``fincat``: finite simplicial sets, horns, nerves.
* ``dold_kan``: simplicial vector spaces and normalization.
* ``dgcat``, ``dgnerve``: small DG-categories and their DG nerves.
* ``comod``: coalgebras, comodules, contramodules and the Ψ/Φ correspondence.
* ``derived``: acyclicity certificates and reflection witnesses.
* ``cdg``: curved rings and curved modules.
* ``serialize``, ``fixtures``, ``checks``, ``cli``: documents and the driver.
"""
from .chain import (ChainComplex, ChainMap, cone, hom_complex, homology, homology_ranks, is_acyclic,
                    shift, totalize_exact_triple)
from .linalg import QQ, ZZ, F, Mat

__all__ = ["ChainComplex", "ChainMap", "F", "Mat", "QQ", "ZZ", "cone", "hom_complex", "homology",
           "homology_ranks", "is_acyclic", "shift", "totalize_exact_triple"]
__version__ = "0.1.0"
