"""qcluster: exact quantum cluster realizations of quantum groups.

Quivers, quantum torus algebras, generator embeddings for every simple Lie
type, with mechanical verification of the quantum-group relations, mutation
invariance, basic-quiver identities, quantum-dilogarithm identities, the
factorized R-matrix braiding, and the half-Dehn-twist mutation sequences.
"""

from ._kernel import BACKEND as kernel_backend

__version__ = "0.1.0"
