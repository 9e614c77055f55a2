"""dynsparse: dynamic graph sparsifiers with brute-force verification.

Maintains spanners, cut sparsifiers, and spectral sparsifiers of a fully
dynamic graph against adaptive adversaries via expander decomposition and
proactive resampling, with exhaustive desk-scale oracles checking every
correctness claim.
"""

from .graph import ChangeSet, DynamicGraph, UpdateEvent, replay

__all__ = ["DynamicGraph", "UpdateEvent", "ChangeSet", "replay"]
__version__ = "0.1.0"
