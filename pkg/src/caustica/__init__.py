"""Classification of odd germs and the Wigner caustics they generate.

Submodules:

``jetcore``     truncated polynomial germs (exact or float coefficients)
``oddclass``    simple odd germs: determinacy, versality, normal forms
``planecurve``  caustics of plane curves, on and off the shell
``lagsurface``  point classes and caustic slices of Lagrangian surfaces
``cli``         the ``caustica`` command
"""

from .jetcore import OddGerm, PolyGerm, parity_split
from .oddclass import GermClass, Kind, classify, classify_odd_1d, classify_odd_2d, is_versal
from .lagsurface import classify_surface_point, onshell_slice, surface_invariants
from .planecurve import CurveSamples, chord_scan, cusp_count, onshell_trace

__all__ = [
    "PolyGerm", "OddGerm", "parity_split", "GermClass", "Kind", "classify", "classify_odd_1d",
    "classify_odd_2d", "is_versal", "classify_surface_point", "onshell_slice",
    "surface_invariants", "CurveSamples", "chord_scan", "cusp_count", "onshell_trace",
]
