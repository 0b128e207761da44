"""Scan parallel chords of two ovals and count cusps of their midpoint loci."""
import numpy as np

from caustica.planecurve import CurveSamples, chord_scan, cusp_count, midpoint_locus

OVALS = {
    "ellipse": lambda t: (2 * np.cos(t), 0.5 * np.sin(t)),
    "perturbed ellipse": lambda t: (np.cos(t) + 0.1 * np.cos(2 * t), 2 * np.sin(t)),
    "two flattenings": lambda t: (np.cos(t) + 0.04 * np.cos(4 * t) + 0.05 * np.cos(2 * t),
                                  1.3 * np.sin(t) + 0.03 * np.sin(2 * t)),
}

for name, fn in OVALS.items():
    curve = CurveSamples.from_function(fn, 2048)
    pairs = chord_scan(curve)
    rep = cusp_count(midpoint_locus(pairs), scale=curve.scale)
    print(f"{name:18s} {len(pairs):5d} chord pairs, cusps {rep.count} "
          f"(degenerate={rep.degenerate}, confidence={rep.confidence})")
