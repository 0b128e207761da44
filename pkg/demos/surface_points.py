"""Classify points of Lagrangian surfaces and sample an on-shell slice."""
import numpy as np

from caustica.jetcore import PolyGerm
from caustica.lagsurface import classify_surface_point, onshell_slice


def P(text):
    return PolyGerm.parse(text, 2, gens=["q1", "q2"])


for text in ("q1^2*q2 + q2^3", "q1^2*q2 - q2^3", "q1^2*q2", "q1^3 + q2^5", "q1^3 + q1*q2^3 + q2^5"):
    res = classify_surface_point(P(text))
    inv = res.invariants
    print(f"{text:24s} -> {res.label:28s} delta={inv.delta} delta_L={inv.delta_L}")

pts = onshell_slice(P("q1^2*q2 + q2^3"), (0.0, 0.0), resolution=64, rays=32, chart="normal_form")
p = np.array([s.p for s in pts[1:]])
print(f"slice of q1^2*q2 + q2^3: {len(pts) - 1} off-diagonal points, max p2 = {p[:, 1].max():.3g}")
