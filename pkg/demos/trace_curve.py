"""Trace the on-shell caustic of S = q^4 + q^5 and report the half-branch tangency."""
from caustica.jetcore import PolyGerm
from caustica.planecurve import classify_curve_point, onshell_trace

S = PolyGerm.parse("q^4 + q^5", 1, gens=["q"])
print("point type at q = 0:", classify_curve_point(S))
branches = onshell_trace(S, (-0.05, 0.05), resolution=401, beta_max=0.5)
for b in branches:
    print(f"{b.branch_kind:12s} {len(b.points):4d} points, q in [{b.q.min():+.4f}, {b.q.max():+.4f}]")
t = branches[1].tangency
print(f"off-diagonal branch: one-sided={t.one_sided} side={t.side} tangent={t.tangent} "
      f"p ~ {t.quadratic_coeff:.3f} q^2 (expected -36/5 = {-36 / 5})")
