"""Check versality of an unfolding and build the generating function it realizes."""
from caustica.jetcore import PolyGerm
from caustica.oddclass import is_versal, realization_check, realize_generating_function


def P(text):
    return PolyGerm.parse(text, 2, gens=["x1", "x2"])


f = P("x1^3 + x2^5")
full = [P(t) for t in ("x1", "x2", "x2^3", "x1*x2^2")]
print("E8 with four directions:", is_versal(f, full).verdict)
print("E8 with three directions:", is_versal(f, full[:3]).verdict)

# h must be odd, of degree >= 3, and h1 dx1 + h2 dx2 must be closed
g = P("x1^2*x2 + x2^3")
res = realization_check(g, [P("x1*x2^2"), P("x2^3")])
print("non-closed pair accepted?", bool(res), "-", res.reason)
h = [P("x1^3"), P("x2^3")]
res = realization_check(g, h)
print("closed pair accepted?", bool(res), "-", res.reason or "ok")
if res:
    print("generating function:", realize_generating_function(g, h))
