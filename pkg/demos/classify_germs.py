"""Classify a handful of odd germs and print label, codimension and determinacy."""
from caustica.jetcore import PolyGerm
from caustica.oddclass import classify, is_finitely_determined, miniversal_basis

GERMS = {
    1: ["x^3", "x^5 + x^7"],
    2: ["x1^2*x2 + x2^3", "x1^2*x2 - x2^5", "x1^3 + x2^5", "x1^3 + x1*x2^4",
        "x1^3 + x2^7", "x1^2*x2 + x1*x2^4"],
}

for n, texts in GERMS.items():
    gens = ["x"] if n == 1 else ["x1", "x2"]
    for text in texts:
        f = PolyGerm.parse(text, n, gens=gens)
        res = classify(f)
        det = is_finitely_determined(f)
        basis = ", ".join(str(g) for g in miniversal_basis(f)) if res.is_simple else "-"
        print(f"{text:24s} -> {res.label:10s} codim {res.odd_codimension}  "
              f"determined at order {det}  unfolding: {basis}")

three = PolyGerm.parse("x1^3 + x2^3 + x3^3", 3, gens=["x1", "x2", "x3"])
print(f"three variables          -> {classify(three).label}")
