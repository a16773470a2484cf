"""Modules in representation form: projectives, injectives, Hom spaces,
radical series, and the Auslander-Reiten translate."""

from quiverkit import (
    build_algebra,
    hom_basis,
    injective,
    is_isomorphic,
    parse_presentation,
    projective,
    radical_of,
    simple,
    socle_of,
    tau,
    tau_inv,
    top_of,
)
from quiverkit.cli import fixture_path
from quiverkit.repmod import loewy_label

B = build_algebra(parse_presentation(fixture_path("d4_clustertilted.q").read_text()))

for v in B.vertices:
    P = projective(B, v)
    I = injective(B, v)
    print(f"P({v}) = {loewy_label(P)} {list(P.dims)}    "
          f"I({v}) = {loewy_label(I)} {list(I.dims)}")

P1 = projective(B, "1")
print("top P(1) :", loewy_label(top_of(P1)))
print("rad P(1) :", loewy_label(radical_of(P1)))
print("soc P(1) :", loewy_label(socle_of(P1)))

print("dim Hom(P(4), P(1)) =", len(hom_basis(projective(B, "4"), P1)))

# the translate moves the simple at 2 onto the projective at 3
S2 = simple(B, "2")
t = tau(S2)
print("tau S(2) =", loewy_label(t), "; is P(3)?", is_isomorphic(t, projective(B, "3")))
print("tau^{-1} P(2) =", loewy_label(tau_inv(projective(B, "2"))))
