"""Build a finite-dimensional algebra from a quiver presentation.

Walks through parsing, the path basis, the recovered quiver and the
Cartan matrix, on the bundled four-vertex example with a return arrow.
"""

from quiverkit import (
    build_algebra,
    cartan_matrix,
    gabriel_quiver,
    parse_presentation,
    serialize_presentation,
    to_dot,
)
from quiverkit.cli import fixture_path

text = fixture_path("d4_clustertilted.q").read_text()
print("presentation file:")
print(text)

pres = parse_presentation(text)
algebra = build_algebra(pres)
print(f"dimension: {algebra.dim}")
print("basis labels:", " ".join(algebra.labels))

# the two squares commute up to sign, so exactly one length-2 class survives
assert algebra.dim == 10

quiver = gabriel_quiver(algebra)
print("recovered quiver:", ", ".join(
    f"{a.name}: {a.source} -> {a.target}" for a in quiver.arrows))
print("cartan matrix:")
print(cartan_matrix(algebra))

print("round-trip text:")
print(serialize_presentation(pres))
print("dot output:")
print(to_dot(quiver))
