"""Running the property checks from Python."""
from polywedge import check_property, gen_complex
from polywedge.verify import PROPERTIES

spacer = "_" * 60

c = gen_complex(3, "mixed")
sizes = sorted({len(f) for f in c.faces})
print("a mixed mesh:", c.n_vertices, "vertices,", c.n_faces, "faces of sizes", sizes)

print(spacer)
for name in sorted(PROPERTIES):
    r = check_property(name, trials=25, seed=1)
    print(f"{name:24s} {'pass' if r.passed else 'FAIL'}  max deviation {r.max_deviation:.2e}")

print(spacer)
# Associativity fails once the 0-forms are not closed; the harness keeps the witness.
print()
print(check_property("assoc_counterexample", trials=100, seed=0).to_text())
