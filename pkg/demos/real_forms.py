"""How one complex orbit splits into real orbits.

Case 20 of the nilpotent list is the orbit of |000> + |111>.  Its triple
stabilizer has a torus with a finite part, and H^1 of it has two classes.
Twisting by the nontrivial class gives a second real representative.
"""

from qutrit_orbits import catalog
from qutrit_orbits.galois import FiniteGroup, SplitTorus, h1_torus_extension, solve_twist
from qutrit_orbits.real import classify_real
from qutrit_orbits.tensorspace import act_group

rec = catalog.nilpotent_twist_data()["20"]
F = FiniteGroup([catalog.group_element(m) for m in rec["stabilizer"].values()])
classes = h1_torus_extension(F, SplitTorus(rec["torus"]["cocharacters"]))
print(f"finite part of order {F.order}, {len(classes)} cohomology classes")

u = catalog.nilpotent_row(20).base
c = classes[1].representative
g = solve_twist(c, known=())          # built from scratch, not taken from the catalog
v = act_group(g, u)
print("cocycle:", c)
print("twisted point:", v, "| real:", v.is_real())
print("classified as:", classify_real(v))
print("catalog form: ", catalog.lookup("nilpotent:20:id:twisted").representative)

# the twisted point need not equal the catalog one, but it lands in the same class
print("\nreal classes in the orbit:")
for label, rep in catalog.real_points("nilpotent:20:id"):
    print(f"  {label:<28} {rep}")
