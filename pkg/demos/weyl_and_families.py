"""The little Weyl group and the four semisimple families.

The Cartan subspace span(u1, u2, u3) carries a complex reflection group of
order 648.  Each family of semisimple elements has its own residual group,
and two points of a family are conjugate exactly when that group maps one
parameter to the other.
"""

from qutrit_orbits.exactfield import Z3
from qutrit_orbits.jordan import stab_dim
from qutrit_orbits.semisimple import (
    family_of, family_point, gamma_group, reflection_classes, reflections, semisimple_equivalent, weyl_group,
)
from qutrit_orbits.tensorspace import U1, U2

W = weyl_group()
print(f"W has order {W.order} and {len(reflections(W))} reflections "
      f"in classes of sizes {sorted(len(c) for c in reflection_classes(W))}")

for f, params in ((1, (1, 2, 3)), (2, (1, 2)), (3, (1,)), (4, (1,))):
    s = family_point(f, params)
    print(f"family {f}: stabilizer dim {stab_dim(s)}, residual group of order {gamma_group(f).order}")

# zeta_3 u1 is conjugate to u1; 2 u1 is not
print("\nu1 ~ zeta3 u1:", semisimple_equivalent(U1, U1.scale(Z3)))
print("u1 ~ 2 u1:     ", semisimple_equivalent(U1, U1.scale(2)))

# the second family generator [[0,-1],[-1,0]] swaps and negates the parameters
s = U1.scale(2) + U2.scale(5)
print("2u1+5u2 ~ -5u1-2u2:", semisimple_equivalent(s, U1.scale(-5) + U2.scale(-2)))
print("recovered parameters:", family_of(s).params)
