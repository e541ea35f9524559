"""Walk through the complex classification of a few three-qutrit tensors.

Run with ``python demos/classify_tour.py``.  Takes half a minute or so.
"""

import random

from qutrit_orbits.classify import classify
from qutrit_orbits.jordan import invariants, jordan_decompose
from qutrit_orbits.tensorspace import GroupElt, U1, U2, act_group, cartan_point, parse_tensor


def scramble(v, seed=0):
    # a fixed element of SL(3, Q)^3, so the output does not change between runs
    rng = random.Random(seed)

    def mat():
        m = [[int(i == j) for j in range(3)] for i in range(3)]
        for _ in range(4):
            i, j = rng.sample(range(3), 2)
            c = rng.randint(-2, 2)
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        return m

    return act_group(GroupElt(mat(), mat(), mat()), v)


samples = {
    "W-type state": parse_tensor("|001> + |010> + |100>"),
    "product state": parse_tensor("|000>"),
    "generic Cartan point": cartan_point(1, 2, 3),
    "second family": U1 + U2.scale(2),
    "mixed": U1 + parse_tensor("|012> + |021>"),
}

for name, v in samples.items():
    w = scramble(v)
    lab = classify(w)
    print(f"{name:<22} {lab.label:<18} ({len(list(w.items()))} nonzero entries after scrambling)")

# the Jordan split of a scrambled mixed tensor recovers both parts up to the same element
w = scramble(samples["mixed"])
split = jordan_decompose(w)
print("\nsemisimple part:", classify(split.s).label)
print("nilpotent part: ", classify(split.e).label)

t = invariants(cartan_point(1, 2, 3)).as_tuple()
print("\ninvariants at (1, 2, 3):", t)
print("after scrambling:       ", invariants(scramble(cartan_point(1, 2, 3), 5)).as_tuple())
