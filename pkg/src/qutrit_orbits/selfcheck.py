"""Re-derivation of the embedded catalog: each check names the data it covers."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import catalog


@dataclass
class CheckResult:
    name: str
    anchor: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0


def _algebra(level):
    from . import liealg
    alg = liealg.algebra()
    grades = [int((alg.grades == g).sum()) for g in (0, 1, -1)]
    sample = None if level == "full" else range(0, liealg.DIM, 7)
    defect = alg.jacobi_defect(sample)
    ok = liealg.DIM == 78 and grades == [24, 27, 27] and defect == 0
    return ok, f"dim 78, grades {grades}, Jacobi defect {defect}"


def _weyl(level):
    from .semisimple import weyl_group, reflections, reflection_classes
    W = weyl_group()
    refl = reflections(W)
    sizes = sorted(len(c) for c in reflection_classes(W))
    return W.order == 648 and len(refl) == 24 and sizes == [12, 12], f"order {W.order}, classes {sizes}"


def _gamma(level):
    from .semisimple import gamma_group
    orders = [gamma_group(f).order for f in (1, 2, 3, 4)]
    return orders == [648, 18, 6, 3], f"orders {orders}"


def _census(level):
    complex_ = catalog.enumerate_entries("complex")
    real = catalog.enumerate_entries("real")
    counts = {
        "complex": len(complex_), "real": len(real),
        "complex mixed": sum(e.kind == "mixed" for e in complex_),
        "real nilpotent": sum(e.kind == "nilpotent" for e in real),
        "real mixed": sum(e.kind == "mixed" for e in real),
    }
    want = {"complex": 90, "real": 109, "complex mixed": 23, "real nilpotent": 70, "real mixed": 33}
    return counts == want, str(counts)


def _twists(level):
    from .galois import check_twist, is_cocycle
    bad = [i for i, (c, g) in enumerate(catalog.known_twists()) if not (is_cocycle(c) and check_twist(g, c))]
    return not bad, f"{len(catalog.known_twists())} pairs, failing {bad}"


def _characteristics(level):
    from .nilpotent import characteristic, lookup_characteristic, sl2_triple
    rows = catalog.nilpotent_rows()
    if level != "full":
        rows = rows[::9]
    bad = []
    for r in rows:
        ch = characteristic(sl2_triple(r.representative))
        if ch != r.characteristic or lookup_characteristic(ch) != (r.N, r.sigma):
            bad.append(f"nilpotent/{r.N}:{r.sigma}")
    return not bad, f"{len(rows)} rows, failing {bad}"


def _stabilizers(level):
    from .galois import descriptor_dim
    from .nilpotent import fixes_triple, sl2_triple, triple_stabilizer_dim
    bad = []
    seen = set()
    for r in catalog.nilpotent_rows():
        if r.N in seen:
            continue
        seen.add(r.N)
        if triple_stabilizer_dim(sl2_triple(r.base)) != descriptor_dim(r.identity_component):
            bad.append(f"nilpotent/{r.N}")
    for N, rec in catalog.nilpotent_twist_data().items():
        t = sl2_triple(catalog.nilpotent_row(int(N)).base)
        for name, mats in rec["stabilizer"].items():
            if not fixes_triple(catalog.group_element(mats), t):
                bad.append(f"nilpotent/{N} generator {name}")
    return not bad, f"failing {bad}"


def _h1(level):
    from .galois import FiniteGroup, SplitTorus, h1, h1_torus_extension
    from .semisimple import first_family_stabilizer, gamma_group
    sizes = {"first family": len(h1(first_family_stabilizer())), "gamma 2": len(h1(gamma_group(2)))}
    for N, rec in catalog.nilpotent_twist_data().items():
        F = FiniteGroup([catalog.group_element(m) for m in rec["stabilizer"].values()])
        if "torus" in rec:
            classes = h1_torus_extension(F, SplitTorus(rec["torus"]["cocharacters"]))
        else:
            classes = h1(F)
        c, _ = catalog.twist_pair(f"nilpotent:{N}")
        hit = any(cl.contains(c) for cl in classes if cl.rep_index != 0)
        sizes[f"nilpotent {N}"] = len(classes) if hit else -len(classes)
    want = {"first family": 1, "gamma 2": 2, "nilpotent 3": 2, "nilpotent 9": 2, "nilpotent 20": 2}
    return sizes == want, str(sizes)


def _mixed_round_trip(level):
    from .mixed import classify_mixed
    rows = catalog.mixed_rows()
    if level != "full":
        rows = rows[::6]
    bad = [str(r.label) for r in rows if classify_mixed(r.representative)[1] != r.label]
    return not bad, f"{len(rows)} rows, failing {bad}"


def _real_round_trip(level):
    from .real import classify_real
    entries = catalog.enumerate_entries("real")
    if level != "full":
        entries = [e for e in entries if "twisted" in e.label][::3]
    bad = [e.anchor for e in entries if str(classify_real(e.representative)) != e.label]
    return not bad, f"{len(entries)} entries, failing {bad}"


def _invariants(level):
    from .jordan import invariants
    from .tensorspace import GroupElt, act_group
    from .nilpotent import nilpotent_rep
    rng = random.Random(3)
    v = catalog.lookup("mixed:3:1:id").representative
    base = invariants(v)
    trials = 200 if level == "full" else 10
    for _ in range(trials):
        g = GroupElt(*[_random_sl3(rng) for _ in range(3)])
        if invariants(act_group(g, v)) != base:
            return False, "invariants moved under the group"
    nil = [r for r in catalog.nilpotent_rows()][:: (1 if level == "full" else 10)]
    if any(any(invariants(nilpotent_rep(r.N, r.sigma)).as_tuple()) for r in nil):
        return False, "a nilpotent representative has a nonzero invariant"
    return True, f"{trials} group actions, {len(nil)} nilpotents"


def _random_sl3(rng):
    while True:
        m = [[Fraction(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
        d = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
             - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
             + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        if d == 1:
            return m


CHECKS = (
    ("algebra", "e6 grading", _algebra),
    ("weyl", "little Weyl group", _weyl),
    ("gamma", "family groups", _gamma),
    ("census", "class counts", _census),
    ("twists", "catalog cocycle/twist pairs", _twists),
    ("characteristics", "nilpotent table", _characteristics),
    ("stabilizers", "nilpotent stabilizers", _stabilizers),
    ("h1", "Galois cohomology", _h1),
    ("invariants", "invariant ring", _invariants),
    ("mixed", "mixed tables", _mixed_round_trip),
    ("real", "real catalog", _real_round_trip),
)


def run(level: str = "quick", only=None) -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    out = []
    for name, anchor, fn in CHECKS:
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = fn(level)
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, anchor, bool(ok), detail, time.perf_counter() - t0))
    return out
