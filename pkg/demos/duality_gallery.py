"""Simplex minima with their dual certificates, across the three exact norms.

Every minimum printed here comes with a proof: a feasible combination on the
primal side (you can check its norm yourself) and a bounded functional on
the dual side whose value under every selected vector matches the claimed
lower bound.  For the polyhedral norms strong duality makes the gap exactly
zero; for the round norm the only slack is the rational bracket around a
square root.
"""

from fractions import Fraction

from wctree import mazur_combination, simplex_min_norm
from wctree.spaces import C0, L1, L2, Vector

F = Fraction
E = Vector.unit


def show(space, label, vectors):
    res = simplex_min_norm(space, vectors)
    print(f"{label} [{space.ident}]")
    print(f"  enclosure [{float(res.lo):.6f}, {float(res.hi):.6f}]  via {res.method}")
    if res.exact is not None:
        print(f"  exact value {res.exact}")
    if res.exact_sq is not None:
        print(f"  exact square {res.exact_sq}")
    w = res.witness
    print(f"  weights {[str(x) for x in w.weights]} -> combo {w.combo}")
    cert = res.certificate
    if cert is None:
        print("  (no dual certificate on this path)")
    else:
        print(f"  dual bound {cert.lower_bound} by functional {cert.functional.vec}"
              f"  (gap {cert.gap})")
    print()


def main():
    show(L1, "three unit vectors", [E(0), E(1), E(2)])
    show(L2, "four orthonormal vectors", [E(0), E(1), E(2), E(3)])
    show(C0, "two unit vectors", [E(0), E(1)])

    overlapping = [E(0) + E(1), E(1) + E(2), E(2) + E(0)]
    show(L1, "overlapping pair sums", overlapping)
    show(L2, "overlapping pair sums", overlapping)

    cancelling = [E(0), E(0).scale(F(-1)), E(1)]
    show(L1, "a cancelling family", cancelling)
    flat = mazur_combination(L1, cancelling)
    print("mazur combination of the cancelling family:",
          [str(x) for x in flat.weights], "->", flat.combo,
          "norm hi", flat.norm.hi)


if __name__ == "__main__":
    main()
