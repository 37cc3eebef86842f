"""Maximal elements by deterministic ascent in finite posets.

The engine: verify the step map never descends, then follow the orbit until
it stops -- in a finite order it must, and if the map sends every non-maximal
element strictly up, the stop is maximal.  The "uniformization" half is the
deterministic choice of where to go when several strict successors exist.
"""

from wctree import (FinitePoset, maximal_via_uniformization,
                    uniformize_relation, zermelo_iterate)


def divisibility_poset(limit):
    els = list(range(1, limit + 1))
    le = [(a, b) for a in els for b in els if b % a == 0]
    return FinitePoset(els, le)


def main():
    p = divisibility_poset(24)
    result = maximal_via_uniformization(p)
    print(f"divisibility on 1..24: ascent {' -> '.join(map(str, result.orbit))}")
    print(f"  reached {result.fixed_point} in {result.steps} steps "
          f"(maximal: {p.is_maximal(result.fixed_point)})")

    # same engine, custom step map: jump to the largest multiple instead
    def greedy(x):
        ups = [b for b in p.elements if b != x and p.leq(x, b)]
        return max(ups) if ups else x

    result = zermelo_iterate(p, greedy, start=1)
    print(f"greedy ascent from 1: {' -> '.join(map(str, result.orbit))}")

    # thinning a relation to a choice function with the same domain
    q = FinitePoset.from_cover("abcd", [("a", "b"), ("b", "c"), ("b", "d")])
    rel = [("a", "c"), ("a", "d"), ("b", "b"), ("d", "a")]
    choice = uniformize_relation(q, rel)
    print(f"relation {rel}")
    print(f"uniformized: {choice}")

    # a diamond with two maximal points: the ascent picks deterministically
    diamond = FinitePoset.from_cover(
        ["bottom", "west", "east"],
        [("bottom", "west"), ("bottom", "east")])
    print("diamond maximal pick:",
          maximal_via_uniformization(diamond).fixed_point)


if __name__ == "__main__":
    main()
