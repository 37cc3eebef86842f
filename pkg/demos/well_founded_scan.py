"""Watch the orthonormal selector model die out as parameters tighten.

Distinct orthonormal vectors push their simplex minimum down like 1/sqrt(m),
so for any eps > 0 the tree stops growing at m ~ 1/eps^2.  Repeating a
selection is even worse: the prefix-boundedness predicate fails outright.
This scan certifies well-foundedness within a finite window and prints the
level-by-level picture.
"""

from fractions import Fraction

from wctree import (SearchBudget, WcTree, bounded_wf_search,
                    encode_characteristic, rank_within, unit_vector_family)
from wctree.spaces import L2


def scan(eps, big_m, depth=5, bound=12):
    fam = unit_vector_family(L2)
    tree = WcTree(fam, Fraction(eps), Fraction(big_m))
    verdict = bounded_wf_search(tree, depth, bound, SearchBudget(500_000))
    rank, complete = rank_within(tree, depth, bound, SearchBudget(500_000))
    bits, unknown = encode_characteristic(tree, 32)
    print(f"eps={eps} M={big_m}: {verdict.kind}")
    s = verdict.stats
    print(f"  evaluated {s.evaluated}, holds {s.holds}, fails {s.fails}, "
          f"inconclusive {s.inconclusive}")
    print(f"  certified rank within bounds: {rank} (complete={complete})")
    print(f"  first 32 characteristic bits: {bits}")
    if verdict.branch:
        print(f"  branch: {verdict.branch}")
    print()


def main():
    # 1/sqrt(2) ~ 0.707, 1/sqrt(3) ~ 0.577, 1/sqrt(4) = 0.5
    for eps in (Fraction(3, 4), Fraction(3, 5), Fraction(11, 20), Fraction(1, 2)):
        scan(eps, 2)
    # with a looser eps the depth cap is what stops the scan, not the tree
    scan(Fraction(1, 4), 2, depth=4, bound=8)


if __name__ == "__main__":
    main()
