"""Node-indexed trees over a set model, and bounded searches on them.

A node is a finite tuple of selector indices.  The weak-compactness tree for
a family F at parameters (eps, M) contains a node exactly when the selected
vectors, in order, pass both node predicates: the M-Schauder prefix bound and
eps-domination of the summing basis.  Because the predicates can come back
inconclusive on bracket-mode spaces, membership is three-valued, and the
searches are careful about which claims an unknown node can block:

* a well-foundedness claim needs *every* not-certainly-failing path to die
  before the target depth;
* a branch certificate needs every node on the path to hold outright.

The stacked tree interleaves every parameter scale: its section at first
index n is the (1/(n+1), n+1)-tree of the same family, so one tree carries
the whole parameter sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import enumeration, predicates
from .errors import ConfigurationError
from .predicates import FAILS, HOLDS, INCONCLUSIVE, SchauderReport, Verdict3
from .sets import SetModel
from .spaces import Vector


@dataclass(frozen=True)
class NodeEvaluation:
    """Joint verdict of the two node predicates, with per-predicate detail."""

    verdict: Verdict3
    domination: Verdict3 | None = None
    schauder: SchauderReport | None = None


def _combine(domination: Verdict3, schauder: SchauderReport | None) -> Verdict3:
    if domination.fails:
        return Verdict3(FAILS, domination.margin, domination.exact_margin,
                        domination.witness, "domination: " + domination.detail)
    assert schauder is not None
    sv = schauder.verdict
    if sv.fails:
        return Verdict3(FAILS, sv.margin, sv.exact_margin, sv.witness,
                        "prefix bound: " + sv.detail)
    if domination.inconclusive or sv.inconclusive:
        which = "domination" if domination.inconclusive else "prefix bound"
        return Verdict3(INCONCLUSIVE, None, None, None, f"{which} undecided")
    margins = [m for m in (domination.margin, sv.margin) if m is not None]
    exacts = [domination.exact_margin, sv.exact_margin]
    exact = None
    if all(e is not None for e in exacts):
        exact = min(e for e in exacts if e is not None)
    return Verdict3(HOLDS, min(margins) if margins else None, exact,
                    None, "both predicates hold")


class WcTree:
    """Tree of finite selector-index tuples passing both node predicates."""

    def __init__(self, family: SetModel, eps: Fraction, big_m: Fraction,
                 tol: Fraction = Fraction(0)):
        eps, big_m = Fraction(eps), Fraction(big_m)
        if not 0 < eps <= 1:
            raise ConfigurationError("eps must satisfy 0 < eps <= 1", "/eps")
        if big_m < 1:
            raise ConfigurationError("M must satisfy M >= 1", "/M")
        self.family = family
        self.eps = eps
        self.big_m = big_m
        self.tol = Fraction(tol)
        self._cache: dict[tuple[int, ...], NodeEvaluation] = {}

    def vectors(self, node: tuple[int, ...]) -> tuple[Vector, ...]:
        return tuple(self.family.selector(i) for i in node)

    def member(self, node: tuple[int, ...]) -> NodeEvaluation:
        node = tuple(node)
        hit = self._cache.get(node)
        if hit is not None:
            return hit
        if not node:
            ev = NodeEvaluation(Verdict3(HOLDS, None, None, None, "root"))
        else:
            vs = self.vectors(node)
            dom = predicates.is_eps_dominating(self.family.space, vs, self.eps, self.tol)
            if dom.fails:
                ev = NodeEvaluation(_combine(dom, None), dom, None)
            else:
                sch = predicates.is_M_schauder(self.family.space, vs, self.big_m)
                ev = NodeEvaluation(_combine(dom, sch), dom, sch)
        self._cache[node] = ev
        return ev

    def params(self) -> dict:
        return {"eps": str(self.eps), "M": str(self.big_m)}

    def __repr__(self):
        return f"WcTree({self.family.ident!r}, eps={self.eps}, M={self.big_m})"


class StackedTree:
    """All parameter scales of a family in one tree.

    A node (n, u_1, ..., u_k) belongs exactly when (u_1, ..., u_k) belongs to
    the section tree with eps = 1/(n+1) and M = n+1; the empty node always
    belongs.  Well-foundedness of every section is therefore equivalent to
    well-foundedness of this single tree.
    """

    def __init__(self, family: SetModel, tol: Fraction = Fraction(0)):
        self.family = family
        self.tol = Fraction(tol)
        self._sections: dict[int, WcTree] = {}

    def section(self, n: int) -> WcTree:
        if n < 0:
            raise ValueError("section indices are naturals")
        tree = self._sections.get(n)
        if tree is None:
            tree = WcTree(self.family, Fraction(1, n + 1), Fraction(n + 1), self.tol)
            self._sections[n] = tree
        return tree

    def member(self, node: tuple[int, ...]) -> NodeEvaluation:
        node = tuple(node)
        if not node:
            return NodeEvaluation(Verdict3(HOLDS, None, None, None, "root"))
        return self.section(node[0]).member(node[1:])

    def params(self) -> dict:
        return {"stacked": True}


def scale_section(family: SetModel, n: int, tol: Fraction = Fraction(0)) -> WcTree:
    """Section of the stacked tree at first index n."""
    return StackedTree(family, tol).section(n)


class ExplicitFiniteTree:
    """A finite tree given as an explicit prefix-closed set of nodes."""

    def __init__(self, nodes: set[tuple[int, ...]] | list[tuple[int, ...]]):
        node_set = {tuple(n) for n in nodes}
        node_set.add(())
        for node in node_set:
            if node and node[:-1] not in node_set:
                raise ConfigurationError(
                    f"node {node} present without its parent {node[:-1]}")
        self.nodes = node_set

    def member(self, node: tuple[int, ...]) -> NodeEvaluation:
        node = tuple(node)
        if node in self.nodes:
            return NodeEvaluation(Verdict3(HOLDS, None, None, None, "listed"))
        return NodeEvaluation(Verdict3(FAILS, None, None, None, "not listed"))

    def params(self) -> dict:
        return {"nodes": len(self.nodes)}


class SubtreeView:
    """The tree seen from one of its nodes."""

    def __init__(self, tree, root: tuple[int, ...]):
        self.tree = tree
        self.root = tuple(root)

    def member(self, node: tuple[int, ...]) -> NodeEvaluation:
        return self.tree.member(self.root + tuple(node))

    def params(self) -> dict:
        return {"root": list(self.root)}


def subtree_at(tree, node: tuple[int, ...]) -> SubtreeView:
    return SubtreeView(tree, node)


def children(tree, node: tuple[int, ...], index_bound: int):
    """Evaluate all one-step extensions of a node below the index bound."""
    node = tuple(node)
    return [(i, tree.member(node + (i,))) for i in range(index_bound)]


# ---------------------------------------------------------------------------
# bounded searches


@dataclass
class SearchBudget:
    max_nodes: int = 100_000
    spent: int = 0

    def charge(self) -> bool:
        self.spent += 1
        return self.spent <= self.max_nodes


@dataclass(frozen=True)
class SearchStats:
    evaluated: int
    holds: int
    fails: int
    inconclusive: int
    exhausted: bool = False


WELL_FOUNDED = "well-founded-within"
BRANCH_FOUND = "branch-found"


@dataclass(frozen=True)
class WfVerdict:
    """Outcome of an exhaustive bounded search.

    well-founded-within: no path that could lie in the tree reaches the
    target depth under the index bound.  branch-found: a certified all-holds
    path does.  Anything weaker (unknown nodes at depth, exhausted budget)
    is inconclusive — an unknown node never supports a claim.
    """

    kind: str
    depth: int
    index_bound: int
    branch: tuple[int, ...] | None
    stats: SearchStats
    detail: str = ""


def bounded_wf_search(
    tree,
    depth: int,
    index_bound: int,
    budget: SearchBudget | None = None,
) -> WfVerdict:
    """Exhaustive depth-first scan of the tree under the given bounds.

    Children are tried in ascending index order, so the branch returned on
    success is the lexicographically least certified branch.
    """
    if depth < 1:
        raise ConfigurationError("depth must be at least 1", "/depth")
    if index_bound < 1:
        raise ConfigurationError("index bound must be at least 1", "/index-bound")
    budget = budget or SearchBudget()
    counts = {HOLDS: 0, FAILS: 0, INCONCLUSIVE: 0}
    state = {"unknown_at_depth": None, "exhausted": False}

    def stats() -> SearchStats:
        return SearchStats(sum(counts.values()), counts[HOLDS], counts[FAILS],
                           counts[INCONCLUSIVE], state["exhausted"])

    def dfs(node: tuple[int, ...], tainted: bool) -> tuple[int, ...] | None:
        if len(node) == depth:
            if not tainted:
                return node
            if state["unknown_at_depth"] is None:
                state["unknown_at_depth"] = node
            return None
        for i in range(index_bound):
            if not budget.charge():
                state["exhausted"] = True
                return None
            child = node + (i,)
            ev = tree.member(child)
            counts[ev.verdict.kind] += 1
            if ev.verdict.fails:
                continue
            found = dfs(child, tainted or ev.verdict.inconclusive)
            if found is not None:
                return found
            if state["exhausted"]:
                return None
        return None

    branch = dfs((), False)
    if branch is not None:
        return WfVerdict(BRANCH_FOUND, depth, index_bound, branch, stats(),
                         "lexicographically least certified branch")
    if state["exhausted"]:
        return WfVerdict(INCONCLUSIVE, depth, index_bound, None, stats(),
                         "node budget exhausted before the scan completed")
    if state["unknown_at_depth"] is not None:
        return WfVerdict(
            INCONCLUSIVE, depth, index_bound, None, stats(),
            f"an undecided path reaches depth {depth}: "
            f"{list(state['unknown_at_depth'])}")
    return WfVerdict(WELL_FOUNDED, depth, index_bound, None, stats(),
                     "every candidate path dies before the target depth")


@dataclass(frozen=True)
class PrefixRecord:
    node: tuple[int, ...]
    kind: str
    margin: float | None


@dataclass(frozen=True)
class BranchCertificate:
    """A depth-long all-holds path with per-prefix margins.

    `generator` describes the index pattern when one is recognized, e.g.
    ("affine", step, offset) for u_n = step*n + offset (0-based positions).
    """

    branch: tuple[int, ...]
    depth: int
    index_bound: int
    prefixes: tuple[PrefixRecord, ...]
    generator: tuple | None
    min_margin: float | None


def _detect_generator(branch: tuple[int, ...]) -> tuple | None:
    if len(branch) < 2:
        return None
    step = branch[1] - branch[0]
    offset = branch[0]
    if all(branch[n] == step * n + offset for n in range(len(branch))):
        return ("affine", step, offset)
    return None


def branch_search(
    tree,
    depth: int,
    index_bound: int,
    beam_width: int = 4,
    budget: SearchBudget | None = None,
) -> BranchCertificate | None:
    """Beam search for a certified branch, preferring well-separated nodes.

    Partial branches are ranked by (-margin, indices): the widest certified
    slack survives pruning, and exact ties resolve lexicographically, so the
    returned branch is reproducible.  Returns None when the beam dies or the
    budget runs out before the target depth.
    """
    if depth < 1:
        raise ConfigurationError("depth must be at least 1", "/depth")
    if beam_width < 1:
        raise ConfigurationError("beam width must be at least 1", "/beam-width")
    budget = budget or SearchBudget()
    beam: list[tuple[tuple[int, ...], float]] = [((), math.inf)]
    for _ in range(depth):
        extensions: list[tuple[float, tuple[int, ...], float]] = []
        for node, node_margin in beam:
            for i in range(index_bound):
                if not budget.charge():
                    return None
                child = node + (i,)
                ev = tree.member(child)
                if not ev.verdict.holds:
                    continue
                margin = ev.verdict.margin
                child_margin = min(node_margin,
                                   margin if margin is not None else math.inf)
                extensions.append((-child_margin, child, child_margin))
        if not extensions:
            return None
        extensions.sort(key=lambda t: (t[0], t[1]))
        beam = [(node, margin) for _, node, margin in extensions[:beam_width]]
    branch = min(node for node, _ in beam)
    records = []
    worst: float | None = None
    for k in range(1, depth + 1):
        ev = tree.member(branch[:k])
        m = ev.verdict.margin
        records.append(PrefixRecord(branch[:k], ev.verdict.kind, m))
        if m is not None:
            worst = m if worst is None else min(worst, m)
    return BranchCertificate(branch, depth, index_bound, tuple(records),
                             _detect_generator(branch), worst)


def validate_certificate(tree, cert: BranchCertificate) -> bool:
    """Re-evaluate every prefix of a claimed branch; True iff all hold."""
    if len(cert.branch) != cert.depth:
        return False
    return all(
        tree.member(cert.branch[:k]).verdict.holds
        for k in range(1, cert.depth + 1)
    )


def finite_rank(tree: ExplicitFiniteTree) -> int:
    """Height of an explicit finite tree: leaves have rank 0."""
    ranks: dict[tuple[int, ...], int] = {}
    for node in sorted(tree.nodes, key=len, reverse=True):
        kids = [r for n, r in ranks.items() if n[:-1] == node and len(n) == len(node) + 1]
        ranks[node] = 1 + max(kids) if kids else 0
    return ranks[()]


def rank_within(tree, depth: int, index_bound: int,
                budget: SearchBudget | None = None) -> tuple[int, bool]:
    """Rank of the certified-holds region under the bounds.

    Returns (rank, complete): `complete` is False when an undecided node or
    the budget cap means deeper certified structure may have been missed.
    """
    budget = budget or SearchBudget()
    complete = True

    def rec(node: tuple[int, ...], remaining: int) -> int:
        nonlocal complete
        if remaining == 0:
            return 0
        best = 0
        for i in range(index_bound):
            if not budget.charge():
                complete = False
                return best
            ev = tree.member(node + (i,))
            if ev.verdict.holds:
                best = max(best, 1 + rec(node + (i,), remaining - 1))
            elif ev.verdict.inconclusive:
                complete = False
        return best

    rank = rec((), depth)
    if rank >= depth:
        complete = False  # the cap itself may be hiding taller structure
    return rank, complete


def encode_characteristic(tree, count: int) -> tuple[str, list[int]]:
    """Characteristic bits of the first `count` nodes in canonical order.

    Node c is the tuple decoded from c by the universal sequence code; the
    bit is 1 for certified members, 0 for certified non-members, and the
    returned side list carries the indices whose membership stayed open.
    """
    bits = []
    open_indices: list[int] = []
    for c in range(count):
        node = tuple(enumeration.seq_decode(c))
        ev = tree.member(node)
        if ev.verdict.holds:
            bits.append("1")
        elif ev.verdict.fails:
            bits.append("0")
        else:
            bits.append("0")
            open_indices.append(c)
    return "".join(bits), open_indices
