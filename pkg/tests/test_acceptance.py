"""End-to-end acceptance suite.

Each test here is one shipping criterion, run at its stated tolerance.  The
terminal summary (see conftest) prints one PASS/FAIL line per criterion.
Heavy searches go through the CLI entry point so the whole advertised path
is exercised, not just the library internals.
"""

import io
import contextlib
import json
import math
import random
import time
from fractions import Fraction

import pytest

from oracles import (KM_SHIFT_R1000, KM_SHIFT_R10000, brute_ascend,
                     brute_maximal_elements, grid_simplex_min,
                     km_shift_residual)
from wctree.cli import main as cli_main
from wctree.fixedpoint import (FinitePoset, build_map, km_iterate,
                               maximal_via_uniformization, uniformize_least,
                               uniformize_relation, zermelo_iterate)
from wctree.predicates import is_M_schauder, is_eps_dominating, simplex_min_norm
from wctree.sets import (hilbert_cube, summing_hull, unit_ball,
                         unit_vector_family, unit_vector_hull)
from wctree.spaces import C0, L1, L2, Vector, conjugate_norm, norm, pairing
from wctree.trees import StackedTree, WcTree, bounded_wf_search

F = Fraction
E = Vector.unit


def run_cli(*argv) -> dict:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(list(argv))
    assert code == 0, buf.getvalue()
    return json.loads(buf.getvalue())


# ---------------------------------------------------------------------------


def test_criterion_01_branch_certificate_on_l1_hull():
    """Hunting in the unit-vector hull of the summable space at the sharpest
    parameters (eps = 1, M = 1) must certify a depth-10 branch riding the
    unit-vector generator, validated end to end, within ten seconds."""
    started = time.perf_counter()
    env = run_cli("branch-hunt", "--space", "l1", "--set", "unit-vector-hull",
                  "--eps", "1", "--bigm", "1", "--depth", "10",
                  "--index-bound", "64", "--beam-width", "4")
    elapsed = time.perf_counter() - started
    payload = env["payload"]
    assert payload["found"] is True
    branch = payload["branch"]
    assert len(branch) >= 10
    assert payload["generator"] == ["affine", 4, 0]
    assert payload["revalidated"] is True
    assert all(p["kind"] == "holds" for p in payload["prefixes"])
    # the branch really follows the unit vectors e_0, e_1, ...
    hull = unit_vector_hull(L1)
    for k, idx in enumerate(branch):
        assert hull.selector(idx) == E(k)
    assert elapsed < 10.0, f"took {elapsed:.2f}s"


def test_criterion_02_well_founded_orthonormal_scan():
    """At eps = 0.6, M = 2 the orthonormal selector model must be certified
    well-founded within depth 4 and index bound 16, on fully exact paths.
    The dumb grid oracle confirms why: three distinct orthonormal vectors
    have simplex minimum 1/sqrt(3) < 0.6, and repeats lose prefix
    boundedness outright."""
    env = run_cli("wf-scan", "--space", "l2", "--set", "unit-vector-family",
                  "--eps", "3/5", "--bigm", "2", "--depth", "4",
                  "--index-bound", "16")
    payload = env["payload"]
    assert payload["kind"] == "well-founded-within"
    assert payload["stats"]["inconclusive"] == 0  # every node decided exactly
    assert payload["stats"]["exhausted"] is False

    # independent grid confirmation (66 steps so the uniform point is on-grid)
    grid = grid_simplex_min(L2, [E(0), E(1), E(2)], steps=66)
    assert abs(grid - 1.0 / math.sqrt(3.0)) < 1e-12
    assert grid < 0.6
    # the library's own value is the exact square 1/3
    assert simplex_min_norm(L2, [E(0), E(1), E(2)]).exact_sq == F(1, 3)
    # any repeated selection breaks the prefix bound at every finite M
    rep = is_M_schauder(L2, [E(0), E(0)], F(2))
    assert rep.verdict.fails and rep.unbounded


def test_criterion_03_membership_monotone_in_parameters():
    """500 random (family, node, parameters) draws: whenever a node belongs
    to the stricter tree it belongs to every weaker one (smaller eps, larger
    M).  Zero violations allowed."""
    rng = random.Random(31415)
    pool = [unit_vector_family(L2), unit_vector_family(L1),
            unit_vector_hull(L1), summing_hull(L2), hilbert_cube(L2)]
    violations = 0
    for _ in range(500):
        fam = rng.choice(pool)
        length = rng.randint(1, 3)
        if rng.random() < 0.8:
            node = tuple(rng.sample(range(10), length))
        else:  # allow repeats so the prefix predicate gets exercised too
            node = tuple(rng.choices(range(10), k=length))
        eps = F(rng.randint(1, 16), 16)
        scale = F(rng.randint(1, 8), 8)
        eps_weak = eps * scale
        big_m = F(rng.randint(2, 6), 2)
        big_m_weak = big_m + F(rng.randint(0, 6), 2)
        strict = WcTree(fam, eps, big_m).member(node).verdict
        weak = WcTree(fam, eps_weak, big_m_weak).member(node).verdict
        if strict.holds and not weak.holds:
            violations += 1
    assert violations == 0


def test_criterion_04_downward_closure_with_margins():
    """500 random nodes that Hold: every prefix Holds too, with margin at
    least the child's margin."""
    rng = random.Random(27182)
    setups = [
        (WcTree(unit_vector_family(L2), F(1, 2), F(2)), range(12), 4),
        (WcTree(unit_vector_hull(L1), F(1), F(1)), [4 * k for k in range(8)], 5),
        (WcTree(summing_hull(L2), F(1, 2), F(3)), [2 * k for k in range(6)], 3),
    ]
    found = 0
    attempts = 0
    while found < 500:
        attempts += 1
        assert attempts < 20000, "could not collect enough holding nodes"
        tree, indices, max_len = rng.choice(setups)
        node = tuple(rng.sample(list(indices), rng.randint(2, max_len)))
        ev = tree.member(node)
        if not ev.verdict.holds:
            continue
        found += 1
        child_margin = ev.verdict.margin
        for k in range(1, len(node)):
            pv = tree.member(node[:k]).verdict
            assert pv.holds, (node, k)
            assert pv.margin is not None and child_margin is not None
            assert pv.margin >= child_margin - 1e-12, (node, k)
            if pv.exact_margin is not None and ev.verdict.exact_margin is not None:
                assert pv.exact_margin >= ev.verdict.exact_margin
    assert found == 500


def test_criterion_05_weak_duality_and_tight_orthonormal_gap():
    """Every dual certificate obeys lower_bound <= primal + 1e-9; for four
    orthonormal vectors the advertised certificate is (1/2) * sum of the
    first four coordinate functionals with dual norm exactly 1, primal value
    exactly 1/2, and gap at most 1e-6."""
    rng = random.Random(16180)
    seen = 0
    for space in (L1, L2, C0):
        for _ in range(60):
            m = rng.randint(1, 4)
            vs = []
            for _ in range(m):
                entries = [(p, F(rng.randint(-3, 3), rng.randint(1, 3)))
                           for p in rng.sample(range(6), rng.randint(1, 3))]
                v = Vector.from_pairs([(p, c) for p, c in entries if c != 0])
                vs.append(v if not v.is_zero else E(rng.randint(0, 5)))
            res = simplex_min_norm(space, vs)
            cert = res.certificate
            if cert is None:
                continue
            seen += 1
            assert float(cert.lower_bound) <= float(res.hi) + 1e-9
            # certificates are self-evident: re-check them from scratch
            assert conjugate_norm(space, cert.functional.vec).lo <= cert.functional.bound
            for v in vs:
                assert pairing(cert.functional, v) >= cert.lower_bound
    assert seen >= 150

    res = simplex_min_norm(L2, [E(0), E(1), E(2), E(3)])
    cert = res.certificate
    assert res.exact_sq == F(1, 4)          # primal value 1/2, exactly
    assert cert is not None
    assert cert.lower_bound == F(1, 2)
    assert cert.gap <= F(1, 10**6)
    assert cert.functional.vec == Vector.from_pairs([(i, F(1, 2)) for i in range(4)])
    dual = conjugate_norm(L2, cert.functional.vec)
    assert dual.exact == 1 or dual.exact_sq == 1


def test_criterion_06_oracle_equivalence_within_tolerance():
    """simplex_min_norm vs the exhaustive 1/64-grid oracle, 100 instances
    per space, agreement within 1e-3, all under 60 seconds.

    The instance distribution is curated so the grid can actually speak at
    that tolerance: polyhedral norms use nonnegative or on-grid-optimal
    families (their minima sit at vertices or at dyadic weights the grid
    contains), and the round norm uses orthonormal, mildly scaled disjoint,
    and overlapping nonnegative families whose curvature keeps the nearest
    grid point within ~4e-4.  A kinked instance with an off-grid minimizer
    (e.g. three disjoint sup-norm units, optimum at weights 1/3) would defeat
    ANY correct solver at step 1/64, so fairness here is a property of the
    family, not a concession by the solver.  Seeds are frozen; the families
    were verified empirically across several seeds before freezing."""
    started = time.perf_counter()

    def l1_instance(rng):
        m = rng.randint(1, 4)
        return [Vector.from_pairs(
            [(p, F(rng.randint(1, 8), rng.choice([1, 2, 4])))
             for p in rng.sample(range(6), rng.randint(1, 3))])
            for _ in range(m)]

    def l2_instance(rng):
        fam = rng.choice(["ortho", "scaled-disjoint", "overlap"])
        if fam == "ortho":
            return [E(o) for o in rng.sample(range(8), rng.randint(1, 4))]
        if fam == "scaled-disjoint":
            offs = rng.sample(range(8), rng.randint(1, 4))
            return [E(o).scale(F(rng.randint(2, 4), 2)) for o in offs]
        m = rng.randint(2, 4)
        return [E(rng.randint(0, 3)) + E(4 + i) for i in range(m)]

    def sup_instance(rng):
        m = rng.randint(1, 4)
        if m in (1, 2, 4):
            return [E(o) for o in rng.sample(range(8), m)]
        if rng.random() < 0.5:
            i, j = rng.sample(range(6), 2)
            return [E(i), E(j), E(i)]
        i, j = rng.sample(range(6), 2)
        return [E(i), E(j), E(i) + E(j)]

    worst = 0.0
    for space, gen in [(L1, l1_instance), (L2, l2_instance), (C0, sup_instance)]:
        rng = random.Random(20250819)
        for _ in range(100):
            vs = gen(rng)
            res = simplex_min_norm(space, vs)
            grid = grid_simplex_min(space, vs, steps=64)
            diff = abs(float(res.lo) - grid)
            worst = max(worst, diff)
            assert diff <= 1e-3, (space.ident, [str(v) for v in vs], diff)
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"took {elapsed:.2f}s (worst diff {worst:.2e})"


def test_criterion_07_stacked_sections_match_plain_trees():
    """For scales n <= 8 and 100 random probe nodes, membership in the
    stacked tree equals membership in the matching plain tree exactly."""
    fam = unit_vector_family(L2)
    stacked = StackedTree(fam)
    rng = random.Random(14142)
    for _ in range(100):
        n = rng.randint(0, 8)
        length = rng.randint(0, 3)
        if rng.random() < 0.85:
            rest = tuple(rng.sample(range(10), length))
        else:
            rest = tuple(rng.choices(range(10), k=length))
        plain = WcTree(fam, F(1, n + 1), F(n + 1))  # fresh, not the cached section
        got = stacked.member((n,) + rest).verdict
        want = plain.member(rest).verdict
        assert got.kind == want.kind
        assert got.margin == want.margin
        assert got.exact_margin == want.exact_margin


def test_criterion_08_order_engine_matches_brute_force():
    """200 random finite posets (up to 64 elements): the ascending-orbit
    engine and the uniformization-driven maximality search agree exactly
    with brute-force scans; the least-choice uniformization satisfies the
    subset, functionality, and domain-preservation laws exhaustively."""
    rng = random.Random(57721)
    for _ in range(200):
        n = rng.randint(1, 64)
        elements = list(range(n))
        covers = [(i, j) for i in elements for j in elements[i + 1:]
                  if rng.random() < 2.0 / n]
        poset = FinitePoset.from_cover(elements, covers)

        step = {x: uniformize_least(poset, poset.strict_successors(x) or [x])
                for x in elements}
        start = rng.choice(elements)
        mine = zermelo_iterate(poset, step, start)
        ref = brute_ascend(lambda x: step[x], start, n)
        assert mine.fixed_point == ref
        assert mine.steps <= n - 1 or n == 1
        for a, b in zip(mine.orbit, mine.orbit[1:]):
            assert poset.leq(a, b) and a != b

        top = maximal_via_uniformization(poset)
        assert top.fixed_point in brute_maximal_elements(poset)

    # uniformization laws, exhaustively over every relation on a 3x3 square
    law_poset = FinitePoset(list(range(3)),
                            [(i, j) for i in range(3) for j in range(3) if i <= j])
    cells = [(x, y) for x in range(3) for y in range(3)]
    for mask in range(2 ** 9):
        rel = [cells[i] for i in range(9) if mask >> i & 1]
        choice = uniformize_relation(law_poset, rel)
        assert set(choice) == {x for x, _ in rel}               # same domain
        for x, y in choice.items():
            assert (x, y) in rel                                # graph subset
            assert all(y <= z for (w, z) in rel if w == x)      # least choice
        # functionality is structural (dict), but make it explicit:
        assert len(choice) == len(set(choice.keys()))


def test_criterion_09_averaged_shift_iteration():
    """The half-averaged coordinate shift on the round unit ball: residual
    below 0.05 within 10^4 steps, a non-increasing residual log (per-step
    slack at most 1e-9), and agreement with the frozen closed-form values."""
    res = km_iterate(L2, build_map("shift"), steps=10_000, weight=F(1, 2),
                     domain=unit_ball(L2))
    assert res.final_residual < 0.05
    assert res.checks.residual_monotone  # checked inside at 1e-9 slack
    for a, b in zip(res.residuals, res.residuals[1:]):
        assert b <= a + 1e-9
    assert res.checks.domain_ok is True
    assert res.checks.shadow_deviation < 1e-9

    # regression against the independently derived closed form
    assert abs(res.residuals[1000] - KM_SHIFT_R1000) / KM_SHIFT_R1000 < 1e-9
    assert abs(res.final_residual - KM_SHIFT_R10000) / KM_SHIFT_R10000 < 1e-9
    assert abs(km_shift_residual(10_000) - KM_SHIFT_R10000) < 1e-15


def test_criterion_10_hilbert_cube_positive_control():
    """Branch hunting in the dyadic-box model at eps = 0.7 finds nothing of
    length >= 1, because every point of the box has norm at most
    sqrt(1/3) < 0.7 — verified by exact arithmetic, not tolerance."""
    cube = hilbert_cube(L2)
    for i in range(200):
        nv = norm(L2, cube.selector(i))
        assert nv.exact_sq is not None
        assert nv.exact_sq <= F(1, 3)
        assert nv.exact_sq < F(49, 100)  # strictly under 0.7^2, exactly

    env = run_cli("branch-hunt", "--space", "l2", "--set", "hilbert-cube",
                  "--eps", "7/10", "--bigm", "2", "--depth", "1",
                  "--index-bound", "64")
    assert env["payload"]["found"] is False

    verdict = bounded_wf_search(WcTree(cube, F(7, 10), F(2)), 1, 64)
    assert verdict.kind == "well-founded-within"
    assert verdict.stats.inconclusive == 0
    # and each singleton failure is decided on exact squares, no tolerance:
    # the witness carries the rational square of the minimizing norm
    ev = WcTree(cube, F(7, 10), F(2)).member((3,))
    assert ev.verdict.fails and ev.domination.fails
    witness_sq = ev.domination.witness.norm.exact_sq
    assert witness_sq is not None and witness_sq < F(49, 100)
