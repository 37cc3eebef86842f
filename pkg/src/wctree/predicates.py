"""Decision procedures for the two node predicates and their certificates.

Both predicates reduce to optimization over finitely many rational vectors:

* summing-basis domination asks whether every simplex combination of the
  node's vectors has norm at least eps — a convex minimum over the simplex;
* the M-Schauder test asks whether every prefix of the node, under every
  coefficient pattern, stays within factor M of the full combination — a
  maximum of norm ratios, i.e. the basis constant of the finite sequence.

For l1 and the sup norm both problems are polyhedral and solved exactly with
rational linear programming (minimum + matching dual certificate); for l2
they are quadratic and solved exactly through Gram matrices (support
enumeration for the minimum, PSD tests for the constant).  Remaining
exponents run in bracket mode: certified lower bounds come from exactly
solvable comparison norms, upper bounds from exact evaluation at rational
candidate points, and verdicts degrade to "inconclusive" when the enclosure
straddles the threshold.  A sampled probe can certify failure but never
success.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import linalg, lp, spaces
from .errors import BudgetExceeded, ContractViolation
from .spaces import Functional, SpaceModel, Vector

QP_SUPPORT_CAP = 12
POLYHEDRAL_BUDGET = 250_000
MARGIN_GRID_BITS = 12  # basis constants are bracketed on the 2^-12 grid

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict3:
    """Three-valued decision with a signed slack and supporting evidence.

    margin is the certified slack of the decision in the direction of the
    verdict (how far above eps the minimum sits, how much room is left under
    M); None when the path taken does not quantify it.
    """

    kind: str
    margin: float | None = None
    exact_margin: Fraction | None = None
    witness: object | None = None
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.kind == HOLDS

    @property
    def fails(self) -> bool:
        return self.kind == FAILS

    @property
    def inconclusive(self) -> bool:
        return self.kind == INCONCLUSIVE


@dataclass(frozen=True)
class SimplexWitness:
    weights: tuple[Fraction, ...]
    combo: Vector
    norm: spaces.NormValue


@dataclass(frozen=True)
class DualCertificate:
    """Functional of dual norm <= 1 with <g, x_n> >= lower_bound for all n.

    Pairing any simplex combination against g shows its norm is at least
    lower_bound, so the certificate is checkable without re-optimizing.
    """

    functional: Functional
    lower_bound: Fraction
    gap: Fraction


@dataclass(frozen=True)
class SimplexMinResult:
    lo: Fraction
    hi: Fraction
    witness: SimplexWitness
    method: str  # "exact-lp" | "exact-qp" | "bracket"
    exact: Fraction | None = None
    exact_sq: Fraction | None = None
    certificate: DualCertificate | None = None

    @property
    def value(self) -> float:
        return (float(self.lo) + float(self.hi)) / 2


_SIMPLEX_MEMO: dict[tuple, SimplexMinResult] = {}


def _memo_key(space: SpaceModel, vectors: tuple[Vector, ...]) -> tuple:
    # the simplex minimum is invariant under reordering the vectors
    return (space.kind, str(space.p), tuple(sorted(v.entries for v in vectors)))


def simplex_min_norm(space: SpaceModel, vectors: list[Vector] | tuple[Vector, ...]) -> SimplexMinResult:
    """Certified minimum of ||sum a_n x_n|| over the probability simplex."""
    vs = tuple(vectors)
    if not vs:
        raise ValueError("simplex minimum needs at least one vector")
    key = _memo_key(space, vs)
    hit = _SIMPLEX_MEMO.get(key)
    if hit is not None:
        return hit
    if space.exactness == "rational":
        res = _simplex_min_polyhedral(space, vs)
    elif space.exactness == "square":
        res = _simplex_min_qp(space, vs)
    else:
        res = _simplex_min_bracket(space, vs)
    if len(_SIMPLEX_MEMO) > 50_000:
        _SIMPLEX_MEMO.clear()
    _SIMPLEX_MEMO[key] = res
    return res


def _coordinate_rows(vectors: tuple[Vector, ...]) -> list[int]:
    rows: set[int] = set()
    for v in vectors:
        rows.update(v.support)
    return sorted(rows)


def _matrix(vectors: tuple[Vector, ...], rows: list[int]) -> list[list[Fraction]]:
    return [[v.coeff(r) for v in vectors] for r in rows]


def _simplex_min_polyhedral(space: SpaceModel, vs: tuple[Vector, ...]) -> SimplexMinResult:
    """Exact LP minimum for l1 / sup, plus an exact dual certificate."""
    m = len(vs)
    rows = _coordinate_rows(vs)
    r = len(rows)
    if r == 0:  # every vector is zero
        w = tuple([Fraction(1)] + [Fraction(0)] * (m - 1))
        zero = spaces.norm(space, Vector.zero())
        witness = SimplexWitness(w, Vector.zero(), zero)
        return SimplexMinResult(Fraction(0), Fraction(0), witness, "exact-lp", exact=Fraction(0))
    a_mat = _matrix(vs, rows)
    sup = space.kind == "c0"

    # primal: variables a_1..a_m, then t (one per row for l1, single for sup)
    nt = 1 if sup else r
    nvar = m + nt
    a_ub: list[list[Fraction]] = []
    b_ub: list[Fraction] = []
    for j in range(r):
        tcol = m if sup else m + j
        row_pos = [a_mat[j][n] for n in range(m)] + [Fraction(0)] * nt
        row_pos[tcol] = Fraction(-1)
        row_neg = [-a_mat[j][n] for n in range(m)] + [Fraction(0)] * nt
        row_neg[tcol] = Fraction(-1)
        a_ub.extend([row_pos, row_neg])
        b_ub.extend([Fraction(0), Fraction(0)])
    a_eq = [[Fraction(1)] * m + [Fraction(0)] * nt]
    b_eq = [Fraction(1)]
    cost = [Fraction(0)] * m + [Fraction(1)] * nt
    primal = lp.solve_lp(cost, a_ub, b_ub, a_eq, b_eq)
    if primal.status != "optimal":
        raise ContractViolation(f"simplex LP should be solvable, got {primal.status}")
    weights = tuple(primal.x[:m])
    combo = spaces.combine(weights, vs)
    nv = spaces.norm(space, combo)
    value = nv.exact
    assert value is not None and value == primal.value

    cert = _dual_certificate_lp(space, vs, rows, a_mat, value)
    witness = SimplexWitness(weights, combo, nv)
    return SimplexMinResult(value, value, witness, "exact-lp", exact=value, certificate=cert)


def _dual_certificate_lp(
    space: SpaceModel,
    vs: tuple[Vector, ...],
    rows: list[int],
    a_mat: list[list[Fraction]],
    primal_value: Fraction,
) -> DualCertificate:
    """Maximize s over { g in the dual ball : <g, x_n> >= s }, exactly.

    Strong duality makes the optimum coincide with the primal minimum; the
    equality is asserted, not assumed.
    """
    m = len(vs)
    r = len(rows)
    sup = space.kind == "c0"
    # variables: u_1..u_r, w_1..w_r (g = u - w), s_plus, s_minus
    nvar = 2 * r + 2
    a_ub: list[list[Fraction]] = []
    b_ub: list[Fraction] = []
    for n in range(m):
        row = [Fraction(0)] * nvar
        for j in range(r):
            row[j] = -a_mat[j][n]
            row[r + j] = a_mat[j][n]
        row[2 * r] = Fraction(1)
        row[2 * r + 1] = Fraction(-1)
        a_ub.append(row)
        b_ub.append(Fraction(0))
    if sup:
        # dual ball of the sup norm: sum |g_j| <= 1
        row = [Fraction(1)] * (2 * r) + [Fraction(0), Fraction(0)]
        a_ub.append(row)
        b_ub.append(Fraction(1))
    else:
        # dual ball of l1: each |g_j| <= 1
        for j in range(2 * r):
            row = [Fraction(0)] * nvar
            row[j] = Fraction(1)
            a_ub.append(row)
            b_ub.append(Fraction(1))
    cost = [Fraction(0)] * (2 * r) + [Fraction(1), Fraction(-1)]
    dual = lp.solve_lp(cost, a_ub, b_ub, maximize=True)
    if dual.status != "optimal":
        raise ContractViolation(f"dual LP should be solvable, got {dual.status}")
    if dual.value != primal_value:
        raise ContractViolation(
            f"duality gap in exact arithmetic: primal {primal_value}, dual {dual.value}"
        )
    g = Vector.from_pairs(
        (rows[j], dual.x[j] - dual.x[r + j]) for j in range(r)
    )
    functional = Functional(space, g, Fraction(1))
    for x in vs:
        if spaces.pairing(functional, x) < primal_value:
            raise ContractViolation("dual certificate fails its defining inequality")
    return DualCertificate(functional, primal_value, Fraction(0))


def _gram(vs: tuple[Vector, ...]) -> list[list[Fraction]]:
    m = len(vs)
    g = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        di = dict(vs[i].entries)
        for j in range(i, m):
            s = sum((c * di.get(p, Fraction(0)) for p, c in vs[j].entries), Fraction(0))
            g[i][j] = s
            g[j][i] = s
    return g


def _exact_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _simplex_min_qp(space: SpaceModel, vs: tuple[Vector, ...]) -> SimplexMinResult:
    """Exact l2 minimum by support enumeration on the Gram matrix.

    For each candidate support the equality-constrained stationarity system
    is solved in rationals; the multiplier lambda is unique per consistent
    support and the value there is lambda/2, so the global minimum is the
    least value over supports admitting a nonnegative solution.
    """
    m = len(vs)
    if m > QP_SUPPORT_CAP:
        raise BudgetExceeded(
            f"quadratic support enumeration capped at {QP_SUPPORT_CAP} vectors, got {m}"
        )
    q = _gram(vs)
    best_sq: Fraction | None = None
    best_weights: tuple[Fraction, ...] | None = None
    for mask in range(1, 1 << m):
        support = [i for i in range(m) if mask >> i & 1]
        s = len(support)
        # stationarity 2 Q_S a = lambda * 1 and the simplex equality
        system = [
            [2 * q[support[i]][support[j]] for j in range(s)] + [Fraction(-1)]
            for i in range(s)
        ]
        system.append([Fraction(1)] * s + [Fraction(0)])
        rhs = [Fraction(0)] * s + [Fraction(1)]
        sol = linalg.solve(system, rhs)
        if sol is None:
            continue
        lam = sol[s]
        if best_sq is not None and lam / 2 >= best_sq:
            continue
        a = _nonneg_solution(system, sol[:s] + [lam])
        if a is None:
            continue
        val = lam / 2
        if val < 0:
            raise ContractViolation("negative squared norm from stationarity system")
        weights = [Fraction(0)] * m
        for idx, i in enumerate(support):
            weights[i] = a[idx]
        best_sq, best_weights = val, tuple(weights)
    if best_sq is None or best_weights is None:
        raise ContractViolation("no support admitted a simplex stationary point")
    combo = spaces.combine(best_weights, vs)
    nv = spaces.norm(space, combo)
    assert nv.exact_sq == best_sq
    lo = linalg.sqrt_lower(best_sq, spaces.BRACKET_BITS)
    hi = linalg.sqrt_upper(best_sq, spaces.BRACKET_BITS)
    cert = _dual_certificate_l2(space, vs, best_weights, best_sq)
    witness = SimplexWitness(best_weights, combo, nv)
    root = _exact_sqrt(best_sq)
    return SimplexMinResult(
        lo, hi, witness, "exact-qp",
        exact=root, exact_sq=best_sq, certificate=cert,
    )


def _nonneg_solution(system: linalg.Matrix, particular: list[Fraction]) -> list[Fraction] | None:
    """A nonnegative point of the stationarity solution set, if one exists.

    The last variable (the multiplier) is unconstrained; only the support
    weights must be nonnegative.
    """
    s = len(particular) - 1
    a0 = particular[:s]
    kernel = linalg.nullspace(system)
    if not kernel:
        return a0 if all(c >= 0 for c in a0) else None
    if all(c >= 0 for c in a0):
        return a0
    # search a0 + span(kernel) for a nonnegative point: LP feasibility with
    # free coefficients split into positive and negative parts
    k = len(kernel)
    a_ub: list[list[Fraction]] = []
    b_ub: list[Fraction] = []
    for comp in range(s):
        row = []
        for vec in kernel:
            row.append(-vec[comp])
        for vec in kernel:
            row.append(vec[comp])
        a_ub.append(row)
        b_ub.append(a0[comp])
    res = lp.solve_lp([Fraction(0)] * (2 * k), a_ub, b_ub)
    if res.status != "optimal":
        return None
    coeffs = [res.x[i] - res.x[k + i] for i in range(k)]
    out = list(a0)
    for ci, vec in zip(coeffs, kernel):
        if ci:
            for comp in range(s):
                out[comp] += ci * vec[comp]
    if any(c < 0 for c in out):
        raise ContractViolation("feasibility LP returned an infeasible point")
    return out


def _dual_certificate_l2(
    space: SpaceModel,
    vs: tuple[Vector, ...],
    weights: tuple[Fraction, ...],
    value_sq: Fraction,
) -> DualCertificate | None:
    """Scale the optimal combination into a norm-<=1 functional.

    At the constrained minimum z, every <z, x_n> is at least ||z||^2, so
    g = z/||z|| certifies the minimum; the irrational scale is replaced by a
    dyadic lower approximation, costing a quantified gap (zero whenever
    1/||z||^2 is a perfect rational square).
    """
    if value_sq == 0:
        return None
    z = spaces.combine(weights, vs)
    zd = dict(z.entries)
    for x in vs:
        inner = sum((c * zd.get(p, Fraction(0)) for p, c in x.entries), Fraction(0))
        if inner < value_sq:
            raise ContractViolation("stationary point violates its own optimality system")
    scale = _exact_sqrt(1 / value_sq)
    if scale is None:
        scale = linalg.sqrt_lower(1 / value_sq, spaces.BRACKET_BITS)
    g = z.scale(scale)
    if scale * scale * value_sq > 1:
        raise ContractViolation("certificate scale exceeds the unit dual ball")
    functional = Functional(space, g, Fraction(1))
    lower = scale * value_sq
    hi = linalg.sqrt_upper(value_sq, spaces.BRACKET_BITS)
    return DualCertificate(functional, lower, hi - lower)


def _project_simplex(a: list[float]) -> list[float]:
    srt = sorted(a, reverse=True)
    acc = 0.0
    rho, theta = 0, 0.0
    for i, v in enumerate(srt, 1):
        acc += v
        t = (acc - 1.0) / i
        if v - t > 0:
            rho, theta = i, t
    return [max(0.0, v - theta) for v in a]


def _simplex_min_bracket(space: SpaceModel, vs: tuple[Vector, ...]) -> SimplexMinResult:
    """Bracketed minimum for general exponents.

    Lower bound: the exact minimum of a comparison norm that the p-norm
    dominates (l2 when p < 2, sup always, and l1 scaled by the support-size
    Holder factor).  Upper bound: exact norm bracket at the best rational
    candidate found by projected subgradient descent.
    """
    m = len(vs)
    p = space.p
    assert p is not None
    candidates: list[Fraction] = []
    sup_min = simplex_min_norm(spaces.C0, vs)
    assert sup_min.exact is not None
    candidates.append(sup_min.exact)
    if p < 2 and m <= QP_SUPPORT_CAP:
        l2_min = simplex_min_norm(spaces.L2, vs)
        candidates.append(l2_min.lo)
    d = len(_coordinate_rows(vs))
    if d:
        l1_min = simplex_min_norm(spaces.L1, vs)
        assert l1_min.exact is not None
        a, b = p.numerator, p.denominator
        if a == b:
            holder_hi = Fraction(1)
        else:
            _, holder_hi = linalg.nthroot_brackets(Fraction(d ** (a - b)), a, 64)
        candidates.append(l1_min.exact / holder_hi)
    lo = max(candidates)

    rows = _coordinate_rows(vs)
    cols = [[float(v.coeff(r)) for r in rows] for v in vs]
    pf = float(p)

    def fval_grad(a: list[float]) -> tuple[float, list[float]]:
        z = [sum(a[n] * cols[n][j] for n in range(m)) for j in range(len(rows))]
        s = sum(abs(t) ** pf for t in z)
        f = s ** (1 / pf) if s > 0 else 0.0
        if f <= 0:
            return 0.0, [0.0] * m
        gz = [math.copysign(abs(t) ** (pf - 1), t) / f ** (pf - 1) for t in z]
        return f, [sum(gz[j] * cols[n][j] for j in range(len(rows))) for n in range(m)]

    starts = [[1.0 / m] * m]
    for i in range(m):
        e = [0.0] * m
        e[i] = 1.0
        starts.append(e)
    best_pt: list[float] | None = None
    best_f = math.inf
    for a in starts:
        cur = a[:]
        for t in range(1, 121):
            f, grad = fval_grad(cur)
            if f < best_f:
                best_f, best_pt = f, cur[:]
            gn = math.sqrt(sum(g * g for g in grad)) or 1.0
            step = 0.3 / (gn * math.sqrt(t))
            cur = _project_simplex([cur[i] - step * grad[i] for i in range(m)])
        f, _ = fval_grad(cur)
        if f < best_f:
            best_f, best_pt = f, cur[:]
    assert best_pt is not None
    grid = 1 << MARGIN_GRID_BITS
    snapped = [Fraction(max(0, round(w * grid)), grid) for w in best_pt]
    total = sum(snapped, Fraction(0))
    weights = tuple(w / total for w in snapped) if total else tuple(
        [Fraction(1)] + [Fraction(0)] * (m - 1)
    )
    combo = spaces.combine(weights, vs)
    nv = spaces.norm(space, combo)
    hi = nv.hi
    # vertices are feasible too; keep whichever bound is tighter
    for i in range(m):
        vn = spaces.norm(space, vs[i])
        if vn.hi < hi:
            hi = vn.hi
            weights = tuple(Fraction(1) if j == i else Fraction(0) for j in range(m))
            combo, nv = vs[i], vn
    if hi < lo:
        raise ContractViolation("bracket bounds crossed; comparison-norm reasoning is wrong")
    witness = SimplexWitness(weights, combo, nv)
    return SimplexMinResult(lo, hi, witness, "bracket")


def dual_certificate_search(
    space: SpaceModel, vectors: list[Vector] | tuple[Vector, ...], target: Fraction
) -> DualCertificate | None:
    """A certificate proving the simplex minimum is at least `target`, if true."""
    res = simplex_min_norm(space, tuple(vectors))
    cert = res.certificate
    if cert is not None and cert.lower_bound >= target:
        return cert
    return None


def mazur_combination(
    space: SpaceModel, vectors: list[Vector] | tuple[Vector, ...]
) -> SimplexWitness:
    """The flattest convex combination the solver can certify.

    Constructive counterpart of the simplex minimum: returns the weights,
    the combined vector, and its norm enclosure.
    """
    return simplex_min_norm(space, tuple(vectors)).witness


# ---------------------------------------------------------------------------
# summing-basis domination


def is_eps_dominating(
    space: SpaceModel,
    vectors: list[Vector] | tuple[Vector, ...],
    eps: Fraction,
    tol: Fraction = Fraction(0),
) -> Verdict3:
    """Does every simplex combination of the vectors have norm >= eps?

    Exact paths decide non-strictly with zero tolerance; on the bracket path
    `tol` widens the band that certifies success, and enclosures straddling
    eps come back inconclusive.
    """
    eps = Fraction(eps)
    vs = tuple(vectors)
    if not vs:
        return Verdict3(HOLDS, margin=None, detail="empty sequence dominates vacuously")
    res = simplex_min_norm(space, vs)
    if res.method != "bracket":
        exact_known = res.exact if res.exact is not None else None
        if res.exact_sq is not None:
            held = res.exact_sq >= eps * eps
        else:
            assert res.exact is not None
            held = res.exact >= eps
        if exact_known is not None:
            emargin: Fraction | None = exact_known - eps
            fmargin = float(emargin)
        else:
            emargin = None
            fmargin = (float(res.lo) + float(res.hi)) / 2 - float(eps)
        if held:
            return Verdict3(HOLDS, abs(fmargin) if emargin is None else fmargin,
                            emargin, res.certificate,
                            detail=f"certified minimum via {res.method}")
        return Verdict3(FAILS, fmargin, emargin, res.witness,
                        detail=f"minimizing combination via {res.method}")
    tol = Fraction(tol)
    if res.lo >= eps + tol:
        return Verdict3(HOLDS, float(res.lo - eps), None, res.certificate,
                        detail="comparison-norm lower bound clears eps plus tol")
    if res.hi < eps:
        return Verdict3(FAILS, float(res.hi - eps), None, res.witness,
                        detail="witness combination certified below eps")
    return Verdict3(
        INCONCLUSIVE, None, None, None,
        detail=f"enclosure [{float(res.lo):.6g}, {float(res.hi):.6g}] straddles eps",
    )


# ---------------------------------------------------------------------------
# Schauder prefix bounds


@dataclass(frozen=True)
class PrefixWitness:
    """Coefficients whose prefix combination beats M times the full one."""

    prefix: int
    coefficients: tuple[Fraction, ...]
    prefix_norm: spaces.NormValue
    full_norm: spaces.NormValue


@dataclass(frozen=True)
class SchauderReport:
    verdict: Verdict3
    method: str  # "exact-structural" | "exact-polyhedral" | "exact-gram" | "sampled"
    constant_lo: Fraction | None = None
    constant_hi: Fraction | None = None
    unbounded: bool = False


def _first_live_prefix(
    space: SpaceModel, vs: tuple[Vector, ...], kernel: list[Fraction]
) -> PrefixWitness:
    """First nonzero prefix of a cancelling combination (its full sum is 0)."""
    combo = Vector.zero()
    chosen = 0
    for k in range(len(vs)):
        combo = combo + vs[k].scale(kernel[k])
        if not combo.is_zero:
            chosen = k + 1
            break
    full = spaces.combine(kernel, vs)
    return PrefixWitness(
        chosen, tuple(kernel),
        spaces.norm(space, combo), spaces.norm(space, full),
    )


def is_M_schauder(
    space: SpaceModel,
    vectors: list[Vector] | tuple[Vector, ...],
    big_m: Fraction,
    rng_seed: int = 0,
) -> SchauderReport:
    """Is every prefix combination bounded by M times the full combination?"""
    big_m = Fraction(big_m)
    if big_m <= 0:
        raise ValueError("the prefix bound must be positive")
    vs = tuple(vectors)
    for v in vs:
        if v.is_zero:
            raise ValueError("prefix bounds are undefined for zero vectors")
    return _schauder_analyze(space, vs, big_m, rng_seed)


def basis_constant_estimate(
    space: SpaceModel,
    vectors: list[Vector] | tuple[Vector, ...],
    rng_seed: int = 0,
) -> SchauderReport:
    """Bracket the basis constant of the finite sequence (no threshold)."""
    vs = tuple(vectors)
    for v in vs:
        if v.is_zero:
            raise ValueError("the basis constant is undefined for zero vectors")
    return _schauder_analyze(space, vs, None, rng_seed)


def _schauder_analyze(
    space: SpaceModel,
    vs: tuple[Vector, ...],
    big_m: Fraction | None,
    rng_seed: int,
) -> SchauderReport:
    m = len(vs)
    if m == 0:
        verdict = Verdict3(HOLDS, None, None, detail="empty sequence")
        return SchauderReport(verdict, "exact-structural", Fraction(1), Fraction(1))
    if m == 1:
        return _constant_report(Fraction(1), Fraction(1), big_m, "exact-structural",
                                detail="single vector, prefix equals whole")

    rows = _coordinate_rows(vs)
    mat = _matrix(vs, rows)
    if linalg.rank([r[:] for r in mat]) < m:
        kernel = linalg.nullspace([r[:] for r in mat])[0]
        witness = _first_live_prefix(space, vs, kernel)
        verdict = Verdict3(FAILS, math.inf, None, witness,
                           detail="linearly dependent: a cancelling combination "
                                  "has a nonzero prefix")
        return SchauderReport(verdict, "exact-structural", unbounded=True)

    supports = [set(v.support) for v in vs]
    disjoint = all(
        not (supports[i] & supports[j]) for i in range(m) for j in range(i + 1, m)
    )
    if disjoint:
        return _constant_report(Fraction(1), Fraction(1), big_m, "exact-structural",
                                detail="disjoint supports: prefixes only drop terms")

    if space.exactness == "square":
        return _schauder_gram(vs, big_m)
    if space.exactness == "rational":
        report = _schauder_polyhedral(space, vs, mat, big_m)
        if report is not None:
            return report
    return _schauder_sampled(space, vs, big_m, rng_seed)


def _constant_report(
    c_lo: Fraction,
    c_hi: Fraction,
    big_m: Fraction | None,
    method: str,
    detail: str = "",
    witness: object | None = None,
) -> SchauderReport:
    if big_m is None:
        verdict = Verdict3(INCONCLUSIVE, None, None, None, detail or "estimate only")
        return SchauderReport(verdict, method, c_lo, c_hi)
    if c_hi is not None and c_hi <= big_m:
        margin = big_m - c_hi
        verdict = Verdict3(HOLDS, float(margin), margin, witness, detail)
        return SchauderReport(verdict, method, c_lo, c_hi)
    if c_lo is not None and c_lo > big_m:
        margin = big_m - c_lo  # negative slack: how far past the bound
        verdict = Verdict3(FAILS, float(margin), margin, witness, detail)
        return SchauderReport(verdict, method, c_lo, c_hi)
    verdict = Verdict3(INCONCLUSIVE, None, None, witness,
                       detail or "constant bracket straddles the bound")
    return SchauderReport(verdict, method, c_lo, c_hi)


def _prefix_gram_deficit(gram: linalg.Matrix, k: int, t_sq: Fraction) -> list[list[Fraction]]:
    """The matrix t^2 G - G_k whose PSD-ness bounds prefix k by t."""
    m = len(gram)
    out = [[t_sq * gram[i][j] for j in range(m)] for i in range(m)]
    for i in range(k):
        for j in range(k):
            out[i][j] -= gram[i][j]
    return out


def _schauder_gram(vs: tuple[Vector, ...], big_m: Fraction | None) -> SchauderReport:
    """Exact l2 decision: prefix bounds are PSD conditions on the Gram matrix."""
    m = len(vs)
    gram = _gram(vs)

    def psd_all(t: Fraction) -> tuple[bool, int | None, list[Fraction] | None]:
        t_sq = t * t
        for k in range(1, m):
            ok, w = linalg.psd_check(_prefix_gram_deficit(gram, k, t_sq))
            if not ok:
                return False, k, w
        return True, None, None

    if big_m is not None:
        ok, bad_k, w = psd_all(big_m)
        if not ok:
            assert bad_k is not None and w is not None
            prefix = spaces.combine(w[:bad_k] + [Fraction(0)] * (m - bad_k), vs)
            full = spaces.combine(w, vs)
            witness = PrefixWitness(bad_k, tuple(w),
                                    spaces.norm(spaces.L2, prefix),
                                    spaces.norm(spaces.L2, full))
            c_lo = _grid_constant_lower(psd_all, big_m)
            verdict = Verdict3(FAILS, float(big_m - c_lo) if c_lo else None,
                               big_m - c_lo if c_lo else None, witness,
                               detail=f"prefix {bad_k} escapes the bound (PSD witness)")
            return SchauderReport(verdict, "exact-gram", constant_lo=c_lo)

    grid = 1 << MARGIN_GRID_BITS
    # doubling phase: find a grid point where every prefix condition holds
    hi_units = grid  # t = 1
    while not psd_all(Fraction(hi_units, grid))[0]:
        hi_units *= 2
        if hi_units > grid << 40:
            raise ContractViolation("basis constant failed to bracket despite full rank")
    lo_units = hi_units // 2 if hi_units > grid else grid
    if hi_units == grid:
        c_lo = c_hi = Fraction(1)  # PSD already at t=1 and constants are >= 1
    else:
        while hi_units - lo_units > 1:
            mid = (hi_units + lo_units) // 2
            if psd_all(Fraction(mid, grid))[0]:
                hi_units = mid
            else:
                lo_units = mid
        c_lo, c_hi = Fraction(lo_units, grid), Fraction(hi_units, grid)
    return _constant_report(c_lo, c_hi, big_m, "exact-gram",
                            detail="constant bracketed on the dyadic grid")


def _grid_constant_lower(psd_all, big_m: Fraction) -> Fraction | None:
    """Largest grid point below big_m still violating some prefix condition."""
    grid = 1 << MARGIN_GRID_BITS
    units = int(big_m * grid)
    if units < grid:
        return None
    return Fraction(units, grid) if not psd_all(Fraction(units, grid))[0] else None


def _schauder_polyhedral(
    space: SpaceModel,
    vs: tuple[Vector, ...],
    mat: list[list[Fraction]],
    big_m: Fraction | None,
) -> SchauderReport | None:
    """Exact l1 / sup basis constant via extreme points of the unit ball.

    The constant is the maximum of prefix norms over {a : ||sum a_n x_n|| = 1},
    a convex maximum attained at an extreme point.  Returns None when the
    candidate count exceeds the enumeration budget.
    """
    m = len(vs)
    r = len(mat)
    sup = space.kind == "c0"
    if sup:
        count = math.comb(r, m) * (1 << (m - 1))
    else:
        count = math.comb(r, m - 1)
    if count > POLYHEDRAL_BUDGET:
        return None

    candidates: list[list[Fraction]] = []
    if sup:
        for rows_idx in itertools.combinations(range(r), m):
            sub = [mat[j] for j in rows_idx]
            if linalg.rank([row[:] for row in sub]) < m:
                continue
            for signs in itertools.product((1, -1), repeat=m - 1):
                rhs = [Fraction(1)] + [Fraction(s) for s in signs]
                a = linalg.solve([row[:] for row in sub], rhs)
                if a is None:
                    continue
                img = linalg.mat_vec(mat, a)
                if all(abs(t) <= 1 for t in img):
                    candidates.append(a)
    else:
        for rows_idx in itertools.combinations(range(r), m - 1):
            sub = [mat[j] for j in rows_idx]
            ker = linalg.nullspace([row[:] for row in sub])
            if len(ker) != 1:
                continue
            z = ker[0]
            img = linalg.mat_vec(mat, z)
            f = sum((abs(t) for t in img), Fraction(0))
            if f == 0:
                continue
            candidates.append([zi / f for zi in z])

    best: Fraction = Fraction(1)
    best_a: list[Fraction] | None = None
    best_k = m
    for a in candidates:
        partial = Vector.zero()
        for k in range(1, m):
            partial = partial + vs[k - 1].scale(a[k - 1])
            nk = spaces.norm(space, partial).exact
            assert nk is not None
            if nk > best:
                best, best_a, best_k = nk, a, k
    c = best  # the full combination has norm exactly 1 for every candidate
    witness = None
    if best_a is not None:
        prefix = spaces.combine(best_a[:best_k] + [Fraction(0)] * (m - best_k), vs)
        full = spaces.combine(best_a, vs)
        witness = PrefixWitness(best_k, tuple(best_a),
                                spaces.norm(space, prefix), spaces.norm(space, full))
    return _constant_report(c, c, big_m, "exact-polyhedral", witness=witness)


def _schauder_sampled(
    space: SpaceModel,
    vs: tuple[Vector, ...],
    big_m: Fraction | None,
    rng_seed: int,
) -> SchauderReport:
    """Probe coefficient patterns; can refute a prefix bound, never confirm it."""
    m = len(vs)
    rng = random.Random(rng_seed)
    patterns: list[list[Fraction]] = []
    if m <= 6:
        for signs in itertools.product((1, -1), repeat=m):
            patterns.append([Fraction(s) for s in signs])
    grid = 1 << 8
    for _ in range(64):
        patterns.append([Fraction(round(rng.gauss(0, 1) * grid), grid) for _ in range(m)])
    c_lo = Fraction(1)
    witness: PrefixWitness | None = None
    for a in patterns:
        full = spaces.combine(a, vs)
        nf = spaces.norm(space, full)
        if nf.hi == 0:
            continue
        partial = Vector.zero()
        for k in range(1, m):
            partial = partial + vs[k - 1].scale(a[k - 1])
            nk = spaces.norm(space, partial)
            # certified ratio lower bound: ||prefix||_lo / ||full||_hi
            if nk.lo > c_lo * nf.hi:
                c_lo = nk.lo / nf.hi
                witness = PrefixWitness(k, tuple(a), nk, nf)
    if big_m is not None and c_lo > big_m:
        verdict = Verdict3(FAILS, float(big_m - c_lo), big_m - c_lo, witness,
                           detail="sampled coefficients certify a violating prefix")
        return SchauderReport(verdict, "sampled", constant_lo=c_lo)
    verdict = Verdict3(INCONCLUSIVE, None, None, witness,
                       detail="sampling cannot certify prefix bounds, only refute")
    return SchauderReport(verdict, "sampled", constant_lo=c_lo)


# ---------------------------------------------------------------------------
# l1-basis equivalence


@dataclass(frozen=True)
class L1LowerBound:
    value: Fraction | None
    lo: Fraction
    hi: Fraction
    signs: tuple[int, ...]
    witness: SimplexWitness
    method: str


def l1_basis_lower_bound(
    space: SpaceModel, vectors: list[Vector] | tuple[Vector, ...]
) -> L1LowerBound:
    """Largest delta with ||sum a_n x_n|| >= delta * sum |a_n| for all a.

    By homogeneity and sign symmetry this is the least simplex minimum over
    the 2^(m-1) sign patterns fixing the first sign positive.
    """
    vs = tuple(vectors)
    m = len(vs)
    if m == 0:
        raise ValueError("need at least one vector")
    if m > 8:
        raise BudgetExceeded("sign-pattern enumeration capped at 8 vectors")
    best: SimplexMinResult | None = None
    best_signs: tuple[int, ...] = ()
    for signs in itertools.product((1, -1), repeat=m - 1):
        full_signs = (1,) + signs
        flipped = tuple(v if s == 1 else -v for v, s in zip(vs, full_signs))
        res = simplex_min_norm(space, flipped)
        if best is None or (res.hi, res.lo) < (best.hi, best.lo):
            best, best_signs = res, full_signs
    assert best is not None
    return L1LowerBound(best.exact, best.lo, best.hi, best_signs, best.witness, best.method)
