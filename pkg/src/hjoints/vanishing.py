"""Derivative-condition ledgers on flats and the handicap balancing dynamic.

For one flat F of dimension k, polynomials on F of degree at most n form a
space of dimension C(n+k, k); the functionals "order-gamma Hasse derivative
at joint p in the chart A" span its dual when gamma ranges over |gamma| <= n
at a single point. Processing joints on F in *priority order* -- pairs
(p, r) sorted by r - handicap(p), ties by a fixed preassigned joint order --
and within a pair the exponents |gamma| = r in decreasing lexicographic
order, Gaussian elimination assigns each pair a pivot count. The ledger
records those counts (their per-flat total is exactly C(n+k, k)), and, for
joints whose stored witness chart produced the rows, the exponent sets of
the pivots.

Combining per-edge exponent sets at a joint p: a d-variate exponent gamma
with |gamma| <= n is *admissible* when every edge projection (coordinates
outside the edge, ascending) lands in that edge's recorded set. Admissible
sets satisfy two counting laws checked here exactly: their total over all
joints is at least C(n+d, d) (the imposed vanishing conditions kill every
polynomial of degree <= n), and per joint a Loomis-Whitney product bound
relates |admissible| to the per-edge counts.

The handicap iteration mimics the equalization argument: repeatedly build
ledgers, score each joint by W'_p = min over witness tuples of
prod_e (B_{p,F}/n^dim F)^(w(e)/(|w|-1)) / W(p), sort, and decrement the
handicap of the block above the first gap exceeding delta. Termination by
delta-flatness, cycle detection, or a round cap are all legitimate,
reported outcomes.
"""

from __future__ import annotations

import hashlib
import math
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import (ChartMissing, DegreeOverflow, InconsistentLedgers,
                     NotConnected, NotCovering)
from .hypergraph import Hypergraph, WeightFunction
from .util import parallel_map


# ---------------------------------------------------------------------------
# monomials and Hasse derivatives
# ---------------------------------------------------------------------------

def monomials_upto(k: int, n: int) -> list[tuple[int, ...]]:
    """All exponent vectors in k variables of total degree <= n, graded order."""
    out = []
    for total in range(n + 1):
        out.extend(_compositions(total, k))
    return out


def _compositions(total: int, k: int) -> list[tuple[int, ...]]:
    if k == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, k - 1):
            out.append((first,) + rest)
    return out


def monomials_of_degree(k: int, r: int, *, decreasing_lex: bool = True):
    gammas = _compositions(r, k)
    return sorted(gammas, reverse=decreasing_lex)


def hasse_derivative(poly: dict, gamma, field) -> dict:
    """Monomial rule x^beta -> C(beta, gamma) x^(beta-gamma), linearly extended.

    `poly` maps exponent tuples to field coefficients.
    """
    gamma = tuple(gamma)
    out: dict = {}
    for beta, coeff in poly.items():
        if any(b < g for b, g in zip(beta, gamma)):
            continue
        mult = 1
        for b, g in zip(beta, gamma):
            mult *= comb(b, g)
        target = tuple(b - g for b, g in zip(beta, gamma))
        val = field.mul(coeff, field.from_int(mult))
        if target in out:
            val = field.add(out[target], val)
        if field.is_zero(val):
            out.pop(target, None)
        else:
            out[target] = val
    return out


# ---------------------------------------------------------------------------
# charts and functional rows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Chart:
    """Affine self-map of chart space: x -> u + sum_t x_t * col_t."""

    field: object
    k: int
    cols: tuple          # k columns, each a length-k tuple
    shift: tuple         # length-k

    @classmethod
    def translation(cls, field, shift) -> "Chart":
        k = len(shift)
        cols = tuple(tuple(field.one if i == j else field.zero
                           for i in range(k)) for j in range(k))
        return cls(field, k, cols, tuple(shift))

    @classmethod
    def identity(cls, field, k: int) -> "Chart":
        return cls.translation(field, (field.zero,) * k)

    def linear_form(self, coord: int):
        """(constant, per-variable coefficients) of output coordinate `coord`."""
        return self.shift[coord], tuple(col[coord] for col in self.cols)


class PullbackTable:
    """Coefficient vectors of (y^beta) composed with a chart, for |beta| <= n."""

    def __init__(self, chart: Chart, n: int):
        self.chart = chart
        self.n = n
        self.k = chart.k
        field = chart.field
        self.monomials = monomials_upto(self.k, n)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        dim = len(self.monomials)
        # transition[t][i] = index of monomial_i + e_t, or -1 past degree n
        self.transition = []
        for t in range(self.k):
            row = []
            for m in self.monomials:
                up = list(m)
                up[t] += 1
                row.append(self.index.get(tuple(up), -1))
            self.transition.append(row)
        self.columns: list[list] = [None] * dim
        const = [field.zero] * dim
        const[self.index[(0,) * self.k]] = field.one
        self.columns[self.index[(0,) * self.k]] = const
        for bi, beta in enumerate(self.monomials):
            if self.columns[bi] is not None:
                continue
            t = next(j for j, b in enumerate(beta) if b > 0)
            down = list(beta)
            down[t] -= 1
            prev = self.columns[self.index[tuple(down)]]
            self.columns[bi] = self._mul_linear(prev, t)

    def _mul_linear(self, vec, coord: int):
        field = self.chart.field
        c0, coeffs = self.chart.linear_form(coord)
        out = [field.zero] * len(vec)
        use_const = not field.is_zero(c0)
        for i, v in enumerate(vec):
            if field.is_zero(v):
                continue
            if use_const:
                out[i] = field.add(out[i], field.mul(v, c0))
            for t in range(self.k):
                ct = coeffs[t]
                if field.is_zero(ct):
                    continue
                j = self.transition[t][i]
                if j >= 0:
                    out[j] = field.add(out[j], field.mul(v, ct))
        return out

    def row(self, gamma) -> list:
        """The functional h -> coeff_gamma(h o chart) over the monomial basis."""
        gamma = tuple(gamma)
        if sum(gamma) > self.n:
            raise DegreeOverflow(sum(gamma), self.n)
        gi = self.index[gamma]
        return [col[gi] for col in self.columns]


def functional_row(chart: Chart, gamma, n: int) -> list:
    """One-off row extraction (tests and small audits)."""
    return PullbackTable(chart, n).row(gamma)


# ---------------------------------------------------------------------------
# per-flat ledgers
# ---------------------------------------------------------------------------

class _Echelon:
    def __init__(self, field, dim):
        self.field = field
        self.dim = dim
        self.rows: list[tuple[int, list]] = []  # (pivot column, reduced row)

    def insert(self, row) -> bool:
        field = self.field
        row = list(row)
        for pc, prow in self.rows:
            f = row[pc]
            if not field.is_zero(f):
                row = [field.sub(a, field.mul(f, b)) for a, b in zip(row, prow)]
        pivot = next((i for i, v in enumerate(row) if not field.is_zero(v)), None)
        if pivot is None:
            return False
        inv = field.inv(row[pivot])
        row = [field.mul(inv, v) for v in row]
        self.rows.append((pivot, row))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


@dataclass
class FlatLedger:
    """Elimination outcome for one flat under one handicap and degree cap."""

    flat: object
    k: int
    n: int
    joints: tuple[int, ...]            # global preassigned ranks on this flat
    counts: dict                       # rank -> B_{p,F}
    per_order: dict                    # rank -> {r: B^r}
    exponents: dict                    # rank -> tuple of recorded gammas
    chart_kind: dict                   # rank -> "witness" | "reference"
    context: tuple                     # shared (n, alpha fingerprint, field)

    def digest(self) -> str:
        payload = repr((self.flat.base, self.flat.dirs, self.k, self.n,
                        sorted(self.counts.items()),
                        sorted((r, sorted(v.items())) for r, v in
                               self.per_order.items()),
                        sorted((r, tuple(g)) for r, g in self.exponents.items()),
                        self.context))
        return hashlib.sha256(payload.encode()).hexdigest()


def build_flat_ledger(flat, joint_charts, alpha, n: int, *, context=None
                      ) -> FlatLedger:
    """Run the priority-order elimination on one flat.

    joint_charts: list of (global_rank, Chart, kind). Pairs (rank, r) are
    processed by (r - alpha[rank], rank); within a pair, exponents of degree
    r in decreasing lex order. Stops once the dual space is exhausted.
    """
    field = flat.field
    k = flat.dim
    dim = comb(n + k, k)
    tables = {rank: PullbackTable(chart, n)
              for rank, chart, _ in joint_charts}
    kinds = {rank: kind for rank, _, kind in joint_charts}
    pairs = sorted(((r, rank) for rank, _, _ in joint_charts
                    for r in range(n + 1)),
                   key=lambda pr: (pr[0] - alpha[pr[1]], pr[1]))
    store = _Echelon(field, dim)
    counts = {rank: 0 for rank, _, _ in joint_charts}
    per_order = {rank: {} for rank, _, _ in joint_charts}
    exponents = {rank: [] for rank, _, _ in joint_charts}
    for r, rank in pairs:
        if store.rank == dim:
            break
        table = tables[rank]
        for gamma in monomials_of_degree(k, r):
            if store.insert(table.row(gamma)):
                counts[rank] += 1
                per_order[rank][r] = per_order[rank].get(r, 0) + 1
                exponents[rank].append(gamma)
            if store.rank == dim:
                break
    if context is None:
        context = (n, tuple(sorted(alpha.items())), field.key())
    return FlatLedger(flat, k, n, tuple(r for r, _, _ in joint_charts),
                      counts, per_order,
                      {rank: tuple(g) for rank, g in exponents.items()},
                      kinds, context)


# ---------------------------------------------------------------------------
# configuration-level ledger sets
# ---------------------------------------------------------------------------

@dataclass
class ChosenTuple:
    assignment: tuple[int, ...]
    witness: object  # geometry.Witness


@dataclass
class LedgerSet:
    h: Hypergraph
    config: object
    n: int
    alpha: dict                      # rank -> int
    rank_order: tuple[int, ...]      # config point index per rank
    chosen: dict                     # rank -> ChosenTuple
    ledgers: dict                    # canonical Flat -> FlatLedger
    flat_by_edge: dict               # (rank, edge index) -> canonical Flat
    context: tuple

    def count(self, rank: int, flat) -> int:
        return self.ledgers[flat].counts.get(rank, 0)

    def point_of_rank(self, rank: int):
        return self.config.points[self.rank_order[rank]]


def preassigned_order(config) -> tuple[int, ...]:
    """Point indices sorted by canonical point encoding."""
    return tuple(sorted(range(len(config.points)),
                        key=lambda i: config.points[i]))


def default_chosen(h: Hypergraph, config, *, cap: int = 10000,
                   trials: int = 8) -> dict:
    """First enumerated witness tuple per joint, keyed by preassigned rank."""
    order = preassigned_order(config)
    chosen = {}
    for rank, idx in enumerate(order):
        tuples = config.tuples_at(h, idx, cap=cap, trials=trials)
        if not tuples:
            raise ChartMissing(f"stored point {idx} admits no witness tuple")
        wt = tuples[0]
        chosen[rank] = ChosenTuple(wt.assignment, wt.witness)
    return chosen


def build_ledger_set(h: Hypergraph, config, alpha=None, n: int = 4, *,
                     chosen=None, cap: int = 10000) -> LedgerSet:
    """Ledgers for every configuration flat carrying at least one joint."""
    order = preassigned_order(config)
    nj = len(order)
    if alpha is None:
        alpha = {r: 0 for r in range(nj)}
    else:
        alpha = {r: int(alpha[r]) for r in range(nj)}
    if chosen is None:
        chosen = default_chosen(h, config, cap=cap)
    field = config.field
    context = (n, tuple(sorted(alpha.items())), field.key())

    # canonical flat per (rank, edge) of the chosen tuples
    flat_by_edge = {}
    for rank in range(nj):
        ct = chosen[rank]
        for i in range(len(h.edges)):
            fl = config.flat_of(h.colors[i], ct.assignment[i])
            flat_by_edge[(rank, i)] = fl

    all_flats = []
    seen = set()
    for cls in config.classes:
        for fl in cls:
            if fl not in seen:
                seen.add(fl)
                all_flats.append(fl)

    def ledger_for(fl):
        joint_charts = []
        for rank in range(nj):
            point = config.points[order[rank]]
            if not fl.contains(point):
                continue
            chart = None
            for i, e in enumerate(h.edges):
                if flat_by_edge[(rank, i)] == fl:
                    ct = chosen[rank]
                    cols = tuple(
                        fl.coords_of_direction(ct.witness.columns[j - 1])
                        for j in range(1, h.d + 1) if j not in e)
                    chart = Chart(field, fl.dim, cols,
                                  fl.coords_of_point(point))
                    kind = "witness"
                    break
            if chart is None:
                chart = Chart.translation(field, fl.coords_of_point(point))
                kind = "reference"
            joint_charts.append((rank, chart, kind))
        if not joint_charts:
            return None
        return build_flat_ledger(fl, joint_charts, alpha, n, context=context)

    built = parallel_map(ledger_for, all_flats)
    ledgers = {fl: led for fl, led in zip(all_flats, built) if led is not None}
    return LedgerSet(h, config, n, alpha, order, chosen, ledgers,
                     flat_by_edge, context)


# ---------------------------------------------------------------------------
# admissible exponent sets and the two counting laws
# ---------------------------------------------------------------------------

def edge_projection(edge, gamma):
    """Coordinates of gamma outside the edge, ascending vertex order."""
    return tuple(g for j, g in enumerate(gamma, start=1) if j not in edge)


def edge_embedding(edge, gamma_e, d: int):
    """Inverse of edge_projection on the complement (edge slots get 0)."""
    out = [0] * d
    it = iter(gamma_e)
    for j in range(1, d + 1):
        if j not in edge:
            out[j - 1] = next(it)
    return tuple(out)


def assemble_point_exponents(h: Hypergraph, per_edge_sets, n: int
                             ) -> list[tuple[int, ...]]:
    """All |gamma| <= n whose projections lie in every per-edge set."""
    sets = [set(map(tuple, s)) for s in per_edge_sets]
    out = []
    for gamma in monomials_upto(h.d, n):
        if all(edge_projection(e, gamma) in sets[i]
               for i, e in enumerate(h.edges)):
            out.append(gamma)
    return out


def point_exponents(ls: LedgerSet, rank: int) -> list[tuple[int, ...]]:
    """Admissible exponents of one joint from its chosen-tuple ledgers."""
    h = ls.h
    per_edge = []
    for i in range(len(h.edges)):
        fl = ls.flat_by_edge[(rank, i)]
        ledger = ls.ledgers[fl]
        if ledger.chart_kind.get(rank) != "witness":
            raise ChartMissing(
                f"joint {rank} has no witness chart on its edge-{i} flat")
        per_edge.append(ledger.exponents[rank])
    return assemble_point_exponents(h, per_edge, ls.n)


def sum_of_conditions_check(ledger: FlatLedger) -> tuple[int, int]:
    """(sum of counts, C(n+k,k)); equal for every completed ledger."""
    return sum(ledger.counts.values()), comb(ledger.n + ledger.k, ledger.k)


def param_counting_check(ls: LedgerSet) -> tuple[int, int, int]:
    """(sum |admissible sets|, C(n+d,d), slack >= 0), all exact integers."""
    contexts = {led.context for led in ls.ledgers.values()}
    if len(contexts) > 1:
        raise InconsistentLedgers("ledgers built under different contexts")
    total = 0
    for rank in range(len(ls.rank_order)):
        total += len(point_exponents(ls, rank))
    need = comb(ls.n + ls.h.d, ls.h.d)
    return total, need, total - need


def lw_step_check(h: Hypergraph, w: WeightFunction, g_point_size: int,
                  g_edge_sizes, n: int) -> float:
    """log-space slack of |G_p|/(n+1)^d <= prod_e (|G_e|/(n+1)^(d-|e|))^sigma(e)."""
    if not w.covering:
        bad = min(j for j in range(1, h.d + 1) if w.vertex_loads[j - 1] < 1)
        raise NotCovering(bad, w.vertex_loads[bad - 1])
    denom = float(w.total - 1)
    if g_point_size == 0:
        return math.inf
    lhs = math.log2(g_point_size) - h.d * math.log2(n + 1)
    rhs = 0.0
    for i, e in enumerate(h.edges):
        sigma = float(w.weights[i]) / denom
        if sigma == 0.0:
            continue
        ge = g_edge_sizes[i]
        if ge == 0:
            return -math.inf
        rhs += sigma * (math.log2(ge) - (h.d - len(e)) * math.log2(n + 1))
    return rhs - lhs


# ---------------------------------------------------------------------------
# handicap dynamic and the certificate audit
# ---------------------------------------------------------------------------

def used_flat_connectivity(h: Hypergraph, config, *, cap: int = 10000) -> bool:
    """Union-find over joints sharing a flat used by some witness tuple."""
    order = preassigned_order(config)
    parent = list(range(len(order)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    by_flat: dict = {}
    for rank, idx in enumerate(order):
        for wt in config.tuples_at(h, idx, cap=cap):
            for i in range(len(h.edges)):
                fl = config.flat_of(h.colors[i], wt.assignment[i])
                if fl in by_flat:
                    ra, rb = find(by_flat[fl]), find(rank)
                    parent[ra] = rb
                else:
                    by_flat[fl] = rank
    roots = {find(r) for r in range(len(order))}
    return len(roots) <= 1


@dataclass
class HandicapResult:
    status: str                     # "flat" | "cycle" | "max-rounds"
    rounds: int
    alpha: dict
    b: dict                         # (rank, canonical Flat) -> Fraction
    lam: float
    W: dict                         # rank -> float
    wprime: dict                    # rank -> float at the final state
    spread: float                   # max W' - min W'
    max_gap: float                  # largest adjacent sorted-W' gap
    delta: float
    trace: list
    ledger_set: LedgerSet


def _score_ranks(ls: LedgerSet, h, w, W, sigma, cap):
    """Per rank: (W', S, min-product) from the current ledgers."""
    n = ls.n
    out = {}
    for rank, idx in enumerate(ls.rank_order):
        tuples = ls.config.tuples_at(h, idx, cap=cap)
        best = None
        best_s = None
        for wt in tuples:
            prod = 1.0
            ssum = 0
            for i in range(len(h.edges)):
                fl = ls.config.flat_of(h.colors[i], wt.assignment[i])
                bcount = ls.count(rank, fl)
                ssum += bcount
                if sigma[i] == 0.0:
                    continue
                if bcount == 0:
                    prod = 0.0
                else:
                    prod *= (bcount / n ** fl.dim) ** sigma[i]
            if best is None or prod < best or (prod == best and ssum < best_s):
                best, best_s = prod, ssum
        out[rank] = (best / W[rank], best_s, best)
    return out


def handicap_iteration(h: Hypergraph, w: WeightFunction, config, *,
                       W=None, n: int = 24, c0: float = 1.0,
                       delta: float | None = None, max_rounds: int = 200,
                       cap: int = 10000) -> HandicapResult:
    """Decrement-the-leaders dynamic driving the W' scores delta-flat."""
    if not w.covering:
        bad = min(j for j in range(1, h.d + 1) if w.vertex_loads[j - 1] < 1)
        raise NotCovering(bad, w.vertex_loads[bad - 1])
    if not used_flat_connectivity(h, config, cap=cap):
        raise NotConnected("configuration is not connected through used flats")
    order = preassigned_order(config)
    nj = len(order)
    if W is None:
        W = {rank: 1.0 / (nj * math.factorial(h.d)) for rank in range(nj)}
    else:
        W = {rank: float(W[rank]) for rank in range(nj)}
    if any(v <= 0 for v in W.values()):
        raise ValueError("W must be strictly positive")
    if delta is None:
        delta = c0 / math.log(n)
    denom = float(w.total - 1)
    sigma = [float(we) / denom for we in w.weights]
    chosen = default_chosen(h, config, cap=cap)
    alpha = {rank: 0 for rank in range(nj)}
    seen_states: OrderedDict = OrderedDict()  # ring of the last 1024 states
    trace = []
    status = "max-rounds"
    rounds = 0
    ls = None
    scores = None
    for rounds in range(max_rounds + 1):
        ls = build_ledger_set(h, config, alpha, n, chosen=chosen, cap=cap)
        scores = _score_ranks(ls, h, w, W, sigma, cap)
        ranked = sorted(range(nj), key=lambda r: (-scores[r][0], -scores[r][1]))
        wps = [scores[r][0] for r in ranked]
        gaps = [wps[i] - wps[i + 1] for i in range(nj - 1)]
        max_gap = max(gaps, default=0.0)
        cut = next((i for i, g in enumerate(gaps) if g > delta), None)
        trace.append({"round": rounds,
                      "alpha": dict(alpha),
                      "sorted_wprime": list(wps),
                      "max_gap": max_gap,
                      "decremented": (ranked[:cut + 1] if cut is not None
                                      else [])})
        if cut is None:
            status = "flat"
            break
        shift = min(alpha.values())
        state = tuple(alpha[r] - shift for r in range(nj))
        if state in seen_states:
            status = "cycle"
            break
        seen_states[state] = rounds
        if len(seen_states) > 1024:
            seen_states.popitem(last=False)
        for r in ranked[:cut + 1]:
            alpha[r] -= 1
    b = {}
    for fl, ledger in ls.ledgers.items():
        for rank, count in ledger.counts.items():
            b[(rank, fl)] = Fraction(count, n ** fl.dim)
    wprime = {rank: scores[rank][0] for rank in range(nj)}
    lam = math.fsum(wprime.values()) / nj
    spread = max(wprime.values()) - min(wprime.values())
    final_gap = trace[-1]["max_gap"]
    return HandicapResult(status, rounds, alpha, b, lam, W, wprime, spread,
                          final_gap, delta, trace, ls)


@dataclass
class AuditReport:
    cond1_pass: bool
    cond2_pass: bool
    cond1_worst: float      # max over (p, tuple) of factor*W(p) - product
    cond1_margin: float     # min over (p, tuple) of product - W(p)
    cond2_worst: float      # max over flats of sum(b) - 1/(dim F)!
    wprime_spread: float
    lam: float
    details: dict


def key_inequality_audit(h: Hypergraph, w: WeightFunction, config, b, W, *,
                         cond1_factor: float = 0.8, cond2_tol: float = 0.1,
                         cap: int = 10000) -> AuditReport:
    """Check a certificate (b values keyed by (rank, flat), target weights W)
    against both sides of the target inequality."""
    exponent = 1.0 / float(w.total - 1)
    order = preassigned_order(config)
    cond1_worst = -math.inf
    cond1_margin = math.inf
    wprime = {}
    for rank, idx in enumerate(order):
        tuples = config.tuples_at(h, idx, cap=cap)
        best = math.inf
        for wt in tuples:
            prod = 1.0
            for i in range(len(h.edges)):
                fl = config.flat_of(h.colors[i], wt.assignment[i])
                bval = float(b.get((rank, fl), 0))
                if w.weights[i] == 0:
                    continue
                prod *= bval ** float(w.weights[i])
            prod **= exponent
            best = min(best, prod)
            cond1_worst = max(cond1_worst, cond1_factor * W[rank] - prod)
            cond1_margin = min(cond1_margin, prod - W[rank])
        wprime[rank] = best / W[rank]
    by_flat: dict = {}
    for (rank, fl), val in b.items():
        by_flat.setdefault(fl, []).append(float(val))
    cond2_worst = -math.inf
    for fl, vals in by_flat.items():
        cond2_worst = max(cond2_worst,
                          math.fsum(vals) - 1.0 / math.factorial(fl.dim))
    spread = max(wprime.values()) - min(wprime.values())
    lam = math.fsum(wprime.values()) / len(wprime)
    return AuditReport(cond1_worst <= 0.0, cond2_worst <= cond2_tol,
                       cond1_worst, cond1_margin, cond2_worst, spread, lam,
                       {"wprime": wprime})


def bounded_domain_threshold(h: Hypergraph, config, flat, target_rank: int,
                             n: int, *, max_gap: int | None = None,
                             cap: int = 10000) -> int:
    """Smallest handicap gap g with B_{p,F}(alpha_p = -g, n) = 0, by sweep."""
    if max_gap is None:
        max_gap = 2 * n + 4
    nj = len(preassigned_order(config))
    chosen = default_chosen(h, config, cap=cap)
    for g in range(max_gap + 1):
        alpha = {r: 0 for r in range(nj)}
        alpha[target_rank] = -g
        ls = build_ledger_set(h, config, alpha, n, chosen=chosen, cap=cap)
        if ls.count(target_rank, flat) == 0:
            return g
    raise RuntimeError(f"no vanishing gap found up to {max_gap}")
