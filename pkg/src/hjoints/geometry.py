"""Flats (affine subspaces) over an exact field, and joint-witness detection.

A Flat is stored canonically: its direction space in reduced row echelon
form, and its basepoint reduced against the directions so every pivot
coordinate of the basepoint is zero. Canonicalization is idempotent and two
flats are equal iff the canonical data agree, which makes flats hashable
multiset members.

Witness detection implements the definition of a pattern joint directly:
a point p with flats (F_e) indexed by the pattern's edges admits an
invertible affine A with A(0) = p and A(span{unit_j : j not in e}) = F_e
iff p lies on every F_e, dim F_e = d - |e|, and there are linearly
independent vectors v_1..v_d with

    v_j in W_j := intersection of dir(F_e) over all edges e not containing j

(W_j is the whole space when j lies in every edge). Existence of such a
transversal is decided by random sampling over the field (false-negative
probability at most (d/p)^trials over GF(p), by Schwartz-Zippel on the
degree-d determinant), with an exact symbolic-determinant fallback for
d <= 6.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .errors import (BudgetExceeded, CapExceeded, DimensionMismatch,
                     PointNotOnFlat)
from .hypergraph import Hypergraph


class Flat:
    """Affine subspace of F^d in canonical (rref directions, reduced base) form."""

    __slots__ = ("field", "d", "base", "dirs", "_pivots", "_hash", "_ann")

    def __init__(self, field, d, base, dirs):
        self.field = field
        self.d = d
        red, pivots = linalg.rref(dirs, field, d) if dirs else ([], [])
        bp = list(base)
        for row, c in zip(red, pivots):
            f = bp[c]
            if not field.is_zero(f):
                bp = [field.sub(a, field.mul(f, b)) for a, b in zip(bp, row)]
        self.base = tuple(bp)
        self.dirs = tuple(red)
        self._pivots = tuple(pivots)
        self._hash = hash((field.key(), d, self.base, self.dirs))
        self._ann = None

    @property
    def dim(self) -> int:
        return len(self.dirs)

    @property
    def codim(self) -> int:
        return self.d - len(self.dirs)

    def contains(self, point) -> bool:
        v = list(linalg.vec_sub(point, self.base, self.field))
        for row, c in zip(self.dirs, self._pivots):
            f = v[c]
            if not self.field.is_zero(f):
                v = [self.field.sub(a, self.field.mul(f, b)) for a, b in zip(v, row)]
        return all(self.field.is_zero(a) for a in v)

    def coords_of_point(self, point):
        """Chart coordinates of a point on the flat (pivot-column reads)."""
        if not self.contains(point):
            raise ValueError("point not on flat")
        diff = linalg.vec_sub(point, self.base, self.field)
        return tuple(diff[c] for c in self._pivots)

    def coords_of_direction(self, vec):
        """Chart coordinates of a vector in the direction space."""
        return tuple(vec[c] for c in self._pivots)

    def point_at(self, coords):
        out = list(self.base)
        for t, row in zip(coords, self.dirs):
            if not self.field.is_zero(t):
                out = [self.field.add(a, self.field.mul(t, b)) for a, b in zip(out, row)]
        return tuple(out)

    def direction_annihilator(self):
        """Cached basis of functionals vanishing on the direction space."""
        if self._ann is None:
            self._ann = annihilator(self.dirs, self.d, self.field)
        return self._ann

    def equations(self):
        """(rows N, rhs) with the flat equal to {x : N x = rhs}."""
        normals = self.direction_annihilator()
        rhs = linalg.mat_vec(normals, self.base, self.field) if normals else ()
        return normals, rhs

    def apply_linear(self, matrix_rows) -> "Flat":
        """Image under a linear map given by rows (target_dim x d)."""
        nb = linalg.mat_vec(matrix_rows, self.base, self.field)
        nd = [linalg.mat_vec(matrix_rows, row, self.field) for row in self.dirs]
        return Flat(self.field, len(matrix_rows), nb, nd)

    def __eq__(self, other):
        return (isinstance(other, Flat) and self.field == other.field
                and self.d == other.d and self.base == other.base
                and self.dirs == other.dirs)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Flat(dim={self.dim}, d={self.d}, base={self.base})"

    def to_dict(self):
        f = self.field
        return {"basepoint": [f.fmt(x) for x in self.base],
                "directions": [[f.fmt(x) for x in row] for row in self.dirs]}

    @classmethod
    def from_dict(cls, field, d, data) -> "Flat":
        base = tuple(field.parse(x) for x in data["basepoint"])
        dirs = [tuple(field.parse(x) for x in row) for row in data["directions"]]
        return cls(field, d, base, dirs)


def annihilator(dir_rows, d, field):
    """Basis of the linear functionals vanishing on the row span."""
    if not dir_rows:
        return linalg.identity_rows(d, field)
    return linalg.nullspace(dir_rows, field, d)


def spans_intersection(span_list, d, field):
    """Basis of the intersection of row spans (whole space for empty input)."""
    constraints = []
    for rows in span_list:
        constraints.extend(annihilator(rows, d, field))
    if not constraints:
        return linalg.identity_rows(d, field)
    return linalg.nullspace(constraints, field, d)


def intersect_flats(flats: Sequence[Flat]) -> Optional[Flat]:
    """Canonical intersection of flats in one ambient space, or None if empty."""
    assert flats, "need at least one flat"
    field, d = flats[0].field, flats[0].d
    rows, rhs = [], []
    for fl in flats:
        assert fl.field == field and fl.d == d, "mismatched ambient space"
        n, r = fl.equations()
        rows.extend(n)
        rhs.extend(r)
    if not rows:
        return Flat(field, d, flats[0].base, linalg.identity_rows(d, field))
    particular = linalg.solve(rows, rhs, field)
    if particular is None:
        return None
    dirs = linalg.nullspace(rows, field, d)
    return Flat(field, d, particular, dirs)


# ---------------------------------------------------------------------------
# witness machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """Columns v_1..v_d of the linear part of a witnessing affine map."""

    point: tuple
    columns: tuple  # d column vectors, each a length-d tuple


@dataclass(frozen=True)
class WitnessTuple:
    """A qualifying assignment edge -> flat instance at one point."""

    assignment: tuple[int, ...]  # per edge: index into the edge color's class
    witness: Witness


def direction_constraints(h: Hypergraph, flats: Sequence[Flat], cache=None):
    """W_j bases: intersect dir(F_e) over edges e avoiding vertex j.

    The optional cache maps (j, flat set) to a basis; enumeration reuses it
    heavily since candidate assignments share flats.
    """
    field, d = flats[0].field, h.d
    spaces = []
    for j in range(1, d + 1):
        relevant = frozenset(flats[i] for i, e in enumerate(h.edges)
                             if j not in e)
        key = (j, relevant)
        if cache is not None and key in cache:
            spaces.append(cache[key])
            continue
        if not relevant:
            space = linalg.identity_rows(d, field)
        else:
            constraints = []
            for fl in relevant:
                constraints.extend(fl.direction_annihilator())
            space = (linalg.nullspace(constraints, field, d) if constraints
                     else linalg.identity_rows(d, field))
        if cache is not None:
            cache[key] = space
        spaces.append(space)
    return spaces


def _sample_transversal(spaces, d, field, rng):
    cols = []
    for basis in spaces:
        v = [field.zero] * d
        for row in basis:
            t = field.rand(rng)
            if not field.is_zero(t):
                v = [field.add(a, field.mul(t, b)) for a, b in zip(v, row)]
        cols.append(tuple(v))
    return cols


def _transversal_det_poly_nonzero(spaces, d, field) -> bool:
    """Exact existence test: is det(sum_t c_{j,t} basis_j[t])_{j} nonzero
    as a polynomial in the c variables? Subset DP over rows; monomials are
    one basis choice per column, so the state stays small for slim spaces.
    """
    full = (1 << d) - 1
    # dp maps row-subset -> {monomial(tuple of t per processed column): coeff}
    dp = {0: {(): field.one}}
    for col in range(d):
        basis = spaces[col]
        if not basis:
            return False
        ndp: dict[int, dict[tuple, object]] = {}
        for subset, poly in dp.items():
            for i in range(d):
                bit = 1 << i
                if subset & bit:
                    continue
                # sign: parity of rows below i already used
                sign_flips = bin(subset >> (i + 1)).count("1")
                for t, vec in enumerate(basis):
                    entry = vec[i]
                    if field.is_zero(entry):
                        continue
                    if sign_flips % 2:
                        entry = field.neg(entry)
                    tgt = ndp.setdefault(subset | bit, {})
                    for mono, coeff in poly.items():
                        key = mono + (t,)
                        val = field.mul(coeff, entry)
                        if key in tgt:
                            tgt[key] = field.add(tgt[key], val)
                        else:
                            tgt[key] = val
        dp = {s: {m: c for m, c in poly.items() if not field.is_zero(c)}
              for s, poly in ndp.items()}
        dp = {s: poly for s, poly in dp.items() if poly}
        if not dp:
            return False
    return bool(dp.get(full))


def witness_check(h: Hypergraph, point, flats: Sequence[Flat], *,
                  trials: int = 8, seed: int = 0, rng: random.Random | None = None,
                  deterministic: str | bool = "auto",
                  space_cache=None) -> Optional[Witness]:
    """Decide whether (point, flats) forms a pattern joint; return a witness.

    flats is indexed like h.edges. Raises DimensionMismatch / PointNotOnFlat
    for malformed input; returns None when no witness exists (exactly, when
    the symbolic fallback ran; otherwise up to the (d/p)^trials sampling
    bound).
    """
    d = h.d
    for i, (e, fl) in enumerate(zip(h.edges, flats)):
        if fl.dim != d - len(e):
            raise DimensionMismatch(i, d - len(e), fl.dim)
        if not fl.contains(point):
            raise PointNotOnFlat(i)
    field = flats[0].field
    spaces = direction_constraints(h, flats, cache=space_cache)
    if any(not s for s in spaces):
        return None  # some v_j is forced to zero
    stacked = [row for basis in spaces for row in basis]
    if linalg.rank(stacked, field, d) < d:
        return None  # the W_j do not jointly span, so no transversal exists
    if rng is None:
        rng = random.Random(seed)
    if deterministic is True:
        if not _transversal_det_poly_nonzero(spaces, d, field):
            return None
        # a witness exists; sampling finds one almost immediately
        for _ in range(max(64, 8 * trials)):
            cols = _sample_transversal(spaces, d, field, rng)
            if not field.is_zero(linalg.det([list(c) for c in zip(*cols)], field)):
                return Witness(tuple(point), tuple(cols))
        raise RuntimeError("sampling failed despite a nonzero symbolic determinant")
    for _ in range(trials):
        cols = _sample_transversal(spaces, d, field, rng)
        matrix = [list(row) for row in zip(*cols)]  # columns -> matrix
        if not field.is_zero(linalg.det(matrix, field)):
            return Witness(tuple(point), tuple(cols))
    if deterministic == "auto" and d <= 6:
        if _transversal_det_poly_nonzero(spaces, d, field):
            for _ in range(max(64, 8 * trials)):
                cols = _sample_transversal(spaces, d, field, rng)
                if not field.is_zero(linalg.det([list(c) for c in zip(*cols)], field)):
                    return Witness(tuple(point), tuple(cols))
        return None
    return None


def enumerate_witness_tuples(h: Hypergraph, point, config, *, cap: int = 10000,
                             trials: int = 8, seed: int = 0) -> list[WitnessTuple]:
    """All qualifying flat-instance assignments at one point (the set T_p).

    Multiset copies count as distinct instances; geometry is deduplicated so
    identical canonical tuples share one witness check. Raises CapExceeded
    when more than `cap` qualifying tuples exist.
    """
    candidates = []
    for i, e in enumerate(h.edges):
        cls = config.classes[h.colors[i] - 1]
        cands = [k for k, fl in enumerate(cls) if fl.contains(point)]
        if not cands:
            return []
        candidates.append(cands)
    rng = random.Random(seed)
    out: list[WitnessTuple] = []
    geometry_cache: dict[tuple, Optional[Witness]] = {}
    space_cache: dict = {}
    for assignment in itertools.product(*candidates):
        flats = tuple(config.classes[h.colors[i] - 1][k]
                      for i, k in enumerate(assignment))
        key = flats
        if key not in geometry_cache:
            # negatives here rest on the (d/p)^trials sampling bound; the
            # union-rank filter inside witness_check catches the bulk exactly
            geometry_cache[key] = witness_check(
                h, point, flats, trials=trials, rng=rng, deterministic=False,
                space_cache=space_cache)
        wit = geometry_cache[key]
        if wit is not None:
            out.append(WitnessTuple(tuple(assignment), wit))
            if len(out) > cap:
                raise CapExceeded(cap)
    return out


def has_witness_tuple(h: Hypergraph, point, config, *, trials: int = 8,
                      seed: int = 0) -> bool:
    """Early-exit variant: is T_p nonempty?"""
    candidates = []
    for i, e in enumerate(h.edges):
        cls = config.classes[h.colors[i] - 1]
        cands = [k for k, fl in enumerate(cls) if fl.contains(point)]
        if not cands:
            return False
        candidates.append(cands)
    rng = random.Random(seed)
    seen: dict[tuple, bool] = {}
    space_cache: dict = {}
    for assignment in itertools.product(*candidates):
        flats = tuple(config.classes[h.colors[i] - 1][k]
                      for i, k in enumerate(assignment))
        if flats not in seen:
            seen[flats] = witness_check(h, point, flats, trials=trials,
                                        rng=rng, deterministic=False,
                                        space_cache=space_cache) is not None
        if seen[flats]:
            return True
    return False


def candidate_points_from_flats(config, *, budget: int = 200000):
    """Zero-dimensional intersections of flat subsets, up to a work budget."""
    flats = []
    for cls in config.classes:
        flats.extend(cls)
    # dedupe identical copies; geometry only matters here
    flats = list(dict.fromkeys(flats))
    d = config.d
    points = []
    seen = set()
    work = 0
    for size in range(2, d + 1):
        for combo in itertools.combinations(flats, size):
            work += 1
            if work > budget:
                raise BudgetExceeded(budget)
            inter = combo[0]
            for fl in combo[1:]:
                inter = intersect_flats([inter, fl])
                if inter is None:
                    break
            if inter is not None and inter.dim == 0:
                if inter.base not in seen:
                    seen.add(inter.base)
                    points.append(inter.base)
    return points


def detect_joints(h: Hypergraph, config, candidate_points=None, *,
                  budget: int = 200000, trials: int = 8, seed: int = 0):
    """Candidates with nonempty witness-tuple set, sorted canonically."""
    if candidate_points is None:
        candidate_points = candidate_points_from_flats(config, budget=budget)
    joints = [p for p in candidate_points
              if has_witness_tuple(h, p, config, trials=trials, seed=seed)]
    return sorted(set(joints))
