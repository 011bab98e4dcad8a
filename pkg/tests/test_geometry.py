import random

import pytest

from hjoints import (GF, Flat, Hypergraph, detect_joints,
                     enumerate_witness_tuples, intersect_flats, witness_check)
from hjoints.errors import DimensionMismatch, PointNotOnFlat
from hjoints import linalg

F = GF()
K3 = Hypergraph(3, ((1, 2), (1, 3), (2, 3)), (1, 1, 1))


def fl(base, dirs, field=F, d=None):
    d = d if d is not None else len(base)
    return Flat(field, d, tuple(field.from_int(x) for x in base),
                [tuple(field.from_int(x) for x in row) for row in dirs])


def line(base, direction, field=F):
    return fl(base, [direction], field=field)


def test_canonicalization_idempotent_and_equal():
    a = fl((1, 2, 3), [(1, 1, 0), (0, 0, 1)])
    b = fl((1, 2, 7), [(2, 2, 0), (1, 1, 5)])  # same plane, messier data
    assert a == b
    assert hash(a) == hash(b)
    c = Flat(a.field, a.d, a.base, a.dirs)  # canonical(canonical) = canonical
    assert c.base == a.base and c.dirs == a.dirs


def test_contains_and_chart_coords():
    plane = fl((0, 0, 5), [(1, 0, 0), (0, 1, 0)])
    assert plane.contains((F.from_int(3), F.from_int(9), F.from_int(5)))
    assert not plane.contains((F.from_int(0), F.from_int(0), F.from_int(4)))
    coords = plane.coords_of_point((F.from_int(3), F.from_int(9), F.from_int(5)))
    assert plane.point_at(coords) == (3, 9, 5)


def test_intersect_two_hyperplanes_is_line():
    h1 = fl((0, 0, 0), [(1, 0, 0), (0, 1, 0)])  # z = 0
    h2 = fl((0, 0, 0), [(1, 0, 0), (0, 0, 1)])  # y = 0
    inter = intersect_flats([h1, h2])
    assert inter is not None and inter.dim == 1
    assert inter == line((0, 0, 0), (1, 0, 0))


def test_intersect_parallel_hyperplanes_empty():
    h1 = fl((0, 0, 0), [(1, 0, 0), (0, 1, 0)])
    h2 = fl((0, 0, 1), [(1, 0, 0), (0, 1, 0)])
    assert intersect_flats([h1, h2]) is None


def test_intersect_coordinate_planes_gives_axis():
    x0 = fl((0, 0, 0), [(0, 1, 0), (0, 0, 1)])  # x = 0
    y0 = fl((0, 0, 0), [(1, 0, 0), (0, 0, 1)])  # y = 0
    inter = intersect_flats([x0, y0])
    assert inter == line((0, 0, 0), (0, 0, 1))


def test_witness_three_concurrent_independent_lines():
    p = (F.zero, F.zero, F.zero)
    flats = (line((0, 0, 0), (1, 0, 0)),
             line((0, 0, 0), (0, 1, 0)),
             line((0, 0, 0), (1, 1, 1)))
    # oracle: det[(1,0,0),(0,1,0),(1,1,1)] = 1, so a witness must exist
    wit = witness_check(K3, p, flats)
    assert wit is not None
    matrix = [list(col) for col in zip(*wit.columns)]
    assert not F.is_zero(linalg.det(matrix, F))


def test_witness_coplanar_lines_rejected():
    p = (F.zero, F.zero, F.zero)
    flats = (line((0, 0, 0), (1, 0, 0)),
             line((0, 0, 0), (0, 1, 0)),
             line((0, 0, 0), (1, 1, 0)))
    # determinant is identically zero: any v_j assignment is coplanar
    assert witness_check(K3, p, flats) is None
    assert witness_check(K3, p, flats, deterministic=True) is None


def test_witness_validation_errors():
    p = (F.zero, F.zero, F.zero)
    plane = fl((0, 0, 0), [(1, 0, 0), (0, 1, 0)])
    with pytest.raises(DimensionMismatch):
        witness_check(K3, p, (plane,) * 3)
    off = line((0, 0, 1), (1, 0, 0))
    good = line((0, 0, 0), (0, 1, 0))
    with pytest.raises(PointNotOnFlat):
        witness_check(K3, p, (off, good, good))


def _random_affine(rng, d, field):
    while True:
        m = [[field.rand(rng) for _ in range(d)] for _ in range(d)]
        if not field.is_zero(linalg.det(m, field)):
            shift = tuple(field.rand(rng) for _ in range(d))
            return m, shift


def _apply_affine(m, shift, flat):
    field = flat.field
    nb = tuple(field.add(a, b)
               for a, b in zip(linalg.mat_vec(m, flat.base, field), shift))
    nd = [linalg.mat_vec(m, row, field) for row in flat.dirs]
    return Flat(field, flat.d, nb, nd)


def test_witness_invariant_under_affine_maps():
    rng = random.Random(2)
    p = (F.zero, F.zero, F.zero)
    yes = (line((0, 0, 0), (1, 0, 0)), line((0, 0, 0), (0, 1, 0)),
           line((0, 0, 0), (1, 1, 1)))
    no = (line((0, 0, 0), (1, 0, 0)), line((0, 0, 0), (0, 1, 0)),
          line((0, 0, 0), (1, 1, 0)))
    for flats, expect in ((yes, True), (no, False)):
        for _ in range(4):
            m, shift = _random_affine(rng, 3, F)
            q = tuple(F.add(a, b) for a, b in zip(linalg.mat_vec(m, p, F), shift))
            moved = tuple(_apply_affine(m, shift, flp) for flp in flats)
            got = witness_check(K3, q, moved) is not None
            assert got is expect


def test_joints_of_flats_direct_criterion_agreement():
    # pattern whose edge complements partition [6]: witness iff the three
    # 2-flats pass through p, dims sum to 6, and their directions span
    h = Hypergraph(6, ((1, 2, 3, 4), (1, 2, 5, 6), (3, 4, 5, 6)), (1, 1, 1))
    rng = random.Random(9)
    for trial in range(6):
        m, shift = _random_affine(rng, 6, F)
        p = tuple(shift)
        spans = [((0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)),
                 ((0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0)),
                 ((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0))]
        if trial % 2 == 0:
            flats = [
                _apply_affine(m, shift, fl((0,) * 6, rows)) for rows in spans]
            expect = True
        else:
            # degenerate: all three inside one hyperplane
            degen = [((0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)),
                     ((0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 1, 0)),
                     ((1, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0))]
            flats = [
                _apply_affine(m, shift, fl((0,) * 6, rows)) for rows in degen]
            expect = False
        got = witness_check(h, p, flats) is not None
        # direct criterion
        stacked = [row for flp in flats for row in flp.dirs]
        direct = (all(flp.contains(p) for flp in flats)
                  and sum(flp.dim for flp in flats) == 6
                  and linalg.rank(stacked, F, 6) == 6)
        assert got is direct is expect


def test_five_cycle_witness_and_equivalent_condition():
    c5 = Hypergraph.cycle(5)
    rng = random.Random(4)
    m, shift = _random_affine(rng, 5, F)
    p = tuple(shift)
    flats = []
    for e in c5.edges:
        rows = [tuple(F.one if k == j - 1 else F.zero for k in range(5))
                for j in range(1, 6) if j not in e]
        flats.append(_apply_affine(m, shift, fl((0,) * 5, rows)))
    assert witness_check(c5, p, flats) is not None
    # second oracle: F_i cap F_{i+2} is a line inside F_{i+1}, and the five
    # lines are linearly independent (indices along the cycle order)
    cyc = {}
    for idx, e in enumerate(c5.edges):
        lo, hi = e
        pos = lo if (lo % 5) + 1 == hi else hi  # edge {i, i+1} -> i
        cyc[pos] = flats[idx]
    directions = []
    for i in range(1, 6):
        a = cyc[i]
        b = cyc[(i + 1) % 5 + 1]  # i+2 with wraparound
        mid = cyc[i % 5 + 1]
        inter = intersect_flats([a, b])
        assert inter is not None and inter.dim == 1
        assert all(mid.contains(inter.point_at((t,)))
                   for t in (F.one, F.from_int(7)))
        directions.append(inter.dirs[0])
    assert linalg.rank(directions, F, 5) == 5


def _axis_config(a, b):
    from hjoints import axis_parallel_from_functions
    f1 = {(0,): a}
    f2 = {(0,): b}
    return axis_parallel_from_functions(2, [(1,), (2,)], [f1, f2], 1)


def test_enumerate_tuples_counts_multiset_copies():
    from hjoints import axis_parallel_pattern
    h = axis_parallel_pattern(2, [(1,), (2,)])
    cfg = _axis_config(2, 2)
    assert cfg.class_sizes() == (2, 2)
    tuples = enumerate_witness_tuples(h, cfg.points[0], cfg)
    assert len(tuples) == 4  # 2 x 2 instance combinations, all witnesses


def test_enumerate_tuples_simple_and_empty():
    from hjoints import axis_parallel_pattern
    h = axis_parallel_pattern(2, [(1,), (2,)])
    cfg = _axis_config(1, 1)
    assert len(enumerate_witness_tuples(h, cfg.points[0], cfg)) == 1
    off_point = (F.from_int(5), F.from_int(5))
    assert enumerate_witness_tuples(h, off_point, cfg) == []


def test_detect_joints_axis_grid():
    from hjoints import axis_parallel_from_functions, axis_parallel_pattern
    h = axis_parallel_pattern(2, [(1,), (2,)])
    ones = {(v,): 1 for v in range(2)}
    cfg = axis_parallel_from_functions(2, [(1,), (2,)], [ones, ones], 2)
    # candidates auto-generated from flat intersections
    joints = detect_joints(h, cfg)
    assert len(joints) == 4
    assert set(joints) == set(cfg.points)
