import math

import pytest

import polylink

HOUSE = [(0, 0), (4, 0), (4, 3), (2, 1), (0, 3)]
PENTAGON = [(math.cos(2 * math.pi * k / 5), math.sin(2 * math.pi * k / 5)) for k in range(5)]


def bar_vertex_energy(pts):
    # Term-by-term sum over bars (p_i, p_{i+1}) and the vertices off each bar.
    n = len(pts)
    total = 0.0
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(n):
            if j in (i, (i + 1) % n):
                continue
            p = pts[j]
            d = math.dist(p, a) + math.dist(p, b) - math.dist(a, b)
            total += 1.0 / (d * d)
    return total


@pytest.mark.parametrize("pts", [PENTAGON, HOUSE, [(0, 0), (3, 0), (3, 2), (1, 2.5), (-0.5, 1.5)]])
def test_elliptic_energy_term_by_term(pts):
    assert polylink.elliptic_energy(pts) == pytest.approx(bar_vertex_energy(pts), rel=1e-12)


def test_modified_energy_zero_on_convex():
    assert polylink.modified_energy(PENTAGON) == 0.0
    assert polylink.log_modified_energy(PENTAGON) == -math.inf
    # One reflex vertex at p_3: theta_3 = -pi/2.
    turns = polylink.turn_angles(HOUSE)
    assert sum(turns) == pytest.approx(2 * math.pi)
    reflex = [t for t in turns if t < 0]
    assert len(reflex) == 1
    expected = math.log(polylink.bump(-reflex[0])) + math.log(bar_vertex_energy(HOUSE))
    assert polylink.log_modified_energy(HOUSE) == pytest.approx(expected, rel=1e-12)


def test_classify_and_round_trip():
    c = polylink.classify(PENTAGON)
    assert c["embedded"] and c["convex_ccw"]
    assert c["winding"] == pytest.approx(2 * math.pi)
    bow = polylink.classify([(0, 0), (2, 2), (2, 0), (0, 2)])
    assert not bow["embedded"]

    canon = polylink.canonicalize(HOUSE)
    # Bar 0 runs from the last vertex (the origin) to the first.
    lengths = [math.dist(canon[i - 1], canon[i]) for i in range(5)]
    pts, defect = polylink.vertices_from_turn_angles(lengths, polylink.turn_angles(canon))
    assert defect < 1e-12
    for p, q in zip(pts, canon):
        assert math.dist(p, q) < 1e-12


def test_lengths_predicates():
    assert polylink.is_feasible([2, 2, 2, 1])
    assert not polylink.is_feasible([10, 1, 1, 1])
    assert not polylink.is_generic([6, 4, 2, 4])
    assert polylink.straight_line_sign_vectors([6, 4, 2, 4]) == [[1, -1, 1, -1]]
    lo = polylink.min_turn_angle([2, 2, 2, 1])
    hi = polylink.max_turn_angle([2, 2, 2, 1])
    assert -math.pi <= lo["value"] < hi["value"] <= math.pi
    with pytest.raises(polylink.InvalidInput):
        polylink.min_turn_angle([1, 1], [])


def test_convexify_house():
    t = polylink.convexify(HOUSE)
    assert t["status"] == "converged_convex"
    logs = [r["log_E"] for r in t["records"]]
    assert all(b < a for a, b in zip(logs, logs[1:]))
    assert polylink.classify(t["final_vertices"])["convex_ccw"]
    with pytest.raises(polylink.NotEmbedded):
        polylink.convexify([(0, 0), (2, 2), (2, 0), (0, 2)])


def test_region_topology_disks():
    lengths = [1, 1.1, 0.9, 1.2, 0.8]
    for region in ("convex", "embedded"):
        t = polylink.region_topology(lengths, 120, region)
        assert (t["components"], t["euler_characteristic"]) == (1, 1)
    with pytest.raises(ValueError):
        polylink.region_topology(lengths, 10, "nowhere")
