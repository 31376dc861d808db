"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Everything here is exact; the only tolerances are wall-clock caps.
"""

import copy
import json
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

from ectower.chain import LatticeGroup, match_deck, quotient, refine, separates
from ectower.cli import main
from ectower.curves import EllipticCurve, Point, ProductVariety
from ectower.fields import QQ, PrimeField
from ectower.iso import verify_witness, witness_search
from ectower.torsion import torsion_subgroup_Q
from ectower.towers import (
    Tower,
    TwistedMulMap,
    deck_group,
    fiber,
    full_torsion_field,
    realize_map,
)

from oracles import brute_force_witness_exists, nagell_lutz_torsion

F5 = PrimeField(5)
E5 = EllipticCurve(F5, 0, 1)
E5B = EllipticCurve(F5, 0, 2)
E1 = EllipticCurve(QQ, 0, 1)
EMX = EllipticCurve(QQ, -1, 0)
E17 = EllipticCurve(QQ, 0, 17)
O = Point.infinity()


def qpt(x, y):
    return Point(QQ.element(x), QQ.element(y))


@contextmanager
def criterion(num, description):
    try:
        yield
    except BaseException:
        print("ACCEPTANCE %d: FAIL - %s" % (num, description))
        raise
    print("ACCEPTANCE %d: PASS - %s" % (num, description))


def quiet_main(argv):
    """Run the CLI without spamming the acceptance log."""
    import contextlib
    import io

    with contextlib.redirect_stdout(io.StringIO()):
        return main(argv)


def test_criterion_1_step_deck_groups():
    with criterion(1, "deck group of the level-i map is (Z/i)^2 for i = 2, 3, 4"):
        e = Point(F5.element(0), F5.element(1))
        for i in (2, 3, 4):
            start = time.perf_counter()
            K = full_torsion_field(E5, i)
            g = deck_group(TwistedMulMap(i, e, E5), field=K)
            elapsed = time.perf_counter() - start
            assert g.invariant_factors == (i, i)
            assert elapsed < 60.0, "level %d took %.1fs" % (i, elapsed)


def test_criterion_2_composite_deck_groups():
    with criterion(2, "composite deck group matches (Z/i!)^2 for i = 1, 2, 3"):
        e = Point(F5.element(0), F5.element(1))
        t = Tower(E5, O, [O, e, E5.scalar_mul(2, e), e])
        for i in (1, 2, 3):
            assert match_deck(t, i) is True


def test_criterion_3_fiber_cardinality():
    with criterion(3, "20 random fibers of [n]_e have n^(2g) points, n in {2,3}, g in {1,2}"):
        product = ProductVariety([E5, E5B])
        for variety, g in ((E5, 1), (product, 2)):
            center = variety.identity()
            for n in (2, 3):
                K = full_torsion_field(variety, n)
                f = TwistedMulMap(n, center, variety)
                realized = realize_map(f, K)
                pts = realized.variety.enumerate_points()
                rng = random.Random(100 * g + n)
                for _ in range(20):
                    y = pts[rng.randrange(len(pts))]
                    z = realized(y)
                    assert len(fiber(f, z, field=K)) == n ** (2 * g)


def _solvable_construction(rng, N):
    """Torsion differences with a witness by construction: d_2 absorbs the sum."""
    torsion = torsion_subgroup_Q(EMX).points
    t_top = torsion[rng.randrange(len(torsion))]
    diffs = [torsion[rng.randrange(len(torsion))] for _ in range(N)]
    acc = EMX.scalar_mul(math.factorial(N), t_top)
    for i in range(1, N + 1):
        if i == 2:
            continue
        acc = EMX.add(acc, EMX.scalar_mul(math.factorial(i - 1) * (i - 1), diffs[i - 1]))
    diffs[1] = EMX.negate(acc)
    base_points = [torsion[rng.randrange(len(torsion))] for _ in range(N)]
    a = Tower(EMX, O, [O] + base_points)
    b = Tower(EMX, O, [O] + [EMX.sub(p, d) for p, d in zip(base_points, diffs)])
    return a, b, diffs


def test_criterion_4_recurrence_witnesses():
    with criterion(4, "50 torsion-translation constructions: witness found, brute force agrees"):
        torsion = list(torsion_subgroup_Q(EMX).points)
        assert torsion_subgroup_Q(EMX).group.invariant_factors == (2, 2)
        rng = random.Random(2024)
        for _ in range(50):
            a, b, diffs = _solvable_construction(rng, 4)
            w = witness_search(a, b)
            assert w is not None, "constructed pair lost its witness"
            report = verify_witness(a, b, w)
            assert report.ok, report.failures
            # exhaustive cross-check over all 4^4 translation sequences
            assert brute_force_witness_exists(
                torsion,
                diffs,
                add=EMX.add,
                neg=EMX.negate,
                scalar=EMX.scalar_mul,
            )


def test_criterion_5_corollary_family(tmp_path):
    with criterion(5, "five towers over y^2 = x^3 + 17: all 10 pairs certified non-iso"):
        start = time.perf_counter()
        job = tmp_path / "corollary.json"
        job.write_text(
            json.dumps(
                {
                    "curve": {"curve": {"field": {"field": "Q"}, "a": "0", "b": "17"}},
                    "point": {"x": "-2", "y": "3"},
                    "count": 5,
                }
            )
        )
        out = tmp_path / "report.json"
        code = quiet_main(
            ["corollary-demo", "--input", str(job), "--output", str(out), "--N", "6", "--json"]
        )
        elapsed = time.perf_counter() - start
        assert code == 0
        report = json.loads(out.read_text())
        assert report["all_non_isomorphic"] is True
        assert len(report["pairs"]) == 10
        assert all(p["status"] == "non_iso" for p in report["pairs"])
        assert all(p["certificate"]["level"] == 1 for p in report["pairs"])
        assert report["base_point_certificate"]["certificate"] == "non_torsion"
        assert len(report["classes"]) == 5
        assert elapsed < 10.0, "took %.1fs" % elapsed


def test_criterion_6_chain_axioms():
    with criterion(6, "refine/separates on 100 seeded cases; inverse system compatible to level 5"):
        rng = random.Random(6)
        for _ in range(100):
            levels = sorted(rng.sample(range(1, 9), rng.randint(1, 4)))
            j = refine(levels)
            lcm = math.lcm(*[math.factorial(i) for i in levels])
            assert math.factorial(j) % lcm == 0
            assert all(j >= i for i in levels)
        B = 20
        for _ in range(100):
            rank = rng.choice((2, 4))
            vec = [rng.randint(-B, B) for _ in range(rank)]
            if all(v == 0 for v in vec):
                vec[0] = rng.randint(1, B)
            i = separates(vec, B)
            assert i <= B + 1
            m = math.factorial(i)
            assert any(v % m != 0 for v in vec)
            for lower in range(1, i):
                assert all(v % math.factorial(lower) == 0 for v in vec)
        lattice = LatticeGroup(2)
        for i in range(1, 5):
            upper = quotient(lattice, i + 1)
            lower = quotient(lattice, i)
            assert {upper.project(v, i) for v in upper.elements()} == set(lower.elements())
        top = quotient(lattice, 5)
        for v in top.elements():
            via4 = tuple(x % math.factorial(3) for x in top.project(v, 4))
            assert top.project(v, 3) == via4


def test_criterion_7_torsion_ground_truth():
    with criterion(7, "torsion subgroups: (Z/2)^2, Z/6, trivial, matching the oracle"):
        cases = (
            (EMX, (-1, 0), (2, 2)),
            (E1, (0, 1), (6,)),
            (E17, (0, 17), ()),
        )
        for curve, (a, b), factors in cases:
            sub = torsion_subgroup_Q(curve)
            assert sub.group.invariant_factors == factors
            got = {
                None
                if P.is_infinity
                else (Fraction(P.x.value.num, P.x.value.den), Fraction(P.y.value.num, P.y.value.den))
                for P in sub.points
            }
            assert got == nagell_lutz_torsion(a, b)
            assert all(c.verify() for c in sub.certificates)


# --- criterion 8: certificate soundness under perturbation ----------------------
#
# A perturbation can, by accident, turn one true certificate into a different
# but equally true one (on y^2 = x^3 - x, bumping the x of (0,0) gives the
# order-2 point (1,0)).  No sound verifier can reject a true claim, so every
# perturbation below is first classified by an independent fraction-based
# oracle: claims made false MUST fail verification, claims that stay true
# MUST keep verifying.


def _bump(value):
    """Change a serialized coordinate: 'n/d' or 'n' gets its numerator bumped."""
    parts = value.split("/")
    parts[0] = str(int(parts[0]) + 1)
    return "/".join(parts)


MAZUR = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)


def _opt(obj):
    if obj.get("inf"):
        return None
    return (Fraction(obj["x"]), Fraction(obj["y"]))


def _curve_ab(variety_json):
    body = variety_json["curve"]
    assert body["field"] == {"field": "Q"}
    return Fraction(body["a"]), Fraction(body["b"])


def _oracle_on_curve(a, b, P):
    from oracles import on_curve

    return on_curve(a, b, P)


def _oracle_order(a, b, P):
    from oracles import o_order

    return o_order(a, b, P, cap=13)


def _true_torsion(obj):
    a, b = _curve_ab(obj["variety"])
    P = _opt(obj["point"])
    if not _oracle_on_curve(a, b, P):
        return False
    return _oracle_order(a, b, P) == obj["order"]


def _true_non_torsion(obj):
    from oracles import o_mul

    a, b = _curve_ab(obj["variety"])
    P = _opt(obj["point"])
    if not _oracle_on_curve(a, b, P):
        return False
    if tuple(e["m"] for e in obj["evidence"]) != MAZUR:
        return False
    for entry in obj["evidence"]:
        mult = _opt(entry["multiple"])
        if mult is None or o_mul(a, b, entry["m"], P) != mult:
            return False
    return True


def _oracle_tower(tower_json):
    """(a, b, points) when the tower is well-formed, else None."""
    a, b = _curve_ab(tower_json["base"])
    o = _opt(tower_json["o"])
    pts = [_opt(p) for p in tower_json["e"]]
    if not pts or pts[0] != o:
        return None
    for p in pts:
        if not _oracle_on_curve(a, b, p):
            return None
    return a, b, pts


def _true_non_iso(obj):
    from oracles import o_add, o_neg

    ta = _oracle_tower(obj["towers"][0])
    tb = _oracle_tower(obj["towers"][1])
    if ta is None or tb is None:
        return False
    a, b, ea = ta
    _, _, eb = tb
    level = obj["level"]
    if not 1 <= level < len(ea) or len(ea) != len(eb):
        return False
    diff = o_add(a, b, ea[level], o_neg(eb[level]))
    if _opt(obj["difference"]) != diff:
        return False
    inner = obj["non_torsion"]
    if _opt(inner["point"]) != diff:
        return False
    return _true_non_torsion(inner)


def _true_witness(obj):
    from oracles import o_add, o_mul, o_neg

    ta = _oracle_tower(obj["towers"][0])
    tb = _oracle_tower(obj["towers"][1])
    if ta is None or tb is None:
        return False
    a, b, ea = ta
    _, _, eb = tb
    N = len(ea) - 1
    ts = obj["translations"]
    if len(ts) != N + 1:
        return False
    pts = [_opt(t["point"]) for t in ts]
    if pts[0] is not None:
        return False
    for t, P in zip(ts, pts):
        if not _oracle_on_curve(a, b, P):
            return False
        if _oracle_order(a, b, P) != t["order"]:
            return False
    for i in range(1, N + 1):
        d = o_add(a, b, ea[i], o_neg(eb[i]))
        rhs = o_add(a, b, o_mul(a, b, i, pts[i]), o_mul(a, b, i - 1, d))
        if pts[i - 1] != rhs:
            return False
    return True


_TRUTH = {
    "torsion": _true_torsion,
    "non_torsion": _true_non_torsion,
    "non_iso": _true_non_iso,
    "tower_iso": _true_witness,
}


def _find_certs(obj):
    found = []
    if isinstance(obj, dict):
        if isinstance(obj.get("certificate"), str):
            found.append(obj)
        for value in obj.values():
            found.extend(_find_certs(value))
    elif isinstance(obj, list):
        for item in obj:
            found.extend(_find_certs(item))
    return found


def _zone_is_true(zone):
    """Ground truth of every certificate in the zone, by the oracle alone."""
    certs = _find_certs(zone)
    assert certs
    for cert in certs:
        try:
            if not _TRUTH[cert["certificate"]](cert):
                return False
        except (KeyError, ValueError, ZeroDivisionError, TypeError):
            return False
    return True


def _emit_reports(tmp_path):
    """Run the certificate-producing workflows once each."""
    jobs = {
        "corollary": (
            "corollary-demo",
            {
                "curve": {"curve": {"field": {"field": "Q"}, "a": "0", "b": "17"}},
                "point": {"x": "-2", "y": "3"},
                "count": 3,
                "N": 4,
            },
        ),
        "torsion_test": (
            "torsion",
            {
                "curve": {"curve": {"field": {"field": "Q"}, "a": "0", "b": "1"}},
                "point": {"x": "2", "y": "3"},
            },
        ),
        "subgroup": (
            "torsion",
            {"curve": {"curve": {"field": {"field": "Q"}, "a": "-1", "b": "0"}}},
        ),
        "witness": (
            "iso",
            {
                "towers": [
                    {
                        "base": {"curve": {"field": {"field": "Q"}, "a": "-1", "b": "0"}},
                        "o": {"inf": True},
                        "e": [
                            {"inf": True},
                            {"x": "0", "y": "0"},
                            {"x": "1", "y": "0"},
                            {"x": "0", "y": "0"},
                            {"x": "-1", "y": "0"},
                        ],
                        "N": 4,
                    },
                    {
                        "base": {"curve": {"field": {"field": "Q"}, "a": "-1", "b": "0"}},
                        "o": {"inf": True},
                        "e": [
                            {"inf": True},
                            {"x": "-1", "y": "0"},
                            {"x": "1", "y": "0"},
                            {"x": "1", "y": "0"},
                            {"inf": True},
                        ],
                        "N": 4,
                    },
                ]
            },
        ),
    }
    reports = {}
    for name, (command, payload) in jobs.items():
        job = tmp_path / ("%s_job.json" % name)
        job.write_text(json.dumps(payload))
        out = tmp_path / ("%s_report.json" % name)
        code = quiet_main([command, "--input", str(job), "--output", str(out), "--json"])
        assert code == 0, "emission of %s failed" % name
        reports[name] = json.loads(out.read_text())
    assert reports["witness"]["status"] == "iso"
    return reports


def _verify_exit(tmp_path, report):
    blob = tmp_path / "to_verify.json"
    blob.write_text(json.dumps(report))
    return quiet_main(["verify", "--input", str(blob), "--json"])


def _coordinate_paths(obj, path=()):
    """Paths of every affine coordinate in certificate objects."""
    out = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            if key in ("x", "y") and isinstance(value, str):
                out.append(path + (key,))
            else:
                out.extend(_coordinate_paths(value, path + (key,)))
    elif isinstance(obj, list):
        for i, item in enumerate(obj):
            out.extend(_coordinate_paths(item, path + (i,)))
    return out


def _apply_bump(report, path):
    tampered = copy.deepcopy(report)
    node = tampered
    for step in path[:-1]:
        node = node[step]
    node[path[-1]] = _bump(node[path[-1]])
    return tampered


_ZONE_KEY = {
    "corollary": "pairs",
    "torsion_test": "certificate",
    "subgroup": "points",
    "witness": "certificate",
}


def test_criterion_8_certificate_soundness(tmp_path):
    with criterion(8, "all emitted certificates verify; every falsifying perturbation fails"):
        reports = _emit_reports(tmp_path)
        for name, report in reports.items():
            assert _verify_exit(tmp_path, report) == 0, "%s did not verify" % name
        falsified = still_true = 0
        # single-coordinate perturbations in every certificate-bearing report
        for name, report in reports.items():
            zone = report[_ZONE_KEY[name]]
            paths = _coordinate_paths(zone)
            assert paths, "no coordinates to perturb in %s" % name
            for path in paths:
                tampered = copy.deepcopy(report)
                tampered[_ZONE_KEY[name]] = _apply_bump(zone, path)
                exit_code = _verify_exit(tmp_path, tampered)
                if _zone_is_true(tampered[_ZONE_KEY[name]]):
                    # the bump accidentally produced another true certificate
                    assert exit_code == 0, "%s true-claim tamper at %s rejected" % (name, path)
                    still_true += 1
                else:
                    assert exit_code != 0, "%s tamper at %s passed" % (name, path)
                    falsified += 1
        # single-translation perturbations t_i of the witness
        emx_torsion = [
            {"inf": True},
            {"x": "0", "y": "0"},
            {"x": "1", "y": "0"},
            {"x": "-1", "y": "0"},
        ]
        witness = reports["witness"]["certificate"]
        for level in range(len(witness["translations"])):
            original = witness["translations"][level]["point"]
            for replacement in emx_torsion:
                if replacement == original:
                    continue
                tampered = copy.deepcopy(reports["witness"])
                tampered["certificate"]["translations"][level]["point"] = replacement
                exit_code = _verify_exit(tmp_path, tampered)
                if _zone_is_true(tampered["certificate"]):
                    assert exit_code == 0
                    still_true += 1
                else:
                    assert exit_code != 0, "witness tamper at t_%d passed" % level
                    falsified += 1
        assert falsified >= 40, "only %d falsifying perturbations exercised" % falsified
