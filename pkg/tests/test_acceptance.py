"""Acceptance criteria 1-9.

Each test records one ``criterion N: PASS|FAIL`` line with its timing and
budget; the lines are collected in the pytest terminal summary.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from math import comb

import pytest

from boroczky import b12, b15
from boroczky import ellcurve as ec
from boroczky.containment import PointSet, check_containment, in_symbolic_power, line_product_witness, vanishing_order
from boroczky.polyalg import PolyRing, buchberger, divide, normalize
from boroczky.projgeom import ProjLine, ProjPoint, census, join, meet
from boroczky.scalar import QQ, FunctionField, PrimeField, QuadExt, QuotientExt, is_square

RESULTS: list[str] = []  # printed by the terminal summary hook in conftest


def report(n: int, ok: bool, elapsed: float, budget: float, detail: str) -> None:
    ok = ok and elapsed <= budget
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s of {budget:g}s) {detail}"
    RESULTS.append(line)
    assert ok, line


def test_criterion_1_symbolic_identities():
    t = time.perf_counter()
    rep = b12.verify_symbolic_identities()
    el = time.perf_counter() - t
    zeros = {k: v.is_zero() for k, v in rep.values.items()}
    ok = set(zeros) == {"L_z", "S_z", "det_MOQ", "det_MOR"} and all(zeros.values())
    report(1, ok, el, 1.0, f"zero: {zeros}")


def test_criterion_2_generic_census():
    t = time.perf_counter()
    rng = random.Random(2024)
    params = [b12.ParameterTriple.parse("(1:1),(1:2),(1:3)")] + [b12.random_generic(rng) for _ in range(100)]
    bad = []
    for m in params:
        res = b12.build(m)
        cfg = res.configuration
        if not res.cls.generic or cfg.census != {3: 19, 2: 9} or len(cfg.lines) != 12:
            bad.append(str(m))
    el = time.perf_counter() - t
    report(2, not bad, el, 10.0, f"{len(params)} parameter triples, failures {bad[:3]}")


EXPECTED_STRATA = {
    "D1Smooth": (7, {3: 6, 2: 3}),
    "D1Double": (4, {3: 1, 2: 3}),
    "D2Menelaus": (6, {3: 4, 2: 3}),
}

TABLE = {
    "A": ["AC", "AB", "AF"], "B": ["AB", "BC", "BD"], "C": ["AC", "BC", "CP"], "D": ["AC", "BD", "ED"],
    "E": ["AB", "EF", "ED", "NG", "CP", "MO"], "F": ["BC", "AF", "EF"], "G": ["AF", "BD", "NG"],
    "H": ["BD", "EF", "HJ"], "I": ["BC", "ED", "IK"], "J": ["AF", "ED", "HJ"], "K": ["AC", "EF", "IK"],
    "L": ["AB", "HJ", "IK"], "M": ["BD", "IK", "MO"], "N": ["AC", "HJ", "NG"], "O": ["BC", "HJ", "MO"],
    "P": ["AF", "IK", "CP"],
}  # fmt: skip


def test_criterion_3_degeneration_strata():
    t = time.perf_counter()
    samples = b12.sample_parameters()
    problems = []
    for tag, (nl, cen) in EXPECTED_STRATA.items():
        res = b12.build(samples[tag])
        got = (res.cls.tag, len(res.configuration.lines), res.configuration.census)
        if got != (tag, nl, cen):
            problems.append(f"{tag}: {got}")
    res = b12.build(samples["D1Triple"])
    if (res.cls.tag, len(res.configuration.lines)) != ("D1Triple", 3):
        problems.append("D1Triple")
    rep = b12.degeneration_report(samples["D3Sextuple"])
    labelled = [r for r in rep.result.configuration.points if r.label]
    lab_census: dict[int, int] = {}
    for r in labelled:
        lab_census[r.mult] = lab_census.get(r.mult, 0) + 1
    if rep.result.multiplicity("E") != 6:
        problems.append("E not sextuple")
    if lab_census != {6: 1, 3: 15} or rep.census != {6: 1, 3: 15, 2: 6}:
        problems.append(f"D3 census {rep.census}, labelled {lab_census}")
    if rep.incidence != TABLE:
        problems.append("D3 table differs")
    el = time.perf_counter() - t
    report(3, not problems, el, 5.0, f"problems {problems}")


def test_criterion_4_condition_ideal():
    t = time.perf_counter()
    R = b15.ab_ring()
    a, b = R.gens()
    gb = buchberger(b15.condition_polynomials())
    target = normalize((a - 1) ** 2 * b15.f_poly(a, b))
    ok = len(gb) == 1 and normalize(gb[0]) == target
    el = time.perf_counter() - t
    report(4, ok, el, 60.0, f"generator {gb[0] if gb else None}")


def test_criterion_5_b15_builds():
    t = time.perf_counter()
    sym = b15.build(b15.symbolic_parameters())
    sym_ok = all(sym.facts.values()) and len(sym.conditions) == 8 and all(sym.conditions)
    num = b15.build(b15.solve_b(2)[0])
    cfg = num.configuration
    num_ok = cfg.field == QuadExt(QQ, 15) and len(cfg.lines) == 15 and cfg.census == {3: 31, 2: 12}
    el = time.perf_counter() - t
    report(5, sym_ok and num_ok, el, 30.0, f"symbolic facts+conditions {sym_ok}; a=2 census {cfg.census}")


def test_criterion_6_no_rational_b15():
    t = time.perf_counter()
    rp = ec.rational_points(ec.E, 1000)
    cert = ec.certify_no_rational_b15(1000)
    pulls_ok = all(p["verdict"].startswith("rejected") for p in cert["pullbacks"])
    ok = len(rp.points) == 4 and rp.agree and pulls_ok and cert["verdict"] == "NoRationalB15"
    el = time.perf_counter() - t
    report(6, ok, el, 60.0, f"{len(rp.points)} points, Nagell-Lutz agrees {rp.agree}, verdict {cert['verdict']}")


def test_criterion_7_d3_contained():
    t = time.perf_counter()
    cfg = b12.build(b12.sample_parameters()["D3Sextuple"]).configuration
    ps = PointSet.from_configuration(cfg)
    v = check_containment(ps, 3, 2, candidates=[line_product_witness(cfg)])
    el = time.perf_counter() - t
    mod_t = v.timings.get("modular", 0.0)
    ok = v.status == "Contained" and v.certification == "exact" and mod_t <= 120
    report(7, ok, el, 1800.0, f"{len(ps)} points: {v.status} ({v.certification}), modular pass {mod_t:.1f}s")


def test_criterion_8_b12_not_contained():
    t = time.perf_counter()
    cfg = b12.build(b12.ParameterTriple.parse("(1:1),(1:2),(1:3)")).configuration
    ps = PointSet.from_configuration(cfg)
    W = line_product_witness(cfg)
    orders_ok = len(ps) == 19 and all(vanishing_order(W, P, limit=3) >= 3 for P in ps.points)
    v = check_containment(ps, 3, 2, candidates=[W])
    mod_out = [p for p, s in v.modular.items() if s.startswith("NotContained")]
    ok = (
        orders_ok
        and W.total_degree() == 12
        and v.status == "NotContained"
        and v.witness_source == "candidate 0"
        and len(mod_out) >= 3
        and v.certification in ("exact", "modular-certified")
        and in_symbolic_power(v.witness, ps, 3)
    )
    el = time.perf_counter() - t
    report(8, ok, el, 3600.0, f"{v.status} ({v.certification}), {len(mod_out)} primes agree")


# ----------------------------------------------------------------------
# criterion 9: property suites
# ----------------------------------------------------------------------


def _scalar_cases(n: int, rng: random.Random) -> int:
    GF = PrimeField(10007)
    fields = [
        (QQ, lambda: QQ.coerce(Fraction(rng.randint(-99, 99), rng.randint(1, 30)))),
        (GF, lambda: GF.coerce(rng.randrange(10007))),
    ]
    K = QuadExt(QQ, 15)
    fields.append((K, lambda: K.coerce(Fraction(rng.randint(-20, 20), rng.randint(1, 9))) + K.coerce(rng.randint(-9, 9)) * K.gen()))
    G = QuotientExt(PrimeField(7), "t^3 + t + 1", "t")
    fields.append((G, lambda: sum((G.coerce(rng.randrange(7)) * G.gen() ** k for k in range(3)), G.coerce(0))))
    Fa = FunctionField(QQ, "a")
    fields.append((Fa, lambda: (Fa.coerce(rng.randint(-3, 3)) + Fa.gen() * rng.randint(-3, 3)) / (Fa.gen() + rng.randint(1, 4))))
    fails = 0
    for i in range(n):
        F, gen = fields[i % len(fields)]
        x, y, z = gen(), gen(), gen()
        ok = (
            (x + y) + z == x + (y + z)
            and (x * y) * z == x * (y * z)
            and x + y == y + x
            and x * y == y * x
            and x * (y + z) == x * y + x * z
            and x + F.coerce(0) == x
            and x * F.coerce(1) == x
            and (x - x).is_zero()
            and (x.is_zero() or x * x.inverse() == 1)
        )
        fails += not ok
    return fails


def _projgeom_cases(n: int, rng: random.Random) -> int:
    fails = 0

    def rpt():
        while True:
            c = [rng.randint(-9, 9) for _ in range(3)]
            if any(c):
                return c

    for _ in range(n):
        p, q, r = ProjPoint(rpt()), ProjPoint(rpt()), ProjPoint(rpt())
        if p in (q, r) or q == r:
            continue
        L = join(p, q)
        dual = meet(ProjLine(list(p.coords)), ProjLine(list(q.coords)))
        ok = p.on(L) and q.on(L) and dual.raw == L.raw
        if not r.on(L):
            ok = ok and meet(L, join(p, r)) == p
        lines = list({ProjLine(rpt()) for _ in range(rng.randint(2, 8))})
        cfg = census(lines)
        ok = ok and sum(comb(k, 2) * c for k, c in cfg.census.items()) == comb(len(lines), 2)
        fails += not ok
    return fails


def _polyalg_cases(n: int, rng: random.Random) -> int:
    R = PolyRing(("x", "y", "z"), QQ)

    def rp(terms, deg):
        f = R.zero()
        for _ in range(terms):
            f = f + R.monomial(tuple(rng.randint(0, deg) for _ in range(3)), rng.randint(-5, 5))
        return f

    fails = 0
    for _ in range(n):
        f = rp(5, 4)
        ds = [d for d in (rp(3, 2) for _ in range(3)) if not d.is_zero()]
        if not ds:
            continue
        qs, r = divide(f, ds)
        total = r
        for q, d in zip(qs, ds):
            total = total + q * d
        gb = buchberger(ds)
        fails += not (total == f and buchberger(gb) == gb)
    return fails


def _ellcurve_cases(n: int, rng: random.Random) -> int:
    fails = done = 0
    while done < n:
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 15))
        q = a * (1 + a) * (4 + a + a * a)
        if a in (0, 1) or q == 0:
            continue
        r = is_square(QQ(q))
        if r is not None:
            A, T = QQ(a), r
        else:
            K = QuadExt(QQ, q)
            A, T = K.coerce(a), K.sqrt(q)
        P = ec.map_aT_to_XY(A, T)
        a2, b = ec.map_aT_to_ab(A, T)
        ok = (
            ec.E.contains(P)
            and ec.map_XY_to_aT(P) == (A, T)
            and ec.f_ab(a2, b).is_zero()
            and ec.map_ab_to_aT(a2, b) == (A, T)
        )
        fails += not ok
        done += 1
    return fails


def test_criterion_9_property_suites():
    t = time.perf_counter()
    rng = random.Random(9)
    counts = {
        "scalar": (10_000, _scalar_cases(10_000, rng)),
        "projgeom": (1_000, _projgeom_cases(1_000, rng)),
        "polyalg": (100, _polyalg_cases(100, rng)),
        "ellcurve": (50, _ellcurve_cases(50, rng)),
    }
    el = time.perf_counter() - t
    ok = all(f == 0 for _, f in counts.values())
    detail = ", ".join(f"{k} {n} cases/{f} failures" for k, (n, f) in counts.items())
    report(9, ok, el, 300.0, detail)

