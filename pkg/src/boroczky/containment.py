"""Fat-point ideals and the containment question ``I^(m) ⊆ I^r``.

Graded pieces of point ideals and their symbolic powers are computed by
linear algebra: a form of degree d lies in ``I^(m)`` when all its partial
derivatives of order m-1 vanish at every point.  Generators are collected
degree by degree until the Hilbert function reaches its final value, which
certifies that nothing is missing.  Membership in ``I^r`` is decided by
normal forms against a degree-truncated Groebner basis, over QQ and, as a
fast pre-pass, modulo a few random primes.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, Iterable, Sequence

from sympy import isprime

from .errors import DegreeBoundTooSmall, ResourceExceeded
from .polyalg import DEGREVLEX, IdealPresentation, MultiPoly, PolyRing, monomials_of_degree
from .polyalg import kernel
from .polyalg.groebner import DEFAULT_BUDGET, to_kernel
from .projgeom import Configuration, ProjPoint
from .scalar import QQ, FieldDescriptor, PrimeField

log = logging.getLogger(__name__)

VARS = ("x", "y", "z")


@dataclass
class PointSet:
    points: list[ProjPoint]
    field: FieldDescriptor = QQ

    def __post_init__(self):
        pts = [p if p.field == self.field else p.in_field(self.field) for p in self.points]
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        self.points = pts

    @property
    def ring(self) -> PolyRing:
        return PolyRing(VARS, self.field)

    def __len__(self) -> int:
        return len(self.points)

    def reduce_mod(self, p: int) -> PointSet | None:
        """Image modulo ``p``; None when a denominator vanishes or points collide."""
        Fp = PrimeField(p)
        out = []
        for P in self.points:
            vals = []
            for c in P.raw:
                if c.denominator % p == 0:
                    return None
                vals.append(c.numerator * pow(c.denominator, -1, p) % p)
            if not any(vals):
                return None
            out.append(ProjPoint(vals, P.label, field=Fp))
        if len(set(out)) != len(out):
            return None
        return PointSet(out, Fp)

    @classmethod
    def from_configuration(cls, cfg: Configuration, min_mult: int = 3) -> PointSet:
        return cls([r.point for r in cfg.points if r.mult >= min_mult], cfg.field)


# ----------------------------------------------------------------------
# linear algebra
# ----------------------------------------------------------------------


class Echelon:
    """Incrementally maintained row-echelon basis over a field (raw values)."""

    def __init__(self, F: FieldDescriptor, ncols: int):
        self.F = F
        self.ncols = ncols
        self.rows: dict[int, list] = {}  # pivot column -> row with 1 at pivot

    def reduce(self, v: list) -> list:
        F = self.F
        v = list(v)
        for c in range(self.ncols):
            if F.is_zero(v[c]):
                continue
            row = self.rows.get(c)
            if row is None:
                continue
            t = v[c]
            for k in range(c, self.ncols):
                if not F.is_zero(row[k]):
                    v[k] = F.sub(v[k], F.mul(t, row[k]))
        return v

    def add(self, v: list) -> bool:
        """Insert ``v``; False if it was already in the span."""
        F = self.F
        v = self.reduce(v)
        for c in range(self.ncols):
            if not F.is_zero(v[c]):
                inv = F.inv(v[c])
                self.rows[c] = [F.mul(x, inv) for x in v]
                return True
        return False

    def __len__(self) -> int:
        return len(self.rows)


def nullspace(F: FieldDescriptor, rows: list[list], ncols: int) -> list[list]:
    """Basis of ``{v : row . v = 0}``, in reduced row-echelon normal form.

    The basis vector for free column j has a 1 at j and zeros at the other
    free columns; this makes the result canonical.
    """
    piv_rows: list[list] = []
    pivots: list[int] = []
    mat = [list(r) for r in rows]
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(mat)) if not F.is_zero(mat[i][c])), None)
        if k is None:
            continue
        mat[r], mat[k] = mat[k], mat[r]
        inv = F.inv(mat[r][c])
        mat[r] = [F.mul(x, inv) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not F.is_zero(mat[i][c]):
                t = mat[i][c]
                mat[i] = [F.sub(x, F.mul(t, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    piv_rows = mat[:r]
    pivset = set(pivots)
    basis = []
    for j in range(ncols):
        if j in pivset:
            continue
        v = [F.zero()] * ncols
        v[j] = F.one()
        for row, pc in zip(piv_rows, pivots):
            v[pc] = F.neg(row[j])
        basis.append(v)
    return basis


def _falling(e: int, a: int) -> int:
    return factorial(e) // factorial(e - a)


def _condition_rows(ps: PointSet, m: int, d: int, monos: list[tuple]) -> list[list]:
    """One row per (point, derivative of order m-1)."""
    F = ps.field
    rows = []
    derivs = monomials_of_degree(3, m - 1) if m >= 1 else []
    for P in ps.points:
        powers = [[F.one()] for _ in range(3)]
        for i in range(3):
            for _ in range(d):
                powers[i].append(F.mul(powers[i][-1], P.raw[i]))
        for al in derivs:
            row = []
            for e in monos:
                if any(a > x for a, x in zip(al, e)):
                    row.append(F.zero())
                    continue
                c = F.one()
                for i in range(3):
                    c = F.mul(c, powers[i][e[i] - al[i]])
                k = _falling(e[0], al[0]) * _falling(e[1], al[1]) * _falling(e[2], al[2])
                row.append(F.mul(c, F.from_fraction(Fraction(k))))
            rows.append(row)
    return rows


def _vec_to_poly(R: PolyRing, monos: list[tuple], v: list) -> MultiPoly:
    F = R.field
    return MultiPoly(R, {e: c for e, c in zip(monos, v) if not F.is_zero(c)})


def fatpoint_space(ps: PointSet, m: int, d: int) -> list[MultiPoly]:
    """Basis of the degree-d forms vanishing to order >= m at every point."""
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    monos = monomials_of_degree(3, d)
    R = ps.ring
    if not ps.points:
        return [R.monomial(e) for e in monos]
    if d < m:
        # a nonzero form of degree d has order at most d at any point
        return []
    return _kernel_polys(ps, m, d, monos)


def _kernel_polys(ps: PointSet, m: int, d: int, monos: list[tuple]) -> list[MultiPoly]:
    rows = _condition_rows(ps, m, d, monos)
    basis = nullspace(ps.field, rows, len(monos))
    return [_vec_to_poly(ps.ring, monos, v) for v in basis]


def fatpoint_dimension(ps: PointSet, m: int, d: int) -> int:
    return len(fatpoint_space(ps, m, d))


def vanishing_order(f: MultiPoly, P: ProjPoint, limit: int | None = None) -> int:
    """Largest k such that every partial derivative of order < k vanishes at P."""
    F = f.ring.field
    vals = [P[i] if P.field == F else F.coerce(P[i]) for i in range(3)]
    top = f.total_degree() if limit is None else limit
    for k in range(0, top + 1):
        for al in monomials_of_degree(3, k):
            g = f
            for i, a in enumerate(al):
                if a:
                    g = g.diff(i, a)
            if not g.evaluate(vals).is_zero():
                return k
    return top + 1 if limit is not None else f.total_degree() + 1


def in_symbolic_power(f: MultiPoly, ps: PointSet, m: int) -> bool:
    return all(vanishing_order(f, P, limit=m) >= m for P in ps.points)


# ----------------------------------------------------------------------
# generators with a Hilbert-function certificate
# ----------------------------------------------------------------------


@dataclass
class GeneratedIdeal:
    ideal: IdealPresentation
    by_degree: dict[int, int]
    dimensions: dict[int, int]
    regularity_index: int
    multiplicity: int

    @property
    def generators(self) -> list[MultiPoly]:
        return self.ideal.generators

    @property
    def max_degree(self) -> int:
        return max(self.by_degree, default=0)


def _generate(ps: PointSet, m: int, max_degree: int) -> GeneratedIdeal:
    R = ps.ring
    F = ps.field
    length = len(ps) * comb(m + 1, 2)
    gens: list[MultiPoly] = []
    by_deg: dict[int, int] = {}
    dims: dict[int, int] = {}
    prev: list[MultiPoly] = []
    reg = None
    for d in range(0, max_degree + 1):
        V = fatpoint_space(ps, m, d)
        dims[d] = len(V)
        monos = monomials_of_degree(3, d)
        idx = {e: i for i, e in enumerate(monos)}
        ech = Echelon(F, len(monos))
        for g in prev:
            for i in range(3):
                e1 = tuple(1 if j == i else 0 for j in range(3))
                h = g.mul_monomial(e1)
                v = [F.zero()] * len(monos)
                for e, c in h.terms.items():
                    v[idx[e]] = c
                ech.add(v)
        new = 0
        for g in V:
            v = [F.zero()] * len(monos)
            for e, c in g.terms.items():
                v[idx[e]] = c
            if ech.add(v):
                gens.append(g)
                new += 1
        if new:
            by_deg[d] = new
        prev = V
        if reg is None and dims[d] == comb(d + 2, 2) - length:
            reg = d
        # I is generated in degrees <= regularity index + 1
        if reg is not None and d >= reg + 1:
            return GeneratedIdeal(IdealPresentation(R, gens), by_deg, dims, reg, m)
    raise DegreeBoundTooSmall(
        f"Hilbert function not stable up to degree {max_degree} (m={m}, {len(ps)} points)"
    )


def point_ideal(ps: PointSet, max_degree: int | None = None) -> GeneratedIdeal:
    """Generators of the ideal of the points, certified complete."""
    bound = max_degree if max_degree is not None else len(ps) + 1
    res = _generate(ps, 1, bound)
    for g in res.generators:
        for P in ps.points:
            if not g.evaluate(list(P.coords)).is_zero():
                raise AssertionError("generator does not vanish at a point")
    return res


def symbolic_power(ps: PointSet, m: int, max_degree: int | None = None) -> GeneratedIdeal:
    """Generators of the intersection of the m-th powers of the point ideals.

    Default ``max_degree`` is ``3 * (top generator degree of I) + 3``; it is
    raised once to ``m * len(ps) + 1`` (always sufficient) when too small.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if max_degree is None:
        base = point_ideal(ps).max_degree
        max_degree = 3 * base + 3
        try:
            return _generate(ps, m, max_degree)
        except DegreeBoundTooSmall:
            log.info("raising degree bound from %d", max_degree)
            return _generate(ps, m, max(max_degree + 1, m * len(ps) + 1))
    return _generate(ps, m, max_degree)


# ----------------------------------------------------------------------
# containment
# ----------------------------------------------------------------------


@dataclass
class ContainmentVerdict:
    status: str  # Contained | NotContained | Inconclusive
    m: int
    r: int
    witness: MultiPoly | None = None
    witness_source: str | None = None
    certification: str = "exact"  # exact | modular-certified | modular
    degree_bound: int | None = None
    degrees: dict[str, Any] = field(default_factory=dict)
    primes: list[int] = field(default_factory=list)
    discarded_primes: list[int] = field(default_factory=list)
    modular: dict[int, str] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "m": self.m,
            "r": self.r,
            "witness": None if self.witness is None else str(self.witness),
            "witness_source": self.witness_source,
            "certification": self.certification,
            "degree_bound": self.degree_bound,
            "degrees": self.degrees,
            "primes": self.primes,
            "discarded_primes": self.discarded_primes,
            "modular": {str(k): v for k, v in self.modular.items()},
            "notes": self.notes,
        }


def random_primes(k: int, rng: random.Random) -> list[int]:
    out: list[int] = []
    while len(out) < k:
        p = rng.randrange(2**30 + 1, 2**31, 2)
        if isprime(p) and p not in out:
            out.append(p)
    return out


def _power_generators(gens: list[dict], r: int, mod: int | None) -> list[dict]:
    result = [{(0, 0, 0): 1}]
    for _ in range(r):
        nxt = []
        seen = set()
        for f in result:
            for g in gens:
                h: dict = {}
                for e1, c1 in f.items():
                    for e2, c2 in g.items():
                        k = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                        h[k] = h.get(k, 0) + c1 * c2
                if mod is not None:
                    h = {e: c % mod for e, c in h.items() if c % mod}
                else:
                    h = {e: c for e, c in h.items() if c}
                key = frozenset(kernel.primitive(h, DEGREVLEX, mod).items())
                if h and key not in seen:
                    seen.add(key)
                    nxt.append(h)
        result = nxt
    return result


def _reduce_poly_mod(f: dict, p: int) -> dict | None:
    out = {}
    for e, c in f.items():
        c = Fraction(c)
        if c.denominator % p == 0:
            return None
        v = c.numerator * pow(c.denominator, -1, p) % p
        if v:
            out[e] = v
    return out


def _first_outside(
    tests: list[tuple[str, MultiPoly]], power_gens: list[dict], mod: int | None, budget: int | None
) -> tuple[int | None, int]:
    """Index of the first test polynomial outside the ideal (None: all inside)."""
    top = max(f.total_degree() for _, f in tests)
    gb = kernel.groebner(power_gens, DEGREVLEX, mod, degree_bound=top, budget=kernel.Budget(budget))
    reds = [kernel.Reducer(g, DEGREVLEX) for g in gb]
    for i, (_, f) in enumerate(tests):
        if mod is None:
            fk = to_kernel(f)
        else:
            fk = _reduce_poly_mod(f.terms, mod)
            if fk is None:
                raise ZeroDivisionError
        if kernel.normal_form(fk, reds, DEGREVLEX, mod, kernel.Budget(budget)):
            return i, len(gb)
    return None, len(gb)


def check_containment(
    ps: PointSet,
    m: int = 3,
    r: int = 2,
    *,
    max_degree: int | None = None,
    candidates: Iterable[MultiPoly] = (),
    mod_primes: int = 5,
    exact: bool = True,
    seed: int | None = 0,
    budget: int | None = DEFAULT_BUDGET,
) -> ContainmentVerdict:
    """Decide whether ``I^(m)`` is contained in ``I^r`` for the point ideal I.

    ``candidates`` (e.g. a product of line forms) are verified to lie in
    ``I^(m)`` and tested first; if one of them is outside ``I^r`` no
    symbolic-power generators are needed.  Otherwise every generator of
    ``I^(m)`` is tested.  The modular pre-pass runs over ``mod_primes``
    random primes in (2^30, 2^31); the exact pass works over QQ.  ``budget``
    caps the reduction steps of the exact pass only; when it runs out, a
    negative verdict shared by at least three primes is reported as
    "modular-certified".
    """
    if ps.field != QQ:
        raise ValueError("containment checks start from rational points")
    v = ContainmentVerdict("Inconclusive", m, r)
    t0 = time.perf_counter()
    I = point_ideal(ps)
    v.timings["point_ideal"] = time.perf_counter() - t0
    v.degrees["I"] = {str(k): n for k, n in sorted(I.by_degree.items())}
    v.degrees["I_regularity_index"] = I.regularity_index
    cands = []
    for k, c in enumerate(candidates):
        if not in_symbolic_power(c, ps, m):
            raise ValueError(f"candidate {k} does not vanish to order {m} at every point")
        cands.append((f"candidate {k}", c))

    I_k = [to_kernel(g) for g in I.generators]
    rng = random.Random(seed)
    stages: list[list[tuple[str, MultiPoly]]] = []
    if cands:
        stages.append(cands)
    sym_holder: dict[str, GeneratedIdeal] = {}

    def sym_stage() -> list[tuple[str, MultiPoly]]:
        if "S" not in sym_holder:
            t = time.perf_counter()
            S = symbolic_power(ps, m, max_degree)
            v.timings["symbolic_power"] = time.perf_counter() - t
            v.degrees["symbolic_power"] = {str(k): n for k, n in sorted(S.by_degree.items())}
            sym_holder["S"] = S
        S = sym_holder["S"]
        return [(f"I^({m}) generator {i}", g) for i, g in enumerate(S.generators)]

    # modular pre-pass
    primes = []
    lcs = [g.leading_coefficient(DEGREVLEX).raw for g in I.generators]
    while len(primes) < mod_primes:
        (p,) = random_primes(1, rng)
        if p in primes or p in v.discarded_primes:
            continue
        if ps.reduce_mod(p) is None or any(Fraction(c).numerator % p == 0 for c in lcs):
            v.discarded_primes.append(p)
            continue
        gens_p = [_reduce_poly_mod(g, p) for g in I_k]
        if any(g is None for g in gens_p):
            v.discarded_primes.append(p)
            continue
        primes.append(p)
    v.primes = primes
    mod_witness: dict[int, tuple[str, MultiPoly] | None] = {}
    t = time.perf_counter()
    for p in primes:
        gens_p = [_reduce_poly_mod(g, p) for g in I_k]
        Ir = _power_generators(gens_p, r, p)
        found = None
        for stage in stages + [None]:
            tests = stage if stage is not None else sym_stage()
            try:
                idx, _ = _first_outside(tests, Ir, p, None)
            except ZeroDivisionError:
                v.discarded_primes.append(p)
                found = "unlucky"
                break
            if idx is not None:
                found = tests[idx]
                break
        if found == "unlucky":
            continue
        mod_witness[p] = found
        v.modular[p] = "Contained" if found is None else f"NotContained: {found[0]}"
    v.primes = [p for p in primes if p in mod_witness]
    v.timings["modular"] = time.perf_counter() - t

    all_tests = [t for s in stages for t in s]
    if not exact:
        outs = [w for w in mod_witness.values() if w is not None]
        if len(outs) == len(mod_witness) and len(outs) >= 3:
            v.status, v.certification = "NotContained", "modular-certified"
            v.witness_source, v.witness = outs[0]
        elif mod_witness and not outs:
            v.status, v.certification = "Contained", "modular"
        v.degree_bound = max((f.total_degree() for _, f in all_tests), default=None)
        return v

    t = time.perf_counter()
    Ir = _power_generators(I_k, r, None)
    try:
        for stage in stages + [None]:
            tests = stage if stage is not None else sym_stage()
            v.degree_bound = max(f.total_degree() for _, f in tests)
            idx, size = _first_outside(tests, Ir, None, budget)
            v.degrees["groebner_basis_size"] = size
            if idx is not None:
                v.status = "NotContained"
                v.witness_source, v.witness = tests[idx]
                break
        else:
            v.status = "Contained"
        v.certification = "exact"
    except ResourceExceeded as exc:
        v.notes.append(f"exact run stopped: {exc}")
        outs = [w for w in mod_witness.values() if w is not None]
        if outs and len(outs) == len(mod_witness) and len(outs) >= 3:
            v.status, v.certification = "NotContained", "modular-certified"
            v.witness_source, v.witness = outs[0]
    v.timings["exact"] = time.perf_counter() - t
    if v.status == "NotContained" and not in_symbolic_power(v.witness, ps, m):
        v.notes.append("witness failed the multiplicity check")
        v.status = "Inconclusive"
    agree = {s.split(":")[0] for s in v.modular.values()}
    if v.certification == "exact" and agree and agree != {v.status}:
        v.notes.append(f"modular verdicts {sorted(agree)} differ from exact {v.status}")
    return v


def line_product_witness(cfg: Configuration, min_mult: int = 3) -> MultiPoly:
    """Product of all line forms; checked to vanish to order >= mult at each point."""
    R = PolyRing(VARS, cfg.field)
    x, y, z = R.gens()
    W = R.one()
    for l in cfg.lines:
        a, b, c = l.coords
        W = W * (x * a + y * b + z * c)
    for rec in cfg.points:
        if rec.mult >= min_mult and vanishing_order(W, rec.point, limit=rec.mult) < rec.mult:
            raise AssertionError(f"witness does not vanish to order {rec.mult} at {rec.point}")
    return W


def intersection_of_powers(ps: PointSet, m: int) -> IdealPresentation:
    """Oracle for small point sets: intersect ``I(p)^m`` with elimination."""
    from .polyalg import ideal_intersection, ideal_power

    R = ps.ring
    x, y, z = R.gens()
    result = None
    for P in ps.points:
        # two independent linear forms vanishing at P
        a, b, c = P.coords
        forms = [f for f in (x * b - y * a, x * c - z * a, y * c - z * b) if not f.is_zero()]
        Ip = ideal_power(IdealPresentation(R, forms), m)
        result = Ip if result is None else ideal_intersection(result, Ip)
    return result
