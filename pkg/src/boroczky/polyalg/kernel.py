"""Inner loops of Buchberger's algorithm on bare ``{exponent: int}`` dicts.

Two coefficient modes share the code: ``mod=p`` works in GF(p), ``mod=None``
keeps every polynomial primitive over ZZ (pseudo-reduction with gcd-scaled
multipliers), which represents a QQ computation up to units.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable

from ..errors import ResourceExceeded
from .ring import MonomialOrder

Poly = dict  # exponent tuple -> int


class Budget:
    """Counts reduction steps; raises ResourceExceeded past ``limit``."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = 10**7) -> None:
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise ResourceExceeded(f"reduction budget of {self.limit} steps exhausted")


def lead(f: Poly, order: MonomialOrder):
    return max(f, key=order.key)


def primitive(f: Poly, order: MonomialOrder, mod: int | None) -> Poly:
    """Scale to content 1 / positive lead (ZZ) or monic (GF(p))."""
    if not f:
        return f
    m = lead(f, order)
    if mod is not None:
        inv = pow(f[m], -1, mod)
        return {e: c * inv % mod for e, c in f.items()}
    g = 0
    for c in f.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    if f[m] < 0:
        g = -g
    if g == 1:
        return f
    return {e: c // g for e, c in f.items()}


class Reducer:
    """A basis element with cached leading data."""

    __slots__ = ("poly", "lm", "lc", "items", "deg")

    def __init__(self, poly: Poly, order: MonomialOrder) -> None:
        self.poly = poly
        self.lm = lead(poly, order)
        self.lc = poly[self.lm]
        self.items = list(poly.items())
        self.deg = sum(self.lm)


def _find(reducers: list[Reducer], m: tuple) -> Reducer | None:
    for g in reducers:
        lm = g.lm
        for a, b in zip(lm, m):
            if a > b:
                break
        else:
            return g
    return None


def normal_form(
    f: Poly,
    reducers: list[Reducer],
    order: MonomialOrder,
    mod: int | None,
    budget: Budget | None = None,
    full: bool = True,
) -> Poly:
    """Reduce ``f`` against ``reducers``; result is primitive (ZZ) or unnormalized (GF(p)).

    Over ZZ the result equals the true normal form up to a nonzero rational factor.
    """
    if not f:
        return {}
    f = dict(f)
    hk = order.heap_key
    heap = [(hk(e), e) for e in f]
    heapq.heapify(heap)
    rem: Poly = {}
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = f.get(m)
        if c is None:
            continue
        g = _find(reducers, m)
        if g is None:
            del f[m]
            rem[m] = c
            if not full:
                for e, v in f.items():
                    rem[e] = v
                break
            continue
        steps += 1
        q = tuple(x - y for x, y in zip(m, g.lm))
        if mod is not None:
            factor = c * pow(g.lc, -1, mod) % mod
            for e, a in g.items:
                k = tuple(x + y for x, y in zip(e, q))
                v = f.get(k)
                if v is None:
                    f[k] = (-factor * a) % mod
                    heapq.heappush(heap, (hk(k), k))
                else:
                    v = (v - factor * a) % mod
                    if v:
                        f[k] = v
                    else:
                        del f[k]
        else:
            gg = math.gcd(c, g.lc)
            mf = g.lc // gg
            mg = c // gg
            if mf != 1:
                if mf == -1:
                    for e in f:
                        f[e] = -f[e]
                    for e in rem:
                        rem[e] = -rem[e]
                else:
                    for e in f:
                        f[e] *= mf
                    for e in rem:
                        rem[e] *= mf
            for e, a in g.items:
                k = tuple(x + y for x, y in zip(e, q))
                v = f.get(k)
                if v is None:
                    f[k] = -mg * a
                    heapq.heappush(heap, (hk(k), k))
                else:
                    v -= mg * a
                    if v:
                        f[k] = v
                    else:
                        del f[k]
            if steps % 16 == 0:
                _shrink(f, rem)
    if budget is not None:
        budget.spend(steps)
    return primitive(rem, order, mod) if rem else {}


def _shrink(f: Poly, rem: Poly) -> None:
    g = 0
    for c in f.values():
        g = math.gcd(g, c)
        if g == 1:
            return
    for c in rem.values():
        g = math.gcd(g, c)
        if g == 1:
            return
    if g > 1:
        for e in f:
            f[e] //= g
        for e in rem:
            rem[e] //= g


def s_polynomial(a: Reducer, b: Reducer, mod: int | None) -> Poly:
    lcm = tuple(max(x, y) for x, y in zip(a.lm, b.lm))
    qa = tuple(x - y for x, y in zip(lcm, a.lm))
    qb = tuple(x - y for x, y in zip(lcm, b.lm))
    if mod is not None:
        ca = b.lc
        cb = a.lc
    else:
        g = math.gcd(a.lc, b.lc)
        ca, cb = b.lc // g, a.lc // g
    out: Poly = {}
    for e, v in a.items:
        k = tuple(x + y for x, y in zip(e, qa))
        out[k] = ca * v
    for e, v in b.items:
        k = tuple(x + y for x, y in zip(e, qb))
        w = out.get(k, 0) - cb * v
        if mod is not None:
            w %= mod
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    if mod is not None:
        out = {e: c % mod for e, c in out.items() if c % mod}
    return out


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def groebner(
    polys: list[Poly],
    order: MonomialOrder,
    mod: int | None,
    *,
    degree_bound: int | None = None,
    budget: Budget | None = None,
    progress: Callable[[str], None] | None = None,
) -> list[Poly]:
    """Reduced Groebner basis (truncated at ``degree_bound`` for homogeneous input).

    Pairs are selected by the normal strategy (smallest lcm, ties by degree) and
    filtered with the Gebauer-Moeller installation of Buchberger's coprime and
    chain criteria.
    """
    budget = budget or Budget(None)
    basis: list[Reducer] = []  # every element ever added
    active: list[int] = []  # indices of non-redundant elements
    pairs: list[tuple] = []  # heap of (sugar key, counter, i, j)
    counter = 0
    key = order.key

    def lcm(i: int, j: int) -> tuple:
        return tuple(max(x, y) for x, y in zip(basis[i].lm, basis[j].lm))

    def pair_key(m: tuple) -> tuple:
        return (sum(m),) + key(m)

    def active_reducers() -> list[Reducer]:
        return [basis[i] for i in active]

    def update(h: int) -> None:
        nonlocal pairs, active, counter
        lm_h = basis[h].lm
        cands = [(j, lcm(h, j)) for j in active]
        kept: list[tuple[int, tuple]] = []
        for idx, (j, m) in enumerate(cands):
            coprime = all(x == 0 or y == 0 for x, y in zip(lm_h, basis[j].lm))
            if coprime:
                kept.append((j, m))
                continue
            dominated = False
            for j2, m2 in cands[idx + 1 :]:
                if _divides(m2, m):
                    dominated = True
                    break
            if not dominated:
                for j2, m2 in kept:
                    if _divides(m2, m):
                        dominated = True
                        break
            if not dominated:
                kept.append((j, m))
        new_pairs = [
            (j, m)
            for j, m in kept
            if not all(x == 0 or y == 0 for x, y in zip(lm_h, basis[j].lm))
        ]
        old = []
        for entry in pairs:
            _, _, i, j = entry
            m = lcm(i, j)
            if (
                _divides(lm_h, m)
                and lcm(i, h) != m
                and lcm(h, j) != m
            ):
                continue
            old.append(entry)
        for j, m in new_pairs:
            counter += 1
            old.append((pair_key(m), counter, j, h))
        heapq.heapify(old)
        pairs = old
        active = [j for j in active if not _divides(lm_h, basis[j].lm)] + [h]

    def add(p: Poly) -> None:
        basis.append(Reducer(p, order))
        update(len(basis) - 1)

    start = []
    for p in polys:
        p = primitive(p, order, mod)
        if p:
            start.append(p)
    start.sort(key=lambda p: key(lead(p, order)))
    for p in start:
        nf = normal_form(p, active_reducers(), order, mod, budget)
        if nf:
            if all(not any(e) for e in nf):
                return [{(0,) * len(next(iter(nf))): 1}]
            add(nf)

    while pairs:
        pk, _, i, j = heapq.heappop(pairs)
        if degree_bound is not None and pk[0] > degree_bound:
            break
        s = s_polynomial(basis[i], basis[j], mod)
        nf = normal_form(s, active_reducers(), order, mod, budget)
        if nf:
            if all(not any(e) for e in nf):
                return [{(0,) * len(next(iter(nf))): 1}]
            add(nf)
            if progress is not None:
                progress(f"basis {len(active)} pairs {len(pairs)} deg {pk[0]}")

    return interreduce([basis[i].poly for i in active], order, mod, budget)


def interreduce(polys: list[Poly], order: MonomialOrder, mod: int | None, budget: Budget | None = None) -> list[Poly]:
    """Turn a Groebner basis with minimal leading terms into the reduced one."""
    reds = [Reducer(p, order) for p in polys]
    # drop elements whose lead is divisible by another lead
    minimal: list[Reducer] = []
    for r in sorted(reds, key=lambda r: order.key(r.lm)):
        if not any(_divides(m.lm, r.lm) for m in minimal):
            minimal.append(r)
    out = []
    for idx, r in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        tail = dict(r.poly)
        head = tail.pop(r.lm)
        reduced_tail = normal_form_keep_scale(tail, others, order, mod, budget)
        out.append((head, reduced_tail, r.lm))
    result = []
    for head, (scale, tail), lm in out:
        if mod is not None:
            p = {lm: head}
            for e, c in tail.items():
                p[e] = c
            result.append(primitive(p, order, mod))
        else:
            p = {lm: head * scale}
            for e, c in tail.items():
                p[e] = c
            result.append(primitive(p, order, mod))
    result.sort(key=lambda p: order.key(lead(p, order)))
    return result


def normal_form_keep_scale(
    f: Poly,
    reducers: list[Reducer],
    order: MonomialOrder,
    mod: int | None,
    budget: Budget | None = None,
) -> tuple[int, Poly]:
    """Full reduction returning ``(s, r)`` with ``s*f - r`` in the ideal.

    Over GF(p) ``s`` is 1; over ZZ it is the accumulated multiplier, so the
    caller can rescale a separately held head term consistently.
    """
    if not f:
        return 1, {}
    f = dict(f)
    hk = order.heap_key
    heap = [(hk(e), e) for e in f]
    heapq.heapify(heap)
    rem: Poly = {}
    scale = 1
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = f.get(m)
        if c is None:
            continue
        g = _find(reducers, m)
        if g is None:
            del f[m]
            rem[m] = c
            continue
        steps += 1
        q = tuple(x - y for x, y in zip(m, g.lm))
        if mod is not None:
            factor = c * pow(g.lc, -1, mod) % mod
            mg = factor
        else:
            gg = math.gcd(c, g.lc)
            mf = g.lc // gg
            mg = c // gg
            if mf != 1:
                scale *= mf
                for e in f:
                    f[e] *= mf
                for e in rem:
                    rem[e] *= mf
        for e, a in g.items:
            k = tuple(x + y for x, y in zip(e, q))
            v = f.get(k)
            if v is None:
                v = -mg * a
                if mod is not None:
                    v %= mod
                f[k] = v
                heapq.heappush(heap, (hk(k), k))
            else:
                v -= mg * a
                if mod is not None:
                    v %= mod
                if v:
                    f[k] = v
                else:
                    del f[k]
    if budget is not None:
        budget.spend(steps)
    return scale, rem
