"""Buchberger's algorithm, ideal dimension and degree.

Internally a monomial is stored as its *order key*: a tuple of weight rows
followed by the negated exponents in reverse variable order.  Python tuple
comparison on these keys is the monomial order, multiplication is
component-wise addition, and divisibility only looks at the exponent tail.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from gmpy2 import gcd, lcm, mpq, mpz

from .symbolic import Polynomial

__all__ = [
    "MonomialOrder",
    "GroebnerBasis",
    "GroebnerBudgetExceeded",
    "groebner",
    "dimension",
    "degree",
    "reduce_polynomial",
    "s_polynomial_reduces_to_zero",
    "fglm_contract",
]


class GroebnerBudgetExceeded(RuntimeError):
    """The configured number of S-pair reductions was exhausted."""


class MonomialOrder:
    """A weight-matrix order with reverse-lex tie break.

    ``grevlex`` has one all-ones weight row.  ``elimination(n, k)`` compares
    total degree in the first ``k`` variables first, then grevlex, which is an
    elimination order for those variables.
    """

    def __init__(self, nvars: int, rows: list, name: str):
        self.n = nvars
        self.name = name
        # weight rows aligned with the reversed exponent tail
        self.rows = [tuple(reversed(r)) for r in rows]
        self.w = len(rows)

    @classmethod
    def grevlex(cls, n: int) -> MonomialOrder:
        return cls(n, [(1,) * n], "grevlex")

    @classmethod
    def elimination(cls, n: int, k: int) -> MonomialOrder:
        first = tuple(1 if i < k else 0 for i in range(n))
        return cls(n, [first, (1,) * n], f"elim{k}")

    def encode(self, exps) -> tuple:
        tail = tuple(-e for e in reversed(exps))
        return tuple(-sum(a * b for a, b in zip(r, tail)) for r in self.rows) + tail

    def decode(self, key) -> tuple:
        return tuple(-e for e in reversed(key[self.w:]))

    def from_tail(self, tail: tuple) -> tuple:
        return tuple(-sum(a * b for a, b in zip(r, tail)) for r in self.rows) + tail

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.n, self.rows) == (other.n, other.rows)

    def __hash__(self):
        return hash((self.n, tuple(self.rows)))


def _mul(a: tuple, b: tuple) -> tuple:
    return tuple([x + y for x, y in zip(a, b)])


class _Poly:
    """Internal polynomial: primitive integer coefficients, terms largest first."""

    __slots__ = ("keys", "coeffs", "sugar")

    def __init__(self, terms: dict, sugar: int | None = None):
        ks = sorted(terms, reverse=True)
        cs = [terms[k] for k in ks]
        g = mpz(0)
        for c in cs:
            g = gcd(g, c)
            if g == 1:
                break
        if cs[0] < 0:
            g = -g
        if g != 1:
            cs = [c // g for c in cs]
        self.keys = ks
        self.coeffs = cs
        self.sugar = sugar

    @property
    def lm(self):
        return self.keys[0]

    @property
    def lc(self):
        return self.coeffs[0]

    def as_dict(self) -> dict:
        return dict(zip(self.keys, self.coeffs))


def _integral(d: dict) -> dict:
    """Clear denominators of a key -> rational dict."""
    den = mpz(1)
    for c in d.values():
        den = lcm(den, mpq(c).denominator)
    return {k: mpz(c * den) for k, c in d.items()}


def _divides(w: int, a: tuple, b: tuple) -> bool:
    """Monomial a divides monomial b (tails hold negated exponents)."""
    for x, y in zip(a[w:], b[w:]):
        if x < y:
            return False
    return True


def _tail_deg(w: int, key: tuple) -> int:
    return -sum(key[w:])


def _nf(f: dict, basis: list, order: MonomialOrder, full: bool = True):
    """Fraction-free remainder of f on division by basis.

    Returns ``(rem, mult)`` with ``mult * f - rem`` in the ideal of the basis;
    ``rem / mult`` is the normal form.  Coefficients stay integral: before
    each step the running polynomial is scaled by ``lc(g) / gcd(lc(g), c)``.
    """
    w = order.w
    p = dict(f)
    heap = [tuple([-x for x in k]) for k in p]
    heapq.heapify(heap)
    rem: dict = {}
    mult = mpq(1)
    lms = [(g.lm[w:], g) for g in basis]
    while heap:
        nk = heapq.heappop(heap)
        k = tuple([-x for x in nk])
        c = p.pop(k, None)
        if c is None:
            continue
        tail = k[w:]
        red = None
        for lt, g in lms:
            for x, y in zip(lt, tail):
                if x < y:
                    break
            else:
                red = g
                break
        if red is None:
            rem[k] = c
            if not full:
                rem.update(p)
                return rem, mult
            continue
        a = red.coeffs[0]
        d = gcd(a, c)
        a1 = a // d
        c1 = c // d
        if a1 != 1:
            for key in p:
                p[key] *= a1
            for key in rem:
                rem[key] *= a1
            mult *= a1
        q = tuple([x - y for x, y in zip(k, red.lm)])
        for mk, gc in zip(red.keys[1:], red.coeffs[1:]):
            nm = tuple([x + y for x, y in zip(q, mk)])
            old = p.get(nm)
            if old is None:
                p[nm] = -c1 * gc
                heapq.heappush(heap, tuple([-x for x in nm]))
            else:
                s = old - c1 * gc
                if s:
                    p[nm] = s
                else:
                    del p[nm]
    return rem, mult


def _lcm(order: MonomialOrder, a: tuple, b: tuple) -> tuple:
    w = order.w
    return order.from_tail(tuple([min(x, y) for x, y in zip(a[w:], b[w:])]))


def _coprime(order: MonomialOrder, a: tuple, b: tuple) -> bool:
    w = order.w
    return all(x == 0 or y == 0 for x, y in zip(a[w:], b[w:]))


def _spoly(order: MonomialOrder, f: _Poly, g: _Poly) -> dict:
    lcm_fg = _lcm(order, f.lm, g.lm)
    qf = tuple([x - y for x, y in zip(lcm_fg, f.lm)])
    qg = tuple([x - y for x, y in zip(lcm_fg, g.lm)])
    d = gcd(f.lc, g.lc)
    sf = g.lc // d
    sg = f.lc // d
    out: dict = {}
    for k, c in zip(f.keys[1:], f.coeffs[1:]):
        nk = _mul(qf, k)
        out[nk] = out.get(nk, 0) + sf * c
    for k, c in zip(g.keys[1:], g.coeffs[1:]):
        nk = _mul(qg, k)
        s = out.get(nk, 0) - sg * c
        if s:
            out[nk] = s
        else:
            out.pop(nk, None)
    return out


@dataclass
class GroebnerBasis:
    """A reduced Groebner basis.

    ``generators`` are primitive integer polynomials with positive leading
    coefficient, sorted by leading monomial (smallest first).  ``variables``
    lists the ring variables, biggest first.
    """

    generators: list
    variables: list
    order: MonomialOrder
    stats: dict = field(default_factory=dict)
    _internal: list = field(default_factory=list, repr=False)

    @property
    def order_name(self) -> str:
        return self.order.name

    def is_unit(self) -> bool:
        return any(p.is_constant() and not p.is_zero() for p in self.generators)

    def leading_exponents(self) -> list:
        return [self.order.decode(g.lm) for g in self._internal]

    def leading_monomial(self, p: Polynomial) -> tuple:
        return self.order.decode(max(_to_internal(p, self.variables, self.order)))

    def reduce(self, p: Polynomial) -> Polynomial:
        """Normal form of p modulo the basis."""
        d = _to_internal(p, self.variables, self.order)
        rem, mult = _nf(_integral(d), self._internal, self.order)
        return _from_internal({k: mpq(c) / mult for k, c in rem.items()}, self.variables, self.order)

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()

    def standard_monomials(self) -> list:
        """Exponent vectors outside the leading-term ideal (zero-dimensional case)."""
        if dimension(self) != 0:
            raise ValueError("standard monomials are infinite for a positive-dimensional ideal")
        lead = self.leading_exponents()
        n = len(self.variables)
        seen = {(0,) * n}
        out = []
        frontier = [(0,) * n]
        while frontier:
            nxt = []
            for e in frontier:
                if any(all(a <= b for a, b in zip(l, e)) for l in lead):
                    continue
                out.append(e)
                for i in range(n):
                    f = e[:i] + (e[i] + 1,) + e[i + 1:]
                    if f not in seen:
                        seen.add(f)
                        nxt.append(f)
            frontier = nxt
        out.sort(key=lambda e: self.order.encode(e))
        return out

    def normal_form_vector(self, exps: tuple, basis_index: dict) -> list:
        """Coordinates of NF(x^exps) on the given standard-monomial index."""
        d = {self.order.encode(exps): mpz(1)}
        rem, mult = _nf(d, self._internal, self.order)
        vec = [mpq(0)] * len(basis_index)
        for k, c in rem.items():
            vec[basis_index[self.order.decode(k)]] = mpq(c) / mult
        return vec

    def dimension(self) -> int:
        return dimension(self)

    def degree(self) -> int:
        return degree(self)


def _to_internal(p: Polynomial, variables: list, order: MonomialOrder) -> dict:
    pos = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    out = {}
    for m, c in p.terms.items():
        e = [0] * n
        for v, k in m:
            try:
                e[pos[v]] = k
            except KeyError:
                raise ValueError(f"variable {v} not in the ring") from None
        out[order.encode(e)] = c
    return out


def _from_internal(d: dict, variables: list, order: MonomialOrder) -> Polynomial:
    terms = {}
    for k, c in d.items():
        e = order.decode(k)
        terms[tuple((variables[i], x) for i, x in enumerate(e) if x)] = mpq(c)
    return Polynomial(terms)


def ring_variables(polys) -> list:
    vs = set()
    for p in polys:
        vs |= p.variables()
    return sorted(vs)


def groebner(
    polys,
    variables=None,
    order: str | MonomialOrder = "grevlex",
    eliminate: int = 0,
    max_pairs: int | None = 200_000,
    strategy: str = "normal",
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``polys``.

    ``variables`` is the ring's variable list, biggest first (default: all
    variables in ``Var`` order).  With ``eliminate=k`` the order is the block
    elimination order for the first ``k`` variables.  Pairs are selected by
    smallest lcm (``"normal"``) or by sugar degree (``"sugar"``); useless
    pairs are discarded with Buchberger's coprime and chain criteria in the
    Gebauer-Moller arrangement.
    """
    polys = [Polynomial.coerce(p) for p in polys]
    if variables is None:
        variables = ring_variables(polys)
    variables = list(variables)
    n = len(variables)
    if isinstance(order, MonomialOrder):
        mo = order
    elif eliminate:
        mo = MonomialOrder.elimination(n, eliminate)
    elif order == "grevlex":
        mo = MonomialOrder.grevlex(n)
    else:
        raise ValueError(f"unknown monomial order {order!r}")
    w = mo.w

    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return GroebnerBasis([], variables, mo, {"pairs": 0})

    inputs = []
    for p in polys:
        d = _to_internal(p, variables, mo)
        inputs.append(_Poly(_integral(d), sugar=max(_tail_deg(w, k) for k in d)))
    inputs.sort(key=lambda g: g.lm)

    G: list[_Poly] = []  # every basis element ever added
    active: list[int] = []
    pairs: list = []  # heap of (selection key, counter, i, j)
    counter = itertools.count()
    stats = {"pairs": 0, "zero_reductions": 0, "skipped": 0}

    def pair_key(i, j):
        lcm = _lcm(mo, G[i].lm, G[j].lm)
        if strategy == "sugar":
            si = G[i].sugar + _tail_deg(w, lcm) - _tail_deg(w, G[i].lm)
            sj = G[j].sugar + _tail_deg(w, lcm) - _tail_deg(w, G[j].lm)
            return (max(si, sj), lcm)
        return (lcm,)

    def update(h_idx: int):
        nonlocal pairs, active
        h = G[h_idx]
        # Gebauer-Moller: new pairs
        cand = [(g, _lcm(mo, h.lm, G[g].lm)) for g in active]
        keep = []
        for a, (g, lcm_g) in enumerate(cand):
            if _coprime(mo, h.lm, G[g].lm):
                keep.append((g, lcm_g, True))
                continue
            dominated = False
            for b, (g2, lcm_2) in enumerate(cand):
                if b == a:
                    continue
                if _divides(w, lcm_2, lcm_g) and (lcm_2 != lcm_g or b < a):
                    dominated = True
                    break
            if not dominated:
                keep.append((g, lcm_g, False))
        # drop pairs whose lcm repeats one of a coprime pair, and coprime pairs
        new = []
        coprime_lcms = {lcm for _, lcm, cp in keep if cp}
        for g, lcm_g, cp in keep:
            if cp:
                stats["skipped"] += 1
                continue
            if lcm_g in coprime_lcms:
                stats["skipped"] += 1
                continue
            new.append(g)
        # chain criterion on old pairs
        kept_old = []
        for item in pairs:
            _, _, i, j = item
            lcm_ij = _lcm(mo, G[i].lm, G[j].lm)
            if (
                _divides(w, h.lm, lcm_ij)
                and _lcm(mo, G[i].lm, h.lm) != lcm_ij
                and _lcm(mo, G[j].lm, h.lm) != lcm_ij
            ):
                stats["skipped"] += 1
                continue
            kept_old.append(item)
        pairs = kept_old
        for g in new:
            pairs.append((pair_key(g, h_idx), next(counter), g, h_idx))
        heapq.heapify(pairs)
        active = [g for g in active if not _divides(w, h.lm, G[g].lm)] + [h_idx]

    for f in inputs:
        r = _nf(f.as_dict(), [G[i] for i in active], mo)[0] if active else f.as_dict()
        if not r:
            continue
        G.append(_Poly(r, sugar=f.sugar))
        if all(k[w:] == (0,) * n for k in G[-1].keys):
            return _finish([G[-1]], variables, mo, stats)
        update(len(G) - 1)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        if i >= len(G) or j >= len(G):
            continue
        stats["pairs"] += 1
        if max_pairs is not None and stats["pairs"] > max_pairs:
            raise GroebnerBudgetExceeded(f"more than {max_pairs} S-pair reductions")
        s = _spoly(mo, G[i], G[j])
        if not s:
            stats["zero_reductions"] += 1
            continue
        r, _ = _nf(s, [G[a] for a in active], mo)
        if not r:
            stats["zero_reductions"] += 1
            continue
        lcm = _lcm(mo, G[i].lm, G[j].lm)
        sugar = max(
            G[i].sugar + _tail_deg(w, lcm) - _tail_deg(w, G[i].lm),
            G[j].sugar + _tail_deg(w, lcm) - _tail_deg(w, G[j].lm),
        )
        h = _Poly(r, sugar=sugar)
        G.append(h)
        if h.lm[w:] == (0,) * n:
            return _finish([h], variables, mo, stats)
        update(len(G) - 1)

    return _finish([G[a] for a in active], variables, mo, stats)


def _finish(basis: list, variables: list, mo: MonomialOrder, stats: dict) -> GroebnerBasis:
    """Minimalize and interreduce, then export primitive integer generators."""
    w = mo.w
    basis = sorted(basis, key=lambda g: g.lm)
    minimal = []
    for g in basis:
        if not any(_divides(w, h.lm, g.lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        tail = dict(zip(g.keys[1:], g.coeffs[1:]))
        if tail:
            r, mult = _nf(tail, others, mo)
        else:
            r, mult = {}, mpq(1)
        # mult * tail - r lies in the ideal, so lc*num*x^lm + den*r does too
        num, den = mpz(mult.numerator), mpz(mult.denominator)
        r = {k: c * den for k, c in r.items()}
        r[g.lm] = g.lc * num
        reduced.append(_Poly(r))
    reduced.sort(key=lambda g: g.lm)
    gens = []
    for g in reduced:
        p = _from_internal(g.as_dict(), variables, mo)
        c = p.content()
        gens.append(p.scale(1 / c))
    return GroebnerBasis(gens, variables, mo, stats, reduced)


def reduce_polynomial(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.reduce(p)


def s_polynomial_reduces_to_zero(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion checked over every pair of the basis."""
    G = gb._internal
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            s = _spoly(gb.order, G[a], G[b])
            if s and _nf(s, G, gb.order)[0]:
                return False
    return True


# dimension and degree ----------------------------------------------------


def _lead_supports(gb: GroebnerBasis) -> list:
    return [frozenset(i for i, e in enumerate(l) if e) for l in gb.leading_exponents()]


def _min_hitting_set(supports: list, bound: int) -> int:
    """Size of a smallest variable set meeting every support (branch and bound)."""
    best = bound

    def go(chosen: frozenset, size: int):
        nonlocal best
        if size >= best:
            return
        open_ = [s for s in supports if not (s & chosen)]
        if not open_:
            best = size
            return
        for v in sorted(min(open_, key=len)):
            go(chosen | {v}, size + 1)

    go(frozenset(), 0)
    return best


def dimension(gb: GroebnerBasis) -> int:
    """Krull dimension: the largest set of variables free of leading monomials.

    Equivalently n minus the smallest set of variables meeting the support of
    every leading monomial.  The unit ideal (empty variety) has dimension -1.
    """
    if gb.is_unit():
        return -1
    n = len(gb.variables)
    supports = _minimal_sets(_lead_supports(gb))
    return n - _min_hitting_set(supports, n)


def _minimal_sets(sets: list) -> list:
    sets = sorted(set(sets), key=len)
    out = []
    for s in sets:
        if not any(t <= s for t in out):
            out.append(s)
    return out


def _hilbert_numerator(gens: list, n: int) -> list:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of a monomial ideal."""
    gens = _minimalize(gens)
    if not gens:
        return [1]
    if len(gens) == 1:
        d = sum(gens[0])
        out = [0] * (d + 1)
        out[0] = 1
        out[d] -= 1
        return out
    # pivot on the last generator: N(I) = N(J) - t^deg(m) N(J : m)
    m = gens[-1]
    rest = gens[:-1]
    colon = [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest]
    a = _hilbert_numerator(rest, n)
    b = _hilbert_numerator(colon, n)
    d = sum(m)
    out = [0] * max(len(a), len(b) + d)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + d] -= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize(gens: list) -> list:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def degree(gb: GroebnerBasis) -> int:
    """Degree of the ideal, read from the Hilbert series of its leading terms.

    For a zero-dimensional ideal this is the number of standard monomials.
    """
    if gb.is_unit():
        return 0
    n = len(gb.variables)
    N = _hilbert_numerator(gb.leading_exponents(), n)
    d = dimension(gb)
    # divide N(t) by (1-t)^(n-d) and evaluate at 1
    q = list(N)
    for _ in range(n - d):
        # synthetic division by (1 - t): q(t) = N(t)/(1-t) has coefficients
        # equal to partial sums of N
        acc = 0
        nq = []
        for c in q:
            acc += c
            nq.append(acc)
        assert nq[-1] == 0, "Hilbert numerator not divisible by (1-t)"
        q = nq[:-1]
    return sum(q)


def hilbert_polynomial_check(gb: GroebnerBasis, upto: int = 6) -> list:
    """Affine Hilbert function values sum_{j<=s} dim(R/LT)_j, for tests."""
    n = len(gb.variables)
    lead = gb.leading_exponents()
    out = []
    count = 0
    for s in range(upto + 1):
        for e in _compositions(s, n):
            if not any(all(a <= b for a, b in zip(l, e)) for l in lead):
                count += 1
        out.append(count)
    return out


def _compositions(s: int, n: int):
    if n == 0:
        if s == 0:
            yield ()
        return
    for k in range(s, -1, -1):
        for rest in _compositions(s - k, n - 1):
            yield (k,) + rest



# change of ring / order by linear algebra --------------------------------


class _Echelon:
    """Incremental exact row echelon form tracking combinations of inputs."""

    def __init__(self, size: int):
        self.size = size
        self.rows: list = []  # (pivot, vector, combination over inputs)
        self.count = 0

    def reduce(self, vec: list):
        """Reduce vec; return (residual, combination) with residual = vec - sum comb_i input_i."""
        vec = list(vec)
        comb = {}
        for pivot, row, rc in self.rows:
            c = vec[pivot]
            if c:
                for i in range(self.size):
                    if row[i]:
                        vec[i] -= c * row[i]
                for k, x in rc.items():
                    comb[k] = comb.get(k, 0) + c * x
        return vec, comb

    def add(self, vec: list, comb: dict) -> None:
        """Insert a residual from :meth:`reduce` (nonzero) as input number ``count``."""
        pivot = next(i for i, x in enumerate(vec) if x)
        inv = 1 / vec[pivot]
        row = [x * inv for x in vec]
        rc = {k: -x * inv for k, x in comb.items()}
        rc[self.count] = inv
        # keep rows fully reduced at existing pivots
        new_rows = []
        for p, r, c in self.rows:
            f = r[pivot]
            if f:
                r = [a - f * b for a, b in zip(r, row)]
                c = dict(c)
                for k, x in rc.items():
                    c[k] = c.get(k, 0) - f * x
            new_rows.append((p, r, c))
        new_rows.append((pivot, row, rc))
        self.rows = new_rows
        self.count += 1


def fglm_contract(gb: GroebnerBasis, keep: list) -> GroebnerBasis:
    """Reduced grevlex basis of the contraction of a zero-dimensional ideal.

    ``gb`` is a Groebner basis (any order) of a zero-dimensional ideal in a
    ring containing the variables ``keep`` (biggest first).  Monomials in
    ``keep`` are enumerated in increasing grevlex order; the first linear
    dependency among their normal forms closes off each new leading term.
    """
    if gb.is_unit():
        return groebner([Polynomial.const(1)], keep)
    std = gb.standard_monomials()
    index = {e: i for i, e in enumerate(std)}
    pos = [gb.variables.index(v) for v in keep]
    n_full = len(gb.variables)
    k = len(keep)
    target = MonomialOrder.grevlex(k)

    def nf_vec(e_small):
        e = [0] * n_full
        for j, x in zip(pos, e_small):
            e[j] = x
        return gb.normal_form_vector(tuple(e), index)

    ech = _Echelon(len(std))
    staircase: list = []
    leads: list = []
    new_gens: list = []
    candidates = {(0,) * k}
    while candidates:
        e = min(candidates, key=target.encode)
        candidates.discard(e)
        if any(all(a <= b for a, b in zip(l, e)) for l in leads):
            continue
        vec, comb = ech.reduce(nf_vec(e))
        if any(vec):
            ech.add(vec, comb)
            staircase.append(e)
            for i in range(k):
                candidates.add(e[:i] + (e[i] + 1,) + e[i + 1:])
        else:
            terms = {tuple((keep[i], x) for i, x in enumerate(e) if x): mpq(1)}
            for idx, c in comb.items():
                s = staircase[idx]
                mono = tuple((keep[i], x) for i, x in enumerate(s) if x)
                terms[mono] = terms.get(mono, 0) - c
            new_gens.append(Polynomial(terms))
            leads.append(e)
    return groebner(new_gens, keep)
