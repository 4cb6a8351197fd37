"""Exact multivariate polynomials and rational functions over the rationals.

Polynomials are sparse maps from monomials to ``gmpy2.mpq`` coefficients.  A
monomial is a tuple of ``(Var, exponent)`` pairs sorted by variable order, so
only the variables that actually occur are stored.

Rational functions keep their denominator as a product of primitive
polynomial factors with multiplicities.  Sums take the factor-wise maximum, so
denominators never grow under addition; cancellation is done by exact trial
division against those known factors.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Number

from gmpy2 import mpq

__all__ = [
    "Var",
    "Polynomial",
    "RationalFunction",
    "RFMatrix",
    "PoleError",
    "DimensionError",
    "SingularMatrixError",
    "to_mpq",
]


class PoleError(ZeroDivisionError):
    """A denominator vanishes at the evaluation point."""


class DimensionError(ValueError):
    """Matrix shapes are incompatible with the requested operation."""


class SingularMatrixError(ZeroDivisionError):
    """The determinant is identically zero."""


_KIND_RANK = {"k": 0, "l": 1, "p": 2, "s": 3}


class Var:
    """A polynomial variable.

    The model families are ``k`` (undirected), ``l`` (directed), ``p``
    (bidirected) and ``s`` (covariance), indexed by a vertex pair.  Any other
    kind is a free variable identified by its name alone.

    Variables are totally ordered: kinds ``k < l < p < s < free``; inside the
    symmetric families the diagonal entries come before the off-diagonal ones,
    then lexicographic on ``(i, j)``.  Earlier variables are the *larger* ones
    in the monomial orders used for Groebner bases.
    """

    __slots__ = ("kind", "i", "j", "key", "nkey", "_hash")
    _cache: dict = {}

    def __new__(cls, kind: str, i: int = 0, j: int = 0):
        if kind in ("k", "p", "s") and i > j:
            i, j = j, i
        ident = (kind, i, j)
        obj = cls._cache.get(ident)
        if obj is not None:
            return obj
        obj = super().__new__(cls)
        obj.kind, obj.i, obj.j = kind, i, j
        rank = _KIND_RANK.get(kind, 4)
        offdiag = 0 if (i == j or kind == "l") else 1
        obj.key = (rank, kind if rank == 4 else "", offdiag, i, j)
        # order-reversed key: larger for earlier (bigger) variables
        name = tuple(-ord(c) for c in (kind if rank == 4 else "")) + (1,)
        obj.nkey = (-rank, name, -offdiag, -i, -j)
        obj._hash = hash(ident)
        cls._cache[ident] = obj
        return obj

    def __reduce__(self):
        return (Var, (self.kind, self.i, self.j))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other

    def __lt__(self, other: Var):
        return self.key < other.key

    def __le__(self, other: Var):
        return self.key <= other.key

    def __gt__(self, other: Var):
        return self.key > other.key

    def __ge__(self, other: Var):
        return self.key >= other.key

    @property
    def is_free(self) -> bool:
        return self.kind not in _KIND_RANK

    def __str__(self):
        if self.is_free:
            return self.kind
        return f"{self.kind}_({self.i},{self.j})"

    def __repr__(self):
        return f"Var({str(self)!r})"


def to_mpq(x) -> mpq:
    """Convert a number (or decimal / ``p/q`` string) to an exact rational."""
    if isinstance(x, mpq):
        return x
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return mpq(f.numerator, f.denominator)
    if isinstance(x, float):
        # decimal reading, not the binary expansion: .105409 -> 105409/1000000
        f = Fraction(repr(x))
        return mpq(f.numerator, f.denominator)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return mpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def _is_exact(x) -> bool:
    return isinstance(x, (int, mpq, Fraction)) and not isinstance(x, bool)


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _lex_key(m: tuple) -> tuple:
    # lex order, earlier variables biggest
    return tuple((v.nkey, e) for v, e in m)


def _mono_divides(a: tuple, b: tuple) -> bool:
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def _mono_div(a: tuple, b: tuple) -> tuple:
    """a / b, assuming b divides a."""
    d = dict(a)
    for v, e in b:
        d[v] -= e
    return tuple(sorted((v, e) for v, e in d.items() if e))


class Polynomial:
    """Sparse polynomial with exact rational coefficients.

    Treat instances as immutable; every operation returns a new polynomial.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms: dict[tuple, mpq] = {m: c for m, c in terms.items() if c}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> Polynomial:
        c = to_mpq(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, v: Var) -> Polynomial:
        return cls({((v, 1),): mpq(1)})

    @classmethod
    def coerce(cls, x) -> Polynomial:
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, Var):
            return cls.var(x)
        return cls.const(x)

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> mpq:
        return self.terms.get((), mpq(0))

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def degree_in(self, v: Var) -> int:
        return max((e for m in self.terms for w, e in m if w is v), default=0)

    def leading(self) -> tuple:
        """Leading ``(monomial, coefficient)`` under the internal lex order."""
        m = max(self.terms, key=_lex_key)
        return m, self.terms[m]

    def content(self) -> mpq:
        """Positive rational c with self / c primitive over the integers."""
        if not self.terms:
            return mpq(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, int(c.numerator))
            den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
        return mpq(num, den)

    def primitive(self) -> tuple[mpq, Polynomial]:
        """Split into ``(c, p)`` with p integral, content 1, positive leading coeff."""
        if not self.terms:
            return mpq(0), self
        c = self.content()
        if self.leading()[1] < 0:
            c = -c
        return c, self.scale(1 / c)

    # arithmetic ---------------------------------------------------------
    def scale(self, c) -> Polynomial:
        c = to_mpq(c)
        if not c:
            return Polynomial()
        return Polynomial({m: a * c for m, a in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, RationalFunction):
                return NotImplemented
            other = Polynomial.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, RationalFunction):
                return NotImplemented
            if isinstance(other, Var):
                other = Polynomial.var(other)
            else:
                return self.scale(other)
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        return RationalFunction(self) / other

    def exact_div(self, other: Polynomial):
        """Return q with ``self == q * other``, or None when other does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        lm_g, lc_g = other.leading()
        r = dict(self.terms)
        q: dict = {}
        while r:
            m = max(r, key=_lex_key)
            if not _mono_divides(lm_g, m):
                return None
            tm = _mono_div(m, lm_g)
            tc = r[m] / lc_g
            q[tm] = tc
            for mg, cg in other.terms.items():
                mm = _mono_mul(tm, mg)
                s = r.get(mm, 0) - tc * cg
                if s:
                    r[mm] = s
                else:
                    r.pop(mm, None)
        return Polynomial(q)

    # calculus / evaluation ---------------------------------------------
    def diff(self, v: Var) -> Polynomial:
        out: dict = {}
        for m, c in self.terms.items():
            for k, (w, e) in enumerate(m):
                if w is v:
                    if e == 1:
                        nm = m[:k] + m[k + 1:]
                    else:
                        nm = m[:k] + ((w, e - 1),) + m[k + 1:]
                    out[nm] = out.get(nm, 0) + c * e
                    break
        return Polynomial(out)

    def evaluate(self, assignment):
        """Evaluate at a point; exact if every value used is rational."""
        exact = True
        vals = {}
        for v in self.variables():
            try:
                x = assignment[v]
            except KeyError:
                raise KeyError(f"no value for variable {v}") from None
            if _is_exact(x):
                x = to_mpq(x)
            else:
                exact = False
            vals[v] = x
        if exact:
            total = mpq(0)
            for m, c in self.terms.items():
                t = c
                for v, e in m:
                    t *= vals[v] ** e
                total += t
            return total
        total = 0.0
        for m, c in self.terms.items():
            t = float(c)
            for v, e in m:
                t = t * vals[v] ** e
            total = total + t
        return total

    def substitute(self, assignment: dict) -> Polynomial:
        """Replace some variables by polynomials (or numbers)."""
        out = Polynomial()
        cache: dict = {}
        for m, c in self.terms.items():
            term = Polynomial.const(c)
            rest = []
            for v, e in m:
                if v in assignment:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = Polynomial.coerce(assignment[v]) ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term * Polynomial({tuple(rest): mpq(1)})
            out = out + term
        return out

    # comparison / display ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self) == other
        if not isinstance(other, Polynomial):
            if isinstance(other, Number) or isinstance(other, (mpq, Var)):
                other = Polynomial.coerce(other)
            else:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list:
        """Terms in graded reverse lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda mc: _grevlex_key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)
            a = abs(c)
            if not m:
                body = _fmt_q(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_q(a)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _grevlex_key(m: tuple):
    # degree first, then a smaller exponent on the last variable wins
    deg = sum(e for _, e in m)
    return (deg, tuple((v.nkey, -e) for v, e in reversed(m)))


def _fmt_q(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RationalFunction:
    """Quotient ``num / prod(f**e)`` with primitive polynomial factors ``f``.

    The zero function is stored as ``0 / 1`` (no factors).
    """

    __slots__ = ("num", "den")

    def __init__(self, num=None, den: tuple = ()):
        if num is None:
            num = Polynomial()
        self.num: Polynomial = Polynomial.coerce(num)
        self.den: tuple = () if self.num.is_zero() else tuple(den)

    @classmethod
    def coerce(cls, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            return x
        return cls(Polynomial.coerce(x))

    @classmethod
    def quotient(cls, num, den) -> RationalFunction:
        return cls.coerce(num) / cls.coerce(den)

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def denominator(self) -> Polynomial:
        d = Polynomial.const(1)
        for f, e in self.den:
            d = d * f**e
        return d

    def variables(self) -> set:
        vs = set(self.num.variables())
        for f, _ in self.den:
            vs |= f.variables()
        return vs

    # helpers ------------------------------------------------------------
    @staticmethod
    def _merge_max(a: tuple, b: tuple) -> dict:
        d = dict(a)
        for f, e in b:
            d[f] = max(d.get(f, 0), e)
        return d

    @staticmethod
    def _lift(num: Polynomial, have: tuple, want: dict) -> Polynomial:
        have_d = dict(have)
        for f, e in want.items():
            k = e - have_d.get(f, 0)
            if k:
                num = num * f**k
        return num

    def reduced(self) -> RationalFunction:
        """Cancel every known denominator factor that divides the numerator."""
        if not self.den:
            return self
        num = self.num
        out = []
        for f, e in self.den:
            while e:
                q = num.exact_div(f)
                if q is None:
                    break
                num, e = q, e - 1
            if e:
                out.append((f, e))
        return RationalFunction(num, tuple(out))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = RationalFunction.coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        want = self._merge_max(self.den, other.den)
        num = self._lift(self.num, self.den, want) + self._lift(other.num, other.den, want)
        return RationalFunction(num, tuple(want.items())).reduced()

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalFunction()
        d = dict(self.den)
        for f, e in other.den:
            d[f] = d.get(f, 0) + e
        out = RationalFunction(self.num * other.num, tuple(d.items()))
        return out.reduced() if (self.den or other.den) else out

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        if self.num.is_constant():
            return RationalFunction(
                Polynomial.const(1 / self.num.constant_value()) * self.denominator()
            )
        c, prim = self.num.primitive()
        num = self.denominator().scale(1 / c)
        return RationalFunction(num, ((prim, 1),)).reduced()

    def __truediv__(self, other):
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num**n, tuple((f, e * n) for f, e in self.den))

    def diff(self, v: Var) -> RationalFunction:
        """Exact partial derivative (quotient rule on the factored denominator)."""
        dep = [(f, e, f.diff(v)) for f, e in self.den]
        dep = [t for t in dep if not t[2].is_zero()]
        dnum = self.num.diff(v)
        if not dep:
            return RationalFunction(dnum, self.den)
        prod_all = Polynomial.const(1)
        for f, _, _ in dep:
            prod_all = prod_all * f
        num = dnum * prod_all
        for k, (f, e, df) in enumerate(dep):
            others = Polynomial.const(1)
            for kk, (g, _, _) in enumerate(dep):
                if kk != k:
                    others = others * g
            num = num - self.num * df * others * e
        d = dict(self.den)
        for f, _, _ in dep:
            d[f] += 1
        return RationalFunction(num, tuple(d.items())).reduced()

    def evaluate(self, assignment):
        n = self.num.evaluate(assignment)
        if not self.den:
            return n
        d = self.denominator_value(assignment)
        if d == 0:
            raise PoleError("denominator vanishes at the evaluation point")
        return n / d

    def denominator_value(self, assignment):
        d = 1
        for f, e in self.den:
            d = d * f.evaluate(assignment) ** e
        return d

    def substitute(self, assignment: dict) -> RationalFunction:
        out = RationalFunction(self.num.substitute(assignment))
        for f, e in self.den:
            out = out / RationalFunction(f.substitute(assignment)) ** e
        return out

    # comparison / display ----------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        want = self._merge_max(self.den, other.den)
        return self._lift(self.num, self.den, want) == self._lift(other.num, other.den, want)

    __hash__ = None  # equality is by cross-multiplication

    def __str__(self):
        if not self.den:
            return str(self.num)
        dens = "*".join(f"({f})" if e == 1 else f"({f})^{e}" for f, e in self.den)
        return f"({self.num})/({dens})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


class RFMatrix:
    """Dense matrix of rational functions."""

    def __init__(self, rows):
        rows = [[RationalFunction.coerce(x) for x in r] for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged matrix")
        self.rows = rows

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> RFMatrix:
        m = n if m is None else m
        return cls([[0] * m for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> RFMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def is_square(self) -> bool:
        n, m = self.shape
        return n == m

    def _need_square(self):
        if not self.is_square():
            raise DimensionError(f"square matrix required, got {self.shape}")

    def transpose(self) -> RFMatrix:
        n, m = self.shape
        return RFMatrix([[self.rows[i][j] for i in range(n)] for j in range(m)])

    T = property(transpose)

    def __add__(self, other: RFMatrix) -> RFMatrix:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return RFMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: RFMatrix) -> RFMatrix:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return RFMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return RFMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> RFMatrix:
        c = RationalFunction.coerce(c)
        return RFMatrix([[a * c for a in r] for r in self.rows])

    def __matmul__(self, other: RFMatrix) -> RFMatrix:
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = RationalFunction()
                for t in range(k):
                    a = self.rows[i][t]
                    b = other.rows[t][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RFMatrix(out)

    def __eq__(self, other):
        if not isinstance(other, RFMatrix) or self.shape != other.shape:
            return False
        return all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def is_symmetric(self) -> bool:
        n, m = self.shape
        return n == m and all(
            self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n)
        )

    def trace(self) -> RationalFunction:
        self._need_square()
        acc = RationalFunction()
        for i in range(self.shape[0]):
            acc = acc + self.rows[i][i]
        return acc

    def minor(self, i: int, j: int) -> RFMatrix:
        return RFMatrix(
            [[x for c, x in enumerate(r) if c != j] for r_i, r in enumerate(self.rows) if r_i != i]
        )

    def det(self) -> RationalFunction:
        """Cofactor expansion up to 4x4, fraction-free Bareiss above."""
        self._need_square()
        n = self.shape[0]
        if n == 0:
            return RationalFunction.coerce(1)
        if n <= 4:
            return self._det_cofactor()
        return self._det_bareiss()

    def _det_cofactor(self) -> RationalFunction:
        n = self.shape[0]
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        # expand along the row with the most zeros
        i = max(range(n), key=lambda r: sum(x.is_zero() for x in self.rows[r]))
        acc = RationalFunction()
        for j, x in enumerate(self.rows[i]):
            if x.is_zero():
                continue
            term = x * self.minor(i, j)._det_cofactor()
            acc = acc + term if (i + j) % 2 == 0 else acc - term
        return acc

    def _det_bareiss(self) -> RationalFunction:
        n = self.shape[0]
        # clear denominators: M = P / D entrywise
        want: dict = {}
        for r in self.rows:
            for x in r:
                want = RationalFunction._merge_max(tuple(want.items()), x.den)
        D = RationalFunction(Polynomial.const(1), tuple(want.items()))
        P = [[RationalFunction._lift(x.num, x.den, want) for x in r] for r in self.rows]
        sign = 1
        prev = Polynomial.const(1)
        for k in range(n - 1):
            if P[k][k].is_zero():
                swap = next((r for r in range(k + 1, n) if not P[r][k].is_zero()), None)
                if swap is None:
                    return RationalFunction()
                P[k], P[swap] = P[swap], P[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    val = P[i][j] * P[k][k] - P[i][k] * P[k][j]
                    q = val.exact_div(prev)
                    assert q is not None, "Bareiss division must be exact"
                    P[i][j] = q
            prev = P[k][k]
        det_p = P[n - 1][n - 1].scale(sign)
        return RationalFunction(det_p) * D**n

    def adjugate(self) -> RFMatrix:
        self._need_square()
        n = self.shape[0]
        if n == 1:
            return RFMatrix([[1]])
        cof = [
            [
                self.minor(i, j).det() if (i + j) % 2 == 0 else -self.minor(i, j).det()
                for j in range(n)
            ]
            for i in range(n)
        ]
        return RFMatrix(cof).transpose()

    def inverse(self) -> RFMatrix:
        """Adjugate over determinant."""
        d = self.det()
        if d.is_zero():
            raise SingularMatrixError("matrix is symbolically singular")
        inv_d = d.inverse()
        return RFMatrix([[x * inv_d for x in r] for r in self.adjugate().rows])

    def diff(self, v: Var) -> RFMatrix:
        return RFMatrix([[x.diff(v) for x in r] for r in self.rows])

    def evaluate(self, assignment):
        """Numeric matrix (nested lists, or numpy array when floating)."""
        vals = [[x.evaluate(assignment) for x in r] for r in self.rows]
        if all(isinstance(x, mpq) for r in vals for x in r):
            return vals
        import numpy as np

        return np.array(vals, dtype=complex if _any_complex(vals) else float)

    def substitute(self, assignment: dict) -> RFMatrix:
        return RFMatrix([[x.substitute(assignment) for x in r] for r in self.rows])

    def __str__(self):
        return "\n".join("| " + "  ".join(str(x) for x in r) + " |" for r in self.rows)

    def __repr__(self):
        return f"RFMatrix(shape={self.shape})"


def _any_complex(vals) -> bool:
    return any(isinstance(x, complex) for r in vals for x in r)


def jacobian(f: RationalFunction, variables) -> RFMatrix:
    """1 x n row of partial derivatives, in the given variable order."""
    variables = list(variables)
    if not variables:
        raise ValueError("need at least one variable")
    f = RationalFunction.coerce(f)
    return RFMatrix([[f.diff(v) for v in variables]])


def evaluate(obj, assignment):
    """Evaluate a polynomial, rational function or RFMatrix at a point."""
    return obj.evaluate(assignment)
