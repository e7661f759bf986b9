"""Exact sparse multivariate polynomials over Q.

Variables are ``x1 .. xn``; public variable indices are 1-based so they line
up with vertex labels. Terms live in a dict ``{exponent tuple: Fraction}``
that never stores a zero coefficient.
"""
from __future__ import annotations

import heapq
import re
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "MultiPoly",
    "UniPolyOverS",
    "poly_arith",
    "substitute_equal",
    "exact_div",
    "det_poly_matrix",
    "det_cofactor",
    "det_bareiss",
    "monomial_transversals",
    "parse_poly",
    "grlex_key",
]


def grlex_key(exp: tuple) -> tuple:
    """Sort key putting larger monomials first under graded lex."""
    return (-sum(exp), tuple(-e for e in exp))


class MultiPoly:
    __slots__ = ("n_vars", "terms", "_hash")

    def __init__(self, n_vars: int, terms=None):
        self.n_vars = n_vars
        clean = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != n_vars:
                    raise ValueError(f"exponent {exp} does not have {n_vars} entries")
                if c:
                    clean[tuple(exp)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n_vars: int, terms: dict) -> "MultiPoly":
        # terms already canonical: tuple keys, nonzero Fraction values
        p = cls.__new__(cls)
        p.n_vars = n_vars
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, n_vars: int) -> "MultiPoly":
        return cls._raw(n_vars, {})

    @classmethod
    def constant(cls, n_vars: int, c=1) -> "MultiPoly":
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def var(cls, n_vars: int, i: int) -> "MultiPoly":
        _check_index(i, n_vars)
        exp = [0] * n_vars
        exp[i - 1] = 1
        return cls._raw(n_vars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def linear_diff(cls, n_vars: int, i: int, j: int) -> "MultiPoly":
        """x_i - x_j."""
        return cls.var(n_vars, i) - cls.var(n_vars, j)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading(self) -> tuple[tuple, Fraction]:
        exp = min(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def constant_value(self) -> Fraction | None:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            exp, c = next(iter(self.terms.items()))
            if not any(exp):
                return c
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.n_vars == other.n_vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n_vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # arithmetic
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.n_vars != self.n_vars:
                raise ValueError(f"variable count mismatch: {self.n_vars} vs {other.n_vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.n_vars, other)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.n_vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero(self.n_vars)
            return MultiPoly._raw(self.n_vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return MultiPoly._raw(self.n_vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.n_vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_monomial(self, exp: Sequence[int], c=1) -> "MultiPoly":
        if not c:
            return MultiPoly.zero(self.n_vars)
        c = Fraction(c)
        return MultiPoly._raw(
            self.n_vars,
            {tuple(x + y for x, y in zip(e, exp)): v * c for e, v in self.terms.items()},
        )

    def substitute_equal(self, i: int, j: int) -> "MultiPoly":
        return substitute_equal(self, i, j)

    def set_zero(self, i: int) -> "MultiPoly":
        """Image under x_i -> 0."""
        _check_index(i, self.n_vars)
        return MultiPoly._raw(self.n_vars, {e: c for e, c in self.terms.items() if not e[i - 1]})

    def shift(self, r: int) -> "MultiPoly":
        """Image under x_u -> x_u - x_r for every u != r (x_r itself fixed)."""
        _check_index(r, self.n_vars)
        n = self.n_vars
        xr = MultiPoly.var(n, r)
        shifted = [MultiPoly.var(n, u) - xr if u != r else xr for u in range(1, n + 1)]
        out = MultiPoly.zero(n)
        for e, c in self.terms.items():
            t = MultiPoly.constant(n, c)
            for u, k in enumerate(e):
                if k:
                    t = t * shifted[u] ** k
            out = out + t
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exp in sorted(self.terms, key=grlex_key):
            c = self.terms[exp]
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(exp) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)


def _check_index(i: int, n: int) -> None:
    if not (1 <= i <= n):
        raise IndexError(f"variable index {i} outside 1..{n}")


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if a.n_vars != b.n_vars:
        raise ValueError(f"variable count mismatch: {a.n_vars} vs {b.n_vars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def substitute_equal(p: MultiPoly, i: int, j: int) -> MultiPoly:
    """Image of p under x_i -> x_j; zero exactly when (x_i - x_j) divides p."""
    _check_index(i, p.n_vars)
    _check_index(j, p.n_vars)
    if i == j:
        raise ValueError("substitute_equal needs two distinct variables")
    a, b = i - 1, j - 1
    out: dict = {}
    for e, c in p.terms.items():
        if e[a]:
            f = list(e)
            f[b] += f[a]
            f[a] = 0
            e = tuple(f)
        out[e] = out.get(e, 0) + c
    return MultiPoly._raw(p.n_vars, {e: c for e, c in out.items() if c})


def exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Quotient a / b; raises ValueError when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = a.n_vars
    lb, cb = b.leading()
    rest = [(e, v) for e, v in b.terms.items() if e != lb]
    rem = dict(a.terms)
    # each step only creates terms below the one it cancels, so a heap with
    # lazy deletion always yields the current leading term
    heap = [(grlex_key(e), e) for e in rem]
    heapq.heapify(heap)
    q: dict = {}
    while heap:
        _, la = heapq.heappop(heap)
        ca = rem.pop(la, 0)
        if not ca:
            continue
        diff = tuple(x - y for x, y in zip(la, lb))
        if any(d < 0 for d in diff):
            raise ValueError("division is not exact")
        c = ca / cb
        q[diff] = c
        for e, v in rest:
            m = tuple(x + y for x, y in zip(e, diff))
            if m not in rem:
                heapq.heappush(heap, (grlex_key(m), m))
            rem[m] = rem.get(m, 0) - v * c
    return MultiPoly(n, q)


# -- determinants --------------------------------------------------------------


def _square(m: Sequence[Sequence[MultiPoly]]) -> int:
    k = len(m)
    if any(len(row) != k for row in m):
        raise ValueError("determinant needs a square matrix")
    return k


def det_cofactor(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Laplace expansion along the first row, skipping zero entries."""
    k = _square(m)
    if k == 0:
        raise ValueError("empty matrix")
    n_vars = m[0][0].n_vars

    def rec(rows: tuple, cols: tuple) -> MultiPoly:
        if len(rows) == 1:
            return m[rows[0]][cols[0]]
        r0, rest = rows[0], rows[1:]
        out = MultiPoly.zero(n_vars)
        for idx, c in enumerate(cols):
            entry = m[r0][c]
            if entry.is_zero():
                continue
            minor = rec(rest, cols[:idx] + cols[idx + 1:])
            if minor.is_zero():
                continue
            term = entry * minor
            out = out + term if idx % 2 == 0 else out - term
        return out

    return rec(tuple(range(k)), tuple(range(k)))


def det_bareiss(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Fraction-free elimination; each division by the previous pivot is exact."""
    k = _square(m)
    if k == 0:
        raise ValueError("empty matrix")
    n_vars = m[0][0].n_vars
    a = [list(row) for row in m]
    sign = 1
    prev = MultiPoly.constant(n_vars, 1)
    for col in range(k - 1):
        if a[col][col].is_zero():
            swap = next((r for r in range(col + 1, k) if not a[r][col].is_zero()), None)
            if swap is None:
                return MultiPoly.zero(n_vars)
            a[col], a[swap] = a[swap], a[col]
            sign = -sign
        piv = a[col][col]
        for i in range(col + 1, k):
            lead = a[i][col]
            for j in range(col + 1, k):
                num = piv * a[i][j] - lead * a[col][j]
                a[i][j] = exact_div(num, prev) if not num.is_zero() else num
            a[i][col] = MultiPoly.zero(n_vars)
        prev = piv
    det = a[k - 1][k - 1]
    return det if sign > 0 else -det


def det_poly_matrix(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    k = _square(m)
    if k <= 5:
        return det_cofactor(m)
    return det_bareiss(m)


# -- monomial ideals -----------------------------------------------------------


def monomial_transversals(var_sets: Iterable[Iterable]) -> list[frozenset]:
    """Inclusion-minimal sets Y meeting every given variable set.

    The squarefree monomials prod(Y) generate the intersection of the ideals
    generated by the individual sets.
    """
    sets = [frozenset(s) for s in var_sets]
    if any(not s for s in sets):
        raise ValueError("an empty variable set generates the zero ideal")
    current = {frozenset()}
    for s in sets:
        grown = set()
        for y in current:
            if y & s:
                grown.add(y)
            else:
                grown.update(y | {z} for z in s)
        current = {y for y in grown if not any(o < y for o in grown)}
    return sorted(current, key=lambda y: (len(y), sorted(map(str, y))))


# -- S[y] ------------------------------------------------------------------------


class UniPolyOverS:
    """A polynomial in one extra variable y with coefficients in S."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[MultiPoly]):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def y_power(cls, n_vars: int, k: int) -> "UniPolyOverS":
        zero = MultiPoly.zero(n_vars)
        return cls([zero] * k + [MultiPoly.constant(n_vars, 1)])

    @classmethod
    def constant(cls, c: MultiPoly) -> "UniPolyOverS":
        return cls([c])

    @classmethod
    def from_roots(cls, n_vars: int, roots: Iterable[int]) -> "UniPolyOverS":
        """prod (y - x_r) over the given variable indices."""
        out = cls([MultiPoly.constant(n_vars, 1)])
        for r in roots:
            out = out * cls([-MultiPoly.var(n_vars, r), MultiPoly.constant(n_vars, 1)])
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "UniPolyOverS") -> "UniPolyOverS":
        if self.is_zero() or other.is_zero():
            return UniPolyOverS([])
        n_vars = self.coeffs[0].n_vars
        out = [MultiPoly.zero(n_vars) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPolyOverS(out)

    def evaluate_at_var(self, k: int, n_vars: int) -> MultiPoly:
        """p(x_k): substitute y -> x_k."""
        xk = MultiPoly.var(n_vars, k)
        out = MultiPoly.zero(n_vars)
        power = MultiPoly.constant(n_vars, 1)
        for c in self.coeffs:
            if not c.is_zero():
                out = out + c * power
            power = power * xk
        return out

    def __repr__(self) -> str:
        return "UniPolyOverS(" + ", ".join(str(c) for c in self.coeffs) + ")"


# -- parsing of rendered polynomials ---------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\S))")


def parse_poly(text: str, n_vars: int) -> MultiPoly:
    """Parse the canonical rendering (and factored forms like ``(x1-x2)*(x2-x3)``)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        num, var, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif var is not None:
            tokens.append(("var", int(var)))
        elif sym in "+-*/^()":
            tokens.append(("sym", sym))
        else:
            raise ValueError(f"unexpected character {sym!r}")
        pos = m.end()
    tokens.append(("end", None))
    k = 0

    def peek():
        return tokens[k]

    def take(kind=None, val=None):
        nonlocal k
        tok = tokens[k]
        if (kind and tok[0] != kind) or (val is not None and tok[1] != val):
            raise ValueError(f"unexpected token {tok[1]!r} in {text!r}")
        k += 1
        return tok

    def expr():
        neg = False
        if peek() == ("sym", "-"):
            take()
            neg = True
        elif peek() == ("sym", "+"):
            take()
        out = term()
        if neg:
            out = -out
        while peek() in (("sym", "+"), ("sym", "-")):
            op = take()[1]
            t = term()
            out = out + t if op == "+" else out - t
        return out

    def term():
        out = power()
        while peek() in (("sym", "*"), ("sym", "/")):
            op = take()[1]
            rhs = power()
            if op == "*":
                out = out * rhs
            else:
                c = rhs.constant_value()
                if c is None or c == 0:
                    raise ValueError("division only by nonzero constants")
                out = out * (1 / c)
        return out

    def power():
        base = atom()
        if peek() == ("sym", "^"):
            take()
            exp = take("num")[1]
            base = base ** exp
        return base

    def atom():
        tok = peek()
        if tok[0] == "num":
            take()
            return MultiPoly.constant(n_vars, tok[1])
        if tok[0] == "var":
            take()
            if not 1 <= tok[1] <= n_vars:
                raise ValueError(f"variable x{tok[1]} outside x1..x{n_vars} in {text!r}")
            return MultiPoly.var(n_vars, tok[1])
        if tok == ("sym", "("):
            take()
            out = expr()
            take("sym", ")")
            return out
        if tok == ("sym", "-"):
            take()
            return -atom()
        raise ValueError(f"unexpected token {tok[1]!r} in {text!r}")

    out = expr()
    take("end")
    return out
