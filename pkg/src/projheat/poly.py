"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a mapping from exponent tuples to nonzero rational
coefficients, tagged with an ordered tuple of variable names.  All
arithmetic is exact: coefficients are Python ints or ``fractions.Fraction``
(ints whenever the denominator is 1, so the hot paths stay in integer
arithmetic).  The canonical monomial order is graded lexicographic on the
stored variable order; it fixes leading terms, text serialization, and the
sign convention for normalized polynomials.

Division by a candidate factor is the workhorse: ``exact_divide`` either
returns the exact quotient or ``None``, and everything upstream
(vanishing orders, factor bookkeeping, fraction reduction) is built on it.
There is deliberately no general factorization; callers supply candidate
factors and this module verifies them.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

Coeff = Union[int, Fraction]


def _norm_coeff(c: Coeff) -> Coeff:
    """Canonicalize: Fractions with denominator 1 become plain ints."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _grlex_key(exp: tuple) -> tuple:
    return (sum(exp), exp)


class SparsePoly:
    """Sparse polynomial over Q with a fixed ordered variable tuple."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, Coeff] | None = None):
        self.vars = tuple(vars)
        clean: dict = {}
        if terms:
            n = len(self.vars)
            for exp, c in terms.items():
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} does not match vars {self.vars}")
                c = _norm_coeff(c)
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean

    # ---------------------------------------------------------------- basics

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "SparsePoly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: Sequence[str], c: Coeff) -> "SparsePoly":
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "SparsePoly":
        vars = tuple(vars)
        exp = [0] * len(vars)
        exp[vars.index(name)] = 1
        return cls(vars, {tuple(exp): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Coeff:
        if not self.terms:
            return 0
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def degree(self, name: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def bidegree(self) -> tuple:
        """(deg in vars[0], deg in vars[1]); rejects the zero polynomial."""
        if not self.terms:
            raise ValueError("bidegree of zero polynomial is undefined")
        if len(self.vars) != 2:
            raise ValueError("bidegree requires exactly two variables")
        return (max(e[0] for e in self.terms), max(e[1] for e in self.terms))

    def leading(self) -> tuple:
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(self.vars, other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # ------------------------------------------------------------ arithmetic

    def _check(self, other: "SparsePoly"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(self.vars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm_coeff(v)
            else:
                out.pop(e, None)
        res = SparsePoly.__new__(SparsePoly)
        res.vars, res.terms = self.vars, out
        return res

    __radd__ = __add__

    def __sub__(self, other) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other) -> "SparsePoly":
        return (-self) + other

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            other = _norm_coeff(other)
            if not other:
                return SparsePoly.zero(self.vars)
            return SparsePoly(self.vars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        res = SparsePoly.__new__(SparsePoly)
        res.vars = self.vars
        res.terms = {e: _norm_coeff(c) for e, c in out.items() if c}
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        if k < 0:
            raise ValueError("negative power")
        out = SparsePoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def evaluate(self, point: Mapping[str, Coeff] | Sequence[Coeff]) -> Fraction:
        """Exact evaluation at rational coordinates."""
        if isinstance(point, Mapping):
            vals = [Fraction(point[v]) for v in self.vars]
        else:
            vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = Fraction(c)
            for v, k in zip(vals, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        total = 0.0
        for e, c in self.terms.items():
            t = float(c)
            for v, k in zip(point, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def derivative(self, name: str) -> "SparsePoly":
        i = self.vars.index(name)
        out: dict = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return SparsePoly(self.vars, out)

    # ----------------------------------------------------- division & orders

    def exact_divide(self, q: "SparsePoly") -> Optional["SparsePoly"]:
        """Return r with self == q*r, or None when q does not divide self.

        Greedy cancellation of graded-lex leading terms; sound and complete
        for exact divisibility since leading terms are multiplicative.
        """
        self._check(q)
        if q.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return SparsePoly.zero(self.vars)
        qexp, qc = q.leading()
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            pexp = max(rem, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(pexp, qexp))
            if any(d < 0 for d in diff):
                return None
            c = _norm_coeff(Fraction(rem[pexp], qc) if isinstance(rem[pexp], int) and isinstance(qc, int)
                            else Fraction(rem[pexp]) / Fraction(qc))
            quot[diff] = c
            for qe, qco in q.terms.items():
                e = tuple(a + b for a, b in zip(diff, qe))
                v = rem.get(e, 0) - c * qco
                if v:
                    rem[e] = _norm_coeff(v)
                else:
                    rem.pop(e, None)
        res = SparsePoly.__new__(SparsePoly)
        res.vars, res.terms = self.vars, quot
        return res

    def divides(self, p: "SparsePoly") -> bool:
        return p.exact_divide(self) is not None

    def order_along(self, q: "SparsePoly") -> int:
        """Largest k with q**k dividing self (the vanishing order along q=0)."""
        if self.is_zero():
            raise ValueError("vanishing order of the zero polynomial is undefined")
        if q.is_constant():
            raise ValueError("vanishing order along a constant is undefined")
        k = 0
        cur = self
        while True:
            nxt = cur.exact_divide(q)
            if nxt is None:
                return k
            cur = nxt
            k += 1

    def multiplicity_at(self, point: Sequence[Coeff]) -> int:
        """Lowest total degree of the Taylor expansion of self at the point.

        0 exactly when the polynomial does not vanish there; 1 at a smooth
        point of the zero set; >1 at a singular point.
        """
        if self.is_zero():
            raise ValueError("multiplicity of the zero polynomial is undefined")
        pt = [Fraction(v) for v in point]
        shifted: dict = {}
        for e, c in self.terms.items():
            # expand c * prod_i (pt_i + z_i)^{e_i} one variable at a time
            partial = {(): Fraction(c)}
            for i, k in enumerate(e):
                binom = _binomial_powers(pt[i], k)
                nxt: dict = {}
                for tail, coeff in partial.items():
                    for j, b in binom:
                        key = tail + (j,)
                        nxt[key] = nxt.get(key, Fraction(0)) + coeff * b
                partial = nxt
            for key, coeff in partial.items():
                if coeff:
                    v = shifted.get(key, Fraction(0)) + coeff
                    if v:
                        shifted[key] = v
                    else:
                        shifted.pop(key, None)
        return min(sum(e) for e in shifted)

    # ---------------------------------------------------------- normal forms

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        from math import gcd, lcm
        nums = [Fraction(c).numerator for c in self.terms.values()]
        dens = [Fraction(c).denominator for c in self.terms.values()]
        g = 0
        for n in nums:
            g = gcd(g, n)
        l = 1
        for d in dens:
            l = lcm(l, d)
        return Fraction(g, l)

    def normalized(self) -> "SparsePoly":
        """Primitive integer-coefficient form with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        _, lead = self.leading()
        if lead < 0:
            c = -c
        return self * (1 / c)

    def signed_content(self) -> Fraction:
        """Content carrying the sign of the leading coefficient."""
        if not self.terms:
            return Fraction(0)
        c = self.content()
        _, lead = self.leading()
        return -c if lead < 0 else c

    # -------------------------------------------------------------- renaming

    def rename(self, mapping: Mapping[str, str]) -> "SparsePoly":
        newvars = tuple(mapping.get(v, v) for v in self.vars)
        return SparsePoly(newvars, self.terms)

    def with_vars(self, vars: Sequence[str]) -> "SparsePoly":
        """Re-embed into a superset/reordering of the current variables."""
        vars = tuple(vars)
        idx = []
        for v in self.vars:
            if self.degree(v) > 0 and v not in vars:
                raise ValueError(f"variable {v} not present in {vars}")
            idx.append(vars.index(v) if v in vars else None)
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for pos, k in zip(idx, e):
                if pos is None:
                    continue
                ne[pos] = k
            out[tuple(ne)] = c
        return SparsePoly(vars, out)

    # ------------------------------------------------------------------ text

    def to_text(self) -> str:
        """Canonical serialization: graded-lex descending, explicit exponents."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e) if k
            )
            if not mono:
                body = str(abs(Fraction(c)))
            elif abs(Fraction(c)) == 1:
                body = mono
            else:
                body = f"{abs(Fraction(c))}*{mono}"
            sign = "-" if Fraction(c) < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __str__ = to_text

    def __repr__(self):
        return f"SparsePoly({self.vars}, {self.to_text()!r})"


def _binomial_powers(a: Fraction, k: int) -> list:
    """[(j, C(k,j)*a^(k-j)) for j in 0..k] — one factor of a Taylor shift."""
    out = []
    coeff = Fraction(1)
    apow = [Fraction(1)]
    for _ in range(k):
        apow.append(apow[-1] * a)
    binom = 1
    for j in range(k + 1):
        out.append((j, binom * apow[k - j]))
        binom = binom * (k - j) // (j + 1)
    return out


# ------------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-|/|\(|\))")


def parse(text: str, vars: Sequence[str]) -> SparsePoly:
    """Parse '+,-,*,^,/' expressions in the given variables.

    Division is only allowed by constants (rational coefficients).
    """
    vars = tuple(vars)
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad token at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(None)  # sentinel
    it = {"i": 0}

    def peek():
        return tokens[it["i"]]

    def pop():
        t = tokens[it["i"]]
        it["i"] += 1
        return t

    def parse_expr() -> SparsePoly:
        node = parse_term()
        while peek() in ("+", "-"):
            op = pop()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term() -> SparsePoly:
        node = parse_factor()
        while peek() in ("*", "/"):
            op = pop()
            rhs = parse_factor()
            if op == "*":
                node = node * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ValueError("division only by nonzero constants")
                node = node * (Fraction(1) / Fraction(rhs.constant_value()))
        return node

    def parse_factor() -> SparsePoly:
        node = parse_base()
        while peek() == "^":
            pop()
            k = pop()
            if not (k and k.isdigit()):
                raise ValueError("exponent must be a nonnegative integer")
            node = node ** int(k)
        return node

    def parse_base() -> SparsePoly:
        t = pop()
        if t == "(":
            node = parse_expr()
            if pop() != ")":
                raise ValueError("unbalanced parentheses")
            return node
        if t == "-":
            return -parse_factor()
        if t == "+":
            return parse_factor()
        if t is None:
            raise ValueError("unexpected end of input")
        if t.isdigit():
            return SparsePoly.const(vars, int(t))
        if t in vars:
            return SparsePoly.var(vars, t)
        raise ValueError(f"unknown variable {t!r} (expected one of {vars})")

    node = parse_expr()
    if peek() is not None:
        raise ValueError(f"trailing input near {peek()!r}")
    return node


# ------------------------------------------------------- gcd and resultants

def _as_univar(p: SparsePoly, name: str) -> dict:
    """Split into {k: coefficient poly} by powers of one variable."""
    i = p.vars.index(name)
    out: dict = {}
    for e, c in p.terms.items():
        k = e[i]
        ne = list(e)
        ne[i] = 0
        bucket = out.setdefault(k, {})
        bucket[tuple(ne)] = c
    return {k: SparsePoly(p.vars, b) for k, b in out.items()}


def _from_univar(coeffs: Mapping[int, SparsePoly], name: str, vars: Sequence[str]) -> SparsePoly:
    vars = tuple(vars)
    i = vars.index(name)
    out: dict = {}
    for k, poly in coeffs.items():
        for e, c in poly.terms.items():
            ne = list(e)
            ne[i] += k
            out[tuple(ne)] = out.get(tuple(ne), 0) + c
    return SparsePoly(vars, out)


def _lc(p: SparsePoly, name: str) -> SparsePoly:
    """Leading coefficient of p as a polynomial in one variable."""
    uni = _as_univar(p, name)
    return uni[max(uni)]


def _pseudo_rem(a: SparsePoly, b: SparsePoly, name: str) -> SparsePoly:
    """Pseudo-remainder: lc(b)^(da-db+1) * a reduced modulo b."""
    da, db = a.degree(name), b.degree(name)
    lcb = _lc(b, name)
    i = a.vars.index(name)
    r = a
    # keep the scaling exact: multiply the remainder by lc(b) at each step
    steps = da - db + 1
    for _ in range(steps):
        dr = r.degree(name)
        if dr < db or r.is_zero():
            r = r * (lcb ** (steps - _))
            break
        lcr = _lc(r, name)
        shift = [0] * len(a.vars)
        shift[i] = dr - db
        mono = SparsePoly(a.vars, {tuple(shift): 1})
        r = r * lcb - b * (lcr * mono)
    return r


def _content_in(p: SparsePoly, name: str) -> SparsePoly:
    coeffs = list(_as_univar(p, name).values())
    g = SparsePoly.zero(p.vars)
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.is_constant() and not g.is_zero():
            break
    return g


def poly_gcd(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    """Normalized gcd over Q (primitive, positive graded-lex leading coefficient).

    Subresultant pseudo-remainder sequence in a shared main variable, with
    recursive content extraction; over Q the gcd of nonzero constants is 1.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    if p.is_constant() or q.is_constant():
        return SparsePoly.const(p.vars, 1)
    shared = [v for v in p.vars if p.degree(v) > 0 and q.degree(v) > 0]
    if not shared:
        return SparsePoly.const(p.vars, 1)
    name = min(shared, key=lambda v: min(p.degree(v), q.degree(v)))

    cp, cq = _content_in(p, name), _content_in(q, name)
    pp = p.exact_divide(cp)
    qq = q.exact_divide(cq)
    cont = poly_gcd(cp, cq)

    a, b = (pp, qq) if pp.degree(name) >= qq.degree(name) else (qq, pp)
    g = SparsePoly.const(p.vars, 1)
    h = SparsePoly.const(p.vars, 1)
    while True:
        d = a.degree(name) - b.degree(name)
        r = _pseudo_rem(a, b, name)
        if r.is_zero():
            result = b.exact_divide(_content_in(b, name))
            break
        if r.degree(name) == 0:
            result = SparsePoly.const(p.vars, 1)
            break
        a, b = b, r.exact_divide(g * h ** d)
        g = _lc(a, name)
        if d == 1:
            h = g
        elif d > 1:
            h = (g ** d).exact_divide(h ** (d - 1))
    return (cont * result).normalized()


def poly_det(matrix: Sequence[Sequence[SparsePoly]]) -> SparsePoly:
    """Fraction-free (Bareiss) determinant of a square polynomial matrix."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    vars = matrix[0][0].vars
    a = [[m for m in row] for row in matrix]
    sign = 1
    prev = SparsePoly.const(vars, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return SparsePoly.zero(vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.exact_divide(prev)
            a[i][k] = SparsePoly.zero(vars)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def resultant(p: SparsePoly, q: SparsePoly, name: str) -> SparsePoly:
    """Sylvester resultant eliminating one variable.

    The result is a polynomial in the remaining variables; it vanishes at a
    point iff p and q share a root in the eliminated variable there or both
    leading coefficients vanish.
    """
    dp, dq = p.degree(name), q.degree(name)
    if dp < 1 or dq < 1:
        raise ValueError("resultant requires positive degree in the eliminated variable")
    up = _as_univar(p, name)
    uq = _as_univar(q, name)
    zero = SparsePoly.zero(p.vars)
    n = dp + dq
    rows = []
    for shift in range(dq):
        row = [zero] * n
        for k, c in up.items():
            row[shift + dp - k] = c
        rows.append(row)
    for shift in range(dp):
        row = [zero] * n
        for k, c in uq.items():
            row[shift + dq - k] = c
        rows.append(row)
    return poly_det(rows)


# --------------------------------------------------------- random specializer

_SPECIALIZE_POINTS = [Fraction(a, b) for b in (1, 2, 3, 5, 7) for a in
                      (3, -2, 5, -7, 11, 13, -17, 19, 23, -29)]


def _univar_coeff_list(p: SparsePoly, name: str) -> list:
    i = p.vars.index(name)
    d = p.degree(name)
    out = [Fraction(0)] * (d + 1)
    for e, c in p.terms.items():
        others = [k for j, k in enumerate(e) if j != i]
        if any(others):
            raise ValueError("polynomial is not univariate")
        out[e[i]] += Fraction(c)
    return out


def coprime_in_variable(p: SparsePoly, q: SparsePoly, name: str) -> bool:
    """Certify deg_name(gcd(p, q)) == 0 via an exact specialization.

    For any point where the leading coefficient of p in the main variable
    stays nonzero, the specialized univariate gcd bounds the degree of the
    true gcd from above; a constant specialized gcd is therefore a proof.
    """
    others = [v for v in p.vars if v != name]
    lcp = _lc(p, name)
    for val in _SPECIALIZE_POINTS:
        pt = {v: val + i for i, v in enumerate(others)}
        if lcp.evaluate({**pt, name: 0}) == 0:
            continue
        pu = _specialize_others(p, name, pt)
        qu = _specialize_others(q, name, pt)
        if qu.is_zero():
            continue
        g = _univar_gcd_frac(_univar_coeff_list(pu, name), _univar_coeff_list(qu, name))
        return len(g) == 1
    return False  # no usable specialization found; caller falls back


def _specialize_others(p: SparsePoly, name: str, point: Mapping[str, Fraction]) -> SparsePoly:
    i = p.vars.index(name)
    out: dict = {}
    for e, c in p.terms.items():
        val = Fraction(c)
        for j, v in enumerate(p.vars):
            if j != i and e[j]:
                val *= point[v] ** e[j]
        key = tuple(k if j == i else 0 for j, k in enumerate(e))
        out[key] = out.get(key, Fraction(0)) + val
    return SparsePoly(p.vars, out)


def _univar_gcd_frac(a: list, b: list) -> list:
    """Euclidean gcd of coefficient lists (ascending), result monic-ish list."""
    def trim(c):
        while c and not c[-1]:
            c.pop()
        return c

    a, b = trim(list(a)), trim(list(b))
    while b:
        # a mod b
        a = list(a)
        while len(a) >= len(b):
            f = Fraction(a[-1]) / Fraction(b[-1])
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[shift + i] -= f * bc
            trim(a)
            if not a:
                break
        a, b = b, a
    return a if a else [Fraction(0)]


# ----------------------------------------------------------- rational functions

class RationalFunction:
    """Quotient of two SparsePolys, kept reduced with a canonical denominator.

    The denominator is primitive with positive graded-lex leading
    coefficient; the numerator absorbs the scalar.  Equal rational functions
    therefore have identical (num, den) pairs.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SparsePoly, den: SparsePoly, *,
                 reduce: bool = True, hints: Iterable[SparsePoly] = ()):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = num
            self.den = SparsePoly.const(den.vars, 1)
            return
        if reduce:
            num, den = _reduce_pair(num, den, tuple(hints))
        c = den.signed_content()
        den = den * (1 / c)
        num = num * (1 / c)
        self.num, self.den = num, den

    @classmethod
    def from_poly(cls, p: SparsePoly) -> "RationalFunction":
        return cls(p, SparsePoly.const(p.vars, 1), reduce=False)

    @property
    def vars(self):
        return self.num.vars

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return Fraction(self.num.constant_value()) / Fraction(self.den.constant_value())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        r = RationalFunction.__new__(RationalFunction)
        r.num, r.den = -self.num, self.den
        return r

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    __radd__ = __add__

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, SparsePoly):
            return RationalFunction.from_poly(other)
        return RationalFunction.from_poly(SparsePoly.const(self.vars, other))

    def reciprocal(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        return RationalFunction(self.den, self.num, reduce=False)

    def derivative(self, name: str) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative(name) * d - n * d.derivative(name), d * d)

    def evaluate_pair(self, point) -> tuple:
        """(numerator value, denominator value), both exact Fractions."""
        return self.num.evaluate(point), self.den.evaluate(point)

    def rename(self, mapping: Mapping[str, str]) -> "RationalFunction":
        r = RationalFunction.__new__(RationalFunction)
        r.num, r.den = self.num.rename(mapping), self.den.rename(mapping)
        return r

    def to_text(self) -> str:
        if self.den == SparsePoly.const(self.den.vars, 1):
            return self.num.to_text()
        return f"({self.num.to_text()}) / ({self.den.to_text()})"

    __str__ = to_text

    def __repr__(self):
        return f"RationalFunction({self.to_text()})"


def _reduce_pair(num: SparsePoly, den: SparsePoly, hints: tuple) -> tuple:
    """Cancel the full gcd from a fraction.

    Known candidate factors are stripped first (cheap exact divisions), then
    coprimality is certified by specialization; only if that fails does the
    full multivariate gcd run.
    """
    for f in hints:
        if f.is_constant():
            continue
        while True:
            n2 = num.exact_divide(f)
            if n2 is None:
                break
            d2 = den.exact_divide(f)
            if d2 is None:
                break
            num, den = n2, d2
    if den.is_constant() or num.is_constant():
        return num, den
    shared = [v for v in num.vars if num.degree(v) > 0 and den.degree(v) > 0]
    if all(coprime_in_variable(num, den, v) for v in shared):
        return num, den
    g = poly_gcd(num, den)
    if not g.is_constant():
        num = num.exact_divide(g)
        den = den.exact_divide(g)
    return num, den


def substitute_fraction(p: SparsePoly, repl: Mapping[str, RationalFunction]) -> RationalFunction:
    """p with each variable replaced by a rational function (exact, cleared).

    All replacement functions must share one variable tuple, which becomes
    the variables of the result.  Denominators are cleared per variable
    degree, so the result is a single unreduced fraction; the constructor
    then reduces it.
    """
    if p.is_zero():
        some = next(iter(repl.values()))
        return RationalFunction.from_poly(SparsePoly.zero(some.vars))
    new_vars = next(iter(repl.values())).vars
    degs = {v: max((e[i] for e in p.terms), default=0) for i, v in enumerate(p.vars)}
    pows: dict = {}
    for v in p.vars:
        f = repl[v]
        d = degs[v]
        num_pows = [SparsePoly.const(new_vars, 1)]
        den_pows = [SparsePoly.const(new_vars, 1)]
        for _ in range(d):
            num_pows.append(num_pows[-1] * f.num)
            den_pows.append(den_pows[-1] * f.den)
        pows[v] = (num_pows, den_pows, d)
    total_num = SparsePoly.zero(new_vars)
    for e, c in p.terms.items():
        term = SparsePoly.const(new_vars, c)
        for i, v in enumerate(p.vars):
            num_pows, den_pows, d = pows[v]
            term = term * num_pows[e[i]] * den_pows[d - e[i]]
        total_num = total_num + term
    total_den = SparsePoly.const(new_vars, 1)
    for v in p.vars:
        num_pows, den_pows, d = pows[v]
        total_den = total_den * den_pows[d]
    return RationalFunction(total_num, total_den)
