"""Sparse multivariate polynomials over exact rationals.

Coefficients live in Q (``fractions.Fraction``); monomials are stored in a
dict keyed by exponent tuples. Representations are canonical: zero
coefficients are dropped, unused variables are stripped, and the variable
list follows a fixed global order (``t`` first, then the weight symbols
``l0``, ``l1``, ..., then everything else in natural order). Term order for
display and leading-term queries is graded lexicographic.

Polynomial gcds are computed by recursive content/primitive-part reduction
with a subresultant pseudo-remainder sequence in the selected main variable.
A cheap evaluation certificate short-circuits the common coprime case.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd as int_gcd

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ExactDivisionError(ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


_NAME_RE = re.compile(r"^([A-Za-z_]+?)(\d+)?$")


def variable_sort_key(name: str):
    """Key for the global variable order: t, then l0, l1, ..., then the rest."""
    if name == "t":
        return (0, "", 0)
    m = _NAME_RE.match(name)
    if m and m.group(2) is not None:
        head, idx = m.group(1), int(m.group(2))
        if head == "l":
            return (1, "", idx)
        return (2, head, idx)
    return (2, name, -1)


@lru_cache(maxsize=8192)
def _merge_variables(vars_a: tuple, vars_b: tuple):
    """Merged variable tuple plus the position of each input variable in it."""
    merged = tuple(sorted(set(vars_a) | set(vars_b), key=variable_sort_key))
    pos = {v: i for i, v in enumerate(merged)}
    return merged, tuple(pos[v] for v in vars_a), tuple(pos[v] for v in vars_b)


def _embed(terms, positions, width):
    if positions == tuple(range(width)):
        return dict(terms)
    out = {}
    for expo, coeff in terms.items():
        key = [0] * width
        for p, e in zip(positions, expo):
            key[p] = e
        out[tuple(key)] = coeff
    return out


def _grlex_key(expo):
    return (sum(expo), expo)


class SparsePoly:
    """Immutable sparse polynomial over Q."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables=(), terms=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable in {variables!r}")
        raw = terms or {}
        clean = {}
        for expo, coeff in raw.items():
            coeff = Fraction(coeff)
            if coeff:
                clean[tuple(expo)] = coeff
        order = sorted(range(len(variables)), key=lambda i: variable_sort_key(variables[i]))
        if order != list(range(len(variables))):
            variables = tuple(variables[i] for i in order)
            clean = {tuple(e[i] for i in order): c for e, c in clean.items()}
        if variables:
            used = [i for i in range(len(variables)) if any(e[i] for e in clean)]
            if len(used) != len(variables):
                variables = tuple(variables[i] for i in used)
                clean = {tuple(e[i] for i in used): c for e, c in clean.items()}
        self.variables = variables
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "SparsePoly":
        return cls((), {})

    @classmethod
    def const(cls, value) -> "SparsePoly":
        value = Fraction(value)
        return cls((), {(): value} if value else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "SparsePoly":
        if power < 0:
            raise ValueError("negative exponent")
        if power == 0:
            return cls.const(1)
        return cls((name,), {(power,): _ONE})

    # -- structure queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.variables

    def const_value(self) -> Fraction:
        if self.variables:
            raise ValueError(f"not a constant: {self}")
        return self.terms.get((), _ZERO)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if name not in self.variables:
            return 0
        i = self.variables.index(name)
        return max(e[i] for e in self.terms)

    def leading_term(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        if not self.terms:
            return (), _ZERO
        expo = max(self.terms, key=_grlex_key)
        return expo, self.terms[expo]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    # -- arithmetic ---------------------------------------------------------

    def _aligned(self, other):
        merged, pa, pb = _merge_variables(self.variables, other.variables)
        w = len(merged)
        return merged, _embed(self.terms, pa, w), _embed(other.terms, pb, w)

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.const(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        merged, ta, tb = self._aligned(other)
        for expo, coeff in tb.items():
            cur = ta.get(expo)
            if cur is None:
                ta[expo] = coeff
            else:
                cur = cur + coeff
                if cur:
                    ta[expo] = cur
                else:
                    del ta[expo]
        return SparsePoly(merged, ta)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return SparsePoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.const(other)
        if self.is_zero() or other.is_zero():
            return SparsePoly.zero()
        if self.is_const():
            return other.scale(self.const_value())
        if other.is_const():
            return self.scale(other.const_value())
        merged, ta, tb = self._aligned(other)
        if len(ta) > len(tb):
            ta, tb = tb, ta
        out = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                cur = out.get(key)
                if cur is None:
                    out[key] = ca * cb
                else:
                    cur = cur + ca * cb
                    if cur:
                        out[key] = cur
                    else:
                        del out[key]
        return SparsePoly(merged, out)

    __rmul__ = __mul__

    def scale(self, factor) -> "SparsePoly":
        factor = Fraction(factor)
        if not factor:
            return SparsePoly.zero()
        if factor == 1:
            return self
        return SparsePoly(self.variables, {e: c * factor for e, c in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = SparsePoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def derivative(self, name: str) -> "SparsePoly":
        if name not in self.variables:
            return SparsePoly.zero()
        i = self.variables.index(name)
        out = {}
        for expo, coeff in self.terms.items():
            e = expo[i]
            if e:
                key = expo[:i] + (e - 1,) + expo[i + 1:]
                out[key] = out.get(key, _ZERO) + coeff * e
        return SparsePoly(self.variables, out)

    def substitute(self, mapping) -> "SparsePoly":
        """Substitute variables by Fractions or polynomials."""
        mapping = {k: (v if isinstance(v, SparsePoly) else SparsePoly.const(v))
                   for k, v in mapping.items()
                   if k in self.variables}
        if not mapping:
            return self
        result = SparsePoly.zero()
        for expo, coeff in self.terms.items():
            term = SparsePoly.const(coeff)
            for name, e in zip(self.variables, expo):
                if not e:
                    continue
                base = mapping.get(name, SparsePoly.var(name))
                term = term * base ** e
            result = result + term
        return result

    # -- conversions ---------------------------------------------------------

    def coefficients_in(self, name: str):
        """View as a univariate polynomial in ``name``: {degree: coefficient poly}."""
        if name not in self.variables:
            return {0: self} if self.terms else {}
        i = self.variables.index(name)
        rest = self.variables[:i] + self.variables[i + 1:]
        out = {}
        for expo, coeff in self.terms.items():
            d = expo[i]
            key = expo[:i] + expo[i + 1:]
            bucket = out.setdefault(d, {})
            bucket[key] = coeff
        return {d: SparsePoly(rest, bucket) for d, bucket in out.items()}

    @staticmethod
    def from_coefficients_in(name: str, coeffs) -> "SparsePoly":
        result = SparsePoly.zero()
        x = SparsePoly.var(name)
        for d, poly in coeffs.items():
            result = result + poly * x ** d
        return result

    # -- comparisons / display ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for expo, coeff in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.variables, expo) if e
            )
            if not mono:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{abs(coeff)}*{mono}"
            sign = "-" if coeff < 0 else "+"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Exact division
# ---------------------------------------------------------------------------

def divexact(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    """Exact quotient p/q; raises ExactDivisionError if q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero")
    if p.is_zero():
        return p
    if q.is_const():
        return p.scale(_ONE / q.const_value())
    merged, tp, tq = p._aligned(q)
    q_expo = max(tq, key=_grlex_key)
    q_coeff = tq[q_expo]
    rem = tp
    quotient = {}
    while rem:
        r_expo = max(rem, key=_grlex_key)
        diff = tuple(a - b for a, b in zip(r_expo, q_expo))
        if any(d < 0 for d in diff):
            raise ExactDivisionError("inexact polynomial division")
        c = rem[r_expo] / q_coeff
        quotient[diff] = c
        for eq, cq in tq.items():
            key = tuple(a + b for a, b in zip(diff, eq))
            cur = rem.get(key, _ZERO) - c * cq
            if cur:
                rem[key] = cur
            elif key in rem:
                del rem[key]
    return SparsePoly(merged, quotient)


def divides(q: SparsePoly, p: SparsePoly) -> bool:
    try:
        divexact(p, q)
        return True
    except ExactDivisionError:
        return False


# ---------------------------------------------------------------------------
# Content and canonical form
# ---------------------------------------------------------------------------

def rational_content(p: SparsePoly) -> Fraction:
    """Positive rational c such that p/c has coprime integer coefficients."""
    if p.is_zero():
        return _ONE
    num = 0
    den = 1
    for c in p.terms.values():
        num = int_gcd(num, c.numerator)
        den = den * c.denominator // int_gcd(den, c.denominator)
    return Fraction(num, den)


def canonical_primitive(p: SparsePoly) -> SparsePoly:
    """Scale p to coprime integer coefficients with positive leading coefficient."""
    if p.is_zero():
        return p
    c = rational_content(p)
    if p.leading_coefficient() < 0:
        c = -c
    return p.scale(_ONE / c)


# ---------------------------------------------------------------------------
# Univariate helpers (coefficient lists, used by the gcd certificate)
# ---------------------------------------------------------------------------

def _list_normalize(a):
    while a and not a[-1]:
        a.pop()
    return a


def _list_mod(a, b):
    a = list(a)
    db = len(b) - 1
    inv = _ONE / b[-1]
    while len(a) - 1 >= db and a:
        factor = a[-1] * inv
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] -= factor * bc
        a.pop()
        _list_normalize(a)
    return a


def _list_gcd(a, b):
    a = _list_normalize(list(a))
    b = _list_normalize(list(b))
    while b:
        a, b = b, _list_mod(a, b)
    return a


def _specialize_univariate(p: SparsePoly, keep: str, assign):
    """Coefficient list of p in ``keep`` after substituting numbers elsewhere."""
    i = p.variables.index(keep)
    pows = []
    for j, v in enumerate(p.variables):
        if j == i:
            pows.append(None)
            continue
        val = assign[v]
        dmax = max(e[j] for e in p.terms)
        table = [_ONE]
        for _ in range(dmax):
            table.append(table[-1] * val)
        pows.append(table)
    out = [_ZERO] * (p.degree_in(keep) + 1)
    for expo, coeff in p.terms.items():
        c = coeff
        for j, e in enumerate(expo):
            if j != i and e:
                c = c * pows[j][e]
        out[expo[i]] += c
    return _list_normalize(out)


def _certified_coprime(p: SparsePoly, q: SparsePoly, shared) -> bool:
    """Deterministic certificate that gcd(p, q) is constant.

    For each shared variable v, a specialization of the other variables that
    preserves deg_v(p) and yields a constant univariate gcd proves the true
    gcd has degree 0 in v. If this is shown for every shared variable the gcd
    involves no variable at all.
    """
    rng = random.Random(0x10CA1)
    names = sorted(set(p.variables) | set(q.variables), key=variable_sort_key)
    for v in shared:
        proven = False
        for attempt in range(4):
            bound = 7 + 6 * attempt
            assign = {u: Fraction(rng.randint(-bound, bound)) for u in names if u != v}
            pu = _specialize_univariate(p, v, assign)
            if len(pu) - 1 != p.degree_in(v):
                continue
            qu = _specialize_univariate(q, v, assign)
            if not qu:
                continue
            g = _list_gcd(pu, qu)
            if len(g) == 1:
                proven = True
                break
            return False
        if not proven:
            return False
    return True


# ---------------------------------------------------------------------------
# GCD: content/primitive-part recursion + subresultant PRS
# ---------------------------------------------------------------------------

def _c_degree(c):
    return max(c) if c else -1


def _c_is_zero(c):
    return not c


def _c_mul_poly(c, f):
    if f.is_zero():
        return {}
    out = {}
    for d, poly in c.items():
        prod = poly * f
        if not prod.is_zero():
            out[d] = prod
    return out


def _c_sub(a, b):
    out = dict(a)
    for d, poly in b.items():
        cur = out.get(d)
        if cur is None:
            out[d] = -poly
        else:
            cur = cur - poly
            if cur.is_zero():
                del out[d]
            else:
                out[d] = cur
    return out


def _c_shift(c, k):
    return {d + k: poly for d, poly in c.items()}


def _pseudo_rem(a, b):
    """Subresultant pseudo-remainder of coefficient maps a, b (deg a >= deg b)."""
    da, db = _c_degree(a), _c_degree(b)
    lcb = b[db]
    r = dict(a)
    e = da - db + 1
    while not _c_is_zero(r) and _c_degree(r) >= db:
        dr = _c_degree(r)
        lcr = r[dr]
        r = _c_sub(_c_mul_poly(r, lcb), _c_shift(_c_mul_poly(b, lcr), dr - db))
        e -= 1
    if e > 0:
        scale_poly = lcb ** e
        r = _c_mul_poly(r, scale_poly)
    return r


def _content_and_pp(coeffs):
    polys = list(coeffs.values())
    cont = polys[0]
    for poly in polys[1:]:
        cont = poly_gcd(cont, poly)
        if cont.is_const():
            cont = SparsePoly.const(1)
            break
    if cont.is_const():
        return SparsePoly.const(1), dict(coeffs)
    return cont, {d: divexact(poly, cont) for d, poly in coeffs.items()}


def _prs_gcd(p: SparsePoly, q: SparsePoly, main: str) -> SparsePoly:
    cp = p.coefficients_in(main)
    cq = q.coefficients_in(main)
    cont_p, a = _content_and_pp(cp)
    cont_q, b = _content_and_pp(cq)
    cont = poly_gcd(cont_p, cont_q)
    if _c_degree(a) < _c_degree(b):
        a, b = b, a
    g = SparsePoly.const(1)
    h = SparsePoly.const(1)
    while True:
        delta = _c_degree(a) - _c_degree(b)
        r = _pseudo_rem(a, b)
        if _c_is_zero(r):
            result = SparsePoly.from_coefficients_in(main, _content_and_pp(b)[1])
            break
        if _c_degree(b) == 0 or _c_degree(r) == 0:
            result = SparsePoly.const(1)
            break
        divisor = g * h ** delta
        a = b
        b = {d: divexact(poly, divisor) for d, poly in r.items()}
        g = a[_c_degree(a)]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = divexact(g ** delta, h ** (delta - 1))
    return canonical_primitive(cont * result)


def _gcd_univariate(p: SparsePoly, q: SparsePoly, name: str) -> SparsePoly:
    pu = _specialize_univariate(p, name, {})
    qu = _specialize_univariate(q, name, {})
    g = _list_gcd(pu, qu)
    poly = SparsePoly((name,), {(d,): c for d, c in enumerate(g)})
    return canonical_primitive(poly)


# run the coprimality certificate before any pseudo-remainder sequence once
# both operands exceed this many terms; specialized univariate gcds are far
# cheaper than a PRS that ends up discovering gcd = 1
_CERTIFICATE_SIZE = 12


def poly_gcd(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    """Canonical gcd: primitive, integer coefficients, positive leading term."""
    if p.is_zero():
        return canonical_primitive(q)
    if q.is_zero():
        return canonical_primitive(p)
    if p.is_const() or q.is_const():
        return SparsePoly.const(1)
    shared = sorted(set(p.variables) & set(q.variables), key=variable_sort_key)
    if not shared:
        return SparsePoly.const(1)
    if p.variables == q.variables and len(p.terms) == len(q.terms):
        canon = canonical_primitive(p)
        if canon == canonical_primitive(q):
            return canon
    if len(p.variables) == 1 and len(q.variables) == 1:
        return _gcd_univariate(p, q, shared[0])
    if min(len(p.terms), len(q.terms)) > _CERTIFICATE_SIZE:
        if _certified_coprime(p, q, shared):
            return SparsePoly.const(1)
    main = min(shared, key=lambda v: (min(p.degree_in(v), q.degree_in(v)),
                                      max(p.degree_in(v), q.degree_in(v))))
    return _prs_gcd(p, q, main)


def poly_lcm(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    if p.is_zero() or q.is_zero():
        return SparsePoly.zero()
    return canonical_primitive(divexact(p * q, poly_gcd(p, q)))
