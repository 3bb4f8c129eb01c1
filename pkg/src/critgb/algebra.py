"""Exact base algebra: GF(p), weighted monomials, sparse polynomials, term orders.

Monomials are plain exponent tuples; the :class:`Ring` supplies degree,
multiplication and comparison helpers, plus an order-preserving integer
encoding used by the elimination engines.  Polynomials are immutable sparse
term maps over GF(p), kept with a cached grevlex-sorted term list so leading
term queries are O(1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DimensionError, ParseError, RingTooWideError

LT, EQ, GT = -1, 0, 1

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
                 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
                 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229,
                 233, 239, 241, 251)


def _is_prime(p):
    if p < 2:
        return False
    for q in _SMALL_PRIMES:
        if p == q:
            return True
        if p % q == 0:
            return False
    # p < 2^16, so trial division by primes < 256 is complete
    return True


class PrimeField:
    """GF(p) for an odd prime p < 2^16 (default 65521).

    The bound keeps every product of two residues inside a 64-bit word, so
    the elimination kernels never overflow.
    """

    __slots__ = ("p",)

    def __init__(self, p=65521):
        if not (2 < p < 2 ** 16) or not _is_prime(p):
            raise ValueError(f"modulus must be an odd prime below 2^16, got {p}")
        self.p = p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(p)")
        return pow(a, self.p - 2, self.p)

    def neg(self, a):
        return (-a) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


@dataclass(frozen=True)
class Grading:
    """Positive integer weight per variable; all-ones is the canonical grading."""

    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if not self.weights or any(w < 1 for w in self.weights):
            raise ValueError("grading weights must be positive integers")

    @staticmethod
    def standard(nvars):
        return Grading((1,) * nvars)

    def degree(self, exps):
        return sum(w * e for w, e in zip(self.weights, exps))


class Ring:
    """Ambient polynomial ring: variable names, grading and coefficient field.

    Variable precedence is fixed as names[0] > names[1] > ... throughout
    (X1 > X2 > ... > Xn > H for the solving rings).
    """

    __slots__ = ("nvars", "field", "grading", "names", "_exp_bits", "_tail_bits",
                 "_deg_cap", "_lex_ok")

    def __init__(self, nvars, field=None, grading=None, names=None):
        if nvars < 1:
            raise ValueError("ring needs at least one variable")
        self.nvars = nvars
        self.field = field if field is not None else PrimeField()
        self.grading = grading if grading is not None else Grading.standard(nvars)
        if len(self.grading.weights) != nvars:
            raise DimensionError("grading length != variable count")
        if names is None:
            names = tuple(f"X{i + 1}" for i in range(nvars))
        if len(names) != nvars or len(set(names)) != nvars:
            raise ValueError("need one distinct name per variable")
        self.names = tuple(names)
        # packed-code parameters: per-exponent field of _exp_bits bits,
        # weighted degree in the remaining high bits of a 63-bit word
        bits = min(8, 49 // nvars)
        self._exp_bits = bits
        self._tail_bits = bits * nvars
        self._deg_cap = (1 << (63 - self._tail_bits)) - 1 if bits >= 4 else 0
        self._lex_ok = bits >= 4

    # -- monomial helpers (monomials are exponent tuples) --

    def one(self):
        return (0,) * self.nvars

    def variable(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return tuple(e)

    def mdeg(self, m):
        return self.grading.degree(m)

    def mmul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def mdivides(self, a, b):
        """True when monomial a divides monomial b."""
        return all(x <= y for x, y in zip(a, b))

    def mdiv(self, b, a):
        """b / a, assuming a divides b."""
        q = tuple(y - x for x, y in zip(a, b))
        if any(e < 0 for e in q):
            raise ArithmeticError(f"{a} does not divide {b}")
        return q

    def mlcm(self, a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    def check(self, m):
        if len(m) != self.nvars:
            raise DimensionError(f"monomial has {len(m)} exponents, ring has {self.nvars}")
        return m

    def __eq__(self, other):
        return (isinstance(other, Ring) and other.nvars == self.nvars
                and other.field == self.field and other.grading == self.grading
                and other.names == self.names)

    def __hash__(self):
        return hash((self.nvars, self.field, self.grading.weights, self.names))

    def __repr__(self):
        return f"Ring({', '.join(self.names)}; GF({self.field.p}); w={self.grading.weights})"


class MonomialOrder:
    """grevlex or lex, with the ring's fixed variable precedence.

    ``key`` gives a tuple sorting ascending in the order; ``encode`` packs a
    monomial into one int with the same ordering and additive under monomial
    multiplication (used by the elimination kernels).
    """

    __slots__ = ("kind",)

    def __init__(self, kind):
        if kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown order {kind!r}")
        self.kind = kind

    def key(self, ring, m):
        if self.kind == "grevlex":
            return (ring.mdeg(m), tuple(-e for e in reversed(m)))
        return m

    def encode(self, ring, m):
        bits = ring._exp_bits
        if not ring._lex_ok:
            raise RingTooWideError(f"{ring.nvars} variables exceed the packed-code width")
        deg = ring.mdeg(m)
        if deg >= (1 << bits):
            raise RingTooWideError(
                f"degree {deg} exceeds the packed-code cap {(1 << bits) - 1} "
                f"for {ring.nvars} variables")
        if self.kind == "grevlex":
            tail = 0
            for k, e in enumerate(m):
                tail |= e << (k * bits)
            return (deg << ring._tail_bits) - tail
        code = 0
        for k, e in enumerate(m):
            code |= e << ((ring.nvars - 1 - k) * bits)
        return code

    def decode(self, ring, code):
        bits = ring._exp_bits
        mask = (1 << bits) - 1
        n = ring.nvars
        if self.kind == "grevlex":
            q, r = divmod(code, 1 << ring._tail_bits)
            tail = 0 if r == 0 else (1 << ring._tail_bits) - r
            return tuple((tail >> (k * bits)) & mask for k in range(n))
        return tuple((code >> ((n - 1 - k) * bits)) & mask for k in range(n))

    def __repr__(self):
        return self.kind

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(("MonomialOrder", self.kind))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def monomials_exact(nvars, d):
    """All exponent tuples of total degree exactly d (canonical grading)."""
    if nvars == 1:
        return [(d,)]
    out = []
    for e in range(d + 1):
        for rest in monomials_exact(nvars - 1, d - e):
            out.append((e,) + rest)
    return out


def monomials_upto(nvars, d):
    """All exponent tuples of total degree <= d (canonical grading)."""
    out = []
    for k in range(d + 1):
        out.extend(monomials_exact(nvars, k))
    return out


def compare(ring, a, b, order=GREVLEX):
    """Strict total order comparison: LT (-1), EQ (0) or GT (+1)."""
    ring.check(a)
    ring.check(b)
    ka, kb = order.key(ring, a), order.key(ring, b)
    if ka < kb:
        return LT
    if ka > kb:
        return GT
    return EQ


class Polynomial:
    """Immutable sparse polynomial over GF(p) with grading-aware degrees."""

    __slots__ = ("ring", "terms", "_sorted", "_homog", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        p = ring.field.p
        clean = {}
        for m, c in terms.items():
            c %= p
            if c:
                clean[ring.check(m)] = c
        self.terms = clean
        self._sorted = None
        self._homog = None
        self._hash = None

    # -- constructors --

    @staticmethod
    def zero(ring):
        return Polynomial(ring, {})

    @staticmethod
    def constant(ring, c):
        return Polynomial(ring, {ring.one(): c})

    @staticmethod
    def variable(ring, i):
        return Polynomial(ring, {ring.variable(i): 1})

    @staticmethod
    def monomial(ring, m, c=1):
        return Polynomial(ring, {tuple(m): c})

    # -- structure --

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Weighted degree; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.ring.mdeg(m) for m in self.terms)

    @property
    def is_homogeneous(self):
        if self._homog is None:
            degs = {self.ring.mdeg(m) for m in self.terms}
            self._homog = len(degs) <= 1
        return self._homog

    def sorted_terms(self, order=GREVLEX):
        """Terms as (monomial, coeff) pairs, descending in the order."""
        if order.kind == "grevlex":
            if self._sorted is None:
                key = order.key
                ring = self.ring
                self._sorted = tuple(sorted(self.terms.items(),
                                            key=lambda t: key(ring, t[0]), reverse=True))
            return self._sorted
        return tuple(sorted(self.terms.items(),
                            key=lambda t: order.key(self.ring, t[0]), reverse=True))

    def leading(self, order=GREVLEX):
        """(leading monomial, leading coefficient); error on zero."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms(order)[0]

    def leading_monomial(self, order=GREVLEX):
        return self.leading(order)[0]

    # -- arithmetic --

    def _same_ring(self, other):
        if self.ring != other.ring:
            raise DimensionError("polynomials live in different rings")

    def __add__(self, other):
        self._same_ring(other)
        p = self.ring.field.p
        acc = dict(self.terms)
        for m, c in other.terms.items():
            v = (acc.get(m, 0) + c) % p
            if v:
                acc[m] = v
            elif m in acc:
                del acc[m]
        return Polynomial(self.ring, acc)

    def __sub__(self, other):
        self._same_ring(other)
        p = self.ring.field.p
        acc = dict(self.terms)
        for m, c in other.terms.items():
            v = (acc.get(m, 0) - c) % p
            if v:
                acc[m] = v
            elif m in acc:
                del acc[m]
        return Polynomial(self.ring, acc)

    def __neg__(self):
        p = self.ring.field.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __mul__(self, other):
        self._same_ring(other)
        p = self.ring.field.p
        mmul = self.ring.mmul
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mmul(m1, m2)
                acc[m] = (acc.get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, acc)

    def scalar_mul(self, c):
        p = self.ring.field.p
        c %= p
        if c == 0:
            return Polynomial.zero(self.ring)
        return Polynomial(self.ring, {m: (v * c) % p for m, v in self.terms.items()})

    def monomial_mul(self, mono, c=1):
        """Multiply by c * X^mono (fast path for Macaulay row building)."""
        self.ring.check(mono)
        p = self.ring.field.p
        c %= p
        if c == 0:
            return Polynomial.zero(self.ring)
        mmul = self.ring.mmul
        return Polynomial(self.ring, {mmul(m, mono): (v * c) % p
                                      for m, v in self.terms.items()})

    def monic(self, order=GREVLEX):
        if not self.terms:
            return self
        _, lc = self.leading(order)
        if lc == 1:
            return self
        return self.scalar_mul(self.ring.field.inv(lc))

    def diff(self, i):
        """Formal partial derivative with respect to variable i."""
        p = self.ring.field.p
        acc = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            v = (c * (e % p)) % p
            if v:
                dm = m[:i] + (e - 1,) + m[i + 1:]
                acc[dm] = (acc.get(dm, 0) + v) % p
        return Polynomial(self.ring, {m: c for m, c in acc.items() if c})

    def highest_part(self):
        """Homogeneous part of highest weighted degree (f -> f^infinity)."""
        if not self.terms:
            raise ValueError("highest part of the zero polynomial is undefined")
        mdeg = self.ring.mdeg
        d = max(mdeg(m) for m in self.terms)
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if mdeg(m) == d})

    def evaluate(self, point):
        """Evaluate at a tuple of field elements."""
        if len(point) != self.ring.nvars:
            raise DimensionError("point length != variable count")
        p = self.ring.field.p
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = (v * pow(x, e, p)) % p
            total = (total + v) % p
        return total

    # -- comparisons / display --

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and other.ring == self.ring
                and other.terms == self.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<{format_poly(self)}>"


# -- text format: sum of terms  c*X1^a1*...*Xn^an  ------------------------

def format_poly(f, order=GREVLEX):
    if not f.terms:
        return "0"
    parts = []
    for m, c in f.sorted_terms(order):
        factors = []
        if c != 1 or not any(m):
            factors.append(str(c))
        for name, e in zip(f.ring.names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        parts.append("*".join(factors))
    return " + ".join(parts)


import functools


@functools.lru_cache(maxsize=64)
def _token_pattern(names):
    alts = "|".join(re.escape(n) for n in sorted(names, key=len, reverse=True))
    return re.compile(rf"\s*(?:(?P<name>{alts})|(?P<num>\d+)|(?P<op>[*^+-]))")


def parse_poly(text, ring, line=None):
    """Parse the polynomial text format; '*' and '^1' may be omitted.

    Coefficients are decimal residues; a leading '-' negates mod p.
    """
    _TOKEN = _token_pattern(ring.names)
    name_idx = {n: i for i, n in enumerate(ring.names)}
    p = ring.field.p
    text = text.strip()
    pos = 0
    terms = {}
    sign, coeff, exps = 1, 1, [0] * ring.nvars
    last_var = None   # variable index a '^' would apply to
    saw_factor = False
    flushed = False

    def flush():
        nonlocal sign, coeff, exps, last_var, saw_factor, flushed
        m = tuple(exps)
        terms[m] = (terms.get(m, 0) + sign * coeff) % p
        sign, coeff, exps = 1, 1, [0] * ring.nvars
        last_var, saw_factor, flushed = None, False, True

    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                             line, pos + 1)
        pos = mt.end()
        if mt.group("num") is not None:
            coeff = (coeff * int(mt.group("num"))) % p
            saw_factor, last_var = True, None
        elif mt.group("name") is not None:
            nm = mt.group("name")
            if nm not in name_idx:
                raise ParseError(f"unknown variable {nm!r}", line, pos)
            last_var = name_idx[nm]
            exps[last_var] += 1
            saw_factor = True
        else:
            op = mt.group("op")
            if op == "^":
                if last_var is None:
                    raise ParseError("'^' without a variable", line, pos)
                mt2 = _TOKEN.match(text, pos)
                if not mt2 or mt2.group("num") is None:
                    raise ParseError("'^' needs a numeric exponent", line, pos)
                pos = mt2.end()
                exps[last_var] += int(mt2.group("num")) - 1
                last_var = None
            elif op == "*":
                if not saw_factor:
                    raise ParseError("'*' without a left factor", line, pos)
                last_var = None
            else:  # + or -
                if saw_factor:
                    flush()
                if op == "-":
                    sign = -sign
    if saw_factor:
        flush()
    if not flushed:
        raise ParseError("empty polynomial", line, pos)
    return Polynomial(ring, terms)
