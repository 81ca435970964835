"""Arithmetic in GF(p^m).

Elements are plain integers in ``[0, q)`` whose base-p digits are the
polynomial coefficients, least significant digit = constant term.  The
:class:`FieldSpec` methods work on those raw integers (fast path used by the
linear algebra); :class:`FieldElement` wraps a value for operator syntax.

Multiplication goes through exp/log tables built from the primitive
modulus, so every field is limited to ``q <= 2**20``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    BadParams,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    LogOfZero,
    NoDefaultModulus,
    NonPrime,
    NotIrreducible,
    NotPrimitive,
    ParseError,
)

MAX_Q = 1 << 20

# Smallest primitive monic polynomial of each degree, ordered by the integer
# encoding above.  Coefficients constant-first, leading 1 included.
# x^6 + x + 1 for GF(64) falls out of that rule.
DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 15): (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 2): (2, 1, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
    (5, 2): (2, 1, 1),
    (5, 3): (2, 3, 0, 1),
    (5, 4): (2, 2, 1, 0, 1),
    (5, 5): (2, 4, 0, 0, 0, 1),
    (5, 6): (2, 1, 0, 0, 0, 0, 1),
    (7, 2): (3, 1, 1),
    (7, 3): (2, 3, 0, 1),
    (7, 4): (5, 3, 1, 0, 1),
    (7, 5): (4, 1, 0, 0, 0, 1),
    (7, 6): (5, 1, 3, 0, 0, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**m``; raises BadParams when q is not a prime power."""
    if q < 2:
        raise BadParams(f"q={q} is not a prime power")
    fs = prime_factors(q)
    if len(fs) != 1:
        raise BadParams(f"q={q} is not a prime power")
    p = fs[0]
    m = 0
    while q > 1:
        q //= p
        m += 1
    return p, m


# -- polynomials over GF(p), coefficient lists constant-first ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return _poly_mod(res, f, p)


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: gcd(x^(p^i) - x, f) = 1 for i <= deg/2."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    power = x
    for _ in range(m // 2):
        # power <- power^p mod f
        acc = [1]
        base = power
        e = p
        while e:
            if e & 1:
                acc = _poly_mulmod(acc, base, f, p)
            base = _poly_mulmod(base, base, f, p)
            e >>= 1
        power = acc
        g = _poly_gcd(list(f), _poly_sub(power, x, p), p)
        if len(g) > 1:
            return False
    return True


def _smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fs):
            return g
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def _low_mask(low: tuple[int, ...]) -> int:
    return sum(1 << i for i, b in enumerate(low) if b)


class FieldSpec:
    """GF(p^m) with a fixed primitive modulus.

    Instances are immutable and cached by :func:`field_new`; compare by
    ``(p, m, modulus)``.
    """

    __slots__ = ("p", "m", "q", "modulus", "generator", "_exp", "_log", "_add_tab", "_neg_tab",
                 "_mul_tab", "_inv_tab", "__weakref__")

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = modulus
        q = self.q
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        if m == 1:
            g = _smallest_primitive_root(p)
            self.generator = g
            v = 1
            for i in range(q - 1):
                exp[i] = v
                log[v] = i
                v = v * g % p
        else:
            self.generator = p  # the residue of x
            top = p ** m
            low = modulus[:-1]
            v = 1
            for i in range(q - 1):
                if log[v] != -1:
                    raise NotPrimitive(f"x has order {i} < {q - 1} modulo {list(modulus)}")
                exp[i] = v
                log[v] = i
                v = self._times_x(v, top, low)
            if v != 1:
                raise NotPrimitive(f"x does not generate GF({p}^{m})*")
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self._exp = exp
        self._log = log
        self._add_tab = None
        self._neg_tab = None
        self._mul_tab = None
        self._inv_tab = None

    def _times_x(self, v: int, top: int, low: Sequence[int]) -> int:
        p = self.p
        v *= p
        c = v // top
        if not c:
            return v
        v -= c * top
        if p == 2:
            return v ^ _low_mask(tuple(low))
        digits = self.to_digits(v)
        for i, b in enumerate(low):
            digits[i] = (digits[i] - c * b) % p
        return self.from_digits(digits)

    # -- representation ----------------------------------------------------
    def to_digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.m):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        v = 0
        for d in reversed(digits):
            v = v * self.p + d % self.p
        return v

    @property
    def descriptor(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})/" + ",".join(str(c) for c in self.modulus)

    def __repr__(self) -> str:
        return f"FieldSpec({self.descriptor})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __reduce__(self):
        return (field_new, (self.p, self.m, self.modulus or None))

    # -- raw-integer arithmetic -------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        tab = self.add_table()
        if tab is not None:
            return tab[a][b]
        return self._add_digits(a, b)

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        p = self.p
        out, scale = 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def alpha_pow(self, i: int) -> int:
        return self._exp[i % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise LogOfZero("discrete log of zero")
        return self._log[a]

    # -- tables for the inner loops of small-field linear algebra ---------
    def add_table(self):
        if self._add_tab is None and self.q <= 256:
            q = self.q
            if self.p == 2:
                self._add_tab = [[a ^ b for b in range(q)] for a in range(q)]
            elif self.m == 1:
                self._add_tab = [[(a + b) % q for b in range(q)] for a in range(q)]
            else:
                self._add_tab = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]
        return self._add_tab

    def neg_table(self) -> list[int]:
        if self._neg_tab is None:
            self._neg_tab = [self.neg(a) for a in range(self.q)]
        return self._neg_tab

    def mul_table(self):
        if self._mul_tab is None and self.q <= 256:
            q = self.q
            self._mul_tab = [[self.mul(a, b) for b in range(q)] for a in range(q)]
        return self._mul_tab

    def inv_table(self) -> list[int]:
        if self._inv_tab is None:
            self._inv_tab = [0] + [self.inv(a) for a in range(1, self.q)]
        return self._inv_tab

    def elements(self) -> Iterable["FieldElement"]:
        return (FieldElement(self, v) for v in range(self.q))

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)


class FieldElement:
    """An element of a :class:`FieldSpec`, with operator support."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        if not 0 <= value < field.q:
            raise BadParams(f"value {value} outside GF({field.q})")
        self.field = field
        self.value = value

    def _other(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field.descriptor} vs {other.field.descriptor}")
        return other.value

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, {self.field.descriptor})"


@lru_cache(maxsize=None)
def _field_cached(p: int, m: int, modulus: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p, m, modulus)


def field_new(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Validated GF(p^m).  ``modulus`` is constant-first and monic of degree m;
    when omitted the built-in primitive polynomial is used."""
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if m < 1:
        raise BadParams(f"extension degree must be >= 1, got {m}")
    if p ** m > MAX_Q:
        raise BadParams(f"GF({p}^{m}) exceeds the supported size 2^20")
    if m == 1:
        if modulus:
            mod = tuple(int(c) % p for c in modulus)
            if len(mod) != 2 or mod[1] != 1:
                raise BadParams("a prime field takes no modulus (or a monic linear one)")
        return _field_cached(p, 1, ())
    if modulus is None:
        try:
            mod = DEFAULT_MODULI[(p, m)]
        except KeyError:
            raise NoDefaultModulus(f"no built-in primitive polynomial for GF({p}^{m})") from None
    else:
        mod = tuple(int(c) for c in modulus)
        if len(mod) != m + 1 or any(not 0 <= c < p for c in mod):
            raise BadParams(f"modulus must have {m + 1} coefficients in [0, {p})")
        if mod[-1] != 1:
            raise BadParams("modulus must be monic")
        if not is_irreducible(mod, p):
            raise NotIrreducible(f"{list(mod)} is reducible over GF({p})")
    return _field_cached(p, m, mod)


def gf(q: int) -> FieldSpec:
    """GF(q) with the default modulus."""
    p, m = prime_power(q)
    return field_new(p, m)


_DESC = re.compile(r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*(?:/\s*([0-9,\s]*))?$")


def parse_descriptor(text: str) -> FieldSpec:
    """Inverse of ``FieldSpec.descriptor``; also accepts ``GF(q)`` for any
    prime power (default modulus)."""
    mt = _DESC.match(text)
    if not mt:
        raise ParseError(f"bad field descriptor {text!r}")
    base, exp, coeffs = mt.group(1), mt.group(2), mt.group(3)
    base = int(base)
    if exp is None:
        if coeffs:
            raise ParseError(f"modulus given without an exponent in {text!r}")
        return gf(base)
    modulus = None
    if coeffs is not None and coeffs.strip():
        try:
            modulus = [int(c) for c in coeffs.split(",")]
        except ValueError:
            raise ParseError(f"bad modulus in {text!r}") from None
    return field_new(base, int(exp), modulus)


def primitive_power(spec: FieldSpec, i: int) -> FieldElement:
    return FieldElement(spec, spec.alpha_pow(i))


def dlog(e: FieldElement) -> int:
    return e.field.log(e.value)


class Extension:
    """GF(q^n) viewed as the vector space GF(q)^n.

    Coordinates are taken with respect to ``1, a, a^2, ..., a^(n-1)`` where
    ``a`` is the primitive element of the big field.  Over a prime base these
    are exactly the polynomial coefficients, constant term first.
    """

    def __init__(self, base: FieldSpec, n: int, big: FieldSpec | None = None):
        if big is None:
            big = field_new(base.p, base.m * n)
        if big.p != base.p or big.m != base.m * n:
            raise DimensionMismatch(f"{big.descriptor} is not a degree-{n} extension of {base.descriptor}")
        self.base = base
        self.big = big
        self.n = n
        self._coords = None
        self._embed = None
        if base.m > 1:
            self._embed = self._embedding()

    def _embedding(self) -> list[int]:
        big, base = self.big, self.base
        step = (big.q - 1) // (base.q - 1)
        for j in range(1, base.q - 1):
            beta = big.alpha_pow(j * step)
            acc = 0
            for c in reversed(base.modulus):
                acc = big.add(big.mul(acc, beta), c)
            if acc == 0:
                break
        else:
            raise AssertionError("subfield root not found")
        table = []
        for v in range(base.q):
            acc = 0
            for d in reversed(base.to_digits(v)):
                acc = big.add(big.mul(acc, beta), d)
            table.append(acc)
        return table

    def embed(self, c: int) -> int:
        """Image of a base-field element inside the big field."""
        return c if self._embed is None else self._embed[c]

    def elem_to_vec(self, e: int | FieldElement) -> tuple[int, ...]:
        if isinstance(e, FieldElement):
            if e.field != self.big:
                raise DimensionMismatch(f"element of {e.field.descriptor}, expected {self.big.descriptor}")
            e = e.value
        if self._embed is None:
            return tuple(self.big.to_digits(e))
        if self._coords is None:
            self._coords = {}
            from itertools import product
            for vec in product(range(self.base.q), repeat=self.n):
                self._coords[self._combine(vec)] = vec
        return self._coords[e]

    def _combine(self, vec: Sequence[int]) -> int:
        big = self.big
        acc = 0
        for j, c in enumerate(vec):
            if c:
                acc = big.add(acc, big.mul(self._embed[c], big.alpha_pow(j)))
        return acc

    def vec_to_elem(self, vec: Sequence[int]) -> int:
        if len(vec) != self.n:
            raise DimensionMismatch(f"vector length {len(vec)} != {self.n}")
        if self._embed is None:
            return self.big.from_digits(vec)
        return self._combine(vec)


def elem_to_vec(ext: Extension, e: int | FieldElement) -> tuple[int, ...]:
    return ext.elem_to_vec(e)


def vec_to_elem(ext: Extension, vec: Sequence[int]) -> FieldElement:
    return FieldElement(ext.big, ext.vec_to_elem(vec))
