"""Exact arithmetic in GF(p^e).

Elements are polynomials over GF(p) reduced modulo a fixed monic irreducible
polynomial of degree ``e``.  Every element also has an integer *index*

    index = c_0 + c_1 p + ... + c_{e-1} p^{e-1}

where ``c_i`` are its coefficients (low to high).  Index order is the
enumeration order of the field: ``0``, ``1``, then the remaining elements in
increasing index.  Matrices store entries as indices and use the vectorised
table routines of :class:`FieldSpec`; :class:`FieldElement` uses plain
polynomial arithmetic and serves as the reference path.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterator

import numpy as np

DEFAULT_MAX_FIELD_SIZE = 2**20
TABLE_MAX_FIELD_SIZE = 2**16


class FieldError(ValueError):
    """Invalid field parameters or an illegal field operation."""


class FieldMismatchError(FieldError):
    """Operands belong to different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, e)`` with ``q = p**e``; raise if not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1 or not is_prime(p):
                raise FieldError(f"{q} is not a prime power")
            return p, e
    raise FieldError(f"{q} is not a prime power")  # pragma: no cover


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists low-to-high, no trailing zeros


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = _trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _monic_polys(p: int, d: int) -> Iterator[list[int]]:
    for m in range(p**d):
        coeffs = []
        for _ in range(d):
            coeffs.append(m % p)
            m //= p
        yield coeffs + [1]


def is_irreducible(poly: list[int] | tuple[int, ...], p: int) -> bool:
    """Trial division of a monic polynomial by every monic polynomial of degree <= deg/2."""
    f = _trim(list(poly))
    deg = len(f) - 1
    if deg < 1 or f[-1] != 1:
        raise FieldError("irreducibility test expects a monic polynomial of degree >= 1")
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(f, g, p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree ``e`` over GF(p).

    Candidates ``x^e + c_{e-1} x^{e-1} + ... + c_0`` are scanned in increasing
    order of ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``; for ``e = 1`` this gives ``x``.
    """
    for cand in _monic_polys(p, e):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """The finite field GF(p^e) with an explicit modulus polynomial."""

    p: int
    e: int
    modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.e < 1:
            raise FieldError(f"extension degree must be >= 1, got {self.e}")
        m = tuple(int(c) for c in self.modulus)
        if len(m) != self.e + 1 or m[-1] != 1 or any(not 0 <= c < self.p for c in m):
            raise FieldError(f"modulus {m} is not monic of degree {self.e} over GF({self.p})")
        if not is_irreducible(m, self.p):
            raise FieldError(f"modulus {m} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", m)

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={poly_to_str(self.modulus)})"

    # --- conversions -------------------------------------------------------

    def coeffs_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.q:
            raise FieldError(f"index {index} out of range for {self!r}")
        out = []
        for _ in range(self.e):
            out.append(index % self.p)
            index //= self.p
        return tuple(out)

    def index_of(self, coeffs) -> int:
        idx = 0
        for c in reversed(tuple(coeffs)):
            idx = idx * self.p + int(c)
        return idx

    def element(self, value: int | str | FieldElement) -> FieldElement:
        """Build an element from an index, a polynomial string ("1+2x") or an element."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatchError(f"element of {value.spec!r} used with {self!r}")
            return value
        if isinstance(value, str):
            return FieldElement(self, parse_poly(value, self))
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, self.coeffs_of(int(value)))
        raise TypeError(f"cannot convert {value!r} to a field element")

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.e)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.e - 1))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, self.coeffs_of(i)) for i in range(self.q)]

    # --- reference scalar arithmetic on coefficient tuples -------------------

    def _ref_mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        prod = [0] * (2 * self.e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        r = _poly_mod(prod, list(self.modulus), p) if self.e > 1 else _trim(prod)
        return tuple(r) + (0,) * (self.e - len(r))

    def _ref_pow(self, a: tuple[int, ...], n: int) -> tuple[int, ...]:
        result = (1,) + (0,) * (self.e - 1)
        while n:
            if n & 1:
                result = self._ref_mul(result, a)
            a = self._ref_mul(a, a)
            n >>= 1
        return result

    # --- vectorised arithmetic on index arrays ------------------------------

    @functools.cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray] | None:
        """``(exp, log)`` tables for a primitive element, or None for large fields."""
        q = self.q
        if q > TABLE_MAX_FIELD_SIZE:
            return None
        if q == 2:
            return np.array([1, 1], dtype=np.int64), np.array([0, 0], dtype=np.int64)
        one = (1,) + (0,) * (self.e - 1)
        factors = _prime_factors(q - 1)
        for g in range(2, q):
            gc = self.coeffs_of(g)
            if all(self._ref_pow(gc, (q - 1) // r) != one for r in factors):
                break
        exp = np.empty(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        cur = one
        for i in range(q - 1):
            idx = self.index_of(cur)
            exp[i] = idx
            log[idx] = i
            cur = self._ref_mul(cur, gc)
        exp[q - 1 :] = exp[: q - 1]
        return exp, log

    @functools.cached_property
    def _neg_table(self) -> np.ndarray:
        return self._digitwise(np.zeros(self.q, dtype=np.int64), np.arange(self.q), -1)

    def _digitwise(self, x: np.ndarray, y: np.ndarray, sign: int) -> np.ndarray:
        p = self.p
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.e == 1:
            return (x + sign * y) % p
        if p == 2:
            return x ^ y
        out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
        place = 1
        for _ in range(self.e):
            out += ((x // place % p + sign * (y // place % p)) % p) * place
            place *= p
        return out

    def add(self, x, y) -> np.ndarray:
        return self._digitwise(x, y, 1)

    def sub(self, x, y) -> np.ndarray:
        return self._digitwise(x, y, -1)

    def neg(self, x) -> np.ndarray:
        return self._neg_table[np.asarray(x, dtype=np.int64)]

    def mul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.e == 1:
            return x * y % self.p
        tables = self._tables
        if tables is None:
            f = np.frompyfunc(lambda a, b: self.index_of(self._ref_mul(self.coeffs_of(a), self.coeffs_of(b))), 2, 1)
            return np.asarray(f(x, y), dtype=object).astype(np.int64)
        exp, log = tables
        out = exp[log[x] + log[y]]
        return np.where((x == 0) | (y == 0), 0, out)

    def inv(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.power(x, self.q - 2)

    def power(self, x, n: int) -> np.ndarray:
        """Elementwise ``x**n`` for a non-negative integer ``n`` (``0**0 = 1``)."""
        x = np.asarray(x, dtype=np.int64)
        if n < 0:
            raise FieldError("negative exponent; use inv")
        tables = self._tables
        if tables is None:
            f = np.frompyfunc(lambda a: self.index_of(self._ref_pow(self.coeffs_of(a), n)), 1, 1)
            return np.asarray(f(x), dtype=object).astype(np.int64)
        exp, log = tables
        if n == 0:
            return np.ones_like(x)
        out = exp[(log[x] * (n % (self.q - 1))) % (self.q - 1)]
        return np.where(x == 0, 0, out)

    def frobenius(self, x, s: int) -> np.ndarray:
        """Elementwise ``x**(p**s)`` for ``0 <= s < e``."""
        self._check_s(s)
        if s == 0:
            return np.asarray(x, dtype=np.int64).copy()
        return self.power(x, self.p**s)

    def _check_s(self, s: int) -> None:
        if not 0 <= s < self.e:
            raise FieldError(f"Galois index s={s} outside [0, {self.e}) for {self!r}")


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^e) stored by its polynomial-basis coordinates."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(int(v) for v in self.coeffs)
        if len(c) != self.spec.e or any(not 0 <= v < self.spec.p for v in c):
            raise FieldError(f"coefficients {c} invalid for {self.spec!r}")
        object.__setattr__(self, "coeffs", c)

    @property
    def index(self) -> int:
        return self.spec.index_of(self.coeffs)

    def __int__(self) -> int:
        return self.index

    def __index__(self) -> int:
        return self.index

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __str__(self) -> str:
        return poly_to_str(self.coeffs)

    def __repr__(self) -> str:
        return f"FieldElement({self}, {self.spec!r})"

    def _other(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatchError(f"cannot mix {self.spec!r} and {other.spec!r}")
            return other
        if isinstance(other, int):
            # integers act through the prime subfield
            return FieldElement(self.spec, (other % self.spec.p,) + (0,) * (self.spec.e - 1))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec._ref_mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> FieldElement:
        if n < 0:
            return self.inv() ** (-n)
        return FieldElement(self.spec, self.spec._ref_pow(self.coeffs, n))

    def inv(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.spec.q - 2)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def galois_pow(self, s: int) -> FieldElement:
        """``self**(p**s)``, the ``s``-th power of the Frobenius automorphism."""
        self.spec._check_s(s)
        return self ** (self.spec.p**s)


def field_make(p: int, e: int = 1, max_size: int = DEFAULT_MAX_FIELD_SIZE) -> FieldSpec:
    """GF(p^e) with the smallest monic irreducible modulus (deterministic)."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    if p**e > max_size:
        raise FieldError(f"field size {p}^{e} exceeds the limit {max_size}")
    return _field_cached(p, e)


@functools.cache
def _field_cached(p: int, e: int) -> FieldSpec:
    return FieldSpec(p, e, smallest_irreducible(p, e))


def gf(q: int, max_size: int = DEFAULT_MAX_FIELD_SIZE) -> FieldSpec:
    """GF(q) for a prime power ``q``."""
    p, e = prime_power(q)
    return field_make(p, e, max_size)


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    """All ``q`` elements in index order: 0, 1, then the rest."""
    return spec.elements()


# module-level operations mirroring the element methods


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return x - y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def neg(x: FieldElement) -> FieldElement:
    return -x


def inv(x: FieldElement) -> FieldElement:
    return x.inv()


def galois_pow(x: FieldElement, s: int) -> FieldElement:
    return x.galois_pow(s)


# ---------------------------------------------------------------------------
# text rendering


def poly_to_str(coeffs) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "x" if i == 1 else f"x^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


_TERM = re.compile(r"^(\d*)\*?(x(?:\^(\d+))?)?$")


def parse_poly(text: str, spec: FieldSpec) -> tuple[int, ...]:
    """Parse ``"1+2x+x^2"`` (or a bare integer index) into coefficients."""
    s = text.replace(" ", "")
    if not s:
        raise FieldError("empty element string")
    if "x" not in s:
        if not s.isdigit():
            raise FieldError(f"cannot parse element {text!r}")
        return spec.coeffs_of(int(s))
    coeffs = [0] * spec.e
    for term in s.split("+"):
        m = _TERM.match(term)
        if not term or m is None or (not m.group(1) and not m.group(2)):
            raise FieldError(f"cannot parse term {term!r} in {text!r}")
        c = int(m.group(1)) if m.group(1) else 1
        deg = 0 if not m.group(2) else int(m.group(3) or 1)
        if deg >= spec.e:
            raise FieldError(f"degree {deg} too large for {spec!r}")
        coeffs[deg] = (coeffs[deg] + c) % spec.p
    return tuple(coeffs)
