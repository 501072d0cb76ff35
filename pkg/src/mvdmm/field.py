"""Exact arithmetic in GF(p^e) with integer-indexed elements.

Elements of GF(p^e) are represented by their index in [0, q): the base-p
digits of the index are the coefficients of the element in the polynomial
basis, least significant digit first.  Index 0 is the additive identity and
index 1 the multiplicative identity.  A ``FieldSpec`` owns the arithmetic
tables; ``FieldElement`` is a thin convenience wrapper used at API surfaces.
Hot paths (matrix kernels, elimination) operate on raw numpy index arrays
through the ``*_arr`` methods and ``matmul``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import CapacityError, FieldMismatchError, ParameterError, RangeError

# Full q x q lookup tables are kept below this order; above it, extension
# fields fall back to log/antilog arithmetic and prime fields to modular.
TABLE_LIMIT = 512

# Largest supported field order (irreducibility checked exhaustively).
MAX_ORDER = 1 << 16

# Default cap on point enumerations (covers q^l up to 2^20 worker grids).
DEFAULT_POINT_LIMIT = 1 << 20

# Orders with a built-in modulus (lexicographically least irreducible,
# comparing integer encodings of the coefficient vector).
BUILTIN_MODULUS_ORDERS = (4, 8, 16, 25, 27, 32, 49, 64, 81, 125, 128, 256)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


def _digits(value: int, p: int, width: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        out.append(value % p)
        value //= p
    return tuple(out)


def _undigits(coeffs: Sequence[int], p: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * p + c
    return value


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_divmod(num: Sequence[int], den: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    num = list(num)
    dd = len(den) - 1
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
        dd -= 1
    inv_lead = pow(den[-1], p - 2, p)
    quot = [0] * max(1, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        f = (c * inv_lead) % p
        quot[i - dd] = f
        for j, y in enumerate(den):
            num[i - dd + j] = (num[i - dd + j] - f * y) % p
    rem = num[:dd] if dd > 0 else [0]
    return quot, rem


def _is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(coeffs) - 1
    if deg < 1 or coeffs[-1] != 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            den = list(lower) + [1]
            _, rem = _poly_divmod(coeffs, den, p)
            if all(c == 0 for c in rem):
                return False
    return True


def _least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e with the smallest integer encoding."""
    for lower in range(p**e):
        coeffs = _digits(lower, p, e) + (1,)
        if _is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FieldSpec:
    """Immutable description of GF(p^e) plus its arithmetic tables.

    Text form: the decimal characteristic for prime fields ("19"), or
    "p^e/m" where m is the integer encoding of the modulus coefficient
    vector in base p ("2^3/11" for x^3 + x + 1).
    """

    __slots__ = (
        "p", "e", "q", "modulus", "_log", "_exp", "_mul_table", "_add_table",
        "_reduction", "__weakref__",
    )

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | int | None = None):
        if not is_prime(p):
            raise ParameterError(f"characteristic {p} is not prime")
        if e < 1:
            raise ParameterError(f"extension degree must be >= 1, got {e}")
        q = p**e
        if q > MAX_ORDER:
            raise CapacityError(f"field order {q} exceeds supported maximum {MAX_ORDER}")
        self.p = p
        self.e = e
        self.q = q
        if e == 1:
            self.modulus = None
        else:
            if modulus is None:
                coeffs = _least_irreducible(p, e)
            elif isinstance(modulus, int):
                coeffs = _digits(modulus, p, e + 1)
                if _undigits(coeffs, p) != modulus:
                    raise ParameterError(f"modulus encoding {modulus} out of range for degree {e}")
            else:
                coeffs = tuple(int(c) % p for c in modulus)
            if len(coeffs) != e + 1 or coeffs[-1] != 1:
                raise ParameterError("modulus must be monic of degree e")
            if not _is_irreducible(coeffs, p):
                raise ParameterError(f"modulus {coeffs} is reducible over GF({p})")
            self.modulus = tuple(coeffs)
        self._build_tables()

    # -- construction helpers -------------------------------------------------

    @classmethod
    def of_order(cls, q: int) -> "FieldSpec":
        """Field of order q with the built-in (least) modulus choice."""
        p, e = _factor_prime_power(q)
        return cls(p, e)

    @classmethod
    def from_string(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if "^" not in text:
            value = int(text)
            if is_prime(value):
                return cls(value, 1)
            return cls.of_order(value)
        base, _, rest = text.partition("^")
        if "/" in rest:
            deg, _, enc = rest.partition("/")
            return cls(int(base), int(deg), int(enc))
        return cls(int(base), int(rest))

    def __str__(self) -> str:
        if self.e == 1:
            return str(self.p)
        return f"{self.p}^{self.e}/{_undigits(self.modulus, self.p)}"

    def __repr__(self) -> str:
        return f"FieldSpec({self})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p and self.e == other.e and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    # -- table construction ---------------------------------------------------

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        if e == 1:
            self._log = None
            self._exp = None
            self._reduction = None
        else:
            # Reduction of x^k for k in [e, 2e-2] to coefficient vectors.
            red = {}
            mod_low = [(-c) % p for c in self.modulus[:e]]
            cur = list(mod_low)  # x^e
            red[e] = tuple(cur)
            for k in range(e + 1, 2 * e - 1):
                nxt = [0] * e
                for i, c in enumerate(cur):
                    if c == 0:
                        continue
                    if i + 1 < e:
                        nxt[i + 1] = (nxt[i + 1] + c) % p
                    else:
                        for j, m in enumerate(mod_low):
                            nxt[j] = (nxt[j] + c * m) % p
                cur = nxt
                red[k] = tuple(cur)
            self._reduction = red
            self._build_log_tables()
        if q <= TABLE_LIMIT:
            idx = np.arange(q, dtype=np.int64)
            self._add_table = self._add_formula(idx[:, None], idx[None, :]).astype(np.int32)
            self._mul_table = self._mul_formula(idx[:, None], idx[None, :]).astype(np.int32)
        else:
            self._add_table = None
            self._mul_table = None

    def _raw_mul(self, a: int, b: int) -> int:
        """Polynomial-basis product, reduced by the modulus (no tables)."""
        if self.e == 1:
            return (a * b) % self.p
        da = _digits(a, self.p, self.e)
        db = _digits(b, self.p, self.e)
        prod = _poly_mul(da, db, self.p)
        out = list(prod[: self.e]) + [0] * (self.e - min(self.e, len(prod)))
        for k in range(self.e, len(prod)):
            c = prod[k]
            if c == 0:
                continue
            for j, m in enumerate(self._reduction[k]):
                out[j] = (out[j] + c * m) % self.p
        return _undigits(out, self.p)

    def _build_log_tables(self) -> None:
        q = self.q
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        for g in range(2, q):
            value = 1
            ok = True
            for i in range(q - 1):
                exp[i] = value
                if log[value] >= 0:
                    ok = False
                    break
                log[value] = i
                value = self._raw_mul(value, g)
            if ok and value == 1:
                self._exp = exp
                self._log = log
                return
            log.fill(-1)
        raise ParameterError("no primitive element found; modulus is not irreducible")

    # -- scalar operations on indices ----------------------------------------

    def check_index(self, i: int) -> int:
        if not 0 <= i < self.q:
            raise RangeError(f"element index {i} out of range [0, {self.q})")
        return i

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da = _digits(a, self.p, self.e)
        db = _digits(b, self.p, self.e)
        return _undigits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        da = _digits(a, self.p, self.e)
        return _undigits([(-x) % self.p for x in da], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        """a**n with the convention 0**0 = 1."""
        if n == 0:
            return 1
        if a == 0:
            return 0
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.e == 1:
            return pow(a, n, self.p)
        return int(self._exp[(int(self._log[a]) * n) % (self.q - 1)])

    # -- vectorized operations on index arrays --------------------------------

    def _add_formula(self, x, y):
        if self.e == 1:
            return (x + y) % self.p
        if self.p == 2:
            return np.bitwise_xor(x, y)
        out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
        xs, ys = np.asarray(x), np.asarray(y)
        scale = 1
        for _ in range(self.e):
            out += ((xs % self.p + ys % self.p) % self.p) * scale
            xs, ys = xs // self.p, ys // self.p
            scale *= self.p
        return out

    def _mul_formula(self, x, y):
        if self.e == 1:
            return (x * y) % self.p
        xs = np.asarray(x, dtype=np.int64)
        ys = np.asarray(y, dtype=np.int64)
        xb, yb = np.broadcast_arrays(xs, ys)
        nz = (xb != 0) & (yb != 0)
        out = np.zeros(xb.shape, dtype=np.int64)
        lx = self._log[xb[nz]]
        ly = self._log[yb[nz]]
        out[nz] = self._exp[(lx + ly) % (self.q - 1)]
        return out

    def add_arr(self, x, y):
        if self.p == 2:
            return np.bitwise_xor(x, y)
        if self._add_table is not None:
            return self._add_table[x, y]
        return self._add_formula(np.asarray(x), np.asarray(y))

    def mul_arr(self, x, y):
        if self._mul_table is not None:
            return self._mul_table[x, y]
        return self._mul_formula(np.asarray(x), np.asarray(y))

    def neg_arr(self, x):
        x = np.asarray(x)
        if self.e == 1:
            return (-x) % self.p
        if self.p == 2:
            return x.copy()
        out = np.zeros_like(x)
        xs = x
        scale = 1
        for _ in range(self.e):
            out += ((-(xs % self.p)) % self.p) * scale
            xs = xs // self.p
            scale *= self.p
        return out

    def sub_arr(self, x, y):
        if self.p == 2:
            return np.bitwise_xor(x, y)
        return self.add_arr(x, self.neg_arr(np.asarray(y)))

    def matmul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Schoolbook matrix product of two index matrices."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if x.shape[-1] != y.shape[0]:
            raise FieldMismatchError(f"inner dimensions {x.shape} x {y.shape} disagree")
        if self.e == 1:
            return (x @ y) % self.p
        # Coefficient planes: an index matrix splits into e digit matrices;
        # the product is e^2 integer matmuls recombined through x^k reductions.
        xd = [(x // self.p**k) % self.p for k in range(self.e)]
        yd = [(y // self.p**k) % self.p for k in range(self.e)]
        planes = [np.zeros((x.shape[0], y.shape[1]), dtype=np.int64) for _ in range(2 * self.e - 1)]
        for i in range(self.e):
            for j in range(self.e):
                planes[i + j] += xd[i] @ yd[j]
        out_digits = [planes[k] % self.p for k in range(self.e)]
        for k in range(self.e, 2 * self.e - 1):
            plane = planes[k] % self.p
            for j, m in enumerate(self._reduction[k]):
                if m:
                    out_digits[j] = (out_digits[j] + plane * m) % self.p
        out = np.zeros_like(out_digits[0])
        scale = 1
        for d in out_digits:
            out += d * scale
            scale *= self.p
        return out

    # -- elements and points ---------------------------------------------------

    def element(self, i: int) -> "FieldElement":
        return FieldElement(self, self.check_index(i))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        for i in range(self.q):
            yield FieldElement(self, i)


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ParameterError(f"{q} is not a prime power")
    p = min(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ParameterError(f"{q} is not a prime power")
    return p, e


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(q), identified by its index in [0, q)."""

    spec: FieldSpec
    index: int

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError(f"field mismatch: {self.spec} vs {other.spec}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.spec.add(self.index, other.index))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.spec.sub(self.index, other.index))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.index, other.index))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.spec.div(self.index, other.index))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.neg(self.index))

    def __pow__(self, n: int) -> "FieldElement":
        return FieldElement(self.spec, self.spec.pow(self.index, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.index))

    def coefficients(self) -> tuple[int, ...]:
        """Polynomial-basis coefficient vector, constant term first."""
        return _digits(self.index, self.spec.p, self.spec.e)

    def __str__(self) -> str:
        return str(self.index)

    def __bool__(self) -> bool:
        return self.index != 0


Point = tuple[int, ...]
"""A point of GF(q)^l as a tuple of element indices."""


def enumerate_points(spec: FieldSpec, l: int, limit: int = DEFAULT_POINT_LIMIT) -> list[Point]:
    """All q^l points in lexicographic index order, last coordinate fastest."""
    if l < 1:
        raise ParameterError(f"need l >= 1, got {l}")
    total = spec.q**l
    if total > limit:
        raise CapacityError(f"q^l = {total} exceeds point limit {limit}")
    return list(itertools.product(range(spec.q), repeat=l))


def index_of(element: FieldElement) -> int:
    return element.index


def element_from_index(spec: FieldSpec, i: int) -> FieldElement:
    return spec.element(i)
