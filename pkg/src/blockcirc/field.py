"""
Exact arithmetic in GF(p) and GF(2^m).

Field elements are canonical integers in [0, q-1].  For a prime field the
integer is the residue itself; for a binary extension field bit i of the
integer is the coefficient of x^i in the polynomial basis, so serialized
values are portable bit-for-bit.

A field object carries the operations (like a context), and is immutable
and hashable once constructed, so it can be shared freely across threads.

Binary-field multiplication is carryless shift-and-reduce.  A log/exp
table pair (built from a primitive element) backs the vectorized numpy
operations; the two paths produce identical values and a test pins that.
"""

from __future__ import annotations

from typing import Optional

import numpy as np


class FieldError(ValueError):
    """Invalid field parameters or misuse of field arithmetic."""


def _is_prime(n: int) -> bool:
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


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# GF(2)[x] helpers on bit-packed polynomials (bit i = coefficient of x^i)

def _poly_deg(a: int) -> int:
    return a.bit_length() - 1


def _poly_mod(a: int, b: int) -> int:
    db = _poly_deg(b)
    while _poly_deg(a) >= db:
        a ^= b << (_poly_deg(a) - db)
    return a


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _poly_mulmod(a: int, b: int, mod: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if _poly_deg(a) >= _poly_deg(mod):
            a ^= mod << (_poly_deg(a) - _poly_deg(mod))
    return _poly_mod(r, mod)


def is_irreducible_gf2(poly: int, m: int) -> bool:
    """Test irreducibility of a degree-m polynomial over GF(2).

    Uses the standard criterion: x^(2^m) == x (mod poly) and, for every
    prime divisor p of m, gcd(x^(2^(m/p)) - x, poly) == 1.
    """
    if _poly_deg(poly) != m or m < 1:
        return False
    if m == 1:
        return True
    x = 0b10
    t = x
    for _ in range(m):
        t = _poly_mulmod(t, t, poly)
    if t != x:
        return False
    for p in _prime_factors(m):
        t = x
        for _ in range(m // p):
            t = _poly_mulmod(t, t, poly)
        if _poly_gcd(t ^ x, poly) != 1:
            return False
    return True


def default_modulus(m: int) -> int:
    """Smallest irreducible degree-m modulus in coefficient-lex order.

    Integer order on the bit-packed representation equals lexicographic
    order on the coefficient string, high degree first.  Gives x^3+x+1
    (0b1011) for m=3 and x^8+x^4+x^3+x+1 (0x11B) for m=8.
    """
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if m == 1:
        return 0b10  # the polynomial x
    # constant term must be 1, otherwise x divides the candidate
    for low in range(1, 1 << m, 2):
        cand = (1 << m) | low
        if is_irreducible_gf2(cand, m):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {m} found")  # pragma: no cover


# ---------------------------------------------------------------------------


class Field:
    """Common interface of PrimeField and BinaryField."""

    kind: str
    q: int
    characteristic: int

    # -- scalar arithmetic ------------------------------------------------
    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    # -- vectorized arithmetic on int64 numpy arrays ----------------------
    def vec_add(self, a, b):
        raise NotImplementedError

    def vec_sub(self, a, b):
        raise NotImplementedError

    def vec_mul(self, a, b):
        raise NotImplementedError

    def vec_neg(self, a):
        raise NotImplementedError

    # -- misc --------------------------------------------------------------
    def generator(self) -> int:
        """A fixed primitive element of the multiplicative group."""
        raise NotImplementedError

    def check_element(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not a canonical element of {self}")
        return int(a)

    def nonzero_elements(self) -> list[int]:
        return list(range(1, self.q))

    def to_json(self) -> dict:
        raise NotImplementedError


class PrimeField(Field):
    """GF(p) for prime p, elements as residues in [0, p-1]."""

    kind = "prime"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p >= 1 << 31:
            raise FieldError("prime fields are supported up to p < 2^31")
        self.p = p
        self.q = p
        self.characteristic = p
        self._generator: Optional[int] = None

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise FieldError("zero has no multiplicative inverse")
        return pow(a, self.p - 2, self.p)

    def vec_add(self, a, b):
        return (a + b) % self.p

    def vec_sub(self, a, b):
        return (a - b) % self.p

    def vec_mul(self, a, b):
        return (a * b) % self.p

    def vec_neg(self, a):
        return (-a) % self.p

    def generator(self) -> int:
        if self._generator is None:
            order = self.p - 1
            factors = _prime_factors(order)
            g = 2
            while True:
                if all(pow(g, order // f, self.p) != 1 for f in factors):
                    break
                g += 1
            self._generator = g
        return self._generator

    def to_json(self):
        return {"kind": "prime", "p_or_m": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class BinaryField(Field):
    """GF(2^m) with a chosen irreducible modulus polynomial.

    Scalar multiplication reduces carryless products by the modulus;
    log/exp tables (powers of a primitive element) are precomputed for
    the vectorized path.  Supported up to m = 16, which covers every
    desk-scale code built here.
    """

    kind = "binary"

    def __init__(self, m: int, modulus: Optional[int] = None):
        if m < 1:
            raise FieldError(f"extension degree must be >= 1, got {m}")
        if m > 16:
            raise FieldError("binary fields are supported up to m = 16")
        if modulus is None:
            modulus = default_modulus(m)
        if _poly_deg(modulus) != m:
            raise FieldError(f"modulus 0b{modulus:b} does not have degree {m}")
        if not is_irreducible_gf2(modulus, m):
            raise FieldError(f"modulus 0b{modulus:b} is reducible over GF(2)")
        self.m = m
        self.modulus = modulus
        self.q = 1 << m
        self.characteristic = 2
        self._build_tables()

    def _mul_noLUT(self, a: int, b: int) -> int:
        # carryless multiply, then reduce by the modulus
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
        for bit in range(2 * self.m - 2, self.m - 1, -1):
            if (r >> bit) & 1:
                r ^= self.modulus << (bit - self.m)
        return r & (self.q - 1)

    def _build_tables(self):
        order = self.q - 1
        factors = _prime_factors(order)

        def pow_nolut(a, e):
            r, base = 1, a
            while e:
                if e & 1:
                    r = self._mul_noLUT(r, base)
                base = self._mul_noLUT(base, base)
                e >>= 1
            return r

        g = 2
        while not all(pow_nolut(g, order // f) != 1 for f in factors):
            g += 1
        self._gen = g
        exp = np.zeros(order, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mul_noLUT(x, g)
        self._exp = exp
        self._log = log

    def add(self, a, b):
        return a ^ b

    def sub(self, a, b):
        return a ^ b

    def neg(self, a):
        return a

    def mul(self, a, b):
        return self._mul_noLUT(a, b)

    def inv(self, a):
        if a == 0:
            raise FieldError("zero has no multiplicative inverse")
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def vec_add(self, a, b):
        return a ^ b

    def vec_sub(self, a, b):
        return a ^ b

    def vec_neg(self, a):
        return +a

    def vec_mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        idx = (self._log[a] + self._log[b]) % (self.q - 1)
        out = self._exp[idx]
        zero = (a == 0) | (b == 0)
        return np.where(zero, 0, out)

    def generator(self) -> int:
        return self._gen

    def to_json(self):
        return {"kind": "binary", "p_or_m": self.m, "modulus": self.modulus}

    def __eq__(self, other):
        return (isinstance(other, BinaryField) and other.m == self.m
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("binary", self.m, self.modulus))

    def __repr__(self):
        return f"GF(2^{self.m}, mod=0b{self.modulus:b})"


def build_field(kind: str, p_or_m: int, modulus: Optional[int] = None) -> Field:
    """Construct a field from its serialized description."""
    if kind == "prime":
        if modulus is not None:
            raise FieldError("prime fields take no modulus polynomial")
        return PrimeField(p_or_m)
    if kind == "binary":
        return BinaryField(p_or_m, modulus)
    raise FieldError(f"unknown field kind {kind!r}")


def field_from_json(obj: dict) -> Field:
    return build_field(obj["kind"], obj["p_or_m"], obj.get("modulus"))


def is_characteristic_two(f: Field) -> bool:
    return f.characteristic == 2


def smallest_prime_field(min_q: int) -> PrimeField:
    """GF(p) for the smallest prime p >= min_q."""
    p = max(2, min_q)
    while not _is_prime(p):
        p += 1
    return PrimeField(p)


def parse_field_spec(text: str, modulus: Optional[int] = None) -> Field:
    """Parse a CLI field spec: 'p11' -> GF(11), 'b3' -> GF(2^3)."""
    if len(text) >= 2 and text[0] in ("p", "b") and text[1:].isdigit():
        if text[0] == "p":
            return build_field("prime", int(text[1:]), modulus)
        return build_field("binary", int(text[1:]), modulus)
    raise FieldError(f"cannot parse field spec {text!r} (expected e.g. p11 or b8)")
