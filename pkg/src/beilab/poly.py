"""Exact arithmetic over a prime field: scalars, monomials, orders, polynomials.

Monomials are stored as packed integers, one byte per variable, variable ``k``
in bits ``8k .. 8k+7``.  The top bit of every byte is a guard bit, so each
exponent must stay below 128.  With that layout

* multiplication is integer addition,
* divisibility is a single masked subtraction,
* every monomial order below has an *additive* integer key
  (``key(a*b) == key(a) + key(b)``), which the Groebner and resolution kernels
  exploit to avoid recomputing keys during reduction.

The public ``Monomial`` type is a plain exponent tuple; ``Ring.pack`` and
``Ring.unpack`` convert between the two.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Iterable, Mapping

DEFAULT_PRIME = 32003
WIDTH = 8
MAX_EXPONENT = (1 << (WIDTH - 1)) - 1


class RingMismatchError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# --------------------------------------------------------------------------
# scalars
# --------------------------------------------------------------------------

class FieldElement:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int = DEFAULT_PRIME):
        self.value = int(value) % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError(f"characteristic mismatch: {self.p} vs {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * FieldElement(o, self.p).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.value}, p={self.p})"


# --------------------------------------------------------------------------
# monomials (exponent tuples, the public face)
# --------------------------------------------------------------------------

Monomial = tuple  # tuple[int, ...] of non-negative exponents


def monomial_degree(a: Monomial) -> int:
    return sum(a)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if len(a) != len(b):
        raise RingMismatchError("monomials of different length")
    return tuple(map(operator.add, a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    if len(a) != len(b):
        raise RingMismatchError("monomials of different length")
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


# --------------------------------------------------------------------------
# rings
# --------------------------------------------------------------------------

class Ring:
    """Polynomial ring ``GF(p)[v_1, ..., v_N]`` with packed-monomial helpers."""

    def __init__(self, nvars: int, p: int = DEFAULT_PRIME, names: Iterable[str] | None = None,
                 weights: Iterable[Iterable[int]] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.nvars = nvars
        self.p = p
        self.names = tuple(names) if names is not None else tuple(f"v{i + 1}" for i in range(nvars))
        if len(self.names) != nvars:
            raise ValueError("need one name per variable")
        # optional multigrading: one integer weight vector per variable
        self.weights = tuple(tuple(w) for w in weights) if weights is not None else None
        if self.weights is not None and len(self.weights) != nvars:
            raise ValueError("need one weight vector per variable")
        self.ones = sum(1 << (WIDTH * k) for k in range(nvars))
        self.guard = self.ones << (WIDTH - 1)
        self.nbytes = max(nvars, 1)

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Ring) and (self.nvars, self.p, self.names, self.weights) == (
            other.nvars, other.p, other.names, other.weights)

    def __hash__(self):
        return hash((self.nvars, self.p, self.names, self.weights))

    def __repr__(self):
        return f"Ring(GF({self.p})[{', '.join(self.names)}])"

    def with_prime(self, p: int) -> "Ring":
        return Ring(self.nvars, p, self.names, self.weights)

    def extend(self, names: Iterable[str]) -> "Ring":
        """Ring with extra variables appended; packed monomials embed unchanged."""
        names = tuple(names)
        return Ring(self.nvars + len(names), self.p, self.names + names)

    # packing ------------------------------------------------------------
    def pack(self, exps: Iterable[int]) -> int:
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise RingMismatchError(f"expected {self.nvars} exponents, got {len(exps)}")
        m = 0
        for k, e in enumerate(exps):
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent {e} out of range 0..{MAX_EXPONENT}")
            m |= e << (WIDTH * k)
        return m

    def unpack(self, m: int) -> Monomial:
        return tuple(m.to_bytes(self.nbytes, "little")[: self.nvars])

    def mdeg(self, m: int) -> int:
        return sum(m.to_bytes(self.nbytes, "little"))

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        g = self.guard
        ge = ((a | g) - b) & g
        fm = (ge >> (WIDTH - 1)) * 0xFF
        return (a & fm) | (b & ~fm)

    def gcd(self, a: int, b: int) -> int:
        return a + b - self.lcm(a, b)

    def var_exponent(self, m: int, k: int) -> int:
        return (m >> (WIDTH * k)) & 0xFF

    def support_mask(self, variables: Iterable[int]) -> int:
        return sum(0xFF << (WIDTH * k) for k in variables)

    # constructors -------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: 1})

    def const(self, c) -> "Polynomial":
        c = int(c) % self.p
        return Polynomial(self, {0: c} if c else {})

    def var(self, k: int) -> "Polynomial":
        if not 0 <= k < self.nvars:
            raise IndexError(f"variable index {k} out of range")
        return Polynomial(self, {1 << (WIDTH * k): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(k) for k in range(self.nvars)]

    def monomial(self, exps: Iterable[int], coeff=1) -> "Polynomial":
        c = int(coeff) % self.p
        return Polynomial(self, {self.pack(exps): c} if c else {})

    def from_dict(self, terms: Mapping[Monomial, int]) -> "Polynomial":
        out: dict[int, int] = {}
        for exps, c in terms.items():
            m = self.pack(exps)
            out[m] = (out.get(m, 0) + int(c)) % self.p
        return Polynomial(self, {m: c for m, c in out.items() if c})

    def parse(self, text: str) -> "Polynomial":
        """Parse ``"x1*y2 - x2*y1"``-style input using this ring's variable names."""
        scope = {name: self.var(k) for k, name in enumerate(self.names)}
        if not re.fullmatch(r"[\w\s\+\-\*\^\(\)]*", text):
            raise ValueError(f"unsupported characters in {text!r}")
        value = eval(text.replace("^", "**"), {"__builtins__": {}}, scope)  # noqa: S307
        if isinstance(value, int):
            return self.const(value)
        return value

    def format_monomial(self, m: int) -> str:
        parts = []
        for k, e in enumerate(self.unpack(m)):
            if e == 1:
                parts.append(self.names[k])
            elif e > 1:
                parts.append(f"{self.names[k]}^{e}")
        return "*".join(parts) if parts else "1"


def bei_ring(n: int, p: int = DEFAULT_PRIME) -> Ring:
    """``K[x_1..x_n, y_1..y_n]`` with x_i at index i-1 and y_i at index n+i-1."""
    names = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]
    # fine grading: x_i -> (e_i, 1), y_i -> (e_i, 0); binomial edge ideals are homogeneous for it
    unit = [[int(k == i) for k in range(n)] for i in range(n)]
    weights = [u + [1] for u in unit] + [u + [0] for u in unit]
    return Ring(2 * n, p, names, weights)


# --------------------------------------------------------------------------
# monomial orders
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on packed monomials of an ``nvars``-variable ring.

    ``kind`` is ``"degrevlex"``, ``"lex"`` or ``"elim"``.  ``block`` lists the
    variables eliminated by an ``"elim"`` order (compared first by their total
    degree, then by degrevlex on everything).  ``priority`` optionally
    permutes the variable ranking for ``"lex"``; by default variable 0 is the
    largest.
    """

    kind: str
    nvars: int
    block: frozenset = frozenset()
    priority: tuple | None = None
    key: Callable[[int], int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = self.nvars
        nb = max(n, 1)
        shift = WIDTH * nb
        if self.kind == "degrevlex":
            def key(m, nb=nb, shift=shift):
                return (sum(m.to_bytes(nb, "little")) << shift) - m
        elif self.kind == "lex":
            if self.priority is None:
                def key(m, nb=nb):
                    return int.from_bytes(m.to_bytes(nb, "little"), "big")
            else:
                perm = tuple(self.priority)
                if sorted(perm) != list(range(n)):
                    raise ValueError("priority must be a permutation of the variables")

                def key(m, nb=nb, perm=perm):
                    raw = m.to_bytes(nb, "little")
                    return int.from_bytes(bytes(raw[k] for k in perm), "big")
        elif self.kind == "elim":
            if not self.block or not all(0 <= k < n for k in self.block):
                raise ValueError("elimination block must be a non-empty set of variables")
            bmask = sum(0xFF << (WIDTH * k) for k in self.block)
            top = shift + 2 * WIDTH

            def key(m, nb=nb, shift=shift, bmask=bmask, top=top):
                raw = m.to_bytes(nb, "little")
                return ((sum((m & bmask).to_bytes(nb, "little")) << top)
                        + (sum(raw) << shift) - m)
        else:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        object.__setattr__(self, "key", key)

    @property
    def graded(self) -> bool:
        return self.kind == "degrevlex"

    @classmethod
    def degrevlex(cls, nvars: int) -> "MonomialOrder":
        return cls("degrevlex", nvars)

    @classmethod
    def lex(cls, nvars: int, priority=None) -> "MonomialOrder":
        return cls("lex", nvars, priority=None if priority is None else tuple(priority))

    @classmethod
    def elimination(cls, nvars: int, block: Iterable[int]) -> "MonomialOrder":
        return cls("elim", nvars, frozenset(block))


def compare(m1: Monomial, m2: Monomial, order: MonomialOrder) -> int:
    """Return -1, 0 or 1 as ``m1 <, =, > m2`` in ``order``."""
    if len(m1) != len(m2):
        raise RingMismatchError("monomials of different length")
    if len(m1) != order.nvars:
        raise RingMismatchError("order and monomials disagree on the number of variables")
    k1 = order.key(_pack_tuple(m1))
    k2 = order.key(_pack_tuple(m2))
    return (k1 > k2) - (k1 < k2)


def _pack_tuple(exps: Monomial) -> int:
    m = 0
    for k, e in enumerate(exps):
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range")
        m |= e << (WIDTH * k)
    return m


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

class Polynomial:
    """Sparse polynomial: ``terms`` maps packed monomial -> nonzero residue."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict[int, int]):
        self.ring = ring
        self.terms = terms

    # arithmetic ----------------------------------------------------------
    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.const(int(other))
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._lift(other)
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        other = self._lift(other)
        p = self.ring.p
        out: dict[int, int] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                out[m] = (get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_monomial(self, m: int, c: int = 1) -> "Polynomial":
        p = self.ring.p
        return Polynomial(self.ring, {k + m: v * c % p for k, v in self.terms.items()})

    # structure -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int | None:
        if not self.terms:
            return None
        return max(self.ring.mdeg(m) for m in self.terms)

    def is_homogeneous(self) -> tuple[bool, int | None]:
        """``(True, d)`` if all terms have degree ``d``; the zero polynomial
        is homogeneous of unknown degree ``(True, None)``."""
        if not self.terms:
            return True, None
        degs = {self.ring.mdeg(m) for m in self.terms}
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    def monomials(self) -> list[Monomial]:
        return [self.ring.unpack(m) for m in self.terms]

    def coefficient(self, exps: Monomial) -> FieldElement:
        return FieldElement(self.terms.get(self.ring.pack(exps), 0), self.ring.p)

    def lead(self, order: MonomialOrder) -> tuple[int, int]:
        """Packed leading monomial and its coefficient."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def lead_monomial(self, order: MonomialOrder) -> Monomial:
        return self.ring.unpack(self.lead(order)[0])

    def monic(self, order: MonomialOrder) -> "Polynomial":
        _, c = self.lead(order)
        return self.scale(pow(c, -1, self.ring.p))

    def support(self) -> set[int]:
        """Indices of variables occurring in some term."""
        used = reduce(operator.or_, self.terms, 0)
        return {k for k in range(self.ring.nvars) if (used >> (WIDTH * k)) & 0xFF}

    def change_ring(self, ring: Ring) -> "Polynomial":
        """Reinterpret in a ring with at least the used variables (same packing)."""
        top = reduce(operator.or_, self.terms, 0)
        if top >> (WIDTH * ring.nvars):
            raise RingMismatchError("polynomial uses variables outside the target ring")
        p = ring.p
        return Polynomial(ring, {m: c % p for m, c in self.terms.items() if c % p})

    def normalized(self) -> "Polynomial":
        """Canonical form: reduced coefficients, zero terms dropped."""
        p = self.ring.p
        return Polynomial(self.ring, {m: c % p for m, c in self.terms.items() if c % p})

    # comparison / display ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self.ring.const(int(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[int, int]]:
        order = order or MonomialOrder.degrevlex(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.ring.p
        out = []
        for m, c in self.sorted_terms():
            neg = c > p // 2
            a = p - c if neg else c
            mono = self.ring.format_monomial(m)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"
