"""Exact arithmetic over prime fields, sparse polynomials and ring presentations.

Polynomials are sparse maps ``{exponent tuple: coefficient}`` with
coefficients reduced into ``range(p)``.  Exponents are plain Python ints, so
bracket powers with exponents like ``5**6`` are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from sympy.ntheory import isprime

__all__ = [
    "PrimeField",
    "MonomialOrder",
    "BlockOrder",
    "PolyRing",
    "Polynomial",
    "RingPresentation",
    "PrimePower",
    "canonical_form",
    "frobenius_pow",
    "RingError",
]

MAX_CHAR = 2**31 - 1


class RingError(ValueError):
    """Invalid ring data: bad characteristic, unknown variable, bad relation."""


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or self.p > MAX_CHAR or not isprime(self.p):
            raise RingError(f"characteristic not prime: {self.p}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)


@dataclass(frozen=True)
class PrimePower:
    """q = p**e, stored by its exponent."""

    p: int
    e: int

    def __post_init__(self):
        if self.e < 0:
            raise ValueError("exponent of a prime power must be >= 0")

    @property
    def q(self) -> int:
        return self.p**self.e


# --------------------------------------------------------------------------
# monomial orders

_ORDER_KINDS = ("grevlex", "lex", "glex")


@dataclass(frozen=True)
class MonomialOrder:
    """Total monomial order.

    ``perm`` lists variable indices from most to least significant; the
    identity permutation ranks variables in declaration order.  ``key`` maps
    an exponent tuple to a tuple of ints whose lexicographic order is the
    monomial order, so ``max(terms, key=order.key)`` is the leading monomial.
    """

    kind: str
    nvars: int
    perm: tuple = None

    def __post_init__(self):
        if self.kind == "graded-lex":
            object.__setattr__(self, "kind", "glex")
        if self.kind not in _ORDER_KINDS:
            raise RingError(f"unknown monomial order {self.kind!r}")
        if self.perm is None:
            object.__setattr__(self, "perm", tuple(range(self.nvars)))
        if sorted(self.perm) != list(range(self.nvars)):
            raise RingError("order permutation must be a permutation of the variables")

    def key(self, m):
        perm = self.perm
        if self.kind == "grevlex":
            return (sum(m),) + tuple(-m[i] for i in reversed(perm))
        if self.kind == "lex":
            return tuple(m[i] for i in perm)
        return (sum(m),) + tuple(m[i] for i in perm)


@dataclass(frozen=True)
class BlockOrder:
    """Product order: compare the first block, then the next, ...

    Each block is a MonomialOrder on a consecutive slice of the variables.
    Used for elimination (the first block is eliminated).
    """

    blocks: tuple

    @property
    def nvars(self):
        return sum(b.nvars for b in self.blocks)

    @property
    def kind(self):
        return "block(" + ",".join(b.kind for b in self.blocks) + ")"

    def key(self, m):
        out = ()
        start = 0
        for b in self.blocks:
            out += b.key(m[start:start + b.nvars])
            start += b.nvars
        return out


# --------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class PolyRing:
    """Ambient polynomial ring F_p[vars] with a monomial order."""

    p: int
    vars: tuple
    order: object = None

    def __post_init__(self):
        PrimeField(self.p)
        if len(set(self.vars)) != len(self.vars):
            raise RingError("duplicate variable names")
        if self.order is None:
            object.__setattr__(self, "order", MonomialOrder("grevlex", len(self.vars)))
        if self.order.nvars != len(self.vars):
            raise RingError("order does not match the number of variables")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise RingError(f"unknown variable {name!r}") from None

    def __call__(self, obj) -> "Polynomial":
        if isinstance(obj, Polynomial):
            if obj.ring != self:
                raise RingError("polynomial belongs to a different ring")
            return obj
        if isinstance(obj, int):
            return self.const(obj)
        if isinstance(obj, str):
            from .ringfile import parse_polynomial

            return parse_polynomial(obj, self)
        raise TypeError(f"cannot convert {type(obj).__name__} to a polynomial")


def _clean(terms: Mapping, p: int) -> dict:
    out = {}
    for m, c in terms.items():
        c %= p
        if c:
            out[m] = c
    return out


class Polynomial:
    """Immutable sparse polynomial over F_p."""

    __slots__ = ("ring", "terms", "_hash", "_lm")

    def __init__(self, ring: PolyRing, terms: Mapping, _clean_terms: bool = True):
        self.ring = ring
        self.terms = _clean(terms, ring.p) if _clean_terms else dict(terms)
        self._hash = None
        self._lm = None

    # -- structure
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    @property
    def lm(self):
        if self._lm is None and self.terms:
            self._lm = max(self.terms, key=self.ring.order.key)
        return self._lm

    @property
    def lc(self) -> int:
        return self.terms[self.lm]

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.order.key(t[0]), reverse=True)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = pow(self.lc, self.ring.p - 2, self.ring.p)
        return self.scale(inv)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ring, {m: a * c for m, a in self.terms.items()})

    def mul_monomial(self, mono, c: int = 1) -> "Polynomial":
        p = self.ring.p
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): (k * c) % p for m, k in self.terms.items()},
            _clean_terms=(c % p == 0),
        )

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError("polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, mul_terms(self.terms, other.terms, self.ring.p), _clean_terms=False)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        p = self.ring.p
        # exact Frobenius on the p-adic digits of n keeps huge exponents cheap
        result = {(0,) * self.ring.nvars: 1}
        base = self.terms
        while n:
            n, d = divmod(n, p)
            if d:
                b = {(0,) * self.ring.nvars: 1}
                for _ in range(d):
                    b = mul_terms(b, base, p)
                result = mul_terms(result, b, p)
            if n:
                base = frobenius_terms(base, 1, p)
        return Polynomial(self.ring, result, _clean_terms=False)

    def frobenius(self, e: int = 1) -> "Polynomial":
        """f**(p**e) in the ambient polynomial ring (term-wise, exact)."""
        return Polynomial(self.ring, frobenius_terms(self.terms, e, self.ring.p), _clean_terms=False)

    # -- comparison / display
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.ring.p
        parts = []
        for m, c in self.sorted_terms():
            neg = c > p // 2 and p > 2
            a = p - c if neg else c
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.ring.vars, m) if e
            )
            if not mono:
                s = str(a)
            elif a == 1:
                s = mono
            else:
                s = f"{a}*{mono}"
            parts.append(("-" if neg else "+", s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out


def mul_terms(a: Mapping, b: Mapping, p: int) -> dict:
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = (out.get(m, 0) + ca * cb) % p
    return {m: c for m, c in out.items() if c}


def frobenius_terms(terms: Mapping, e: int, p: int) -> dict:
    # over F_p, c**p == c, and (sum)**q is term-wise
    q = p**e
    return {tuple(q * x for x in m): c for m, c in terms.items()}


# --------------------------------------------------------------------------
# ring presentations


@dataclass(frozen=True)
class RingPresentation:
    """R = F_p[vars] / Q with a designated local maximal ideal.

    ``local`` holds the indices of the variables whose images generate the
    maximal ideal; by default every variable.  When all variables are local
    the relations must have zero constant term.  With a smaller ``local``
    set (for presentations with inverted parameters, like ``u*t - 1``) the
    requirement is only that the designated ideal plus Q is proper.
    """

    ambient: PolyRing
    relations: tuple = ()
    local: tuple = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.local is None:
            object.__setattr__(self, "local", tuple(range(self.ambient.nvars)))
        object.__setattr__(self, "local", tuple(sorted(set(self.local))))
        rels = tuple(self.ambient(r) for r in self.relations)
        rels = tuple(r for r in rels if r)
        object.__setattr__(self, "relations", rels)
        if self.is_fp_local:
            for r in rels:
                if r.constant_term():
                    raise RingError(f"relation with nonzero constant term: {r}")

    @classmethod
    def make(cls, p: int, vars: Sequence[str], relations: Iterable = (), order: str = "grevlex",
             local: Sequence[str] | None = None, name: str = "") -> "RingPresentation":
        vars = tuple(vars)
        ring = PolyRing(p, vars, MonomialOrder(order, len(vars)))
        rels = tuple(ring(r) for r in relations)
        loc = None if local is None else tuple(ring.index(v) for v in local)
        pres = cls(ring, rels, loc, name)
        if not pres.is_fp_local:
            from .groebner import Ideal

            if Ideal(pres, pres.maximal_generators()).is_unit():
                raise RingError("designated maximal ideal is not proper modulo the relations")
        return pres

    @property
    def p(self) -> int:
        return self.ambient.p

    @property
    def field(self) -> PrimeField:
        return self.ambient.field

    @property
    def vars(self) -> tuple:
        return self.ambient.vars

    @property
    def nvars(self) -> int:
        return self.ambient.nvars

    @property
    def order(self):
        return self.ambient.order

    @property
    def is_fp_local(self) -> bool:
        """True when the maximal ideal is generated by all variables (residue field F_p)."""
        return len(self.local) == self.ambient.nvars

    @property
    def is_polynomial_ring(self) -> bool:
        return not self.relations

    @property
    def is_homogeneous(self) -> bool:
        return all(r.is_homogeneous() for r in self.relations)

    def __call__(self, obj) -> Polynomial:
        return self.ambient(obj)

    def gen(self, name) -> Polynomial:
        return self.ambient.gen(name)

    def maximal_generators(self) -> list:
        return [self.ambient.gen(i) for i in self.local]

    def maximal_ideal(self):
        from .groebner import Ideal

        return Ideal(self, self.maximal_generators())

    def ideal(self, gens):
        from .groebner import Ideal

        return Ideal(self, [self(g) for g in gens])

    def describe(self) -> str:
        rel = ", ".join(str(r) for r in self.relations)
        s = f"F_{self.p}[{', '.join(self.vars)}]"
        return s + (f"/({rel})" if rel else "")


def canonical_form(f: Polynomial, R: RingPresentation) -> Polynomial:
    """Normal form of f modulo the reduced Gröbner basis of the relations."""
    from .groebner import relation_basis, normal_form

    return normal_form(f, relation_basis(R))


def frobenius_pow(f: Polynomial, e: int, R: RingPresentation) -> Polynomial:
    """canonical_form(f**(p**e))."""
    if e < 0:
        raise ValueError("Frobenius exponent must be >= 0")
    return canonical_form(R(f).frobenius(e), R)
