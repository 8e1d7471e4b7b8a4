"""Exact commutative ring backends.

Four backends are supported: the integers, residue rings Z/N, univariate
polynomials over a prime field, and finite flat products of those.  Ring
handles are small immutable descriptors; they do arithmetic on raw
*payloads* (ints, coefficient tuples, component tuples) so that the
matrix and orbit code can run tight loops.  :class:`RingElement` wraps a
payload together with its owner for the public API.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Iterator, Sequence


class RingError(ValueError):
    """Raised on owner mismatches, non-units, non-divisibility and the like."""


class InfiniteRingError(RingError):
    pass


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid on integers; returns (g, u, v) with g >= 0."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        a, u0, v0 = -a, -u0, -v0
    return a, u0, v0


def _is_prime(p: int) -> bool:
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


class RingHandle:
    """Base class of the ring descriptors.

    Subclasses implement payload arithmetic.  Payloads are always kept in
    canonical form, so payload equality is ring-element equality.
    """

    kind: str = ""

    # -- construction -------------------------------------------------
    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def canonical(self, x: Any) -> Any:
        """Bring an arbitrary payload-like value into canonical form."""
        raise NotImplementedError

    def __call__(self, x: Any) -> "RingElement":
        if isinstance(x, RingElement):
            if x.owner != self:
                raise RingError(f"element of {x.owner} used in {self}")
            return x
        if isinstance(x, int) and not isinstance(self, PolyFp):
            return RingElement(self, self.from_int(x))
        return RingElement(self, self.canonical(x))

    # -- arithmetic ---------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def is_one(self, a) -> bool:
        return a == self.one()

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def divides(self, a, b) -> bool:
        """True iff a divides b."""
        raise NotImplementedError

    def exact_div(self, a, b):
        """Return the canonical q with q*b == a; raise if b does not divide a."""
        raise NotImplementedError

    def canonical_associate(self, a) -> tuple[Any, Any]:
        """Return (c, u) with u a unit, a == u*c and c the canonical generator of (a)."""
        raise NotImplementedError

    def gcdex(self, a, b) -> tuple[Any, Any, Any]:
        """Return (g, u, v) with u*a + v*b == g and g the canonical generator of (a, b)."""
        raise NotImplementedError

    def gcdex_matrix(self, a, b) -> tuple[Any, Any, Any, Any, Any]:
        """Return (g, s, t, x, y) with s*a + t*b == g, x*a + y*b == 0 and s*y - t*x == 1.

        ``g`` generates (a, b) but need not be canonical.
        """
        raise NotImplementedError

    def reduce_mod(self, a, d):
        """Canonical representative of the class of a modulo the ideal (d)."""
        raise NotImplementedError

    def inverse_mod(self, a, d):
        """Inverse of a in R/(d); raise RingError if a is not a unit there."""
        raise NotImplementedError

    def is_unit_mod(self, a, d) -> bool:
        raise NotImplementedError

    # Euclidean structure (non-product backends only).
    def norm(self, a) -> int:
        raise NotImplementedError

    def quo_rem(self, a, b) -> tuple[Any, Any]:
        raise NotImplementedError

    # -- finiteness ---------------------------------------------------
    def is_finite(self) -> bool:
        return False

    def cardinality(self) -> int:
        raise InfiniteRingError(f"{self} is infinite")

    def elements(self) -> Iterator[Any]:
        raise InfiniteRingError(f"{self} is infinite")

    def units(self) -> list:
        """All units of R (finite for every supported backend)."""
        raise NotImplementedError

    def additive_generators(self) -> list:
        """Payloads generating (R, +) as an abelian group (finite rings only)."""
        raise InfiniteRingError(f"{self} is infinite")

    def residues(self, d) -> Iterator[Any]:
        """Canonical representatives of R/(d); raises on infinite quotients."""
        raise NotImplementedError

    def sort_key(self, a):
        return a

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        raise NotImplementedError

    def element_to_json(self, a):
        raise NotImplementedError

    def element_from_json(self, obj):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(self.element_to_json(a))

    @property
    def is_product(self) -> bool:
        return False

    @property
    def is_domain(self) -> bool:
        return False

    @property
    def stable_rank(self) -> int:
        """Bass stable rank of the backend (1 for finite rings, 2 for Z and F_p[x])."""
        return 1 if self.is_finite() else 2


@dataclass(frozen=True, repr=False)
class Integers(RingHandle):
    kind = "Z"

    def __repr__(self):
        return "Integers()"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return int(n)

    def canonical(self, x):
        if isinstance(x, str):
            x = int(x)
        if not isinstance(x, int) or isinstance(x, bool):
            raise RingError(f"integer payload expected, got {x!r}")
        return x

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a in (1, -1)

    def inverse(self, a):
        if a not in (1, -1):
            raise RingError(f"{a} is not a unit of Z")
        return a

    def divides(self, a, b):
        if a == 0:
            return b == 0
        return b % a == 0

    def exact_div(self, a, b):
        if b == 0:
            if a != 0:
                raise RingError(f"0 does not divide {a}")
            return 0
        q, r = divmod(a, b)
        if r:
            raise RingError(f"{b} does not divide {a}")
        return q

    def canonical_associate(self, a):
        return (-a, -1) if a < 0 else (a, 1)

    def gcdex(self, a, b):
        if a == 0 and b == 0:
            return 0, 0, 0
        return _xgcd(a, b)

    def gcdex_matrix(self, a, b):
        g, u, v = _xgcd(a, b)
        if g == 0:
            return 0, 1, 0, 0, 1
        return g, u, v, -(b // g), a // g

    def reduce_mod(self, a, d):
        return a if d == 0 else a % abs(d)

    def is_unit_mod(self, a, d):
        if d == 0:
            return a in (1, -1)
        return math.gcd(a, d) == 1

    def inverse_mod(self, a, d):
        if d == 0:
            return self.inverse(a)
        d = abs(d)
        if d == 1:
            return 0
        try:
            return pow(a, -1, d)
        except ValueError:
            raise RingError(f"{a} is not a unit modulo {d}") from None

    def norm(self, a):
        return abs(a)

    def quo_rem(self, a, b):
        return divmod(a, b)

    def units(self):
        return [1, -1]

    def residues(self, d):
        if d == 0:
            raise InfiniteRingError("Z/(0) is infinite")
        return iter(range(abs(d)))

    def sort_key(self, a):
        return (abs(a), a < 0)

    def to_json(self):
        return {"ring": "Z"}

    def element_to_json(self, a):
        return str(a)

    def element_from_json(self, obj):
        return self.canonical(obj)

    @property
    def is_domain(self):
        return True


@dataclass(frozen=True, repr=False)
class Residue(RingHandle):
    n: int
    kind = "Zmod"

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise RingError(f"residue modulus must be an integer >= 2, got {self.n!r}")

    def __repr__(self):
        return f"Residue({self.n})"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return int(n) % self.n

    def canonical(self, x):
        if isinstance(x, str):
            x = int(x)
        if not isinstance(x, int) or isinstance(x, bool):
            raise RingError(f"integer payload expected, got {x!r}")
        return x % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def neg(self, a):
        return -a % self.n

    def mul(self, a, b):
        return a * b % self.n

    def is_unit(self, a):
        return math.gcd(a, self.n) == 1

    def inverse(self, a):
        try:
            return pow(a, -1, self.n)
        except ValueError:
            raise RingError(f"{a} is not a unit of Z/{self.n}") from None

    def _gen(self, a):
        # canonical divisor of N generating (a); 0 stands for N
        return math.gcd(a, self.n) % self.n

    def divides(self, a, b):
        g = math.gcd(a, self.n)
        return b % g == 0

    def exact_div(self, a, b):
        N = self.n
        g = math.gcd(b, N)
        if a % g:
            raise RingError(f"{b} does not divide {a} in Z/{N}")
        m = N // g
        if m == 1:
            return 0
        return (a // g) * pow(b // g, -1, m) % m

    def _unit_lift(self, w, m):
        # a unit of Z/N congruent to w modulo m (w coprime to m, m | N)
        N = self.n
        w %= m
        while math.gcd(w, N) != 1:
            w += m
        return w % N

    def canonical_associate(self, a):
        if a == 0:
            return 0, 1
        c = math.gcd(a, self.n)
        u = self._unit_lift(a // c, self.n // c)
        return c % self.n, u

    def gcdex(self, a, b):
        g0, u0, v0 = _xgcd(a, b)
        if g0 == 0:
            return 0, 0, 0
        c, w = self.canonical_associate(g0 % self.n)
        wi = pow(w, -1, self.n)
        return c, u0 * wi % self.n, v0 * wi % self.n

    def gcdex_matrix(self, a, b):
        g, u, v = _xgcd(a, b)
        N = self.n
        if g == 0:
            return 0, 1, 0, 0, 1
        return g % N, u % N, v % N, -(b // g) % N, (a // g) % N

    def reduce_mod(self, a, d):
        g = math.gcd(d, self.n)
        return a % g

    def is_unit_mod(self, a, d):
        g = math.gcd(d, self.n)
        return math.gcd(a, g) == 1

    def inverse_mod(self, a, d):
        g = math.gcd(d, self.n)
        if g == 1:
            return 0
        try:
            return pow(a, -1, g)
        except ValueError:
            raise RingError(f"{a} is not a unit modulo {g}") from None

    def norm(self, a):
        return a

    def quo_rem(self, a, b):
        return divmod(a, b)

    def is_finite(self):
        return True

    def cardinality(self):
        return self.n

    def elements(self):
        return iter(range(self.n))

    def units(self):
        return [a for a in range(self.n) if math.gcd(a, self.n) == 1]

    def additive_generators(self):
        return [1]

    def residues(self, d):
        return iter(range(math.gcd(d, self.n)))

    def to_json(self):
        return {"ring": "Zmod", "n": self.n}

    def element_to_json(self, a):
        return str(a)

    def element_from_json(self, obj):
        return self.canonical(obj)


@dataclass(frozen=True, repr=False)
class PolyFp(RingHandle):
    """F_p[x]; payloads are coefficient tuples in ascending degree, trimmed."""

    p: int
    kind = "PolyFp"

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise RingError(f"PolyFp needs a prime p, got {self.p!r}")

    def __repr__(self):
        return f"PolyFp({self.p})"

    @staticmethod
    def _trim(c):
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def zero(self):
        return ()

    def one(self):
        return (1,)

    def from_int(self, n):
        return self._trim([n % self.p])

    def canonical(self, x):
        if isinstance(x, (int, str)) and not isinstance(x, bool):
            return self.from_int(int(x))
        try:
            coeffs = [int(c) % self.p for c in x]
        except TypeError:
            raise RingError(f"coefficient list expected, got {x!r}") from None
        return self._trim(coeffs)

    def add(self, a, b):
        p = self.p
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, y in enumerate(b):
            c[i] = (c[i] + y) % p
        return self._trim(c)

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        p = self.p
        c = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return self._trim([v % p for v in c])

    def _scale(self, a, s):
        p = self.p
        return self._trim([x * s % p for x in a])

    def is_unit(self, a):
        return len(a) == 1

    def inverse(self, a):
        if len(a) != 1:
            raise RingError(f"{a} is not a unit of F_{self.p}[x]")
        return (pow(a[0], -1, self.p),)

    def quo_rem(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = list(a)
        db = len(b) - 1
        inv = pow(b[-1], -1, p)
        if len(r) - 1 < db:
            return (), tuple(a)
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k] * inv % p
            if c:
                q[k - db] = c
                for i, y in enumerate(b):
                    r[k - db + i] = (r[k - db + i] - c * y) % p
        return self._trim(q), self._trim(r[:db])

    def norm(self, a):
        return len(a) - 1

    def divides(self, a, b):
        if not a:
            return not b
        return not self.quo_rem(b, a)[1]

    def exact_div(self, a, b):
        if not b:
            if a:
                raise RingError("0 does not divide a nonzero polynomial")
            return ()
        q, r = self.quo_rem(a, b)
        if r:
            raise RingError(f"{b} does not divide {a}")
        return q

    def canonical_associate(self, a):
        if not a:
            return (), (1,)
        lead = a[-1]
        return self._scale(a, pow(lead, -1, self.p)), (lead,)

    def gcdex(self, a, b):
        r0, r1 = a, b
        s0, s1 = (1,), ()
        t0, t1 = (), (1,)
        while r1:
            q, r = self.quo_rem(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        if not r0:
            return (), (), ()
        inv = pow(r0[-1], -1, self.p)
        return self._scale(r0, inv), self._scale(s0, inv), self._scale(t0, inv)

    def gcdex_matrix(self, a, b):
        g, u, v = self.gcdex(a, b)
        if not g:
            return (), (1,), (), (), (1,)
        return g, u, v, self.neg(self.exact_div(b, g)), self.exact_div(a, g)

    def reduce_mod(self, a, d):
        if not d:
            return a
        return self.quo_rem(a, d)[1]

    def is_unit_mod(self, a, d):
        if not d:
            return len(a) == 1
        g = self.gcdex(a, d)[0]
        return g == (1,)

    def inverse_mod(self, a, d):
        if not d:
            return self.inverse(a)
        if len(d) == 1:
            return ()
        g, u, _ = self.gcdex(a, d)
        if g != (1,):
            raise RingError(f"{a} is not a unit modulo {d}")
        return self.reduce_mod(u, d)

    def units(self):
        return [(c,) for c in range(1, self.p)]

    def residues(self, d):
        if not d:
            raise InfiniteRingError("F_p[x]/(0) is infinite")
        deg = len(d) - 1
        for coeffs in itertools.product(range(self.p), repeat=deg):
            yield self._trim(coeffs)

    def sort_key(self, a):
        return (len(a), tuple(reversed(a)))

    def to_json(self):
        return {"ring": "PolyFp", "p": self.p}

    def element_to_json(self, a):
        return list(a)

    def element_from_json(self, obj):
        return self.canonical(obj)

    def format(self, a):
        if not a:
            return "0"
        terms = []
        for i, c in enumerate(a):
            if c:
                terms.append(f"{c}" if i == 0 else (f"{c}*x^{i}" if c != 1 else f"x^{i}"))
        return " + ".join(reversed(terms))

    @property
    def is_domain(self):
        return True


@dataclass(frozen=True, repr=False)
class Product(RingHandle):
    """Finite flat product of non-product backends; payloads are tuples."""

    factors: tuple
    kind = "Product"

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise RingError("a product ring needs at least one factor")
        for f in factors:
            if not isinstance(f, RingHandle):
                raise RingError(f"product factor {f!r} is not a ring")
            if f.is_product:
                raise RingError("nested products are not supported; flatten the factor list")

    def __repr__(self):
        return f"Product({', '.join(map(repr, self.factors))})"

    @property
    def is_product(self):
        return True

    def _map(self, fn, *args):
        return tuple(fn(f, *xs) for f, *xs in zip(self.factors, *args))

    def zero(self):
        return tuple(f.zero() for f in self.factors)

    def one(self):
        return tuple(f.one() for f in self.factors)

    def from_int(self, n):
        return tuple(f.from_int(n) for f in self.factors)

    def canonical(self, x):
        if isinstance(x, (int, str)) and not isinstance(x, bool):
            return self.from_int(int(x))
        x = tuple(x)
        if len(x) != len(self.factors):
            raise RingError(f"expected {len(self.factors)} components, got {len(x)}")
        return tuple(f.canonical(c) for f, c in zip(self.factors, x))

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def sub(self, a, b):
        return tuple(f.sub(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def is_unit(self, a):
        return all(f.is_unit(x) for f, x in zip(self.factors, a))

    def inverse(self, a):
        return tuple(f.inverse(x) for f, x in zip(self.factors, a))

    def divides(self, a, b):
        return all(f.divides(x, y) for f, x, y in zip(self.factors, a, b))

    def exact_div(self, a, b):
        return tuple(f.exact_div(x, y) for f, x, y in zip(self.factors, a, b))

    def canonical_associate(self, a):
        pairs = [f.canonical_associate(x) for f, x in zip(self.factors, a)]
        return tuple(c for c, _ in pairs), tuple(u for _, u in pairs)

    def gcdex(self, a, b):
        raise RingError("gcd over a product ring: split into components first")

    def gcdex_matrix(self, a, b):
        raise RingError("gcd over a product ring: split into components first")

    def norm(self, a):
        raise RingError("a product ring has no Euclidean norm")

    def quo_rem(self, a, b):
        raise RingError("a product ring has no Euclidean division")

    def reduce_mod(self, a, d):
        return tuple(f.reduce_mod(x, y) for f, x, y in zip(self.factors, a, d))

    def is_unit_mod(self, a, d):
        return all(f.is_unit_mod(x, y) for f, x, y in zip(self.factors, a, d))

    def inverse_mod(self, a, d):
        return tuple(f.inverse_mod(x, y) for f, x, y in zip(self.factors, a, d))

    def is_finite(self):
        return all(f.is_finite() for f in self.factors)

    @property
    def stable_rank(self):
        return max(f.stable_rank for f in self.factors)

    def cardinality(self):
        return math.prod(f.cardinality() for f in self.factors)

    def elements(self):
        if not self.is_finite():
            raise InfiniteRingError(f"{self} is infinite")
        return itertools.product(*(list(f.elements()) for f in self.factors))

    def units(self):
        return list(itertools.product(*(f.units() for f in self.factors)))

    def additive_generators(self):
        gens = []
        for i, f in enumerate(self.factors):
            for g in f.additive_generators():
                x = list(self.zero())
                x[i] = g
                gens.append(tuple(x))
        return gens

    def residues(self, d):
        return itertools.product(*(list(f.residues(y)) for f, y in zip(self.factors, d)))

    def sort_key(self, a):
        return tuple(f.sort_key(x) for f, x in zip(self.factors, a))

    def embed(self, i, x):
        """Payload with component i equal to x and zeros elsewhere."""
        out = list(self.zero())
        out[i] = x
        return tuple(out)

    def to_json(self):
        return {"ring": "Product", "factors": [f.to_json() for f in self.factors]}

    def element_to_json(self, a):
        return [f.element_to_json(x) for f, x in zip(self.factors, a)]

    def element_from_json(self, obj):
        if isinstance(obj, (int, str)):
            return self.from_int(int(obj))
        if len(obj) != len(self.factors):
            raise RingError(f"expected {len(self.factors)} components, got {len(obj)}")
        return tuple(f.element_from_json(c) for f, c in zip(self.factors, obj))

    def format(self, a):
        return "(" + ", ".join(f.format(x) for f, x in zip(self.factors, a)) + ")"


def ring_from_json(obj: dict | str) -> RingHandle:
    """Parse a ring descriptor such as ``{"ring": "Zmod", "n": 8}``."""
    if isinstance(obj, str):
        obj = {"ring": obj}
    if not isinstance(obj, dict) or "ring" not in obj:
        raise RingError(f"malformed ring descriptor: {obj!r}")
    kind = obj["ring"]
    if kind == "Z":
        return Integers()
    if kind == "Zmod":
        return Residue(int(obj["n"]))
    if kind == "PolyFp":
        return PolyFp(int(obj["p"]))
    if kind == "Product":
        return Product(tuple(ring_from_json(f) for f in obj["factors"]))
    raise RingError(f"unknown ring kind {kind!r}")


@dataclass(frozen=True)
class RingElement:
    """A ring element: canonical payload plus its owning ring."""

    owner: RingHandle
    payload: Any

    def _other(self, other) -> Any:
        if isinstance(other, RingElement):
            if other.owner != self.owner:
                raise RingError(f"owner mismatch: {self.owner} vs {other.owner}")
            return other.payload
        return self.owner(other).payload

    def __add__(self, other):
        return RingElement(self.owner, self.owner.add(self.payload, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.owner, self.owner.sub(self.payload, self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.owner, self.owner.sub(self._other(other), self.payload))

    def __mul__(self, other):
        return RingElement(self.owner, self.owner.mul(self.payload, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.owner, self.owner.neg(self.payload))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.owner == other.owner and self.payload == other.payload
        try:
            return self.payload == self.owner(other).payload
        except (RingError, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash((self.owner, self.payload))

    def __repr__(self):
        return f"{self.owner.format(self.payload)} in {self.owner!r}"

    def is_zero(self) -> bool:
        return self.owner.is_zero(self.payload)

    def to_json(self):
        return self.owner.element_to_json(self.payload)


@dataclass(frozen=True)
class PrincipalIdeal:
    """A principal ideal stored by its canonical generator."""

    owner: RingHandle
    generator: Any  # canonical payload

    @classmethod
    def of(cls, owner: RingHandle, a) -> "PrincipalIdeal":
        if isinstance(a, RingElement):
            a = a.payload
        return cls(owner, owner.canonical_associate(a)[0])

    def is_whole_ring(self) -> bool:
        return self.owner.is_unit(self.generator)

    def is_zero(self) -> bool:
        return self.owner.is_zero(self.generator)

    def contains(self, a) -> bool:
        if isinstance(a, RingElement):
            a = a.payload
        return self.owner.divides(self.generator, a)

    def __repr__(self):
        return f"({self.owner.format(self.generator)})"

    def to_json(self):
        return self.owner.element_to_json(self.generator)


# ---------------------------------------------------------------------------
# element-level operations


def _shared(a: RingElement, b: RingElement) -> RingHandle:
    if a.owner != b.owner:
        raise RingError(f"owner mismatch: {a.owner} vs {b.owner}")
    return a.owner


def gcd_bezout(a: RingElement, b: RingElement) -> tuple[RingElement, RingElement, RingElement]:
    """Return (g, u, v) with u*a + v*b == g, g the canonical generator of (a, b)."""
    R = _shared(a, b)
    if R.is_product:
        raise RingError("gcd_bezout over a product ring: use split_components first")
    g, u, v = R.gcdex(a.payload, b.payload)
    return RingElement(R, g), RingElement(R, u), RingElement(R, v)


def is_unit(a: RingElement) -> bool:
    return a.owner.is_unit(a.payload)


def invert_unit(a: RingElement) -> RingElement:
    return RingElement(a.owner, a.owner.inverse(a.payload))


def divides(a: RingElement, b: RingElement) -> bool:
    """True iff a divides b."""
    R = _shared(a, b)
    return R.divides(a.payload, b.payload)


def exact_div(a: RingElement, b: RingElement) -> RingElement:
    """Quotient of a by b; the smallest canonical solution when it is not unique."""
    R = _shared(a, b)
    return RingElement(R, R.exact_div(a.payload, b.payload))


def split_components(a: RingElement) -> list[RingElement]:
    R = a.owner
    if not R.is_product:
        raise RingError(f"split_components needs a product ring, got {R}")
    return [RingElement(f, x) for f, x in zip(R.factors, a.payload)]


def join_components(parts: Sequence[RingElement]) -> RingElement:
    if not parts:
        raise RingError("cannot join an empty component list")
    R = Product(tuple(p.owner for p in parts))
    return RingElement(R, tuple(p.payload for p in parts))


def enumerate_elements(R: RingHandle) -> Iterator[RingElement]:
    if not R.is_finite():
        raise InfiniteRingError(f"{R} is infinite")
    for x in R.elements():
        yield RingElement(R, x)


def split_payload(R: RingHandle, x) -> list:
    """Component payloads of a product payload (identity list for other rings)."""
    return list(x) if R.is_product else [x]
