"""Finitely presented modules M = R^k / (column span of the relations)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .matrix import ExactMatrix, MatrixError, diagonal, join_matrices, split_matrix
from .rings import PrincipalIdeal, Product, RingElement, RingError, RingHandle, Residue, ring_from_json
from .smith import SmithDecomposition, determinantal_divisors, smith_normal_form


class ModuleError(ValueError):
    pass


class FpModule:
    """A finitely presented module with an eagerly computed decomposition.

    The Smith form ``B · rel · C = S`` gives an isomorphism
    ``M -> R/(g_1) x ... x R/(g_mu)`` sending a lift x to the entries of
    ``B x`` at the non-unit diagonal positions, reduced modulo the
    corresponding factor (zero factors for free summands).
    """

    def __init__(self, owner: RingHandle, k: int, relations: ExactMatrix | None = None):
        if k < 0:
            raise ModuleError("generator count must be nonnegative")
        if relations is None:
            relations = ExactMatrix(owner, [[] for _ in range(k)], 0)
        if relations.owner != owner:
            raise ModuleError(f"relations over {relations.owner}, module over {owner}")
        if relations.nrows != k:
            raise ModuleError(f"relation matrix has {relations.nrows} rows, expected {k}")
        self.owner = owner
        self.k = k
        self.relations = relations
        self.snf: SmithDecomposition = smith_normal_form(relations)
        r = relations.ncols
        z = owner.zero()
        factors = [self.snf.S[i, i] if i < r else z for i in range(k)]
        self._factors = factors
        self._kept = tuple(i for i, f in enumerate(factors) if not owner.is_unit(f))
        self._chain = tuple(factors[i] for i in self._kept)

    # -- constructors -------------------------------------------------
    @classmethod
    def from_chain(cls, owner: RingHandle, generators: Sequence[Any]) -> "FpModule":
        """R/(g_1) x ... x R/(g_k) presented by a diagonal relation matrix."""
        gens = [owner(g).payload for g in generators]
        return cls(owner, len(gens), diagonal(owner, gens))

    @classmethod
    def free(cls, owner: RingHandle, rank: int) -> "FpModule":
        return cls(owner, rank)

    @classmethod
    def from_relation_columns(cls, owner: RingHandle, k: int, columns: Sequence[Sequence[Any]]) -> "FpModule":
        cols = [[owner(x).payload for x in c] for c in columns]
        return cls(owner, k, ExactMatrix.from_columns(owner, cols, k))

    # -- decomposition --------------------------------------------------
    @property
    def mu(self) -> int:
        return len(self._kept)

    @property
    def chain(self) -> list[PrincipalIdeal]:
        """Invariant chain a_1 ⊇ a_2 ⊇ ... ⊇ a_mu, all proper."""
        return [PrincipalIdeal(self.owner, g) for g in self._chain]

    @property
    def chain_generators(self) -> tuple:
        return self._chain

    @property
    def kept_indices(self) -> tuple:
        return self._kept

    @property
    def free_rank(self) -> int:
        z = self.owner.zero()
        return sum(1 for g in self._chain if g == z)

    @property
    def P(self) -> ExactMatrix:
        """Change of coordinates: decomposed coordinates are read off from P · x."""
        return self.snf.B

    @property
    def P_inv(self) -> ExactMatrix:
        return self.snf.B_inv

    def is_zero(self) -> bool:
        return self.mu == 0

    def decomposed(self, x: Sequence[Any]) -> tuple:
        """Decomposed coordinates (length mu) of a lift x in R^k."""
        R = self.owner
        if len(x) != self.k:
            raise ModuleError(f"coordinate column of length {len(x)}, expected {self.k}")
        out = []
        z = R.zero()
        for i, g in zip(self._kept, self._chain):
            acc = z
            for a, v in zip(self.snf.B.rows[i], x):
                if v != z and a != z:
                    acc = R.add(acc, R.mul(a, v))
            out.append(R.reduce_mod(acc, g))
        return tuple(out)

    def lift(self, y: Sequence[Any]) -> tuple:
        """A lift in R^k of the element with decomposed coordinates y."""
        R = self.owner
        if len(y) != self.mu:
            raise ModuleError(f"decomposed column of length {len(y)}, expected {self.mu}")
        full = [R.zero()] * self.k
        for i, v in zip(self._kept, y):
            full[i] = v
        z = R.zero()
        out = []
        for row in self.snf.B_inv.rows:
            acc = z
            for a, v in zip(row, full):
                if v != z and a != z:
                    acc = R.add(acc, R.mul(a, v))
            out.append(acc)
        return tuple(out)

    def reduce_decomposed(self, y: Sequence[Any]) -> tuple:
        R = self.owner
        return tuple(R.reduce_mod(v, g) for v, g in zip(y, self._chain))

    def basis_lifts(self) -> list[tuple]:
        """Lifts of the standard decomposed generators e_1, ..., e_mu."""
        R = self.owner
        out = []
        for t in range(self.mu):
            y = [R.zero()] * self.mu
            y[t] = R.one()
            out.append(self.lift(y))
        return out

    def contains_relation(self, x: Sequence[Any]) -> bool:
        """True iff x lies in the relation span, i.e. represents 0 in M."""
        z = self.owner.zero()
        return all(v == z for v in self.decomposed(x))

    def element(self, coords: Sequence[Any]) -> "ModuleElement":
        return ModuleElement(self, tuple(self.owner(c).payload for c in coords))

    # -- invariants -----------------------------------------------------
    def fitting_ideal(self, i: int) -> PrincipalIdeal:
        """Fitt_i from the chain: the product of its first mu - i generators."""
        if i < 0:
            raise ModuleError("Fitting ideal index must be nonnegative")
        R = self.owner
        acc = R.one()
        for g in self._chain[: max(self.mu - i, 0)]:
            acc = R.mul(acc, g)
        return PrincipalIdeal.of(R, acc)

    def fitting_ideal_from_minors(self, i: int) -> PrincipalIdeal:
        """Fitt_i as the ideal of (k - i)-minors of the raw presentation."""
        if i < 0:
            raise ModuleError("Fitting ideal index must be nonnegative")
        R = self.owner
        size = self.k - i
        if size <= 0:
            return PrincipalIdeal.of(R, R.one())
        if size > self.relations.ncols:
            return PrincipalIdeal.of(R, R.zero())
        if isinstance(R, Product):
            gens = tuple(determinantal_divisors(P)[size - 1].generator for P in split_matrix(self.relations))
            return PrincipalIdeal.of(R, gens)
        return determinantal_divisors(self.relations)[size - 1]

    def torsion_mu(self) -> int | None:
        """mu of the torsion submodule; None where it is not applicable (zero divisors)."""
        R = self.owner
        if isinstance(R, Residue):
            return None
        if isinstance(R, Product):
            vals = [component_module(self, c).torsion_mu() for c in range(len(R.factors))]
            if any(v is None for v in vals):
                return None
            return max(vals)
        z = R.zero()
        return sum(1 for g in self._chain if g != z)

    def is_generating(self, vectors: Sequence[Sequence[Any]]) -> bool:
        """True iff the given lifts generate M."""
        for v in vectors:
            if len(v) != self.k:
                raise ModuleError(f"coordinate column of length {len(v)}, expected {self.k}")
        if self.k == 0:
            return True
        R = self.owner
        block = ExactMatrix.from_columns(R, [tuple(v) for v in vectors], self.k).hstack(self.relations)
        if block.ncols < self.k:
            return False
        d = smith_normal_form(block)
        return all(R.is_unit(d.S[i, i]) for i in range(self.k))

    # -- transfer -------------------------------------------------------
    def quotient_by_ideal(self, a) -> "FpModule":
        """Presentation of M / aM."""
        R = self.owner
        if isinstance(a, PrincipalIdeal):
            if a.owner != R:
                raise ModuleError(f"ideal over {a.owner}, module over {R}")
            g = a.generator
        elif isinstance(a, RingElement):
            if a.owner != R:
                raise ModuleError(f"ideal over {a.owner}, module over {R}")
            g = a.payload
        else:
            g = R(a).payload
        extra = diagonal(R, [g] * self.k)
        return FpModule(R, self.k, self.relations.hstack(extra))

    def push_forward(self, quotient: "FpModule", vectors: Sequence[Sequence[Any]]) -> list[tuple]:
        """Images in a quotient module sharing the generator set (same lifts)."""
        if quotient.owner != self.owner or quotient.k != self.k:
            raise ModuleError("push_forward needs a quotient on the same generators")
        return [tuple(v) for v in vectors]

    # -- misc -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FpModule):
            return NotImplemented
        return self.owner == other.owner and self.k == other.k and self.relations == other.relations

    def __hash__(self):
        return hash((self.owner, self.k, self.relations))

    def __repr__(self):
        chain = ", ".join(self.owner.format(g) for g in self._chain)
        return f"FpModule({self.owner!r}, k={self.k}, chain=[{chain}])"

    def to_json(self) -> dict:
        R = self.owner
        return {
            "ring": R.to_json(),
            "generators": self.k,
            "relations": [[R.element_to_json(x) for x in c] for c in self.relations.columns()],
        }

    @classmethod
    def from_json(cls, obj: dict, owner: RingHandle | None = None) -> "FpModule":
        if not isinstance(obj, dict) or "generators" not in obj:
            raise ModuleError("module JSON needs a 'generators' field")
        if owner is None:
            if "ring" not in obj:
                raise ModuleError("module JSON needs a 'ring' field")
            owner = ring_from_json(obj["ring"])
        k = int(obj["generators"])
        cols = obj.get("relations", []) or []
        try:
            payloads = [[owner.element_from_json(x) for x in c] for c in cols]
            rel = ExactMatrix.from_columns(owner, payloads, k)
        except (RingError, MatrixError, TypeError) as exc:
            raise ModuleError(f"malformed relations: {exc}") from exc
        return cls(owner, k, rel)


@dataclass(frozen=True)
class ModuleElement:
    """An element of M given by a lift in R^k; equality is equality in M."""

    module: FpModule
    coords: tuple

    def decomposed(self) -> tuple:
        return self.module.decomposed(self.coords)

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.module == other.module and self.decomposed() == other.decomposed()

    def __hash__(self):
        return hash((self.module, self.decomposed()))


def component_module(M: FpModule, c: int) -> FpModule:
    """The factor-c component of a module over a product ring."""
    R = M.owner
    if not isinstance(R, Product):
        raise ModuleError("component_module needs a product ring")
    f = R.factors[c]
    rel = split_matrix(M.relations)[c] if M.relations.ncols else ExactMatrix(f, [[] for _ in range(M.k)], 0)
    return FpModule(f, M.k, rel)


def component_vectors(R: Product, vectors: Sequence[Sequence[Any]], c: int) -> list[tuple]:
    return [tuple(x[c] for x in v) for v in vectors]


def join_modules(R: Product, parts: Sequence[FpModule]) -> FpModule:
    """Module over R whose components are the given modules (equal k, padded relations)."""
    k = parts[0].k
    if any(P.k != k for P in parts):
        raise ModuleError("component modules need equal generator counts")
    width = max(P.relations.ncols for P in parts)
    mats = []
    for P, f in zip(parts, R.factors):
        rel = P.relations
        if rel.ncols < width:
            rel = rel.hstack(ExactMatrix.zeros(f, k, width - rel.ncols))
        mats.append(rel)
    if width == 0:
        return FpModule(R, k)
    return FpModule(R, k, join_matrices(R, mats))


def standard_vector(M: FpModule, n: int) -> list[tuple]:
    """Lifts of (e_1, ..., e_mu, 0, ..., 0) in decomposed coordinates."""
    if n < M.mu:
        raise ModuleError(f"n = {n} is below mu = {M.mu}")
    zero = tuple([M.owner.zero()] * M.k)
    return M.basis_lifts() + [zero] * (n - M.mu)


__all__ = [
    "FpModule",
    "ModuleElement",
    "ModuleError",
    "component_module",
    "component_vectors",
    "join_modules",
    "standard_vector",
]
