"""Generating vectors: determinant invariant, canonical forms, equivalence and classification.

A generating vector m = (m_1, ..., m_n) of M is stored by lifts in R^k.
The group acts on the right: (m · W)_j = sum_i m_i W_ij.  All reductions
work on the mu x n matrix Y of decomposed coordinates, whose row i lives
in R/(g_i) for the invariant chain g_1 | ... | g_mu.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Sequence

from .fpmodule import FpModule, ModuleError, component_module, component_vectors, standard_vector
from .matrix import (
    AddMultiple,
    ElementaryWord,
    ExactMatrix,
    MatrixError,
    apply_word,
    determinant_payload,
    evaluate_word,
    identity,
    mat_mul,
    zip_words,
)
from .rings import InfiniteRingError, PrincipalIdeal, Product, RingError, RingHandle, Residue
from .smith import solve_many

GROUPS = ("SL", "E", "GL")
DEFAULT_UNIT_CAP = 10**6


class NotGeneratingError(ModuleError):
    pass


class BudgetExceeded(RuntimeError):
    """A hard enumeration limit was hit; results would be incomplete."""


def normalize_group(group: str) -> str:
    g = str(group).upper()
    if g not in GROUPS:
        raise ValueError(f"group must be one of sl, e, gl; got {group!r}")
    return g


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class GenVector:
    module: FpModule
    entries: tuple  # n lifts, each a length-k tuple of payloads
    certified: bool = False

    @classmethod
    def certify(cls, M: FpModule, entries: Sequence[Sequence[Any]]) -> "GenVector":
        lifts = tuple(tuple(M.owner(x).payload for x in v) for v in entries)
        for v in lifts:
            if len(v) != M.k:
                raise ModuleError(f"coordinate column of length {len(v)}, expected {M.k}")
        if not M.is_generating(lifts):
            raise NotGeneratingError("the vector does not generate the module")
        return cls(M, lifts, True)

    @property
    def n(self) -> int:
        return len(self.entries)

    def decomposed(self) -> tuple:
        """Columns of the mu x n decomposed-coordinate matrix."""
        return tuple(self.module.decomposed(v) for v in self.entries)

    def act(self, w: ElementaryWord) -> "GenVector":
        """m · eval(w); generation is preserved, so certification carries over."""
        M = self.module
        if w.size != self.n:
            raise MatrixError(f"word of size {w.size} acting on a vector of length {self.n}")
        L = ExactMatrix.from_columns(M.owner, self.entries, M.k) if self.n else None
        if L is None:
            return self
        out = apply_word(L, w, "right")
        return GenVector(M, tuple(out.columns()), self.certified)

    def act_matrix(self, G: ExactMatrix) -> "GenVector":
        M = self.module
        L = ExactMatrix.from_columns(M.owner, self.entries, M.k)
        return GenVector(M, tuple(mat_mul(L, G).columns()), self.certified)

    def same_in_module(self, other: "GenVector") -> bool:
        return self.module == other.module and self.decomposed() == other.decomposed()

    def to_json(self) -> list:
        R = self.module.owner
        return [[R.element_to_json(x) for x in v] for v in self.entries]

    @classmethod
    def from_json(cls, M: FpModule, obj: list) -> "GenVector":
        R = M.owner
        return cls.certify(M, [[R.element_from_json(x) for x in v] for v in obj])


@dataclass(frozen=True)
class DetClass:
    """A unit of R / Fitt_{mu-1}(M) in canonical residue form."""

    modulus: PrincipalIdeal
    value: Any

    def to_json(self):
        R = self.modulus.owner
        return {"modulus": R.element_to_json(self.modulus.generator), "value": R.element_to_json(self.value)}


TRANSITIVE = "Transitive"
UNIT_CLASSES = "UnitClasses"
UNIT_CLASSES_SK1 = "UnitClassesTimesSK1"
DOUBLE_COSET = "DoubleCoset"

SK1_NOTE = "SK_1 trivial: the backend is Euclidean or a finite product of such, so SL_n = E_n"


@dataclass(frozen=True)
class OrbitClassification:
    group: str
    n: int
    shape: str
    branch: str
    representatives: tuple | None = None  # DetClass values
    sk1: str | None = None
    components: tuple | None = None

    @property
    def count(self) -> int | None:
        if self.shape == TRANSITIVE:
            return 1
        if self.representatives is None:
            return None
        return len(self.representatives)

    def to_json(self) -> dict:
        out = {"group": self.group, "n": self.n, "shape": self.shape, "branch": self.branch,
               "count": self.count}
        if self.representatives is not None:
            out["representatives"] = [d.to_json() for d in self.representatives]
        if self.sk1 is not None:
            out["sk1"] = self.sk1
        if self.components is not None:
            out["components"] = [c.to_json() for c in self.components]
        return out


@dataclass(frozen=True)
class GLWitness:
    """m · matrix = m'; the matrix is diag(u, 1, ..., 1) · eval(word)."""

    matrix: ExactMatrix
    unit: Any
    word: ElementaryWord

    def to_json(self) -> dict:
        R = self.matrix.owner
        return {"unit": R.element_to_json(self.unit), "word": self.word.to_json(),
                "matrix": self.matrix.to_json()}


# ---------------------------------------------------------------------------
# determinant invariant


def fitt_generator(M: FpModule) -> Any:
    """Generator of Fitt_{mu-1}(M), that is g_1 (the unit ideal when mu = 0)."""
    return M.fitting_ideal(M.mu - 1).generator if M.mu else M.owner.one()


def _det_mod(M: FpModule, cols: Sequence[Sequence[Any]]) -> Any:
    R = M.owner
    g = fitt_generator(M)
    mu = M.mu
    Y = ExactMatrix(R, [[R.reduce_mod(cols[j][i], g) for j in range(mu)] for i in range(mu)], mu)
    return R.reduce_mod(determinant_payload(Y), g)


def det_rel(M: FpModule, m_ref: GenVector, m: GenVector) -> DetClass:
    """det of the mu x mu matrix A over R/Fitt_{mu-1} with pi(m) = pi(m_ref) · A.

    With Y, Y_ref the decomposed coordinates reduced into (R/g_1)^mu, A is
    Y_ref^-1 · Y, so its determinant is det(Y) · det(Y_ref)^-1.
    """
    for v in (m_ref, m):
        if not v.certified:
            raise NotGeneratingError("det_rel needs certified generating vectors")
        if v.module != M:
            raise ModuleError("vector belongs to a different module")
    mu = M.mu
    if mu == 0:
        raise ModuleError("det_rel is undefined for the zero module")
    if m_ref.n != mu or m.n != mu:
        raise ModuleError(f"det_rel needs vectors of length mu = {mu}")
    R = M.owner
    g = fitt_generator(M)
    d_ref = _det_mod(M, m_ref.decomposed())
    d = _det_mod(M, m.decomposed())
    value = R.reduce_mod(R.mul(d, R.inverse_mod(d_ref, g)), g)
    return DetClass(PrincipalIdeal(R, g), value)


def det_invariant(M: FpModule, m: GenVector) -> DetClass:
    """det_rel against the standard decomposed basis."""
    ref = GenVector(M, tuple(standard_vector(M, M.mu)), True)
    return det_rel(M, ref, m)


# ---------------------------------------------------------------------------
# reduction engine


def _components(R: RingHandle):
    """(factor, get, embed) triples: one per factor of a product, one otherwise."""
    if isinstance(R, Product):
        return [(f, (lambda x, c=c: x[c]), (lambda r, c=c: R.embed(c, r))) for c, f in enumerate(R.factors)]
    return [(R, (lambda x: x), (lambda r: r))]


def _euclid_norm(F: RingHandle):
    if isinstance(F, Residue):
        return lambda a: a
    return F.norm


class _Reducer:
    """Column operations on Y (rows reduced by their moduli) with a tracked inverse X."""

    def __init__(self, R: RingHandle, Y: list[list], moduli: Sequence[Any], X: list[list] | None):
        self.R = R
        self.Y = Y
        self.moduli = list(moduli)
        self.X = X
        self.letters: list = []

    def col_add(self, i: int, j: int, r: Any) -> None:
        """col_j += r · col_i (right multiplication by E_ij(r))."""
        R = self.R
        if r == R.zero():
            return
        for row, g in zip(self.Y, self.moduli):
            if row[i] != R.zero():
                row[j] = R.reduce_mod(R.add(row[j], R.mul(r, row[i])), g)
        if self.X is not None:
            X = self.X
            nr = R.neg(r)
            X[i] = [R.add(a, R.mul(nr, b)) for a, b in zip(X[i], X[j])]
        self.letters.append(AddMultiple(i, j, r))

    def reduce_row(self, t: int, active: Sequence[int], target: int, normalize: bool) -> None:
        """Make row t vanish on the active columns except a unit at ``target``.

        The unit is made 1 when ``normalize`` holds (needs two active columns).
        """
        R = self.R
        g = self.moduli[t]
        row = self.Y[t]
        for F, get, embed in _components(R):
            gc = get(g)
            if F.is_unit(gc):
                continue
            fz = F.zero()
            norm = _euclid_norm(F)
            while True:
                nz = [j for j in active if get(row[j]) != fz]
                if not nz:
                    raise NotGeneratingError(f"row {t} is not unimodular")
                p = min(nz, key=lambda j: (norm(get(row[j])), j))
                others = [j for j in nz if j != p]
                if not others:
                    break
                for j in others:
                    q, _ = F.quo_rem(get(row[j]), get(row[p]))
                    self.col_add(p, j, embed(F.neg(q)))
            u = get(row[p])
            if not F.is_unit_mod(u, gc):
                raise NotGeneratingError(f"row {t} is not unimodular")
            one = F.reduce_mod(F.one(), gc)
            if p != target:
                a = get(row[target])
                self.col_add(p, target, embed(F.mul(F.sub(F.one(), a), F.inverse_mod(u, gc))))
                self.col_add(target, p, embed(F.neg(get(row[p]))))
            elif normalize and u != one:
                q = next(j for j in active if j != target)
                self.col_add(target, q, embed(F.inverse_mod(u, gc)))
                self.col_add(q, target, embed(F.sub(F.one(), u)))
                self.col_add(target, q, embed(F.neg(get(row[q]))))


def _initial_inverse(M: FpModule, Y: list[list]) -> list[list]:
    """X (n x mu) with Y · X = I modulo the chain, from one linear solve per column."""
    R = M.owner
    mu = M.mu
    n = len(Y[0]) if Y else 0
    block = ExactMatrix(R, [list(Y[i]) + [M.chain_generators[i] if j == i else R.zero() for j in range(mu)]
                            for i in range(mu)], n + mu)
    rhs = [[R.one() if r == i else R.zero() for r in range(mu)] for i in range(mu)]
    cols = []
    for x in solve_many(block, rhs):
        if x is None:
            raise NotGeneratingError("the vector does not generate the module")
        cols.append(x[:n])
    return [[cols[i][j] for i in range(mu)] for j in range(n)]


def _decomposed_matrix(m: GenVector) -> list[list]:
    cols = m.decomposed()
    mu = m.module.mu
    return [[cols[j][i] for j in range(m.n)] for i in range(mu)]


def canonicalize(M: FpModule, m: GenVector, group: str = "SL") -> tuple[GenVector, ElementaryWord]:
    """Return (canonical vector, word) with m · eval(word) equal to the canonical vector in M.

    The canonical form is (delta·e_1, e_2, ..., e_mu, 0, ..., 0) in decomposed
    coordinates, with delta = 1 whenever n > mu.  The word uses transvections
    only, so it serves both SL and E.
    """
    group = normalize_group(group)
    if group == "GL":
        raise ValueError("canonicalize supports the groups sl and e")
    if not m.certified:
        raise NotGeneratingError("canonicalize needs a certified generating vector")
    if m.module != M:
        raise ModuleError("vector belongs to a different module")
    R = M.owner
    n, mu = m.n, M.mu
    if n < mu:
        raise ModuleError(f"vector length {n} is below mu = {mu}")
    if mu == 0:
        return GenVector(M, tuple(standard_vector(M, n)), True), ElementaryWord(R, n, ())
    Y = _decomposed_matrix(m)
    X = _initial_inverse(M, Y)
    red = _Reducer(R, Y, M.chain_generators, X)
    for t in reversed(range(mu)):
        active = list(range(t + 1)) + list(range(mu, n))
        red.reduce_row(t, active, t, normalize=len(active) >= 2)
        v = [Y[i][t] if i < t else R.zero() for i in range(mu)]
        if any(x != R.zero() for x in v):
            r = []
            for xrow in X:
                acc = R.zero()
                for a, b in zip(xrow, v):
                    acc = R.add(acc, R.mul(a, b))
                r.append(acc)
            for j in active:
                if j != t:
                    red.col_add(j, t, R.neg(r[j]))
        for i in range(t):
            if Y[i][t] != R.zero():
                raise AssertionError("column clearing failed")  # pragma: no cover
    word = ElementaryWord(R, n, red.letters)
    canon = GenVector(M, tuple(M.lift([Y[i][j] for i in range(mu)]) for j in range(n)), True)
    return canon, word


def canonical_key(M: FpModule, m: GenVector) -> tuple:
    """Hashable canonical form (decomposed coordinates of the canonical vector)."""
    canon, _ = canonicalize(M, m)
    return canon.decomposed()


def canonical_delta(M: FpModule, m: GenVector) -> Any:
    canon, _ = canonicalize(M, m)
    return canon.decomposed()[0][0] if M.mu else M.owner.one()


# ---------------------------------------------------------------------------
# equivalence


def are_equivalent(M: FpModule, m: GenVector, m2: GenVector, group: str = "SL"):
    """A witness W with m · W = m2, or None when the vectors are inequivalent."""
    group = normalize_group(group)
    if m.n != m2.n:
        raise ModuleError("vectors of different lengths")
    if not (m.certified and m2.certified):
        raise NotGeneratingError("are_equivalent needs certified generating vectors")
    R = M.owner
    n = m.n
    if group in ("SL", "E"):
        c1, w1 = canonicalize(M, m, group)
        c2, w2 = canonicalize(M, m2, group)
        if c1.decomposed() != c2.decomposed():
            return None
        return w1.concat(w2.inverse())
    # GL: rescale the first coordinate by a unit of R, then use the SL witness
    if M.mu == 0 or n > M.mu:
        w = are_equivalent(M, m, m2, "SL")
        return GLWitness(evaluate_word(w), R.one(), w)
    g = fitt_generator(M)
    d1 = canonical_delta(M, m)
    d2 = canonical_delta(M, m2)
    for u in sorted(R.units(), key=R.sort_key):
        if R.reduce_mod(R.mul(d1, u), g) == d2:
            D = identity(R, n).to_lists()
            D[0][0] = u
            Dm = ExactMatrix(R, D, n)
            w = are_equivalent(M, m.act_matrix(Dm), m2, "SL")
            return GLWitness(mat_mul(Dm, evaluate_word(w)), u, w)
    return None


# ---------------------------------------------------------------------------
# classification


def unit_residues(R: RingHandle, g: Any, cap: int = DEFAULT_UNIT_CAP) -> list:
    """Canonical representatives of the units of R/(g), sorted."""
    if isinstance(R, Product):
        per = [unit_residues(f, x, cap) for f, x in zip(R.factors, g)]
        total = 1
        for p in per:
            total *= len(p)
        if total > cap:
            raise BudgetExceeded(f"more than {cap} unit residues modulo {R.format(g)}")
        return sorted((tuple(x) for x in itertools.product(*per)), key=R.sort_key)
    out = []
    try:
        it = R.residues(g)
    except InfiniteRingError:
        if R.is_zero(g):
            return sorted(R.units(), key=R.sort_key)
        raise
    for count, x in enumerate(it):
        if count >= cap:
            raise BudgetExceeded(f"more than {cap} residues modulo {R.format(g)}")
        if R.is_unit_mod(x, g):
            out.append(R.reduce_mod(x, g))
    return sorted(set(out), key=R.sort_key)


def _gl_classes(R: RingHandle, g: Any, reps: list) -> list:
    """Representatives of (R/g)^x modulo the image of R^x."""
    units = R.units()
    seen = set()
    out = []
    for x in reps:
        if x in seen:
            continue
        orbit = {R.reduce_mod(R.mul(x, u), g) for u in units}
        seen |= orbit
        out.append(min(orbit, key=R.sort_key))
    return sorted(out, key=R.sort_key)


def classify(M: FpModule, n: int, group: str = "SL", unit_cap: int = DEFAULT_UNIT_CAP) -> OrbitClassification:
    group = normalize_group(group)
    mu = M.mu
    if n < mu:
        raise ModuleError(f"n = {n} is below mu = {mu}")
    R = M.owner
    if mu == 0:
        return OrbitClassification(group, n, TRANSITIVE, "zero module: V_n is a single vector")
    if n > mu:
        if group == "SL":
            branch = "transitive: n > mu"
        elif group == "E":
            branch = "transitive: n > mu, E_n = SL_n on this backend"
        else:
            branch = "transitive: n > mu, SL_n already transitive"
        return OrbitClassification(group, n, TRANSITIVE, branch)
    g = fitt_generator(M)
    modulus = PrincipalIdeal(R, g)
    reps = unit_residues(R, g, unit_cap)
    classes = tuple(DetClass(modulus, x) for x in reps)
    if group == "SL":
        return OrbitClassification(group, n, UNIT_CLASSES, "det-bijection: n = mu, SL", classes)
    if group == "GL":
        gl = tuple(DetClass(modulus, x) for x in _gl_classes(R, g, reps))
        return OrbitClassification(group, n, UNIT_CLASSES, "det-bijection modulo units of R: n = mu, GL", gl)
    mu_t = M.torsion_mu()
    if mu == 1:
        return OrbitClassification(group, n, UNIT_CLASSES, "det-bijection: E, mu = 1", classes)
    if mu_t is not None and mu_t > 1:
        return OrbitClassification(group, n, UNIT_CLASSES, "det-bijection: E, mu' > 1", classes)
    if R.is_finite():
        return OrbitClassification(group, n, UNIT_CLASSES,
                                   "det-bijection: E, finite ring so E_n = SL_n", classes)
    if mu_t == 1 and mu > 2:
        return OrbitClassification(group, n, UNIT_CLASSES_SK1, "det x SK_1: E, mu' = 1, mu > 2",
                                   classes, SK1_NOTE)
    if mu_t == 0:
        return OrbitClassification(group, n, UNIT_CLASSES_SK1, "free module: units of R x SK_1",
                                   classes, SK1_NOTE)
    # mu' = 1, mu = 2: the orbit set is a double coset of SL_2; on a GE_2 ring it
    # collapses onto the determinant classes
    return OrbitClassification(group, n, UNIT_CLASSES,
                               "double coset collapses: E, mu' = 1, mu = 2, GE_2 backend", classes)


def classify_componentwise(M: FpModule, n: int, group: str = "SL") -> OrbitClassification:
    """Classify over each factor of a product ring and zip the results."""
    group = normalize_group(group)
    R = M.owner
    if not isinstance(R, Product):
        raise RingError("classify_componentwise needs a product ring")
    if n < M.mu:
        raise ModuleError(f"n = {n} is below mu = {M.mu}")
    parts = tuple(classify(component_module(M, c), n, group) for c in range(len(R.factors)))
    if all(p.shape == TRANSITIVE for p in parts):
        return OrbitClassification(group, n, TRANSITIVE, "componentwise: all factors transitive",
                                   components=parts)
    g = fitt_generator(M)
    modulus = PrincipalIdeal(R, g)
    per = []
    for p, f in zip(parts, R.factors):
        if p.shape == TRANSITIVE:
            per.append([f.reduce_mod(f.one(), f.one())])
        else:
            per.append([d.value for d in p.representatives])
    reps = sorted(itertools.product(*per), key=R.sort_key)
    return OrbitClassification(group, n, UNIT_CLASSES, "componentwise: zipped factor classes",
                               tuple(DetClass(modulus, tuple(x)) for x in reps), components=parts)


def canonicalize_componentwise(M: FpModule, m: GenVector) -> tuple[list, ElementaryWord]:
    """Canonicalize each factor separately; returns the component keys and the zipped word."""
    R = M.owner
    if not isinstance(R, Product):
        raise RingError("canonicalize_componentwise needs a product ring")
    keys, words = [], []
    for c in range(len(R.factors)):
        Mc = component_module(M, c)
        mc = GenVector.certify(Mc, component_vectors(R, m.entries, c))
        canon, w = canonicalize(Mc, mc)
        keys.append(canon.decomposed())
        words.append(w)
    return keys, zip_words(R, words)


# ---------------------------------------------------------------------------
# unimodular completion


def complete_unimodular(R: RingHandle, row: Sequence[Any]) -> ExactMatrix:
    """S in SL_n whose first row is ``row`` (entries must generate R)."""
    if isinstance(R, FpModule):
        R = R.owner
    vals = [R(x).payload for x in row]
    n = len(vals)
    if n == 0:
        raise ValueError("cannot complete an empty row")
    if n == 1:
        if vals[0] != R.one():
            raise ValueError("a 1 x 1 matrix of determinant 1 needs the entry 1")
        return identity(R, 1)
    Y = [list(vals)]
    red = _Reducer(R, Y, [R.zero()], None)
    try:
        red.reduce_row(0, list(range(n)), 0, normalize=True)
    except NotGeneratingError:
        raise ValueError("row entries do not generate the unit ideal") from None
    w = ElementaryWord(R, n, red.letters)
    return evaluate_word(w.inverse())
