"""Exact dense matrices, elementary words and determinants.

Indices are 0-based everywhere, including the JSON letter format.  A
transvection ``E_ij(r)`` is the identity plus ``r`` at position (i, j);
right multiplication by it adds ``r`` times column i to column j, left
multiplication adds ``r`` times row j to row i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .rings import Integers, Product, RingElement, RingError, RingHandle, Residue


class MatrixError(ValueError):
    pass


class ExactMatrix:
    """Immutable dense matrix over a ring handle; entries are canonical payloads."""

    __slots__ = ("owner", "nrows", "ncols", "_rows", "_hash")

    def __init__(self, owner: RingHandle, rows: Sequence[Sequence[Any]], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise MatrixError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise MatrixError("ragged matrix rows")
        self.owner = owner
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = rows
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_values(cls, owner: RingHandle, rows, ncols: int | None = None) -> "ExactMatrix":
        """Build from ints, payload-like values or RingElements."""
        def conv(x):
            if isinstance(x, RingElement):
                if x.owner != owner:
                    raise RingError(f"entry over {x.owner} in a matrix over {owner}")
                return x.payload
            return owner(x).payload

        return cls(owner, [[conv(x) for x in r] for r in rows], ncols)

    @classmethod
    def zeros(cls, owner: RingHandle, m: int, n: int) -> "ExactMatrix":
        z = owner.zero()
        return cls(owner, [[z] * n for _ in range(m)], n)

    @classmethod
    def from_columns(cls, owner: RingHandle, cols: Sequence[Sequence[Any]], nrows: int) -> "ExactMatrix":
        for c in cols:
            if len(c) != nrows:
                raise MatrixError(f"column of length {len(c)} where {nrows} rows are expected")
        return cls(owner, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    # -- access -------------------------------------------------------
    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def entry(self, i: int, j: int) -> RingElement:
        return RingElement(self.owner, self._rows[i][j])

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def to_lists(self) -> list[list]:
        return [list(r) for r in self._rows]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.owner == other.owner and self.shape == other.shape
                and self._rows == other._rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.owner, self.ncols, self._rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(self.owner.format(x) for x in r) for r in self._rows)
        return f"ExactMatrix({self.owner!r}, {self.nrows}x{self.ncols}, [{body}])"

    def __matmul__(self, other):
        return mat_mul(self, other)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_diagonal(self) -> bool:
        z = self.owner.zero()
        return all(x == z for i, r in enumerate(self._rows) for j, x in enumerate(r) if i != j)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.owner != other.owner or self.nrows != other.nrows:
            raise MatrixError("hstack needs a shared owner and row count")
        return ExactMatrix(self.owner, [a + b for a, b in zip(self._rows, other._rows)],
                           self.ncols + other.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.owner, [[self._rows[i][j] for j in cols] for i in rows], len(cols))

    def map(self, fn, owner: RingHandle | None = None) -> "ExactMatrix":
        return ExactMatrix(owner or self.owner, [[fn(x) for x in r] for r in self._rows], self.ncols)

    # -- JSON ---------------------------------------------------------
    def to_json(self) -> list:
        R = self.owner
        return [[R.element_to_json(x) for x in r] for r in self._rows]

    @classmethod
    def from_json(cls, owner: RingHandle, obj, ncols: int | None = None) -> "ExactMatrix":
        if not isinstance(obj, list):
            raise MatrixError("a matrix must be a JSON array of rows")
        return cls(owner, [[owner.element_from_json(x) for x in r] for r in obj], ncols)


def identity(owner: RingHandle, n: int) -> ExactMatrix:
    z, o = owner.zero(), owner.one()
    return ExactMatrix(owner, [[o if i == j else z for j in range(n)] for i in range(n)], n)


def transpose(A: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(A.owner, [list(c) for c in zip(*A.rows)] if A.nrows else [[] for _ in range(A.ncols)],
                       A.nrows)


def mat_mul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    if A.owner != B.owner:
        raise MatrixError(f"owner mismatch: {A.owner} vs {B.owner}")
    if A.ncols != B.nrows:
        raise MatrixError(f"cannot multiply {A.nrows}x{A.ncols} by {B.nrows}x{B.ncols}")
    R = A.owner
    add, mul, z = R.add, R.mul, R.zero()
    cols = B.columns()
    out = []
    for row in A.rows:
        new = []
        for col in cols:
            acc = z
            for a, b in zip(row, col):
                if a != z and b != z:
                    acc = add(acc, mul(a, b))
            new.append(acc)
        out.append(new)
    return ExactMatrix(R, out, B.ncols)


def mat_add(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    if A.owner != B.owner or A.shape != B.shape:
        raise MatrixError("mat_add needs equal shapes and owners")
    R = A.owner
    return ExactMatrix(R, [[R.add(a, b) for a, b in zip(r, s)] for r, s in zip(A.rows, B.rows)], A.ncols)


def diagonal(owner: RingHandle, entries: Sequence[Any], m: int | None = None, n: int | None = None) -> ExactMatrix:
    k = len(entries)
    m = k if m is None else m
    n = k if n is None else n
    rows = [[owner.zero()] * n for _ in range(m)]
    for i, d in enumerate(entries):
        rows[i][i] = d
    return ExactMatrix(owner, rows, n)


# ---------------------------------------------------------------------------
# determinants


def _bareiss(owner: RingHandle, rows: list[list]) -> Any:
    """Fraction-free elimination over an integral domain with exact division."""
    n = len(rows)
    if n == 0:
        return owner.one()
    M = [list(r) for r in rows]
    z = owner.zero()
    sign = owner.one()
    prev = owner.one()
    for k in range(n - 1):
        if M[k][k] == z:
            for i in range(k + 1, n):
                if M[i][k] != z:
                    M[k], M[i] = M[i], M[k]
                    sign = owner.neg(sign)
                    break
            else:
                return z
        p = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                num = owner.sub(owner.mul(p, M[i][j]), owner.mul(mik, M[k][j]))
                M[i][j] = owner.exact_div(num, prev)
            M[i][k] = z
        prev = p
    return owner.mul(sign, M[n - 1][n - 1])


def determinant_payload(A: ExactMatrix) -> Any:
    if not A.is_square():
        raise MatrixError(f"determinant of a non-square {A.nrows}x{A.ncols} matrix")
    R = A.owner
    if isinstance(R, Product):
        parts = split_matrix(A)
        return tuple(determinant_payload(P) for P in parts)
    if isinstance(R, Residue):
        # the determinant is an integer polynomial in the entries: lift, evaluate, reduce
        return _bareiss(Integers(), [list(r) for r in A.rows]) % R.n
    return _bareiss(R, [list(r) for r in A.rows])


def determinant(A: ExactMatrix) -> RingElement:
    return RingElement(A.owner, determinant_payload(A))


# ---------------------------------------------------------------------------
# product splitting


def split_matrix(A: ExactMatrix) -> list[ExactMatrix]:
    """Component matrices of a matrix over a product ring."""
    R = A.owner
    if not isinstance(R, Product):
        raise MatrixError(f"split_matrix needs a product ring, got {R}")
    return [ExactMatrix(f, [[x[c] for x in r] for r in A.rows], A.ncols)
            for c, f in enumerate(R.factors)]


def join_matrices(R: Product, parts: Sequence[ExactMatrix]) -> ExactMatrix:
    if len(parts) != len(R.factors):
        raise MatrixError("component count mismatch")
    shape = parts[0].shape
    for P, f in zip(parts, R.factors):
        if P.owner != f or P.shape != shape:
            raise MatrixError("component matrices disagree with the product ring")
    m, n = shape
    return ExactMatrix(R, [[tuple(P.rows[i][j] for P in parts) for j in range(n)] for i in range(m)], n)


# ---------------------------------------------------------------------------
# elementary words


@dataclass(frozen=True)
class AddMultiple:
    """The transvection E_ij(r)."""

    i: int
    j: int
    r: Any  # payload

    def to_json(self, owner: RingHandle) -> dict:
        return {"op": "add", "i": self.i, "j": self.j, "r": owner.element_to_json(self.r)}


@dataclass(frozen=True)
class DiagPair:
    """diag with u at position i and u^-1 at position j."""

    i: int
    j: int
    u: Any  # payload of a unit

    def to_json(self, owner: RingHandle) -> dict:
        return {"op": "diag", "i": self.i, "j": self.j, "u": owner.element_to_json(self.u)}


Letter = AddMultiple | DiagPair


def letter_from_json(owner: RingHandle, obj: dict) -> Letter:
    op = obj.get("op")
    i, j = int(obj["i"]), int(obj["j"])
    if op == "add":
        return AddMultiple(i, j, owner.element_from_json(obj["r"]))
    if op == "diag":
        return DiagPair(i, j, owner.element_from_json(obj["u"]))
    raise MatrixError(f"unknown letter op {op!r}")


@dataclass(frozen=True)
class ElementaryWord:
    """An ordered product of letters; evaluates to L_1 · L_2 · ... · L_k."""

    owner: RingHandle
    size: int
    letters: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        R, n = self.owner, self.size
        for L in self.letters:
            if not (0 <= L.i < n and 0 <= L.j < n) or L.i == L.j:
                raise MatrixError(f"letter {L} out of range for size {n}")
            if isinstance(L, DiagPair) and not R.is_unit(L.u):
                raise MatrixError(f"DiagPair scalar {L.u!r} is not a unit")

    def __len__(self):
        return len(self.letters)

    def has_diag(self) -> bool:
        return any(isinstance(L, DiagPair) for L in self.letters)

    def inverse(self) -> "ElementaryWord":
        R = self.owner
        inv = []
        for L in reversed(self.letters):
            if isinstance(L, AddMultiple):
                inv.append(AddMultiple(L.i, L.j, R.neg(L.r)))
            else:
                inv.append(DiagPair(L.i, L.j, R.inverse(L.u)))
        return ElementaryWord(R, self.size, inv)

    def concat(self, other: "ElementaryWord") -> "ElementaryWord":
        if other.owner != self.owner or other.size != self.size:
            raise MatrixError("word concatenation needs equal owner and size")
        return ElementaryWord(self.owner, self.size, self.letters + other.letters)

    __add__ = concat

    def to_json(self) -> list:
        return [L.to_json(self.owner) for L in self.letters]

    @classmethod
    def from_json(cls, owner: RingHandle, size: int, obj: list) -> "ElementaryWord":
        return cls(owner, size, [letter_from_json(owner, L) for L in obj])


def _col_op(rows: list[list], R: RingHandle, L: Letter) -> None:
    """Right-multiply in place by one letter."""
    if isinstance(L, AddMultiple):
        i, j, r = L.i, L.j, L.r
        for row in rows:
            if row[i] != R.zero():
                row[j] = R.add(row[j], R.mul(r, row[i]))
    else:
        ui = R.inverse(L.u)
        for row in rows:
            row[L.i] = R.mul(row[L.i], L.u)
            row[L.j] = R.mul(row[L.j], ui)


def _row_op(rows: list[list], R: RingHandle, L: Letter) -> None:
    """Left-multiply in place by one letter."""
    if isinstance(L, AddMultiple):
        i, j, r = L.i, L.j, L.r
        rows[i] = [R.add(a, R.mul(r, b)) if b != R.zero() else a for a, b in zip(rows[i], rows[j])]
    else:
        ui = R.inverse(L.u)
        rows[L.i] = [R.mul(L.u, a) for a in rows[L.i]]
        rows[L.j] = [R.mul(ui, a) for a in rows[L.j]]


def apply_word(A: ExactMatrix, w: ElementaryWord, side: str = "right") -> ExactMatrix:
    """A · eval(w) for side='right', eval(w) · A for side='left'."""
    if A.owner != w.owner:
        raise MatrixError(f"owner mismatch: {A.owner} vs {w.owner}")
    rows = [list(r) for r in A.rows]
    R = A.owner
    if side == "right":
        if A.ncols != w.size:
            raise MatrixError(f"word of size {w.size} acting on {A.ncols} columns")
        for L in w.letters:
            _col_op(rows, R, L)
    elif side == "left":
        if A.nrows != w.size:
            raise MatrixError(f"word of size {w.size} acting on {A.nrows} rows")
        for L in reversed(w.letters):
            _row_op(rows, R, L)
    else:
        raise MatrixError(f"side must be 'left' or 'right', got {side!r}")
    return ExactMatrix(R, rows, A.ncols)


def evaluate_word(w: ElementaryWord) -> ExactMatrix:
    return apply_word(identity(w.owner, w.size), w, "right")


def letter_matrix(owner: RingHandle, n: int, L: Letter) -> ExactMatrix:
    return evaluate_word(ElementaryWord(owner, n, [L]))


def embed_word(w: ElementaryWord, R: Product, component: int) -> ElementaryWord:
    """Lift a word over one factor of R to R, acting as the identity elsewhere."""
    f = R.factors[component]
    if w.owner != f:
        raise MatrixError(f"word over {w.owner} is not over factor {component} of {R}")
    letters = []
    for L in w.letters:
        if isinstance(L, AddMultiple):
            letters.append(AddMultiple(L.i, L.j, R.embed(component, L.r)))
        else:
            u = list(R.one())
            u[component] = L.u
            letters.append(DiagPair(L.i, L.j, tuple(u)))
    return ElementaryWord(R, w.size, letters)


def zip_words(R: Product, words: Sequence[ElementaryWord]) -> ElementaryWord:
    """Combine one word per factor into a word over R (the letters commute across factors)."""
    if len(words) != len(R.factors):
        raise MatrixError("one word per factor is required")
    size = words[0].size
    out = ElementaryWord(R, size, ())
    for c, w in enumerate(words):
        out = out.concat(embed_word(w, R, c))
    return out


def component_word(w: ElementaryWord, component: int) -> ElementaryWord:
    """Project a word over a product ring to one factor."""
    R = w.owner
    if not isinstance(R, Product):
        raise MatrixError("component_word needs a product ring")
    f = R.factors[component]
    letters = []
    for L in w.letters:
        if isinstance(L, AddMultiple):
            if L.r[component] != f.zero():
                letters.append(AddMultiple(L.i, L.j, L.r[component]))
        elif L.u[component] != f.one():
            letters.append(DiagPair(L.i, L.j, L.u[component]))
    return ElementaryWord(f, w.size, letters)


# ---------------------------------------------------------------------------
# elementary factorization


def _euclid_norm(R: RingHandle):
    if isinstance(R, Residue):
        return lambda a: a
    return R.norm


def factor_into_word(S: ExactMatrix) -> ElementaryWord:
    """Write S (det 1, Euclidean backend) as a product of transvections.

    S is reduced to the identity by row transvections T_1, ..., T_k; the
    word T_1^-1 ... T_k^-1 then evaluates to S.
    """
    R = S.owner
    if isinstance(R, Product):
        raise MatrixError("factor_into_word over a product ring: factor componentwise and zip_words")
    if not S.is_square():
        raise MatrixError("factor_into_word needs a square matrix")
    if determinant_payload(S) != R.one():
        raise MatrixError("factor_into_word needs a matrix of determinant 1")
    n = S.nrows
    rows = [list(r) for r in S.rows]
    z = R.zero()
    norm = _euclid_norm(R)
    word: list[Letter] = []

    def op(i, j, r):
        # row_i += r * row_j
        if r == z:
            return
        _row_op(rows, R, AddMultiple(i, j, r))
        word.append(AddMultiple(i, j, R.neg(r)))

    for c in range(n):
        # Euclid on column c below the diagonal until one nonzero entry remains
        while True:
            nz = [i for i in range(c, n) if rows[i][c] != z]
            if not nz:
                raise MatrixError("matrix is not invertible")
            p = min(nz, key=lambda i: (norm(rows[i][c]), i))
            others = [i for i in nz if i != p]
            if not others:
                break
            for i in others:
                q, _ = R.quo_rem(rows[i][c], rows[p][c])
                op(i, p, R.neg(q))
        u = rows[p][c]
        if not R.is_unit(u):
            raise MatrixError("matrix is not invertible")
        if p != c:
            a = rows[c][c]
            op(c, p, R.mul(R.sub(R.one(), a), R.inverse(u)))
            op(p, c, R.neg(rows[p][c]))
        elif u != R.one():
            q = c + 1  # c < n - 1 here: the last pivot equals det = 1
            op(q, c, R.inverse(u))
            op(c, q, R.sub(R.one(), u))
            op(q, c, R.neg(rows[q][c]))
        for i in range(n):
            if i != c:
                op(i, c, R.neg(rows[i][c]))
    return ElementaryWord(R, n, word)


def is_special(A: ExactMatrix) -> bool:
    return A.is_square() and determinant_payload(A) == A.owner.one()


def matrix_inverse(A: ExactMatrix) -> ExactMatrix:
    """Inverse of an invertible matrix via its adjugate-free elementary factorization."""
    R = A.owner
    if isinstance(R, Product):
        return join_matrices(R, [matrix_inverse(P) for P in split_matrix(A)])
    d = determinant_payload(A)
    if not R.is_unit(d):
        raise MatrixError("matrix is not invertible")
    n = A.nrows
    if n == 0:
        return A
    # scale the first row so that det = 1, factor, invert the word, then undo the scaling
    dinv = R.inverse(d)
    scaled = [list(r) for r in A.rows]
    scaled[0] = [R.mul(dinv, x) for x in scaled[0]]
    w = factor_into_word(ExactMatrix(R, scaled, n))
    inv = evaluate_word(w.inverse())
    rows = [list(r) for r in inv.rows]
    for r in rows:
        r[0] = R.mul(r[0], dinv)
    return ExactMatrix(R, rows, n)


def random_word(rng, R: RingHandle, n: int, length: int, sample, with_diag: bool = False) -> ElementaryWord:
    """Random word of the given length; ``sample(rng)`` draws a ring payload."""
    letters: list[Letter] = []
    units = R.units() if with_diag else []
    for _ in range(length):
        i, j = rng.sample(range(n), 2)
        if with_diag and rng.random() < 0.3:
            letters.append(DiagPair(i, j, units[rng.randrange(len(units))]))
        else:
            letters.append(AddMultiple(i, j, sample(rng)))
    return ElementaryWord(R, n, letters)


def as_matrix(owner: RingHandle, values: Iterable[Iterable[Any]]) -> ExactMatrix:
    """Convenience constructor from nested Python values."""
    return ExactMatrix.from_values(owner, [list(r) for r in values])
