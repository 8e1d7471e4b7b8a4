"""Brute-force ground truth over finite rings.

Nothing here uses the Smith form: the module is modelled by enumerating
R^k, closing the relation columns into a submodule and picking the
smallest member of each coset.  Orbits come from breadth-first search on
generator images.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from .fpmodule import FpModule, standard_vector
from .genvec import BudgetExceeded, GenVector, det_rel, normalize_group
from .rings import InfiniteRingError, RingHandle

DEFAULT_BUDGET = 10**6


class FiniteModel:
    """M = R^k / N with N the span of the relation columns, as explicit tables.

    Module elements are indexed by their coset representatives in the
    lexicographic order of R^k (ring elements in enumeration order).
    """

    def __init__(self, M: FpModule, extra_columns: Sequence[Sequence[Any]] = (), budget: int = DEFAULT_BUDGET):
        R = M.owner
        if not R.is_finite():
            raise InfiniteRingError(f"{R} is infinite")
        self.module = M
        self.R = R
        self.k = M.k
        elems = list(R.elements())
        self.elems = elems
        self.eidx = {x: i for i, x in enumerate(elems)}
        size = len(elems) ** self.k
        if size > budget:
            raise BudgetExceeded(f"|R^k| = {size} exceeds the budget {budget}")
        ambient = list(itertools.product(elems, repeat=self.k))
        self.ambient = ambient
        aidx = {x: i for i, x in enumerate(ambient)}
        self._aidx = aidx

        def vadd(x, y):
            return tuple(R.add(a, b) for a, b in zip(x, y))

        cols = [tuple(c) for c in M.relations.columns()] + [tuple(c) for c in extra_columns]
        zero = tuple([R.zero()] * self.k)
        span = {zero}
        for c in cols:
            multiples = {tuple(R.mul(r, a) for a in c) for r in elems}
            span = {vadd(s, t) for s in span for t in multiples}
        self.span = span

        rep_of = [None] * len(ambient)
        reps = []
        for i, x in enumerate(ambient):
            if rep_of[i] is None:
                j = len(reps)
                reps.append(x)
                for s in span:
                    rep_of[aidx[vadd(x, s)]] = j
        self.reps = reps
        self._rep_of = rep_of
        self.size = len(reps)
        self.zero = rep_of[aidx[zero]]
        self.add = [[rep_of[aidx[vadd(reps[a], reps[b])]] for b in range(self.size)] for a in range(self.size)]
        self.smul = [[rep_of[aidx[tuple(R.mul(r, x) for x in reps[a])]] for a in range(self.size)]
                     for r in elems]
        self._sub_ids: dict[frozenset, int] = {}
        self._subs: list[frozenset] = []
        self._step: dict[tuple[int, int], int] = {}
        self._intern(frozenset([self.zero]))

    # -- element conversion -----------------------------------------------
    def index_of(self, lift: Sequence[Any]) -> int:
        return self._rep_of[self._aidx[tuple(lift)]]

    def lift_of(self, idx: int) -> tuple:
        return self.reps[idx]

    def vector_index(self, lifts: Sequence[Sequence[Any]]) -> tuple:
        return tuple(self.index_of(v) for v in lifts)

    def vector_lifts(self, vec: Sequence[int]) -> tuple:
        return tuple(self.reps[i] for i in vec)

    # -- submodule spans ----------------------------------------------------
    def _intern(self, s: frozenset) -> int:
        sid = self._sub_ids.get(s)
        if sid is None:
            sid = len(self._subs)
            self._sub_ids[s] = sid
            self._subs.append(s)
        return sid

    def extend(self, sid: int, x: int) -> int:
        """Id of the submodule S + R·x."""
        key = (sid, x)
        out = self._step.get(key)
        if out is None:
            S = self._subs[sid]
            if x in S:
                out = sid
            else:
                line = {row[x] for row in self.smul}
                add = self.add
                out = self._intern(frozenset(add[s][t] for s in S for t in line))
            self._step[key] = out
        return out

    def generates(self, vec: Sequence[int]) -> bool:
        sid = 0
        for x in vec:
            sid = self.extend(sid, x)
        return len(self._subs[sid]) == self.size

    def generating_vectors(self, n: int, budget: int = DEFAULT_BUDGET) -> list[tuple]:
        """All of V_n(M) as index tuples, in lexicographic order."""
        if self.size ** n > budget:
            raise BudgetExceeded(f"|M|^n = {self.size ** n} exceeds the budget {budget}")
        out: list[tuple] = []
        full = self.size
        subs = self._subs

        def dfs(prefix, sid):
            if len(prefix) == n:
                if len(subs[sid]) == full:
                    out.append(tuple(prefix))
                return
            for x in range(full):
                prefix.append(x)
                dfs(prefix, self.extend(sid, x))
                prefix.pop()

        dfs([], 0)
        return out

    def mu(self, limit: int = 8, budget: int = DEFAULT_BUDGET) -> int:
        """Smallest n with V_n(M) nonempty."""
        for n in range(limit + 1):
            if self._any_generating(n, budget):
                return n
        raise BudgetExceeded(f"no generating vector of length <= {limit}")

    def _any_generating(self, n: int, budget: int) -> bool:
        if self.size ** n > budget:
            raise BudgetExceeded(f"|M|^n = {self.size ** n} exceeds the budget {budget}")
        full = self.size
        subs = self._subs

        def dfs(depth, sid):
            if depth == n:
                return len(subs[sid]) == full
            return any(dfs(depth + 1, self.extend(sid, x)) for x in range(full))

        return dfs(0, 0)


# ---------------------------------------------------------------------------
# orbits


@dataclass
class OrbitReport:
    module: FpModule
    n: int
    group: str
    orbit_count: int
    representatives: list  # lift tuples, smallest member of each orbit
    orbit_sizes: list
    total: int
    det_classes: list | None = None
    sl_equals_e: bool | None = None
    labels: dict = field(default_factory=dict, repr=False)  # index tuple -> orbit id

    def to_json(self) -> dict:
        R = self.module.owner
        out = {
            "group": self.group,
            "n": self.n,
            "orbit_count": self.orbit_count,
            "total": self.total,
            "orbit_sizes": self.orbit_sizes,
            "representatives": [[[R.element_to_json(x) for x in v] for v in rep] for rep in self.representatives],
        }
        if self.det_classes is not None:
            out["det_classes"] = [R.element_to_json(d) for d in self.det_classes]
        if self.sl_equals_e is not None:
            out["sl_equals_e"] = self.sl_equals_e
        return out


def _components_under(vectors: list[tuple], moves) -> tuple[dict, list[list]]:
    label: dict[tuple, int] = {}
    orbits: list[list] = []
    for v in vectors:
        if v in label:
            continue
        oid = len(orbits)
        members = [v]
        label[v] = oid
        queue = deque([v])
        while queue:
            w = queue.popleft()
            for nxt in moves(w):
                if nxt not in label:
                    label[nxt] = oid
                    members.append(nxt)
                    queue.append(nxt)
        orbits.append(members)
    return label, orbits


def _transvection_moves(model: FiniteModel, n: int, scalars: Sequence[int]):
    add, smul = model.add, model.smul
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]

    def moves(v):
        for i, j in pairs:
            vi = v[i]
            for r in scalars:
                w = list(v)
                w[j] = add[v[j]][smul[r][vi]]
                yield tuple(w)

    return moves


def _diag_moves(model: FiniteModel, n: int, units: Sequence[int]):
    R = model.R
    smul = model.smul
    eidx = model.eidx

    def moves(v):
        for i in range(n - 1):
            for u in units:
                ui = eidx[R.inverse(model.elems[u])]
                w = list(v)
                w[i] = smul[u][v[i]]
                w[i + 1] = smul[ui][v[i + 1]]
                yield tuple(w)

    return moves


def _scale_moves(model: FiniteModel, n: int, units: Sequence[int]):
    smul = model.smul

    def moves(v):
        for i in range(n):
            for u in units:
                w = list(v)
                w[i] = smul[u][v[i]]
                yield tuple(w)

    return moves


def orbit_partition(M: FpModule, n: int, group: str = "SL", budget: int = DEFAULT_BUDGET,
                    all_scalars: bool = False, model: FiniteModel | None = None) -> OrbitReport:
    """Partition V_n(M) into orbits of E_n, SL_n or GL_n by BFS on generator images.

    E uses E_ij(r) for r in an additive generating set of R (``all_scalars``
    uses every r); SL adds diag(u, u^-1) moves; GL adds unit rescalings.
    """
    group = normalize_group(group)
    model = model or FiniteModel(M, budget=budget)
    R = model.R
    vectors = model.generating_vectors(n, budget)
    scalars = list(range(len(model.elems))) if all_scalars else [model.eidx[g] for g in R.additive_generators()]
    units = [model.eidx[u] for u in R.units()]
    e_moves = _transvection_moves(model, n, scalars)
    sl_equals_e = None
    if group == "E" or n < 2:
        label, orbits = _components_under(vectors, e_moves)
        if group != "E":
            extra = _diag_moves(model, n, units) if group == "SL" else _scale_moves(model, n, units)

            def moves(v, extra=extra):
                yield from e_moves(v)
                yield from extra(v)

            label, orbits = _components_under(vectors, moves)
    else:
        e_label, e_orbits = _components_under(vectors, e_moves)
        diag = _diag_moves(model, n, units)
        sl_equals_e = all(e_label[w] == e_label[v] for v in vectors for w in diag(v))
        extra = [diag] if group == "SL" else [diag, _scale_moves(model, n, units)]

        def moves(v):
            yield from e_moves(v)
            for mv in extra:
                yield from mv(v)

        label, orbits = _components_under(vectors, moves)
    reps = [min(o) for o in orbits]
    order = sorted(range(len(orbits)), key=lambda i: reps[i])
    remap = {old: new for new, old in enumerate(order)}
    label = {v: remap[o] for v, o in label.items()}
    reps = [reps[i] for i in order]
    sizes = [len(orbits[i]) for i in order]
    det_classes = None
    if n == M.mu and M.mu > 0:
        ref = GenVector(M, tuple(standard_vector(M, M.mu)), True)
        det_classes = [det_rel(M, ref, GenVector(M, model.vector_lifts(r), True)).value for r in reps]
    return OrbitReport(M, n, group, len(orbits), [model.vector_lifts(r) for r in reps], sizes,
                       len(vectors), det_classes, sl_equals_e, label)


def enumerate_generating_vectors(M: FpModule, n: int, budget: int = DEFAULT_BUDGET) -> Iterator[GenVector]:
    model = FiniteModel(M, budget=budget)
    for vec in model.generating_vectors(n, budget):
        yield GenVector(M, model.vector_lifts(vec), True)


# ---------------------------------------------------------------------------
# verification


def _unit_cosets(R: RingHandle, g: Any) -> tuple[dict, set]:
    """Coset labels of R/(g) and the set of unit cosets, by brute force."""
    elems = list(R.elements())
    ideal = {R.mul(r, g) for r in elems}
    label: dict = {}
    count = 0
    for x in elems:
        if x in label:
            continue
        cid = count
        count += 1
        for y in ideal:
            label[R.add(x, y)] = cid
    one_coset = label[R.one()]
    units = {label[x] for x in elems if any(label[R.mul(x, y)] == one_coset for y in elems)}
    return label, units


def verify_det_bijection(M: FpModule, budget: int = DEFAULT_BUDGET) -> dict:
    """Orbit count of V_mu(M) under SL_mu against the unit count of R/Fitt_{mu-1}(M)."""
    R = M.owner
    model = FiniteModel(M, budget=budget)
    mu = model.mu(budget=budget)
    if mu == 0:
        raise ValueError("verify_det_bijection needs a nonzero module")
    report = orbit_partition(M, mu, "SL", budget, model=model)
    fitt = M.fitting_ideal_from_minors(mu - 1).generator
    label, unit_cosets = _unit_cosets(R, fitt)
    det_cosets = [label[d] for d in report.det_classes] if mu == M.mu else []
    distinct = len(set(det_cosets)) == len(det_cosets)
    exhaust = set(det_cosets) == unit_cosets
    ok = (mu == M.mu and report.orbit_count == len(unit_cosets) and distinct and exhaust)
    out = {
        "mu": mu,
        "mu_matches_decomposition": mu == M.mu,
        "orbit_count": report.orbit_count,
        "unit_count": len(unit_cosets),
        "fitting_generator": R.element_to_json(fitt),
        "det_classes": [R.element_to_json(d) for d in (report.det_classes or [])],
        "det_classes_distinct": distinct,
        "det_classes_exhaust_units": exhaust,
        "sl_equals_e": report.sl_equals_e,
        "total": report.total,
        "ok": ok,
    }
    if not ok:
        out["counterexample"] = {"representatives": report.to_json()["representatives"]}
    return out


def verify_lifting(M: FpModule, a: Any, n: int, budget: int = DEFAULT_BUDGET) -> dict:
    """Check that every generating n-vector of M/aM lifts to one of M."""
    R = M.owner
    g = R(a).payload if not hasattr(a, "generator") else a.generator
    model = FiniteModel(M, budget=budget)
    if n < model.mu(budget=budget):
        raise ValueError("verify_lifting needs n >= mu(M)")
    cols = [tuple(g if r == c else R.zero() for r in range(M.k)) for c in range(M.k)]
    qmodel = FiniteModel(M, extra_columns=cols, budget=budget)
    upstairs = model.generating_vectors(n, budget)
    image = {tuple(qmodel.index_of(model.lift_of(x)) for x in v) for v in upstairs}
    downstairs = qmodel.generating_vectors(n, budget)
    missing = [v for v in downstairs if v not in image]
    out = {
        "n": n,
        "ideal_generator": R.element_to_json(g),
        "module_vectors": len(upstairs),
        "quotient_vectors": len(downstairs),
        "image_size": len(image),
        "all_lift": not missing,
        "image_is_generating": image <= set(downstairs),
        "stable_range_note": f"every generating {n}-vector of M/aM lifts" if not missing
        else f"lifting fails at n = {n}",
    }
    if missing:
        out["counterexample"] = [[R.element_to_json(x) for x in lift]
                                 for lift in qmodel.vector_lifts(missing[0])]
    out["ok"] = not missing and out["image_is_generating"]
    return out
