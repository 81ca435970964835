"""Projections method for hypothetical q-Steiner systems S_q(t, k, n).

Every subspace is projected onto its first rho coordinates.  A variable
a_Y counts blocks projecting onto Y, and for each small X the number of
t-subspaces projecting onto X gives one linear equation

    delta_X = sum_Y Gamma_{X,Y} a_Y.

The solver eliminates exactly over the rationals and then searches the
free variables depth-first inside bounds implied by nonnegativity.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .errors import BadParams, CapExceeded, InconsistentPins
from .gf import FieldSpec, gf
from .subspace import Subspace, enumerate_grassmannian, gaussian_binomial, to_text

DEFAULT_NODE_BUDGET = 10 ** 6


def project(T: Subspace, rho: int) -> Subspace:
    """Span of the first rho coordinates of T's vectors."""
    return Subspace.from_matrix(T.field, rho, [r[:rho] for r in T.rows])


def delta_count(X: Subspace, n: int, t: int) -> int:
    """Number of t-subspaces T of GF(q)^n whose projection is exactly X."""
    rho, i, q = X.n, X.k, X.field.q
    if rho > n or i > min(rho, t):
        raise BadParams(f"need dim X <= min(rho, t) and rho <= n (dim X={i}, rho={rho}, t={t}, n={n})")
    return gaussian_binomial(n - rho, t - i, q) * q ** (i * (n - rho - t + i))


def representative(Y: Subspace, n: int, k: int) -> Subspace | None:
    """Canonical k-subspace of GF(q)^n projecting onto Y, or None if none exists.

    Y's basis padded with zeros plus unit vectors on the first tail coordinates.
    """
    rho, l = Y.n, Y.k
    extra = k - l
    if extra < 0 or extra > n - rho:
        return None
    rows = [r + (0,) * (n - rho) for r in Y.rows]
    for j in range(extra):
        rows.append(tuple(int(c == rho + j) for c in range(n)))
    return Subspace.from_matrix(Y.field, n, rows)


def gamma_tally(K: Subspace, rho: int, t: int) -> Counter:
    """Projection counts of all t-subspaces of K."""
    from .designs import sub_subspaces

    return Counter(project(T, rho) for T in sub_subspaces(K, t))


def gamma_count(X: Subspace, Y: Subspace, n: int, k: int, t: int, K: Subspace | None = None) -> int:
    """Number of t-subspaces of a k-subspace K (projecting to Y) that project to X."""
    if X.n != Y.n:
        raise BadParams("X and Y must live in the same GF(q)^rho")
    if X.k > Y.k:
        return 0
    if K is None:
        K = representative(Y, n, k)
        if K is None:
            return 0
    elif project(K, Y.n) != Y or K.k != k:
        raise BadParams("K does not project onto Y")
    return gamma_tally(K, Y.n, t).get(X, 0)


def gamma_closed(i: int, l: int, k: int, t: int, q: int) -> int:
    """Closed form of gamma_count for X inside Y with dim X = i, dim Y = l."""
    return gaussian_binomial(k - l, t - i, q) * q ** (i * (k - l - t + i))


@dataclass
class EquationSystem:
    n: int
    k: int
    t: int
    q: int
    rho: int
    variables: list[Subspace]
    subjects: list[Subspace]
    constants: list[int]
    rows: list[dict[int, int]]
    realizable: list[bool]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.variables), len(self.subjects)

    def upper_bounds(self) -> list[int]:
        ub = [None] * len(self.variables)
        for b, row in zip(self.constants, self.rows):
            for j, g in row.items():
                if g > 0:
                    v = b // g
                    ub[j] = v if ub[j] is None else min(ub[j], v)
        return [0 if u is None else u for u in ub]

    def check(self, assignment: Sequence[int]) -> bool:
        if len(assignment) != len(self.variables) or any(a < 0 for a in assignment):
            return False
        return all(sum(g * assignment[j] for j, g in row.items()) == b
                   for b, row in zip(self.constants, self.rows))

    def to_json(self) -> dict:
        return {
            "params": {"n": self.n, "k": self.k, "t": self.t, "q": self.q, "rho": self.rho},
            "variables": [{"index": j, "dim": Y.k, "rows": to_text(Y), "realizable": r}
                          for j, (Y, r) in enumerate(zip(self.variables, self.realizable))],
            "equations": [{"subject": to_text(X), "dim": X.k, "constant": b,
                           "coefficients": {str(j): g for j, g in sorted(row.items())}}
                          for X, b, row in zip(self.subjects, self.constants, self.rows)],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "EquationSystem":
        p = doc["params"]
        F = gf(p["q"])
        rho = p["rho"]

        def sub(rows):
            return Subspace.from_matrix(F, rho, [tuple(int(c) for c in r) for r in rows])

        variables = [sub(v["rows"]) for v in doc["variables"]]
        subjects = [sub(e["subject"]) for e in doc["equations"]]
        constants = [int(e["constant"]) for e in doc["equations"]]
        rows = [{int(j): int(g) for j, g in e["coefficients"].items()} for e in doc["equations"]]
        realizable = [bool(v.get("realizable", True)) for v in doc["variables"]]
        return cls(p["n"], p["k"], p["t"], p["q"], rho, variables, subjects, constants, rows, realizable)


def build_system(n: int, k: int, t: int, q: int | FieldSpec, rho: int, cap: int = 10 ** 5) -> EquationSystem:
    F = gf(q) if isinstance(q, int) else q
    if not 1 <= rho <= n or not 0 < t < k < n:
        raise BadParams(f"need 1 <= rho <= n and 0 < t < k < n (n={n}, k={k}, t={t}, rho={rho})")
    nvars = sum(gaussian_binomial(rho, i, F.q) for i in range(min(rho, k) + 1))
    if nvars > cap:
        raise CapExceeded(f"{nvars} variables exceed cap {cap}")
    variables = [Y for i in range(min(rho, k) + 1) for Y in enumerate_grassmannian(rho, i, F)]
    subjects = [X for i in range(min(rho, t) + 1) for X in enumerate_grassmannian(rho, i, F)]
    index = {X: e for e, X in enumerate(subjects)}
    rows: list[dict[int, int]] = [dict() for _ in subjects]
    realizable = []
    for j, Y in enumerate(variables):
        K = representative(Y, n, k)
        realizable.append(K is not None)
        if K is None:
            continue
        for X, g in gamma_tally(K, rho, t).items():
            rows[index[X]][j] = g
    constants = [delta_count(X, n, t) for X in subjects]
    return EquationSystem(n, k, t, F.q, rho, variables, subjects, constants, rows, realizable)


# -- solving ----------------------------------------------------------------------

@dataclass
class SolveOutcome:
    tag: str  # Infeasible | Unique | Multiple | CapReached
    solutions: list[list[int]] = field(default_factory=list)
    count: int = 0
    nodes: int = 0
    free: int = 0

    @property
    def solution(self) -> list[int] | None:
        return self.solutions[0] if self.tag == "Unique" else None

    def summary(self) -> str:
        if self.tag == "Multiple":
            return f"Multiple (at least {self.count} solutions; {self.nodes} nodes, {self.free} free variables)"
        return f"{self.tag} ({self.nodes} nodes, {self.free} free variables)"


def _eliminate(rows: list[dict[int, Fraction]], rhs: list[Fraction], order: list[int]):
    """Sparse Gauss-Jordan; pivots are taken in ``order``.  Returns (pivot rows, consistent)."""
    rows = [dict(r) for r in rows]
    rhs = list(rhs)
    pivots: list[tuple[int, dict[int, Fraction], Fraction]] = []
    live = list(range(len(rows)))
    col_rows: dict[int, set[int]] = {}
    for i in live:
        for j in rows[i]:
            col_rows.setdefault(j, set()).add(i)
    used: set[int] = set()
    for col in order:
        cand = [i for i in col_rows.get(col, ()) if i not in used and rows[i].get(col)]
        if not cand:
            continue
        p = min(cand, key=lambda i: len(rows[i]))
        used.add(p)
        prow = rows[p]
        c = prow[col]
        if c != 1:
            prow = {j: v / c for j, v in prow.items()}
            rhs[p] /= c
            rows[p] = prow
        for i in list(col_rows.get(col, ())):
            if i == p:
                continue
            f = rows[i].get(col)
            if not f:
                continue
            r = rows[i]
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    if j not in r:
                        col_rows.setdefault(j, set()).add(i)
                    r[j] = nv
                else:
                    r.pop(j, None)
                    col_rows.get(j, set()).discard(i)
            rhs[i] -= f * rhs[p]
        pivots.append((col, p))
    for i in range(len(rows)):
        if i not in used and not rows[i] and rhs[i] != 0:
            return None
    return [(col, rows[p], rhs[p]) for col, p in pivots]


def solve(system: EquationSystem, pins: Mapping[int, int] | None = None,
          cap: int = 2, node_budget: int = DEFAULT_NODE_BUDGET) -> SolveOutcome:
    """Nonnegative integer solutions of the system.

    ``cap`` is the number of solutions after which the search stops
    (2 is enough to tell Unique from Multiple).  Unrealizable variables
    (no k-subspace projects onto them) are fixed to zero.
    """
    V = len(system.variables)
    pins = dict(pins or {})
    for j, v in pins.items():
        if not isinstance(j, int) or not 0 <= j < V:
            raise InconsistentPins(f"pin index {j!r} outside [0, {V})")
        if not isinstance(v, int) or v < 0:
            raise InconsistentPins(f"pin value {v!r} for variable {j} is not a nonnegative integer")
    ub = system.upper_bounds()
    for j, ok in enumerate(system.realizable):
        if not ok:
            if pins.get(j, 0) != 0:
                return SolveOutcome("Infeasible")
            pins[j] = 0
    for j, v in pins.items():
        if v > ub[j]:
            return SolveOutcome("Infeasible")

    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    for b, row in zip(system.constants, system.rows):
        r = {}
        val = Fraction(b)
        for j, g in row.items():
            if j in pins:
                val -= g * pins[j]
            elif g:
                r[j] = Fraction(g)
        rows.append(r)
        rhs.append(val)
    # pivot on high-dimensional variables so the low-dimensional ones stay free
    order = sorted((j for j in range(V) if j not in pins), key=lambda j: (-system.variables[j].k, j))
    piv = _eliminate(rows, rhs, order)
    if piv is None:
        return SolveOutcome("Infeasible")
    pivot_cols = {col for col, _, _ in piv}
    nfree = sum(1 for j in order if j not in pivot_cols)
    # constraints: the original rows plus the eliminated pivot rows, all scaled to integers
    cons: list[tuple[list[tuple[int, int]], int]] = []
    for b, row in zip(system.constants, system.rows):
        cons.append(([(j, g) for j, g in row.items() if g], b))
    for col, row, c in piv:
        D = c.denominator
        for v in row.values():
            D = D * v.denominator // gcd(D, v.denominator)
        cons.append(([(j, int(v * D)) for j, v in row.items()], int(c * D)))
    lo = [pins.get(j, 0) for j in range(V)]
    hi = [pins.get(j, ub[j]) for j in range(V)]
    return _search(system, cons, lo, hi, nfree, cap, node_budget)


def _propagate(cons, watch, lo: list[int], hi: list[int], queue: list[int]) -> bool:
    """Bounds consistency for linear equalities; tightens lo/hi in place."""
    pending = set(queue)
    while queue:
        e = queue.pop()
        pending.discard(e)
        terms, b = cons[e]
        smin = smax = 0
        for j, g in terms:
            if g > 0:
                smin += g * lo[j]
                smax += g * hi[j]
            else:
                smin += g * hi[j]
                smax += g * lo[j]
        if b < smin or b > smax:
            return False
        slack_lo, slack_hi = b - smin, smax - b
        for j, g in terms:
            if g > 0:
                nh = lo[j] + slack_lo // g
                nl = hi[j] - slack_hi // g
            else:
                nh = lo[j] + slack_hi // -g
                nl = hi[j] - slack_lo // -g
            if nh < hi[j] or nl > lo[j]:
                if nh < hi[j]:
                    hi[j] = nh
                if nl > lo[j]:
                    lo[j] = nl
                if lo[j] > hi[j]:
                    return False
                for f in watch[j]:
                    if f != e and f not in pending:
                        pending.add(f)
                        queue.append(f)
    return True


def _search(system, cons, lo, hi, nfree, cap, node_budget) -> SolveOutcome:
    """Depth-first search with bounds propagation, branching on the smallest domain."""
    V = len(system.variables)
    watch: list[list[int]] = [[] for _ in range(V)]
    for e, (terms, _) in enumerate(cons):
        for j, _ in terms:
            watch[j].append(e)
    dims = [Y.k for Y in system.variables]
    out = SolveOutcome("Infeasible", free=nfree)
    if not _propagate(cons, watch, lo, hi, list(range(len(cons)))):
        return out
    stack = [(lo, hi)]
    nodes = 0
    while stack:
        lo, hi = stack.pop()
        nodes += 1
        if nodes > node_budget:
            out.nodes = nodes
            out.tag = "CapReached" if out.count == 0 else "Multiple"
            return out
        best = None
        for j in range(V):
            w = hi[j] - lo[j]
            if w and (best is None or (w, dims[j]) < best[0]):
                best = ((w, dims[j]), j)
        if best is None:
            if not system.check(lo):
                raise AssertionError("solver produced an assignment that fails the system")
            out.solutions.append(list(lo))
            out.count += 1
            if out.count >= cap:
                break
            continue
        j = best[1]
        children = []
        for x in range(lo[j], hi[j] + 1):
            nlo, nhi = list(lo), list(hi)
            nlo[j] = nhi[j] = x
            if _propagate(cons, watch, nlo, nhi, list(watch[j])):
                children.append((nlo, nhi))
        # smallest value is explored first
        stack.extend(reversed(children))
    out.nodes = nodes
    if out.count == 0:
        out.tag = "Infeasible"
    elif out.count == 1 and cap > 1:
        out.tag = "Unique"
    else:
        out.tag = "Multiple"
    return out


# -- symmetry reduction -----------------------------------------------------------

def _apply(Y: Subspace, M: Sequence[Sequence[int]]) -> Subspace:
    F = Y.field
    rows = []
    for r in Y.rows:
        v = [0] * Y.n
        for c, Mrow in zip(r, M):
            if c:
                v = [F.add(a, F.mul(c, b)) for a, b in zip(v, Mrow)]
        rows.append(v)
    return Subspace.from_matrix(F, Y.n, rows)


def point_stabilizer_cycle(rho: int, q: int | FieldSpec) -> list[list[int]]:
    """Block matrix diag(1, C) with C multiplication by a primitive element of GF(q^(rho-1)).

    It fixes the first unit vector and permutes the remaining nonzero
    vectors of the complementary coordinates cyclically.
    """
    from .gf import Extension

    F = gf(q) if isinstance(q, int) else q
    M = [[int(j == 0) for j in range(rho)]]
    if rho == 1:
        return M
    ext = Extension(F, rho - 1)
    alpha = ext.big.alpha_pow(1)
    for i in range(rho - 1):
        unit = [int(j == i) for j in range(rho - 1)]
        image = ext.elem_to_vec(ext.big.mul(ext.vec_to_elem(unit), alpha))
        M.append([0] + list(image))
    return M


def _orbits(items: Sequence[Subspace], gens) -> list[int]:
    index = {Y: j for j, Y in enumerate(items)}
    label = [-1] * len(items)
    count = 0
    for j in range(len(items)):
        if label[j] >= 0:
            continue
        label[j] = count
        todo = [j]
        while todo:
            a = todo.pop()
            for M in gens:
                b = index[_apply(items[a], M)]
                if label[b] < 0:
                    label[b] = count
                    todo.append(b)
        count += 1
    return label


def invariant_solve(system: EquationSystem, gens: Sequence[Sequence[Sequence[int]]],
                    cap: int = 2, node_budget: int = DEFAULT_NODE_BUDGET) -> SolveOutcome:
    """Solutions constant on the orbits of the group generated by ``gens``.

    The matrices act on row vectors of GF(q)^rho.  The orbit-summed system
    is solved and every solution is expanded back and checked against the
    full system, so the reported solutions are genuine (but the search only
    sees invariant ones and ``Infeasible`` here says nothing about the full system).
    """
    vlabel = _orbits(system.variables, gens)
    slabel = _orbits(system.subjects, gens)
    nv = max(vlabel, default=-1) + 1
    reps: dict[int, int] = {}
    for e, o in enumerate(slabel):
        reps.setdefault(o, e)
    first_var: dict[int, int] = {}
    realizable = [True] * nv
    for j, o in enumerate(vlabel):
        first_var.setdefault(o, j)
        realizable[o] = realizable[o] and system.realizable[j]
    rows, consts, subjects = [], [], []
    for o in sorted(reps):
        e = reps[o]
        r: dict[int, int] = {}
        for j, g in system.rows[e].items():
            r[vlabel[j]] = r.get(vlabel[j], 0) + g
        rows.append(r)
        consts.append(system.constants[e])
        subjects.append(system.subjects[e])
    reduced = EquationSystem(system.n, system.k, system.t, system.q, system.rho,
                             [system.variables[first_var[o]] for o in range(nv)],
                             subjects, consts, rows, realizable)
    res = solve(reduced, cap=cap, node_budget=node_budget)
    full = []
    for sol in res.solutions:
        x = [sol[vlabel[j]] for j in range(len(system.variables))]
        if not system.check(x):
            raise AssertionError("invariant solution does not lift to the full system")
        full.append(x)
    res.solutions = full
    return res


def feasibility_report(n: int, k: int, t: int, q: int, rhos: Sequence[int],
                       node_budget: int = DEFAULT_NODE_BUDGET,
                       symmetric: bool = True) -> list[tuple[int, str]]:
    """Per-rho verdicts; never claims existence, only non-exclusion.

    When the plain search runs out of nodes and ``symmetric`` is set, a
    search restricted to solutions invariant under ``point_stabilizer_cycle``
    is tried; any solution it finds is checked against the full system.
    """
    from .designs import steiner_divisibility

    ok, _ = steiner_divisibility(t, k, n, q)
    if not ok:
        return [(rho, "excluded by divisibility") for rho in rhos]
    out = []
    for rho in rhos:
        system = build_system(n, k, t, q, rho)
        res = solve(system, node_budget=node_budget)
        if res.tag == "CapReached" and symmetric:
            sym = invariant_solve(system, [point_stabilizer_cycle(rho, q)], node_budget=node_budget)
            if sym.count:
                # a unique invariant solution says nothing about uniqueness overall
                tag = "Multiple" if sym.tag == "Multiple" else "solution found"
                out.append((rho, f"not excluded ({tag})"))
                continue
        if res.tag == "Infeasible":
            out.append((rho, "excluded (no nonnegative integer solution)"))
        elif res.tag == "CapReached":
            out.append((rho, "undecided (node budget reached)"))
        else:
            out.append((rho, f"not excluded ({res.tag})"))
    return out
