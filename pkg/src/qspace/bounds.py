"""Closed-form bounds on code and covering-design sizes, in exact integers.

Quantities:
  A   -- A_q(n, delta, k), constant dimension codes
  AS  -- A^S_q(n, d), subspace distance
  AI  -- A^I_q(n, d), injection distance
  C   -- C_q(n, k, r), q-covering designs
  AR  -- A^R_q(m, n, d, r), constant rank codes
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import ceil, isqrt
from typing import Iterable

from .errors import BadParams
from .gf import prime_power
from .subspace import gaussian_binomial as gb

KINDS = ("lower", "upper", "exact", "unknown")


@dataclass(frozen=True)
class BoundResult:
    value: int | None
    kind: str
    source: str
    quantity: str = "A"
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadParams(f"unknown bound kind {self.kind!r}")
        if self.kind != "unknown" and (self.value is None or self.value < 0):
            raise BadParams(f"bound value must be a nonnegative integer, got {self.value}")

    @property
    def is_lower(self) -> bool:
        return self.kind in ("lower", "exact")

    @property
    def is_upper(self) -> bool:
        return self.kind in ("upper", "exact")


def _check_q(q: int) -> None:
    try:
        prime_power(q)
    except Exception:
        raise BadParams(f"q={q} is not a prime power") from None


def _check_A(n: int, delta: int, k: int, q: int) -> None:
    _check_q(q)
    if not (0 <= k <= n and delta >= 1):
        raise BadParams(f"bad parameters n={n}, delta={delta}, k={k}")


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# -- constant dimension codes ------------------------------------------------

def johnson_step(n: int, delta: int, k: int, q: int, inner: int) -> BoundResult:
    """floor((q^n - 1)/(q^k - 1) * inner) with inner bounding A_q(n-1, delta, k-1)."""
    _check_A(n, delta, k, q)
    if k < 1 or inner < 0:
        raise BadParams("johnson_step needs k >= 1 and inner >= 0")
    v = ((q ** n - 1) * inner) // (q ** k - 1)
    return BoundResult(v, "upper", "johnson", "A", (q, n, delta, k))


def iterated_johnson(n: int, delta: int, k: int, q: int) -> BoundResult:
    _check_A(n, delta, k, q)
    if not 1 <= delta <= k:
        raise BadParams(f"need 1 <= delta <= k, got delta={delta}, k={k}")
    v = (q ** (n - k + delta) - 1) // (q ** delta - 1)
    for j in range(delta + 1, k + 1):
        v = ((q ** (n - k + j) - 1) * v) // (q ** j - 1)
    return BoundResult(v, "upper", "iterated-johnson", "A", (q, n, delta, k))


def packing_upper(n: int, delta: int, k: int, q: int) -> BoundResult:
    _check_A(n, delta, k, q)
    if not 1 <= delta <= k:
        raise BadParams(f"need 1 <= delta <= k, got delta={delta}, k={k}")
    t = k - delta + 1
    return BoundResult(gb(n, t, q) // gb(k, t, q), "upper", "packing", "A", (q, n, delta, k))


def lifted_mrd_lower(n: int, delta: int, k: int, q: int) -> BoundResult:
    """Size of a lifted MRD code; q^((n-k)(k-delta+1)) when k <= n-k."""
    _check_A(n, delta, k, q)
    s, big = min(k, n - k), max(k, n - k)
    v = q ** (big * (s - delta + 1)) if delta <= s else 1
    return BoundResult(v, "lower", "lifted-MRD", "A", (q, n, delta, k))


def spread_exact(n: int, k: int, q: int) -> BoundResult:
    _check_A(n, k, k, q)
    if k < 1 or n % k:
        raise BadParams(f"k={k} does not divide n={n}")
    return BoundResult((q ** n - 1) // (q ** k - 1), "exact", "spread", "A", (q, n, k, k))


def partial_spread_upper(n: int, k: int, q: int) -> BoundResult:
    _check_A(n, k, k, q)
    if k < 1 or n % k == 0:
        raise BadParams("the partial spread upper bound needs k not dividing n")
    return BoundResult((q ** n - 1) // (q ** k - 1) - 1, "upper", "partial-spread-upper", "A", (q, n, k, k))


def partial_spread_lower(n: int, k: int, q: int) -> BoundResult:
    _check_A(n, k, k, q)
    if not 1 <= k <= n:
        raise BadParams("need 1 <= k <= n")
    r = n % k
    v = (q ** n - q ** k * (q ** r - 1) - 1) // (q ** k - 1)
    return BoundResult(v, "lower", "partial-spread-lower", "A", (q, n, k, k))


def thm11_exact(n: int, k: int, q: int) -> BoundResult:
    _check_A(n, k, k, q)
    if k < 2 or n % k != 1 or n < k:
        raise BadParams("this partial spread formula needs k >= 2 and n = 1 (mod k)")
    v = (q ** n - q) // (q ** k - 1) - q + 1
    return BoundResult(v, "exact", "partial-spread-r1", "A", (q, n, k, k))


def thm12_exact(n: int) -> BoundResult:
    if n < 3:
        raise BadParams("the k = 3 partial spread formula needs n >= 3")
    c = n % 3
    return BoundResult((2 ** n - 2 ** c) // 7 - c, "exact", "partial-spread-k3", "A", (2, n, 3, 3))


def omega_floor(k: int, c: int, q: int) -> int:
    """floor(Omega) by integer arithmetic: largest t with (2t+B)^2 <= D."""
    D = 1 + 4 * q ** k * (q ** k - q ** c)
    B = 2 * q ** k - 2 * q ** c + 1
    t = (isqrt(D) - B) // 2
    assert (2 * t + B) ** 2 <= D < (2 * t + 2 + B) ** 2
    return t


def drake_freeman_upper(n: int, k: int, q: int) -> BoundResult:
    _check_A(n, k, k, q)
    if k < 2:
        raise BadParams("need k >= 2")
    l, c = divmod(n, k)
    if not 0 < c < k or l < 1:
        raise BadParams(f"n={n} is not k*l + c with 0 < c < k")
    s = sum(q ** (i * k + c) for i in range(l))
    return BoundResult(s - omega_floor(k, c, q) - 1, "upper", "drake-freeman", "A", (q, n, k, k))


# -- subspace / injection distance -------------------------------------------

def as_d1_d2(n: int, q: int) -> tuple[BoundResult, BoundResult]:
    """A^S_q(n, 1) and A^S_q(n, 2); the second is exact only for q = 2."""
    _check_q(q)
    d1 = sum(gb(n, k, q) for k in range(n + 1))
    d2 = sum(gb(n, k, q) for k in range(0, n + 1, 2))
    return (BoundResult(d1, "exact", "P_q(n)", "AS", (q, n, 1)),
            BoundResult(d2, "exact" if q == 2 else "lower", "even-dims", "AS", (q, n, 2)))


def thm4_exact(n: int) -> BoundResult:
    if n < 1:
        raise BadParams("n >= 1 required")
    return BoundResult(2 ** (n + 1) + 1, "exact", "AS-exact", "AS", (2, 2 * n + 1, 2 * n))


def thm5_bracket(n: int) -> tuple[BoundResult, BoundResult]:
    if n < 1:
        raise BadParams("n >= 1 required")
    p = (2, 2 * n + 1, 2 * n - 1)
    return (BoundResult(2 ** (n + 2) + 1, "lower", "AS-bracket", "AS", p),
            BoundResult(2 ** (n + 2) + 2, "upper", "AS-bracket", "AS", p))


# -- covering designs -------------------------------------------------------------

def _check_C(n: int, k: int, r: int, q: int) -> None:
    _check_q(q)
    if not 0 <= r <= k <= n:
        raise BadParams(f"need 0 <= r <= k <= n, got n={n}, k={k}, r={r}")


def schonheim_lower(n: int, k: int, r: int, q: int, inner: int) -> BoundResult:
    _check_C(n, k, r, q)
    if k < 1 or inner < 0:
        raise BadParams("need k >= 1 and inner >= 0")
    v = _ceil_frac(Fraction(q ** n - 1, q ** k - 1) * inner)
    return BoundResult(v, "lower", "schonheim", "C", (q, n, k, r))


def iterated_schonheim(n: int, k: int, r: int, q: int) -> BoundResult:
    _check_C(n, k, r, q)
    if r < 1:
        raise BadParams("need r >= 1")
    v = 1
    for i in range(r - 1, -1, -1):
        v = _ceil_frac(Fraction(q ** (n - i) - 1, q ** (k - i) - 1) * v)
    return BoundResult(v, "lower", "iterated-schonheim", "C", (q, n, k, r))


def covering_lower(n: int, k: int, r: int, q: int) -> BoundResult:
    _check_C(n, k, r, q)
    v = _ceil_frac(Fraction(gb(n, r, q), gb(k, r, q)))
    return BoundResult(v, "lower", "covering-count", "C", (q, n, k, r))


def de_caen_lower(n: int, k: int, q: int) -> BoundResult:
    _check_C(n, k, k - 1, q)
    if not 1 <= k < n:
        raise BadParams("need 1 <= k < n")
    x = Fraction((q ** k - 1) * (q - 1), (q ** (n - k) - 1) ** 2) * gb(n, k + 1, q)
    return BoundResult(_ceil_frac(x), "lower", "de-caen", "C", (q, n, k, k - 1))


def cover_dim1_exact(n: int, k: int, q: int) -> BoundResult:
    _check_C(n, k, 1, q)
    if k < 1:
        raise BadParams("need k >= 1")
    v = _ceil_frac(Fraction(q ** n - 1, q ** k - 1))
    return BoundResult(v, "exact", "cover-points", "C", (q, n, k, 1))


def cover_hyperplane_exact(n: int, r: int, q: int) -> BoundResult:
    _check_C(n, n - 1, r, q)
    if not 1 <= r <= n - 1:
        raise BadParams("need 1 <= r <= n-1")
    return BoundResult((q ** (r + 1) - 1) // (q - 1), "exact", "cover-hyperplane", "C", (q, n, n - 1, r))


def thm23_lower(s: int, q: int) -> BoundResult:
    _check_q(q)
    if s < 2:
        raise BadParams("need s >= 2")
    v = (q ** (2 * s + 2) - q ** 2) // (q ** 2 - 1) + (q ** (s + 1) - 1) // (q - 1)
    return BoundResult(v, "lower", "cover-odd", "C", (q, 2 * s + 1, 2 * s - 1, s))


def thm24_upper(s: int, x: int, q: int) -> BoundResult:
    _check_q(q)
    if not 1 <= x <= s:
        raise BadParams("need 1 <= x <= s")
    v = Fraction(q ** (2 * s + 2 * x) - q ** (2 * x), q ** 2 - 1) \
        + Fraction(q ** x - 1, q - 1) * Fraction(q ** (s + x) - q ** (x - 1), q - 1)
    return BoundResult(v.numerator // v.denominator, "upper", "cover-upper", "C",
                       (q, 2 * s + x, 2 * s + x - 2, s + x - 1))


def thm25_upper_step(n: int, k: int, r: int, q: int, inner_sub: int, inner_same: int) -> BoundResult:
    """q^(n-k) * C(n-1, k-1, r-1) + C(n-1, k, r), given upper bounds on both."""
    _check_C(n, k, r, q)
    return BoundResult(q ** (n - k) * inner_sub + inner_same, "upper", "cover-recursion", "C", (q, n, k, r))


def thm26_exact(v: int, m: int, delta: int, q: int) -> BoundResult:
    _check_q(q)
    if v < 2 or m < 2 or delta < 0:
        raise BadParams("need v >= 2, m >= 2, delta >= 0")
    val = (q ** (v * m) - 1) // (q ** m - 1)
    return BoundResult(val, "exact", "cover-exact", "C", (q, v * m + delta, v * m - m + delta, v - 1))


def thm27_monotone(n: int, k: int, r: int, q: int, known_upper: int) -> BoundResult:
    """An upper bound on C(n, k, r) also bounds C(n+1, k+1, r)."""
    _check_C(n, k, r, q)
    return BoundResult(known_upper, "upper", "cover-monotone", "C", (q, n + 1, k + 1, r))


def thm28_relations(n: int, k: int, delta: int, q: int, known: int, known_is: str = "A") -> BoundResult:
    """Transfer a bound between A_q(n, delta+1, k) and C_q(n, k, k-delta).

    known_is="A": ``known`` is a lower bound on A; returns an upper bound on C.
    known_is="C": ``known`` is an upper bound on C; returns a lower bound on A.
    Both maps are decreasing, so the direction of the inequality flips.
    """
    _check_q(q)
    if not 0 <= delta <= k <= n or known < 0:
        raise BadParams("need 0 <= delta <= k <= n and known >= 0")
    big, small = gb(n, k - delta, q), gb(k, k - delta, q)
    v = max(0, known + big - small * known)
    if known_is == "A":
        return BoundResult(v, "upper", "A-C-transfer", "C", (q, n, k, k - delta))
    if known_is == "C":
        return BoundResult(v, "lower", "A-C-transfer", "A", (q, n, delta + 1, k))
    raise BadParams("known_is must be 'A' or 'C'")


# -- constant rank codes ------------------------------------------------------------

def constant_rank_bounds(m: int, n: int, d: int, r: int, q: int) -> BoundResult:
    _check_q(q)
    if r < 1 or d < 1 or r > min(m, n):
        raise BadParams("need 1 <= r <= min(m, n) and d >= 1")
    p = (q, m, n, d, r)
    if d == r + 1:
        return BoundResult(gb(n, r, q), "exact", "constant-rank-r+1", "AR", p)
    if d == 2 * r:
        lo, up = best_bounds(m, r, r, q)
        if lo.value == up.value:
            return BoundResult(lo.value, "exact", f"constant-rank-2r/{lo.source}", "AR", p)
        return BoundResult(lo.value, "lower", f"constant-rank-2r/{lo.source}", "AR", p)
    delta = d - r
    if 1 <= delta <= r and 2 * r <= n <= m and (delta == r or m >= (n - r) * (r - delta + 1) + r + 1):
        lo, up = best_bounds(n, delta, r, q)
        if lo.value == up.value:
            return BoundResult(lo.value, "exact", f"constant-rank-lift/{lo.source}", "AR", p)
        return BoundResult(lo.value, "lower", f"constant-rank-lift/{lo.source}", "AR", p)
    return BoundResult(None, "unknown", "none", "AR", p)


def density(size: int, n: int, delta: int, k: int, q: int) -> Fraction:
    if size <= 0:
        raise BadParams("density needs a positive size")
    up = packing_upper(n, delta, min(k, n - k) if delta <= min(k, n - k) else k, q).value
    if size > up:
        raise BadParams(f"size {size} exceeds the packing bound {up}")
    return Fraction(size, up)


# -- literature registry ----------------------------------------------------------

@lru_cache(maxsize=None)
def _registry() -> dict:
    text = resources.files("qspace").joinpath("data/literature.json").read_text()
    return json.loads(text)


def literature(quantity: str | None = None) -> list[dict]:
    entries = _registry()["entries"]
    return [e for e in entries if quantity is None or e["quantity"] == quantity]


def literature_flags() -> list[dict]:
    return list(_registry()["flags"])


def _lit_A(n: int, delta: int, k: int, q: int) -> list[BoundResult]:
    out = []
    for e in literature("A"):
        if (e["q"], e["n"], e["delta"]) == (q, n, delta) and e["k"] in (k, n - k):
            out.append(BoundResult(e["value"], e["kind"], f"lit:{e['citation']}", "A", (q, n, delta, k)))
    return out


# -- aggregation ------------------------------------------------------------------------

def exact_formulas(n: int, delta: int, k: int, q: int) -> list[BoundResult]:
    """Every exact closed form that applies to A_q(n, delta, k)."""
    k = min(k, n - k)
    out = []
    if k == 0 or delta > k:
        out.append(BoundResult(1, "exact", "trivial", "A", (q, n, delta, k)))
        return out
    if delta == 1:
        out.append(BoundResult(gb(n, k, q), "exact", "Grassmannian", "A", (q, n, delta, k)))
    if delta == k:
        if n % k == 0:
            out.append(spread_exact(n, k, q))
        elif k >= 2 and n % k == 1:
            out.append(thm11_exact(n, k, q))
        if q == 2 and k == 3 and n % 3:
            out.append(thm12_exact(n))
    return out


def lower_bounds(n: int, delta: int, k: int, q: int, constructions: bool = True) -> list[BoundResult]:
    _check_A(n, delta, k, q)
    k = min(k, n - k)
    out = exact_formulas(n, delta, k, q)
    if k == 0 or delta > k:
        return out
    out.append(lifted_mrd_lower(n, delta, k, q))
    if delta == k:
        out.append(partial_spread_lower(n, k, q))
    if constructions:
        ml = multilevel_default_size(n, delta, k, q)
        if ml is not None:
            out.append(BoundResult(ml, "lower", "multilevel", "A", (q, n, delta, k)))
    out.extend(b for b in _lit_A(n, delta, k, q) if b.is_lower)
    return out


def upper_bounds(n: int, delta: int, k: int, q: int) -> list[BoundResult]:
    _check_A(n, delta, k, q)
    k = min(k, n - k)
    out = exact_formulas(n, delta, k, q)
    if k == 0 or delta > k:
        return out
    for kk in {k, n - k}:
        out.append(iterated_johnson(n, delta, kk, q))
        out.append(johnson_step(n, delta, kk, q, _best_upper(n - 1, delta, kk - 1, q)))
    out.append(packing_upper(n, delta, k, q))
    if delta == k and n % k:
        out.append(partial_spread_upper(n, k, q))
        if n > k:
            out.append(drake_freeman_upper(n, k, q))
    out.extend(b for b in _lit_A(n, delta, k, q) if b.is_upper)
    return out


@lru_cache(maxsize=None)
def _best_upper(n: int, delta: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    return min(b.value for b in upper_bounds(n, delta, k, q))


_ML_CACHE: dict = {}
MULTILEVEL_MAX_N = 8


def multilevel_default_size(n: int, delta: int, k: int, q: int) -> int | None:
    """Size of the multilevel code on the default skeleton (desk scale only)."""
    if n > MULTILEVEL_MAX_N or q ** n > 2 ** 10:
        return None
    key = (n, delta, k, q)
    if key not in _ML_CACHE:
        from .construct import skeleton_default
        from .rank_metric import fdrm_construct, ferrers_of
        sk = skeleton_default(n, k, delta, "grassmannian")
        total = 0
        for v in sk.words:
            total += q ** fdrm_construct(ferrers_of(v), delta, q, budget=0).dim
        _ML_CACHE[key] = total
    return _ML_CACHE[key]


def _pick(results: Iterable[BoundResult], better) -> BoundResult:
    best = None
    for b in results:
        if best is None or better(b.value, best.value):
            best = b
    return best


def best_bounds(n: int, delta: int, k: int, q: int, constructions: bool = True) -> tuple[BoundResult, BoundResult]:
    """(best lower, best upper) on A_q(n, delta, k); equal values come back as kind 'exact'."""
    lows = lower_bounds(n, delta, k, q, constructions)
    ups = upper_bounds(n, delta, k, q)
    lo = _pick(lows, lambda a, b: a > b)
    up = _pick(ups, lambda a, b: a < b)
    p = (q, n, delta, k)
    if lo.value > up.value:
        raise AssertionError(f"inconsistent bounds at {p}: {lo} > {up}")
    if lo.value == up.value:
        exact = sorted({b.source for b in lows + ups if b.kind == "exact"})
        src = "+".join(exact) if exact else f"{lo.source}={up.source}"
        return BoundResult(lo.value, "exact", src, "A", p), BoundResult(up.value, "exact", src, "A", p)
    return (BoundResult(lo.value, "lower", lo.source, "A", p),
            BoundResult(up.value, "upper", up.source, "A", p))


@dataclass
class BoundTable:
    q: int
    cells: dict = field(default_factory=dict)

    def rows(self) -> list[tuple]:
        out = []
        for (n, delta, k), (lo, up) in sorted(self.cells.items()):
            out.append((self.q, n, delta, k, lo.value, up.value, lo.source, up.source))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "n", "delta", "k", "lower", "upper", "lower_src", "upper_src"])
        w.writerows(self.rows())
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        for q, n, delta, k, lo, up, ls, us in self.rows():
            cell = f"{lo}" if lo == up else f"{lo} - {up}"
            lines.append(f"A_{q}({n},{delta},{k}) = {cell}   [{ls} / {us}]")
        return "\n".join(lines)


def emit_table(q: int, ns: Iterable[int], include_trivial: bool = False, constructions: bool = True) -> BoundTable:
    """Cells with k <= n - k; trivial rows (k = 1, delta = 1) only on request."""
    table = BoundTable(q)
    for n in ns:
        for k in range(1, n // 2 + 1):
            for delta in range(1, k + 1):
                if not include_trivial and (k == 1 or delta == 1):
                    continue
                table.cells[(n, delta, k)] = best_bounds(n, delta, k, q, constructions)
    return table
