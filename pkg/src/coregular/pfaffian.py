"""Certified generic rank of the structure matrix, Pfaffians, index,
the fundamental semi-invariant and the non-regular locus.

The rank certificate is exact: a nonzero principal Pfaffian witnesses
rank >= r, and identical vanishing of every bordered Pfaffian
Pf(I + {a,b}) certifies rank <= r, because for a skew matrix the
determinant of such a bordered principal block equals det(B_I) times
the square of a Schur-complement entry.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .grobner import (DEFAULT_BUDGET, GrobnerBudget, Ideal, buchberger,
                      krull_dimension)
from .lie import LieAlgebra, SkewPolyMatrix
from .poly import DEGREVLEX, MonomialOrder, Polynomial, poly_gcd, try_exact_div

DEFAULT_PROBE_SEED = 20_240_601
PROBE_COUNT = 5
PROBE_RANGE = 7


def pfaffian(b: SkewPolyMatrix, rows, memo: dict | None = None) -> Polynomial:
    """Pfaffian of the principal submatrix on ``rows`` (even cardinality),
    by recursive expansion along the first index."""
    rows = tuple(sorted(rows))
    if len(rows) % 2:
        raise ValueError("Pfaffian needs an even index set")
    if memo is None:
        memo = {}

    def rec(idx: tuple[int, ...]) -> Polynomial:
        if not idx:
            return Polynomial.one(b.size)
        cached = memo.get(idx)
        if cached is not None:
            return cached
        first = idx[0]
        rest = idx[1:]
        total = Polynomial.zero(b.size)
        for t, other in enumerate(rest):
            entry = b[first, other]
            if entry.is_zero:
                continue
            sub = rest[:t] + rest[t + 1:]
            sign = 1 if t % 2 == 0 else -1
            total = total + sign * (entry * rec(sub))
        memo[idx] = total
        return total

    return rec(rows)


@dataclass(frozen=True)
class RankCertificate:
    """Exact generic rank of a skew polynomial matrix with its witnesses."""

    rank: int
    witness_rows: tuple[int, ...]
    witness_pfaffian: Polynomial
    bordered_all_zero: bool
    probe_seed: int
    probe_ranks: tuple[int, ...]


def certified_rank(b: SkewPolyMatrix, seed: int = DEFAULT_PROBE_SEED) -> RankCertificate:
    """Generic rank over the fraction field, certified symbolically.

    Random small-integer probes give a quick numeric guess; the returned
    rank does not depend on probe luck, only on the Pfaffian checks.
    """
    n = b.size
    rng = random.Random(seed)
    probe_ranks = []
    for _ in range(PROBE_COUNT):
        point = [Fraction(rng.randint(-PROBE_RANGE, PROBE_RANGE))
                 for _ in range(n)]
        probe_ranks.append(linalg.rank(b.evaluate(point)))

    memo: dict = {}
    current: tuple[int, ...] = ()
    while True:
        grown = None
        for a, c in combinations([i for i in range(n) if i not in current], 2):
            candidate = tuple(sorted(current + (a, c)))
            if not pfaffian(b, candidate, memo).is_zero:
                grown = candidate
                break
        if grown is None:
            break
        current = grown
    witness = pfaffian(b, current, memo)
    cert = RankCertificate(rank=len(current), witness_rows=current,
                           witness_pfaffian=witness, bordered_all_zero=True,
                           probe_seed=seed, probe_ranks=tuple(probe_ranks))
    assert max(probe_ranks, default=0) <= cert.rank
    return cert


def index(g: LieAlgebra, seed: int = DEFAULT_PROBE_SEED) -> int:
    """dim g minus the generic rank of the structure matrix."""
    return g.dim - certified_rank(g.structure_matrix(), seed).rank


def c_value(g: LieAlgebra, seed: int = DEFAULT_PROBE_SEED) -> int:
    """(dim + index)/2; an integer because the rank is even."""
    two_c = g.dim + index(g, seed)
    assert two_c % 2 == 0, "skew rank must be even"
    return two_c // 2


@dataclass(frozen=True)
class FundamentalSemiInvariant:
    """Monic gcd g of the principal rank-size Pfaffians, its square f,
    and the degree d of f (zero for abelian algebras by convention)."""

    pfaffian_gcd: Polynomial
    value: Polynomial
    degree: int


def fundamental_semi_invariant(g: LieAlgebra,
                               seed: int = DEFAULT_PROBE_SEED,
                               order: MonomialOrder = DEGREVLEX
                               ) -> FundamentalSemiInvariant:
    b = g.structure_matrix()
    cert = certified_rank(b, seed)
    one = Polynomial.one(g.dim)
    if cert.rank == 0:
        return FundamentalSemiInvariant(one, one, 0)
    memo: dict = {}
    gcd: Polynomial | None = None
    for rows in combinations(range(g.dim), cert.rank):
        pf = pfaffian(b, rows, memo)
        if pf.is_zero:
            continue
        gcd = pf if gcd is None else poly_gcd(gcd, pf, order)
        if gcd.is_constant:
            break
    assert gcd is not None
    gcd = gcd.monic(order)
    value = gcd * gcd
    deg = 0 if value.is_constant else value.total_degree()
    return FundamentalSemiInvariant(gcd, value, deg)


def pfaffian_ideal(g: LieAlgebra, seed: int = DEFAULT_PROBE_SEED) -> Ideal:
    """Ideal of all principal rank-size Pfaffians; its zero set is the
    non-regular locus."""
    b = g.structure_matrix()
    cert = certified_rank(b, seed)
    memo: dict = {}
    gens = [pfaffian(b, rows, memo)
            for rows in combinations(range(g.dim), cert.rank)]
    return Ideal.of(g.dim, gens)


def singular_locus_codim(g: LieAlgebra, seed: int = DEFAULT_PROBE_SEED,
                         order: MonomialOrder = DEGREVLEX,
                         budget: GrobnerBudget = DEFAULT_BUDGET) -> int | None:
    """Codimension of the non-regular locus in the dual space.

    Returns None when the locus is empty (abelian algebras: every point
    is regular).  May raise BudgetExceededError from the Groebner run.
    """
    if g.is_abelian:
        return None
    ideal = pfaffian_ideal(g, seed)
    basis = buchberger(ideal, order, budget)
    dim = krull_dimension(basis)
    if dim is None:
        return None
    return g.dim - dim


def verify_divides_minors(g: LieAlgebra, fsi: FundamentalSemiInvariant,
                          samples: int = 5, seed: int = DEFAULT_PROBE_SEED) -> bool:
    """Spot-check that the fundamental semi-invariant divides rank-size
    minors of the structure matrix (general minors, not just principal)."""
    b = g.structure_matrix()
    cert = certified_rank(b, seed)
    r = cert.rank
    if r == 0:
        return True
    rng = random.Random(seed + 1)
    all_rows = list(combinations(range(g.dim), r))
    for _ in range(samples):
        rows = rng.choice(all_rows)
        cols = rng.choice(all_rows)
        minor = _poly_det([[b[i, j] for j in cols] for i in rows])
        if minor.is_zero:
            continue
        if try_exact_div(minor, fsi.value) is None:
            return False
    return True


def _poly_det(m: list[list[Polynomial]]) -> Polynomial:
    n = len(m)
    nvars = m[0][0].nvars
    if n == 0:
        return Polynomial.one(nvars)
    memo: dict = {}

    def rec(cols: tuple[int, ...]) -> Polynomial:
        row = n - len(cols)
        if not cols:
            return Polynomial.one(nvars)
        cached = memo.get(cols)
        if cached is not None:
            return cached
        total = Polynomial.zero(nvars)
        for t, c in enumerate(cols):
            entry = m[row][c]
            if entry.is_zero:
                continue
            sign = 1 if t % 2 == 0 else -1
            total = total + sign * (entry * rec(cols[:t] + cols[t + 1:]))
        memo[cols] = total
        return total

    return rec(tuple(range(n)))
