"""Graded computation of invariants and proper semi-invariants.

Degree by degree: the candidate space is the common kernel of the
derived-subalgebra action on the graded component; the operators coming
from a complement of [g,g] commute there and are split into joint
eigenspaces with rational eigenvalues.  Each rational joint eigenvalue
tuple determines a weight; weight zero gives the invariants.

Nilpotent algebras admit no proper semi-invariants (all weights vanish)
and perfect ones none either (weights kill [g,g] = g), so for those the
search reduces to plain kernel intersections and skips the eigenvalue
machinery entirely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .grobner import (BudgetExceededError, GroebnerBasis, Ideal, buchberger,
                      ideal_membership)
from .lie import LieAlgebra
from .linalg import SparseEchelon, kernel_of_columns
from .poly import (DEGREVLEX, GRLEX, MonomialOrder, Polynomial, _q,
                   exact_div, monomials_of_degree)

MODE_INVARIANTS = "invariants-only"
MODE_ALL = "all-semi-invariants"


@dataclass(frozen=True)
class WeightVector:
    """A linear functional on the algebra, given by its values on the basis.

    Weights of semi-invariants always vanish on the derived subalgebra.
    """

    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, values) -> "WeightVector":
        return cls(tuple(_q(x) for x in values))

    @classmethod
    def zero(cls, n: int) -> "WeightVector":
        return cls((Fraction(0),) * n)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a + b for a, b in
                                  zip(self.values, other.values)))

    def scale(self, c) -> "WeightVector":
        c = _q(c)
        return WeightVector(tuple(c * v for v in self.values))


@dataclass(frozen=True)
class SemiInvariant:
    poly: Polynomial
    weight: WeightVector
    degree: int


@dataclass(frozen=True)
class GradedSemiInvariants:
    """Semi-invariant spaces of one degree, grouped by weight.

    ``irrational_flag`` is set when some restricted operator had a
    characteristic factor without rational roots, i.e. semi-invariants
    with irrational weights may exist but are not reported.
    """

    degree: int
    blocks: tuple[tuple[WeightVector, tuple[Polynomial, ...]], ...]
    irrational_flag: bool

    def weight_zero(self) -> tuple[Polynomial, ...]:
        for w, basis in self.blocks:
            if w.is_zero:
                return basis
        return ()

    def total_dim(self) -> int:
        return sum(len(basis) for _, basis in self.blocks)


@dataclass(frozen=True)
class GeneratorSet:
    algebra: LieAlgebra
    mode: str
    degree_bound: int
    order: MonomialOrder
    generators: tuple[SemiInvariant, ...]
    irrational_degrees: tuple[int, ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(s.degree for s in self.generators)

    def degree_sum(self) -> int:
        return sum(self.degrees)

    def has_proper(self) -> bool:
        return any(not s.weight.is_zero for s in self.generators)

    def invariant_generators(self) -> tuple[SemiInvariant, ...]:
        return tuple(s for s in self.generators if s.weight.is_zero)


@dataclass(frozen=True)
class Relation:
    """A weighted-homogeneous polynomial in formal generator symbols that
    expands to zero when the generators are substituted."""

    poly: Polynomial
    weighted_degree: int
    generator_degrees: tuple[int, ...]


def verify_semi_invariant(g: LieAlgebra, f: Polynomial, w: WeightVector) -> bool:
    """Exact check of the defining identity ad(v_i)(f) = w_i * f."""
    n = g.dim
    for i in range(n):
        e_i = [1 if t == i else 0 for t in range(n)]
        if g.apply_ad(e_i, f) != f * w.values[i]:
            return False
    return True


# ---------------------------------------------------------------------------
# graded search
# ---------------------------------------------------------------------------

def _echelonize(polys: Sequence[Polynomial], nvars: int,
                order: MonomialOrder) -> list[Polynomial]:
    """Canonical reduced basis of the span, pivots = leading monomials."""
    ech = SparseEchelon(lambda keys: max(keys, key=order.key))
    for p in polys:
        if not p.is_zero:
            ech.add(p.terms)
    rows = sorted(ech.rows.items(), key=lambda kv: order.key(kv[0]),
                  reverse=True)
    return [Polynomial._new(nvars, dict(r)) for _, r in rows]


def _kernel_intersection(g: LieAlgebra, space: list[Polynomial],
                         vectors: Sequence[Sequence], order: MonomialOrder
                         ) -> list[Polynomial]:
    """Intersect ``space`` with the kernels of ad(v) for v in ``vectors``."""
    n = g.dim
    for v in vectors:
        if not space:
            break
        images = [g.apply_ad(v, f) for f in space]
        if all(img.is_zero for img in images):
            continue
        coeff_basis = kernel_of_columns([img.terms for img in images])
        combined = []
        for coeffs in coeff_basis:
            acc = Polynomial.zero(n)
            for c, f in zip(coeffs, space):
                if c:
                    acc = acc + f * c
            combined.append(acc)
        space = _echelonize(combined, n, order)
    return space


def _coordinates(space: list[Polynomial], pivots: list, vec: Polynomial
                 ) -> list[Fraction]:
    coords = [vec.terms.get(p, Fraction(0)) for p in pivots]
    residual = vec
    for c, f in zip(coords, space):
        if c:
            residual = residual - f * c
    assert residual.is_zero, "vector left the subspace"
    return coords


def _restricted_matrix(g: LieAlgebra, v: Sequence, space: list[Polynomial],
                       order: MonomialOrder) -> linalg.Mat:
    """Matrix of ad(v) restricted to an invariant subspace (columns are
    images in the echelon coordinates of ``space``)."""
    pivots = [f.leading_monomial(order) for f in space]
    cols = [_coordinates(space, pivots, g.apply_ad(v, f)) for f in space]
    k = len(space)
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def _weight_from_eigenvalues(g: LieAlgebra, complement: list[int],
                             eigenvalues: Sequence[Fraction]) -> WeightVector:
    """The functional vanishing on [g,g] with given values on the
    complement coordinates."""
    n = g.dim
    derived = g.derived_subalgebra()
    rows = [list(b) for b in derived.basis]
    rhs = [Fraction(0)] * len(rows)
    for idx, lam in zip(complement, eigenvalues):
        row = [Fraction(0)] * n
        row[idx] = Fraction(1)
        rows.append(row)
        rhs.append(_q(lam))
    sol = linalg.solve(rows, rhs)
    assert sol is not None
    return WeightVector.of(sol)


def graded_semi_invariants(g: LieAlgebra, degree: int,
                           order: MonomialOrder = DEGREVLEX,
                           mode: str = MODE_ALL) -> GradedSemiInvariants:
    """Weight decomposition of the degree-``degree`` semi-invariants."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    n = g.dim
    space = [Polynomial._new(n, {m: Fraction(1)})
             for m in monomials_of_degree(n, degree, order)]

    basis_vectors = [[1 if t == i else 0 for t in range(n)] for i in range(n)]
    structural = g.is_nilpotent() or g.is_perfect()
    if mode == MODE_INVARIANTS or structural:
        invariant = _kernel_intersection(g, space, basis_vectors, order)
        blocks = (((WeightVector.zero(n)), tuple(invariant)),) if invariant else ()
        result = GradedSemiInvariants(degree, blocks, False)
    elif mode == MODE_ALL:
        derived = g.derived_subalgebra()
        candidate = _kernel_intersection(g, space, list(derived.basis), order)
        derived_pivots = set()
        for b in derived.basis:
            for i, x in enumerate(b):
                if x != 0:
                    derived_pivots.add(i)
                    break
        complement = [i for i in range(n) if i not in derived_pivots]
        blocks_raw: list[tuple[tuple[Fraction, ...], list[Polynomial]]] = \
            [((), candidate)] if candidate else []
        flag = False
        for idx in complement:
            v = basis_vectors[idx]
            new_blocks = []
            for eigs, sub in blocks_raw:
                m = _restricted_matrix(g, v, sub, order)
                chi = linalg.charpoly(m)
                roots, residual = linalg.rational_roots(chi)
                if residual > 0:
                    flag = True
                for lam, _mult in roots:
                    shifted = [row[:] for row in m]
                    for t in range(len(shifted)):
                        shifted[t][t] -= lam
                    eig_coords = linalg.nullspace(shifted, len(sub))
                    if not eig_coords:
                        continue
                    vecs = []
                    for coords in eig_coords:
                        acc = Polynomial.zero(n)
                        for c, f in zip(coords, sub):
                            if c:
                                acc = acc + f * c
                        vecs.append(acc)
                    new_blocks.append((eigs + (lam,),
                                       _echelonize(vecs, n, order)))
            blocks_raw = new_blocks
        blocks = []
        for eigs, sub in blocks_raw:
            w = _weight_from_eigenvalues(g, complement, eigs)
            blocks.append((w, tuple(sub)))
        blocks.sort(key=lambda bw: tuple(bw[0].values))
        blocks.sort(key=lambda bw: not bw[0].is_zero)
        result = GradedSemiInvariants(degree, tuple(blocks), flag)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    for w, basis in result.blocks:
        for f in basis:
            assert verify_semi_invariant(g, f, w), \
                "graded search produced a non-semi-invariant"
        derived = g.derived_subalgebra()
        for b in derived.basis:
            assert sum((c * x for c, x in zip(w.values, b)), Fraction(0)) == 0, \
                "weight does not vanish on the derived subalgebra"
    return result


# ---------------------------------------------------------------------------
# minimal generators
# ---------------------------------------------------------------------------

def _exponent_vectors(degrees: Sequence[int], target: int) -> list[tuple[int, ...]]:
    """All exponent tuples e with sum e_i * degrees[i] == target."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, prefix: tuple[int, ...], remaining: int):
        if i == len(degrees):
            if remaining == 0:
                out.append(prefix)
            return
        d = degrees[i]
        for e in range(remaining // d + 1):
            rec(i + 1, prefix + (e,), remaining - e * d)

    rec(0, (), target)
    return out


def minimal_generators(g: LieAlgebra, max_degree: int | None = None,
                       mode: str = MODE_ALL,
                       order: MonomialOrder = DEGREVLEX) -> GeneratorSet:
    """Minimal homogeneous generators of the (semi-)invariant algebra,
    complete up to ``max_degree`` (default dim g).

    In each degree the new generators are a canonical complement, inside
    the weight-graded semi-invariant space, of the span of products of
    the generators already found; weights multiply additively.
    """
    bound = max_degree if max_degree is not None else g.dim
    if bound < 1:
        raise ValueError("degree bound must be >= 1")
    n = g.dim
    gens: list[SemiInvariant] = []
    irrational: list[int] = []
    power_cache: dict[tuple[int, int], Polynomial] = {}

    def power(idx: int, e: int) -> Polynomial:
        key = (idx, e)
        if key not in power_cache:
            power_cache[key] = gens[idx].poly ** e
        return power_cache[key]

    for d in range(1, bound + 1):
        graded = graded_semi_invariants(g, d, order, mode)
        if graded.irrational_flag:
            irrational.append(d)
        products: dict[tuple[Fraction, ...], SparseEchelon] = {}
        lead = lambda keys: max(keys, key=order.key)
        for exps in _exponent_vectors([s.degree for s in gens], d):
            w = WeightVector.zero(n)
            prod = Polynomial.one(n)
            for i, e in enumerate(exps):
                if e:
                    w = w + gens[i].weight.scale(e)
                    prod = prod * power(i, e)
            products.setdefault(w.values, SparseEchelon(lead)).add(prod.terms)
        for w, basis in graded.blocks:
            ech = products.setdefault(w.values, SparseEchelon(lead))
            for f in basis:
                reduced = ech.reduce(f.terms)
                if not reduced:
                    continue
                ech.add(reduced)
                poly = Polynomial._new(n, dict(reduced)).monic(order)
                gens.append(SemiInvariant(poly, w, d))
    return GeneratorSet(algebra=g, mode=mode, degree_bound=bound, order=order,
                        generators=tuple(gens),
                        irrational_degrees=tuple(irrational))


# ---------------------------------------------------------------------------
# algebraic independence and relations
# ---------------------------------------------------------------------------

def jacobian_matrix(polys: Sequence[Polynomial], nvars: int
                    ) -> list[list[Polynomial]]:
    return [[f.partial_derivative(j) for j in range(nvars)] for f in polys]


def poly_matrix_rank(rows: list[list[Polynomial]]) -> int:
    """Rank over the fraction field by fraction-free (Bareiss) elimination."""
    if not rows:
        return 0
    m = [row[:] for row in rows]
    nrows, ncols = len(m), len(m[0])
    nvars = m[0][0].nvars
    prev = Polynomial.one(nvars)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                num = m[r][c] * m[i][j] - m[i][c] * m[r][j]
                m[i][j] = exact_div(num, prev)
            m[i][c] = Polynomial.zero(nvars)
        prev = m[r][c]
        r += 1
        if r == nrows:
            break
    return r


def algebraically_independent(polys: Sequence[Polynomial], nvars: int
                              ) -> tuple[bool, int]:
    """Jacobian-rank test: independent iff rank equals the count."""
    if not polys:
        raise ValueError("need at least one polynomial")
    rank = poly_matrix_rank(jacobian_matrix(polys, nvars))
    return rank == len(polys), rank


def find_relations(gens: GeneratorSet, max_weighted_degree: int,
                   max_monomials: int = 4000) -> list[Relation]:
    """Weighted-homogeneous relations among the generators, up to the
    given weighted degree, each new relation outside the ideal of the
    previous ones."""
    k = len(gens.generators)
    if k == 0:
        return []
    degrees = [s.degree for s in gens.generators]
    n = gens.algebra.dim
    power_cache: dict[tuple[int, int], Polynomial] = {}

    def power(idx: int, e: int) -> Polynomial:
        key = (idx, e)
        if key not in power_cache:
            power_cache[key] = gens.generators[idx].poly ** e
        return power_cache[key]

    relations: list[Relation] = []
    gb: GroebnerBasis | None = None
    for delta in range(1, max_weighted_degree + 1):
        exps = _exponent_vectors(degrees, delta)
        if len(exps) > max_monomials:
            raise BudgetExceededError(
                f"{len(exps)} formal monomials at weighted degree {delta} "
                f"exceed the cap {max_monomials}")
        if len(exps) < 2:
            continue
        expansions = []
        for e in exps:
            prod = Polynomial.one(n)
            for i, ei in enumerate(e):
                if ei:
                    prod = prod * power(i, ei)
            expansions.append(prod)
        for coeffs in kernel_of_columns([p.terms for p in expansions]):
            formal = Polynomial(k, {e: c for e, c in zip(exps, coeffs)})
            if formal.is_zero:
                continue
            if gb is not None and ideal_membership(formal, gb):
                continue
            formal = formal.monic(GRLEX)
            relations.append(Relation(formal, delta, tuple(degrees)))
            gb = buchberger(Ideal.of(k, [r.poly for r in relations]))
    return relations


def substitute_generators(rel: Relation, gens: GeneratorSet) -> Polynomial:
    return rel.poly.compose([s.poly for s in gens.generators])


# ---------------------------------------------------------------------------
# Poisson bracket
# ---------------------------------------------------------------------------

def poisson_bracket(a: Polynomial, b: Polynomial, g: LieAlgebra) -> Polynomial:
    """Kostant-Kirillov bracket: {a, b} = sum_{i<j} (a_i b_j - a_j b_i) [v_i, v_j]
    with subscripts denoting partial derivatives."""
    n = g.dim
    if a.nvars != n or b.nvars != n:
        raise ValueError("polynomials must live in the symmetric algebra of g")
    da = [a.partial_derivative(i) for i in range(n)]
    db = [b.partial_derivative(i) for i in range(n)]
    matrix = g.structure_matrix()
    out = Polynomial.zero(n)
    for i in range(n):
        for j in range(i + 1, n):
            entry = matrix[i, j]
            if entry.is_zero:
                continue
            coeff = da[i] * db[j] - da[j] * db[i]
            if not coeff.is_zero:
                out = out + coeff * entry
    return out


def weight_derivation(f: Polynomial, w: WeightVector) -> Polynomial:
    """The constant-coefficient derivation sum_i w_i d/dv_i applied to f."""
    out = Polynomial.zero(f.nvars)
    for i, c in enumerate(w.values):
        if c:
            out = out + f.partial_derivative(i) * c
    return out


# ---------------------------------------------------------------------------
# transcendence-degree consistency and the Gorenstein invariant
# ---------------------------------------------------------------------------

TRDEG_CONSISTENT = "consistent"
TRDEG_DEFICIENT = "deficient"
TRDEG_NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class TrdegCheck:
    status: str
    rank: int | None
    expected: int
    degree_bound: int


def trdeg_check(g: LieAlgebra, gens: GeneratorSet,
                structure_rank: int | None = None) -> TrdegCheck:
    """Compare the Jacobian rank of the discovered invariants with
    dim g - rank(structure matrix), the transcendence degree of the
    invariant field when no proper semi-invariants exist."""
    if gens.mode != MODE_ALL:
        raise ValueError("gate needs a search over all semi-invariants")
    if structure_rank is None:
        from .pfaffian import certified_rank
        structure_rank = certified_rank(g.structure_matrix()).rank
    expected = g.dim - structure_rank
    if gens.has_proper():
        return TrdegCheck(TRDEG_NOT_APPLICABLE, None, expected,
                          gens.degree_bound)
    invariants = [s.poly for s in gens.invariant_generators()]
    if not invariants:
        status = TRDEG_CONSISTENT if expected == 0 else TRDEG_DEFICIENT
        return TrdegCheck(status, 0, expected, gens.degree_bound)
    _, rank = algebraically_independent(invariants, g.dim)
    assert rank <= expected, "invariant rank exceeded the structural bound"
    status = TRDEG_CONSISTENT if rank == expected else TRDEG_DEFICIENT
    return TrdegCheck(status, rank, expected, gens.degree_bound)


@dataclass(frozen=True)
class GorensteinResult:
    value: int | None
    case: str
    reason: str | None = None

    @property
    def defined(self) -> bool:
        return self.value is not None


def gorenstein_invariant(gens: GeneratorSet,
                         relations: Sequence[Relation]) -> GorensteinResult:
    """Degree sum of the generators minus that of the relations, defined
    for a discovered presentation that is a polynomial ring or a complete
    intersection."""
    polys = [s.poly for s in gens.generators]
    if not polys:
        return GorensteinResult(None, "empty", "no generators found")
    _, rank = algebraically_independent(polys, gens.algebra.dim)
    k, s = len(polys), len(relations)
    if s != k - rank:
        return GorensteinResult(
            None, "not-complete-intersection",
            f"{k} generators of rank {rank} with {s} relations")
    value = gens.degree_sum() - sum(r.weighted_degree for r in relations)
    case = "polynomial-ring" if s == 0 else "complete-intersection"
    return GorensteinResult(value, case)
