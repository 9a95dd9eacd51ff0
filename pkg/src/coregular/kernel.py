"""Kernel of the anchor map, freeness, the numerical criteria, and the
one-step reduction toward an algebra without proper semi-invariants.

The anchor map is represented by the structure matrix B, so its kernel
consists of the tuples (A_1..A_n) of polynomials with
sum_i A_i B[i][j] = 0 for every column j.  It is computed degree by
degree with minimal new generators extracted against multiples of the
lower-degree ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .grobner import BudgetExceededError
from .invariants import (MODE_ALL, GeneratorSet, Relation, SemiInvariant,
                         WeightVector, algebraically_independent,
                         graded_semi_invariants, poly_matrix_rank)
from .lie import LieAlgebra, SkewPolyMatrix, is_derivation, jordan_chevalley
from .pfaffian import (DEFAULT_PROBE_SEED, FundamentalSemiInvariant,
                       RankCertificate, certified_rank,
                       fundamental_semi_invariant, singular_locus_codim)
from .poly import (DEGREVLEX, MonomialOrder, Polynomial, format_polynomial,
                   monomials_of_degree)

HOLDS = "holds"
FAILS = "fails"
UNKNOWN = "unknown"

CERTIFIED = "certified"
UP_TO_DEGREE = "up-to-degree"
BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class CriterionVerdict:
    criterion: str
    status: str
    lhs: str
    rhs: str
    certainty: str
    degree_bound: int | None = None
    notes: tuple[str, ...] = ()
    witness: str | None = None


# ---------------------------------------------------------------------------
# kernel of the anchor map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelGenerator:
    components: tuple[Polynomial, ...]
    degree: int


@dataclass(frozen=True)
class KernelBasis:
    algebra: LieAlgebra
    degree_bound: int
    generators: tuple[KernelGenerator, ...]
    rank: int  # generic rank of the kernel module = index of the algebra

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(w.degree for w in self.generators)


def _annihilates(b: SkewPolyMatrix, components: Sequence[Polynomial]) -> bool:
    n = b.size
    for j in range(n):
        acc = Polynomial.zero(n)
        for i in range(n):
            entry = b[i, j]
            if not entry.is_zero and not components[i].is_zero:
                acc = acc + components[i] * entry
        if not acc.is_zero:
            return False
    return True


def kernel_of_rho(g: LieAlgebra, degree_bound: int,
                  order: MonomialOrder = DEGREVLEX,
                  seed: int | None = None) -> KernelBasis:
    """Minimal homogeneous generators of ker rho up to the degree bound.

    Degree d unknowns are tuples (A_1..A_n) of degree-d forms; new
    generators are a canonical complement of the multiples of the
    lower-degree generators.
    """
    if degree_bound < 1:
        raise ValueError("degree bound must be >= 1")
    n = g.dim
    b = g.structure_matrix()
    cert = certified_rank(b, seed if seed is not None else DEFAULT_PROBE_SEED)
    rank = n - cert.rank

    generators: list[KernelGenerator] = []
    for d in range(0, degree_bound + 1):
        monos = monomials_of_degree(n, d, order)
        mono_rank = {m: t for t, m in enumerate(monos)}
        unknowns = [(i, m) for i in range(n) for m in monos]

        def column_image(i: int, m) -> dict:
            img: dict = {}
            for j in range(n):
                entry = b[i, j]
                for mm, c in entry.terms.items():
                    key = (j, tuple(x + y for x, y in zip(m, mm)))
                    s = img.get(key, 0) + c
                    if s == 0:
                        img.pop(key, None)
                    else:
                        img[key] = s
            return img

        images = [column_image(i, m) for (i, m) in unknowns]
        solutions = linalg.kernel_of_columns(images)
        if not solutions:
            continue

        # span of degree-d multiples of lower-degree generators
        lower = linalg.SparseEchelon(
            lambda keys: min(keys, key=lambda k: (k[0], mono_rank[k[1]])))
        for gen in generators:
            shift = d - gen.degree
            for m in monomials_of_degree(n, shift, order):
                vec: dict = {}
                for i, comp in enumerate(gen.components):
                    for mm, c in comp.terms.items():
                        vec[(i, tuple(x + y for x, y in zip(m, mm)))] = c
                lower.add(vec)

        new_rows = []
        for sol in solutions:
            vec: dict = {}
            for c, (i, m) in zip(sol, unknowns):
                if c:
                    vec[(i, m)] = c
            reduced = lower.reduce(vec)
            if reduced:
                lower.add(reduced)
                new_rows.append(dict(reduced))
        # canonical order and normalization (unit pivot came from the echelon)
        def pivot_key(row: dict):
            return min((i, mono_rank[m]) for (i, m) in row)
        new_rows.sort(key=pivot_key)
        for row in new_rows:
            pk = min(row, key=lambda k: (k[0], mono_rank[k[1]]))
            lead = row[pk]
            comps = [dict() for _ in range(n)]
            for (i, m), c in row.items():
                comps[i][m] = c / lead
            components = tuple(Polynomial._new(n, comp) for comp in comps)
            assert _annihilates(b, components), \
                "kernel generator fails to annihilate the structure matrix"
            generators.append(KernelGenerator(components, d))

    return KernelBasis(g, degree_bound, tuple(generators), rank)


def find_syzygy(kernel: KernelBasis, max_extra_degree: int = 3
                ) -> tuple[int, tuple[Polynomial, ...]] | None:
    """Smallest-degree polynomial relation among the kernel generators.

    Returns (degree, coefficients) with sum_a coeff_a * w_a = 0, or None.
    """
    gens = kernel.generators
    if not gens:
        return None
    n = kernel.algebra.dim
    order = DEGREVLEX
    dmin = min(w.degree for w in gens)
    dmax = max(w.degree for w in gens)
    for e in range(dmin, dmax + max_extra_degree + 1):
        unknowns = []
        images = []
        for a, w in enumerate(gens):
            shift = e - w.degree
            if shift < 0:
                continue
            for m in monomials_of_degree(n, shift, order):
                unknowns.append((a, m))
                img: dict = {}
                for i, comp in enumerate(w.components):
                    for mm, c in comp.terms.items():
                        img[(i, tuple(x + y for x, y in zip(m, mm)))] = c
                images.append(img)
        if not unknowns:
            continue
        solutions = linalg.kernel_of_columns(images)
        if not solutions:
            continue
        sol = solutions[0]
        coeffs = [Polynomial.zero(n) for _ in gens]
        for c, (a, m) in zip(sol, unknowns):
            if c:
                coeffs[a] = coeffs[a] + Polynomial._new(n, {m: c})
        return e, tuple(coeffs)
    return None


def freeness_verdict(kernel: KernelBasis) -> CriterionVerdict:
    """Free or not, from the generator count against the generic rank.

    A minimally generated graded torsion-free module with more
    generators than its rank cannot be free, so that direction is
    certified; the Holds direction is only as strong as the degree bound.
    """
    count = len(kernel.generators)
    rank = kernel.rank
    g = kernel.algebra
    if count > rank:
        syz = find_syzygy(kernel)
        witness = None
        if syz is not None:
            e, coeffs = syz
            witness = "0 = " + " + ".join(
                f"({format_polynomial(c, g.names)})*w{a + 1}"
                for a, c in enumerate(coeffs) if not c.is_zero)
        return CriterionVerdict(
            criterion="kernel-freeness", status=FAILS,
            lhs=f"{count} minimal generators", rhs=f"rank {rank}",
            certainty=CERTIFIED, degree_bound=kernel.degree_bound,
            notes=("more minimal generators than the rank",),
            witness=witness)
    if count == rank:
        matrix = [[w.components[i] for i in range(g.dim)]
                  for w in kernel.generators]
        if count == 0 or poly_matrix_rank(matrix) == rank:
            return CriterionVerdict(
                criterion="kernel-freeness", status=HOLDS,
                lhs=f"{count} minimal generators", rhs=f"rank {rank}",
                certainty=UP_TO_DEGREE, degree_bound=kernel.degree_bound,
                notes=("generator matrix has full rank over the fraction "
                       "field; generation beyond the degree bound unverified",))
        return CriterionVerdict(
            criterion="kernel-freeness", status=UNKNOWN,
            lhs=f"{count} minimal generators", rhs=f"rank {rank}",
            certainty=UP_TO_DEGREE, degree_bound=kernel.degree_bound,
            notes=("generators are dependent over the fraction field",))
    return CriterionVerdict(
        criterion="kernel-freeness", status=UNKNOWN,
        lhs=f"{count} minimal generators", rhs=f"rank {rank}",
        certainty=UP_TO_DEGREE, degree_bound=kernel.degree_bound,
        notes=("fewer generators than the rank: raise the degree bound",))


# ---------------------------------------------------------------------------
# numerical criteria
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Geometry:
    """Bundle of the exact numeric data of one algebra."""

    certificate: RankCertificate
    index: int
    c: int
    fsi: FundamentalSemiInvariant
    codim: int | None          # None: empty non-regular locus (abelian)
    codim_known: bool          # False when the Groebner budget was exceeded


def compute_geometry(g: LieAlgebra, seed: int | None = None,
                     order: MonomialOrder = DEGREVLEX) -> Geometry:
    probe_seed = seed if seed is not None else DEFAULT_PROBE_SEED
    cert = certified_rank(g.structure_matrix(), probe_seed)
    idx = g.dim - cert.rank
    c = (g.dim + idx) // 2
    fsi = fundamental_semi_invariant(g, probe_seed, order)
    try:
        codim = singular_locus_codim(g, probe_seed, order)
        known = True
    except BudgetExceededError:
        codim = None
        known = False
    return Geometry(cert, idx, c, fsi, codim, known)


def structural_no_proper_reason(g: LieAlgebra) -> str | None:
    """A structure-level certificate that no proper semi-invariant exists:
    nilpotency forces all weights to vanish, and a perfect algebra leaves
    no room for a nonzero weight."""
    if g.is_nilpotent():
        return "nilpotent"
    if g.is_perfect():
        return "perfect"
    return None


def evaluate_criteria(g: LieAlgebra, geometry: Geometry,
                      semi_gens: GeneratorSet, inv_gens: GeneratorSet,
                      relations: Sequence[Relation] | None,
                      relations_known: bool = True) -> list[CriterionVerdict]:
    """All numerical coregularity criteria for one algebra.

    ``relations`` may be None when the relation search blew its budget.
    """
    n = g.dim
    idx = geometry.index
    c = geometry.c
    d = geometry.fsi.degree
    z_dim = g.center().dim
    structural = structural_no_proper_reason(g)
    no_proper_found = not semi_gens.has_proper()
    gate_note = (f"no proper semi-invariants ({structural})" if structural
                 else ("no proper semi-invariants found up to degree "
                       f"{semi_gens.degree_bound}" if no_proper_found
                       else "proper semi-invariants present"))
    gate_certainty = CERTIFIED if structural else UP_TO_DEGREE

    verdicts: list[CriterionVerdict] = []

    # bound on the degree sum of the semi-invariant generators
    lhs = semi_gens.degree_sum()
    fails = lhs > c
    verdicts.append(CriterionVerdict(
        criterion="semi-invariant-degree-sum-bound",
        status=FAILS if fails else HOLDS,
        lhs=f"sum of generator degrees = {lhs}", rhs=f"c = {c}",
        certainty=CERTIFIED if fails else UP_TO_DEGREE,
        degree_bound=semi_gens.degree_bound,
        notes=("the degree sum only grows with the bound, so exceeding c "
               "is final",) if fails else
              ("bound verified for the generators found so far",)))

    # 3 i <= dim + 2 dim Z, valid for coregular algebras without proper
    # semi-invariants
    lhs2, rhs2 = 3 * idx, n + 2 * z_dim
    if no_proper_found:
        verdicts.append(CriterionVerdict(
            criterion="index-center-bound",
            status=HOLDS if lhs2 <= rhs2 else FAILS,
            lhs=f"3 i = {lhs2}", rhs=f"dim + 2 dim Z = {rhs2}",
            certainty=gate_certainty, degree_bound=semi_gens.degree_bound,
            notes=(gate_note,) + ((("failure excludes coregularity",))
                                  if lhs2 > rhs2 else ())))
    else:
        verdicts.append(CriterionVerdict(
            criterion="index-center-bound", status=UNKNOWN,
            lhs=f"3 i = {lhs2}", rhs=f"dim + 2 dim Z = {rhs2}",
            certainty=UP_TO_DEGREE, degree_bound=semi_gens.degree_bound,
            notes=("not applicable: " + gate_note,)))

    # degree-sum equality for a discovered polynomial presentation
    inv_sum = inv_gens.degree_sum()
    target2 = n + idx - d
    assert target2 % 2 == 0
    target = target2 // 2
    independent, rank = (True, 0) if not inv_gens.generators else \
        algebraically_independent([s.poly for s in inv_gens.generators], n)
    polynomial_presentation = (relations is not None and not relations
                               and independent and relations_known)
    eq_gate = no_proper_found and polynomial_presentation
    eq_notes = [gate_note]
    if relations is None or not relations_known:
        eq_notes.append("relation search exceeded its budget")
    elif relations:
        eq_notes.append(f"{len(relations)} relation(s) found: "
                        "presentation is not polynomial")
    if not independent:
        eq_notes.append("generators are algebraically dependent")
    if eq_gate:
        verdicts.append(CriterionVerdict(
            criterion="invariant-degree-sum-equality",
            status=HOLDS if inv_sum == target else FAILS,
            lhs=f"sum of invariant generator degrees = {inv_sum}",
            rhs=f"(dim + i - d)/2 = {target}",
            certainty=UP_TO_DEGREE, degree_bound=inv_gens.degree_bound,
            notes=tuple(eq_notes)))
        verdicts.append(CriterionVerdict(
            criterion="equality-iff-codim-ge-2",
            status=HOLDS if ((inv_sum == c) == (d == 0)) else FAILS,
            lhs=f"degree sum {'=' if inv_sum == c else '!='} c",
            rhs=f"d {'=' if d == 0 else '!='} 0",
            certainty=UP_TO_DEGREE, degree_bound=inv_gens.degree_bound,
            notes=tuple(eq_notes)))
    else:
        for crit in ("invariant-degree-sum-equality", "equality-iff-codim-ge-2"):
            verdicts.append(CriterionVerdict(
                criterion=crit, status=UNKNOWN,
                lhs=f"sum of invariant generator degrees = {inv_sum}",
                rhs=f"(dim + i - d)/2 = {target}" if
                crit == "invariant-degree-sum-equality" else f"d = {d}",
                certainty=UP_TO_DEGREE, degree_bound=inv_gens.degree_bound,
                notes=("not applicable: " + "; ".join(eq_notes),)))

    # codimension of the non-regular locus is at most 3 for coregular
    # non-abelian algebras without proper semi-invariants
    if g.is_abelian:
        verdicts.append(CriterionVerdict(
            criterion="singular-codim-bound", status=HOLDS,
            lhs="non-regular locus empty", rhs="codim <= 3",
            certainty=CERTIFIED, notes=("abelian: every point is regular",)))
    elif not geometry.codim_known:
        verdicts.append(CriterionVerdict(
            criterion="singular-codim-bound", status=UNKNOWN,
            lhs="codim unknown", rhs="codim <= 3",
            certainty=BUDGET_EXCEEDED,
            notes=("Groebner budget exceeded",)))
    else:
        codim = geometry.codim
        verdicts.append(CriterionVerdict(
            criterion="singular-codim-bound",
            status=HOLDS if codim is not None and codim <= 3 else FAILS,
            lhs=f"codim = {codim}", rhs="codim <= 3",
            certainty=CERTIFIED,
            notes=(gate_note,) + (("failure excludes coregularity",)
                                  if codim is not None and codim > 3 else ())))

    verdicts.append(CriterionVerdict(
        criterion="singular-locus-purity", status=UNKNOWN,
        lhs="purity in codimension 3", rhs="not checked",
        certainty=UP_TO_DEGREE,
        notes=("needs primary decomposition, outside the toolkit's scope",)))
    return verdicts


# ---------------------------------------------------------------------------
# one-step reduction
# ---------------------------------------------------------------------------

H_BRANCH = "h-branch"
K_BRANCH = "k-branch"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class ReductionStep:
    algebra: LieAlgebra
    semi_invariant: Polynomial
    weight: WeightVector
    h: LieAlgebra
    h_embedding: tuple[tuple[Fraction, ...], ...]
    k: LieAlgebra
    chosen: str
    rank_g: int
    rank_h: int
    rank_k: int
    c_before: int
    c_after: int | None
    semicenter_dims: dict[str, tuple[int, ...]]
    compare_degree: int
    notes: tuple[str, ...]

    @property
    def chosen_algebra(self) -> LieAlgebra | None:
        if self.chosen == H_BRANCH:
            return self.h
        if self.chosen == K_BRANCH:
            return self.k
        return None


def _semicenter_dims(g: LieAlgebra, bound: int,
                     order: MonomialOrder) -> tuple[int, ...]:
    return tuple(graded_semi_invariants(g, d, order, MODE_ALL).total_dim()
                 for d in range(1, bound + 1))


def reduce_one_step(g: LieAlgebra, s: SemiInvariant,
                    compare_degree: int = 3,
                    order: MonomialOrder = DEGREVLEX,
                    seed: int | None = None) -> ReductionStep:
    """One reduction step along a proper semi-invariant.

    Builds h = ker(weight) and k = h extended by the nilpotent part of
    ad(c) for any c with weight(c) = 1.  The k-branch can only preserve
    the invariant c-value when rank(k) = rank(g); among the surviving
    branches the one whose graded semi-invariant dimensions match those
    of g (up to ``compare_degree``) is chosen.
    """
    n = g.dim
    chi = s.weight
    if chi.is_zero:
        raise ValueError("reduction needs a proper semi-invariant")
    derived = g.derived_subalgebra()
    for b in derived.basis:
        if sum((c * x for c, x in zip(chi.values, b)), Fraction(0)) != 0:
            raise ValueError("weight does not vanish on the derived subalgebra")

    probe_seed = seed if seed is not None else DEFAULT_PROBE_SEED

    h_vectors = linalg.nullspace([list(chi.values)], n)
    h_names = [f"h{i + 1}" for i in range(n - 1)]
    h = g.induced_algebra(h_vectors, h_names, label=f"{g.label}|ker-weight")

    first = next(i for i, x in enumerate(chi.values) if x != 0)
    c_vec = [Fraction(0)] * n
    c_vec[first] = 1 / chi.values[first]

    # matrix of ad(c) restricted to h, in the h basis
    cols = [[h_vectors[t][r] for t in range(n - 1)] for r in range(n)]
    adc = []
    for v in h_vectors:
        img = g.bracket(c_vec, v)
        coords = linalg.solve(cols, img)
        assert coords is not None, "h is not ad(c)-stable"
        adc.append(coords)
    adc_mat = [[adc[j][i] for j in range(n - 1)] for i in range(n - 1)]
    d_s, d_p = jordan_chevalley(adc_mat)
    if not is_derivation(h, d_p):
        raise AssertionError("nilpotent part is not a derivation of h")

    k_brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), coeffs in h.brackets.items():
        k_brackets[(i + 1, j + 1)] = {t + 1: c for t, c in coeffs.items()}
    for j in range(n - 1):
        col = {t + 1: d_p[t][j] for t in range(n - 1) if d_p[t][j] != 0}
        if col:
            k_brackets[(0, j + 1)] = col
    k = LieAlgebra(["p"] + h_names, k_brackets,
                   label=f"{g.label}|nilpotent-extension")

    rank_g = certified_rank(g.structure_matrix(), probe_seed).rank
    rank_h = certified_rank(h.structure_matrix(), probe_seed).rank
    rank_k = certified_rank(k.structure_matrix(), probe_seed).rank
    assert rank_h == rank_g - 2, \
        "kernel of a semi-invariant weight must drop the rank by two"

    dims = {
        "g": _semicenter_dims(g, compare_degree, order),
        "h": _semicenter_dims(h, compare_degree, order),
        "k": _semicenter_dims(k, compare_degree, order),
    }
    notes: list[str] = []
    candidates = [H_BRANCH]
    if rank_k == rank_g:
        candidates.append(K_BRANCH)
    else:
        notes.append("k-branch excluded: rank(k) != rank(g) cannot "
                     "preserve the c-value")
    matches = [cand for cand in candidates
               if dims[cand[0]] == dims["g"]]
    if len(matches) == 1:
        chosen = matches[0]
    elif len(matches) == 2:
        chosen = H_BRANCH
        notes.append("both branches match the semi-center dimensions "
                     f"up to degree {compare_degree}")
    else:
        chosen = UNDECIDED
        notes.append("no branch matches the graded semi-center dimensions; "
                     "raise the comparison degree")

    c_before = (g.dim + (g.dim - rank_g)) // 2
    c_after = None
    if chosen == H_BRANCH:
        c_after = (h.dim + (h.dim - rank_h)) // 2
    elif chosen == K_BRANCH:
        c_after = (k.dim + (k.dim - rank_k)) // 2
    if c_after is not None:
        assert c_after == c_before, "reduction step must preserve the c-value"

    return ReductionStep(
        algebra=g, semi_invariant=s.poly, weight=chi, h=h,
        h_embedding=tuple(tuple(v) for v in h_vectors), k=k, chosen=chosen,
        rank_g=rank_g, rank_h=rank_h, rank_k=rank_k,
        c_before=c_before, c_after=c_after, semicenter_dims=dims,
        compare_degree=compare_degree, notes=tuple(notes))
