"""Exact linear algebra over the rationals.

Dense routines work on lists of lists of ``Fraction``.  The sparse
eliminator operates on vectors stored as dicts keyed by arbitrary
sortable labels (monomials, column indices) and is the workhorse behind
the graded kernel computations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .poly import Polynomial, _q, exact_div, poly_gcd

Vec = list[Fraction]
Mat = list[list[Fraction]]


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------

def mat(rows: Iterable[Iterable]) -> Mat:
    return [[_q(x) for x in row] for row in rows]


def identity(n: int) -> Mat:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int) -> Mat:
    return [[Fraction(0)] * m for _ in range(n)]


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c == 0:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j]:
                    oi[j] += c * bt[j]
    return out


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Mat, c) -> Mat:
    c = _q(c)
    return [[x * c for x in row] for row in a]


def mat_vec(a: Mat, v: Sequence) -> Vec:
    return [sum((x * _q(y) for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)] if a else []


def trace(a: Mat) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def mat_eq_zero(a: Mat) -> bool:
    return all(x == 0 for row in a for x in row)


def rref(rows: Iterable[Iterable]) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[_q(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Iterable]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Iterable[Iterable], ncols: int) -> list[Vec]:
    """Canonical basis of {x : A x = 0}; one vector per free column."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis: list[Vec] = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(a: Mat, b: Sequence) -> Vec | None:
    """One solution of A x = b, or None if inconsistent."""
    if not a:
        return [] if all(_q(x) == 0 for x in b) else None
    ncols = len(a[0])
    aug = [list(row) + [_q(bv)] for row, bv in zip(a, b)]
    reduced, pivots = rref(aug)
    x = [Fraction(0)] * ncols
    for row, pc in zip(reduced, pivots):
        if pc == ncols:
            return None
        x[pc] = row[ncols]
    return x


def inverse(a: Mat) -> Mat:
    n = len(a)
    aug = [list(row) + list(identity(n)[i]) for i, row in enumerate(a)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced[:n]]


# ---------------------------------------------------------------------------
# characteristic and minimal polynomials (univariate, as Polynomial in 1 var)
# ---------------------------------------------------------------------------

def charpoly(a: Mat) -> Polynomial:
    """Characteristic polynomial det(tI - A) by Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [Fraction(1)]  # of t^n, t^{n-1}, ...
    m = identity(n)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -trace(m) / k
        coeffs.append(c)
        for i in range(n):
            m[i][i] += c
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            terms[(n - i,)] = c
    return Polynomial(1, terms)


def minimal_polynomial(a: Mat) -> Polynomial:
    """Monic minimal polynomial, by the first linear dependence of powers."""
    n = len(a)
    powers: list[Mat] = [identity(n)]
    vectors: list[Vec] = [[x for row in powers[0] for x in row]]
    cur = identity(n)
    for _ in range(n):
        cur = mat_mul(a, cur)
        powers.append(cur)
        vectors.append([x for row in cur for x in row])
        cols = len(vectors)
        system = [[vectors[j][i] for j in range(cols)]
                  for i in range(n * n)]
        ker = nullspace(system, cols)
        for v in ker:
            if v[cols - 1] != 0:
                scaled = [c / v[cols - 1] for c in v]
                terms = {(i,): c for i, c in enumerate(scaled) if c != 0}
                return Polynomial(1, terms)
    raise AssertionError("minimal polynomial not found")  # pragma: no cover


def poly_of_matrix(p: Polynomial, a: Mat) -> Mat:
    """Evaluate a univariate polynomial at a square matrix (Horner)."""
    if p.nvars != 1:
        raise ValueError("need a univariate polynomial")
    n = len(a)
    deg = p.degree_in(0)
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        coeffs[m[0]] = c
    out = zeros(n, n)
    for c in reversed(coeffs):
        out = mat_mul(out, a)
        for i in range(n):
            out[i][i] += c
    return out


def squarefree_part(p: Polynomial) -> Polynomial:
    """p / gcd(p, p'), monic, for univariate p."""
    d = p.partial_derivative(0)
    if d.is_zero:
        return p.monic()
    g = poly_gcd(p, d)
    return exact_div(p, g).monic()


def rational_roots(p: Polynomial) -> tuple[list[tuple[Fraction, int]], int]:
    """Rational roots with multiplicities of a univariate polynomial.

    Returns (roots, residual_degree) where residual_degree is the degree
    left over after all rational roots are divided out; a positive value
    means irrational or complex roots exist.
    """
    if p.nvars != 1 or p.is_zero:
        raise ValueError("need a nonzero univariate polynomial")
    deg = p.degree_in(0)
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        coeffs[m[0]] = c

    roots: list[tuple[Fraction, int]] = []

    def deflate(cs: list[Fraction], r: Fraction) -> list[Fraction] | None:
        # synthetic division by (t - r); None if r is not a root
        deg = len(cs) - 1
        quot = [Fraction(0)] * deg
        acc = cs[deg]
        for i in range(deg - 1, -1, -1):
            quot[i] = acc
            acc = cs[i] + r * acc
        if acc != 0:
            return None
        return quot

    # root at zero
    zero_mult = 0
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))

    while len(coeffs) > 1:
        denom_lcm = 1
        for c in coeffs:
            denom_lcm = denom_lcm * c.denominator // _gcd_int(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in coeffs]
        a0, an = ints[0], ints[-1]
        if a0 == 0:  # pragma: no cover
            raise AssertionError
        found = None
        for pnum in sorted(_divisors(abs(a0))):
            for qden in sorted(_divisors(abs(an))):
                for sign in (1, -1):
                    cand = Fraction(sign * pnum, qden)
                    nxt = deflate(coeffs, cand)
                    if nxt is not None:
                        found = (cand, nxt)
                        break
                if found:
                    break
            if found:
                break
        if not found:
            break
        cand, coeffs = found
        mult = 1
        while len(coeffs) > 1:
            nxt = deflate(coeffs, cand)
            if nxt is None:
                break
            coeffs = nxt
            mult += 1
        roots.append((cand, mult))

    residual_degree = len(coeffs) - 1
    roots.sort(key=lambda rm: rm[0])
    return roots, residual_degree


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) if a else 1


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


# ---------------------------------------------------------------------------
# sparse elimination over keyed vectors
# ---------------------------------------------------------------------------

class SparseEchelon:
    """Incremental reduced echelon form of sparse vectors.

    Vectors are dicts {key: Fraction}.  ``choose_pivot`` picks the pivot
    key of a nonzero vector (e.g. ``min`` for column indices, or
    largest-under-monomial-order for polynomials).  Pivot rows are kept
    fully reduced against each other, so the final row set is canonical
    for the span, independent of insertion order.
    """

    def __init__(self, choose_pivot: Callable[[Iterable[Hashable]], Hashable]):
        self.choose_pivot = choose_pivot
        self.rows: dict[Hashable, dict] = {}

    @staticmethod
    def _axpy(target: dict, coeff: Fraction, source: dict) -> dict:
        for k, v in source.items():
            s = target.get(k, 0) - coeff * v
            if s == 0:
                target.pop(k, None)
            else:
                target[k] = s
        return target

    def reduce(self, vec: dict) -> dict:
        """Fully reduce ``vec`` against the current pivot rows."""
        work = {k: _q(v) for k, v in vec.items() if v != 0}
        hits = [k for k in work if k in self.rows]
        while hits:
            for k in hits:
                c = work.get(k)
                if c:
                    self._axpy(work, c, self.rows[k])
            hits = [k for k in work if k in self.rows]
        return work

    def add(self, vec: dict) -> dict | None:
        """Insert a vector; returns the new normalized pivot row, or None
        if the vector was already in the span."""
        work = self.reduce(vec)
        if not work:
            return None
        p = self.choose_pivot(work.keys())
        lead = work[p]
        row = {k: v / lead for k, v in work.items()}
        # keep existing rows reduced against the new pivot
        for q, other in self.rows.items():
            c = other.get(p)
            if c:
                self._axpy(other, c, row)
        self.rows[p] = row
        return row

    @property
    def dim(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[Hashable]:
        return list(self.rows.keys())

    def basis(self, sort_key: Callable[[Hashable], object] | None = None) -> list[dict]:
        keys = list(self.rows.keys())
        if sort_key is not None:
            keys.sort(key=sort_key)
        return [dict(self.rows[k]) for k in keys]


def kernel_of_columns(images: Sequence[dict]) -> list[Vec]:
    """Basis of {c : sum_j c_j * images[j] = 0} for sparse columns.

    The basis is canonical: one vector per free column, free columns in
    ascending index order, unit coefficient at the free column.
    """
    ncols = len(images)
    equations: dict[Hashable, dict[int, Fraction]] = {}
    for j, img in enumerate(images):
        for key, c in img.items():
            if c != 0:
                equations.setdefault(key, {})[j] = _q(c)
    ech = SparseEchelon(min)
    for key in sorted(equations.keys()):
        ech.add(equations[key])
    pivot_cols = set(ech.rows.keys())
    basis: list[Vec] = []
    for fc in range(ncols):
        if fc in pivot_cols:
            continue
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for pc, row in ech.rows.items():
            c = row.get(fc)
            if c:
                v[pc] = -c
        basis.append(v)
    return basis
