"""Lie algebras from structure constants.

Brackets are stored only for i < j, so antisymmetry holds by
construction; the Jacobi identity is validated when an algebra is
built.  All linear data lives over exact rationals.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .linalg import Mat, Vec, mat_eq_zero, mat_mul, mat_sub, rref
from .poly import (DEGREVLEX, MonomialOrder, Polynomial, _q,
                   apply_derivation, monomials_of_degree)


class LieAlgebraError(ValueError):
    pass


class JacobiViolationError(LieAlgebraError):
    """Raised when a structure-constant table violates the Jacobi identity.

    Indices are 1-based to match the input format; ``residual`` is the
    coordinate vector of [vi,[vj,vk]] + [vj,[vk,vi]] + [vk,[vi,vj]].
    """

    def __init__(self, i: int, j: int, k: int, residual: Vec):
        self.indices = (i, j, k)
        self.residual = residual
        super().__init__(
            f"Jacobi identity fails on (v{i}, v{j}, v{k}); residual {residual}")


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n in reduced row echelon form (canonical)."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_spanning(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [[_q(x) for x in v] for v in vectors]
        reduced, _ = rref(rows)
        return cls(ambient_dim, tuple(tuple(r) for r in reduced))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vector: Sequence) -> bool:
        rows = [list(b) for b in self.basis] + [[_q(x) for x in vector]]
        return len(rref(rows)[1]) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)


class LieAlgebra:
    """A finite dimensional Lie algebra with a named basis.

    ``brackets`` maps (i, j) with 0 <= i < j < dim to a coefficient
    dict {k: Fraction} describing [v_i, v_j] = sum_k c_k v_k.
    """

    def __init__(self, names: Sequence[str],
                 brackets: Mapping[tuple[int, int], Mapping[int, object]],
                 label: str | None = None, validate: bool = True):
        names = tuple(str(x) for x in names)
        if not names:
            raise LieAlgebraError("need at least one basis vector")
        if len(set(names)) != len(names):
            raise LieAlgebraError("basis names must be distinct")
        for name in names:
            # must survive the polynomial text form round trip
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise LieAlgebraError(f"basis name {name!r} is not an identifier")
        n = len(names)
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < j < n):
                raise LieAlgebraError(
                    f"bracket key ({i}, {j}) must satisfy 0 <= i < j < {n}")
            row = {}
            for k, c in coeffs.items():
                if not 0 <= k < n:
                    raise LieAlgebraError(f"bracket target index {k} out of range")
                c = _q(c)
                if c != 0:
                    row[k] = c
            if row:
                table[(i, j)] = row
        self.names = names
        self.dim = n
        self.brackets = table
        self.label = label or "lie-algebra"
        self._ad_cache: list[Mat] | None = None
        if validate:
            self._check_jacobi()

    # -- basic structure -----------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> Vec:
        """[v_i, v_j] as a coordinate vector; sign handled for any i, j."""
        n = self.dim
        out = [Fraction(0)] * n
        if i == j:
            return out
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self.brackets.get((i, j), {}).items():
            out[k] = sign * c
        return out

    def bracket(self, x: Sequence, y: Sequence) -> Vec:
        """Bilinear extension of the bracket to coordinate vectors."""
        n = self.dim
        out = [Fraction(0)] * n
        xv = [_q(a) for a in x]
        yv = [_q(a) for a in y]
        for i in range(n):
            if xv[i] == 0:
                continue
            for j in range(n):
                if yv[j] == 0:
                    continue
                c = xv[i] * yv[j]
                for k, v in enumerate(self.bracket_basis(i, j)):
                    if v:
                        out[k] += c * v
        return out

    def _check_jacobi(self):
        n = self.dim
        for i in range(n):
            ei = [Fraction(1 if t == i else 0) for t in range(n)]
            for j in range(i + 1, n):
                ej = [Fraction(1 if t == j else 0) for t in range(n)]
                for k in range(j + 1, n):
                    ek = [Fraction(1 if t == k else 0) for t in range(n)]
                    r1 = self.bracket(ei, self.bracket_basis(j, k))
                    r2 = self.bracket(ej, self.bracket_basis(k, i))
                    r3 = self.bracket(ek, self.bracket_basis(i, j))
                    residual = [a + b + c for a, b, c in zip(r1, r2, r3)]
                    if any(x != 0 for x in residual):
                        raise JacobiViolationError(i + 1, j + 1, k + 1, residual)

    def ad_matrix(self, i: int) -> Mat:
        """Matrix of ad(v_i) on degree one: column j = [v_i, v_j]."""
        cols = [self.bracket_basis(i, j) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def ad_of_vector(self, x: Sequence) -> Mat:
        n = self.dim
        cols = [self.bracket(x, [1 if t == j else 0 for t in range(n)])
                for j in range(n)]
        return [[cols[j][k] for j in range(n)] for k in range(n)]

    def bracket_images(self, x: Sequence) -> list[Polynomial]:
        """[x, v_j] as degree-one polynomials, one per basis vector."""
        n = self.dim
        return [Polynomial.from_vector(
            self.bracket(x, [1 if t == j else 0 for t in range(n)]))
            for j in range(n)]

    # -- derived objects -------------------------------------------------------

    def structure_matrix(self) -> "SkewPolyMatrix":
        n = self.dim
        entries = [[Polynomial.zero(n)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i != j:
                    entries[i][j] = Polynomial.from_vector(self.bracket_basis(i, j))
        return SkewPolyMatrix(n, tuple(tuple(row) for row in entries))

    def center(self) -> Subspace:
        n = self.dim
        rows = []
        for j in range(n):
            for k in range(n):
                rows.append([self.bracket_basis(i, j)[k] for i in range(n)])
        return Subspace.from_spanning(linalg.nullspace(rows, n), n)

    def derived_subalgebra(self) -> Subspace:
        vectors = [self.bracket_basis(i, j)
                   for i in range(self.dim) for j in range(i + 1, self.dim)]
        return Subspace.from_spanning(vectors, self.dim)

    @property
    def is_abelian(self) -> bool:
        return not self.brackets

    def is_nilpotent(self) -> bool:
        """Lower central series reaches zero."""
        current = self.derived_subalgebra()
        while current.dim:
            vectors = []
            for i in range(self.dim):
                ei = [1 if t == i else 0 for t in range(self.dim)]
                for w in current.basis:
                    vectors.append(self.bracket(ei, w))
            nxt = Subspace.from_spanning(vectors, self.dim)
            if nxt.dim == current.dim:
                return False
            current = nxt
        return True

    def is_perfect(self) -> bool:
        return self.derived_subalgebra().dim == self.dim

    def unimodular(self) -> bool:
        return all(linalg.trace(self.ad_matrix(i)) == 0 for i in range(self.dim))

    # -- graded action ----------------------------------------------------------

    def apply_ad(self, x: Sequence, f: Polynomial) -> Polynomial:
        """ad(x) extended as a derivation of the symmetric algebra."""
        return apply_derivation(f, self.bracket_images(x))

    def ad_on_graded(self, x: Sequence, degree: int,
                     order: MonomialOrder = DEGREVLEX) -> tuple[list, Mat]:
        """Matrix of ad(x) on the degree-``degree`` component.

        Returns (basis monomials descending under ``order``, matrix);
        column j holds the coordinates of ad(x) applied to monomial j.
        """
        if degree < 1:
            raise ValueError("degree must be >= 1")
        basis = monomials_of_degree(self.dim, degree, order)
        index = {m: t for t, m in enumerate(basis)}
        images = self.bracket_images(x)
        matrix = [[Fraction(0)] * len(basis) for _ in range(len(basis))]
        for j, m in enumerate(basis):
            img = apply_derivation(Polynomial._new(self.dim, {m: Fraction(1)}),
                                   images)
            for mm, c in img.terms.items():
                matrix[index[mm]][j] = c
        return basis, matrix

    # -- subalgebras -------------------------------------------------------------

    def induced_algebra(self, basis_vectors: Sequence[Sequence],
                        names: Sequence[str], label: str | None = None) -> "LieAlgebra":
        """The Lie algebra structure on the span of independent vectors.

        Raises if the span is not closed under the bracket.
        """
        vecs = [[_q(x) for x in v] for v in basis_vectors]
        m = len(vecs)
        span = Subspace.from_spanning(vecs, self.dim)
        if span.dim != m:
            raise LieAlgebraError("basis vectors are not independent")
        cols = [[vecs[t][r] for t in range(m)] for r in range(self.dim)]
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i in range(m):
            for j in range(i + 1, m):
                w = self.bracket(vecs[i], vecs[j])
                coords = linalg.solve(cols, w)
                if coords is None:
                    raise LieAlgebraError(
                        "span is not closed under the bracket")
                row = {k: c for k, c in enumerate(coords) if c != 0}
                if row:
                    table[(i, j)] = row
        return LieAlgebra(names, table, label=label)

    # -- serialization -------------------------------------------------------------

    def to_json_dict(self) -> dict:
        entries = []
        for (i, j) in sorted(self.brackets):
            coeffs = {str(k + 1): str(c) for k, c in
                      sorted(self.brackets[(i, j)].items())}
            entries.append({"i": i + 1, "j": j + 1, "coeffs": coeffs})
        return {"name": self.label, "basis": list(self.names),
                "brackets": entries}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "LieAlgebra":
        try:
            names = list(data["basis"])
            raw = data.get("brackets", [])
        except (KeyError, TypeError) as exc:
            raise LieAlgebraError(f"malformed algebra description: {exc}")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for entry in raw:
            try:
                i, j = int(entry["i"]), int(entry["j"])
                coeffs = entry["coeffs"]
            except (KeyError, TypeError, ValueError) as exc:
                raise LieAlgebraError(f"malformed bracket entry: {exc}")
            if not 1 <= i < j <= len(names):
                raise LieAlgebraError(
                    f"bracket indices ({i}, {j}) must satisfy 1 <= i < j <= dim")
            if (i - 1, j - 1) in table:
                raise LieAlgebraError(f"duplicate bracket entry ({i}, {j})")
            row = {}
            for k, c in coeffs.items():
                row[int(k) - 1] = Fraction(str(c))
            table[(i - 1, j - 1)] = row
        return cls(names, table, label=data.get("name"))

    @classmethod
    def from_json(cls, text: str) -> "LieAlgebra":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LieAlgebraError(f"invalid JSON: {exc}")
        return cls.from_json_dict(data)

    def __repr__(self):
        return f"LieAlgebra({self.label!r}, dim={self.dim})"

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.names == other.names
                and self.brackets == other.brackets)


@dataclass(frozen=True)
class SkewPolyMatrix:
    """The structure matrix: entry (i, j) is the bracket [v_i, v_j] as a
    degree-one polynomial.  Skew-symmetric with zero diagonal."""

    size: int
    entries: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        for i in range(self.size):
            if not self.entries[i][i].is_zero:
                raise ValueError("diagonal must vanish")
            for j in range(self.size):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError("matrix must be skew-symmetric")

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        return self.entries[ij[0]][ij[1]]

    def evaluate(self, point: Sequence) -> Mat:
        return [[self.entries[i][j].evaluate(point) for j in range(self.size)]
                for i in range(self.size)]

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.entries for e in row)


def jordan_chevalley(d: Mat) -> tuple[Mat, Mat]:
    """Split a rational square matrix D = D_s + D_p with D_s semisimple,
    D_p nilpotent, both commuting polynomials in D.

    Newton iteration against the squarefree part of the characteristic
    polynomial; all arithmetic stays rational.
    """
    n = len(d)
    if n == 0:
        return [], []
    for row in d:
        if len(row) != n:
            raise ValueError("matrix must be square")
    d = [[_q(x) for x in row] for row in d]
    chi = linalg.charpoly(d)
    s = linalg.squarefree_part(chi)
    sprime = s.partial_derivative(0)
    x = [row[:] for row in d]
    # converges quadratically along the nilpotent filtration
    for _ in range(n.bit_length() + 2):
        sx = linalg.poly_of_matrix(s, x)
        if mat_eq_zero(sx):
            break
        inv = linalg.inverse(linalg.poly_of_matrix(sprime, x))
        x = mat_sub(x, mat_mul(inv, sx))
    else:  # pragma: no cover
        raise AssertionError("Jordan-Chevalley iteration failed to converge")
    ds = x
    dp = mat_sub(d, ds)
    # defining checks: commuting, nilpotent, semisimple
    assert mat_eq_zero(mat_sub(mat_mul(ds, dp), mat_mul(dp, ds)))
    power = dp
    for _ in range(n):
        if mat_eq_zero(power):
            break
        power = mat_mul(power, dp)
    assert mat_eq_zero(power), "nilpotent part is not nilpotent"
    ms = linalg.minimal_polynomial(ds)
    assert linalg.squarefree_part(ms) == ms.monic(), \
        "semisimple part has a non-squarefree minimal polynomial"
    return ds, dp


def is_derivation(g: LieAlgebra, d: Mat) -> bool:
    """Check D[x,y] = [Dx,y] + [x,Dy] on all basis pairs."""
    n = g.dim
    cols = [[d[r][c] for r in range(n)] for c in range(n)]
    for i in range(n):
        ei = [1 if t == i else 0 for t in range(n)]
        for j in range(i + 1, n):
            ej = [1 if t == j else 0 for t in range(n)]
            lhs = linalg.mat_vec(d, g.bracket_basis(i, j))
            rhs1 = g.bracket(cols[i], ej)
            rhs2 = g.bracket(ei, cols[j])
            if any(a != b + c for a, b, c in zip(lhs, rhs1, rhs2)):
                return False
    return True
