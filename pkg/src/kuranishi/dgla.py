"""Finite-dimensional differential graded Lie algebras with explicit bases.

A differential graded Lie algebra (DGLA) is presented here by a basis of
every graded piece, the matrices of its degree ``+1`` differential, and a
sparse table of structure constants for the graded bracket.  On top of the
container this module provides

* axiom validation (``d**2 = 0``, graded antisymmetry, the graded Leibniz
  rule, and the graded Jacobi identity), reporting human-readable failures;
* cohomology dimensions;
* direct sums;
* the canonical splitting of each graded piece into harmonic, exact, and
  coexact subspaces, together with the harmonic projection and the
  contracting homotopy that the deformation engine uses to solve the
  recursive deformation equation.

All choices are deterministic: harmonic representatives are kernel-basis
vectors reduced modulo a row-echelon basis of the exact subspace, kept in
kernel order, and the coexact complement consists of coordinate vectors at
pivot columns of the differential under a selectable pivot rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .linalg import ExactMatrix, Vector, inverse, kernel_basis, pivot_columns, rref
from .scalars import GaussianRational, ONE, ZERO

__all__ = [
    "Dgla",
    "DglaAxiomError",
    "HodgeDegree",
    "cohomology_dimensions",
    "dgla_axiom_failures",
    "direct_sum",
    "hodge_decomposition",
    "validate_dgla",
]

#: A basis element is addressed by ``(degree, position)``.
BasisKey = tuple[int, int]

#: Sparse bracket table: ``table[key_a, key_b]`` maps positions in degree
#: ``deg(a) + deg(b)`` to the coefficient of that basis vector in the bracket.
BracketTable = dict[tuple[BasisKey, BasisKey], dict[int, GaussianRational]]


class DglaAxiomError(ValueError):
    """Raised when a putative DGLA violates one of the defining axioms."""


def _clean_entry(entry: Mapping[int, object], target_dim: int) -> dict[int, GaussianRational]:
    cleaned: dict[int, GaussianRational] = {}
    for position, coeff in entry.items():
        if not 0 <= position < target_dim:
            raise ValueError(
                f"bracket target position {position} outside dimension {target_dim}"
            )
        value = GaussianRational.coerce(coeff)
        if not value.is_zero():
            cleaned[position] = value
    return cleaned


class Dgla:
    """A finite-dimensional DGLA with a distinguished basis in each degree.

    Parameters
    ----------
    basis : mapping of int to sequence of str
        Human-readable labels for the basis of each graded piece; degrees
        that are absent (or have no labels) are zero.
    differentials : mapping of int to ExactMatrix
        ``differentials[i]`` is the matrix of ``d : L^i -> L^{i+1}`` in the
        chosen bases; missing degrees denote the zero map.
    brackets : mapping
        Complete sparse bracket table including both orders of every pair;
        use :meth:`from_bracket_entries` to have the graded-antisymmetric
        mirrors filled in automatically.
    """

    def __init__(
        self,
        basis: Mapping[int, Sequence[str]],
        differentials: Mapping[int, ExactMatrix],
        brackets: Mapping[tuple[BasisKey, BasisKey], Mapping[int, object]],
    ) -> None:
        self.basis: dict[int, list[str]] = {
            degree: list(labels) for degree, labels in basis.items() if len(labels) > 0
        }
        self.differentials: dict[int, ExactMatrix] = {}
        for degree, matrix in differentials.items():
            expected = (self.dim(degree + 1), self.dim(degree))
            if (matrix.nrows, matrix.ncols) != expected:
                raise ValueError(
                    f"differential on degree {degree} has shape "
                    f"{(matrix.nrows, matrix.ncols)}, expected {expected}"
                )
            if not matrix.is_zero():
                self.differentials[degree] = matrix
        table: BracketTable = {}
        for (key_a, key_b), entry in brackets.items():
            for key in (key_a, key_b):
                degree, position = key
                if not 0 <= position < self.dim(degree):
                    raise ValueError(f"bracket key {key} is not a basis element")
            cleaned = _clean_entry(entry, self.dim(key_a[0] + key_b[0]))
            if cleaned:
                table[(key_a, key_b)] = cleaned
        self.brackets = table

    @classmethod
    def from_bracket_entries(
        cls,
        basis: Mapping[int, Sequence[str]],
        differentials: Mapping[int, ExactMatrix],
        entries: Mapping[tuple[BasisKey, BasisKey], Mapping[int, object]],
    ) -> "Dgla":
        """Build a DGLA, completing the bracket table by graded antisymmetry.

        Each supplied entry ``[x, y]`` induces ``[y, x] = -(-1)**(|x||y|) [x, y]``.
        Supplying both orders is allowed when they are consistent; an even
        diagonal entry ``[x, x] != 0`` is rejected outright.
        """
        completed: dict[tuple[BasisKey, BasisKey], dict[int, GaussianRational]] = {}
        for (key_a, key_b), entry in entries.items():
            value = {c: GaussianRational.coerce(v) for c, v in entry.items()}
            value = {c: v for c, v in value.items() if not v.is_zero()}
            sign = -ONE if (key_a[0] * key_b[0]) % 2 == 0 else ONE
            mirror = {c: v * sign for c, v in value.items()}
            if key_a == key_b and mirror != value:
                raise ValueError(
                    f"bracket of the even element {key_a} with itself must vanish"
                )
            for key, want in (((key_a, key_b), value), ((key_b, key_a), mirror)):
                have = completed.get(key)
                if have is None:
                    if want:
                        completed[key] = want
                elif have != want:
                    raise ValueError(f"inconsistent bracket entries for pair {key}")
        return cls(basis, differentials, completed)

    # -- structure access ------------------------------------------------

    def dim(self, degree: int) -> int:
        return len(self.basis.get(degree, ()))

    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def total_dimension(self) -> int:
        return sum(len(labels) for labels in self.basis.values())

    def label(self, degree: int, position: int) -> str:
        return self.basis[degree][position]

    def basis_keys(self) -> list[BasisKey]:
        return [(i, a) for i in self.degrees() for a in range(self.dim(i))]

    def basis_vector(self, degree: int, position: int) -> list[GaussianRational]:
        vec = [ZERO] * self.dim(degree)
        vec[position] = ONE
        return vec

    def differential_matrix(self, degree: int) -> ExactMatrix:
        matrix = self.differentials.get(degree)
        if matrix is None:
            return ExactMatrix.zeros(self.dim(degree + 1), self.dim(degree))
        return matrix

    def bracket_entry(self, key_a: BasisKey, key_b: BasisKey) -> dict[int, GaussianRational]:
        return self.brackets.get((key_a, key_b), {})

    # -- element operations ----------------------------------------------

    def apply_differential(
        self, degree: int, vec: Sequence[object], *, zero: object = ZERO
    ) -> list[object]:
        """Apply ``d`` to a degree-``degree`` coordinate vector.

        Works for scalar coordinates and for polynomial-valued coordinates
        (pass the polynomial ring's zero as ``zero``).
        """
        return self.differential_matrix(degree).apply_generic(vec, zero)

    def bracket_vectors(
        self,
        degree_a: int,
        u: Sequence[object],
        degree_b: int,
        v: Sequence[object],
        *,
        zero: object = ZERO,
    ) -> list[object]:
        """Bracket of two coordinate vectors, landing in ``degree_a + degree_b``.

        As with :meth:`apply_differential` the coordinates may be scalars or
        ring elements supporting ``+``, ``*`` and ``scale``.
        """
        if len(u) != self.dim(degree_a) or len(v) != self.dim(degree_b):
            raise ValueError("vector length mismatch")
        out = [zero] * self.dim(degree_a + degree_b)
        for a, ua in enumerate(u):
            if ua.is_zero():
                continue
            for b, vb in enumerate(v):
                if vb.is_zero():
                    continue
                entry = self.brackets.get(((degree_a, a), (degree_b, b)))
                if not entry:
                    continue
                product = ua * vb
                for c, coeff in entry.items():
                    out[c] = out[c] + product.scale(coeff)
        return out

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dgla):
            return NotImplemented
        return (
            self.basis == other.basis
            and {i: m for i, m in self.differentials.items()}
            == {i: m for i, m in other.differentials.items()}
            and self.brackets == other.brackets
        )

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        dims = ", ".join(f"{i}:{self.dim(i)}" for i in self.degrees())
        return f"Dgla(dims={{{dims}}})"


# -- axiom validation -------------------------------------------------------


def _add_scaled_entry(
    acc: dict[int, GaussianRational],
    coeff: GaussianRational,
    entry: Mapping[int, GaussianRational],
) -> None:
    for c, v in entry.items():
        w = acc.get(c, ZERO) + coeff * v
        if w.is_zero():
            acc.pop(c, None)
        else:
            acc[c] = w


def _pair_text(dgla: Dgla, key_a: BasisKey, key_b: BasisKey) -> str:
    return f"[{dgla.label(*key_a)}, {dgla.label(*key_b)}]"


def dgla_axiom_failures(dgla: Dgla, *, max_failures: int = 20) -> list[str]:
    """Human-readable list of axiom violations (empty when valid).

    Checks, in order: ``d`` squares to zero, the bracket is graded
    antisymmetric, the graded Leibniz rule, and the graded Jacobi identity.
    At most ``max_failures`` messages are collected.
    """
    failures: list[str] = []

    def full() -> bool:
        return len(failures) >= max_failures

    for i in dgla.degrees():
        square = dgla.differential_matrix(i + 1) @ dgla.differential_matrix(i)
        if not square.is_zero():
            failures.append(f"d(d(x)) is nonzero for x in degree {i}")
            if full():
                return failures

    for (key_a, key_b), entry in sorted(dgla.brackets.items()):
        sign = -ONE if (key_a[0] * key_b[0]) % 2 == 0 else ONE
        expected = {c: v * sign for c, v in entry.items()}
        if dgla.bracket_entry(key_b, key_a) != expected:
            failures.append(
                f"bracket is not graded-antisymmetric on {_pair_text(dgla, key_a, key_b)}"
            )
            if full():
                return failures

    keys = dgla.basis_keys()
    for key_a in keys:
        i, a = key_a
        d_a = dgla.differential_matrix(i).column(a)
        for key_b in keys:
            j, b = key_b
            lhs: dict[int, GaussianRational] = {}
            target = dgla.differential_matrix(i + j)
            for c, v in dgla.bracket_entry(key_a, key_b).items():
                _add_scaled_entry(lhs, v, dict(enumerate(target.column(c))))
            rhs: dict[int, GaussianRational] = {}
            for c, v in enumerate(d_a):
                if not v.is_zero():
                    rhs_entry = dgla.bracket_entry((i + 1, c), key_b)
                    _add_scaled_entry(rhs, v, rhs_entry)
            sign = ONE if i % 2 == 0 else -ONE
            for c, v in enumerate(dgla.differential_matrix(j).column(b)):
                if not v.is_zero():
                    _add_scaled_entry(rhs, v * sign, dgla.bracket_entry(key_a, (j + 1, c)))
            if lhs != rhs:
                failures.append(
                    f"Leibniz rule fails on {_pair_text(dgla, key_a, key_b)}"
                )
                if full():
                    return failures

    for key_x, key_y, key_z in combinations_with_replacement(keys, 3):
        entry_yz = dgla.bracket_entry(key_y, key_z)
        entry_zx = dgla.bracket_entry(key_z, key_x)
        entry_xy = dgla.bracket_entry(key_x, key_y)
        if not (entry_yz or entry_zx or entry_xy):
            continue
        i, j, k = key_x[0], key_y[0], key_z[0]
        total: dict[int, GaussianRational] = {}
        for outer, degree, entry, sign_exp in (
            (key_x, j + k, entry_yz, i * k),
            (key_y, k + i, entry_zx, j * i),
            (key_z, i + j, entry_xy, k * j),
        ):
            sign = ONE if sign_exp % 2 == 0 else -ONE
            for m, v in entry.items():
                _add_scaled_entry(total, v * sign, dgla.bracket_entry(outer, (degree, m)))
        if total:
            failures.append(
                "graded Jacobi identity fails on "
                f"({dgla.label(*key_x)}, {dgla.label(*key_y)}, {dgla.label(*key_z)})"
            )
            if full():
                return failures

    return failures


def validate_dgla(dgla: Dgla) -> None:
    """Raise :class:`DglaAxiomError` on the first axiom violation found."""
    failures = dgla_axiom_failures(dgla, max_failures=1)
    if failures:
        raise DglaAxiomError(failures[0])


# -- cohomology and direct sums ---------------------------------------------


def cohomology_dimensions(dgla: Dgla) -> dict[int, int]:
    """Dimension of ``ker d / im d`` in every nonzero degree."""
    dims: dict[int, int] = {}
    for i in dgla.degrees():
        rank_here = len(rref(dgla.differential_matrix(i))[1])
        rank_below = len(rref(dgla.differential_matrix(i - 1))[1])
        dims[i] = dgla.dim(i) - rank_here - rank_below
    return dims


def _block_diagonal(top_left: ExactMatrix, bottom_right: ExactMatrix) -> ExactMatrix:
    nrows = top_left.nrows + bottom_right.nrows
    ncols = top_left.ncols + bottom_right.ncols
    rows = [[ZERO] * ncols for _ in range(nrows)]
    for r in range(top_left.nrows):
        rows[r][: top_left.ncols] = list(top_left.rows[r])
    for r in range(bottom_right.nrows):
        rows[top_left.nrows + r][top_left.ncols :] = list(bottom_right.rows[r])
    return ExactMatrix(rows, ncols=ncols)


def direct_sum(left: Dgla, right: Dgla) -> Dgla:
    """Direct sum, with the left block's basis listed first in each degree.

    The two summands do not interact: all cross brackets vanish.
    """
    degrees = sorted(set(left.degrees()) | set(right.degrees()))
    basis = {
        i: list(left.basis.get(i, [])) + list(right.basis.get(i, [])) for i in degrees
    }
    differentials = {
        i: _block_diagonal(left.differential_matrix(i), right.differential_matrix(i))
        for i in degrees
    }
    brackets: BracketTable = {}
    for (key_a, key_b), entry in left.brackets.items():
        brackets[(key_a, key_b)] = dict(entry)
    for ((i, a), (j, b)), entry in right.brackets.items():
        shifted = {c + left.dim(i + j): v for c, v in entry.items()}
        brackets[((i, a + left.dim(i)), (j, b + left.dim(j)))] = shifted
    return Dgla(basis, differentials, brackets)


# -- harmonic / exact / coexact splitting ------------------------------------


@dataclass
class HodgeDegree:
    """Canonical splitting of one graded piece ``L^i = H + im(d) + A``.

    Attributes
    ----------
    degree : int
        The graded degree this record describes.
    harmonic : list of vectors
        Canonical representatives of cohomology classes: kernel-basis
        vectors reduced modulo the exact subspace, kept in kernel order.
    image : list of vectors
        Basis of ``d(L^{i-1})``: images of the coordinate vectors at the
        pivot columns of the incoming differential.
    coexact : list of vectors
        Coordinate vectors at the pivot columns of the outgoing
        differential; ``d`` is injective on their span ``A``.
    projection : ExactMatrix
        Projection of ``L^i`` onto the span of ``harmonic`` along
        ``im(d) + A``.
    homotopy : ExactMatrix
        The contracting homotopy ``delta : L^i -> L^{i-1}``; it inverts
        ``d`` on the exact subspace, vanishes on the harmonic and coexact
        summands, and takes values in the coexact part of ``L^{i-1}``.
    harmonic_coordinates : ExactMatrix
        Rows give the coordinates of the harmonic component of a vector
        with respect to ``harmonic``.
    """

    degree: int
    harmonic: list[Vector]
    image: list[Vector]
    coexact: list[Vector]
    projection: ExactMatrix
    homotopy: ExactMatrix
    harmonic_coordinates: ExactMatrix


def _echelon_reduce(
    vec: Sequence[GaussianRational],
    rows: Sequence[Sequence[GaussianRational]],
    pivots: Sequence[int],
) -> list[GaussianRational]:
    out = list(vec)
    for row, pivot in zip(rows, pivots):
        c = out[pivot]
        if not c.is_zero():
            out = [x - c * r for x, r in zip(out, row)]
    return out


def _harmonic_representatives(
    kernel: Sequence[Vector], image_vectors: Sequence[Vector], n: int
) -> list[Vector]:
    if image_vectors:
        reduced_img, img_pivots = rref(ExactMatrix(list(image_vectors), ncols=n))
        img_rows = reduced_img.rows[: len(img_pivots)]
    else:
        img_rows, img_pivots = [], ()
    reps: list[Vector] = []
    seen_rows: list[list[GaussianRational]] = []
    seen_pivots: list[int] = []
    for vec in kernel:
        reduced = _echelon_reduce(vec, img_rows, img_pivots)
        probe = _echelon_reduce(reduced, seen_rows, seen_pivots)
        lead = next((c for c, x in enumerate(probe) if not x.is_zero()), None)
        if lead is None:
            continue
        reps.append(tuple(reduced))
        inv = probe[lead].inverse()
        seen_rows.append([x * inv for x in probe])
        seen_pivots.append(lead)
    return reps


def hodge_decomposition(dgla: Dgla, pivot_rule: str = "earliest") -> dict[int, HodgeDegree]:
    """Split every graded piece into harmonic, exact, and coexact parts.

    ``pivot_rule`` selects which coordinate vectors span the coexact
    complements (see :func:`kuranishi.linalg.pivot_columns`).  Harmonic
    representatives are independent of the rule; the homotopy and the
    projection are not.
    """
    result: dict[int, HodgeDegree] = {}
    for i in dgla.degrees():
        n = dgla.dim(i)
        outgoing = dgla.differential_matrix(i)
        incoming = dgla.differential_matrix(i - 1)
        below_pivots = pivot_columns(incoming, pivot_rule)
        image_vectors = [incoming.column(p) for p in below_pivots]
        here_pivots = pivot_columns(outgoing, pivot_rule)
        coexact_vectors: list[Vector] = []
        for p in here_pivots:
            unit = [ZERO] * n
            unit[p] = ONE
            coexact_vectors.append(tuple(unit))
        kernel = kernel_basis(outgoing)
        harmonic = _harmonic_representatives(kernel, image_vectors, n)
        h = len(harmonic)
        if h != len(kernel) - len(image_vectors):
            raise RuntimeError(
                f"harmonic count mismatch in degree {i}: the exact subspace "
                "is not contained in the kernel"
            )
        change = ExactMatrix.from_columns(
            [list(v) for v in harmonic + list(image_vectors) + coexact_vectors],
            nrows=n,
        )
        change_inv = inverse(change)
        coords = ExactMatrix(list(change_inv.rows[:h]), ncols=n)
        image_coords = ExactMatrix(
            list(change_inv.rows[h : h + len(image_vectors)]), ncols=n
        )
        projection = ExactMatrix.from_columns(
            [list(v) for v in harmonic], nrows=n
        ) @ coords
        dim_below = dgla.dim(i - 1)
        homotopy = ExactMatrix.from_columns(
            [list(dgla.basis_vector(i - 1, p)) for p in below_pivots], nrows=dim_below
        ) @ image_coords
        result[i] = HodgeDegree(
            degree=i,
            harmonic=harmonic,
            image=list(image_vectors),
            coexact=coexact_vectors,
            projection=projection,
            homotopy=homotopy,
            harmonic_coordinates=coords,
        )
    return result
