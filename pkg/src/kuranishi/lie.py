"""Nilpotent Lie algebras, invariant complex structures, and exterior calculus.

A :class:`LieAlgebra` stores exact structure constants on a fixed basis.
Compact descriptions use the classical shorthand in which position ``k`` of a
tuple lists the 2-form ``d e^k``; the sign convention throughout is

    (d a)(x, y) = -a([x, y]),

so a token ``"12"`` in slot 3 means ``d e^3 = e^1 ^ e^2``, i.e. the bracket
``[e_1, e_2] = -e_3``.

A :class:`ComplexStructure` is a choice of (1,0)-frame ``W_1..W_m`` inside the
complexified algebra.  It provides the classification predicates (integrable,
abelian, parallelizable), the frame-basis structure constants, and the
Chevalley-Eilenberg differential on (p,q)-forms split by target bidegree.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import ExactMatrix, inverse, kernel_basis, rref
from .scalars import GaussianRational, ONE, ZERO, format_rational, parse_rational

__all__ = [
    "LieAlgebra",
    "ComplexStructure",
    "JacobiError",
    "parse_salamon",
    "serialize_salamon",
    "form_basis",
    "ce_differential",
    "real_ce_differential",
]

Vector = tuple[GaussianRational, ...]


class JacobiError(ValueError):
    """Structure constants that do not satisfy the Jacobi identity."""


class LieAlgebra:
    """A finite-dimensional Lie algebra with exact structure constants.

    Brackets are stored for basis index pairs ``i < j`` (0-based) as sparse
    coefficient dicts; antisymmetry is built into the accessors.
    """

    __slots__ = ("dim", "brackets")

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object]],
        validate: bool = True,
    ) -> None:
        self.dim = dim
        table: dict[tuple[int, int], dict[int, GaussianRational]] = {}
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bad bracket index pair ({i}, {j}) for dim {dim}")
            clean = {
                k: GaussianRational.coerce(c)  # type: ignore[arg-type]
                for k, c in coeffs.items()
            }
            clean = {k: c for k, c in clean.items() if not c.is_zero()}
            for k in clean:
                if not 0 <= k < dim:
                    raise ValueError(f"bracket target index {k} out of range")
            if clean:
                table[(i, j)] = clean
        self.brackets = table
        if validate:
            failures = self.jacobi_failures()
            if failures:
                i, j, k = failures[0]
                raise JacobiError(
                    f"Jacobi identity fails on basis triple ({i + 1}, {j + 1}, {k + 1})"
                )

    @classmethod
    def from_entries(
        cls, dim: int, entries: Iterable[tuple[int, int, int, object]], validate: bool = True
    ) -> "LieAlgebra":
        """Build from 1-based ``(i, j, k, coeff)`` rows meaning [e_i, e_j] = sum coeff * e_k."""
        table: dict[tuple[int, int], dict[int, GaussianRational]] = {}
        for i, j, k, coeff in entries:
            if i == j:
                raise ValueError(f"bracket [e_{i}, e_{i}] must be zero")
            c = GaussianRational.coerce(coeff)  # type: ignore[arg-type]
            if i > j:
                i, j, c = j, i, -c
            slot = table.setdefault((i - 1, j - 1), {})
            slot[k - 1] = slot.get(k - 1, ZERO) + c
        return cls(dim, table, validate=validate)

    # -- bracket evaluation -------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> dict[int, GaussianRational]:
        """Coefficients of [e_i, e_j] (any index order; antisymmetric)."""
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket_vectors(self, u: Sequence[GaussianRational], v: Sequence[GaussianRational]) -> Vector:
        """Bilinear extension of the bracket to coordinate vectors."""
        out = [ZERO] * self.dim
        for (i, j), coeffs in self.brackets.items():
            factor = u[i] * v[j] - u[j] * v[i]
            if factor.is_zero():
                continue
            for k, c in coeffs.items():
                out[k] = out[k] + factor * c
        return tuple(out)

    # -- identities / invariants ------------------------------------------------

    def jacobi_failures(self) -> list[tuple[int, int, int]]:
        """Basis triples (i < j < k) on which the Jacobi identity fails."""
        failures = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    acc = [ZERO] * self.dim
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket_basis(b, c)
                        for t, coeff in inner.items():
                            outer = self.bracket_basis(a, t)
                            for s, c2 in outer.items():
                                acc[s] = acc[s] + coeff * c2
                    if any(not v.is_zero() for v in acc):
                        failures.append((i, j, k))
        return failures

    def lower_central_series(self) -> list[int]:
        """Dimensions of g = g^1 >= g^2 = [g, g^1] >= ... down to 0 (0 excluded)."""
        dims = [self.dim]
        current: list[Vector] = [
            tuple(ONE if t == i else ZERO for t in range(self.dim))
            for i in range(self.dim)
        ]
        while True:
            produced: list[Vector] = []
            for i in range(self.dim):
                basis_vec = tuple(ONE if t == i else ZERO for t in range(self.dim))
                for x in current:
                    w = self.bracket_vectors(basis_vec, x)
                    if any(not v.is_zero() for v in w):
                        produced.append(w)
            if not produced:
                return dims
            reduced, pivots = rref(ExactMatrix([list(v) for v in produced]))
            rank = len(pivots)
            if rank == 0:
                return dims
            dims.append(rank)
            current = [tuple(reduced.rows[r]) for r in range(rank)]
            if rank == dims[-2]:
                # series stalled at a nonzero term: not nilpotent
                dims.append(-1)
                return dims

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1] != -1

    def nilpotency_index(self) -> int:
        """Length of the lower central series (abelian algebras have index 1)."""
        series = self.lower_central_series()
        if series[-1] == -1:
            raise ValueError("algebra is not nilpotent")
        return len(series)

    def change_basis(self, p: ExactMatrix) -> "LieAlgebra":
        """Structure constants on the new basis f_i = sum_j p[j][i] e_j."""
        if p.nrows != self.dim or p.ncols != self.dim:
            raise ValueError("basis change matrix has wrong shape")
        p_inv = inverse(p)
        table: dict[tuple[int, int], dict[int, GaussianRational]] = {}
        cols = p.columns()
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                w = self.bracket_vectors(cols[i], cols[j])
                new = p_inv.apply(w)
                coeffs = {k: c for k, c in enumerate(new) if not c.is_zero()}
                if coeffs:
                    table[(i, j)] = coeffs
        return LieAlgebra(self.dim, table, validate=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.brackets == other.brackets

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, nonzero_pairs={len(self.brackets)})"


# -- compact description strings ------------------------------------------------

_TERM_RE = re.compile(r"^(?:([0-9]+(?:/[0-9]+)?)\*)?([1-9])([1-9])$")


def parse_salamon(text: str) -> LieAlgebra:
    """Parse a compact description such as ``"(0,0,0,0,0,12+34)"``.

    Slot ``k`` lists ``d e^k`` as a sum of two-digit tokens ``ij`` (``i < j``),
    each optionally scaled by a rational written ``p/q*ij``.  Both factor
    indices must be smaller than ``k``; the parsed constants must satisfy the
    Jacobi identity.
    """
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    slots = [s.strip() for s in body.split(",")]
    dim = len(slots)
    if dim < 1 or dim > 9:
        raise ValueError("compact descriptions support dimensions 1..9")
    table: dict[tuple[int, int], dict[int, GaussianRational]] = {}
    for k, slot in enumerate(slots):
        if slot == "0":
            continue
        for signed_term in _split_terms(slot, text):
            sign, term = signed_term
            match = _TERM_RE.match(term)
            if not match:
                raise ValueError(f"malformed term {term!r} in {text!r}")
            coeff_text, i_text, j_text = match.groups()
            i, j = int(i_text), int(j_text)
            if i >= j:
                raise ValueError(
                    f"token {term!r} in {text!r} must have increasing indices"
                )
            if j > k:
                raise ValueError(
                    f"token {term!r} in slot {k + 1} of {text!r} uses an index "
                    f"not smaller than the slot"
                )
            coeff = parse_rational(coeff_text) if coeff_text else Fraction(1)
            # d e^k includes coeff * e^i ^ e^j  =>  [e_i, e_j] = -coeff * e_k
            entry = GaussianRational(-(sign * coeff))
            slot_map = table.setdefault((i - 1, j - 1), {})
            slot_map[k] = slot_map.get(k, ZERO) + entry
    return LieAlgebra(dim, table, validate=True)


def _split_terms(slot: str, full: str) -> list[tuple[int, str]]:
    out: list[tuple[int, str]] = []
    token = ""
    sign = 1
    for ch in slot.replace(" ", ""):
        if ch in "+-" and token:
            out.append((sign, token))
            token = ""
            sign = 1 if ch == "+" else -1
        elif ch in "+-" and not token:
            if ch == "-":
                sign = -sign
        else:
            token += ch
    if not token:
        raise ValueError(f"empty term in {full!r}")
    out.append((sign, token))
    return out


def serialize_salamon(algebra: LieAlgebra) -> str:
    """Canonical compact description (inverse of :func:`parse_salamon`).

    Raises if any constant is non-real or any bracket does not point to a
    strictly higher basis index (the triangular shape the notation assumes).
    """
    slots = []
    for k in range(algebra.dim):
        terms = []
        for (i, j) in sorted(algebra.brackets):
            coeff = algebra.brackets[(i, j)].get(k)
            if coeff is None:
                continue
            if not coeff.is_real():
                raise ValueError("compact description needs real rational constants")
            if j >= k:
                raise ValueError(
                    f"bracket [e_{i + 1}, e_{j + 1}] -> e_{k + 1} violates the "
                    f"triangular shape of the notation"
                )
            value = -coeff.re  # d e^k carries -c^k_{ij}
            token = f"{i + 1}{j + 1}"
            if value == 1:
                terms.append(f"+{token}")
            elif value == -1:
                terms.append(f"-{token}")
            else:
                text = format_rational(abs(value))
                terms.append(f"{'+' if value > 0 else '-'}{text}*{token}")
        if terms:
            joined = "".join(terms)
            slots.append(joined[1:] if joined.startswith("+") else joined)
        else:
            slots.append("0")
    return "(" + ",".join(slots) + ")"


# -- complex structures ------------------------------------------------------------


class ComplexStructure:
    """A (1,0)-frame for an invariant almost-complex structure.

    ``frame[a]`` is the coordinate vector of ``W_{a+1}`` in the algebra's real
    basis, with exact Gaussian-rational entries.  The frame together with its
    conjugate must be a basis of the complexified algebra.
    """

    __slots__ = (
        "algebra",
        "m",
        "frame",
        "frame_matrix",
        "basis_matrix",
        "basis_inverse",
        "_constants",
    )

    def __init__(self, algebra: LieAlgebra, frame: Sequence[Sequence[object]]) -> None:
        if algebra.dim % 2 != 0:
            raise ValueError("complex structures need even dimension")
        m = algebra.dim // 2
        if len(frame) != m:
            raise ValueError(f"need {m} frame vectors, got {len(frame)}")
        vectors = [
            tuple(GaussianRational.coerce(v) for v in vec)  # type: ignore[arg-type]
            for vec in frame
        ]
        if any(len(v) != algebra.dim for v in vectors):
            raise ValueError("frame vector length mismatch")
        self.algebra = algebra
        self.m = m
        self.frame = vectors
        conjugates = [tuple(v.conjugate() for v in vec) for vec in vectors]
        self.frame_matrix = ExactMatrix.from_columns([list(v) for v in vectors])
        self.basis_matrix = ExactMatrix.from_columns(
            [list(v) for v in vectors] + [list(v) for v in conjugates]
        )
        try:
            self.basis_inverse = inverse(self.basis_matrix)
        except ValueError:
            raise ValueError(
                "frame and its conjugate do not span the complexified algebra"
            ) from None
        self._constants: dict[tuple[int, int], Vector] | None = None

    @classmethod
    def from_j_matrix(cls, algebra: LieAlgebra, j_rows: Sequence[Sequence[object]]) -> "ComplexStructure":
        """Build the frame as the +i eigenspace of an endomorphism J with J^2 = -1.

        Entries must be exact rationals; the eigenspace is extracted by exact
        kernel computation over the Gaussian rationals.
        """
        j = ExactMatrix(j_rows)
        if j.nrows != algebra.dim or j.ncols != algebra.dim:
            raise ValueError("J matrix has wrong shape")
        if any(not v.is_real() for row in j.rows for v in row):
            raise ValueError("J matrix entries must be real rationals")
        n = algebra.dim
        minus_identity = ExactMatrix.identity(n).scale(-1)
        if (j @ j) != minus_identity:
            raise ValueError("J^2 must be -identity")
        i_unit = GaussianRational(0, 1)
        shifted = j - ExactMatrix.identity(n).scale(i_unit)
        frame = kernel_basis(shifted)
        if len(frame) != n // 2:
            raise ValueError("the +i eigenspace has the wrong dimension")
        return cls(algebra, frame)

    # -- frame-basis structure constants -----------------------------------------

    def conjugate_vector(self, vec: Sequence[GaussianRational]) -> Vector:
        return tuple(v.conjugate() for v in vec)

    def frame_vector(self, alpha: int) -> Vector:
        """The alpha-th vector of the doubled frame (W_1..W_m, conj W_1..conj W_m)."""
        if alpha < self.m:
            return self.frame[alpha]
        return self.conjugate_vector(self.frame[alpha - self.m])

    def frame_constants(self) -> dict[tuple[int, int], Vector]:
        """Brackets of doubled-frame vectors in doubled-frame coordinates.

        Key (alpha, beta) with alpha < beta in 0..2m-1; value is the
        coordinate vector of [V_alpha, V_beta] in the doubled frame.
        """
        if self._constants is None:
            table: dict[tuple[int, int], Vector] = {}
            for alpha in range(2 * self.m):
                for beta in range(alpha + 1, 2 * self.m):
                    w = self.algebra.bracket_vectors(
                        self.frame_vector(alpha), self.frame_vector(beta)
                    )
                    coords = self.basis_inverse.apply(w)
                    if any(not c.is_zero() for c in coords):
                        table[(alpha, beta)] = coords
            self._constants = table
        return self._constants

    def frame_bracket(self, alpha: int, beta: int) -> Vector:
        """[V_alpha, V_beta] in doubled-frame coordinates (any index order)."""
        zero = tuple([ZERO] * (2 * self.m))
        if alpha == beta:
            return zero
        if alpha < beta:
            return self.frame_constants().get((alpha, beta), zero)
        flipped = self.frame_constants().get((beta, alpha), zero)
        return tuple(-c for c in flipped)

    # -- classification -------------------------------------------------------------

    def is_integrable(self) -> bool:
        """The (0,1)-part of [W_a, W_b] vanishes for all a < b."""
        for a in range(self.m):
            for b in range(a + 1, self.m):
                coords = self.frame_bracket(a, b)
                if any(not c.is_zero() for c in coords[self.m :]):
                    return False
        return True

    def integrability_failures(self) -> list[tuple[int, int]]:
        out = []
        for a in range(self.m):
            for b in range(a + 1, self.m):
                coords = self.frame_bracket(a, b)
                if any(not c.is_zero() for c in coords[self.m :]):
                    out.append((a + 1, b + 1))
        return out

    def is_abelian(self) -> bool:
        """[W_a, W_b] = 0 for all a, b (the frame spans an abelian subalgebra)."""
        for a in range(self.m):
            for b in range(a + 1, self.m):
                if any(not c.is_zero() for c in self.frame_bracket(a, b)):
                    return False
        return True

    def is_parallelizable(self) -> bool:
        """[W_a, conj W_b] = 0 for all a, b (frame brackets close holomorphically)."""
        for a in range(self.m):
            for b in range(self.m):
                coords = self.frame_bracket(a, self.m + b)
                if any(not c.is_zero() for c in coords):
                    return False
        return True

    def classify(self) -> dict[str, object]:
        return {
            "integrable": self.is_integrable(),
            "abelian": self.is_abelian(),
            "parallelizable": self.is_parallelizable(),
            "nilpotent": self.algebra.is_nilpotent(),
            "nilpotency_index": self.algebra.nilpotency_index()
            if self.algebra.is_nilpotent()
            else None,
        }

    def change_frame(self, q_columns: Sequence[Sequence[object]]) -> "ComplexStructure":
        """The same almost-complex structure on a new frame W' = W . Q."""
        q = ExactMatrix.from_columns([list(c) for c in q_columns])
        if q.nrows != self.m or q.ncols != self.m:
            raise ValueError("frame change must be m x m")
        inverse(q)  # raises if singular
        new_frame = (self.frame_matrix @ q).columns()
        return ComplexStructure(self.algebra, [list(v) for v in new_frame])


# -- exterior algebra of the doubled frame --------------------------------------------


def form_basis(m: int, p: int, q: int) -> list[tuple[int, ...]]:
    """Basis words of (p,q)-forms: ascending doubled-frame index tuples.

    A word lists the 1-form legs; indices < m are holomorphic legs, indices
    >= m are conjugate legs.  Ordering is lexicographic in (holomorphic part,
    conjugate part), matching ``itertools.combinations``.
    """
    from itertools import combinations

    words = []
    for hol in combinations(range(m), p):
        for anti in combinations(range(m, 2 * m), q):
            words.append(hol + anti)
    return words


def _normalize_word(seq: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
    """Sort a wedge word; return (sorted word, sign) or None when repeated."""
    items = list(seq)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b:
            return None
    return tuple(items), sign


def _coframe_differentials(structure: ComplexStructure) -> list[list[tuple[int, int, GaussianRational]]]:
    """d v^gamma as lists of (alpha, beta, coeff) with alpha < beta.

    From (d a)(x, y) = -a([x, y]):  d v^gamma = - sum_{alpha<beta}
    Gamma^gamma_{alpha beta} v^alpha ^ v^beta.
    """
    out: list[list[tuple[int, int, GaussianRational]]] = [
        [] for _ in range(2 * structure.m)
    ]
    for (alpha, beta), coords in structure.frame_constants().items():
        for gamma, coeff in enumerate(coords):
            if not coeff.is_zero():
                out[gamma].append((alpha, beta, -coeff))
    return out


def real_ce_differential(algebra: LieAlgebra, k: int) -> ExactMatrix:
    """The exterior differential on degree-k forms of the plain dual complex.

    Basis words are ascending index tuples from ``itertools.combinations``;
    the matrix maps degree-k coordinates to degree-(k+1) coordinates.
    """
    from itertools import combinations

    n = algebra.dim
    source = list(combinations(range(n), k))
    target = list(combinations(range(n), k + 1))
    index = {w: i for i, w in enumerate(target)}
    rows = [[ZERO] * len(source) for _ in range(len(target))]
    diffs: list[list[tuple[int, int, GaussianRational]]] = [[] for _ in range(n)]
    for (i, j), coeffs in algebra.brackets.items():
        for gamma, coeff in coeffs.items():
            diffs[gamma].append((i, j, -coeff))
    for col, word in enumerate(source):
        for slot, leg in enumerate(word):
            slot_sign = -1 if slot % 2 else 1
            rest = word[:slot] + word[slot + 1 :]
            for alpha, beta, coeff in diffs[leg]:
                normalized = _normalize_word((alpha, beta) + rest)
                if normalized is None:
                    continue
                new_word, perm_sign = normalized
                row = index[new_word]
                rows[row][col] = rows[row][col] + coeff * (slot_sign * perm_sign)
    return ExactMatrix(rows, ncols=len(source))


def ce_differential(
    structure: ComplexStructure, p: int, q: int
) -> dict[tuple[int, int], ExactMatrix]:
    """The exterior differential on (p,q)-forms, split by target bidegree.

    Returns matrices indexed by target bidegree, acting on coordinate columns
    over :func:`form_basis`.  Possible targets are (p+2, q-1), (p+1, q) and
    (p, q+1), intersected with the valid range; missing components are zero
    matrices.
    """
    m = structure.m
    source = form_basis(m, p, q)
    diffs = _coframe_differentials(structure)
    targets = {}
    for tp, tq in ((p + 2, q - 1), (p + 1, q), (p, q + 1)):
        if 0 <= tp <= m and 0 <= tq <= m:
            basis = form_basis(m, tp, tq)
            targets[(tp, tq)] = (basis, {w: i for i, w in enumerate(basis)}, [
                [ZERO] * len(source) for _ in range(len(basis))
            ])
    for col, word in enumerate(source):
        for slot, leg in enumerate(word):
            slot_sign = -1 if slot % 2 else 1
            rest = word[:slot] + word[slot + 1 :]
            for alpha, beta, coeff in diffs[leg]:
                normalized = _normalize_word((alpha, beta) + rest)
                if normalized is None:
                    continue
                new_word, perm_sign = normalized
                tp = sum(1 for x in new_word if x < m)
                tq = len(new_word) - tp
                bucket = targets.get((tp, tq))
                if bucket is None:
                    continue
                _, index, rows = bucket
                row = index[new_word]
                value = coeff * (slot_sign * perm_sign)
                rows[row][col] = rows[row][col] + value
    return {
        key: ExactMatrix(rows, ncols=len(source))
        for key, (basis, _, rows) in targets.items()
    }
