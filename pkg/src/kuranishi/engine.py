"""Kuranishi-space engine: deformation series, obstruction ideals, germs.

Given a DGLA built by :mod:`kuranishi.builders`, this module

* sets up the deformation problem: parameters indexed by the canonical
  harmonic representatives of degree one, and the polynomial-valued linear
  term of the deformation series;
* expands the series recursively, degree by degree — the degree-k
  correction is ``-1/2`` times the contracting homotopy applied to the
  degree-k part of the self-bracket — and collects the per-degree
  obstruction coordinates (harmonic components of the self-bracket);
* certifies exactness of the resulting obstruction ideal by one of three
  routes (termination doubling, bracket closure of the harmonic span, or a
  rational fixed point for the correction tail), falling back to an honest
  truncation that refuses to certify;
* decides smoothness of the resulting cone germ through a decision tree
  whose workhorse is a budgeted decomposition of the variety into linear
  leaves;
* compares a joint germ with the product of its block germs and issues a
  splitting verdict.

Everything is exact over the Gaussian rationals; no step depends on
floating point or on randomized choices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .dgla import Dgla, HodgeDegree, cohomology_dimensions, hodge_decomposition
from .groebner import (
    ideal_equal,
    minimalize_generators,
    normal_form,
    reduced_groebner_basis,
)
from .linalg import ExactMatrix, Vector, rref
from .poly import (
    MultiPoly,
    PolyRing,
    poly_matrix_det,
    pure_linear_power,
    quadric_split,
)
from .scalars import GaussianRational, ONE, ZERO

__all__ = [
    "GermInvariants",
    "KuranishiProblem",
    "SeriesAnalysis",
    "SplittingAssessment",
    "assess_splitting",
    "analyze_obstructions",
    "expand_series",
    "germ_invariants",
    "kuranishi_problem",
]

MINUS_HALF = GaussianRational(Fraction(-1, 2))


# -- problem setup ------------------------------------------------------------


@dataclass
class KuranishiProblem:
    """A DGLA together with the canonical data the series expansion needs."""

    dgla: Dgla
    hodge: dict[int, HodgeDegree]
    ring: PolyRing
    parameters: list[str]
    harmonic_reps: list[Vector]
    linear_term: list[MultiPoly]
    pivot_rule: str

    def homotopy(self, degree: int) -> ExactMatrix:
        record = self.hodge.get(degree)
        if record is not None:
            return record.homotopy
        return ExactMatrix.zeros(self.dgla.dim(degree - 1), self.dgla.dim(degree))


def kuranishi_problem(
    dgla: Dgla,
    parameter_names: Sequence[str] | None = None,
    *,
    prefix: str = "t",
    pivot_rule: str = "earliest",
) -> KuranishiProblem:
    """Set up the deformation problem of a DGLA.

    Parameters are named ``prefix1, prefix2, ...`` (or explicitly via
    ``parameter_names``), one per canonical degree-one harmonic
    representative, in kernel-basis order.
    """
    hodge = hodge_decomposition(dgla, pivot_rule)
    reps = hodge[1].harmonic if 1 in hodge else []
    if parameter_names is None:
        names = [f"{prefix}{i + 1}" for i in range(len(reps))]
    else:
        names = list(parameter_names)
        if len(names) != len(reps):
            raise ValueError(
                f"{len(names)} parameter names for {len(reps)} harmonic directions"
            )
    ring = PolyRing(names)
    linear = [ring.zero() for _ in range(dgla.dim(1))]
    for name, rep in zip(names, reps):
        variable = ring.var(name)
        for position, coeff in enumerate(rep):
            if not coeff.is_zero():
                linear[position] = linear[position] + variable.scale(coeff)
    return KuranishiProblem(
        dgla=dgla,
        hodge=hodge,
        ring=ring,
        parameters=names,
        harmonic_reps=list(reps),
        linear_term=linear,
        pivot_rule=pivot_rule,
    )


# -- series expansion ---------------------------------------------------------


def _vector_is_zero(vec: Sequence[MultiPoly]) -> bool:
    return all(p.is_zero() for p in vec)


def _harmonic_poly_coordinates(
    problem: KuranishiProblem, degree: int, vec: Sequence[MultiPoly]
) -> list[MultiPoly]:
    record = problem.hodge.get(degree)
    if record is None or not record.harmonic:
        return []
    return record.harmonic_coordinates.apply_generic(vec, problem.ring.zero())


def expand_series(
    problem: KuranishiProblem, order: int
) -> tuple[dict[int, list[MultiPoly]], dict[int, list[MultiPoly]]]:
    """Expand the deformation series and its obstructions up to ``order``.

    Returns ``(series, obstructions)``: ``series[k]`` is the degree-k term
    of the series as a polynomial-valued degree-one coordinate vector
    (``series[1]`` is the linear term) and ``obstructions[k]`` lists the
    harmonic coordinates of the degree-k part of the self-bracket, one
    homogeneous polynomial per degree-two harmonic direction.
    """
    ring = problem.ring
    zero = ring.zero()
    dgla = problem.dgla
    series: dict[int, list[MultiPoly]] = {1: list(problem.linear_term)}
    obstructions: dict[int, list[MultiPoly]] = {}
    homotopy2 = problem.homotopy(2)
    for k in range(2, order + 1):
        self_bracket = [zero] * dgla.dim(2)
        for i in range(1, k):
            j = k - i
            if i > j:
                break
            if i not in series or j not in series:
                continue
            term = dgla.bracket_vectors(1, series[i], 1, series[j], zero=zero)
            factor = ONE if i == j else GaussianRational(2)
            self_bracket = [
                acc + value.scale(factor) for acc, value in zip(self_bracket, term)
            ]
        obstructions[k] = _harmonic_poly_coordinates(problem, 2, self_bracket)
        correction = homotopy2.apply_generic(self_bracket, zero)
        series[k] = [p.scale(MINUS_HALF) for p in correction]
        for p in series[k]:
            if not p.is_zero() and not (
                p.is_homogeneous() and p.total_degree() == k
            ):
                raise RuntimeError(
                    f"series term of degree {k} is not homogeneous of degree {k}"
                )
    return series, obstructions


# -- exactness certificates ---------------------------------------------------


class _EchelonSpan:
    """Fully reduced row-echelon span tracker over the Gaussian rationals.

    Rows are kept monic at their pivot and eliminated in every other row,
    so membership, growth, and coordinate extraction are all direct.
    """

    def __init__(self, length: int) -> None:
        self.length = length
        self.rows: list[list[GaussianRational]] = []
        self.pivots: list[int] = []

    def reduce(self, vec: Sequence[GaussianRational]) -> list[GaussianRational]:
        out = list(vec)
        for row, pivot in zip(self.rows, self.pivots):
            c = out[pivot]
            if not c.is_zero():
                out = [x - c * r for x, r in zip(out, row)]
        return out

    def add(self, vec: Sequence[GaussianRational]) -> bool:
        """Insert a vector; report whether the span grew."""
        reduced = self.reduce(vec)
        pivot = next((i for i, x in enumerate(reduced) if not x.is_zero()), None)
        if pivot is None:
            return False
        inv = reduced[pivot].inverse()
        new_row = [x * inv for x in reduced]
        for row in self.rows:
            c = row[pivot]
            if not c.is_zero():
                for i in range(self.length):
                    row[i] = row[i] - c * new_row[i]
        position = next(
            (i for i, p in enumerate(self.pivots) if p > pivot), len(self.pivots)
        )
        self.rows.insert(position, new_row)
        self.pivots.insert(position, pivot)
        return True

    def contains(self, vec: Sequence[GaussianRational]) -> bool:
        return all(x.is_zero() for x in self.reduce(vec))

    def coordinates(self, vec: Sequence[GaussianRational]) -> list[GaussianRational] | None:
        """Coordinates w.r.t. the echelon rows, or None if not in the span."""
        if not self.contains(vec):
            return None
        return [vec[p] for p in self.pivots]


def _delta_bracket(
    problem: KuranishiProblem,
    u: Sequence[GaussianRational],
    v: Sequence[GaussianRational],
) -> Vector:
    bracket = problem.dgla.bracket_vectors(1, list(u), 1, list(v))
    return tuple(problem.homotopy(2).apply(bracket))


def _closure_certificate(problem: KuranishiProblem, saturation_cap: int = 64) -> dict | None:
    """Bracket-closure certificate: every obstruction vanishes identically.

    Saturates the span of the degree-one harmonic representatives under the
    homotopy-corrected bracket; if the saturation closes up and all
    harmonic components of brackets of the saturated span vanish, every
    series term stays inside the span and every obstruction is zero.
    """
    n = problem.dgla.dim(1)
    span = _EchelonSpan(n)
    for rep in problem.harmonic_reps:
        span.add(rep)
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        if rounds > saturation_cap:
            return None
        basis = [list(row) for row in span.rows]
        for u in basis:
            for v in basis:
                if span.add(_delta_bracket(problem, u, v)):
                    changed = True
    basis = [list(row) for row in span.rows]
    record = problem.hodge.get(2)
    for u in basis:
        for v in basis:
            bracket = problem.dgla.bracket_vectors(1, u, 1, v)
            if record is not None and record.harmonic:
                coords = record.harmonic_coordinates.apply(bracket)
                if any(not c.is_zero() for c in coords):
                    return None
    return {"spanDimension": len(basis)}


def _rational_certificate(
    problem: KuranishiProblem,
    series: dict[int, list[MultiPoly]],
    obstructions: dict[int, list[MultiPoly]],
) -> tuple[dict, dict[int, list[MultiPoly]]] | None:
    """Rational-fixed-point certificate for the correction tail.

    Saturates the span of homotopy-corrected harmonic brackets under
    bracketing with single harmonic directions; requires the span to
    bracket to zero with itself after the homotopy.  The correction tail
    then solves a linear system over the parameter field, the obstruction
    generating function times ``q**2`` (``q`` the system determinant,
    ``q(0) = 1``) is a polynomial of some degree ``D``, and a recurrence
    shows all obstructions above degree ``D`` are redundant.

    Returns certificate metadata plus the complete obstruction table up to
    degree ``D``, or None when the route does not apply.
    """
    ring = problem.ring
    zero = ring.zero()
    dgla = problem.dgla
    n = dgla.dim(1)
    reps = problem.harmonic_reps
    span = _EchelonSpan(n)
    for u in reps:
        for v in reps:
            span.add(_delta_bracket(problem, u, v))
    changed = True
    while changed:
        changed = False
        for rep in reps:
            for row in [list(r) for r in span.rows]:
                if span.add(_delta_bracket(problem, rep, row)):
                    changed = True
    basis = [list(row) for row in span.rows]
    width = len(basis)
    for u in basis:
        for v in basis:
            if any(not c.is_zero() for c in _delta_bracket(problem, u, v)):
                return None

    x1 = problem.linear_term
    # forcing term: -1/2 homotopy of the linear self-bracket, in span coords
    self_bracket = dgla.bracket_vectors(1, x1, 1, x1, zero=zero)
    forcing_vec = [
        p.scale(MINUS_HALF)
        for p in problem.homotopy(2).apply_generic(self_bracket, zero)
    ]
    if width == 0:
        if not _vector_is_zero(forcing_vec):
            return None
        tail_num = [zero] * n
        q = ring.one()
    else:
        forcing = [forcing_vec[p] for p in span.pivots]
        residual = list(forcing_vec)
        for coeff, row in zip(forcing, [list(r) for r in span.rows]):
            residual = [
                res - coeff.scale(entry) if not entry.is_zero() else res
                for res, entry in zip(residual, row)
            ]
        if not _vector_is_zero(residual):
            return None
        # tail map: column j gives the span coordinates of
        # -homotopy[x1, basis_j]; entries are linear in the parameters
        columns: list[list[MultiPoly]] = []
        for row in basis:
            row_polys = [ring.constant(c) for c in row]
            bracket = dgla.bracket_vectors(1, x1, 1, row_polys, zero=zero)
            image = problem.homotopy(2).apply_generic(bracket, zero)
            image = [p.scale(GaussianRational(-1)) for p in image]
            coords = [image[p] for p in span.pivots]
            check = list(image)
            for coeff, srow in zip(coords, [list(r) for r in span.rows]):
                check = [
                    c - coeff.scale(entry) if not entry.is_zero() else c
                    for c, entry in zip(check, srow)
                ]
            if not _vector_is_zero(check):
                return None
            columns.append(coords)
        system = [
            [
                (ring.one() if i == j else ring.zero()) - columns[j][i]
                for j in range(width)
            ]
            for i in range(width)
        ]
        q = poly_matrix_det(system)
        if q.coefficient(tuple([0] * ring.nvars)) != ONE:
            raise RuntimeError("fixed-point determinant has nonunit constant term")
        numerators = []
        for c in range(width):
            replaced = [
                [forcing[i] if j == c else system[i][j] for j in range(width)]
                for i in range(width)
            ]
            numerators.append(poly_matrix_det(replaced))
        tail_num = [zero] * n
        for coeff, row in zip(numerators, basis):
            for i, entry in enumerate(row):
                if not entry.is_zero():
                    tail_num[i] = tail_num[i] + coeff.scale(entry)

    # clear denominators: q^2 * selfbracket(x1 + tail/q)
    q2 = q * q
    br_11 = dgla.bracket_vectors(1, x1, 1, x1, zero=zero)
    br_1n = dgla.bracket_vectors(1, x1, 1, tail_num, zero=zero)
    br_nn = dgla.bracket_vectors(1, tail_num, 1, tail_num, zero=zero)
    cleared = [
        (a * q2) + (b * q).scale(GaussianRational(2)) + c
        for a, b, c in zip(br_11, br_1n, br_nn)
    ]
    coords = _harmonic_poly_coordinates(problem, 2, cleared)
    bound = max((p.total_degree() for p in coords), default=0)
    bound = max(bound, 2)
    q2_parts = q2.homogeneous_components()
    # Beyond the degree bound the cleared coordinates have no component, so
    # the same recurrence extends the table and must reproduce the series.
    top = max([bound, *obstructions.keys()])
    table: dict[int, list[MultiPoly]] = {}
    for k in range(2, top + 1):
        row = []
        for c, cleared_poly in enumerate(coords):
            value = cleared_poly.homogeneous_component(k)
            for j in range(1, k - 1):
                part = q2_parts.get(j)
                if part is not None and (k - j) in table:
                    value = value - part * table[k - j][c]
            row.append(value)
        table[k] = row
    for k in sorted(obstructions):
        if obstructions[k] != table[k]:
            raise RuntimeError(
                "fixed-point obstruction table disagrees with the series"
            )
    table = {k: row for k, row in table.items() if k <= bound}
    data = {
        "spanDimension": width,
        "denominator": str(q),
        "degreeBound": bound,
    }
    return data, table


@dataclass
class SeriesAnalysis:
    """Deformation series, obstruction ideal, and its exactness status."""

    problem: KuranishiProblem
    truncation_order: int
    series: dict[int, list[MultiPoly]]
    obstructions_by_degree: dict[int, list[MultiPoly]]
    generators: list[MultiPoly]
    exact: bool
    certificate: str | None
    certificate_data: dict = field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return self.problem.ring

    def last_nonzero_order(self) -> int:
        last = 1
        for k, vec in self.series.items():
            if k >= 2 and not _vector_is_zero(vec):
                last = max(last, k)
        return last


def _collect_generators(
    obstructions: Mapping[int, Sequence[MultiPoly]], highest: int
) -> list[MultiPoly]:
    raw = []
    for k in sorted(obstructions):
        if k > highest:
            continue
        for poly in obstructions[k]:
            if not poly.is_zero():
                raw.append(poly)
    return minimalize_generators(raw)


def default_truncation_order(problem: KuranishiProblem) -> int:
    """Twice the number of parameters plus two."""
    return 2 * len(problem.parameters) + 2


def analyze_obstructions(
    problem: KuranishiProblem, truncation: int | None = None
) -> SeriesAnalysis:
    """Expand the series and certify the obstruction ideal when possible.

    Certificates are attempted in a fixed order: termination by doubling
    (the series vanishes beyond half the computed order), bracket closure
    (all obstructions vanish identically), then the rational fixed point.
    When none applies the analysis is an honest truncation: ``exact`` is
    False and the generator list only reflects obstructions up to the
    truncation order.
    """
    order = truncation if truncation is not None else default_truncation_order(problem)
    order = max(order, 2)
    series, obstructions = expand_series(problem, order)
    analysis = SeriesAnalysis(
        problem=problem,
        truncation_order=order,
        series=series,
        obstructions_by_degree=obstructions,
        generators=[],
        exact=False,
        certificate=None,
    )
    last = analysis.last_nonzero_order()
    if 2 * last <= order:
        analysis.exact = True
        analysis.certificate = "termination"
        analysis.certificate_data = {"terminationOrder": last}
        analysis.generators = _collect_generators(obstructions, 2 * last)
        return analysis
    closure = _closure_certificate(problem)
    if closure is not None:
        for k, row in obstructions.items():
            if any(not p.is_zero() for p in row):
                raise RuntimeError(
                    "bracket-closure certificate contradicts a computed obstruction"
                )
        analysis.exact = True
        analysis.certificate = "bracket-closure"
        analysis.certificate_data = closure
        analysis.generators = []
        return analysis
    rational = _rational_certificate(problem, series, obstructions)
    if rational is not None:
        data, table = rational
        analysis.exact = True
        analysis.certificate = "rational-fixed-point"
        analysis.certificate_data = data
        analysis.generators = _collect_generators(table, data["degreeBound"])
        return analysis
    analysis.exact = False
    analysis.certificate = None
    analysis.generators = _collect_generators(obstructions, order)
    return analysis


# -- germ invariants ----------------------------------------------------------


@dataclass
class GermInvariants:
    """Set-level invariants of the cone germ cut out by an obstruction ideal."""

    embedding_dimension: int
    generators: list[MultiPoly]
    generator_degrees: list[int]
    smooth: bool | None
    dimension: int | None
    quadric_rank: int
    method: str


def _quadric_rank(ring: PolyRing, generators: Sequence[MultiPoly]) -> int:
    rows: list[list[GaussianRational]] = []
    for g in generators:
        quadric = g.homogeneous_component(2)
        if quadric.is_zero():
            continue
        rows.extend(quadric.quadratic_symmetric_matrix())
    if not rows:
        return 0
    return len(rref(ExactMatrix(rows, ncols=ring.nvars))[1])


def _is_linear_basis(basis: Sequence[MultiPoly]) -> bool:
    return all(g.total_degree() == 1 for g in basis)


def _split_factors(ring: PolyRing, g: MultiPoly) -> list[MultiPoly] | None:
    """Factors to branch on: the variety of g is the union of their zero sets."""
    terms = g.sorted_terms()
    if len(terms) == 1:
        mono, _ = terms[0]
        return [ring.var(ring.variables[i]) for i, e in enumerate(mono) if e > 0]
    power = pure_linear_power(g)
    if power is not None:
        _, linear, _ = power
        return [linear]
    split = quadric_split(g)
    if split is not None:
        return list(split)
    return None


def _leaf_decomposition(
    ring: PolyRing, basis: list[MultiPoly], budget: int
) -> list[list[MultiPoly]] | None:
    """Decompose the variety into linear leaves by branching on factors.

    Returns the list of leaf bases (each a reduced, all-linear basis), or
    None if an unfactorable generator or the node budget stops the search.
    """
    stack = [basis]
    seen: set[tuple[str, ...]] = set()
    leaves: dict[tuple[str, ...], list[MultiPoly]] = {}
    nodes = 0
    while stack:
        current = stack.pop()
        key = tuple(str(g) for g in current)
        if key in seen:
            continue
        seen.add(key)
        nodes += 1
        if nodes > budget:
            return None
        if _is_linear_basis(current):
            leaves.setdefault(key, current)
            continue
        factors = None
        for g in current:
            if g.total_degree() <= 1:
                continue
            factors = _split_factors(ring, g)
            if factors is not None:
                break
        if factors is None:
            return None
        for factor in factors:
            stack.append(reduced_groebner_basis(current + [factor.monic()]))
    return list(leaves.values())


def _leaf_contains(outer: list[MultiPoly], inner: list[MultiPoly]) -> bool:
    """Whether the subspace of ``outer`` contains the subspace of ``inner``.

    Containment of linear varieties is ideal containment the other way:
    every defining form of ``outer`` must reduce to zero against ``inner``.
    """
    return all(normal_form(g, inner).is_zero() for g in outer)


def germ_invariants(
    ring: PolyRing,
    generators: Sequence[MultiPoly],
    *,
    exact: bool = True,
    budget: int = 200,
) -> GermInvariants:
    """Set-level smoothness analysis of the cone germ of a homogeneous ideal.

    The decision tree: a zero ideal is smooth; an all-linear reduced basis
    is smooth; a principal ideal is smooth exactly when its generator is a
    scalar multiple of a power of a linear form; otherwise the variety is
    decomposed into linear leaves — a single maximal leaf is a smooth
    germ, two incomparable maximal leaves certify a singularity.  Ideals
    from uncertified truncations are never given a verdict.
    """
    gens = [g for g in generators if not g.is_zero()]
    quadric_rank = _quadric_rank(ring, gens)
    degrees = [g.total_degree() for g in gens]
    n = ring.nvars
    base = dict(
        embedding_dimension=n,
        generators=list(gens),
        generator_degrees=degrees,
        quadric_rank=quadric_rank,
    )
    if not exact:
        return GermInvariants(
            smooth=None, dimension=None, method="truncated", **base
        )
    if not gens:
        return GermInvariants(
            smooth=True, dimension=n, method="zero-ideal", **base
        )
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("germ analysis expects homogeneous generators")
    basis = reduced_groebner_basis(gens)
    if _is_linear_basis(basis):
        return GermInvariants(
            smooth=True, dimension=n - len(basis), method="linear", **base
        )
    if len(gens) == 1:
        if pure_linear_power(gens[0]) is not None:
            return GermInvariants(
                smooth=True, dimension=n - 1, method="principal", **base
            )
        return GermInvariants(
            smooth=False, dimension=None, method="principal", **base
        )
    leaves = _leaf_decomposition(ring, basis, budget)
    if leaves is None:
        return GermInvariants(
            smooth=None, dimension=None, method="unknown", **base
        )
    maximal: list[list[MultiPoly]] = []
    for leaf in leaves:
        if any(
            other is not leaf and _leaf_contains(other, leaf) for other in leaves
        ):
            continue
        maximal.append(leaf)
    deduped: list[list[MultiPoly]] = []
    keys = set()
    for leaf in maximal:
        key = tuple(str(g) for g in leaf)
        if key not in keys:
            keys.add(key)
            deduped.append(leaf)
    if len(deduped) == 1:
        return GermInvariants(
            smooth=True,
            dimension=n - len(deduped[0]),
            method="leaf-single",
            **base,
        )
    if len(deduped) >= 2:
        return GermInvariants(
            smooth=False, dimension=None, method="leaf-union", **base
        )
    return GermInvariants(smooth=None, dimension=None, method="unknown", **base)


# -- splitting ----------------------------------------------------------------


@dataclass
class SplittingAssessment:
    """Verdict on whether a joint germ is the product of its block germs."""

    verdict: str
    reason: str
    ideal_comparison: str  # "equal" | "different" | "unknown"


def assess_splitting(
    joint: SeriesAnalysis,
    joint_germ: GermInvariants,
    left: SeriesAnalysis,
    right: SeriesAnalysis,
    product_germ: GermInvariants,
    *,
    coupling_is_zero: bool,
) -> SplittingAssessment:
    """Compare the joint germ against the product of the block germs.

    Priority: a vanishing coupling splits by direct sum outright; certified
    equality of the joint ideal with the sum of the block ideals certifies
    splitting after a reparameterization; a certified invariant mismatch
    (smooth against singular, or differing smooth dimensions) certifies
    non-splitting; anything else is inconclusive.
    """
    comparison = "unknown"
    if joint.exact and left.exact and right.exact:
        ring = joint.problem.ring
        product_gens = [g.embed(ring) for g in left.generators] + [
            g.embed(ring) for g in right.generators
        ]
        equal = ideal_equal(joint.generators, product_gens)
        comparison = "equal" if equal else "different"
    if coupling_is_zero:
        return SplittingAssessment(
            verdict="SplitsByDirectSum",
            reason="the coupling bracket between the blocks vanishes identically",
            ideal_comparison=comparison,
        )
    if comparison == "equal":
        return SplittingAssessment(
            verdict="SplitsAfterReparameterization",
            reason="the joint obstruction ideal equals the sum of the block ideals",
            ideal_comparison=comparison,
        )
    if comparison == "different":
        if (
            joint_germ.smooth is not None
            and product_germ.smooth is not None
            and joint_germ.smooth != product_germ.smooth
        ):
            joint_word = "smooth" if joint_germ.smooth else "singular"
            product_word = "smooth" if product_germ.smooth else "singular"
            return SplittingAssessment(
                verdict="DoesNotSplit",
                reason=(
                    f"the joint germ is {joint_word} while the product of the "
                    f"block germs is {product_word}"
                ),
                ideal_comparison=comparison,
            )
        if (
            joint_germ.smooth is True
            and product_germ.smooth is True
            and joint_germ.dimension != product_germ.dimension
        ):
            return SplittingAssessment(
                verdict="DoesNotSplit",
                reason=(
                    f"both germs are smooth with different dimensions "
                    f"({joint_germ.dimension} against {product_germ.dimension})"
                ),
                ideal_comparison=comparison,
            )
        return SplittingAssessment(
            verdict="Inconclusive",
            reason=(
                "the ideals differ in the given coordinates but no computed "
                "invariant distinguishes the germs"
            ),
            ideal_comparison=comparison,
        )
    return SplittingAssessment(
        verdict="Inconclusive",
        reason="exactness of an obstruction ideal could not be certified",
        ideal_comparison=comparison,
    )
