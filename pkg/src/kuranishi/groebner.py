"""Buchberger's algorithm with the classical pair-elimination criteria.

Produces the unique reduced Groebner basis under grevlex, which makes ideal
equality a syntactic comparison.  Normal selection strategy (smallest pair
lcm first); coprimality and chain criteria via the Gebauer-Moeller update.

Everything here is exact; coefficients are Gaussian rationals.
"""

from __future__ import annotations

from typing import Sequence

from .poly import MultiPoly, PolyRing, grevlex_key
from .scalars import GaussianRational

__all__ = [
    "normal_form",
    "spoly",
    "groebner_basis",
    "reduced_groebner_basis",
    "ideal_membership",
    "ideal_equal",
    "ideal_is_zero",
    "radical_membership",
    "minimalize_generators",
]

Monomial = tuple[int, ...]


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def spoly(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """S-polynomial: the leading terms of f and g cancelled against each other."""
    if f.ring != g.ring:
        raise ValueError("polynomials from different rings")
    ring = f.ring
    lf, lg = f.leading_monomial(), g.leading_monomial()
    l = _lcm(lf, lg)
    mf = ring.monomial(tuple(a - b for a, b in zip(l, lf)), f.leading_coefficient().inverse())
    mg = ring.monomial(tuple(a - b for a, b in zip(l, lg)), g.leading_coefficient().inverse())
    return mf * f - mg * g


def normal_form(p: MultiPoly, basis: Sequence[MultiPoly]) -> MultiPoly:
    """Fully reduce ``p`` modulo ``basis``.

    Deterministic: always rewrites the current leading term, using the first
    divisor in basis order; reduced terms that no divisor matches move to the
    remainder.  No remainder term is divisible by any basis leading monomial.
    """
    ring = p.ring
    leads = [(g.leading_monomial(), g.leading_coefficient(), g) for g in basis if not g.is_zero()]
    remainder = ring.zero()
    work = p
    while not work.is_zero():
        exps = work.leading_monomial()
        coeff = work.terms[exps]
        for lm, lc, g in leads:
            if _divides(lm, exps):
                shift = tuple(a - b for a, b in zip(exps, lm))
                work = work - ring.monomial(shift, coeff / lc) * g
                break
        else:
            term = ring.monomial(exps, coeff)
            remainder = remainder + term
            work = work - term
    return remainder


def _update(
    basis: list[MultiPoly],
    pairs: list[tuple[int, int]],
    candidate: MultiPoly,
) -> None:
    """Gebauer-Moeller update: append candidate, prune and extend the pair set."""
    lm_new = candidate.leading_monomial()
    t = len(basis)
    lms = [g.leading_monomial() for g in basis]

    # Chain criterion on old pairs: (i, j) is redundant once the new element
    # divides their lcm strictly finer on both sides.
    kept: list[tuple[int, int]] = []
    for i, j in pairs:
        lij = _lcm(lms[i], lms[j])
        if (
            _divides(lm_new, lij)
            and _lcm(lms[i], lm_new) != lij
            and _lcm(lms[j], lm_new) != lij
        ):
            continue
        kept.append((i, j))
    pairs.clear()
    pairs.extend(kept)

    # New pairs (i, t): keep one representative per minimal lcm, and drop any
    # class whose lcm is a proper multiple of another class's lcm; drop classes
    # that contain a coprime pair (Buchberger's first criterion).
    classes: dict[Monomial, list[int]] = {}
    for i in range(t):
        classes.setdefault(_lcm(lms[i], lm_new), []).append(i)
    ordered = sorted(classes.keys(), key=grevlex_key)
    minimal: list[Monomial] = []
    for l in ordered:
        if any(_divides(m, l) and m != l for m in classes):
            continue
        minimal.append(l)
    for l in minimal:
        members = classes[l]
        if any(_mul(lms[i], lm_new) == l for i in members):
            continue  # coprime leading monomials: S-pair reduces to zero
        pairs.append((members[0], t))

    basis.append(candidate)


def groebner_basis(generators: Sequence[MultiPoly]) -> list[MultiPoly]:
    """A (not yet reduced) Groebner basis of the given ideal."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise ValueError("generators from different rings")
    basis: list[MultiPoly] = []
    pairs: list[tuple[int, int]] = []
    for g in gens:
        nf = normal_form(g, basis)
        if not nf.is_zero():
            _update(basis, pairs, nf.monic())
    while pairs:
        # normal selection: smallest lcm in grevlex
        best = min(
            range(len(pairs)),
            key=lambda idx: grevlex_key(
                _lcm(
                    basis[pairs[idx][0]].leading_monomial(),
                    basis[pairs[idx][1]].leading_monomial(),
                )
            ),
        )
        i, j = pairs.pop(best)
        nf = normal_form(spoly(basis[i], basis[j]), basis)
        if not nf.is_zero():
            _update(basis, pairs, nf.monic())
    return basis


def reduced_groebner_basis(generators: Sequence[MultiPoly]) -> list[MultiPoly]:
    """The unique reduced Groebner basis: minimal, monic, fully interreduced.

    Elements are returned sorted by ascending grevlex leading monomial, so
    equal ideals yield identical lists.
    """
    basis = groebner_basis(generators)
    if not basis:
        return []
    # minimal: drop any element whose leading monomial another's divides
    minimal: list[MultiPoly] = []
    for g in sorted(basis, key=lambda h: grevlex_key(h.leading_monomial())):
        lm = g.leading_monomial()
        if any(_divides(h.leading_monomial(), lm) for h in minimal):
            continue
        minimal.append(g)
    # interreduce tails to a fixpoint
    changed = True
    while changed:
        changed = False
        for idx in range(len(minimal)):
            others = minimal[:idx] + minimal[idx + 1 :]
            nf = normal_form(minimal[idx], others).monic()
            if nf != minimal[idx]:
                minimal[idx] = nf
                changed = True
    minimal.sort(key=lambda h: grevlex_key(h.leading_monomial()))
    return minimal


def ideal_membership(p: MultiPoly, generators: Sequence[MultiPoly]) -> bool:
    """True iff ``p`` lies in the ideal generated by ``generators``."""
    basis = reduced_groebner_basis(generators)
    if not basis:
        return p.is_zero()
    return normal_form(p, basis).is_zero()


def ideal_equal(a: Sequence[MultiPoly], b: Sequence[MultiPoly]) -> bool:
    """True iff two generator lists present the same ideal."""
    return reduced_groebner_basis(a) == reduced_groebner_basis(b)


def ideal_is_zero(generators: Sequence[MultiPoly]) -> bool:
    return all(g.is_zero() for g in generators)


def radical_membership(p: MultiPoly, generators: Sequence[MultiPoly]) -> bool:
    """True iff ``p`` vanishes on the zero set of the ideal (Rabinowitsch).

    Tests whether 1 lies in the ideal extended by ``1 - z*p`` in a ring with
    one fresh variable ``z``.
    """
    if p.is_zero():
        return True
    ring = p.ring
    fresh = "z_rad"
    while fresh in ring.variables:
        fresh += "_"
    extended = PolyRing(ring.variables + (fresh,))
    ext_gens = [g.embed(extended) for g in generators]
    trick = extended.one() - extended.var(fresh) * p.embed(extended)
    basis = reduced_groebner_basis(list(ext_gens) + [trick])
    return basis == [extended.one()]


def minimalize_generators(generators: Sequence[MultiPoly]) -> list[MultiPoly]:
    """Remove generators lying in the ideal of the remaining ones.

    Candidates are examined from the largest leading monomial down, so
    higher-degree consequences are removed first.  The survivors are returned
    monic, sorted by ascending grevlex leading monomial.
    """
    current = [g.monic() for g in generators if not g.is_zero()]
    current.sort(key=lambda h: grevlex_key(h.leading_monomial()))
    idx = len(current) - 1
    while idx >= 0:
        others = current[:idx] + current[idx + 1 :]
        if ideal_membership(current[idx], others):
            current.pop(idx)
        idx -= 1
    return current
