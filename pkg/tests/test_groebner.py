"""Groebner engine tests, including differential tests against the frozen oracle."""

from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from kuranishi.groebner import (
    groebner_basis,
    ideal_equal,
    ideal_membership,
    minimalize_generators,
    normal_form,
    radical_membership,
    reduced_groebner_basis,
    spoly,
)
from kuranishi.poly import MultiPoly, PolyRing
from kuranishi.scalars import GaussianRational

from oracle_groebner import oracle_membership

R = PolyRing(["x", "y", "z"])
X, Y, Z = R.var("x"), R.var("y"), R.var("z")


def _random_poly(rng: random.Random, max_terms: int = 3, max_deg: int = 3) -> MultiPoly:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        exps = [0, 0, 0]
        for _ in range(rng.randint(0, max_deg)):
            exps[rng.randrange(3)] += 1
        coeff = GaussianRational(rng.randint(-3, 3), rng.randint(-1, 1))
        terms.append((tuple(exps), coeff))
    return R.from_terms(terms)


# -- normal form ---------------------------------------------------------------


def test_normal_form_examples() -> None:
    gens = [X * X - Y, Y * Y - Z]
    p = X**4
    # x^4 -> (x^2)^2 -> y^2 -> z
    assert normal_form(p, gens) == Z
    assert normal_form(R.zero(), gens).is_zero()
    assert normal_form(Z, gens) == Z


def test_normal_form_no_term_divisible() -> None:
    gens = [X * Y, X * X]
    nf = normal_form(X * Y + X * X + Y * Z + R.one(), gens)
    assert nf == Y * Z + R.one()


# -- basis computation ------------------------------------------------------------


def test_reduced_basis_known_example() -> None:
    gens = [X * X + Y * Y, X * Y]
    gb = reduced_groebner_basis(gens)
    assert gb == [X * Y, X * X + Y * Y, Y**3]


def test_reduced_basis_empty_and_unit() -> None:
    assert reduced_groebner_basis([]) == []
    assert reduced_groebner_basis([R.zero()]) == []
    gb = reduced_groebner_basis([X + R.one(), X])
    assert gb == [R.one()]


def test_reduced_basis_is_deterministic() -> None:
    gens = [X * X * Y - Z, X * Z - Y * Y, Y * Z - X]
    first = reduced_groebner_basis(gens)
    second = reduced_groebner_basis(list(gens))
    assert first == second


def test_buchberger_criterion_on_result() -> None:
    rng = random.Random(7)
    for _ in range(10):
        gens = [_random_poly(rng) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        gb = groebner_basis(gens)
        for i in range(len(gb)):
            for j in range(i + 1, len(gb)):
                assert normal_form(spoly(gb[i], gb[j]), gb).is_zero()


def test_generators_reduce_to_zero_in_own_basis() -> None:
    rng = random.Random(11)
    for _ in range(10):
        gens = [_random_poly(rng) for _ in range(rng.randint(1, 3))]
        gb = reduced_groebner_basis(gens)
        for g in gens:
            if gb:
                assert normal_form(g, gb).is_zero()
            else:
                assert g.is_zero()


# -- membership / equality ----------------------------------------------------------


def test_membership_examples() -> None:
    gens = [X * X + Y * Y, X * Y]
    assert ideal_membership(Y**3, gens)
    assert not ideal_membership(Y * Y, gens)
    assert ideal_membership(R.zero(), [])
    assert not ideal_membership(X, [])


def test_ideal_equal_under_shuffles_and_recombination() -> None:
    gens = [X * X - Y, Y * Z + X]
    shuffled = [Y * Z + X, X * X - Y]
    recombined = [
        (X * X - Y) + (Y * Z + X),
        Y * Z + X,
    ]
    scaled = [(X * X - Y).scale(GaussianRational(0, 2)), (Y * Z + X).scale("1/3")]
    assert ideal_equal(gens, shuffled)
    assert ideal_equal(gens, recombined)
    assert ideal_equal(gens, scaled)
    assert not ideal_equal(gens, [X * X - Y])


def test_minimalize_generators() -> None:
    assert minimalize_generators([X * Y, X]) == [X]
    gens = minimalize_generators([X * X, X * Y])
    assert gens == [X * Y, X * X]
    assert minimalize_generators([]) == []
    assert minimalize_generators([R.zero()]) == []
    # a redundant consequence of two others is dropped
    gens = minimalize_generators([X, Y, X * X + X * Y])
    assert gens == [Y, X]


def test_radical_membership() -> None:
    assert radical_membership(X, [X * X])
    assert radical_membership(X * Y, [X * X * Y**3])
    assert not radical_membership(X, [Y])
    assert radical_membership(X + Y, [(X + Y) ** 2])
    assert radical_membership(R.zero(), [])


# -- differential test against the frozen oracle --------------------------------------


def test_membership_agrees_with_frozen_oracle() -> None:
    rng = random.Random(2026)
    agree = 0
    for _ in range(25):
        gens = [_random_poly(rng, max_terms=2, max_deg=2) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if rng.random() < 0.5 and gens:
            candidate = R.zero()
            for g in gens:
                candidate = candidate + _random_poly(rng, max_terms=2, max_deg=1) * g
        else:
            candidate = _random_poly(rng, max_terms=2, max_deg=2)
        expected = oracle_membership(candidate, gens)
        assert ideal_membership(candidate, gens) == expected
        agree += 1
    assert agree == 25
