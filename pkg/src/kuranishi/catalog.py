"""Built-in catalog of nilmanifold complex structures with known invariants.

Each entry packages a real nilpotent Lie algebra together with a
left-invariant complex structure, ready to feed to
:func:`kuranishi.analysis.analyze_structure`.  Four of the entries carry a
table of expected invariants so an analysis run can be checked end to end
(see :func:`expected_invariants` and :func:`reproduce_case`).

The ``example2`` entry admits two bracket readings.  The ``corrected``
reading (the default) satisfies the integrability gate; the ``literal``
reading drops one structure constant and is rejected by the builders.  Both
are kept so the discrepancy stays reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lie import ComplexStructure, LieAlgebra, parse_salamon
from .scalars import GaussianRational

__all__ = [
    "CatalogEntry",
    "catalog_names",
    "catalog_entry",
    "build_catalog_structure",
    "expected_invariants",
    "reproducible_names",
]

_MI = GaussianRational(0, -1)
_PI = GaussianRational(0, 1)
_HALF = GaussianRational("1/2")
_MHI = GaussianRational(0, "-1/2")


@dataclass(frozen=True)
class CatalogEntry:
    """Metadata for one catalog structure.

    Attributes
    ----------
    name : str
        Key used on the command line and in config files.
    summary : str
        One-line description of the underlying geometry.
    dimension : int
        Real dimension of the Lie algebra.
    readings : tuple of str
        Bracket readings the entry supports.  Empty for single-reading
        entries; ``("corrected", "literal")`` for ``example2``.
    reproducible : bool
        Whether :func:`expected_invariants` has a table for the entry.
    """

    name: str
    summary: str
    dimension: int
    readings: tuple[str, ...]
    reproducible: bool


def _heisenberg_double() -> LieAlgebra:
    return LieAlgebra.from_entries(6, [(1, 2, 3, 1), (4, 5, 6, 1)])


def _complex_heisenberg() -> LieAlgebra:
    return LieAlgebra.from_entries(
        6,
        [
            (1, 3, 5, "-1/2"),
            (1, 4, 6, "-1/2"),
            (2, 3, 6, "-1/2"),
            (2, 4, 5, "1/2"),
        ],
    )


def _complex_heisenberg_literal() -> LieAlgebra:
    return LieAlgebra.from_entries(
        6,
        [
            (1, 3, 5, "1/2"),
            (1, 4, 6, "-1/2"),
            (2, 3, 6, "-1/2"),
        ],
    )


def _standard_frame() -> list[list[object]]:
    return [
        [1, _MI, 0, 0, 0, 0],
        [0, 0, 1, _MI, 0, 0],
        [0, 0, 0, 0, 1, _MI],
    ]


_BUILDERS = {
    "example1": lambda: ComplexStructure(
        _heisenberg_double(),
        [
            [_HALF, _MHI, 0, 0, 0, 0],
            [0, 0, 0, _HALF, _MHI, 0],
            [0, 0, _HALF, 0, 0, _MHI],
        ],
    ),
    "iwasawa": lambda: ComplexStructure(_complex_heisenberg(), _standard_frame()),
    "torus": lambda: ComplexStructure(
        LieAlgebra.from_entries(6, []), _standard_frame()
    ),
    "n3": lambda: ComplexStructure(
        parse_salamon("(0,0,0,0,0,12+34)"), _standard_frame()
    ),
    "n8": lambda: ComplexStructure(
        parse_salamon("(0,0,0,0,0,12)"), _standard_frame()
    ),
    "n9": lambda: ComplexStructure(
        parse_salamon("(0,0,0,0,12,14+25)"),
        [
            [1, _MI, 0, 0, 0, 0],
            [0, 0, 0, 1, _MI, 0],
            [0, 0, 1, 0, 0, _MI],
        ],
    ),
}

_EXAMPLE2_FRAME = [
    [1, _MI, 0, 0, 0, 0],
    [0, 0, 1, _PI, 0, 0],
    [0, 0, 0, 0, 1, _PI],
]

_ENTRIES = {
    "example1": CatalogEntry(
        name="example1",
        summary="product of two real Heisenberg algebras with an abelian complex structure",
        dimension=6,
        readings=(),
        reproducible=True,
    ),
    "example2": CatalogEntry(
        name="example2",
        summary="complex Heisenberg algebra with an abelian complex structure",
        dimension=6,
        readings=("corrected", "literal"),
        reproducible=True,
    ),
    "iwasawa": CatalogEntry(
        name="iwasawa",
        summary="complex Heisenberg algebra with its bi-invariant complex structure (Iwasawa manifold)",
        dimension=6,
        readings=(),
        reproducible=True,
    ),
    "torus": CatalogEntry(
        name="torus",
        summary="abelian Lie algebra with the standard complex structure (complex 3-torus)",
        dimension=6,
        readings=(),
        reproducible=True,
    ),
    "n3": CatalogEntry(
        name="n3",
        summary="nilpotent algebra (0,0,0,0,0,12+34) with an abelian complex structure",
        dimension=6,
        readings=(),
        reproducible=False,
    ),
    "n8": CatalogEntry(
        name="n8",
        summary="nilpotent algebra (0,0,0,0,0,12) with an abelian complex structure",
        dimension=6,
        readings=(),
        reproducible=False,
    ),
    "n9": CatalogEntry(
        name="n9",
        summary="nilpotent algebra (0,0,0,0,12,14+25), step three, with an abelian complex structure",
        dimension=6,
        readings=(),
        reproducible=False,
    ),
}

# Expected invariants for the reproducible entries, at bundle rank one and
# the default truncation order.  Block order: deformation, endomorphism,
# joint.  ``germ_dimensions`` holds None where the germ is singular.
_EXPECTED = {
    "example1": {
        "first_cohomology": (4, 3, 7),
        "germ_smooth": (True, True, False),
        "germ_dimensions": (4, 3, None),
        "generator_degrees": ((), (), (2,)),
        "verdict": "DoesNotSplit",
    },
    "example2": {
        "first_cohomology": (6, 3, 9),
        "germ_smooth": (True, True, False),
        "germ_dimensions": (5, 3, None),
        "generator_degrees": ((2, 2, 2), (), (2, 2, 2, 2, 2)),
        "verdict": "DoesNotSplit",
    },
    "iwasawa": {
        "first_cohomology": (6, 2, 8),
        "germ_smooth": (True, True, True),
        "germ_dimensions": (6, 2, 8),
        "generator_degrees": ((), (), ()),
        "verdict": "SplitsByDirectSum",
    },
    "torus": {
        "first_cohomology": (9, 3, 12),
        "germ_smooth": (True, True, True),
        "germ_dimensions": (9, 3, 12),
        "generator_degrees": ((), (), ()),
        "verdict": "SplitsByDirectSum",
    },
}


def catalog_names() -> list[str]:
    """Return the catalog entry names in display order."""

    return list(_ENTRIES)


def reproducible_names() -> list[str]:
    """Return the names of entries that carry an expected-invariant table."""

    return [name for name, entry in _ENTRIES.items() if entry.reproducible]


def catalog_entry(name: str) -> CatalogEntry:
    """Look up the metadata for one catalog entry.

    Raises
    ------
    ValueError
        If ``name`` is not in the catalog.
    """

    try:
        return _ENTRIES[name]
    except KeyError:
        known = ", ".join(_ENTRIES)
        raise ValueError(f"unknown catalog entry {name!r} (known: {known})") from None


def build_catalog_structure(name: str, reading: str | None = None) -> ComplexStructure:
    """Construct the complex structure for a catalog entry.

    Parameters
    ----------
    name : str
        Catalog entry name.
    reading : str, optional
        Bracket reading for entries that support more than one.  For
        ``example2`` this is ``"corrected"`` (default) or ``"literal"``.
        Entries with a single reading ignore the argument.

    Returns
    -------
    ComplexStructure
        The requested structure.  Note the integrability gate runs later,
        inside the DGLA builders, so a non-integrable reading (such as the
        literal ``example2`` one) constructs fine here and fails there.
    """

    entry = catalog_entry(name)
    if name == "example2":
        chosen = reading if reading is not None else "corrected"
        if chosen not in entry.readings:
            options = ", ".join(entry.readings)
            raise ValueError(
                f"unknown reading {chosen!r} for catalog entry 'example2' (known: {options})"
            )
        if chosen == "literal":
            return ComplexStructure(_complex_heisenberg_literal(), _EXAMPLE2_FRAME)
        return ComplexStructure(_complex_heisenberg(), _EXAMPLE2_FRAME)
    return _BUILDERS[name]()


def expected_invariants(name: str) -> dict[str, object] | None:
    """Return the expected-invariant table for ``name``, or None.

    The table records, per block (deformation, endomorphism, joint): the
    first cohomology dimension, whether the germ is smooth, the germ
    dimension (None when singular), and the sorted degrees of the minimal
    obstruction generators — plus the expected splitting verdict.
    """

    catalog_entry(name)
    table = _EXPECTED.get(name)
    return dict(table) if table is not None else None
