"""Small complexes used in examples, tests and the shipped fixture files."""

from __future__ import annotations

from .complex import SymmetricDeltaComplex, downward_closure, from_simplicial_complex


def half_triangle() -> SymmetricDeltaComplex:
    """The standard 2-simplex modulo the reflection exchanging vertices 1 and 2.

    Vertex v sits at position 0 of T0 and w at positions 1 and 2; c is the edge
    folded onto itself and a0, a1 are the two orientations of the edge vw.
    """
    simplices = [["v", "w"], ["a0", "a1", "c"], ["T0", "T1", "T2"]]
    transpositions = [
        [{"a0": "a1", "a1": "a0", "c": "c"}],
        [
            {"T0": "T1", "T1": "T0", "T2": "T2"},
            {"T0": "T0", "T1": "T2", "T2": "T1"},
        ],
    ]
    faces = [
        [
            {"a0": "w", "a1": "v", "c": "w"},
            {"a0": "v", "a1": "w", "c": "w"},
        ],
        [
            {"T0": "c", "T1": "a0", "T2": "a1"},
            {"T0": "a0", "T1": "c", "T2": "a1"},
            {"T0": "a0", "T1": "a1", "T2": "c"},
        ],
    ]
    return SymmetricDeltaComplex(simplices, transpositions, faces)


def single_vertex(name: str = "v") -> SymmetricDeltaComplex:
    return SymmetricDeltaComplex([[name]])


def folded_triangle() -> SymmetricDeltaComplex:
    """One simplex in each dimension 0, 1, 2: a 2-simplex modulo all of S_3."""
    return SymmetricDeltaComplex(
        [["v"], ["e"], ["t"]],
        [[{"e": "e"}], [{"t": "t"}, {"t": "t"}]],
        [[{"e": "v"}, {"e": "v"}], [{"t": "e"}, {"t": "e"}, {"t": "e"}]],
    )


def interval() -> SymmetricDeltaComplex:
    return from_simplicial_complex(["u", "v"], downward_closure([["u", "v"]]))


def triangle_boundary() -> SymmetricDeltaComplex:
    return from_simplicial_complex(["x", "y", "z"], downward_closure([["x", "y"], ["y", "z"], ["x", "z"]]))


def solid_triangle() -> SymmetricDeltaComplex:
    return from_simplicial_complex(["x", "y", "z"], downward_closure([["x", "y", "z"]]))


def two_points() -> SymmetricDeltaComplex:
    return from_simplicial_complex(["p", "q"], [["p"], ["q"]])


# Morse functions on the half triangle (keys are orbit representatives)
DMF_VALID = {"v": 0, "a0": 1, "w": 2, "T0": 3, "c": 4}
DMF_TWO_FACES = {"v": 1, "a0": 0, "w": 2, "T0": 3, "c": 4}
DMF_NOT_PERMISSIBLE = {"v": 0, "a0": 4, "w": 1, "c": 2, "T0": 3}
POINT_MATCHING = [["w", "a0"], ["c", "T0"]]


def fixture_documents() -> dict[str, object]:
    """Every shipped fixture file, name -> JSON document."""
    from .tropical import enumerate_coloop_complex

    return {
        "half-triangle.json": half_triangle().to_dict(),
        "dmf-valid.json": dict(DMF_VALID),
        "dmf-two-faces.json": dict(DMF_TWO_FACES),
        "dmf-not-permissible.json": dict(DMF_NOT_PERMISSIBLE),
        "matching-point.json": [list(p) for p in POINT_MATCHING],
        "xc-interval.json": interval().to_dict(),
        "xc-triangle.json": solid_triangle().to_dict(),
        "xc-circle.json": triangle_boundary().to_dict(),
        "coloop-g2.json": enumerate_coloop_complex(2)[0].to_dict(),
        "coloop-g3.json": enumerate_coloop_complex(3)[0].to_dict(),
    }


def write_fixture_files(directory) -> list[str]:
    from pathlib import Path

    from .io import dumps

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for name, doc in fixture_documents().items():
        (directory / name).write_text(dumps(doc), encoding="utf-8")
        names.append(name)
    return names
