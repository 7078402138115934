"""Canned presentations and bimodules used by the demos, CLI and tests.

The corner fixture pairs the zigzag window (T side) with the
alternating-orientation window on primed vertices (U side) and a corner
bimodule concentrated at the U-vertex 1': dims 2 over T-vertex 1 (basis
phi, psi) and 1 over T-vertex 2 (basis theta).

Two variants differ in which zigzag ideal they are functorial over:

* ``corner_example``: right actions phi -> theta -> psi as in the source
  example.  These force the loop at T-vertex 1 to act nonzero, so the T
  side must omit that loop relation; with it the data is not a functor.
* ``corner_example_degenerate``: keeps the full zigzag ideal (loop
  included) and instead sets the action of a1 to zero, the maximal
  right action that remains functorial.  The column modules, which is
  all the filtration machinery sees, are identical.
"""

from .field import QQ
from .linalg import Matrix
from .quiver import Arrow, Path, Quiver, QuiverPresentation, Relation
from .families import linear_a_inf, zigzag_a_inf, mesh_za_inf
from .bimodule import Bimodule


def corner_example(width=4, field=QQ):
    """(tT, tU, bimodule): the corner fixture over the loopless zigzag."""
    tT = zigzag_a_inf(1, width, include_loop_relation=False, field=field)
    tU = linear_a_inf(1, width, suffix="'", field=field)
    bim = _corner_bimodule(tT, tU, a1_acts=True, field=field)
    return tT, tU, bim

def corner_example_degenerate(width=4, field=QQ):
    """(tT, tU, bimodule): full zigzag ideal, right action of a1 zeroed."""
    tT = zigzag_a_inf(1, width, include_loop_relation=True, field=field)
    tU = linear_a_inf(1, width, suffix="'", field=field)
    bim = _corner_bimodule(tT, tU, a1_acts=False, field=field)
    return tT, tU, bim


def _corner_bimodule(tT, tU, a1_acts, field):
    dims = {("1'", "1"): 2, ("1'", "2"): 1}
    labels = {("1'", "1"): ["phi", "psi"], ("1'", "2"): ["theta"]}
    right = {"b1": {("1'", "1"): Matrix(field, 1, 2, [[1, 0]])}}
    if a1_acts:
        right["a1"] = {("1'", "2"): Matrix(field, 2, 1, [[0], [1]])}
    return Bimodule(tU, tT, dims, right=right, labels=labels)


def simplified_corner_presentation(width=4, field=QQ):
    """One quiver presenting the corner fixture after eliminating arrows.

    The zigzag and primed chain joined by a single arrow phi: 1 -> 1';
    theta corresponds to phi.b1 and psi to phi.b1.a1.  Hom dimensions
    match the block category on matching vertices.
    """
    zig = zigzag_a_inf(1, width, include_loop_relation=False, field=field)
    lin = linear_a_inf(1, width, suffix="'", field=field)
    vertices = list(lin.quiver.vertices) + list(zig.quiver.vertices)
    arrows = (
        list(lin.quiver.arrows)
        + list(zig.quiver.arrows)
        + [Arrow("phi", "1", "1'")]
    )
    q = Quiver(f"corner-simplified[{width}]", vertices, arrows)
    rels = [
        Relation([(c, Path(q, p.source, p.arrows)) for c, p in rel.terms], field)
        for rel in zig.relations
    ]
    return QuiverPresentation(q, rels, field)


def mesh_star_presentation(rows=(1, 6), cols=(-4, 4), field=QQ):
    """ZA-infinity window with the extra source vertex * -> (1,1)."""
    return mesh_za_inf(rows[0], rows[1], cols[0], cols[1], star="1,1", field=field)
