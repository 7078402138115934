"""Built-in infinite quiver families, materialized on finite windows.

Supported family ids:

* ``linear-A-inf``  -- the A-infinity quiver with alternating orientation
  (every even vertex is a source pointing at both odd neighbours).
* ``zigzag-A-inf``  -- the doubled A-infinity quiver ``a_t: t -> t+1``,
  ``b_t: t+1 -> t`` with its standard relations: the loop at vertex 1,
  all double steps ``a.a`` and ``b.b``, and the commutation of the two
  loops at every inner vertex.
* ``mesh-ZA-inf``   -- the translation quiver ZA-infinity with mesh
  relations; vertices are (row, col) pairs named ``"r,c"``, arrows go
  (i,j) -> (i-1,j+1) and (i,j) -> (i+1,j), the translate of (i,j) is
  (i,j-1), and the mesh at an interior vertex is the difference of its
  two length-2 paths (a single term on row 1).

Relations whose arrows leave the window are dropped and recorded in the
presentation's boundary report, so window-too-small artifacts stay
visible.  Every materialization is monotone in the window.
"""

from dataclasses import dataclass
from .field import QQ
from .quiver import Arrow, Path, Quiver, QuiverPresentation, Relation

FAMILY_IDS = ("linear-A-inf", "zigzag-A-inf", "mesh-ZA-inf")


@dataclass
class FamilySpec:
    family_id: str
    window: dict  # {"lo": int, "hi": int} or {"rows": (lo,hi), "cols": (lo,hi)}
    suffix: str = ""
    star: str = ""  # mesh only: "r,c" target adds a source vertex "*"


def materialize_window(spec, field=QQ):
    """Materialize a finite window of a built-in family."""
    fid = spec.family_id
    if fid == "linear-A-inf":
        return linear_a_inf(spec.window["lo"], spec.window["hi"], suffix=spec.suffix, field=field)
    if fid == "zigzag-A-inf":
        return zigzag_a_inf(spec.window["lo"], spec.window["hi"], suffix=spec.suffix, field=field)
    if fid == "mesh-ZA-inf":
        rl, rh = spec.window["rows"]
        cl, ch = spec.window["cols"]
        return mesh_za_inf(rl, rh, cl, ch, star=spec.star, field=field)
    raise ValueError(f"unknown family id {fid!r}")


def linear_a_inf(lo, hi, suffix="", field=QQ):
    """Alternating-orientation A-infinity on vertices lo..hi, no relations.

    Arrows: g<2k-1>: 2k -> 2k-1 and g<2k>: 2k -> 2k+1 for windowed ends.
    """
    if lo > hi:
        raise ValueError("empty window")
    vid = lambda n: f"{n}{suffix}"
    vertices = [vid(n) for n in range(lo, hi + 1)]
    arrows = []
    for n in range(lo, hi + 1):
        if n % 2 == 0:
            if n - 1 >= lo:
                arrows.append(Arrow(f"g{n-1}{suffix}", vid(n), vid(n - 1)))
            if n + 1 <= hi:
                arrows.append(Arrow(f"g{n}{suffix}", vid(n), vid(n + 1)))
    q = Quiver(f"linearA[{lo}..{hi}]{suffix}", vertices, arrows)
    return QuiverPresentation(q, [], field, meta={"family": "linear-A-inf", "window": (lo, hi)})


def zigzag_a_inf(lo, hi, suffix="", include_loop_relation=True, field=QQ):
    """The zigzag quiver on vertices lo..hi with its windowed relations.

    ``include_loop_relation`` controls the loop relation at vertex 1
    (``b1.a1``); dropping it matters for bimodule fixtures whose right
    action does not kill that loop.
    """
    if lo > hi:
        raise ValueError("empty window")
    vid = lambda n: f"{n}{suffix}"
    vertices = [vid(n) for n in range(lo, hi + 1)]
    arrows = []
    for t in range(lo, hi):
        arrows.append(Arrow(f"a{t}{suffix}", vid(t), vid(t + 1)))
        arrows.append(Arrow(f"b{t}{suffix}", vid(t + 1), vid(t)))
    q = Quiver(f"zigzag[{lo}..{hi}]{suffix}", vertices, arrows)
    rels = []
    dropped = []
    A = lambda t: f"a{t}{suffix}"
    B = lambda t: f"b{t}{suffix}"
    # loop at vertex 1 (function order b1.a1): traversal a1 then b1
    if include_loop_relation:
        if lo <= 1 and hi >= 2:
            rels.append(Relation([(1, Path(q, vid(1), (A(1), B(1))))], field))
        elif lo == 1:
            dropped.append("b1.a1")
    for t in range(lo, hi + 1):
        # a_{t+1}a_t (function order): traversal a_t then a_{t+1}, needs t..t+2
        if t + 2 <= hi:
            rels.append(Relation([(1, Path(q, vid(t), (A(t), A(t + 1))))], field))
            rels.append(Relation([(1, Path(q, vid(t + 2), (B(t + 1), B(t))))], field))
            # a_t b_t - b_{t+1} a_{t+1}: the two loops at vertex t+1
            up_down = Path(q, vid(t + 1), (B(t), A(t)))
            down_up = Path(q, vid(t + 1), (A(t + 1), B(t + 1)))
            rels.append(Relation([(1, up_down), (-1, down_up)], field))
        elif t + 1 <= hi:
            dropped.extend([f"a{t+1}.a{t}", f"b{t}.b{t+1}", f"a{t}.b{t} - b{t+1}.a{t+1}"])
    return QuiverPresentation(
        q, rels, field, boundary_report=dropped,
        meta={"family": "zigzag-A-inf", "window": (lo, hi)},
    )


def mesh_vertex(i, j):
    return f"{i},{j}"


def mesh_coords(v):
    i, j = v.split(",")
    return int(i), int(j)


def mesh_za_inf(row_lo, row_hi, col_lo, col_hi, star="", field=QQ):
    """A window of ZA-infinity with mesh relations.

    ``star``, when set to a vertex name like ``"1,1"``, appends a new
    source vertex ``*`` with a single arrow ``star0: * -> star`` (the
    one-point extension quiver of the mesh category).
    """
    if row_lo > row_hi or col_lo > col_hi or row_lo < 1:
        raise ValueError("empty or invalid window")
    vertices = [
        mesh_vertex(i, j)
        for i in range(row_lo, row_hi + 1)
        for j in range(col_lo, col_hi + 1)
    ]
    vset = set(vertices)
    arrows = []
    for i in range(row_lo, row_hi + 1):
        for j in range(col_lo, col_hi + 1):
            v = mesh_vertex(i, j)
            up = mesh_vertex(i - 1, j + 1)
            down = mesh_vertex(i + 1, j)
            if i - 1 >= 1 and up in vset:
                arrows.append(Arrow(f"u{i},{j}", v, up))
            if down in vset:
                arrows.append(Arrow(f"d{i},{j}", v, down))
    star_dropped = []
    if star:
        if star not in vset:
            raise ValueError(f"star target {star} outside the window")
        vertices = ["*"] + vertices
        arrows = [Arrow("star0", "*", star)] + arrows
    q = Quiver(f"ZAinf[{row_lo}..{row_hi}x{col_lo}..{col_hi}]", vertices, arrows)
    names = {a.name for a in q.arrows}
    rels = []
    dropped = []
    for i in range(row_lo, row_hi + 1):
        for j in range(col_lo, col_hi + 1):
            # mesh at (i,j); translate (i,j-1) must be in the window
            if j - 1 < col_lo:
                dropped.append(f"mesh({i},{j}): translate outside window")
                continue
            src = mesh_vertex(i, j - 1)
            terms = []
            ok = True
            if i - 1 >= 1:  # upper route (i,j-1) -> (i-1,j) -> (i,j)
                if f"u{i},{j-1}" in names and f"d{i-1},{j}" in names:
                    terms.append((1, Path(q, src, (f"u{i},{j-1}", f"d{i-1},{j}"))))
                else:
                    ok = False
            # lower route (i,j-1) -> (i+1,j-1) -> (i,j); row below always exists
            if f"d{i},{j-1}" in names and f"u{i+1},{j-1}" in names:
                terms.append((-1, Path(q, src, (f"d{i},{j-1}", f"u{i+1},{j-1}"))))
            else:
                ok = False
            if ok:
                if len(terms) == 1:
                    # row-1 mesh: single length-2 term with coefficient 1
                    terms = [(1, terms[0][1])]
                rels.append(Relation(terms, field))
            else:
                dropped.append(f"mesh({i},{j}): route crosses window boundary")
    meta = {
        "family": "mesh-ZA-inf",
        "window": ((row_lo, row_hi), (col_lo, col_hi)),
        "star": star,
    }
    return QuiverPresentation(q, rels, field, boundary_report=dropped + star_dropped, meta=meta)
