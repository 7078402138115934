"""Quivers, paths, relations and presentations.

Conventions used throughout the library:

* ``Path`` stores its arrows in traversal order (first applied first).
* Relation text in the DSL uses function order ``g.f`` (f then g), which
  matches the order relation lists are usually written in; parsed
  relations are stored in traversal order.
* Vertices and arrows keep their declaration order, and every
  deterministic enumeration (paths, hom bases) is derived from it.
"""

from dataclasses import dataclass
from .field import QQ
from .linalg import Matrix


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, name, vertices, arrows):
        self.name = name
        self.vertices = list(vertices)
        vertex_set = set(self.vertices)
        if len(vertex_set) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        self.arrows = []
        self._arrow_by_name = {}
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            if a.source not in vertex_set or a.target not in vertex_set:
                raise ValueError(f"arrow {a.name}: undeclared endpoint")
            if a.name in self._arrow_by_name:
                raise ValueError(f"duplicate arrow id {a.name}")
            self.arrows.append(a)
            self._arrow_by_name[a.name] = a
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.source].append(a)
            self._in[a.target].append(a)

    def arrow(self, name):
        return self._arrow_by_name[name]

    def has_vertex(self, v):
        return v in self._out

    def out_arrows(self, v):
        return self._out[v]

    def in_arrows(self, v):
        return self._in[v]

    def arrow_index(self, name):
        return self.arrows.index(self._arrow_by_name[name])

    def is_acyclic(self):
        return self.topological_order() is not None

    def topological_order(self):
        """Vertices in topological order, or None if the quiver has a cycle."""
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while queue:
            v = queue.pop(0)
            order.append(v)
            for a in self._out[v]:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        if len(order) != len(self.vertices):
            return None
        return order

    def __repr__(self):
        return f"Quiver({self.name}: {len(self.vertices)} vertices, {len(self.arrows)} arrows)"


class Path:
    """A path, stored as (source, arrows in traversal order)."""

    __slots__ = ("source", "arrows", "target")

    def __init__(self, quiver, source, arrow_names):
        self.source = source
        self.arrows = tuple(arrow_names)
        v = source
        for name in self.arrows:
            a = quiver.arrow(name)
            if a.source != v:
                raise ValueError(f"non-composable arrows in path at {name}")
            v = a.target
        self.target = v

    @classmethod
    def trivial(cls, quiver, v):
        return cls(quiver, v, ())

    @property
    def length(self):
        return len(self.arrows)

    def key(self, quiver):
        """Deterministic sort key: length, then arrow declaration indices."""
        return (len(self.arrows), tuple(quiver.arrow_index(a) for a in self.arrows))

    def then(self, quiver, other):
        """Concatenation self-first-then-other (traversal order)."""
        if self.target != other.source:
            raise ValueError("paths not composable")
        return Path(quiver, self.source, self.arrows + other.arrows)

    def __eq__(self, other):
        return (
            isinstance(other, Path)
            and self.source == other.source
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash((self.source, self.arrows))

    def __repr__(self):
        if not self.arrows:
            return f"e_{self.source}"
        return ".".join(reversed([str(a) for a in self.arrows]))  # function order


class Relation:
    """A K-linear combination of parallel paths.

    Admissible relations have every term of length >= 2; augmented-quiver
    ideals also use generators with length-1 terms, so only parallelism
    and nonzero terms are enforced here.  Admissibility is checked where
    the contract requires it (DSL input, presentation validation).
    """

    def __init__(self, terms, field=QQ):
        terms = [(field.of(c), p) for c, p in terms if field.of(c) != field.zero]
        if not terms:
            raise ValueError("relation has no nonzero term")
        src = terms[0][1].source
        tgt = terms[0][1].target
        for _, p in terms:
            if p.source != src or p.target != tgt:
                raise ValueError("relation terms are not parallel")
            if p.length < 1:
                raise ValueError("relation term of length 0")
        self.terms = tuple(terms)
        self.source = src
        self.target = tgt
        self.field = field

    @property
    def min_length(self):
        return min(p.length for _, p in self.terms)

    @property
    def max_length(self):
        return max(p.length for _, p in self.terms)

    def is_admissible(self):
        return self.min_length >= 2

    def is_homogeneous(self):
        return self.min_length == self.max_length

    def __repr__(self):
        parts = []
        for c, p in self.terms:
            parts.append(f"{c}*{p!r}" if c != self.field.one else repr(p))
        return " + ".join(parts)


class AdmissibilityError(ValueError):
    pass


class QuiverPresentation:
    """A finite window of a quiver together with its relation generators."""

    def __init__(self, quiver, relations, field=QQ, boundary_report=None, meta=None):
        self.quiver = quiver
        self.relations = list(relations)
        self.field = field
        # relations dropped at a window boundary, for window-too-small diagnostics
        self.boundary_report = list(boundary_report or [])
        self.meta = dict(meta or {})

    def require_admissible(self):
        for rel in self.relations:
            if not rel.is_admissible():
                raise AdmissibilityError(f"non-admissible relation {rel!r}")

    def all_homogeneous(self):
        return all(r.is_homogeneous() for r in self.relations)

    def restrict(self, vertices, name=None):
        """Sub-presentation on a vertex subset; crossing relations are dropped."""
        vset = set(vertices)
        arrows = [a for a in self.quiver.arrows if a.source in vset and a.target in vset]
        sub = Quiver(name or f"{self.quiver.name}|sub", [v for v in self.quiver.vertices if v in vset], arrows)
        kept, dropped = [], []
        names = {a.name for a in arrows}
        for rel in self.relations:
            if all(set(p.arrows) <= names for _, p in rel.terms):
                kept.append(
                    Relation(
                        [(c, Path(sub, p.source, p.arrows)) for c, p in rel.terms],
                        self.field,
                    )
                )
            else:
                dropped.append(repr(rel))
        return QuiverPresentation(sub, kept, self.field, boundary_report=dropped, meta=self.meta)

    def __repr__(self):
        return f"Presentation({self.quiver!r}, {len(self.relations)} relations)"


def enumerate_paths(pres, a, b, max_len):
    """All raw paths a -> b of length <= max_len, ignoring relations.

    Deterministic order: by length, then lexicographically on arrow
    declaration indices.
    """
    q = pres.quiver if isinstance(pres, QuiverPresentation) else pres
    if not q.has_vertex(a) or not q.has_vertex(b):
        raise ValueError("endpoint is not a vertex")
    found = []

    def dfs(v, acc):
        if len(acc) > max_len:
            return
        if v == b:
            found.append(Path(q, a, tuple(acc)))
        if len(acc) == max_len:
            return
        for arrow in q.out_arrows(v):
            acc.append(arrow.name)
            dfs(arrow.target, acc)
            acc.pop()

    dfs(a, [])
    found.sort(key=lambda p: p.key(q))
    return found


def count_paths_by_length(quiver, a, b, max_len):
    """Number of raw paths a -> b of each length 0..max_len (cheap DP)."""
    counts = {v: 0 for v in quiver.vertices}
    counts[a] = 1
    out = []
    for _ in range(max_len + 1):
        out.append(counts[b])
        nxt = {v: 0 for v in quiver.vertices}
        for arr in quiver.arrows:
            if counts[arr.source]:
                nxt[arr.target] += counts[arr.source]
        counts = nxt
    return out


# -- product quivers and box ideals ------------------------------------


def _pv(v, w):
    return f"({v},{w})"


def product_quiver(q1, q2):
    """The product quiver: vertices Q0 x Q0', arrows (Q1 x Q0') u (Q0 x Q1')."""
    vertices = [_pv(v, w) for v in q1.vertices for w in q2.vertices]
    arrows = []
    for a in q1.arrows:
        for w in q2.vertices:
            arrows.append(Arrow(f"({a.name},{w})", _pv(a.source, w), _pv(a.target, w)))
    for v in q1.vertices:
        for b in q2.arrows:
            arrows.append(Arrow(f"({v},{b.name})", _pv(v, b.source), _pv(v, b.target)))
    return Quiver(f"{q1.name}x{q2.name}", vertices, arrows)


def box_ideal(p1, p2):
    """Generators of the box ideal on the product quiver.

    Relations of p1 at every vertex of p2, symmetrically, plus one
    commutativity relation per pair of factor arrows.
    """
    prod = product_quiver(p1.quiver, p2.quiver)
    field = p1.field
    rels = []
    for rel in p1.relations:
        for w in p2.quiver.vertices:
            terms = [
                (c, Path(prod, _pv(p.source, w), tuple(f"({a},{w})" for a in p.arrows)))
                for c, p in rel.terms
            ]
            rels.append(Relation(terms, field))
    for v in p1.quiver.vertices:
        for rel in p2.relations:
            terms = [
                (c, Path(prod, _pv(v, p.source), tuple(f"({v},{b})" for b in p.arrows)))
                for c, p in rel.terms
            ]
            rels.append(Relation(terms, field))
    # commuting squares (p',beta)(alpha,q) - (alpha,q')(p,beta)
    for a in p1.quiver.arrows:
        for b in p2.quiver.arrows:
            first = Path(
                prod, _pv(a.source, b.source), (f"({a.name},{b.source})", f"({a.target},{b.name})")
            )
            second = Path(
                prod, _pv(a.source, b.source), (f"({a.source},{b.name})", f"({a.name},{b.target})")
            )
            rels.append(Relation([(field.one, first), (field.of(-1), second)], field))
    return prod, rels


def product_presentation(p1, p2):
    prod, rels = box_ideal(p1, p2)
    return QuiverPresentation(prod, rels, p1.field)


def opposite_presentation(pres):
    """The opposite presentation: arrows reversed, relation paths reversed."""
    q = pres.quiver
    qop = Quiver(
        f"{q.name}^op",
        list(q.vertices),
        [Arrow(a.name, a.target, a.source) for a in q.arrows],
    )
    rels = []
    for rel in pres.relations:
        rels.append(
            Relation(
                [(c, Path(qop, p.target, tuple(reversed(p.arrows)))) for c, p in rel.terms],
                pres.field,
            )
        )
    return QuiverPresentation(qop, rels, pres.field)
