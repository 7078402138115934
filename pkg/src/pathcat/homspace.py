"""Hom spaces of a path category modulo its ideal, as exact linear algebra.

For a presentation (Q, I) the engine computes, per source vertex ``a``,
the whole covariant functor Hom(a, -): a basis of every Hom(a, v)
together with the post-composition matrix of every arrow.  Three
strategies cover the cases that occur:

* acyclic window: one staged quotient per vertex in topological order;
  exact for arbitrary relation generators (any term lengths >= 1).
* cyclic window, homogeneous relations: the same staging by path length;
  the degree at which all classes vanish is the truncation certificate.
* cyclic window, mixed-length generators: a bounded span of all ideal
  elements below an explicit length bound.  The engine checks that the
  resulting basis never needs paths at the bound itself and refuses
  otherwise; completeness beyond that is the caller's concern (every
  consumer of this mode cross-checks dimensions against an independent
  computation).

Basis representatives are the non-pivot paths of a deterministic
elimination, ordered so that the chosen representatives are the least
paths in (length, arrow-index) order.
"""

from .linalg import Matrix, quotient_reps, row_space_basis
from .quiver import Path, enumerate_paths


class TruncationError(Exception):
    """No truncation certificate: hom spaces cannot be certified finite."""


class HomSpace:
    """An exact basis of Hom(a, b) with its chosen path representatives."""

    def __init__(self, homs, source, target):
        self.homs = homs
        self.source = source
        self.target = target
        self.basis = homs.basis(source, target)
        self.dim = len(self.basis)

    def ambient_paths(self):
        return self.homs.ambient_paths(self.source, self.target)

    def ideal_vectors(self):
        """Span of the ideal inside the ambient path space (coordinates)."""
        return self.homs.ideal_vectors(self.source, self.target)

    def __repr__(self):
        return f"Hom({self.source},{self.target}) dim {self.dim}"


class Morphism:
    """An element of Hom(source, target), as coordinates over the basis."""

    __slots__ = ("homs", "source", "target", "coords")

    def __init__(self, homs, source, target, coords):
        self.homs = homs
        self.source = source
        self.target = target
        self.coords = list(coords)
        if len(self.coords) != homs.dim(source, target):
            raise ValueError("coordinate length does not match hom dimension")

    def is_zero(self):
        z = self.homs.field.zero
        return all(c == z for c in self.coords)

    def __add__(self, other):
        f = self.homs.field
        return Morphism(
            self.homs, self.source, self.target,
            [f.add(a, b) for a, b in zip(self.coords, other.coords)],
        )

    def scale(self, c):
        f = self.homs.field
        c = f.of(c)
        return Morphism(self.homs, self.source, self.target, [f.mul(c, x) for x in self.coords])

    def __repr__(self):
        return f"Morphism({self.source}->{self.target}, {self.coords})"


def compose(g, f):
    """Composition g o f (f applied first).  Bilinear, relation-aware."""
    if f.target != g.source:
        raise ValueError("morphisms not composable")
    coords = f.homs.compose_coords(g.coords, (g.source, g.target), f.coords, (f.source, f.target))
    return Morphism(f.homs, f.source, g.target, coords)


class PresentationHoms:
    """Hom-space engine for one presentation.  Read-only after builds."""

    def __init__(self, pres, length_bound=None, certificate_bound=None):
        self.pres = pres
        self.field = pres.field
        self.quiver = pres.quiver
        self._topo = self.quiver.topological_order()
        if self._topo is not None:
            self.mode = "acyclic"
        elif pres.all_homogeneous():
            self.mode = "graded"
        else:
            self.mode = "bounded"
        if length_bound is None:
            length_bound = pres.meta.get("hom_length_bound")
        self.length_bound = length_bound
        self.certificate_bound = certificate_bound or pres.meta.get(
            "certificate_bound", 8 + 2 * len(self.quiver.vertices)
        )
        self._basis = {}   # source -> {vertex: [Path, ...]}
        self._action = {}  # source -> {arrow name: Matrix}

    # -- public API ---------------------------------------------------

    def vertices(self):
        return list(self.quiver.vertices)

    def hom(self, a, b):
        return HomSpace(self, a, b)

    def basis(self, a, b):
        self._ensure(a)
        return self._basis[a][b]

    def dim(self, a, b):
        return len(self.basis(a, b))

    def identity(self, a):
        """Coordinates of the identity in Hom(a, a)."""
        basis = self.basis(a, a)
        coords = [self.field.zero] * len(basis)
        for i, p in enumerate(basis):
            if p.length == 0:
                coords[i] = self.field.one
                return coords
        raise RuntimeError(f"identity class missing at {a}")

    def arrow_matrix(self, a, arrow_name):
        """Post-composition Hom(a, s(arrow)) -> Hom(a, t(arrow))."""
        self._ensure(a)
        return self._action[a][arrow_name]

    def path_matrix(self, a, path):
        """Post-composition by a path, Hom(a, path.source) -> Hom(a, path.target)."""
        self._ensure(a)
        m = Matrix.identity(self.field, self.dim(a, path.source))
        for name in path.arrows:
            m = self._action[a][name] * m
        return m

    def class_of_path(self, path):
        """Coordinates of the class of a raw path in Hom(source, target)."""
        return self.path_matrix(path.source, path).apply(self.identity(path.source))

    def class_of_combo(self, terms):
        """Class of a K-linear combination of parallel raw paths."""
        terms = list(terms)
        if not terms:
            raise ValueError("empty combination")
        a, b = terms[0][1].source, terms[0][1].target
        f = self.field
        out = [f.zero] * self.dim(a, b)
        for c, p in terms:
            if p.source != a or p.target != b:
                raise ValueError("terms are not parallel")
            cls = self.class_of_path(p)
            out = [f.add(x, f.mul(f.of(c), y)) for x, y in zip(out, cls)]
        return out

    def is_ideal_member(self, terms):
        z = self.field.zero
        return all(x == z for x in self.class_of_combo(terms))

    def compose_coords(self, g_coords, g_pair, f_coords, f_pair):
        a, b = f_pair
        b2, c = g_pair
        if b2 != b:
            raise ValueError("non-composable pairs")
        f = self.field
        out = [f.zero] * self.dim(a, c)
        for coef, rep in zip(g_coords, self.basis(b, c)):
            if coef == f.zero:
                continue
            img = self.path_matrix(a, rep).apply(f_coords)
            out = [f.add(x, f.mul(coef, y)) for x, y in zip(out, img)]
        return out

    def radical_basis(self, a, b):
        """Coordinate vectors spanning rad(a, b) inside Hom(a, b).

        Between distinct vertices this is the whole hom space; at a vertex
        it is the span of the positive-length classes (local endomorphism
        rings with nilpotent radical, guaranteed by the certificate).
        """
        basis = self.basis(a, b)
        f = self.field
        vecs = []
        for i, p in enumerate(basis):
            if a != b or p.length > 0:
                v = [f.zero] * len(basis)
                v[i] = f.one
                vecs.append(v)
        return vecs

    def certificate_degree(self, a):
        """A length bound past which every class from ``a`` vanishes."""
        self._ensure(a)
        return self._cert[a]

    # -- ambient / ideal views (the HomSpace contract) ------------------

    def ambient_paths(self, a, b):
        self._ensure(a)
        return enumerate_paths(self.pres, a, b, max(self._cert[a] - 1, 0))

    def ideal_vectors(self, a, b):
        paths = self.ambient_paths(a, b)
        index = {p: i for i, p in enumerate(paths)}
        bound = max((p.length for p in paths), default=0)
        vecs = _ideal_span_vectors(self.pres, a, b, index, bound)
        return row_space_basis(self.field, vecs)

    # -- engine builds ---------------------------------------------------

    def _ensure(self, a):
        if a in self._basis:
            return
        if not self.quiver.has_vertex(a):
            raise ValueError(f"unknown vertex {a!r}")
        if not hasattr(self, "_cert"):
            self._cert = {}
        if self.mode == "acyclic":
            self._build_acyclic(a)
        elif self.mode == "graded":
            self._build_graded(a)
        else:
            self._build_bounded(a)

    def _slot_quotient(self, slot_paths, span_vectors):
        """Quotient of the slot space by the span of the given vectors.

        Slots must arrive sorted by descending path key, so the eliminated
        (pivot) coordinates are the greatest paths and the surviving
        representatives the least.  Returns (basis_paths, proj) with the
        basis back in ascending order.
        """
        f = self.field
        n = len(slot_paths)
        sub = Matrix.from_cols(f, span_vectors, nrows=n)
        reps, proj = quotient_reps(f, n, sub)
        free = [j for j in range(n) if any(x != f.zero for x in reps.data[j])] if reps.cols else []
        order = list(range(len(free)))[::-1]
        basis = [slot_paths[free[i]] for i in order]
        rows = [proj.data[i] for i in order]
        return basis, (Matrix.from_rows(f, rows) if rows else Matrix(f, 0, n))

    def _relation_image_vectors(self, rel, src_basis_dim, act, slot_pos):
        """Images of the map Q(src rel) -> slot space induced by a relation.

        ``act(path_arrows, vec)`` must evaluate the action of an initial
        path segment; ``slot_pos[(last_arrow, k)]`` locates coordinates.
        """
        f = self.field
        q = self.quiver
        cols = []
        for k in range(src_basis_dim):
            x0 = [f.zero] * src_basis_dim
            x0[k] = f.one
            col = [f.zero] * len(slot_pos)
            for c, p in rel.terms:
                head, last = p.arrows[:-1], p.arrows[-1]
                img = act(head, x0)
                if img is None:
                    continue
                for i, val in enumerate(img):
                    if val != f.zero:
                        pos = slot_pos[(last, i)]
                        col[pos] = f.add(col[pos], f.mul(f.of(c), val))
            cols.append(col)
        return cols

    def _build_acyclic(self, a):
        q = self.quiver
        f = self.field
        rel_by_target = {}
        for rel in self.pres.relations:
            rel_by_target.setdefault(rel.target, []).append(rel)
        basis = {}
        action = {}
        for v in self._topo:
            slots = []
            if v == a:
                slots.append((None, None, Path.trivial(q, a)))
            for arr in q.in_arrows(v):
                for k, p in enumerate(basis.get(arr.source, [])):
                    slots.append((arr.name, k, Path(q, a, p.arrows + (arr.name,))))
            slots.sort(key=lambda s: s[2].key(q), reverse=True)
            slot_pos = {(s[0], s[1]): i for i, s in enumerate(slots)}
            span = []
            for rel in rel_by_target.get(v, []):
                src_dim = len(basis.get(rel.source, []))
                if not src_dim:
                    continue

                def act_rel(head, vec):
                    img = vec
                    for name in head:
                        img = action[name].apply(img)
                        if all(t == f.zero for t in img):
                            return None
                    return img

                span.extend(self._relation_image_vectors(rel, src_dim, act_rel, slot_pos))
            vbasis, proj = self._slot_quotient([s[2] for s in slots], span)
            basis[v] = vbasis
            for arr in q.in_arrows(v):
                src_dim = len(basis.get(arr.source, []))
                cols = []
                for k in range(src_dim):
                    e = [f.zero] * len(slots)
                    e[slot_pos[(arr.name, k)]] = f.one
                    cols.append(proj.apply(e))
                action[arr.name] = Matrix.from_cols(f, cols, nrows=len(vbasis))
        self._basis[a] = {v: basis.get(v, []) for v in q.vertices}
        self._action[a] = action
        self._cert[a] = len(q.vertices)  # acyclic: no raw path is longer

    def _build_graded(self, a):
        q = self.quiver
        f = self.field
        rel_by_target = {}
        for rel in self.pres.relations:
            rel_by_target.setdefault(rel.target, []).append(rel)
        deg_basis = [{v: ([Path.trivial(q, a)] if v == a else []) for v in q.vertices}]
        deg_action = []  # deg_action[d][arrow name] : degree d -> d+1
        d = 0
        while any(deg_basis[d][v] for v in q.vertices):
            if d >= self.certificate_bound:
                raise TruncationError(
                    f"no truncation certificate for source {a!r} within degree {self.certificate_bound}"
                )
            new_basis = {}
            new_action = {}
            for v in q.vertices:
                slots = []
                for arr in q.in_arrows(v):
                    for k, p in enumerate(deg_basis[d][arr.source]):
                        slots.append((arr.name, k, Path(q, a, p.arrows + (arr.name,))))
                slots.sort(key=lambda s: s[2].key(q), reverse=True)
                slot_pos = {(s[0], s[1]): i for i, s in enumerate(slots)}
                span = []
                for rel in rel_by_target.get(v, []):
                    ell = rel.max_length
                    src_deg = d + 1 - ell
                    if src_deg < 0:
                        continue
                    src_dim = len(deg_basis[src_deg][rel.source])
                    if not src_dim:
                        continue

                    def act_rel(head, vec, _deg=src_deg):
                        img = vec
                        dd = _deg
                        for name in head:
                            img = deg_action[dd][name].apply(img)
                            dd += 1
                            if all(t == f.zero for t in img):
                                return None
                        return img

                    span.extend(self._relation_image_vectors(rel, src_dim, act_rel, slot_pos))
                vbasis, proj = self._slot_quotient([s[2] for s in slots], span)
                new_basis[v] = vbasis
                for arr in q.in_arrows(v):
                    src_dim = len(deg_basis[d][arr.source])
                    cols = []
                    for k in range(src_dim):
                        e = [f.zero] * len(slots)
                        e[slot_pos[(arr.name, k)]] = f.one
                        cols.append(proj.apply(e))
                    new_action[arr.name] = Matrix.from_cols(f, cols, nrows=len(vbasis))
            deg_basis.append(new_basis)
            deg_action.append(new_action)
            d += 1
        # flatten the degrees into one coordinate space per vertex
        flat = {v: [] for v in q.vertices}
        offs = {v: [] for v in q.vertices}
        for v in q.vertices:
            for dd in range(len(deg_basis)):
                offs[v].append(len(flat[v]))
                flat[v].extend(deg_basis[dd][v])
        acts = {}
        for arr in q.arrows:
            m = Matrix(f, len(flat[arr.target]), len(flat[arr.source]))
            for dd in range(len(deg_action)):
                block = deg_action[dd][arr.name]
                ro, co = offs[arr.target][dd + 1], offs[arr.source][dd]
                for i in range(block.rows):
                    for j in range(block.cols):
                        if block.data[i][j] != f.zero:
                            m.data[ro + i][co + j] = block.data[i][j]
            acts[arr.name] = m
        self._basis[a] = flat
        self._action[a] = acts
        self._cert[a] = d

    def _build_bounded(self, a):
        if self.length_bound is None:
            raise TruncationError(
                "cyclic presentation with mixed-length relations needs an explicit hom length bound"
            )
        q = self.quiver
        f = self.field
        L = self.length_bound
        ambient = {v: enumerate_paths(self.pres, a, v, L + 1) for v in q.vertices}
        basis = {}
        projs = {}
        slot_of = {}
        for v in q.vertices:
            paths = ambient[v]
            index = {p: i for i, p in enumerate(paths)}
            vecs = _ideal_span_vectors(self.pres, a, v, index, L + 1)
            slots = sorted(range(len(paths)), key=lambda i: paths[i].key(q), reverse=True)
            pos = {i: s for s, i in enumerate(slots)}
            span = []
            for vec in vecs:
                sv = [f.zero] * len(paths)
                for i, val in enumerate(vec):
                    if val != f.zero:
                        sv[pos[i]] = val
                span.append(sv)
            vbasis, proj = self._slot_quotient([paths[i] for i in slots], span)
            for p in vbasis:
                if p.length > L:
                    raise TruncationError(
                        f"hom length bound {L} too small for ({a!r},{v!r}): basis needs {p!r}"
                    )
            basis[v] = vbasis
            projs[v] = proj
            slot_of[v] = (index, pos)
        actions = {}
        for arr in q.arrows:
            v = arr.target
            index, pos = slot_of[v]
            proj = projs[v]
            cols = []
            for p in basis[arr.source]:
                ext = Path(q, a, p.arrows + (arr.name,))
                e = [f.zero] * len(ambient[v])
                e[pos[index[ext]]] = f.one
                cols.append(proj.apply(e))
            actions[arr.name] = Matrix.from_cols(f, cols, nrows=len(basis[v]))
        self._basis[a] = basis
        self._action[a] = actions
        self._cert[a] = L + 1


def _ideal_span_vectors(pres, a, b, path_index, max_len):
    """All ideal elements u.rel.p whose every term is inside the ambient."""
    q = pres.quiver
    f = pres.field
    vecs = []
    for rel in pres.relations:
        pre_budget = max_len - rel.max_length
        if pre_budget < 0:
            continue
        for p in enumerate_paths(pres, a, rel.source, pre_budget):
            for u in enumerate_paths(pres, rel.target, b, pre_budget - p.length):
                vec = [f.zero] * len(path_index)
                ok = True
                for c, t in rel.terms:
                    whole = Path(q, a, p.arrows + t.arrows + u.arrows)
                    if whole not in path_index:
                        ok = False
                        break
                    i = path_index[whole]
                    vec[i] = f.add(vec[i], f.of(c))
                if ok:
                    vecs.append(vec)
    return vecs


def hom_basis(pres, a, b):
    """The hom space Hom_{KQ/I}(a, b) of a windowed presentation."""
    return get_homs(pres).hom(a, b)


def ideal_membership(pres, terms):
    """Is a linear combination of parallel raw paths in the ideal?"""
    return get_homs(pres).is_ideal_member(terms)


def radical(pres, a, b):
    """Basis of rad(a, b) as coordinate vectors over Hom(a, b)."""
    return get_homs(pres).radical_basis(a, b)


def get_homs(pres, **kw):
    if not hasattr(pres, "_homs_cache"):
        pres._homs_cache = PresentationHoms(pres, **kw)
    return pres._homs_cache


def validate_presentation(pres, certificate_bound=None):
    """Window report: finiteness, acyclicity, truncation certificates.

    For cyclic windows the per-pair certificate is the least N such that
    every class of a length-N path vanishes; failure up to the search
    bound is reported rather than raised.
    """
    q = pres.quiver
    report = {
        "locally_finite": True,
        "acyclic": q.is_acyclic(),
        "homogeneous": pres.all_homogeneous(),
        "admissible": all(r.is_admissible() for r in pres.relations),
        "boundary_dropped": list(pres.boundary_report),
        "mode": None,
        "certificates": {},
        "certified": True,
        "failures": [],
    }
    homs = get_homs(pres)
    if certificate_bound is not None:
        homs.certificate_bound = certificate_bound
    report["mode"] = homs.mode
    for a in q.vertices:
        try:
            homs._ensure(a)
        except TruncationError as e:
            report["certified"] = False
            report["failures"].append(str(e))
            break
        for b in q.vertices:
            top = max((p.length for p in homs.basis(a, b)), default=-1)
            report["certificates"][(a, b)] = top + 1
    return report
