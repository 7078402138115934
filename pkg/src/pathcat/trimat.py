"""Triangular matrix categories and their augmented-quiver presentations.

The category [T 0; M U] is realized two independent ways:

* ``TriMatContext``: hom spaces as block triples (T-hom, corner, U-hom)
  with the bullet-action composition rule, built directly from the two
  factor engines and the bimodule;
* ``build_augmented``: one new arrow per chosen basis vector of the
  corner bimodule, with the action-encoding relations, giving an honest
  quiver presentation whose hom spaces are computed by the path engine.

``verify_iso_F`` checks the two against each other: equal dimensions
everywhere on the window, the dictionary an isomorphism, and sampled
compositions agreeing.  ``verify_tensor_iso`` does the analogous check
for product quivers with box ideals.
"""

from .linalg import Matrix
from .quiver import Arrow, Path, Quiver, QuiverPresentation, Relation
from .homspace import get_homs, PresentationHoms
from .report import Report, PASS, FAIL


class TriMatContext:
    """Hom spaces and composition of [T 0; M U] in block coordinates.

    Objects are the vertices of the two factors (T-part and U-part
    disjoint); hom(t, u) is the corner space M(u, t), hom(u, t) = 0.
    Implements the same surface as PresentationHoms, so the filtration
    machinery runs on it unchanged.
    """

    def __init__(self, tT, tU, bim, check=True):
        self.tT = tT
        self.tU = tU
        self.bim = bim
        self.field = tT.field
        if set(tT.quiver.vertices) & set(tU.quiver.vertices):
            raise ValueError("factor quivers must have disjoint vertex sets")
        if check:
            rep = bim.validate()
            if not rep["valid"]:
                raise ValueError(f"invalid bimodule: {rep['violations'][0]}")
        self.homsT = get_homs(tT)
        self.homsU = get_homs(tU)
        self.kind = {v: "T" for v in tT.quiver.vertices}
        self.kind.update({v: "U" for v in tU.quiver.vertices})
        self._aug = None

    # -- category surface (mirrors PresentationHoms) ---------------------

    def vertices(self):
        return list(self.tT.quiver.vertices) + list(self.tU.quiver.vertices)

    def _kinds(self, *vs):
        return tuple(self.kind[v] for v in vs)

    def dim(self, a, b):
        ka, kb = self._kinds(a, b)
        if (ka, kb) == ("T", "T"):
            return self.homsT.dim(a, b)
        if (ka, kb) == ("U", "U"):
            return self.homsU.dim(a, b)
        if (ka, kb) == ("T", "U"):
            return self.bim.dim(b, a)
        return 0

    def basis_labels(self, a, b):
        ka, kb = self._kinds(a, b)
        if (ka, kb) == ("T", "T"):
            return [("t", p) for p in self.homsT.basis(a, b)]
        if (ka, kb) == ("U", "U"):
            return [("u", p) for p in self.homsU.basis(a, b)]
        if (ka, kb) == ("T", "U"):
            return [("m", b, a, t) for t in range(self.bim.dim(b, a))]
        return []

    def identity(self, a):
        if self.kind[a] == "T":
            return self.homsT.identity(a)
        return self.homsU.identity(a)

    def compose_coords(self, g_coords, g_pair, f_coords, f_pair):
        x, y = f_pair
        y2, z = g_pair
        if y2 != y:
            raise ValueError("non-composable pairs")
        f = self.field
        out_dim = self.dim(x, z)
        if out_dim == 0:
            return []
        kx, ky, kz = self._kinds(x, y, z)
        if not f_coords or not g_coords:
            return [f.zero] * out_dim
        if (kx, ky, kz) == ("T", "T", "T"):
            return self.homsT.compose_coords(g_coords, g_pair, f_coords, f_pair)
        if (kx, ky, kz) == ("U", "U", "U"):
            return self.homsU.compose_coords(g_coords, g_pair, f_coords, f_pair)
        if (kx, ky, kz) == ("T", "T", "U"):
            # corner . T-morphism: right bullet action on the corner element
            act = self.bim.right_combo_matrix(f_coords, self.homsT.basis(x, y), z, x, y)
            return act.apply(g_coords)
        if (kx, ky, kz) == ("T", "U", "U"):
            # U-morphism . corner: left bullet action
            act = self.bim.left_combo_matrix(g_coords, self.homsU.basis(y, z), x, y, z)
            return act.apply(f_coords)
        return [f.zero] * out_dim

    def radical_basis(self, a, b):
        f = self.field
        if a == b:
            base = (self.homsT if self.kind[a] == "T" else self.homsU).radical_basis(a, b)
            return base
        n = self.dim(a, b)
        return [[f.one if i == j else f.zero for i in range(n)] for j in range(n)]

    # -- module-side plumbing --------------------------------------------

    @property
    def module_pres(self):
        if self._aug is None:
            self._aug = build_augmented(self.tT, self.tU, self.bim, check=False)
        return self._aug

    def generator_coords(self, arrow_name):
        """An augmented-quiver arrow as a morphism of the block category."""
        aug = self.module_pres
        arr = aug.quiver.arrow(arrow_name)
        x, y = arr.source, arr.target
        f = self.field
        if arrow_name in aug.basis_of_arrow:
            i, j, t = aug.basis_of_arrow[arrow_name]
            coords = [f.zero] * self.dim(x, y)
            coords[t] = f.one
            return coords
        engine = self.homsT if self.kind[x] == "T" else self.homsU
        return engine.class_of_path(Path(engine.quiver, x, (arrow_name,)))

    def projective(self, E):
        """Hom(E, -) as a module over the augmented presentation."""
        from .modules import Module

        aug = self.module_pres
        dims = {v: self.dim(E, v) for v in aug.quiver.vertices}
        acts = {}
        for arr in aug.quiver.arrows:
            gen = self.generator_coords(arr.name)
            cols = []
            for k in range(dims[arr.source]):
                e = [self.field.zero] * dims[arr.source]
                e[k] = self.field.one
                cols.append(
                    self.compose_coords(gen, (arr.source, arr.target), e, (E, arr.source))
                )
            acts[arr.name] = Matrix.from_cols(self.field, cols, nrows=dims[arr.target])
        return Module(aug, dims, acts, check=False)


class AugmentedPresentation(QuiverPresentation):
    """Presentation of the augmented quiver (T-part, corner arrows, U-part)."""

    def __init__(self, quiver, relations, field, mu, arrow_of_basis, meta=None):
        super().__init__(quiver, relations, field, meta=meta)
        self.mu = list(mu)
        self.arrow_of_basis = dict(arrow_of_basis)  # (i, j, t) -> arrow name
        self.basis_of_arrow = {v: k for k, v in self.arrow_of_basis.items()}


def build_augmented(tT, tU, bim, check=True):
    """The augmented quiver of the two factors with the bullet relations.

    One new arrow per corner basis vector, plus one relation per
    (U-arrow, compatible basis vector) and per (T-arrow, compatible
    basis vector), encoding the two actions.
    """
    if check:
        rep = bim.validate()
        if not rep["valid"]:
            raise ValueError(f"invalid bimodule: {rep['violations'][0]}")
    field = tT.field
    if set(tT.quiver.vertices) & set(tU.quiver.vertices):
        raise ValueError("factor quivers must have disjoint vertex sets")
    t_arrows = {a.name for a in tT.quiver.arrows}
    u_arrows = {a.name for a in tU.quiver.arrows}
    if t_arrows & u_arrows:
        raise ValueError("factor quivers must have disjoint arrow names")
    arrow_of_basis = {}
    new_arrows = []
    used = t_arrows | u_arrows
    for i, j, t, label in bim.basis_entries():
        name = label if label not in used else f"{label}_{j}_{i}_{t}"
        used.add(name)
        arrow_of_basis[(i, j, t)] = name
        new_arrows.append(Arrow(name, j, i))
    vertices = list(tT.quiver.vertices) + list(tU.quiver.vertices)
    arrows = list(tT.quiver.arrows) + list(tU.quiver.arrows) + new_arrows
    q = Quiver(f"({tT.quiver.name},B,{tU.quiver.name})", vertices, arrows)

    def repath(rel):
        return Relation(
            [(c, Path(q, p.source, p.arrows)) for c, p in rel.terms], field
        )

    base_rels = [repath(r) for r in tT.relations] + [repath(r) for r in tU.relations]
    mu = []
    f = field
    # [q]b - (q.b):  q: i -> i' in U, b in B(i,j)
    for qa in tU.quiver.arrows:
        for j in tT.quiver.vertices:
            for t in range(bim.dim(qa.source, j)):
                terms = [(f.one, Path(q, j, (arrow_of_basis[(qa.source, j, t)], qa.name)))]
                col = bim.left[qa.name][j].col(t)
                for k, c in enumerate(col):
                    if c != f.zero:
                        terms.append(
                            (f.neg(c), Path(q, j, (arrow_of_basis[(qa.target, j, k)],)))
                        )
                mu.append(Relation(terms, f))
    # b[r] - (b.r):  r: j' -> j in T, b in B(i,j)
    for ra in tT.quiver.arrows:
        for i in tU.quiver.vertices:
            for t in range(bim.dim(i, ra.target)):
                terms = [(f.one, Path(q, ra.source, (ra.name, arrow_of_basis[(i, ra.target, t)])))]
                col = bim.right[ra.name][i].col(t)
                for k, c in enumerate(col):
                    if c != f.zero:
                        terms.append(
                            (f.neg(c), Path(q, ra.source, (arrow_of_basis[(i, ra.source, k)],)))
                        )
                mu.append(Relation(terms, f))
    homsT = get_homs(tT)
    homsU = get_homs(tU)
    max_t = _max_basis_length(homsT)
    max_u = _max_basis_length(homsU)
    meta = {"hom_length_bound": max_t + 1 + max_u}
    return AugmentedPresentation(q, base_rels + mu, field, mu, arrow_of_basis, meta=meta)


def _max_basis_length(homs):
    out = 0
    for a in homs.vertices():
        for b in homs.vertices():
            for p in homs.basis(a, b):
                out = max(out, p.length)
    return out


def mu_generator_count(tT, tU, bim):
    """The expected number of action relations, straight from the counts."""
    total = 0
    for i in tU.quiver.vertices:
        for j in tT.quiver.vertices:
            eta = bim.dim(i, j)
            total += eta * len(tU.quiver.out_arrows(i))
            total += eta * len(tT.quiver.in_arrows(j))
    return total


def verify_iso_F(ctx, aug=None, samples=200, rng=None, compare=None, compare_map=None):
    """Check the dictionary between block homs and the augmented quiver.

    Dimension equality on all window pairs, bijectivity of the dictionary,
    composition preserved on sampled pairs; optionally also compares hom
    dimensions against a second presentation through a vertex map.
    """
    import random as _random

    rng = rng or _random.Random(0)
    rep = Report(command="verify_iso_F")
    aug = aug or ctx.module_pres
    homs_aug = get_homs(aug)
    f = ctx.field
    verts = ctx.vertices()
    dict_cols = {}
    dims_ok = True
    for x in verts:
        for y in verts:
            d_block = ctx.dim(x, y)
            d_aug = homs_aug.dim(x, y)
            if d_block != d_aug:
                dims_ok = False
                rep.add(f"dim({x},{y})", FAIL, f"block {d_block} != augmented {d_aug}")
                continue
            cols = [_dictionary_image(ctx, homs_aug, aug, x, y, k) for k in range(d_block)]
            dict_cols[(x, y)] = Matrix.from_cols(f, cols, nrows=d_aug)
            if d_block and dict_cols[(x, y)].rank() != d_block:
                dims_ok = False
                rep.add(f"dict({x},{y})", FAIL, "dictionary not bijective")
    rep.add("hom-dimensions", PASS if dims_ok else FAIL,
            f"{len(verts)}x{len(verts)} pairs")
    if dims_ok:
        bad = 0
        tried = 0
        pool = [
            (x, y, z)
            for x in verts
            for y in verts
            for z in verts
            if ctx.dim(x, y) and ctx.dim(y, z)
        ]
        for _ in range(samples):
            if not pool:
                break
            x, y, z = pool[rng.randrange(len(pool))]
            a = [f.of(rng.randint(-2, 2)) for _ in range(ctx.dim(x, y))]
            b = [f.of(rng.randint(-2, 2)) for _ in range(ctx.dim(y, z))]
            lhs_block = ctx.compose_coords(b, (y, z), a, (x, y))
            lhs = dict_cols[(x, z)].apply(lhs_block) if ctx.dim(x, z) else [f.zero] * homs_aug.dim(x, z)
            fa = dict_cols[(x, y)].apply(a)
            fb = dict_cols[(y, z)].apply(b)
            rhs = homs_aug.compose_coords(fb, (y, z), fa, (x, y))
            tried += 1
            if lhs != rhs:
                bad += 1
        rep.add("composition-samples", PASS if bad == 0 else FAIL, f"{tried} sampled, {bad} bad")
    if compare is not None:
        cmp_homs = get_homs(compare)
        vmap = compare_map or {v: v for v in verts}
        mismatches = []
        for x in verts:
            for y in verts:
                if ctx.dim(x, y) != cmp_homs.dim(vmap[x], vmap[y]):
                    mismatches.append((x, y, ctx.dim(x, y), cmp_homs.dim(vmap[x], vmap[y])))
        rep.add("compare-dims", PASS if not mismatches else FAIL, mismatches[:5] or None)
    return rep


def _dictionary_image(ctx, homs_aug, aug, x, y, k):
    """Image in the augmented quiver of the k-th block basis element."""
    label = ctx.basis_labels(x, y)[k]
    if label[0] in ("t", "u"):
        p = label[1]
        return homs_aug.class_of_path(Path(aug.quiver, x, p.arrows))
    _, i, j, t = label
    return homs_aug.class_of_path(Path(aug.quiver, j, (aug.arrow_of_basis[(i, j, t)],)))


def verify_tensor_iso(p1, p2, pairs=None):
    """dim Hom((p,r),(q,s)) = dim Hom(p,q) * dim Hom(r,s) on window pairs."""
    from .quiver import product_presentation, _pv

    rep = Report(command="verify_tensor_iso")
    prod = product_presentation(p1, p2)
    h1 = get_homs(p1)
    h2 = get_homs(p2)
    hp = get_homs(prod)
    if pairs is None:
        pairs = [
            (a, b, c, d)
            for a in p1.quiver.vertices
            for b in p1.quiver.vertices
            for c in p2.quiver.vertices
            for d in p2.quiver.vertices
        ]
    bad = []
    for a, b, c, d in pairs:
        lhs = hp.dim(_pv(a, c), _pv(b, d))
        rhs = h1.dim(a, b) * h2.dim(c, d)
        if lhs != rhs:
            bad.append(((a, c), (b, d), lhs, rhs))
    rep.add("tensor-dimension-law", PASS if not bad else FAIL,
            f"{len(pairs)} pairs" if not bad else bad[:5])
    return rep
