"""Finite-dimensional modules over a windowed presentation.

A module is a representation bounded by the relation generators: a
vector space per vertex and a matrix per arrow, with every generator
evaluating to the zero matrix.  This file provides the abelian-category
toolkit used everywhere downstream: hom spaces between modules, kernels
and cokernels, radicals and projective covers, minimal resolutions and
Ext groups, isomorphism/decomposition certificates and trace
submodules.
"""

from .linalg import Matrix, quotient_reps, row_space_basis, span_dim
from .homspace import get_homs


class WindowLimitedError(Exception):
    """A resolution ran past the window's reach; the answer is not certified."""


class Module:
    def __init__(self, pres, dims=None, acts=None, check=True):
        self.pres = pres
        self.field = pres.field
        q = pres.quiver
        self.dims = {v: 0 for v in q.vertices}
        for v, d in (dims or {}).items():
            if not q.has_vertex(v):
                raise ValueError(f"unknown vertex {v!r}")
            self.dims[v] = d
        self.acts = {}
        for a in q.arrows:
            m = (acts or {}).get(a.name)
            if m is None:
                m = Matrix(self.field, self.dims[a.target], self.dims[a.source])
            if (m.rows, m.cols) != (self.dims[a.target], self.dims[a.source]):
                raise ValueError(f"action of {a.name} has wrong shape")
            self.acts[a.name] = m
        if check:
            bad = self.relation_violations()
            if bad:
                raise ValueError(f"representation not bounded by the ideal: {bad[0]}")

    # -- structure ------------------------------------------------------

    def at(self, v):
        return self.dims[v]

    @property
    def total_dim(self):
        return sum(self.dims.values())

    def is_zero(self):
        return self.total_dim == 0

    def dim_vector(self):
        return tuple(self.dims[v] for v in self.pres.quiver.vertices)

    def path_action(self, path):
        m = Matrix.identity(self.field, self.dims[path.source])
        for name in path.arrows:
            m = self.acts[name] * m
        return m

    def relation_violations(self):
        out = []
        f = self.field
        for rel in self.pres.relations:
            total = Matrix(f, self.dims[rel.target], self.dims[rel.source])
            for c, p in rel.terms:
                total = total + self.path_action(p).scale(c)
            if not total.is_zero():
                out.append(repr(rel))
        return out

    def __repr__(self):
        nz = {v: d for v, d in self.dims.items() if d}
        return f"Module({nz})"


class ModuleMap:
    def __init__(self, src, dst, mats, check=True):
        self.src = src
        self.dst = dst
        self.field = src.field
        self.mats = {}
        for v in src.pres.quiver.vertices:
            m = mats.get(v)
            if m is None:
                m = Matrix(self.field, dst.dims[v], src.dims[v])
            self.mats[v] = m
        if check and not self.intertwines():
            raise ValueError("not a module map (intertwining fails)")

    def intertwines(self):
        for a in self.src.pres.quiver.arrows:
            left = self.mats[a.target] * self.src.acts[a.name]
            right = self.dst.acts[a.name] * self.mats[a.source]
            if left != right:
                return False
        return True

    def compose(self, other):
        """self o other (other applied first)."""
        return ModuleMap(
            other.src, self.dst,
            {v: self.mats[v] * other.mats[v] for v in self.mats},
            check=False,
        )

    def __add__(self, other):
        return ModuleMap(
            self.src, self.dst,
            {v: self.mats[v] + other.mats[v] for v in self.mats},
            check=False,
        )

    def scale(self, c):
        return ModuleMap(self.src, self.dst, {v: m.scale(c) for v, m in self.mats.items()}, check=False)

    def is_zero(self):
        return all(m.is_zero() for m in self.mats.values())

    def rank_at(self, v):
        return self.mats[v].rank()

    def is_injective(self):
        return all(self.rank_at(v) == self.src.dims[v] for v in self.mats)

    def is_surjective(self):
        return all(self.rank_at(v) == self.dst.dims[v] for v in self.mats)

    def is_iso(self):
        return self.is_injective() and self.is_surjective()

    def flatten(self):
        """All matrix entries in one vector (fixed vertex / row-major order)."""
        out = []
        for v in self.src.pres.quiver.vertices:
            for row in self.mats[v].data:
                out.extend(row)
        return out


def zero_module(pres):
    return Module(pres, {}, {}, check=False)


def simple_at(pres, v):
    return Module(pres, {v: 1}, {}, check=True)


def identity_map(m):
    return ModuleMap(m, m, {v: Matrix.identity(m.field, m.dims[v]) for v in m.dims}, check=False)


def direct_sum(pres, mods):
    """Direct sum with its inclusion and projection maps."""
    f = pres.field
    dims = {v: sum(m.dims[v] for m in mods) for v in pres.quiver.vertices}
    acts = {}
    for a in pres.quiver.arrows:
        big = Matrix(f, dims[a.target], dims[a.source])
        ro = co = 0
        for m in mods:
            blk = m.acts[a.name]
            for i in range(blk.rows):
                for j in range(blk.cols):
                    big.data[ro + i][co + j] = blk.data[i][j]
            ro += blk.rows
            co += blk.cols
        acts[a.name] = big
    total = Module(pres, dims, acts, check=False)
    incls, projs = [], []
    offs = {v: 0 for v in dims}
    for m in mods:
        inc = {}
        prj = {}
        for v in dims:
            mi = Matrix(f, dims[v], m.dims[v])
            mp = Matrix(f, m.dims[v], dims[v])
            for i in range(m.dims[v]):
                mi.data[offs[v] + i][i] = f.one
                mp.data[i][offs[v] + i] = f.one
            inc[v] = mi
            prj[v] = mp
        incls.append(ModuleMap(m, total, inc, check=False))
        projs.append(ModuleMap(total, m, prj, check=False))
        for v in dims:
            offs[v] += m.dims[v]
    return total, incls, projs


def projective_at(pres, E):
    """The representable functor Hom(E, -) as a module (E a vertex or list)."""
    homs = get_homs(pres)
    if isinstance(E, (list, tuple)):
        mods = [projective_at(pres, v) for v in E]
        return direct_sum(pres, mods)[0]
    dims = {v: homs.dim(E, v) for v in pres.quiver.vertices}
    acts = {a.name: homs.arrow_matrix(E, a.name) for a in pres.quiver.arrows}
    return Module(pres, dims, acts, check=False)


def hom_modules(a, b):
    """A basis of Hom(a, b), solving the intertwining system exactly."""
    pres = a.pres
    f = a.field
    q = pres.quiver
    offsets = {}
    total = 0
    for v in q.vertices:
        offsets[v] = total
        total += b.dims[v] * a.dims[v]
    rows = []
    for arr in q.arrows:
        s, t = arr.source, arr.target
        A = a.acts[arr.name]
        B = b.acts[arr.name]
        # f_t A - B f_s = 0, one equation per (i, j) in dst(t) x src(s)
        for i in range(b.dims[t]):
            for j in range(a.dims[s]):
                row = [f.zero] * total
                for k in range(a.dims[t]):  # f_t[i,k] A[k,j]
                    if A.data[k][j] != f.zero:
                        row[offsets[t] + i * a.dims[t] + k] = f.add(
                            row[offsets[t] + i * a.dims[t] + k], A.data[k][j]
                        )
                for k in range(b.dims[s]):  # -B[i,k] f_s[k,j]
                    if B.data[i][k] != f.zero:
                        idx = offsets[s] + k * a.dims[s] + j
                        row[idx] = f.sub(row[idx], B.data[i][k])
                if any(x != f.zero for x in row):
                    rows.append(row)
    if not rows:
        kernel_cols = [
            [f.one if i == j else f.zero for i in range(total)] for j in range(total)
        ]
    else:
        ker, _ = Matrix.from_rows(f, rows).kernel_image()
        kernel_cols = ker.columns()
    maps = []
    for col in kernel_cols:
        mats = {}
        for v in q.vertices:
            m = Matrix(f, b.dims[v], a.dims[v])
            for i in range(b.dims[v]):
                for j in range(a.dims[v]):
                    m.data[i][j] = col[offsets[v] + i * a.dims[v] + j]
            mats[v] = m
        maps.append(ModuleMap(a, b, mats, check=False))
    return maps


def map_coordinates(basis_maps, target_map):
    """Coordinates of target_map over a basis of maps, or None."""
    f = target_map.field
    cols = [m.flatten() for m in basis_maps]
    vec = target_map.flatten()
    if not cols:
        return [] if all(x == f.zero for x in vec) else None
    return Matrix.from_cols(f, cols).solve(vec)


def kernel(fmap):
    """(Kernel module, inclusion into the domain)."""
    f = fmap.field
    pres = fmap.src.pres
    bases = {}
    dims = {}
    for v in pres.quiver.vertices:
        ker, _ = fmap.mats[v].kernel_image()
        bases[v] = ker
        dims[v] = ker.cols
    acts = {}
    for a in pres.quiver.arrows:
        rhs = fmap.src.acts[a.name] * bases[a.source]
        sol = _solve_matrix(bases[a.target], rhs)
        acts[a.name] = sol
    kmod = Module(pres, dims, acts, check=False)
    incl = ModuleMap(kmod, fmap.src, {v: bases[v] for v in bases}, check=False)
    return kmod, incl


def image(fmap):
    """(Image module inside the codomain, inclusion)."""
    f = fmap.field
    pres = fmap.src.pres
    bases = {}
    dims = {}
    for v in pres.quiver.vertices:
        _, im = fmap.mats[v].kernel_image()
        bases[v] = im
        dims[v] = im.cols
    acts = {}
    for a in pres.quiver.arrows:
        rhs = fmap.dst.acts[a.name] * bases[a.source]
        acts[a.name] = _solve_matrix(bases[a.target], rhs)
    imod = Module(pres, dims, acts, check=False)
    incl = ModuleMap(imod, fmap.dst, bases, check=False)
    return imod, incl


def cokernel(fmap):
    """(Cokernel module, projection from the codomain)."""
    pres = fmap.src.pres
    sub = {v: image_basis(fmap.mats[v]) for v in pres.quiver.vertices}
    return quotient_module(fmap.dst, sub)


def image_basis(matrix):
    _, im = matrix.kernel_image()
    return im


def quotient_module(m, sub_bases):
    """Quotient by a sub-representation given as column bases per vertex."""
    f = m.field
    pres = m.pres
    projs = {}
    secs = {}
    dims = {}
    for v in pres.quiver.vertices:
        sub = sub_bases.get(v) or Matrix(f, m.dims[v], 0)
        reps, proj = quotient_reps(f, m.dims[v], sub)
        projs[v] = proj
        secs[v] = reps
        dims[v] = proj.rows
    acts = {}
    for a in pres.quiver.arrows:
        acts[a.name] = projs[a.target] * (m.acts[a.name] * secs[a.source])
    qmod = Module(pres, dims, acts, check=False)
    proj_map = ModuleMap(m, qmod, projs, check=False)
    return qmod, proj_map


def span_submodule(m, seeds):
    """Smallest submodule containing the seed vectors (per-vertex lists)."""
    f = m.field
    pres = m.pres
    vecs = {v: [list(x) for x in seeds.get(v, [])] for v in pres.quiver.vertices}
    changed = True
    while changed:
        changed = False
        for a in pres.quiver.arrows:
            for x in list(vecs[a.source]):
                y = m.acts[a.name].apply(x)
                if any(t != f.zero for t in y) and not _in_span(f, vecs[a.target], y):
                    vecs[a.target].append(y)
                    changed = True
    bases = {}
    dims = {}
    for v in pres.quiver.vertices:
        rb = row_space_basis(f, vecs[v])
        bases[v] = Matrix.from_cols(f, [list(r) for r in rb], nrows=m.dims[v])
        dims[v] = len(rb)
    acts = {}
    for a in pres.quiver.arrows:
        acts[a.name] = _solve_matrix(bases[a.target], m.acts[a.name] * bases[a.source])
    smod = Module(pres, dims, acts, check=False)
    incl = ModuleMap(smod, m, bases, check=False)
    return smod, incl


def _in_span(field, vecs, v):
    if not vecs:
        return all(x == field.zero for x in v)
    return span_dim(field, vecs + [v]) == span_dim(field, vecs)


def _solve_matrix(basis, rhs):
    """X with basis * X = rhs; basis has full column rank by construction."""
    f = basis.field
    cols = []
    for j in range(rhs.cols):
        x = basis.solve(rhs.col(j))
        if x is None:
            raise ValueError("vector not in subspace (submodule not closed?)")
        cols.append(x)
    return Matrix.from_cols(f, cols, nrows=basis.cols)


def radical_submodule(m):
    """rad m = sum of the images of all arrow actions."""
    seeds = {}
    for a in m.pres.quiver.arrows:
        im = image_basis(m.acts[a.name])
        seeds.setdefault(a.target, []).extend(im.columns())
    return span_submodule(m, seeds)


def radical_top_cover(m):
    """(rad m, top m, projective cover of m).

    The cover is assembled from the top multiplicities: its kernel is
    contained in rad(P), which tests check explicitly.
    """
    pres = m.pres
    f = m.field
    rad, rad_incl = radical_submodule(m)
    sub = {v: rad_incl.mats[v] for v in pres.quiver.vertices}
    top, top_proj = quotient_module(m, sub)
    summands = []
    lifts = []  # (vertex, preimage vector in m(v))
    for v in pres.quiver.vertices:
        if top.dims[v] == 0:
            continue
        reps, proj = quotient_reps(f, m.dims[v], sub[v])
        for k in range(top.dims[v]):
            summands.append(v)
            lifts.append((v, reps.col(k)))
    if not summands:
        P = zero_module(pres)
        return rad, top, ModuleMap(P, m, {}, check=False)
    homs = get_homs(pres)
    pmods = [projective_at(pres, v) for v in summands]
    P, incls, _ = direct_sum(pres, pmods)
    mats = {u: Matrix(f, m.dims[u], P.dims[u]) for u in pres.quiver.vertices}
    off = {u: 0 for u in pres.quiver.vertices}
    for (v, w), pmod in zip(lifts, pmods):
        for u in pres.quiver.vertices:
            for k, path in enumerate(homs.basis(v, u)):
                col = m.path_action(path).apply(w)
                for i, val in enumerate(col):
                    mats[u].data[i][off[u] + k] = val
            off[u] += pmod.dims[u]
    cover = ModuleMap(P, m, mats, check=False)
    return rad, top, cover


def minimal_resolution(m, length):
    """Minimal projective resolution up to the given length.

    Returns (projectives, differentials, augmentation, complete) where
    ``complete`` is True when the final syzygy vanished inside the window.
    """
    projectives = []
    diffs = []
    _, _, cover = radical_top_cover(m)
    projectives.append(cover.src)
    augment = cover
    current = cover
    complete = current.src.is_zero() and m.is_zero()
    for _ in range(length):
        syz, incl = kernel(current)
        if syz.is_zero():
            complete = True
            break
        _, _, cov = radical_top_cover(syz)
        step = incl.compose(cov)
        projectives.append(cov.src)
        diffs.append(step)
        current = cov
    return projectives, diffs, augment, complete


def projective_dimension(m, cap):
    """pd m, certified within the window; raises WindowLimitedError at the cap."""
    if m.is_zero():
        return 0
    projectives, diffs, _, complete = minimal_resolution(m, cap)
    if not complete:
        raise WindowLimitedError(f"resolution did not terminate within {cap} steps")
    return len(projectives) - 1


def ext(a, b, degree):
    """dim Ext^degree(a, b) with a basis of cocycle maps.

    Computed as cohomology of Hom(P., b) for a minimal resolution of a;
    raises WindowLimitedError when the resolution is cut by the window.
    """
    if degree == 0:
        basis = hom_modules(a, b)
        return len(basis), basis
    projectives, diffs, _, complete = minimal_resolution(a, degree + 1)
    if len(projectives) <= degree:
        if complete:
            return 0, []
        raise WindowLimitedError("resolution cut by the window before the requested degree")
    if len(projectives) == degree + 1 and not complete:
        # one more differential is needed to compute the kernel honestly
        raise WindowLimitedError("resolution cut by the window before degree+1")
    f = a.field
    h_deg = hom_modules(projectives[degree], b)
    # incoming: precompose Hom(P_{degree-1}, b) with d_degree
    h_prev = hom_modules(projectives[degree - 1], b)
    d_in = diffs[degree - 1]
    incoming = []
    for h in h_prev:
        coords = map_coordinates(h_deg, h.compose(d_in))
        if coords is None:
            raise RuntimeError("hom basis incomplete")
        incoming.append(coords)
    # outgoing: postcompose with d_{degree+1} (zero map past a finished resolution)
    if degree < len(diffs):
        d_out = diffs[degree]
        h_next = hom_modules(projectives[degree + 1], b)
        if h_next and h_deg:
            rows = []
            for h in h_deg:
                coords = map_coordinates(h_next, h.compose(d_out))
                if coords is None:
                    raise RuntimeError("hom basis incomplete")
                rows.append(coords)
            mat = Matrix.from_rows(f, rows).transpose()
            zker, _ = mat.kernel_image()
            cocycles = zker.columns()
        else:
            cocycles = [
                [f.one if i == j else f.zero for i in range(len(h_deg))]
                for j in range(len(h_deg))
            ]
    else:
        cocycles = [
            [f.one if i == j else f.zero for i in range(len(h_deg))]
            for j in range(len(h_deg))
        ]
    boundaries = incoming
    zdim = span_dim(f, cocycles)
    bdim = span_dim(f, boundaries)
    dim = zdim - bdim
    reps = []
    for c in cocycles:
        if len(reps) == dim:
            break
        if span_dim(f, boundaries + [r for r in reps] + [c]) > bdim + len(reps):
            reps.append(c)
    cocycle_maps = []
    for c in reps:
        total = None
        for coef, h in zip(c, h_deg):
            part = h.scale(coef)
            total = part if total is None else total + part
        if total is not None:
            cocycle_maps.append(total)
    return dim, cocycle_maps


class DecomposeResult:
    def __init__(self, status, multiplicities=None, witness=None, reason=""):
        self.status = status  # "yes" | "no" | "inconclusive"
        self.multiplicities = multiplicities
        self.witness = witness
        self.reason = reason

    def __bool__(self):
        return self.status == "yes"

    def __repr__(self):
        return f"DecomposeResult({self.status}, {self.multiplicities}, {self.reason})"


def decompose_against(m, candidates, rng=None, tries=24):
    """Try to certify m = direct sum of candidate modules with multiplicities.

    Deterministic first (dimension vectors, then the all-ones hom combo and
    single basis maps), with a seeded rational fallback.  Returns "no" only
    on a certain obstruction; otherwise "yes" with an explicit isomorphism
    or "inconclusive".
    """
    import random as _random

    pres = m.pres
    f = m.field
    rng = rng or _random.Random(0)
    verts = pres.quiver.vertices
    if m.is_zero():
        return DecomposeResult("yes", [0] * len(candidates))
    cols = [[c.dims[v] for v in verts] for c in candidates]
    target = [m.dims[v] for v in verts]
    unique, solutions = _nonneg_integer_solutions(f, cols, target)
    if not solutions:
        if unique:
            return DecomposeResult("no", reason="dimension vectors do not match")
        return DecomposeResult("inconclusive", reason="underdetermined dimension system")
    last = None
    for mults in solutions:
        parts = []
        for n, c in zip(mults, candidates):
            parts.extend([c] * n)
        D, _, _ = direct_sum(pres, parts)
        hom_dm = hom_modules(D, m)
        hom_dd = hom_modules(D, D)
        if len(hom_dm) != len(hom_dd):
            last = DecomposeResult("no", mults, reason="hom dimension obstruction")
            continue
        ones = None
        for h in hom_dm:
            ones = h if ones is None else ones + h
        search = ([ones] if ones is not None else []) + hom_dm
        for h in search:
            if h.is_iso():
                return DecomposeResult("yes", mults, witness=h)
        for _ in range(tries):
            total = None
            for h in hom_dm:
                part = h.scale(f.of(rng.randint(-3, 3)))
                total = part if total is None else total + part
            if total is not None and total.is_iso():
                return DecomposeResult("yes", mults, witness=total)
        last = DecomposeResult("inconclusive", mults, reason="no isomorphism found in search budget")
    if unique and last is not None and last.status == "no":
        return last
    return DecomposeResult(
        "inconclusive" if not unique or last is None or last.status != "no" else "no",
        last.multiplicities if last else None,
        reason=last.reason if last else "",
    )


def _nonneg_integer_solutions(field, cols, target):
    """(unique?, solutions) for sum n_i col_i = target over nonneg integers.

    ``unique`` reports whether the linear system pins the solution down, so
    an empty list can be read as a certain obstruction.  Underdetermined
    systems get a bounded enumeration of small solutions.
    """
    if not cols:
        return True, ([[]] if not any(target) else [])
    mat = Matrix.from_cols(field, [list(map(field.of, c)) for c in cols])
    vec = [field.of(t) for t in target]
    sol = mat.solve(vec)
    if sol is None:
        return True, []
    ker, _ = mat.kernel_image()

    def as_ints(v):
        out = []
        for x in v:
            if x != field.of(int(x)) or int(x) < 0:
                return None
            out.append(int(x))
        return out

    if ker.cols == 0:
        ints = as_ints(sol)
        return True, ([ints] if ints is not None else [])
    if ker.cols > 3:
        return False, []
    from itertools import product as _product

    bound = max(max(target), 1) + 1
    found = []
    for coeffs in _product(range(-bound, bound + 1), repeat=ker.cols):
        cand = list(sol)
        for k, cf in enumerate(coeffs):
            col = ker.col(k)
            cand = [field.add(x, field.mul(field.of(cf), y)) for x, y in zip(cand, col)]
        ints = as_ints(cand)
        if ints is not None and ints not in found:
            found.append(ints)
            if len(found) >= 8:
                break
    return False, found


def iso_test(m, other, rng=None):
    res = decompose_against(m, [other], rng=rng)
    if res.status == "yes" and res.multiplicities != [1]:
        return DecomposeResult("no", reason="multiplicity differs from 1")
    return res


def trace_submodule(gens, m):
    """Trace of a family of modules in m: sum of images of all maps."""
    seeds = {v: [] for v in m.pres.quiver.vertices}
    for g in gens:
        for h in hom_modules(g, m):
            for v in m.pres.quiver.vertices:
                seeds[v].extend(image_basis(h.mats[v]).columns())
    return span_submodule(m, seeds)


def is_short_exact(f, g):
    """Is 0 -> A -f-> B -g-> C -> 0 exact?"""
    if f.dst is not g.src and f.dst.dims != g.src.dims:
        return False
    if not g.compose(f).is_zero():
        return False
    if not f.is_injective() or not g.is_surjective():
        return False
    for v in f.src.pres.quiver.vertices:
        if f.rank_at(v) != g.src.dims[v] - g.rank_at(v):
            return False
    return True


def restrict_module(m, sub_pres):
    """Restriction to a sub-presentation (vertex/arrow subsets, same names)."""
    dims = {v: m.dims[v] for v in sub_pres.quiver.vertices}
    acts = {a.name: m.acts[a.name] for a in sub_pres.quiver.arrows}
    return Module(sub_pres, dims, acts, check=False)


def random_module(pres, rng, gens=2, cogens=2):
    """A random finitely presented module: coker of a random map P1 -> P0."""
    verts = pres.quiver.vertices
    p0 = projective_at(pres, [rng.choice(verts) for _ in range(cogens)])
    p1 = projective_at(pres, [rng.choice(verts) for _ in range(gens)])
    basis = hom_modules(p1, p0)
    total = None
    for h in basis:
        part = h.scale(pres.field.of(rng.randint(-2, 2)))
        total = part if total is None else total + part
    if total is None:
        total = ModuleMap(p1, p0, {}, check=False)
    cok, _ = cokernel(total)
    return cok


def random_submodule(m, rng, seeds=2):
    f = m.field
    pick = {}
    verts = [v for v in m.pres.quiver.vertices if m.dims[v] > 0]
    if not verts:
        return span_submodule(m, {})
    for _ in range(seeds):
        v = rng.choice(verts)
        vec = [f.of(rng.randint(-2, 2)) for _ in range(m.dims[v])]
        pick.setdefault(v, []).append(vec)
    return span_submodule(m, pick)
