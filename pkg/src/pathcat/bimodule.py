"""Bimodules: the corner functor of a triangular matrix category as data.

A bimodule assigns a dimension to every (U-vertex, T-vertex) pair, a
matrix to every U-arrow (covariant left action) and a matrix to every
T-arrow (contravariant right action).  Validation checks exactly the
functor axioms over the two presentations: action shapes, relations
acting as zero on either side, and commutation of the two actions.
"""

from .linalg import Matrix


class Bimodule:
    def __init__(self, tU, tT, dims, left=None, right=None, labels=None):
        self.tU = tU
        self.tT = tT
        self.field = tU.field
        self.dims = {}
        for i in tU.quiver.vertices:
            for j in tT.quiver.vertices:
                self.dims[(i, j)] = int((dims or {}).get((i, j), 0))
        self.labels = {}
        for key, n in self.dims.items():
            given = (labels or {}).get(key)
            if given is not None:
                if len(given) != n:
                    raise ValueError(f"label count at {key} does not match dim {n}")
                self.labels[key] = list(given)
            else:
                self.labels[key] = [f"b{t+1}" for t in range(n)]
        f = self.field
        # left action: arrow q: i -> i' gives M(i,j) -> M(i',j)
        self.left = {}
        for q in tU.quiver.arrows:
            per = {}
            for j in tT.quiver.vertices:
                m = ((left or {}).get(q.name) or {}).get((q.source, j))
                if m is None:
                    m = Matrix(f, self.dims[(q.target, j)], self.dims[(q.source, j)])
                if (m.rows, m.cols) != (self.dims[(q.target, j)], self.dims[(q.source, j)]):
                    raise ValueError(f"left action of {q.name} at ({q.source},{j}) has wrong shape")
                per[j] = m
            self.left[q.name] = per
        # right action, keyed by the U-vertex: r: j' -> j gives M(i,j) -> M(i,j')
        self.right = {}
        for r in tT.quiver.arrows:
            per = {}
            for i in tU.quiver.vertices:
                m = ((right or {}).get(r.name) or {}).get((i, r.target))
                if m is None:
                    m = Matrix(f, self.dims[(i, r.source)], self.dims[(i, r.target)])
                if (m.rows, m.cols) != (self.dims[(i, r.source)], self.dims[(i, r.target)]):
                    raise ValueError(f"right action of {r.name} at ({i},{r.target}) has wrong shape")
                per[i] = m
            self.right[r.name] = per
        self.eta_total = sum(self.dims.values())

    def dim(self, i, j):
        return self.dims[(i, j)]

    def is_zero(self):
        return self.eta_total == 0

    # -- actions --------------------------------------------------------

    def act_left_path(self, path, j, vec):
        """Action of a U-path on M(path.source, j), in traversal order."""
        out = list(vec)
        for name in path.arrows:
            out = self.left[name][j].apply(out)
        return out

    def act_right_path(self, path, i, vec):
        """Contravariant action of a T-path: M(i, path.target) -> M(i, path.source).

        The last traversal arrow acts first (m . (g o h) = (m . g) . h).
        """
        out = list(vec)
        for name in reversed(path.arrows):
            out = self.right[name][i].apply(out)
        return out

    def act(self, left_path, at, vec, right_path):
        """g . m . f for optional U-path g and T-path f, m at (i, j) = at."""
        i, j = at
        out = list(vec)
        if right_path is not None:
            if right_path.target != j:
                raise ValueError("right path does not end at the T-coordinate")
            out = self.act_right_path(right_path, i, out)
            j = right_path.source
        if left_path is not None:
            if left_path.source != i:
                raise ValueError("left path does not start at the U-coordinate")
            out = self.act_left_path(left_path, j, out)
        return out

    def left_path_matrix(self, path, j):
        m = Matrix.identity(self.field, self.dims[(path.source, j)])
        for name in path.arrows:
            m = self.left[name][j] * m
        return m

    def right_path_matrix(self, path, i):
        m = Matrix.identity(self.field, self.dims[(i, path.target)])
        for name in reversed(path.arrows):
            m = self.right[name][i] * m
        return m

    def right_combo_matrix(self, coords, basis_paths, i, src_j, dst_j):
        """Action matrix of a T-morphism given by hom coordinates.

        Maps M(i, dst_j) -> M(i, src_j) (contravariance swaps the ends).
        """
        f = self.field
        total = Matrix(f, self.dims[(i, src_j)], self.dims[(i, dst_j)])
        for c, p in zip(coords, basis_paths):
            if c != f.zero:
                total = total + self.right_path_matrix(p, i).scale(c)
        return total

    def left_combo_matrix(self, coords, basis_paths, j, src_i, dst_i):
        f = self.field
        total = Matrix(f, self.dims[(dst_i, j)], self.dims[(src_i, j)])
        for c, p in zip(coords, basis_paths):
            if c != f.zero:
                total = total + self.left_path_matrix(p, j).scale(c)
        return total

    # -- validation -------------------------------------------------------

    def validate(self):
        """Check the functor axioms; returns a report dict with witnesses."""
        f = self.field
        violations = []
        for rel in self.tU.relations:
            for j in self.tT.quiver.vertices:
                total = Matrix(f, self.dims[(rel.target, j)], self.dims[(rel.source, j)])
                for c, p in rel.terms:
                    total = total + self.left_path_matrix(p, j).scale(c)
                if not total.is_zero():
                    violations.append(f"U-relation {rel!r} acts nonzero at T-vertex {j}")
        for rel in self.tT.relations:
            for i in self.tU.quiver.vertices:
                total = Matrix(f, self.dims[(i, rel.source)], self.dims[(i, rel.target)])
                for c, p in rel.terms:
                    total = total + self.right_path_matrix(p, i).scale(c)
                if not total.is_zero():
                    violations.append(f"T-relation {rel!r} acts nonzero at U-vertex {i}")
        for q in self.tU.quiver.arrows:
            for r in self.tT.quiver.arrows:
                # M(i,j) --r--> M(i,j') --q--> M(i',j')  vs  q first, then r
                first = self.left[q.name][r.source] * self.right[r.name][q.source]
                second = self.right[r.name][q.target] * self.left[q.name][r.target]
                if first != second:
                    violations.append(
                        f"actions of {q.name} and {r.name} do not commute at ({q.source},{r.target})"
                    )
        return {"valid": not violations, "violations": violations}

    def column_module(self, j):
        """M_T = M(-, j) as a U-module (the left action at column j)."""
        from .modules import Module

        dims = {i: self.dims[(i, j)] for i in self.tU.quiver.vertices}
        acts = {q.name: self.left[q.name][j] for q in self.tU.quiver.arrows}
        return Module(self.tU, dims, acts, check=False)

    def basis_entries(self):
        """All basis elements as (i, j, index, label), in deterministic order."""
        out = []
        for i in self.tU.quiver.vertices:
            for j in self.tT.quiver.vertices:
                for t in range(self.dims[(i, j)]):
                    out.append((i, j, t, self.labels[(i, j)][t]))
        return out
