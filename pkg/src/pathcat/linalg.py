"""Dense exact matrices and the Gaussian-elimination kernel.

Everything downstream (hom spaces, module maps, Ext groups, filtration
checks) reduces to rref / kernel / image / quotient computations here.
Pivoting is deterministic: first nonzero entry in column order, so bases
are reproducible across runs.
"""

from .field import QQ


class Matrix:
    """A rows x cols matrix over an exact field, stored as row lists."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows, cols, data=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            z = field.zero
            self.data = [[z] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("matrix data does not match shape")
            self.data = [[field.of(x) for x in row] for row in data]

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field, n):
        m = cls(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @classmethod
    def from_rows(cls, field, rows):
        rows = [list(r) for r in rows]
        cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, rows)

    @classmethod
    def from_cols(cls, field, cols, nrows=None):
        cols = [list(c) for c in cols]
        if cols:
            nrows = len(cols[0])
        elif nrows is None:
            nrows = 0
        data = [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
        return cls(field, nrows, len(cols), data)

    # -- basic access -------------------------------------------------

    def __getitem__(self, ij):
        return self.data[ij[0]][ij[1]]

    def __setitem__(self, ij, value):
        self.data[ij[0]][ij[1]] = self.field.of(value)

    def copy(self):
        return Matrix(self.field, self.rows, self.cols, [row[:] for row in self.data])

    def col(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        if self.rows == 0 or self.cols == 0:
            return f"Matrix({self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix[{body}]"

    def is_zero(self):
        z = self.field.zero
        return all(x == z for row in self.data for x in row)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        f = self.field
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        return Matrix(
            f,
            self.rows,
            self.cols,
            [
                [f.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
        )

    def __sub__(self, other):
        return self + other.scale(self.field.of(-1))

    def scale(self, c):
        f = self.field
        c = f.of(c)
        return Matrix(
            f, self.rows, self.cols, [[f.mul(c, x) for x in row] for row in self.data]
        )

    def __mul__(self, other):
        f = self.field
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in matrix product: {self.rows}x{self.cols} * {other.rows}x{other.cols}"
            )
        out = Matrix(f, self.rows, other.cols)
        for i in range(self.rows):
            srow = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = srow[k]
                if a == f.zero:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b != f.zero:
                        orow[j] = f.add(orow[j], f.mul(a, b))
        return out

    def apply(self, vec):
        """Matrix times coordinate vector (a plain list)."""
        f = self.field
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        out = []
        for i in range(self.rows):
            s = f.zero
            for a, x in zip(self.data[i], vec):
                if a != f.zero and x != f.zero:
                    s = f.add(s, f.mul(a, x))
            out.append(s)
        return out

    def transpose(self):
        return Matrix(
            self.field,
            self.cols,
            self.rows,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Matrix(
            self.field,
            self.rows,
            self.cols + other.cols,
            [r1 + r2 for r1, r2 in zip(self.data, other.data)],
        )

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Matrix(
            self.field,
            self.rows + other.rows,
            self.cols,
            [row[:] for row in self.data] + [row[:] for row in other.data],
        )

    # -- elimination --------------------------------------------------

    def rref(self):
        """Reduced row echelon form.

        Returns (R, pivots) where pivots is the strictly increasing list
        of pivot column indices.
        """
        f = self.field
        m = [row[:] for row in self.data]
        nrows, ncols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(ncols):
            pivot_row = None
            for i in range(r, nrows):
                if m[i][c] != f.zero:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = f.div(f.one, m[r][c])
            m[r] = [f.mul(inv, x) for x in m[r]]
            for i in range(nrows):
                if i != r and m[i][c] != f.zero:
                    factor = m[i][c]
                    m[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        return Matrix(f, nrows, ncols, m), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_image(self):
        """Kernel and image bases, both as matrices of columns.

        Always dim ker + dim im = cols.  Image columns are the original
        columns at the pivot positions; kernel columns carry 1 at each
        free position (deterministic bases).
        """
        f = self.field
        R, pivots = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.cols) if j not in pivot_set]
        kernel_cols = []
        for j in free:
            v = [f.zero] * self.cols
            v[j] = f.one
            for r, p in enumerate(pivots):
                v[p] = f.neg(R.data[r][j])
            kernel_cols.append(v)
        image_cols = [self.col(j) for j in pivots]
        return (
            Matrix.from_cols(f, kernel_cols, nrows=self.cols),
            Matrix.from_cols(f, image_cols, nrows=self.rows),
        )

    def solve(self, b):
        """One solution x of self*x = b, or None if inconsistent."""
        f = self.field
        aug = self.hstack(Matrix.from_cols(f, [list(b)], nrows=self.rows))
        R, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [f.zero] * self.cols
        for r, p in enumerate(pivots):
            x[p] = R.data[r][self.cols]
        return x


def quotient_reps(field, ambient_dim, sub_basis):
    """Coset representatives and projection for ambient / span(sub_basis).

    ``sub_basis`` is a matrix whose columns span the subspace.  Returns
    (reps, project): reps has the standard basis vectors at the non-pivot
    coordinates (the lexicographically least completions), and project
    maps an ambient vector to its coordinates in the quotient, with
    project(v) = project(v + s) for s in the subspace.
    """
    if sub_basis.rows != ambient_dim:
        raise ValueError("sub-basis does not live in the ambient space")
    f = field
    R, pivots = sub_basis.transpose().rref()
    pivot_set = set(pivots)
    free = [j for j in range(ambient_dim) if j not in pivot_set]
    reps_cols = []
    for j in free:
        v = [f.zero] * ambient_dim
        v[j] = f.one
        reps_cols.append(v)
    reps = Matrix.from_cols(f, reps_cols, nrows=ambient_dim)
    # project: eliminate pivot coordinates using the reduced rows, keep free ones
    proj = Matrix(f, len(free), ambient_dim)
    for out_i, j in enumerate(free):
        proj.data[out_i][j] = f.one
        for r, p in enumerate(pivots):
            proj.data[out_i][p] = f.neg(R.data[r][j])
    return reps, proj


# -- subspace helpers (columns-as-vectors convention) ------------------


def row_space_basis(field, vectors):
    """Canonical (RREF) basis of the span of the given coordinate vectors."""
    vectors = list(vectors)
    if not vectors:
        return []
    R, pivots = Matrix.from_rows(field, vectors).rref()
    return [R.data[i] for i in range(len(pivots))]


def span_dim(field, vectors):
    vectors = list(vectors)
    if not vectors:
        return 0
    return Matrix.from_rows(field, vectors).rank()


def subspace_equal(field, vecs_a, vecs_b):
    return row_space_basis(field, vecs_a) == row_space_basis(field, vecs_b)


def subspace_contains(field, vecs, v):
    """Is v in the span of vecs?"""
    vecs = list(vecs)
    base = span_dim(field, vecs)
    return span_dim(field, vecs + [list(v)]) == base


def subspace_le(field, vecs_a, vecs_b):
    """Is span(vecs_a) contained in span(vecs_b)?"""
    dim_b = span_dim(field, vecs_b)
    return span_dim(field, list(vecs_b) + [list(v) for v in vecs_a]) == dim_b
