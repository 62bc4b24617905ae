"""Integer linear algebra for homology computations.

Matrices are lists of rows of Python ints.  Everything is exact; the
matrices that show up here are small (a handful of rows per page), so
the classical Smith reduction with full transform tracking is plenty.
"""

from dataclasses import dataclass


class HomologyError(Exception):
    """A matrix or chain complex is malformed."""


# -- small exact matrix helpers --------------------------------------------

def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(rows, cols):
    return [[0] * cols for _ in range(rows)]


def mat_mul(a, b):
    if a and b and len(a[0]) != len(b):
        raise HomologyError("shape mismatch in product")
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[t] * b[t][j] for t in range(inner)) for j in range(cols)]
            for row in a]


def mat_vec(a, v):
    if a and len(a[0]) != len(v):
        raise HomologyError("shape mismatch in product")
    return [sum(row[t] * v[t] for t in range(len(v))) for row in a]


def mat_transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_shape(a):
    return (len(a), len(a[0]) if a else 0)


def mat_copy(a):
    return [list(row) for row in a]


def determinant(a):
    """Determinant of a square integer matrix by fraction-free reduction."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise HomologyError("determinant needs a square matrix")
    if n == 0:
        return 1
    m = mat_copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# -- Smith normal form ------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """Decomposition left * a * right = diagonal, transforms unimodular.

    ``diagonal`` has the same shape as the input; the nonzero entries
    d1 | d2 | ... sit on the main diagonal, each positive and dividing
    the next.
    """

    left: tuple
    diagonal: tuple
    right: tuple

    @property
    def invariant_factors(self):
        n = min(len(self.diagonal),
                len(self.diagonal[0]) if self.diagonal else 0)
        return tuple(self.diagonal[i][i] for i in range(n)
                     if self.diagonal[i][i] != 0)

    @property
    def rank(self):
        return len(self.invariant_factors)


def _freeze(a):
    return tuple(tuple(row) for row in a)


def smith_normal_form(a):
    """Smith normal form with transforms: left * a * right = diagonal."""
    rows, cols = mat_shape(a)
    m = mat_copy(a)
    left = identity_matrix(rows)
    right = identity_matrix(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        for j in range(cols):
            m[dst][j] += q * m[src][j]
        for j in range(rows):
            left[dst][j] += q * left[src][j]

    def add_col(src, dst, q):
        for row in m:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        left[i] = [-x for x in left[i]]

    t = 0
    while t < rows and t < cols:
        # find a pivot of least magnitude in the remaining block
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (pivot is None
                                     or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        # clear the pivot row and column; restart if a remainder shrinks
        # the pivot, which terminates because |pivot| strictly drops
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    add_row(t, i, -q)
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    add_col(t, j, -q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        # enforce divisibility into the rest of the block
        d = m[t][t]
        stray = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % d != 0:
                    stray = (i, j)
                    break
            if stray:
                break
        if stray:
            add_row(stray[0], t, 1)
            continue
        if d < 0:
            negate_row(t)
        t += 1

    return SmithForm(_freeze(left), _freeze(m), _freeze(right))


def solve_integer(a, b):
    """One integer solution x of a x = b, or None if none exists."""
    rows, cols = mat_shape(a)
    if len(b) != rows:
        raise HomologyError("right-hand side has the wrong length")
    s = smith_normal_form(a)
    c = mat_vec([list(r) for r in s.left], b)
    y = [0] * cols
    for i in range(rows):
        d = s.diagonal[i][i] if i < cols else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return mat_vec([list(r) for r in s.right], y)


# -- finitely generated abelian groups --------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group in invariant-factor form."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise HomologyError("negative free rank")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise HomologyError("invariant factor %d below 2" % d)
            if i and self.torsion[i - 1] != 0 and d % self.torsion[i - 1]:
                raise HomologyError("invariant factors must form a chain")

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    @property
    def min_generators(self):
        return self.rank + len(self.torsion)

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append("Z^%d" % self.rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(a, rows=None):
    """The group Z^rows / column span of ``a`` (rows inferred if given)."""
    nrows, _ = mat_shape(a)
    if rows is None:
        rows = nrows
    elif a and rows != nrows:
        raise HomologyError("row count does not match the matrix")
    if not a:
        return AbelianGroup(rows)
    s = smith_normal_form(a)
    facs = s.invariant_factors
    return AbelianGroup(rows - len(facs), tuple(d for d in facs if d > 1))


# -- chain complexes ---------------------------------------------------------

class ChainComplex:
    """Chain complex of free Z-modules given by boundary matrices.

    ``dims[k]`` is the rank of the degree-k module; ``boundary(k)`` maps
    degree k to degree k-1 and is stored as a dims[k-1] x dims[k] matrix.
    """

    def __init__(self, dims, boundaries):
        self.dims = tuple(dims)
        self._bnd = {}
        for k, mat in boundaries.items():
            if not 1 <= k < len(self.dims):
                raise HomologyError("boundary degree %d out of range" % k)
            nrows, ncols = mat_shape(mat)
            want = (self.dims[k - 1], self.dims[k])
            if ncols and (nrows, ncols) != want:
                raise HomologyError(
                    "boundary %d has shape %r, expected %r"
                    % (k, (nrows, ncols), want))
            self._bnd[k] = _freeze(mat)
        for k in self._bnd:
            if k + 1 in self._bnd:
                prod = mat_mul([list(r) for r in self._bnd[k]],
                               [list(r) for r in self._bnd[k + 1]])
                if any(x for row in prod for x in row):
                    raise HomologyError(
                        "boundary of boundary is nonzero in degree %d"
                        % (k + 1))

    def boundary(self, k):
        if k in self._bnd:
            return [list(r) for r in self._bnd[k]]
        rows = self.dims[k - 1] if 1 <= k < len(self.dims) else 0
        cols = self.dims[k] if 0 <= k < len(self.dims) else 0
        return zero_matrix(rows, cols)

    def homology(self, k):
        """H_k as an AbelianGroup."""
        if not 0 <= k < len(self.dims):
            return AbelianGroup(0)
        n = self.dims[k]
        rank_out = smith_normal_form(self.boundary(k)).rank if k >= 1 else 0
        s_in = smith_normal_form(self.boundary(k + 1)) \
            if k + 1 < len(self.dims) else None
        rank_in = s_in.rank if s_in else 0
        torsion = tuple(d for d in (s_in.invariant_factors if s_in else ())
                        if d > 1)
        return AbelianGroup(n - rank_out - rank_in, torsion)
