"""Exact linear algebra over ZZ and ZZ/nZZ.

Matrices are plain lists of rows of Python ints.  Everything is computed by
integer row/column reduction (Smith normal form); nothing is ever done with
floats.  The point of lifting to ZZ and reducing afterwards is that ZZ/nZZ
has zero divisors for composite n, so kernels and images are only well
behaved when handled as integer lattices with n*identity appended.

The central objects are :class:`FpModule` (a finite n-torsion abelian group
presented by an integer relation matrix) and :class:`ModuleMap` between two
such presentations.  :func:`subquotient` produces kernel/image subquotients
with canonical invariant factors and explicit lifts, which is how every
cohomology group in the package is presented.

Conventions: a matrix with r rows and 0 columns is ``[[] for _ in range(r)]``;
a matrix with 0 rows is ``[]``.  Vectors are flat lists.
"""

from __future__ import annotations

from functools import reduce
from itertools import product
from math import gcd


class ContainmentViolation(ValueError):
    """Raised when a vector or generator lies outside the allowed span."""


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


# ---------------------------------------------------------------------------
# matrix helpers (never mutated once returned)
# ---------------------------------------------------------------------------

def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def identity(k):
    m = zeros(k, k)
    for i in range(k):
        m[i][i] = 1
    return m


def mat_copy(m):
    return [row[:] for row in m]


def shape(m):
    return len(m), (len(m[0]) if m else 0)


def mat_mul(a, b):
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch {ra}x{ca} * {rb}x{cb}")
    if cb == 0:
        return [[] for _ in range(ra)]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_mod(a, n):
    return [[x % n for x in row] for row in a]


def mat_vec(a, v):
    if a and len(a[0]) != len(v):
        raise ValueError("shape mismatch in mat_vec")
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def hstack(*mats):
    mats = [m for m in mats if shape(m)[1]]
    if not mats:
        return []
    rows = len(mats[0])
    if any(len(m) != rows for m in mats):
        raise ValueError("row count mismatch in hstack")
    return [sum((m[i] for m in mats), []) for i in range(rows)]


def columns(m):
    r, c = shape(m)
    return [[m[i][j] for i in range(r)] for j in range(c)]


def from_columns(cols, rows):
    if not cols:
        return [[] for _ in range(rows)]
    return [[col[i] for col in cols] for i in range(rows)]


def diag_matrix(entries):
    k = len(entries)
    m = zeros(k, k)
    for i, e in enumerate(entries):
        m[i][i] = e
    return m


def det(m):
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = mat_copy(m)
    k = len(m)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(k - 1):
        if m[i][i] == 0:
            for j in range(i + 1, k):
                if m[j][i]:
                    m[i], m[j] = m[j], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for j in range(i + 1, k):
            for c in range(i + 1, k):
                m[j][c] = (m[j][c] * m[i][i] - m[j][i] * m[i][c]) // prev
            m[j][i] = 0
        prev = m[i][i]
    return sign * m[-1][-1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(m):
    """Smith normal form with transforms: U * m * V = D.

    U and V are unimodular, D is diagonal with d1 | d2 | ... >= 0.
    Pivoting is deterministic: among nonzero entries of the working block,
    the one of smallest absolute value wins, ties broken by (row, col), so
    identical inputs give identical transforms across runs.

    >>> U, D, V = smith_normal_form([[2, 4], [6, 8]])
    >>> [D[0][0], D[1][1]]
    [2, 4]
    >>> U, D, V = smith_normal_form([[6, 0], [0, 4]])
    >>> [D[0][0], D[1][1]]
    [2, 12]
    """
    U, D, V, _, _ = smith_normal_form_full(m)
    return U, D, V


def smith_normal_form_full(m):
    """Like :func:`smith_normal_form` but also returns Uinv and Vinv."""
    rows, cols = shape(m)
    D = mat_copy(m)
    U, Uinv = identity(rows), identity(rows)
    V, Vinv = identity(cols), identity(cols)

    def row_op(i, j, q):
        # row_i -= q * row_j ;  Uinv: col_j += q * col_i
        Di, Dj = D[i], D[j]
        for c in range(cols):
            Di[c] -= q * Dj[c]
        Ui, Uj = U[i], U[j]
        for c in range(rows):
            Ui[c] -= q * Uj[c]
        for r in range(rows):
            Uinv[r][j] += q * Uinv[r][i]

    def col_op(i, j, q):
        # col_i -= q * col_j ;  Vinv: row_j += q * row_i
        for r in range(rows):
            D[r][i] -= q * D[r][j]
        for r in range(cols):
            V[r][i] -= q * V[r][j]
        Vj, Vi = Vinv[j], Vinv[i]
        for c in range(cols):
            Vj[c] += q * Vi[c]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in range(rows):
            Uinv[r][i], Uinv[r][j] = Uinv[r][j], Uinv[r][i]

    def col_swap(i, j):
        for r in range(rows):
            D[r][i], D[r][j] = D[r][j], D[r][i]
        for r in range(cols):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_negate(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for r in range(rows):
            Uinv[r][i] = -Uinv[r][i]

    n = min(rows, cols)
    for k in range(n):
        pivot, best = None, None
        for i in range(k, rows):
            Di = D[i]
            for j in range(k, cols):
                v = Di[j]
                if v:
                    a = abs(v)
                    if best is None or a < best:
                        best, pivot = a, (i, j)
                        if a == 1:
                            break
            if best == 1:
                break
        if pivot is None:
            break
        i, j = pivot
        if i != k:
            row_swap(k, i)
        if j != k:
            col_swap(k, j)
        while True:
            again = False
            for i in range(k + 1, rows):
                if D[i][k]:
                    row_op(i, k, D[i][k] // D[k][k])
                    if D[i][k]:
                        row_swap(k, i)
                        again = True
            if again:
                continue
            for j in range(k + 1, cols):
                if D[k][j]:
                    col_op(j, k, D[k][j] // D[k][k])
                    if D[k][j]:
                        col_swap(k, j)
                        again = True
            if not again:
                break
        if D[k][k] < 0:
            row_negate(k)

    # enforce the divisibility chain d_k | d_{k+1} (zeros sink to the end)
    for k in range(n - 1):
        for j in range(k + 1, n):
            dk, dj = D[k][k], D[j][j]
            if (dk and dj % dk == 0) or (dk == 0 and dj == 0):
                continue
            col_op(k, j, -1)  # col_k += col_j, brings d_j into position (j, k)
            while True:
                if D[k][k] and D[j][k]:
                    row_op(j, k, D[j][k] // D[k][k])
                if D[j][k]:
                    row_swap(k, j)
                    continue
                break
            if D[k][j]:
                col_op(j, k, D[k][j] // D[k][k])
            if D[k][k] < 0:
                row_negate(k)
            if D[j][j] < 0:
                row_negate(j)
    for k in range(n):
        if D[k][k] < 0:
            row_negate(k)
    return U, D, V, Uinv, Vinv


def diagonal(D):
    r, c = shape(D)
    return [D[i][i] for i in range(min(r, c))]


# ---------------------------------------------------------------------------
# solving and lattices
# ---------------------------------------------------------------------------

def solve_int(a, b):
    """One integer solution x of a*x = b, or None."""
    rows, cols = shape(a)
    if len(b) != rows:
        raise ValueError("dimension mismatch")
    U, D, V, _, _ = smith_normal_form_full(a)
    c = mat_vec(U, b)
    d = diagonal(D)
    y = [0] * cols
    for i in range(rows):
        di = d[i] if i < len(d) else 0
        if di:
            if c[i] % di:
                return None
            y[i] = c[i] // di
        elif c[i]:
            return None
    return mat_vec(V, y)


def solve_mod(a, b, n, row_moduli=None):
    """Deterministic solution x of (a*x)_i = b_i (mod row_moduli_i), or None.

    ``row_moduli`` defaults to n for every row; each must divide n.  The
    returned solution is the one with the smallest nonnegative coordinates
    in the Smith-parametrised coordinate system, so repeated calls agree.

    >>> solve_mod([[2]], [2], 4)
    [1]
    >>> solve_mod([[2]], [1], 4) is None
    True
    >>> solve_mod(identity(3), [5, 0, 2], 4)
    [1, 0, 2]
    """
    rows, cols = shape(a)
    if len(b) != rows:
        raise ValueError("dimension mismatch")
    if row_moduli is not None:
        scale = [n // row_moduli[i] for i in range(rows)]
        a = [[scale[i] * x for x in a[i]] for i in range(rows)]
        b = [scale[i] * b[i] for i in range(rows)]
    U, D, V, _, _ = smith_normal_form_full(a)
    c = mat_vec(U, b)
    d = diagonal(D)
    y = [0] * cols
    for i in range(rows):
        di = d[i] if i < len(d) else 0
        ci = c[i] % n
        g = gcd(di, n)
        if ci % g:
            return None
        if i < cols and di:
            dg, ng, cg = di // g, n // g, ci // g
            if ng > 1:
                y[i] = (cg * pow(dg, -1, ng)) % ng
    return [v % n for v in mat_vec(V, y)]


def kernel_mod(a, n, row_moduli=None):
    """Column generators of {x : (a*x)_i = 0 mod row_moduli_i} over ZZ/n.

    Returned columns, together with n*ZZ^cols, generate the full solution
    lattice; they are reduced mod n and zero columns are dropped.
    """
    rows, cols = shape(a)
    if cols == 0:
        return []
    if rows == 0:
        return identity(cols)
    if row_moduli is not None:
        a = [[(n // row_moduli[i]) * x for x in a[i]] for i in range(rows)]
    _, D, V, _, _ = smith_normal_form_full(a)
    d = diagonal(D)
    gens = []
    for j in range(cols):
        dj = d[j] if j < len(d) else 0
        mult = n // gcd(dj, n)
        col = [(V[r][j] * mult) % n for r in range(cols)]
        if any(col):
            gens.append(col)
    return from_columns(gens, cols)


def preimage_lattice(a, lattice):
    """Column generators of {x in ZZ^cols : a*x in colspan(lattice)}."""
    rows, cols = shape(a)
    lcols = shape(lattice)[1]
    stacked = hstack(a, mat_neg(lattice)) if lcols else mat_copy(a)
    _, D, V, _, _ = smith_normal_form_full(stacked)
    d = diagonal(D)
    total = cols + lcols
    gens = []
    for j in range(total):
        dj = d[j] if j < len(d) else 0
        if dj == 0:
            col = [V[r][j] for r in range(cols)]
            if any(col):
                gens.append(col)
    return from_columns(gens, cols)


def in_colspan(mat, vec):
    """Whether vec lies in the integer column span of mat."""
    return solve_int(mat, vec) is not None


# ---------------------------------------------------------------------------
# finitely presented n-torsion modules
# ---------------------------------------------------------------------------

class FpModule:
    """Finite n-torsion abelian group presented as ZZ^ngens / relations.

    The relation lattice always implicitly contains n*ZZ^ngens, so the
    module is n-torsion regardless of the supplied columns.  The canonical
    form (invariant factors d1 | d2 | ... dividing n, trivial factors
    dropped) is cached; two modules are isomorphic iff these tuples agree.

    >>> FpModule(4, 1, [[2]]).invariant_factors()
    (2,)
    >>> FpModule(2, 2).order()
    4
    """

    __slots__ = ("modulus", "ngens", "relations", "_canon")

    def __init__(self, modulus, ngens, relations=None):
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        self.modulus = modulus
        self.ngens = ngens
        rels = [list(r) for r in relations] if relations else [[] for _ in range(ngens)]
        if len(rels) != ngens:
            raise ValueError("relations must have ngens rows")
        self.relations = rels
        self._canon = None

    # -- canonical structure -------------------------------------------

    def _canonical(self):
        if self._canon is None:
            n, g = self.modulus, self.ngens
            if g == 0:
                self._canon = ((), [], [], ())
            else:
                U, D, _, Uinv, _ = smith_normal_form_full(self.relation_lattice())
                factors = tuple(gcd(D[i][i], n) for i in range(g))
                keep = tuple(i for i, f in enumerate(factors) if f > 1)
                self._canon = (factors, U, Uinv, keep)
        return self._canon

    def invariant_factors(self):
        factors, _, _, keep = self._canonical()
        return tuple(factors[i] for i in keep)

    def order(self):
        return reduce(lambda a, b: a * b, self.invariant_factors(), 1)

    def is_trivial(self):
        return self.order() == 1

    def canonical_coords(self, vec):
        """Coordinates of a generator-coordinate vector in the canonical form."""
        factors, U, _, keep = self._canonical()
        if len(vec) != self.ngens:
            raise ValueError("vector length mismatch")
        w = mat_vec(U, vec) if self.ngens else []
        return tuple(w[i] % factors[i] for i in keep)

    def canonical_lift(self, coords):
        """A generator-coordinate representative of canonical coordinates."""
        _, _, Uinv, keep = self._canonical()
        if len(coords) != len(keep):
            raise ValueError("coordinate length mismatch")
        vec = [0] * self.ngens
        for c, i in zip(coords, keep):
            for r in range(self.ngens):
                vec[r] += c * Uinv[r][i]
        return [v % self.modulus for v in vec]

    def canonicalize(self):
        """(canonical FpModule, to_canonical, from_canonical) triple."""
        factors = self.invariant_factors()
        canon = FpModule(self.modulus, len(factors), diag_matrix(factors))
        to_cols = [list(self.canonical_coords(_unit(self.ngens, j)))
                   for j in range(self.ngens)]
        frm_cols = [self.canonical_lift(_unit(len(factors), j))
                    for j in range(len(factors))]
        to_map = ModuleMap(self, canon, from_columns(to_cols, len(factors)), check=False)
        frm_map = ModuleMap(canon, self, from_columns(frm_cols, self.ngens), check=False)
        return canon, to_map, frm_map

    def is_canonical(self):
        """True when the presentation is diag(invariant factors), no 1s."""
        facs = self.invariant_factors()
        if len(facs) != self.ngens:
            return False
        return self.relations == diag_matrix(list(facs))

    # -- element calculus ----------------------------------------------

    def relation_lattice(self):
        """Relations together with n*identity, as one matrix."""
        n, g = self.modulus, self.ngens
        return hstack(self.relations, diag_matrix([n] * g))

    def is_zero_vec(self, vec):
        return all(c == 0 for c in self.canonical_coords(vec))

    def same_element(self, u, v):
        return self.canonical_coords(u) == self.canonical_coords(v)

    def zero(self):
        return [0] * self.ngens

    def elements(self):
        """Iterate one representative per element (small modules only)."""
        factors = self.invariant_factors()
        for coords in product(*[range(f) for f in factors]):
            yield self.canonical_lift(list(coords))

    def __repr__(self):
        facs = self.invariant_factors()
        return f"FpModule(Z/{self.modulus}: {list(facs) if facs else 'trivial'})"


def _unit(k, j):
    v = [0] * k
    v[j] = 1
    return v


def free_module(modulus, rank):
    return FpModule(modulus, rank)


class ModuleMap:
    """A homomorphism between presented modules, as a matrix on generators.

    Well-definedness (the matrix sends source relations into the target
    relation lattice) is checked at construction unless check=False.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix, check=True):
        if len(matrix) != target.ngens:
            raise ValueError("matrix must have target.ngens rows")
        if any(len(r) != source.ngens for r in matrix):
            raise ValueError("matrix must have source.ngens columns")
        self.source = source
        self.target = target
        self.matrix = [list(r) for r in matrix]
        if check and source.ngens and target.ngens:
            tl = target.relation_lattice()
            for col in columns(source.relation_lattice()):
                if solve_int(tl, mat_vec(self.matrix, col)) is None:
                    raise ValueError("map does not respect relations")

    def __call__(self, vec):
        return [v % self.target.modulus for v in mat_vec(self.matrix, vec)]

    def compose(self, other):
        """self after other."""
        if other.target.ngens != self.source.ngens:
            raise ValueError("composition shape mismatch")
        return ModuleMap(other.source, self.target,
                         mat_mul(self.matrix, other.matrix), check=False)

    def add(self, other):
        return ModuleMap(self.source, self.target,
                         mat_add(self.matrix, other.matrix), check=False)

    def sub(self, other):
        return ModuleMap(self.source, self.target,
                         mat_sub(self.matrix, other.matrix), check=False)

    def negate(self):
        return ModuleMap(self.source, self.target, mat_neg(self.matrix), check=False)

    def is_zero(self):
        if not self.target.ngens or not self.source.ngens:
            return True
        return all(self.target.is_zero_vec(col) for col in columns(self.matrix))

    def equal(self, other):
        return self.sub(other).is_zero()

    def kernel_gens(self):
        """Columns generating {x : self(x) = 0 in target} over ZZ/n."""
        n = self.source.modulus
        src_g = self.source.ngens
        if src_g == 0:
            return []
        if self.target.ngens == 0:
            return identity(src_g)
        pre = preimage_lattice(self.matrix, self.target.relation_lattice())
        cols = [[c % n for c in col] for col in columns(pre)]
        cols += [col for col in columns(diag_matrix([n] * src_g))]
        cols = [c for c in cols if any(c)]
        return from_columns(cols, src_g)

    def image_gens(self):
        return mat_copy(self.matrix)

    @staticmethod
    def identity_map(module):
        return ModuleMap(module, module, identity(module.ngens), check=False)

    @staticmethod
    def zero_map(source, target):
        return ModuleMap(source, target, zeros(target.ngens, source.ngens), check=False)

    def __repr__(self):
        return f"ModuleMap({self.source!r} -> {self.target!r})"


# ---------------------------------------------------------------------------
# subquotients
# ---------------------------------------------------------------------------

class Subquotient:
    """A subquotient (kernel span)/(image span) inside a product of cyclics.

    ``module`` is the canonical presentation.  ``lift(coords)`` returns an
    ambient representative and ``project(vec)`` the canonical coordinates of
    an ambient vector; ``project`` raises ContainmentViolation when the
    vector is outside the kernel span.
    """

    __slots__ = ("ambient_rank", "modulus", "ambient_moduli", "module",
                 "kernel", "presented", "_lift_mat", "_membership")

    def __init__(self, ambient_rank, modulus, ambient_moduli, module,
                 kernel, presented, lift_mat):
        self.ambient_rank = ambient_rank
        self.modulus = modulus
        self.ambient_moduli = ambient_moduli
        self.module = module
        self.kernel = kernel
        self.presented = presented
        self._lift_mat = lift_mat

    def lift(self, coords):
        if self.module.ngens == 0:
            return [0] * self.ambient_rank
        return [v % self.modulus for v in mat_vec(self._lift_mat, list(coords))]

    def project(self, vec):
        if len(vec) != self.ambient_rank:
            raise ValueError("ambient dimension mismatch")
        kcount = shape(self.kernel)[1]
        if kcount == 0:
            if any(v % m for v, m in zip(vec, self.ambient_moduli)):
                raise ContainmentViolation("vector is not in the kernel span")
            return ()
        x = solve_mod(self.kernel, list(vec), self.modulus,
                      row_moduli=self.ambient_moduli)
        if x is None:
            raise ContainmentViolation("vector is not in the kernel span")
        return self.presented.canonical_coords(x)

    def lift_matrix(self):
        return mat_copy(self._lift_mat)

    def project_matrix(self):
        """Matrix of project on the ambient generators (rows = canonical gens).

        Only meaningful when the kernel is the whole ambient (a quotient);
        otherwise use project() on vectors known to lie in the subobject.
        """
        cols = [list(self.project(_unit(self.ambient_rank, j)))
                for j in range(self.ambient_rank)]
        return from_columns(cols, self.module.ngens)


def subquotient(ambient_rank, kernel_gens, image_gens, modulus,
                ambient_moduli=None):
    """Present (span of kernel_gens)/(span of image_gens) in a cyclic product.

    The ambient is prod_i ZZ/moduli_i with every modulus dividing n
    (``ambient_moduli`` defaults to n everywhere, i.e. (ZZ/n)^rank).
    Generators are matrices of columns.  Raises ContainmentViolation when an
    image generator is outside the kernel span.

    >>> sq = subquotient(1, [[2]], [], 4)
    >>> sq.module.invariant_factors()
    (2,)
    """
    n = modulus
    amb = ambient_rank
    moduli = list(ambient_moduli) if ambient_moduli is not None else [n] * amb
    kg = kernel_gens if shape(kernel_gens)[1] else [[] for _ in range(amb)]
    ig = image_gens if shape(image_gens)[1] else [[] for _ in range(amb)]
    amb_lat = diag_matrix(moduli)

    kcount = shape(kg)[1]
    span = hstack(kg, amb_lat) if kcount else amb_lat
    for col in columns(ig):
        if solve_int(span, col) is None:
            raise ContainmentViolation("image generator outside kernel span")

    img_lat = hstack(ig, amb_lat) if shape(ig)[1] else amb_lat
    rel = preimage_lattice(kg, img_lat) if kcount else []
    presented = FpModule(n, kcount, rel if kcount else None)
    canon, _, frm = presented.canonicalize()
    if kcount and canon.ngens:
        lift_mat = mat_mul(kg, frm.matrix)
    else:
        lift_mat = zeros(amb, canon.ngens)
    return Subquotient(amb, n, moduli, canon, kg, presented, lift_mat)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
