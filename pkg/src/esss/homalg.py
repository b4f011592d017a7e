"""Exact integer linear algebra for finite direct sums of cyclic groups.

Groups are presented by an ordered list of cyclic orders: 0 means a free
summand (Z, read 2-locally), any other value is the actual order of a finite
cyclic summand (always a power of 2 in this engine; asserted by callers).
Maps are integer matrices in the generator bases, columns indexed by source
summands.  All computations go through Smith normal form; nothing is ever
done modulo a proxy prime, so free-rank information is never lost.
"""
from __future__ import annotations

Matrix = "list[list[int]]"


def identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A or not B:
        rows = len(A)
        cols = len(B[0]) if B else 0
        return [[0] * cols for _ in range(rows)]
    n = len(B)
    assert all(len(row) == n for row in A), "shape mismatch"
    cols = len(B[0])
    out = []
    for row in A:
        out.append([sum(row[k] * B[k][j] for k in range(n)) for j in range(cols)])
    return out


def mat_vec(A, v):
    return [sum(row[k] * v[k] for k in range(len(v))) for row in A]


def _swap_rows(A, i, j):
    A[i], A[j] = A[j], A[i]


def _swap_cols(A, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]


def _add_row(A, dst, src, c):
    A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]


def _add_col(A, dst, src, c):
    for row in A:
        row[dst] += c * row[src]


def snf(M):
    """Smith normal form with transforms: returns (U, D, V) with U M V = D.

    D is diagonal (same shape as M) with d1 | d2 | ... and nonnegative
    entries; U and V are unimodular.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    D = [row[:] for row in M]
    U = identity(m)
    V = identity(n)

    def pivot_from(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i][j]
                if v != 0 and (best is None or abs(v) < abs(best[2])):
                    best = (i, j, v)
        return best

    t = 0
    while t < min(m, n):
        piv = pivot_from(t)
        if piv is None:
            break
        pi, pj, _ = piv
        if pi != t:
            _swap_rows(D, t, pi)
            _swap_rows(U, t, pi)
        if pj != t:
            _swap_cols(D, t, pj)
            _swap_cols(V, t, pj)
        # every restart below strictly shrinks |D[t][t]| or the remaining work
        while True:
            restarted = False
            for i in range(t + 1, m):
                if D[i][t] == 0:
                    continue
                q = D[i][t] // D[t][t]
                _add_row(D, i, t, -q)
                _add_row(U, i, t, -q)
                if D[i][t] != 0:
                    _swap_rows(D, t, i)
                    _swap_rows(U, t, i)
                    restarted = True
                    break
            if restarted:
                continue
            for j in range(t + 1, n):
                if D[t][j] == 0:
                    continue
                q = D[t][j] // D[t][t]
                _add_col(D, j, t, -q)
                _add_col(V, j, t, -q)
                if D[t][j] != 0:
                    _swap_cols(D, t, j)
                    _swap_cols(V, t, j)
                    restarted = True
                    break
            if restarted:
                continue
            if any(D[i][t] != 0 for i in range(t + 1, m)):
                continue
            rem = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % D[t][t] != 0:
                        rem = i
                        break
                if rem is not None:
                    break
            if rem is not None:
                _add_row(D, t, rem, 1)
                _add_row(U, t, rem, 1)
                continue
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def mat_inverse_unimodular(U):
    """Inverse of a unimodular integer matrix, via SNF transforms."""
    n = len(U)
    A, D, B = snf(U)
    # A U B = I up to signs on the diagonal of D (all 1 since det = +-1)
    for i in range(n):
        assert abs(D[i][i]) == 1, "matrix is not unimodular"
    # U^-1 = B * diag(D) * A
    S = [[D[i][i] if i == j else 0 for j in range(n)] for i in range(n)]
    return mat_mul(mat_mul(B, S), A)


def integer_kernel(M):
    """Columns spanning the integer kernel of M (as a list of column vectors)."""
    m = len(M)
    n = len(M[0]) if m else 0
    if n == 0:
        return []
    _, D, V = snf(M)
    cols = []
    for j in range(n):
        d = D[j][j] if j < min(m, n) else 0
        if d == 0:
            cols.append([V[i][j] for i in range(n)])
    return cols


def lattice_saturation_solve(gens, target):
    """Express target as an integer combination of the column vectors gens.

    Returns the coefficient vector, or None if target is not in the lattice.
    """
    n = len(target)
    r = len(gens)
    if r == 0:
        return [] if all(x == 0 for x in target) else None
    M = [[gens[j][i] for j in range(r)] for i in range(n)]
    U, D, V = snf(M)
    rhs = mat_vec(U, target)
    y = [0] * r
    for i in range(r):
        d = D[i][i] if i < min(n, r) else 0
        b = rhs[i] if i < n else 0
        if d == 0:
            if b != 0:
                return None
        else:
            if b % d != 0:
                return None
            y[i] = b // d
    for i in range(r, n):
        if rhs[i] != 0:
            return None
    return mat_vec(V, y)


class StructuredGroup:
    """Cyclic decomposition with generator expressions in ambient coordinates.

    orders[i] is 0 for Z and the cyclic order otherwise; gens[i] is the
    generator as an integer vector in the coordinates of the ambient
    presentation the group was computed from.
    """

    __slots__ = ("orders", "gens")

    def __init__(self, orders, gens):
        self.orders = orders
        self.gens = gens

    def __repr__(self):
        return f"StructuredGroup(orders={self.orders})"

    def log2_order(self):
        """(free rank, total 2-log of torsion); torsion must be 2-power."""
        rank = 0
        log = 0
        for d in self.orders:
            if d == 0:
                rank += 1
            else:
                assert d & (d - 1) == 0, f"non 2-power torsion order {d}"
                log += d.bit_length() - 1
        return rank, log


def _presentation_from_relations(gen_vectors, relation_matrix):
    """Decompose span(gen_vectors)/relations into cyclics.

    gen_vectors: columns (in ambient coordinates) generating the subgroup.
    relation_matrix: r x t integer matrix whose columns are relations among
    the generators.  Returns a StructuredGroup with generator expressions in
    ambient coordinates; order-1 summands are dropped.
    """
    r = len(gen_vectors)
    if r == 0:
        return StructuredGroup([], [])
    amb = len(gen_vectors[0])
    rel = relation_matrix if relation_matrix and relation_matrix[0] else [[0] for _ in range(r)]
    if len(rel) != r:
        rel = [[0] for _ in range(r)]
    U, D, _ = snf(rel)
    Uinv = mat_inverse_unimodular(U)
    orders = []
    gens = []
    ncols = len(rel[0])
    for i in range(r):
        d = D[i][i] if i < min(r, ncols) else 0
        if d == 1:
            continue
        coeffs = [Uinv[k][i] for k in range(r)]
        vec = [sum(coeffs[k] * gen_vectors[k][a] for k in range(r)) for a in range(amb)]
        orders.append(d)
        gens.append(vec)
    return StructuredGroup(orders, gens)


def kernel_cokernel(A, src_orders, tgt_orders):
    """Kernel and cokernel of a map between direct sums of cyclics.

    A is the matrix of the map (rows = target summands, columns = source).
    Returns (kernel, cokernel) as StructuredGroups; kernel generators are
    vectors in source coordinates, cokernel generators in target coordinates.
    """
    n = len(src_orders)
    m = len(tgt_orders)
    assert len(A) == m and all(len(row) == n for row in A), "shape mismatch"

    # cokernel: Z^m / (im A + im diag(tgt_orders))
    R = [[A[i][j] for j in range(n)] + [tgt_orders[i] if k == i else 0 for k in range(m)]
         for i in range(m)]
    coker = _presentation_from_relations(
        [[1 if a == i else 0 for a in range(m)] for i in range(m)],
        R,
    ) if m else StructuredGroup([], [])

    # kernel lattice L = {x : A x in im diag(tgt)}, via the integer kernel of
    # [A | -diag(tgt)] projected to the x block
    if n == 0:
        return StructuredGroup([], []), coker
    Mk = [[A[i][j] for j in range(n)] + [-tgt_orders[i] if k == i else 0 for k in range(m)]
          for i in range(m)]
    kcols = integer_kernel(Mk) if m else [[1 if a == i else 0 for a in range(n)] for i in range(n)]
    C = [col[:n] for col in kcols]
    C = [c for c in C if any(x != 0 for x in c)]
    if not C:
        return StructuredGroup([], []), coker
    # relations: v with C v in im diag(src_orders)
    r = len(C)
    Mr = [[C[j][i] for j in range(r)] + [-src_orders[i] if k == i else 0 for k in range(n)]
          for i in range(n)]
    rcols = integer_kernel(Mr)
    rel = [[col[j] for col in rcols] for j in range(r)] if rcols else [[0] for _ in range(r)]
    kernel = _presentation_from_relations(C, rel)
    return kernel, coker


def homology_group(A, src_orders, B, mid_orders, tgt_orders):
    """ker(B)/im(A) for composable maps A: S -> M, B: M -> T of cyclic sums.

    Raises ValueError (not a complex) if B A is nonzero modulo the target
    orders.  Generators of the result are vectors in M's coordinates.
    """
    n_mid = len(mid_orders)
    BA = mat_mul(B, A)
    for i, row in enumerate(BA):
        for j, v in enumerate(row):
            if (tgt_orders[i] and v % tgt_orders[i] != 0) or (not tgt_orders[i] and v != 0):
                raise ValueError(
                    f"not a complex: composite nonzero at target {i}, source generator {j}"
                )
    if n_mid == 0:
        return StructuredGroup([], [])
    m_tgt = len(tgt_orders)
    n_src = len(src_orders)
    if m_tgt:
        Mk = [[B[i][j] for j in range(n_mid)]
              + [-tgt_orders[i] if k == i else 0 for k in range(m_tgt)]
              for i in range(m_tgt)]
        kcols = integer_kernel(Mk)
        C = [col[:n_mid] for col in kcols]
    else:
        C = [[1 if a == i else 0 for a in range(n_mid)] for i in range(n_mid)]
    C = [c for c in C if any(x != 0 for x in c)]
    if not C:
        return StructuredGroup([], [])
    r = len(C)
    # relations: v with C v in im(A) + im diag(mid_orders)
    cols = n_src + n_mid
    Mr = []
    for i in range(n_mid):
        row = [C[j][i] for j in range(r)]
        row += [-A[i][j] for j in range(n_src)]
        row += [-mid_orders[i] if k == i else 0 for k in range(n_mid)]
        Mr.append(row)
    rcols = integer_kernel(Mr)
    rel = [[col[j] for col in rcols] for j in range(r)] if rcols else [[0] for _ in range(r)]
    return _presentation_from_relations(C, rel)


def express_in_group(group: StructuredGroup, ambient_orders, vec, modulo_cols=()):
    """Coordinates of an ambient vector in a StructuredGroup's generators.

    Solves vec = sum c_i gens[i] modulo the ambient orders and the extra
    columns in modulo_cols (e.g. an image to quotient by); returns the
    coefficient list reduced modulo the group's own orders, or None.
    """
    gens = list(group.gens)
    n = len(ambient_orders)
    ext = gens + list(modulo_cols)
    ext += [[ambient_orders[i] if k == i else 0 for k in range(n)]
            for i in range(n) if ambient_orders[i]]
    sol = lattice_saturation_solve(ext, vec)
    if sol is None:
        return None
    out = []
    for i, d in enumerate(group.orders):
        c = sol[i]
        if d:
            c %= d
        out.append(c)
    return out
