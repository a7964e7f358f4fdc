"""Dense vectors and matrices over F_{q^N}, plus rank queries over F_q.

Vectors are lists of field elements (ints) and matrices are lists of row
lists; every function takes the FieldCtx explicitly.  The rank of a vector
over the base field is the number of its entries that are linearly
independent over F_q -- the quantity the whole cryptosystem is built on.
For q = 2 those computations run on bit-packed rows (one int per row of
the coordinate expansion), which is what keeps the distinguisher and the
decoder fast.
"""

from __future__ import annotations

__all__ = [
    "vec_add",
    "vec_sub",
    "vec_mat_mul",
    "mat_mul",
    "mat_add",
    "mat_inv",
    "transpose",
    "identity_matrix",
    "zeros_matrix",
    "concat_cols",
    "submatrix",
    "mat_frobenius",
    "is_base_field",
    "rank_ext",
    "ext_nullspace",
    "solve_linear",
    "rank_over_base",
    "column_rank_over_base",
    "random_matrix",
    "random_invertible",
    "random_full_row_rank",
    "independent_elements",
    "sample_error",
    "sample_error_decomposed",
    "sample_error_up_to",
]


# -- basic arithmetic -------------------------------------------------------


def vec_add(ctx, u, v):
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    add = ctx.add
    return [add(a, b) for a, b in zip(u, v)]


def vec_sub(ctx, u, v):
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    sub = ctx.sub
    return [sub(a, b) for a, b in zip(u, v)]


def vec_mat_mul(ctx, v, M):
    """Row vector times matrix."""
    if len(v) != len(M):
        raise ValueError(f"dimension mismatch: vector {len(v)}, matrix {len(M)} rows")
    cols = len(M[0])
    add = ctx.add
    mul = ctx.mul
    out = [0] * cols
    for a, row in zip(v, M):
        if a == 0:
            continue
        if a == 1:
            for j, b in enumerate(row):
                if b:
                    out[j] = add(out[j], b)
        else:
            for j, b in enumerate(row):
                if b:
                    out[j] = add(out[j], mul(a, b))
    return out


def mat_mul(ctx, A, B):
    if len(A[0]) != len(B):
        raise ValueError(f"dimension mismatch: {len(A[0])} cols vs {len(B)} rows")
    cols = len(B[0])
    add = ctx.add
    mul = ctx.mul
    out = []
    for row in A:
        acc = [0] * cols
        for a, brow in zip(row, B):
            if a == 0:
                continue
            if a == 1:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] = add(acc[j], b)
            else:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] = add(acc[j], mul(a, b))
        out.append(acc)
    return out


def mat_add(ctx, A, B):
    if len(A) != len(B) or len(A[0]) != len(B[0]):
        raise ValueError("shape mismatch")
    add = ctx.add
    return [[add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def identity_matrix(size):
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def zeros_matrix(rows, cols):
    return [[0] * cols for _ in range(rows)]


def concat_cols(A, B):
    if len(A) != len(B):
        raise ValueError("row-count mismatch")
    return [ra + rb for ra, rb in zip(A, B)]


def submatrix(M, rows, cols):
    rows = list(rows)
    cols = list(cols)
    return [[M[i][j] for j in cols] for i in rows]


def mat_frobenius(ctx, M, i=1):
    """Entry-wise Frobenius power of a matrix."""
    frob = ctx.frobenius
    return [[frob(a, i) for a in row] for row in M]


def is_base_field(ctx, M):
    return all(a < ctx.q for row in M for a in row)


# -- elimination over the extension field -----------------------------------


def rank_ext(ctx, M):
    """Ordinary rank of a matrix, by elimination over F_{q^N}."""
    if not M:
        return 0
    work = [list(row) for row in M]
    rows = len(work)
    cols = len(work[0])
    sub = ctx.sub
    mul = ctx.mul
    inv = ctx.inv
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if work[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        piv_inv = inv(work[r][c])
        prow = work[r]
        if piv_inv != 1:
            work[r] = prow = [mul(piv_inv, a) for a in prow]
        for i in range(r + 1, rows):
            f = work[i][c]
            if f:
                wrow = work[i]
                for j in range(c, cols):
                    if prow[j]:
                        wrow[j] = sub(wrow[j], mul(f, prow[j]))
        r += 1
        if r == rows:
            break
    return r


def _rref(ctx, M):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    work = [list(row) for row in M]
    rows = len(work)
    cols = len(work[0]) if work else 0
    sub = ctx.sub
    mul = ctx.mul
    inv = ctx.inv
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if work[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        piv_inv = inv(work[r][c])
        if piv_inv != 1:
            work[r] = [mul(piv_inv, a) for a in work[r]]
        prow = work[r]
        for i in range(rows):
            if i != r and work[i][c]:
                f = work[i][c]
                wrow = work[i]
                for j in range(c, cols):
                    if prow[j]:
                        wrow[j] = sub(wrow[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return work, pivots


def ext_nullspace(ctx, M):
    """Basis of the right null space {x : M x = 0}, as a list of vectors."""
    if not M:
        return []
    cols = len(M[0])
    work, pivots = _rref(ctx, M)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    neg = ctx.neg
    for f in free:
        x = [0] * cols
        x[f] = 1
        for r, pc in enumerate(pivots):
            x[pc] = neg(work[r][f])
        basis.append(x)
    return basis


def solve_linear(ctx, A, b):
    """One solution x of A x = b (free variables set to zero).

    Raises ValueError when the system is inconsistent.
    """
    if len(A) != len(b):
        raise ValueError("dimension mismatch")
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    cols = len(A[0])
    work, pivots = _rref(ctx, aug)
    x = [0] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            raise ValueError("inconsistent linear system")
        x[pc] = work[r][cols]
    return x


def mat_inv(ctx, M):
    size = len(M)
    if any(len(row) != size for row in M):
        raise ValueError("matrix must be square")
    aug = [list(row) + [1 if i == j else 0 for j in range(size)] for i, row in enumerate(M)]
    work, pivots = _rref(ctx, aug)
    if pivots != list(range(size)):
        raise ValueError("matrix is singular")
    return [row[size:] for row in work[:size]]


# -- bit-packed elimination over F_2 ----------------------------------------
# Rows are ints; bit j of a row is the entry in column j.


def _gf2_rank(rows):
    pivots = {}
    rank = 0
    for v in rows:
        while v:
            p = v.bit_length() - 1
            other = pivots.get(p)
            if other is None:
                pivots[p] = v
                rank += 1
                break
            v ^= other
    return rank


def _gf2_rref(rows, ncols):
    work = [r for r in rows]
    nrows = len(work)
    pivots = []
    r = 0
    for c in range(ncols):
        mask = 1 << c
        pivot = None
        for i in range(r, nrows):
            if work[i] & mask:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        prow = work[r]
        for i in range(nrows):
            if i != r and (work[i] & mask):
                work[i] ^= prow
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return work, pivots


def _gf2_nullspace(rows, ncols):
    """Basis (as ints) of {x : M x = 0} for the bit matrix given by rows."""
    work, pivots = _gf2_rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        x = 1 << f
        fmask = 1 << f
        for r, pc in enumerate(pivots):
            if work[r] & fmask:
                x |= 1 << pc
        basis.append(x)
    return basis


def _gf2_solve(rows, ncols, rhs_bits):
    """One solution (as an int) of M x = rhs, or None if inconsistent."""
    aug = [row | ((rhs_bits >> i & 1) << ncols) for i, row in enumerate(rows)]
    work, pivots = _gf2_rref(aug, ncols + 1)
    x = 0
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        if work[r] >> ncols & 1:
            x |= 1 << pc
    return x


# -- elimination mod a prime q, for the generic path -------------------------


def _modq_rref(rows, ncols, q):
    work = [list(r) for r in rows]
    nrows = len(work)
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if work[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = pow(work[r][c], q - 2, q)
        if inv != 1:
            work[r] = [(a * inv) % q for a in work[r]]
        prow = work[r]
        for i in range(nrows):
            f = work[i][c]
            if i != r and f:
                work[i] = [(a - f * p) % q for a, p in zip(work[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return work, pivots


def _modq_rank(rows, q):
    if not rows:
        return 0
    return len(_modq_rref(rows, len(rows[0]), q)[1])


def _modq_nullspace(rows, ncols, q):
    work, pivots = _modq_rref(rows, ncols, q)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, pc in enumerate(pivots):
            x[pc] = (-work[r][f]) % q
        basis.append(x)
    return basis


def _modq_solve(rows, ncols, rhs, q):
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    work, pivots = _modq_rref(aug, ncols + 1, q)
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = work[r][ncols]
    return x


# -- rank over the base field -------------------------------------------------


def rank_over_base(ctx, vec):
    """Number of entries of vec linearly independent over F_q."""
    if ctx.q == 2:
        return _gf2_rank(list(vec))
    return _modq_rank([list(ctx.coeffs(a)) for a in vec], ctx.q)


def column_rank_over_base(ctx, M):
    """Number of columns of M linearly independent over F_q."""
    if not M:
        return 0
    cols = len(M[0])
    N = ctx.N
    if ctx.q == 2:
        packed = []
        for j in range(cols):
            v = 0
            for i, row in enumerate(M):
                v |= row[j] << (i * N)
            packed.append(v)
        return _gf2_rank(packed)
    expanded = []
    for j in range(cols):
        col = []
        for row in M:
            col.extend(ctx.coeffs(row[j]))
        expanded.append(col)
    return _modq_rank(expanded, ctx.q)


# -- random generation ---------------------------------------------------------


def random_matrix(ctx, rows, cols, rng, base_field=False):
    if base_field:
        q = ctx.q
        return [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)]
    size = ctx.size
    return [[rng.randrange(size) for _ in range(cols)] for _ in range(rows)]


def random_invertible(ctx, size, rng, base_field=False):
    """Rejection-sampled invertible matrix (over F_q when base_field is set)."""
    while True:
        M = random_matrix(ctx, size, size, rng, base_field=base_field)
        if rank_ext(ctx, M) == size:
            return M


def random_full_row_rank(ctx, rows, cols, rng, base_field=False):
    if rows > cols:
        raise ValueError(f"cannot have row rank {rows} with only {cols} columns")
    while True:
        M = random_matrix(ctx, rows, cols, rng, base_field=base_field)
        if rank_ext(ctx, M) == rows:
            return M


def independent_elements(ctx, count, rng):
    """count elements of F_{q^N} linearly independent over F_q."""
    if count > ctx.N:
        raise ValueError(f"at most {ctx.N} independent elements exist, asked for {count}")
    out = []
    while len(out) < count:
        cand = ctx.rand_nonzero(rng)
        if rank_over_base(ctx, out + [cand]) == len(out) + 1:
            out.append(cand)
    return out


# -- rank-bounded error vectors -------------------------------------------------


def sample_error_decomposed(ctx, n, rank, rng):
    """Error of rank exactly `rank`, returned with its witness factorisation.

    The vector is built as e = w A with w a list of `rank` elements
    independent over F_q and A a full-row-rank rank x n matrix over F_q,
    which is exactly what makes every entry of e live in the F_q-span of w.
    """
    if rank < 0 or rank > min(n, ctx.N):
        raise ValueError(f"rank must lie in [0, min(n, N)] = [0, {min(n, ctx.N)}]")
    if rank == 0:
        return [0] * n, [], []
    w = independent_elements(ctx, rank, rng)
    A = random_full_row_rank(ctx, rank, n, rng, base_field=True)
    add = ctx.add
    mul = ctx.mul
    e = []
    for j in range(n):
        acc = 0
        for i in range(rank):
            a = A[i][j]
            if a == 1:
                acc = add(acc, w[i])
            elif a:
                acc = add(acc, mul(w[i], a))
        e.append(acc)
    return e, w, A


def sample_error(ctx, n, rank, rng):
    """Random length-n vector of rank exactly `rank` over F_q."""
    return sample_error_decomposed(ctx, n, rank, rng)[0]


def sample_error_up_to(ctx, n, max_rank, rng):
    """Random length-n vector of rank at most max_rank (rank drawn uniformly)."""
    return sample_error(ctx, n, rng.randint(0, max_rank), rng)
