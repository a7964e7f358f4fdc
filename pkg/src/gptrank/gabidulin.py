"""Gabidulin maximum-rank-distance codes: construction, encoding, decoding.

The code of length n <= N and dimension k over F_{q^N} is generated by the
k x n matrix whose rows are successive Frobenius powers of a fixed vector g
with entries linearly independent over F_q.  Such codes attain the
Singleton bound in the rank metric (d = n - k + 1) and correct any error of
rank up to t = floor((n - k) / 2).

Decoding is syndrome based.  Writing the received word as y = c + e with
e = w A (w of rank s over F_q, A over F_q), the syndromes collapse to
s_l = sum_i w_i x_i^(q^l); the minimal linearized polynomial annihilating
the w_i satisfies a key equation modulo x^(q^(n-k)) that the linearized
extended Euclidean algorithm solves.  Its kernel yields the span of the
error values, after which the error locations follow from one F_q-linear
system and the message from the first k coordinates.
"""

from __future__ import annotations

from .errors import DecodeFailure, ParameterError
from .linalg import (
    _gf2_solve,
    _modq_solve,
    ext_nullspace,
    independent_elements,
    mat_inv,
    mat_mul,
    rank_over_base,
    transpose,
    vec_mat_mul,
    vec_sub,
)
from .linpoly import LinPoly, lp_eea

__all__ = ["GabidulinCode", "moore_matrix"]


def moore_matrix(ctx, g, rows, start=0):
    """rows x len(g) matrix with entry (i, j) = g_j^(q^(start + i))."""
    frob = ctx.frobenius
    return [[frob(gj, start + i) for gj in g] for i in range(rows)]


class GabidulinCode:
    """An (n, k) maximum-rank-distance code over F_{q^N}."""

    def __init__(self, ctx, g, k: int):
        n = len(g)
        if not 1 <= k < n:
            raise ParameterError(f"need 1 <= k < n, got k={k}, n={n}")
        if n > ctx.N:
            raise ParameterError(f"code length {n} exceeds extension degree {ctx.N}")
        if rank_over_base(ctx, g) != n:
            raise ParameterError("code locators must be linearly independent over F_q")
        self.ctx = ctx
        self.g = list(g)
        self.n = n
        self.k = k
        self.d = n - k + 1
        self.t = (n - k) // 2
        self.G = moore_matrix(ctx, g, k)
        self.h, self.H = self._derive_parity()
        # per-column Frobenius powers of h, reused by every syndrome pass
        self._htab = [[ctx.frobenius(hj, l) for l in range(n - k)] for hj in self.h]
        self._info_inv = mat_inv(ctx, [row[:k] for row in self.G])

    @classmethod
    def random(cls, ctx, n: int, k: int, rng) -> "GabidulinCode":
        return cls(ctx, independent_elements(ctx, n, rng), k)

    def _derive_parity(self):
        """Parity vector h and check matrix H with G H^T = 0.

        The null space of the (n-1)-row Frobenius-power matrix of g is one
        dimensional; twisting its generator by sigma^(k+1-n) aligns the
        orthogonality window so that every row power of G annihilates every
        row power of H.  The twist is verified and, defensively, searched.
        """
        ctx = self.ctx
        n, k = self.n, self.k
        basis = ext_nullspace(ctx, moore_matrix(ctx, self.g, n - 1))
        if len(basis) != 1:
            raise ParameterError("parity derivation failed: null space not 1-dimensional")
        h0 = basis[0]
        shifts = [(k + 1 - n) % ctx.N]
        shifts += [s for s in range(ctx.N) if s not in shifts]
        for s in shifts:
            h = [ctx.frobenius(v, s) for v in h0]
            if rank_over_base(ctx, h) != n:
                continue
            H = moore_matrix(ctx, h, n - k)
            prod = mat_mul(ctx, self.G, transpose(H))
            if all(all(v == 0 for v in row) for row in prod):
                return h, H
        raise ParameterError("parity derivation failed: no valid Frobenius twist")

    def encode(self, m):
        if len(m) != self.k:
            raise ParameterError(f"message length must be {self.k}, got {len(m)}")
        return vec_mat_mul(self.ctx, m, self.G)

    def syndromes(self, y):
        ctx = self.ctx
        add = ctx.add
        mul = ctx.mul
        nk = self.n - self.k
        out = [0] * nk
        for yj, col in zip(y, self._htab):
            if yj:
                for l in range(nk):
                    out[l] = add(out[l], mul(yj, col[l]))
        return out

    def _solve_message(self, c):
        return vec_mat_mul(self.ctx, c[: self.k], self._info_inv)

    def _solve_locations(self, E, synd):
        """A over F_q with sum_i E_i (A h^T)_i^(q^l) = s_l, or None."""
        ctx = self.ctx
        n = self.n
        nk = self.n - self.k
        r = len(E)
        N = ctx.N
        mul = ctx.mul
        ncols = r * n
        if ctx.q == 2:
            rows = [0] * (nk * N)
            for i, Ei in enumerate(E):
                for j in range(n):
                    col = 1 << (i * n + j)
                    htab_j = self._htab[j]
                    for l in range(nk):
                        v = mul(Ei, htab_j[l])
                        base = l * N
                        while v:
                            low = v & -v
                            rows[base + low.bit_length() - 1] |= col
                            v ^= low
            rhs = 0
            for l, sl in enumerate(synd):
                rhs |= sl << (l * N)
            x = _gf2_solve(rows, ncols, rhs)
            if x is None:
                return None
            return [[(x >> (i * n + j)) & 1 for j in range(n)] for i in range(r)]
        rows = [[0] * ncols for _ in range(nk * N)]
        for i, Ei in enumerate(E):
            for j in range(n):
                cidx = i * n + j
                htab_j = self._htab[j]
                for l in range(nk):
                    cs = ctx.coeffs(mul(Ei, htab_j[l]))
                    for tbit in range(N):
                        if cs[tbit]:
                            rows[l * N + tbit][cidx] = cs[tbit]
        rhs = []
        for sl in synd:
            rhs.extend(ctx.coeffs(sl))
        x = _modq_solve(rows, ncols, rhs, ctx.q)
        if x is None:
            return None
        return [[x[i * n + j] for j in range(n)] for i in range(r)]

    def decode(self, y):
        """Message and error with y = encode(m) + e and rank(e) <= t.

        Raises DecodeFailure when no such pair exists (the result is
        verified before it is returned, so a success is always genuine).
        """
        ctx = self.ctx
        n, k, t = self.n, self.k, self.t
        if len(y) != n:
            raise ParameterError(f"received word length must be {n}, got {len(y)}")
        synd = self.syndromes(y)
        if not any(synd):
            return self._solve_message(y), [0] * n
        S = LinPoly(ctx, synd)
        A = LinPoly.monomial(ctx, n - k)
        _, V, _ = lp_eea(A, S, stop_degree=(n - k + 1) // 2)
        if V.is_zero():
            raise DecodeFailure("key equation has no solution within the radius")
        E = V.kernel_basis()
        if not 0 < len(E) <= t:
            raise DecodeFailure("error span dimension outside the decoding radius")
        A_loc = self._solve_locations(E, synd)
        if A_loc is None:
            raise DecodeFailure("error locations are inconsistent with the syndromes")
        add = ctx.add
        mul = ctx.mul
        e = []
        for j in range(n):
            acc = 0
            for i, Ei in enumerate(E):
                a = A_loc[i][j]
                if a == 1:
                    acc = add(acc, Ei)
                elif a:
                    acc = add(acc, mul(Ei, a))
            e.append(acc)
        if rank_over_base(ctx, e) > t:
            raise DecodeFailure("reconstructed error exceeds the decoding radius")
        c = vec_sub(ctx, y, e)
        m = self._solve_message(c)
        if self.encode(m) != c:
            raise DecodeFailure("reconstructed word is not a codeword")
        return m, e

    def __repr__(self) -> str:
        return (
            f"GabidulinCode(n={self.n}, k={self.k}, d={self.d}, t={self.t}, "
            f"q={self.ctx.q}, N={self.ctx.N})"
        )
