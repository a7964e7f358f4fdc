"""Linearized polynomials over F_{q^N}.

A linearized polynomial L(x) = sum(a_i * x^(q^i)) induces an F_q-linear map
on F_{q^N}.  Under addition and composition these polynomials form a
non-commutative ring: composing A after B twists B's coefficients by the
Frobenius, (A o B)_p = sum over i+j=p of a_i * b_j^(q^i).  Composition,
right division, the extended Euclidean algorithm, and kernel computation
are everything the Gabidulin decoder needs.

Coefficients are stored lowest q-degree first with no trailing zeros; the
zero polynomial has an empty coefficient tuple and q-degree -1.
"""

from __future__ import annotations

__all__ = ["LinPoly", "lp_eea", "annihilator"]


class LinPoly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, ctx) -> "LinPoly":
        return cls(ctx, ())

    @classmethod
    def identity(cls, ctx) -> "LinPoly":
        """The composition identity x."""
        return cls(ctx, (1,))

    @classmethod
    def monomial(cls, ctx, i: int, c: int = 1) -> "LinPoly":
        """c * x^(q^i)."""
        return cls(ctx, (0,) * i + (c,))

    @property
    def qdeg(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def add(self, other: "LinPoly") -> "LinPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.ctx.add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return LinPoly(self.ctx, out)

    def sub(self, other: "LinPoly") -> "LinPoly":
        ctx = self.ctx
        out = list(self.coeffs)
        if len(out) < len(other.coeffs):
            out.extend([0] * (len(other.coeffs) - len(out)))
        sub = ctx.sub
        for i, c in enumerate(other.coeffs):
            out[i] = sub(out[i], c)
        return LinPoly(ctx, out)

    def scale(self, c: int) -> "LinPoly":
        """Left scalar multiple, (c*L)(x) = c * L(x)."""
        mul = self.ctx.mul
        return LinPoly(self.ctx, [mul(c, a) for a in self.coeffs])

    def compose(self, other: "LinPoly") -> "LinPoly":
        """self o other, i.e. x -> self(other(x))."""
        if self.is_zero() or other.is_zero():
            return LinPoly.zero(self.ctx)
        ctx = self.ctx
        add = ctx.add
        mul = ctx.mul
        frob = ctx.frobenius
        out = [0] * (self.qdeg + other.qdeg + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = add(out[i + j], mul(a, frob(b, i)))
        return LinPoly(ctx, out)

    def __call__(self, beta: int) -> int:
        ctx = self.ctx
        add = ctx.add
        mul = ctx.mul
        frob = ctx.frobenius
        acc = 0
        for i, a in enumerate(self.coeffs):
            if a:
                acc = add(acc, mul(a, frob(beta, i)))
        return acc

    def right_divmod(self, divisor: "LinPoly") -> tuple["LinPoly", "LinPoly"]:
        """Q, R with self = Q o divisor + R and qdeg(R) < qdeg(divisor)."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ctx = self.ctx
        dd = divisor.qdeg
        if self.qdeg < dd:
            return LinPoly.zero(ctx), self
        sub = ctx.sub
        mul = ctx.mul
        inv = ctx.inv
        frob = ctx.frobenius
        dlead = divisor.coeffs[-1]
        R = list(self.coeffs)
        Q = [0] * (self.qdeg - dd + 1)
        while len(R) - 1 >= dd:
            s = len(R) - 1 - dd
            c = mul(R[-1], inv(frob(dlead, s)))
            Q[s] = c
            for k, dk in enumerate(divisor.coeffs):
                if dk:
                    R[k + s] = sub(R[k + s], mul(c, frob(dk, s)))
            while R and R[-1] == 0:
                R.pop()
            if not R:
                break
        return LinPoly(ctx, Q), LinPoly(ctx, R)

    def kernel_basis(self) -> list[int]:
        """Basis over F_q of {beta in F_{q^N} : L(beta) = 0}."""
        ctx = self.ctx
        N = ctx.N
        if self.is_zero():
            return [ctx.q**j for j in range(N)]
        images = [self(ctx.q**j) for j in range(N)]
        if ctx.q == 2:
            from .linalg import _gf2_nullspace

            rows = []
            for t in range(N):
                row = 0
                for j in range(N):
                    row |= ((images[j] >> t) & 1) << j
                rows.append(row)
            return _gf2_nullspace(rows, N)
        from .linalg import _modq_nullspace

        cols = [ctx.coeffs(v) for v in images]
        rows = [[cols[j][t] for j in range(N)] for t in range(N)]
        return [ctx.from_coeffs(v) for v in _modq_nullspace(rows, N, ctx.q)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinPoly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "LinPoly(0)"
        terms = [f"{a}*x^[{i}]" for i, a in enumerate(self.coeffs) if a]
        return "LinPoly(" + " + ".join(terms) + ")"


def lp_eea(A: LinPoly, B: LinPoly, stop_degree: int) -> tuple[LinPoly, LinPoly, LinPoly]:
    """Extended Euclid on (A, B) under composition, stopped early.

    Returns (U, V, R) with R = U o A + V o B and qdeg(R) < stop_degree,
    taking the first remainder in the Euclidean sequence that drops below
    stop_degree.  With B = 0 the convention is (identity, 0, A).
    """
    ctx = A.ctx
    one = LinPoly.identity(ctx)
    zero = LinPoly.zero(ctx)
    if B.is_zero():
        return one, zero, A
    r0, u0, v0 = A, one, zero
    r1, u1, v1 = B, zero, one
    while not r1.is_zero() and r1.qdeg >= stop_degree:
        q, r2 = r0.right_divmod(r1)
        r0, u0, v0, r1, u1, v1 = (
            r1,
            u1,
            v1,
            r2,
            u0.sub(q.compose(u1)),
            v0.sub(q.compose(v1)),
        )
    return u1, v1, r1


def annihilator(ctx, elems) -> LinPoly:
    """Monic linearized polynomial whose kernel contains span_{F_q}(elems).

    Built by the classical chain L -> (x^[1] - L(w)^(q-1) * x) o L; the
    q-degree of the result is the rank of elems over F_q.
    """
    L = LinPoly.identity(ctx)
    for w in elems:
        v = L(w)
        if v == 0:
            continue
        factor = LinPoly(ctx, (ctx.neg(ctx.pow(v, ctx.q - 1)), 1))
        L = factor.compose(L)
    return L
