"""Arithmetic in a prime field F_q and its degree-N extension F_{q^N}.

Field elements are bare ints: the element c0 + c1*a + ... + c_{N-1}*a^(N-1),
where a is the residue class of x modulo the field polynomial, is stored as
sum(c_i * q**i).  For q = 2 an element is therefore exactly the bit pattern
of its coefficient vector, 0 and 1 are the additive and multiplicative
identities, and addition is xor.  A FieldCtx carries the modulus and
implements all arithmetic; the ints themselves do not know their context,
so values from different contexts must never be mixed (higher layers check
context equality at object boundaries such as codes and key files).
"""

from __future__ import annotations

__all__ = [
    "FieldCtx",
    "get_field",
    "default_modulus",
    "is_irreducible",
    "is_prime",
]

_WORD_BITS = 64
_TABLE_LIMIT = 1 << 16


def is_prime(p: int) -> bool:
    """Deterministic primality check by trial division (p stays small here)."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_q, used only for modulus validation ----------
# Representation: list of int coefficients, constant term first.


def _poly_trim(c: list[int]) -> list[int]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list[int], b: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % q
    return _poly_trim(out)


def _poly_mod(a: list[int], f: list[int], q: int) -> list[int]:
    # f must be monic
    a = _poly_trim(a)
    df = len(f) - 1
    while len(a) - 1 >= df and a:
        lead = a[-1]
        shift = len(a) - 1 - df
        if lead:
            for i, fi in enumerate(f):
                a[shift + i] = (a[shift + i] - lead * fi) % q
        a = _poly_trim(a)
    return a


def _poly_sub(a: list[int], b: list[int], q: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] - bi) % q
    return _poly_trim(out)


def _poly_powmod(base: list[int], e: int, f: list[int], q: int) -> list[int]:
    result = [1]
    b = _poly_mod(list(base), f, q)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, b, q), f, q)
        b = _poly_mod(_poly_mul(b, b, q), f, q)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    a = _poly_trim(a)
    b = _poly_trim(b)
    while b:
        inv_lead = pow(b[-1], q - 2, q)
        b_monic = [(c * inv_lead) % q for c in b]
        a, b = b_monic, _poly_mod(list(a), b_monic, q)
    return a


def is_irreducible(q: int, coeffs) -> bool:
    """Rabin irreducibility test for a polynomial over F_q (q prime)."""
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    f = _poly_trim([c % q for c in coeffs])
    if len(f) < 2:
        return False
    if f[-1] != 1:
        inv_lead = pow(f[-1], q - 2, q)
        f = [(c * inv_lead) % q for c in f]
    n = len(f) - 1
    if n == 1:
        return True
    x = [0, 1]
    # x^(q^n) must reduce to x mod f
    h = x
    for _ in range(n):
        h = _poly_powmod(h, q, f, q)
    if h != x:
        return False
    # and x^(q^(n/p)) - x must be coprime to f for every prime p | n
    for p in _prime_factors(n):
        g = x
        for _ in range(n // p):
            g = _poly_powmod(g, q, f, q)
        if len(_poly_gcd(_poly_sub(g, x, q), f, q)) - 1 != 0:
            return False
    return True


_MODULUS_CACHE: dict[tuple[int, int], tuple[int, ...]] = {}


def default_modulus(q: int, N: int) -> tuple[int, ...]:
    """First monic irreducible of degree N over F_q, by low-coefficient order.

    The search is deterministic, so a given (q, N) always names the same
    field.  Coefficients are returned constant term first.
    """
    key = (q, N)
    hit = _MODULUS_CACHE.get(key)
    if hit is not None:
        return hit
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    if N < 1:
        raise ValueError("degree must be positive")
    for low in range(1, q**N):
        coeffs = []
        v = low
        for _ in range(N):
            coeffs.append(v % q)
            v //= q
        coeffs.append(1)
        if coeffs[0] == 0:
            continue  # divisible by x
        if is_irreducible(q, coeffs):
            result = tuple(coeffs)
            _MODULUS_CACHE[key] = result
            return result
    raise RuntimeError(f"no irreducible of degree {N} over F_{q} found")


class FieldCtx:
    """Arithmetic context for F_{q^N}.

    Construction checks that q is prime, that the modulus is monic
    irreducible of degree N, and that q**N fits in a 64-bit word.  Prime
    powers q are rejected: a composite base field would itself be an
    extension and nothing in this package needs one.

    When q**N is small enough, discrete log/exp tables are built eagerly
    and multiplication becomes two lookups; otherwise q = 2 uses a
    carry-less multiply with shift reduction, and other primes fall back
    to coefficient arithmetic.
    """

    def __init__(self, q: int = 2, N: int = 2, modulus=None):
        if not is_prime(q):
            raise ValueError(
                f"q must be a prime, got {q} (prime-power base fields are not supported)"
            )
        if N < 2:
            raise ValueError(f"extension degree N must be >= 2, got {N}")
        size = q**N
        if size > (1 << _WORD_BITS):
            raise ValueError(f"q**N = {q}**{N} does not fit in {_WORD_BITS} bits")
        self.q = q
        self.N = N
        self.size = size
        self.order = size - 1
        if modulus is None:
            modulus = default_modulus(q, N)
        mod = _poly_trim([c % q for c in modulus])
        if len(mod) - 1 != N:
            raise ValueError(f"modulus must have degree {N}, got degree {len(mod) - 1}")
        if mod[-1] != 1:
            inv_lead = pow(mod[-1], q - 2, q)
            mod = [(c * inv_lead) % q for c in mod]
        if not is_irreducible(q, mod):
            raise ValueError(f"modulus {mod} is reducible over F_{q}")
        self.modulus = tuple(mod)
        self._mod_int = sum(c << i for i, c in enumerate(mod)) if q == 2 else None

        if q == 2:
            self.add = self._add_xor
            self.sub = self._add_xor
            self.neg = self._neg_char2
        else:
            self.add = self._add_generic
            self.sub = self._sub_generic
            self.neg = self._neg_generic

        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if size <= _TABLE_LIMIT:
            self._build_tables()
        if self._exp is not None:
            self.mul = self._mul_table
        elif q == 2:
            self.mul = self._mul_gf2
        else:
            self.mul = self._mul_generic

        self._frob: dict[int, list[int]] = {}

    # -- addition ----------------------------------------------------------

    def _add_xor(self, a: int, b: int) -> int:
        return a ^ b

    def _neg_char2(self, a: int) -> int:
        return a

    def _add_generic(self, a: int, b: int) -> int:
        q = self.q
        r = 0
        place = 1
        while a or b:
            r += ((a % q + b % q) % q) * place
            a //= q
            b //= q
            place *= q
        return r

    def _sub_generic(self, a: int, b: int) -> int:
        q = self.q
        r = 0
        place = 1
        while a or b:
            r += ((a % q - b % q) % q) * place
            a //= q
            b //= q
            place *= q
        return r

    def _neg_generic(self, a: int) -> int:
        return self._sub_generic(0, a)

    # -- multiplication ----------------------------------------------------

    def _mul_table(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def _mul_gf2(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            b >>= 1
        m = self._mod_int
        n = self.N
        for bit in range(2 * (n - 1), n - 1, -1):
            if (r >> bit) & 1:
                r ^= m << (bit - n)
        return r

    def _mul_generic(self, a: int, b: int) -> int:
        q = self.q
        n = self.N
        A = self.coeffs(a)
        B = self.coeffs(b)
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(A):
            if ai:
                for j, bj in enumerate(B):
                    if bj:
                        prod[i + j] = (prod[i + j] + ai * bj) % q
        mod = self.modulus
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i]
            if c:
                for j in range(n + 1):
                    prod[i - n + j] = (prod[i - n + j] - c * mod[j]) % q
        r = 0
        place = 1
        for i in range(n):
            r += prod[i] * place
            place *= q
        return r

    def _build_tables(self) -> None:
        raw_mul = self._mul_gf2 if self.q == 2 else self._mul_generic

        def pow_raw(base: int, e: int) -> int:
            r = 1
            while e:
                if e & 1:
                    r = raw_mul(r, base)
                base = raw_mul(base, base)
                e >>= 1
            return r

        factors = _prime_factors(self.order)
        gen = None
        for cand in range(2, self.size):
            if all(pow_raw(cand, self.order // p) != 1 for p in factors):
                gen = cand
                break
        if gen is None:  # pragma: no cover - the group is cyclic
            raise RuntimeError("no multiplicative generator found")
        exp = [1] * (2 * self.order - 1)
        log = [-1] * self.size
        v = 1
        for i in range(self.order):
            exp[i] = v
            log[v] = i
            v = raw_mul(v, gen)
        for i in range(self.order, 2 * self.order - 1):
            exp[i] = exp[i - self.order]
        self._exp = exp
        self._log = log

    # -- inversion and powers ------------------------------------------------

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._log is not None:
            return self._exp[self.order - self._log[a]]
        return self.pow(a, self.size - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        if a == 0:
            return 1 if e == 0 else 0
        r = 1
        mul = self.mul
        while e:
            if e & 1:
                r = mul(r, a)
            a = mul(a, a)
            e >>= 1
        return r

    # -- Frobenius -----------------------------------------------------------

    def frobenius(self, a: int, i: int = 1) -> int:
        """a**(q**i), with i reduced mod N.  F_q-linear in a."""
        i %= self.N
        if i == 0 or a == 0 or a == 1:
            return a
        tab = self._frob.get(i)
        if tab is None:
            tab = self._frob_table(i)
        if self.q == 2:
            r = 0
            j = 0
            while a:
                if a & 1:
                    r ^= tab[j]
                a >>= 1
                j += 1
            return r
        return self._apply_table_generic(tab, a)

    def _apply_table_generic(self, tab: list[int], a: int) -> int:
        q = self.q
        r = 0
        j = 0
        while a:
            d = a % q
            a //= q
            if d:
                r = self.add(r, self.mul(tab[j], d))
            j += 1
        return r

    def _frob_table(self, i: int) -> list[int]:
        # basis images sigma^i(a^j), built by chaining the sigma^1 table
        base = self._frob.get(1)
        if base is None:
            base = [self.pow(self.q**j, self.q) for j in range(self.N)]
            self._frob[1] = base
        m = max(self._frob)
        while m < i:
            prev = self._frob[m]
            if self.q == 2:
                nxt = []
                for v in prev:
                    r = 0
                    j = 0
                    while v:
                        if v & 1:
                            r ^= base[j]
                        v >>= 1
                        j += 1
                    nxt.append(r)
            else:
                nxt = [self._apply_table_generic(base, v) for v in prev]
            m += 1
            self._frob[m] = nxt
        return self._frob[i]

    # -- coordinates and encoding --------------------------------------------

    @property
    def alpha(self) -> int:
        """The residue class of x, i.e. the element with coefficient vector e_1."""
        return self.q

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coordinate vector of a in the polynomial basis, constant term first."""
        q = self.q
        out = []
        for _ in range(self.N):
            out.append(a % q)
            a //= q
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.N:
            raise ValueError(f"expected at most {self.N} coordinates, got {len(cs)}")
        r = 0
        place = 1
        for c in cs:
            r += (c % self.q) * place
            place *= self.q
        return r

    def rand_elem(self, rng) -> int:
        return rng.randrange(self.size)

    def rand_nonzero(self, rng) -> int:
        return 1 + rng.randrange(self.order)

    def check_element(self, a: int) -> int:
        if not isinstance(a, int) or a < 0 or a >= self.size:
            raise ValueError(f"{a!r} is not an element of this field")
        return a

    @property
    def element_hex_width(self) -> int:
        return ((self.size - 1).bit_length() + 3) // 4

    def to_hex(self, a: int) -> str:
        """Fixed-width hex of the packed coordinate vector, most significant first."""
        return format(a, f"0{self.element_hex_width}x")

    def from_hex(self, s: str) -> int:
        v = int(s, 16)
        return self.check_element(v)

    # -- identity ------------------------------------------------------------

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.N, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("x" if c == 1 else f"{c}*x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
        return " + ".join(terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and self.q == other.q
            and self.N == other.N
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.q, self.N, self.modulus))

    def __repr__(self) -> str:
        return f"FieldCtx(q={self.q}, N={self.N}, modulus={self.modulus_str()})"


_FIELD_CACHE: dict[tuple[int, int, tuple[int, ...]], FieldCtx] = {}


def get_field(q: int = 2, N: int = 2, modulus=None) -> FieldCtx:
    """Shared, cached FieldCtx for (q, N, modulus)."""
    if modulus is None:
        modulus = default_modulus(q, N)
    key = (q, N, tuple(modulus))
    ctx = _FIELD_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(q, N, modulus)
        _FIELD_CACHE[key] = ctx
    return ctx
