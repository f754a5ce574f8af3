"""Rational polynomials: characteristic and minimal polynomials, bounded
factorization over Q, and primary decomposition into invariant subspaces.

Factorization is complete for the degrees the analyses actually meet
(<= 5: rational roots plus an exhaustive integer quadratic-factor search);
higher-degree remainders that survive the bounded search are returned with
a "possibly reducible" mark instead of a false irreducibility claim.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .linalg import RatMatrix, Subspace, kernel_of, solve_linear, to_fraction, vectorize


@dataclass(frozen=True)
class Polynomial:
    """Coefficients lowest degree first; no trailing zeros; () is the zero polynomial."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_coeffs(cs) -> "Polynomial":
        cs = [to_fraction(c) for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Polynomial(tuple(cs))

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial.from_coeffs([1])

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial.from_coeffs([0, 1])

    @staticmethod
    def x_minus(c) -> "Polynomial":
        return Polynomial.from_coeffs([-to_fraction(c), 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        inv = 1 / self.leading
        return Polynomial.from_coeffs([c * inv for c in self.coeffs])

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.from_coeffs(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "Polynomial":
        c = to_fraction(c)
        return Polynomial.from_coeffs([c * a for a in self.coeffs])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial.from_coeffs(out)

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.one()
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading
        while len(rem) - 1 >= d and rem:
            f = rem[-1] / lead
            pos = len(rem) - 1 - d
            quot[pos] = f
            for i, c in enumerate(other.coeffs):
                rem[pos + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial.from_coeffs(quot), Polynomial.from_coeffs(rem)

    def divides(self, other: "Polynomial") -> bool:
        return other.divmod(self)[1].is_zero

    def eval_scalar(self, x) -> Fraction:
        x = to_fraction(x)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def eval_matrix(self, m: RatMatrix) -> RatMatrix:
        n = m.nrows
        out = RatMatrix.zeros(n, n)
        for c in reversed(self.coeffs):
            out = out * m + RatMatrix.identity(n).scale(c)
        return out

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(reversed(parts))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero else a


def poly_egcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """g, s, t with s*a + t*b = g and g monic."""
    r0, r1 = a, b
    s0, s1 = Polynomial.one(), Polynomial.zero()
    t0, t1 = Polynomial.zero(), Polynomial.one()
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    inv = 1 / r0.leading
    return r0.monic(), s0.scale(inv), t0.scale(inv)


def minimal_polynomial(m: RatMatrix) -> Polynomial:
    """Monic minimal polynomial, from the first linear dependence among the
    vectorized powers I, m, m^2, ..."""
    if not m.is_square:
        raise ValueError("square matrix required")
    n = m.nrows
    powers = [RatMatrix.identity(n)]
    while True:
        powers.append(powers[-1] * m)
        cols = RatMatrix.from_rows([vectorize(p) for p in powers[:-1]]).transpose()
        res = solve_linear(cols, vectorize(powers[-1]))
        if res is not None:
            combo = res[0]
            return Polynomial.from_coeffs([-c for c in combo] + [Fraction(1)])


def char_min_poly(m: RatMatrix) -> tuple[Polynomial, Polynomial, int | None]:
    """Characteristic and minimal polynomial, plus the nilpotency index when
    the minimal polynomial is a pure power of x.

    The characteristic polynomial is det(xI - m), monic, computed by the
    Faddeev-LeVerrier recursion.
    """
    if not m.is_square:
        raise ValueError("square matrix required")
    n = m.nrows
    # Faddeev-LeVerrier: char(x) = x^n + c1 x^(n-1) + ... + cn
    coeffs = [Fraction(1)]  # leading first while building
    mk = RatMatrix.identity(n)
    for k in range(1, n + 1):
        mk = m * mk
        ck = -mk.trace() / k
        coeffs.append(ck)
        if k < n:
            mk = mk + RatMatrix.identity(n).scale(ck)
    char = Polynomial.from_coeffs(list(reversed(coeffs)))
    minp = minimal_polynomial(m)
    nil_index: int | None = None
    if all(c == 0 for c in minp.coeffs[:-1]):
        nil_index = minp.degree
    return char, minp, nil_index


@dataclass(frozen=True)
class PolyFactor:
    poly: Polynomial
    multiplicity: int
    proven_irreducible: bool


def _integer_divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    divs = sorted(set(small + [n // d for d in small]))
    return divs


def _to_monic_integer(p: Polynomial) -> tuple[list[int], int]:
    """Rewrite monic rational p(x) as monic integer g(y) with y = D x.

    g(y) = D^deg * p(y / D) where D is the lcm of coefficient denominators.
    """
    d = lcm(*[c.denominator for c in p.coeffs]) if p.coeffs else 1
    n = p.degree
    out = []
    for i, c in enumerate(p.coeffs):
        v = c * Fraction(d) ** (n - i)
        assert v.denominator == 1
        out.append(v.numerator)
    return out, d


def _rational_roots(p: Polynomial) -> list[Fraction]:
    """All rational roots of a monic polynomial, without multiplicity."""
    if p.eval_scalar(0) == 0:
        roots = [Fraction(0)]
    else:
        roots = []
    ints, d = _to_monic_integer(p)
    const = ints[0]
    if const == 0:
        # x factor was already reported; divide it out in integer form
        while ints and ints[0] == 0:
            ints = ints[1:]
        if not ints or len(ints) == 1:
            return roots
        const = ints[0]
    for cand in _integer_divisors(const):
        for sign in (1, -1):
            y = sign * cand
            # evaluate integer poly at y
            acc = 0
            for c in reversed(ints):
                acc = acc * y + c
            if acc == 0:
                roots.append(Fraction(y, d))
    return sorted(set(roots))


def _quadratic_factor_search(ints: list[int], lattice_cap: int) -> list[int] | None:
    """Search a monic integer quadratic y^2 + a y + b dividing the monic
    integer polynomial with the given coefficients (lowest first).

    b must divide the constant term; |a| is bounded by twice the Cauchy root
    bound. Returns [b, a, 1] or None. The search is exhaustive whenever the
    lattice fits under the cap, which is the case for all degrees <= 5 inputs
    this package produces.
    """
    const = ints[0]
    if const == 0:
        return None
    root_bound = 1 + max(abs(c) for c in ints[:-1])
    a_bound = 2 * root_bound
    b_cands = [b for d in _integer_divisors(const) for b in (d, -d) if abs(b) <= root_bound**2]
    if len(b_cands) * (2 * a_bound + 1) > lattice_cap:
        b_cands = b_cands[: max(1, lattice_cap // (2 * a_bound + 1))]
    p = Polynomial.from_coeffs(ints)
    for b in b_cands:
        for a in range(-a_bound, a_bound + 1):
            q = Polynomial.from_coeffs([b, a, 1])
            if q.divides(p):
                return [b, a, 1]
    return None


def _quartic_factor_search(ints: list[int], bound: int) -> list[int] | None:
    """Bounded search for a monic integer quartic factor of a degree-8 monic
    integer polynomial. Incomplete by design; callers mark the remainder as
    possibly reducible when nothing is found."""
    const = ints[0]
    if const == 0:
        return None
    d_cands = [d for dd in _integer_divisors(const) for d in (dd, -dd) if abs(dd) <= bound**4]
    rng = range(-2 * bound, 2 * bound + 1)
    p = Polynomial.from_coeffs(ints)
    for d0 in d_cands:
        for a, b, c in itertools.product(rng, rng, rng):
            q = Polynomial.from_coeffs([d0, c, b, a, 1])
            if q.divides(p):
                return [d0, c, b, a, 1]
    return None


def _scale_back(ints: list[int], d: int) -> Polynomial:
    """Inverse of the y = D x substitution, renormalized to monic."""
    deg = len(ints) - 1
    return Polynomial.from_coeffs([Fraction(c, d**deg) * d**i for i, c in enumerate(ints)]).monic()


def factor_polynomial(p: Polynomial, search_bound: int = 2, lattice_cap: int = 500_000) -> list[PolyFactor]:
    """Factor a nonzero rational polynomial into monic factors over Q.

    Linear factors are found completely via the rational root theorem;
    quadratic factors via an exhaustive bounded integer search (complete
    through degree 5). Remainders that may still split carry
    proven_irreducible=False.
    """
    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    work = p.monic()
    factors: dict[Polynomial, int] = {}
    proven: dict[Polynomial, bool] = {}

    def record(f: Polynomial, mult: int, is_proven: bool):
        factors[f] = factors.get(f, 0) + mult
        proven[f] = proven.get(f, True) and is_proven

    # x factors
    k = 0
    while not work.is_zero and work.degree >= 1 and work.coeffs[0] == 0:
        work = work.divmod(Polynomial.x())[0]
        k += 1
    if k:
        record(Polynomial.x(), k, True)

    # rational roots, with multiplicity
    while work.degree >= 1:
        roots = _rational_roots(work)
        if not roots:
            break
        for r in roots:
            lin = Polynomial.x_minus(r)
            while lin.divides(work):
                work = work.divmod(lin)[0]
                record(lin, 1, True)

    # what remains has no rational roots
    queue = [work] if work.degree >= 1 else []
    while queue:
        h = queue.pop()
        if h.degree in (2, 3):
            record(h.monic(), 1, True)
            continue
        ints, d = _to_monic_integer(h.monic())
        quad = _quadratic_factor_search(ints, lattice_cap)
        if quad is not None:
            q = _scale_back(quad, d)
            mult = 0
            while q.divides(h):
                h = h.divmod(q)[0]
                mult += 1
            record(q, mult, True)
            if h.degree >= 1:
                queue.append(h)
            continue
        if h.degree == 8:
            quart = _quartic_factor_search(ints, search_bound)
            if quart is not None:
                q = _scale_back(quart, d)
                mult = 0
                while q.divides(h):
                    h = h.divmod(q)[0]
                    mult += 1
                record(q, mult, False)
                if h.degree >= 1:
                    queue.append(h)
                continue
        # Degrees 4 and 5 are settled by the exhaustive quadratic search;
        # higher degrees might still split into two cubics etc.
        record(h.monic(), 1, h.degree in (4, 5))

    ordered = sorted(factors, key=lambda f: (f.degree, f.coeffs))
    return [PolyFactor(f, factors[f], proven[f]) for f in ordered]


@dataclass(frozen=True)
class PrimaryComponent:
    factor: Polynomial
    multiplicity: int
    subspace: Subspace
    proven_irreducible: bool


def primary_decomposition(m: RatMatrix, search_bound: int = 2) -> list[PrimaryComponent]:
    """Split the ambient space into the generalized kernels of the
    irreducible factors of the characteristic polynomial.

    The components are m-invariant, pairwise independent, and sum to the
    full space even when a factor carries the possibly-reducible mark.
    """
    if not m.is_square:
        raise ValueError("square matrix required")
    char, _, _ = char_min_poly(m)
    out = []
    for f in factor_polynomial(char, search_bound=search_bound):
        power = f.poly**f.multiplicity
        sub = kernel_of(power.eval_matrix(m))
        out.append(PrimaryComponent(f.poly, f.multiplicity, sub, f.proven_irreducible))
    return out
