"""Holonomy data for flat structures.

A Representation is a finitely generated matrix group presentation over Q,
of one of three kinds:

* ``linear``            d x d invertible matrices acting on R^d,
* ``affine``            homogeneous (n+1) x (n+1) matrices with last row (0..0 1),
* ``projective-class``  (n+1) x (n+1) matrices taken up to nonzero scale.

The module also provides the constructions relating them: the scale-canonical
representative of a projective class, sphere lifts, the block embedding of
affine data into projective classes, the suspension that turns an
n-dimensional projective-class representation into a radiant linear one in
dimension n+1 (new central generator 2*I), common fixed points of affine
representations, and the radial evaluation map (x, t) -> t*x.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .linalg import RatMatrix, Vec, is_zero_vec, solve_linear, to_fraction, vector, zero_vec

KIND_LINEAR = "linear"
KIND_AFFINE = "affine"
KIND_PROJECTIVE = "projective-class"
KINDS = (KIND_LINEAR, KIND_AFFINE, KIND_PROJECTIVE)


class ValidationError(ValueError):
    """Raised when raw input does not form a valid representation."""


ASSUMPTION_NAMES = (
    "developing_map_injective",
    "compact",
    "oriented",
    "connected",
    "developing_image_avoids_fixed_space",
)


@dataclass(frozen=True)
class AssumptionSet:
    """Declared geometric hypotheses. Purely declarative: they are never
    inferred from generators, only recorded into the verdicts that use them.

    ``developing_image_avoids_fixed_space`` declares that the developing
    image misses the fixed subspace of a detected circle direction; it is
    the input the fiber-bundle branch of the dimension-3 classifier needs.
    """

    developing_map_injective: bool = False
    compact: bool = False
    oriented: bool = False
    connected: bool = False
    developing_image_avoids_fixed_space: bool = False

    def as_dict(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in ASSUMPTION_NAMES}

    @staticmethod
    def from_dict(d: dict[str, bool]) -> "AssumptionSet":
        unknown = sorted(set(d) - set(ASSUMPTION_NAMES))
        if unknown:
            raise ValidationError(f"unknown assumption flags: {', '.join(unknown)}")
        for k, v in d.items():
            if not isinstance(v, bool):
                raise ValidationError(f"assumption {k!r} must be a boolean")
        return AssumptionSet(**d)


@dataclass(frozen=True)
class Generator:
    label: str
    matrix: RatMatrix


@dataclass(frozen=True)
class Representation:
    """A validated, finitely generated matrix group presentation."""

    dimension: int
    kind: str
    generators: tuple[Generator, ...]
    assumptions: AssumptionSet = field(default_factory=AssumptionSet)

    @property
    def matrix_size(self) -> int:
        return self.dimension if self.kind == KIND_LINEAR else self.dimension + 1

    @property
    def matrices(self) -> tuple[RatMatrix, ...]:
        return tuple(g.matrix for g in self.generators)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(g.label for g in self.generators)


def canonicalize_projective_class(m: RatMatrix) -> RatMatrix:
    """Scale-canonical representative of the class of an invertible matrix:
    integer entries, content 1, first nonzero entry (row-major) positive.
    Idempotent, and constant on the whole class {lambda * m, lambda != 0}."""
    entries = [x for row in m.rows for x in row]
    if all(x == 0 for x in entries):
        raise ValidationError("zero matrix has no projective class")
    denom = lcm(*[x.denominator for x in entries])
    ints = [x * denom for x in entries]
    content = 0
    for x in ints:
        content = gcd(content, abs(x.numerator))
    ints = [x / content for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    n = m.ncols
    return RatMatrix.from_rows([ints[i * n : (i + 1) * n] for i in range(m.nrows)])


def _check_affine_last_row(m: RatMatrix) -> None:
    last = m.rows[-1]
    expected = zero_vec(m.ncols - 1) + (Fraction(1),)
    if last != expected:
        raise ValidationError("not homogeneous-affine: last row must be (0, ..., 0, 1)")


def validate_rep(
    raw_generators,
    kind: str,
    dimension: int,
    assumptions: AssumptionSet | None = None,
) -> Representation:
    """Validate raw (label, matrix) generator data into a Representation.

    Projective-class generators are stored in canonical scale. Errors name
    the offending generator.
    """
    if kind not in KINDS:
        raise ValidationError(f"unknown kind {kind!r}")
    if dimension < 1:
        raise ValidationError("dimension must be >= 1")
    size = dimension if kind == KIND_LINEAR else dimension + 1
    gens = []
    for idx, item in enumerate(raw_generators):
        if isinstance(item, Generator):
            label, matrix = item.label, item.matrix
        elif isinstance(item, RatMatrix):
            label, matrix = f"g{idx}", item
        else:
            label, matrix = item
            if not isinstance(matrix, RatMatrix):
                matrix = RatMatrix.from_rows(matrix)
        if matrix.nrows != size or matrix.ncols != size:
            raise ValidationError(
                f"generator {label!r}: expected {size}x{size}, got {matrix.nrows}x{matrix.ncols}"
            )
        if matrix.det() == 0:
            raise ValidationError(f"generator {label!r} not invertible")
        if kind == KIND_AFFINE:
            _check_affine_last_row(matrix)
        if kind == KIND_PROJECTIVE:
            matrix = canonicalize_projective_class(matrix)
        gens.append(Generator(label, matrix))
    return Representation(dimension, kind, tuple(gens), assumptions or AssumptionSet())


def lift_to_sphere(rep: Representation, max_selections: int = 64) -> list[Representation]:
    """All sphere lifts of a projective-class representation.

    Each generator class has the two lifts g and -g (g canonical); the result
    enumerates every sign selection, canonical-first, as linear
    representations acting in dimension n+1. No determinant normalization is
    applied: lifts are kept as a scale class because |det|^(1/(n+1)) is
    irrational in general, and all downstream analyses are invariant under
    positive rescaling.
    """
    if rep.kind != KIND_PROJECTIVE:
        raise ValidationError("kind must be projective-class")
    k = len(rep.generators)
    if 2**k > max_selections:
        raise ValidationError(f"{2**k} lift selections exceed max_selections={max_selections}")
    out = []
    for signs in product((1, -1), repeat=k):
        gens = [
            Generator(g.label, g.matrix if s == 1 else -g.matrix)
            for s, g in zip(signs, rep.generators)
        ]
        out.append(Representation(rep.dimension + 1, KIND_LINEAR, tuple(gens), rep.assumptions))
    return out


def embed_affine_as_projective(rep: Representation) -> Representation:
    """Block-embed a linear or affine representation as projective classes.

    A linear generator A becomes the class of diag(A, 1); an affine generator
    is already homogeneous and passes through. The output is canonicalized.
    """
    if rep.kind not in (KIND_LINEAR, KIND_AFFINE):
        raise ValidationError("kind must be linear or affine")
    gens = []
    for g in rep.generators:
        m = _block_with_one(g.matrix) if rep.kind == KIND_LINEAR else g.matrix
        gens.append(Generator(g.label, canonicalize_projective_class(m)))
    return Representation(rep.dimension, KIND_PROJECTIVE, tuple(gens), rep.assumptions)


def _block_with_one(m: RatMatrix) -> RatMatrix:
    n = m.nrows
    rows = [list(r) + [Fraction(0)] for r in m.rows]
    rows.append([Fraction(0)] * n + [Fraction(1)])
    return RatMatrix.from_rows(rows)


def embed_linear_as_affine(rep: Representation) -> Representation:
    """View a linear representation on R^d as an affine one with zero
    translations, in homogeneous (d+1) x (d+1) form."""
    if rep.kind != KIND_LINEAR:
        raise ValidationError("kind must be linear")
    gens = tuple(Generator(g.label, _block_with_one(g.matrix)) for g in rep.generators)
    return Representation(rep.dimension, KIND_AFFINE, gens, rep.assumptions)


def benzecri_suspend(
    rep: Representation,
    lift_signs: tuple[int, ...] | None = None,
    factor: Fraction | int = 2,
    deck_label: str = "deck",
) -> Representation:
    """Benzecri suspension at the holonomy level.

    The n-dimensional projective-class input becomes a linear representation
    in dimension n+1 whose generators are the chosen sphere lifts plus one
    extra central generator factor * I, the image of the circle deck
    transformation. The output fixes the origin, i.e. it is radiant.
    """
    if rep.kind != KIND_PROJECTIVE:
        raise ValidationError("kind must be projective-class")
    factor = to_fraction(factor)
    if factor <= 0 or factor == 1:
        raise ValidationError("suspension factor must be a positive rational != 1")
    k = len(rep.generators)
    signs = lift_signs if lift_signs is not None else (1,) * k
    if len(signs) != k or any(s not in (1, -1) for s in signs):
        raise ValidationError("lift selection must give one sign (+1/-1) per generator")
    size = rep.dimension + 1
    gens = [
        Generator(g.label, g.matrix if s == 1 else -g.matrix)
        for s, g in zip(signs, rep.generators)
    ]
    gens.append(Generator(deck_label, RatMatrix.identity(size).scale(factor)))
    return Representation(size, KIND_LINEAR, tuple(gens), rep.assumptions)


@dataclass(frozen=True)
class AffineField:
    """Affine vector field x -> L x + c."""

    linear_part: RatMatrix
    constant_part: Vec

    def __post_init__(self):
        if not self.linear_part.is_square or self.linear_part.nrows != len(self.constant_part):
            raise ValueError("field shape mismatch")

    @property
    def dim(self) -> int:
        return self.linear_part.nrows

    def value_at(self, x: Vec) -> Vec:
        return tuple(a + b for a, b in zip(self.linear_part.apply(x), self.constant_part))

    def shifted(self, c) -> "AffineField":
        """Add c times the radial field x -> x."""
        c = to_fraction(c)
        return AffineField(
            self.linear_part + RatMatrix.identity(self.dim).scale(c), self.constant_part
        )


def affine_parts(m: RatMatrix) -> tuple[RatMatrix, Vec]:
    """Split a homogeneous affine matrix into (linear part, translation)."""
    n = m.nrows - 1
    lin = RatMatrix.from_rows([row[:n] for row in m.rows[:n]])
    trans = tuple(m.rows[i][n] for i in range(n))
    return lin, trans


def radiant_fixed_point(rep: Representation) -> tuple[Vec, Vec] | None:
    """Common fixed point of an affine representation, if one exists.

    Solves the joint system (L_i - I) x = -t_i over all generators. Returns
    (fixed point, translation conjugating the representation to its linear
    part); both are the same vector. None when there is no common fixed point.
    """
    if rep.kind != KIND_AFFINE:
        raise ValidationError("kind must be affine (homogeneous form)")
    n = rep.dimension
    if not rep.generators:
        return zero_vec(n), zero_vec(n)
    rows: list[Vec] = []
    rhs: list[Fraction] = []
    for g in rep.generators:
        lin, trans = affine_parts(g.matrix)
        shifted = lin - RatMatrix.identity(n)
        rows.extend(shifted.rows)
        rhs.extend(-t for t in trans)
    res = solve_linear(RatMatrix(tuple(rows)), tuple(rhs))
    if res is None:
        return None
    point = res[0]
    return point, point


def develop_eval(x: Vec, t) -> Vec:
    """Radial evaluation (x, t) -> t * x for a sphere-class vector x and t > 0."""
    t = to_fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    xv = vector(x)
    if is_zero_vec(xv):
        raise ValueError("x must be nonzero")
    return tuple(t * a for a in xv)


def conjugate_representation(rep: Representation, p: RatMatrix) -> Representation:
    """Replace every generator g by p g p^-1 (re-canonicalizing classes)."""
    pinv = p.inverse()
    gens = []
    for g in rep.generators:
        m = p * g.matrix * pinv
        if rep.kind == KIND_PROJECTIVE:
            m = canonicalize_projective_class(m)
        gens.append(Generator(g.label, m))
    return replace(rep, generators=tuple(gens))
