import random
from fractions import Fraction

import pytest

from holonomy.classify import (
    BRANCH_AUT_TOO_SMALL,
    BRANCH_COMMUTATIVE,
    BRANCH_NOT_SOLVABLE,
    CONCLUSION_SOLVABLE_PI1,
    CONCLUSION_T2_BUNDLE,
    CONCLUSION_TORUS_OR_SPHERE,
    CONCLUSION_UNDETERMINED,
    DIM3_DISJUNCTION,
    CaseAnalysisError,
    classify_dim2,
    classify_dim3,
    flag_from_nilpotent_element,
    flag_from_nilpotent_pair,
    zero_set_of_affine_field,
)
from holonomy.commutant import (
    FixedProjectivePointCertificate,
    InvariantFlagCertificate,
    RotationalElementCertificate,
    verify_certificate,
)
from holonomy.linalg import RatMatrix, Subspace
from holonomy.representation import (
    AffineField,
    AssumptionSet,
    ValidationError,
    validate_rep,
)

from helpers import CORPUS, frac_rows

from holonomy.fileio import load_rep_file


def unit(i, j):
    rows = [[1 if (r, c) == (i - 1, j - 1) else 0 for c in range(4)] for r in range(4)]
    return frac_rows(rows)


def span4(*vecs):
    return Subspace.span(list(vecs), 4)


class TestNilpotentPairFlag:
    def test_worked_pair(self):
        a = unit(1, 3) + unit(2, 4)
        b = unit(3, 2) + unit(1, 4)
        assert a * b == unit(1, 2)
        assert b * a == unit(3, 4)
        flag = flag_from_nilpotent_pair(a, b)
        assert flag.chain == (
            span4([1, 0, 0, 0]),
            span4([1, 0, 0, 0], [0, 1, 0, 0]),
            span4([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]),
        )

    def test_commuting_pair_rejected(self):
        a = unit(1, 3) + unit(2, 4)
        b = unit(1, 2) + unit(3, 4)
        assert a * b == b * a == unit(1, 4)
        with pytest.raises(ValueError, match="commutes"):
            flag_from_nilpotent_pair(a, b)

    def test_kernel_dim_three_rejected(self):
        a = unit(1, 2)  # square zero, kernel dim 3
        b = unit(2, 3)
        assert (a * a).is_zero() and (b * b).is_zero() and a * b != b * a
        with pytest.raises(CaseAnalysisError, match="dimension 3"):
            flag_from_nilpotent_pair(a, b)

    def test_trivial_kernel_intersection_rejected(self):
        a = unit(1, 3) + unit(2, 4)
        b = unit(3, 1) + unit(4, 2)
        assert (a * a).is_zero() and (b * b).is_zero() and a * b != b * a
        with pytest.raises(CaseAnalysisError, match="trivially"):
            flag_from_nilpotent_pair(a, b)

    def test_nonzero_square_rejected(self):
        j = unit(1, 2) + unit(2, 3)
        with pytest.raises(ValueError, match="squares"):
            flag_from_nilpotent_pair(j, unit(1, 3))


class TestNilpotentElementFlag:
    def test_regular_nilpotent(self):
        a = unit(1, 2) + unit(2, 3) + unit(3, 4)
        flag = flag_from_nilpotent_element(a)
        assert flag.chain == (
            span4([1, 0, 0, 0]),
            span4([1, 0, 0, 0], [0, 1, 0, 0]),
            span4([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]),
        )

    def test_kernel_dim_two(self):
        a = unit(1, 2) + unit(2, 3)  # kills e1? no: sends e2->e1, e3->e2; kernel e1, e4
        flag = flag_from_nilpotent_element(a)
        assert flag.chain == (
            span4([1, 0, 0, 0]),
            span4([1, 0, 0, 0], [0, 0, 0, 1]),
            span4([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]),
        )

    def test_square_zero_rejected(self):
        with pytest.raises(ValueError, match="square vanishes"):
            flag_from_nilpotent_element(unit(1, 3) + unit(2, 4))

    def test_non_nilpotent_rejected(self):
        with pytest.raises(ValueError, match="not nilpotent"):
            flag_from_nilpotent_element(RatMatrix.identity(4))


class TestZeroSet:
    def test_radial_field_vanishes_at_origin(self):
        analysis = zero_set_of_affine_field(
            AffineField(RatMatrix.identity(4), (0, 0, 0, 0))
        )
        assert analysis.base.dim == 0
        assert analysis.base.point == (0, 0, 0, 0)

    def test_translation_field_needs_shift(self):
        f = AffineField(RatMatrix.zeros(2, 2), (Fraction(1), Fraction(0)))
        analysis = zero_set_of_affine_field(f)
        assert analysis.base.is_empty
        nonempty = analysis.first_nonempty()
        assert nonempty is not None
        shift, zs = nonempty
        assert shift != 0
        # solve shift * x + e1 = 0 directly
        assert zs.point == (Fraction(-1) / shift, 0)

    def test_rank_one_projection_kernel(self):
        lin = frac_rows([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]])
        analysis = zero_set_of_affine_field(AffineField(lin, (0, 0, 0, 0)))
        assert analysis.base.dim == 3
        assert analysis.base.direction_space == span4(
            [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]
        )


GEOMETRIC = AssumptionSet(compact=True, connected=True, oriented=True)


class TestClassifyDim2:
    def test_trivial_holonomy(self):
        rep = validate_rep([], "projective-class", 2, GEOMETRIC)
        out = classify_dim2(rep)
        assert out.conclusion == CONCLUSION_TORUS_OR_SPHERE
        assert any(isinstance(c, FixedProjectivePointCertificate) for c in out.certificates)
        assert set(out.assumptions_used) == {"compact", "connected", "oriented"}

    def test_translation_torus(self):
        rep = load_rep_file(CORPUS / "dim2_translation_torus.json")
        out = classify_dim2(rep)
        assert out.conclusion == CONCLUSION_TORUS_OR_SPHERE
        [cert] = [c for c in out.certificates if isinstance(c, FixedProjectivePointCertificate)]
        # the invariant line is the image of a square-zero centralizer element
        assert verify_certificate(rep, cert)

    def test_scalar_commutant_undetermined(self):
        cyc = frac_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
        diag = frac_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
        rep = validate_rep([("c", cyc), ("d", diag)], "projective-class", 2, GEOMETRIC)
        out = classify_dim2(rep)
        assert out.branch == BRANCH_AUT_TOO_SMALL
        assert out.conclusion == CONCLUSION_UNDETERMINED

    def test_missing_declarations_downgrade(self):
        rep = validate_rep([], "projective-class", 2)  # nothing declared
        out = classify_dim2(rep)
        assert out.conclusion == CONCLUSION_UNDETERMINED
        assert out.certificates  # the fixed point is still certified

    def test_dimension_checked(self):
        rep = validate_rep([], "projective-class", 3)
        with pytest.raises(ValidationError):
            classify_dim2(rep)


class TestClassifyDim3:
    def test_torus_translations(self):
        rep = load_rep_file(CORPUS / "dim3_torus_translations.json")
        out = classify_dim3(rep)
        assert out.branch == BRANCH_COMMUTATIVE
        assert out.conclusion == CONCLUSION_SOLVABLE_PI1
        flags = [c for c in out.certificates if isinstance(c, InvariantFlagCertificate)]
        assert flags and flags[0].flag.complete
        assert verify_certificate(rep, flags[0])

    def test_trivial_holonomy_disjunction(self):
        rep = load_rep_file(CORPUS / "dim3_trivial_injective.json")
        out = classify_dim3(rep)
        assert out.conclusion == DIM3_DISJUNCTION
        assert out.conclusion == "SphericalManifold|S2xS1|TorusBundleFiniteCover"
        assert any(isinstance(c, RotationalElementCertificate) for c in out.certificates)
        assert {"developing_map_injective", "compact"} <= set(out.assumptions_used)

    def test_scalar_commutant(self):
        rep = load_rep_file(CORPUS / "dim3_scalar_commutant.json")
        out = classify_dim3(rep)
        assert out.branch == BRANCH_AUT_TOO_SMALL
        assert out.conclusion == CONCLUSION_UNDETERMINED

    def test_rotation_with_declared_avoidance(self):
        rot = frac_rows([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        asmp = AssumptionSet(
            developing_map_injective=True,
            compact=True,
            connected=True,
            oriented=True,
            developing_image_avoids_fixed_space=True,
        )
        rep = validate_rep([("r", rot)], "projective-class", 3, asmp)
        out = classify_dim3(rep)
        assert out.branch == BRANCH_NOT_SOLVABLE
        assert out.conclusion == CONCLUSION_T2_BUNDLE
        [cert] = [c for c in out.certificates if isinstance(c, RotationalElementCertificate)]
        assert cert.fixed_space.dim == 2
        assert "developing_image_avoids_fixed_space" in out.assumptions_used

    def test_rotation_without_avoidance_stays_open(self):
        rot = frac_rows([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        rep = validate_rep([("r", rot)], "projective-class", 3, GEOMETRIC)
        out = classify_dim3(rep)
        assert out.conclusion == CONCLUSION_UNDETERMINED
        assert any(isinstance(c, RotationalElementCertificate) for c in out.certificates)

    def test_solvable_without_geometry_stays_solvable_label(self):
        # same translations but with no declarations at all: the flag
        # certificate alone supports the solvability verdict
        rep = load_rep_file(CORPUS / "dim3_torus_translations.json")
        bare = validate_rep(
            [(g.label, g.matrix) for g in rep.generators], "projective-class", 3
        )
        out = classify_dim3(bare)
        assert out.conclusion == CONCLUSION_SOLVABLE_PI1
        assert out.assumptions_used == ()

    def test_every_conclusion_is_supported(self):
        for name in (
            "dim3_torus_translations.json",
            "dim3_trivial_injective.json",
            "dim3_scalar_commutant.json",
        ):
            rep = load_rep_file(CORPUS / name)
            out = classify_dim3(rep)
            if out.conclusion != CONCLUSION_UNDETERMINED:
                assert out.certificates or out.assumptions_used
            for cert in out.certificates:
                assert verify_certificate(rep, cert)

    def test_suspension_factor_configurable(self):
        rep = load_rep_file(CORPUS / "dim3_torus_translations.json")
        out = classify_dim3(rep, suspension_factor=Fraction(3))
        assert out.conclusion == CONCLUSION_SOLVABLE_PI1


class TestOutcomeInvariance:
    def test_permutation_invariance_quick(self):
        rep = load_rep_file(CORPUS / "dim3_torus_translations.json")
        base = classify_dim3(rep)
        rng = random.Random(71)
        gens = list(rep.generators)
        for _ in range(3):
            rng.shuffle(gens)
            shuffled = validate_rep(
                [(g.label, g.matrix) for g in gens], "projective-class", 3, rep.assumptions
            )
            out = classify_dim3(shuffled)
            assert (out.branch, out.conclusion) == (base.branch, base.conclusion)

    def test_rescale_invariance_quick(self):
        rep = load_rep_file(CORPUS / "dim3_torus_translations.json")
        base = classify_dim3(rep)
        for lam in (Fraction(2), Fraction(-3), Fraction(1, 2)):
            scaled = validate_rep(
                [(g.label, g.matrix.scale(lam)) for g in rep.generators],
                "projective-class",
                3,
                rep.assumptions,
            )
            out = classify_dim3(scaled)
            assert (out.branch, out.conclusion) == (base.branch, base.conclusion)
