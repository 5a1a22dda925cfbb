"""Engine tests: catalogs, the four verifiers, and their cross-agreements."""

import pytest

from moritakit.context import (
    MoritaContext,
    compose_contexts,
    contexts_isomorphic,
    corner_context,
    identity_context,
    reverse_context,
)
from moritakit.equivalence import (
    Catalog,
    build_catalog,
    context_theories,
    hom_functor_to_r,
    hom_functor_to_s,
    is_I_projective_oracle,
    user_catalog,
    verify_kato_muller,
    verify_one_epi,
    verify_projective_equivalence,
    verify_strict_equivalence,
)
from moritakit.exactlin import Field, Matrix
from moritakit.modules import is_isomorphic, regular_module
from moritakit.torsion import localize

GF2 = Field.gf(2)
E22 = (GF2.zero, GF2.zero, GF2.one)
E11_M2 = (GF2.one, GF2.zero, GF2.zero, GF2.zero)


@pytest.fixture(scope="module")
def t2_corner(t2):
    return corner_context(t2, E22)


@pytest.fixture(scope="module")
def m2_corner(m2):
    return corner_context(m2, E11_M2)


@pytest.fixture(scope="module")
def cat_t2(t2):
    return build_catalog(t2, 3)


@pytest.fixture(scope="module")
def cat_m2(m2):
    return build_catalog(m2, 4)


@pytest.fixture(scope="module")
def cat_corner_s(t2_corner):
    return build_catalog(t2_corner.S, 3)


@pytest.fixture(scope="module")
def cat_m2_s(m2_corner):
    return build_catalog(m2_corner.S, 2)


def test_catalog_counts_are_frozen(t2, m2, cat_t2, cat_m2):
    # 1 zero + 2 simples + 4 classes of dim 2 + 6 of dim 3
    assert len(cat_t2) == 13
    assert len(build_catalog(t2, 4)) == 22
    # matrix algebra: zero, the column module, and its square
    assert len(cat_m2) == 3
    assert [m.dim for m in cat_m2] == [0, 2, 4]


def test_catalog_over_one_dimensional_algebra(t2_corner):
    cat = build_catalog(t2_corner.S, 2)
    assert [m.dim for m in cat] == [0, 1, 2]


def test_catalog_dim_zero(t2):
    cat = build_catalog(t2, 0)
    assert len(cat) == 1 and cat.modules[0].dim == 0


def test_catalog_members_pairwise_nonisomorphic(cat_t2):
    mods = cat_t2.modules
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            if mods[i].dim == mods[j].dim:
                assert not is_isomorphic(mods[i], mods[j]).found


def test_catalog_provenance_and_bounds(cat_t2):
    assert cat_t2.exhaustive
    assert cat_t2.provenance == "exhaustive-up-to-dim(3)"
    assert all(m.dim <= 3 for m in cat_t2)
    assert max(m.dim for m in cat_t2) == 3


def test_catalog_contains_the_nonsplit_extension(cat_t2, p2):
    assert any(m.dim == 2 and is_isomorphic(m, p2).found for m in cat_t2)


def test_strict_verifier_passes_on_matrix_corner(m2_corner, cat_m2, cat_m2_s):
    report = verify_strict_equivalence(m2_corner, cat_m2, cat_m2_s)
    assert report.passed
    checks = {v.check for v in report.verdicts}
    assert "eta invertible" in checks
    assert "rho invertible" in checks
    assert "naturality square" in checks


def test_strict_verifier_passes_on_identity(t2, cat_t2):
    report = verify_strict_equivalence(identity_context(t2), cat_t2, cat_t2)
    assert report.passed


def test_strict_verifier_names_proper_ideal(t2_corner, cat_t2, cat_corner_s):
    report = verify_strict_equivalence(t2_corner, cat_t2, cat_corner_s)
    assert not report.passed
    notes = [v.note for v in report.failures()]
    assert any("dim 2 < 3" in n for n in notes)


def test_kato_muller_passes_on_corner(t2_corner, cat_t2, cat_corner_s):
    report = verify_kato_muller(t2_corner, cat_t2, cat_corner_s)
    assert report.passed
    # two checks per member plus the two trace-ideal summary lines
    assert len(report.verdicts) == 2 * (len(cat_t2) + len(cat_corner_s)) + 2
    notes = [v.note for v in report.verdicts]
    assert "I = 2-dim, idempotent (exponent 1)" in notes
    assert "J = S (dim 1)" in notes


def test_kato_muller_passes_on_identity(t2, cat_t2):
    report = verify_kato_muller(identity_context(t2), cat_t2, cat_t2)
    assert report.passed


def test_kato_muller_localizes_non_closed_members(t2_corner, cat_t2, cat_corner_s):
    report = verify_kato_muller(t2_corner, cat_t2, cat_corner_s)
    assert any("localized first" in v.note for v in report.verdicts)


def test_kato_muller_degenerate_context(t2, t2_corner, cat_t2, cat_corner_s):
    zero_phi = Matrix.zeros(GF2, t2.dim, t2_corner.MN.dim)
    zero_psi = Matrix.zeros(GF2, 1, t2_corner.NM.dim)
    degenerate = MoritaContext(t2, t2_corner.S, t2_corner.M, t2_corner.N, zero_phi, zero_psi)
    report = verify_kato_muller(degenerate, cat_t2, cat_corner_s)
    assert report.passed  # only the zero module is closed; everything collapses


def test_strict_and_kato_muller_agree_when_strict(m2_corner, cat_m2, cat_m2_s):
    assert verify_strict_equivalence(m2_corner, cat_m2, cat_m2_s).passed
    assert verify_kato_muller(m2_corner, cat_m2, cat_m2_s).passed


def test_hom_functor_kills_localization_difference(t2_corner, cat_t2):
    t_i, _ = context_theories(t2_corner)
    for x in cat_t2:
        fx = hom_functor_to_s(t2_corner, x)
        f_loc = hom_functor_to_s(t2_corner, localize(t_i, x).module)
        assert is_isomorphic(fx, f_loc).found


def test_engine_outputs_stay_in_catalogs(t2_corner, cat_t2, cat_corner_s):
    t_i, _ = context_theories(t2_corner)

    def member_of(mod, cat):
        return any(is_isomorphic(mod, m).found for m in cat if m.dim == mod.dim)

    for x in cat_t2:
        assert member_of(hom_functor_to_s(t2_corner, x), cat_corner_s)
        assert member_of(localize(t_i, x).module, cat_t2)
    for y in cat_corner_s:
        assert member_of(hom_functor_to_r(t2_corner, y), cat_t2)


def test_one_epi_passes_on_strict_corner(m2_corner, cat_m2, cat_m2_s):
    report = verify_one_epi(m2_corner, cat_m2, cat_m2_s)
    assert report.passed
    assert any(v.check == "evaluation counit invertible" for v in report.verdicts)


def test_one_epi_precondition_failure(t2_corner, cat_t2, cat_corner_s):
    report = verify_one_epi(t2_corner, cat_t2, cat_corner_s)
    assert not report.passed
    assert "dim 2 < 3" in report.failures()[0].note


def test_one_epi_on_reversed_corner(t2_corner, cat_t2, cat_corner_s):
    report = verify_one_epi(reverse_context(t2_corner), cat_corner_s, cat_t2)
    assert report.passed


def test_projective_oracle_values(t2_corner, cat_t2, s1, s2, p2, t2_regular):
    t_i, _ = context_theories(t2_corner)
    assert not is_I_projective_oracle(t_i, s2, cat_t2)
    assert is_I_projective_oracle(t_i, p2, cat_t2)
    assert is_I_projective_oracle(t_i, t2_regular, cat_t2)
    # the oracle alone can pass on a module the class filter later rejects
    assert is_I_projective_oracle(t_i, s1, cat_t2)


def test_projective_equivalence_corner_class_sizes(t2_corner, cat_t2, cat_corner_s):
    report = verify_projective_equivalence(t2_corner, cat_t2, cat_corner_s)
    assert report.passed
    notes = [v.note for v in report.verdicts if v.check == "projective class size"]
    assert notes == ["2 of 13 qualify", "4 of 4 qualify"]


def test_projective_equivalence_identity_all_qualify(t2, cat_t2):
    report = verify_projective_equivalence(identity_context(t2), cat_t2, cat_t2)
    assert report.passed
    notes = [v.note for v in report.verdicts if v.check == "projective class size"]
    assert notes == ["13 of 13 qualify", "13 of 13 qualify"]


def test_projective_equivalence_degenerate(t2, t2_corner, cat_t2, cat_corner_s):
    zero_phi = Matrix.zeros(GF2, t2.dim, t2_corner.MN.dim)
    zero_psi = Matrix.zeros(GF2, 1, t2_corner.NM.dim)
    degenerate = MoritaContext(t2, t2_corner.S, t2_corner.M, t2_corner.N, zero_phi, zero_psi)
    report = verify_projective_equivalence(degenerate, cat_t2, cat_corner_s)
    assert report.passed
    notes = [v.note for v in report.verdicts if v.check == "projective class size"]
    assert notes == ["1 of 13 qualify", "1 of 4 qualify"]


def test_isomorphic_contexts_same_summaries(t2, t2_corner, cat_t2, cat_corner_s):
    comp = compose_contexts(t2_corner, identity_context(t2_corner.S))
    assert contexts_isomorphic(comp, t2_corner).found
    for verifier in (verify_strict_equivalence, verify_kato_muller,
                     verify_one_epi, verify_projective_equivalence):
        assert (verifier(comp, cat_t2, cat_corner_s).passed
                == verifier(t2_corner, cat_t2, cat_corner_s).passed)


def test_sampled_catalog_flags_report(t2, t2_corner, cat_t2, cat_corner_s):
    pretend_sampled = Catalog(t2, cat_t2.modules, "sampled(seed=0)")
    relaxed = verify_kato_muller(t2_corner, pretend_sampled, cat_corner_s)
    assert relaxed.passed and relaxed.sampled
    strict = verify_kato_muller(t2_corner, pretend_sampled, cat_corner_s, strict_sampling=True)
    assert not strict.passed
    assert all(v.passed for v in strict.verdicts)


def test_user_catalog_roundtrip(t2, s1, s2):
    cat = user_catalog(t2, [s1, s2])
    assert not cat.exhaustive
    assert cat.provenance == "user-supplied"
    assert len(cat) == 2


def test_report_failures_listing(t2_corner, cat_t2, cat_corner_s):
    report = verify_strict_equivalence(t2_corner, cat_t2, cat_corner_s)
    assert report.failures()
    assert all(not v.passed for v in report.failures())
