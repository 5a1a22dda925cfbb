import random

import pytest

from moritakit.exactlin import Basis, Field, Matrix
from moritakit.algebra import two_sided_ideal_closure
from moritakit.modules import (
    BudgetExceeded,
    Bimodule,
    LeftModule,
    Submodule,
    annihilator,
    direct_sum,
    enumerate_submodules,
    hom_module,
    hom_space,
    ideal_action_image,
    is_isomorphic,
    quotient_module,
    regular_bimodule,
    regular_module,
    submodule_lattice,
    tensor_over,
    validate_module,
)

from bruteforce import brute_annihilator, brute_hom, brute_submodules

GF2 = Field.gf(2)
E11, E12, E22 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def test_regular_module_validates(t2, t2_regular):
    assert validate_module(t2_regular) == []
    assert t2_regular.dim == t2.dim


def test_regular_bimodule_validates(t2):
    assert validate_module(regular_bimodule(t2)) == []


def test_validate_catches_broken_action(t2, t2_regular):
    mats = list(t2_regular.action)
    mats[1] = Matrix.identity(GF2, 3)  # e12 acting as the identity is wrong
    broken = LeftModule(t2, 3, mats)
    report = validate_module(broken)
    assert any("action law" in line for line in report)


def test_simples_validate(s1, s2):
    assert validate_module(s1) == []
    assert validate_module(s2) == []


def test_p2_structure(p2):
    assert validate_module(p2) == []
    assert p2.dim == 2


def test_direct_sum_validates(s1, s2, p2):
    m = direct_sum(direct_sum(s1, s2), p2)
    assert m.dim == 4
    assert validate_module(m) == []


def test_hom_from_regular_counts_dimension(t2_regular, s1, s2, p2):
    # maps out of the free rank-1 module correspond to elements of the target
    for target in (s1, s2, p2, t2_regular):
        assert hom_space(t2_regular, target).dim == target.dim


def test_hom_between_simples(s1, s2):
    assert hom_space(s1, s2).dim == 0
    assert hom_space(s2, s1).dim == 0
    assert hom_space(s1, s1).dim == 1


def test_hom_p2_to_simples(p2, s1, s2):
    assert hom_space(p2, s1).dim == 0
    assert hom_space(p2, s2).dim == 1


def test_hom_agrees_with_bruteforce(t2_regular, s1, s2, p2):
    for src in (s1, s2, p2):
        for tgt in (s1, s2, p2):
            brute = brute_hom(src, tgt)
            h = hom_space(src, tgt)
            assert len(brute) == GF2.p ** h.dim
            for f in h.matrices:
                assert f in brute


def test_hom_maps_intertwine(p2, s2):
    h = hom_space(p2, s2)
    for f in h.matrices:
        for a, b in zip(p2.action, s2.action):
            assert (f @ a) == (b @ f)


def test_hom_module_structure(t2, t2_regular, s2):
    # Hom(T2, X) as a left module over T2 via (r.f)(a) = f(a r)
    bim = regular_bimodule(t2)
    mod, hom = hom_module(bim, s2)
    assert mod.dim == hom.dim == 1
    assert validate_module(mod) == []


def test_tensor_regular_absorbs(t2, t2_regular):
    # R (x)_R R is R again: dim matches and the bimodule laws hold
    bim = regular_bimodule(t2)
    t = tensor_over(t2, bim, bim)
    assert t.dim == t2.dim
    assert validate_module(t.as_bimodule()) == []


def test_tensor_pure_tensor_unit(t2):
    bim = regular_bimodule(t2)
    t = tensor_over(t2, bim, bim)
    # 1 (x) x and x (x) 1 agree in the quotient
    for i in range(t2.dim):
        x = t2.basis_vector(i)
        assert t.pure_tensor(t2.unit, x) == t.pure_tensor(x, t2.unit)


def test_tensor_dim_invariant_under_basis_permutation(t2):
    bim = regular_bimodule(t2)
    base_dim = tensor_over(t2, bim, bim).dim
    # permute the basis of the left factor by conjugating all actions
    perm = Matrix(GF2, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    inv = perm.inverse()
    left = Bimodule(
        t2,
        t2,
        3,
        [perm @ a @ inv for a in bim.left_action],
        [perm @ a @ inv for a in bim.right_action],
    )
    assert validate_module(left) == []
    assert tensor_over(t2, left, bim).dim == base_dim


def test_annihilator_of_trace_ideal(t2, t2_regular):
    ideal = two_sided_ideal_closure(t2, [E22])
    ann = annihilator(t2_regular, ideal.basis.vectors)
    assert ann.basis == Basis.span(GF2, 3, [E11, E12])
    assert ann.basis == brute_annihilator(t2_regular, ideal.basis.vectors)


def test_ideal_action_image(t2, t2_regular):
    ideal = two_sided_ideal_closure(t2, [E22])
    image = ideal_action_image(ideal, t2_regular)
    assert image.basis == Basis.span(GF2, 3, [E12, E22])


def test_submodule_stability_enforced(t2_regular):
    with pytest.raises(ValueError):
        Submodule(t2_regular, Basis.span(GF2, 3, [E22]))


def test_enumerate_submodules_of_regular(t2_regular):
    subs = enumerate_submodules(t2_regular)
    assert len(subs) == 7
    brute = brute_submodules(t2_regular)
    assert sorted(s.basis.vectors for s in subs) == sorted(b.vectors for b in brute)


def test_submodule_lattice_agrees(t2_regular, p2, s1, s2):
    for mod in (t2_regular, p2, direct_sum(s1, s2)):
        via_enum = {s.basis for s in enumerate_submodules(mod)}
        via_lattice = {s.basis for s in submodule_lattice(mod)}
        assert via_enum == via_lattice


def test_enumeration_budget(t2, s1):
    big = s1
    for _ in range(6):
        big = direct_sum(big, s1)  # dim 7 over GF(2): 2**7 > 81
    with pytest.raises(BudgetExceeded):
        enumerate_submodules(big)
    # explicit budget raises the cap
    assert len(enumerate_submodules(big, budget=2 ** 7)) > 0


def test_quotient_module_by_socle(t2, t2_regular, s2):
    soc = Basis.span(GF2, 3, [E11, E12])
    quo, proj = quotient_module(t2_regular, soc)
    assert quo.dim == 1
    assert validate_module(quo) == []
    assert is_isomorphic(quo, s2).found


def test_quotient_module_rejects_unstable(t2_regular):
    with pytest.raises(ValueError):
        quotient_module(t2_regular, Basis.span(GF2, 3, [E22]))


def test_iso_identity_shortcut(p2):
    res = is_isomorphic(p2, p2)
    assert res.found and res.exhaustive
    assert res.map_ == Matrix.identity(GF2, 2)


def test_iso_proven_none_for_distinct_dim2_modules(p2, s1, s2):
    res = is_isomorphic(p2, direct_sum(s1, s2))
    assert res.proven_none


def test_iso_dimension_mismatch(s1, p2):
    assert is_isomorphic(s1, p2).proven_none


def test_regular_decomposes(t2_regular, s1, p2):
    res = is_isomorphic(t2_regular, direct_sum(s1, p2))
    assert res.found
    f = res.map_
    assert f.is_invertible()
    for a, b in zip(t2_regular.action, direct_sum(s1, p2).action):
        assert (f @ a) == (b @ f)


def test_iso_found_after_random_conjugation(t2_regular):
    rng = random.Random(5)
    n = t2_regular.dim
    for _ in range(5):
        while True:
            p = Matrix(GF2, [[rng.randrange(2) for _ in range(n)] for _ in range(n)])
            if p.is_invertible():
                break
        inv = p.inverse()
        twisted = LeftModule(t2_regular.algebra, n, [p @ a @ inv for a in t2_regular.action])
        assert validate_module(twisted) == []
        res = is_isomorphic(t2_regular, twisted)
        assert res.found


def test_zero_module(t2, s1):
    zero = LeftModule(t2, 0, [Matrix.zeros(GF2, 0, 0)] * 3)
    assert validate_module(zero) == []
    assert is_isomorphic(zero, zero).found
    assert is_isomorphic(zero, s1).proven_none
    assert hom_space(zero, s1).dim == 0
