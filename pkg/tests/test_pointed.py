import random
from fractions import Fraction

import pytest

from setcat.cyclo import Cyclo, root_of_unity
from setcat.errors import InputError
from setcat.pointed import MetricGroup, element_label, quadratic_form_from_rule

F = Fraction


def semion_group() -> MetricGroup:
    return MetricGroup([2], {(0,): F(0), (1,): F(1, 4)}, name="semion")


def toric_group() -> MetricGroup:
    # q(a, b) = a*b/2 on Z/2 x Z/2
    q = {(a, b): F(a * b, 2) for a in range(2) for b in range(2)}
    return MetricGroup([2, 2], q, name="toric")


def test_validate_toric():
    assert toric_group().validate() == []
    assert semion_group().validate() == []


def test_to_premodular_semion():
    P = semion_group().to_premodular()
    assert [P.twist(x) for x in P.labels] == [F(0), F(1, 4)]
    assert P.validate() == []


def test_to_premodular_toric():
    P = toric_group().to_premodular()
    assert sorted(P.twist(x) for x in P.labels) == [F(0), F(0), F(0), F(1, 2)]
    assert P.validate() == []
    assert P.is_nondegenerate()


def test_trivial_group_is_vec():
    M = MetricGroup([], {(): F(0)}, name="vec")
    P = M.to_premodular()
    assert P.labels == ["()"]
    assert P.global_dim() == Cyclo.one()


def test_orthogonal_complement_and_isotropy():
    M = toric_group()
    e = (1, 0)
    H = M.subgroup([e])
    assert M.orthogonal_complement(H) == [(0, 0), (1, 0)]
    assert M.is_isotropic(H)
    f = (1, 1)
    assert not M.is_isotropic(M.subgroup([f]))
    assert M.orthogonal_complement([M.zero()]) == M.elements()
    with pytest.raises(InputError):
        M.subgroup([(2, 0)])


def test_condense_toric_by_e_gives_vec():
    M = toric_group()
    out = M.condense([(1, 0)])
    assert out.invariant_factors == []
    assert out.order() == 1


def test_condense_rejects_nonisotropic():
    # Z/4 with q(a) = a^2/8: q(2) = 1/2, so <2> is not condensable
    q = {(a,): F(a * a, 8) for a in range(4)}
    M = MetricGroup([4], q, name="z4")
    assert M.validate() == []
    with pytest.raises(InputError):
        M.condense([(2,)])


def test_condense_double_toric_diagonal():
    # toric + toric condensed along <(e, e)> gives the toric code back
    q = {}
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    q[(a, b, c, d)] = F(a * b, 2) + F(c * d, 2)
    M = MetricGroup([2, 2, 2, 2], q, name="toric+toric")
    out = M.condense([(1, 0, 1, 0)])
    assert out.order() == 4
    assert sorted(out.q.values()) == [F(0), F(0), F(0), F(1, 2)]


from setcat.randomized import (random_isotropic_subgroup,
                               random_metric_group as _random_metric_group)


def test_random_metric_groups_validate_construction():
    rng = random.Random(4242)
    for _ in range(25):
        M = _random_metric_group(rng, max_order=16)
        assert M.validate() == []


def test_condense_conservation_randomized():
    rng = random.Random(20240812)
    done = 0
    while done < 40:
        M = _random_metric_group(rng, max_order=64)
        H = random_isotropic_subgroup(M, rng)
        Hperp = M.orthogonal_complement(H)
        if len(Hperp) * len(H) != M.order():
            continue  # only pairing-saturating subgroups conserve dimensions
        done += 1
        out = M.condense([g for g in H if g != M.zero()])
        assert out.order() * len(H) ** 2 == M.order()
        g_in = M.to_premodular(check_smatrix=False).gauss_sum()
        g_out = out.to_premodular(check_smatrix=False).gauss_sum()
        assert g_out * len(H) == g_in


def test_condense_preserves_nondegeneracy():
    rng = random.Random(77)
    done = 0
    while done < 15:
        M = _random_metric_group(rng, max_order=32)
        if not M.is_perfect_pairing():
            continue
        H = random_isotropic_subgroup(M, rng)
        done += 1
        out = M.condense([g for g in H if g != M.zero()])
        assert out.is_perfect_pairing()


def test_perfect_pairing_matches_premodular_nondegeneracy():
    rng = random.Random(31337)
    for _ in range(10):
        M = _random_metric_group(rng, max_order=16)
        P = M.to_premodular(check_smatrix=False)
        assert M.is_perfect_pairing() == P.is_nondegenerate()
