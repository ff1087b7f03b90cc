from fractions import Fraction

import pytest

from setcat.catalog import catalog, get
from setcat.cyclo import Cyclo, root_of_unity
from setcat.double import drinfeld_double, rep_abelian
from setcat.embedding import SymmetryEmbedding
from setcat.equiv import find_equivalence
from setcat.errors import InputError
from setcat.fusion import pair_label
from setcat.relprod import (
    canonical_algebra,
    condense_by_invertible_bosons,
    is_deconfined,
    relative_centralizer,
    relative_tensor_product,
    verify_stacking_identity,
    verify_unit_law,
)

F = Fraction


def test_canonical_algebra_toric_toric():
    emb = get("toric_code").embeddings["e"]
    assert canonical_algebra(emb, emb) == [pair_label("1", "1"), pair_label("e", "e")]


def test_canonical_algebra_trivial_group():
    vec = get("vec")
    emb = SymmetryEmbedding([], "vec", {(): "1"})
    assert canonical_algebra(emb, emb) == [pair_label("1", "1")]


def test_canonical_algebra_toric_double_semion():
    embt = get("toric_code").embeddings["e"]
    embd = get("double_semion").embeddings["boson"]
    assert canonical_algebra(embt, embd) == [
        pair_label("1", "1"), pair_label("e", "b")]


def test_is_deconfined_toric_pairs():
    toric = get("toric_code").category
    emb = get("toric_code").embeddings["e"]
    assert is_deconfined(toric, toric, emb, emb, "m", "f")
    assert not is_deconfined(toric, toric, emb, emb, "m", "1")
    assert is_deconfined(toric, toric, emb, emb, "1", "1")


def test_condense_toric_on_e_gives_vec():
    toric = get("toric_code").category
    res = condense_by_invertible_bosons(toric, ["1", "e"])
    assert res.result.ring.rank() == 1
    assert res.deconfined == ["1", "e"]
    assert res.confined == ["m", "f"]
    assert res.conservation["global_dim_conserved"]
    assert res.conservation["gauss_conserved"]
    assert res.ambiguity_flags == []


def test_condense_rejects_bad_boson_sets():
    toric = get("toric_code").category
    with pytest.raises(InputError):
        condense_by_invertible_bosons(toric, ["1", "f"])  # twist 1/2
    with pytest.raises(InputError):
        condense_by_invertible_bosons(toric, ["1", "e", "m"])  # not closed
    ising = get("ising").category
    with pytest.raises(InputError):
        condense_by_invertible_bosons(ising, ["1", "sigma"])  # not invertible


def test_toric_stack_toric_is_toric():
    toric = get("toric_code").category
    emb = get("toric_code").embeddings["e"]
    res, ind = relative_tensor_product(toric, toric, emb, emb)
    assert res.result.ring.rank() == 4
    assert sorted(res.result.twist(x) for x in res.result.labels) == \
        [F(0), F(0), F(0), F(1, 2)]
    assert len(res.orbits) == 4
    assert all(len(o.stabilizer) == 1 for o in res.orbits)
    assert res.conservation["global_dim_conserved"]
    sigma = find_equivalence(res.result, toric)
    assert sigma is not None
    # the induced symmetry sits on the orbit of (e, 1)
    assert ind.validate(res.result) == []


def test_ising_times_reverse_condenses_to_toric():
    ising = get("ising").category
    rev = get("ising_rev").category
    prod = ising.deligne(rev)
    res = condense_by_invertible_bosons(
        prod, [pair_label("1", "1"), pair_label("psi", "psi")])
    assert res.ambiguity_flags == []
    assert res.result.ring.rank() == 4
    assert sorted(res.result.twist(x) for x in res.result.labels) == \
        [F(0), F(0), F(0), F(1, 2)]
    # the fixed point (sigma, sigma) splits into two invertible children
    rep = pair_label("sigma", "sigma")
    assert res.splittings[rep] == 2
    for lab in res.result_labels_of_orbit(rep):
        assert res.result.dim(lab) == Cyclo.one()
        assert res.result.twist(lab) == 0
    assert find_equivalence(res.result, get("toric_code").category) is not None
    # exact conservation: gauss(ising x rev) = 2 zeta16 * 2 zeta16^-1 = 4
    assert prod.gauss_sum() == Cyclo.from_rational(4)
    assert res.conservation["gauss_conserved"]
    assert res.conservation["global_dim_conserved"]


def test_relative_centralizer_cases():
    toric = get("toric_code").category
    emb = get("toric_code").embeddings["e"]
    cent = relative_centralizer(toric, emb)
    assert cent.labels == ["1", "e"]
    assert cent.muger_center() == cent.labels

    # central embedding keeps everything
    rz2 = get("rep_z2")
    cent2 = relative_centralizer(rz2.category, rz2.embeddings["identity"])
    assert cent2.labels == rz2.category.labels

    ising = get("ising").category
    rev = get("ising_rev").category
    prod = ising.deligne(rev)
    emb_pair = SymmetryEmbedding([2], prod.name,
                                 {(0,): prod.unit, (1,): pair_label("psi", "psi")})
    assert emb_pair.validate(prod) == []
    cent3 = relative_centralizer(prod, emb_pair)
    assert cent3.ring.rank() == 5


def test_unit_law_toric_both_embeddings():
    toric = get("toric_code")
    assert verify_unit_law(toric.category, toric.embeddings["e"]) is True
    assert verify_unit_law(toric.category, toric.embeddings["m"]) is True


def test_unit_law_rep_z2():
    rz2 = get("rep_z2")
    Z, embZ = drinfeld_double([2])
    res, ind = relative_tensor_product(Z, rz2.category, embZ, rz2.embeddings["identity"])
    assert res.result.ring.rank() == 2
    assert verify_unit_law(rz2.category, rz2.embeddings["identity"]) is True


def test_unit_law_double_z3():
    d3 = get("double_3")
    assert verify_unit_law(d3.category, d3.embeddings["canonical"]) is True


def test_stacking_identity_toric_pairs():
    toric = get("toric_code")
    assert verify_stacking_identity(
        toric.category, toric.category,
        toric.embeddings["e"], toric.embeddings["e"]) is True
    assert verify_stacking_identity(
        toric.category, toric.category,
        toric.embeddings["e"], toric.embeddings["m"]) is True


def test_stacking_identity_with_double():
    toric = get("toric_code")
    d2 = get("double_2")
    assert verify_stacking_identity(
        d2.category, toric.category,
        d2.embeddings["canonical"], toric.embeddings["e"]) is True


def test_relprod_unit_instance_equals_engine_on_doubles():
    # stacking the double with rep(G) itself: Z(E) x_E E = E
    rz2 = get("rep_z2")
    assert verify_unit_law(rz2.category, rz2.embeddings["identity"]) is True


def test_double_z4_two_embeddings_condense_differently():
    d4 = get("double_4").category
    bosons = [x for x in d4.labels
              if d4.is_invertible(x) and d4.twist(x) == 0]
    order2 = []
    for x in bosons:
        if x == d4.unit:
            continue
        if d4.ring.fuse(x, x) == {d4.unit: 1}:
            order2.append(x)
    assert len(order2) == 3
    twist_sets = {}
    for x in order2:
        res = condense_by_invertible_bosons(d4, [d4.unit, x])
        key = tuple(sorted(res.result.twist(t) for t in res.result.labels))
        twist_sets[x] = key
    values = sorted(twist_sets.values())
    # one subgroup yields the double semion, the others the toric code
    assert values.count((F(0), F(0), F(0), F(1, 2))) == 2
    assert values.count((F(0), F(0), F(1, 4), F(3, 4))) == 1


def test_pointed_engine_matches_oracle_small():
    import random

    from setcat.randomized import (random_isotropic_subgroup,
                                   random_metric_group)

    rng = random.Random(123)
    done = 0
    while done < 12:
        M = random_metric_group(rng, max_order=16)
        H = random_isotropic_subgroup(M, rng)
        done += 1
        oracle = M.condense([g for g in H if g != M.zero()])
        P = M.to_premodular(check_smatrix=False)
        from setcat.pointed import element_label
        res = condense_by_invertible_bosons(P, [element_label(h) for h in H])
        sigma = find_equivalence(res.result,
                                 oracle.to_premodular(check_smatrix=False))
        assert sigma is not None


def test_nondegeneracy_preserved():
    toric = get("toric_code").category
    res = condense_by_invertible_bosons(toric.deligne(toric),
                                        [pair_label("1", "1"), pair_label("e", "e")])
    assert res.result.is_nondegenerate()


def test_trivial_symmetry_gives_plain_product():
    semion = get("semion").category
    anti = get("anti_semion").category
    emb1 = SymmetryEmbedding([], "semion", {(): "1"})
    emb2 = SymmetryEmbedding([], "anti_semion", {(): "1"})
    res, ind = relative_tensor_product(semion, anti, emb1, emb2)
    assert res.result.ring.rank() == 4
    assert res.confined == []
    assert find_equivalence(res.result, semion.deligne(anti)) is not None


def test_rep_stack_c_is_relative_centralizer():
    # E x_E C computed by the engine agrees with the centralizer subcategory
    toric = get("toric_code")
    C, embC = toric.category, toric.embeddings["e"]
    R, embR = rep_abelian(embC.group)
    res, ind = relative_tensor_product(R, C, embR, embC)
    cent = relative_centralizer(C, embC)
    assert find_equivalence(res.result, cent) is not None

    dsem = get("double_semion")
    C2, embC2 = dsem.category, dsem.embeddings["boson"]
    R2, embR2 = rep_abelian(embC2.group)
    res2, _ = relative_tensor_product(R2, C2, embR2, embC2)
    cent2 = relative_centralizer(C2, embC2)
    assert find_equivalence(res2.result, cent2) is not None
