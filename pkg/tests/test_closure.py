import itertools

import pytest

from ualg import (
    CarrierMap,
    Var,
    algebra,
    apply_op,
    check_leq,
    classify,
    enumerate_terms,
    evaluate,
    hom_image,
    hsp_certificate_check,
    product,
    subalgebra_generate,
    trivial_certificate,
)
from ualg.closure import EmptyCarrierError, HspCertificate
from ualg.core import CapExceededError, SignatureMismatchError
from ualg.homs import NotAHomError
from ualg.terms import all_environments

from samples import SIG_F, SIG_FE, semilattice2, z2_xor, z3_add, z4_add

X, Y = Var("x"), Var("y")


def test_product_componentwise_example():
    square = product([z2_xor(), z2_xor()])
    a = square.encode((0, 1))
    b = square.encode((1, 1))
    result = apply_op(square.alg, "f", [a, b])
    assert square.decode(result) == (1, 0)


def test_product_size_and_codec():
    p = product([z2_xor(), z3_add()])
    assert p.alg.size == 6
    for i in range(6):
        assert p.encode(p.decode(i)) == i
    assert p.decode(0) == (0, 0)
    assert p.decode(5) == (1, 2)  # factor 0 most significant


def test_unary_product_is_the_factor():
    p = product([z3_add()])
    assert p.alg == z3_add()
    for i in range(3):
        assert p.decode(i) == (i,)


def test_product_caps_and_mismatch():
    with pytest.raises(CapExceededError):
        product([z4_add(), z4_add()], size_cap=10)
    with pytest.raises(SignatureMismatchError):
        product([z2_xor(), semilattice2()])


def test_interpretation_in_a_product_is_componentwise():
    factors = [z2_xor(), semilattice2(SIG_F)]
    p = product(factors)
    terms = enumerate_terms(SIG_F, ["x", "y"], 3)
    for rho in all_environments(["x", "y"], p.alg.size):
        parts = [
            {v: p.decode(c)[i] for v, c in rho.items()}
            for i in range(len(factors))
        ]
        for t in terms:
            combined = evaluate(p.alg, t, rho)
            assert p.decode(combined) == tuple(
                evaluate(f, t, parts[i]) for i, f in enumerate(factors)
            )


def test_componentwise_embedding_of_subalgebra_products():
    # P(S K) <= S(P K): embed a product of subalgebras into the product
    sub1, inc1 = subalgebra_generate(z4_add(), [2])
    sub2, inc2 = subalgebra_generate(semilattice2(SIG_F), [1])
    big = product([z4_add(), semilattice2(SIG_F)])
    small = product([sub1, sub2])
    image = tuple(
        big.encode((inc1.image[a], inc2.image[b]))
        for a, b in (small.decode(i) for i in range(small.alg.size))
    )
    embedding = CarrierMap(small.alg, big.alg, image)
    cls = classify(embedding)
    assert cls.is_hom and cls.injective


def test_subalgebra_generate_examples():
    sub, inc = subalgebra_generate(z4_add(), [2])
    assert sub.size == 2
    assert inc.image == (2, 0)  # discovery order: generator first, then 2+2
    cls = classify(inc)
    assert cls.is_hom and cls.injective

    full, inc_full = subalgebra_generate(z4_add(), range(4))
    assert full == z4_add()
    assert inc_full.image == (0, 1, 2, 3)

    everything, _ = subalgebra_generate(z4_add(), [1])
    assert everything.size == 4


def test_subalgebra_generate_is_a_fixpoint():
    sub, _ = subalgebra_generate(z4_add(), [2])
    again, inc = subalgebra_generate(sub, range(sub.size))
    assert again == sub
    assert inc.image == tuple(range(sub.size))


def test_subalgebra_generate_empty_gens():
    with pytest.raises(EmptyCarrierError):
        subalgebra_generate(z2_xor(), [])
    with_const = algebra(SIG_FE, 3, {"f": [(a + b) % 3 for a in range(3) for b in range(3)], "e": [1]})
    sub, inc = subalgebra_generate(with_const, [])
    # e = 1 generates 1, 1+1=2, 2+1=0: everything
    assert sub.size == 3
    assert inc.image == (1, 2, 0)


def test_subalgebra_generate_rejects_foreign_generators():
    with pytest.raises(ValueError):
        subalgebra_generate(z2_xor(), [5])


def test_hom_image_examples():
    img, onto = hom_image(z4_add(), CarrierMap(z4_add(), z2_xor(), (0, 1, 0, 1)))
    assert img == z2_xor()
    assert onto.image == (0, 1, 0, 1)

    same, onto_id = hom_image(z3_add(), CarrierMap(z3_add(), z3_add(), (0, 1, 2)))
    assert same == z3_add()

    point, _ = hom_image(z2_xor(), CarrierMap(z2_xor(), z2_xor(), (0, 0)))
    assert point.size == 1


def test_hom_image_rejects_non_homs():
    with pytest.raises(NotAHomError) as exc:
        hom_image(z2_xor(), CarrierMap(z2_xor(), z2_xor(), (1, 1)))
    assert exc.value.witness == ("f", (0, 0))


def test_check_leq():
    assert check_leq(z3_add(), z3_add()).image == (0, 1, 2)
    square = product([z2_xor(), z2_xor()]).alg
    embedding = check_leq(z2_xor(), square)
    cls = classify(embedding)
    assert cls.is_hom and cls.injective
    diagonal = CarrierMap(z2_xor(), square, (0, 3))
    diag_cls = classify(diagonal)
    assert diag_cls.is_hom and diag_cls.injective

    assert check_leq(semilattice2(SIG_F), z2_xor()) is None


def test_leq_is_reflexive_and_transitive():
    sub2, _ = subalgebra_generate(z4_add(), [2])
    pool = [z2_xor(), semilattice2(SIG_F), z3_add(), sub2]
    for a in pool:
        assert check_leq(a, a) is not None
    for a, b, c in itertools.product(pool, repeat=3):
        if check_leq(a, b) is not None and check_leq(b, c) is not None:
            assert check_leq(a, c) is not None


def test_trivial_certificate_certifies_membership():
    for alg in (z2_xor(), semilattice2(), z3_add()):
        cert = trivial_certificate(0, alg)
        assert hsp_certificate_check([alg], alg, cert).ok


def test_semilattice_square_certificate():
    m = semilattice2()
    cert = HspCertificate(factors=((0, 2),), gens=(1, 2), image=(0, 1, 0))
    result = hsp_certificate_check([m], m, cert)
    assert result.ok


def test_certificate_stage_failures():
    m = semilattice2()
    bad_index = HspCertificate(factors=((3, 1),), gens=(0,), image=(0,))
    assert hsp_certificate_check([m], m, bad_index).stage == "product"

    bad_gen = HspCertificate(factors=((0, 1),), gens=(9,), image=(0, 1))
    assert hsp_certificate_check([m], m, bad_gen).stage == "subalgebra"

    # constant-1 on the xor algebra is not a hom: f(1,1)=0 but the map says 1
    xor = z2_xor()
    not_hom = HspCertificate(factors=((0, 1),), gens=(0, 1), image=(1, 1))
    result = hsp_certificate_check([xor], xor, not_hom)
    assert result.stage == "image" and "not a hom" in result.detail

    wrong_size = HspCertificate(factors=((0, 1),), gens=(0,), image=(0,))
    result = hsp_certificate_check([m], m, wrong_size)
    assert result.stage == "isomorphism"
