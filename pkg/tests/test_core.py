from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finring import (
    AxiomViolation,
    InvalidEmbedding,
    UnsupportedStructureError,
    analyze,
    embed,
    invariant_signature,
    local_decomposition,
    make_product,
    make_quotient,
    make_table_ring,
    make_zero_mul_ring,
    make_zn,
    residue_field,
    rings_isomorphic,
    validate_ring,
)
from finring.core import (
    element_additive_order,
    element_nilpotency_index,
    multiplicative_inverse,
    multiplicative_order,
)


def test_make_zn_2_is_field(z2):
    inv = analyze(z2)
    assert inv.is_field
    assert inv.characteristic == 2
    assert z2.unity == 1


def test_make_zn_4_invariants(z4):
    inv = analyze(z4)
    assert inv.units.indices() == (1, 3)
    assert inv.nilpotents.indices() == (0, 2)
    assert inv.nilpotency_index == 2
    assert inv.unit_group_exponent == 2
    assert inv.is_local
    assert inv.residue_field_order == 2
    assert inv.jacobson_radical.indices() == (0, 2)
    assert not inv.is_field


def test_make_zn_6_not_local(z6):
    inv = analyze(z6)
    assert inv.idempotents.indices() == (0, 1, 3, 4)
    assert inv.is_local is False


def test_make_zn_9_invariants(z9):
    inv = analyze(z9)
    assert inv.units.size == 6
    assert inv.unit_group_exponent == 6
    assert inv.nilpotency_index == 2
    assert inv.residue_field_order == 3


def test_make_zn_rejects_bad_modulus():
    with pytest.raises(ValueError):
        make_zn(1)
    with pytest.raises(ValueError):
        make_zn(0)


def test_quotient_gf4_is_field(gf4):
    inv = analyze(gf4)
    assert gf4.order == 4
    assert inv.is_field
    assert inv.nilpotency_index == 1
    assert inv.unit_group_exponent == 3


def test_quotient_dual_numbers():
    r = make_quotient(make_zn(2), (0, 0, 1))  # Z/2[x]/(x^2)
    inv = analyze(r)
    assert r.order == 4
    assert inv.is_local
    assert inv.nilpotency_index == 2
    assert inv.residue_field_order == 2


def test_quotient_cube():
    r = make_quotient(make_zn(2), (0, 0, 0, 1))  # Z/2[x]/(x^3)
    inv = analyze(r)
    assert r.order == 8
    assert inv.is_local
    assert inv.nilpotency_index == 3


def test_quotient_requires_monic():
    with pytest.raises(ValueError, match="monic"):
        make_quotient(make_zn(4), (1, 0, 2))
    with pytest.raises(ValueError, match="degree"):
        make_quotient(make_zn(4), (3,))


def test_product_z2_z3_matches_z6(z6):
    r = make_product(make_zn(2), make_zn(3))
    assert r.order == 6
    assert analyze(r).characteristic == 6
    assert len(local_decomposition(r)) == 2
    assert invariant_signature(r) == invariant_signature(z6)
    assert rings_isomorphic(r, z6) is True


def test_product_z2_z2_idempotents():
    r = make_product(make_zn(2), make_zn(2))
    inv = analyze(r)
    assert inv.idempotents.size == 4
    assert inv.is_local is False
    assert r.is_unital  # product of unital rings is unital


def test_table_ring_round_trip(z4):
    r = make_table_ring(z4.add_table, z4.mul_table)
    assert r.add_table == z4.add_table
    assert r.mul_table == z4.mul_table
    assert r.unity == 1


def test_table_ring_axiom_violation_with_witness(z2):
    # constant-one multiplication distributes on neither side
    bad_mul = ((1, 1), (1, 1))
    with pytest.raises(AxiomViolation) as exc:
        make_table_ring(z2.add_table, bad_mul)
    axiom, witness = exc.value.axiom, exc.value.witness
    assert "distributivity" in axiom
    a, b, c = witness
    if axiom.startswith("left"):
        assert bad_mul[a][z2.add(b, c)] != z2.add(bad_mul[a][b], bad_mul[a][c])
    else:
        assert bad_mul[z2.add(b, c)][a] != z2.add(bad_mul[b][a], bad_mul[c][a])


def test_table_ring_identity_must_sit_at_zero():
    add = ((1, 0), (0, 1))  # identity is element 1
    mul = ((0, 0), (0, 0))
    with pytest.raises(ValueError, match="element 0"):
        make_table_ring(add, mul)


def test_zero_mul_ring_is_non_unital():
    r = make_zero_mul_ring(2)
    inv = analyze(r)
    assert not r.is_unital
    assert inv.nilpotents.size == 2
    assert inv.nilpotency_index == 2
    assert inv.units is None
    assert inv.is_local is None
    assert inv.characteristic == 2


def test_catalog_revalidates(catalog9):
    for _, ring in catalog9:
        validate_ring(ring)


def test_analyze_deterministic(z4):
    r = make_zn(4)
    assert invariant_signature(r) == invariant_signature(z4)
    assert analyze(r) == analyze(r)


def test_local_decomposition_z6(z6):
    factors = local_decomposition(z6)
    assert sorted(f.ring.order for f in factors) == [2, 3]


def test_local_decomposition_z4_is_itself(z4):
    factors = local_decomposition(z4)
    assert len(factors) == 1
    assert factors[0].ring.order == 4
    assert factors[0].idempotent == z4.unity


def test_local_decomposition_z12():
    z12 = make_zn(12)
    assert analyze(z12).idempotents.indices() == (0, 1, 4, 9)
    factors = local_decomposition(z12)
    assert sorted(f.ring.order for f in factors) == [3, 4]


def test_local_decomposition_properties(catalog9):
    for _, ring in catalog9:
        inv = analyze(ring)
        if not (inv.is_unital and inv.is_commutative):
            continue
        factors = local_decomposition(ring)
        total = 1
        for f in factors:
            total *= f.ring.order
            assert analyze(f.ring).is_local
        assert total == ring.order


def test_local_decomposition_rejects_non_unital():
    with pytest.raises(UnsupportedStructureError):
        local_decomposition(make_zero_mul_ring(4))


def test_residue_field_z4(z4):
    field, proj, reps = residue_field(z4)
    assert field.order == 2
    assert analyze(field).is_field
    assert proj == (0, 1, 0, 1)
    assert reps == (0, 1)


def test_embed_prime_subfield(z2, gf4):
    emb = embed(z2, gf4, [0, 1])
    assert emb.map == (0, 1)


def test_embed_rejects_characteristic_mismatch(z2, z4):
    with pytest.raises(InvalidEmbedding) as exc:
        embed(z2, z4, [0, 1])
    assert exc.value.reason == "not-homomorphic"
    assert exc.value.witness == (1, 1)


def test_embed_rejects_non_injective(z2, gf4):
    with pytest.raises(InvalidEmbedding, match="not-injective"):
        embed(z2, gf4, [0, 0])


def test_units_are_torsion(catalog9):
    # every unit has finite multiplicative order bounded by the ring order
    for _, ring in catalog9:
        inv = analyze(ring)
        if inv.units is None:
            continue
        for u in inv.units.indices():
            assert multiplicative_order(ring, u) <= ring.order


def test_field_invariants(catalog9):
    for _, ring in catalog9:
        inv = analyze(ring)
        if inv.is_field:
            assert inv.nilpotency_index == 1
            assert inv.units.indices() == tuple(range(1, ring.order))


def test_element_helpers(z4):
    assert element_additive_order(z4, 0) == 1
    assert element_additive_order(z4, 1) == 4
    assert element_additive_order(z4, 2) == 2
    assert element_nilpotency_index(z4, 2) == 2
    assert element_nilpotency_index(z4, 3) is None
    assert multiplicative_inverse(z4, 3) == 3
    assert multiplicative_inverse(z4, 2) is None


def test_pow(z4):
    assert z4.pow(3, 4) == 1
    assert z4.pow(2, 2) == 0
    assert z4.pow(3, 0) == 1
    with pytest.raises(UnsupportedStructureError):
        make_zero_mul_ring(2).pow(1, 0)


_SMALL_RINGS = [make_zn(n) for n in (2, 3, 4, 6)] + [make_zero_mul_ring(4)]


@settings(max_examples=60, deadline=None)
@given(
    ring=st.sampled_from(_SMALL_RINGS),
    data=st.data(),
)
def test_ring_axioms_hold_pointwise(ring, data):
    idx = st.integers(min_value=0, max_value=ring.order - 1)
    a, b, c = data.draw(idx), data.draw(idx), data.draw(idx)
    assert ring.add(a, b) == ring.add(b, a)
    assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
    assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
    assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
    assert ring.add(a, ring.neg(a)) == 0


def test_local_radical_equals_non_units(catalog9):
    for _, ring in catalog9:
        inv = analyze(ring)
        if inv.is_local:
            non_units = tuple(a for a in ring.elements() if a not in inv.units)
            assert inv.jacobson_radical.indices() == non_units
