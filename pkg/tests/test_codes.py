import json

import pytest

from sidon_lattice import serialize, sets
from sidon_lattice.algebra import cyclic, group_make
from sidon_lattice.codes import (
    build_syndrome_table,
    decode_radius1,
    decode_radius_r,
    dual_basis,
    encode,
    extract_difference_set,
    finite_code,
    generator_matrix_cyclic,
    lattice_from_difference_set,
    lattice_from_set,
    perfect_code_A1,
    perfect_code_A2,
    syndrome,
    tiling_lattice_S2,
)
from sidon_lattice.errors import SyndromeCollisionError


def d13():
    return sets.difference_set(cyclic(13), [(0,), (1,), (3,), (9,)])


def test_lattice_from_set_frozen_basis():
    lat = lattice_from_difference_set(d13())
    assert lat.basis == ((13, 0, 0), (10, 1, 0), (4, 0, 1))
    assert lat.det_abs == 13
    assert lat.contains((13, 0, 0))
    assert lat.contains((-3, 1, 0))
    assert not lat.contains((1, 0, 0))


def test_lattice_from_set_rejects_nongenerating():
    with pytest.raises(ValueError):
        lattice_from_set(cyclic(4), [(0,), (2,)])


def test_lattice_from_set_noncyclic():
    g = group_make([2, 6])
    lat = lattice_from_set(g, [(0, 0), (0, 1), (1, 2)])
    assert lat.det_abs == 12
    q, _ = lat.quotient()
    assert q.invariant_factors == (2, 6)


def test_generator_matrix_matches_kernel_lattice():
    import sidon_lattice.algebra as algebra

    d = d13()
    gen = generator_matrix_cyclic(d)
    assert gen == ((13, 0, 0), (-3, 1, 0), (-9, 0, 1))
    assert algebra.hermite_normal_form(gen) == lattice_from_difference_set(d).basis


def test_dual_basis_inverse_transpose():
    b = ((13, 0, 0), (10, 1, 0), (4, 0, 1))
    dual = dual_basis(b)
    for i in range(3):
        for j in range(3):
            dot = sum(b[i][k] * dual[j][k] for k in range(3))
            assert dot == (1 if i == j else 0)


def test_finite_code_encode_syndrome():
    fc = finite_code(d13())
    assert fc.v == 13 and fc.n == 3
    assert fc.parity_row == (1, 3, 9)
    assert fc.codeword_count == 169
    x = encode(fc, (3, 0))
    assert syndrome(fc, x) == 0
    assert syndrome(fc, (4, 4, 12)) == 7


def test_decode_radius1_worked_example():
    fc = finite_code(d13())
    assert decode_radius1(fc, (4, 4, 12)) == (4, 3, 0)
    x = encode(fc, (5, 11))
    assert decode_radius1(fc, x) == x


def test_syndrome_table_and_decode():
    d = d13()
    b = sets.bh_set(d.group, d.elements, 2)
    table = build_syndrome_table(b, 1, 1)
    assert len(table.table) == 13
    fc = finite_code(d)
    res = decode_radius_r(table, fc, (4, 4, 12))
    assert res.status == "corrected" and res.codeword == (4, 3, 0)
    lat = lattice_from_difference_set(d)
    res = decode_radius_r(table, lat, (1, 0, -1))  # error off the lattice
    assert res.status == "corrected"
    assert lat.contains(res.codeword)


def test_syndrome_table_collision_detects_non_bh():
    with pytest.raises(SyndromeCollisionError):
        b = sets.BhSet(cyclic(8), 2, ((0,), (1,), (2,), (3,)))
        build_syndrome_table(b, 1, 1)


def test_decode_detected_beyond_shape():
    d = d13()
    b = sets.bh_set(d.group, d.elements, 2)
    table = build_syndrome_table(b, 1, 0)  # only positive single errors
    fc = finite_code(d)
    x = encode(fc, (0, 0))
    y = tuple((a - e) % 13 for a, e in zip(x, (0, 1, 0)))  # a negative error
    assert decode_radius_r(table, fc, y).status == "detected"


def test_families():
    assert perfect_code_A1(2).basis == ((5,),)
    lat = perfect_code_A2(3)
    assert lat.det_abs == 37
    til = tiling_lattice_S2(2)
    assert til.det_abs == 27
    q, _ = til.quotient()
    assert q.invariant_factors == (3, 9)


def test_extract_difference_set_roundtrip():
    d = d13()
    lat = lattice_from_difference_set(d)
    back = extract_difference_set(lat)
    assert (back.v, back.k, back.lam) == (13, 4, 1)


def test_serialize_roundtrips(tmp_path):
    d = d13()
    data = serialize.set_to_json(d)
    assert data["schema"] == serialize.SCHEMA
    back = serialize.set_from_json(json.loads(json.dumps(data)))
    assert back.elements == d.elements and back.group == d.group

    b = sets.bose_chowla(3, 2)
    back = serialize.set_from_json(serialize.set_to_json(b))
    assert back.elements == b.elements and back.h == 2

    lat = lattice_from_difference_set(d)
    fc = finite_code(d)
    data = serialize.code_to_json(lat, fc)
    lat2, fc2 = serialize.code_from_json(json.loads(json.dumps(data)))
    assert lat2.basis == lat.basis and fc2 == fc
    lat3, fc3 = serialize.code_from_json(serialize.code_to_json(lat))
    assert lat3.basis == lat.basis and fc3 is None


def test_serialize_large_ints():
    big = 2**60
    assert serialize.enc_int(big) == str(big)
    assert serialize.dec_int(str(big)) == big
    assert serialize.enc_int(7) == 7
