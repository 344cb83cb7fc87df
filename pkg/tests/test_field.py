import pytest
from hypothesis import given, strategies as st

from blockcirc.field import (BinaryField, FieldError, PrimeField, build_field,
                             default_modulus, field_from_json,
                             is_characteristic_two, is_irreducible_gf2,
                             parse_field_spec, smallest_prime_field)


def test_gf11_basics():
    f = build_field("prime", 11)
    assert f.mul(3, 4) == 1          # 12 mod 11
    assert f.inv(2) == 6             # 2 * 6 = 12 = 1
    assert f.add(7, 9) == 5
    assert f.sub(3, 5) == 9
    assert f.pow(2, 10) == 1


def test_gf8_polynomial_arithmetic():
    f = build_field("binary", 3)     # modulus x^3 + x + 1
    assert f.modulus == 0b1011
    assert f.mul(0b010, 0b100) == 0b011   # x * x^2 = x + 1
    assert f.add(5, 5) == 0
    assert f.inv(f.inv(7)) == 7


def test_non_prime_rejected():
    with pytest.raises(FieldError):
        build_field("prime", 4)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        build_field("binary", 3, modulus=0b1001)   # x^3 + 1 = (x+1)(x^2+x+1)


def test_characteristic_two():
    assert is_characteristic_two(build_field("binary", 3))
    assert not is_characteristic_two(build_field("prime", 11))
    assert is_characteristic_two(build_field("prime", 2))


def test_default_moduli():
    assert default_modulus(3) == 0b1011            # x^3 + x + 1
    assert default_modulus(8) == 0b100011011       # x^8 + x^4 + x^3 + x + 1
    for m in range(1, 13):
        assert is_irreducible_gf2(default_modulus(m), m)


def test_zero_inverse_raises():
    for f in (build_field("prime", 7), build_field("binary", 4)):
        with pytest.raises(FieldError):
            f.inv(0)


def test_generator_has_full_order():
    for f in (build_field("prime", 11), build_field("binary", 3),
              build_field("binary", 8)):
        g = f.generator()
        seen = set()
        x = 1
        for _ in range(f.q - 1):
            seen.add(x)
            x = f.mul(x, g)
        assert len(seen) == f.q - 1 and x == 1


def test_table_path_matches_carryless():
    f = BinaryField(8)
    pairs = [(a, b) for a in range(0, 256, 7) for b in range(0, 256, 11)]
    for a, b in pairs:
        assert f.mul(a, b) == f._mul_noLUT(a, b)
        assert int(f.vec_mul(a, b)) == f._mul_noLUT(a, b)


def test_serialization_round_trip():
    for f in (PrimeField(13), BinaryField(4), BinaryField(5, 0b100101)):
        assert field_from_json(f.to_json()) == f


def test_parse_field_spec():
    assert parse_field_spec("p11") == PrimeField(11)
    assert parse_field_spec("b3") == BinaryField(3)
    with pytest.raises(FieldError):
        parse_field_spec("q7")


def test_smallest_prime_field():
    assert smallest_prime_field(237).p == 239
    assert smallest_prime_field(11).p == 11


FIELDS = [build_field("prime", 11), build_field("prime", 2),
          build_field("binary", 3), build_field("binary", 8)]


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(f, data):
    a = data.draw(st.integers(0, f.q - 1))
    b = data.draw(st.integers(0, f.q - 1))
    c = data.draw(st.integers(0, f.q - 1))
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == 0
    assert f.mul(a, 1) == a and f.add(a, 0) == a
    if a != 0:
        assert f.mul(a, f.inv(a)) == 1
    if f.characteristic == 2:
        assert f.add(a, a) == 0
