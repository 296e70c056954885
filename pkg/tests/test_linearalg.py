"""Group algebra and Lie structure-constant layer, all exact arithmetic."""

import itertools
import json
import random
from fractions import Fraction

import pytest

from avgroups.structures import TableError, cyclic_group, klein_four_group, sym3
from avgroups.linearalg import (
    LieAlgebraSpec,
    check_antipode_averaging,
    check_averaging_algebra,
    check_averaging_lie,
    check_coalgebra_map,
    check_hopf_equivalence,
    check_leibniz,
    coproduct,
    counit,
    ga_add,
    ga_basis,
    ga_mul,
    ga_scale,
    leibniz_bracket,
    linear_extend,
    load_lie_file,
    load_operator_file,
    mat_apply,
    validate_lie,
)


def test_group_algebra_arithmetic():
    z3 = cyclic_group(3)
    assert ga_mul(ga_basis(1), ga_basis(2), z3) == ga_basis(0)
    a = ga_add(ga_basis(1), ga_basis(2))
    assert ga_mul(ga_basis(0), a, z3) == a
    assert ga_mul(a, ga_basis(1), z3) == ga_add(ga_basis(2), ga_basis(0))
    # coefficients cancel out of the support entirely
    assert ga_add(a, ga_scale(-1, a)) == {}
    assert ga_scale("2/3", ga_basis(1)) == {1: Fraction(2, 3)}
    with pytest.raises(TableError):
        ga_mul({5: Fraction(1)}, ga_basis(0), z3)


def test_linear_extend():
    z2 = cyclic_group(2)
    P = linear_extend(z2, (1, 0))
    x = ga_add(ga_scale(2, ga_basis(0)), ga_scale(3, ga_basis(1)))
    assert P(x) == {0: Fraction(3), 1: Fraction(2)}
    assert P({}) == {}
    # explicit basis images work too
    Q = linear_extend(z2, [ga_add(ga_basis(0), ga_basis(1)), ga_basis(1)])
    assert Q(ga_basis(0)) == {0: Fraction(1), 1: Fraction(1)}
    with pytest.raises(TableError):
        linear_extend(z2, [ga_basis(0)])


def test_averaging_algebra_check():
    z2 = cyclic_group(2)
    assert check_averaging_algebra(z2, (1, 0)).ok
    assert check_averaging_algebra(z2, (0, 1)).ok
    rep = check_averaging_algebra(z2, (1, 1))
    assert not rep.ok and "fails at (0, 0)" in rep.lines()[0]
    # the random spot checks are recorded alongside the basis verdict
    full = check_averaging_algebra(z2, (1, 0))
    assert [n for n, _, _ in full.entries] == [
        "averaging on basis pairs", "averaging on random combinations"]


def test_coproduct_and_counit():
    a = ga_add(ga_scale(2, ga_basis(0)), ga_basis(1))
    assert coproduct(a) == {(0, 0): Fraction(2), (1, 1): Fraction(1)}
    assert counit(a) == Fraction(3)
    assert coproduct({}) == {} and counit({}) == 0


def test_coalgebra_map_check():
    z3 = cyclic_group(3)
    # every set-map extension is a coalgebra map for the diagonal coproduct
    for op in itertools.product(range(3), repeat=3):
        assert check_coalgebra_map(z3, op).ok
    # spreading one basis vector over two breaks both compatibilities
    spread = [ga_add(ga_basis(0), ga_basis(1)), ga_basis(1), ga_basis(2)]
    rep = check_coalgebra_map(z3, spread)
    assert not rep.ok
    assert any("coproduct" in n and not ok for n, ok, _ in rep.entries)
    # scaling breaks the counit but a plain permutation does not
    assert check_coalgebra_map(z3, (1, 2, 0)).ok


def test_hopf_equivalence_agrees_everywhere():
    for g, n in ((cyclic_group(2), 2), (cyclic_group(3), 3), (cyclic_group(4), 4)):
        for op in itertools.product(range(n), repeat=n):
            gv, av = check_hopf_equivalence(g, op)
            assert gv == av
    assert check_hopf_equivalence(cyclic_group(2), (1, 0)) == (True, True)
    assert check_hopf_equivalence(cyclic_group(2), (1, 1)) == (False, False)


def test_antipode_averaging():
    rep = check_antipode_averaging(cyclic_group(2))
    assert rep.ok and rep.entries[0][0] == "S squared equals S"
    assert check_antipode_averaging(klein_four_group()).ok
    rep = check_antipode_averaging(cyclic_group(3))
    assert not rep.ok
    assert len(rep.entries) == 1 and "nothing to assert" in rep.entries[0][2]
    # a carrier with non-self-inverse elements mixed in also fails the hypothesis
    assert not check_antipode_averaging(sym3()).ok


SOLVABLE = LieAlgebraSpec.from_brackets(2, {(0, 1): {1: 1}})
PROJ_E1 = [[1, 0], [0, 0]]
PROJ_E2 = [[0, 0], [0, 1]]


def test_lie_spec_and_validation():
    assert validate_lie(SOLVABLE).ok
    assert SOLVABLE.bracket(SOLVABLE.basis(0), SOLVABLE.basis(1)) == SOLVABLE.basis(1)
    assert SOLVABLE.bracket(SOLVABLE.basis(1), SOLVABLE.basis(0)) == \
        tuple(-v for v in SOLVABLE.basis(1))
    # antisymmetry violation
    skew = LieAlgebraSpec(2, [[[0, 0], [0, 1]], [[0, 0], [0, 0]]])
    rep = validate_lie(skew)
    assert not rep.ok and not rep.entry("antisymmetry")[0]
    # Jacobi violation: [e1,e2]=e1, [e1,e3]=e3, [e2,e3]=0
    nojac = LieAlgebraSpec.from_brackets(3, {(0, 1): {0: 1}, (0, 2): {2: 1}})
    rep = validate_lie(nojac)
    assert rep.entry("antisymmetry")[0] and not rep.entry("Jacobi")[0]
    with pytest.raises(TableError):
        LieAlgebraSpec(0, [])


def test_averaging_lie_examples():
    assert check_averaging_lie(SOLVABLE, PROJ_E1).ok
    rep = check_averaging_lie(SOLVABLE, PROJ_E2)
    assert not rep.ok and "fails at (e1, e2)" in rep.lines()[0]
    abelian = LieAlgebraSpec.from_brackets(3, {})
    rng = random.Random(4)
    for _ in range(50):
        M = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        assert check_averaging_lie(abelian, M).ok
    nojac = LieAlgebraSpec.from_brackets(3, {(0, 1): {0: 1}, (0, 2): {2: 1}})
    with pytest.raises(TableError):
        check_averaging_lie(nojac, [[0] * 3] * 3)


def test_leibniz_bracket_and_check():
    br = leibniz_bracket(SOLVABLE, PROJ_E1)
    assert br(SOLVABLE.basis(0), SOLVABLE.basis(1)) == SOLVABLE.basis(1)
    assert br(SOLVABLE.basis(1), SOLVABLE.basis(0)) == SOLVABLE.zero()
    assert check_leibniz(SOLVABLE, PROJ_E1).ok
    # every pair that passes the averaging check passes Leibniz
    abelian = LieAlgebraSpec.from_brackets(2, {})
    pool = [
        (SOLVABLE, PROJ_E1),
        (SOLVABLE, [[0, 0], [0, 0]]),
        (SOLVABLE, [[1, 0], [0, 1]]),
        (SOLVABLE, [[2, 0], [0, 2]]),
        (abelian, [[1, 2], [3, 4]]),
    ]
    for L, M in pool:
        assert check_averaging_lie(L, M).ok
        assert check_leibniz(L, M).ok


def test_mat_apply_row_major():
    M = ((Fraction(1), Fraction(2)), (Fraction(0), Fraction(1)))
    assert mat_apply(M, (Fraction(1), Fraction(1))) == (Fraction(3), Fraction(1))


def test_file_loaders(tmp_path):
    lie = tmp_path / "lie.json"
    lie.write_text(json.dumps(
        {"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"2": "1"}}]}))
    L = load_lie_file(str(lie))
    assert L.c == SOLVABLE.c
    op = tmp_path / "op.json"
    op.write_text(json.dumps({"dim": 2, "matrix": ["1", "0", "0", "0"]}))
    M = load_operator_file(str(op))
    assert M == ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0)))
    nested = load_operator_file({"dim": 2, "matrix": [["1/2", "0"], ["0", "1"]]})
    assert nested[0][0] == Fraction(1, 2)
    with pytest.raises(TableError):
        load_operator_file({"dim": 2, "matrix": ["1", "0"]})
    with pytest.raises(TableError):
        load_operator_file({"dim": 2, "matrix": [0.5, 0, 0, 0]})
    with pytest.raises(TableError):
        load_lie_file({"dim": 2, "brackets": [{"i": 5, "j": 1, "coeffs": {}}]})
    with pytest.raises(TableError):
        load_lie_file({"dim": 2, "brackets": [
            {"i": 1, "j": 2, "coeffs": {"2": "1"}},
            {"i": 1, "j": 2, "coeffs": {"2": "2"}}]})
    # explicit mirrors are honored, missing ones are filled antisymmetrically
    both = load_lie_file({"dim": 2, "brackets": [
        {"i": 1, "j": 2, "coeffs": {"2": "1"}},
        {"i": 2, "j": 1, "coeffs": {"2": "-1"}}]})
    assert both.c == SOLVABLE.c


def test_loaders_reject_malformed_shapes():
    # every wire-shape mistake must surface as TableError, never a raw
    # TypeError/ValueError, so the CLI can map it to a clean usage exit
    with pytest.raises(TableError):
        load_lie_file({"dim": 2, "brackets": {"[1,2]": {"2": "1"}}})
    with pytest.raises(TableError):
        load_lie_file({"dim": 2, "brackets": [["i", "j"]]})
    with pytest.raises(TableError):
        load_lie_file({"dim": 2, "brackets": [{"j": 2, "coeffs": {}}]})
    with pytest.raises(TableError):
        load_lie_file({"dim": "two", "brackets": []})
    with pytest.raises(TableError):
        load_lie_file({"dim": 2, "brackets": [
            {"i": 1, "j": 2, "coeffs": {"x": "1"}}]})
    with pytest.raises(TableError):
        load_lie_file({"dim": 2, "brackets": [
            {"i": 1, "j": 2, "coeffs": {"2": "one"}}]})
    with pytest.raises(TableError):
        load_operator_file({"dim": 2, "matrix": "1 0 0 0"})
    with pytest.raises(TableError):
        load_operator_file({"dim": 2, "matrix": [["1", "0"], "bad row"]})
    with pytest.raises(TableError):
        load_operator_file({"dim": 2, "matrix": [["1", "0"], ["0", "x"]]})
    with pytest.raises(TableError):
        load_operator_file({"dim": True, "matrix": []})
