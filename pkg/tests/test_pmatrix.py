import random

import pytest

from pfmat.pfield import make_partial_field
from pfmat.pmatrix import (LabeledMatrix, MatrixError, format_matrix,
                           parse_matrix)


def mat(field_id, rows, cols, grid):
    return LabeledMatrix(make_partial_field(field_id), rows, cols, grid)


def random_matrix(rng, field, m, n, zero_rate=0.2):
    units = field.units()
    grid = [[field.zero if rng.random() < zero_rate else rng.choice(units)
             for _ in range(n)] for _ in range(m)]
    return LabeledMatrix(field, ["x%d" % i for i in range(m)],
                         ["y%d" % j for j in range(n)], grid)


def test_determinant_small_cases():
    A = mat("gf5", ["x1", "x2"], ["y1", "y2"], [[1, 1], [1, 2]])
    assert A.determinant().payload == 1
    I3 = mat("gf3", ["a", "b", "c"], ["d", "e", "f"],
             [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert I3.determinant() == I3.field.one
    D = mat("dyadic", ["x1", "x2"], ["y1", "y2"], [[1, 1], [1, -1]])
    assert D.determinant().payload == (-1, 1)   # -2


def test_determinant_bareiss_matches_cofactor():
    rng = random.Random(11)
    for field_id in ("gf5", "gf4", "regular", "dyadic", "sixthroots"):
        f = make_partial_field(field_id)
        for _ in range(25):
            A = random_matrix(rng, f, 5, 5, zero_rate=0.3)
            grid = A.entries
            from pfmat.pmatrix import _det_bareiss, _det_cofactor
            assert _det_bareiss(f, grid) == _det_cofactor(f, grid)


def test_is_pmatrix_examples():
    D = mat("dyadic", ["x1", "x2"], ["y1", "y2"], [[1, 1], [1, -1]])
    assert D.is_pmatrix().verdict
    R = mat("regular", ["x1", "x2"], ["y1", "y2"], [[1, 1], [-1, 2]])
    cert = R.is_pmatrix()
    assert not cert.verdict
    assert cert.witness == (("x1", "x2"), ("y1", "y2"))   # det = 3, outside {0,+-1}
    E = mat("gf7", [], [], [])
    assert E.is_pmatrix().verdict


def test_is_pmatrix_least_witness():
    R = mat("regular", ["x1", "x2"], ["y1", "y2"], [[2, 1], [-1, 3]])
    cert = R.is_pmatrix()
    assert cert.witness == (("x1",), ("y1",))   # the 1x1 entry 2 comes first


def test_pivot_worked_example():
    A = mat("gf5", ["x1", "x2"], ["y1", "y2"], [[2, 1], [1, 1]])
    B = A.pivot("x1", "y1")
    assert B.rows == ("y1", "x2")
    assert B.cols == ("x1", "y2")
    assert [[v.payload for v in row] for row in B.entries] == [[3, 3], [2, 3]]


def test_pivot_1x1_and_errors():
    A = mat("gf5", ["x"], ["y"], [[2]])
    assert A.pivot("x", "y").entry("y", "x").payload == 3
    Z = mat("gf5", ["x"], ["y"], [[0]])
    with pytest.raises(MatrixError):
        Z.pivot("x", "y")
    R = mat("regular", ["x"], ["y"], [[2]])
    with pytest.raises(MatrixError):
        R.pivot("x", "y")


def test_pivot_back_is_scaling_equivalent():
    rng = random.Random(3)
    f = make_partial_field("gf4")
    for _ in range(50):
        A = random_matrix(rng, f, 3, 4, zero_rate=0.25)
        spots = [(x, y) for x in A.rows for y in A.cols
                 if not A.entry(x, y).is_zero()]
        if not spots:
            continue
        x, y = rng.choice(spots)
        B = A.pivot(x, y).pivot(y, x)
        assert set(B.rows) == set(A.rows)
        assert B.submatrix(A.rows, A.cols).scaling_equivalent(A)


def test_rank():
    assert mat("gf3", ["a", "b", "c"], ["d", "e", "f"],
               [[0, 0, 0], [0, 0, 0], [0, 0, 0]]).rank() == 0
    assert mat("gf5", ["a", "b"], ["c", "d"], [[1, 1], [1, 2]]).rank() == 2
    assert mat("gf3", ["a", "b"], ["c", "d"], [[1, 1], [2, 2]]).rank() == 1
    assert mat("regular", ["a", "b"], ["c", "d"], [[2, 4], [1, 2]]).rank() == 1


def test_rank_preserved_by_homomorphism():
    from pfmat.pfield import homomorphism
    rng = random.Random(5)
    f = make_partial_field("dyadic")
    phi = homomorphism("dyadic", "gf5")
    for _ in range(30):
        A = random_matrix(rng, f, 3, 3, zero_rate=0.3)
        # dyadic entries here are units, so subdets stay in Z[1/2]
        B = A.applied(phi)
        assert A.rank() == B.rank()


def test_normalize_worked_example():
    A = mat("gf5", ["x1", "x2"], ["y1", "y2"], [[2, 4], [1, 2]])
    N = A.normalize([("x1", "y1"), ("x1", "y2"), ("x2", "y1")])
    assert [[v.payload for v in row] for row in N.entries] == [[1, 1], [1, 4]]
    # already normalized input is unchanged
    assert N.normalize([("x1", "y1"), ("x1", "y2"), ("x2", "y1")]) == N


def test_normalize_diagonal():
    A = mat("gf7", ["x1", "x2"], ["y1", "y2"], [[3, 0], [0, 5]])
    N = A.normalize([("x1", "y1"), ("x2", "y2")])
    assert N.entry("x1", "y1").payload == 1
    assert N.entry("x2", "y2").payload == 1


def test_normalize_rejects_bad_forest():
    A = mat("gf5", ["x1", "x2"], ["y1", "y2"], [[1, 1], [1, 2]])
    with pytest.raises(MatrixError):
        A.normalize([("x1", "y1")])                       # not maximal
    with pytest.raises(MatrixError):
        A.normalize([("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2")])
    B = mat("gf5", ["x1", "x2"], ["y1", "y2"], [[1, 1], [0, 2]])
    with pytest.raises(MatrixError):
        B.normalize([("x2", "y1"), ("x1", "y2"), ("x1", "y1")])  # uses a zero cell


def test_scaling_equivalence():
    A = mat("gf5", ["x1", "x2"], ["y1", "y2"], [[1, 1], [1, 2]])
    f = A.field
    scaled = LabeledMatrix(f, A.rows, A.cols,
                           [[f.mul(v, f.from_int(2)) for v in A.entries[0]],
                            list(A.entries[1])])
    ok, cert = A.scaling_equivalent(scaled, with_certificate=True)
    assert ok
    rs, cs = cert
    for x in A.rows:
        for y in A.cols:
            assert f.mul(f.mul(rs[x], A.entry(x, y)), cs[y]) == scaled.entry(x, y)
    B = mat("gf5", ["x1", "x2"], ["y1", "y2"], [[1, 1], [1, 3]])
    assert not A.scaling_equivalent(B)


def test_scaling_equivalence_different_support():
    A = mat("gf5", ["x1", "x2"], ["y1", "y2"], [[1, 1], [1, 2]])
    B = mat("gf5", ["x1", "x2"], ["y1", "y2"], [[1, 0], [1, 2]])
    assert A.scaling_equivalent(B) is False


def test_support_graph():
    I2 = mat("gf3", ["x1", "x2"], ["y1", "y2"], [[1, 0], [0, 1]])
    assert I2.support_graph() == {"x1": ("y1",), "y1": ("x1",),
                                  "x2": ("y2",), "y2": ("x2",)}
    K22 = mat("gf3", ["x1", "x2"], ["y1", "y2"], [[1, 1], [1, 2]])
    g = K22.support_graph()
    assert g["x1"] == ("y1", "y2") and g["y2"] == ("x1", "x2")


def test_pmatrix_invariant_under_scaling_pivot_transpose():
    rng = random.Random(17)
    f = make_partial_field("gf5")
    for _ in range(40):
        A = random_matrix(rng, f, 3, 3, zero_rate=0.2)
        assert A.is_pmatrix().verdict            # over a field, always
        assert A.transpose().is_pmatrix().verdict
        spots = [(x, y) for x in A.rows for y in A.cols
                 if not A.entry(x, y).is_zero()]
        if spots:
            x, y = rng.choice(spots)
            assert A.pivot(x, y).is_pmatrix().verdict


def test_text_round_trip():
    A = mat("dyadic", ["x1", "x2"], ["y1", "y2"], [[1, 1], [1, -1]])
    name, B = parse_matrix(format_matrix(A, "demo"))
    assert name == "demo" and B == A
    C = mat("nearregular", ["p", "q"], ["r", "s"],
            ["a 1 ; 1 (1-a)".split()[0:2], ["1", "(1-a)"]])
    name2, D = parse_matrix(format_matrix(C, "nr"))
    assert D == C
    with pytest.raises(MatrixError):
        parse_matrix("pmatrix x over gf6\nrows a\ncols b\na: 1\n")
    with pytest.raises(MatrixError):
        parse_matrix("rows a\ncols b\na: 1\n")
