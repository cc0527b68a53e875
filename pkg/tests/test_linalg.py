from fractions import Fraction

from qlie import linalg


def F(a, b=1):
    return Fraction(a, b)


def test_rank_and_echelon():
    m = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]
    assert linalg.rank(m) == 2
    ech, pivots = linalg.row_echelon(m)
    assert pivots == [0, 1]


def test_nullspace_annihilates(rng):
    for _ in range(20):
        rows = [
            [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(5)] for _ in range(3)
        ]
        basis = linalg.nullspace(rows, n_cols=5)
        assert len(basis) == 5 - linalg.rank(rows)
        for vec in basis:
            for row in rows:
                assert sum(a * b for a, b in zip(row, vec)) == 0


def test_solve_consistent_and_inconsistent():
    rows = [[F(1), F(1)], [F(1), F(-1)]]
    sol = linalg.solve(rows, [F(2), F(0)])
    assert sol == [F(1), F(1)]
    rows2 = [[F(1), F(1)], [F(2), F(2)]]
    assert linalg.solve(rows2, [F(1), F(3)]) is None
    sol3 = linalg.solve(rows2, [F(1), F(2)])
    assert sol3 is not None
    assert sol3[0] + sol3[1] == 1


def plain_gauss_rank(rows):
    # independent oracle: ordinary fraction Gaussian elimination
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    rank = 0
    cols = len(m[0])
    for c in range(cols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c]:
                factor = m[i][c] / m[rank][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def test_bareiss_rank_matches_plain_gauss(rng):
    for _ in range(40):
        n_rows = rng.randint(1, 6)
        n_cols = rng.randint(1, 6)
        rows = [
            [F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n_cols)]
            for _ in range(n_rows)
        ]
        assert linalg.rank(rows) == plain_gauss_rank(rows)


def test_invert_round_trip(rng):
    for _ in range(10):
        n = 4
        m = [[F(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)]
        if linalg.rank(m) < n:
            continue
        inv = linalg.invert(m)
        for i in range(n):
            for j in range(n):
                assert sum(m[i][k] * inv[k][j] for k in range(n)) == (1 if i == j else 0)
