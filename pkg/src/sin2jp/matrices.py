"""3x3 integer matrix helpers (row-major tuples of tuples)."""

from __future__ import annotations

Mat3 = tuple[tuple[int, int, int], ...]

IDENTITY: Mat3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def mat(rows) -> Mat3:
    return tuple(tuple(int(x) for x in row) for row in rows)


def mat_mul(a: Mat3, b: Mat3) -> Mat3:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def mat_vec(a: Mat3, v):
    """Matrix times vector; vector entries may be any ring elements that
    support int scaling and addition."""
    return tuple(
        a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2] for i in range(3)
    )


def mat_transpose(a: Mat3) -> Mat3:
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))


def mat_det(a: Mat3) -> int:
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def mat_adjugate(a: Mat3) -> Mat3:
    def cof(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        minor = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
        return minor if (i + j) % 2 == 0 else -minor

    return tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))


def mat_inverse_unimodular(a: Mat3) -> Mat3:
    """Exact inverse for det = +-1 matrices (adjugate divided by det)."""
    d = mat_det(a)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det={d})")
    adj = mat_adjugate(a)
    return adj if d == 1 else tuple(tuple(-x for x in row) for row in adj)


def mat_is_identity(a: Mat3) -> bool:
    return a == IDENTITY


def char_poly(a: Mat3) -> tuple[int, int, int, int]:
    """Coefficients of det(tI - A) as (1, -tr, m, -det), highest first;
    m is the sum of the principal 2x2 minors."""
    tr = a[0][0] + a[1][1] + a[2][2]
    m = (
        a[1][1] * a[2][2] - a[1][2] * a[2][1]
        + a[0][0] * a[2][2] - a[0][2] * a[2][0]
        + a[0][0] * a[1][1] - a[0][1] * a[1][0]
    )
    return (1, -tr, m, -mat_det(a))


def perm_matrix(perm) -> Mat3:
    """Basis permutation with columns e_{perm[j]}: applying it to
    coordinates sends c to (c[perm[0]], c[perm[1]], c[perm[2]])."""
    return tuple(
        tuple(1 if i == perm[j] else 0 for j in range(3)) for i in range(3)
    )


def parse_matrix(text: str) -> Mat3:
    """Rows separated by ';', entries by ','."""
    rows = [r for r in text.strip().split(";") if r.strip()]
    if len(rows) != 3:
        raise ValueError("expected three ';'-separated rows")
    out = []
    for r in rows:
        entries = [e for e in r.split(",")]
        if len(entries) != 3:
            raise ValueError("expected three ','-separated entries per row")
        out.append(tuple(int(e) for e in entries))
    return tuple(out)


def format_matrix(a: Mat3) -> str:
    return ";".join(",".join(str(x) for x in row) for row in a)
