"""Constant braiding, its Yang-Baxterization and the spectral R-matrix.

The braiding acts on V tensor V for V = C^n with two deformation
parameters; it satisfies a Hecke relation with eigenvalues 1 and -r/s, so
its inverse is a closed-form linear combination of itself and the
identity.  Yang-Baxterization turns it into a one-parameter family, and
the normalized R-matrix (flip times spectral braiding, scaled to have 1 on
the fully diagonal slots) satisfies the quantum Yang-Baxter equation and a
unitarity condition.  Everything here is exact; checks return a boolean
plus a witness for the first failing entry.
"""

from __future__ import annotations

from . import coeff
from .coeff import Frac, ONE, ZERO
from .linalg import Matrix, place_two_site
from .report import CheckReport

r = coeff.r
s = coeff.s


def build_braiding(n: int) -> Matrix:
    """Constant braiding on V tensor V (basis e_i tensor e_j, row-major)."""
    out = Matrix.zeros(n * n)

    def put(i, j, k, l, val):
        # coefficient of E_ij tensor E_kl
        out.rows[(i - 1) * n + (k - 1)][(j - 1) * n + (l - 1)] = val

    one_minus = ONE - r / s
    for i in range(1, n + 1):
        put(i, i, i, i, ONE)
        for j in range(i + 1, n + 1):
            put(j, i, i, j, r)          # r E_ji ox E_ij, i < j
            put(i, j, j, i, s.inv())    # s^-1 E_ij ox E_ji, i < j
            put(j, j, i, i, one_minus)  # (1 - r/s) E_jj ox E_ii, i < j
    return out


def hecke_inverse(B: Matrix, lam1: Frac, lam2: Frac) -> Matrix:
    """Inverse of B from (B - lam1)(B - lam2) = 0."""
    n = B.n
    tr = Matrix.identity(n).scale(lam1 + lam2)
    return (tr - B).scale((lam1 * lam2).inv())


def yang_baxterize(B: Matrix, lam1: Frac, lam2: Frac,
                   arg: Frac | None = None) -> Matrix:
    """lam2^-1 B + arg * lam1 * B^-1, the spectral braid family of B."""
    x = coeff.z if arg is None else arg
    Binv = hecke_inverse(B, lam1, lam2)
    return B.scale(lam2.inv()) + Binv.scale(x * lam1)


def build_spectral_braiding(n: int, arg: Frac | None = None) -> Matrix:
    """Closed form of the Yang-Baxterized braiding (up to overall scale)."""
    x = coeff.z if arg is None else arg
    out = Matrix.zeros(n * n)

    def put(i, j, k, l, val):
        out.rows[(i - 1) * n + (k - 1)][(j - 1) * n + (l - 1)] = val

    one_minus = ONE - r / s
    diag = ONE - x * r / s
    for i in range(1, n + 1):
        put(i, i, i, i, diag)
        for j in range(1, n + 1):
            if i == j:
                continue
            val = (ONE - x) * (r if i > j else s.inv())
            put(i, j, j, i, val)
            if i < j:
                put(i, i, j, j, x * one_minus)
            else:
                put(i, i, j, j, one_minus)
    return out


# normalized R-matrix entry kernels, as functions of the ratio argument
def rho_lt(x: Frac) -> Frac:
    """Diagonal slot E_ii ox E_jj for i < j."""
    return (ONE - x) / (s * (ONE - x * r / s))


def rho_gt(x: Frac) -> Frac:
    """Diagonal slot E_ii ox E_jj for i > j."""
    return (ONE - x) * r / (ONE - x * r / s)


def sigma_lt(x: Frac) -> Frac:
    """Swap slot E_ij ox E_ji for i < j."""
    return x * (ONE - r / s) / (ONE - x * r / s)


def sigma_gt(x: Frac) -> Frac:
    """Swap slot E_ij ox E_ji for i > j."""
    return (ONE - r / s) / (ONE - x * r / s)


def build_R(n: int, arg: Frac | None = None) -> Matrix:
    """Normalized spectral R-matrix: flip * spectral braiding, rescaled."""
    x = coeff.z if arg is None else arg
    out = Matrix.zeros(n * n)

    def put(i, j, k, l, val):
        out.rows[(i - 1) * n + (k - 1)][(j - 1) * n + (l - 1)] = val

    for i in range(1, n + 1):
        put(i, i, i, i, ONE)
        for j in range(1, n + 1):
            if i == j:
                continue
            put(i, i, j, j, rho_gt(x) if i > j else rho_lt(x))
            put(i, j, j, i, sigma_gt(x) if i > j else sigma_lt(x))
    return out


def flip(n: int) -> Matrix:
    out = Matrix.zeros(n * n)
    for i in range(n):
        for j in range(n):
            out.rows[i * n + j][j * n + i] = ONE
    return out


# -- checks -------------------------------------------------------------


def _first_diff(A: Matrix, B: Matrix):
    for i in range(A.n):
        for j in range(A.m):
            if A.rows[i][j] != B.rows[i][j]:
                return (i, j, str(A.rows[i][j]), str(B.rows[i][j]))
    return None


def check_hecke(B: Matrix, n: int | None = None) -> CheckReport:
    """(B - 1)(B + r/s) = 0."""
    N = B.n
    lhs = (B - Matrix.identity(N)) * (B + Matrix.identity(N).scale(r / s))
    wit = _first_diff(lhs, Matrix.zeros(N))
    return CheckReport.from_bool("rmatrix.hecke", wit is None,
                                 {"n": n}, wit)


def check_braid(B: Matrix, n: int) -> CheckReport:
    """B_1 B_2 B_1 = B_2 B_1 B_2 on V tensor 3 for a constant braiding."""
    B1 = B.kron(Matrix.identity(n))
    B2 = Matrix.identity(n).kron(B)
    wit = _first_diff(B1 * B2 * B1, B2 * B1 * B2)
    return CheckReport.from_bool("rmatrix.braid", wit is None,
                                 {"n": n}, wit)


def check_spectral_braid(n: int, builder=build_spectral_braiding
                         ) -> CheckReport:
    """B_1(z) B_2(zw) B_1(w) = B_2(w) B_1(zw) B_2(z)."""
    z, w = coeff.z, coeff.w

    def b1(x):
        return builder(n, x).kron(Matrix.identity(n))

    def b2(x):
        return Matrix.identity(n).kron(builder(n, x))

    lhs = b1(z) * b2(z * w) * b1(w)
    rhs = b2(w) * b1(z * w) * b2(z)
    wit = _first_diff(lhs, rhs)
    return CheckReport.from_bool("rmatrix.spectral-braid", wit is None,
                                 {"n": n}, wit)


def check_qybe(n: int, builder=build_R) -> CheckReport:
    """R_12(z) R_13(zw) R_23(w) = R_23(w) R_13(zw) R_12(z)."""
    z, w = coeff.z, coeff.w
    R12 = place_two_site(builder(n, z), n, 3, 1, 2)
    R13 = place_two_site(builder(n, z * w), n, 3, 1, 3)
    R23 = place_two_site(builder(n, w), n, 3, 2, 3)
    wit = _first_diff(R12 * R13 * R23, R23 * R13 * R12)
    return CheckReport.from_bool("rmatrix.qybe", wit is None, {"n": n}, wit)


def check_unitarity(n: int, builder=build_R) -> CheckReport:
    """R_21(z) R(z^-1) = 1."""
    z = coeff.z
    R21 = place_two_site(builder(n, z), n, 2, 2, 1)
    Rinv_arg = builder(n, z.inv())
    wit = _first_diff(R21 * Rinv_arg, Matrix.identity(n * n))
    return CheckReport.from_bool("rmatrix.unitarity", wit is None,
                                 {"n": n}, wit)


def suite(n: int) -> list:
    """All constant and spectral checks for one size."""
    B = build_braiding(n)
    reports = [check_hecke(B, n), check_braid(B, n),
               check_spectral_braid(n), check_qybe(n), check_unitarity(n)]
    lam1, lam2 = ONE, ZERO - r / s
    yb = yang_baxterize(B, lam1, lam2)
    ok, wit = proportional(yb, build_spectral_braiding(n))
    reports.append(CheckReport.from_bool(
        "rmatrix.yang-baxterize-proportional", ok, {"n": n},
        None if ok else wit))
    return reports


def proportional(A: Matrix, B: Matrix):
    """Is A = c * B for one scalar c?  Returns (bool, c or witness)."""
    ref = None
    for i in range(A.n):
        for j in range(A.m):
            a, b = A.rows[i][j], B.rows[i][j]
            if bool(a) != bool(b):
                return False, (i, j, str(a), str(b))
            if b and ref is None:
                ref = a / b
    if ref is None:
        return True, ONE  # both zero
    scaled = B.scale(ref)
    wit = _first_diff(A, scaled)
    return (wit is None), (ref if wit is None else wit)


def matrix_to_json(M: Matrix):
    """Entry list serialization with canonical fraction strings."""
    return {
        "shape": [M.n, M.m],
        "entries": [[i, j, str(x)] for i, j, x in M.entries()],
    }
