"""Two-loop representations built from quaternion algebras over Q.

For (a, b) with a not a square, L = Q(sqrt a) splits the quaternion algebra
D = (a, b / Q).  The loops act on L^2 through a splitting isomorphism; viewed
over Q the centralizer of the loops is D^op, and the Hilbert symbols of (a, b)
decide whether the representation descends to Q.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .linalg import (Matrix, QuadExt, as_fraction, conj, is_rational_square, kernel_basis, quad_conj_matrix,
                     rank, restrict_scalars, solve, squarefree_decomposition)

HEIGHT_CAP = 10**6
INF = "inf"


class WildLabError(ValueError):
    pass


class SquareA(WildLabError):
    pass


class NoCyclicVector(AssertionError):
    pass


class NonScalarDouble(AssertionError):
    pass


class NotAbsolutelyIrreducible(WildLabError):
    pass


@dataclass(frozen=True)
class QuaternionInput:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))
        if self.a == 0 or self.b == 0:
            raise WildLabError("a and b must be nonzero")

    @property
    def d(self) -> int:
        return squarefree_decomposition(self.a)[1]


@dataclass(frozen=True)
class TwoLoopRep:
    phi1: Matrix
    phi2: Matrix
    d: int
    origin: QuaternionInput | None = field(default=None, compare=False)


def _qmat(rows, d: int) -> Matrix:
    return Matrix.from_rows([[x if isinstance(x, QuadExt) else QuadExt(x, 0, d) for x in r] for r in rows])


def split_embed(inp: QuaternionInput) -> TwoLoopRep:
    """Images of i and j under the splitting isomorphism L (x) D -> M_2(L)."""
    if is_rational_square(inp.a):
        raise SquareA(f"a = {inp.a} is a square in Q, so Q(sqrt a) is not a field")
    d = inp.d
    r = QuadExt.sqrt(inp.a)
    phi1 = _qmat([[r, 0], [0, -r]], d)
    phi2 = _qmat([[0, inp.b], [1, 0]], d)
    ident = Matrix.identity(2)
    assert phi1 @ phi1 == ident.scale(inp.a)
    assert phi2 @ phi2 == ident.scale(inp.b)
    assert phi1 @ phi2 == -(phi2 @ phi1)
    # Galois conjugation acts on the image of D as conjugation by phi2
    assert quad_conj_matrix(phi1) == -phi1 and quad_conj_matrix(phi2) == phi2
    return TwoLoopRep(phi1, phi2, d, inp)


def _flat(m: Matrix) -> list:
    return list(m.entries)


def generated_algebra_dim_L(rep: TwoLoopRep) -> int:
    """Dimension over L of the algebra generated by I, phi1, phi2."""
    gens = [rep.phi1, rep.phi2]
    basis = [Matrix.identity(rep.phi1.rows)]
    dim = 1
    while True:
        cand = basis + [x @ g for x in basis for g in gens]
        new_dim = rank(Matrix.from_rows([_flat(m) for m in cand]))
        if new_dim == dim:
            return dim
        # keep a spanning set of independent elements
        kept: list[Matrix] = []
        for m in cand:
            if rank(Matrix.from_rows([_flat(x) for x in kept + [m]])) > len(kept):
                kept.append(m)
        basis, dim = kept, new_dim


def is_absolutely_irreducible(rep: TwoLoopRep) -> bool:
    n = rep.phi1.rows
    return generated_algebra_dim_L(rep) == n * n


# --- Hilbert symbols -------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    if n > HEIGHT_CAP:
        raise WildLabError(f"{n} exceeds the factorization cap {HEIGHT_CAP}")
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _square_class_int(x) -> int:
    x = as_fraction(x)
    if x == 0:
        raise WildLabError("Hilbert symbol of zero")
    if abs(x.numerator) > HEIGHT_CAP or x.denominator > HEIGHT_CAP:
        raise WildLabError(f"{x} exceeds the height cap {HEIGHT_CAP}")
    # a/b and a*b differ by the square b**2
    return x.numerator * x.denominator


def _split(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def hilbert_symbol(a, b, place) -> int:
    """(a, b) at a place of Q: a prime p or ``"inf"``."""
    a, b = _square_class_int(a), _square_class_int(b)
    if place == INF or place == math.inf:
        return -1 if a < 0 and b < 0 else 1
    if not isinstance(place, int) or not _is_prime(place):
        raise WildLabError(f"not a place of Q: {place!r}")
    p = place
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    leg = lambda x: 1 if pow(x % p, (p - 1) // 2, p) == 1 else -1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * leg(u) ** beta * leg(v) ** alpha


def relevant_places(*xs) -> list:
    """inf, 2, then the odd primes dividing any numerator or denominator."""
    primes = set()
    for x in xs:
        x = as_fraction(x)
        primes.update(prime_factors(x.numerator))
        primes.update(prime_factors(x.denominator))
    return [INF, 2] + sorted(p for p in primes if p != 2)


@dataclass(frozen=True)
class DivisionVerdict:
    is_division: bool
    certificates: tuple[tuple[object, int], ...]

    @property
    def obstruction(self) -> str:
        return "NontrivialOrderTwo" if self.is_division else "Trivial"


def division_verdict(inp: QuaternionInput) -> DivisionVerdict:
    certs = tuple((p, hilbert_symbol(inp.a, inp.b, p)) for p in relevant_places(inp.a, inp.b))
    return DivisionVerdict(any(s == -1 for _, s in certs), certs)


# --- centralizer -----------------------------------------------------------

def commutant(mats: list[Matrix]) -> list[Matrix]:
    """Basis of {X : X A = A X for every A in mats}."""
    n = mats[0].rows
    rows = []
    for a in mats:
        for i in range(n):
            for j in range(n):
                # (X A - A X)[i, j]
                row = [Fraction(0)] * (n * n)
                for k in range(n):
                    row[i * n + k] += a[k, j]
                    row[k * n + j] -= a[i, k]
                rows.append(row)
    return [Matrix(n, n, v) for v in kernel_basis(Matrix.from_rows(rows, n * n))]


def _primitive(m: Matrix) -> Matrix:
    den = math.lcm(*[x.denominator for x in m.entries])
    ints = [int(x * den) for x in m.entries]
    g = math.gcd(*ints) or 1
    return Matrix(m.rows, m.cols, [x // g for x in ints])


def structure_constants(basis: list[Matrix]) -> list[list[tuple]]:
    """c[k][l] = coordinates of basis[k] @ basis[l] in the basis."""
    coords = Matrix.from_columns([_flat(b) for b in basis], basis[0].rows * basis[0].cols)
    table = []
    for x in basis:
        row = []
        for y in basis:
            c = solve(coords, _flat(x @ y))
            if c is None:
                raise AssertionError("basis does not span a subalgebra")
            row.append(c)
        table.append(row)
    return table


def is_associative(table) -> bool:
    n = len(table)
    for k, l, m in product(range(n), repeat=3):
        left = [sum(table[k][l][p] * table[p][m][q] for p in range(n)) for q in range(n)]
        right = [sum(table[l][m][p] * table[k][p][q] for p in range(n)) for q in range(n)]
        if left != right:
            return False
    return True


NILPOTENT_BOUND = 3


def nilpotent_scan(basis: list[Matrix], bound: int = NILPOTENT_BOUND) -> tuple[tuple[int, ...], Matrix] | None:
    """First nonzero x = sum c_k B_k with |c_k| <= bound and x @ x = 0."""
    prim = [_primitive(b) for b in basis]
    for coeffs in product(range(-bound, bound + 1), repeat=len(prim)):
        if not any(coeffs):
            continue
        x = Matrix.zeros(prim[0].rows, prim[0].cols)
        for c, b in zip(coeffs, prim):
            if c:
                x = x + b.scale(c)
        if (x @ x).is_zero():
            return coeffs, x
    return None


@dataclass
class CentralizerReport:
    dimension: int
    basis: list
    structure_constants: list
    commutative: bool
    associative: bool
    unital: bool
    is_division: bool | None = None
    obstruction: str | None = None
    certificates: tuple = ()
    nilpotent_witness: tuple | None = None


def restricted_loops(rep: TwoLoopRep) -> tuple[Matrix, Matrix]:
    return restrict_scalars(rep.phi1), restrict_scalars(rep.phi2)


def centralizer(rep: TwoLoopRep) -> CentralizerReport:
    """Endomorphisms over Q of the restricted two-loop representation."""
    big1, big2 = restricted_loops(rep)
    basis = commutant([big1, big2])
    for x in basis:
        assert x @ big1 == big1 @ x and x @ big2 == big2 @ x
    table = structure_constants(basis)
    n = big1.rows
    coords = Matrix.from_columns([_flat(b) for b in basis], n * n)
    report = CentralizerReport(
        dimension=len(basis),
        basis=basis,
        structure_constants=table,
        commutative=all(x @ y == y @ x for x in basis for y in basis),
        associative=is_associative(table) if len(basis) <= 4 else True,
        unital=solve(coords, _flat(Matrix.identity(n))) is not None,
    )
    if rep.origin is not None:
        verdict = division_verdict(rep.origin)
        report.is_division = verdict.is_division
        report.obstruction = verdict.obstruction
        report.certificates = verdict.certificates
    if len(basis) == 4:
        found = nilpotent_scan(basis)
        if found is None and report.is_division is False:
            # split but no small witness: widen the box once
            found = nilpotent_scan(basis, 2 * NILPOTENT_BOUND)
        if found is not None:
            report.nilpotent_witness = found
    return report


def quaternion_right_mult(a, b) -> tuple[Matrix, Matrix]:
    """Right multiplication by i and j on D = (a, b) in the basis 1, i, j, ij."""
    a, b = as_fraction(a), as_fraction(b)
    # images of 1, i, j, k under y -> y i:  1i = i, ii = a, ji = -k, ki = -a j
    r_i = Matrix.from_columns([[0, 1, 0, 0], [a, 0, 0, 0], [0, 0, 0, -1], [0, 0, -a, 0]], 4)
    # y -> y j:  1j = j, ij = k, jj = b, kj = b i
    r_j = Matrix.from_columns([[0, 0, 1, 0], [0, 0, 0, 1], [b, 0, 0, 0], [0, b, 0, 0]], 4)
    return r_i, r_j


@dataclass(frozen=True)
class OppositeMatch:
    matched: bool
    cyclic_vector: int
    right_i: Matrix
    right_j: Matrix
    relations: dict


def identify_opposite(rep: TwoLoopRep, report: CentralizerReport, a=None, b=None) -> OppositeMatch:
    """Transport the centralizer to D through d -> Phi(d) u and find R_i, R_j in it."""
    if report.dimension != 4:
        raise WildLabError("identification needs a 4-dimensional centralizer")
    if a is None or b is None:
        if rep.origin is None:
            raise WildLabError("quaternion parameters unknown")
        a, b = rep.origin.a, rep.origin.b
    a, b = as_fraction(a), as_fraction(b)
    big1, big2 = restricted_loops(rep)
    images = [Matrix.identity(4), big1, big2, big1 @ big2]
    for k in range(4):
        t = Matrix.from_columns([m.column(k) for m in images], 4)
        if t.det() != 0:
            break
    else:
        raise NoCyclicVector("no standard basis vector generates the module")
    t_inv = t.inverse()
    moved = [t_inv @ c @ t for c in report.basis]
    r_i, r_j = quaternion_right_mult(a, b)
    coords = Matrix.from_columns([_flat(m) for m in moved], 16)
    in_span = solve(coords, _flat(r_i)) is not None and solve(coords, _flat(r_j)) is not None
    ident = Matrix.identity(4)
    relations = {
        "I'^2 = a": r_i @ r_i == ident.scale(a),
        "J'^2 = b": r_j @ r_j == ident.scale(b),
        "I'J' = -J'I'": r_i @ r_j == -(r_j @ r_i),
    }
    return OppositeMatch(in_span and all(relations.values()), k, r_i, r_j, relations)


# --- descent ---------------------------------------------------------------

@dataclass(frozen=True)
class DescentCertificate:
    space_dim: int
    lambda_values: tuple[Fraction, ...]
    obstructed: bool
    certificates: tuple = ()


def semilinear_intertwiners(rep: TwoLoopRep) -> list[Matrix]:
    """Rational basis of {Q in M_2(L) : phi_i Q = Q conj(phi_i)}."""
    d = rep.d
    n = rep.phi1.rows
    conj1, conj2 = quad_conj_matrix(rep.phi1), quad_conj_matrix(rep.phi2)
    units = []
    for pos in range(n * n):
        for part in (QuadExt(1, 0, d), QuadExt(0, 1, d)):
            entries = [QuadExt(0, 0, d)] * (n * n)
            entries[pos] = part
            units.append(Matrix(n, n, entries))
    columns = []
    for u in units:
        col = []
        for phi, cphi in ((rep.phi1, conj1), (rep.phi2, conj2)):
            for x in (phi @ u - u @ cphi).entries:
                x = x if isinstance(x, QuadExt) else QuadExt(x, 0, d)
                col += [x.a0, x.a1]
        columns.append(col)
    system = Matrix.from_columns(columns, len(columns[0]))
    out = []
    for v in kernel_basis(system):
        out.append(Matrix(n, n, [QuadExt(v[2 * k], v[2 * k + 1], d) for k in range(n * n)]))
    return out


def descent_certificate(rep: TwoLoopRep) -> DescentCertificate:
    if not is_absolutely_irreducible(rep):
        raise NotAbsolutelyIrreducible("descent certificate needs an absolutely irreducible input")
    sols = semilinear_intertwiners(rep)
    lambdas = []
    for q in sols:
        double = q @ quad_conj_matrix(q)
        lam = double[0, 0]
        if double != Matrix.identity(q.rows).scale(lam) or not conj(lam) == lam:
            raise NonScalarDouble(f"Q conj(Q) = {double} is not a rational scalar")
        lambdas.append(lam.a0 if isinstance(lam, QuadExt) else as_fraction(lam))
    certs = []
    obstructed = True
    for lam in lambdas:
        if lam == 0:
            continue
        symbols = tuple((p, hilbert_symbol(rep.d, lam, p)) for p in relevant_places(rep.d, lam))
        certs.append((lam, symbols))
        if all(s == 1 for _, s in symbols):
            obstructed = False
    return DescentCertificate(len(sols), tuple(lambdas), obstructed, tuple(certs))
