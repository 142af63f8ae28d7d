"""Dickson trilinear / bilinear forms, invariance certificates, and the
mod-l generation certificate for the realized rank-7 triple.

Basis order throughout: (x0, x1, x2, x3, x1', x2', x3'), so the primed
coordinates sit at indices 4, 5, 6.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .convolution import RigidTuple, local_profile
from .matrix import Matrix
from .rings import QQ, PrimeField


class DenominatorClash(ValueError):
    pass


DIM = 7

# printed monomials of the cubic form, as index triples
_DICKSON_MONOMIALS = ((0, 1, 4), (0, 2, 5), (0, 3, 6), (1, 2, 3), (4, 5, 6))


def _perm_sign(a, b):
    """Sign of the permutation taking tuple a to tuple b (distinct entries)."""
    perm = [a.index(x) for x in b]
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


class TrilinearForm:
    """Alternating 7x7x7 coefficient tensor over an exact ring.

    A wedge monomial x_i x_j x_k (i < j < k) stands for the alternating
    tensor with coefficient +1 at (i,j,k) and the sign of the permutation
    at the other orderings.
    """

    def __init__(self, ring, entries, alternating=True):
        self.ring = ring
        self.entries = dict(entries)  # (i,j,k) -> nonzero coefficient
        self.alternating = alternating
        if alternating and not self.is_alternating():
            raise ValueError("tensor marked alternating is not")

    def coeff(self, i, j, k):
        return self.entries.get((i, j, k), self.ring.zero)

    def is_alternating(self):
        R = self.ring
        for (i, j, k), v in self.entries.items():
            if len({i, j, k}) < 3:
                return False
            for perm in itertools.permutations((i, j, k)):
                want = v if _perm_sign((i, j, k), perm) == 1 else R.neg(v)
                if not R.eq(self.entries.get(perm, R.zero), want):
                    return False
        return True

    def evaluate(self, u, v, w):
        R = self.ring
        acc = R.zero
        for (i, j, k), c in self.entries.items():
            acc = R.add(acc, R.mul(R.mul(c, u[i]), R.mul(v[j], w[k])))
        return acc

    def transform(self, M: Matrix) -> "TrilinearForm":
        """Pullback c(Mx, My, Mz), exact."""
        R = self.ring
        out = {}
        for (a, b, c), v in self.entries.items():
            row_a, row_b, row_c = M.data[a], M.data[b], M.data[c]
            for i in range(DIM):
                if R.is_zero(row_a[i]):
                    continue
                va = R.mul(v, row_a[i])
                for j in range(DIM):
                    if R.is_zero(row_b[j]):
                        continue
                    vab = R.mul(va, row_b[j])
                    for k in range(DIM):
                        if R.is_zero(row_c[k]):
                            continue
                        key = (i, j, k)
                        out[key] = R.add(out.get(key, R.zero),
                                         R.mul(vab, row_c[k]))
        out = {k: v for k, v in out.items() if not R.is_zero(v)}
        return TrilinearForm(R, out, alternating=False)

    def equals(self, other) -> bool:
        R = self.ring
        keys = set(self.entries) | set(other.entries)
        return all(R.eq(self.coeff(*k), other.coeff(*k)) for k in keys)

    def map_ring(self, ring, fn) -> "TrilinearForm":
        return TrilinearForm(ring, {k: fn(v) for k, v in self.entries.items()},
                             alternating=self.alternating)


class BilinearForm:
    """Symmetric 7x7 Gram matrix over an exact ring."""

    def __init__(self, gram: Matrix):
        self.ring = gram.ring
        self.gram = gram
        if gram != gram.transpose():
            raise ValueError("bilinear form must be symmetric")

    def evaluate(self, u, v):
        R = self.ring
        acc = R.zero
        for i in range(DIM):
            for j in range(DIM):
                acc = R.add(acc, R.mul(R.mul(u[i], self.gram.data[i][j]), v[j]))
        return acc

    def transform(self, M: Matrix) -> "BilinearForm":
        return BilinearForm(M.transpose() * self.gram * M)

    def equals(self, other) -> bool:
        return self.gram == other.gram

    def map_ring(self, ring, fn) -> "BilinearForm":
        return BilinearForm(self.gram.map_entries(ring, fn))


def dickson_form(ring=QQ) -> TrilinearForm:
    """The Dickson trilinear form as an alternating tensor: each wedge
    monomial contributes +1 in its written order and the permutation sign
    on the other orderings."""
    entries = {}
    one = ring.one
    for mono in _DICKSON_MONOMIALS:
        for perm in itertools.permutations(mono):
            entries[perm] = one if _perm_sign(mono, perm) == 1 else ring.neg(one)
    return TrilinearForm(ring, entries)


def g2_bilinear(ring=QQ) -> BilinearForm:
    """Gram matrix of -2 x0^2 + x1 x1' + x2 x2' + x3 x3'.

    The cross terms are read directly as Gram entries (coefficient 1 at
    both (i, i') positions); this normalization is the one invariant
    under the full stabilizer algebra of the trilinear form.
    """
    g = Matrix.zero(ring, DIM, DIM)
    g.data[0][0] = ring.from_int(-2)
    for i, j in ((1, 4), (2, 5), (3, 6)):
        g.data[i][j] = ring.one
        g.data[j][i] = ring.one
    return BilinearForm(g)


def stabilizes(M: Matrix, forms) -> bool:
    """True iff M preserves both forms as exact tensor identities."""
    tri, bil = forms
    M.inverse()  # invertibility is part of the contract
    return tri.transform(M).equals(tri) and bil.transform(M).equals(bil)


# ---------------------------------------------------------------------------
# invariant-form spaces of a tuple

def _sym2_basis():
    return [(i, j) for i in range(DIM) for j in range(i, DIM)]


def _alt3_basis():
    return [(i, j, k) for i in range(DIM) for j in range(i + 1, DIM)
            for k in range(j + 1, DIM)]


def invariant_form_space(t: RigidTuple, degree: int):
    """Dimension and basis of tuple-invariant forms.

    Solves the linear system "tensor fixed by every A_i" inside the
    symmetric square (dimension 28) for degree 2, or the alternating cube
    (dimension 35) for degree 3, which is where the trilinear invariant
    of the rank-7 representation lives.
    """
    R = t.ring
    if t.n != DIM:
        raise ValueError("invariant forms implemented for rank 7")
    if degree == 2:
        basis = _sym2_basis()
        rows = []
        for A in t.matrices:
            cols = []
            for (k, l) in basis:
                S = Matrix.zero(R, DIM, DIM)
                S.data[k][l] = R.add(S.data[k][l], R.one)
                S.data[l][k] = R.add(S.data[l][k], R.one)
                D = A.transpose() * S * A - S
                cols.append([D.data[i][j] for (i, j) in basis])
            for r in range(len(basis)):
                rows.append([cols[c][r] for c in range(len(basis))])
        sysm = Matrix(R, rows)
        null = sysm.nullspace()
        forms = []
        for v in null:
            # same basis tensors as the system: e_k e_l^T + e_l e_k^T
            S = Matrix.zero(R, DIM, DIM)
            for coeff, (k, l) in zip(v, basis):
                S.data[k][l] = R.add(S.data[k][l], coeff)
                S.data[l][k] = R.add(S.data[l][k], coeff)
            forms.append(BilinearForm(S))
        return len(null), forms
    if degree == 3:
        basis = _alt3_basis()
        index = {b: n for n, b in enumerate(basis)}
        rows = []
        for A in t.matrices:
            cols = []
            for mono in basis:
                entries = {perm: (R.one if _perm_sign(mono, perm) == 1
                                  else R.neg(R.one))
                           for perm in itertools.permutations(mono)}
                T = TrilinearForm(R, entries)
                TT = T.transform(A)
                col = [R.zero] * len(basis)
                for (i, j, k), v in TT.entries.items():
                    if i < j < k:
                        col[index[(i, j, k)]] = v
                # subtract the original tensor
                col[index[mono]] = R.sub(col[index[mono]], R.one)
                cols.append(col)
            for r in range(len(basis)):
                rows.append([cols[c][r] for c in range(len(basis))])
        sysm = Matrix(R, rows)
        null = sysm.nullspace()
        forms = []
        for v in null:
            entries = {}
            for coeff, mono in zip(v, basis):
                if R.is_zero(coeff):
                    continue
                for perm in itertools.permutations(mono):
                    entries[perm] = (coeff if _perm_sign(mono, perm) == 1
                                     else R.neg(coeff))
            forms.append(TrilinearForm(R, entries))
        return len(null), forms
    raise ValueError("degree must be 2 or 3")


def _symmetrize(R, S):
    out = Matrix.zero(R, S.rows, S.cols)
    half = R.div(R.one, R.from_int(2))
    for i in range(S.rows):
        for j in range(S.cols):
            out.data[i][j] = R.mul(half, R.add(S.data[i][j], S.data[j][i]))
    return out


def lie_stabilizer_dim(forms) -> int:
    """dim of the matrix Lie algebra annihilating both forms.

    Unknown X ranges over 7x7 matrices; the bilinear condition is
    b(Xu,v) + b(u,Xv) = 0 and the trilinear one is the three-slot
    derivation identity.  The pair may be given in either order.
    """
    tri, bil = forms
    if isinstance(tri, BilinearForm):
        tri, bil = bil, tri
    R = bil.ring
    B = bil.gram
    rows = []
    # bilinear: sum_a B_{aj} X_{ai} + B_{ia} X_{aj} = 0
    for i in range(DIM):
        for j in range(i, DIM):
            row = [R.zero] * (DIM * DIM)
            for a in range(DIM):
                row[a * DIM + i] = R.add(row[a * DIM + i], B.data[a][j])
                row[a * DIM + j] = R.add(row[a * DIM + j], B.data[i][a])
            rows.append(row)
    # trilinear: sum_a X_{ai} c_{ajk} + X_{aj} c_{iak} + X_{ak} c_{ija} = 0
    # (for an alternating tensor the strictly increasing triples suffice)
    for (i, j, k) in _alt3_basis():
        row = [R.zero] * (DIM * DIM)
        for a in range(DIM):
            row[a * DIM + i] = R.add(row[a * DIM + i], tri.coeff(a, j, k))
            row[a * DIM + j] = R.add(row[a * DIM + j], tri.coeff(i, a, k))
            row[a * DIM + k] = R.add(row[a * DIM + k], tri.coeff(i, j, a))
        rows.append(row)
    sysm = Matrix(R, rows)
    return DIM * DIM - sysm.rank()


def trilinear_scalar_stabilizers(field, tri=None):
    """Scalars z with z*I preserving the trilinear form; expected: z^3 = 1."""
    tri = tri or dickson_form(field)
    out = []
    for x in field.elements():
        if field.is_zero(x):
            continue
        M = Matrix.scalar(field, DIM, x)
        if tri.transform(M).equals(tri):
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# reduction mod l and generation

def reduce_mod(t: RigidTuple, ell: int) -> RigidTuple:
    """Entrywise reduction of a tuple over Q to F_ell (ell odd, ell not | N)."""
    F = PrimeField(ell)  # rejects ell = 2 / composite
    N = t.denominator()
    if N % ell == 0:
        raise DenominatorClash(f"{ell} divides the tuple denominator {N}")

    def red(x):
        fr = Fraction(x)
        return (fr.numerator * pow(fr.denominator, ell - 2, ell)) % ell

    out = RigidTuple([m.map_entries(F, red) for m in t.matrices])
    if not out.product_relation_holds():
        raise AssertionError("product relation lost under reduction")
    return out


def enveloping_dim(mats) -> int:
    """Dimension of the matrix algebra generated by the given matrices."""
    if not mats:
        return 0
    R = mats[0].ring
    n = mats[0].rows
    echelon = {}  # pivot index -> vector (list length n^2)

    def reduce_vec(vec):
        vec = list(vec)
        for piv in sorted(echelon):
            if not R.is_zero(vec[piv]):
                f = vec[piv]
                bv = echelon[piv]
                vec = [R.sub(x, R.mul(f, y)) for x, y in zip(vec, bv)]
        return vec

    def insert(mat):
        vec = reduce_vec([x for row in mat.data for x in row])
        for i, x in enumerate(vec):
            if not R.is_zero(x):
                inv = R.inv(x)
                echelon[i] = [R.mul(inv, y) for y in vec]
                return True
        return False

    frontier = [Matrix.identity(R, n)]
    insert(frontier[0])
    gens = list(mats)
    pool = list(gens)
    for g in gens:
        if insert(g):
            frontier.append(g)
    while frontier and len(echelon) < n * n:
        nxt = []
        for m in frontier:
            for g in pool:
                prod = m * g
                if insert(prod):
                    nxt.append(prod)
        frontier = nxt
    return len(echelon)


@dataclass
class GenerationReport:
    """Certificate data for mod-l generation of the target group."""

    ell: int
    profile: tuple
    ell_gt_5: bool
    product_ok: bool
    profile_ok: bool
    enveloping: int
    invariant_form_dims: tuple
    verdict: str
    reasons: list = field(default_factory=list)

    def to_json(self):
        return {
            "ell": str(self.ell),
            "profile": _profile_json(self.profile),
            "ell_gt_5": self.ell_gt_5,
            "product_ok": self.product_ok,
            "profile_ok": self.profile_ok,
            "enveloping_dim": str(self.enveloping),
            "invariant_form_dims": [str(d) for d in self.invariant_form_dims],
            "verdict": self.verdict,
            "reasons": list(self.reasons),
        }


def _profile_json(profile):
    return [[[ev, [str(x) for x in part]] for ev, part in point]
            for point in profile]


def generation_certificate(t: RigidTuple) -> GenerationReport:
    """Feit--Fong--Thompson style certificate for a triple over F_ell.

    Generates iff ell > 5, the Jordan profile is (involution, [3,2,2]
    unipotent, [7] unipotent), the product relation holds, the enveloping
    algebra is all of 7x7 matrices, and invariant forms of degree 2 and 3
    exist mod ell.
    """
    from .convolution import matches_g2_profile

    ring = t.ring
    if not isinstance(ring, PrimeField):
        raise ValueError("generation certificate expects a tuple over F_ell")
    ell = ring.p
    reasons = []
    profile = local_profile(t)
    ell_gt_5 = ell > 5
    if not ell_gt_5:
        reasons.append(f"criterion requires ell > 5, got {ell}")
    product_ok = t.product_relation_holds()
    if not product_ok:
        reasons.append("product relation fails")
    profile_ok = matches_g2_profile(t)
    if not profile_ok:
        reasons.append("Jordan profile differs from the target triple")
    env = enveloping_dim(t.matrices)
    if env != 49:
        reasons.append(f"enveloping algebra has dimension {env}, not 49")
    d2, _ = invariant_form_space(t, 2) if t.n == DIM else (0, [])
    d3, _ = invariant_form_space(t, 3) if t.n == DIM else (0, [])
    if d2 < 1:
        reasons.append("no invariant bilinear form mod ell")
    if d3 < 1:
        reasons.append("no invariant trilinear form mod ell")

    hard_fail = (not product_ok) or (not profile_ok) or env != 49 \
        or d2 < 1 or d3 < 1
    if hard_fail:
        verdict = "Fails"
    elif not ell_gt_5:
        verdict = "Inconclusive"
    else:
        verdict = "Generates"
    return GenerationReport(ell=ell, profile=profile, ell_gt_5=ell_gt_5,
                            product_ok=product_ok, profile_ok=profile_ok,
                            enveloping=env, invariant_form_dims=(d2, d3),
                            verdict=verdict, reasons=reasons)
