"""Finite matrix groups and adjoint-module certificates.

Covers the order-56 monomial group (the additive group of the field with
eight elements extended by its multiplicative group), the symmetric-power
representations of SL2, decomposition of conjugation modules, and the
"bigness" conditions: adjoint cohomology vanishing in degrees 0 and 1
plus the one-dimensional-eigenspace witness condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .g2forms import enveloping_dim
from .matrix import Matrix, columns_to_matrix
from .modlinalg import (in_rowspace, intersect_rowspaces, inv_mod,
                        nullspace_mod, rank_mod, row_basis)
from .rings import PrimeField, is_prime


from .errors import (BadCharacteristic, BadResidue, NotOrdinary,  # noqa: F401
                     TooLarge, TooSmallPrime)

DEFAULT_ORDER_BOUND = 100000


class FiniteMatrixGroup:
    """Matrix group given by generators; elements materialized on demand."""

    def __init__(self, field_, dim, generators, name="group"):
        self.field = field_
        self.dim = dim
        self.generators = list(generators)
        self.name = name
        self._elements = None

    def materialize(self, bound=DEFAULT_ORDER_BOUND):
        """Closure under products, breadth-first from the identity."""
        if self._elements is not None:
            return self._elements
        ident = Matrix.identity(self.field, self.dim)
        seen = {ident: 0}
        order = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for g in self.generators:
                    prod = m * g
                    if prod not in seen:
                        if len(order) >= bound:
                            raise TooLarge(
                                f"group exceeds order bound {bound}")
                        seen[prod] = len(order)
                        order.append(prod)
                        nxt.append(prod)
            frontier = nxt
        self._elements = order
        return order

    @property
    def order(self):
        return len(self.materialize())

    def element_orders(self):
        out = set()
        ident = Matrix.identity(self.field, self.dim)
        for m in self.materialize():
            k = 1
            acc = m
            while not acc.is_identity():
                acc = acc * m
                k += 1
            out.add(k)
        return out


def conjugacy_classes(group: FiniteMatrixGroup):
    """Partition of the element list into conjugacy classes (orbit search)."""
    elements = group.materialize()
    index = {m: i for i, m in enumerate(elements)}
    assigned = [None] * len(elements)
    classes = []
    for i, m in enumerate(elements):
        if assigned[i] is not None:
            continue
        cls = [i]
        assigned[i] = len(classes)
        frontier = [m]
        while frontier:
            x = frontier.pop()
            for g in group.generators:
                y = g * x * g.inverse()
                j = index[y]
                if assigned[j] is None:
                    assigned[j] = len(classes)
                    cls.append(j)
                    frontier.append(y)
        classes.append(sorted(cls))
    return classes


# ---------------------------------------------------------------------------
# the order-56 monomial group

_F8_MODULUS = 0b1011  # z^3 + z + 1, primitive over F_2


def _f8_mul(a: int, b: int) -> int:
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & 0b1000:
            a ^= _F8_MODULUS
    return acc


def _f8_trace(a: int) -> int:
    t = a ^ _f8_mul(a, a) ^ _f8_mul(_f8_mul(a, a), _f8_mul(a, a))
    # the trace lands in {0, 1}
    return t & 1


def _f8_inv(a: int) -> int:
    for b in range(1, 8):
        if _f8_mul(a, b) == 1:
            return b
    raise ZeroDivisionError("inverse of 0 in the field of eight elements")


def build_h56(ellprime: int) -> FiniteMatrixGroup:
    """The order-56 monomial group in GL_7(F_ellprime).

    Basis indexed by the seven nontrivial additive characters of the field
    with eight elements; the additive part acts diagonally by character
    values (signs), the multiplicative part permutes the basis cyclically.
    """
    if not is_prime(ellprime) or ellprime % 7 != 1:
        raise BadResidue(f"{ellprime} is not a prime congruent to 1 mod 7")
    if 56 % ellprime == 0:
        raise BadCharacteristic(f"{ellprime} divides the group order 56")
    F = PrimeField(ellprime)
    gen = 2  # the class of z generates the multiplicative group
    labels = []
    t = 1
    for _ in range(7):
        labels.append(t)
        t = _f8_mul(t, gen)
    pos = {t: i for i, t in enumerate(labels)}
    # translation by u = 1: diagonal of character values psi_t(1) = (-1)^tr(t)
    diag = Matrix.zero(F, 7, 7)
    for i, t in enumerate(labels):
        diag.data[i][i] = F.from_int(-1 if _f8_trace(t) else 1)
    # multiplication by gen: e_t -> e_{t * gen^-1}
    gi = _f8_inv(gen)
    perm = Matrix.zero(F, 7, 7)
    for i, t in enumerate(labels):
        perm.data[pos[_f8_mul(t, gi)]][i] = F.one
    return FiniteMatrixGroup(F, 7, [diag, perm], name="h56")


# ---------------------------------------------------------------------------
# symmetric powers of the standard SL2 representation

@dataclass
class Sl2SymRep:
    """SL2(F_ell) on degree-m binary forms, given by two unipotent generators."""

    field: PrimeField
    dim: int
    generators: list
    m: int

    def as_group(self) -> FiniteMatrixGroup:
        return FiniteMatrixGroup(self.field, self.dim, self.generators,
                                 name=f"sl2-sym{self.m}")


def _sym_power_matrix(F, a, b, c, d, m):
    """Action of [[a,b],[c,d]] on the basis x^(m-i) y^i, columns = images."""
    n = m + 1
    out = Matrix.zero(F, n, n)
    for i in range(n):
        # (a x + c y)^(m-i) (b x + d y)^i, coefficients by double expansion
        poly = {0: F.one}  # degree in y -> coefficient
        for _ in range(m - i):
            poly = _lin_mul(F, poly, a, c)
        for _ in range(i):
            poly = _lin_mul(F, poly, b, d)
        for j, coeff in poly.items():
            out.data[j][i] = coeff
    return out


def _lin_mul(F, poly, u, v):
    """Multiply a polynomial in y (coeff dict) by (u x + v y), tracking y-degree."""
    out = {}
    for j, c in poly.items():
        out[j] = F.add(out.get(j, F.zero), F.mul(c, u))
        out[j + 1] = F.add(out.get(j + 1, F.zero), F.mul(c, v))
    return {j: c for j, c in out.items() if not F.is_zero(c)}


def sym_power_rep(ell: int, m: int) -> Sl2SymRep:
    if not is_prime(ell) or ell == 2:
        raise BadCharacteristic(f"need an odd prime, got {ell}")
    if ell <= 2 * m + 1:
        raise TooSmallPrime(f"need ell > {2 * m + 1}, got {ell}")
    F = PrimeField(ell)
    upper = _sym_power_matrix(F, 1, 1, 0, 1, m)
    lower = _sym_power_matrix(F, 1, 0, 1, 1, m)
    return Sl2SymRep(field=F, dim=m + 1, generators=[upper, lower], m=m)


# ---------------------------------------------------------------------------
# conjugation (adjoint) modules

def adjoint_action(g: Matrix) -> Matrix:
    """Conjugation X -> g X g^-1 as a matrix on the n^2 coordinate space."""
    R = g.ring
    n = g.rows
    gi = g.inverse()
    out = Matrix.zero(R, n * n, n * n)
    for i in range(n):
        for k in range(n):
            gik = g.data[i][k]
            if R.is_zero(gik):
                continue
            for l in range(n):
                for j in range(n):
                    out.data[i * n + j][k * n + l] = R.add(
                        out.data[i * n + j][k * n + l],
                        R.mul(gik, gi.data[l][j]))
    return out


def _matrix_log_unipotent(U: Matrix) -> Matrix:
    """log of a unipotent matrix via the truncated series (char > nilpotency)."""
    R = U.ring
    n = U.rows
    N = U - Matrix.identity(R, n)
    acc = Matrix.zero(R, n, n)
    power = Matrix.identity(R, n)
    k = 1
    while True:
        power = power * N
        if power.is_zero_matrix():
            break
        if k >= R.char:
            raise NotOrdinary("unipotent log undefined: nilpotency >= char")
        coeff = R.div(R.from_int(-1 if k % 2 == 0 else 1), R.from_int(k))
        acc = acc + power.scale(coeff)
        k += 1
    return acc


def _casimir_on_adjoint(rep: Sl2SymRep) -> Matrix:
    """EF + FE + H^2/2 built from logs of the two unipotent generators."""
    F = rep.field
    U_ad = adjoint_action(rep.generators[0])
    L_ad = adjoint_action(rep.generators[1])
    E = _matrix_log_unipotent(U_ad)
    Fo = _matrix_log_unipotent(L_ad)
    H = E * Fo - Fo * E
    half = F.div(F.one, F.from_int(2))
    return E * Fo + Fo * E + (H * H).scale(half)


def _eigen_split(theta: Matrix):
    """G-stable eigenspace decomposition of the ambient space, or None.

    Returns a list of column-basis matrices whose dimensions sum to the
    full space exactly when theta is diagonalizable with all eigenvalues
    in the ground field.
    """
    F = theta.ring
    n = theta.rows
    spaces = []
    total = 0
    for a in range(F.p):
        null = (theta - Matrix.scalar(F, n, F.from_int(a))).nullspace()
        if null:
            spaces.append((a, columns_to_matrix(F, null)))
            total += len(null)
        if total == n:
            break
    if total != n:
        return None
    return spaces


def _restrict(mats, basis: Matrix):
    """Action matrices restricted to the invariant column span of ``basis``."""
    out = []
    for M in mats:
        sol = basis.solve_right(M * basis)
        if sol is None:
            raise AssertionError("subspace is not invariant")
        out.append(sol)
    return out


def _spin(mats, vector):
    """Column basis of the submodule generated by one coordinate vector."""
    F = mats[0].ring
    n = mats[0].rows
    echelon = {}

    def insert(vec):
        vec = list(vec)
        for piv in sorted(echelon):
            if not F.is_zero(vec[piv]):
                c = vec[piv]
                bv = echelon[piv]
                vec = [F.sub(x, F.mul(c, y)) for x, y in zip(vec, bv)]
        for i, x in enumerate(vec):
            if not F.is_zero(x):
                inv = F.inv(x)
                echelon[i] = [F.mul(inv, y) for y in vec]
                return True
        return False

    insert(vector)
    frontier = [vector]
    while frontier:
        nxt = []
        for v in frontier:
            col = Matrix(F, [[x] for x in v])
            for M in mats:
                w = [row[0] for row in (M * col).data]
                if insert(w):
                    nxt.append(w)
        frontier = nxt
    basis = [echelon[p] for p in sorted(echelon)]
    return columns_to_matrix(F, basis)


def _word_elements(mats, tries):
    """Deterministic sequence of algebra elements built from generator words."""
    F = mats[0].ring
    n = mats[0].rows
    out = []
    state = 1
    for _ in range(tries):
        acc = Matrix.zero(F, n, n)
        word = Matrix.identity(F, n)
        for _step in range(4):
            state = (state * 48271) % 2147483647
            g = mats[state % len(mats)]
            word = word * g
            state = (state * 48271) % 2147483647
            coeff = F.from_int(1 + state % (F.p - 1))
            acc = acc + word.scale(coeff)
        out.append(acc)
    return out


def _composition_dims(mats, dim, tries=12):
    """Composition factor dimensions of the module with given action."""
    if dim == 0:
        return []
    F = mats[0].ring
    for theta in _word_elements(mats, tries):
        for a in range(F.p):
            null = (theta - Matrix.scalar(F, dim, F.from_int(a))).nullspace()
            if not null:
                continue
            sub = _spin(mats, null[0])
            d = sub.cols
            if 0 < d < dim:
                inner = _composition_dims(_restrict(mats, sub), d)
                outer = _composition_dims(_quotient(mats, sub), dim - d)
                return inner + outer
    if enveloping_dim(mats) == dim * dim:
        return [dim]
    raise NotOrdinary("module neither splits nor certifies irreducible")


def _quotient(mats, sub: Matrix):
    """Action on the quotient by the invariant column span of ``sub``."""
    F = mats[0].ring
    n = mats[0].rows
    d = sub.cols
    # extend the basis by standard vectors on non-pivot rows
    reduced, pivots = sub.transpose()._echelon()
    pivot_set = set(pivots)
    cols = [[sub.data[i][j] for i in range(n)] for j in range(d)]
    compl = [c for c in range(n) if c not in pivot_set]
    for c in compl:
        e = [F.zero] * n
        e[c] = F.one
        cols.append(e)
    P = columns_to_matrix(F, cols)
    Pi = P.inverse()
    out = []
    for M in mats:
        C = Pi * M * P
        out.append(Matrix(F, [row[d:] for row in C.data[d:]]))
    return out


@dataclass
class DecompositionReport:
    """Histogram of direct-summand dimensions of a conjugation module."""

    dimension: int
    pairs: tuple  # sorted ((constituent dim, number of summands), ...)
    isotypic: list = field(default_factory=list)  # (basis, constituent dim)

    def to_json(self):
        return {
            "module_dimension": str(self.dimension),
            "constituents": [[str(d), str(m)] for d, m in self.pairs],
        }


def adjoint_decomposition(rep) -> DecompositionReport:
    """Direct-sum decomposition of the conjugation action on n x n matrices.

    The module is split along eigenspaces of explicit equivariant
    operators (class sums in the ordinary case; a Casimir operator built
    from generator logs for the symmetric-power SL2 case), and each piece
    is certified by composition splitting plus the full-matrix-algebra
    criterion for the irreducible leaves.
    """
    if isinstance(rep, Sl2SymRep):
        ops = [_casimir_on_adjoint(rep)]
        F = rep.field
        gens = rep.generators
    elif isinstance(rep, FiniteMatrixGroup):
        F = rep.field
        gens = rep.generators
        elements = rep.materialize()
        if len(elements) % F.p == 0:
            raise NotOrdinary(
                f"characteristic {F.p} divides the group order {len(elements)}")
        ops = []
        for cls in conjugacy_classes(rep):
            n2 = rep.dim * rep.dim
            acc = Matrix.zero(F, n2, n2)
            for i in cls:
                acc = acc + adjoint_action(elements[i])
            ops.append(acc)
    else:
        raise TypeError("expected a matrix group or symmetric-power rep")

    ad_gens = [adjoint_action(g) for g in gens]
    n2 = ad_gens[0].rows
    # deterministic generic combinations of the equivariant operators,
    # then the operators individually as a fallback
    combos = []
    for w in range(2, 5):
        acc = Matrix.zero(F, n2, n2)
        for i, op in enumerate(ops):
            acc = acc + op.scale(F.from_int(pow(w, i + 1, F.p)))
        combos.append(acc)
    combos.extend(ops)
    split = None
    for theta in combos:
        spaces = _eigen_split(theta)
        if spaces is not None and (split is None or len(spaces) > len(split)):
            split = spaces
            if len(split) > 1:
                break
    if split is None:
        raise NotOrdinary("no equivariant operator split the module")

    pairs = {}
    isotypic = []
    for _a, basis in split:
        sub_mats = _restrict(ad_gens, basis)
        dims = _composition_dims(sub_mats, basis.cols)
        if len(set(dims)) != 1:
            # mixed eigenspace: record factors individually
            for d in dims:
                pairs[d] = pairs.get(d, 0) + 1
            isotypic.append((basis, None))
            continue
        d = dims[0]
        pairs[d] = pairs.get(d, 0) + len(dims)
        isotypic.append((basis, d))
    total = sum(d * m for d, m in pairs.items())
    if total != n2:
        raise AssertionError("decomposition does not fill the module")
    return DecompositionReport(dimension=n2,
                               pairs=tuple(sorted(pairs.items())),
                               isotypic=isotypic)


# ---------------------------------------------------------------------------
# adjoint cohomology and the bigness certificate

def fixed_space_dim(group: FiniteMatrixGroup, trace_zero=True,
                    use_all_elements=False) -> int:
    """Dimension of the conjugation-fixed subspace of (trace-zero) matrices."""
    F = group.field
    n = group.dim
    mats = group.materialize() if use_all_elements else group.generators
    rows = []
    ident = Matrix.identity(F, n * n)
    for g in mats:
        diff = adjoint_action(g) - ident
        rows.extend(diff.data)
    if trace_zero:
        trace_row = [F.zero] * (n * n)
        for i in range(n):
            trace_row[i * n + i] = F.one
        rows.append(trace_row)
    return n * n - Matrix(F, rows).rank()


def h1_dim(group: FiniteMatrixGroup) -> int:
    """dim H^1(G, trace-zero conjugation module) by cocycle propagation.

    A cocycle f with f(gh) = f(g)·h + f(h) is determined by its values on
    the generators; propagating those symbolic values over the Cayley
    graph and collecting the consistency equations cuts out the cocycle
    space, from which the coboundary dimension is subtracted.
    """
    F = group.field
    p = F.p
    n = group.dim
    n2 = n * n
    gens = group.generators
    k = len(gens)
    elements = group.materialize()
    index = {m: i for i, m in enumerate(elements)}
    # right action matrices X -> g^-1 X g, as numpy arrays
    acts = [np.array(adjoint_action(g.inverse()).data, dtype=np.int64) % p
            for g in gens]
    unknowns = k * n2
    expr = [None] * len(elements)
    ident_idx = index[Matrix.identity(F, n)]
    expr[ident_idx] = np.zeros((n2, unknowns), dtype=np.int64)
    frontier = [ident_idx]
    constraints = []
    while frontier:
        nxt = []
        for gi in frontier:
            g = elements[gi]
            for si, s in enumerate(gens):
                h = g * s
                hi = index[h]
                block = np.zeros((n2, unknowns), dtype=np.int64)
                block[:, si * n2:(si + 1) * n2] = np.eye(n2, dtype=np.int64)
                cand = (acts[si] @ expr[gi] + block) % p
                if expr[hi] is None:
                    expr[hi] = cand
                    nxt.append(hi)
                else:
                    diff = (expr[hi] - cand) % p
                    if diff.any():
                        constraints.append(diff)
        frontier = nxt
    # trace-zero constraint on the generator values
    trace_rows = np.zeros((k, unknowns), dtype=np.int64)
    for si in range(k):
        for i in range(n):
            trace_rows[si, si * n2 + i * n + i] = 1
    constraints.append(trace_rows)
    system = np.concatenate(constraints, axis=0) if constraints else \
        np.zeros((1, unknowns), dtype=np.int64)
    z1 = unknowns - rank_mod(system, p)
    b1 = (n2 - 1) - fixed_space_dim(group, trace_zero=True)
    return z1 - b1


def _np_matrix(M: Matrix, p: int):
    return np.mod(np.array([[int(x) for x in row] for row in M.data],
                           dtype=np.int64), p)


def _eigen_functionals(h, p: int):
    """Corner functionals of the one-dimensional generalized eigenspaces of h.

    For each eigenvalue alpha of h whose generalized eigenspace is
    one-dimensional this yields (alpha, lam), where lam is the vector of
    the functional w -> (corner entry of w in an adapted basis) on
    row-flattened n x n matrices: the composition of the h-equivariant
    injection of the eigenline, the endomorphism w, and the h-equivariant
    projection back to the eigenline.
    """
    n = h.shape[0]
    for alpha in range(p):
        b = (h - alpha * np.eye(n, dtype=np.int64)) % p
        power = np.eye(n, dtype=np.int64)
        for _ in range(n):
            power = (power @ b) % p
        kernel = nullspace_mod(power, p)
        if len(kernel) != 1:
            continue
        image = row_basis(power.T, p)  # column space of the power, as rows
        t = np.concatenate([kernel[0].reshape(1, -1), image], axis=0).T
        try:
            ti = inv_mod(t, p)
        except ZeroDivisionError:
            continue
        lam = np.outer(ti[0], t[:, 0]).reshape(-1) % p
        yield alpha, lam


def _spin_rows(ad_mats, vector, p):
    """Row basis of the submodule generated by one coordinate vector."""
    basis = row_basis(vector.reshape(1, -1), p)
    frontier = [vector]
    while frontier:
        nxt = []
        for v in frontier:
            for A in ad_mats:
                w = (A @ v) % p
                if not in_rowspace(basis, w, p):
                    basis = row_basis(np.concatenate(
                        [basis, w.reshape(1, -1)], axis=0), p)
                    nxt.append(w)
        frontier = nxt
    return basis


def _split_into_summands(ad_mats, component, p):
    """Greedy direct-sum decomposition of a component into submodules.

    ``component`` holds basis vectors as rows; each returned summand is
    the submodule spun up from one basis vector not yet covered.
    """
    summands = []
    covered = np.zeros((0, component.shape[1]), dtype=np.int64)
    for v in component:
        if in_rowspace(covered, v, p):
            continue
        w = _spin_rows(ad_mats, v, p)
        stacked = row_basis(np.concatenate([covered, w], axis=0), p)
        if stacked.shape[0] != covered.shape[0] + w.shape[0]:
            continue  # not transverse to what is already covered
        summands.append(w)
        covered = stacked
        if covered.shape[0] == component.shape[0]:
            break
    if covered.shape[0] != component.shape[0]:
        raise NotOrdinary("component did not split into a direct sum")
    return summands


def _invariant_core_rows(space, ad_inv_t, p):
    """Largest conjugation-stable subspace inside a row-space, as rows."""
    core = space
    while core.shape[0]:
        new = core
        for At in ad_inv_t:
            new = intersect_rowspaces(new, (core @ At) % p, p)
        if new.shape[0] == core.shape[0]:
            break
        core = new
    return core


@dataclass
class BignessReport:
    """Certificate data for the adjoint-cohomology/eigenspace conditions."""

    h0_ad0_dim: int
    h1_ad0_dim: int
    witnesses: list  # (summand index, constituent dim, element idx, alpha)
    failures: list
    verdict: str

    def to_json(self):
        return {
            "h0_ad0_dim": str(self.h0_ad0_dim),
            "h1_ad0_dim": str(self.h1_ad0_dim),
            "witnesses": [[str(c), str(d), str(h), str(a)]
                          for c, d, h, a in self.witnesses],
            "failures": list(self.failures),
            "verdict": self.verdict,
        }


def bigness_check(group: FiniteMatrixGroup,
                  bound=DEFAULT_ORDER_BOUND) -> BignessReport:
    """Adjoint H^0/H^1 vanishing plus the eigenspace-witness condition.

    The conjugation module is split into an explicit direct sum of
    irreducible summands.  A witness for a summand W is a pair (h, alpha)
    such that h has a one-dimensional generalized alpha-eigenspace and the
    corner functional of that eigenline does not vanish on W.  On top of
    the per-summand search, each isotypic piece is checked against *all*
    of its irreducible submodules at once: the intersection over
    candidates of the largest stable subspace killed by the candidate's
    functional must be zero, otherwise a submodule with no witness exists
    and is reported.

    A one-dimensional summand on which every candidate element acts by a
    nontrivial scalar can never have a witness: the corner functional is
    invariant under conjugation by its own element h, so it vanishes on
    any line h scales nontrivially.  Such summands are reported as
    failures rather than silently skipped.
    """
    F = group.field
    p = F.p
    elements = group.materialize(bound)
    h0 = fixed_space_dim(group, trace_zero=True)
    h1 = h1_dim(group)
    try:
        decomp = adjoint_decomposition(group)
    except NotOrdinary as exc:
        return BignessReport(h0_ad0_dim=h0, h1_ad0_dim=h1, witnesses=[],
                             failures=[f"decomposition failed: {exc}"],
                             verdict="Fails")
    ad_mats = [_np_matrix(adjoint_action(g), p) for g in group.generators]
    ad_inv_t = [_np_matrix(adjoint_action(g.inverse()), p).T
                for g in group.generators]
    # candidate (element index, alpha, functional) triples
    candidates = []
    for hi, h in enumerate(elements):
        hn = _np_matrix(h, p)
        for alpha, lam in _eigen_functionals(hn, p):
            candidates.append((hi, alpha, lam))
    witnesses = []
    failures = []
    summand_id = 0
    for ci, (basis, d) in enumerate(decomp.isotypic):
        component = row_basis(_np_matrix(basis, p).T, p)
        for w in _split_into_summands(ad_mats, component, p):
            found = False
            for hi, alpha, lam in candidates:
                if ((w @ lam) % p).any():
                    witnesses.append((summand_id, w.shape[0], hi, alpha))
                    found = True
                    break
            if not found:
                failures.append(
                    f"no eigenspace witness for summand {summand_id} "
                    f"(dimension {w.shape[0]})")
            summand_id += 1
        # strengthen to every irreducible submodule of the isotypic piece
        uncovered = component
        for hi, alpha, lam in candidates:
            if uncovered.shape[0] == 0:
                break
            vals = (component @ lam) % p
            if not vals.any():
                continue
            kernel = nullspace_mod(vals.reshape(1, -1), p)
            if kernel:
                kr = (np.array(kernel, dtype=np.int64) @ component) % p
                killed = _invariant_core_rows(row_basis(kr, p), ad_inv_t, p)
            else:
                killed = np.zeros((0, component.shape[1]), dtype=np.int64)
            uncovered = intersect_rowspaces(uncovered, killed, p) \
                if killed.shape[0] else killed
        if uncovered.shape[0]:
            failures.append(
                f"component {ci}: {uncovered.shape[0]}-dimensional stable "
                "subspace admits no witness for any of its submodules")
    verdict = "Big" if (h0 == 0 and h1 == 0 and not failures) else "Fails"
    return BignessReport(h0_ad0_dim=h0, h1_ad0_dim=h1, witnesses=witnesses,
                         failures=failures, verdict=verdict)
