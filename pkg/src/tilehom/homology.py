"""Integral homology H_k(Gamma; C^n) of canonical projection schemes, n = 1, 2, 3.

Everything is expressed through maps between exterior powers of stabilizer
lattices.  Two layers are kept apart:

* *lengths*: for a ring R in {Q, Z/p^k} the length of H_k(Gamma; C^n (x) R)
  (dimension over Q, log_p of the order over Z/p^k) is assembled from the
  long exact sequences, using only image sizes of matrices over R;
* *torsion*: the integral torsion subgroups are cokernels (or kernels of
  maps between presented groups) computed with Smith normal forms.

Free ranks come from the Q lengths; F_p lengths give D_k^p; lengths over
Z/p^k (k >= 2) settle the extension problem in degree 0 for codimension 3.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from .abelian import FgAbelianGroup, factorize
from .linalg import (
    IntMatrix,
    Lattice,
    LatticeMap,
    cokernel,
    exterior_power,
    kernel_rows_mod,
    lattice_quotient,
    left_kernel_rows,
    rank_q,
    snf_factors,
    solve_rational,
    submodule_order_mod,
)
from .singular import SingularComplex

log = logging.getLogger(__name__)

DEFAULT_PRIMES = (2, 3, 5, 7)


class HomologyError(ValueError):
    """Preconditions of a homology computation are violated."""


class InconsistencyError(ArithmeticError):
    """Internal identities failed; indicates a bug upstream."""


# ---------------------------------------------------------------------------
# rings and lengths


@dataclass(frozen=True)
class Ring:
    """Q (``p == 0``) or Z/p^k."""

    p: int = 0
    k: int = 1

    @property
    def modulus(self) -> int:
        return self.p**self.k if self.p else 0

    def __str__(self):
        if not self.p:
            return "Q"
        return f"F_{self.p}" if self.k == 1 else f"Z/{self.p}^{self.k}"

    def free(self, n: int) -> int:
        return n * (self.k if self.p else 1)

    def image(self, rows, ncols: int) -> int:
        """Length of the submodule spanned by ``rows``."""
        rows = [r for r in rows if any(r)]
        if not rows or not ncols:
            return 0
        if not self.p:
            return rank_q(rows, ncols)
        q = self.modulus
        order = submodule_order_mod([[x % q for x in r] for r in rows], ncols, q)
        return _log(order, self.p)

    def kernel_gens(self, rows, ncols: int) -> list[list[int]]:
        """Integer vectors generating the kernel of ``x -> x @ rows`` over the ring."""
        if not rows:
            return []
        if not ncols:
            return [[int(i == j) for j in range(len(rows))] for i in range(len(rows))]
        if not self.p:
            return left_kernel_rows(rows, ncols)
        return kernel_rows_mod(rows, ncols, self.modulus)


def _log(order: int, p: int) -> int:
    e = 0
    while order > 1:
        order, r = divmod(order, p)
        if r:
            raise InconsistencyError("order is not a prime power")
        e += 1
    return e


def parse_ring(text: str) -> Ring:
    """``Q``, ``Fp`` / ``F5``, ``Z4`` / ``Z/4`` / ``Z/2^2``; ``Z`` is not a ring of this kind."""
    t = text.strip().replace(" ", "")
    if t in ("Q", "QQ"):
        return Ring()
    if t[:1] == "F":
        p = int(t[1:].lstrip("_"))
        fac = factorize(p)
        if fac.get(p) != 1:
            raise ValueError(f"{p} is not prime")
        return Ring(p, 1)
    if t[:1] == "Z" and len(t) > 1:
        body = t[1:].lstrip("/_")
        if "^" in body:
            base, exp = body.split("^")
            q = int(base) ** int(exp)
        else:
            q = int(body)
        fac = factorize(q)
        if len(fac) != 1:
            raise ValueError(f"{q} is not a prime power")
        (p, k), = fac.items()
        return Ring(p, k)
    raise ValueError(f"unknown ring {text!r}")


# ---------------------------------------------------------------------------
# results


@dataclass
class HomologyResult:
    scheme: str
    d: int
    n: int
    groups: list  # H_0 .. H_d as FgAbelianGroup
    modp_ranks: dict = field(default_factory=dict)  # p -> [D_k^p]
    torsion_ranks: dict = field(default_factory=dict)  # p -> [T_k^p]
    ktheory: tuple | None = None
    diagnostics: dict = field(default_factory=dict)
    status: str = "OK"  # or PARTIAL

    @property
    def ranks(self) -> list[int]:
        return [g.free_rank for g in self.groups]

    @property
    def euler(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))


# ---------------------------------------------------------------------------
# geometry helpers


def _basis(orbit) -> list[list[int]]:
    return [list(r) for r in orbit.direction.rows]


def _coords_in(sub_rows, basis_rows) -> list[list[int]]:
    """Integer coordinates of ``sub_rows`` in the lattice basis ``basis_rows``."""
    out = []
    for row in sub_rows:
        x = solve_rational(basis_rows, row)
        if x is None or any(c.denominator != 1 for c in x):
            raise InconsistencyError("sublattice not contained in lattice")
        out.append([int(c) for c in x])
    return out


def _wedge(k: int, rows, ncols: int) -> list[list[int]]:
    """Rows of the k-th compound of an inclusion matrix (empty if k exceeds its rank)."""
    if k > len(rows) or k > ncols or k < 0:
        return []
    return exterior_power(k, IntMatrix(rows, ncols)).matrix.tolist()


def _stack(blocks) -> list[list[int]]:
    out = []
    for b in blocks:
        out.extend(b)
    return out


def _torsion_of_cokernel(rows, ncols: int) -> FgAbelianGroup:
    if not rows:
        return FgAbelianGroup()
    return cokernel(IntMatrix(rows, ncols)).torsion


def _check_counts(scheme, complex_: SingularComplex):
    n = scheme.n
    if n > 1 and complex_.L(0) == 0:
        raise HomologyError("no singular points: L_0 must be positive and finite")


# ---------------------------------------------------------------------------
# epsilon


@dataclass(frozen=True)
class EpsilonData:
    sum_map: LatticeMap  # Z^{L0} -> Z
    kernel_basis: tuple  # rows e_i - e_(i+1) in Z^{L0}
    classes: tuple  # global point-orbit ids, in order


def build_epsilon(complex_: SingularComplex, container=None) -> EpsilonData:
    """The augmentation on point classes inside ``container`` ((level, id) or None for V)."""
    if container is None:
        classes = tuple(range(complex_.L(0)))
    else:
        k, i = container
        classes = tuple(complex_.inside(k, i, 0))
    L = len(classes)
    sum_map = LatticeMap.from_rows([[1] for _ in range(L)], 1, "points", "Z")
    basis = tuple(tuple(int(j == i) - int(j == i + 1) for j in range(L)) for i in range(L - 1))
    return EpsilonData(sum_map, basis, classes)


def epsilon_inclusion(inner: EpsilonData, outer: EpsilonData) -> list[list[int]]:
    """Matrix of ker eps_inner -> ker eps_outer in the difference bases."""
    pos = {c: t for t, c in enumerate(outer.classes)}
    out = []
    for row in inner.kernel_basis:
        full = [0] * len(outer.classes)
        for c, v in zip(inner.classes, row):
            if c not in pos:
                raise InconsistencyError("point class of a subspace missing from its container")
            full[pos[c]] += v
        # coordinates in basis e_i - e_(i+1): partial sums
        acc, coords = 0, []
        for v in full[:-1]:
            acc += v
            coords.append(acc)
        out.append(coords)
    return out


# ---------------------------------------------------------------------------
# codimension 1


def codim1(scheme, complex_: SingularComplex) -> HomologyResult:
    if scheme.n != 1:
        raise HomologyError("codim1 needs n = 1")
    d, L0 = scheme.d, complex_.L(0)
    groups = [FgAbelianGroup.free(L0 + d)] + [FgAbelianGroup.free(comb(d + 1, k + 1)) for k in range(1, d + 1)]
    return HomologyResult(scheme.name, d, 1, groups, diagnostics={"L0": L0})


def lengths_codim1(scheme, complex_, ring: Ring) -> list[int]:
    d, L0 = scheme.d, complex_.L(0)
    return [ring.free(L0 + d)] + [ring.free(comb(d + 1, k + 1)) for k in range(1, d + 1)]


# ---------------------------------------------------------------------------
# codimension 2


class Codim2Assembly:
    """beta_j: sum over line orbits of Lambda_{j+1} Gamma^alpha -> Lambda_{j+1} Gamma."""

    def __init__(self, scheme, complex_: SingularComplex):
        if scheme.n != 2:
            raise HomologyError("codim2 needs n = 2")
        _check_counts(scheme, complex_)
        self.scheme = scheme
        self.complex = complex_
        self.m = scheme.rank
        self.nu = scheme.nu
        self.lines = complex_.orbits[1]
        self._beta = {}

    def beta(self, j: int) -> list[list[int]]:
        if j not in self._beta:
            self._beta[j] = _stack(_wedge(j + 1, _basis(a), self.m) for a in self.lines)
        return self._beta[j]

    def beta0_matrix(self) -> LatticeMap:
        """beta_0 with the inclusion blocks Gamma^alpha -> Gamma and ker eps^alpha -> ker eps."""
        c = self.complex
        outer = build_epsilon(c)
        ncols = self.m + len(outer.kernel_basis)
        rows = []
        for a in self.lines:
            for r in _basis(a):
                rows.append(list(r) + [0] * len(outer.kernel_basis))
            inner = build_epsilon(c, (1, a.id))
            for r in epsilon_inclusion(inner, outer):
                rows.append([0] * self.m + r)
        return LatticeMap.from_rows(rows, ncols, "H0(C1)", "H0(C0_0)")

    def ker_beta0_rank(self) -> int:
        c = self.complex
        dom = sum(self.nu + c.L_in(1, a.id, 0) - 1 for a in self.lines)
        return dom - (self.m + c.L(0) - 1)

    def lengths(self, ring: Ring) -> list[int]:
        d, m = self.scheme.d, self.m
        out = []
        for k in range(d + 1):
            b = self.beta(k + 1)
            coker = ring.free(comb(m, k + 2)) - ring.image(b, comb(m, k + 2))
            if k == 0:
                ker = ring.free(self.ker_beta0_rank())
            else:
                bk = self.beta(k)
                ker = ring.free(len(self.lines) * comb(self.nu, k + 1)) - ring.image(bk, comb(m, k + 1))
            out.append(coker + ker)
        return out


def codim2(scheme, complex_: SingularComplex) -> HomologyResult:
    asm = Codim2Assembly(scheme, complex_)
    ranks = asm.lengths(Ring())
    groups = []
    for k in range(scheme.d + 1):
        tors = _torsion_of_cokernel(asm.beta(k + 1), comb(asm.m, k + 2))
        groups.append(FgAbelianGroup(ranks[k], tors.invariant_factors))
    b0 = asm.beta0_matrix()
    b0_coker = cokernel(b0) if b0.source_rank else FgAbelianGroup.free(b0.target_rank)
    diag = {
        "L0": complex_.L(0),
        "L1": complex_.L(1),
        "ker_beta0_rank": asm.ker_beta0_rank(),
        "beta0_block_diagonal_surjective": b0_coker.is_trivial,
    }
    return HomologyResult(scheme.name, scheme.d, 2, groups, diagnostics=diag)


# ---------------------------------------------------------------------------
# codimension 3


class Codim3Assembly:
    """All maps of the codimension-3 long exact sequences for d = 3.

    Planes alpha (rank-4 stabilizers) and lines theta (rank 2); I_1^alpha is
    read from the incidence data, and j places the theta-blocks of a plane
    at the positions of their global line classes.
    """

    def __init__(self, scheme, complex_: SingularComplex):
        if scheme.n != 3 or scheme.d != 3:
            raise HomologyError("codim3 supports only n = d = 3")
        _check_counts(scheme, complex_)
        self.scheme = scheme
        self.c = complex_
        self.m = 6
        self.planes = complex_.orbits[2]
        self.lines = complex_.orbits[1]
        self.L0 = complex_.L(0)
        self.L1 = len(self.lines)
        self.L2 = len(self.planes)
        self.lines_in = [complex_.inside(2, a.id, 1) for a in self.planes]
        for ids in self.lines_in:
            if len(set(ids)) != len(ids):
                raise InconsistencyError("j is not injective on a plane block")
        self.plane_basis = [_basis(a) for a in self.planes]
        self.line_basis = [_basis(t) for t in self.lines]
        # line bases in plane coordinates, per plane
        self.line_in_plane = [
            [_coords_in(self.line_basis[t], self.plane_basis[ai]) for t in ids]
            for ai, ids in enumerate(self.lines_in)
        ]

    # maps into Lambda Gamma
    def gamma(self, s: int) -> list[list[int]]:
        """gamma_s for s >= 1: rows Lambda_{s+1} Gamma^theta, theta in I_1."""
        return _stack(_wedge(s + 1, b, 6) for b in self.line_basis)

    def beta_alpha(self, ai: int, s: int) -> list[list[int]]:
        """beta^alpha_s (s >= 1) in Lambda_{s+1} Gamma^alpha coordinates."""
        return _stack(_wedge(s + 1, b, 4) for b in self.line_in_plane[ai])

    def gamma_alpha(self, ai: int, s: int) -> list[list[int]]:
        return _stack(_wedge(s + 1, self.line_basis[t], 6) for t in self.lines_in[ai])

    def phi_prime(self, s: int) -> list[list[int]]:
        """phi'_s on free generators: Lambda_{s+2} of the plane inclusions."""
        return _stack(_wedge(s + 2, b, 6) for b in self.plane_basis)

    def j_rows(self, ai: int, vecs, block: int = 1) -> list[list[int]]:
        """Place vectors on the theta-blocks of plane ``ai`` into the global line blocks."""
        ids = self.lines_in[ai]
        out = []
        for v in vecs:
            row = [0] * (self.L1 * block)
            for t_local, t in enumerate(ids):
                for b in range(block):
                    row[t * block + b] = v[t_local * block + b]
            out.append(row)
        return out

    # counts
    def ker_gamma0_rank(self) -> int:
        return sum(2 + self.c.L_in(1, t.id, 0) - 1 for t in self.lines) - (6 + self.L0 - 1)

    def ker_beta0_alpha_rank(self, ai: int) -> int:
        a = self.planes[ai]
        dom = sum(2 + self.c.L_in(1, t, 0) - 1 for t in self.lines_in[ai])
        return dom - (4 + self.c.L_in(2, a.id, 0) - 1)

    # lengths
    def phi1pp_image(self, ring: Ring) -> tuple[int, int]:
        """(length of im phi''_1, length of ker gamma_1) over ``ring``."""
        gens = []
        for ai in range(self.L2):
            b = self.beta_alpha(ai, 1)
            gens.extend(self.j_rows(ai, ring.kernel_gens(b, 6)))
        g1 = self.gamma(1)
        ker_g1 = ring.free(self.L1) - ring.image(g1, 15)
        return ring.image(gens, self.L1), ker_g1

    def lengths(self, ring: Ring) -> list[int]:
        return self.length_table(ring)["H"]

    def length_table(self, ring: Ring) -> dict:
        g1 = ring.image(self.gamma(1), 15)
        h1_c10 = ring.free(20) + ring.free(self.L1) - g1
        h0_c10 = ring.free(15) - g1 + ring.free(self.ker_gamma0_rank())
        h0_c2 = h1_c2 = 0
        for ai in range(self.L2):
            b1 = ring.image(self.beta_alpha(ai, 1), 6)
            h0_c2 += ring.free(6) - b1 + ring.free(self.ker_beta0_alpha_rank(ai))
            h1_c2 += ring.free(4) + ring.free(len(self.lines_in[ai])) - b1
        im2 = ring.image(self.phi_prime(2), 15)
        im1p = ring.image(self.phi_prime(1), 20)
        im1pp, ker_g1 = self.phi1pp_image(ring)
        coker_phi1 = h1_c10 - im1p - im1pp
        ker_phi0 = h0_c2 - h0_c10
        H = [
            coker_phi1 + ker_phi0,
            ring.free(15) - im2 + h1_c2 - im1p - im1pp,
            ring.free(6) + ring.free(self.L2) - im2,
            ring.free(1),
        ]
        return {
            "H": H,
            "coker_phi1": coker_phi1,
            "coker_phi1_double_prime": ker_g1 - im1pp,
            "coker_phi1_prime": ring.free(20) - im1p,
            "ker_phi0": ker_phi0,
        }

    # integral torsion
    def t1_prime(self) -> FgAbelianGroup:
        return _torsion_of_cokernel(self.phi_prime(1), 20)

    def t1_double_prime(self) -> FgAbelianGroup:
        g1 = self.gamma(1)
        K = left_kernel_rows(g1, 15) if g1 else [[int(i == j) for j in range(self.L1)] for i in range(self.L1)]
        if not K:
            return FgAbelianGroup()
        images = []
        for ai in range(self.L2):
            b = self.beta_alpha(ai, 1)
            kb = left_kernel_rows(b, 6) if b else []
            images.extend(self.j_rows(ai, kb))
        coords = _coords_in(images, K) if images else []
        return _torsion_of_cokernel(coords, len(K))

    def t0_prime(self) -> FgAbelianGroup:
        """Torsion(ker phi'_0) with phi'_0: sum coker beta^alpha_1 -> coker gamma_1."""
        src_rel = []
        f = []
        for ai in range(self.L2):
            for r in self.beta_alpha(ai, 1):
                src_rel.append([0] * (6 * ai) + r + [0] * (6 * (self.L2 - ai - 1)))
            f.extend(_wedge(2, self.plane_basis[ai], 6))
        ns = 6 * self.L2
        tgt_rel = self.gamma(1)
        stacked = f + tgt_rel
        ker = left_kernel_rows(stacked, 15)
        pre = [row[:ns] for row in ker if any(row[:ns])]
        pre_lat = Lattice(ns, pre)
        rel_lat = Lattice(ns, src_rel)
        if not pre_lat.contains_lattice(rel_lat):
            raise InconsistencyError("relations of the source do not map into those of the target")
        return lattice_quotient(pre_lat, rel_lat).torsion

    def t2_prime(self) -> FgAbelianGroup:
        return _torsion_of_cokernel(self.phi_prime(2), 15)

    def corrected_ranks(self) -> tuple[list[int], int]:
        return corrected_ranks_from(self)


def corrected_ranks_from(asm: Codim3Assembly) -> tuple[list[int], int]:
    """Closed-form rational ranks D_0..D_3 and the combinatorial Euler count."""
    c, nu = asm.c, 2
    Q = Ring()

    def R(s: int) -> int:
        t1 = Q.image(asm.phi_prime(s), comb(6, s + 2))
        t2 = sum(Q.image(asm.beta_alpha(ai, s), comb(4, s + 1)) for ai in range(asm.L2)) if s + 1 <= 2 else 0
        t3 = 0
        if s + 1 <= 2:
            blk = comb(2, s + 1)
            gens = []
            for ai in range(asm.L2):
                ga = asm.gamma_alpha(ai, s)
                kg = Q.kernel_gens(ga, comb(6, s + 1))
                gens.extend(asm.j_rows(ai, kg, blk))
            t3 = Q.image(gens, asm.L1 * blk)
        return t1 + t2 + t3

    L0, L1, L2 = asm.L0, asm.L1, asm.L2
    sum_L1a = sum(len(ids) for ids in asm.lines_in)
    e = (L0 - sum(c.L_in(2, a.id, 0) for a in asm.planes)
         + sum(c.L_in(1, t, 0) for ids in asm.lines_in for t in ids)
         - sum(c.L_in(1, t.id, 0) for t in asm.lines))
    D = [0] * 4
    for s in range(1, 4):
        D[s] = (comb(3 * nu, s + 3) + L2 * comb(2 * nu, s + 2) + sum_L1a * comb(nu, s + 1)
                + L1 * comb(nu, s + 2) - R(s) - R(s + 1))
    D[0] = (sum((-1) ** j * comb(3 * nu, 3 - j) for j in range(4))
            + L2 * sum((-1) ** j * comb(2 * nu, 2 - j) for j in range(3))
            + sum_L1a * sum((-1) ** j * comb(nu, 1 - j) for j in range(2))
            + L1 * sum((-1) ** j * comb(nu, 2 - j) for j in range(3))
            + e - R(1))
    return D, e


def corrected_ranks(scheme, complex_: SingularComplex) -> tuple[list[int], int]:
    return corrected_ranks_from(Codim3Assembly(scheme, complex_))


# ---------------------------------------------------------------------------
# extension problem


@dataclass
class ExtensionOutcome:
    group: FgAbelianGroup  # torsion subgroup of H_0
    status: str  # "OK", "PASSTHROUGH" or "PARTIAL"
    trace: dict
    candidates: list  # FgAbelianGroup candidates left (length 1 unless PARTIAL)


def _p_exponents(g: FgAbelianGroup, p: int) -> list[int]:
    out = []
    for f in g.invariant_factors:
        e = factorize(f).get(p, 0)
        if e:
            out.append(e)
    return sorted(out)


def _prime_power_group(p: int, exps) -> FgAbelianGroup:
    return FgAbelianGroup.from_orders(0, [p**e for e in exps])


def resolve_extension(sub: FgAbelianGroup, quotient_torsion: FgAbelianGroup, count, max_candidates: int = 100_000) -> ExtensionOutcome:
    """Torsion T of an extension 0 -> A -> T + Z^D -> B -> 0, A = ``sub`` torsion part.

    ``count(p, k)`` must return S(k) = sum_i min(k, e_i) over the p-primary
    cyclic factors Z/p^{e_i} of T (i.e. the length of T (x) Z/p^k).
    Primes not dividing B pass through unchanged.
    """
    sub, quotient_torsion = sub.torsion, quotient_torsion.torsion
    if quotient_torsion.is_trivial:
        return ExtensionOutcome(sub, "PASSTHROUGH", {"reason": "quotient torsion free"}, [sub])
    trace = {"primes": {}}
    orders = []
    partial = False
    cand_all = []
    for p in sorted(set(sub.primes()) | set(quotient_torsion.primes())):
        ea, eb = _p_exponents(sub, p), _p_exponents(quotient_torsion, p)
        if not eb:
            orders.extend(p**e for e in ea)
            trace["primes"][str(p)] = {"passthrough": True}
            continue
        rank = count(p, 1)
        bound = (max(ea) if ea else 0) + max(eb)
        lo, hi = sum(ea), sum(ea) + sum(eb)
        cands = [list(c) for c in combinations_with_replacement(range(1, bound + 1), rank)
                 if lo <= sum(c) <= hi] if rank else [[]]
        if len(cands) > max_candidates:
            raise InconsistencyError("too many extension candidates")
        steps = [{"k": 1, "S": rank, "candidates": [str(_prime_power_group(p, c)) for c in cands]}]
        k = 2
        while len(cands) > 1 and k <= bound:
            s = count(p, k)
            cands = [c for c in cands if sum(min(k, e) for e in c) == s]
            steps.append({"k": k, "S": s, "candidates": [str(_prime_power_group(p, c)) for c in cands]})
            k += 1
        info = {"rank": rank, "exponent_bound": bound, "order_range": [lo, hi], "steps": steps}
        if not cands:
            raise InconsistencyError(f"no extension candidate matches the Z/{p}^k counts")
        if len(cands) > 1:
            partial = True
            info["ambiguous"] = True
        chosen = cands[0]
        info["selected"] = str(_prime_power_group(p, chosen))
        info["torsion_sequence_exact"] = sum(chosen) == hi
        trace["primes"][str(p)] = info
        orders.extend(p**e for e in chosen)
        cand_all.append([_prime_power_group(p, c) for c in cands])
    group = FgAbelianGroup.from_orders(0, orders)
    return ExtensionOutcome(group, "PARTIAL" if partial else "OK", trace, [group] if not partial else cand_all)


# ---------------------------------------------------------------------------
# codim 3 driver


def codim3(scheme, complex_: SingularComplex) -> HomologyResult:
    asm = Codim3Assembly(scheme, complex_)
    Q = Ring()
    table = asm.length_table(Q)
    D = table["H"]
    t1p, t1pp, t0p, t2p = asm.t1_prime(), asm.t1_double_prime(), asm.t0_prime(), asm.t2_prime()
    sub = t1p + t1pp

    def count(p: int, k: int) -> int:
        return asm.lengths(Ring(p, k))[0] - k * D[0]

    ext = resolve_extension(sub, t0p, count)
    groups = [
        FgAbelianGroup(D[0], ext.group.invariant_factors),
        FgAbelianGroup(D[1], t2p.invariant_factors),
        FgAbelianGroup.free(D[2]),
        FgAbelianGroup.free(D[3]),
    ]
    diag = {
        "L0": asm.L0,
        "L1": asm.L1,
        "L2": asm.L2,
        "t1_prime": str(t1p),
        "t1_double_prime": str(t1pp),
        "t0_prime": str(t0p),
        "coker_beta1_alpha_torsion": [str(_torsion_of_cokernel(asm.beta_alpha(ai, 1), 6)) for ai in range(asm.L2)],
        "extension": {"status": ext.status, **ext.trace},
    }
    for p in t0p.primes():
        R = Ring(p, 2)
        diag.setdefault("coker_phi1_double_prime_order", {})[f"Z/{p}^2"] = \
            f"{p}^{asm.length_table(R)['coker_phi1_double_prime']}"
    res = HomologyResult(scheme.name, 3, 3, groups, diagnostics=diag, status="PARTIAL" if ext.status == "PARTIAL" else "OK")
    res._assembly = asm  # reused by modp_ranks
    return res


# ---------------------------------------------------------------------------
# generic drivers


def assembly(scheme, complex_):
    if scheme.n == 1:
        return None
    if scheme.n == 2:
        return Codim2Assembly(scheme, complex_)
    return Codim3Assembly(scheme, complex_)


def ring_lengths(scheme, complex_, ring: Ring, asm=None) -> list[int]:
    """Lengths of H_k(Gamma; C^n (x) R), k = 0..d."""
    if scheme.n == 1:
        return lengths_codim1(scheme, complex_, ring)
    asm = asm or assembly(scheme, complex_)
    return asm.lengths(ring)


def modp_ranks(scheme, complex_, p: int, asm=None) -> list[int]:
    fac = factorize(p)
    if len(fac) != 1 or fac.get(p) != 1:
        raise ValueError(f"{p} is not prime")
    return ring_lengths(scheme, complex_, Ring(p, 1), asm)


def torsion_ranks(D, Dp) -> list[int]:
    if len(D) != len(Dp):
        raise ValueError("rank lists differ in length")
    out, prev = [], 0
    for k, (a, b) in enumerate(zip(D, Dp)):
        t = b - a - prev
        if t < 0:
            raise InconsistencyError(f"negative torsion rank in degree {k}: D={a}, D^p={b}, T_(k-1)={prev}")
        out.append(t)
        prev = t
    return out


def compute(scheme, complex_, primes=None) -> HomologyResult:
    """Integral groups, mod-p ranks for the requested primes, band check and K-theory."""
    n = scheme.n
    if n == 1:
        res = codim1(scheme, complex_)
        asm = None
    elif n == 2:
        res = codim2(scheme, complex_)
        asm = assembly(scheme, complex_)
    elif n == 3:
        res = codim3(scheme, complex_)
        asm = res.__dict__.pop("_assembly")
    else:
        raise HomologyError(f"codimension {n} not supported (1, 2 or 3 only)")
    if primes is None:
        primes = default_primes(res)
    for p in sorted(set(primes)):
        Dp = modp_ranks(scheme, complex_, p, asm)
        res.modp_ranks[p] = Dp
        res.torsion_ranks[p] = torsion_ranks(res.ranks, Dp)
    if n == 3:
        Dc, e = corrected_ranks_from(asm)
        res.diagnostics["corrected_ranks"] = Dc
        res.diagnostics["euler_count"] = e
    res.diagnostics["torsion_band"] = torsion_band_check(res, scheme.d, n)
    if scheme.d <= 3:
        res.ktheory = ktheory(res, scheme.d)
    return res


def default_primes(res: HomologyResult) -> list[int]:
    ps = set(DEFAULT_PRIMES)
    for g in res.groups:
        ps.update(g.primes())
    return sorted(ps)


# ---------------------------------------------------------------------------
# checks and K-theory


def torsion_band_check(res: HomologyResult, d: int, n: int) -> dict:
    """No torsion for s >= (n-1)d/n, and H_s = Z^C(n+d, d-s) for s > (n-1)d/n."""
    bound = Fraction((n - 1) * d, n)
    violations = []
    for s, g in enumerate(res.groups):
        if s >= bound and not g.is_free:
            violations.append(f"torsion in H_{s} at or above the band bound {bound}")
        if s > bound and g != FgAbelianGroup.free(comb(n + d, d - s)):
            violations.append(f"H_{s} = {g}, expected Z^{comb(n + d, d - s)}")
    for s in range(d + 1, len(res.groups)):
        if not res.groups[s].is_trivial:
            violations.append(f"H_{s} nonzero above d")
    if res.groups and res.groups[d] != FgAbelianGroup.free(1):
        violations.append(f"top group H_{d} = {res.groups[d]}, expected Z")
    return {"bound": str(bound), "ok": not violations, "violations": violations}


def ktheory(res: HomologyResult, d: int) -> tuple[FgAbelianGroup, FgAbelianGroup]:
    """K^0 = sum of H_{d-2r}, K^1 = sum of H_{d-2r-1} (cohomology degrees even/odd)."""
    if d > 3:
        raise HomologyError("equivalence open for d >= 4: K-theory is not assembled")
    k0, k1 = FgAbelianGroup(), FgAbelianGroup()
    for i in range(d + 1):  # cohomological degree i <-> H_{d-i}
        g = res.groups[d - i]
        if i % 2 == 0:
            k0 = k0 + g
        else:
            k1 = k1 + g
    return k0, k1
