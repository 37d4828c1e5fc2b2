"""Edge zeta machinery: prime cycles, twisted L-series determinants,
the log-derivative identity, and the four formal axioms (identity,
additivity, inflation, induction) checked on abelian deck groups.

Cycles run on directed edges with the non-backtracking rule enforced
cyclically.  Primes are primitive cycles up to rotation only; a cycle
and its reversal count separately unless they coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .covering import (
    CoveringMap,
    is_normal,
    quotient_by_subgroup,
)
from .errors import (
    BudgetExceededError,
    NotAbelianError,
    NotNormalError,
    RegistryMismatchError,
)
from .graphs import Graph, Path
from .homotopy import Pi1Presentation, fundamental_presentation
from .matrix import Matrix, charpoly, det
from .operators import (
    EdgeWeights,
    lift_weights,
    line_digraph,
    pullback_connection,
    twisted_adjacency,
)
from .poly import MultiPoly, PolyDomain, VarRegistry
from .representation import (
    Representation,
    abelian_character_table,
    connection_from_rep,
    direct_sum,
    finite_group_induction,
    monodromy,
    representation,
    trivial_connection,
    trivial_representation,
)

AMITSUR_LENGTH_BUDGET = 12


# ---------------------------------------------------------------------------
# prime cycles


@dataclass(frozen=True)
class PrimeCycle:
    """Primitive cyclically non-backtracking closed cycle, stored as the
    lex-least rotation of its directed edge sequence."""

    edges: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)


def _canonical_rotation(cyc: tuple[int, ...]) -> tuple[int, ...]:
    best = cyc
    for r in range(1, len(cyc)):
        rot = cyc[r:] + cyc[:r]
        if rot < best:
            best = rot
    return best


def _is_primitive(cyc: tuple[int, ...]) -> bool:
    k = len(cyc)
    for d in range(1, k):
        if k % d == 0 and cyc == cyc[d:] + cyc[:d]:
            return False
    return True


def prime_cycles(g: Graph, max_length: int) -> list[PrimeCycle]:
    """All primes of length up to max_length, each once (lex-least
    rotation), in sorted order."""
    if max_length < 1:
        return []
    src, tgt, inv = g.src, g.tgt, g.inv
    out_edges = g.out_edges
    found: set[tuple[int, ...]] = set()

    def extend(path: list[int], first: int) -> None:
        last = path[-1]
        if tgt[last] == src[first] and inv[first] != last:
            found.add(_canonical_rotation(tuple(path)))
        if len(path) == max_length:
            return
        for e2 in out_edges[tgt[last]]:
            if e2 == inv[last] or e2 < first:
                continue
            path.append(e2)
            extend(path, first)
            path.pop()

    for e0 in range(g.num_edges):
        extend([e0], e0)
    return [PrimeCycle(c) for c in sorted(found) if _is_primitive(c)]


def cycle_weight(x: EdgeWeights, cyc: PrimeCycle):
    dom = x.domain
    out = dom.one
    for e in cyc.edges:
        out = dom.mul(out, x.values[e])
    return out


# ---------------------------------------------------------------------------
# L-series through the edge operator


def l_series_inverse(g: Graph, x: EdgeWeights, rho: Representation,
                     pres: Pi1Presentation):
    """det(I - M) for the twisted non-backtracking edge operator; the
    reciprocal of the weighted L-series."""
    conn = connection_from_rep(pres, rho)
    ld = line_digraph(g, x)
    M = twisted_adjacency(ld.digraph, ld.weights, pullback_connection(ld, conn))
    ident = Matrix.identity(M.domain, M.nrows, M.block_size)
    return det(ident - M)


def untwisted_l_series_inverse(g: Graph, x: EdgeWeights):
    ld = line_digraph(g, x)
    M = twisted_adjacency(ld.digraph, ld.weights,
                          trivial_connection(QQ_of(x), g.num_edges))
    ident = Matrix.identity(M.domain, M.nrows, M.block_size)
    return det(ident - M)


# ---------------------------------------------------------------------------
# the log-derivative identity, coefficientwise


@dataclass(frozen=True)
class AmitsurResult:
    lhs: MultiPoly
    rhs: MultiPoly
    matches: bool
    max_length: int
    prime_count: int

    @property
    def ok(self) -> bool:
        return self.matches


def amitsur_check(g: Graph, x: EdgeWeights, rho: Representation,
                  pres: Pi1Presentation, max_length: int = 8,
                  series_var: str = "u") -> AmitsurResult:
    """Σ_k tr(M^k)/k against Σ over primes γ and powers j of
    w(γ)^j·tr(ρ(γ)^j)/j, as exact polynomials in the series variable.

    Weights are multiplied by the series variable internally, making
    every operator entry homogeneous of degree one in it, so degrees up
    to max_length are complete without truncation bookkeeping."""
    if max_length > AMITSUR_LENGTH_BUDGET:
        raise BudgetExceededError(
            f"series length {max_length} exceeds {AMITSUR_LENGTH_BUDGET}")
    if max_length < 1:
        raise ValueError("series length must be positive")
    wdom = x.domain
    if isinstance(wdom, PolyDomain):
        if series_var in wdom.reg.names:
            raise RegistryMismatchError(
                f"series variable {series_var!r} collides with a weight")
        pd = PolyDomain(wdom.reg.with_var(series_var), wdom.coeff)
    else:
        pd = PolyDomain(VarRegistry((series_var,)), wdom)
    u = MultiPoly.variable(pd.reg, series_var)
    sx = EdgeWeights(pd, tuple(pd.mul(u, pd.coerce(v)) for v in x.values))

    conn = connection_from_rep(pres, rho)
    ld = line_digraph(g, sx)
    M = twisted_adjacency(ld.digraph, ld.weights, pullback_connection(ld, conn))
    dom = M.domain
    lhs = dom.zero
    power = Matrix.identity(dom, M.nrows, M.block_size)
    for k in range(1, max_length + 1):
        power = power * M
        lhs = lhs + power.trace() * Fraction(1, k)

    primes = prime_cycles(g, max_length)
    rhs = dom.zero
    for pc in primes:
        mono = monodromy(g, conn, Path(src_of_cycle(g, pc), pc.edges))
        w = cycle_weight(sx, pc)
        acc_m = mono
        acc_w = w
        j = 1
        while j * pc.length <= max_length:
            rhs = rhs + acc_w * acc_m.trace() * Fraction(1, j)
            j += 1
            acc_m = acc_m * mono
            acc_w = acc_w * w
    return AmitsurResult(lhs, rhs, lhs == rhs, max_length, len(primes))


def src_of_cycle(g: Graph, pc: PrimeCycle) -> int:
    return g.src[pc.edges[0]]


# ---------------------------------------------------------------------------
# the four formal axioms over an abelian deck group


@dataclass(frozen=True)
class ArtinResult:
    identity_axiom: bool
    additivity_axiom: bool
    inflation_axiom: bool
    induction_axiom: bool
    group_order: int
    subgroup_order: int

    @property
    def ok(self) -> bool:
        return (self.identity_axiom and self.additivity_axiom
                and self.inflation_axiom and self.induction_axiom)


def _char_charpoly(graph: Graph, x: EdgeWeights, pres: Pi1Presentation,
                   rep: Representation) -> MultiPoly:
    return charpoly(twisted_adjacency(graph, x,
                                      connection_from_rep(pres, rep)))


def _descend_perm(sigma, to_mid, mid_size: int):
    out = [-1] * mid_size
    for a, b in enumerate(sigma):
        i, j = to_mid[a], to_mid[b]
        if out[i] == -1:
            out[i] = j
        elif out[i] != j:
            raise NotNormalError("deck permutation does not descend")
    return tuple(out)


def artin_axioms(p: CoveringMap, pres: Pi1Presentation,
                 subgroup: tuple[tuple[int, ...], ...],
                 x: EdgeWeights) -> ArtinResult:
    """Identity, additivity, inflation and induction for the characters
    attached to a normal abelian cover and a chosen deck subgroup.

    Every comparison happens between characteristic polynomials of
    twisted vertex operators, which carry the same factorization data
    as the corresponding L-series."""
    normal, galois = is_normal(p, pres)
    if not normal:
        raise NotNormalError("axiom checks need a normal cover")
    if not galois.is_abelian():
        raise NotAbelianError("axiom checks run on abelian deck groups")
    table = abelian_character_table(list(galois.gen_perms),
                                    len(galois.fiber))
    dom_g = table.domain
    chars = [representation(dom_g, [Matrix(dom_g, [[v]]) for v in gv])
             for gv in table.gen_values]

    # identity: the trivial character twists to the plain operator
    a_plain = twisted_adjacency(p.base, x,
                                trivial_connection(QQ_of(x), p.base.num_edges))
    triv = trivial_representation(QQ_of(x), pres.rank)
    a_triv = twisted_adjacency(p.base, x, connection_from_rep(pres, triv))
    ax1 = a_triv.eq(a_plain) and charpoly(a_triv) == charpoly(a_plain)

    # additivity: direct sums multiply characteristic polynomials
    char_cp = [_char_charpoly(p.base, x, pres, r) for r in chars]
    ax2 = True
    for i in range(len(chars)):
        for j in range(i, len(chars)):
            cp = _char_charpoly(p.base, x, pres, direct_sum(chars[i], chars[j]))
            if cp != char_cp[i] * char_cp[j]:
                ax2 = False

    # quotient by the subgroup; both remaining axioms live on the tower
    qd = quotient_by_subgroup(p, galois, subgroup)
    mid = qd.mid_over_base
    mid_graph = mid.cover
    normal_mid, galois_mid = is_normal(mid, pres)
    if not normal_mid:
        raise NotNormalError("quotient cover is not normal")
    table_mid = abelian_character_table(list(galois_mid.gen_perms),
                                        len(galois_mid.fiber))
    dom_m = table_mid.domain

    # inflation: a quotient character pulled back through the full deck
    # group twists the same operator as the quotient cover's own action
    midpos = {vt: i for i, vt in enumerate(galois_mid.fiber)}
    to_mid = [midpos[qd.cover_over_mid.p_vertex[vt]] for vt in galois.fiber]
    proj_gens = [_descend_perm(gp, to_mid, len(galois_mid.fiber))
                 for gp in galois.gen_perms]
    ax3 = True
    for idx in range(table_mid.count):
        ev = table_mid.elem_values[idx]
        rep_a = representation(dom_m, [Matrix(dom_m, [[ev[pg]]])
                                       for pg in proj_gens])
        rep_b = representation(dom_m, [Matrix(dom_m, [[v]])
                                       for v in table_mid.gen_values[idx]])
        if (_char_charpoly(p.base, x, pres, rep_a)
                != _char_charpoly(p.base, x, pres, rep_b)):
            ax3 = False

    # induction: a subgroup character induced to the full group twists
    # the base the way the character itself twists the quotient graph
    com = qd.cover_over_mid
    mid_pres = fundamental_presentation(mid_graph, mid.cover_base_vertex)
    normal_h, galois_h = is_normal(com, mid_pres)
    if not normal_h:
        raise NotNormalError("cover over quotient is not normal")
    fiber_h = com.vertex_fibers[com.base_vertex]
    pos_h = {vt: i for i, vt in enumerate(fiber_h)}
    pos_cover = galois.position
    fiber_cover = galois.fiber

    def restrict(h):
        return tuple(pos_h[fiber_cover[h[pos_cover[vt]]]] for vt in fiber_h)

    rest_of = {h: restrict(h) for h in qd.subgroup}
    table_h = abelian_character_table(list(galois_h.gen_perms),
                                      len(galois_h.fiber))
    dom_h = table_h.domain
    xm = lift_weights(mid, x)
    ax4 = True
    for idx in range(table_h.count):
        ev = table_h.elem_values[idx]
        rep_mid = representation(dom_h, [Matrix(dom_h, [[v]])
                                         for v in table_h.gen_values[idx]])
        cp_mid = _char_charpoly(mid_graph, xm, mid_pres, rep_mid)
        rho_vals = {h: Matrix(dom_h, [[ev[rest_of[h]]]])
                    for h in qd.subgroup}
        matrix_at, _ = finite_group_induction(galois.elements, qd.subgroup,
                                              rho_vals, dom_h, 1)
        rep_ind = representation(dom_h, [matrix_at(gp)
                                         for gp in galois.gen_perms])
        cp_base = _char_charpoly(p.base, x, pres, rep_ind)
        if cp_mid != cp_base:
            ax4 = False

    return ArtinResult(ax1, ax2, ax3, ax4, galois.order, len(qd.subgroup))


def QQ_of(x: EdgeWeights):
    """Scalar domain usable for untwisted connections alongside x."""
    from .domains import QQ
    dom = x.domain
    if isinstance(dom, PolyDomain):
        return dom.coeff
    return dom if dom.exact else QQ
