"""Certificates tying the operator algebra to the covering machinery.

verify_main checks the conjugation identity ψ·A_cover = A_base·ψ with an
explicitly constructed ψ.  The remaining certificates are consequences
checked in their own right: characteristic-polynomial divisibility for
trivial twists, full factorization over the irreducibles of a normal
cover's deck group, spanning-tree and rooted-forest divisibility through
the Laplacian, dimer determinant factorization under an odd cyclic
symmetry, and the torus product identity.  Exact arithmetic throughout,
except where roots of unity force the floating domain.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .covering import (
    CosetData,
    CoveringMap,
    coset_data,
    edge_voltage_cover,
    is_normal,
)
from .domains import CC, ComplexDomain, QQ
from .errors import (
    CoverNotConnectedError,
    DivisionFailedError,
    DomainMismatchError,
    EvenDegreeError,
    IrreducibleCountMismatchError,
    NotAbelianError,
    NotNormalError,
    NotPlanarQuotientError,
)
from .graphs import Graph, RotationSystem, faces, is_connected
from .homotopy import spanning_tree
from .matrix import Matrix, charpoly, charpoly_coeffs_numeric, det, pfaffian
from .operators import (
    EdgeWeights,
    kasteleyn_orientation,
    kasteleyn_weights,
    laplacian,
    lift_weights,
    twisted_adjacency,
)
from .oracles import matching_sum
from .poly import MultiPoly, PolyDomain, VarRegistry
from .representation import (
    Connection,
    Representation,
    InducedRep,
    abelian_characters,
    connection_from_rep,
    induce,
    permutation_complement,
    rep_of_word,
    trivial_connection,
    trivial_representation,
)


def unoriented_values(g: Graph, x: EdgeWeights) -> list:
    """One weight per unoriented edge, in unoriented index order."""
    return [x.values[e] for (e, _) in g.unoriented]


def _lift_matrix(m: Matrix, dom) -> Matrix:
    return Matrix(dom, [[dom.coerce(v) for v in row] for row in m.data],
                  m.block_size)


# ---------------------------------------------------------------------------
# the conjugation certificate


@dataclass(frozen=True)
class ConjugacyCertificate:
    """ψ together with the two operators it is claimed to intertwine."""

    psi: Matrix
    a_cover: Matrix
    a_base: Matrix
    commutes: bool
    vertex_dets: tuple
    max_deficit: float | None

    @property
    def invertible(self) -> bool:
        dom = self.psi.domain
        return all(not dom.is_zero(d) for d in self.vertex_dets)

    @property
    def ok(self) -> bool:
        return self.commutes and self.invertible


def build_psi(p: CoveringMap, cd: CosetData, rho: Representation,
              irho: InducedRep) -> Matrix:
    """Block matrix sending a cover function f to
    v ↦ Σ_{ṽ over v} ρ#(g_ṽ)(embedded f(ṽ)).

    The column of ṽ places the first block column of ρ#(g_ṽ) (the block
    of the trivial-coset representative) into the row block of p(ṽ), so
    ψ splits as one square block per base vertex.
    """
    if not is_connected(p.cover):
        raise CoverNotConnectedError("psi needs a connected cover")
    m = rho.degree
    md = irho.rep.degree
    dom = irho.rep.domain
    nc = p.cover.num_vertices
    nb = p.base.num_vertices
    data = [[dom.zero] * (nc * m) for _ in range(nb * md)]
    for vt in range(nc):
        mat = rep_of_word(irho.rep, cd.g_word[vt])
        v = p.p_vertex[vt]
        for i in range(md):
            row = data[v * md + i]
            for j in range(m):
                row[vt * m + j] = mat[i, j]
    return Matrix(dom, data, block_size=m)


def psi_vertex_determinants(p: CoveringMap, psi: Matrix, m: int) -> tuple:
    """Determinant of each base vertex's square block of ψ."""
    md = m * p.degree
    dets = []
    for v in range(p.base.num_vertices):
        rows = range(v * md, (v + 1) * md)
        cols = [vt * m + j for vt in p.vertex_fibers[v] for j in range(m)]
        dets.append(det(psi.submatrix(rows, cols)))
    return tuple(dets)


def verify_main(p: CoveringMap, cd: CosetData, rho: Representation,
                x: EdgeWeights) -> ConjugacyCertificate:
    """Certify ψ·A^ρ_cover = A^{ρ#}_base·ψ with ψ invertible.

    The cover operator twists by ρ through the cover's own presentation;
    the base operator twists by the induced representation.  Weights on
    the cover are the base weights lifted."""
    ind = induce(cd, rho)
    conn_cover = connection_from_rep(cd.cover_pres, rho)
    conn_base = connection_from_rep(cd.base_pres, ind.rep)
    a_cover = twisted_adjacency(p.cover, lift_weights(p, x), conn_cover)
    a_base = twisted_adjacency(p.base, x, conn_base)
    psi = build_psi(p, cd, rho, ind)
    dets = psi_vertex_determinants(p, psi, rho.degree)
    psi_op = _lift_matrix(psi, a_cover.domain)
    lhs = psi_op * a_cover
    rhs = a_base * psi_op
    commutes = lhs.eq(rhs)
    deficit = None
    if isinstance(rho.domain, ComplexDomain):
        deficit = max((abs(complex(a) - complex(b))
                       for ra, rb in zip(lhs.data, rhs.data)
                       for a, b in zip(ra, rb)), default=0.0)
    return ConjugacyCertificate(psi, a_cover, a_base, commutes, dets, deficit)


# ---------------------------------------------------------------------------
# divisibility certificates


@dataclass(frozen=True)
class DivisibilityCertificate:
    dividend: MultiPoly
    divisor: MultiPoly
    quotient: MultiPoly
    integral: bool

    def check_product(self) -> bool:
        return self.divisor * self.quotient == self.dividend


def _exact_divide(dividend: MultiPoly, divisor: MultiPoly,
                  what: str) -> DivisibilityCertificate:
    q = dividend.exact_div(divisor)
    if q is None:
        raise DivisionFailedError(
            f"{what}: division left a remainder\n"
            f"  dividend = {dividend.to_text()}\n"
            f"  divisor  = {divisor.to_text()}")
    return DivisibilityCertificate(dividend, divisor, q, q.is_integral())


@dataclass(frozen=True)
class Cor1Result:
    """Untwisted charpoly divisibility along a cover, with the quotient
    identified as the charpoly of the complement representation."""

    certificate: DivisibilityCertificate
    quotient_monic: bool
    complement_matches: bool

    @property
    def ok(self) -> bool:
        return (self.certificate.integral and self.quotient_monic
                and self.complement_matches)


def cor1_certificate(p: CoveringMap, x: EdgeWeights,
                     cd: CosetData | None = None) -> Cor1Result:
    if not is_connected(p.cover):
        raise CoverNotConnectedError("divisibility needs a connected cover")
    if cd is None:
        cd = coset_data(p, spanning_tree(p.base, p.base_vertex))
    a_cover = twisted_adjacency(p.cover, lift_weights(p, x),
                                trivial_connection(QQ, p.cover.num_edges))
    a_base = twisted_adjacency(p.base, x,
                               trivial_connection(QQ, p.base.num_edges))
    cp_cover = charpoly(a_cover)
    cp_base = charpoly(a_base)
    cert = _exact_divide(cp_cover, cp_base, "cover/base charpoly")
    q = cert.quotient
    d = p.degree
    n = p.base.num_vertices
    want = (d - 1) * n
    deg = q.degree_in("lambda")
    if want == 0:
        monic = q == MultiPoly.one(q.reg)
    else:
        top = q.coefficient_of("lambda", deg)
        monic = (deg == want and top.is_constant()
                 and top.constant_value() == 1)
    if d == 1:
        comp_ok = q == MultiPoly.one(q.reg)
    else:
        ind = induce(cd, trivial_representation(QQ, cd.cover_pres.rank))
        pos0 = cd.fiber.index(p.cover_base_vertex)
        rho_c = permutation_complement(ind.rep, fixed=pos0)
        a_comp = twisted_adjacency(p.base, x,
                                   connection_from_rep(cd.base_pres, rho_c))
        comp_ok = q == charpoly(a_comp)
    return Cor1Result(cert, monic, comp_ok)


# ---------------------------------------------------------------------------
# normal covers: factorization over the deck group's irreducibles


@dataclass(frozen=True)
class Cor2Result:
    exact: bool
    matches: bool
    lhs: object
    rhs: object
    factor_degrees: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.matches


def _coeff_list(poly: MultiPoly, n: int) -> list[complex]:
    by = poly.by_var("lambda")
    out = []
    for k in range(n + 1):
        c = by.get(k)
        if c is None:
            out.append(0j)
        else:
            if not c.is_constant():
                raise DomainMismatchError(
                    "numeric comparison needs scalar weights")
            out.append(complex(c.constant_value()))
    return out


def _conv(a: list[complex], b: list[complex]) -> list[complex]:
    out = [0j] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def cor2_certificate(p: CoveringMap, pres, x: EdgeWeights,
                     irreducibles: list[Representation] | None = None,
                     rtol: float = 1e-9, atol: float = 1e-12) -> Cor2Result:
    """charpoly(A_cover) = Π over irreducibles ρ of charpoly(A^ρ)^{deg ρ}.

    Abelian deck groups generate their own character list; otherwise the
    caller supplies the irreducibles (as representations of the base
    loop group, one per conjugacy-class worth, Σ deg² = group order)."""
    normal, galois = is_normal(p, pres)
    if not normal:
        raise NotNormalError("factorization requires a normal cover")
    if irreducibles is None:
        if not galois.is_abelian():
            raise NotAbelianError(
                "supply irreducibles for a non-abelian deck group")
        irreducibles = abelian_characters(galois)
    total = sum(r.degree ** 2 for r in irreducibles)
    if total != galois.order:
        raise IrreducibleCountMismatchError(
            f"sum of squared degrees {total} != group order {galois.order}")
    a_cover = twisted_adjacency(p.cover, lift_weights(p, x),
                                trivial_connection(QQ, p.cover.num_edges))
    cp_cover = charpoly(a_cover)
    exact = all(r.domain.exact for r in irreducibles)
    degrees = tuple(r.degree for r in irreducibles)
    if exact:
        prod = None
        for r in irreducibles:
            a = twisted_adjacency(p.base, x, connection_from_rep(pres, r))
            f = charpoly(a) ** r.degree
            prod = f if prod is None else prod * f
        return Cor2Result(True, cp_cover == prod, cp_cover, prod, degrees)
    if isinstance(x.domain, PolyDomain):
        raise DomainMismatchError(
            "floating characters need numeric weights")
    n_cover = a_cover.nrows
    lhs = _coeff_list(cp_cover, n_cover)
    rhs = [1 + 0j]
    for r in irreducibles:
        a = twisted_adjacency(p.base, x, connection_from_rep(pres, r))
        coeffs = charpoly_coeffs_numeric(a)
        for _ in range(r.degree):
            rhs = _conv(rhs, coeffs)
    cc = ComplexDomain(rtol, atol)
    matches = len(lhs) == len(rhs) and all(cc.eq(a, b)
                                           for a, b in zip(lhs, rhs))
    return Cor2Result(False, matches, lhs, rhs, degrees)


# ---------------------------------------------------------------------------
# spanning trees and rooted forests through the Laplacian


@dataclass(frozen=True)
class TreesResult:
    st: DivisibilityCertificate
    rsf: DivisibilityCertificate
    base_charpoly: MultiPoly
    cover_charpoly: MultiPoly
    coefficient_checks: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return (self.st.integral and self.rsf.integral
                and all(flag for _, flag in self.coefficient_checks))


def spanning_tree_polynomial(P: MultiPoly, n: int) -> MultiPoly:
    """Z_ST from the Laplacian charpoly: (−1)^{n−1}·c₁/n, divided in
    ℚ[x] and required to land back in ℤ[x]."""
    c1 = P.coefficient_of("lambda", 1)
    scaled = c1 * Fraction((-1) ** (n - 1), n)
    if not scaled.is_integral():
        raise DivisionFailedError(
            f"c1/n left non-integer coefficients: {scaled.to_text()}")
    return scaled


def rooted_forest_polynomial(P: MultiPoly, n: int) -> MultiPoly:
    """Z_RSF = ±P(−1), with the sign making coefficients positive."""
    val = P.eliminate("lambda", -1)
    return val if n % 2 == 0 else -val


def _laplacian_charpoly(g: Graph, x: EdgeWeights) -> MultiPoly:
    return charpoly(laplacian(g, x))


def _as_poly(reg: VarRegistry, dom, value) -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value.lift(reg) if value.reg.names != reg.names else value
    return MultiPoly.const(reg, value)


def _coefficient_checks(tag: str, g: Graph, x: EdgeWeights,
                        P: MultiPoly) -> list[tuple[str, bool]]:
    n = g.num_vertices
    dom = x.domain
    twice = dom.zero
    for (e, _) in g.unoriented:
        if g.src[e] != g.tgt[e]:
            twice = dom.add(twice, dom.add(x.values[e], x.values[e]))
    cn1 = P.coefficient_of("lambda", n - 1)
    expected = _as_poly(cn1.reg, dom, dom.neg(twice))
    return [
        (f"{tag}: c_{{n-1}} = -2*sum(x)", cn1 == expected),
        (f"{tag}: c_0 = 0", P.coefficient_of("lambda", 0).is_zero),
    ]


def tree_certificates(p: CoveringMap, x: EdgeWeights) -> TreesResult:
    """Divisibility of the spanning-tree and rooted-forest polynomials
    along a connected cover, extracted from Laplacian charpolys."""
    if not is_connected(p.cover):
        raise CoverNotConnectedError("tree counts need a connected cover")
    if not is_connected(p.base):
        raise CoverNotConnectedError("tree counts need a connected base")
    xl = lift_weights(p, x)
    P_base = _laplacian_charpoly(p.base, x)
    P_cover = _laplacian_charpoly(p.cover, xl)
    nb = p.base.num_vertices
    nc = p.cover.num_vertices
    st = _exact_divide(spanning_tree_polynomial(P_cover, nc),
                       spanning_tree_polynomial(P_base, nb),
                       "spanning-tree polynomial")
    rsf = _exact_divide(rooted_forest_polynomial(P_cover, nc),
                        rooted_forest_polynomial(P_base, nb),
                        "rooted-forest polynomial")
    checks = (_coefficient_checks("base", p.base, x, P_base)
              + _coefficient_checks("cover", p.cover, xl, P_cover))
    return TreesResult(st, rsf, P_base, P_cover, tuple(checks))


def forest_coefficient_checks(g: Graph, x: EdgeWeights) -> list[tuple[int, bool]]:
    """Every Laplacian charpoly coefficient against the forest oracle:
    (−1)^{n−i}·c_i must equal the i-component rooted-forest sum."""
    from .oracles import rooted_forest_sum_by_components
    P = _laplacian_charpoly(g, x)
    n = g.num_vertices
    dom = x.domain
    oracle = rooted_forest_sum_by_components(g, dom, unoriented_values(g, x))
    out = []
    for i in range(n + 1):
        ci = P.coefficient_of("lambda", i)
        lhs = ci if (n - i) % 2 == 0 else -ci
        rhs = _as_poly(ci.reg, dom, oracle.get(i, dom.zero))
        out.append((i, lhs == rhs))
    return out


# ---------------------------------------------------------------------------
# dimers under an odd cyclic symmetry


@dataclass(frozen=True)
class DimerResult:
    det_identity: bool
    matching_cert: DivisibilityCertificate
    pf_base_squared_ok: bool
    pf_cover_squared_ok: bool
    z_base: MultiPoly
    z_cover: MultiPoly

    @property
    def ok(self) -> bool:
        return (self.det_identity and self.matching_cert.integral
                and self.pf_base_squared_ok and self.pf_cover_squared_ok)


def _shift_complement(d: int, k: int) -> Matrix:
    """Action of the shift by k on the zero-sum complement of the
    ℤ/d permutation module, in the basis e_j − e_0 (j = 1..d−1)."""
    dom = QQ
    size = d - 1
    data = [[dom.zero] * size for _ in range(size)]
    k = k % d
    for j in range(1, d):
        tgt_up = (j + k) % d
        if tgt_up != 0:
            data[tgt_up - 1][j - 1] = dom.add(data[tgt_up - 1][j - 1], 1)
        if k != 0:
            data[k - 1][j - 1] = dom.sub(data[k - 1][j - 1], 1)
    return Matrix(dom, data)


def cyclic_complement_connection(g: Graph, zd_volt: tuple[int, ...],
                                 d: int) -> Connection:
    """Per-edge complement matrices from ℤ/d edge voltages; models the
    regular representation minus its trivial summand."""
    mats = tuple(_shift_complement(d, zd_volt[e]) for e in range(g.num_edges))
    return Connection(QQ, d - 1, mats)


def dimer_certificate(g: Graph, rot: RotationSystem,
                      zd_volt: tuple[int, ...], d: int,
                      x: EdgeWeights) -> DimerResult:
    """Determinant factorization and dimer divisibility for a cover with
    odd cyclic symmetry over a planar quotient."""
    if d < 1 or d % 2 == 0:
        raise EvenDegreeError(f"cyclic symmetry order must be odd, got {d}")
    fc = faces(g, rot)
    if fc.euler_characteristic != 2:
        raise NotPlanarQuotientError(
            f"quotient embedding has Euler characteristic "
            f"{fc.euler_characteristic}")
    p = edge_voltage_cover(g, tuple((b,) for b in zd_volt), (d,))
    if not is_connected(p.cover):
        raise CoverNotConnectedError("dimer cover is disconnected")
    orient = kasteleyn_orientation(g, rot)
    kw = kasteleyn_weights(g, orient, x)
    a_base = twisted_adjacency(g, kw, trivial_connection(QQ, g.num_edges))
    a_cover = twisted_adjacency(p.cover, lift_weights(p, kw),
                                trivial_connection(QQ, p.cover.num_edges))
    a_comp = twisted_adjacency(g, kw, cyclic_complement_connection(g, zd_volt, d))
    det_cover = det(a_cover)
    det_base = det(a_base)
    det_comp = det(a_comp)
    det_ok = det_cover == det_base * det_comp

    dom = x.domain
    pd = dom if isinstance(dom, PolyDomain) else PolyDomain(VarRegistry(()), dom)
    z_base = pd.coerce(matching_sum(g, dom, unoriented_values(g, x)))
    z_cover = pd.coerce(matching_sum(p.cover, dom,
                                     unoriented_values(p.cover,
                                                       lift_weights(p, x))))
    cert = _exact_divide(z_cover, z_base, "dimer partition function")

    pf_b = pd.coerce(pfaffian(a_base))
    pf_c = pd.coerce(pfaffian(a_cover))
    pf_base_ok = (pf_b * pf_b == pd.coerce(det_base)
                  and pf_b * pf_b == z_base * z_base)
    pf_cover_ok = (pf_c * pf_c == pd.coerce(det_cover)
                   and pf_c * pf_c == z_cover * z_cover)
    return DimerResult(det_ok, cert, pf_base_ok, pf_cover_ok, z_base, z_cover)


# ---------------------------------------------------------------------------
# the torus product identity


@dataclass(frozen=True)
class KosResult:
    lhs: complex
    rhs: complex
    factors: tuple[complex, ...]
    ok: bool


def kos_certificate(g: Graph, z2_volt: tuple[tuple[int, int], ...],
                    x: EdgeWeights, m: int, n: int,
                    rtol: float = 1e-9, atol: float = 1e-12) -> KosResult:
    """det of the m×n torus cover's adjacency against the product of the
    character-twisted base determinants over all (z, w) root pairs."""
    if isinstance(x.domain, PolyDomain):
        raise DomainMismatchError("the torus identity is numeric; "
                                  "use rational or unit weights")
    p = edge_voltage_cover(g, z2_volt, (m, n))
    a_cover = twisted_adjacency(p.cover, lift_weights(p, x),
                                trivial_connection(QQ, p.cover.num_edges))
    lhs = complex(det(a_cover))
    factors = []
    rhs = 1 + 0j
    for j in range(m):
        z = cmath.exp(2j * cmath.pi * j / m)
        for k in range(n):
            w = cmath.exp(2j * cmath.pi * k / n)
            mats = tuple(
                Matrix(CC, [[z ** z2_volt[e][0] * w ** z2_volt[e][1]]])
                for e in range(g.num_edges))
            a = twisted_adjacency(g, x, Connection(CC, 1, mats))
            f = det(a)
            factors.append(f)
            rhs *= f
    ok = abs(lhs - rhs) <= atol + rtol * max(abs(lhs), abs(rhs))
    return KosResult(lhs, rhs, tuple(factors), ok)
