"""Command line driver: one subcommand, one input document, one report.

Exit codes: 0 all checks pass, 1 a verified identity failed, 2 the
input is malformed or the construction does not apply to it, 3 an
enumeration or series budget was exceeded.  The report goes to stdout;
errors go to stderr.  Reports over exact domains are byte-stable
(timing lines only appear behind --timing).
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from .certificates import (
    cor1_certificate,
    cor2_certificate,
    dimer_certificate,
    kos_certificate,
    tree_certificates,
    unoriented_values,
    verify_main,
)
from .covering import (
    build_cover,
    coset_data,
    edge_voltage_cover,
    identity_cover,
    is_normal,
    validate_covering,
)
from .docio import (
    InputDocument,
    Report,
    document_weights,
    format_scalar,
    parse_input,
    render_report,
    serialize_input,
)
from .domains import QQ
from .errors import (
    BudgetExceededError,
    CovertwistError,
    DivisionFailedError,
    ParseError,
    SemanticError,
    TooLargeForExactExpansionError,
)
from .graphs import default_rotation, is_connected
from .homotopy import fundamental_presentation, spanning_tree
from .operators import EdgeWeights
from .oracles import (
    enum_forests,
    enum_perfect_matchings,
    enum_spanning_trees,
    matching_sum,
    rooted_forest_sum,
    rooted_forest_sum_by_components,
    tree_sum,
)
from .poly import MultiPoly, PolyDomain, VarRegistry
from .randinst import random_cover_instance
from .representation import Representation, trivial_representation
from .zeta import (
    amitsur_check,
    artin_axioms,
    l_series_inverse,
    prime_cycles,
    untwisted_l_series_inverse,
)


# ---------------------------------------------------------------------------
# shared construction steps


def _covering_from_doc(doc: InputDocument, r: Report):
    """Cover from the document: explicit voltage first, then cyclic
    voltages, then the identity cover as a last resort."""
    g = doc.graph
    if not is_connected(g):
        raise SemanticError("the graph is not connected")
    pres = fundamental_presentation(g, 0)
    if doc.voltage is not None:
        volt = doc.voltage
        if len(volt.perms) != pres.rank:
            raise SemanticError(
                f"voltage lists {len(volt.perms)} generators, the loop "
                f"rank is {pres.rank}")
        if not volt.is_transitive():
            raise SemanticError("cover disconnected: the voltage "
                                "permutations are not transitive")
        return build_cover(pres, volt), pres
    if doc.zd_voltages is not None:
        p = edge_voltage_cover(g, tuple((b,) for b in doc.zd_voltages),
                               (doc.zd_modulus,))
        return p, pres
    r.notes.append("no voltage section; using the identity cover")
    return identity_cover(g), pres


def _pick_rep(doc: InputDocument, rank: int, what: str) -> Representation | None:
    reps = doc.representations
    if not reps:
        return None
    if len(reps) == 1:
        name, rho = next(iter(reps.items()))
    elif "rho" in reps:
        name, rho = "rho", reps["rho"]
    else:
        raise SemanticError("several representations given; name the one "
                            "to use `rho`")
    if rho.rank != rank:
        raise SemanticError(
            f"representation {name!r} has {rho.rank} generators, "
            f"{what} needs {rank}")
    return rho


def _series_weights(x: EdgeWeights, var: str = "u") -> EdgeWeights:
    wdom = x.domain
    if isinstance(wdom, PolyDomain):
        if var in wdom.reg.names:
            raise SemanticError(f"series variable {var!r} collides with "
                                "a weight variable")
        pd = PolyDomain(wdom.reg.with_var(var), wdom.coeff)
    else:
        pd = PolyDomain(VarRegistry((var,)), wdom)
    u = MultiPoly.variable(pd.reg, var)
    return EdgeWeights(pd, tuple(pd.mul(u, pd.coerce(v)) for v in x.values))


def _datum_value(v) -> str:
    if isinstance(v, MultiPoly):
        return v.to_text()
    return format_scalar(v)


# ---------------------------------------------------------------------------
# command handlers


def _cmd_validate(args, doc: InputDocument) -> Report:
    r = Report("validate")
    g = doc.graph
    r.datum("vertices", g.num_vertices)
    r.datum("directed edges", g.num_edges)
    r.datum("unoriented edges", g.num_unoriented)
    if is_connected(g):
        r.datum("loop rank", g.num_unoriented - g.num_vertices + 1)
    r.check("graph well formed", True)
    r.check("graph connected", is_connected(g))
    once = serialize_input(doc)
    r.check("serialization stable", serialize_input(parse_input(once)) == once)
    return r


def _cmd_cover(args, doc: InputDocument) -> Report:
    r = Report("cover")
    if doc.voltage is None and doc.zd_voltages is None:
        raise SemanticError("cover needs a voltage or zdvoltage section")
    p, pres = _covering_from_doc(doc, r)
    r.datum("degree", p.degree)
    r.datum("cover vertices", p.cover.num_vertices)
    r.datum("cover edges", p.cover.num_edges)
    rep = validate_covering(p)
    r.check("covering consistent", rep.ok)
    for prob in rep.problems:
        r.notes.append(prob)
    r.check("cover connected", is_connected(p.cover))
    normal, galois = is_normal(p, pres)
    r.datum("normal", "yes" if normal else "no")
    if normal:
        r.datum("deck group order", galois.order)
        r.datum("deck group abelian", "yes" if galois.is_abelian() else "no")
    return r


def _suite_report(name: str, args, run_one) -> Report:
    r = Report(name)
    rng = random.Random(args.seed)
    r.notes.append(f"randomized suite: seed={args.seed} count={args.count}")
    for i in range(args.count):
        r.check(f"instance {i}", run_one(rng))
    return r


def _cmd_verify_main(args, doc: InputDocument | None) -> Report:
    if doc is None:
        def one(rng):
            inst = random_cover_instance(rng, max_degree=args.degree or 4)
            return verify_main(inst.covering, inst.coset, inst.rho,
                               inst.weights).ok
        return _suite_report("verify-main", args, one)
    r = Report("verify-main")
    p, pres = _covering_from_doc(doc, r)
    cd = coset_data(p, spanning_tree(p.base, p.base_vertex))
    rho = _pick_rep(doc, cd.cover_pres.rank, "the cover loop group")
    if rho is None:
        rho = trivial_representation(QQ, cd.cover_pres.rank)
        r.notes.append("no representation section; using the trivial one")
    x = document_weights(doc)
    cert = verify_main(p, cd, rho, x)
    r.datum("degree", p.degree)
    r.datum("representation degree", rho.degree)
    for v, d in enumerate(cert.vertex_dets):
        r.datum(f"intertwiner block det at {v}", _datum_value(d))
    if cert.max_deficit is not None:
        r.datum("max deficit", repr(cert.max_deficit))
    r.check("operators intertwine", cert.commutes)
    r.check("intertwiner invertible", cert.invertible)
    return r


def _cmd_cor1(args, doc: InputDocument | None) -> Report:
    if doc is None:
        def one(rng):
            inst = random_cover_instance(rng, max_vertices=4, max_edges=6,
                                         max_degree=args.degree or 4,
                                         cover_vertex_cap=16)
            return cor1_certificate(inst.covering, inst.weights,
                                    inst.coset).ok
        return _suite_report("cor1", args, one)
    r = Report("cor1")
    p, pres = _covering_from_doc(doc, r)
    cd = coset_data(p, spanning_tree(p.base, p.base_vertex))
    x = document_weights(doc)
    res = cor1_certificate(p, x, cd)
    cert = res.certificate
    r.datum("cover charpoly", cert.dividend)
    r.datum("base charpoly", cert.divisor)
    r.datum("quotient", cert.quotient)
    r.check("charpoly divisible", cert.check_product())
    r.check("quotient integer coefficients", cert.integral)
    r.check("quotient monic", res.quotient_monic)
    r.check("quotient matches complement twist", res.complement_matches)
    return r


def _cmd_cor2(args, doc: InputDocument) -> Report:
    r = Report("cor2")
    p, pres = _covering_from_doc(doc, r)
    irr = None
    if doc.irreducibles:
        irr = []
        for name, mult in doc.irreducibles:
            irr.extend([doc.representations[name]] * mult)
    x = document_weights(doc)
    res = cor2_certificate(p, pres, x, irreducibles=irr,
                           rtol=args.rtol, atol=args.atol)
    r.datum("factor degrees", " ".join(str(d) for d in res.factor_degrees))
    if res.exact:
        r.datum("cover charpoly", res.lhs)
        r.datum("factor product", res.rhs)
        r.check("factorization exact", res.matches)
    else:
        r.notes.append("floating characters; comparing coefficientwise "
                       f"at rtol={args.rtol} atol={args.atol}")
        r.check("factorization within tolerance", res.matches)
    return r


def _cmd_trees(args, doc: InputDocument | None) -> Report:
    if doc is None:
        def one(rng):
            inst = random_cover_instance(rng, max_vertices=4, max_edges=5,
                                         max_degree=args.degree or 3,
                                         cover_vertex_cap=12)
            return tree_certificates(inst.covering, inst.weights).ok
        return _suite_report("trees", args, one)
    r = Report("trees")
    p, pres = _covering_from_doc(doc, r)
    x = document_weights(doc)
    res = tree_certificates(p, x)
    r.datum("base tree sum", res.st.divisor)
    r.datum("cover tree sum", res.st.dividend)
    r.datum("tree quotient", res.st.quotient)
    r.datum("forest quotient", res.rsf.quotient)
    r.check("tree sum divisible", res.st.check_product())
    r.check("tree quotient integer coefficients", res.st.integral)
    r.check("forest sum divisible", res.rsf.check_product())
    r.check("forest quotient integer coefficients", res.rsf.integral)
    for tag, flag in res.coefficient_checks:
        r.check(tag, flag)
    return r


def _cmd_dimer(args, doc: InputDocument) -> Report:
    r = Report("dimer")
    if doc.zd_voltages is None:
        raise SemanticError("dimer needs a zdvoltage section")
    if args.degree is not None and args.degree != doc.zd_modulus:
        raise SemanticError(
            f"--degree {args.degree} disagrees with the document "
            f"modulus {doc.zd_modulus}")
    g = doc.graph
    rot = doc.rotation if doc.rotation is not None else default_rotation(g)
    if doc.rotation is None:
        r.notes.append("no rotation section; using the default rotation")
    x = document_weights(doc)
    res = dimer_certificate(g, rot, doc.zd_voltages, doc.zd_modulus, x)
    r.datum("degree", doc.zd_modulus)
    r.datum("base matching sum", res.z_base)
    r.datum("cover matching sum", res.z_cover)
    r.datum("matching quotient", res.matching_cert.quotient)
    r.check("determinant factorizes", res.det_identity)
    r.check("matching sum divisible", res.matching_cert.check_product())
    r.check("matching quotient integer coefficients",
            res.matching_cert.integral)
    r.check("base pfaffian squared", res.pf_base_squared_ok)
    r.check("cover pfaffian squared", res.pf_cover_squared_ok)
    return r


def _cmd_kos(args, doc: InputDocument) -> Report:
    r = Report("kos")
    if doc.z2_voltages is None:
        raise SemanticError("kos needs a z2voltage section")
    x = document_weights(doc)
    res = kos_certificate(doc.graph, doc.z2_voltages, x, args.m, args.n,
                          rtol=args.rtol, atol=args.atol)
    r.datum("torus", f"{args.m} x {args.n}")
    r.datum("cover determinant", repr(res.lhs))
    r.datum("character product", repr(res.rhs))
    r.check("torus determinant factorizes", res.ok)
    return r


def _cmd_zeta_lseries(args, doc: InputDocument) -> Report:
    r = Report("zeta-lseries")
    g = doc.graph
    if not is_connected(g):
        raise SemanticError("the graph is not connected")
    pres = fundamental_presentation(g, 0)
    rho = _pick_rep(doc, pres.rank, "the base loop group")
    x = _series_weights(document_weights(doc))
    if rho is None:
        out = untwisted_l_series_inverse(g, x)
    else:
        out = l_series_inverse(g, x, rho, pres)
    r.datum("reciprocal series", out)
    r.datum("primes through length " + str(args.max_length),
            len(prime_cycles(g, args.max_length)))
    r.check("constant term is one", out.constant_value() == 1)
    return r


def _cmd_zeta_amitsur(args, doc: InputDocument) -> Report:
    r = Report("zeta-amitsur")
    g = doc.graph
    if not is_connected(g):
        raise SemanticError("the graph is not connected")
    pres = fundamental_presentation(g, 0)
    rho = _pick_rep(doc, pres.rank, "the base loop group")
    if rho is None:
        rho = trivial_representation(QQ, pres.rank)
        r.notes.append("no representation section; using the trivial one")
    x = document_weights(doc)
    res = amitsur_check(g, x, rho, pres, max_length=args.max_length)
    r.datum("series length", res.max_length)
    r.datum("prime count", res.prime_count)
    r.datum("trace side", res.lhs)
    r.check("log derivative matches prime sum", res.matches)
    return r


def _cmd_artin(args, doc: InputDocument) -> Report:
    r = Report("artin-axioms")
    if doc.voltage is None:
        raise SemanticError("artin-axioms needs a voltage section")
    if doc.subgroup is None:
        raise SemanticError("artin-axioms needs a subgroup section")
    p, pres = _covering_from_doc(doc, r)
    if len(doc.subgroup[0]) != p.degree:
        raise SemanticError(
            f"subgroup permutations act on {len(doc.subgroup[0])} points, "
            f"the fiber has {p.degree}")
    x = document_weights(doc)
    res = artin_axioms(p, pres, doc.subgroup, x)
    r.datum("deck group order", res.group_order)
    r.datum("subgroup order", res.subgroup_order)
    r.check("identity axiom", res.identity_axiom)
    r.check("additivity axiom", res.additivity_axiom)
    r.check("inflation axiom", res.inflation_axiom)
    r.check("induction axiom", res.induction_axiom)
    return r


def _oracle_report(name: str, doc: InputDocument):
    r = Report(name)
    g = doc.graph
    x = document_weights(doc)
    vals = unoriented_values(g, x)
    return r, g, x.domain, vals


def _cmd_oracle_trees(args, doc: InputDocument) -> Report:
    r, g, dom, vals = _oracle_report("oracle-trees", doc)
    r.datum("spanning trees", len(enum_spanning_trees(g)))
    r.datum("tree sum", _datum_value(tree_sum(g, dom, vals)))
    return r


def _cmd_oracle_forests(args, doc: InputDocument) -> Report:
    r, g, dom, vals = _oracle_report("oracle-forests", doc)
    r.datum("spanning forests", len(enum_forests(g)))
    r.datum("rooted forest sum", _datum_value(rooted_forest_sum(g, dom, vals)))
    for k, v in sorted(rooted_forest_sum_by_components(g, dom, vals).items()):
        r.datum(f"rooted forest sum, {k} components", _datum_value(v))
    return r


def _cmd_oracle_matchings(args, doc: InputDocument) -> Report:
    r, g, dom, vals = _oracle_report("oracle-matchings", doc)
    r.datum("perfect matchings", len(enum_perfect_matchings(g)))
    r.datum("matching sum", _datum_value(matching_sum(g, dom, vals)))
    return r


_HANDLERS = {
    "validate": _cmd_validate,
    "cover": _cmd_cover,
    "verify-main": _cmd_verify_main,
    "cor1": _cmd_cor1,
    "cor2": _cmd_cor2,
    "trees": _cmd_trees,
    "dimer": _cmd_dimer,
    "kos": _cmd_kos,
    "zeta-lseries": _cmd_zeta_lseries,
    "zeta-amitsur": _cmd_zeta_amitsur,
    "artin-axioms": _cmd_artin,
    "oracle-trees": _cmd_oracle_trees,
    "oracle-forests": _cmd_oracle_forests,
    "oracle-matchings": _cmd_oracle_matchings,
}

_SUITE_COMMANDS = ("verify-main", "cor1", "trees")


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="covertwist",
        description="Twisted adjacency operators on graph coverings: "
                    "conjugation, divisibility and series certificates.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    def cmd(name, help_, *, seed=False, tol=False, length=False,
            degree=False, torus=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", metavar="PATH",
                       help="problem document to read")
        p.add_argument("--timing", action="store_true",
                       help="append elapsed time to the report")
        if seed:
            p.add_argument("--seed", type=int,
                           help="run a randomized suite instead of a file")
            p.add_argument("--count", type=int, default=10,
                           help="suite size (default 10)")
        if tol:
            p.add_argument("--rtol", type=float, default=1e-9,
                           help="relative tolerance for floating checks")
            p.add_argument("--atol", type=float, default=1e-12,
                           help="absolute tolerance for floating checks")
        if length:
            p.add_argument("--max-length", type=int, default=6,
                           dest="max_length",
                           help="cycle length horizon (default 6)")
        if degree:
            p.add_argument("--degree", type=int,
                           help="cover degree bound or cyclic degree")
        if torus:
            p.add_argument("--m", type=int, default=2,
                           help="torus rows (default 2)")
            p.add_argument("--n", type=int, default=2,
                           help="torus columns (default 2)")
        return p

    cmd("validate", "parse a document and confirm it is well formed")
    cmd("cover", "build the cover described by a voltage and summarize it")
    cmd("verify-main", "certify the intertwining of cover and base "
                       "operators", seed=True, degree=True)
    cmd("cor1", "untwisted charpoly divisibility along a cover",
        seed=True, degree=True)
    cmd("cor2", "charpoly factorization over the deck group characters",
        tol=True)
    cmd("trees", "spanning tree and rooted forest divisibility",
        seed=True, degree=True)
    cmd("dimer", "dimer determinant factorization for odd cyclic covers",
        degree=True)
    cmd("kos", "torus determinant against the character product",
        tol=True, torus=True)
    cmd("zeta-lseries", "reciprocal L-series determinant", length=True)
    cmd("zeta-amitsur", "log derivative against the prime cycle sum",
        length=True)
    cmd("artin-axioms", "character formalism on a normal abelian tower")
    cmd("oracle-trees", "brute force spanning tree enumeration")
    cmd("oracle-forests", "brute force rooted forest enumeration")
    cmd("oracle-matchings", "brute force perfect matching enumeration")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    t0 = time.perf_counter()
    handler = _HANDLERS[args.command]
    try:
        doc = None
        if args.input:
            try:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                print(f"error: cannot read {args.input}: {exc}",
                      file=sys.stderr)
                return 2
            doc = parse_input(text)
        elif args.command in _SUITE_COMMANDS and getattr(args, "seed",
                                                         None) is not None:
            pass
        else:
            hint = (" (or --seed for a randomized suite)"
                    if args.command in _SUITE_COMMANDS else "")
            print(f"error: --input is required{hint}", file=sys.stderr)
            return 2
        report = handler(args, doc)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SemanticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceededError, TooLargeForExactExpansionError) as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except DivisionFailedError as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return 1
    except CovertwistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.elapsed = time.perf_counter() - t0
    sys.stdout.write(render_report(report, show_timing=args.timing))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
