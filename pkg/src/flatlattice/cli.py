"""Command-line front end.  Every command prints a JSON report; the exit
code is 0 when every record passes, 1 when a check fails and 2 on bad
input."""

from __future__ import annotations

import argparse
import sys
import warnings

from . import bergman as bg
from . import checks
from . import complex as cx
from . import hodge
from . import homology as hm
from . import io
from . import matroid as mt
from . import poset as ps
from . import shelling as sh
from . import subsets as ss
from .errors import InputError, TOutOfRangeWarning
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _flats(xs):
    return [ss.fmt(x) for x in xs]


def _rank_at_least(M, r, what):
    if M.rank < r:
        raise InputError(f"{what} needs rank >= {r}, got {M.rank}")


def cmd_matroid(args) -> Report:
    M, dg = io.load_matroid(args.file)
    rep = Report("matroid", {"file": args.file}, {args.file: dg})
    s = M.summary()
    mu = mt.mobius(M)
    rep.add("valid", "the flats form a geometric lattice", True, {**s, "mobius": mu})
    if M.rank >= 2:
        wp = hm.wedge_profile(cx.OrderComplex(ps.proper_lattice(M)), M.rank - 2)
        rep.add("rota", "Delta(L) is a homology wedge of |mu| spheres of dimension r-2",
                wp.passed and wp.count == abs(mu), {"mobius": mu, "spheres": wp.count, "wedge": wp.to_dict()})
    return rep


def cmd_filtered(args) -> Report:
    M, dg = io.load_matroid(args.file)
    _rank_at_least(M, 2, "a filtered lattice")
    w = io.parse_weight(args.omega, M.n)
    t = io.parse_rationals(args.t, "t")[0]
    rep = Report("filtered", {"file": args.file, "omega": w.to_strings(), "t": str(t)}, {args.file: dg})
    top = ps.t_upper_bound(w)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TOutOfRangeWarning)
        P = ps.filtered(ps.proper_lattice(M), w, t, require_generic=False)
    D = cx.OrderComplex(P)
    r = M.rank
    info = {"generic": w.generic, "t_in_range": t <= top, "t_bound": str(top),
            "elements": _flats(P.elements), "chain_lengths": sorted(P.chain_lengths())}
    pure = P.chain_lengths() == {r - 1}
    rep.add("purity", "every maximal chain of L^{>t} has r-1 elements", pure, info)
    if D.is_void:
        return rep
    H = hm.reduced_homology(D)
    comps = H[0].betti + 1 if D.dim >= 0 else 0
    rep.add("homology", "reduced integral homology of Delta(L^{>t})", True,
            {"reduced_homology": H.to_dict(), "components": comps})
    cm = hm.cm_over_Z(D)
    rep.add("cohen_macaulay", "Delta(L^{>t}) is Cohen-Macaulay over Z", cm.passed, cm.to_dict(ss.fmt))
    wp = hm.wedge_profile_from(H, r - 2)
    rep.add("wedge_profile", "reduced homology is free and concentrated in degree r-2", wp.passed, wp.to_dict())
    return rep


def cmd_shell(args) -> Report:
    M, dg = io.load_matroid(args.file)
    w = io.parse_weight(args.omega, M.n)
    t = io.parse_rationals(args.t, "t")[0]
    rep = Report("shell", {"file": args.file, "omega": w.to_strings(), "t": str(t)}, {args.file: dg})
    if M == mt.boolean(M.n):
        order = sh.lex_shelling_boolean(M.n, w, t)
        v = sh.verify_shelling(order.complex, order)
        dec = sh.decreasing_chain(M.n, w)
        first = order.words[0] == tuple(w.entries[e - 1] for e in dec)
        rep.add("lex_shelling", "the label-word order is a shelling starting with the decreasing chain",
                v.passed and first,
                {"facets": [_flats(f) for f in order.facet_labels()],
                 "words": [[str(x) for x in wd] for wd in order.words],
                 "first_is_decreasing": first, "failed_at": v.index})
        return rep
    _rank_at_least(M, 2, "a filtered lattice")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TOutOfRangeWarning)
        P = ps.filtered(ps.proper_lattice(M), w, t)
    D = cx.OrderComplex(P)
    found = sh.brute_force_shellable(D)
    rep.add("brute_force_shelling", "some facet order of Delta(L^{>t}) is a shelling", found is not None,
            {"facets": [_flats(f) for f in found.facet_labels()] if found else None})
    return rep


def _halfspace(args, M):
    circ = bg.standard_circuit(M.n)
    if args.normal is None:
        raise InputError("this command needs --normal")
    return bg.Halfspace(io.parse_normal(args.normal, circ.dim), circ)


def cmd_bergman(args) -> Report:
    M, dg = io.load_matroid(args.file)
    rep = Report("bergman", {"file": args.file, "action": args.action, "normal": args.normal}, {args.file: dg})
    B = bg.bergman_fan(M)
    B.check_cone_dimensions()
    if args.action == "balance":
        chains = bg.codim_one_chains(B)
        bad = [c for c in chains if not bg.balancing_check(B, c).passed]
        rep.add("balancing", "rays completing each codimension-one chain sum into its span", not bad,
                {**B.summary(), "chains": len(chains), "failures": [_flats(c) for c in bad[:5]]})
        return rep
    H = _halfspace(args, M)
    H.require_generic()
    _rank_at_least(M, 2, "this action")
    if args.action == "positive":
        pos = bg.positive_part(M, H)
        neg = bg.positive_part(M, H.negated())
        a, b = set(pos.poset.elements), set(neg.poset.elements)
        split = not (a & b) and a | b == set(M.proper_flats)
        rep.add("positive_part", "the positive parts of H and -H split the flats", split,
                {"weight": H.weight.to_strings(), "positive_flats": _flats(pos.poset.elements),
                 "negative_flats": _flats(neg.poset.elements),
                 "positive_cones": len(bg.positive_cones(B, H)),
                 "reduced_homology": hm.reduced_homology(pos).to_dict() if not pos.is_void else None})
    else:
        res = bg.lefschetz_pair(M, H)
        rep.add("lefschetz_pair", "H_i(L, L^{>0}) is free and concentrated in degree r-2", res.passed,
                {"weight": H.weight.to_strings(), **res.to_dict()})
    return rep


def cmd_hodge(args) -> Report:
    M, dg = io.load_matroid(args.file)
    ring = {"int": "Z", "rat": "Q"}[args.ring]
    rep = Report("hodge", {"file": args.file, "p": args.p, "region": args.region, "ring": args.ring,
                           "normal": args.normal}, {args.file: dg})
    H = _halfspace(args, M) if args.region == "halflink" else None
    K = hodge.pq_complex(M, args.region, args.p, ring, H=H)
    Hq = K.homology()
    for q in sorted(Hq):
        g = Hq[q]
        rep.add(f"H[{args.p},{q}]", "(p,q)-homology group", True,
                {"region": args.region, "p": args.p, "q": q, "ring": ring, "betti": g.betti,
                 "torsion": list(g.torsion)})
    rep.add("chain_complex", "boundary squares to zero and coefficients include along faces", True,
            {"cells": len(K.cells), **K.stats})
    if args.region == "ball":
        iso = hodge.cone_iso_check(M, args.p, ring)
        rep.add("cone_iso", "H_{q-1}(link; F_p) = H_q(ball, link; F_p)", iso.passed, iso.to_dict())
    return rep


def cmd_worked_examples(args) -> Report:
    rep = Report("paper-examples")
    rep.extend(checks.worked_examples())
    return rep


def cmd_suite(args) -> Report:
    cfg = checks.SuiteConfig(seed=args.seed, max_n=args.max_n)
    rep = Report("suite", {"seed": args.seed, "max_n": args.max_n})
    progress = (lambda name: print(f"[suite] {name}", file=sys.stderr, flush=True)) if args.verbose else None
    rep.extend(checks.run_suite(cfg, progress=progress))
    return rep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flatlattice", description=__doc__)
    ap.add_argument("--out", help="also write the report to this path")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matroid", help="validate and summarize a matroid file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_matroid)

    p = sub.add_parser("filtered", help="L^{>t}: elements, purity, homology, CM, wedge profile")
    p.add_argument("file")
    p.add_argument("--omega", required=True, help='"1,-2,3/2", a JSON list, or a weight file')
    p.add_argument("--t", required=True, help="rational threshold")
    p.set_defaults(fn=cmd_filtered)

    p = sub.add_parser("shell", help="lexicographic shelling (Boolean) or brute-force search")
    p.add_argument("file")
    p.add_argument("--omega", required=True)
    p.add_argument("--t", required=True)
    p.set_defaults(fn=cmd_shell)

    p = sub.add_parser("bergman", help="Bergman fan: balancing, positive part, Lefschetz pair")
    p.add_argument("file")
    p.add_argument("action", choices=["balance", "positive", "lefschetz"])
    p.add_argument("--normal", help='halfspace normal "2,-1" (length n-1) or a normal file')
    p.set_defaults(fn=cmd_bergman)

    p = sub.add_parser("hodge", help="(p,q)-homology of link, halflink or ball")
    p.add_argument("file")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--region", choices=["link", "halflink", "ball"], required=True)
    p.add_argument("--ring", choices=["int", "rat"], default="int")
    p.add_argument("--normal", help="halfspace normal, needed for the halflink")
    p.set_defaults(fn=cmd_hodge)

    p = sub.add_parser("paper-examples", help="worked examples against the golden file")
    p.set_defaults(fn=cmd_worked_examples)

    p = sub.add_parser("suite", help="randomized verification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    p.set_defaults(fn=cmd_suite)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TOutOfRangeWarning)
            rep = args.fn(args)
    except InputError as exc:
        print(f"flatlattice {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = rep.to_json()
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return EXIT_PASS if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
