"""Command-line front end.  Exit codes: 0 success, 1 refutation, 2 usage error."""
from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from importlib import resources

from . import cluster, dynamics, omegaterm as om
from .corpus import corpus, fixture, worthy_pairs
from .expansion import CoverCapExceeded, rhodes_expansion, unambiguous_cover
from .factorization import HypothesisError
from .recognition import check_worthy, recognized_set, verify_recognition
from .semigroup import (SemigroupError, ambiguity_witness, equidivisibility_witness, from_table,
                        is_aperiodic, is_stable, to_table)


class UsageError(Exception):
    pass


def load_semigroup(name):
    if name is None:
        raise UsageError("--semigroup is required")
    paths = [name]
    data = resources.files("clusterword") / "data" / name
    paths.append(str(data))
    for p in paths:
        if os.path.isfile(p):
            with open(p, encoding="ascii") as fh:
                return from_table(fh.read(), name=os.path.splitext(os.path.basename(p))[0])
    try:
        return fixture(name)
    except KeyError:
        raise UsageError(f"no semigroup file or fixture named {name!r}") from None


def parse_map(S, text):
    if text is None:
        if not S.generators:
            raise UsageError("--map is required (the semigroup has no generators)")
        return dict(S.generators)
    out = {}
    for part in text.split(","):
        m = re.fullmatch(r"\s*([a-z])\s*=\s*(\d+)\s*", part)
        if not m:
            raise UsageError(f"bad --map entry {part!r}")
        i = int(m.group(2))
        if not 1 <= i <= S.size:
            raise UsageError(f"--map index {i} out of range 1..{S.size}")
        out[m.group(1)] = i - 1
    return out


def parse_term(text):
    try:
        return om.parse(text)
    except om.TermSyntaxError as e:
        raise UsageError(f"syntax error: {e}") from None


def parse_expansion(text):
    m = re.fullmatch(r"(\d*)\((\d+)\)", text.replace(" ", ""))
    if not m:
        raise UsageError(f"bad expansion {text!r}; expected e.g. (10) or 2(01)")
    pre = tuple(int(c) for c in m.group(1))
    per = tuple(int(c) for c in m.group(2))
    try:
        return dynamics.ParryBeta(pre, per, max(pre + per) + 1 if max(pre + per) > 0 else 2)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _label(S, x):
    return f"{S.label(x)} (#{x + 1})" if x < S.size else S.one_label


# -- verbs ---------------------------------------------------------------------------

def cmd_sgp(args, out):
    S = load_semigroup(args.semigroup)
    if args.action == "info":
        out.append(f"name {S.name}")
        out.append(f"size {S.size}")
        if S.generators:
            out.append("generators " + " ".join(f"{a}={_label(S, x)}" for a, x in sorted(S.generators.items())))
        out.append(f"aperiodic {is_aperiodic(S)}")
        out.append(f"unambiguous {ambiguity_witness(S) is None}")
        out.append(f"equidivisible {equidivisibility_witness(S) is None}")
        out.append(f"stable {is_stable(S)}")
        return 0
    if args.action == "green":
        G = S.green
        for name, classes in (("R", G.classesR), ("L", G.classesL), ("H", G.classesH), ("J", G.classesJ)):
            out.append(f"{name}: " + " | ".join(",".join(S.label(x) for x in c) for c in classes))
        out.append("idempotents: " + ",".join(S.label(x) for x in G.idempotents))
        return 0
    if args.action == "check":
        w = ambiguity_witness(S)
        out.append("unambiguous true" if w is None else
                   f"unambiguous false ({w[0]}: {S.label(w[1])} below {S.label(w[2])} and {S.label(w[3])})")
        e = equidivisibility_witness(S)
        out.append("equidivisible true" if e is None else
                   "equidivisible false (x={} y={} u={} v={})".format(*(S.label(z) for z in e)))
        out.append(f"aperiodic {is_aperiodic(S)}")
        out.append(f"stable {is_stable(S)}")
        return 0
    if args.action == "expand":
        if not S.generators:
            raise UsageError("expansion needs generators (gens line in the file)")
        if args.side:
            E, proj = rhodes_expansion(S, args.side)
            out.append(f"{args.side} expansion of {S.name}: size {E.size}")
        else:
            try:
                E, proj, rounds = unambiguous_cover(S)
            except CoverCapExceeded as exc:
                out.append(f"CAP REACHED: {exc}")
                return 1
            out.append(f"unambiguous cover of {S.name}: size {E.size}, rounds {rounds}")
        out.append("projection " + " ".join(S.label(p) for p in proj))
        if args.table:
            out.append(to_table(E).rstrip("\n"))
        return 0
    raise UsageError(args.action)


def cmd_term(args, out):
    t = parse_term(args.term)
    if args.action == "parse":
        out.append(om.show(t))
        out.append(repr(t))
        return 0
    if args.action == "normalize":
        trace = []
        n = om.normalize(t, trace)
        out.append(om.show(n))
        if args.verbose:
            out.append("rules " + (" ".join(trace) if trace else "none"))
        return 0
    if args.action == "eval":
        S = load_semigroup(args.semigroup)
        phi = parse_map(S, args.map)
        try:
            out.append(_label(S, om.evaluate(t, S, phi)))
        except om.UnmappedLetter as e:
            raise UsageError(f"letter {e.args[0]} is not mapped") from None
        return 0
    if args.action == "factors":
        fs = om.factors_upto(t, args.length)
        for k in range(1, args.length + 1):
            words = sorted(f for f in fs if len(f) == k)
            out.append(f"{k} {len(words)} " + " ".join(words))
        return 0
    if args.action == "equal":
        if args.other is None:
            raise UsageError("term equal needs two terms")
        u = parse_term(args.other)
        nt, nu = om.normalize(t), om.normalize(u)
        members = corpus(args.seed, args.oracle_size, args.count)
        v = om.equal_oracle(t, u, members)
        if v.distinct:
            S, phi, x, y = v.witness
            m = " ".join(f"{a}={_label(S, i)}" for a, i in sorted(phi.items()))
            head = "INCONSISTENT (normal forms identical) " if nt == nu else ""
            out.append(f"{head}DISTINCT witness {S.name} {m}: {_label(S, x)} != {_label(S, y)}")
            return 1
        if nt == nu:
            out.append("EQUAL (normal forms identical; corpus agrees)")
        else:
            out.append(f"INDISTINGUISHABLE_AT_SCALE (normal forms differ: {om.show(nt)} / {om.show(nu)}; "
                       f"{v.checked} evaluations agree)")
        return 0
    raise UsageError(args.action)


def _build(text):
    t = om.normalize(parse_term(text))
    return t, cluster.build(t)


def cmd_order(args, out):
    t, ce = _build(args.term)
    if args.action == "build":
        out.append(f"term {om.show(t)}")
        out.append(cluster.to_text(ce).rstrip("\n"))
        out.append(cluster.diagram(ce))
        return 0
    if args.action == "type":
        out.append(cluster.order_type_report(ce))
        return 0
    if args.action == "window":
        if args.left is not None or args.right is None:
            out.append(cluster.window(ce, args.left if args.left is not None else 10, "left"))
        if args.right is not None:
            out.append(cluster.window(ce, args.right, "right"))
        return 0
    if args.action == "stationary":
        for f in cluster.stationary_points(ce):
            out.append(str(f))
        if not cluster.stationary_points(ce):
            out.append("none")
        return 0
    if args.action == "clustered":
        r = cluster.check_clustered(ce)
        out.append("CLUSTERED" if r.ok else f"NOT CLUSTERED {r.axiom}: {r.detail}")
        return 0 if r.ok else 1
    raise UsageError(args.action)


def cmd_recognize(args, out):
    t, ce = _build(args.term)
    S = load_semigroup(args.semigroup)
    phi = parse_map(S, args.map)
    missing = om.letters(t) - set(phi)
    if missing:
        raise UsageError("unmapped letters " + ",".join(sorted(missing)))
    if args.element is None:
        rs = recognized_set(ce, S, phi)
        out.append("recognized by {" + ",".join(_label(S, x) for x in rs) + "}")
        return 0
    if not 1 <= args.element <= S.size:
        raise UsageError(f"--element out of range 1..{S.size}")
    ok = verify_recognition(ce, S, phi, args.element - 1)
    out.append("RECOGNIZED" if ok else "NOT RECOGNIZED")
    return 0 if ok else 1


def cmd_worthy(args, out):
    t, ce = _build(args.term)
    pairs = worthy_pairs(corpus(args.seed, args.max_size, args.count))
    rep = check_worthy(ce, pairs, copies=args.depth)
    out.append(rep.text().rstrip("\n"))
    return 1 if rep.verdict == "REFUTED" else 0


def cmd_beta(args, out):
    pb = parse_expansion(args.expansion)
    n = args.length
    L = dynamics.beta_language(pb, n)
    if args.action == "language":
        for w in L.words[n]:
            out.append("".join(map(str, w)))
        return 0
    counts = dynamics.factor_complexity(L, n)
    if args.action == "complexity":
        for k, q, h in dynamics.complexity_rows(counts):
            out.append(f"{k} {q} {h:.6f}")
        return 0
    out.append(f"{dynamics.entropy_estimate(counts, n):.6f}")
    return 0


def cmd_corpus(args, out):
    for m in corpus(args.seed, args.max_size, args.count):
        cov = "cap" if m.cover is None else f"{m.cover.size}"
        out.append(f"{m.name} size {m.S.size} unambiguous {ambiguity_witness(m.S) is None} "
                   f"cover {cov} rounds {m.rounds}")
    return 0


def make_parser():
    p = argparse.ArgumentParser(prog="clusterword", description="Cluster words of omega-terms over finite aperiodic semigroups.")
    p.add_argument("-v", "--verbose", action="store_true")
    verbose = argparse.ArgumentParser(add_help=False)
    verbose.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, semigroup=False, corpus_flags=False):
        if semigroup:
            sp.add_argument("--semigroup", metavar="FILE")
            sp.add_argument("--map", metavar="a=IDX,...")
        if corpus_flags:
            sp.add_argument("--seed", type=int, default=1)
            sp.add_argument("--max-size", type=int, default=10)
            sp.add_argument("--count", type=int, default=20)

    sp = sub.add_parser("sgp", parents=[verbose], help="finite semigroups")
    sp.add_argument("action", choices=["info", "green", "check", "expand"])
    sp.add_argument("--side", choices=["left", "right"])
    sp.add_argument("--table", action="store_true")
    common(sp, semigroup=True)
    sp.set_defaults(func=cmd_sgp)

    sp = sub.add_parser("term", parents=[verbose], help="omega-terms")
    sp.add_argument("action", choices=["parse", "normalize", "eval", "equal", "factors"])
    sp.add_argument("term")
    sp.add_argument("other", nargs="?")
    sp.add_argument("--length", type=int, default=4)
    sp.add_argument("--oracle-size", type=int, default=8)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--count", type=int, default=20)
    common(sp, semigroup=True)
    sp.set_defaults(func=cmd_term)

    sp = sub.add_parser("order", parents=[verbose], help="cluster words")
    sp.add_argument("action", choices=["build", "type", "window", "stationary", "clustered"])
    sp.add_argument("term")
    sp.add_argument("--left", type=int)
    sp.add_argument("--right", type=int)
    common(sp)
    sp.set_defaults(func=cmd_order)

    sp = sub.add_parser("recognize", parents=[verbose], help="recognition by (phi, s)")
    sp.add_argument("term")
    sp.add_argument("--element", type=int, metavar="IDX")
    common(sp, semigroup=True)
    sp.set_defaults(func=cmd_recognize)

    sp = sub.add_parser("worthy", parents=[verbose], help="worthy conditions at scale")
    sp.add_argument("term")
    sp.add_argument("--depth", type=int, default=2, help="copies sampled per omega block")
    common(sp, corpus_flags=True)
    sp.set_defaults(func=cmd_worthy)

    sp = sub.add_parser("beta", parents=[verbose], help="beta-shift languages")
    sp.add_argument("action", choices=["language", "complexity", "entropy"])
    sp.add_argument("--expansion", default="(10)")
    sp.add_argument("--length", type=int, default=10)
    sp.set_defaults(func=cmd_beta)

    sp = sub.add_parser("corpus", parents=[verbose], help="seeded corpus")
    sp.add_argument("action", choices=["generate"])
    common(sp, corpus_flags=True)
    sp.set_defaults(func=cmd_corpus)
    return p


def dispatch(argv):
    """Run a command; returns (exit code, report text)."""
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (e.code if isinstance(e.code, int) else 2), ""
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = []
    try:
        code = args.func(args, out)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return 2, "\n".join(out)
    except (SemigroupError, HypothesisError, cluster.NotNormalized) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2, "\n".join(out)
    return code, "\n".join(out)


def main(argv=None):
    code, text = dispatch(sys.argv[1:] if argv is None else argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
