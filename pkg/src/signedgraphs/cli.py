"""Command-line interface: ``signedgraphs <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classification, enumeration, hoffman, verifiers
from .graph import EsgParseError, canonical_form, contains_unsigned_member, format_esg, parse_esg
from .spectra import DEFAULT_WIDTH, Definiteness, char_poly, shifted_definiteness, smallest_root

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

_TRICHOTOMY = {
    Definiteness.POSITIVE_DEFINITE: "greater",
    Definiteness.PSD_SINGULAR: "equal",
    Definiteness.INDEFINITE: "less",
}


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e


def _graph(path: str):
    return parse_esg(_read(path))


def _emit(obj, out: str | None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _lambda1(a) -> dict:
    root = smallest_root(a)
    if root.exact is None:
        root.refine_to(DEFAULT_WIDTH)
    exact = root.exact
    if exact is not None:
        exact = int(exact) if exact.denominator == 1 else f"{exact.numerator}/{exact.denominator}"
    return {"interval": root.interval.to_json(), "exact": exact, "approx": root.approx()}


def spectra_report(g) -> dict:
    """Characteristic polynomial (constant term first), least eigenvalue and its
    position relative to -2."""
    a = g.adjacency
    out = {"n": g.n, "char_poly": char_poly(a).to_json() if g.n else [1]}
    if g.n:
        out["lambda1"] = _lambda1(a)
        out["vs_minus_2"] = _TRICHOTOMY[shifted_definiteness(a, 2)]
    return out


def cmd_spectra(args):
    return spectra_report(_graph(args.file)), EXIT_OK


def cmd_canon(args):
    g = _graph(args.file)
    cf = canonical_form(g)
    return {
        "key": cf.key.hex(),
        "representative": format_esg(cf.representative),
        "permutation": list(cf.perm),
        "switch_set": sorted(cf.switch_set),
        "contains_unsigned": contains_unsigned_member(g),
    }, EXIT_OK


def cmd_equiv(args):
    a, b = _graph(args.a), _graph(args.b)
    ka, kb = canonical_form(a).key, canonical_form(b).key
    return {"equivalent": ka == kb, "key_a": ka.hex(), "key_b": kb.hex()}, EXIT_OK


def cmd_classify(args):
    return classification.classify(_graph(args.file)).to_json(), EXIT_OK


def cmd_represent(args):
    rep = classification.integral_representation(_graph(args.file))
    if rep is None:
        return {"exceptional": True, "representation": None}, EXIT_OK
    return {"exceptional": False, "representation": rep.to_json()}, EXIT_OK


def cmd_enumerate(args):
    catalog = enumeration.enumerate_exceptional(args.max_vertices, args.threads, args.full_frontier)
    counts = {
        str(n): {"total": len(recs), "unsigned": sum(r.unsigned for r in recs)}
        for n, recs in sorted(catalog.items())
    }
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "catalog.jsonl").write_text(enumeration.catalog_jsonl(catalog))
        (out / "summary.csv").write_text(enumeration.summary_csv(catalog))
    return {"max_vertices": args.max_vertices, "counts": counts}, EXIT_OK


def cmd_verify(args):
    c = args.campaign
    if c == "hoffman":
        rep = verifiers.verify_hoffman_conjecture(args.max_tree, args.threads)
    elif c == "theorem11":
        rep = verifiers.verify_theorem11(args.max_size, threads=args.threads)
    elif c == "cycles":
        rep = verifiers.verify_lemma_cycle(args.max_len, args.threads)
    elif c == "families":
        rep = verifiers.verify_minus2_families(args.n, args.k, args.l, args.threads)
    else:
        rep = verifiers.verify_integral_rep_theorem(args.max_vertices, args.threads)
    return rep.to_json(), EXIT_OK if rep.ok else EXIT_FAIL


def cmd_hoffman(args):
    if args.action == "build":
        s = _graph(args.file)
        h = hoffman.build_from_partition(s, hoffman.parse_partition(args.parts))
        return {
            "hoffman_graph": hoffman.format_hoffman(h),
            "b_matrix": hoffman.b_matrix(h),
            "special_graph": format_esg(hoffman.special_graph(h)),
            "smallest_eig_gt_minus3": hoffman.smallest_eig_gt(h, -3),
        }, EXIT_OK
    h = hoffman.parse_hoffman(_read(args.file))
    b = hoffman.b_matrix(h)
    out = {"n_slim": h.n_slim, "n_fat": h.n_fat, "fat": h.is_fat(), "b_matrix": b}
    if h.n_slim:
        out["char_poly"] = char_poly(b).to_json()
        out["lambda1"] = _lambda1(b)
    out["smallest_eig_gt_minus3"] = hoffman.smallest_eig_gt(h, -3)
    return out, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signedgraphs", description="Exact tools for edge-signed graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, file_args=("file",)):
        sp = sub.add_parser(name, help=help_)
        for f in file_args:
            sp.add_argument(f)
        sp.add_argument("--out", help="write JSON here instead of stdout")
        sp.set_defaults(fn=fn)
        return sp

    add("spectra", cmd_spectra, "characteristic polynomial and least eigenvalue")
    add("canon", cmd_canon, "canonical switching-class key")
    add("equiv", cmd_equiv, "switching equivalence of two graphs", ("a", "b"))
    add("classify", cmd_classify, "structural type of a graph with least eigenvalue above -2")
    add("represent", cmd_represent, "integer representation, if any")

    sp = sub.add_parser("enumerate-exceptional", help="catalog of exceptional switching classes")
    sp.add_argument("--max-vertices", type=int, default=8, choices=(6, 7, 8))
    sp.add_argument("--out", help="directory for catalog.jsonl and summary.csv")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--full-frontier", action="store_true",
                    help="filter the complete level instead of growing from exceptional parents")
    sp.set_defaults(fn=cmd_enumerate)

    vp = sub.add_parser("verify", help="run a verification campaign")
    vsub = vp.add_subparsers(dest="campaign", required=True)
    for name, opts in [
        ("hoffman", [("--max-tree", 10)]),
        ("theorem11", [("--max-size", 8)]),
        ("cycles", [("--max-len", 12)]),
        ("families", [("--n", 10), ("--k", 4), ("--l", 4)]),
        ("integral", [("--max-vertices", 6)]),
    ]:
        cp = vsub.add_parser(name)
        for flag, default in opts:
            cp.add_argument(flag, type=int, default=default)
        cp.add_argument("--threads", type=int, default=1)
        cp.add_argument("--out")
        cp.set_defaults(fn=cmd_verify)

    hp = sub.add_parser("hoffman", help="Hoffman graph tools")
    hsub = hp.add_subparsers(dest="action", required=True)
    bp = hsub.add_parser("build", help="fat Hoffman graph from a signed graph and a partition")
    bp.add_argument("file")
    bp.add_argument("--parts", required=True, help='e.g. "0,2;1"')
    bp.add_argument("--out")
    bp.set_defaults(fn=cmd_hoffman)
    ep = hsub.add_parser("eig", help="B-matrix and least eigenvalue of a Hoffman graph")
    ep.add_argument("file")
    ep.add_argument("--out")
    ep.set_defaults(fn=cmd_hoffman)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        obj, code = args.fn(args)
    except (InputError, EsgParseError, hoffman.HoffmanError, ValueError) as e:
        sys.stderr.write(f"signedgraphs: error: {e}\n")
        return EXIT_INPUT
    out = getattr(args, "out", None)
    if args.fn is cmd_enumerate:
        out = None
    _emit(obj, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
