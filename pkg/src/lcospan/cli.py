"""Command line: compose and normalize cospans and envelope morphisms, and
run the verification suites.

Exit status is 0 on success, 1 when a check fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import cospan, levelgraph, properad, slcc
from .envelope import Envelope
from .properad import CayleyMonoid, Naturals, Properad


class UsageError(Exception):
    pass


def parse_properad(tokens: Sequence[str]) -> Properad:
    """`terminal k=<n>`, `discrete k=<n>`, `weighted table=<file>`,
    `weighted mod=<n>` or `weighted nat`, optionally after the word `properad`."""
    tokens = list(tokens)
    if tokens and tokens[0] == "properad":
        tokens = tokens[1:]
    if not tokens:
        raise UsageError("missing properad kind")
    kind, rest = tokens[0], tokens[1:]
    if kind == "weighted" and rest == ["nat"]:
        return properad.monoid_weighted(Naturals())
    opts = {}
    for tok in rest:
        key, eq, value = tok.partition("=")
        if not eq or not key or not value:
            raise UsageError(f"expected key=value, got '{tok}'")
        opts[key] = value

    def natural(key: str, default: int | None = None) -> int:
        if key not in opts:
            if default is None:
                raise UsageError(f"{kind} needs {key}=<n>")
            return default
        if not opts[key].isdigit():
            raise UsageError(f"{key} must be a natural number")
        return int(opts.pop(key))

    if kind in ("terminal", "discrete"):
        k = natural("k", 1)
        if opts:
            raise UsageError(f"unknown option {next(iter(opts))} for {kind}")
        if k < 1:
            raise UsageError("k must be at least 1")
        return properad.terminal(k) if kind == "terminal" else properad.discrete(k)
    if kind == "weighted":
        if "table" in opts and len(opts) == 1:
            try:
                with open(opts["table"]) as fh:
                    return properad.monoid_weighted(CayleyMonoid.from_text(fh.read()))
            except OSError as e:
                raise UsageError(f"cannot read table: {e.strerror}") from None
            except ValueError as e:
                raise UsageError(f"bad table: {e}") from None
        if "mod" in opts and len(opts) == 1:
            n = natural("mod")
            if n < 1:
                raise UsageError("mod must be at least 1")
            return properad.monoid_weighted(CayleyMonoid.cyclic(n))
        raise UsageError("weighted needs table=<file>, mod=<n> or nat")
    raise UsageError(f"unknown properad kind '{kind}'")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcospan", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("csp-compose", help="compose cospans left to right")
    p.add_argument("cospans", nargs="+")
    p = sub.add_parser("csp-normalize", help="print the normal form of a cospan")
    p.add_argument("cospan")

    def with_properad(p):
        p.add_argument("--properad", required=True, metavar="SPEC",
                       help="e.g. 'terminal k=2', 'discrete k=3', 'weighted table=<file>'")
        return p

    def with_bound(p):
        p.add_argument("--bound", type=int, default=3)
        return p

    p = with_properad(sub.add_parser("env-compose", help="compose envelope morphisms left to right"))
    p.add_argument("morphisms", nargs="+")
    p = with_properad(sub.add_parser("env-tensor", help="tensor envelope morphisms"))
    p.add_argument("morphisms", nargs="+")
    p = with_properad(sub.add_parser("env-symmetry", help="the symmetry between two color words"))
    p.add_argument("first")
    p.add_argument("second")
    with_bound(with_properad(sub.add_parser("check-axioms", help="labelled cospan axioms of an envelope")))
    with_bound(with_properad(sub.add_parser("roundtrip", help="envelope and extraction round trip")))
    p = with_bound(with_properad(sub.add_parser("presheaf", help="relations of the extracted presheaf")))
    p = sub.add_parser("simplicial", help="level graph identity suite")
    p.add_argument("--height", type=int, default=2)
    p.add_argument("--size", type=int, default=2, help="bound on level sizes")
    p.add_argument("--middle", type=int, help="bound on middle sizes (default: --size)")
    p = with_bound(with_properad(sub.add_parser("nat-trans", help="check an identity-indexed family")))
    p.add_argument("--gamma", nargs="+", required=True,
                   help="one operation per color, or a single one for all colors")
    return ap


def _gather_properad(argv: Sequence[str]) -> list[str]:
    """Join the unquoted words after --properad into one argument."""
    out = []
    i = 0
    while i < len(argv):
        out.append(argv[i])
        if argv[i] == "--properad":
            words = []
            j = i + 1
            while j < len(argv) and not argv[j].startswith("-") and (
                    not words or argv[j] == "nat" or "=" in argv[j] or words == ["properad"]):
                words.append(argv[j])
                j += 1
            out.append(" ".join(words))
            i = j
            continue
        i += 1
    return out


def _simplicial(height: int, size: int, middle: int, out) -> bool:
    ok = True
    for h in range(height + 1):
        count = 0
        first = None
        for g in levelgraph.all_graphs(h, size, middle):
            count += 1
            bad = levelgraph.simplicial_identity_failures(g)
            if bad and first is None:
                first = (g, bad)
        if first:
            ok = False
            print(f"FAIL simplicial-identities height={h} {', '.join(first[1])} on {first[0]!r}", file=out)
        else:
            print(f"PASS simplicial-identities height={h} ({count} cases)", file=out)
    if height >= 2:
        bad = levelgraph.segal_failures(size, middle)
        ok = ok and not bad
        print(f"FAIL segal {bad[0]}" if bad else "PASS segal height=2", file=out)
    for h in range(height + 1):
        count = 0
        first = None
        for g, k in levelgraph.graph_pairs(h, size, middle):
            for t in range(h + 2):
                count += 1
                bad = levelgraph.twisted_interchange_failures(g, k, t)
                if bad and first is None:
                    first = (g, k, t, bad)
        if first:
            ok = False
            print(f"FAIL twisted-interchange height={h} t={first[2]} {first[3][0]} on {first[0]!r}, {first[1]!r}",
                  file=out)
        else:
            print(f"PASS twisted-interchange height={h} ({count} cases)", file=out)
    return ok


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(_gather_properad(list(argv)))
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        return _dispatch(args, out)
    except (UsageError, ValueError) as e:
        # ParseError is a ValueError and already carries line and column
        print(f"error: {e}", file=err)
        return 2


def _dispatch(args, out) -> int:
    verb = args.verb
    if verb == "csp-compose":
        cs = [cospan.parse(t, i) for i, t in enumerate(args.cospans, 1)]
        result = cs[0]
        for c in cs[1:]:
            result = cospan.compose(result, c)
        print(cospan.emit(result), file=out)
        return 0
    if verb == "csp-normalize":
        print(cospan.emit(cospan.parse(args.cospan)), file=out)
        return 0
    if verb == "simplicial":
        if args.height < 0 or args.size < 0 or (args.middle is not None and args.middle < 0):
            raise UsageError("bounds must be natural numbers")
        middle = args.size if args.middle is None else args.middle
        return 0 if _simplicial(args.height, args.size, middle, out) else 1

    P = parse_properad(args.properad.split())
    env = Envelope(P)
    if verb in ("env-compose", "env-tensor"):
        fs = [env.parse(t, i) for i, t in enumerate(args.morphisms, 1)]
        for f in fs:
            env.check(f)
        result = fs[0]
        for f in fs[1:]:
            result = env.compose(result, f) if verb == "env-compose" else env.tensor(result, f)
        print(env.emit(result), file=out)
        return 0
    if verb == "env-symmetry":
        a, b = env.parse_word(args.first, 1), env.parse_word(args.second, 2)
        print(env.emit(env.symmetry(a, b)), file=out)
        return 0

    if args.bound < 0:
        raise UsageError("bound must be a natural number")
    if verb == "check-axioms":
        report = slcc.check_axioms(slcc.envelope_as_slcc(P), args.bound)
    elif verb == "roundtrip":
        report = slcc.roundtrip_check(P, args.bound)
    elif verb == "presheaf":
        report = slcc.presheaf_relations_check(slcc.envelope_as_slcc(P), args.bound)
    else:
        return _nat_trans(P, args, out)
    print(report, file=out)
    return 0 if report.ok else 1


def _nat_trans(P: Properad, args, out) -> int:
    colors = P.colors()
    tokens = args.gamma
    if len(tokens) == 1:
        tokens = tokens * len(colors)
    if len(tokens) != len(colors):
        raise UsageError(f"--gamma needs 1 or {len(colors)} operations")
    gamma = {}
    for c, tok in zip(colors, tokens):
        try:
            gamma[c] = P.parse_op(tok, (c,), (c,))
        except ValueError as e:
            raise UsageError(f"--gamma: {e}") from None
    F = properad.identity_map(P)
    ok, failures = slcc.check_nat_trans(F, F, gamma, args.bound)
    if ok:
        print("PASS nat-trans", file=out)
        return 0
    for f in failures:
        print(f"FAIL nat-trans {f}", file=out)
    return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
