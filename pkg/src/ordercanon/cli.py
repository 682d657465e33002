"""Command-line interface: ``ordercanon <command> ...``.

Exit codes: 0 success (iso: same; check: valid), 1 negative answer (iso:
different; check: invalid), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional, Sequence

from . import io as oio
from .canon2d import canonical_form_2d
from .canonnd import canonical_form_nd
from .layers2d import convex_layers
from .predicates import OrderTypeError, PointOracle, make_view, validate_chirotope


def _oracle(path: str, dim: str = "auto"):
    o = oio.load_oracle(path)
    if dim != "auto" and int(dim) != o.dim:
        raise OrderTypeError(f"{path}: dimension {o.dim} does not match --dim {dim}")
    return o


def _canon(o, reflection_quotient: bool = False):
    form = canonical_form_2d(o) if o.dim == 2 else canonical_form_nd(o)
    if not reflection_quotient:
        return form
    mirror = make_view(o, None, True)
    other = canonical_form_2d(mirror) if o.dim == 2 else canonical_form_nd(mirror)
    return min(form, other, key=lambda f: f.canonical_string)


def cmd_canon(args, out) -> int:
    o = _oracle(args.file, args.dim)
    print(_canon(o, args.reflection_quotient).canonical_string, file=out)
    return 0


def cmd_iso(args, out) -> int:
    a, b = _oracle(args.file_a), _oracle(args.file_b)
    if a.n != b.n or a.dim != b.dim:
        print("DIFFERENT", file=out)
        return 1
    fa = _canon(a)
    candidates = [(b, False)]
    if args.reflection:
        candidates.append((make_view(b, None, True), True))
    for bb, neg in candidates:
        fb = _canon(bb)
        if fb.canonical_string == fa.canonical_string:
            ra, rb = fa.labeling, fb.labeling
            inv = {v: i for i, v in enumerate(ra)}
            pi = [rb[inv[x]] for x in range(a.n)]
            print("SAME reflected" if neg else "SAME", file=out)
            print(" ".join(map(str, pi)), file=out)
            return 0
    print("DIFFERENT", file=out)
    return 1


def cmd_auto(args, out) -> int:
    f = _canon(_oracle(args.file))
    print(len(f.psi), file=out)
    print(f.group_order, file=out)
    for p in f.automorphisms:
        print(" ".join(map(str, p)), file=out)
    return 0


def cmd_dedup(args, out) -> int:
    store = oio.DedupStore(args.db)
    for path in args.files:
        store.add(path, _canon(_oracle(path)).canonical_string)
    wanted = set(args.files)
    for ids in store.groups():
        ids = [i for i in ids if i in wanted]
        if ids:
            print(" ".join(ids), file=out)
    return 0


def cmd_gen(args, out) -> int:
    P = oio.generate_points(args.n, args.d, args.seed, args.range, args.collinear_frac)
    out.write(oio.format_points(P))
    return 0


def cmd_check(args, out) -> int:
    table = oio.parse_chirotope_file(args.file, validate=False)
    rep = validate_chirotope(table, exhaustive=args.exhaustive)
    print(("PASS " if rep.ok else "FAIL ") + rep.reason, file=out)
    if rep.witness is not None:
        print("witness " + " ".join(map(str, rep.witness)), file=out)
    return 0 if rep.ok else 1


def bench(sizes: Sequence[int], seed: int = 0, R: int = 10 ** 6) -> List[tuple]:
    rows = []
    for k, n in enumerate(sizes):
        o = PointOracle(oio.generate_points(n, 2, seed + k, R))
        t0 = time.perf_counter()
        convex_layers(o)
        t1 = time.perf_counter()
        canonical_form_2d(o)
        t2 = time.perf_counter()
        rows.append((n, (t1 - t0) * 1000, (t2 - t1) * 1000))
    return rows


def cmd_bench(args, out) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    print("n,ms_layers,ms_canon", file=out)
    for n, ml, mc in bench(sizes, args.seed):
        print(f"{n},{ml:.1f},{mc:.1f}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordercanon", description="Canonical forms of order types.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("canon", help="print the canonical string")
    s.add_argument("file")
    s.add_argument("--dim", default="auto")
    s.add_argument("--reflection-quotient", action="store_true",
                   help="identify mirror images (smaller of the two strings)")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("iso", help="isomorphism test with witness")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--reflection", action="store_true")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("auto", help="canonical labelings and automorphism group")
    s.add_argument("file")
    s.set_defaults(func=cmd_auto)

    s = sub.add_parser("dedup", help="group files by order type")
    s.add_argument("files", nargs="+")
    s.add_argument("--db", required=True)
    s.set_defaults(func=cmd_dedup)

    s = sub.add_parser("gen", help="random integer point set")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--range", type=int, default=100)
    s.add_argument("--collinear-frac", type=float, default=0.0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("check", help="validate a chirotope file")
    s.add_argument("file")
    s.add_argument("--exhaustive", action="store_true")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("bench", help="timing CSV for random planar sets")
    s.add_argument("--sizes", default="200,400,800")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args, out)
    except (OrderTypeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
