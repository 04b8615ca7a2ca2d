"""Command-line entry point.

Exit status: 0 when everything checked holds, 1 on a mathematical failure,
2 on malformed input or flags.
"""

import argparse
import os
import sys
from importlib import resources
from pathlib import Path

from .complex import (
    betti_numbers,
    f_vector,
    h_vector,
    is_homology_manifold,
    orient,
    parse_complex,
    validate_pseudomanifold,
)
from .degree import DegreeMap
from .errors import MalformedComplex, NonOrientable, PreconditionError, SrDegreeError
from .exactalg.fields import field as make_field, is_prime
from .reduction import (
    DEFAULT_EXT,
    DEFAULT_SEEDS,
    anisotropy_certify,
    anisotropy_fuzz,
    gorenstein_profile,
    lefschetz_injectivity,
    sample_point_degree,
)
from .report import RunConfig, Section, emit_report
from .seeding import resolve_seed, rng_for
from .verify import THEOREMS, EmptySuite, VerificationTask, run_task

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _characteristic(text):
    value = int(text)
    if value != 0 and not is_prime(value):
        raise argparse.ArgumentTypeError(f"{value} is neither 0 nor a prime")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _seed(text):
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--complex", dest="complex_path", help="facet-list file or bundled name")
    common.add_argument("--char", dest="characteristic", type=_characteristic, default=None)
    common.add_argument("--ext", type=_positive, default=DEFAULT_EXT,
                        help="extension degree k of the sampling field F_{p^k}")
    common.add_argument("--mode", choices=("exact", "randomized"), default=None)
    common.add_argument("--seed", type=_seed, default=None)
    common.add_argument("--cap", type=int, default=None)
    common.add_argument("--jobs", type=_positive, default=None)
    common.add_argument("--out", default=None)
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="srdegree", description="Degree maps of generic artinian reductions.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    check = sub.add_parser("check", parents=[common], help="pseudomanifold, orientation, Betti numbers")
    check.add_argument("file", nargs="?")

    degree = sub.add_parser("degree", parents=[common], help="deg(x^J) as a rational function")
    degree.add_argument("--monomial", required=True, help='exponent vector, e.g. "1 1 0"')
    degree.add_argument("--specialize", type=_seed, default=None,
                        help="evaluate at a random point drawn from this seed")

    dims = sub.add_parser("dims", parents=[common], help="graded dimensions of H-bar")
    dims.add_argument("--seeds", type=_positive, default=DEFAULT_SEEDS)

    lef = sub.add_parser("lefschetz", parents=[common], help="injectivity of multiplication by l")
    lef.add_argument("--m", type=int, default=None)
    lef.add_argument("--power", type=int, default=1)
    lef.add_argument("--seeds", type=_positive, default=DEFAULT_SEEDS)

    an = sub.add_parser("anisotropy", parents=[common], help="certify or fuzz anisotropy")
    an.add_argument("--m", type=int, default=None)
    an.add_argument("--t", type=int, default=None, help="power for the characteristic-0 fuzz")
    an.add_argument("--trials", type=int, default=100)

    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("--theorem", required=True, choices=THEOREMS)
    ver.add_argument("--seeds", type=_positive, default=DEFAULT_SEEDS)
    ver.add_argument("--samples", type=_positive, default=20)
    ver.add_argument("--r-max", type=_positive, default=3)
    ver.add_argument("--dims", default=None, help="simplex dimensions for T2.3/PLK, e.g. 2,3")
    return parser


def load_complex(path):
    """Read a facet file; bare names fall back to the bundled complexes."""
    if path is None:
        raise UsageError("a complex is required (--complex FILE)")
    p = Path(path)
    if p.exists():
        text = p.read_text()
    else:
        name = p.name if p.suffix == ".txt" else p.name + ".txt"
        bundled = resources.files("srdegree") / "data" / name
        if not bundled.is_file():
            raise UsageError(f"no such complex file: {path}")
        text = bundled.read_text()
    return parse_complex(text)


def _config(args, **overrides):
    cfg = RunConfig(
        command=args.command,
        complex_path=getattr(args, "complex_path", None),
        characteristic=args.characteristic,
        ext=args.ext,
        mode=args.mode,
        seed=args.seed,
        cap=args.cap,
        out=args.out,
        verbosity=args.verbose,
    )
    for k, v in overrides.items():
        setattr(cfg, k, v)
    return cfg


def _cmd_check(args):
    cx = load_complex(args.complex_path)
    ch = args.characteristic = args.characteristic or 0
    rep = validate_pseudomanifold(cx)
    sec = Section("complex")
    sec.add("digest", cx.digest()).add("vertices", cx.n).add("facets", len(cx.facets))
    sec.add("d", cx.d).add("f-vector", f_vector(cx)).add("h-vector", h_vector(cx))
    sec.add("pure", rep.is_pure).add("ridges-in-two-facets", rep.ridge_ok)
    sec.add("strongly-connected", rep.strongly_connected).add("pseudomanifold", rep.verdict)
    sec.add("betti", betti_numbers(cx, ch))
    sec.add("homology-manifold", is_homology_manifold(cx, ch) if rep.verdict else False)
    orient_sec = Section("orientation")
    if rep.verdict:
        try:
            o = orient(cx, ch)
            orient_sec.add("orientable", True)
            for f in cx.facets:
                orient_sec.add(" ".join(map(str, f)), "+1" if o.sign(f) > 0 else "-1")
        except NonOrientable:
            orient_sec.add("orientable", False)
    else:
        orient_sec.add("orientable", "not applicable")
    return [sec, orient_sec], EXIT_OK if rep.verdict else EXIT_FAIL


def _parse_monomial(text, n):
    try:
        J = tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"bad monomial {text!r}") from None
    if len(J) != n or min(J) < 0:
        raise UsageError(f"monomial needs {n} nonnegative exponents")
    return J


def _cmd_degree(args):
    cx = load_complex(args.complex_path)
    ch = args.characteristic = args.characteristic or 0
    J = _parse_monomial(args.monomial, cx.n)
    if sum(J) != cx.d:
        raise UsageError(f"monomial must have degree d = {cx.d}")
    o = orient(cx, ch)
    sec = Section("degree").add("monomial", J)
    if args.specialize is None:
        sec.add("value", DegreeMap(cx, o, ch).monomial(J).to_text())
    else:
        target = make_field(ch, args.ext)
        ev = sample_point_degree(cx, o, target, rng_for(args.specialize, "degree"))
        sec.add("field", repr(target)).add("point-seed", args.specialize)
        sec.add("value", ev.monomial(J))
    return [sec], EXIT_OK


def _dims_section(prof, title="dims"):
    sec = Section(title).add("characteristic", prof.characteristic).add("mode", prof.mode)
    sec.add("dims", prof.dims)
    if prof.note:
        sec.add("note", prof.note)
    for m, r in enumerate(prof.results):
        sec.add(f"m={m}", f"{r.value} [{r.method}; bounds {r.lower}..{r.upper}]")
        if r.mode == "randomized":
            sec.add(f"m={m} per-seed-bound", r.per_seed_bound)
            sec.add(f"m={m} seed-ranks", tuple(r.per_seed_ranks))
    return sec


def _cmd_dims(args):
    cx = load_complex(args.complex_path)
    ch = args.characteristic = args.characteristic or 0
    args.mode = args.mode or "randomized"
    prof = gorenstein_profile(cx, ch, args.mode, resolve_seed(args.seed),
                              args.seeds, args.ext)
    dual = prof.dims == prof.dims[::-1]
    sec = _dims_section(prof).add("duality", dual)
    return [sec], EXIT_OK if dual else EXIT_FAIL


def _lefschetz_degrees(cx, ch):
    p = ch if ch else 2
    return list(range(0, (cx.d - 1) // p + 1))


def _cmd_lefschetz(args):
    cx = load_complex(args.complex_path)
    ch = args.characteristic = args.characteristic or 0
    o = orient(cx, ch)
    mode = args.mode = args.mode or "randomized"
    seed = resolve_seed(args.seed)
    degrees = [args.m] if args.m is not None else _lefschetz_degrees(cx, ch)
    sec = Section("lefschetz").add("power", args.power)
    ok = True
    prof = gorenstein_profile(cx, ch, mode, seed, args.seeds, args.ext, orientation=o)
    for m in degrees:
        inj = lefschetz_injectivity(cx, o, m, args.power, mode, ch, seed, args.seeds, args.ext)
        sec.add(f"m={m}", inj)
        ok &= inj
    top = max(degrees) if degrees else -1
    monotone = all(prof.dims[k] <= prof.dims[k + 1] for k in range(top))
    sec.add("dims", prof.dims).add("monotone-through", top).add("monotone", monotone)
    return [sec], EXIT_OK if ok and monotone else EXIT_FAIL


def _cmd_anisotropy(args):
    cx = load_complex(args.complex_path)
    ch = args.characteristic = args.characteristic or 0
    o = orient(cx, ch)
    seed = resolve_seed(args.seed)
    sections, ok = [], True
    if ch == 0:
        t = args.t or 2
        degrees = [args.m] if args.m is not None else [m for m in range(cx.d + 1) if t * m <= cx.d]
        for m in degrees:
            rep = anisotropy_fuzz(cx, o, 0, t, m, args.trials, seed, args.ext)
            sec = Section(f"fuzz t={t} m={m}").add("certificate", "none in characteristic 0")
            sec.add("trials", rep.trials).add("failures", rep.failures)
            sec.add("per-trial-bound", rep.per_trial_bound)
            sections.append(sec)
            ok &= rep.passed
        return sections, EXIT_OK if ok else EXIT_FAIL
    degrees = [args.m] if args.m is not None else [m for m in range(cx.d + 1) if ch * m <= cx.d]
    for m in degrees:
        cert = anisotropy_certify(cx, o, ch, m, seed, args.ext)
        sec = Section(f"certificate m={m}").add("verdict", cert.verdict).add("dim", cert.dim)
        sec.add("basis", [" ".join(map(str, v)) for v in cert.basis])
        sec.add("semilinear-rank", cert.semilinear_rank)
        sec.add("witness-columns", len(cert.witness_columns))
        if cert.isotropic_vector:
            sec.add("isotropic-vector", cert.isotropic_vector)
        if cert.note:
            sec.add("note", cert.note)
        sections.append(sec)
        ok &= cert.passed
    return sections, EXIT_OK if ok else EXIT_FAIL


def _cmd_verify(args):
    cx = None
    name = ""
    if args.complex_path is not None:
        cx = load_complex(args.complex_path)
        name = args.complex_path
    dims = (2, 3)
    if args.dims:
        try:
            dims = tuple(int(t) for t in args.dims.split(","))
        except ValueError:
            raise UsageError(f"bad --dims {args.dims!r}") from None
    elif args.theorem == "T2.3" and cx is not None:
        dims = (cx.d,)
    ch = args.characteristic if args.characteristic is not None else (0 if args.theorem in ("L2.6", "E2.4", "PLK", "T2.5") else 2)
    task = VerificationTask(args.theorem, cx, name, ch, args.mode or "exact", args.cap,
                            resolve_seed(args.seed), args.seeds, args.ext, args.r_max,
                            args.samples, dims)
    if args.theorem == "T2.3":
        task = VerificationTask(args.theorem, None, name, ch, task.mode, args.cap, task.seed,
                                args.seeds, args.ext, args.r_max, args.samples, dims[:1])
    args.characteristic, args.mode = ch, task.mode
    jobs = args.jobs or os.cpu_count() or 1
    rep = run_task(task, jobs)
    sec = Section(f"suite {args.theorem}").add("status", rep.status)
    sec.add("instances", rep.instances).add("failures", rep.failures)
    expected = [r for r in rep.results if r.expected_difference]
    sec.add("expected-differences", len(expected))
    for note in rep.notes:
        sec.add("note", note)
    for s, bound in rep.per_seed:
        sec.add(f"seed {s} bound", bound)
    for r in rep.results:
        if not r.passed or r.expected_difference or args.verbose:
            sec.add(r.key, ("pass" if r.passed else "FAIL") + (f" {r.detail}" if r.detail else ""))
    return [sec], EXIT_OK if rep.failures == 0 else EXIT_FAIL


COMMANDS = {
    "check": _cmd_check,
    "degree": _cmd_degree,
    "dims": _cmd_dims,
    "lefschetz": _cmd_lefschetz,
    "anisotropy": _cmd_anisotropy,
    "verify": _cmd_verify,
}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand: " + ", ".join(COMMANDS))
        if args.command == "check" and args.file is not None:
            if args.complex_path is not None:
                raise UsageError("give the complex once")
            args.complex_path = args.file
        sections, code = COMMANDS[args.command](args)
        text = emit_report(_config(args, seed=resolve_seed(args.seed)), sections)
    except UsageError as exc:
        print(f"srdegree: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MalformedComplex, PreconditionError, NonOrientable, EmptySuite, OSError) as exc:
        print(f"srdegree: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SrDegreeError as exc:
        print(f"srdegree: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
