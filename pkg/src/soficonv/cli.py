"""Command-line interface.

One executable with five groups (automata, sofic, bernoulli, pisot,
spectrum).  Output is machine readable: JSON objects tagged with
"schema": "soficonv/1", plain decimal integers for counts, CSV with a
header row for series, DOT for graphs.  Exact quantities are printed as
"p/q" strings; floats are display-only.  Figures (--fig) are rendered to
files next to the delimited output, never instead of it.

Exit codes: 0 success, 2 usage, 3 domain error, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import automata, bernoulli, pisot, sofic, spectrum
from .algebra import FieldDescriptor, as_fraction
from .errors import SoficError

SCHEMA = "soficonv/1"


# ---------------------------------------------------------------------------
# flag parsing helpers


def parse_fractions(text: str):
    return [as_fraction(part.strip()) for part in text.split(",")]


def parse_minpoly(text: str):
    """Constant-first integer coefficients of a monic polynomial.

    A list that is monic only when read highest-degree-first is accepted
    and reversed, so both "-1,-1,1" and "1,-1,-1" denote x^2 - x - 1.
    """
    coeffs = [int(part.strip()) for part in text.split(",")]
    if coeffs and coeffs[-1] != 1 and coeffs[0] == 1:
        coeffs = coeffs[::-1]
    return coeffs


def parse_interval(text: str):
    lo, hi = text.split(",")
    return (as_fraction(lo.strip()), as_fraction(hi.strip()))


def parse_digits(text: str):
    if "," in text:
        return [int(part.strip()) for part in text.split(",")]
    return [int(ch) for ch in text.strip()]


def parse_letter_map(text: str) -> dict:
    out = {}
    for pair in text.split(","):
        key, _, val = pair.partition("=")
        if not _:
            raise SoficError(f"bad letter-map entry {pair!r}", code="PARTIAL_MAP")
        out[key.strip()] = val.strip()
    return out


def frs(x) -> str:
    return str(Fraction(x))


def emit(obj):
    print(json.dumps(obj))


def write_csv(path_or_none, header, rows, precision=15):
    def fmt(x):
        if isinstance(x, float):
            return f"{x:.{precision}g}"
        return str(x)

    lines = [",".join(header)]
    lines.extend(",".join(fmt(x) for x in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if path_or_none:
        with open(path_or_none, "w", encoding="utf-8") as fh:
            fh.write(text)
        return True
    sys.stdout.write(text)
    return False


def _field(args) -> FieldDescriptor:
    return FieldDescriptor(parse_minpoly(args.minpoly), parse_interval(args.interval))


def _pisot_base(args) -> pisot.PisotBase:
    return pisot.PisotBase(_field(args), args.d)


def _bernoulli_spec(args) -> bernoulli.BernoulliSpec:
    p = parse_fractions(args.p) if getattr(args, "p", None) else None
    return bernoulli.BernoulliSpec(args.b, args.d, p)


# ---------------------------------------------------------------------------
# automata group


def _source_from_spec(spec_str: str, letter_map=None):
    if spec_str == "example1":
        graph = automata.example1_automaton()
    elif spec_str == "example2":
        graph = automata.example2_graph()
    elif spec_str == "example2-image":
        return automata.image_source(automata.example2_graph(),
                                     automata.example2_letter_map())
    elif spec_str.startswith("full:"):
        return automata.full_shift_source(spec_str[5:].split(","))
    else:
        graph = automata.load_graph(spec_str)
    if letter_map:
        return automata.image_source(graph, letter_map)
    return automata.factor_source(graph)


def _graph_from_spec(spec_str: str) -> automata.LabeledGraph:
    if spec_str == "example1":
        return automata.example1_automaton()
    if spec_str == "example2":
        return automata.example2_graph()
    return automata.load_graph(spec_str)


def cmd_automata_fixture(args):
    graph = _graph_from_spec(args.which)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(graph.to_dot(args.which))
    emit({"schema": SCHEMA, "graph": graph.to_json(),
          **({"dot": args.dot} if args.dot else {})})
    return 0


def cmd_automata_accepts(args):
    graph = _graph_from_spec(args.graph)
    word = args.word
    emit({"schema": SCHEMA, "word": word,
          "accepted": automata.accepts_factor(graph, word)})
    return 0


def cmd_automata_image(args):
    graph = _graph_from_spec(args.graph)
    psi = parse_letter_map(args.map) if args.map else automata.example2_letter_map()
    words = automata.morphism_image_language(graph, psi, args.L)
    emit({"schema": SCHEMA, "L": args.L,
          "words": sorted("".join(w) for w in words)})
    return 0


def cmd_automata_equal(args):
    left = _source_from_spec(args.left,
                             parse_letter_map(args.map_left) if args.map_left else None)
    right = _source_from_spec(args.right,
                              parse_letter_map(args.map_right) if args.map_right else None)
    report = automata.languages_equal_up_to(left, right, args.L)
    emit({"schema": SCHEMA, "L": args.L, "equal": report.equal,
          "counterexample": report.counterexample,
          "counterexample_length": report.length,
          "only_in": report.only_in})
    return 0


# ---------------------------------------------------------------------------
# sofic group


def cmd_sofic_cylinder(args):
    word = parse_digits(args.word)
    if args.markov:
        value = sofic.markov_cylinder(sofic.load_markov(args.markov), word)
    else:
        value = sofic.linrep_cylinder(sofic.load_linrep(args.linrep), word)
    emit({"schema": SCHEMA, "word": "".join(map(str, word)), "value": frs(value)})
    return 0


def cmd_sofic_to_linear(args):
    lr = sofic.markov_to_linear(sofic.load_markov(args.markov))
    emit({"schema": SCHEMA, **lr.to_json()})
    return 0


def cmd_sofic_to_markov(args):
    measure, psi = sofic.linear_to_markov(sofic.load_linrep(args.linrep))
    emit({"schema": SCHEMA, "markov": measure.to_json(), "psi": list(psi)})
    return 0


def cmd_sofic_push(args):
    lr = sofic.load_linrep(args.linrep)
    psi = [int(x) for x in args.map.split(",")]
    emit({"schema": SCHEMA, **sofic.push_forward(lr, psi).to_json()})
    return 0


def cmd_sofic_check(args):
    lr = sofic.load_linrep(args.linrep)
    emit({"schema": SCHEMA, "b": lr.b, "r": lr.r, "side_conditions": True,
          "stationary": sofic.is_stationary_representation(lr)})
    return 0


# ---------------------------------------------------------------------------
# bernoulli group


def cmd_bernoulli_matrices(args):
    spec = _bernoulli_spec(args)
    mats = bernoulli.build_matrices(spec)
    emit({"schema": SCHEMA, "b": spec.b, "d": spec.d, "a": spec.a,
          "M": [[[frs(x) for x in row] for row in m] for m in mats],
          "C": [frs(x) for x in bernoulli.stationary_vector(spec)]})
    return 0


def cmd_bernoulli_measure(args):
    spec = _bernoulli_spec(args)
    value = bernoulli.interval_measure(spec, args.q, parse_digits(args.digits))
    emit({"schema": SCHEMA, "q": args.q, "digits": args.digits, "value": frs(value)})
    return 0


def cmd_bernoulli_count(args):
    spec = _bernoulli_spec(args)
    if args.k is not None:
        print(bernoulli.count_k(args.n, args.k, spec))
    else:
        print(bernoulli.count_representations(args.n, spec))
    return 0


def cmd_bernoulli_normalize(args):
    spec = _bernoulli_spec(args)
    out = bernoulli.normalize_digits(parse_digits(args.digits), spec)
    print("".join(map(str, out)))
    return 0


def cmd_bernoulli_export(args):
    spec = _bernoulli_spec(args)
    measure, psi = bernoulli.symbolic_markov_export(spec)
    emit({"schema": SCHEMA, "markov": measure.to_json(), "psi": list(psi)})
    return 0


# ---------------------------------------------------------------------------
# pisot group


def cmd_pisot_states(args):
    base = _pisot_base(args)
    states = pisot.carry_states(base, pisot.Window.parse(args.window),
                                cap=args.state_cap)
    emit({"schema": SCHEMA, "window": args.window, "count": len(states),
          "states": [{"coeffs": [frs(c) for c in s.coeffs],
                      "approx": s.to_float(args.precision)} for s in states]})
    return 0


def cmd_pisot_transducer(args):
    base = _pisot_base(args)
    machine = pisot.build_transducer(base, pisot.Window.parse(args.window),
                                     cap=args.state_cap)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(machine.to_dot())
    emit({"schema": SCHEMA, **machine.to_json(),
          **({"dot": args.dot} if args.dot else {})})
    return 0


def cmd_pisot_quasi(args):
    qe = pisot.quasi_expansion(pisot.PisotBase.minimal(_field(args)))
    emit({"schema": SCHEMA, "digits": "".join(map(str, qe.digits)),
          "T": qe.period})
    return 0


def cmd_pisot_wordset(args):
    words = pisot.word_set(pisot.PisotBase.minimal(_field(args)))
    emit({"schema": SCHEMA, "words": ["".join(map(str, w)) for w in words]})
    return 0


def cmd_pisot_count(args):
    base = _pisot_base(args)
    print(pisot.count_redundant(parse_digits(args.word), base, cap=args.state_cap))
    return 0


def cmd_pisot_normalize(args):
    base = _pisot_base(args)
    result = pisot.normalize(parse_digits(args.word), base)
    emit({"schema": SCHEMA, "digits": "".join(map(str, result.digits)),
          "int_len": result.int_len})
    return 0


def cmd_pisot_measure(args):
    base = _pisot_base(args)
    system = pisot.measure_matrices(base, parse_fractions(args.p),
                                    cap=args.state_cap)
    out = {"schema": SCHEMA, **system.to_json()}
    if args.word is not None:
        word = parse_digits(args.word)
        out["state"] = args.state
        out["word"] = args.word
        out["eta_symbolic"] = frs(pisot.symbolic_interval_measure(system, args.state, word))
        out["eta"] = (frs(pisot.interval_measure(system, args.state, word))
                      if system.normalized else None)
    emit(out)
    return 0


def cmd_pisot_export(args):
    base = _pisot_base(args)
    system = pisot.measure_matrices(base, parse_fractions(args.p),
                                    cap=args.state_cap)
    matrix, words = pisot.block_markov_matrix(system)
    emit({"schema": SCHEMA,
          "block_words": ["".join(map(str, w)) for w in words],
          "matrix": [[frs(x) for x in row] for row in matrix],
          "normalized": system.normalized})
    return 0


# ---------------------------------------------------------------------------
# spectrum group


def cmd_spectrum_profile(args):
    f = spectrum.named_function(args.f)
    rows = spectrum.profile(f, args.lo, args.hi)
    to_file = write_csv(args.csv, ("n", "ratio"), rows, args.precision)
    if args.fig:
        from . import plots
        plots.save_profile_figure(rows, args.fig)
    if to_file or args.fig:
        ratios = [r[1] for r in rows]
        emit({"schema": SCHEMA, "f": args.f, "lo": args.lo, "hi": args.hi,
              "rows": len(rows), "min_ratio": min(ratios), "max_ratio": max(ratios),
              "csv": args.csv, "fig": args.fig})
    return 0


def _series_rows(checkpoints):
    return [(c.N, c.count, frs(c.density), frs(c.density), c.dexp, c.dexp)
            for c in checkpoints]


def cmd_spectrum_level(args):
    f = spectrum.named_function(args.f)
    members, prof = spectrum.level_set(f, args.alpha, args.eps, args.N)
    if args.csv:
        write_csv(args.csv, ("N", "count", "d_minus", "d_plus",
                             "dexp_minus", "dexp_plus"),
                  _series_rows(prof.checkpoints), args.precision)
    if args.members:
        with open(args.members, "w", encoding="utf-8") as fh:
            fh.write("\n".join(map(str, members)) + "\n")
    if args.fig:
        from . import plots
        plots.save_density_figure(prof.checkpoints, args.fig,
                                  title=f"level set alpha={args.alpha} eps={args.eps}")
    emit({"schema": SCHEMA, "f": args.f, "alpha": args.alpha, "eps": args.eps,
          "N": args.N, "count": prof.count,
          "d_minus": frs(prof.d_minus), "d_plus": frs(prof.d_plus),
          "dexp_minus": prof.dexp_minus, "dexp_plus": prof.dexp_plus,
          "csv": args.csv, "fig": args.fig, "members": args.members})
    return 0


def cmd_spectrum_alpha0(args):
    value = spectrum.alpha0_estimate(args.K)
    emit({"schema": SCHEMA, "K": args.K, "lo": 2 ** (args.K - 1),
          "hi": 2 ** args.K, "alpha0": value})
    return 0


def cmd_spectrum_lyapunov(args):
    value = spectrum.lyapunov_estimate(args.mode, args.seed, args.s)
    emit({"schema": SCHEMA, "mode": args.mode, "seed": args.seed, "s": args.s,
          "estimate": value})
    return 0


def cmd_spectrum_interleave(args):
    f = spectrum.named_function(args.f)
    horizon = args.H

    cache = {}

    def ratio(n):
        got = cache.get(n)
        if got is None:
            got = cache[n] = math.log(f(n)) / math.log(n)
        return got

    def family(k, n):
        if n < 2:
            return False
        return abs(ratio(n) - args.alpha) <= 1.0 / k

    def targets(k):
        members, prof = spectrum.level_set(f, args.alpha, 1.0 / k, horizon)
        dens = float(prof.d_minus)
        return (dens, dens, prof.dexp_minus, prof.dexp_plus)

    result = spectrum.interleave(family, targets, horizon, max_k=args.kmax)
    member_counts = []
    for cut in result.cut_points:
        count = sum(1 for m in result.members if m < cut)
        member_counts.append((cut, count, frs(Fraction(count, max(cut - 1, 1))),
                              frs(Fraction(count, max(cut - 1, 1))),
                              spectrum._dexp_at(count, cut),
                              spectrum._dexp_at(count, cut)))
    if args.csv:
        write_csv(args.csv, ("N", "count", "d_minus", "d_plus",
                             "dexp_minus", "dexp_plus"),
                  member_counts, args.precision)
    if args.fig:
        from . import plots
        prof = spectrum.build_profile(list(result.members), horizon)
        plots.save_density_figure(prof.checkpoints, args.fig,
                                  cuts=result.cut_points,
                                  title=f"interleaved level set alpha={args.alpha}")
    emit({"schema": SCHEMA, "alpha": args.alpha, "H": horizon,
          "cut_points": list(result.cut_points),
          "blocks": [list(b) for b in result.blocks],
          "member_count": len(result.members),
          "direction": result.direction,
          "csv": args.csv, "fig": args.fig})
    return 0


def cmd_spectrum_endpoints(args):
    emit({"schema": SCHEMA, **spectrum.endpoint_constants(args.K)})
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soficonv",
        description="Exact-arithmetic toolkit for sofic measures, Bernoulli "
                    "convolutions in integer and Pisot bases, normalization "
                    "transducers, and level-set density spectra.")
    parser.add_argument("--state-cap", type=int, default=pisot.DEFAULT_STATE_CAP,
                        help="cap on carry-state closures (default 10000)")
    parser.add_argument("--precision", type=int, default=15,
                        help="significant digits for displayed floats (default 15)")
    groups = parser.add_subparsers(dest="group", required=True)

    # -- automata
    g = groups.add_parser("automata", help="sofic subshifts and factor languages")
    sub = g.add_subparsers(dest="command", required=True)
    c = sub.add_parser("fixture", help="emit a built-in example graph")
    c.add_argument("--which", required=True, choices=["example1", "example2"])
    c.add_argument("--dot", help="also write a DOT rendering to this path")
    c.set_defaults(handler=cmd_automata_fixture)
    c = sub.add_parser("accepts", help="does some path carry the word?")
    c.add_argument("--graph", required=True,
                   help="example1 | example2 | path to a graph JSON file")
    c.add_argument("--word", required=True)
    c.set_defaults(handler=cmd_automata_accepts)
    c = sub.add_parser("image", help="letter-to-letter image language at one length")
    c.add_argument("--graph", required=True)
    c.add_argument("--map", help="letter map like a=0,b=0,c=1 (defaults to the "
                                 "example2 map)")
    c.add_argument("--L", type=int, required=True)
    c.set_defaults(handler=cmd_automata_image)
    c = sub.add_parser("equal", help="compare factor languages up to a length")
    c.add_argument("--left", required=True,
                   help="example1 | example2 | example2-image | full:<letters> | file")
    c.add_argument("--right", required=True)
    c.add_argument("--map-left")
    c.add_argument("--map-right")
    c.add_argument("--L", type=int, required=True)
    c.set_defaults(handler=cmd_automata_equal)

    # -- sofic
    g = groups.add_parser("sofic", help="Markov and matrix-product measures")
    sub = g.add_subparsers(dest="command", required=True)
    c = sub.add_parser("cylinder", help="exact cylinder value")
    m = c.add_mutually_exclusive_group(required=True)
    m.add_argument("--markov", help="Markov measure JSON file")
    m.add_argument("--linrep", help="linear representation JSON file")
    c.add_argument("--word", required=True)
    c.set_defaults(handler=cmd_sofic_cylinder)
    c = sub.add_parser("to-linear", help="column-split a Markov measure")
    c.add_argument("--markov", required=True)
    c.set_defaults(handler=cmd_sofic_to_linear)
    c = sub.add_parser("to-markov", help="Markov chain on r*b letters plus block map")
    c.add_argument("--linrep", required=True)
    c.set_defaults(handler=cmd_sofic_to_markov)
    c = sub.add_parser("push", help="push a representation through a letter map")
    c.add_argument("--linrep", required=True)
    c.add_argument("--map", required=True, help="comma list, image of each letter")
    c.set_defaults(handler=cmd_sofic_push)
    c = sub.add_parser("check", help="validate side conditions and stationarity")
    c.add_argument("--linrep", required=True)
    c.set_defaults(handler=cmd_sofic_check)

    # -- bernoulli
    g = groups.add_parser("bernoulli",
                          help="integer-base convolutions and representation counts")
    sub = g.add_subparsers(dest="command", required=True)

    def add_bd(cmd, with_p=True):
        cmd.add_argument("--b", type=int, required=True)
        cmd.add_argument("--d", type=int, required=True)
        if with_p:
            cmd.add_argument("--p", help="comma list of digit probabilities "
                                         "(default uniform)")

    c = sub.add_parser("matrices", help="the interval matrices and fixed vector")
    add_bd(c)
    c.set_defaults(handler=cmd_bernoulli_matrices)
    c = sub.add_parser("measure", help="measure of a translated b-adic interval")
    add_bd(c)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--digits", required=True)
    c.set_defaults(handler=cmd_bernoulli_measure)
    c = sub.add_parser("count", help="number of representations of n")
    add_bd(c, with_p=False)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, help="restrict to length-k strings")
    c.set_defaults(handler=cmd_bernoulli_count)
    c = sub.add_parser("normalize", help="canonical base-b form of a digit string")
    add_bd(c, with_p=False)
    c.add_argument("--digits", required=True, help="most significant first; "
                                                   "comma-separated for digits > 9")
    c.set_defaults(handler=cmd_bernoulli_normalize)
    c = sub.add_parser("export", help="Markov chain of the reversed digit measure")
    add_bd(c)
    c.set_defaults(handler=cmd_bernoulli_export)

    # -- pisot
    g = groups.add_parser("pisot", help="carry transducers and Pisot-base measures")
    sub = g.add_subparsers(dest="command", required=True)

    def add_base(cmd, with_d=True):
        cmd.add_argument("--minpoly", required=True,
                         help="integer coefficients, constant first (x^2-x-1 is "
                              "-1,-1,1; the reversed monic form is also accepted)")
        cmd.add_argument("--interval", required=True,
                         help="rational isolating interval, e.g. 1.5,1.7")
        if with_d:
            cmd.add_argument("--d", type=int, required=True)

    c = sub.add_parser("states", help="carry-state closure for a window")
    add_base(c)
    c.add_argument("--window", required=True,
                   choices=["open", "half_open", "symmetric"])
    c.set_defaults(handler=cmd_pisot_states)
    c = sub.add_parser("transducer", help="full carry transducer")
    add_base(c)
    c.add_argument("--window", required=True,
                   choices=["open", "half_open", "symmetric"])
    c.add_argument("--dot", help="also write DOT to this path")
    c.set_defaults(handler=cmd_pisot_transducer)
    c = sub.add_parser("quasi", help="periodic quasi-expansion of 1")
    add_base(c, with_d=False)
    c.set_defaults(handler=cmd_pisot_quasi)
    c = sub.add_parser("wordset", help="prefix-free generating words")
    add_base(c, with_d=False)
    c.set_defaults(handler=cmd_pisot_wordset)
    c = sub.add_parser("count", help="number of equal-value digit strings")
    add_base(c)
    c.add_argument("--word", required=True)
    c.set_defaults(handler=cmd_pisot_count)
    c = sub.add_parser("normalize", help="admissible expansion of a digit string")
    add_base(c)
    c.add_argument("--word", required=True)
    c.set_defaults(handler=cmd_pisot_normalize)
    c = sub.add_parser("measure", help="interval-translate measure system")
    add_base(c)
    c.add_argument("--p", required=True, help="comma list of digit probabilities")
    c.add_argument("--state", type=int, default=0)
    c.add_argument("--word", help="digit word (a generating-word concatenation)")
    c.set_defaults(handler=cmd_pisot_measure)
    c = sub.add_parser("export", help="block transition matrix over generating words")
    add_base(c)
    c.add_argument("--p", required=True)
    c.set_defaults(handler=cmd_pisot_export)

    # -- spectrum
    g = groups.add_parser("spectrum", help="level sets, densities, constants")
    sub = g.add_subparsers(dest="command", required=True)
    c = sub.add_parser("profile", help="growth-ratio series over a range")
    c.add_argument("--f", default="stern", choices=["stern", "linear", "sinpower"])
    c.add_argument("--lo", type=int, required=True)
    c.add_argument("--hi", type=int, required=True)
    c.add_argument("--csv", help="write the series here instead of stdout")
    c.add_argument("--fig", help="render a scatter figure to this path")
    c.set_defaults(handler=cmd_spectrum_profile)
    c = sub.add_parser("level", help="level-set members and density profile")
    c.add_argument("--f", default="stern", choices=["stern", "linear", "sinpower"])
    c.add_argument("--alpha", type=float, required=True)
    c.add_argument("--eps", type=float, required=True)
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--csv", help="write the checkpoint series to this path")
    c.add_argument("--members", help="write the member list to this path")
    c.add_argument("--fig", help="render the density series to this path")
    c.set_defaults(handler=cmd_spectrum_level)
    c = sub.add_parser("alpha0", help="average growth exponent over a dyadic block")
    c.add_argument("--K", type=int, required=True)
    c.set_defaults(handler=cmd_spectrum_alpha0)
    c = sub.add_parser("lyapunov", help="seeded log-denominator growth estimate")
    c.add_argument("--mode", required=True, choices=["binary_drive", "levy"])
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--s", type=int, required=True)
    c.set_defaults(handler=cmd_spectrum_lyapunov)
    c = sub.add_parser("interleave", help="glue shrinking level sets into one set")
    c.add_argument("--f", default="stern", choices=["stern", "linear", "sinpower"])
    c.add_argument("--alpha", type=float, required=True)
    c.add_argument("--H", type=int, required=True)
    c.add_argument("--kmax", type=int)
    c.add_argument("--csv")
    c.add_argument("--fig")
    c.set_defaults(handler=cmd_spectrum_interleave)
    c = sub.add_parser("endpoints", help="local-dimension endpoint constants")
    c.add_argument("--K", type=int, default=14)
    c.set_defaults(handler=cmd_spectrum_endpoints)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SoficError as exc:
        print(json.dumps({"schema": SCHEMA, "error": exc.code,
                          "message": str(exc)}), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
