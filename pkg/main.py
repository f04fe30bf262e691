"""
Command-line entry point.

    python main.py [--seed S] [--format text|json] [--cap N] <subcommand> ...

Exit code 0 when every verification a subcommand performs passes, 1 when
one fails, 2 on usage or precondition errors.
"""

import argparse
import json
import logging.config
import sys
from fractions import Fraction
from typing import Any, Dict, Tuple

import numpy as np

from refined_absorption.absorber import build_absorber, build_omni_absorber_exhaustive, verify_absorber
from refined_absorption.absorber.absorber import write_absorber_bundle
from refined_absorption.config import settings
from refined_absorption.core.exact_cover import exact_cover_decompose
from refined_absorption.core.generators import complete_bounded, complete_graph, cycle_graph
from refined_absorption.core.hypercore import count_copies, enumerate_cliques, is_divisible, verify_decomposition
from refined_absorption.core.io import (
    format_cliques,
    format_packing,
    format_valuation,
    format_weighting,
    read_hypergraph,
    write_atomic,
)
from refined_absorption.core.models import CliqueFamily, DensityVector, Hypergraph, IntegralHypergraph
from refined_absorption.errors import (
    AbsorptionError,
    CapExceededError,
    DivisibilityError,
    FractionalInfeasibleError,
    PreconditionError,
    VertexRangeError,
)
from refined_absorption.fractional import (
    boost_regularity,
    fixed_fractional,
    fractional_boundary,
    fractional_decompose,
    is_fractional_decomposition,
    low_weight_fractional,
    removal_decompositions,
)
from refined_absorption.gadgets import (
    build_booster,
    build_fake_edge,
    build_hinge,
    build_orthogonal_booster,
    is_orthogonal,
    rooted_degeneracy,
    verify_booster,
    verify_hinge,
)
from refined_absorption.integral import boundary, edge_intersecting_integral_decompose, is_edge_intersecting
from refined_absorption.nibble import nibble_with_reserves, sample_reserves, verify_nibble_packing
from refined_absorption.pipeline import PipelineConfig, decompose, report
from refined_absorption.turan import (
    TuranProbe,
    meets_spencer_caps,
    random_below_caps,
    spencer_alteration,
    subset_density_tail,
)

logger = logging.getLogger(__name__)

Result = Tuple[bool, Dict[str, Any]]

USAGE_ERRORS = (PreconditionError, VertexRangeError, DivisibilityError, CapExceededError, OSError)


def load_graph(args) -> Hypergraph:
    """The host named by --graph, --complete or --cycle."""
    if args.graph:
        return read_hypergraph(args.graph)
    if args.complete is not None:
        return complete_graph(args.complete, args.r)
    if args.cycle is not None:
        return cycle_graph(args.cycle)
    raise PreconditionError("Give a host with --graph FILE, --complete N or --cycle N")


def _has_graph(args) -> bool:
    return bool(args.graph) or args.complete is not None or args.cycle is not None


def cmd_check_div(args) -> Result:
    G = load_graph(args)
    divisible = is_divisible(G, args.q)
    return divisible, {'n': G.n, 'edges': G.num_edges, 'q': args.q, 'divisible': divisible}


def cmd_cliques(args) -> Result:
    G = load_graph(args)
    cliques = enumerate_cliques(G, args.q)
    if args.output:
        write_atomic(f"{args.output}_cliques.txt", format_cliques(CliqueFamily(args.q, cliques)))
    return True, {'q': args.q, 'count': len(cliques), 'cliques': [list(c) for c in cliques[:args.limit]]}


def cmd_decompose_exact(args) -> Result:
    G = load_graph(args)
    found = exact_cover_decompose(G, args.q, budget=args.cap)
    if found is None:
        return False, {'found': False}
    verified = verify_decomposition(G, found)
    if args.output:
        write_atomic(f"{args.output}_decomposition.txt", format_cliques(found))
    return verified, {'found': True, 'cliques': len(found), 'verified': verified}


def cmd_booster(args) -> Result:
    booster = build_booster(list(range(args.q)), args.r)
    checks = verify_booster(booster, args.r)
    return all(checks.values()), {
        'prime': booster.prime, 'edges': booster.gadget.graph.num_edges,
        'on': len(booster.on), 'off': len(booster.off), **checks,
    }


def cmd_orth_booster(args) -> Result:
    booster = build_orthogonal_booster(list(range(args.q)), args.r)
    checks = verify_booster(booster, args.r)
    checks['orthogonal'] = is_orthogonal(booster, args.r)
    return all(checks.values()), {
        'edges': booster.gadget.graph.num_edges, 'on': len(booster.on), 'off': len(booster.off),
        'augmentations': max(len(booster.rounds) - 1, 0), **checks,
    }


def cmd_hinge(args) -> Result:
    q, r = args.q, args.r
    S1 = list(range(q))
    S2 = S1[:r] + list(range(q, 2 * q - r))
    hinge = build_hinge(S1, S2, r)
    checks = verify_hinge(hinge, r)
    non_roots = len(hinge.gadget.non_root_vertices())
    return all(checks.values()), {
        'edges': hinge.gadget.graph.num_edges, 'non_root_vertices': non_roots,
        'left': len(hinge.left), 'right': len(hinge.right), **checks,
    }


def cmd_fake_edge(args) -> Result:
    gadget = build_fake_edge(list(range(args.r)), args.q)
    independent = gadget.roots_independent()
    return independent, {
        'vertices': len(gadget.non_root_vertices()), 'edges': gadget.graph.num_edges,
        'rooted_degeneracy': rooted_degeneracy(gadget), 'roots_independent': independent,
    }


def cmd_integral(args) -> Result:
    G = load_graph(args)
    L = IntegralHypergraph.unit(G)
    phi = edge_intersecting_integral_decompose(L, args.q)
    exact = boundary(phi) == L.psi
    intersecting = is_edge_intersecting(phi, G)
    if args.output:
        write_atomic(f"{args.output}_valuation.txt", format_valuation(phi))
    return exact and intersecting, {
        'ground': phi.m, 'support': len(phi.weights), 'l1': phi.l1(),
        'boundary_exact': exact, 'edge_intersecting': intersecting,
    }


def cmd_absorber(args) -> Result:
    L = load_graph(args)
    absorber = build_absorber(L, args.q)
    result = verify_absorber(absorber)
    if args.output:
        write_absorber_bundle(absorber, args.output)
    return result.passed, result.to_dict()


def cmd_omni(args) -> Result:
    X = load_graph(args)
    omni = build_omni_absorber_exhaustive(X, args.q, cap=args.cap, show_progress=False)
    checks = omni.verify()
    if args.output:
        omni.export_analysis(args.output)
    return all(checks.values()), {
        'subgraphs': len(checks), 'failures': sum(1 for ok in checks.values() if not ok),
        'private_failures': sum(1 for ok in omni.verify_private().values() if not ok),
        'absorber_edges': omni.graph.num_edges, 'refinement': omni.refinement(),
    }


def cmd_fractional(args) -> Result:
    G = load_graph(args)
    try:
        psi = fractional_decompose(G, args.q, rule=args.rule, cap=args.cap)
    except FractionalInfeasibleError as exc:
        return False, {'feasible': False,
                       'certificate': {' '.join(map(str, e)): str(y) for e, y in sorted(exc.certificate.items())}}
    ok = is_fractional_decomposition(psi)
    if args.output:
        write_atomic(f"{args.output}_weighting.txt", format_weighting(psi))
    return ok, {'feasible': True, 'support': len(psi.weights), 'max_weight': str(psi.max_weight()),
                'verified': ok}


def cmd_fixed_fractional(args) -> Result:
    G = load_graph(args)
    target = Fraction(args.target) if args.target else 1 - Fraction(1, 2 * max(G.num_edges, 1))
    base = fractional_decompose(G, args.q, rule=args.rule, cap=args.cap)
    removed = removal_decompositions(G, args.q, rule=args.rule)
    psi = fixed_fractional(G, args.q, {e: target for e in G.edges}, base, removed)
    exact = all(fractional_boundary(psi).get(e, 0) == target for e in G.edges)
    return exact, {'target': str(target), 'support': len(psi.weights), 'boundary_exact': exact}


def cmd_boost(args) -> Result:
    G = load_graph(args)
    psi, low = low_weight_fractional(G, args.q, s=args.s, seed=args.seed, show_progress=False)
    exact = is_fractional_decomposition(psi)
    family, regularity = boost_regularity(G, psi, seed=args.seed)
    if args.output:
        regularity.export_analysis(args.output)
    return exact, {'boundary_exact': exact, 'low_weight': low.to_dict(), 'cliques': len(family),
                   **regularity.to_dict()}


def cmd_reserves(args) -> Result:
    G = load_graph(args)
    X, result = sample_reserves(G, args.q, p=args.p, seed=args.seed)
    if args.output:
        result.export_analysis(args.output)
    return result.within_bound, {'reserve_edges': X.num_edges, **result.to_dict()}


def cmd_nibble(args) -> Result:
    G = load_graph(args)
    X, _ = sample_reserves(G, args.q, p=args.p, seed=args.seed)
    J = G.without_edges(X.edges)
    try:
        psi = fractional_decompose(J, args.q, cap=args.cap)
        family, _ = boost_regularity(J, psi, seed=args.seed)
    except FractionalInfeasibleError:
        family = CliqueFamily(args.q)
    packing, result = nibble_with_reserves(J, X, family, bite=args.bite, seed=args.seed,
                                           search=not args.no_search, show_progress=False)
    valid = verify_nibble_packing(J, X, packing)
    if args.output:
        write_atomic(f"{args.output}_packing.txt", format_packing(packing, result.leave))
    return valid, {'reserve_edges': X.num_edges, 'valid_packing': valid, **result.to_dict()}


def cmd_pipeline(args) -> Result:
    G = load_graph(args)
    config = PipelineConfig(reserve_p=args.p, bite=args.bite, **({'omni_cap': args.cap} if args.cap else {}))
    found, trace = decompose(G, args.q, config, seed=args.seed)
    text, data = report(trace)
    if args.output:
        trace.export_analysis(args.output)
    data["report"] = text
    if found is None and args.fallback:
        exact = exact_cover_decompose(G, args.q)
        data["fallback_verified"] = exact is not None and verify_decomposition(G, exact)
        data["report"] += f"\nfallback verified: {str(data['fallback_verified']).lower()}"
        return data["fallback_verified"], data
    return trace.success, data


def _pattern(args) -> Hypergraph:
    if args.pattern:
        return read_hypergraph(args.pattern)
    return complete_bounded(args.pattern_complete, args.r) if args.bounded else complete_graph(args.pattern_complete, args.r)


def cmd_count_copies(args) -> Result:
    G = load_graph(args)
    F = _pattern(args)
    return True, {'pattern_vertices': F.n, 'pattern_edges': F.num_edges,
                  'copies': count_copies(G, F, cap=args.cap)}


def cmd_spencer(args) -> Result:
    if _has_graph(args):
        G = load_graph(args)
    else:
        G = random_below_caps(args.n, args.q, args.r, np.random.default_rng(args.seed))
    result = spencer_alteration(G, args.q, seed=args.seed, derandomize=not args.random)
    caps = meets_spencer_caps(G, args.q)
    ok = result.size >= args.q if (caps and not args.random) else True
    return ok, {'edges': G.num_edges, 'meets_caps': caps, **result.to_dict()}


def cmd_turan_probe(args) -> Result:
    F = _pattern(args)
    alpha = DensityVector([Fraction(a) for a in args.alpha])
    probe = TuranProbe(F, alpha, args.n, epsilon=args.epsilon, cap=args.cap)
    probe.run(args.trials, seed=args.seed, show_progress=False)
    if args.output:
        probe.export_analysis(args.output)
    return True, probe.get_summary()


def cmd_tail(args) -> Result:
    G = load_graph(args)
    fraction = subset_density_tail(G, args.k, Fraction(args.beta), trials=args.trials, seed=args.seed,
                                   mode=args.mode, cap=args.cap)
    return True, {'k': args.k, 'beta': args.beta, 'fraction': str(fraction), 'value': float(fraction)}


def _graph_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    source = parent.add_mutually_exclusive_group()
    source.add_argument('--graph', help="Hypergraph text file (header 'r n m', one edge per line)")
    source.add_argument('--complete', type=int, metavar='N', help="Complete r-graph on N vertices")
    source.add_argument('--cycle', type=int, metavar='N', help="Cycle graph C_N")
    parent.add_argument('--r', type=int, default=2, help="Uniformity for generated graphs (default: 2)")
    parent.add_argument('--q', type=int, default=3, help="Clique size (default: 3)")
    parent.add_argument('--output', help="Prefix for exported files")
    return parent


def _pattern_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--pattern', help="Pattern hypergraph text file")
    parser.add_argument('--pattern-complete', type=int, default=3, metavar='K',
                        help="Complete pattern on K vertices (default: 3)")
    parser.add_argument('--bounded', action='store_true', help="Use the complete r-bounded pattern")


COMMANDS = {
    'check-div': (cmd_check_div, "Check K_q^r-divisibility"),
    'cliques': (cmd_cliques, "Enumerate q-cliques"),
    'decompose-exact': (cmd_decompose_exact, "Exact-cover decomposition search"),
    'booster': (cmd_booster, "Build and verify a booster"),
    'orth-booster': (cmd_orth_booster, "Build and verify an orthogonal booster"),
    'hinge': (cmd_hinge, "Build and verify an independent hinge"),
    'fake-edge': (cmd_fake_edge, "Build a fake-edge gadget"),
    'integral': (cmd_integral, "Edge-intersecting integral decomposition"),
    'absorber': (cmd_absorber, "Build and verify an absorber"),
    'omni': (cmd_omni, "Exhaustive omni-absorber"),
    'fractional': (cmd_fractional, "Exact fractional decomposition"),
    'fixed-fractional': (cmd_fixed_fractional, "Fractional packing with a fixed boundary"),
    'boost': (cmd_boost, "Low-weight fractional decomposition and regularity boosting"),
    'reserves': (cmd_reserves, "Sample a reserve graph"),
    'nibble': (cmd_nibble, "Nibble with reserves"),
    'pipeline': (cmd_pipeline, "End-to-end finishing pipeline"),
    'count-copies': (cmd_count_copies, "Count copies of a pattern"),
    'spencer': (cmd_spencer, "Spencer alteration for independent sets"),
    'turan-probe': (cmd_turan_probe, "Empirical Turán-space probe"),
    'tail': (cmd_tail, "Subset-density tail"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Refined absorption toolkit for K_q^r-decompositions.")
    parser.add_argument('--seed', type=int, default=settings.DEFAULT_SEED, help="Master seed")
    parser.add_argument('--format', choices=('text', 'json'), default='text')
    parser.add_argument('--cap', type=int, default=None, help="Override the size cap or budget of the command")
    subparsers = parser.add_subparsers(dest='command', required=True)
    parent = _graph_options()
    parsers = {}
    for name, (func, help_text) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text, parents=[parent])
        sub.set_defaults(func=func)
        parsers[name] = sub

    parsers['cliques'].add_argument('--limit', type=int, default=50, help="Cliques to print")
    for name in ('fractional', 'fixed-fractional'):
        parsers[name].add_argument('--rule', choices=('bland', 'dantzig'), default='bland')
    parsers['fixed-fractional'].add_argument('--target', help="Boundary value on every edge, e.g. 29/30")
    parsers['boost'].add_argument('--s', type=int, default=None, help="Subset size")
    for name in ('reserves', 'nibble', 'pipeline'):
        parsers[name].add_argument('--p', type=float, default=settings.RESERVE_P, help="Reserve probability")
    for name in ('nibble', 'pipeline'):
        parsers[name].add_argument('--bite', type=float, default=settings.BITE)
    parsers['nibble'].add_argument('--no-search', action='store_true', help="Skip the exact cover-down searches")
    parsers['pipeline'].add_argument('--fallback', action='store_true',
                                     help="Referee a failed run with the exact-cover search")
    _pattern_options(parsers['count-copies'])
    _pattern_options(parsers['turan-probe'])
    parsers['spencer'].add_argument('--n', type=int, default=60, help="Vertices of the generated instance")
    parsers['spencer'].add_argument('--random', action='store_true', help="Sample instead of derandomizing")
    probe = parsers['turan-probe']
    probe.add_argument('--alpha', nargs='+', default=['0', '1/2'], help="Density per uniformity")
    probe.add_argument('--n', type=int, default=10)
    probe.add_argument('--trials', type=int, default=10)
    probe.add_argument('--epsilon', type=float, default=0.05)
    tail = parsers['tail']
    tail.add_argument('--k', type=int, default=4)
    tail.add_argument('--beta', default='1/2')
    tail.add_argument('--trials', type=int, default=1000)
    tail.add_argument('--mode', choices=('auto', 'exhaustive', 'sample'), default='auto')
    return parser


def emit(data: Dict[str, Any], fmt: str) -> None:
    if fmt == 'json':
        print(json.dumps(data, indent=2, sort_keys=True, default=str))
        return
    if "report" in data:
        print(data["report"])
        return
    for key, value in data.items():
        print(f"{key}: {str(value).lower() if isinstance(value, bool) else value}")


def main(argv=None) -> int:
    logging.config.dictConfig(settings.LOGGING)
    args = build_parser().parse_args(argv)
    try:
        ok, data = args.func(args)
    except USAGE_ERRORS as exc:
        logger.error(f"{args.command}: {exc}")
        return 2
    except AbsorptionError as exc:
        logger.error(f"{args.command} failed: {type(exc).__name__}: {exc}")
        return 1
    emit(data, args.format)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
