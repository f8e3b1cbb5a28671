"""Command-line interface: ``lambdamu COMMAND ...``.

Exit codes: 0 success (or the checked claim holds), 1 parse or type error,
2 a property was falsified (a witness is printed), 3 the budget ran out where
a definite answer was required.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import replace
from typing import Sequence

from . import analysis, lemmas
from .analysis import Budget, Exhausted, NotSN, SN
from .gen import GenConfig, GenerationError, random_term, random_typed
from .reduce import (
    DEFAULT_MAX_NODES,
    DEFAULT_MAX_SIZE,
    RuleSet,
    build_graph,
    redexes,
    step,
    to_dot,
)
from .syntax import ParseError, parse, show
from .terms import Term, cxty
from .typecheck import Context, TypeCheckError, check, infer, parse_context, parse_type, show_type

EXIT_OK, EXIT_ERROR, EXIT_FALSIFIED, EXIT_BUDGET = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _read_term(arg: str) -> Term:
    text = arg
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as f:
            text = "\n".join(line.split("#", 1)[0] for line in f)
    return parse(text.strip())


def _read_context(path: str | None, term: Term | None) -> Context:
    if path is None:
        return Context()
    with open(path, encoding="utf-8") as f:
        return parse_context(f.read(), term)


def _rules(text: str) -> RuleSet:
    try:
        return RuleSet.parse(text)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _budget(args: argparse.Namespace) -> Budget:
    return Budget(getattr(args, "max_nodes", DEFAULT_MAX_NODES), getattr(args, "max_size", DEFAULT_MAX_SIZE))


def _out(args: argparse.Namespace, m: Term) -> str:
    return show(m, unicode=args.unicode)


# ---------------------------------------------------------------- commands


def cmd_parse(args: argparse.Namespace) -> int:
    m = _read_term(args.term)
    print(_out(args, m))
    return EXIT_OK


def cmd_typecheck(args: argparse.Namespace) -> int:
    m = _read_term(args.term)
    ctx = _read_context(args.ctx, m)
    if args.type is None:
        print(show_type(infer(ctx, m)))
        return EXIT_OK
    d = check(ctx, m, parse_type(args.type))
    print(d.render())
    return EXIT_OK


def cmd_infer(args: argparse.Namespace) -> int:
    m = _read_term(args.term)
    print(show_type(infer(_read_context(args.ctx, m), m)))
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    m = _read_term(args.term)
    rules = _rules(args.rules)
    strategy = args.strategy
    if strategy == "all":
        g = build_graph(m, rules, args.max_nodes, args.max_size)
        nfs = g.normal_forms()
        print(f"graph: {len(g)} nodes, {g.status}; {len(nfs)} normal forms")
        for i in nfs:
            print(_out(args, g.term(i)))
        return EXIT_OK if g.complete else EXIT_BUDGET
    if strategy == "leftmost":
        rng = None
    elif strategy.startswith("random:"):
        try:
            rng = random.Random(int(strategy.split(":", 1)[1]))
        except ValueError:
            raise _UsageError(f"bad seed in strategy {strategy!r}") from None
    else:
        raise _UsageError(f"unknown strategy {strategy!r}")
    print(f"0: {_out(args, m)}")
    for n in range(1, args.max_steps + 1):
        rs = redexes(m, rules)
        if not rs:
            print(f"normal form after {n - 1} steps")
            return EXIT_OK
        r = rs[0] if rng is None else rng.choice(rs)
        m = step(m, r)
        print(f"{n}: {r} -> {_out(args, m)}")
    if not redexes(m, rules):
        print(f"normal form after {args.max_steps} steps")
        return EXIT_OK
    print(f"step limit {args.max_steps} reached")
    return EXIT_BUDGET


def cmd_graph(args: argparse.Namespace) -> int:
    m = _read_term(args.term)
    g = build_graph(m, _rules(args.rules), args.max_nodes, args.max_size)
    dot = to_dot(g, unicode=args.unicode)
    if args.dot == "-":
        sys.stdout.write(dot)
    else:
        with open(args.dot, "w", encoding="utf-8") as f:
            f.write(dot)
        n_edges = sum(len(e) for e in g.edges)
        print(f"{len(g)} nodes, {n_edges} edges, {g.status}, {len(g.normal_forms())} normal forms -> {args.dot}")
    return EXIT_OK if g.complete else EXIT_BUDGET


def _print_verdict(m: Term, v: analysis.Verdict, rules: RuleSet, witness: str | None) -> None:
    print(analysis.verdict_line(m, v))
    if isinstance(v, SN):
        eta = "not computed (decomposition certificate)" if v.eta is None else str(v.eta)
        print(f"SN  eta={eta}  cxty={cxty(m)}  nodes={v.nodes}  method={v.method}")
    elif isinstance(v, NotSN):
        print(f"NotSN  cycle of length {len(v.witness) - v.loop_start} after {v.loop_start} steps  nodes={v.nodes}")
    else:
        print(f"Exhausted  frontier={v.frontier_size}  max-size-seen={v.max_term_size_seen}  nodes={v.nodes}")
    if witness and not isinstance(v, Exhausted):
        with open(witness, "w", encoding="utf-8") as f:
            f.write(analysis.write_script(m, rules, v))
        print(f"witness written to {witness}")


def cmd_sn(args: argparse.Namespace) -> int:
    m = _read_term(args.term)
    rules = _rules(args.rules)
    v = analysis.sn_check(m, rules, _budget(args), args.method)
    _print_verdict(m, v, rules, args.witness)
    return EXIT_BUDGET if isinstance(v, Exhausted) else EXIT_OK


def cmd_eta(args: argparse.Namespace) -> int:
    m = _read_term(args.term)
    rules = _rules(args.rules)
    v = analysis.sn_check(m, rules, _budget(args))
    if isinstance(v, SN) and v.eta is not None:
        print(f"eta={v.eta} eta_c=({v.eta}, {cxty(m)})")
        return EXIT_OK
    if isinstance(v, NotSN):
        print("eta undefined: the term is not SN")
        return EXIT_OK
    print("inconclusive: reduction graph not complete within budget")
    return EXIT_BUDGET


def cmd_counterexamples(args: argparse.Namespace) -> int:
    rep = analysis.counterexample_suite(budget=_budget(args))
    print(rep.render())
    if rep.ok:
        print("all claims confirmed")
        return EXIT_OK
    failed = [r for r in rep.results if not r.ok]
    if all(isinstance(r.verdict, Exhausted) for r in failed):
        return EXIT_BUDGET
    for r in failed:
        if not isinstance(r.verdict, Exhausted):
            try:
                print(analysis.write_script(r.term, RuleSet.parse("all"), r.verdict))
            except ValueError:
                pass
    return EXIT_FALSIFIED


def cmd_lemma(args: argparse.Namespace) -> int:
    rep = lemmas.run_lemma(args.id, max_size=args.max_size)
    print(rep.render())
    return EXIT_OK if rep.ok else EXIT_FALSIFIED


_DRIVER_IDS = {"10": "exhaustive", "20": "typed", "27": "head"}


def cmd_theorem(args: argparse.Namespace) -> int:
    name = _DRIVER_IDS.get(args.id.upper().lstrip("T"), args.id)
    budget = Budget(args.max_nodes, DEFAULT_MAX_SIZE)
    if name == "exhaustive":
        cfg = analysis.EXHAUSTIVE_CONFIG
        cfg = replace(cfg, max_size=args.max_size or cfg.max_size)
        rep = analysis.sn_exhaustive(cfg, budget=budget)
    elif name == "typed":
        cfg = analysis.TYPED_CONFIG
        cfg = replace(cfg, max_size=args.max_size or cfg.max_size, seed=args.seed)
        rep = analysis.sn_typed(args.samples or 500, cfg, budget=budget, subject_reduction=args.subject_reduction)
    elif name == "head":
        cfg = analysis.HEAD_CONFIG
        cfg = replace(cfg, max_size=args.max_size or cfg.max_size, seed=args.seed)
        rep = analysis.sn_head_variable(args.samples or 200, cfg, budget=budget)
    else:
        raise _UsageError(f"unknown driver {args.id!r}; choose 10, 20, 27 or exhaustive, typed, head")
    print(rep.render())
    return EXIT_OK if rep.ok else EXIT_FALSIFIED


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = GenConfig(max_size=args.max_size, free_lambda_pool=tuple(args.lambda_pool.split(",")) if args.lambda_pool else (),
                    free_mu_pool=tuple(args.mu_pool.split(",")) if args.mu_pool else (), seed=args.seed,
                    typed=args.typed, type_depth=args.type_depth)
    r = random.Random(cfg.seed)
    for _ in range(args.count):
        if cfg.typed:
            s = random_typed(cfg, r)
            ctx = f"  [{s.ctx}]" if str(s.ctx) else ""
            print(f"{_out(args, s.term)} : {show_type(s.type)}{ctx}")
        else:
            print(_out(args, random_term(cfg, r)))
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    with open(args.script, encoding="utf-8") as f:
        res = analysis.replay_script(f.read())
    for k, t in enumerate(res.terms):
        print(f"{k}: {_out(args, t)}")
    print(("ok: " if res.ok else "FAILED: ") + res.message)
    return EXIT_OK if res.ok else EXIT_FALSIFIED


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lambdamu", description="Symmetric lambda-mu calculus toolkit.")
    p.add_argument("--unicode", action="store_true", help="print terms with λ/μ")
    sub = p.add_subparsers(dest="command", required=True)

    def with_term(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("term", help="inline term or path to a .lmu file")

    def with_budget(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
        sp.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)

    sp = sub.add_parser("parse", help="print the canonical form of a term")
    with_term(sp)
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("typecheck", help="check a term against a type, or infer one")
    with_term(sp)
    sp.add_argument("--ctx", help="context file")
    sp.add_argument("--type", help="expected type, e.g. '~P -> P'")
    sp.set_defaults(func=cmd_typecheck)

    sp = sub.add_parser("infer", help="principal type under a context")
    with_term(sp)
    sp.add_argument("--ctx", help="context file")
    sp.set_defaults(func=cmd_infer)

    sp = sub.add_parser("reduce", help="follow a reduction strategy")
    with_term(sp)
    sp.add_argument("--rules", default="bmu")
    sp.add_argument("--strategy", default="leftmost", help="leftmost | random:SEED | all")
    sp.add_argument("--max-steps", type=int, default=1000)
    with_budget(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("graph", help="export the reduction graph as DOT")
    with_term(sp)
    sp.add_argument("--rules", default="bmu")
    sp.add_argument("--dot", required=True, help="output file, '-' for stdout")
    with_budget(sp)
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("sn", help="certify strong normalization")
    with_term(sp)
    sp.add_argument("--rules", default="bmu")
    sp.add_argument("--method", default="graph", choices=["graph", "decompose", "auto"])
    sp.add_argument("--witness", help="write the certificate path as a replay script")
    with_budget(sp)
    sp.set_defaults(func=cmd_sn)

    sp = sub.add_parser("eta", help="length of the longest reduction")
    with_term(sp)
    sp.add_argument("--rules", default="bmu")
    with_budget(sp)
    sp.set_defaults(func=cmd_eta)

    sp = sub.add_parser("counterexamples", help="run the counter-example suite")
    with_budget(sp)
    sp.set_defaults(func=cmd_counterexamples)

    sp = sub.add_parser("lemma", help="run a decomposition oracle")
    sp.add_argument("--id", required=True, choices=sorted(lemmas.LEMMAS, key=int))
    sp.add_argument("--max-size", type=int, default=None, help="component cxty bound")
    sp.set_defaults(func=cmd_lemma)

    sp = sub.add_parser("theorem", help="run a normalization property driver")
    sp.add_argument("--id", required=True, help="10 (exhaustive), 20 (typed) or 27 (head)")
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-size", type=int, default=None, help="term cxty bound (default per driver)")
    sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    sp.add_argument("--subject-reduction", action="store_true", help="also recheck types along every graph (20)")
    sp.set_defaults(func=cmd_theorem)

    sp = sub.add_parser("gen", help="print random terms")
    sp.add_argument("--max-size", type=int, default=8)
    sp.add_argument("--typed", action="store_true")
    sp.add_argument("--type-depth", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--lambda-pool", default="x,y")
    sp.add_argument("--mu-pool", default="a")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("replay", help="replay a witness script")
    sp.add_argument("--script", required=True)
    sp.set_defaults(func=cmd_replay)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, TypeCheckError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (_UsageError, GenerationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
