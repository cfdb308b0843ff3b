"""Command-line interface.

Subcommands wrap one pipeline each: `init` emits exponent vectors from
count initialization, `select` runs the activation/selection pipeline
against the gold table, `train` runs delta-rule training, `compose` runs
pair selection or angle learning, `rotate` derives inflection classes by
rotation, and `report` re-renders a saved JSON report as TSV.

Exit codes: 0 success (and convergence where that applies), 1 bad input,
2 not converged, 3 a tie while evaluating against gold.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import fixtures, report as rpt
from .composition import AngleLearnConfig, learn_angles, select_affix_by_angle, verify_gold_forms
from .errors import GeomorphError
from .exponence import activations, evaluate, initial_exponents
from .paradigm import ParadigmFile, parse
from .rotations import RotationLearnConfig, base_configuration, class_of_base, learn_all_classes
from .training import TrainConfig, train

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_CONVERGED = 2
EXIT_TIE = 3


def load_paradigm(name: str) -> ParadigmFile:
    path = Path(name)
    if path.exists():
        return parse(path)
    if name in fixtures.FIXTURES:
        return fixtures.load(name)
    raise GeomorphError(f"no such file or bundled fixture: {name}")


def emit(args, report: dict):
    text = rpt.dumps(report) if args.format == "json" else rpt.to_tsv(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def seed_from(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GEOMORPH_SEED")
    if not env:
        return 0
    try:
        return int(env)
    except ValueError:
        raise GeomorphError(f"GEOMORPH_SEED must be an integer, got {env!r}")


def _single_pipeline(pf: ParadigmFile):
    if pf.kind() != "single":
        raise GeomorphError(
            "this command needs a flat cell table (try rotate for class files, "
            "compose for stem/affix files)"
        )
    fs = pf.feature_system()
    corners = pf.corner_matrix(fs)
    gold = pf.gold_table(fs)
    return corners, gold


def cmd_init(args) -> int:
    pf = load_paradigm(args.paradigm)
    if pf.kind() == "classes":
        inv = pf.class_inventory()
        expo = base_configuration(inv, args.min_lexemes)
        extra = {"base_class": class_of_base(expo, inv)}
    elif pf.kind() == "single":
        corners, gold = _single_pipeline(pf)
        expo = initial_exponents(corners, gold)
        extra = {}
    else:
        raise GeomorphError("init needs a cell table or class blocks")
    fs = pf.feature_system()
    report = rpt.build_report(
        "init",
        {"paradigm": args.paradigm, "min_lexemes": args.min_lexemes},
        exponents=rpt.labeled_matrix(fs.value_names, expo.morphemes, expo.matrix),
        **extra,
    )
    emit(args, report)
    return EXIT_OK


def cmd_select(args) -> int:
    pf = load_paradigm(args.paradigm)
    corners, gold = _single_pipeline(pf)
    expo = initial_exponents(corners, gold)
    acts = activations(corners, expo)
    ev = evaluate(acts, gold)
    fs = pf.feature_system()
    report = rpt.build_report(
        "select",
        {"paradigm": args.paradigm},
        exponents=rpt.labeled_matrix(fs.value_names, expo.morphemes, expo.matrix),
        activations=rpt.labeled_matrix(
            [c.label() for c in acts.row_labels], acts.morphemes, acts.matrix
        ),
        winners=[w if w is not None else "-" for w in ev.predicted],
        gold=list(ev.gold),
        margins=list(ev.margins),
        min_margin=ev.min_margin,
        mismatches=list(ev.mismatch_labels()),
        ties=[acts.row_labels[i].label() for i in ev.ties],
        correct=ev.num_correct,
        cells=len(acts.row_labels),
    )
    emit(args, report)
    return EXIT_TIE if ev.ties else EXIT_OK


def cmd_train(args) -> int:
    pf = load_paradigm(args.paradigm)
    corners, gold = _single_pipeline(pf)
    expo = initial_exponents(corners, gold)
    cfg = TrainConfig(
        eta=args.eta, error_driven=args.error_driven, max_iters=args.max_iters
    )
    trained, trace = train(expo, corners, gold, cfg)
    if args.trace:
        lines = "".join(
            rpt.dumps_line(record) for record in trace.as_dicts()
        )
        Path(args.trace).write_text(lines, encoding="utf-8")
    acts = activations(corners, trained)
    ev = evaluate(acts, gold)
    fs = pf.feature_system()
    report = rpt.build_report(
        "train",
        {
            "paradigm": args.paradigm,
            "eta": args.eta,
            "error_driven": args.error_driven,
            "max_iters": args.max_iters,
        },
        exponents=rpt.labeled_matrix(fs.value_names, trained.morphemes, trained.matrix),
        activations=rpt.labeled_matrix(
            [c.label() for c in acts.row_labels], acts.morphemes, acts.matrix
        ),
        winners=[w if w is not None else "-" for w in ev.predicted],
        mismatches=list(ev.mismatch_labels()),
        min_margin=ev.min_margin,
        converged=trace.converged,
        iterations=trace.iterations,
        trace=trace.as_dicts(),
    )
    emit(args, report)
    if ev.ties:
        return EXIT_TIE
    return EXIT_OK if trace.converged else EXIT_NOT_CONVERGED


def cmd_compose(args) -> int:
    pf = load_paradigm(args.paradigm)
    if pf.kind() != "composition":
        raise GeomorphError("compose needs a composition section (STEM/AFFIX/FORM)")
    gold_forms = pf.gold_forms()
    model = pf.angle_model()
    seed = seed_from(args)
    config = {
        "paradigm": args.paradigm,
        "stepsize": args.stepsize,
        "margin": args.margin,
        "max_iters": args.max_iters,
        "seed": seed,
    }
    if model is None:
        cfg = AngleLearnConfig(
            stepsize=args.stepsize, margin=args.margin, max_iters=args.max_iters, seed=seed
        )
        result = learn_angles(
            pf.stem_labels(), pf.affix_labels(), gold_forms, pf.plane, cfg,
            initial=pf.authored_angles(),
        )
        model = result.model
        converged = result.converged
        iterations = result.iterations
    else:
        converged = True
        iterations = 0
    selections = []
    failures = verify_gold_forms(model, pf.stem_labels(), pf.affix_labels(), gold_forms)
    for (stem, value), affix in sorted(gold_forms.items()):
        got = select_affix_by_angle(model, stem, pf.affix_labels(), value)
        selections.append(
            {"stem": stem, "slot": value, "gold": affix, "selected": got}
        )
    angles = [
        {
            "label": label,
            "radians": model.entries[label],
            "degrees": math.degrees(model.entries[label]),
            "x": math.cos(model.entries[label]),
            "y": math.sin(model.entries[label]),
        }
        for label in list(pf.stem_labels()) + list(pf.affix_labels())
    ]
    report = rpt.build_report(
        "compose",
        config,
        plane={"x": pf.plane[0], "y": pf.plane[1]},
        angles=angles,
        selections=selections,
        failures=len(failures),
        converged=converged,
        iterations=iterations,
    )
    emit(args, report)
    return EXIT_OK if converged and not failures else EXIT_NOT_CONVERGED


def cmd_rotate(args) -> int:
    pf = load_paradigm(args.paradigm)
    if pf.kind() != "classes":
        raise GeomorphError("rotate needs CLASS blocks")
    inv = pf.class_inventory()
    seed = seed_from(args)
    cfg = RotationLearnConfig(
        base_increment=args.increment,
        margin_floor=args.margin_floor,
        max_iters=args.max_iters,
        runs=args.runs,
        seed=seed,
    )
    stats, base_label = learn_all_classes(inv, cfg, args.min_lexemes)
    rows = [
        {
            "class": s.class_label,
            "lexemes": s.lexemes,
            "distance": s.distance,
            "runs": s.runs,
            "converged_runs": s.converged_runs,
            "mean_iterations": s.mean_iterations,
            "mean_min_margin": s.mean_min_margin,
            "smallest_margin": s.smallest_margin,
        }
        for s in stats
    ]
    sections = {}
    if args.plans:
        sections["plans"] = [
            {
                "class": s.class_label,
                "converged": s.first_plan is not None,
                "rotations": s.first_plan.as_dicts() if s.first_plan else [],
            }
            for s in stats
        ]
    report = rpt.build_report(
        "rotate",
        {
            "paradigm": args.paradigm,
            "increment": args.increment,
            "margin_floor": args.margin_floor,
            "max_iters": args.max_iters,
            "runs": args.runs,
            "seed": seed,
            "min_lexemes": args.min_lexemes,
        },
        base_class=base_label,
        classes=rows,
        **sections,
    )
    emit(args, report)
    all_reached = all(s.converged_runs > 0 for s in stats)
    return EXIT_OK if all_reached else EXIT_NOT_CONVERGED


def cmd_report(args) -> int:
    text = Path(args.saved).read_text(encoding="utf-8")
    saved = rpt.loads(text)
    out = rpt.to_tsv(saved)
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="geomorph",
        description="Geometric inflectional morphology: selection, training, composition, rotation",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("tsv", "json"), default="tsv")
        sp.add_argument("--out", default=None, help="write the report here instead of stdout")

    sp = sub.add_parser("init", help="count-based exponent initialization")
    sp.add_argument("paradigm", help="paradigm file path or bundled fixture name")
    sp.add_argument("--min-lexemes", type=int, default=3)
    common(sp)
    sp.set_defaults(func=cmd_init)

    sp = sub.add_parser("select", help="activations, winners, and gold comparison")
    sp.add_argument("paradigm")
    common(sp)
    sp.set_defaults(func=cmd_select)

    sp = sub.add_parser("train", help="delta-rule training to the gold table")
    sp.add_argument("paradigm")
    sp.add_argument("--eta", type=float, default=0.1)
    sp.add_argument("--max-iters", type=int, default=100)
    sp.add_argument("--error-driven", dest="error_driven", action="store_true", default=True)
    sp.add_argument("--no-error-driven", dest="error_driven", action="store_false")
    sp.add_argument("--trace", default=None, help="also write the trace as JSON lines here")
    common(sp)
    sp.set_defaults(func=cmd_train)

    sp = sub.add_parser("compose", help="stem+affix selection or angle learning")
    sp.add_argument("paradigm")
    sp.add_argument("--stepsize", type=float, default=0.01)
    sp.add_argument("--margin", type=float, default=0.05)
    sp.add_argument("--max-iters", type=int, default=500)
    sp.add_argument("--seed", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("rotate", help="derive inflection classes by rotation")
    sp.add_argument("paradigm")
    sp.add_argument("--increment", type=float, default=0.1)
    sp.add_argument("--margin-floor", type=float, default=0.02)
    sp.add_argument("--max-iters", type=int, default=500)
    sp.add_argument("--runs", type=int, default=1)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--min-lexemes", type=int, default=3)
    sp.add_argument("--plans", action="store_true",
                    help="include one learned rotation plan per class")
    common(sp)
    sp.set_defaults(func=cmd_rotate)

    sp = sub.add_parser("report", help="re-render a saved JSON report as TSV")
    sp.add_argument("saved")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_report)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GeomorphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
