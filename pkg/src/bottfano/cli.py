"""Command-line front end.

Tower documents are JSON::

    {"stages": [n_1, ..., n_m],
     "coefficients": [ [a_{2,1}], [a_{3,1}, a_{3,2}], ... ]}

where ``coefficients[j-2][l-1]`` is the list of the n_j integers of
a_{j,l}.  Exit codes: 0 command succeeded (whatever the verdict),
1 usage/parse error, 2 validation error, 3 expectation or oracle failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import enumeration, fan as fanmod, tower as towermod
from .enumeration import FANO_THREE_STAGE_TRIPLES, SweepError, SweepSpec
from .fan import FanError
from .tower import GeneralizedBottTower, TowerError, Verdict

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_EXPECTATION = 3


class UsageError(Exception):
    pass


class ExpectationError(Exception):
    pass


def parse_document(text: str) -> GeneralizedBottTower:
    """Parse and shape-check a JSON tower document, citing (j,l,k) paths."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise UsageError("document must be a JSON object")
    stages = doc.get("stages")
    if not isinstance(stages, list) or not stages:
        raise TowerError("'stages' must be a nonempty array of positive integers")
    for i, n in enumerate(stages, start=1):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise TowerError(f"stages[j={i}] must be a positive integer, got {n!r}")
    m = len(stages)
    coefficients = doc.get("coefficients", [])
    if not isinstance(coefficients, list):
        raise TowerError("'coefficients' must be an array")
    if len(coefficients) != m - 1:
        raise TowerError(
            f"'coefficients' must have {m - 1} entries (j=2..{m}), got {len(coefficients)}"
        )
    coeffs: dict[tuple[int, int], tuple[int, ...]] = {}
    for j in range(2, m + 1):
        row = coefficients[j - 2]
        if not isinstance(row, list) or len(row) != j - 1:
            raise TowerError(
                f"coefficients[j={j}] must be an array of {j - 1} vectors (l=1..{j - 1})"
            )
        for l in range(1, j):
            vec = row[l - 1]
            if not isinstance(vec, list) or len(vec) != stages[j - 1]:
                raise TowerError(
                    f"coefficients[j={j}][l={l}] must be an array of n_{j}={stages[j - 1]} integers"
                )
            for k, c in enumerate(vec, start=1):
                if not isinstance(c, int) or isinstance(c, bool):
                    raise TowerError(
                        f"coefficients[j={j}][l={l}][k={k}] must be an integer, got {c!r}"
                    )
            coeffs[(j, l)] = tuple(vec)
    t = GeneralizedBottTower(tuple(stages), coeffs)
    towermod.validate(t)
    return t


def _read_input(args) -> str:
    if args.input and args.input != "-":
        try:
            with open(args.input) as fh:
                return fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {args.input}: {e}") from e
    return sys.stdin.read()


def _label(lab) -> str:
    return f"u[{lab[0]},{lab[1]}]"


def _relation_to_json(pr: fanmod.PrimitiveCollectionData) -> dict:
    return {
        "collection": [list(lab) for lab in sorted(pr.members)],
        "rhs": [[list(lab), c] for lab, c in sorted(pr.relation_rhs.items())],
        "degree": pr.degree,
    }


def _emit(report: dict, args, human_lines) -> None:
    if args.format == "machine":
        print(json.dumps(report, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def cmd_check(args) -> int:
    t = parse_document(_read_input(args))
    bv = towermod.compute_b(t)
    cls = towermod.classify(t)
    report = {
        "command": "check",
        "stages": list(t.stage_dims),
        "verdict": cls.verdict.value,
        "nu_sums": list(cls.nu_sums),
        "thresholds": [list(pair) for pair in cls.thresholds],
        "b_vectors": {f"{p},{q}": list(vec) for (p, q), vec in sorted(bv.b.items())},
    }
    lines = [f"verdict: {cls.verdict.value}"]
    for p, (s, (lo, hi)) in enumerate(zip(cls.nu_sums, cls.thresholds), start=1):
        lines.append(f"  p={p}: sum of nu(b[{p},q]) = {s}  (Fano <= {lo}, weak Fano <= {hi})")
    for (p, q), vec in sorted(bv.b.items()):
        lines.append(f"  b[{p},{q}] = {list(vec)}")
    if args.verify:
        f = fanmod.build_fan(t)
        fanmod.validate_smooth_complete(f)
        oracle = fanmod.batyrev_classify(f)
        report["verified"] = oracle.verdict is cls.verdict
        if oracle.verdict is not cls.verdict:
            _emit(report, args, lines + [
                f"VERIFY FAILED: fan criterion says {oracle.verdict.value}"
            ])
            raise ExpectationError(
                f"verdicts disagree: closed form {cls.verdict.value}, "
                f"fan criterion {oracle.verdict.value}"
            )
        lines.append("verify: fan criterion agrees")
    _emit(report, args, lines)
    return EXIT_OK


def cmd_fan(args, relations_only: bool = False) -> int:
    t = parse_document(_read_input(args))
    relations_only = relations_only or getattr(args, "relations_only", False)
    f = fanmod.build_fan(t)
    fanmod.validate_smooth_complete(f)
    bv = towermod.compute_b(t)
    relations = [
        fanmod.expected_primitive_relation(t, bv, p) for p in range(1, t.num_stages + 1)
    ]
    report = {
        "command": "fan",
        "stages": list(t.stage_dims),
        "relations": [_relation_to_json(pr) for pr in relations],
    }
    lines = []
    if not relations_only:
        report["rays"] = [[list(lab), list(vec)] for lab, vec in zip(f.labels, f.rays)]
        report["max_cones"] = [sorted(cone) for cone in f.max_cones]
        lines.append(f"rays ({len(f.rays)}):")
        for lab, vec in zip(f.labels, f.rays):
            lines.append(f"  {_label(lab)} = {list(vec)}")
        lines.append(f"maximal cones ({len(f.max_cones)}):")
        for cone in f.max_cones:
            lines.append("  {" + ", ".join(_label(f.labels[i]) for i in sorted(cone)) + "}")
    lines.append(f"primitive collections ({len(relations)}):")
    for pr in relations:
        lhs = " + ".join(_label(lab) for lab in sorted(pr.members))
        rhs = " + ".join(
            f"{c}*{_label(lab)}" for lab, c in sorted(pr.relation_rhs.items())
        ) or "0"
        lines.append(f"  {lhs} = {rhs}   (degree {pr.degree})")
    _emit(report, args, lines)
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError as e:
        raise UsageError(f"invalid range {text!r}; expected lo:hi") from e


def _parse_stages(text: str) -> tuple[int, ...]:
    try:
        stages = tuple(int(s) for s in text.split(","))
    except ValueError as e:
        raise UsageError(f"invalid stages {text!r}; expected comma-separated integers") from e
    if not stages or any(n < 1 for n in stages):
        raise UsageError(f"invalid stages {text!r}; dimensions must be positive")
    return stages


def cmd_enumerate(args) -> int:
    stages = _parse_stages(args.stages)
    rng = _parse_range(args.range)
    spec = SweepSpec(stage_dims=stages, coeff_range=rng, mode=args.mode, cap=args.cap)
    result = enumeration.sweep(spec)
    report = {
        "command": "enumerate",
        "stages": list(stages),
        "range": list(rng),
        "mode": args.mode,
        "total": result.total,
        "counts": result.counts,
        "slots": [list(s) for s in result.slots],
        "hits": [list(h) for h in result.hits],
    }
    lines = [
        f"candidates: {result.total}",
        "counts: " + ", ".join(f"{k}={v}" for k, v in sorted(result.counts.items())),
    ]
    if args.mode != "census":
        lines.append(f"hits ({len(result.hits)}), slots (j,l,k) = {list(result.slots)}:")
        lines.extend(f"  {list(h)}" for h in result.hits)
    _emit(report, args, lines)
    if args.expect_table1:
        if stages != (1, 1, 1) or args.mode != "fano":
            raise UsageError("--expect-table1 requires --stages 1,1,1 --mode fano")
        if set(result.hits) != FANO_THREE_STAGE_TRIPLES:
            raise ExpectationError(
                f"Fano hit set has {len(result.hits)} triples, "
                f"expected the {len(FANO_THREE_STAGE_TRIPLES)} known ones"
            )
    return EXIT_OK


def cmd_chary_compare(args) -> int:
    rng = _parse_range(args.range)
    result = enumeration.chary_compare(args.r, rng, cap=args.cap)
    report = {
        "command": "chary_compare",
        "r": args.r,
        "range": list(rng),
        "total": result.total,
        "chary_not_fano": [list(v) for v in result.chary_not_fano],
        "fano_not_chary": [list(v) for v in result.fano_not_chary],
    }
    lines = [
        f"candidates: {result.total}",
        f"Chary holds but not Fano: {len(result.chary_not_fano)}",
        f"Fano but Chary fails: {len(result.fano_not_chary)}",
    ]
    lines.extend(f"  beta = {list(v)}" for v in result.fano_not_chary)
    _emit(report, args, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bottfano",
        description="Decide whether a generalized Bott manifold is Fano or weak Fano.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("--input", default="-", help="tower document path, or - for stdin")
        p.add_argument("--format", choices=("human", "machine"), default="human")

    p_check = sub.add_parser("check", help="classify a tower document")
    add_io(p_check)
    p_check.add_argument(
        "--verify", action="store_true",
        help="also run the fan-based degree criterion and require agreement",
    )
    p_check.set_defaults(func=cmd_check)

    p_fan = sub.add_parser("fan", help="print rays, maximal cones and primitive relations")
    add_io(p_fan)
    p_fan.add_argument("--relations-only", action="store_true")
    p_fan.set_defaults(func=cmd_fan)

    p_rel = sub.add_parser("relations", help="print primitive relations only")
    add_io(p_rel)
    p_rel.set_defaults(func=lambda args: cmd_fan(args, relations_only=True))

    p_enum = sub.add_parser("enumerate", help="sweep coefficient ranges exhaustively")
    p_enum.add_argument("--stages", required=True, help="comma-separated n_1,...,n_m")
    p_enum.add_argument("--range", required=True, help="inclusive coefficient range lo:hi")
    p_enum.add_argument("--mode", choices=enumeration.SWEEP_MODES, default="census")
    p_enum.add_argument("--cap", type=int, default=enumeration.DEFAULT_CAP)
    p_enum.add_argument("--format", choices=("human", "machine"), default="human")
    p_enum.add_argument(
        "--expect-table1", action="store_true",
        help="fail unless the Fano hits for stages 1,1,1 are exactly the 15 known triples",
    )
    p_enum.set_defaults(func=cmd_enumerate)

    p_chary = sub.add_parser("chary-compare", help="compare Chary's condition with the Fano verdict")
    p_chary.add_argument("--r", type=int, required=True, help="matrix size / number of stages")
    p_chary.add_argument("--range", required=True, help="inclusive off-diagonal range lo:hi")
    p_chary.add_argument("--cap", type=int, default=enumeration.DEFAULT_CAP)
    p_chary.add_argument("--format", choices=("human", "machine"), default="human")
    p_chary.set_defaults(func=cmd_chary_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (TowerError, FanError, SweepError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except ExpectationError as e:
        print(f"expectation failed: {e}", file=sys.stderr)
        return EXIT_EXPECTATION


if __name__ == "__main__":
    sys.exit(main())
