"""Command-line entry point ``projstruct``.

Exit codes: 0 on success, 1 for malformed input, 2 when a mathematical
precondition fails.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import devgeo, invariants, riccati, schwarzian, surface_rep, surgery
from .errors import InputError, MathError, ProjStructError
from .moebius import Kind, classify
from .riccati import ChartModel

EXIT_OK, EXIT_INPUT, EXIT_MATH = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "")
    if "/" in s:
        try:
            return complex(float(Fraction(s)))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {text!r}") from exc
    if s.endswith("i") and not s.endswith("inf"):
        s = s[:-1] + "j"
    try:
        return complex(s)
    except ValueError as exc:
        raise InputError(f"cannot parse complex number {text!r}") from exc


def _read_json(path: str) -> tuple[dict, bytes]:
    try:
        raw = Path(path).read_bytes()
        return json.loads(raw), raw
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from exc


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _load_rep(path: str, digest):
    data, raw = _read_json(path)
    digest.update(raw)
    return surface_rep.from_json(data)


def cmd_validate(args, digest, warnings):
    rep = _load_rep(args.file, digest)
    sign = surface_rep.validate_relation(rep, args.tol)
    classes = [classify(m, args.tol) for m in rep.images]
    return {
        "relationSign": sign,
        "generators": [{"label": lab, **cls.to_json()} for lab, cls in zip(rep.presentation.labels, classes)],
    }


def cmd_invariants(args, digest, warnings):
    rep = _load_rep(args.file, digest)
    report = invariants.invariants_report(rep, args.tol)
    report["dLowerBoundNote"] = "parity lower bound only"
    return report


def _section(args) -> riccati.SectionGerm:
    if args.pole is not None:
        unit = [parse_complex(c) for c in args.section.split(",")] if args.section else [1 + 0j]
        return riccati.SectionGerm.pole(args.pole, unit)
    if not args.section:
        raise InputError("--section or --pole is required")
    return riccati.SectionGerm.from_series([parse_complex(c) for c in args.section.split(",")])


def cmd_chart(args, digest, warnings):
    rep = _load_rep(args.file, digest)
    cusps = rep.cusp_images
    if not 1 <= args.cusp <= len(cusps):
        raise InputError(f"--cusp must be between 1 and {len(cusps)}")
    cls = classify(cusps[args.cusp - 1], args.tol)
    model = riccati.minimal_model(cls)
    section = _section(args)
    if model.kind is riccati.ModelKind.TRIVIAL_POWER and model.index == 0:
        state = None
        chart = riccati.regular_chart(section)
        flips, tangency = 0, riccati.tangency_order(model, section)
    else:
        state = riccati.ModelWithSection(model, section)
        flips, _ = riccati.flips_to_transversal(state)
        chart = riccati.chart_from_section(state)
        tangency = state.tangency
    if cls.kind is Kind.TRIVIAL:
        warnings.append("trivial monodromy: chart is a branched cover of the regular foliation")
    a0, n_p = chart.decomposition()
    return {
        "cusp": args.cusp,
        "class": cls.to_json(),
        "model": model.to_json(),
        "section": section.to_json(),
        "tangency": tangency,
        "flipsToTransversal": flips,
        "chart": chart.to_json(),
        "decomposition": {"alpha0": _pair(a0), "branchingOrder": n_p},
    }


def cmd_degree(args, digest, warnings):
    if (args.alpha is None) == (args.parabolic is None):
        raise InputError("give exactly one of --alpha or --parabolic")
    if args.parabolic is not None:
        chart = ChartModel.parabolic_log(args.parabolic)
        out = {"chart": chart.to_json(), "degree": devgeo.chart_degree(chart), "hasTwins": devgeo.has_twins(chart)}
        if args.emit_csv:
            raise InputError("--emit-csv needs --alpha")
        return out
    parts = args.alpha.split(",")
    if len(parts) != 2:
        raise InputError("--alpha expects re,im")
    try:
        alpha = complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise InputError(f"cannot parse --alpha {args.alpha!r}") from exc
    chart = ChartModel.power(alpha, normalize=False)
    deg = devgeo.chart_degree(chart)
    out = {"chart": chart.to_json(), "strip": devgeo.strip_decomposition(alpha).to_json()}
    if isinstance(deg, devgeo.DegreeFlag):
        out["degree"] = deg.value
        warnings.append("Re alpha = 0: annulus picture, no degree assigned")
    else:
        out["degree"] = deg
        out["oracleMaxPreimages"] = devgeo.max_preimages_on_grid(alpha)
        out["oracleAgrees"] = out["oracleMaxPreimages"] == deg
        out["hasTwins"] = devgeo.has_twins(chart)
    if args.emit_csv:
        Path(args.emit_csv).write_text(devgeo.strip_csv(alpha))
        out["csv"] = args.emit_csv
    return out


def cmd_schwarzian(args, digest, warnings):
    a0, a1, ai = (parse_complex(a) for a in args.alphas)
    qd = schwarzian.triangle_differential(a0, a1, ai)
    out = {
        "coefficients": {"c0": _pair(qd.c0), "c1": _pair(qd.c1), "mixed": _pair(qd.mixed)},
        "relationCheck": schwarzian.relation_check(a0, a1, ai),
    }
    if args.verify_monodromy:
        steps = max(int(args.steps), 10_000)
        mono = schwarzian.monodromy_report(qd, steps=steps)
        out["monodromy"] = mono
        if mono["discrepancy"]:
            warnings.append("monodromy relation holds although the exponent sum is not an integer")
    return out


def cmd_surgery(args, digest, warnings):
    data, raw = _read_json(args.state)
    digest.update(raw)
    state = surgery.SurgeryState.from_json(data)
    if (args.move is None) == (args.inverse is None):
        raise InputError("give exactly one of --move or --inverse")
    out = {"before": {"defect": str(state.defect), "eSigma": surgery.e_sigma_of_state(state)}}
    if args.move is not None:
        tdata, traw = _read_json(args.move)
        digest.update(traw)
        new_state, reverse = surgery.move_branch_point(state, surgery.TwinSpec.from_json(tdata), strict=not args.lenient)
        out["reverseMove"] = reverse.to_json()
    else:
        new_state, pair = surgery.inverse_move_at_fuchsian(state, args.inverse, new_label=args.new_label)
        out["actionPair"] = {"deck": _pair(pair.deck), "equiv": _pair(pair.equiv),
                             "alpha": _pair(devgeo.pair_to_alpha(pair))}
    out["after"] = {"defect": str(new_state.defect), "eSigma": surgery.e_sigma_of_state(new_state)}
    out["state"] = new_state.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(new_state.to_json(), sort_keys=True, indent=2) + "\n")
        out["written"] = args.out
    return out


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--steps", type=float, default=1e5)
    common.add_argument("--output", choices=["json", "text"], default="json")

    parser = _Parser(prog="projstruct", description="Projective structures with Fuchsian-type singularities")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check the relation and classify generators")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", parents=[common], help="parity invariants")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("chart", parents=[common], help="chart at a cusp from a section germ")
    p.add_argument("file")
    p.add_argument("--cusp", type=int, required=True, help="1-based cusp index")
    p.add_argument("--section", help="comma-separated coefficients (unit coefficients with --pole)")
    p.add_argument("--pole", type=int, help="pole order of the section at the cusp")
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("degree", parents=[common], help="degree of a local chart")
    p.add_argument("--alpha", help="re,im")
    p.add_argument("--parabolic", type=int)
    p.add_argument("--emit-csv", dest="emit_csv")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("schwarzian", parents=[common], help="three-punctured-sphere differential")
    p.add_argument("--alphas", nargs=3, required=True)
    p.add_argument("--verify-monodromy", dest="verify_monodromy", action="store_true")
    p.set_defaults(func=cmd_schwarzian)

    p = sub.add_parser("surgery", parents=[common], help="move branch points")
    p.add_argument("state")
    p.add_argument("--move")
    p.add_argument("--inverse")
    p.add_argument("--new-label", dest="new_label")
    p.add_argument("--lenient", action="store_true", help="allow angles that are not multiples of 2 pi")
    p.add_argument("--out")
    p.set_defaults(func=cmd_surgery)
    return parser


def _digest_args(args):
    skip = {"func", "output"}
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    h = hashlib.sha256()
    h.update(json.dumps(echo, sort_keys=True, default=str).encode())
    return h, echo


def _text(obj, prefix="") -> list[str]:
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            lines += _text(obj[k], f"{prefix}{k}.")
        return lines
    if isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        lines = []
        for i, v in enumerate(obj):
            lines += _text(v, f"{prefix}{i}.")
        return lines
    return [f"{prefix[:-1]}: {json.dumps(obj)}"]


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text(report)) + "\n"
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    fmt = "json"
    try:
        args = parser.parse_args(argv)
        fmt = args.output
        digest, echo = _digest_args(args)
        warnings: list[str] = []
        results = args.func(args, digest, warnings)
        report = {
            "command": {"name": args.command, "arguments": echo},
            "inputsDigest": digest.hexdigest(),
            "results": results,
            "warnings": warnings,
            "tolerances": {"tol": args.tol, "steps": int(args.steps)},
        }
        sys.stdout.write(render(report, fmt))
        return EXIT_OK
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MathError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ProjStructError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
