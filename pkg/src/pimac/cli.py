"""Command-line front end emitting JSON/CSV for external plotting.

Subcommands: classify (regime report), region (constraint/vertex export of
the inner, outer or exact capacity region), sumcap (sum-rate bracket), sweep
(bracket vs SNR as CSV) and verify (regime claims and consistency checks).

Exit status: 0 success / all checks pass, 1 user error or failed check,
2 internal-consistency failure.  All rates are printed in bits per channel
use with 12 significant digits, which round-trips exactly, so re-emitting a
parsed document is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .backend import backend_name
from .bounds import (
    InternalConsistencyError,
    Regime,
    capacity_region,
    classify,
    inner_bound,
    outer_bound,
    regime_margins,
    verify_redundancy_claims,
)
from .model import ChannelParams
from .regions import RatePolytope, UnboundedRegionError, vertices
from .sumcap import (
    DEFAULT_SEARCH,
    noisy_interference_condition,
    snr_sweep,
    sumcap_bracket,
)

#: Residual gap below which the weak-interference coincidence claim counts
#: as verified.
COINCIDENCE_TOL = 1e-3

_REGIME_ORDER = (
    Regime.STRONG_CAPACITY,
    Regime.VSI_TX1,
    Regime.VSI_TX2,
    Regime.VSI_TX3,
    Regime.FULL_VSI,
)


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: channel, command, output and tolerance settings."""

    params: ChannelParams
    command: str
    fmt: str
    tol: float
    seed: int
    bound: Optional[str] = None
    snr_start: Optional[float] = None
    snr_stop: Optional[float] = None
    snr_step: Optional[float] = None


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 by default; 2 is reserved for
    # internal-consistency failures here, so user errors map to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _f12(x: float) -> float:
    """Round through 12 significant digits (idempotent under re-parsing)."""
    return float(f"{x:.12g}")


def _s12(x: float) -> str:
    return f"{x:.12g}"


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _params_doc(p: ChannelParams) -> dict:
    return {
        "p1": _f12(p.p1), "p2": _f12(p.p2), "p3": _f12(p.p3),
        "h12": _f12(p.h12), "h22": _f12(p.h22), "h31": _f12(p.h31),
    }


def region_document(params: ChannelParams, region: RatePolytope, tol: float) -> dict:
    verts = sorted(
        tuple(_f12(x) for x in v) for v in vertices(region, feas_tol=tol)
    )
    return {
        "params": _params_doc(params),
        "constraints": [
            {"mask": c.mask, "rhs": _f12(c.rhs)} for c in region.constraints
        ],
        "vertices": [list(v) for v in verts],
    }


def _region_csv(doc: dict) -> str:
    lines = ["kind,mask,rhs,r1,r2,r3"]
    for c in doc["constraints"]:
        lines.append(f"constraint,{c['mask']},{_s12(c['rhs'])},,,")
    for v in doc["vertices"]:
        lines.append(f"vertex,,,{_s12(v[0])},{_s12(v[1])},{_s12(v[2])}")
    return "\n".join(lines) + "\n"


def _add_channel_args(sub):
    for flag in ("--p1", "--p2", "--p3"):
        sub.add_argument(flag, type=float, required=True, help="transmit power (linear)")
    for flag in ("--h12", "--h22", "--h31"):
        sub.add_argument(flag, type=float, required=True, help="cross-gain amplitude")
    sub.add_argument("--tol", type=float, default=1e-9, help="feasibility/equality tolerance in bits")
    sub.add_argument("--seed", type=int, default=0, help="random seed (reserved; output is deterministic)")


def _read_params(args, parser) -> ChannelParams:
    for name in ("p1", "p2", "p3"):
        if getattr(args, name) < 0:
            parser.error(f"--{name} must be nonnegative")
    return ChannelParams(args.p1, args.p2, args.p3, args.h12, args.h22, args.h31)


def build_parser() -> _Parser:
    parser = _Parser(prog="pimac", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--backend-info", action="store_true", help="print the kernel backend and exit"
    )
    subs = parser.add_subparsers(dest="command")

    p_classify = subs.add_parser("classify", parents=[], help="interference-regime report")
    _add_channel_args(p_classify)
    p_classify.add_argument("--format", choices=["json"], default="json")

    p_region = subs.add_parser("region", help="export a rate region as constraints plus vertices")
    _add_channel_args(p_region)
    p_region.add_argument("--bound", choices=["inner", "outer", "capacity"], required=True)
    p_region.add_argument("--format", choices=["json", "csv"], default="json")

    p_sumcap = subs.add_parser("sumcap", help="sum-capacity bracket at one operating point")
    _add_channel_args(p_sumcap)
    p_sumcap.add_argument("--format", choices=["json"], default="json")

    p_sweep = subs.add_parser("sweep", help="sum-capacity bracket vs SNR (CSV)")
    _add_channel_args(p_sweep)
    p_sweep.add_argument("--format", choices=["csv"], default="csv")
    p_sweep.add_argument("--snr-start", type=float, required=True, help="first SNR point in dB")
    p_sweep.add_argument("--snr-stop", type=float, required=True, help="last SNR point in dB")
    p_sweep.add_argument("--snr-step", type=float, required=True, help="grid step in dB (> 0)")

    p_verify = subs.add_parser("verify", help="run all applicable claims; exit 0 iff all pass")
    _add_channel_args(p_verify)
    p_verify.add_argument("--format", choices=["json"], default="json")

    return parser


def cmd_classify(args, parser) -> int:
    params = _read_params(args, parser)
    report = classify(params)
    doc = {
        "params": _params_doc(params),
        "satisfied": sorted(r.value for r in report.satisfied),
        "margins": {
            regime.value: {name: _f12(v) for name, v in report.margins[regime].items()}
            for regime in _REGIME_ORDER
        },
        "capacity_available": report.capacity_available,
        "capacity_regime": report.capacity_regime.value if report.capacity_regime else None,
    }
    sys.stdout.write(_dump_json(doc))
    return 0


def cmd_region(args, parser) -> int:
    params = _read_params(args, parser)
    if args.bound == "inner":
        region = inner_bound(params)
    elif args.bound == "outer":
        region = outer_bound(params)
    else:
        region = capacity_region(params, tol=args.tol)
        if region is None:
            print(
                "pimac region: error: no applicable capacity theorem for these "
                "parameters (regime is UNCLASSIFIED); use --bound inner or outer",
                file=sys.stderr,
            )
            return 1
    doc = region_document(params, region, args.tol)
    if args.format == "json":
        sys.stdout.write(_dump_json(doc))
    else:
        sys.stdout.write(_region_csv(doc))
    return 0


def _bracket_doc(bracket) -> dict:
    return {
        "lower_bits": _f12(bracket.lower),
        "upper_bits": _f12(bracket.upper),
        "gap_bits": _f12(bracket.gap),
        "lower_source": bracket.lower_source,
        "upper_source": bracket.upper_source,
        "tin_bits": _f12(bracket.tin),
        "inner_sum_bits": _f12(bracket.inner_sum),
        "outer_sum_bits": _f12(bracket.outer_sum),
        "genie": {
            "rho1": _f12(bracket.genie.rho1),
            "rho2": _f12(bracket.genie.rho2),
            "eta1": _f12(bracket.genie.eta1),
            "eta2": _f12(bracket.genie.eta2),
            "value_bits": _f12(bracket.genie.value),
        },
    }


def cmd_sumcap(args, parser) -> int:
    params = _read_params(args, parser)
    bracket = sumcap_bracket(params, DEFAULT_SEARCH)
    doc = {"params": _params_doc(params)}
    doc.update(_bracket_doc(bracket))
    sys.stdout.write(_dump_json(doc))
    return 0


def cmd_sweep(args, parser) -> int:
    params = _read_params(args, parser)
    if args.snr_step <= 0:
        parser.error("--snr-step must be positive")
    if args.snr_start > args.snr_stop:
        parser.error("--snr-start must not exceed --snr-stop")
    grid = []
    point = args.snr_start
    while point <= args.snr_stop + args.snr_step * 1e-9:
        grid.append(point)
        point = args.snr_start + len(grid) * args.snr_step
    rows = snr_sweep(params, grid, DEFAULT_SEARCH)
    lines = ["snr_db,lower_bits,upper_bits,gap_bits,lower_source,upper_source"]
    for snr_db, bracket in rows:
        lines.append(
            f"{_s12(snr_db)},{_s12(bracket.lower)},{_s12(bracket.upper)},"
            f"{_s12(bracket.gap)},{bracket.lower_source},{bracket.upper_source}"
        )
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_verify(args, parser) -> int:
    params = _read_params(args, parser)
    checks = []
    for claim in verify_redundancy_claims(params, tol=args.tol):
        checks.append(
            {
                "id": claim.claim_id,
                "holds": claim.holds,
                "margin": None if claim.margin is None else _f12(claim.margin),
                "detail": claim.detail,
            }
        )
    # exact-capacity constructions must agree when several regimes hold
    capacity_region(params, tol=args.tol)

    bracket = sumcap_bracket(params, DEFAULT_SEARCH)
    checks.append(
        {
            "id": "sum_rate_bracket_order",
            "holds": bracket.lower <= bracket.upper + args.tol,
            "margin": _f12(bracket.gap),
            "detail": f"lower bound ({bracket.lower_source}) below upper bound ({bracket.upper_source})",
        }
    )
    condition = noisy_interference_condition(params)
    if condition is not None and condition <= 1.0:
        checks.append(
            {
                "id": "noisy_interference_coincidence",
                "holds": bracket.gap <= COINCIDENCE_TOL,
                "margin": _f12(1.0 - condition),
                "detail": f"sum-rate gap {_s12(bracket.gap)} bits with condition value {_s12(condition)}",
            }
        )
    all_pass = all(c["holds"] for c in checks)
    doc = {"params": _params_doc(params), "checks": checks, "all_pass": all_pass}
    sys.stdout.write(_dump_json(doc))
    return 0 if all_pass else 1


_COMMANDS = {
    "classify": cmd_classify,
    "region": cmd_region,
    "sumcap": cmd_sumcap,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "backend_info", False) and args.command is None:
            print(f"kernel backend: {backend_name()}")
            return 0
        if args.command is None:
            parser.error("a subcommand is required")
        return _COMMANDS[args.command](args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except InternalConsistencyError as exc:
        print(f"pimac: internal consistency failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, UnboundedRegionError) as exc:
        print(f"pimac: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
