import argparse
import json
import logging
import sys
from typing import Dict, List, Optional

from pydantic import ValidationError

from configs.logger_config import get_logger, set_console_level
from configs.tool_config import DEFAULT_SAMPLES, DEFAULT_SEED, SUITES
from core.crooked_ads import AdSCrookedPlane, membership_ads
from core.crooked_minkowski import CrookedPlaneE3, membership
from core.einstein_embedding import StemConfiguration, crooked_surface, cs_membership, invariance_kind
from core.errors import GeometryError
from core.sl2_algebra import as_sl2
from tools.mesh_tool import MeshTool
from tools.verify_tool import RunConfig, VerifyTool
from utils.parsers import StemConfigurationInput, as_ein_point, load_json, parse_object, parse_points

logger = get_logger("crooked")

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_CHECK_FAILED = 2

INPUT_ERRORS = (ValueError, ValidationError, GeometryError, OSError, json.JSONDecodeError)


def parse_tolerances(items: Optional[List[str]]) -> Dict[str, float]:
    tolerances = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ValueError(f"tolerance override must look like name=value, got '{item}'")
        tolerances[name.strip()] = float(value)
    return tolerances


def cmd_verify(args: argparse.Namespace) -> int:
    config = RunConfig(seed=args.seed, samples=args.samples, tolerances=parse_tolerances(args.tol), out=args.out)
    report = VerifyTool().run(args.suite, config)
    sys.stdout.write(report.to_json())
    if not report.passed:
        failed = [r.check for r in report.checks if not r.passed]
        logger.warning(f"Suite '{args.suite}' failed checks: {failed}")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_membership(args: argparse.Namespace) -> int:
    obj = parse_object(load_json(args.object))
    points = parse_points(load_json(args.points))
    if isinstance(obj, CrookedPlaneE3):
        tags = [membership(obj, p) for p in points]
    elif isinstance(obj, AdSCrookedPlane):
        tags = [membership_ads(obj, as_sl2(p)) for p in points]
    else:
        cs = crooked_surface(obj)
        tags = [cs_membership(cs, as_ein_point(p)) for p in points]
    for tag in tags:
        print(tag.value)
    return EXIT_OK


def cmd_adapted(args: argparse.Namespace) -> int:
    cfg: StemConfiguration = StemConfigurationInput.model_validate(load_json(args.config)).build()
    # rejects configurations that do not determine a crooked surface
    crooked_surface(cfg)
    print(invariance_kind(cfg).value)
    return EXIT_OK


def cmd_export_mesh(args: argparse.Namespace) -> int:
    obj = parse_object(load_json(args.object))
    mesh = MeshTool().run(obj, args.resolution, args.out)
    logger.info(f"{len(mesh.triangles)} faces exported")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crooked", description="Crooked planes in Minkowski space, AdS3 and Ein3")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run a verification suite and print a JSON report")
    verify.add_argument("suite", help=f"one of {', '.join(SUITES + ['all'])}")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    verify.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a residual threshold")
    verify.add_argument("--out", help="also write the report to this path")
    verify.set_defaults(handler=cmd_verify)

    member = commands.add_parser("membership", help="print the stratum of each point")
    member.add_argument("object", help="JSON crooked plane (E3 or AdS) or stem configuration")
    member.add_argument("points", help="JSON list of points")
    member.set_defaults(handler=cmd_membership)

    adapted = commands.add_parser("adapted", help="classify a stem configuration against the inversion")
    adapted.add_argument("config", help="JSON stem configuration")
    adapted.set_defaults(handler=cmd_adapted)

    mesh = commands.add_parser("export-mesh", help="write an OBJ mesh of a crooked plane")
    mesh.add_argument("object", help="JSON crooked plane (E3 or AdS)")
    mesh.add_argument("--resolution", type=int, required=True)
    mesh.add_argument("--out", required=True)
    mesh.set_defaults(handler=cmd_export_mesh)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; 2 is reserved for failed checks
        return EXIT_OK if e.code == 0 else EXIT_BAD_INPUT
    set_console_level(logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.handler(args)
    except INPUT_ERRORS as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
