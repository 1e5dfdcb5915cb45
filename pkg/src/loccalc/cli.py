"""Command-line client.

A thin layer over the service handlers: each subcommand builds the same
request model the HTTP API accepts, invokes the handler in-process, and
renders the response (a human-readable line or table, or JSON with --json).

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .model import ModelSchemaError, load_model, model_to_dict, save_model
from .service.handlers import (
    ServiceError,
    handle_baum_bott,
    handle_bott,
    handle_carrell_liebermann,
    handle_dh,
    handle_model_validate,
    handle_residue,
    handle_verify,
)
from .service.schemas import (
    BaumBottRequest,
    BottRequest,
    CarrellLiebermannRequest,
    ModelDocumentRequest,
    ModelSource,
    ResidueRequest,
    VerifyRequest,
)

_SAMPLES_ENV = "LOC_CALC_SAMPLES"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loc-calc",
        description="Exact localization sums over fixed-point data, with "
                    "numeric residue and quadrature cross-checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit JSON")

    def add_source(p):
        p.add_argument("--pn", type=int, help="projective space of this dimension")
        p.add_argument("--weights", help="comma-separated weight expressions "
                                         "(symbolic when omitted)")
        p.add_argument("--product", help="comma-separated dimensions of "
                                         "projective factors, e.g. 1,2")
        p.add_argument("--model", help="model file (JSON)")

    p = sub.add_parser("bott", help="characteristic number as a fixed-point sum")
    add_source(p)
    p.add_argument("--phi", required=True, help='integrand, e.g. "c1^2"')
    add_json(p)

    p = sub.add_parser("cl", help="bundle characteristic number (Carrell-Liebermann)")
    add_source(p)
    p.add_argument("--p", required=True, help='bundle integrand, e.g. "c1^2"')
    p.add_argument("--twist", type=int, default=1,
                   help="scale line weights by this degree (default 1)")
    add_json(p)

    p = sub.add_parser("baumbott", help="meromorphic-field residue sum (Baum-Bott)")
    p.add_argument("--p1-roots", help="comma-separated rational roots of a "
                                      "factored field on the line")
    p.add_argument("--p2-twist", type=int, help="plane family twist degree (1 or 2)")
    p.add_argument("--p2-rhos", help="root parameters for the plane family, "
                                     "e.g. 1/2,1/3")
    p.add_argument("--model", help="model file (JSON) with twist weights")
    p.add_argument("--phi", required=True, help='integrand, e.g. "c1"')
    add_json(p)

    p = sub.add_parser("residue", help="numeric Grothendieck residue (contour oracle)")
    p.add_argument("--dim", type=int, required=True, help="number of variables (1..3)")
    p.add_argument("--a", action="append", required=True,
                   help="component polynomial in z1..zn (repeat per component)")
    p.add_argument("--s", default="1", help="numerator polynomial (default 1)")
    p.add_argument("--center", help="comma-separated rational center (default origin)")
    p.add_argument("--radius", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=None,
                   help=f"grid points per circle (power of two; default 256 or "
                        f"${_SAMPLES_ENV})")
    add_json(p)

    p = sub.add_parser("dh", help="quadrature vs residue check on the line")
    add_json(p)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--only", action="append", help="run only this scenario (repeatable)")
    add_json(p)

    p = sub.add_parser("model", help="model file utilities")
    model_sub = p.add_subparsers(dest="model_command", required=True)
    q = model_sub.add_parser("validate", help="validate a model file")
    q.add_argument("path")
    add_json(q)
    q = model_sub.add_parser("convert", help="rewrite a model file in canonical form")
    q.add_argument("path")
    q.add_argument("--out", required=True)

    return parser


def _source_from_args(parser, args) -> ModelSource:
    inline = None
    if args.model:
        try:
            inline = model_to_dict(load_model(args.model))
        except (OSError, ModelSchemaError) as exc:
            raise ServiceError(f"{args.model}: {exc}") from exc
    product = None
    if args.product:
        try:
            product = [int(x) for x in args.product.split(",")]
        except ValueError:
            parser.error(f"--product must be comma-separated integers, got {args.product!r}")
    return ModelSource(pn=args.pn, weights=args.weights, product=product, model=inline)


def _default_samples(parser) -> int:
    raw = os.environ.get(_SAMPLES_ENV)
    if raw is None:
        return 256
    try:
        value = int(raw)
    except ValueError:
        parser.error(f"{_SAMPLES_ENV} must be an integer, got {raw!r}")
    if value < 64 or value & (value - 1):
        parser.error(f"{_SAMPLES_ENV} must be a power of two >= 64, got {value}")
    return value


def _print_localization(response, as_json: bool) -> None:
    if as_json:
        print(response.model_dump_json())
        return
    print(response.value)
    if not response.is_constant:
        print("note: value is not a constant", file=sys.stderr)


def _print_report_human(report) -> None:
    print(f"[{report.status.upper():>5}] {report.name}: "
          f"lhs={report.lhs:.10g} rhs={report.rhs:.10g} "
          f"err={report.abs_error:.3g} tol={report.tolerance:.3g}")


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bott":
            response = handle_bott(BottRequest(
                source=_source_from_args(parser, args), phi=args.phi))
            _print_localization(response, args.json)
        elif args.command == "cl":
            response = handle_carrell_liebermann(CarrellLiebermannRequest(
                source=_source_from_args(parser, args), p=args.p, twist=args.twist))
            _print_localization(response, args.json)
        elif args.command == "baumbott":
            inline = None
            if args.model:
                inline = model_to_dict(load_model(args.model))
            response = handle_baum_bott(BaumBottRequest(
                p1_roots=args.p1_roots, p2_twist=args.p2_twist,
                p2_rhos=args.p2_rhos, model=inline, phi=args.phi))
            _print_localization(response, args.json)
        elif args.command == "residue":
            samples = args.samples if args.samples is not None else _default_samples(parser)
            center = args.center.split(",") if args.center else None
            response = handle_residue(ResidueRequest(
                dim=args.dim, components=args.a, numerator=args.s,
                center=center, radius=args.radius, samples=samples))
            print(response.model_dump_json() if args.json else response.formatted)
        elif args.command == "dh":
            report = handle_dh()
            if args.json:
                print(report.model_dump_json())
            else:
                _print_report_human(report)
            return 0 if report.status == "pass" else 1
        elif args.command == "verify":
            response = handle_verify(VerifyRequest(scenarios=args.only))
            if args.json:
                for report in response.reports:
                    print(report.model_dump_json())
            else:
                for report in response.reports:
                    _print_report_human(report)
                summary = "all scenarios passed" if response.all_passed \
                    else "some scenarios FAILED"
                print(summary)
            return 0 if response.all_passed else 1
        elif args.command == "model":
            if args.model_command == "validate":
                document = model_to_dict(load_model(args.path))
                response = handle_model_validate(ModelDocumentRequest(model=document))
                if args.json:
                    print(response.model_dump_json())
                else:
                    status = "valid" if response.valid else "DEGENERATE"
                    print(f"{status}: dim={response.dim} rank={response.rank} "
                          f"points={response.points}")
                    for name in response.degenerate:
                        print(f"degenerate point: {name}")
                    for warning in response.warnings:
                        print(f"warning: {warning}")
                return 0 if response.valid else 1
            else:
                model = load_model(args.path)
                save_model(model, args.out)
                print(f"wrote canonical model to {args.out}")
        return 0
    except (ServiceError, ModelSchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
