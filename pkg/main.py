"""
Main application entry point.
Provides the CLI for halving, torsion tests, families and the census.
"""
import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from arithmetic.errors import BadParameter, CurveToolkitError, ParseError  # noqa: E402
from arithmetic.fields import Field, parse_field_spec  # noqa: E402
from census.corollaries import corollaries_for  # noqa: E402
from census.engine import census_field, verify_report  # noqa: E402
from config.logging_config import get_logger  # noqa: E402
from config.settings import CENSUS_FIELDS, FAMILY_IDS, KUBERT_KINDS, OUTPUT_MODES, settings  # noqa: E402
from curves.curve import Curve, Point, parse_alphas, parse_point  # noqa: E402
from curves.group import group_structure, hasse_interval  # noqa: E402
from families.constructors import PARAMETER_NAMES, build_family, enumerate_e5_params  # noqa: E402
from families.kubert import kubert_convert, kubert_random_check  # noqa: E402
from families.parameter_curves import solve_m84  # noqa: E402
from halving.division import divide_by_pow2  # noqa: E402
from halving.halving import half_offset, half_to_record, halves, is_halvable, recover_roots  # noqa: E402
from models.records import GroupRecord, GroupShape  # noqa: E402
from models.responses import (  # noqa: E402
    RESULT_MODELS,
    CommandResponse,
    DivideResult,
    E5Parameter,
    ErrorPayload,
    FlippedHalf,
    HalveResult,
    IdentityCheckResult,
    M84Parameter,
    OrderResult,
    RecoverRootsResult,
    command_schema,
)
from reporting.tables import census_table, corollary_table, render_rows  # noqa: E402
from torsion.criteria import is_order3, is_order5  # noqa: E402
from torsion.identities import printed_identity_discrepancy, random_identity_trials  # noqa: E402

logger = get_logger("main")

# options whose values may legitimately start with a minus sign
VALUE_OPTIONS = {
    "--curve", "--point", "--half", "--lambda", "--a", "--b", "--c",
    "--a1", "--a2", "--a3", "--xi", "--eta", "--t", "--samples",
}
_NEGATIVE = re.compile(r"^-\d")

# family parameter names to argparse destinations
PARAM_DESTS = {"lambda": "lam", "a": "a", "b": "b", "c": "c", "a1": "a1", "a2": "a2", "a3": "a3", "xi": "xi", "eta": "eta"}


def _attach_negative_values(argv: List[str]) -> List[str]:
    """Turn `--curve -4,-1,0` into `--curve=-4,-1,0` so argparse keeps the value."""
    result: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in VALUE_OPTIONS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            result.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        result.append(token)
        i += 1
    return result


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--output', choices=OUTPUT_MODES, default='json', help='Output format (default: json)')
    common.add_argument('--seed', type=int, default=settings.default_seed, help='Seed for randomized checks')
    common.add_argument('--jobs', type=int, default=settings.default_jobs, help='Worker processes for census runs')

    parser = argparse.ArgumentParser(
        description="Halving, torsion families and finite-field census for y^2 = (x-a1)(x-a2)(x-a3)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py halve --field Fp:7 --curve -4,-1,0 --point 0,0
  python main.py family e1 --field Fp:5 --lambda 2
  python main.py census --field Fp:13 --shape 2x10
  python main.py verify --all --output table
        """
    )
    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    def curve_command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('--field', required=True, help='Field spec: Q, Fp:<p> or Fq:<p>^<k>[:<coeffs>]')
        sub.add_argument('--curve', required=True, help='Roots a1,a2,a3')
        return sub

    halve_parser = curve_command('halve', 'The four halves of a point')
    halve_parser.add_argument('--point', required=True, help='Point x,y')
    halve_parser.add_argument('--no-offsets', action='store_true', help='Skip the W_i offset table')

    divide_parser = curve_command('divide', 'All R with 2^n R = P')
    divide_parser.add_argument('--point', required=True, help='Point x,y or inf')
    divide_parser.add_argument('--n', type=int, required=True, help='Power of two')

    recover_parser = curve_command('recover-roots', 'Root triple behind a half')
    recover_parser.add_argument('--point', required=True, help='Point P = x,y')
    recover_parser.add_argument('--half', required=True, help='Half Q = x,y with 2Q = P')

    for name in ('order3', 'order5'):
        sub = curve_command(name, f'Test whether a point has order {name[-1]}')
        sub.add_argument('--point', required=True, help='Point x,y')

    curve_command('group', 'Group structure and point count')

    identity_parser = subparsers.add_parser('identity-check', parents=[common], help='Random check of the symmetric identities')
    identity_parser.add_argument('--field', default=f"Fp:{settings.random_test_prime}", help='Field spec')
    identity_parser.add_argument('--samples', type=int, default=settings.identity_samples, help='Random triples')

    family_parser = subparsers.add_parser('family', parents=[common], help='Construct a family member')
    family_parser.add_argument('family', choices=FAMILY_IDS, help='Family id')
    family_parser.add_argument('--field', required=True, help='Field spec')
    for name, dest in PARAM_DESTS.items():
        family_parser.add_argument(f'--{name}', dest=dest, help=f'Parameter {name}')

    params_parser = subparsers.add_parser('params', parents=[common], help='Admissible parameters of a family')
    params_parser.add_argument('family', choices=['e5'], help='Family id')
    params_parser.add_argument('--field', required=True, help='Finite field spec')

    m84_parser = subparsers.add_parser('solve-m84', parents=[common], help='Admissible (c, d) for Z/8 + Z/4')
    m84_parser.add_argument('--field', required=True, help='Finite field spec containing sqrt(-1)')

    kubert_parser = subparsers.add_parser('kubert', parents=[common], help='Convert a Kubert parameter')
    kubert_parser.add_argument('--kind', choices=KUBERT_KINDS, required=True, help='Kubert family')
    kubert_parser.add_argument('--field', default='Q', help='Field spec (default: Q)')
    kubert_parser.add_argument('--t', help='Kubert parameter')
    kubert_parser.add_argument('--verify', action='store_true', help='Check the isomorphism (finite fields)')
    kubert_parser.add_argument('--samples', type=int, help='Verify this many random admissible t instead')

    census_parser = subparsers.add_parser('census', parents=[common], help='Isomorphism classes over a finite field')
    census_parser.add_argument('--field', required=True, help='Finite field spec')
    census_parser.add_argument('--shape', help='Only classes with this group, e.g. 2x10')

    verify_parser = subparsers.add_parser('verify', parents=[common], help='Check the classification statements')
    scope = verify_parser.add_mutually_exclusive_group(required=True)
    scope.add_argument('--all', action='store_true', help='Every supported field')
    scope.add_argument('--field', type=int, action='append', dest='fields', help='Field order q (repeatable)')
    verify_parser.add_argument('--mutate', help='Replace the expected group, e.g. 2x8 (negative control)')

    schema_parser = subparsers.add_parser('schema', help='JSON schema of a command output')
    schema_parser.add_argument('name', choices=sorted(RESULT_MODELS) + ['error'], help='Command name, or "error"')

    return parser


def _field(args) -> Field:
    return parse_field_spec(args.field)


def _curve_and_field(args) -> Tuple[Field, Curve]:
    field = _field(args)
    return field, parse_alphas(field, args.curve)


def _parse_shape(text: str) -> GroupShape:
    try:
        return GroupShape.parse(text)
    except ValueError as e:
        raise ParseError(f"Bad group shape {text!r}; expected e.g. 2x10") from e


def _point_row(label: str, p: Point) -> Dict[str, Any]:
    return {'Label': label, 'Point': str(p)}


def cmd_halve(args):
    field, curve = _curve_and_field(args)
    p = parse_point(curve, args.point)
    found = halves(curve, p)
    result = HalveResult(
        curve=curve.to_record(),
        point=p.to_record(),
        halvable=is_halvable(curve, p),
        halves=[half_to_record(curve, p, h, with_offsets=not args.no_offsets) for h in found],
    )
    rows = [
        {'Half': str(h.point), 'r1': str(h.triple.r1), 'r2': str(h.triple.r2), 'r3': str(h.triple.r3)}
        for h in found
    ]
    return result.model_dump(), rows


def cmd_divide(args):
    field, curve = _curve_and_field(args)
    p = parse_point(curve, args.point)
    points = divide_by_pow2(curve, p, args.n)
    result = DivideResult(
        curve=curve.to_record(),
        point=p.to_record(),
        n=args.n,
        points=[q.to_record() for q in points],
    )
    return result.model_dump(), [_point_row(f"R{i + 1}", q) for i, q in enumerate(points)]


def cmd_recover_roots(args):
    field, curve = _curve_and_field(args)
    p = parse_point(curve, args.point)
    q = parse_point(curve, args.half)
    triple = recover_roots(curve, p, q)
    offsets = [(i, half_offset(curve, p, q, i)) for i in (1, 2, 3)]
    result = RecoverRootsResult(
        triple=triple.to_record(),
        offsets=[FlippedHalf(i=i, flipped_half=qi.to_record()) for i, qi in offsets],
    )
    rows = [{'i': i, 'r_i': str(triple[i - 1]), 'Q_i': str(qi), 'Q_i - Q': str(curve.w(i))} for i, qi in offsets]
    return result.model_dump(), rows


def _order_command(args, test, order: int):
    field, curve = _curve_and_field(args)
    p = parse_point(curve, args.point)
    cert = test(curve, p)
    result = OrderResult(
        point=p.to_record(),
        order=order,
        holds=cert is not None,
        certificate=cert.to_record() if cert else None,
    )
    rows = [{'Point': str(p), f'Order {order}': 'yes' if cert else 'no'}]
    if cert:
        rows[0]['Level 0'] = ", ".join(str(v) for v in cert.level0)
        if cert.level1:
            rows[0]['Level 1'] = ", ".join(str(v) for v in cert.level1)
    return result.model_dump(), rows


def cmd_order3(args):
    return _order_command(args, is_order3, 3)


def cmd_order5(args):
    return _order_command(args, is_order5, 5)


def cmd_group(args):
    field, curve = _curve_and_field(args)
    shape, count = group_structure(curve)
    record = GroupRecord(
        curve=curve.to_record(),
        points=count,
        shape=shape.as_list(),
        hasse_interval=list(hasse_interval(field.order)),
    )
    rows = [{'Curve': str(curve), 'Points': count, 'Group': f"Z/{shape.n1} + Z/{shape.n2}"}]
    return record.model_dump(), rows


def cmd_identity_check(args):
    field = _field(args)
    failures = random_identity_trials(field, args.samples, args.seed)
    printed = printed_identity_discrepancy(field)
    result = IdentityCheckResult(field=str(field), samples=args.samples, seed=args.seed, failures=failures, printed=printed)
    rows = [{'Field': str(field), 'Samples': args.samples, 'Failures': failures, 'Printed form holds': printed['printed_holds']}]
    return result.model_dump(), rows


def cmd_family(args):
    field = _field(args)
    params = {}
    for name in PARAMETER_NAMES[args.family]:
        raw = getattr(args, PARAM_DESTS[name])
        if raw is None:
            raise BadParameter(f"Family {args.family} needs --{name}", {"needs": list(PARAMETER_NAMES[args.family])})
        params[name] = field.parse(raw)
    member = build_family(args.family, field, params).validate()
    record = member.to_record()
    rows = [
        {'Label': mp.label, 'Point': str(mp.point), 'Order': mp.order}
        for mp in member.marked
    ]
    return record.model_dump(), rows


def cmd_params(args):
    field = _field(args)
    pairs = enumerate_e5_params(field)
    result = [E5Parameter(xi=str(xi), eta=str(eta)).model_dump() for xi, eta in pairs]
    return result, result


def cmd_solve_m84(args):
    field = _field(args)
    result = [M84Parameter(c=str(c), d=str(d)).model_dump() for c, d in solve_m84(field)]
    return result, result


def cmd_kubert(args):
    field = _field(args)
    if args.samples is not None:
        record = kubert_random_check(field, args.kind, args.samples, args.seed)
        rows = [{'Kind': record.kind, 'Field': record.field, 'Samples': record.samples, 'Failures': record.failures}]
        return record.model_dump(), rows
    if args.t is None:
        raise BadParameter("kubert needs --t or --samples")
    conversion = kubert_convert(field, args.kind, field.parse(args.t), verify=args.verify)
    record = conversion.to_record()
    rows = [{'Kind': record.kind, 't': record.t, record.parameter: record.value,
             'Isomorphic': 'yes' if record.witness else '-'}]
    return record.model_dump(), rows


def cmd_census(args):
    field = _field(args)
    shape = _parse_shape(args.shape) if args.shape else None
    families = sorted({c.family for c in corollaries_for(field.order)}) if field.is_finite else []
    census = census_field(field, families, shape)
    return census.model_dump(), census_table(census)


def cmd_verify(args):
    q_list = list(CENSUS_FIELDS) if args.all else args.fields
    mutate = _parse_shape(args.mutate) if args.mutate else None
    report = verify_report(q_list, jobs=args.jobs, mutate=mutate)
    return report.model_dump(), corollary_table(report), report.passed


def cmd_schema(args):
    return command_schema(args.name), None


COMMANDS = {
    'halve': cmd_halve,
    'divide': cmd_divide,
    'recover-roots': cmd_recover_roots,
    'order3': cmd_order3,
    'order5': cmd_order5,
    'group': cmd_group,
    'identity-check': cmd_identity_check,
    'family': cmd_family,
    'params': cmd_params,
    'solve-m84': cmd_solve_m84,
    'kubert': cmd_kubert,
    'census': cmd_census,
    'verify': cmd_verify,
    'schema': cmd_schema,
}


def _emit(command: str, result: Any, table: Any, output: str) -> None:
    if output == 'table':
        print(table if isinstance(table, str) else render_rows(table))
        return
    payload = CommandResponse(command=command, result=result).model_dump(mode="json")
    print(json.dumps(payload, sort_keys=True, indent=2))


def _emit_error(error: CurveToolkitError) -> None:
    payload = ErrorPayload(error=error.code, message=str(error), details=error.details)
    print(json.dumps(payload.model_dump(mode="json"), sort_keys=True, indent=2))


def run(argv: Optional[List[str]] = None) -> int:
    """Run one command; 0 on success, 1 on a domain error or failed check, 2 on usage errors."""
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(_attach_negative_values(list(argv)))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    if not args.command:
        parser.print_help()
        return 2

    try:
        outcome = COMMANDS[args.command](args)
    except ParseError as e:
        logger.error(f"{args.command}: {e}")
        _emit_error(e)
        return 2
    except CurveToolkitError as e:
        logger.error(f"{args.command}: {e}")
        _emit_error(e)
        return 1

    if args.command == 'schema':
        print(json.dumps(outcome[0], sort_keys=True, indent=2))
        return 0

    passed = True
    if len(outcome) == 3:
        result, table, passed = outcome
    else:
        result, table = outcome
    _emit(args.command, result, table, args.output)
    return 0 if passed else 1


def main():
    """Main application entry point."""
    try:
        return run()
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 1


if __name__ == "__main__":
    sys.exit(main())
