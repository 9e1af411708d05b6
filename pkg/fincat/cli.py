"""
Command line front end. Every verb parses its files, runs one operation and
prints either stable ``<invariant> = <value>`` lines or, with ``--json``,
the JSON of the result.

Exit status is 0 when the operation succeeds and the checked property
holds, 1 when the property fails and 2 on invalid input or an exhausted
budget.
"""
import argparse
import logging
import sys

from fincat import __version__
from fincat import budget as budgets
from fincat.categories import FinCategory, FinFunctor
from fincat.covers import GeometricCover, is_geometric_cover
from fincat.errors import (
    BadParams,
    EquivalenceFailure,
    FincatError,
    InequalityViolation,
    NoLift,
    NonUniqueFiller,
    NotAFibration,
)
from fincat.fibrations import (
    classify_fibration,
    fiber,
    fiber_equivalence,
    lift_chain_homotopy,
    pullback_functor,
    pushforward_functor,
    verify_lift,
)
from fincat.homotopy import ZigzagWitness, homotopic, verify_zigzag
from fincat.invariants import (
    InvariantResult,
    ccat_direct,
    ctc_direct,
    ctc_n_direct,
    distance,
    replay,
)
from fincat.serialization import (
    VaradarajanInput,
    arrow_named,
    dumps,
    object_named,
    parse_bundle,
    write_json,
)
from fincat.verify import (
    SuiteInstance,
    check_inequality_suite,
    check_tanaka,
    check_varadarajan,
    random_category,
    random_instance,
)


log = logging.getLogger(__name__)

OK, FAILED, INVALID = 0, 1, 2

# Errors meaning the checked property does not hold.
PROPERTY_ERRORS = (InequalityViolation, NotAFibration, NoLift,
                   NonUniqueFiller, EquivalenceFailure)


class Outcome(object):
    """
    What a verb prints: text lines, the JSON payload and the exit status.
    """
    def __init__(self, lines, payload, status=OK):
        self.lines = list(lines)
        self.payload = payload
        self.status = status


def _load(path, *expected):
    value = parse_bundle(path)
    if expected and not isinstance(value, expected):
        raise BadParams("{} holds a {}, expected {}".format(
            path, type(value).__name__,
            ' or '.join(kind.__name__ for kind in expected)))
    return value


def _category(path):
    """
    A category file, or the domain of any functor or bundle file.
    """
    value = _load(path, FinCategory, FinFunctor)
    return value.dom if isinstance(value, FinFunctor) else value


def _invariant(result):
    lines = ['{} = {}'.format(result.label, result.value)]
    if result.cover is not None:
        lines.append('cover size = {}'.format(len(result.cover)))
    if result.uncovered is not None:
        lines.append('uncovered chain = {}'.format(
            result.uncovered.describe()))
    return Outcome(lines, result)


def do_validate(args):
    value = _load(args.path)
    if isinstance(value, FinCategory):
        line = 'category {}: {} objects, {} arrows'.format(
            value.name, value.object_count, value.arrow_count)
    elif isinstance(value, FinFunctor):
        line = 'functor {}: {} -> {}'.format(
            value.name or '?', value.dom.name, value.cod.name)
    else:
        line = type(value).__name__
    return Outcome(['valid = yes', line], {"valid": True})


def do_homotopic(args):
    first = _load(args.first, FinFunctor)
    second = _load(args.second, FinFunctor)
    witness = homotopic(first, second, budget=args.budget)
    if witness is None:
        return Outcome(['homotopic = no'], {"homotopic": False}, FAILED)
    return Outcome(
        ['homotopic = yes', 'zigzag length = {}'.format(witness.length)],
        witness)


def do_ccat(args):
    return _invariant(ccat_direct(_category(args.path), budget=args.budget))


def do_ctc(args):
    return _invariant(ctc_direct(_category(args.path), budget=args.budget))


def do_ctcn(args):
    return _invariant(ctc_n_direct(_category(args.path), args.n,
                                   budget=args.budget))


def do_cd(args):
    functors = [_load(path, FinFunctor) for path in args.functors]
    return _invariant(distance(functors, budget=args.budget))


def do_cover_check(args):
    cover = _load(args.path, GeometricCover)
    covers, chain = is_geometric_cover(cover.parent, cover.members)
    if covers:
        return Outcome(['cover = yes'], {"cover": True})
    return Outcome(
        ['cover = no', 'uncovered chain = {}'.format(chain.describe())],
        {"cover": False, "uncovered_chain": chain.to_json()}, FAILED)


def do_fib_check(args):
    report = classify_fibration(_load(args.path, FinFunctor),
                                budget=args.budget)
    return Outcome([report.describe()], report,
                   OK if report.is_bifibration else FAILED)


def do_fiber(args):
    functor = _load(args.path, FinFunctor)
    category, _ = fiber(functor, object_named(functor.cod, args.object))
    return Outcome(
        ['fiber objects = {}'.format(category.object_count),
         'fiber arrows = {}'.format(category.arrow_count)],
        category)


def do_transport(args):
    functor = _load(args.path, FinFunctor)
    arrow = arrow_named(functor.cod, args.arrow)
    pullback = pullback_functor(functor, arrow)
    pushforward = pushforward_functor(functor, arrow)
    lines = ['{} : {} -> {}'.format(item.name, item.dom.name, item.cod.name)
             for item in (pullback, pushforward)]
    return Outcome(lines, {"pullback": pullback.to_json(),
                           "pushforward": pushforward.to_json()})


def do_equiv(args):
    functor = _load(args.path, FinFunctor)
    equivalence = fiber_equivalence(functor,
                                    arrow_named(functor.cod, args.arrow))
    ok, problem = equivalence.verify()
    lines = ['equivalence = {}'.format('yes' if ok else 'no'),
             'isomorphism = {}'.format(
                 'yes' if equivalence.is_isomorphism else 'no'),
             'fiber objects = {} and {}'.format(
                 equivalence.pushforward.dom.object_count,
                 equivalence.pushforward.cod.object_count)]
    if problem is not None:
        lines.append('problem = {}'.format(problem))
    return Outcome(lines, equivalence, OK if ok else FAILED)


def do_lift(args):
    functor = _load(args.bundle, FinFunctor)
    lifted = _load(args.lifted, FinFunctor)
    homotopy = _load(args.homotopy, ZigzagWitness)
    result = lift_chain_homotopy(functor, lifted, homotopy)
    ok, problem = verify_lift(functor, lifted, homotopy, result)
    lines = ['lift = {}'.format('yes' if ok else 'no'),
             'steps = {}'.format(result.witness.length)]
    if problem is not None:
        lines.append('problem = {}'.format(problem))
    return Outcome(lines, result, OK if ok else FAILED)


def _inequality(report):
    lines = [report.describe()]
    for name in sorted(report.sub_results):
        lines.append('{} = {}'.format(name, report.sub_results[name].value))
    return Outcome(lines, report, OK if report.holds else FAILED)


def do_varadarajan(args):
    data = _load(args.path, VaradarajanInput)
    return _inequality(check_varadarajan(data.first, data.second,
                                         data.basepoint, budget=args.budget))


def do_tanaka(args):
    functor = _load(args.path, FinFunctor)
    return _inequality(check_tanaka(
        functor, object_named(functor.cod, args.object), budget=args.budget))


def do_suite(args):
    instances = [SuiteInstance.for_category(_category(path), n=args.n)
                 for path in args.paths]
    instances.extend(random_instance(args.seed + offset, budget=args.budget)
                     for offset in range(args.random))
    reports = check_inequality_suite(instances, workers=args.workers,
                                     budget=args.budget)
    failed = [report for report in reports if report.holds is False]
    skipped = [report for report in reports if report.holds is None]
    lines = [report.describe() for report in reports]
    lines.append('violations = {}'.format(len(failed)))
    lines.append('skipped = {}'.format(len(skipped)))
    return Outcome(lines, {"reports": [report.to_json()
                                       for report in reports]},
                   FAILED if failed else OK)


def do_random(args):
    category = random_category(args.seed, args.objects, args.arrows,
                               budget=args.budget)
    return Outcome(
        ['category {}: {} objects, {} arrows'.format(
            category.name, category.object_count, category.arrow_count)],
        category)


def do_replay(args):
    value = _load(args.path, ZigzagWitness, InvariantResult)
    if isinstance(value, ZigzagWitness):
        ok, problem = verify_zigzag(value)
    else:
        ok, problem = replay(value, budget=args.budget)
    lines = ['replay = {}'.format('yes' if ok else 'no')]
    if problem is not None:
        lines.append('problem = {}'.format(problem))
    return Outcome(lines, {"replay": ok, "problem": problem},
                   OK if ok else FAILED)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true',
                        help='print JSON instead of text')
    common.add_argument('--witness', metavar='OUT',
                        help='write the result with its certificates to OUT')
    common.add_argument('--budget', type=int, metavar='N',
                        help='search steps allowed per operation')
    common.add_argument('--seed', type=int, default=0,
                        help='seed for random generation')
    common.add_argument('--verbose', '-v', action='count', default=0,
                        help='log search progress (twice for detail)')

    parser = argparse.ArgumentParser(
        prog='fincat',
        description='Homotopy invariants and fibrations of finite categories')
    parser.add_argument('--version', action='version',
                        version='%(prog)s {}'.format(__version__))
    verbs = parser.add_subparsers(dest='verb', metavar='VERB')
    verbs.required = True

    def verb(name, handler, help_text):
        sub = verbs.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    verb('validate', do_validate, 'validate any document').add_argument('path')
    sub = verb('homotopic', do_homotopic, 'decide whether two functors are '
               'homotopic')
    sub.add_argument('first')
    sub.add_argument('second')
    verb('ccat', do_ccat, 'LS-category').add_argument('path')
    verb('ctc', do_ctc, 'categorical complexity').add_argument('path')
    sub = verb('ctcn', do_ctcn, 'higher categorical complexity')
    sub.add_argument('path')
    sub.add_argument('--n', type=int, default=3)
    verb('cd', do_cd, 'homotopic distance').add_argument('functors',
                                                          nargs='+')
    verb('cover-check', do_cover_check,
         'check a geometric cover').add_argument('path')
    verb('fib-check', do_fib_check,
         'classify a projection').add_argument('path')
    sub = verb('fiber', do_fiber, 'fiber over an object')
    sub.add_argument('path')
    sub.add_argument('--object', required=True)
    for name, handler, help_text in (
            ('transport', do_transport, 'pullback and pushforward functors'),
            ('equiv', do_equiv, 'equivalence between two fibers')):
        sub = verb(name, handler, help_text)
        sub.add_argument('path')
        sub.add_argument('--arrow', required=True)
    sub = verb('lift', do_lift, 'lift a base homotopy')
    sub.add_argument('bundle')
    sub.add_argument('lifted')
    sub.add_argument('homotopy')
    verb('varadarajan', do_varadarajan,
         'distance inequality for bi-fibrations').add_argument('path')
    sub = verb('tanaka', do_tanaka, 'LS-category inequality for '
               'bi-fibrations')
    sub.add_argument('path')
    sub.add_argument('--object', required=True)
    sub = verb('suite', do_suite, 'run the inequality suite')
    sub.add_argument('paths', nargs='*')
    sub.add_argument('--random', type=int, default=0, metavar='COUNT',
                     help='add COUNT random instances seeded from --seed')
    sub.add_argument('--n', type=int, default=None)
    sub.add_argument('--workers', type=int, default=None)
    sub = verb('random', do_random, 'print a random category')
    sub.add_argument('--objects', type=int, default=3)
    sub.add_argument('--arrows', type=int, default=3)
    verb('replay', do_replay,
         're-verify a witness or result file').add_argument('path')
    return parser


def _configure_logging(verbosity):
    if verbosity:
        logging.basicConfig(
            level=logging.DEBUG if verbosity > 1 else logging.INFO,
            format='%(levelname)s %(name)s: %(message)s')


def run(argv=None, stdout=None):
    """
    :return: The exit status. Usage errors report on standard error and
        return :data:`INVALID`.
    """
    stdout = stdout if stdout is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else INVALID
    _configure_logging(args.verbose)
    if args.budget is not None:
        args.budget = budgets.DEFAULT_BUDGET.replace(max_work=args.budget)
    try:
        outcome = args.handler(args)
    except InequalityViolation as exc:
        outcome = Outcome([exc.report.describe()], exc.report, FAILED)
    except PROPERTY_ERRORS as exc:
        outcome = Outcome(['error = {}'.format(exc)],
                          {"error": type(exc).__name__, "message": str(exc)},
                          FAILED)
    except FincatError as exc:
        log.debug("invalid input", exc_info=True)
        stdout.write('error: {}: {}\n'.format(type(exc).__name__, exc))
        return INVALID
    if args.witness:
        write_json(outcome.payload, args.witness)
    if args.json:
        stdout.write(dumps(outcome.payload))
        stdout.write('\n')
    else:
        for line in outcome.lines:
            stdout.write(line)
            stdout.write('\n')
    return outcome.status


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
