"""
Executable checks of the inequalities relating homotopic distance,
LS-category and complexity, plus seeded generators of random instances.

Both sides of every inequality are computed independently; nothing here
assumes the inequality it checks.
"""
import collections
import functools
import logging
import random
from concurrent.futures import ThreadPoolExecutor

from fincat import budget as budgets
from fincat.categories import (
    FinFunctor,
    format_id,
    identity_id,
    standard_functor,
)
from fincat.categories.core import (
    build_category,
    compose_functors,
    is_connected,
)
from fincat.errors import (
    BadParams,
    BaseNotConnected,
    BasepointMismatch,
    DomainMismatch,
    FiberNotPreserved,
    FunctorViolation,
    InequalityViolation,
    NotBiFibration,
    SizeBudgetExceeded,
)
from fincat.fibrations import classify_fibration, fiber, preimage_subcategory
from fincat.homotopy import enumerate_functors
from fincat.invariants import (
    ccat_by_distance,
    ccat_by_inclusions,
    ccat_direct,
    ctc_by_distance,
    ctc_direct,
    ctc_n_direct,
    distance,
)

log = logging.getLogger(__name__)

#: Largest number of non-identity arrows of a generated category.
MAX_RANDOM_ARROWS = 6

#: Samples drawn before a random category gives up.
RANDOM_ATTEMPTS = 32


class FibrationMorphism(object):
    """
    A strictly commuting square ``target o total = base o source`` from the
    projection ``source: E -> B`` to ``target: E' -> B'``.

    :raises: :class:`~fincat.errors.DomainMismatch` when the four functors
        do not fit, :class:`~fincat.errors.FunctorViolation` naming the
        first arrow where the square does not commute.
    """
    def __init__(self, source, target, total, base):
        if total.dom != source.dom or total.cod != target.dom or \
                base.dom != source.cod or base.cod != target.cod:
            raise DomainMismatch(
                "{!r} and {!r} do not form a square from {!r} to {!r}".format(
                    total, base, source, target))
        for arrow in source.dom.arrows:
            left = target.on_arrows[total.on_arrows[arrow]]
            right = base.on_arrows[source.on_arrows[arrow]]
            if left != right:
                raise FunctorViolation(
                    "Square does not commute at arrow {}: {} != {}".format(
                        format_id(arrow), format_id(left), format_id(right)))
        self.source = source
        self.target = target
        self.total = total
        self.base = base


class InequalityReport(object):
    """
    ``left <relation> right`` with both sides computed. ``relation`` is
    ``'<='``; an equality is reported as two such reports. A report whose
    evaluation ran out of budget has ``holds = None`` and an ``error``.
    """
    def __init__(self, name, left, right, inputs=None, sub_results=None,
                 error=None):
        self.name = name
        self.left = left
        self.right = right
        self.relation = '<='
        self.inputs = dict(inputs or {})
        self.sub_results = dict(sub_results or {})
        self.error = error
        self.holds = None if error is not None else left <= right

    def describe(self):
        if self.error is not None:
            return '{}: not evaluated ({})'.format(self.name, self.error)
        return '{}: {} {} {} ({})'.format(
            self.name, self.left, self.relation, self.right,
            'holds' if self.holds else 'VIOLATED')

    def to_json(self):
        return {
            "name": self.name,
            "left": self.left.to_json() if self.left is not None else None,
            "right": self.right.to_json() if self.right is not None else None,
            "relation": self.relation,
            "holds": self.holds,
            "error": self.error,
            "inputs": self.inputs,
            "sub_results": dict((name, result.to_json())
                                for name, result in self.sub_results.items()),
        }

    def __repr__(self):
        return '<InequalityReport {}>'.format(self.describe())


def _require_bifibration(functor, budget):
    report = classify_fibration(functor, budget=budget)
    if not report.is_bifibration:
        raise NotBiFibration("{!r} is not a bi-fibration: {}".format(
            functor, report.describe()))
    return report


def _require_connected(category):
    if not is_connected(category):
        raise BaseNotConnected("Base {} is not connected".format(
            category.name))


def _fiber_functor(morphism, total, b, b_prime):
    """
    The restriction of ``total`` to the fibers over ``b`` and ``b_prime``.
    """
    source_fiber, _ = fiber(morphism.source, b)
    target_fiber, _ = fiber(morphism.target, b_prime)
    for obj in source_fiber.objects:
        if total.on_objects[obj] not in target_fiber.object_index:
            raise FiberNotPreserved(
                "{!r} sends {} out of the fiber over {}".format(
                    total, format_id(obj), format_id(b_prime)))
    for arrow in source_fiber.arrows:
        if total.on_arrows[arrow] not in target_fiber.arrow_index:
            raise FiberNotPreserved(
                "{!r} sends vertical arrow {} to a non-vertical one".format(
                    total, format_id(arrow)))
    return FinFunctor(
        source_fiber, target_fiber,
        dict((obj, total.on_objects[obj]) for obj in source_fiber.objects),
        dict((arrow, total.on_arrows[arrow])
             for arrow in source_fiber.arrows),
        name='{}_b'.format(total.name or 'F'))


def check_varadarajan(first, second, b, budget=None):
    """
    Checks ``cD(F, G) + 1 <= (cD(F_b, G_b) + 1) * (ccat(B) + 1)`` for two
    morphisms of bi-fibrations ``(F, Fbar)`` and ``(G, Gbar)`` between the
    same projections, with ``Fbar(b) = Gbar(b)``.

    :raises: :class:`~fincat.errors.NotBiFibration`,
        :class:`~fincat.errors.BaseNotConnected`,
        :class:`~fincat.errors.BasepointMismatch`,
        :class:`~fincat.errors.FiberNotPreserved`,
        :class:`~fincat.errors.InequalityViolation`
    :return: :class:`InequalityReport`
    """
    budget = budgets.resolve(budget)
    if first.source != second.source or first.target != second.target:
        raise DomainMismatch("Both morphisms must share their projections")
    source, target = first.source, first.target
    if b not in source.cod.object_index:
        raise BadParams("{} is not an object of {}".format(
            format_id(b), source.cod.name))
    _require_bifibration(source, budget)
    _require_bifibration(target, budget)
    _require_connected(source.cod)
    _require_connected(target.cod)
    b_prime = first.base.on_objects[b]
    if second.base.on_objects[b] != b_prime:
        raise BasepointMismatch(
            "Fbar({0}) = {1} but Gbar({0}) = {2}".format(
                format_id(b), format_id(b_prime),
                format_id(second.base.on_objects[b])))
    fiber_first = _fiber_functor(first, first.total, b, b_prime)
    fiber_second = _fiber_functor(second, second.total, b, b_prime)

    whole = distance([first.total, second.total], budget=budget)
    on_fiber = distance([fiber_first, fiber_second], budget=budget)
    base_ccat = ccat_direct(source.cod, budget=budget)
    inputs = {
        "basepoint": format_id(b),
        "image_basepoint": format_id(b_prime),
        "fiber_objects": fiber_first.dom.object_count,
    }
    if base_ccat.cover is not None:
        inputs["preimage_sizes"] = [
            preimage_subcategory(source, member).size
            for member in base_ccat.cover.members]
    report = InequalityReport(
        'cD(F,G)+1 <= (cD(F_b,G_b)+1)(ccat(B)+1)',
        whole.value + 1, (on_fiber.value + 1) * (base_ccat.value + 1),
        inputs=inputs,
        sub_results={"cD(F,G)": whole, "cD(F_b,G_b)": on_fiber,
                     "ccat(B)": base_ccat})
    log.info(report.describe())
    if not report.holds:
        raise InequalityViolation(report)
    return report


def check_tanaka(functor, b, budget=None):
    """
    Checks ``ccat(E) + 1 <= (ccat(B) + 1) * (ccat(E_b) + 1)`` for a
    bi-fibration ``functor: E -> B`` with connected base.

    :return: :class:`InequalityReport`
    """
    budget = budgets.resolve(budget)
    if b not in functor.cod.object_index:
        raise BadParams("{} is not an object of {}".format(
            format_id(b), functor.cod.name))
    _require_bifibration(functor, budget)
    _require_connected(functor.cod)
    fiber_category, _ = fiber(functor, b)
    total = ccat_direct(functor.dom, budget=budget)
    base = ccat_direct(functor.cod, budget=budget)
    on_fiber = ccat_direct(fiber_category, budget=budget)
    report = InequalityReport(
        'ccat(E)+1 <= (ccat(B)+1)(ccat(F)+1)',
        total.value + 1, (base.value + 1) * (on_fiber.value + 1),
        inputs={"basepoint": format_id(b),
                "fiber_objects": fiber_category.object_count},
        sub_results={"ccat(E)": total, "ccat(B)": base, "ccat(F)": on_fiber})
    log.info(report.describe())
    if not report.holds:
        raise InequalityViolation(report)
    return report


class SuiteInstance(object):
    """
    Inputs of the inequality suite: parallel functors ``first, second: C ->
    D``, a functor ``post`` out of ``D`` and a functor ``pre`` into ``C``
    for the composition bounds, and an optional power ``n`` for the higher
    complexity.
    """
    def __init__(self, name, first, second, post=None, pre=None, n=None):
        if first.dom != second.dom or first.cod != second.cod:
            raise DomainMismatch("Suite functors must be parallel")
        self.name = name
        self.first = first
        self.second = second
        self.post = post
        self.pre = pre
        self.n = n

    @classmethod
    def for_category(cls, category, n=None):
        """
        ``id`` against the constant at the first object, with identities as
        the composed functors.
        """
        identity = standard_functor('identity', category)
        if category.is_empty:
            other = identity
        else:
            other = standard_functor('constant', category, category,
                                     category.objects[0])
        return cls(category.name, identity, other, post=identity,
                   pre=identity, n=n)


class _Values(object):
    """
    Lazily computed invariants of one instance, so each is computed once.
    """
    def __init__(self, instance, budget):
        self.instance = instance
        self.budget = budget
        self.results = {}

    def get(self, name, compute):
        if name not in self.results:
            self.results[name] = compute()
        return self.results[name]

    def compare(self, name, left_name, left, right_name, right):
        left_result = self.get(left_name, left)
        right_result = self.get(right_name, right)
        return InequalityReport(
            '{} [{}]'.format(name, self.instance.name),
            left_result.value, right_result.value,
            sub_results={left_name: left_result, right_name: right_result})


def evaluate_instance(instance, budget=None):
    """
    Every applicable check on one instance. Checks needing connected
    categories are skipped on disconnected ones.

    :return: list of :class:`InequalityReport`
    """
    budget = budgets.resolve(budget)
    values = _Values(instance, budget)
    first, second = instance.first, instance.second
    dom, cod = first.dom, first.cod
    pair = functools.partial(distance, [first, second], budget=budget)
    reports = []

    if instance.post is not None:
        post = instance.post
        composed = functools.partial(distance, [
            compose_functors(post, first), compose_functors(post, second)],
            budget=budget)
        reports.append(values.compare(
            'cD(HF,HG) <= cD(F,G)', 'cD(HF,HG)', composed, 'cD(F,G)', pair))
    if instance.pre is not None:
        pre = instance.pre
        composed = functools.partial(distance, [
            compose_functors(first, pre), compose_functors(second, pre)],
            budget=budget)
        reports.append(values.compare(
            'cD(FK,GK) <= cD(F,G)', 'cD(FK,GK)', composed, 'cD(F,G)', pair))
    reports.append(values.compare(
        'cD(F,G) <= cTC(D)', 'cD(F,G)', pair,
        'cTC(D)', functools.partial(ctc_direct, cod, budget=budget)))
    ccat = functools.partial(ccat_direct, dom, budget=budget)
    if is_connected(cod):
        reports.append(values.compare(
            'cD(F,G) <= ccat(C)', 'cD(F,G)', pair, 'ccat(C)', ccat))
    if is_connected(dom) and not dom.is_empty:
        ctc = functools.partial(ctc_direct, dom, budget=budget)
        by_constant = functools.partial(ccat_by_distance, dom, budget=budget)
        by_inclusions = functools.partial(ccat_by_inclusions, dom,
                                          budget=budget)
        reports.append(values.compare(
            'ccat(C) <= cTC(C)', 'ccat(C)', ccat, 'cTC(C)', ctc))
        for label, other in (('cD(id,const)', by_constant),
                             ('cD(i1,i2)', by_inclusions)):
            reports.append(values.compare(
                'ccat(C) <= {}'.format(label), 'ccat(C)', ccat, label, other))
            reports.append(values.compare(
                '{} <= ccat(C)'.format(label), label, other, 'ccat(C)', ccat))
    if instance.n is not None:
        label = 'cTC_{}(C)'.format(instance.n)
        direct = functools.partial(ctc_n_direct, dom, instance.n,
                                   budget=budget)
        projections = functools.partial(ctc_by_distance, dom, instance.n,
                                        budget=budget)
        reports.append(values.compare(
            '{} <= cD(p1..pn)'.format(label), label, direct,
            'cD(p1..pn)', projections))
        reports.append(values.compare(
            'cD(p1..pn) <= {}'.format(label), 'cD(p1..pn)', projections,
            label, direct))
    return reports


def _evaluate_guarded(instance, budget):
    try:
        return evaluate_instance(instance, budget=budget)
    except SizeBudgetExceeded as exc:
        log.warning("instance {} skipped: {}".format(instance.name, exc))
        return [InequalityReport('[{}]'.format(instance.name), None, None,
                                 error=str(exc))]


def check_inequality_suite(instances, workers=None, budget=None):
    """
    Evaluates :func:`evaluate_instance` on every instance. With ``workers``
    the instances run in a thread pool; reports keep the input order either
    way. An instance exceeding its budget yields one report with an
    ``error`` instead of aborting the suite.

    :return: list of :class:`InequalityReport`
    """
    instances = list(instances)
    if workers:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(
                lambda item: _evaluate_guarded(item, budget), instances))
    else:
        batches = [_evaluate_guarded(item, budget) for item in instances]
    reports = [report for batch in batches for report in batch]
    violations = [report for report in reports if report.holds is False]
    log.info("suite: {} reports over {} instances, {} violated".format(
        len(reports), len(instances), len(violations)))
    return reports


def random_category(seed, n_objects, n_arrows, max_arrows=MAX_RANDOM_ARROWS,
                    connected=False, budget=None):
    """
    A random finite category, deterministic in ``seed``.

    A quiver with exactly ``n_arrows`` generators is sampled and freely
    closed under composition. Paths are identified through a random
    interpretation: every object becomes a set of a few elements and every
    generator a function that is neither an identity nor equal to a
    parallel generator. Two paths are the same arrow exactly when they
    compose to the same function, which makes the identification a
    congruence. Composites are named after the path that first produced
    them, so ``g1.g0`` is ``g1`` after ``g0``.

    When the closure has more than ``max_arrows`` non-identity arrows, the
    quiver and its interpretation are sampled again, the later attempts
    with sets as small as the generators allow.

    :param bool connected:
        The first ``n_objects - 1`` generators join every object to an
        earlier one.
    :raises: :class:`~fincat.errors.BadParams` for negative sizes or too few
        generators to connect the objects,
        :class:`~fincat.errors.SizeBudgetExceeded` when ``n_arrows``
        exceeds ``max_arrows`` or no attempt closes under the cap.
    :return: :class:`~fincat.categories.FinCategory` with objects ``'0'``,
        ``'1'``, ... and generators ``g0``, ``g1``, ...
    """
    budget = budgets.resolve(budget)
    if n_objects < 0 or n_arrows < 0:
        raise BadParams("Random category sizes must be non-negative")
    if n_objects == 0 and n_arrows:
        raise BadParams("A category without objects has no generators")
    if connected and n_arrows < n_objects - 1:
        raise BadParams("{} generators cannot connect {} objects".format(
            n_arrows, n_objects))
    if n_arrows > max_arrows:
        raise SizeBudgetExceeded(
            "{} generators exceed the cap of {} arrows".format(
                n_arrows, max_arrows))
    budget.check_size('random category', n_objects, n_objects + max_arrows)
    meter = budget.meter('random category {}'.format(seed))
    rng = random.Random(seed)
    for attempt in range(RANDOM_ATTEMPTS):
        quiver = _sample_quiver(rng, n_objects, n_arrows, connected)
        sizes = _set_sizes(rng, n_objects, quiver,
                           minimal=attempt >= RANDOM_ATTEMPTS // 2)
        closed = _closure(sizes, _interpret(rng, sizes, quiver), max_arrows,
                          meter)
        if closed is not None:
            return _as_category('random{}'.format(seed), sizes, closed)
        log.debug("random category {}: attempt {} closes above {} "
                  "arrows".format(seed, attempt, max_arrows))
    raise SizeBudgetExceeded(
        "random category {}: no closure within {} arrows after {} "
        "attempts".format(seed, max_arrows, RANDOM_ATTEMPTS))


def _sample_quiver(rng, n_objects, n_arrows, connected):
    """
    ``(source, target)`` of every generator.
    """
    quiver = []
    if connected:
        for obj in range(1, n_objects):
            other = rng.randrange(obj)
            if rng.random() < 0.5:
                quiver.append((obj, other))
            else:
                quiver.append((other, obj))
    while len(quiver) < n_arrows:
        quiver.append((rng.randrange(n_objects), rng.randrange(n_objects)))
    return quiver


def _room(sizes, source, target):
    count = sizes[target] ** sizes[source]
    return count - 1 if source == target else count


def _set_sizes(rng, n_objects, quiver, minimal=False):
    """
    Element counts of the objects, large enough for the parallel generators
    of every pair to be distinct non-identity functions. Growing a target
    never shrinks the room of another pair.
    """
    if minimal:
        sizes = [1] * n_objects
    else:
        sizes = [rng.randint(1, 3) for _ in range(n_objects)]
    for (source, target), count in sorted(collections.Counter(quiver).items()):
        while _room(sizes, source, target) < count:
            sizes[target] += 1
    return sizes


def _identity(sizes, obj):
    return (obj, obj, tuple(range(sizes[obj])))


def _interpret(rng, sizes, quiver):
    """
    One function per generator as ``(source, target, mapping)``.
    """
    taken = set(_identity(sizes, obj) for obj in range(len(sizes)))
    generators = []
    for source, target in quiver:
        while True:
            arrow = (source, target, tuple(
                rng.randrange(sizes[target]) for _ in range(sizes[source])))
            if arrow not in taken:
                break
        taken.add(arrow)
        generators.append(arrow)
    return generators


def _compose(second, first):
    return (first[0], second[1], tuple(second[2][value] for value in first[2]))


def _closure(sizes, generators, max_arrows, meter):
    """
    Closes the interpreted generators under composition.

    :return: ``(arrow, name)`` for the non-identity arrows in discovery
        order, or ``None`` when there are more than ``max_arrows``.
    """
    names = dict((_identity(sizes, obj), None) for obj in range(len(sizes)))
    found = []

    def add(arrow, name):
        if arrow not in names:
            names[arrow] = name
            found.append(arrow)

    for index, arrow in enumerate(generators):
        add(arrow, 'g{}'.format(index))
    index = 0
    while index < len(found):
        if len(found) > max_arrows:
            return None
        arrow = found[index]
        for other in found[:index + 1]:
            for first, second in ((arrow, other), (other, arrow)):
                meter.tick()
                if first[1] == second[0]:
                    add(_compose(second, first),
                        '{}.{}'.format(names[second], names[first]))
        index += 1
    if len(found) > max_arrows:
        return None
    return [(arrow, names[arrow]) for arrow in found]


def _as_category(name, sizes, closed):
    names = dict(closed)
    for obj in range(len(sizes)):
        names[_identity(sizes, obj)] = identity_id(str(obj))
    composites = {}
    for first, _ in closed:
        for second, _ in closed:
            if first[1] == second[0]:
                composites[(names[second], names[first])] = names[
                    _compose(second, first)]
    return build_category(
        name, [str(obj) for obj in range(len(sizes))],
        [(label, str(arrow[0]), str(arrow[1])) for arrow, label in closed],
        composites)


def random_functor(seed, dom, cod, budget=None):
    """
    A functor drawn uniformly from ``Fun(dom, cod)``, or ``None`` when there
    is none.
    """
    functors = list(enumerate_functors(dom, cod, budget=budget))
    if not functors:
        return None
    return random.Random(seed).choice(functors)


def random_instance(seed, n_objects=None, n_arrows=None, budget=None):
    """
    A :class:`SuiteInstance` built from random categories and functors, all
    derived from ``seed``.
    """
    rng = random.Random(seed)
    if n_objects is None:
        n_objects = rng.randint(1, 3)
    if n_arrows is None:
        n_arrows = rng.randint(0, 3)
    dom = random_category(rng.randrange(2 ** 32), n_objects, n_arrows,
                          budget=budget)
    if rng.random() < 0.5:
        cod = dom
    else:
        cod = random_category(rng.randrange(2 ** 32), rng.randint(1, 2),
                              rng.randint(0, 2), budget=budget)
    first = random_functor(rng.randrange(2 ** 32), dom, cod, budget=budget)
    second = random_functor(rng.randrange(2 ** 32), dom, cod, budget=budget)
    post = random_functor(rng.randrange(2 ** 32), cod, cod, budget=budget)
    pre = random_functor(rng.randrange(2 ** 32), dom, dom, budget=budget)
    n = None
    if dom.object_count == 1 and dom.arrow_count <= 3 and rng.random() < 0.5:
        n = 3
    return SuiteInstance('random{}'.format(seed), first, second, post=post,
                         pre=pre, n=n)
