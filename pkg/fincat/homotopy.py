"""
Zigzag homotopy of functors between finite categories.

Two functors are homotopic when a finite sequence of natural transformations,
each pointing either way, connects them. Deciding this is reachability in the
graph whose vertices are the functors ``C -> D`` and whose edges are natural
transformations; :func:`homotopic` walks that graph breadth first from one
end, generating neighbours by a joint backtracking search over components and
arrow images, so the functor space is never materialized.
"""
import functools
import logging

from networkx.utils import UnionFind

from fincat import budget as budgets
from fincat.categories import (
    FinFunctor,
    NatTrans,
    format_id,
    standard_functor,
)
from fincat.categories.core import (
    compose_functors,
    functor_violation,
    nat_trans_violation,
    product,
    validate_functor,
)
from fincat.categories.standard import interval_category
from fincat.errors import BadParams, DomainMismatch, SizeBudgetExceeded


log = logging.getLogger(__name__)

FORWARD = 'fwd'
BACKWARD = 'bwd'


class _Plan(object):
    """
    Precomputed check schedule for backtracking over functors out of
    ``category``: which arrows can be tested once a given object has been
    assigned, and which composites once a given arrow has.
    """
    def __init__(self, category):
        self.arrows = category.non_identity_arrows()
        position = dict((arrow, index)
                        for index, arrow in enumerate(self.arrows))
        index_of = category.object_index

        self.by_object = [[] for _ in category.objects]
        for arrow in self.arrows:
            last = max(index_of[category.src[arrow]],
                       index_of[category.tgt[arrow]])
            self.by_object[last].append(arrow)

        self.by_arrow = [[] for _ in self.arrows]
        identities = category.identities
        for arrow in category.arrows:
            for second in category.outgoing[category.tgt[arrow]]:
                if arrow in identities or second in identities:
                    continue
                result = category.comp[(second, arrow)]
                members = [part for part in (second, arrow, result)
                           if part not in identities]
                last = max(position[part] for part in members)
                self.by_arrow[last].append((second, arrow, result))


@functools.lru_cache(maxsize=128)
def _plan(category):
    return _Plan(category)


def _arrow_maps(dom, cod, on_objects, plan, meter, allowed=None):
    """
    Yields every arrow map extending ``on_objects`` to a functor, in
    canonical order. ``allowed(arrow, image)`` filters candidate images.
    """
    on_arrows = dict((dom.identity[obj], cod.identity[on_objects[obj]])
                     for obj in dom.objects)
    arrows = plan.arrows

    def extend(index):
        if index == len(arrows):
            yield dict(on_arrows)
            return
        arrow = arrows[index]
        for image in cod.hom(on_objects[dom.src[arrow]],
                             on_objects[dom.tgt[arrow]]):
            meter.tick()
            if allowed is not None and not allowed(arrow, image):
                continue
            on_arrows[arrow] = image
            if all(cod.comp[(on_arrows[second], on_arrows[first])] ==
                   on_arrows[result]
                   for second, first, result in plan.by_arrow[index]):
                yield from extend(index + 1)
        on_arrows.pop(arrow, None)

    return extend(0)


def _check_parallel(first, second):
    if first.dom != second.dom or first.cod != second.cod:
        raise DomainMismatch(
            "Functors {!r} and {!r} do not share domain and codomain".format(
                first, second))


def enumerate_functors(dom, cod, budget=None):
    """
    Every functor ``dom -> cod`` exactly once, ordered lexicographically by
    object map and then by arrow map.

    :param budget: :class:`~fincat.budget.Budget`
    :raises: :class:`~fincat.errors.SizeBudgetExceeded` when
        ``|obj cod| ** |obj dom|`` is above ``budget.max_object_maps``.
    :return: A generator of :class:`~fincat.categories.FinFunctor`.
    """
    budget = budgets.resolve(budget)
    object_maps = cod.object_count ** dom.object_count
    if object_maps > budget.max_object_maps:
        raise SizeBudgetExceeded(
            "Fun({}, {}) has {} object maps (cap {})".format(
                dom.name, cod.name, object_maps, budget.max_object_maps))
    meter = budget.meter('enumerating Fun({}, {})'.format(dom.name, cod.name))
    return _functors(dom, cod, _plan(dom), meter)


def _functors(dom, cod, plan, meter):
    objects = dom.objects
    on_objects = {}

    def extend(index):
        if index == len(objects):
            for on_arrows in _arrow_maps(dom, cod, on_objects, plan, meter):
                yield FinFunctor(dom, cod, dict(on_objects), on_arrows)
            return
        obj = objects[index]
        for image in cod.objects:
            meter.tick()
            on_objects[obj] = image
            if all(cod.hom(on_objects[dom.src[arrow]],
                           on_objects[dom.tgt[arrow]])
                   for arrow in plan.by_object[index]):
                yield from extend(index + 1)
        on_objects.pop(obj, None)

    return extend(0)


def nat_trans_search(source, target, budget=None):
    """
    Finds a natural transformation ``source => target``.

    Components are chosen object by object in canonical order, each square
    being tested as soon as both of its components are known. The search is
    exhaustive, so ``None`` means no transformation exists.

    :raises: :class:`~fincat.errors.DomainMismatch`
    :return: :class:`~fincat.categories.NatTrans` or ``None``.
    """
    _check_parallel(source, target)
    budget = budgets.resolve(budget)
    meter = budget.meter('natural transformation search')
    dom, cod = source.dom, source.cod
    plan = _plan(dom)
    components = {}

    def natural(arrow):
        before = components[dom.src[arrow]]
        after = components[dom.tgt[arrow]]
        return (cod.comp[(target.on_arrows[arrow], before)] ==
                cod.comp[(after, source.on_arrows[arrow])])

    def extend(index):
        if index == len(dom.objects):
            return dict(components)
        obj = dom.objects[index]
        for arrow in cod.hom(source.on_objects[obj], target.on_objects[obj]):
            meter.tick()
            components[obj] = arrow
            if all(natural(item) for item in plan.by_object[index]):
                found = extend(index + 1)
                if found is not None:
                    return found
        components.pop(obj, None)
        return None

    found = extend(0)
    if found is None:
        return None
    return NatTrans(source, target, found)


def adjacent_functors(functor, direction, meter):
    """
    Yields ``(neighbour, transformation)`` for every functor reachable from
    ``functor`` by one natural transformation pointing out of it
    (``direction='fwd'``) or into it (``'bwd'``). Each neighbour appears
    once, with the first transformation found.
    """
    dom, cod = functor.dom, functor.cod
    plan = _plan(dom)
    objects = dom.objects
    forward = direction == FORWARD
    components, on_objects = {}, {}
    seen = set()

    def square(arrow, image):
        c, d = dom.src[arrow], dom.tgt[arrow]
        if forward:
            return (cod.comp[(image, components[c])] ==
                    cod.comp[(components[d], functor.on_arrows[arrow])])
        return (cod.comp[(functor.on_arrows[arrow], components[c])] ==
                cod.comp[(components[d], image)])

    def possible(arrow):
        return any(
            square(arrow, image)
            for image in cod.hom(on_objects[dom.src[arrow]],
                                 on_objects[dom.tgt[arrow]]))

    def extend(index):
        if index == len(objects):
            for on_arrows in _arrow_maps(dom, cod, on_objects, plan, meter,
                                         allowed=square):
                neighbour = FinFunctor(dom, cod, dict(on_objects), on_arrows)
                if neighbour.key in seen:
                    continue
                seen.add(neighbour.key)
                if forward:
                    step = NatTrans(functor, neighbour, dict(components))
                else:
                    step = NatTrans(neighbour, functor, dict(components))
                yield neighbour, step
            return
        obj = objects[index]
        image = functor.on_objects[obj]
        candidates = cod.outgoing[image] if forward else cod.incoming[image]
        for component in candidates:
            meter.tick()
            components[obj] = component
            on_objects[obj] = (cod.tgt[component] if forward
                               else cod.src[component])
            if all(possible(arrow) for arrow in plan.by_object[index]):
                yield from extend(index + 1)
        components.pop(obj, None)
        on_objects.pop(obj, None)

    return extend(0)


class ZigzagWitness(object):
    """
    A homotopy certificate: functors ``F_0, ..., F_m`` and ``m`` steps, each
    a :class:`~fincat.categories.NatTrans` with a direction. A ``'fwd'``
    step ``i`` goes ``F_i => F_{i+1}``, a ``'bwd'`` one ``F_{i+1} => F_i``.
    """
    def __init__(self, functors, steps):
        self.functors = list(functors)
        self.steps = list(steps)

    @property
    def start(self):
        return self.functors[0]

    @property
    def end(self):
        return self.functors[-1]

    @property
    def length(self):
        return len(self.steps)

    @property
    def directions(self):
        return [direction for _, direction in self.steps]

    def to_json(self):
        first = self.functors[0]
        return {
            "dom": first.dom.to_json(),
            "cod": first.cod.to_json(),
            "functors": [functor.to_json(inline=False)
                         for functor in self.functors],
            "steps": [{"dir": direction, "components": step.to_json()}
                      for step, direction in self.steps],
        }

    def __repr__(self):
        return '<ZigzagWitness length {}>'.format(self.length)


def _step_functors(witness, index):
    step, direction = witness.steps[index]
    left, right = witness.functors[index], witness.functors[index + 1]
    if direction == FORWARD:
        return left, right
    return right, left


def verify_zigzag(witness, start=None, end=None):
    """
    Re-checks a witness from scratch: functor laws of every functor, the
    endpoints and naturality of every step, and optionally that the witness
    runs from ``start`` to ``end``.

    :return: ``(True, None)`` or ``(False, message)`` where ``message``
        locates the first violation.
    """
    functors = witness.functors
    if not functors:
        return False, "witness has no functors"
    if len(witness.steps) != len(functors) - 1:
        return False, "witness has {} functors but {} steps".format(
            len(functors), len(witness.steps))
    first = functors[0]
    for index, functor in enumerate(functors):
        if functor.dom != first.dom or functor.cod != first.cod:
            return False, (
                "functor {} has a different domain or codomain".format(
                    index))
        problem = functor_violation(functor)
        if problem is not None:
            return False, "functor {}: {}".format(index, problem)
    for index, (step, direction) in enumerate(witness.steps):
        if direction not in (FORWARD, BACKWARD):
            return False, "step {}: unknown direction {!r}".format(
                index, direction)
        source, target = _step_functors(witness, index)
        problem = nat_trans_violation(source, target, step.components)
        if problem is not None:
            return False, "step {} ({}): {}".format(index, direction, problem)
    if start is not None and functors[0].key != start.key:
        return False, "witness does not start at {!r}".format(start)
    if end is not None and functors[-1].key != end.key:
        return False, "witness does not end at {!r}".format(end)
    return True, None


def trivial_zigzag(functor):
    return ZigzagWitness([functor], [])


def find_homotopy(start, goal, budget=None, what='homotopy search'):
    """
    Breadth first search from ``start`` for any functor satisfying
    ``goal``. Neighbours are expanded out-direction first, then
    in-direction, each in canonical search order, so the returned witness
    is a shortest one and is deterministic.

    :param goal: A predicate on :class:`~fincat.categories.FinFunctor`.
    :return: :class:`ZigzagWitness` ending at the first goal functor
        reached, or ``None`` when no functor homotopic to ``start`` is one.
    """
    budget = budgets.resolve(budget)
    meter = budget.meter(what)
    if goal(start):
        return trivial_zigzag(start)

    parents = {start.key: None}
    frontier = [start]
    depth = 0
    while frontier:
        depth += 1
        next_frontier = []
        for current in frontier:
            for direction in (FORWARD, BACKWARD):
                for neighbour, step in adjacent_functors(
                        current, direction, meter):
                    if neighbour.key in parents:
                        continue
                    parents[neighbour.key] = (current, step, direction)
                    if goal(neighbour):
                        log.debug("{}: reached goal at depth {} after {} "
                                  "functors".format(what, depth, len(parents)))
                        return _unwind(parents, neighbour)
                    next_frontier.append(neighbour)
        frontier = next_frontier
    log.debug("{}: component of {} functors exhausted".format(
        what, len(parents)))
    return None


def _unwind(parents, last):
    functors, steps = [last], []
    entry = parents[last.key]
    while entry is not None:
        previous, step, direction = entry
        functors.append(previous)
        steps.append((step, direction))
        entry = parents[previous.key]
    functors.reverse()
    steps.reverse()
    return ZigzagWitness(functors, steps)


def homotopic(first, second, budget=None):
    """
    Decides ``first ~ second``.

    :raises: :class:`~fincat.errors.DomainMismatch`,
        :class:`~fincat.errors.SizeBudgetExceeded`
    :return: A shortest :class:`ZigzagWitness` from ``first`` to ``second``,
        or ``None`` when they are not homotopic.
    """
    _check_parallel(first, second)
    target = second.key
    return find_homotopy(first, lambda functor: functor.key == target,
                         budget=budget, what='homotopy {!r} ~ {!r}'.format(
                             first, second))


def is_constant(functor):
    """
    :return: The object every object is sent to when ``functor`` is a
        constant functor, else ``None``. Empty functors are not constant.
    """
    dom, cod = functor.dom, functor.cod
    if dom.is_empty:
        return None
    images = set(functor.on_objects.values())
    if len(images) != 1:
        return None
    (image,) = images
    identity = cod.identity[image]
    if any(functor.on_arrows[arrow] != identity for arrow in dom.arrows):
        return None
    return image


def homotopic_to_constant(functor, budget=None):
    """
    :return: ``(b, witness)`` for the first constant functor at ``b``
        reached from ``functor``, or ``None``. An empty functor counts as
        constant with ``b = None``.
    """
    if functor.dom.is_empty:
        return None, trivial_zigzag(functor)
    witness = find_homotopy(
        functor, lambda candidate: is_constant(candidate) is not None,
        budget=budget, what='contracting {!r}'.format(functor))
    if witness is None:
        return None
    return is_constant(witness.end), witness


def is_contractible(category, budget=None):
    """
    ``True`` when the identity functor of ``category`` is homotopic to a
    constant functor.

    :return: ``(True, b, witness)`` with the first object ``b`` reached, or
        ``(False, None, None)``.
    """
    identity = standard_functor('identity', category)
    found = homotopic_to_constant(identity, budget=budget)
    if found is None:
        log.info("{} is not contractible".format(category.name))
        return False, None, None
    base, witness = found
    log.info("{} contracts to {} in {} steps".format(
        category.name, format_id(base), witness.length))
    return True, base, witness


def reverse_zigzag(witness):
    flipped = [(step, BACKWARD if direction == FORWARD else FORWARD)
               for step, direction in reversed(witness.steps)]
    return ZigzagWitness(list(reversed(witness.functors)), flipped)


def concat_zigzag(first, second):
    """
    ``first`` followed by ``second``; the end of ``first`` must be the
    start of ``second``.
    """
    if first.end.key != second.start.key or \
            first.end.dom != second.start.dom:
        raise BadParams("Witnesses do not meet: {!r} is not {!r}".format(
            first.end, second.start))
    return ZigzagWitness(first.functors + second.functors[1:],
                         first.steps + second.steps)


def compose_zigzag_right(witness, functor):
    """
    Whiskers every step with ``functor`` on the right: ``F_i o functor``
    with components ``eta_{functor(c)}``.
    """
    functors = [compose_functors(item, functor) for item in witness.functors]
    steps = []
    for index, (step, direction) in enumerate(witness.steps):
        if direction == FORWARD:
            source, target = functors[index], functors[index + 1]
        else:
            source, target = functors[index + 1], functors[index]
        components = dict((obj, step.components[functor.on_objects[obj]])
                          for obj in functor.dom.objects)
        steps.append((NatTrans(source, target, components), direction))
    return ZigzagWitness(functors, steps)


def compose_zigzag_left(functor, witness):
    """
    Whiskers every step with ``functor`` on the left: ``functor o F_i``
    with components ``functor(eta_c)``.
    """
    functors = [compose_functors(functor, item) for item in witness.functors]
    steps = []
    for index, (step, direction) in enumerate(witness.steps):
        if direction == FORWARD:
            source, target = functors[index], functors[index + 1]
        else:
            source, target = functors[index + 1], functors[index]
        components = dict((obj, functor.on_arrows[arrow])
                          for obj, arrow in step.components.items())
        steps.append((NatTrans(source, target, components), direction))
    return ZigzagWitness(functors, steps)


def restrict_zigzag(witness, subcategory):
    """
    Restricts every functor and component to ``subcategory`` (anything with
    an ``inclusion()`` functor into the common domain).
    """
    return compose_zigzag_right(witness, subcategory.inclusion())


def horizontal_zigzag(outer, inner):
    """
    From ``F ~ F'`` (``outer``) and ``G ~ G'`` (``inner``) builds
    ``F o G ~ F' o G'``.
    """
    return concat_zigzag(compose_zigzag_right(outer, inner.start),
                         compose_zigzag_left(outer.end, inner))


def to_product_homotopy(witness, budget=None):
    """
    Converts a zigzag into a single functor ``C x I -> D`` where ``I`` is
    the interval with the witness's step directions. The restriction to
    ``C x {i}`` is ``F_i`` and ``(id_c, s<i>)`` goes to the ``i``-th
    component at ``c``.

    :return: ``(functor, interval)``
    """
    interval = interval_category(witness.directions)
    first = witness.start
    dom, cod = first.dom, first.cod
    square, _ = product([dom, interval], budget=budget)

    on_objects = dict(
        ((obj, position), witness.functors[int(position)].on_objects[obj])
        for obj, position in square.objects)
    on_arrows = {}
    for arrow in square.arrows:
        part, step_arrow = arrow
        if interval.is_identity(step_arrow):
            level = witness.functors[int(interval.src[step_arrow])]
            on_arrows[arrow] = level.on_arrows[part]
            continue
        index = int(step_arrow[1:])
        step, _ = witness.steps[index]
        on_arrows[arrow] = cod.comp[(step.target.on_arrows[part],
                                     step.components[dom.src[part]])]
    functor = FinFunctor(square, cod, on_objects, on_arrows, name='H')
    return validate_functor(functor), interval


def homotopy_classes(dom, cod, budget=None):
    """
    Partitions ``Fun(dom, cod)`` into homotopy classes by full enumeration
    and union-find over every out-transformation. Slower than
    :func:`homotopic` but independent of its search, so the two cross-check
    each other.

    :return: Lists of functors, classes ordered by their first member.
    """
    budget = budgets.resolve(budget)
    functors = list(enumerate_functors(dom, cod, budget=budget))
    meter = budget.meter('homotopy classes of Fun({}, {})'.format(
        dom.name, cod.name))
    classes = UnionFind()
    for functor in functors:
        classes[functor.key]
        for neighbour, _ in adjacent_functors(functor, FORWARD, meter):
            classes.union(functor.key, neighbour.key)

    grouped = {}
    order = []
    for functor in functors:
        root = classes[functor.key]
        if root not in grouped:
            grouped[root] = []
            order.append(root)
        grouped[root].append(functor)
    log.debug("Fun({}, {}): {} functors in {} classes".format(
        dom.name, cod.name, len(functors), len(order)))
    return [grouped[root] for root in order]


def homotopic_oracle(first, second, budget=None):
    """
    Same truth value as :func:`homotopic`, computed through
    :func:`homotopy_classes`.
    """
    _check_parallel(first, second)
    for members in homotopy_classes(first.dom, first.cod, budget=budget):
        keys = set(member.key for member in members)
        if first.key in keys:
            return second.key in keys
    return False
