"""
Cartesian arrows, Grothendieck (op-)fibrations, fibers, transport functors
between fibers and homotopy lifting.

Throughout, ``functor`` is the projection ``P: E -> B``. An arrow
``phi: e1 -> e2`` of ``E`` is cartesian when every ``beta: e -> e2`` whose
image factors as ``P(phi) o abar`` factors uniquely as ``phi o alpha`` with
``P(alpha) = abar``. Op-cartesian is the dual notion.
"""
import logging

from fincat import budget as budgets
from fincat.categories import FinFunctor, NatTrans, format_id
from fincat.categories.core import (
    compose_functors,
    nat_trans_violation,
    validate_functor,
)
from fincat.covers import Subcategory
from fincat.errors import (
    BadParams,
    EndpointMismatch,
    EquivalenceFailure,
    NoLift,
    NonUniqueFiller,
    NotAFibration,
)
from fincat.homotopy import (
    FORWARD,
    ZigzagWitness,
    concat_zigzag,
    verify_zigzag,
)


log = logging.getLogger(__name__)

CARTESIAN = 'cartesian'
OP_CARTESIAN = 'op-cartesian'


def _cartesian_failure(functor, arrow):
    total, base = functor.dom, functor.cod
    e1, e2 = total.src[arrow], total.tgt[arrow]
    image = functor.on_arrows[arrow]
    for e in total.objects:
        for beta in total.hom(e, e2):
            for alpha_bar in base.hom(functor.on_objects[e],
                                      functor.on_objects[e1]):
                if base.comp[(image, alpha_bar)] != functor.on_arrows[beta]:
                    continue
                fillers = [
                    alpha for alpha in total.hom(e, e1)
                    if total.comp[(arrow, alpha)] == beta and
                    functor.on_arrows[alpha] == alpha_bar]
                if len(fillers) != 1:
                    return e, beta, alpha_bar, len(fillers)
    return None


def _op_cartesian_failure(functor, arrow):
    total, base = functor.dom, functor.cod
    e1, e2 = total.src[arrow], total.tgt[arrow]
    image = functor.on_arrows[arrow]
    for e in total.objects:
        for beta in total.hom(e1, e):
            for alpha_bar in base.hom(functor.on_objects[e2],
                                      functor.on_objects[e]):
                if base.comp[(alpha_bar, image)] != functor.on_arrows[beta]:
                    continue
                fillers = [
                    alpha for alpha in total.hom(e2, e)
                    if total.comp[(alpha, arrow)] == beta and
                    functor.on_arrows[alpha] == alpha_bar]
                if len(fillers) != 1:
                    return e, beta, alpha_bar, len(fillers)
    return None


def is_cartesian(functor, arrow):
    """
    Exhaustive check of the unique factorization property of ``arrow``.
    """
    return _cartesian_failure(functor, arrow) is None


def is_op_cartesian(functor, arrow):
    return _op_cartesian_failure(functor, arrow) is None


def is_cartesian_pullback(functor, arrow):
    """
    Checks cartesianness as a pullback of finite sets: for every object
    ``e`` the map ``alpha -> (arrow o alpha, P(alpha))`` from ``E(e, e1)``
    to ``E(e, e2) x_{B(Pe, Pe2)} B(Pe, Pe1)`` must be a bijection.
    """
    total, base = functor.dom, functor.cod
    e1, e2 = total.src[arrow], total.tgt[arrow]
    image = functor.on_arrows[arrow]
    for e in total.objects:
        pairs = [(total.comp[(arrow, alpha)], functor.on_arrows[alpha])
                 for alpha in total.hom(e, e1)]
        if len(set(pairs)) != len(pairs):
            return False
        fibered = set(
            (beta, alpha_bar)
            for beta in total.hom(e, e2)
            for alpha_bar in base.hom(functor.on_objects[e],
                                      functor.on_objects[e1])
            if base.comp[(image, alpha_bar)] == functor.on_arrows[beta])
        if set(pairs) != fibered:
            return False
    return True


def _is_thin(category):
    return all(len(category.hom(a, b)) <= 1
               for a in category.objects for b in category.objects)


def is_cartesian_poset(functor, arrow):
    """
    The order theoretic criterion for a monotone map of posets: ``e1 <= e2``
    is cartesian iff ``e <= e2`` and ``Pe <= Pe1`` imply ``e <= e1``.

    :raises: :class:`~fincat.errors.BadParams` unless both categories are
        thin.
    """
    total, base = functor.dom, functor.cod
    if not (_is_thin(total) and _is_thin(base)):
        raise BadParams("The poset criterion needs thin categories")
    e1, e2 = total.src[arrow], total.tgt[arrow]
    for e in total.objects:
        if total.hom(e, e2) and \
                base.hom(functor.on_objects[e], functor.on_objects[e1]) and \
                not total.hom(e, e1):
            return False
    return True


class Counterexample(object):
    """
    A base arrow and an object of the total category at which no
    (op-)cartesian lift exists.
    """
    def __init__(self, kind, base_arrow, obj, base):
        self.kind = kind
        self.base_arrow = base_arrow
        self.obj = obj
        self.base = base

    def describe(self):
        end = 'codomain' if self.kind == CARTESIAN else 'domain'
        return 'no {} lift of {} with {} {}'.format(
            self.kind, self.base.json_arrow(self.base_arrow), end,
            format_id(self.obj))

    def to_json(self):
        return {
            "kind": self.kind,
            "base_arrow": self.base.json_arrow(self.base_arrow),
            "object": format_id(self.obj),
        }


class FibrationStructure(object):
    """
    Chosen lifts of ``functor``, computed on demand and memoized. The chosen
    lift is the first valid one in canonical arrow order, and the identity
    for identity base arrows. Every other valid lift is compared with the
    chosen one, and the vertical isomorphisms are kept in ``comparisons``
    as ``(kind, base_arrow, obj) -> [(other, v, inverse)]``.
    """
    def __init__(self, functor):
        self.functor = functor
        total = functor.dom
        self.over = dict((obj, []) for obj in functor.cod.objects)
        for obj in total.objects:
            self.over[functor.on_objects[obj]].append(obj)
        self._flags = {}
        self.cart = {}
        self.opcart = {}
        self.comparisons = {}

    def arrow_is(self, kind, arrow):
        key = (kind, arrow)
        if key not in self._flags:
            check = is_cartesian if kind == CARTESIAN else is_op_cartesian
            self._flags[key] = check(self.functor, arrow)
        return self._flags[key]

    def _choose(self, kind, base_arrow, obj):
        functor = self.functor
        total, base = functor.dom, functor.cod
        candidates = (total.incoming[obj] if kind == CARTESIAN
                      else total.outgoing[obj])
        lifts = [arrow for arrow in candidates
                 if functor.on_arrows[arrow] == base_arrow and
                 self.arrow_is(kind, arrow)]
        if not lifts:
            return None
        chosen = lifts[0]
        if base.is_identity(base_arrow):
            chosen = total.identity[obj]
        self.comparisons[(kind, base_arrow, obj)] = [
            (other,) + vertical_comparison(functor, chosen, other, kind=kind)
            for other in lifts if other != chosen]
        return chosen

    def lift(self, kind, base_arrow, obj):
        functor = self.functor
        base = functor.cod
        table = self.cart if kind == CARTESIAN else self.opcart
        end = base.tgt if kind == CARTESIAN else base.src
        if functor.on_objects.get(obj) != end[base_arrow]:
            raise BadParams("{} does not lie over the {} of {}".format(
                format_id(obj), 'target' if kind == CARTESIAN else 'source',
                base.json_arrow(base_arrow)))
        key = (base_arrow, obj)
        if key not in table:
            table[key] = self._choose(kind, base_arrow, obj)
        if table[key] is None:
            raise NoLift(Counterexample(kind, base_arrow, obj,
                                        base).describe())
        return table[key]

    def cartesian_lift(self, base_arrow, obj):
        return self.lift(CARTESIAN, base_arrow, obj)

    def op_cartesian_lift(self, base_arrow, obj):
        return self.lift(OP_CARTESIAN, base_arrow, obj)

    def to_json(self):
        total, base = self.functor.dom, self.functor.cod

        def entries(table):
            return [{"base_arrow": base.json_arrow(base_arrow),
                     "object": format_id(obj),
                     "lift": total.json_arrow(lift)}
                    for (base_arrow, obj), lift in sorted(
                        table.items(),
                        key=lambda item: (base.arrow_index[item[0][0]],
                                          total.object_index[item[0][1]]))
                    if lift is not None]

        return {"cartesian_lifts": entries(self.cart),
                "op_cartesian_lifts": entries(self.opcart)}


class FibrationReport(object):
    def __init__(self, functor, counterexamples, structure):
        self.functor = functor
        self.counterexamples = list(counterexamples)
        self.structure = structure

    @property
    def is_fibration(self):
        return not any(item.kind == CARTESIAN
                       for item in self.counterexamples)

    @property
    def is_op_fibration(self):
        return not any(item.kind == OP_CARTESIAN
                       for item in self.counterexamples)

    @property
    def is_bifibration(self):
        return self.is_fibration and self.is_op_fibration

    def describe(self):
        def part(label, holds, kind):
            if holds:
                return '{}: yes'.format(label)
            return '{}: no ({})'.format(label, '; '.join(
                item.describe() for item in self.counterexamples
                if item.kind == kind))
        return '{}, {}'.format(
            part('fibration', self.is_fibration, CARTESIAN),
            part('op-fibration', self.is_op_fibration, OP_CARTESIAN))

    def to_json(self):
        result = {
            "is_fibration": self.is_fibration,
            "is_op_fibration": self.is_op_fibration,
            "is_bifibration": self.is_bifibration,
            "counterexamples": [item.to_json()
                                for item in self.counterexamples],
        }
        result.update(self.structure.to_json())
        return result


def classify_fibration(functor, budget=None):
    """
    Searches a lift for every base arrow and every object over its target
    (cartesian) or source (op-cartesian). Empty fibers make the condition
    vacuous.

    :return: :class:`FibrationReport` whose structure holds every chosen
        lift found.
    """
    budget = budgets.resolve(budget)
    meter = budget.meter('classifying {!r}'.format(functor))
    structure = FibrationStructure(functor)
    base = functor.cod
    counterexamples = []
    for kind in (CARTESIAN, OP_CARTESIAN):
        end = base.tgt if kind == CARTESIAN else base.src
        for base_arrow in base.arrows:
            for obj in structure.over[end[base_arrow]]:
                meter.tick()
                try:
                    structure.lift(kind, base_arrow, obj)
                except NoLift:
                    counterexamples.append(
                        Counterexample(kind, base_arrow, obj, base))
    report = FibrationReport(functor, counterexamples, structure)
    log.info("{!r}: {}".format(functor, report.describe()))
    return report


def _structure(functor, structure):
    return structure if structure is not None else \
        FibrationStructure(functor)


def cartesian_lift(functor, base_arrow, obj, structure=None):
    """
    The chosen cartesian lift of ``base_arrow`` with codomain ``obj``.

    :raises: :class:`~fincat.errors.NoLift`
    """
    return _structure(functor, structure).cartesian_lift(base_arrow, obj)


def op_cartesian_lift(functor, base_arrow, obj, structure=None):
    """
    The chosen op-cartesian lift of ``base_arrow`` with domain ``obj``.

    :raises: :class:`~fincat.errors.NoLift`
    """
    return _structure(functor, structure).op_cartesian_lift(base_arrow, obj)


def fiber(functor, obj):
    """
    Objects over ``obj`` and the arrows over its identity, as a standalone
    category (possibly empty).

    :return: ``(category, inclusion)``
    """
    total, base = functor.dom, functor.cod
    if obj not in base.object_index:
        raise BadParams("{} is not an object of {}".format(
            format_id(obj), base.name))
    identity = base.identity[obj]
    objects = [item for item in total.objects
               if functor.on_objects[item] == obj]
    arrows = [arrow for arrow in total.arrows
              if functor.on_arrows[arrow] == identity]
    sub = Subcategory(total, objects, arrows, check=False,
                      name='{}_{}'.format(total.name, format_id(obj)))
    return sub.as_category(), sub.inclusion()


def preimage_subcategory(functor, subcategory):
    """
    The subcategory of ``E`` of everything ``functor`` sends into
    ``subcategory``.
    """
    total = functor.dom
    objects = [obj for obj in total.objects
               if functor.on_objects[obj] in subcategory.object_set]
    arrows = [arrow for arrow in total.arrows
              if functor.on_arrows[arrow] in subcategory.arrow_set]
    return Subcategory(total, objects, arrows, check=False)


def _fillers(functor, kind, lift, beta, alpha_bar):
    total = functor.dom
    if kind == CARTESIAN:
        return [alpha for alpha in total.hom(total.src[beta], total.src[lift])
                if total.comp[(lift, alpha)] == beta and
                functor.on_arrows[alpha] == alpha_bar]
    return [alpha for alpha in total.hom(total.tgt[lift], total.tgt[beta])
            if total.comp[(alpha, lift)] == beta and
            functor.on_arrows[alpha] == alpha_bar]


def _unique_filler(functor, kind, lift, beta, alpha_bar):
    fillers = _fillers(functor, kind, lift, beta, alpha_bar)
    if len(fillers) != 1:
        total = functor.dom
        raise NonUniqueFiller(
            "{} fillers for {} through the {} arrow {} over {}".format(
                len(fillers), total.json_arrow(beta), kind,
                total.json_arrow(lift),
                functor.cod.json_arrow(alpha_bar)))
    return fillers[0]


def vertical_comparison(functor, first, second, kind=CARTESIAN):
    """
    Compares two lifts of one base arrow sharing their fixed end: the
    codomain for cartesian lifts, the domain for op-cartesian ones.

    For cartesian ``first: e1 -> e2`` and ``second: e1' -> e2`` this is the
    unique vertical ``v: e1' -> e1`` with ``first o v = second``; for
    op-cartesian ``first: e1 -> e2`` and ``second: e1 -> e2'`` the unique
    vertical ``v: e2 -> e2'`` with ``v o first = second``.

    :raises: :class:`~fincat.errors.NonUniqueFiller` when either filler is
        not unique, :class:`~fincat.errors.EquivalenceFailure` when they
        are not inverse.
    :return: ``(v, inverse)``
    """
    total = functor.dom
    fixed = total.tgt if kind == CARTESIAN else total.src
    moving = total.src if kind == CARTESIAN else total.tgt
    if fixed[first] != fixed[second] or \
            functor.on_arrows[first] != functor.on_arrows[second]:
        raise BadParams("{} and {} are not lifts of one arrow to one "
                        "object".format(total.json_arrow(first),
                                        total.json_arrow(second)))
    base = functor.cod
    forward = _unique_filler(
        functor, kind, first, second,
        base.identity[functor.on_objects[moving[second]]])
    backward = _unique_filler(
        functor, kind, second, first,
        base.identity[functor.on_objects[moving[first]]])
    if total.comp[(forward, backward)] not in total.identities or \
            total.comp[(backward, forward)] not in total.identities:
        raise EquivalenceFailure(
            "Comparison {} is not invertible".format(
                total.json_arrow(forward)))
    return forward, backward


def _fiber_functor(functor, kind, base_arrow, structure, name):
    """
    Transport between the fibers over the endpoints of ``base_arrow`` along
    chosen lifts, with arrow images the unique fillers.
    """
    base = functor.cod
    if kind == CARTESIAN:
        source_obj, target_obj = base.tgt[base_arrow], base.src[base_arrow]
    else:
        source_obj, target_obj = base.src[base_arrow], base.tgt[base_arrow]
    source, _ = fiber(functor, source_obj)
    target, _ = fiber(functor, target_obj)
    total = functor.dom
    lifts = dict((obj, structure.lift(kind, base_arrow, obj))
                 for obj in source.objects)
    if kind == CARTESIAN:
        on_objects = dict((obj, total.src[lift])
                          for obj, lift in lifts.items())
    else:
        on_objects = dict((obj, total.tgt[lift])
                          for obj, lift in lifts.items())
    on_arrows = {}
    identity = base.identity[target_obj]
    for arrow in source.arrows:
        before, after = source.src[arrow], source.tgt[arrow]
        if kind == CARTESIAN:
            beta = total.comp[(arrow, lifts[before])]
            on_arrows[arrow] = _unique_filler(
                functor, CARTESIAN, lifts[after], beta, identity)
        else:
            beta = total.comp[(lifts[after], arrow)]
            on_arrows[arrow] = _unique_filler(
                functor, OP_CARTESIAN, lifts[before], beta, identity)
    return validate_functor(
        FinFunctor(source, target, on_objects, on_arrows, name=name))


def pullback_functor(functor, base_arrow, structure=None):
    """
    ``u*: E_b2 -> E_b1`` for ``u: b1 -> b2``.

    :raises: :class:`~fincat.errors.NoLift`,
        :class:`~fincat.errors.NonUniqueFiller`
    """
    return _fiber_functor(
        functor, CARTESIAN, base_arrow, _structure(functor, structure),
        '{}*'.format(functor.cod.json_arrow(base_arrow)))


def pushforward_functor(functor, base_arrow, structure=None):
    """
    ``u_*: E_b1 -> E_b2`` for ``u: b1 -> b2``.
    """
    return _fiber_functor(
        functor, OP_CARTESIAN, base_arrow, _structure(functor, structure),
        '{}_*'.format(functor.cod.json_arrow(base_arrow)))


def _inverse(category, arrow):
    for candidate in category.hom(category.tgt[arrow], category.src[arrow]):
        if category.comp[(candidate, arrow)] == \
                category.identity[category.src[arrow]] and \
                category.comp[(arrow, candidate)] == \
                category.identity[category.tgt[arrow]]:
            return candidate
    return None


class FiberEquivalence(object):
    """
    ``pushforward: E_b1 -> E_b2`` and ``pullback: E_b2 -> E_b1`` with
    natural isomorphisms ``source_unit: id => pullback o pushforward`` on
    ``E_b1`` and ``target_unit: id => pushforward o pullback`` on ``E_b2``,
    each with its inverse.
    """
    def __init__(self, base_arrow, pullback, pushforward, source_unit,
                 source_counit, target_unit, target_counit):
        self.base_arrow = base_arrow
        self.pullback = pullback
        self.pushforward = pushforward
        self.source_unit = source_unit
        self.source_counit = source_counit
        self.target_unit = target_unit
        self.target_counit = target_counit

    @property
    def is_isomorphism(self):
        """
        ``True`` when both composites are identities on the nose.
        """
        for round_trip in (self.source_unit.target, self.target_unit.target):
            category = round_trip.dom
            if any(round_trip.on_objects[obj] != obj
                   for obj in category.objects):
                return False
            if any(round_trip.on_arrows[arrow] != arrow
                   for arrow in category.arrows):
                return False
        return True

    def verify(self):
        """
        :return: ``(True, None)`` or ``(False, message)``.
        """
        for label, transformation, inverse in (
                ('source', self.source_unit, self.source_counit),
                ('target', self.target_unit, self.target_counit)):
            for item in (transformation, inverse):
                problem = nat_trans_violation(item.source, item.target,
                                              item.components)
                if problem is not None:
                    return False, '{}: {}'.format(label, problem)
            category = transformation.source.cod
            for obj in transformation.source.dom.objects:
                there = transformation.components[obj]
                back = inverse.components[obj]
                if category.comp[(back, there)] != category.identity[obj]:
                    return False, (
                        '{}: component at {} is not invertible'.format(
                            label, format_id(obj)))
                if category.comp[(there, back)] != \
                        category.identity[category.tgt[there]]:
                    return False, (
                        '{}: component at {} is not invertible'.format(
                            label, format_id(obj)))
        return True, None

    def to_json(self):
        return {
            "pullback": self.pullback.to_json(),
            "pushforward": self.pushforward.to_json(),
            "source_unit": self.source_unit.to_json(),
            "source_counit": self.source_counit.to_json(),
            "target_unit": self.target_unit.to_json(),
            "target_counit": self.target_counit.to_json(),
            "fiber_sizes": [self.pushforward.dom.object_count,
                            self.pushforward.cod.object_count],
            "is_isomorphism": self.is_isomorphism,
        }


def _identity_on(category):
    return FinFunctor(category, category,
                      dict((obj, obj) for obj in category.objects),
                      dict((arrow, arrow) for arrow in category.arrows),
                      name='id')


def fiber_equivalence(functor, base_arrow, structure=None):
    """
    The equivalence between the fibers over the endpoints of
    ``base_arrow: b1 -> b2`` of a bi-fibration. Every unit component is the
    unique vertical filler comparing a cartesian with an op-cartesian lift;
    each must be invertible.

    :raises: :class:`~fincat.errors.NoLift`,
        :class:`~fincat.errors.EquivalenceFailure`
    :return: :class:`FiberEquivalence`
    """
    structure = _structure(functor, structure)
    base, total = functor.cod, functor.dom
    pullback = pullback_functor(functor, base_arrow, structure)
    pushforward = pushforward_functor(functor, base_arrow, structure)
    source, target = pushforward.dom, pushforward.cod
    b1, b2 = base.src[base_arrow], base.tgt[base_arrow]

    # On E_b2: alpha o opCart(u, u*e) = Cart(u, e) with P(alpha) = id_b2.
    counit, unit = {}, {}
    for obj in target.objects:
        cart = structure.cartesian_lift(base_arrow, obj)
        opcart = structure.op_cartesian_lift(base_arrow, total.src[cart])
        alpha = _unique_filler(functor, OP_CARTESIAN, opcart, cart,
                               base.identity[b2])
        inverse = _inverse(target, alpha)
        if inverse is None:
            raise EquivalenceFailure(
                "Comparison {} at {} in the fiber over {} is not "
                "invertible".format(total.json_arrow(alpha), format_id(obj),
                                    format_id(b2)))
        counit[obj], unit[obj] = alpha, inverse

    # On E_b1: Cart(u, u_*e) o gamma = opCart(u, e) with P(gamma) = id_b1.
    source_unit, source_counit = {}, {}
    for obj in source.objects:
        opcart = structure.op_cartesian_lift(base_arrow, obj)
        cart = structure.cartesian_lift(base_arrow, total.tgt[opcart])
        gamma = _unique_filler(functor, CARTESIAN, cart, opcart,
                               base.identity[b1])
        inverse = _inverse(source, gamma)
        if inverse is None:
            raise EquivalenceFailure(
                "Comparison {} at {} in the fiber over {} is not "
                "invertible".format(total.json_arrow(gamma), format_id(obj),
                                    format_id(b1)))
        source_unit[obj], source_counit[obj] = gamma, inverse

    round_target = compose_functors(pushforward, pullback)
    round_source = compose_functors(pullback, pushforward)
    equivalence = FiberEquivalence(
        base_arrow, pullback, pushforward,
        NatTrans(_identity_on(source), round_source, source_unit),
        NatTrans(round_source, _identity_on(source), source_counit),
        NatTrans(_identity_on(target), round_target, unit),
        NatTrans(round_target, _identity_on(target), counit))
    ok, problem = equivalence.verify()
    if not ok:
        raise EquivalenceFailure(problem)
    log.info("fibers over {} and {} are equivalent ({} and {} objects)".format(
        format_id(b1), format_id(b2), source.object_count,
        target.object_count))
    return equivalence


class LiftedHomotopy(object):
    """
    A lift of a base zigzag: ``witness`` lives in ``Fun(A, E)`` and
    ``flags[i][c]`` records whether component ``c`` of step ``i`` passes the
    (op-)cartesian check named by ``kinds[i]``.
    """
    def __init__(self, witness, kinds, flags):
        self.witness = witness
        self.kinds = list(kinds)
        self.flags = list(flags)

    def to_json(self):
        dom = self.witness.start.dom
        return {
            "witness": self.witness.to_json(),
            "kinds": self.kinds,
            "flags": [dict((format_id(obj), flag[obj]) for obj in dom.objects)
                      for flag in self.flags],
        }


def _require(report, kind):
    if kind == CARTESIAN and not report.is_fibration:
        raise NotAFibration("{!r} is not a fibration: {}".format(
            report.functor, report.describe()))
    if kind == OP_CARTESIAN and not report.is_op_fibration:
        raise NotAFibration("{!r} is not an op-fibration: {}".format(
            report.functor, report.describe()))


def lift_homotopy(functor, lifted, homotopy, endpoint='end', report=None):
    """
    Lifts a one step base homotopy ``H`` along ``functor`` given the lift
    ``lifted`` (``G``) of its ``endpoint``.

    When the base step points into the known end, components are chosen
    cartesian lifts at ``G(c)`` and ``functor`` must be a fibration; when it
    points out of it they are op-cartesian and ``functor`` must be an
    op-fibration. The other end of the lift takes arrow images from the
    unique fillers.

    :raises: :class:`~fincat.errors.NotAFibration`,
        :class:`~fincat.errors.EndpointMismatch`
    :return: :class:`LiftedHomotopy`
    """
    if homotopy.length != 1:
        raise BadParams("lift_homotopy lifts one step, got {}".format(
            homotopy.length))
    if endpoint not in ('start', 'end'):
        raise BadParams("endpoint is 'start' or 'end', got {!r}".format(
            endpoint))
    known_index = 0 if endpoint == 'start' else 1
    known = homotopy.functors[known_index]
    projected = compose_functors(functor, lifted)
    if projected.dom != known.dom or projected.cod != known.cod or \
            projected.key != known.key:
        raise EndpointMismatch(
            "P o G is not the {} of the base homotopy".format(endpoint))

    step, direction = homotopy.steps[0]
    into_known = (direction == FORWARD) == (known_index == 1)
    kind = CARTESIAN if into_known else OP_CARTESIAN
    if report is None:
        report = classify_fibration(functor)
    _require(report, kind)
    structure = report.structure
    other = homotopy.functors[1 - known_index]

    dom, total = lifted.dom, functor.dom
    components = {}
    on_objects = {}
    for obj in dom.objects:
        lift = structure.lift(kind, step.components[obj],
                               lifted.on_objects[obj])
        components[obj] = lift
        on_objects[obj] = total.src[lift] if into_known else total.tgt[lift]
    on_arrows = {}
    for arrow in dom.arrows:
        before, after = dom.src[arrow], dom.tgt[arrow]
        if into_known:
            beta = total.comp[(lifted.on_arrows[arrow], components[before])]
            on_arrows[arrow] = _unique_filler(
                functor, CARTESIAN, components[after], beta,
                other.on_arrows[arrow])
        else:
            beta = total.comp[(components[after], lifted.on_arrows[arrow])]
            on_arrows[arrow] = _unique_filler(
                functor, OP_CARTESIAN, components[before], beta,
                other.on_arrows[arrow])
    unknown = validate_functor(
        FinFunctor(dom, total, on_objects, on_arrows, name='H~'))

    if into_known:
        transformation = NatTrans(unknown, lifted, components)
    else:
        transformation = NatTrans(lifted, unknown, components)
    if known_index == 1:
        functors = [unknown, lifted]
    else:
        functors = [lifted, unknown]
    witness = ZigzagWitness(functors, [(transformation, direction)])
    flags = dict((obj, structure.arrow_is(kind, components[obj]))
                 for obj in dom.objects)
    log.debug("lifted a {} step at the {} with {} lifts".format(
        direction, endpoint, kind))
    return LiftedHomotopy(witness, [kind], [flags])


def lift_chain_homotopy(functor, lifted, homotopy, report=None):
    """
    Lifts a zigzag of any length starting at ``P o lifted``, one step at a
    time from the start, using cartesian lifts for backward steps and
    op-cartesian lifts for forward ones.

    :return: :class:`LiftedHomotopy` starting at ``lifted``.
    """
    if report is None:
        report = classify_fibration(functor)
    result = ZigzagWitness([lifted], [])
    kinds, flags = [], []
    current = lifted
    for index in range(homotopy.length):
        step = ZigzagWitness(homotopy.functors[index:index + 2],
                             homotopy.steps[index:index + 1])
        piece = lift_homotopy(functor, current, step, endpoint='start',
                              report=report)
        result = concat_zigzag(result, piece.witness)
        kinds.extend(piece.kinds)
        flags.extend(piece.flags)
        current = piece.witness.end
    return LiftedHomotopy(result, kinds, flags)


def verify_lift(functor, lifted, homotopy, result, endpoint='start'):
    """
    Re-checks a lifted homotopy: the witness verifies, it projects onto
    ``homotopy`` arrow for arrow, it has ``lifted`` at ``endpoint`` and
    every flagged component passes its check.

    :return: ``(True, None)`` or ``(False, message)``.
    """
    witness = result.witness
    ok, problem = verify_zigzag(witness)
    if not ok:
        return False, problem
    if witness.length != homotopy.length:
        return False, "lift has {} steps, base has {}".format(
            witness.length, homotopy.length)
    for index, (item, base) in enumerate(zip(witness.functors,
                                             homotopy.functors)):
        if compose_functors(functor, item).key != base.key:
            return False, "functor {} does not project onto the base".format(
                index)
    for index, ((step, direction), (base_step, base_direction)) in enumerate(
            zip(witness.steps, homotopy.steps)):
        if direction != base_direction:
            return False, "step {} changes direction".format(index)
        for obj, arrow in step.components.items():
            if functor.on_arrows[arrow] != base_step.components[obj]:
                return False, (
                    "step {} component at {} does not project".format(
                        index, format_id(obj)))
        check = is_cartesian if result.kinds[index] == CARTESIAN \
            else is_op_cartesian
        for obj, flag in result.flags[index].items():
            if flag != check(functor, step.components[obj]):
                return False, "step {} flag at {} is wrong".format(
                    index, format_id(obj))
    end = witness.start if endpoint == 'start' else witness.end
    if end.key != lifted.key:
        return False, "lift does not have G at its {}".format(endpoint)
    return True, None
