import itertools
import logging

import networkx as nx

from fincat import budget as budgets
from fincat.errors import (
    AssociativityViolation,
    DanglingEndpoint,
    DomainMismatch,
    FunctorViolation,
    MissingComposite,
    UnitViolation,
    ValidationError,
)

from . import FinCategory, FinFunctor, NatTrans, format_id, identity_id


log = logging.getLogger(__name__)


def build_category(name, objects, arrows, composites, identities=None,
                   check=True):
    """
    Builds a :class:`~fincat.categories.FinCategory`, inserting identity
    arrows and identity composites.

    :param list objects: Object ids, in canonical order.
    :param list arrows:
        ``(arrow, source, target)`` triples of the non-identity arrows, in
        canonical order.
    :param dict composites:
        ``(second, first) -> result`` for every composable pair of
        non-identity arrows. Results may be identity arrows.
    :param dict identities:
        Optional ``object -> identity arrow id``. Defaults to the reserved
        ``id:<object>`` ids.
    :param bool check:
        Verify totality, endpoints, unit laws and associativity. Only
        constructions that are correct by construction pass ``False``.
    """
    objects = list(objects)
    if len(set(objects)) != len(objects):
        raise ValidationError("Duplicate object ids in {}".format(name))
    if identities is None:
        identities = dict((obj, identity_id(obj)) for obj in objects)

    object_set = set(objects)
    all_arrows = [identities[obj] for obj in objects]
    src = dict((identities[obj], obj) for obj in objects)
    tgt = dict((identities[obj], obj) for obj in objects)
    for arrow, source, target in arrows:
        if arrow in src:
            raise ValidationError(
                "Arrow id {} is reserved or duplicated in {}".format(
                    format_id(arrow), name))
        for endpoint in (source, target):
            if endpoint not in object_set:
                raise DanglingEndpoint(
                    "Arrow {} has endpoint {} which is not an object "
                    "of {}".format(format_id(arrow), format_id(endpoint),
                                   name))
        all_arrows.append(arrow)
        src[arrow] = source
        tgt[arrow] = target

    comp = {}
    for arrow in all_arrows:
        comp[(identities[tgt[arrow]], arrow)] = arrow
        comp[(arrow, identities[src[arrow]])] = arrow

    for (second, first), result in composites.items():
        for part in (second, first, result):
            if part not in src:
                raise DanglingEndpoint(
                    "Composite {} o {} = {} mentions unknown arrow {}".format(
                        format_id(second), format_id(first),
                        format_id(result), format_id(part)))
        if tgt[first] != src[second]:
            raise ValidationError(
                "Composite given for non-composable pair {} o {}".format(
                    format_id(second), format_id(first)))
        if src[result] != src[first] or tgt[result] != tgt[second]:
            raise DanglingEndpoint(
                "Composite {} o {} = {} has wrong endpoints".format(
                    format_id(second), format_id(first), format_id(result)))
        known = comp.get((second, first))
        if known is not None and known != result:
            raise UnitViolation(
                "Composite {} o {} must be {} by the unit laws, got {}".format(
                    format_id(second), format_id(first), format_id(known),
                    format_id(result)))
        comp[(second, first)] = result

    category = FinCategory(name, objects, all_arrows, src, tgt,
                           identities, comp)
    if check:
        _check_category(category)
    return category


def _check_units(category):
    for obj in category.objects:
        identity = category.identity[obj]
        if category.src[identity] != obj or category.tgt[identity] != obj:
            raise UnitViolation("Identity {} of {} is not a loop at it".format(
                format_id(identity), format_id(obj)))
    for arrow in category.arrows:
        left = category.identity[category.tgt[arrow]]
        right = category.identity[category.src[arrow]]
        for pair in ((left, arrow), (arrow, right)):
            if category.comp.get(pair, arrow) != arrow:
                raise UnitViolation(
                    "{} o {} is {} instead of {} in {}".format(
                        format_id(pair[0]), format_id(pair[1]),
                        format_id(category.comp[pair]), format_id(arrow),
                        category.name))


def _check_category(category):
    _check_units(category)
    for first in category.arrows:
        for second in category.outgoing[category.tgt[first]]:
            if (second, first) not in category.comp:
                raise MissingComposite(
                    "No composite for {} o {} in {}".format(
                        format_id(second), format_id(first), category.name))

    for first in category.arrows:
        for second in category.outgoing[category.tgt[first]]:
            second_first = category.comp[(second, first)]
            for third in category.outgoing[category.tgt[second]]:
                left = category.comp[(third, second_first)]
                right = category.comp[
                    (category.comp[(third, second)], first)]
                if left != right:
                    raise AssociativityViolation(
                        "{h} o ({g} o {f}) = {left} but ({h} o {g}) o {f} = "
                        "{right} in {name}".format(
                            h=format_id(third), g=format_id(second),
                            f=format_id(first), left=format_id(left),
                            right=format_id(right), name=category.name))


def validate_category(raw):
    """
    Validates a category description in the category JSON schema::

        {"name": str, "objects": [str],
         "arrows": [{"id": str, "src": str, "tgt": str}],
         "compose": [{"second": str, "first": str, "equals": str}]}

    Identities are implicit and named ``id:<object>``. A
    :class:`~fincat.categories.FinCategory` is checked in full: unit laws,
    totality and associativity.

    :return: :class:`~fincat.categories.FinCategory`
    """
    if isinstance(raw, FinCategory):
        _check_category(raw)
        return raw
    try:
        name = raw.get("name", "C")
        objects = [str(obj) for obj in raw["objects"]]
        arrows = [(str(arrow["id"]), str(arrow["src"]), str(arrow["tgt"]))
                  for arrow in raw.get("arrows", [])]
        composites = {}
        for entry in raw.get("compose", []):
            key = (str(entry["second"]), str(entry["first"]))
            if key in composites:
                raise ValidationError(
                    "Composite {} o {} listed twice".format(*key))
            composites[key] = str(entry["equals"])
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValidationError(
            "Malformed category description: missing or bad {}".format(exc))
    for arrow, _, _ in arrows:
        if arrow.startswith('id:'):
            raise ValidationError(
                "Arrow id {} uses the reserved identity prefix".format(arrow))
    return build_category(name, objects, arrows, composites)


def functor_violation(functor):
    """
    :return:
        A message locating the first violated functor law, or ``None`` when
        ``functor`` is a functor.
    """
    dom, cod = functor.dom, functor.cod
    for obj in dom.objects:
        if obj not in functor.on_objects:
            return "object {} has no image".format(format_id(obj))
        if functor.on_objects[obj] not in cod.object_index:
            return "image of object {} is not an object of {}".format(
                format_id(obj), cod.name)
    for arrow in dom.arrows:
        if arrow not in functor.on_arrows:
            return "arrow {} has no image".format(format_id(arrow))
        image = functor.on_arrows[arrow]
        if image not in cod.arrow_index:
            return "image of arrow {} is not an arrow of {}".format(
                format_id(arrow), cod.name)
        if (cod.src[image] != functor.on_objects[dom.src[arrow]] or
                cod.tgt[image] != functor.on_objects[dom.tgt[arrow]]):
            return ("arrow {} is sent to {} whose endpoints do not "
                    "match".format(format_id(arrow), format_id(image)))
    for obj in dom.objects:
        image = functor.on_arrows[dom.identity[obj]]
        if image != cod.identity[functor.on_objects[obj]]:
            return "identity of {} is not preserved".format(format_id(obj))
    for (second, first), result in dom.comp.items():
        expected = cod.comp[(functor.on_arrows[second],
                             functor.on_arrows[first])]
        if functor.on_arrows[result] != expected:
            return "composite {} o {} is not preserved".format(
                format_id(second), format_id(first))
    return None


def validate_functor(functor):
    """
    Checks endpoint, identity and composition preservation.

    :raises: :class:`~fincat.errors.FunctorViolation` naming the arrow.
    :return: ``functor``
    """
    problem = functor_violation(functor)
    if problem is not None:
        raise FunctorViolation("{!r}: {}".format(functor, problem))
    return functor


def functor_from_maps(dom, cod, on_objects, on_arrows, name=None,
                      check=True):
    """
    Creates a functor, deriving identity images that were left out.
    """
    on_arrows = dict(on_arrows)
    for obj in dom.objects:
        identity = dom.identity[obj]
        if identity not in on_arrows and obj in on_objects:
            target = on_objects[obj]
            if target in cod.identity:
                on_arrows[identity] = cod.identity[target]
    functor = FinFunctor(dom, cod, dict(on_objects), on_arrows, name=name)
    if check:
        validate_functor(functor)
    return functor


def nat_trans_violation(source, target, components):
    """
    :return:
        A message locating the first failing component or naturality
        square, or ``None``.
    """
    if source.dom != target.dom or source.cod != target.cod:
        return "functors {!r} and {!r} are not parallel".format(
            source, target)
    dom, cod = source.dom, source.cod
    for obj in dom.objects:
        component = components.get(obj)
        if component is None or component not in cod.arrow_index:
            return "no component at {}".format(format_id(obj))
        if (cod.src[component] != source.on_objects[obj] or
                cod.tgt[component] != target.on_objects[obj]):
            return "component {} at {} has wrong endpoints".format(
                format_id(component), format_id(obj))
    for arrow in dom.arrows:
        before = components[dom.src[arrow]]
        after = components[dom.tgt[arrow]]
        left = cod.comp[(target.on_arrows[arrow], before)]
        right = cod.comp[(after, source.on_arrows[arrow])]
        if left != right:
            return "naturality square of arrow {} fails".format(
                format_id(arrow))
    return None


def validate_nat_trans(transformation):
    """
    :raises: :class:`~fincat.errors.DomainMismatch` or
        :class:`~fincat.errors.FunctorViolation`.
    :return: ``transformation``
    """
    source, target = transformation.source, transformation.target
    if source.dom != target.dom or source.cod != target.cod:
        raise DomainMismatch(
            "Natural transformation between non-parallel functors "
            "{!r} and {!r}".format(source, target))
    problem = nat_trans_violation(source, target, transformation.components)
    if problem is not None:
        raise FunctorViolation(problem)
    return transformation


def identity_nat_trans(functor):
    return NatTrans(functor, functor, dict(
        (obj, functor.cod.identity[functor.on_objects[obj]])
        for obj in functor.dom.objects))


def product(factors, budget=None):
    """
    The product of ``factors`` with componentwise composition.

    :return: ``(category, projections)``; objects and arrows are tuples.
    :raises: :class:`~fincat.errors.SizeBudgetExceeded`
    """
    factors = list(factors)
    if not factors:
        raise ValidationError("A product needs at least one factor")
    budget = budgets.resolve(budget)
    name = ' x '.join(factor.name for factor in factors)
    n_objects, n_arrows = 1, 1
    for factor in factors:
        n_objects *= factor.object_count
        n_arrows *= factor.arrow_count
    budget.check_size(name, n_objects, n_arrows)

    objects = list(itertools.product(*[f.objects for f in factors]))
    identity = dict(
        (obj, tuple(f.identity[part] for f, part in zip(factors, obj)))
        for obj in objects)
    identity_set = set(identity.values())
    arrows = [identity[obj] for obj in objects]
    arrows.extend(
        arrow for arrow in itertools.product(*[f.arrows for f in factors])
        if arrow not in identity_set)
    src = dict((arrow, tuple(f.src[part] for f, part in zip(factors, arrow)))
               for arrow in arrows)
    tgt = dict((arrow, tuple(f.tgt[part] for f, part in zip(factors, arrow)))
               for arrow in arrows)

    comp = {}
    for first in arrows:
        followers = itertools.product(*[
            f.outgoing[part] for f, part in zip(factors, tgt[first])])
        for second in followers:
            comp[(second, first)] = tuple(
                f.comp[(g, h)] for f, g, h in zip(factors, second, first))

    category = FinCategory(name, objects, arrows, src, tgt, identity, comp)
    projections = []
    for index, factor in enumerate(factors):
        projections.append(FinFunctor(
            category, factor,
            dict((obj, obj[index]) for obj in objects),
            dict((arrow, arrow[index]) for arrow in arrows),
            name='p{}'.format(index + 1)))
    log.debug("built product {} with {} objects and {} arrows".format(
        name, n_objects, n_arrows))
    return category, projections


def power(category, n, budget=None):
    """
    ``category`` to the ``n``-th power with its ``n`` projections.
    """
    return product([category] * n, budget=budget)


def disjoint_union(factors, name=None):
    """
    The coproduct of ``factors``; objects and arrows are tagged with the
    index of their summand.
    """
    objects, arrows, src, tgt, identity, comp = [], [], {}, {}, {}, {}
    for index, factor in enumerate(factors):
        for obj in factor.objects:
            objects.append((index, obj))
            identity[(index, obj)] = (index, factor.identity[obj])
    for index, factor in enumerate(factors):
        for arrow in factor.arrows:
            tagged = (index, arrow)
            arrows.append(tagged)
            src[tagged] = (index, factor.src[arrow])
            tgt[tagged] = (index, factor.tgt[arrow])
        for (second, first), result in factor.comp.items():
            comp[((index, second), (index, first))] = (index, result)
    ordered = [identity[obj] for obj in objects]
    identity_set = set(ordered)
    ordered.extend(arrow for arrow in arrows if arrow not in identity_set)
    name = name or ' + '.join(factor.name for factor in factors)
    return FinCategory(name, objects, ordered, src, tgt, identity, comp)


def opposite(category):
    """
    Reverses every arrow. Ids are kept, so ``opposite(opposite(C)) == C``.
    """
    if category.name.endswith('^op'):
        name = category.name[:-len('^op')]
    else:
        name = category.name + '^op'
    comp = dict(((first, second), result)
                for (second, first), result in category.comp.items())
    return FinCategory(name, category.objects, category.arrows,
                       dict(category.tgt), dict(category.src),
                       dict(category.identity), comp)


def opposite_functor(functor, dom=None, cod=None):
    """
    ``P^op: E^op -> B^op``. Pass already built opposites to share them.
    """
    return FinFunctor(dom if dom is not None else opposite(functor.dom),
                      cod if cod is not None else opposite(functor.cod),
                      functor.on_objects, functor.on_arrows,
                      name=(functor.name or 'P') + '^op')


def compose_functors(second, first, name=None):
    """
    ``second o first``.

    :raises: :class:`~fincat.errors.DomainMismatch` unless
        ``cod(first) == dom(second)``.
    """
    if first.cod != second.dom:
        raise DomainMismatch(
            "Cannot compose {!r} after {!r}: {} is not {}".format(
                second, first, first.cod.name, second.dom.name))
    on_objects = dict((obj, second.on_objects[image])
                      for obj, image in first.on_objects.items())
    on_arrows = dict((arrow, second.on_arrows[image])
                     for arrow, image in first.on_arrows.items())
    if name is None and first.name and second.name:
        name = '{} o {}'.format(second.name, first.name)
    return FinFunctor(first.dom, second.cod, on_objects, on_arrows, name=name)


def _object_graph(category):
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(category.objects)
    graph.add_edges_from(
        (category.src[arrow], category.tgt[arrow])
        for arrow in category.non_identity_arrows())
    return graph


def is_connected(category):
    """
    ``True`` iff the undirected graph with one edge per arrow is connected.
    The empty category counts as connected.
    """
    if category.is_empty:
        return True
    return nx.is_weakly_connected(_object_graph(category))


def connected_components(category):
    """
    :return: Object sets of the connected components, in canonical order.
    """
    if category.is_empty:
        return []
    components = [
        sorted(component, key=category.object_index.__getitem__)
        for component in nx.weakly_connected_components(
            _object_graph(category))]
    return sorted(components,
                  key=lambda part: category.object_index[part[0]])
