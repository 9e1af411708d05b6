"""
Registered standard categories and functors. Each class is registered under
its ``name`` attribute on import, so ``standard_category('cyclic_group', 2)``
is equivalent to ``CyclicGroup(2).build()``.
"""
import itertools

from fincat.errors import BadParams

from . import FinFunctor, Standard, format_id
from .core import (
    build_category,
    functor_from_maps,
    power,
    product,
    validate_functor,
)


class StandardCategory(Standard):
    kind = 'category'


class StandardFunctor(Standard):
    kind = 'functor'


def _count(value, what, minimum=0):
    if not isinstance(value, int) or isinstance(value, bool) or \
            value < minimum:
        raise BadParams("{} must be an integer >= {}, got {!r}".format(
            what, minimum, value))
    return value


class Point(StandardCategory):
    """
    The terminal category: one object, no non-identity arrows.
    """
    name = 'point'

    def build(self):
        return build_category('point', ['*'], [], {})


class Discrete(StandardCategory):
    """
    ``n`` objects and identities only.
    """
    name = 'discrete'

    def __init__(self, n):
        self.n = _count(n, 'discrete size')

    def build(self):
        return build_category(
            'discrete{}'.format(self.n),
            [str(index) for index in range(self.n)], [], {})


class Interval(StandardCategory):
    """
    An interval with an arbitrary direction pattern: arrow ``s<i>`` goes
    ``i -> i+1`` when ``directions[i] == 'fwd'`` and ``i+1 -> i`` when it is
    ``'bwd'``. Homotopy witnesses with mixed step directions are indexed by
    these categories.
    """
    name = 'interval'

    def __init__(self, directions, name=None):
        directions = list(directions)
        for direction in directions:
            if direction not in ('fwd', 'bwd'):
                raise BadParams(
                    "Interval directions are 'fwd' or 'bwd', got {!r}".format(
                        direction))
        self.directions = directions
        self.label = name or 'I[{}]'.format(','.join(directions))

    def build(self):
        objects = [str(index) for index in range(len(self.directions) + 1)]
        arrows = []
        for index, direction in enumerate(self.directions):
            if direction == 'fwd':
                arrows.append(('s{}'.format(index), str(index),
                               str(index + 1)))
            else:
                arrows.append(('s{}'.format(index), str(index + 1),
                               str(index)))
        # No two non-identity arrows of an interval are composable.
        return build_category(self.label, objects, arrows, {})


class ZigzagInterval(StandardCategory):
    """
    ``0 -> 1 <- 2 -> ... m`` with ``m + 1`` objects.
    """
    name = 'zigzag_interval'

    def __init__(self, m):
        self.m = _count(m, 'interval length')

    def build(self):
        directions = ['fwd' if index % 2 == 0 else 'bwd'
                      for index in range(self.m)]
        return Interval(directions, name='I{}'.format(self.m)).build()


class Poset(StandardCategory):
    """
    A finite partial order as a category with one arrow ``a->b`` per
    related pair ``a <= b``.

    :param list elements: The elements, in canonical order.
    :param list relation: Pairs ``(a, b)`` meaning ``a <= b``.
    :param bool closure:
        Take the reflexive transitive closure of ``relation`` first, so a
        covering relation suffices.
    """
    name = 'poset'

    def __init__(self, elements, relation, closure=False, name='poset'):
        self.elements = [str(element) for element in elements]
        self.relation = [(str(a), str(b)) for a, b in relation]
        self.closure = closure
        self.label = name

    def _order(self):
        known = set(self.elements)
        order = set((element, element) for element in self.elements)
        for a, b in self.relation:
            if a not in known or b not in known:
                raise BadParams(
                    "Relation pair ({}, {}) mentions an unknown "
                    "element".format(a, b))
            order.add((a, b))
        if self.closure:
            changed = True
            while changed:
                changed = False
                for (a, b), (c, d) in itertools.product(list(order), repeat=2):
                    if b == c and (a, d) not in order:
                        order.add((a, d))
                        changed = True
        for (a, b), (c, d) in itertools.product(order, repeat=2):
            if b == c and (a, d) not in order:
                raise BadParams(
                    "Relation is not transitive: {} <= {} <= {}".format(
                        a, b, d))
            if a == d and b == c and a != b:
                raise BadParams(
                    "Relation is not antisymmetric: {} <= {} <= {}".format(
                        a, b, a))
        return order

    def build(self):
        order = self._order()
        arrows = []
        for a in self.elements:
            for b in self.elements:
                if a != b and (a, b) in order:
                    arrows.append(('{}->{}'.format(a, b), a, b))
        composites = {}
        for _, a, b in arrows:
            for _, c, d in arrows:
                if b == c:
                    result = ('{}->{}'.format(a, d) if a != d
                              else 'id:{}'.format(a))
                    composites[('{}->{}'.format(c, d),
                                '{}->{}'.format(a, b))] = result
        return build_category(self.label, self.elements, arrows, composites)


class DirectedChain(StandardCategory):
    """
    ``0 -> 1 -> ... -> n`` with all composites.
    """
    name = 'directed_chain'

    def __init__(self, n):
        self.n = _count(n, 'chain length')

    def build(self):
        elements = [str(index) for index in range(self.n + 1)]
        relation = [(a, b) for a, b in itertools.combinations(elements, 2)]
        return Poset(elements, relation, name='[{}]'.format(self.n)).build()


class CyclicGroup(StandardCategory):
    """
    The cyclic group of order ``k`` as a one object category with arrows
    ``g, g^2, ..., g^(k-1)``.
    """
    name = 'cyclic_group'

    def __init__(self, k):
        self.k = _count(k, 'group order', minimum=1)

    def _arrow(self, power):
        power %= self.k
        if power == 0:
            return 'id:*'
        return 'g' if power == 1 else 'g^{}'.format(power)

    def build(self):
        arrows = [(self._arrow(power), '*', '*')
                  for power in range(1, self.k)]
        composites = {}
        for first in range(1, self.k):
            for second in range(1, self.k):
                composites[(self._arrow(second), self._arrow(first))] = \
                    self._arrow(first + second)
        return build_category('Z/{}'.format(self.k), ['*'], arrows,
                              composites)


class Identity(StandardFunctor):
    name = 'identity'

    def __init__(self, category):
        self.category = category

    def build(self):
        category = self.category
        return FinFunctor(
            category, category,
            dict((obj, obj) for obj in category.objects),
            dict((arrow, arrow) for arrow in category.arrows),
            name='id')


class Constant(StandardFunctor):
    """
    Sends every object of ``dom`` to ``b`` and every arrow to ``id_b``.
    On an empty domain ``b`` may be ``None``.
    """
    name = 'constant'

    def __init__(self, dom, cod, b):
        if dom.objects and b not in cod.object_index:
            raise BadParams("{} is not an object of {}".format(
                format_id(b), cod.name))
        self.dom, self.cod, self.b = dom, cod, b

    def build(self):
        dom, cod, b = self.dom, self.cod, self.b
        if not dom.objects:
            return FinFunctor(dom, cod, {}, {}, name='const')
        return FinFunctor(
            dom, cod,
            dict((obj, b) for obj in dom.objects),
            dict((arrow, cod.identity[b]) for arrow in dom.arrows),
            name='const({})'.format(format_id(b)))


class Inclusion(StandardFunctor):
    """
    The inclusion of a category whose ids are a subset of ``parent``'s
    (every standalone subcategory and fiber is such a category).
    """
    name = 'inclusion'

    def __init__(self, sub, parent):
        self.sub, self.parent = sub, parent

    def build(self):
        sub, parent = self.sub, self.parent
        functor = FinFunctor(
            sub, parent,
            dict((obj, obj) for obj in sub.objects),
            dict((arrow, arrow) for arrow in sub.arrows),
            name='incl')
        for obj in sub.objects:
            if obj not in parent.object_index:
                raise BadParams("{} is not an object of {}".format(
                    format_id(obj), parent.name))
        for arrow in sub.arrows:
            if arrow not in parent.arrow_index:
                raise BadParams("{} is not an arrow of {}".format(
                    format_id(arrow), parent.name))
        try:
            return validate_functor(functor)
        except ValueError as exc:
            raise BadParams(str(exc))


class Diagonal(StandardFunctor):
    """
    ``c -> (c, ..., c)`` into the ``n``-th power.
    """
    name = 'diagonal'

    def __init__(self, category, n=2, budget=None, target=None):
        self.category = category
        self.n = _count(n, 'diagonal arity', minimum=1)
        self.budget = budget
        self.target = target

    def build(self):
        category, n = self.category, self.n
        target = self.target
        if target is None:
            target = power(category, n, budget=self.budget)[0]
        return FinFunctor(
            category, target,
            dict((obj, (obj,) * n) for obj in category.objects),
            dict((arrow, (arrow,) * n) for arrow in category.arrows),
            name='diag{}'.format(n))


class Projection(StandardFunctor):
    """
    The ``index``-th (1-based) projection out of the product of
    ``factors``.
    """
    name = 'projection'

    def __init__(self, factors, index, budget=None):
        factors = list(factors)
        if not 1 <= index <= len(factors):
            raise BadParams("Projection index {} out of range 1..{}".format(
                index, len(factors)))
        self.factors, self.index, self.budget = factors, index, budget

    def build(self):
        _, projections = product(self.factors, budget=self.budget)
        return projections[self.index - 1]


class Pairing(StandardFunctor):
    """
    ``(F, G): C -> D x E`` with ``p1 o (F, G) = F`` and ``p2 o (F, G) = G``.
    """
    name = 'pairing'

    def __init__(self, first, second, budget=None):
        if first.dom != second.dom:
            raise BadParams("Pairing needs functors with a common domain")
        self.first, self.second, self.budget = first, second, budget

    def build(self):
        first, second = self.first, self.second
        target, _ = product([first.cod, second.cod], budget=self.budget)
        dom = first.dom
        return FinFunctor(
            dom, target,
            dict((obj, (first.on_objects[obj], second.on_objects[obj]))
                 for obj in dom.objects),
            dict((arrow, (first.on_arrows[arrow], second.on_arrows[arrow]))
                 for arrow in dom.arrows),
            name='({},{})'.format(first.name or 'F', second.name or 'G'))


class BasedInclusion(StandardFunctor):
    """
    ``i1(c) = (c, c0)`` (``which=1``) or ``i2(c) = (c0, c)`` (``which=2``)
    into ``C x C``.
    """
    name = 'based_inclusion'

    def __init__(self, category, c0, which=1, budget=None, target=None):
        if c0 not in category.object_index:
            raise BadParams("{} is not an object of {}".format(
                format_id(c0), category.name))
        if which not in (1, 2):
            raise BadParams("based_inclusion needs which=1 or which=2")
        self.category, self.c0, self.which = category, c0, which
        self.budget, self.target = budget, target

    def build(self):
        category, c0 = self.category, self.c0
        target = self.target
        if target is None:
            target = power(category, 2, budget=self.budget)[0]
        base = category.identity[c0]
        if self.which == 1:
            objects = dict((obj, (obj, c0)) for obj in category.objects)
            arrows = dict((arrow, (arrow, base)) for arrow in category.arrows)
        else:
            objects = dict((obj, (c0, obj)) for obj in category.objects)
            arrows = dict((arrow, (base, arrow)) for arrow in category.arrows)
        return functor_from_maps(category, target, objects, arrows,
                                 name='i{}'.format(self.which), check=False)


def interval_category(directions):
    """
    Shorthand for ``standard_category('interval', directions)``.

    :return: :class:`~fincat.categories.FinCategory`
    """
    return Interval(directions).build()
