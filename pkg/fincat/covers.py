"""
Subcategories, geometric covers and maximal subcategories with a property.

A family of subcategories is a geometric cover when every composable chain
of arrows lies entirely inside one member. Chains are unbounded as soon as
there is an endomorphism, so :func:`is_geometric_cover` runs a subset
automaton instead of enumerating them: its states are pairs of the current
object and the set of members that still contain every arrow read so far.
"""
import heapq
import logging

from fincat import budget as budgets
from fincat.categories import (
    FinCategory,
    format_id,
    standard_functor,
)
from fincat.categories.core import compose_functors
from fincat.errors import DomainMismatch, NotASubcategory
from fincat.homotopy import homotopic


log = logging.getLogger(__name__)


class Subcategory(object):
    """
    A composition closed set of arrows of ``parent`` containing the
    identities of its objects. Determined by its arrow set.

    :param parent: :class:`~fincat.categories.FinCategory`
    :param objects: Object ids. Their identities are added.
    :param arrows: Arrow ids.
    :param bool check: Raise
        :class:`~fincat.errors.NotASubcategory` unless endpoints and
        composites stay inside.
    """
    def __init__(self, parent, objects, arrows, check=True, name=None):
        self.parent = parent
        self.name = name
        objects = set(objects)
        arrow_set = set(arrows)
        for arrow in arrow_set:
            if arrow not in parent.arrow_index:
                raise NotASubcategory("{} is not an arrow of {}".format(
                    format_id(arrow), parent.name))
        for obj in objects:
            if obj not in parent.object_index:
                raise NotASubcategory("{} is not an object of {}".format(
                    format_id(obj), parent.name))
            arrow_set.add(parent.identity[obj])
        if check:
            _check_closed(parent, objects, arrow_set)
        self.objects = tuple(obj for obj in parent.objects if obj in objects)
        self.arrows = tuple(
            arrow for arrow in parent.arrows if arrow in arrow_set)
        self.arrow_set = frozenset(arrow_set)
        self.object_set = frozenset(objects)
        self._category = None
        self._inclusion = None

    @classmethod
    def from_arrows(cls, parent, arrows, check=False):
        """
        Builds the subcategory whose objects are the endpoints of
        ``arrows``.
        """
        arrows = set(arrows)
        objects = set(parent.src[arrow] for arrow in arrows)
        objects.update(parent.tgt[arrow] for arrow in arrows)
        return cls(parent, objects, arrows, check=check)

    @property
    def key(self):
        """
        Sorted parent indices of the arrows; the canonical order of
        subcategories is the lexicographic order of their keys.
        """
        return tuple(self.parent.arrow_index[arrow] for arrow in self.arrows)

    @property
    def size(self):
        return len(self.arrows)

    @property
    def is_empty(self):
        return not self.objects

    def non_identity_arrows(self):
        return tuple(arrow for arrow in self.arrows
                     if arrow not in self.parent.identities)

    def issubset(self, other):
        return self.arrow_set <= other.arrow_set

    def as_category(self):
        """
        The standalone category, keeping the parent's ids and order.
        """
        if self._category is None:
            parent = self.parent
            arrows = self.arrow_set
            comp = dict(
                (pair, result) for pair, result in parent.comp.items()
                if pair[0] in arrows and pair[1] in arrows)
            name = self.name or '{}|{{{}}}'.format(parent.name, ','.join(
                format_id(obj) for obj in self.objects))
            self._category = FinCategory(
                name,
                self.objects, self.arrows,
                dict((arrow, parent.src[arrow]) for arrow in self.arrows),
                dict((arrow, parent.tgt[arrow]) for arrow in self.arrows),
                dict((obj, parent.identity[obj]) for obj in self.objects),
                comp)
        return self._category

    def inclusion(self):
        if self._inclusion is None:
            self._inclusion = standard_functor(
                'inclusion', self.as_category(), self.parent)
        return self._inclusion

    def __eq__(self, other):
        if not isinstance(other, Subcategory):
            return NotImplemented
        return (self.arrow_set == other.arrow_set and
                self.parent == other.parent)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.arrow_set)

    def to_json(self):
        parent = self.parent
        return {
            "objects": [format_id(obj) for obj in self.objects],
            "arrows": [parent.json_arrow(arrow)
                       for arrow in self.non_identity_arrows()],
        }

    def __repr__(self):
        return '<Subcategory of {}: {} objects, {} arrows>'.format(
            self.parent.name, len(self.objects), len(self.arrows))


def _check_closed(parent, objects, arrows):
    for arrow in arrows:
        for endpoint in (parent.src[arrow], parent.tgt[arrow]):
            if endpoint not in objects:
                raise NotASubcategory(
                    "Arrow {} has endpoint {} outside the subcategory".format(
                        format_id(arrow), format_id(endpoint)))
    violation = _first_violation(parent, arrows)
    if violation is not None:
        second, first = violation
        raise NotASubcategory(
            "Composite {} o {} = {} is missing from the subcategory".format(
                format_id(second), format_id(first),
                format_id(parent.comp[(second, first)])))


def _first_violation(parent, arrows):
    """
    The first pair of ``arrows`` (in canonical order) whose composite is
    not in ``arrows``, or ``None``.
    """
    for first in parent.arrows:
        if first not in arrows:
            continue
        for second in parent.outgoing[parent.tgt[first]]:
            if second in arrows and \
                    parent.comp[(second, first)] not in arrows:
                return second, first
    return None


def full_subcategory(category):
    return Subcategory(category, category.objects, category.arrows,
                       check=False)


def empty_subcategory(category):
    return Subcategory(category, (), (), check=False)


def generated_subcategory(category, seed_objects=(), seed_arrows=()):
    """
    The least subcategory containing the seeds: endpoints and identities
    are added, then composites until nothing changes.
    """
    objects = set(seed_objects)
    arrows = set(seed_arrows)
    for arrow in arrows:
        objects.add(category.src[arrow])
        objects.add(category.tgt[arrow])
    arrows.update(category.identity[obj] for obj in objects)

    pending = list(arrows)
    while pending:
        arrow = pending.pop()
        pairs = [(second, arrow)
                 for second in category.outgoing[category.tgt[arrow]]]
        pairs.extend((arrow, first)
                     for first in category.incoming[category.src[arrow]])
        for second, first in pairs:
            if second in arrows and first in arrows:
                result = category.comp[(second, first)]
                if result not in arrows:
                    arrows.add(result)
                    pending.append(result)
    return Subcategory(category, objects, arrows, check=False)


def restrict(functor, subcategory):
    """
    ``functor`` precomposed with the inclusion of ``subcategory``.
    """
    name = '{}|U'.format(functor.name) if functor.name else None
    return compose_functors(functor, subcategory.inclusion(), name=name)


class Chain(object):
    """
    A composable sequence of arrows starting at ``start``. With no arrows it
    is the object ``start`` alone.
    """
    def __init__(self, parent, start, arrows):
        self.parent = parent
        self.start = start
        self.arrows = tuple(arrows)

    def is_composable(self):
        current = self.start
        for arrow in self.arrows:
            if self.parent.src[arrow] != current:
                return False
            current = self.parent.tgt[arrow]
        return True

    def lies_in(self, subcategory):
        if self.start not in subcategory.object_set:
            return False
        return all(arrow in subcategory.arrow_set for arrow in self.arrows)

    def to_json(self):
        return {
            "start": format_id(self.start),
            "arrows": [self.parent.json_arrow(arrow) for arrow in self.arrows],
        }

    def describe(self):
        if not self.arrows:
            return 'object {}'.format(format_id(self.start))
        return '({})'.format(', '.join(
            format_id(arrow) for arrow in self.arrows))

    def __repr__(self):
        return '<Chain {}>'.format(self.describe())


class GeometricCover(object):
    """
    An ordered family of subcategories of ``parent``. Being a cover is a
    property checked by :func:`is_geometric_cover`, not by the constructor.
    """
    def __init__(self, parent, members):
        self.parent = parent
        self.members = list(members)

    def __len__(self):
        return len(self.members)

    def check(self):
        return is_geometric_cover(self.parent, self.members)

    def to_json(self):
        return {
            "parent": self.parent.to_json(),
            "members": [member.to_json() for member in self.members],
        }


def is_geometric_cover(category, family):
    """
    Decides whether every chain of ``category``, of any length, lies in a
    member of ``family``.

    Breadth first search over the states ``(object, members)`` where
    ``members`` is the bit set of members containing the chain read so far.
    A chain is uncovered exactly when a state with no members is reachable.

    :return: ``(True, None)`` or ``(False, chain)`` with a shortest
        uncovered :class:`Chain`.
    """
    family = list(family)
    arrow_masks = dict((arrow, 0) for arrow in category.arrows)
    for index, member in enumerate(family):
        for arrow in member.arrow_set:
            arrow_masks[arrow] |= 1 << index

    parents = {}
    frontier = []
    for obj in category.objects:
        mask = arrow_masks[category.identity[obj]]
        if not mask:
            return False, Chain(category, obj, [])
        state = (obj, mask)
        if state not in parents:
            parents[state] = None
            frontier.append(state)

    outgoing = dict((obj, [arrow for arrow in category.outgoing[obj]
                           if arrow not in category.identities])
                    for obj in category.objects)
    while frontier:
        next_frontier = []
        for state in frontier:
            obj, mask = state
            for arrow in outgoing[obj]:
                following = (category.tgt[arrow], mask & arrow_masks[arrow])
                if following in parents:
                    continue
                parents[following] = (state, arrow)
                if not following[1]:
                    return False, _chain_to(category, parents, following)
                next_frontier.append(following)
        frontier = next_frontier
    log.debug("cover of {} by {} members checked over {} states".format(
        category.name, len(family), len(parents)))
    return True, None


def _chain_to(category, parents, state):
    arrows = []
    entry = parents[state]
    while entry is not None:
        state, arrow = entry
        arrows.append(arrow)
        entry = parents[state]
    arrows.reverse()
    return Chain(category, state[0], arrows)


def chains(category, max_length):
    """
    Every composable chain with at most ``max_length`` non-identity arrows,
    shortest first. Only practical for small categories.
    """
    current = [Chain(category, obj, []) for obj in category.objects]
    for _ in range(max_length + 1):
        following = []
        for chain in current:
            yield chain
            end = (category.tgt[chain.arrows[-1]] if chain.arrows
                   else chain.start)
            for arrow in category.outgoing[end]:
                if arrow not in category.identities:
                    following.append(
                        Chain(category, chain.start, chain.arrows + (arrow,)))
        current = following


def _without_object(category, arrows, obj):
    return frozenset(arrow for arrow in arrows
                     if category.src[arrow] != obj and
                     category.tgt[arrow] != obj)


def _avoiding(category, arrows, banned):
    """
    Composition closed subsets of ``arrows`` without ``banned``; every
    closed subset avoiding ``banned`` lies in one of them.
    """
    found = []
    seen = set()
    stack = [frozenset(arrows - {banned})]
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        violation = _first_violation(category, current)
        if violation is None:
            found.append(current)
            continue
        second, first = violation
        stack.append(current - {first})
        stack.append(current - {second})
    return [candidate for candidate in found
            if not any(candidate < other for other in found)]


def maximal_subcategories(category, predicate, budget=None,
                          what='maximal subcategories'):
    """
    Every inclusion maximal subcategory satisfying ``predicate``, which must
    be inherited by subcategories.

    Candidates are visited from the largest down. A candidate failing the
    predicate is replaced by the subcategories obtained by deleting one
    object, or by deleting one non-identity arrow and closing again, which
    between them contain every proper subcategory. Candidates inside an
    accepted one are skipped, so every accepted candidate is maximal.

    :return: Subcategories in canonical order.
    """
    budget = budgets.resolve(budget)
    meter = budget.meter(what)
    accepted = []

    def push(heap, arrows):
        subcategory = Subcategory.from_arrows(category, arrows)
        heapq.heappush(heap, (-len(arrows), subcategory.key, arrows))

    heap = []
    push(heap, frozenset(category.arrows))
    seen = set()
    while heap:
        _, _, arrows = heapq.heappop(heap)
        if arrows in seen:
            continue
        seen.add(arrows)
        if any(arrows <= member.arrow_set for member in accepted):
            continue
        meter.tick()
        candidate = Subcategory.from_arrows(category, arrows)
        if predicate(candidate):
            log.debug("{}: accepted {!r}".format(what, candidate))
            accepted.append(candidate)
            continue
        for obj in candidate.objects:
            push(heap, _without_object(category, arrows, obj))
        for arrow in candidate.non_identity_arrows():
            for smaller in _avoiding(category, arrows, arrow):
                push(heap, smaller)
    log.info("{}: {} maximal among {} candidates".format(
        what, len(accepted), len(seen)))
    return sorted(accepted, key=lambda member: member.key)


def is_homotopy_domain(functors, subcategory, budget=None):
    """
    ``True`` when all ``functors`` become homotopic once restricted to
    ``subcategory``.
    """
    restricted = [restrict(functor, subcategory) for functor in functors]
    first = restricted[0]
    return all(homotopic(first, other, budget=budget) is not None
               for other in restricted[1:])


def maximal_homotopy_domains(first, second, *others, budget=None):
    """
    Every inclusion maximal subcategory on which the given functors are
    pairwise homotopic. With two functors these are the maximal homotopy
    domains of the pair; every homotopy domain lies in one of them.

    :raises: :class:`~fincat.errors.DomainMismatch`,
        :class:`~fincat.errors.SizeBudgetExceeded`
    """
    functors = (first, second) + others
    for functor in functors[1:]:
        if functor.dom != first.dom or functor.cod != first.cod:
            raise DomainMismatch(
                "Functors {!r} and {!r} do not share domain and "
                "codomain".format(first, functor))
    return maximal_subcategories(
        first.dom,
        lambda candidate: is_homotopy_domain(functors, candidate,
                                             budget=budget),
        budget=budget, what='homotopy domains in {}'.format(first.dom.name))
