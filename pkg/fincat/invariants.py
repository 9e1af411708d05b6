"""
Exact homotopic distance, LS-category and categorical complexity.

Each invariant is the least ``n`` such that ``n + 1`` subcategories with a
property form a geometric cover. The property is always inherited by
subcategories, so only the maximal subcategories having it matter: they are
computed once and the smallest covering subfamily is then found by
iterative deepening over its size. ``INF`` is returned exactly when the
whole maximal family is not a cover.
"""
import itertools
import logging

from fincat import budget as budgets
from fincat.categories import format_id, standard_functor
from fincat.categories.core import compose_functors, power
from fincat.covers import (
    GeometricCover,
    is_geometric_cover,
    is_homotopy_domain,
    maximal_subcategories,
    restrict,
)
from fincat.errors import BadParams, DomainMismatch
from fincat.extnat import INF, ExtNat
from fincat.homotopy import (
    find_homotopy,
    homotopic,
    homotopic_to_constant,
    verify_zigzag,
)


log = logging.getLogger(__name__)


class MemberCertificate(object):
    """
    Why one cover member has the required property.

    :param list homotopies: :class:`~fincat.homotopy.ZigzagWitness` values.
        For a distance, one per functor after the first, from the first
        restricted functor to that one. Otherwise a single witness starting
        at the inclusion of the member.
    :param constant: For LS-category, the object of the constant functor.
    :param section: For complexity, the functor ``s`` with
        ``Delta o s ~ inclusion``.
    """
    def __init__(self, homotopies, constant=None, section=None):
        self.homotopies = list(homotopies)
        self.constant = constant
        self.section = section

    def to_json(self):
        result = {"homotopies": [witness.to_json()
                                 for witness in self.homotopies]}
        if self.constant is not None:
            result["constant"] = format_id(self.constant)
        if self.section is not None:
            result["section"] = self.section.to_json(inline=False)
        return result


class InvariantResult(object):
    """
    A value together with what proves it.

    A finite value ``k`` comes with a cover of ``k + 1`` members and one
    :class:`MemberCertificate` per member. ``INF`` comes with the maximal
    family (``domains``) and a chain (``uncovered``) lying in none of
    them.

    :param str kind: ``'distance'``, ``'ccat'`` or ``'ctc'``.
    :param subject: The functors of a distance, the category of a
        LS-category, or ``(category, n)`` for a complexity.
    :param parent: The category being covered.
    """
    def __init__(self, kind, subject, parent, value, cover=None,
                 witnesses=None, domains=None, uncovered=None):
        self.kind = kind
        self.subject = subject
        self.parent = parent
        self.value = value
        self.cover = cover
        self.witnesses = list(witnesses or [])
        self.domains = list(domains or [])
        self.uncovered = uncovered

    @property
    def label(self):
        if self.kind == 'distance':
            return 'cD'
        if self.kind == 'ccat':
            return 'ccat'
        _, n = self.subject
        return 'cTC' if n == 2 else 'cTC_{}'.format(n)

    def to_json(self):
        result = {
            "invariant": self.label,
            "value": self.value.to_json(),
            "cover": self.cover.to_json() if self.cover is not None else None,
            "witnesses": [item.to_json() for item in self.witnesses],
        }
        if self.kind == 'distance':
            result["functors"] = [functor.to_json()
                                  for functor in self.subject]
        elif self.kind == 'ccat':
            result["category"] = self.subject.to_json()
        else:
            category, n = self.subject
            result["category"] = category.to_json()
            result["n"] = n
        if self.uncovered is not None:
            result["domains"] = [member.to_json() for member in self.domains]
            result["uncovered_chain"] = self.uncovered.to_json()
        return result

    def __repr__(self):
        return '<InvariantResult {} = {}>'.format(self.label, self.value)


def _minimum_cover(parent, domains, budget, what):
    """
    :return: ``(members, None)`` for the canonically first smallest
        covering subfamily of ``domains``, or ``(None, chain)``.
    """
    covers, chain = is_geometric_cover(parent, domains)
    if not covers:
        log.info("{}: maximal family misses chain {}".format(
            what, chain.describe()))
        return None, chain
    meter = budget.meter(what)
    for size in range(1, len(domains) + 1):
        for family in itertools.combinations(domains, size):
            meter.tick()
            if is_geometric_cover(parent, family)[0]:
                return list(family), None
    raise AssertionError("the full family covers but no subfamily does")


def _result(kind, subject, parent, domains, certify, budget):
    what = '{} of {}'.format(kind, parent.name)
    members, chain = _minimum_cover(parent, domains, budget, what)
    if members is None:
        return InvariantResult(kind, subject, parent, INF, domains=domains,
                               uncovered=chain)
    witnesses = [certify(member) for member in members]
    value = ExtNat(len(members) - 1)
    log.info("{} = {}".format(what, value))
    return InvariantResult(kind, subject, parent, value,
                           cover=GeometricCover(parent, members),
                           witnesses=witnesses, domains=domains)


def _check_functors(functors):
    if len(functors) < 2:
        raise BadParams("A distance needs at least two functors")
    first = functors[0]
    for functor in functors[1:]:
        if functor.dom != first.dom or functor.cod != first.cod:
            raise DomainMismatch(
                "Functors {!r} and {!r} do not share domain and "
                "codomain".format(first, functor))


def distance(functors, budget=None):
    """
    The homotopic distance of two or more functors with common domain and
    codomain: the least ``n`` such that ``n + 1`` subcategories, on each of
    which all the functors become homotopic, cover the domain.

    :raises: :class:`~fincat.errors.DomainMismatch`,
        :class:`~fincat.errors.SizeBudgetExceeded`
    :return: :class:`InvariantResult`
    """
    functors = tuple(functors)
    _check_functors(functors)
    budget = budgets.resolve(budget)
    parent = functors[0].dom
    domains = _domains('distance', functors, parent, budget)

    def certify(member):
        restricted = [restrict(functor, member) for functor in functors]
        return MemberCertificate([
            homotopic(restricted[0], other, budget=budget)
            for other in restricted[1:]])

    return _result('distance', functors, parent, domains, certify, budget)


def _is_diagonal(functor):
    """
    ``True`` when every object and arrow image, a tuple, has all entries
    equal: the functor factors through the diagonal.
    """
    for image in functor.on_objects.values():
        if len(set(image)) != 1:
            return False
    for image in functor.on_arrows.values():
        if len(set(image)) != 1:
            return False
    return True


def _predicate(kind, subject, budget):
    if kind == 'distance':
        return lambda member: is_homotopy_domain(subject, member,
                                                 budget=budget)
    if kind == 'ccat':
        return lambda member: homotopic_to_constant(
            member.inclusion(), budget=budget) is not None
    return lambda member: find_homotopy(
        member.inclusion(), _is_diagonal, budget=budget,
        what='Farber section on {!r}'.format(member)) is not None


def _domains(kind, subject, parent, budget):
    return maximal_subcategories(
        parent, _predicate(kind, subject, budget), budget=budget,
        what='{} domains in {}'.format(kind, parent.name))


def ccat_direct(category, budget=None):
    """
    The (normalized) LS-category: least ``n`` with a cover by ``n + 1``
    subcategories whose inclusions are homotopic to constant functors.
    Different members may use different constants.

    :return: :class:`InvariantResult`
    """
    budget = budgets.resolve(budget)
    domains = _domains('ccat', category, category, budget)

    def certify(member):
        constant, witness = homotopic_to_constant(member.inclusion(),
                                                  budget=budget)
        return MemberCertificate([witness], constant=constant)

    return _result('ccat', category, category, domains, certify, budget)


def ctc_n_direct(category, n, budget=None):
    """
    The higher categorical complexity: least ``k`` with a cover of the
    ``n``-th power by ``k + 1`` subcategories ``U`` each admitting
    ``s: U -> C`` with ``Delta_n o s`` homotopic to the inclusion of ``U``.

    :return: :class:`InvariantResult`
    """
    if not isinstance(n, int) or n < 2:
        raise BadParams("Complexity needs n >= 2, got {!r}".format(n))
    budget = budgets.resolve(budget)
    parent, projections = power(category, n, budget=budget)
    subject = (category, n)
    domains = _domains('ctc', subject, parent, budget)

    def certify(member):
        witness = find_homotopy(member.inclusion(), _is_diagonal,
                                budget=budget)
        section = compose_functors(projections[0], witness.end, name='s')
        return MemberCertificate([witness], section=section)

    return _result('ctc', subject, parent, domains, certify, budget)


def ctc_direct(category, budget=None):
    """
    Categorical complexity, ``ctc_n_direct(category, 2)``.
    """
    return ctc_n_direct(category, 2, budget=budget)


def ccat_by_distance(category, base=None, budget=None):
    """
    ``cD(id, const_base)``, equal to the LS-category on connected
    categories. ``base`` defaults to the first object.
    """
    if base is None:
        base = category.objects[0]
    identity = standard_functor('identity', category)
    constant = standard_functor('constant', category, category, base)
    return distance([identity, constant], budget=budget)


def ccat_by_inclusions(category, base=None, budget=None):
    """
    ``cD(i1, i2)`` for the based inclusions into ``C x C``.
    """
    if base is None:
        base = category.objects[0]
    square, _ = power(category, 2, budget=budget)
    first = standard_functor('based_inclusion', category, base, 1,
                             target=square)
    second = standard_functor('based_inclusion', category, base, 2,
                              target=square)
    return distance([first, second], budget=budget)


def ctc_by_distance(category, n=2, budget=None):
    """
    ``cD(p1, ..., pn)`` for the projections out of the ``n``-th power.
    """
    _, projections = power(category, n, budget=budget)
    return distance(projections, budget=budget)


def replay(result, budget=None):
    """
    Re-verifies ``result`` independently of how it was produced: the cover
    size matches the value, the cover passes the automaton and every
    certificate verifies with the right endpoints. For ``INF`` the maximal
    family is recomputed and the stored chain must be composable and lie in
    none of its members.

    :return: ``(True, None)`` or ``(False, message)``.
    """
    parent = result.parent
    if not result.value.is_finite:
        chain = result.uncovered
        if chain is None:
            return False, "infinite value without an uncovered chain"
        if not chain.is_composable():
            return False, "stored chain {} is not composable".format(
                chain.describe())
        domains = _domains(result.kind, result.subject, parent,
                           budgets.resolve(budget))
        for member in domains:
            if chain.lies_in(member):
                return False, "chain {} lies in the domain {}".format(
                    chain.describe(), member.to_json())
        return True, None

    cover = result.cover
    if cover is None or len(cover) != result.value.value + 1:
        return False, "{} = {} needs a cover of {} members".format(
            result.label, result.value, result.value.value + 1)
    if len(result.witnesses) != len(cover):
        return False, "{} members but {} certificates".format(
            len(cover), len(result.witnesses))
    covers, chain = is_geometric_cover(parent, cover.members)
    if not covers:
        return False, "chain {} is not covered".format(chain.describe())
    for index, (member, certificate) in enumerate(
            zip(cover.members, result.witnesses)):
        problem = _check_member(result, member, certificate)
        if problem is not None:
            return False, "member {}: {}".format(index, problem)
    return True, None


def _check_member(result, member, certificate):
    if result.kind == 'distance':
        restricted = [restrict(functor, member) for functor in result.subject]
        if len(certificate.homotopies) != len(restricted) - 1:
            return "expected {} homotopies".format(len(restricted) - 1)
        for other, witness in zip(restricted[1:], certificate.homotopies):
            ok, problem = verify_zigzag(witness, start=restricted[0],
                                        end=other)
            if not ok:
                return problem
        return None

    if len(certificate.homotopies) != 1:
        return "expected one homotopy"
    (witness,) = certificate.homotopies
    inclusion = member.inclusion()
    if member.is_empty:
        end = inclusion
    elif result.kind == 'ccat':
        end = standard_functor('constant', member.as_category(),
                               result.parent, certificate.constant)
    else:
        category, n = result.subject
        if certificate.section is None:
            return "no section"
        diagonal = standard_functor('diagonal', category, n,
                                    target=result.parent)
        end = compose_functors(diagonal, certificate.section)
    ok, problem = verify_zigzag(witness, start=inclusion, end=end)
    return problem if not ok else None

