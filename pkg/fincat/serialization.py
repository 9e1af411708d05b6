"""
Reading the JSON schemas back into values, and writing reports.

A document is recognised by its keys: ``objects`` is a category,
``on_objects`` a functor, ``total``/``base``/``P`` a fibration bundle,
``members`` a cover, ``functors`` with ``steps`` a zigzag witness, ``value``
an invariant result and ``Pprime`` the input of the Varadarajan check.
Nested categories and functors are either inline or a path relative to the
file that mentions them.
"""
import json
import logging
import os

from fincat.categories import NatTrans, format_id
from fincat.categories.core import (
    functor_from_maps,
    power,
    validate_category,
)
from fincat.covers import Chain, GeometricCover, Subcategory
from fincat.errors import ParseError
from fincat.extnat import ExtNat
from fincat.homotopy import BACKWARD, FORWARD, ZigzagWitness
from fincat.invariants import InvariantResult, MemberCertificate
from fincat.verify import FibrationMorphism


log = logging.getLogger(__name__)


class VaradarajanInput(object):
    """
    Two morphisms between the same bi-fibrations and a base object.
    """
    def __init__(self, first, second, basepoint):
        self.first = first
        self.second = second
        self.basepoint = basepoint


def load_json(path):
    """
    :raises: :class:`~fincat.errors.ParseError` with the line of a syntax
        error.
    """
    try:
        with open(path) as handle:
            return json.load(handle)
    except (IOError, OSError) as exc:
        raise ParseError("cannot read file: {}".format(exc.strerror),
                         path=path)
    except ValueError as exc:
        raise ParseError("invalid JSON: {}".format(exc), path=path,
                         line=getattr(exc, 'lineno', None))


class _Context(object):
    """
    Where a document came from, for resolving relative references and for
    locating errors.
    """
    def __init__(self, path):
        self.path = path
        self.directory = os.path.dirname(os.path.abspath(path)) \
            if path is not None else os.getcwd()

    def error(self, message, field=None):
        return ParseError(message, path=self.path, field=field)

    def field(self, raw, name, kind=None):
        if not isinstance(raw, dict) or name not in raw:
            raise self.error("missing field", field=name)
        value = raw[name]
        if kind is not None and not isinstance(value, kind):
            raise self.error("expected {}".format(kind.__name__), field=name)
        return value

    def resolve(self, raw, field):
        """
        :return: ``(document, context)``, loading ``raw`` when it is a path.
        """
        if isinstance(raw, str):
            path = os.path.join(self.directory, raw)
            if not os.path.exists(path):
                raise self.error("referenced file {} does not exist".format(
                    raw), field=field)
            return load_json(path), _Context(path)
        if isinstance(raw, dict):
            return raw, self
        raise self.error("expected an inline object or a path", field=field)


class _Ids(object):
    """
    Maps JSON names back to the ids of ``category``. Product categories
    have tuple ids whose JSON names are ``(a,b)`` strings.
    """
    def __init__(self, category, context):
        self.category = category
        self.context = context
        self.objects = dict((format_id(obj), obj) for obj in category.objects)
        self.arrows = dict((category.json_arrow(arrow), arrow)
                           for arrow in category.arrows)

    def obj(self, name, field):
        try:
            return self.objects[str(name)]
        except KeyError:
            raise self.context.error("unknown object {} of {}".format(
                name, self.category.name), field=field)

    def arrow(self, name, field):
        try:
            return self.arrows[str(name)]
        except KeyError:
            raise self.context.error("unknown arrow {} of {}".format(
                name, self.category.name), field=field)


def category_from_json(raw, context, field='category'):
    raw, context = context.resolve(raw, field)
    return validate_category(raw)


def functor_from_json(raw, context, dom=None, cod=None, field='functor'):
    """
    Parses the functor schema. ``dom`` and ``cod`` fill in categories the
    document leaves out; identity images are derived.
    """
    raw, context = context.resolve(raw, field)
    if "dom" in raw:
        dom = category_from_json(raw["dom"], context, field='dom')
    if "cod" in raw:
        cod = category_from_json(raw["cod"], context, field='cod')
    if dom is None or cod is None:
        raise context.error("functor needs dom and cod", field=field)
    return _maps(raw, context, dom, cod)


def _maps(raw, context, dom, cod, check=True):
    dom_ids, cod_ids = _Ids(dom, context), _Ids(cod, context)
    on_objects = dict(
        (dom_ids.obj(name, 'on_objects'), cod_ids.obj(image, 'on_objects'))
        for name, image in context.field(raw, "on_objects", dict).items())
    on_arrows = dict(
        (dom_ids.arrow(name, 'on_arrows'), cod_ids.arrow(image, 'on_arrows'))
        for name, image in raw.get("on_arrows", {}).items())
    return functor_from_maps(dom, cod, on_objects, on_arrows,
                             name=raw.get("name"), check=check)


def witness_from_json(raw, context, dom=None, cod=None):
    """
    Parses the zigzag witness schema. Functors in a witness leave out their
    categories, which come from ``dom``/``cod`` in the document or from the
    arguments.
    """
    if "dom" in raw:
        dom = category_from_json(raw["dom"], context, field='dom')
    if "cod" in raw:
        cod = category_from_json(raw["cod"], context, field='cod')
    if dom is None or cod is None:
        raise context.error("witness needs dom and cod", field='dom')
    functors = [_maps(item, context, dom, cod, check=False)
                for item in context.field(raw, "functors", list)]
    dom_ids, cod_ids = _Ids(dom, context), _Ids(cod, context)
    steps = []
    raw_steps = context.field(raw, "steps", list)
    if len(raw_steps) != len(functors) - 1:
        raise context.error("{} functors need {} steps".format(
            len(functors), len(functors) - 1), field='steps')
    for index, step in enumerate(raw_steps):
        direction = context.field(step, "dir")
        if direction not in (FORWARD, BACKWARD):
            raise context.error("unknown direction {!r}".format(direction),
                                field='steps[{}].dir'.format(index))
        components = dict(
            (dom_ids.obj(name, 'components'),
             cod_ids.arrow(arrow, 'components'))
            for name, arrow in context.field(step, "components",
                                             dict).items())
        left, right = functors[index], functors[index + 1]
        if direction == BACKWARD:
            left, right = right, left
        steps.append((NatTrans(left, right, components), direction))
    return ZigzagWitness(functors, steps)


def subcategory_from_json(raw, parent, context):
    ids = _Ids(parent, context)
    return Subcategory(
        parent,
        [ids.obj(name, 'objects')
         for name in context.field(raw, "objects", list)],
        [ids.arrow(name, 'arrows')
         for name in context.field(raw, "arrows", list)])


def cover_from_json(raw, context):
    parent = category_from_json(context.field(raw, "parent"), context,
                                field='parent')
    return GeometricCover(parent, [
        subcategory_from_json(member, parent, context)
        for member in context.field(raw, "members", list)])


def bundle_from_json(raw, context):
    """
    A fibration bundle ``{"total", "base", "P"}``; ``P`` may leave out its
    categories.

    :return: the projection :class:`~fincat.categories.FinFunctor`
    """
    total = base = None
    if "total" in raw:
        total = category_from_json(raw["total"], context, field='total')
    if "base" in raw:
        base = category_from_json(raw["base"], context, field='base')
    projection = raw.get("P", raw)
    return functor_from_json(projection, context, dom=total, cod=base,
                             field='P')


def _bundle(raw, context, field):
    raw, context = context.resolve(raw, field)
    return bundle_from_json(raw, context)


def varadarajan_from_json(raw, context):
    source = _bundle(context.field(raw, "P"), context, 'P')
    target = _bundle(context.field(raw, "Pprime"), context, 'Pprime')

    def morphism(total, base):
        return FibrationMorphism(
            source, target,
            functor_from_json(context.field(raw, total), context,
                              dom=source.dom, cod=target.dom, field=total),
            functor_from_json(context.field(raw, base), context,
                              dom=source.cod, cod=target.cod, field=base))

    basepoint = _Ids(source.cod, context).obj(
        context.field(raw, "basepoint"), 'basepoint')
    return VaradarajanInput(morphism('F', 'Fbar'), morphism('G', 'Gbar'),
                            basepoint)


def result_from_json(raw, context):
    """
    Rebuilds an :class:`~fincat.invariants.InvariantResult` from its JSON,
    ready for :func:`~fincat.invariants.replay`.
    """
    label = context.field(raw, "invariant", str)
    if label == 'cD':
        functors = [functor_from_json(item, context, field='functors')
                    for item in context.field(raw, "functors", list)]
        if not functors:
            raise context.error("no functors", field='functors')
        kind, subject = 'distance', functors
        parent, cod = functors[0].dom, functors[0].cod
    elif label == 'ccat':
        category = category_from_json(raw.get("category"), context)
        kind, subject, parent, cod = 'ccat', category, category, category
    elif label.startswith('cTC'):
        category = category_from_json(raw.get("category"), context)
        n = context.field(raw, "n", int)
        kind, subject = 'ctc', (category, n)
        parent, _ = power(category, n)
        cod = parent
    else:
        raise context.error("unknown invariant {!r}".format(label),
                            field='invariant')
    value = ExtNat.from_json(context.field(raw, "value"))

    cover = None
    witnesses = []
    if raw.get("cover") is not None:
        cover = GeometricCover(parent, [
            subcategory_from_json(member, parent, context)
            for member in context.field(raw["cover"], "members", list)])
        raw_witnesses = context.field(raw, "witnesses", list)
        if len(raw_witnesses) != len(cover):
            raise context.error("{} members but {} witnesses".format(
                len(cover), len(raw_witnesses)), field='witnesses')
        for member, item in zip(cover.members, raw_witnesses):
            witnesses.append(_certificate(item, context, kind, member,
                                          parent, cod, subject))
    domains = [subcategory_from_json(member, parent, context)
               for member in raw.get("domains", [])]
    uncovered = None
    if raw.get("uncovered_chain") is not None:
        chain = raw["uncovered_chain"]
        ids = _Ids(parent, context)
        uncovered = Chain(
            parent, ids.obj(context.field(chain, "start"), 'start'),
            [ids.arrow(name, 'uncovered_chain')
             for name in context.field(chain, "arrows", list)])
    return InvariantResult(kind, subject, parent, value, cover=cover,
                           witnesses=witnesses, domains=domains,
                           uncovered=uncovered)


def _certificate(raw, context, kind, member, parent, cod, subject):
    dom = member.as_category()
    homotopies = [
        witness_from_json(_without_categories(item), context, dom=dom,
                          cod=cod)
        for item in context.field(raw, "homotopies", list)]
    constant = None
    if raw.get("constant") is not None:
        constant = _Ids(parent, context).obj(raw["constant"], 'constant')
    section = None
    if raw.get("section") is not None:
        section = _maps(raw["section"], context, dom, subject[0],
                        check=False)
    return MemberCertificate(homotopies, constant=constant, section=section)


def _without_categories(raw):
    """
    Member witnesses are read against the member and the parent, whose ids
    may be tuples.
    """
    return dict((key, value) for key, value in raw.items()
                if key not in ("dom", "cod"))


def parse_document(raw, path=None):
    """
    Dispatches on the keys of an already loaded document.
    """
    context = _Context(path)
    if not isinstance(raw, dict):
        raise context.error("expected a JSON object at the top level")
    if "Pprime" in raw:
        return varadarajan_from_json(raw, context)
    if "value" in raw and "invariant" in raw:
        return result_from_json(raw, context)
    if "functors" in raw and "steps" in raw:
        return witness_from_json(raw, context)
    if "members" in raw:
        return cover_from_json(raw, context)
    if "total" in raw or "base" in raw or "P" in raw:
        return bundle_from_json(raw, context)
    if "on_objects" in raw:
        return functor_from_json(raw, context)
    if "objects" in raw:
        return validate_category(raw)
    raise context.error("document matches no known schema")


def parse_bundle(path):
    """
    Loads and validates any supported document.

    :raises: :class:`~fincat.errors.ParseError`,
        :class:`~fincat.errors.ValidationError`
    """
    log.debug("parsing {}".format(path))
    return parse_document(load_json(path), path=path)


def dumps(value):
    """
    Deterministic JSON text of a value exposing ``to_json`` or of plain
    data.
    """
    if hasattr(value, 'to_json'):
        value = value.to_json()
    return json.dumps(value, sort_keys=True, indent=2)


def write_json(value, path):
    with open(path, 'w') as handle:
        handle.write(dumps(value))
        handle.write('\n')


def object_named(category, name, field='object'):
    """
    The object of ``category`` whose JSON name is ``name``.
    """
    return _Ids(category, _Context(None)).obj(name, field)


def arrow_named(category, name, field='arrow'):
    """
    The arrow of ``category`` whose JSON name is ``name``; identities are
    ``id:<object>``.
    """
    return _Ids(category, _Context(None)).arrow(name, field)
