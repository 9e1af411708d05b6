"""
Finite categories, functors and natural transformations as immutable,
validated combinatorial data.

Standard constructions register themselves by name, so they can be built
from a short kind string:

    >>> from fincat.categories import standard_category
    >>> standard_category('directed_chain', 2).arrow_count
    6
"""
from fincat.errors import BadParams


def format_id(value):
    """
    Renders an object or arrow id as a string. Product ids are tuples and
    are rendered as ``(a,b)``.
    """
    if isinstance(value, tuple):
        return '(' + ','.join(format_id(part) for part in value) + ')'
    return str(value)


def identity_id(obj):
    """
    The reserved id of the identity arrow of ``obj`` in parsed categories.
    """
    return 'id:{}'.format(format_id(obj))


class FinCategory(object):
    """
    A finite category: ordered objects, ordered arrows (identities first,
    then non-identity arrows in input order) and a total composition table.

    Instances are never mutated after construction. Use
    :func:`~fincat.categories.core.validate_category` or
    :func:`~fincat.categories.core.build_category` to create one from
    unchecked data.
    """
    def __init__(self, name, objects, arrows, src, tgt, identity, comp):
        self.name = name
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self.src = src
        self.tgt = tgt
        self.identity = identity
        self.comp = comp

        self.object_index = dict(
            (obj, index) for index, obj in enumerate(self.objects))
        self.arrow_index = dict(
            (arrow, index) for index, arrow in enumerate(self.arrows))
        self.identities = frozenset(identity.values())

        homs = {}
        outgoing = dict((obj, []) for obj in self.objects)
        incoming = dict((obj, []) for obj in self.objects)
        for arrow in self.arrows:
            homs.setdefault((src[arrow], tgt[arrow]), []).append(arrow)
            outgoing[src[arrow]].append(arrow)
            incoming[tgt[arrow]].append(arrow)
        self._homs = dict((key, tuple(value)) for key, value in homs.items())
        self.outgoing = dict(
            (key, tuple(value)) for key, value in outgoing.items())
        self.incoming = dict(
            (key, tuple(value)) for key, value in incoming.items())

    @property
    def object_count(self):
        return len(self.objects)

    @property
    def arrow_count(self):
        return len(self.arrows)

    @property
    def is_empty(self):
        return not self.objects

    def hom(self, source, target):
        """
        :return: The arrows ``source -> target`` in canonical order.
        """
        return self._homs.get((source, target), ())

    def non_identity_arrows(self):
        return tuple(
            arrow for arrow in self.arrows if arrow not in self.identities)

    def is_identity(self, arrow):
        return arrow in self.identities

    def compose(self, second, first):
        """
        :return: ``second o first``.
        :raises KeyError: when the arrows are not composable.
        """
        return self.comp[(second, first)]

    def composable(self, second, first):
        return self.src[second] == self.tgt[first]

    def data(self):
        """
        Everything that defines the category except its name.
        """
        return (self.objects, self.arrows, self.src, self.tgt,
                self.identity, self.comp)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self.data() == other.data()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.objects, self.arrows))

    def to_json(self):
        """
        Serializes into the category JSON schema. Identity arrows and
        identity composites are left implicit.
        """
        arrows = []
        for arrow in self.non_identity_arrows():
            arrows.append({
                "id": format_id(arrow),
                "src": format_id(self.src[arrow]),
                "tgt": format_id(self.tgt[arrow]),
            })
        compose = []
        for (second, first), result in sorted(
                self.comp.items(),
                key=lambda item: (self.arrow_index[item[0][0]],
                                  self.arrow_index[item[0][1]])):
            if second in self.identities or first in self.identities:
                continue
            compose.append({
                "second": format_id(second),
                "first": format_id(first),
                "equals": self._json_arrow(result),
            })
        return {
            "name": self.name,
            "objects": [format_id(obj) for obj in self.objects],
            "arrows": arrows,
            "compose": compose,
        }

    def _json_arrow(self, arrow):
        if arrow in self.identities:
            return identity_id(self.src[arrow])
        return format_id(arrow)

    def json_arrow(self, arrow):
        """
        The JSON name of ``arrow``: reserved ``id:<obj>`` for identities.
        """
        return self._json_arrow(arrow)

    def __repr__(self):
        return '<FinCategory {} ({} objects, {} arrows)>'.format(
            self.name, self.object_count, self.arrow_count)


class FinFunctor(object):
    """
    A functor between two :class:`FinCategory` values, given by its object
    and arrow maps. Use :func:`~fincat.categories.core.validate_functor`
    to check the functor laws.
    """
    def __init__(self, dom, cod, on_objects, on_arrows, name=None):
        self.dom = dom
        self.cod = cod
        self.on_objects = on_objects
        self.on_arrows = on_arrows
        self.name = name
        self._key = None

    def obj(self, obj):
        return self.on_objects[obj]

    def arr(self, arrow):
        return self.on_arrows[arrow]

    @property
    def key(self):
        """
        Hashable image data in canonical order of the domain, used for
        memoization and for the canonical functor order.
        """
        if self._key is None:
            self._key = (
                tuple(self.cod.object_index[self.on_objects[obj]]
                      for obj in self.dom.objects),
                tuple(self.cod.arrow_index[self.on_arrows[arrow]]
                      for arrow in self.dom.arrows),
            )
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod and
                self.on_objects == other.on_objects and
                self.on_arrows == other.on_arrows)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.key)

    def to_json(self, inline=True):
        """
        Serializes into the functor JSON schema, with both categories
        inlined. Identity images are left implicit.
        """
        result = {}
        if self.name is not None:
            result["name"] = self.name
        if inline:
            result["dom"] = self.dom.to_json()
            result["cod"] = self.cod.to_json()
        result["on_objects"] = dict(
            (format_id(obj), format_id(self.on_objects[obj]))
            for obj in self.dom.objects)
        result["on_arrows"] = dict(
            (format_id(arrow), self.cod.json_arrow(self.on_arrows[arrow]))
            for arrow in self.dom.non_identity_arrows())
        return result

    def __repr__(self):
        return '<FinFunctor {}: {} -> {}>'.format(
            self.name or '?', self.dom.name, self.cod.name)


class NatTrans(object):
    """
    A natural transformation ``source => target`` with one component arrow
    per object of the common domain.
    """
    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = components

    def __getitem__(self, obj):
        return self.components[obj]

    def __eq__(self, other):
        if not isinstance(other, NatTrans):
            return NotImplemented
        return (self.source == other.source and
                self.target == other.target and
                self.components == other.components)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def to_json(self):
        cod = self.source.cod
        return dict(
            (format_id(obj), cod.json_arrow(self.components[obj]))
            for obj in self.source.dom.objects)

    def __repr__(self):
        return '<NatTrans {!r} => {!r}>'.format(self.source, self.target)


# Classes of standard categories and functors, keyed by their name attributes.
CATEGORY_REGISTRY = {}
FUNCTOR_REGISTRY = {}


class StandardRegistry(type):
    """
    Metaclass used to automatically register standard constructions in the
    registry matching their ``kind`` attribute.
    """
    def __new__(cls, clsname, bases, attrs):
        newclass = super(StandardRegistry, cls).__new__(
            cls, clsname, bases, attrs)
        register_standard(newclass)
        return newclass


def register_standard(construction_cls):
    """
    Adds ``construction_cls`` to the registry for its kind.
    """
    if construction_cls.name is None:
        return
    registry = (CATEGORY_REGISTRY if construction_cls.kind == 'category'
                else FUNCTOR_REGISTRY)
    if construction_cls.name in registry:
        raise RuntimeError(
            "Standard construction already registered: {}".format(
                construction_cls.name))
    registry[construction_cls.name] = construction_cls


class Standard(object, metaclass=StandardRegistry):
    """
    Base class of registered constructions. Subclasses take their
    parameters in ``__init__`` and produce the value in ``build``.
    """

    #: The shorthand name of the construction.
    name = None

    #: Either ``'category'`` or ``'functor'``.
    kind = None

    def build(self):
        raise NotImplementedError()


def standard_category(kind, *args, **kwargs):
    """
    Builds the registered standard category ``kind``.

    :return: :class:`FinCategory`
    """
    if kind not in CATEGORY_REGISTRY:
        raise BadParams("Unknown standard category: {}".format(kind))
    return CATEGORY_REGISTRY[kind](*args, **kwargs).build()


def standard_functor(kind, *args, **kwargs):
    """
    Builds the registered standard functor ``kind``.

    :return: :class:`FinFunctor`
    """
    if kind not in FUNCTOR_REGISTRY:
        raise BadParams("Unknown standard functor: {}".format(kind))
    return FUNCTOR_REGISTRY[kind](*args, **kwargs).build()


from .core import (  # noqa: E402
    build_category,
    compose_functors,
    disjoint_union,
    functor_from_maps,
    is_connected,
    opposite,
    opposite_functor,
    product,
    validate_category,
    validate_functor,
    validate_nat_trans,
)

from . import standard  # noqa: E402,F401
