"""
Size and work limits for constructions and exhaustive searches.

Every searching operation accepts an optional ``budget``; when omitted the
:data:`DEFAULT_BUDGET` applies. Exceeding a budget raises
:class:`~fincat.errors.SizeBudgetExceeded`, an outcome distinct from any
mathematical result.
"""
from fincat.errors import SizeBudgetExceeded


class Budget(object):
    """
    Immutable collection of limits.

    :param int max_objects: Largest object count of a constructed category.
    :param int max_arrows: Largest arrow count of a constructed category.
    :param int max_object_maps:
        Largest number of object maps ``|obj D| ** |obj C|`` that functor
        enumeration is allowed to walk.
    :param int max_work: Search steps a single top level call may take.
    """
    __slots__ = ('max_objects', 'max_arrows', 'max_object_maps', 'max_work')

    def __init__(self, max_objects=64, max_arrows=256,
                 max_object_maps=10 ** 6, max_work=2 * 10 ** 6):
        object.__setattr__(self, 'max_objects', max_objects)
        object.__setattr__(self, 'max_arrows', max_arrows)
        object.__setattr__(self, 'max_object_maps', max_object_maps)
        object.__setattr__(self, 'max_work', max_work)

    def __setattr__(self, name, value):
        raise AttributeError("Budget is immutable")

    def replace(self, **kwargs):
        """
        :return: A copy of this budget with the given limits changed.
        """
        values = dict((name, getattr(self, name)) for name in self.__slots__)
        values.update(kwargs)
        return Budget(**values)

    def check_size(self, what, n_objects, n_arrows):
        if n_objects > self.max_objects:
            raise SizeBudgetExceeded(
                "{} would have {} objects (cap {})".format(
                    what, n_objects, self.max_objects))
        if n_arrows > self.max_arrows:
            raise SizeBudgetExceeded(
                "{} would have {} arrows (cap {})".format(
                    what, n_arrows, self.max_arrows))

    def meter(self, what='search'):
        return Meter(what, self.max_work)

    def __repr__(self):
        return 'Budget({})'.format(', '.join(
            '{}={}'.format(name, getattr(self, name))
            for name in self.__slots__))


class Meter(object):
    """
    Work counter for one top level call. Not shared between calls.
    """
    def __init__(self, what, limit):
        self.what = what
        self.limit = limit
        self.used = 0

    def tick(self, amount=1):
        self.used += amount
        if self.used > self.limit:
            raise SizeBudgetExceeded(
                "{} exceeded its work budget of {} steps".format(
                    self.what, self.limit))


DEFAULT_BUDGET = Budget()


def resolve(budget):
    return DEFAULT_BUDGET if budget is None else budget
