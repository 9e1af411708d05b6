"""
Natural numbers extended with a maximal element, used for every invariant
value.
"""
import functools
import numbers


@functools.total_ordering
class ExtNat(object):
    """
    A finite natural number or infinity. ``inf + 1 == inf``,
    ``k * inf == inf`` for ``k >= 1`` and ``0 * inf == 0``.

        >>> ExtNat(2) + 1
        ExtNat(3)
        >>> INF * ExtNat(1) == INF
        True
    """
    __slots__ = ('_value',)

    def __init__(self, value=None):
        if value == 'inf':
            value = None
        if value is not None:
            if isinstance(value, ExtNat):
                value = value._value
            elif int(value) != value or value < 0:
                raise ValueError(
                    "ExtNat needs a natural number, got {!r}".format(value))
            else:
                value = int(value)
        self._value = value

    @property
    def is_finite(self):
        return self._value is not None

    @property
    def value(self):
        """
        The finite value, or ``None`` for infinity.
        """
        return self._value

    @staticmethod
    def _coerce(other):
        """
        Only :class:`ExtNat` and integers take part in arithmetic and
        comparisons.
        """
        if isinstance(other, ExtNat):
            return other
        if isinstance(other, numbers.Integral) and other >= 0:
            return ExtNat(other)
        raise TypeError("not an extended natural: {!r}".format(other))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not (self.is_finite and other.is_finite):
            return INF
        return ExtNat(self._value + other._value)

    __radd__ = __add__

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self._value == 0 or other._value == 0:
            return ExtNat(0)
        if not (self.is_finite and other.is_finite):
            return INF
        return ExtNat(self._value * other._value)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self._value == other._value

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __lt__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self.is_finite:
            return False
        if not other.is_finite:
            return True
        return self._value < other._value

    def __hash__(self):
        return hash(('ExtNat', self._value))

    def to_json(self):
        return self._value if self.is_finite else 'inf'

    @classmethod
    def from_json(cls, value):
        if value == 'inf':
            return INF
        return cls(value)

    def __str__(self):
        return str(self._value) if self.is_finite else 'inf'

    def __repr__(self):
        return 'ExtNat({})'.format(
            self._value if self.is_finite else "'inf'")


INF = ExtNat()
