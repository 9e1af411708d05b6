"""
Homotopic distance, LS-category and complexity, with replay of their
certificates.
"""
import random
import unittest

from fincat.categories import standard_category, standard_functor
from fincat.categories.core import functor_from_maps, is_connected
from fincat.covers import Chain
from fincat.errors import BadParams, DomainMismatch
from fincat.extnat import INF, ExtNat
from fincat.homotopy import trivial_zigzag
from fincat.invariants import (
    ccat_by_distance,
    ccat_by_inclusions,
    ccat_direct,
    ctc_by_distance,
    ctc_direct,
    ctc_n_direct,
    distance,
    replay,
)
from fincat.verify import random_category


class TestExtNat(unittest.TestCase):

    def test_arithmetic(self):
        self.assertEqual(ExtNat(3), ExtNat(2) + 1)
        self.assertEqual(INF, INF + 1)
        self.assertEqual(INF, ExtNat(2) * INF)
        self.assertEqual(ExtNat(0), ExtNat(0) * INF)

    def test_order(self):
        self.assertLess(ExtNat(5), INF)
        self.assertTrue(INF <= INF)
        self.assertFalse(INF < INF)

    def test_json(self):
        self.assertEqual('inf', INF.to_json())
        self.assertEqual(2, ExtNat(2).to_json())
        self.assertEqual(INF, ExtNat.from_json('inf'))

    def test_negative(self):
        with self.assertRaises(ValueError):
            ExtNat(-1)

    def test_only_naturals_compare(self):
        self.assertNotEqual(INF, None)
        self.assertNotEqual(ExtNat(0), None)
        self.assertNotEqual(INF, 'inf')
        self.assertEqual(ExtNat(2), 2)
        with self.assertRaises(TypeError):
            INF < None
        with self.assertRaises(TypeError):
            ExtNat(1) + 0.5


class TestLSCategory(unittest.TestCase):

    def test_intervals(self):
        for m in range(5):
            result = ccat_direct(standard_category('zigzag_interval', m))
            self.assertEqual(ExtNat(0), result.value)
            self.assertEqual(1, len(result.cover))

    def test_point(self):
        self.assertEqual(ExtNat(0),
                         ccat_direct(standard_category('point')).value)

    def test_group_is_infinite(self):
        result = ccat_direct(standard_category('cyclic_group', 2))
        self.assertEqual(INF, result.value)
        self.assertIsNone(result.cover)
        self.assertEqual('(g)', result.uncovered.describe())
        self.assertEqual((True, None), replay(result))

    def test_two_points(self):
        result = ccat_direct(standard_category('discrete', 2))
        self.assertEqual(ExtNat(1), result.value)
        self.assertEqual(['0', '1'], sorted(
            witness.constant for witness in result.witnesses))

    def test_empty_category(self):
        result = ccat_direct(standard_category('discrete', 0))
        self.assertEqual(ExtNat(0), result.value)

    def test_equal_to_distance_forms(self):
        interval = standard_category('zigzag_interval', 2)
        self.assertEqual(ccat_direct(interval).value,
                         ccat_by_distance(interval).value)
        self.assertEqual(ccat_direct(interval).value,
                         ccat_by_inclusions(interval).value)

    def test_replay(self):
        result = ccat_direct(standard_category('zigzag_interval', 2))
        self.assertEqual((True, None), replay(result))

    def test_to_json(self):
        data = ccat_direct(standard_category('zigzag_interval', 1)).to_json()
        self.assertEqual('ccat', data['invariant'])
        self.assertEqual(0, data['value'])
        self.assertEqual(1, len(data['cover']['members']))
        self.assertEqual(1, len(data['witnesses']))

    def test_direct_and_distance_agree(self):
        for seed in range(50):
            rng = random.Random(seed)
            n_objects = rng.randint(1, 4)
            category = random_category(seed, n_objects,
                                       rng.randint(n_objects - 1,
                                                   min(4, n_objects + 1)),
                                       connected=True)
            with self.subTest(seed=seed):
                self.assertTrue(is_connected(category))
                self.assertEqual(ccat_direct(category).value,
                                 ccat_by_distance(category).value)

    def test_direct_and_inclusions_agree(self):
        for seed in range(20):
            category = random_category(seed, 2, 1 + seed % 2, connected=True)
            with self.subTest(seed=seed):
                self.assertEqual(ccat_direct(category).value,
                                 ccat_by_inclusions(category).value)


class TestDistance(unittest.TestCase):

    def setUp(self):
        self.interval = standard_category('zigzag_interval', 1)
        self.identity = standard_functor('identity', self.interval)
        self.constant = standard_functor('constant', self.interval,
                                         self.interval, '1')
        self.group = standard_category('cyclic_group', 2)
        self.group_identity = standard_functor('identity', self.group)
        self.trivial = functor_from_maps(self.group, self.group, {'*': '*'},
                                         {'g': 'id:*'})

    def test_homotopic_functors(self):
        result = distance([self.identity, self.constant])
        self.assertEqual(ExtNat(0), result.value)
        self.assertEqual('cD', result.label)
        self.assertEqual((True, None), replay(result))

    def test_non_homotopic_group_functors(self):
        result = distance([self.group_identity, self.trivial])
        self.assertEqual(INF, result.value)
        self.assertEqual((True, None), replay(result))

    def test_symmetric(self):
        self.assertEqual(
            distance([self.group_identity, self.trivial]).value,
            distance([self.trivial, self.group_identity]).value)

    def test_needs_two_functors(self):
        with self.assertRaises(BadParams):
            distance([self.identity])

    def test_mismatch(self):
        with self.assertRaises(DomainMismatch):
            distance([self.identity, self.group_identity])

    def test_tampered_certificate(self):
        result = distance([self.identity, self.constant])
        member = result.cover.members[0]
        certificate = result.witnesses[0]
        restricted = standard_functor('identity', member.as_category())
        certificate.homotopies = [trivial_zigzag(restricted)]
        ok, problem = replay(result)
        self.assertFalse(ok)
        self.assertIn('member 0', problem)

    def test_tampered_chain(self):
        result = distance([self.group_identity, self.trivial])
        result.uncovered = Chain(self.group, '*', [])
        ok, problem = replay(result)
        self.assertFalse(ok)
        self.assertIn('lies in the domain', problem)

    def test_wrong_cover_size(self):
        result = distance([self.identity, self.constant])
        result.value = ExtNat(1)
        self.assertFalse(replay(result)[0])


class TestComplexity(unittest.TestCase):

    def test_interval(self):
        result = ctc_direct(standard_category('zigzag_interval', 1))
        self.assertEqual(ExtNat(0), result.value)
        self.assertEqual('cTC', result.label)
        self.assertEqual((True, None), replay(result))

    def test_group(self):
        group = standard_category('cyclic_group', 2)
        self.assertEqual(INF, ctc_direct(group).value)
        self.assertEqual(INF, ctc_by_distance(group).value)

    def test_two_points(self):
        points = standard_category('discrete', 2)
        self.assertEqual(INF, ctc_direct(points).value)
        self.assertEqual(INF, ctc_by_distance(points).value)

    def test_interval_of_length_two(self):
        interval = standard_category('zigzag_interval', 2)
        self.assertEqual(ExtNat(0), ctc_direct(interval).value)
        self.assertEqual(ExtNat(0), ctc_by_distance(interval).value)

    def test_point(self):
        point = standard_category('point')
        self.assertEqual(ExtNat(0), ctc_direct(point).value)
        self.assertEqual(ExtNat(0), ctc_by_distance(point).value)

    def test_random_two_object_categories(self):
        for seed in range(10):
            category = random_category(seed, 2, seed % 3)
            with self.subTest(seed=seed):
                self.assertEqual(ctc_direct(category).value,
                                 ctc_by_distance(category).value)

    def test_higher_on_point(self):
        point = standard_category('point')
        result = ctc_n_direct(point, 3)
        self.assertEqual(ExtNat(0), result.value)
        self.assertEqual('cTC_3', result.label)
        self.assertEqual(3, result.to_json()['n'])
        self.assertEqual(ExtNat(0), ctc_by_distance(point, 3).value)

    def test_higher_on_interval(self):
        interval = standard_category('zigzag_interval', 1)
        self.assertEqual(ctc_n_direct(interval, 3).value,
                         ctc_by_distance(interval, 3).value)

    def test_bad_n(self):
        with self.assertRaises(BadParams):
            ctc_n_direct(standard_category('point'), 1)


if __name__ == '__main__':
    import sys
    sys.exit(unittest.main())
