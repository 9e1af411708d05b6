"""
Functor enumeration, natural transformation search and zigzag homotopies.
"""
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from fincat.budget import Budget
from fincat.categories import standard_category, standard_functor
from fincat.categories.core import functor_from_maps, validate_nat_trans
from fincat.errors import BadParams, DomainMismatch, SizeBudgetExceeded
from fincat.homotopy import (
    BACKWARD,
    FORWARD,
    compose_zigzag_left,
    compose_zigzag_right,
    concat_zigzag,
    enumerate_functors,
    homotopic,
    homotopic_oracle,
    homotopic_to_constant,
    homotopy_classes,
    horizontal_zigzag,
    is_constant,
    is_contractible,
    nat_trans_search,
    reverse_zigzag,
    to_product_homotopy,
    trivial_zigzag,
    verify_zigzag,
)
from fincat.verify import random_category


class TestEnumeration(unittest.TestCase):

    def test_interval_endofunctors(self):
        interval = standard_category('zigzag_interval', 1)
        functors = list(enumerate_functors(interval, interval))
        self.assertEqual([{'0': '0', '1': '0'}, {'0': '0', '1': '1'},
                          {'0': '1', '1': '1'}],
                         [functor.on_objects for functor in functors])

    def test_group_endofunctors(self):
        group = standard_category('cyclic_group', 2)
        images = [functor.on_arrows['g']
                  for functor in enumerate_functors(group, group)]
        self.assertEqual(['id:*', 'g'], images)

    def test_out_of_a_point(self):
        chain = standard_category('directed_chain', 3)
        point = standard_category('point')
        self.assertEqual(4, len(list(enumerate_functors(point, chain))))

    def test_into_the_empty_category(self):
        empty = standard_category('discrete', 0)
        point = standard_category('point')
        self.assertEqual([], list(enumerate_functors(point, empty)))
        self.assertEqual(1, len(list(enumerate_functors(empty, point))))

    def test_object_map_cap(self):
        interval = standard_category('zigzag_interval', 1)
        with self.assertRaises(SizeBudgetExceeded):
            enumerate_functors(interval, interval,
                               budget=Budget(max_object_maps=2))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_enumerated_functors_are_distinct_and_valid(self, seed):
        dom = random_category(seed, 2, 2)
        cod = random_category(seed + 1, 2, 2)
        keys = set()
        for functor in enumerate_functors(dom, cod):
            self.assertNotIn(functor.key, keys)
            keys.add(functor.key)
            # Raises on a violation.
            functor_from_maps(dom, cod, functor.on_objects,
                              functor.on_arrows)


class TestNatTransSearch(unittest.TestCase):

    def setUp(self):
        self.interval = standard_category('zigzag_interval', 1)
        self.identity = standard_functor('identity', self.interval)
        self.constant = standard_functor('constant', self.interval,
                                         self.interval, '1')

    def test_found(self):
        transformation = nat_trans_search(self.identity, self.constant)
        self.assertEqual({'0': 's0', '1': 'id:1'}, transformation.components)
        validate_nat_trans(transformation)

    def test_absent(self):
        self.assertIsNone(nat_trans_search(self.constant, self.identity))

    def test_not_parallel(self):
        other = standard_functor('identity', standard_category('point'))
        with self.assertRaises(DomainMismatch):
            nat_trans_search(self.identity, other)


class TestHomotopic(unittest.TestCase):

    def setUp(self):
        self.interval = standard_category('zigzag_interval', 1)
        self.identity = standard_functor('identity', self.interval)
        self.constant = standard_functor('constant', self.interval,
                                         self.interval, '1')
        self.group = standard_category('cyclic_group', 2)
        self.group_identity = standard_functor('identity', self.group)
        self.trivial = functor_from_maps(self.group, self.group, {'*': '*'},
                                         {'g': 'id:*'})

    def test_one_step(self):
        witness = homotopic(self.identity, self.constant)
        self.assertEqual(1, witness.length)
        self.assertEqual([FORWARD], witness.directions)
        self.assertEqual((True, None), verify_zigzag(
            witness, start=self.identity, end=self.constant))

    def test_reflexive(self):
        witness = homotopic(self.identity, self.identity)
        self.assertEqual(0, witness.length)

    def test_group_identity_is_not_trivial(self):
        self.assertIsNone(homotopic(self.group_identity, self.trivial))

    def test_mismatched_functors(self):
        with self.assertRaises(DomainMismatch):
            homotopic(self.identity, self.group_identity)

    def test_budget_exhaustion(self):
        chain = standard_category('zigzag_interval', 4)
        identity = standard_functor('identity', chain)
        constant = standard_functor('constant', chain, chain, '4')
        with self.assertRaises(SizeBudgetExceeded):
            homotopic(identity, constant, budget=Budget(max_work=3))

    def test_tampered_witness_fails(self):
        witness = homotopic(self.identity, self.constant)
        step, direction = witness.steps[0]
        step.components['0'] = 'id:0'
        ok, problem = verify_zigzag(witness)
        self.assertFalse(ok)
        self.assertIn('step 0', problem)

    def test_to_json(self):
        data = homotopic(self.identity, self.constant).to_json()
        self.assertEqual([{"dir": "fwd",
                           "components": {"0": "s0", "1": "id:1"}}],
                         data["steps"])
        self.assertEqual(2, len(data["functors"]))
        self.assertEqual("I1", data["dom"]["name"])


class TestContraction(unittest.TestCase):

    def test_intervals_are_contractible(self):
        for m in range(5):
            interval = standard_category('zigzag_interval', m)
            contractible, base, witness = is_contractible(interval)
            self.assertTrue(contractible)
            self.assertIsNotNone(is_constant(witness.end))
            self.assertEqual(base, is_constant(witness.end))

    def test_point_and_chain(self):
        self.assertTrue(is_contractible(standard_category('point'))[0])
        self.assertTrue(
            is_contractible(standard_category('directed_chain', 3))[0])

    def test_group_is_not_contractible(self):
        self.assertEqual((False, None, None),
                         is_contractible(standard_category('cyclic_group', 2)))

    def test_two_points_are_not_contractible(self):
        self.assertFalse(is_contractible(standard_category('discrete', 2))[0])

    def test_empty_functor(self):
        empty = standard_category('discrete', 0)
        base, witness = homotopic_to_constant(
            standard_functor('identity', empty))
        self.assertIsNone(base)
        self.assertEqual(0, witness.length)


class TestWitnessAlgebra(unittest.TestCase):

    def setUp(self):
        self.interval = standard_category('zigzag_interval', 1)
        self.identity = standard_functor('identity', self.interval)
        self.constant = standard_functor('constant', self.interval,
                                         self.interval, '1')
        self.witness = homotopic(self.identity, self.constant)

    def test_reverse(self):
        reverse = reverse_zigzag(self.witness)
        self.assertEqual([BACKWARD], reverse.directions)
        self.assertEqual((True, None), verify_zigzag(
            reverse, start=self.constant, end=self.identity))

    def test_concat(self):
        loop = concat_zigzag(self.witness, reverse_zigzag(self.witness))
        self.assertEqual(2, loop.length)
        self.assertEqual((True, None), verify_zigzag(
            loop, start=self.identity, end=self.identity))

    def test_concat_mismatch(self):
        with self.assertRaises(BadParams):
            concat_zigzag(self.witness, self.witness)

    def test_whiskering(self):
        left = compose_zigzag_left(self.constant, self.witness)
        right = compose_zigzag_right(self.witness, self.constant)
        self.assertTrue(verify_zigzag(left)[0])
        self.assertTrue(verify_zigzag(right)[0])
        self.assertEqual(self.constant.key, right.start.key)

    def test_horizontal(self):
        combined = horizontal_zigzag(self.witness, self.witness)
        self.assertEqual((True, None), verify_zigzag(
            combined, start=self.identity, end=self.constant))

    def test_product_form(self):
        functor, interval = to_product_homotopy(self.witness)
        self.assertEqual(2, interval.object_count)
        for obj in self.interval.objects:
            self.assertEqual(self.identity.on_objects[obj],
                             functor.on_objects[(obj, '0')])
            self.assertEqual(self.constant.on_objects[obj],
                             functor.on_objects[(obj, '1')])
        self.assertEqual('s0', functor.on_arrows[('id:0', 's0')])

    def test_trivial(self):
        self.assertTrue(verify_zigzag(trivial_zigzag(self.identity))[0])


class TestHomotopyClasses(unittest.TestCase):

    def test_contractible_codomain(self):
        interval = standard_category('zigzag_interval', 1)
        classes = homotopy_classes(interval, interval)
        self.assertEqual([3], [len(members) for members in classes])

    def test_group_classes(self):
        group = standard_category('cyclic_group', 2)
        self.assertEqual(2, len(homotopy_classes(group, group)))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_search_agrees_with_union_find(self, seed):
        dom = random_category(seed, 2, 2)
        cod = random_category(seed + 7, 2, 3)
        functors = list(enumerate_functors(dom, cod))[:6]
        for first in functors:
            for second in functors:
                found = homotopic(first, second)
                self.assertEqual(homotopic_oracle(first, second),
                                 found is not None)
                if found is not None:
                    self.assertTrue(verify_zigzag(found, start=first,
                                                  end=second)[0])


if __name__ == '__main__':
    import sys
    sys.exit(unittest.main())
