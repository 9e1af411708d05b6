"""
Cartesian arrows, fibration classification, fibers, transport and homotopy
lifting on the bundled fixtures.
"""
import os
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st
from mock import patch

from fincat.categories import NatTrans, standard_category, standard_functor
from fincat.categories.core import (
    functor_from_maps,
    opposite_functor,
    product,
)
from fincat.errors import (
    BadParams,
    EndpointMismatch,
    EquivalenceFailure,
    NoLift,
    NotAFibration,
)
from fincat.fibrations import (
    CARTESIAN,
    OP_CARTESIAN,
    FibrationStructure,
    cartesian_lift,
    classify_fibration,
    fiber,
    fiber_equivalence,
    is_cartesian,
    is_cartesian_poset,
    is_cartesian_pullback,
    is_op_cartesian,
    lift_chain_homotopy,
    lift_homotopy,
    op_cartesian_lift,
    preimage_subcategory,
    pullback_functor,
    pushforward_functor,
    verify_lift,
    vertical_comparison,
)
from fincat.covers import Subcategory
from fincat.homotopy import (
    FORWARD,
    ZigzagWitness,
    concat_zigzag,
    enumerate_functors,
    reverse_zigzag,
)
from fincat.serialization import parse_bundle
from fincat.verify import random_category, random_functor


FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, 'fixtures')


def fixture(name):
    return parse_bundle(os.path.join(FIXTURES, name))


class TestCartesianArrows(unittest.TestCase):

    def test_identity_functor(self):
        chain = standard_category('directed_chain', 2)
        identity = standard_functor('identity', chain)
        for arrow in chain.arrows:
            self.assertTrue(is_cartesian(identity, arrow))
            self.assertTrue(is_op_cartesian(identity, arrow))

    def test_group_quotient(self):
        functor = fixture('z4_over_z2.json')
        for arrow in functor.dom.arrows:
            self.assertTrue(is_cartesian(functor, arrow))

    def test_poset_criterion(self):
        chain = standard_category('directed_chain', 2)
        shorter = standard_category('directed_chain', 1)
        for functor in enumerate_functors(chain, shorter):
            for arrow in chain.arrows:
                self.assertEqual(is_cartesian(functor, arrow),
                                 is_cartesian_poset(functor, arrow))

    def test_poset_criterion_needs_thin(self):
        functor = fixture('z4_over_z2.json')
        with self.assertRaises(BadParams):
            is_cartesian_poset(functor, 'g')

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_pullback_form_and_duality(self, seed):
        dom = random_category(seed, 2, 3)
        cod = random_category(seed + 1, 2, 2)
        functor = random_functor(seed, dom, cod)
        if functor is None:
            return
        dual = opposite_functor(functor)
        for arrow in dom.arrows:
            self.assertEqual(is_cartesian(functor, arrow),
                             is_cartesian_pullback(functor, arrow))
            self.assertEqual(is_op_cartesian(functor, arrow),
                             is_cartesian(dual, arrow))


class TestClassification(unittest.TestCase):

    def test_group_quotient_is_a_bifibration(self):
        functor = fixture('z4_over_z2.json')
        report = classify_fibration(functor)
        self.assertTrue(report.is_bifibration)
        self.assertEqual('g', cartesian_lift(functor, 'g', '*'))
        self.assertEqual('g', op_cartesian_lift(functor, 'g', '*'))

    def test_projection_is_a_bifibration(self):
        category, (first, _) = product([
            standard_category('zigzag_interval', 1),
            standard_category('zigzag_interval', 2)])
        self.assertTrue(classify_fibration(first).is_bifibration)

    def test_cyclic_zigzag(self):
        report = classify_fibration(fixture('cyclic_zigzag.json'))
        self.assertTrue(report.is_bifibration)
        self.assertEqual([], report.counterexamples)

    def test_fibration_without_op_lifts(self):
        functor = fixture('nosobre.json')
        report = classify_fibration(functor)
        self.assertTrue(report.is_fibration)
        self.assertFalse(report.is_op_fibration)
        self.assertIn('no op-cartesian lift of s with domain 0',
                      report.describe())
        self.assertEqual(
            [{"kind": OP_CARTESIAN, "base_arrow": "s", "object": "0"},
             {"kind": OP_CARTESIAN, "base_arrow": "s", "object": "1"}],
            report.to_json()["counterexamples"])
        with self.assertRaises(NoLift):
            op_cartesian_lift(functor, 's', '0')

    def test_lift_over_wrong_object(self):
        functor = fixture('z4_over_z2.json')
        category = standard_category('zigzag_interval', 1)
        identity = standard_functor('identity', category)
        with self.assertRaises(BadParams):
            cartesian_lift(identity, 's0', '0')
        self.assertEqual('id:*', cartesian_lift(functor, 'id:*', '*'))

    def test_alternative_lifts_are_vertically_isomorphic(self):
        functor = fixture('z4_over_z2.json')
        structure = FibrationStructure(functor)
        self.assertEqual('g', structure.cartesian_lift('g', '*'))
        self.assertEqual('g', structure.op_cartesian_lift('g', '*'))
        for kind in (CARTESIAN, OP_CARTESIAN):
            comparisons = structure.comparisons[(kind, 'g', '*')]
            self.assertEqual([('g^3', 'g^2', 'g^2')], comparisons)
            for _, forward, backward in comparisons:
                self.assertEqual('id:*', functor.dom.comp[(forward, backward)])
                self.assertEqual('id:*', functor.on_arrows[forward])

    def test_identity_lift_is_compared_with_vertical_isomorphisms(self):
        functor = fixture('z4_over_z2.json')
        structure = FibrationStructure(functor)
        self.assertEqual('id:*', structure.cartesian_lift('id:*', '*'))
        self.assertEqual([('g^2', 'g^2', 'g^2')],
                         structure.comparisons[(CARTESIAN, 'id:*', '*')])

    @patch('fincat.fibrations.vertical_comparison')
    def test_incomparable_lifts_are_rejected(self, mock_comparison):
        mock_comparison.side_effect = EquivalenceFailure('not invertible')
        with self.assertRaises(EquivalenceFailure):
            cartesian_lift(fixture('z4_over_z2.json'), 'g', '*')

    def test_structure_json(self):
        report = classify_fibration(fixture('z4_over_z2.json'))
        lifts = report.to_json()["cartesian_lifts"]
        self.assertIn({"base_arrow": "g", "object": "*", "lift": "g"}, lifts)


class TestFibers(unittest.TestCase):

    def test_group_fiber(self):
        category, inclusion = fiber(fixture('z4_over_z2.json'), '*')
        self.assertEqual(1, category.object_count)
        self.assertEqual(('id:*', 'g^2'), category.arrows)
        self.assertEqual('g^2', inclusion.on_arrows['g^2'])

    def test_empty_fiber(self):
        category, _ = fiber(fixture('nosobre.json'), '1')
        self.assertEqual(0, category.object_count)

    def test_unknown_object(self):
        with self.assertRaises(BadParams):
            fiber(fixture('nosobre.json'), '7')

    def test_preimage(self):
        functor = fixture('equivalent_fibers.json')
        over = Subcategory(functor.cod, ['1'], [])
        preimage = preimage_subcategory(functor, over)
        self.assertEqual(('1', '1bar'), preimage.objects)
        self.assertIn('g', preimage.arrow_set)


class TestTransport(unittest.TestCase):

    def setUp(self):
        self.functor = fixture('equivalent_fibers.json')

    def test_pullback_and_pushforward(self):
        pullback = pullback_functor(self.functor, 's')
        pushforward = pushforward_functor(self.functor, 's')
        self.assertEqual({'1': '0', '1bar': '0'}, pullback.on_objects)
        self.assertEqual({'0': '1'}, pushforward.on_objects)
        self.assertEqual('s*', pullback.name)

    def test_equivalence_of_unequal_fibers(self):
        equivalence = fiber_equivalence(self.functor, 's')
        self.assertEqual((True, None), equivalence.verify())
        self.assertFalse(equivalence.is_isomorphism)
        self.assertEqual([1, 2], equivalence.to_json()["fiber_sizes"])
        self.assertEqual('g', equivalence.target_counit.components['1bar'])

    def test_group_transport(self):
        functor = fixture('z4_over_z2.json')
        pullback = pullback_functor(functor, 'g')
        self.assertEqual('g^2', pullback.on_arrows['g^2'])
        self.assertTrue(fiber_equivalence(functor, 'g').is_isomorphism)

    def test_vertical_comparison(self):
        functor = fixture('z4_over_z2.json')
        self.assertEqual(('g^2', 'g^2'),
                         vertical_comparison(functor, 'g', 'g^3'))
        with self.assertRaises(BadParams):
            vertical_comparison(functor, 'g', 'g^2')

    def test_missing_lift(self):
        with self.assertRaises(NoLift):
            pushforward_functor(fixture('nosobre.json'), 's')


class TestLifting(unittest.TestCase):

    def setUp(self):
        self.functor = fixture('equivalent_fibers.json')
        self.lifted = fixture('lift_start.json')
        self.homotopy = fixture('lift_homotopy.json')

    def test_cartesian_step(self):
        result = lift_chain_homotopy(self.functor, self.lifted, self.homotopy)
        self.assertEqual([CARTESIAN], result.kinds)
        self.assertEqual({'*': '0'}, result.witness.end.on_objects)
        self.assertEqual((True, None), verify_lift(
            self.functor, self.lifted, self.homotopy, result))

    def test_lift_at_the_end(self):
        point = self.lifted.dom
        end = functor_from_maps(point, self.functor.dom, {'*': '0'}, {})
        result = lift_homotopy(self.functor, end, self.homotopy,
                               endpoint='end')
        self.assertEqual([OP_CARTESIAN], result.kinds)
        self.assertEqual({'*': '1'}, result.witness.start.on_objects)
        self.assertEqual((True, None), verify_lift(
            self.functor, end, self.homotopy, result, endpoint='end'))

    def test_round_trip(self):
        loop = concat_zigzag(self.homotopy, reverse_zigzag(self.homotopy))
        result = lift_chain_homotopy(self.functor, self.lifted, loop)
        self.assertEqual([CARTESIAN, OP_CARTESIAN], result.kinds)
        self.assertEqual((True, None), verify_lift(
            self.functor, self.lifted, loop, result))

    def test_endpoint_mismatch(self):
        with self.assertRaises(EndpointMismatch):
            lift_homotopy(self.functor, self.lifted, self.homotopy,
                          endpoint='end')

    def test_tampered_flags(self):
        result = lift_chain_homotopy(self.functor, self.lifted, self.homotopy)
        result.flags[0]['*'] = not result.flags[0]['*']
        ok, problem = verify_lift(self.functor, self.lifted, self.homotopy,
                                  result)
        self.assertFalse(ok)
        self.assertIn('flag', problem)

    def test_needs_an_op_fibration(self):
        functor = fixture('nosobre.json')
        point = standard_category('point')
        base = functor.cod
        start = standard_functor('constant', point, base, '0')
        end = standard_functor('constant', point, base, '1')
        homotopy = ZigzagWitness(
            [start, end], [(NatTrans(start, end, {'*': 's'}), FORWARD)])
        lifted = functor_from_maps(point, functor.dom, {'*': '0'}, {})
        with self.assertRaises(NotAFibration):
            lift_homotopy(functor, lifted, homotopy, endpoint='start')


if __name__ == '__main__':
    import sys
    sys.exit(unittest.main())
