"""
Parsing the JSON schemas, and writing results that replay after a round
trip through a file.
"""
import json
import os
import shutil
import tempfile
import unittest

from fincat.categories import (
    FinCategory,
    FinFunctor,
    standard_category,
    standard_functor,
)
from fincat.categories.core import functor_from_maps
from fincat.covers import GeometricCover
from fincat.errors import FunctorViolation, ParseError
from fincat.extnat import INF, ExtNat
from fincat.homotopy import ZigzagWitness
from fincat.invariants import (
    InvariantResult,
    ccat_direct,
    ctc_direct,
    distance,
    replay,
)
from fincat.serialization import (
    VaradarajanInput,
    arrow_named,
    dumps,
    object_named,
    parse_bundle,
    parse_document,
    write_json,
)


FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, 'fixtures')


def fixture(name):
    return os.path.join(FIXTURES, name)


def load_fixture(name):
    with open(fixture(name)) as handle:
        return json.load(handle)


class TestParsing(unittest.TestCase):

    def test_category(self):
        category = parse_bundle(fixture('interval2.json'))
        self.assertIsInstance(category, FinCategory)
        self.assertEqual(standard_category('zigzag_interval', 2), category)

    def test_functor_with_referenced_categories(self):
        functor = parse_bundle(fixture('constant_interval1.json'))
        self.assertIsInstance(functor, FinFunctor)
        self.assertEqual('id:1', functor.on_arrows['s0'])
        self.assertEqual('const(1)', functor.name)

    def test_bundle_with_mixed_references(self):
        functor = parse_bundle(fixture('z4_over_z2.json'))
        self.assertEqual('Z/4', functor.dom.name)
        self.assertEqual('Z/2', functor.cod.name)
        self.assertEqual('id:*', functor.on_arrows['g^2'])

    def test_witness(self):
        witness = parse_bundle(fixture('lift_homotopy.json'))
        self.assertIsInstance(witness, ZigzagWitness)
        self.assertEqual(['bwd'], witness.directions)

    def test_cover(self):
        cover = parse_bundle(fixture('cover_interval2.json'))
        self.assertIsInstance(cover, GeometricCover)
        self.assertEqual(2, len(cover))

    def test_varadarajan_input(self):
        bundle = parse_bundle(fixture('varadarajan_z4.json'))
        self.assertIsInstance(bundle, VaradarajanInput)
        self.assertEqual('*', bundle.basepoint)
        self.assertEqual('g^3', bundle.second.total.on_arrows['g'])

    def test_functor_violation(self):
        with self.assertRaises(FunctorViolation) as context:
            parse_bundle(fixture('bad_functor.json'))
        self.assertIn('s0', str(context.exception))

    def test_missing_reference(self):
        with self.assertRaises(ParseError) as context:
            parse_bundle(fixture('missing_base.json'))
        self.assertIn('no_such_file.json', str(context.exception))
        self.assertEqual('base', context.exception.field)

    def test_missing_file(self):
        with self.assertRaises(ParseError):
            parse_bundle(fixture('nowhere.json'))

    def test_unknown_schema(self):
        with self.assertRaises(ParseError):
            parse_document({"colour": "blue"})
        with self.assertRaises(ParseError):
            parse_document([1, 2])

    def test_unknown_object(self):
        raw = {"dom": "interval1.json", "cod": "interval1.json",
               "on_objects": {"0": "0", "7": "1"}}
        with self.assertRaises(ParseError) as context:
            parse_document(raw, path=fixture('inline.json'))
        self.assertEqual('on_objects', context.exception.field)

    def test_bad_direction(self):
        raw = load_fixture('lift_homotopy.json')
        raw["steps"][0]["dir"] = "sideways"
        with self.assertRaises(ParseError):
            parse_document(raw, path=fixture('inline.json'))

    def test_step_count(self):
        raw = load_fixture('lift_homotopy.json')
        raw["steps"] = []
        with self.assertRaises(ParseError):
            parse_document(raw, path=fixture('inline.json'))

    def test_names(self):
        group = standard_category('cyclic_group', 2)
        self.assertEqual('*', object_named(group, '*'))
        self.assertEqual('id:*', arrow_named(group, 'id:*'))
        with self.assertRaises(ParseError):
            arrow_named(group, 'h')


class TestWriting(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def round_trip(self, value):
        path = os.path.join(self.directory, 'value.json')
        write_json(value, path)
        return parse_bundle(path)

    def test_syntax_error_has_a_line(self):
        path = os.path.join(self.directory, 'broken.json')
        with open(path, 'w') as handle:
            handle.write('{\n  "objects": [\n}\n')
        with self.assertRaises(ParseError) as context:
            parse_bundle(path)
        self.assertEqual(3, context.exception.line)

    def test_dumps_is_deterministic(self):
        category = standard_category('directed_chain', 2)
        self.assertEqual(dumps(category), dumps(category.to_json()))
        self.assertEqual(json.loads(dumps(category))['objects'],
                         ['0', '1', '2'])

    def test_category(self):
        category = standard_category('cyclic_group', 3)
        self.assertEqual(category, self.round_trip(category))

    def test_functor(self):
        group = standard_category('cyclic_group', 2)
        functor = functor_from_maps(group, group, {'*': '*'}, {'g': 'id:*'})
        self.assertEqual(functor, self.round_trip(functor))

    def test_finite_result_replays(self):
        interval = standard_category('zigzag_interval', 1)
        result = distance([standard_functor('identity', interval),
                           standard_functor('constant', interval, interval,
                                            '1')])
        loaded = self.round_trip(result)
        self.assertIsInstance(loaded, InvariantResult)
        self.assertEqual(ExtNat(0), loaded.value)
        self.assertEqual((True, None), replay(loaded))

    def test_infinite_result_replays(self):
        loaded = self.round_trip(
            ccat_direct(standard_category('cyclic_group', 2)))
        self.assertEqual(INF, loaded.value)
        self.assertEqual('(g)', loaded.uncovered.describe())
        self.assertEqual((True, None), replay(loaded))

    def test_complexity_result_replays(self):
        loaded = self.round_trip(
            ctc_direct(standard_category('zigzag_interval', 1)))
        self.assertEqual('cTC', loaded.label)
        self.assertEqual((True, None), replay(loaded))

    def test_tampered_file_fails_replay(self):
        result = ccat_direct(standard_category('zigzag_interval', 1))
        data = result.to_json()
        data["value"] = 1
        path = os.path.join(self.directory, 'tampered.json')
        write_json(data, path)
        ok, _ = replay(parse_bundle(path))
        self.assertFalse(ok)


if __name__ == '__main__':
    import sys
    sys.exit(unittest.main())
