"""
The command line verbs, their output and exit statuses.
"""
import io
import json
import os
import shutil
import tempfile
import unittest

from mock import patch

from fincat.cli import FAILED, INVALID, OK, run
from fincat.extnat import INF, ExtNat
from fincat.verify import InequalityReport


FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, 'fixtures')


def fixture(name):
    return os.path.join(FIXTURES, name)


class CliTestCase(unittest.TestCase):

    def run_cli(self, *argv):
        stdout = io.StringIO()
        status = run(list(argv), stdout=stdout)
        return status, stdout.getvalue()


class TestInvariantVerbs(CliTestCase):

    def test_ccat_of_interval(self):
        status, output = self.run_cli('ccat', fixture('interval2.json'))
        self.assertEqual(OK, status)
        self.assertIn('ccat = 0\n', output)
        self.assertIn('cover size = 1\n', output)

    def test_ccat_of_group(self):
        status, output = self.run_cli('ccat', fixture('cyclic2.json'))
        self.assertEqual(OK, status)
        self.assertIn('ccat = inf\n', output)
        self.assertIn('uncovered chain = (g)\n', output)

    def test_ccat_json(self):
        status, output = self.run_cli('ccat', '--json',
                                      fixture('point.json'))
        self.assertEqual(OK, status)
        data = json.loads(output)
        self.assertEqual('ccat', data['invariant'])
        self.assertEqual(0, data['value'])

    def test_ctc(self):
        status, output = self.run_cli('ctc', fixture('interval1.json'))
        self.assertEqual(OK, status)
        self.assertIn('cTC = 0\n', output)

    def test_ctcn_on_point(self):
        status, output = self.run_cli('ctcn', '--n', '4',
                                      fixture('point.json'))
        self.assertEqual(OK, status)
        self.assertIn('cTC_4 = 0\n', output)

    def test_cd(self):
        status, output = self.run_cli('cd', fixture('identity_cyclic2.json'),
                                      fixture('trivial_cyclic2.json'))
        self.assertEqual(OK, status)
        self.assertIn('cD = inf\n', output)

    def test_cd_mismatch(self):
        status, output = self.run_cli('cd', fixture('identity_cyclic2.json'),
                                      fixture('identity_interval1.json'))
        self.assertEqual(INVALID, status)
        self.assertIn('error: DomainMismatch', output)

    def test_homotopic(self):
        status, output = self.run_cli(
            'homotopic', fixture('identity_interval1.json'),
            fixture('constant_interval1.json'))
        self.assertEqual(OK, status)
        self.assertIn('zigzag length = 1\n', output)
        status, output = self.run_cli(
            'homotopic', fixture('identity_cyclic2.json'),
            fixture('trivial_cyclic2.json'))
        self.assertEqual(FAILED, status)
        self.assertIn('homotopic = no\n', output)

    def test_tiny_budget(self):
        status, output = self.run_cli('ccat', '--budget', '1',
                                      fixture('chain2.json'))
        self.assertEqual(INVALID, status)
        self.assertIn('SizeBudgetExceeded', output)


class TestDocumentVerbs(CliTestCase):

    @patch('sys.stderr', new_callable=io.StringIO)
    def test_usage_errors(self, mock_stderr):
        self.assertEqual(INVALID, self.run_cli('frobnicate')[0])
        self.assertEqual(INVALID, self.run_cli()[0])
        self.assertEqual(INVALID, self.run_cli('ctcn', '--n', 'three',
                                               fixture('point.json'))[0])
        self.assertIn('usage:', mock_stderr.getvalue())

    def test_validate(self):
        status, output = self.run_cli('validate', fixture('chain2.json'))
        self.assertEqual(OK, status)
        self.assertIn('category [2]: 3 objects, 6 arrows', output)

    def test_validate_bad_functor(self):
        status, output = self.run_cli('validate', fixture('bad_functor.json'))
        self.assertEqual(INVALID, status)
        self.assertIn('FunctorViolation', output)

    def test_missing_reference(self):
        status, output = self.run_cli('validate',
                                      fixture('missing_base.json'))
        self.assertEqual(INVALID, status)
        self.assertIn('ParseError', output)

    def test_wrong_document(self):
        status, _ = self.run_cli('ccat', fixture('cover_interval2.json'))
        self.assertEqual(INVALID, status)

    def test_cover_check(self):
        status, output = self.run_cli('cover-check',
                                      fixture('cover_interval2.json'))
        self.assertEqual(OK, status)
        self.assertEqual('cover = yes\n', output)
        status, output = self.run_cli('cover-check',
                                      fixture('cover_chain2_broken.json'))
        self.assertEqual(FAILED, status)
        self.assertIn('uncovered chain = (0->1, 1->2)', output)

    def test_random(self):
        first = self.run_cli('random', '--seed', '9', '--json')
        second = self.run_cli('random', '--seed', '9', '--json')
        self.assertEqual(first, second)
        self.assertEqual('random9', json.loads(first[1])['name'])


class TestFibrationVerbs(CliTestCase):

    def test_fib_check(self):
        status, output = self.run_cli('fib-check',
                                      fixture('z4_over_z2.json'))
        self.assertEqual(OK, status)
        self.assertIn('fibration: yes, op-fibration: yes', output)

    def test_fib_check_without_op_lifts(self):
        status, output = self.run_cli('fib-check', fixture('nosobre.json'))
        self.assertEqual(FAILED, status)
        self.assertIn('no op-cartesian lift of s with domain 0', output)

    def test_fiber(self):
        status, output = self.run_cli('fiber', fixture('nosobre.json'),
                                      '--object', '1')
        self.assertEqual(OK, status)
        self.assertIn('fiber objects = 0\n', output)

    def test_fiber_unknown_object(self):
        status, _ = self.run_cli('fiber', fixture('nosobre.json'),
                                 '--object', 'x')
        self.assertEqual(INVALID, status)

    def test_transport_without_lift(self):
        status, output = self.run_cli('transport', fixture('nosobre.json'),
                                      '--arrow', 's')
        self.assertEqual(FAILED, status)
        self.assertIn('error = ', output)

    def test_equiv(self):
        status, output = self.run_cli(
            'equiv', fixture('equivalent_fibers.json'), '--arrow', 's')
        self.assertEqual(OK, status)
        self.assertIn('isomorphism = no\n', output)
        self.assertIn('fiber objects = 1 and 2\n', output)

    def test_lift(self):
        status, output = self.run_cli(
            'lift', fixture('equivalent_fibers.json'),
            fixture('lift_start.json'), fixture('lift_homotopy.json'))
        self.assertEqual(OK, status)
        self.assertIn('lift = yes\n', output)

    def test_tanaka(self):
        status, output = self.run_cli('tanaka', fixture('z4_over_z2.json'),
                                      '--object', '*')
        self.assertEqual(OK, status)
        self.assertIn('(holds)', output)

    def test_tanaka_not_a_bifibration(self):
        status, output = self.run_cli('tanaka', fixture('nosobre.json'),
                                      '--object', '0')
        self.assertEqual(INVALID, status)
        self.assertIn('NotBiFibration', output)

    def test_varadarajan(self):
        status, output = self.run_cli('varadarajan',
                                      fixture('varadarajan_z4.json'))
        self.assertEqual(OK, status)
        self.assertIn('inf <= inf (holds)', output)
        self.assertIn('cD(F_b,G_b) = 0\n', output)


class TestSuiteVerb(CliTestCase):

    def test_fixture_categories(self):
        status, output = self.run_cli('suite', fixture('interval1.json'),
                                      fixture('cyclic2.json'))
        self.assertEqual(OK, status)
        self.assertIn('violations = 0\n', output)

    @patch('fincat.cli.check_inequality_suite')
    def test_violation_exit_status(self, mock_suite):
        mock_suite.return_value = [
            InequalityReport('cD(F,G) <= ccat(C) [x]', INF, ExtNat(0))]
        status, output = self.run_cli('suite', fixture('point.json'))
        self.assertEqual(FAILED, status)
        self.assertIn('VIOLATED', output)
        self.assertIn('violations = 1\n', output)


class TestWitnessFiles(CliTestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_result_replays(self):
        path = os.path.join(self.directory, 'ccat.json')
        status, _ = self.run_cli('ccat', '--witness', path,
                                 fixture('interval2.json'))
        self.assertEqual(OK, status)
        status, output = self.run_cli('replay', path)
        self.assertEqual(OK, status)
        self.assertEqual('replay = yes\n', output)

    def test_zigzag_replays(self):
        path = os.path.join(self.directory, 'zigzag.json')
        self.run_cli('homotopic', '--witness', path,
                     fixture('identity_interval1.json'),
                     fixture('constant_interval1.json'))
        status, output = self.run_cli('replay', path)
        self.assertEqual(OK, status)
        self.assertEqual('replay = yes\n', output)

    def test_tampered_zigzag(self):
        path = os.path.join(self.directory, 'zigzag.json')
        self.run_cli('homotopic', '--witness', path,
                     fixture('identity_interval1.json'),
                     fixture('constant_interval1.json'))
        with open(path) as handle:
            data = json.load(handle)
        data['steps'][0]['components']['0'] = 'id:0'
        with open(path, 'w') as handle:
            json.dump(data, handle)
        status, output = self.run_cli('replay', path)
        self.assertEqual(FAILED, status)
        self.assertIn('replay = no\n', output)


if __name__ == '__main__':
    import sys
    sys.exit(unittest.main())
