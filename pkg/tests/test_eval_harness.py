import json
import math
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import numpy as np

from src.eval_harness import (
    ESTIMANDS,
    EstimatorSpec,
    SyntheticSpec,
    accuracy,
    expected_dataset,
    load_benchmark_spec,
    relative_errors,
    reliability,
    reports_to_frame,
    run_benchmark,
    synthesize,
)
from src.exceptions import ConfigurationError, DomainError
from src.rpme import RpmeConfig, rpme_estimate


def _lognormal_specs(count, n_draws=400):
    return [
        SyntheticSpec(kind='lognormal', params=(32500.0, 0.6 + 0.05 * i), n_draws=n_draws, seed=100 + i, id=f"ln-{i}")
        for i in range(count)
    ]


class ErrorMetricTests(unittest.TestCase):
    def test_relative_error_spot_check(self):
        (error,) = relative_errors([0.404], [0.429])
        self.assertEqual(round(error), -6)

    def test_zero_truth_excluded(self):
        self.assertEqual(relative_errors([1.0, 2.0], [0.0, 1.0]), [100.0])

    def test_bias_and_rmse(self):
        row = accuracy([1.0, -1.0, 3.0, -3.0], [1, 2, 3, 4], [1, 2, 3, 4], estimand='gini')
        self.assertEqual(row.percent_bias, 0.0)
        self.assertAlmostEqual(row.percent_rmse, math.sqrt(5.0))
        self.assertAlmostEqual(row.reliability, 1.0)
        self.assertEqual(row.n_datasets, 4)

    def test_empty_accuracy(self):
        row = accuracy([], [], [])
        self.assertIsNone(row.percent_bias)
        self.assertIsNone(row.percent_rmse)
        self.assertIsNone(row.reliability)

    def test_reliability_is_affine_invariant(self):
        rng = np.random.default_rng(41)
        for _ in range(100):
            truths = rng.uniform(0.2, 0.6, size=int(rng.integers(3, 40)))
            estimates = truths + rng.normal(0.0, 0.05, size=truths.size)
            a = float(rng.uniform(0.1, 10.0)) * (1 if rng.random() < 0.5 else -1)
            b = float(rng.uniform(-5.0, 5.0))
            self.assertAlmostEqual(reliability(a * estimates + b, truths), reliability(estimates, truths), places=9)

    def test_zero_errors_give_zero_bias_and_rmse(self):
        row = accuracy([0.0, 0.0, 0.0], [0.3, 0.4, 0.5], [0.3, 0.4, 0.5])
        self.assertEqual(row.percent_bias, 0.0)
        self.assertEqual(row.percent_rmse, 0.0)
        self.assertAlmostEqual(row.reliability, 1.0)

    def test_reliability_needs_two_points(self):
        self.assertIsNone(reliability([1.0], [1.0]))
        self.assertAlmostEqual(reliability([1.0, 2.0, 3.0], [2.0, 4.0, 6.5]), np.corrcoef([1, 2, 3], [2, 4, 6.5])[0, 1] ** 2)


class SynthesizeTests(unittest.TestCase):
    def test_deterministic_and_complete(self):
        spec = SyntheticSpec(kind='dagum', params=(40000.0, 3.0, 0.8), n_draws=2000, seed=9)
        ds, truth = synthesize(spec)
        again, truth_again = synthesize(spec)
        self.assertEqual(ds, again)
        self.assertEqual(truth, truth_again)
        self.assertAlmostEqual(ds.n, 2000.0)
        self.assertEqual(ds.B_all, 16)
        self.assertTrue(ds.top.is_unbounded)

    def test_invalid_bin_scheme(self):
        with self.assertRaises(ConfigurationError):
            SyntheticSpec(kind='gamma', params=(1.0, 1.0), n_draws=10, bin_scheme=(5.0, 10.0))

    def test_expected_dataset_total(self):
        ds = expected_dataset('weibull', (40000.0, 1.5), 1234.0)
        self.assertAlmostEqual(ds.n, 1234.0, places=6)


class RunBenchmarkTests(unittest.TestCase):
    def test_reports_per_scheme(self):
        estimators = [
            EstimatorSpec(name='rpme-harmonic', config=RpmeConfig()),
            EstimatorSpec(name='rpme-median', config=RpmeConfig(flavor='median')),
        ]
        reports = run_benchmark(_lognormal_specs(4), estimators)
        self.assertEqual([(r.estimator, r.n_bins) for r in reports], [
            ('rpme-harmonic', 16), ('rpme-harmonic', 8), ('rpme-harmonic', 4),
            ('rpme-median', 16), ('rpme-median', 8), ('rpme-median', 4),
        ])
        for report in reports:
            self.assertEqual(report.n_failures, 0)
            self.assertEqual(set(report.rows), set(ESTIMANDS))
            self.assertEqual(report.rows['gini'].n_datasets, 4)

        frame = reports_to_frame(reports)
        self.assertEqual(len(frame), 6 * len(ESTIMANDS))
        self.assertIn('percent_rmse', frame.columns)

    def test_process_pool_matches_serial(self):
        estimators = [EstimatorSpec(name='rpme', config=RpmeConfig())]
        serial = run_benchmark(_lognormal_specs(3), estimators, jobs=1)
        parallel = run_benchmark(_lognormal_specs(3), estimators, jobs=2)
        self.assertEqual(serial, parallel)

    def test_failures_are_counted(self):
        # α degenerado: a penúltima faixa começa em zero
        spec = SyntheticSpec(kind='lognormal', params=(30.0, 0.5), n_draws=100, bin_scheme=(0.0, 20.0), seed=1)
        reports = run_benchmark([spec], [EstimatorSpec(name='rpme', config=RpmeConfig())], rebin=())
        self.assertEqual(reports[0].n_failures, 1)
        self.assertEqual(reports[0].rows['mean'].n_datasets, 0)

    def test_failed_synthesis_is_counted(self):
        real = synthesize

        def flaky(spec):
            if spec.id == 'ln-1':
                raise DomainError("parâmetros inválidos")
            return real(spec)

        with patch('src.eval_harness.synthesize', side_effect=flaky):
            reports = run_benchmark(_lognormal_specs(3), [EstimatorSpec(name='rpme', config=RpmeConfig())], jobs=1)
        self.assertEqual([r.n_bins for r in reports], [16, 8, 4])
        for report in reports:
            self.assertEqual(report.n_failures, 1)
            self.assertEqual(report.rows['gini'].n_datasets, 2)

    def test_numeric_errors_are_counted(self):
        with patch('src.eval_harness.rpme_estimate', side_effect=ValueError("overflow")):
            reports = run_benchmark(_lognormal_specs(2), [EstimatorSpec(name='rpme', config=RpmeConfig())], jobs=1)
        self.assertEqual([r.n_failures for r in reports], [2, 2, 2])

    def test_accepts_any_named_estimator(self):
        class MidpointOnly:
            name = 'pontos-medios'

            def estimate(self, ds):
                return rpme_estimate(ds, RpmeConfig(flavor='median')).stats

        reports = run_benchmark(_lognormal_specs(2), [MidpointOnly()], rebin=(), jobs=1)
        self.assertEqual([(r.estimator, r.n_bins) for r in reports], [('pontos-medios', 16)])
        self.assertEqual(reports[0].rows['mean'].n_datasets, 2)

    def test_empty_inputs(self):
        with self.assertRaises(ConfigurationError):
            run_benchmark([], [EstimatorSpec(name='rpme', config=RpmeConfig())])


class LoadBenchmarkSpecTests(unittest.TestCase):
    def _write(self, document):
        tmp = tempfile.NamedTemporaryFile('w', suffix='.json', delete=False, encoding='utf-8')
        with tmp:
            if isinstance(document, str):
                tmp.write(document)
            else:
                json.dump(document, tmp)
        self.addCleanup(Path(tmp.name).unlink, missing_ok=True)
        return tmp.name

    def test_replicates_and_ranges(self):
        path = self._write({
            'specs': [{'kind': 'lognormal', 'params': [32500, [0.6, 1.1]], 'n_draws': 500, 'replicates': 3, 'seed': 4}],
            'estimators': [
                {'type': 'rpme', 'flavor': 'geometric'},
                {'type': 'mgbe', 'models': 'gamma,lognormal', 'criterion': 'bic', 'restarts': 2},
            ],
            'rebin': [2],
        })
        bench = load_benchmark_spec(path)
        self.assertEqual(len(bench.specs), 3)
        self.assertEqual(len({spec.seed for spec in bench.specs}), 3)
        for spec in bench.specs:
            self.assertEqual(spec.params[0], 32500.0)
            self.assertTrue(0.6 <= spec.params[1] <= 1.1)
        self.assertEqual([e.name for e in bench.estimators], ['rpme-geometric', 'mgbe-bic-select'])
        self.assertEqual(bench.rebin, (2,))
        self.assertEqual(load_benchmark_spec(path), bench)

    def test_default_rebin(self):
        path = self._write({
            'specs': [{'kind': 'gamma', 'params': [20000, 2], 'n_draws': 100}],
            'estimators': [{'type': 'rpme'}],
        })
        self.assertEqual(load_benchmark_spec(path).rebin, (2, 2))

    def test_invalid_documents(self):
        with self.assertRaises(ConfigurationError):
            load_benchmark_spec(self._write('{not json'))
        with self.assertRaises(ConfigurationError):
            load_benchmark_spec(self._write({'specs': [], 'estimators': [{'type': 'kernel'}]}))
        with self.assertRaises(ConfigurationError):
            load_benchmark_spec(self._write({'estimators': []}))


if __name__ == "__main__":
    unittest.main()
