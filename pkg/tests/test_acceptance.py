"""
Verificações caras (recuperação de parâmetros, regressão de reagrupamento e
vazão). Rodam apenas com BINEQ_SLOW_TESTS=1.
"""
import os
import time
import unittest

import numpy as np

from src.batch_controller import BatchController, MgbeTask, RpmeTask
from src.binned_mle import FitConfig, fit
from src.eval_harness import EstimatorSpec, SyntheticSpec, run_benchmark, synthesize
from src.mgbe import MgbeConfig, mgbe_estimate
from src.rpme import RpmeConfig, rpme_estimate

SLOW = os.getenv('BINEQ_SLOW_TESTS') == '1'

RECOVERY_CASES = [
    ('lognormal', (32500.0, 1.0)),
    ('dagum', (45000.0, 3.0, 0.7)),
    ('weibull', (45000.0, 1.4)),
]


def _suite(count, n_draws=2000, seed=0):
    rng = np.random.default_rng(seed)
    return [
        SyntheticSpec(kind='lognormal', params=(32500.0, float(rng.uniform(0.6, 1.1))),
                      n_draws=n_draws, seed=seed + i + 1, id=f"ln-{i}")
        for i in range(count)
    ]


@unittest.skipUnless(SLOW, "defina BINEQ_SLOW_TESTS=1 para rodar")
class ParameterRecoveryTests(unittest.TestCase):
    def test_generating_kind_is_recovered(self):
        for kind, params in RECOVERY_CASES:
            ds, _ = synthesize(SyntheticSpec(kind=kind, params=params, n_draws=100000, seed=42))
            fitted = fit(ds, kind)
            for got, expected in zip(fitted.params, params):
                self.assertAlmostEqual(got / expected, 1.0, delta=0.03, msg=kind)

    def test_gini_accuracy_of_both_estimators(self):
        for kind, params in RECOVERY_CASES:
            ds, truth = synthesize(SyntheticSpec(kind=kind, params=params, n_draws=100000, seed=42))
            mgbe = mgbe_estimate(ds, MgbeConfig())
            rpme = rpme_estimate(ds, RpmeConfig(flavor='harmonic', alpha_min=1.0))
            self.assertAlmostEqual(mgbe.stats.gini / truth.gini, 1.0, delta=0.02, msg=kind)
            self.assertAlmostEqual(rpme.stats.gini / truth.gini, 1.0, delta=0.04, msg=kind)


@unittest.skipUnless(SLOW, "defina BINEQ_SLOW_TESTS=1 para rodar")
class RebinningRegressionTests(unittest.TestCase):
    def test_gini_error_grows_as_bins_coarsen(self):
        estimators = [
            EstimatorSpec(name='rpme', config=RpmeConfig()),
            EstimatorSpec(name='mgbe', config=MgbeConfig()),
        ]
        reports = run_benchmark(_suite(200), estimators, jobs=os.cpu_count() or 1)
        rmse = {(r.estimator, r.n_bins): r.rows['gini'].percent_rmse for r in reports}
        for name in ('rpme', 'mgbe'):
            self.assertLessEqual(rmse[(name, 16)], rmse[(name, 8)])
            self.assertLessEqual(rmse[(name, 8)], rmse[(name, 4)])
        self.assertLessEqual(rmse[('mgbe', 4)], rmse[('rpme', 4)])


@unittest.skipUnless(SLOW, "defina BINEQ_SLOW_TESTS=1 para rodar")
class ThroughputTests(unittest.TestCase):
    def test_rpme_batch_is_fast(self):
        datasets = [synthesize(spec)[0] for spec in _suite(3000, n_draws=500)]
        started = time.perf_counter()
        stats = BatchController().run(datasets, RpmeTask(), jobs=1)
        self.assertLess(time.perf_counter() - started, 1.0)
        self.assertEqual(stats['erros'], 0)

    def test_rpme_much_faster_than_mgbe(self):
        datasets = [synthesize(spec)[0] for spec in _suite(100, n_draws=1000)]
        started = time.perf_counter()
        BatchController().run(datasets, RpmeTask(), jobs=1)
        rpme_seconds = time.perf_counter() - started

        started = time.perf_counter()
        BatchController().run(datasets, MgbeTask(MgbeConfig(fit=FitConfig())), jobs=4)
        mgbe_seconds = time.perf_counter() - started

        self.assertLess(mgbe_seconds, 300.0)
        self.assertGreaterEqual(mgbe_seconds / max(rpme_seconds, 1e-9), 100.0)


if __name__ == "__main__":
    unittest.main()
