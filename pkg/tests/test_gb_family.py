import math
import unittest

import numpy as np
from scipy import integrate

from src.exceptions import DomainError
from src.gb_family import (
    DistributionKind,
    cdf,
    check_params,
    from_unconstrained,
    gb2,
    moment_exists,
    param_names,
    parse_kind,
    pdf,
    quantile,
    quantile_by_root,
    sf,
    to_unconstrained,
)


QUADRATURE_PARAMS = {
    DistributionKind.WEIBULL: (40000.0, 1.5),
    DistributionKind.LOGLOGISTIC: (40000.0, 3.0),
    DistributionKind.PARETO2: (40000.0, 2.5),
    DistributionKind.GAMMA: (20000.0, 2.0),
    DistributionKind.LOGNORMAL: (32500.0, 0.8),
    DistributionKind.DAGUM: (40000.0, 3.0, 0.8),
    DistributionKind.SINGHMADDALA: (40000.0, 2.0, 1.5),
    DistributionKind.BETA2: (40000.0, 2.0, 3.0),
    DistributionKind.GENGAMMA: (20000.0, 2.0, 1.2),
    DistributionKind.GB2: (40000.0, 3.0, 1.2, 1.5),
}


def _random_params(rng, kind):
    scale = float(rng.uniform(1e3, 1e5))
    shapes = tuple(float(v) for v in rng.uniform(0.6, 3.0, size=kind.k - 1))
    return (scale,) + shapes


class KindTests(unittest.TestCase):
    def test_canonical_order_and_sizes(self):
        self.assertEqual([k.value for k in DistributionKind][:3], ['weibull', 'loglogistic', 'pareto2'])
        self.assertEqual(DistributionKind.GB2.order, 9)
        self.assertEqual(DistributionKind.WEIBULL.k, 2)
        self.assertEqual(DistributionKind.DAGUM.k, 3)
        self.assertEqual(DistributionKind.GB2.k, 4)
        self.assertEqual(param_names('gb2'), ('mu', 'sigma', 'nu', 'tau'))

    def test_parse_aliases(self):
        self.assertIs(parse_kind('Singh-Maddala'), DistributionKind.SINGHMADDALA)
        self.assertIs(parse_kind('log_normal'), DistributionKind.LOGNORMAL)
        self.assertIs(parse_kind('fisk'), DistributionKind.LOGLOGISTIC)
        with self.assertRaises(DomainError):
            parse_kind('cauchy')

    def test_check_params(self):
        with self.assertRaises(DomainError):
            check_params('dagum', (1.0, 2.0))
        with self.assertRaises(DomainError):
            check_params('gamma', (1.0, -2.0))
        self.assertEqual(check_params('gamma', (1, 2)), (1.0, 2.0))

    def test_cdf_rejects_negative_income(self):
        with self.assertRaises(DomainError):
            cdf('lognormal', (30000.0, 0.8), -1.0)

    def test_unconstrained_chart(self):
        params = (32500.0, 0.7, 1.3)
        np.testing.assert_allclose(from_unconstrained(to_unconstrained(params)), params, rtol=1e-14)


class NestingTests(unittest.TestCase):
    def test_gb2_restrictions_match_nested_kinds(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            mu = float(rng.uniform(1e3, 1e5))
            sigma, nu, tau = (float(v) for v in rng.uniform(0.5, 4.0, size=3))
            x = mu * rng.uniform(0.05, 20.0, size=8)
            cases = [
                ('dagum', (mu, sigma, nu), (mu, sigma, nu, 1.0)),
                ('singhmaddala', (mu, sigma, tau), (mu, sigma, 1.0, tau)),
                ('beta2', (mu, nu, tau), (mu, 1.0, nu, tau)),
                ('pareto2', (mu, tau), (mu, 1.0, 1.0, tau)),
                ('loglogistic', (mu, sigma), (mu, sigma, 1.0, 1.0)),
            ]
            for kind, nested, full in cases:
                np.testing.assert_allclose(cdf(kind, nested, x), cdf('gb2', full, x), atol=1e-10, err_msg=kind)

    def test_gamma_embeddings(self):
        rng = np.random.default_rng(37)
        for _ in range(100):
            scale = float(rng.uniform(1e3, 1e5))
            shape = float(rng.uniform(0.3, 5.0))
            x = scale * rng.uniform(0.01, 10.0, size=8)
            np.testing.assert_allclose(cdf('gengamma', (scale, shape, 1.0), x), cdf('gamma', (scale, shape), x),
                                       atol=1e-12)
            np.testing.assert_allclose(cdf('gamma', (scale, 1.0), x), cdf('weibull', (scale, 1.0), x), atol=1e-12)

    def test_sf_complements_cdf(self):
        rng = np.random.default_rng(3)
        for kind in DistributionKind:
            params = _random_params(rng, kind)
            x = params[0] * np.array([0.1, 0.5, 1.0, 2.0, 5.0])
            np.testing.assert_allclose(cdf(kind, params, x) + sf(kind, params, x), 1.0, atol=1e-12)


class QuantileTests(unittest.TestCase):
    def test_round_trip(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            kind = list(DistributionKind)[int(rng.integers(0, len(DistributionKind)))]
            params = _random_params(rng, kind)
            p = rng.uniform(0.01, 0.99, size=5)
            x = quantile(kind, params, p)
            np.testing.assert_allclose(cdf(kind, params, x), p, atol=1e-8, err_msg=kind.value)

    def test_root_finding_matches_closed_form(self):
        params = (32500.0, 0.9)
        for p in (0.001, 0.3, 0.5, 0.8, 0.999):
            self.assertAlmostEqual(
                quantile_by_root('lognormal', params, p) / quantile('lognormal', params, p), 1.0, places=9
            )

    def test_scale_equivariance(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            kind = list(DistributionKind)[int(rng.integers(0, len(DistributionKind)))]
            params = _random_params(rng, kind)
            factor = float(rng.uniform(0.1, 10.0))
            scaled = (params[0] * factor,) + params[1:]
            p = float(rng.uniform(0.05, 0.95))
            self.assertAlmostEqual(quantile(kind, scaled, p) / (factor * quantile(kind, params, p)), 1.0, places=8)

    def test_open_interval(self):
        with self.assertRaises(DomainError):
            quantile('gamma', (1.0, 2.0), 1.0)
        with self.assertRaises(DomainError):
            quantile_by_root('gamma', (1.0, 2.0), 0.0)

    def test_lognormal_median_is_scale(self):
        self.assertAlmostEqual(quantile('lognormal', (32500.0, 1.0), 0.5), 32500.0, places=6)


class MomentTests(unittest.TestCase):
    def test_pareto_tailed_existence(self):
        self.assertTrue(moment_exists('dagum', (40000.0, 1.5, 0.8), 1))
        self.assertFalse(moment_exists('dagum', (40000.0, 1.5, 0.8), 2))
        self.assertTrue(moment_exists('singhmaddala', (40000.0, 2.0, 0.8), 1))
        self.assertFalse(moment_exists('singhmaddala', (40000.0, 2.0, 0.8), 2))
        self.assertFalse(moment_exists('pareto2', (40000.0, 1.0), 1))
        self.assertTrue(moment_exists('lognormal', (40000.0, 3.0), 2))
        with self.assertRaises(DomainError):
            moment_exists('gamma', (1.0, 1.0), 3)

    def test_density_integrates_to_one(self):
        for kind, params in QUADRATURE_PARAMS.items():
            low = math.log(quantile(kind, params, 1e-12))
            high = math.log(quantile(kind, params, 1.0 - 1e-9))
            total, _ = integrate.quad(lambda u: pdf(kind, params, math.exp(u)) * math.exp(u), low, high, limit=200)
            self.assertAlmostEqual(total, 1.0, delta=1e-6, msg=kind.value)

    def test_mean_by_quadrature_matches_closed_form(self):
        mu, sigma, nu = QUADRATURE_PARAMS[DistributionKind.DAGUM]
        dagum_mean = mu * math.exp(math.lgamma(nu + 1 / sigma) + math.lgamma(1 - 1 / sigma) - math.lgamma(nu))
        scale, sdlog = QUADRATURE_PARAMS[DistributionKind.LOGNORMAL]
        theta, shape = QUADRATURE_PARAMS[DistributionKind.GAMMA]
        gb2_params = QUADRATURE_PARAMS[DistributionKind.GB2]
        closed_forms = {
            DistributionKind.DAGUM: dagum_mean,
            DistributionKind.LOGNORMAL: scale * math.exp(sdlog ** 2 / 2),
            DistributionKind.GAMMA: theta * shape,
            DistributionKind.GB2: gb2.mean(*gb2_params[1:], scale=gb2_params[0]),
        }
        for kind, expected in closed_forms.items():
            params = QUADRATURE_PARAMS[kind]
            low = math.log(quantile(kind, params, 1e-12))
            high = math.log(quantile(kind, params, 1.0 - 1e-12))
            mean, _ = integrate.quad(lambda u: pdf(kind, params, math.exp(u)) * math.exp(2 * u), low, high, limit=200)
            self.assertAlmostEqual(mean / expected, 1.0, delta=1e-4, msg=kind.value)

    def test_gb2_mean_formula(self):
        sigma, nu, tau, mu = 2.5, 0.9, 2.0, 1.0
        expected = math.exp(math.lgamma(nu + 1 / sigma) + math.lgamma(tau - 1 / sigma)
                            - math.lgamma(nu) - math.lgamma(tau))
        self.assertAlmostEqual(gb2.mean(sigma, nu, tau, scale=mu), expected, places=10)


if __name__ == "__main__":
    unittest.main()
