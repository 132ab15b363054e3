# src/cli.py
"""
Interface de linha de comando: subcomandos rpme, mgbe e eval.

Códigos de saída: 0 sucesso; 1 erro de uso ou de E/S; 2 quando algum
dataset falhou (a falha aparece na coluna `error`).
"""

import argparse
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from src import config
from src.batch_controller import BatchController, MgbeTask, RpmeTask
from src.binned_core import BinnedDataset
from src.binned_mle import FitConfig
from src.dataset_reader import DatasetReader
from src.eval_harness import load_benchmark_spec, reports_to_frame, run_benchmark
from src.exceptions import BinequalityException, ConfigurationError, UsageError
from src.gb_family import DistributionKind
from src.interfaces import DatasetSource
from src.logger import get_logger
from src.mgbe import MgbeConfig
from src.report_writer import STDOUT, ReportWriter
from src.rpme import RpmeConfig, TopBinFlavor
from src.validators import OUTPUT_FORMATS, Validators

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATASET_FAILED = 2
SUBCOMMANDS = ('rpme', 'mgbe', 'eval')


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    input: Optional[str] = None
    output: str = STDOUT
    format: str = 'csv'
    scale: float = 1.0
    jobs: int = config.DEFAULT_JOBS
    seed: int = config.DEFAULT_SEED
    spec: Optional[str] = None
    options: Dict = field(default_factory=dict)

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigurationError(f"Subcomando desconhecido: {self.subcommand}")
        path = self.spec if self.subcommand == 'eval' else self.input
        checks = [
            Validators.validate_file_path(path),
            Validators.validate_output_format(self.format),
            Validators.validate_scale(self.scale),
            Validators.validate_jobs(self.jobs),
        ]
        if not self.output:
            checks.append((False, "Caminho de saída não pode estar vazio"))
        for ok, msg in checks:
            if not ok:
                raise ConfigurationError(msg)
        object.__setattr__(self, 'format', self.format.lower())


def _add_shared(parser: argparse.ArgumentParser, needs_input: bool = True):
    if needs_input:
        parser.add_argument('--input', required=True, help='CSV ou XLSX com dataset_id,bin_min,bin_max,count')
        parser.add_argument('--scale', type=float, default=1.0, help='divisor das contagens (fração amostral)')
    parser.add_argument('--output', default=STDOUT, help="arquivo de saída ('-' para stdout)")
    parser.add_argument('--format', default='csv', choices=OUTPUT_FORMATS)
    parser.add_argument('--jobs', type=int, default=config.DEFAULT_JOBS)
    parser.add_argument('--seed', type=int, default=config.DEFAULT_SEED)
    parser.add_argument('--log-level', default=None, choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='binequality', description='Estatísticas de desigualdade a partir de faixas de renda')
    subparsers = parser.add_subparsers(dest='subcommand', parser_class=_Parser)
    subparsers.required = True

    rpme = subparsers.add_parser('rpme', help='ponto médio com topo de Pareto robusto')
    _add_shared(rpme)
    rpme.add_argument('--flavor', default=TopBinFlavor.HARMONIC.value, choices=[f.value for f in TopBinFlavor])
    rpme.add_argument('--alpha-min', type=float, default=None,
                      help='padrão: 1 (aritmético: 2)')

    mgbe = subparsers.add_parser('mgbe', help='beta generalizado multimodelo')
    _add_shared(mgbe)
    mgbe.add_argument('--models', default='all', help="lista separada por vírgulas ou 'all'")
    mgbe.add_argument('--criterion', default='aic', choices=('aic', 'bic'))
    mgbe.add_argument('--combine', default='select', choices=('select', 'average'))
    mgbe.add_argument('--quantiles', type=int, default=config.DEFAULT_QUANTILES)
    mgbe.add_argument('--rel-tol', type=float, default=config.FIT_REL_TOL)
    mgbe.add_argument('--max-iter', type=int, default=config.FIT_MAX_ITER)
    mgbe.add_argument('--restarts', type=int, default=config.FIT_RESTARTS)
    mgbe.add_argument('--model-jobs', type=int, default=1, help='threads por dataset (um modelo por thread)')

    evaluate = subparsers.add_parser('eval', help='avaliação com verdade sintética')
    _add_shared(evaluate, needs_input=False)
    evaluate.add_argument('--spec', required=True, help='JSON do benchmark')
    return parser


def _parse_models(text: str) -> tuple:
    if text.strip().lower() == 'all':
        return tuple(DistributionKind)
    return tuple(name.strip() for name in text.split(',') if name.strip())


def _run_config(args: argparse.Namespace) -> RunConfig:
    options = {}
    if args.subcommand == 'rpme':
        options['rpme'] = RpmeConfig(flavor=args.flavor, alpha_min=args.alpha_min)
    elif args.subcommand == 'mgbe':
        options['mgbe'] = MgbeConfig(
            models=_parse_models(args.models),
            criterion=args.criterion,
            combine=args.combine,
            q=args.quantiles,
            fit=FitConfig(rel_tol=args.rel_tol, max_iter=args.max_iter, restarts=args.restarts, seed=args.seed),
            model_jobs=args.model_jobs,
        )
    return RunConfig(
        subcommand=args.subcommand,
        input=getattr(args, 'input', None),
        output=args.output,
        format=args.format,
        scale=getattr(args, 'scale', 1.0),
        jobs=args.jobs,
        seed=args.seed,
        spec=getattr(args, 'spec', None),
        options=options,
    )


def _read_datasets(source: DatasetSource, scale: float) -> Optional[List[BinnedDataset]]:
    """Lê os datasets da fonte; None (com log) se a leitura falhar."""
    if not source.read(scale=scale):
        get_logger().error(source.last_error)
        return None
    return source.get_datasets()


def _run_estimator(run: RunConfig) -> int:
    logger = get_logger()
    datasets = _read_datasets(DatasetReader(run.input), run.scale)
    if datasets is None:
        return EXIT_USAGE
    logger.info(f"{len(datasets)} datasets lidos de {run.input}")

    if run.subcommand == 'rpme':
        task = RpmeTask(cfg=run.options['rpme'])
    else:
        task = MgbeTask(cfg=run.options['mgbe'], details=run.format == 'json')

    controller = BatchController(log_fn=logger.info)
    stats = controller.run(datasets, task, jobs=run.jobs)
    summary = {'command': run.subcommand, 'total': stats['total'], 'ok': stats['ok'], 'erros': stats['erros']}
    ReportWriter(run.output, run.format).write_rows(stats['rows'], task.columns, summary)
    return EXIT_DATASET_FAILED if stats['erros'] else EXIT_OK


def _run_eval(run: RunConfig) -> int:
    logger = get_logger()
    bench = load_benchmark_spec(run.spec, seed=run.seed)
    logger.info(
        f"Benchmark: {len(bench.specs)} conjuntos sintéticos, {len(bench.estimators)} estimadores, "
        f"reagrupamento {list(bench.rebin)}"
    )
    reports = run_benchmark(bench.specs, bench.estimators, rebin=bench.rebin, jobs=run.jobs)
    failures = sum(report.n_failures for report in reports)
    summary = {
        'command': 'eval',
        'n_datasets': len(bench.specs),
        'estimators': [e.name for e in bench.estimators],
        'rebin': list(bench.rebin),
        'n_failures': failures,
    }
    ReportWriter(run.output, run.format).write_frame(reports_to_frame(reports), summary)
    if failures:
        logger.warning(f"{failures} estimativas falharam durante o benchmark")
    return EXIT_DATASET_FAILED if failures else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Ponto de entrada do CLI.

    Returns:
        int: Código de saída
    """
    logger = get_logger()
    try:
        args = build_parser().parse_args(argv)
        if args.log_level:
            logger.set_console_level(args.log_level)
        run = _run_config(args)
    except BinequalityException as e:
        logger.error(f"Erro de uso: {e}")
        return EXIT_USAGE

    try:
        if run.subcommand == 'eval':
            return _run_eval(run)
        return _run_estimator(run)
    except BinequalityException as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"Erro de E/S: {e}")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
