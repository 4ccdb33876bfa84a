#
# Copyright (C) 2026 The skewtest Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Command-line front end.

    skewtest curve --family skew --baseline normal --out-dir out/curve
    skewtest test --data data/ais_female_bmi.csv --column bmi --prior dimom
    skewtest simulate --config sim_config.json --N 200 --out-dir out/sim
    skewtest fit-rate --baseline normal

Exit codes: 0 success, 2 usage or invalid argument, 3 numerical failure,
4 data error.
"""
from __future__ import absolute_import
from __future__ import print_function

import argparse
import collections
import json
import logging
import os
import sys

import numpy as np

import skewtest.config
from skewtest import dataio
from skewtest import discrepancy
from skewtest import evidence
from skewtest import priors
from skewtest.errors import InvalidArgumentError
from skewtest.errors import NumericalError
from skewtest.errors import SkewtestError
from skewtest.kernels import BASELINES
from skewtest.manifest import RunManifest
from skewtest.simulation import experiment
from skewtest.simulation.config import SimConfig
from skewtest.simulation.config import get_config_dict
from skewtest.simulation.printers import StdoutPrinter
from skewtest.timer import TimingReport


def logger():
    return logging.getLogger(__name__)


SEED_ENV = 'SKEWTEST_SEED'


def _out_dir(path):
    if not os.path.isdir(path):
        os.makedirs(path)
    return path


def _write_json(document, path):
    with open(path, 'w') as json_file:
        json.dump(document, json_file, indent=2)
        json_file.write('\n')


def _prior_plot_table(curve, spec):
    table = {
        'x': curve.lambdas,
        'series': collections.OrderedDict(
            [('exact', spec.density(curve.lambdas))]),
        'ylabel': 'prior density',
        'title': 'MOOMIN prior, {}'.format(curve.label),
    }
    if curve.family == 'skew' and curve.baseline == 'normal':
        approx = priors.MoominApprox().normalize()
        table['series']['approximate'] = approx.density(curve.lambdas)
    return table


def cmd_curve(args):
    timings = TimingReport()
    out_dir = _out_dir(args.out_dir)
    grid = discrepancy.default_grid(args.family, args.grid_min,
                                    args.grid_max, args.nodes)
    with timings.time('curve'):
        curve = discrepancy.build_curve(args.family, args.baseline, grid)
    with timings.time('prior'):
        spec = priors.MoominExact.from_context(
            priors.MoominContext(curve)).normalize()

    curve.write_csv(os.path.join(out_dir, 'curve.csv'))
    priors.write_prior_csv(spec, curve.lambdas,
                           os.path.join(out_dir, 'prior.csv'))
    dataio.emit_plot('curve', {
        'x': curve.lambdas,
        'series': {'D_min': curve.d_min},
        'ylabel': 'minimum discrepancy',
        'title': curve.label,
    }, os.path.join(out_dir, 'discrepancy.svg'))
    dataio.emit_plot('curve', {
        'x': curve.lambdas,
        'series': {'signed': curve.signed},
        'ylabel': 'signed discrepancy',
        'title': curve.label,
    }, os.path.join(out_dir, 'signed.svg'))
    dataio.emit_plot('curve', _prior_plot_table(curve, spec),
                     os.path.join(out_dir, 'prior.svg'))

    RunManifest('curve', collections.OrderedDict([
        ('family', args.family),
        ('baseline', args.baseline),
        ('grid_min', float(grid[0])),
        ('grid_max', float(grid[-1])),
        ('nodes', len(grid)),
    ])).write(out_dir)
    low, high = curve.span
    print('{}: D_min({:g}) = {:.6f}, D_min({:g}) = {:.6f}'.format(
        curve.label, low, curve.d_min[0], high, curve.d_min[-1]))
    print(timings.to_string())
    return 0


def _load_data(args):
    dataset = dataio.load_column(args.data, args.column, args.delimiter)
    outliers = None
    if args.remove_outliers:
        outliers = dataio.mad_outliers(dataset, args.mad_threshold)
        print('removed {} outlier(s): {}'.format(
            outliers.count, ', '.join('{:g}'.format(v)
                                      for v in outliers.flagged_values)))
        dataset = outliers.remove(dataset)
    return dataset, outliers


def _make_test_priors(args):
    names = args.prior or ['jeffreys', 'dimom', 'moomin']
    specs = []
    for name in names:
        context = None
        if name == 'moomin-exact' and args.curve:
            curve = discrepancy.DiscrepancyCurve.read_csv(
                args.curve, 'skew', args.baseline)
            context = priors.MoominContext(curve)
        specs.append(priors.make_prior(name, args.baseline,
                                       args.jeffreys_scale, context))
    return specs


def cmd_test(args):
    out_dir = _out_dir(args.out)
    dataset, outliers = _load_data(args)
    specs = _make_test_priors(args)
    results = evidence.bayes_tests(dataset, args.baseline, specs, args.engine,
                                   prior_odds=args.prior_odds)

    print('n = {}'.format(dataset.n))
    print('BIC alternative {:.2f}, null {:.2f}'.format(
        results[0].bic_alt, results[0].bic_null))
    print('{:<14} {:>10} {:>10}'.format('prior', 'log BF', 'P(alt)'))
    for result in results:
        print('{:<14} {:>10.4f} {:>10.4f}'.format(
            result.prior, result.log_bf_10, result.post_prob_alt))

    document = collections.OrderedDict([
        ('data', collections.OrderedDict([
            ('path', args.data), ('column', dataset.label),
            ('n', dataset.n)])),
        ('outliers', outliers.to_dict() if outliers is not None else None),
        ('results', [result.to_dict() for result in results]),
    ])
    _write_json(document, os.path.join(out_dir, 'test_result.json'))
    RunManifest('test', collections.OrderedDict([
        ('data', args.data),
        ('column', args.column),
        ('baseline', args.baseline),
        ('priors', [spec.to_dict() for spec in specs
                    if spec.kind != 'moomin_exact'] +
         [spec.identifier() for spec in specs if spec.kind == 'moomin_exact']),
        ('engine', args.engine),
        ('remove_outliers', args.remove_outliers),
        ('mad_threshold', args.mad_threshold),
        ('prior_odds', args.prior_odds),
    ])).write(out_dir)
    return 0


def _simulation_config(args):
    document = get_config_dict(args.config)
    if 'master_seed' not in document and os.environ.get(SEED_ENV):
        try:
            document['master_seed'] = int(os.environ[SEED_ENV])
        except ValueError:
            raise InvalidArgumentError('{} must be an integer'.format(
                SEED_ENV))
    return SimConfig.from_dict(document).replace(
        sample_sizes=args.n, lambdas=args.lam, replications=args.N,
        priors=args.prior, master_seed=args.seed, engine=args.engine,
        baseline=args.baseline)


def cmd_simulate(args):
    timings = TimingReport()
    out_dir = _out_dir(args.out_dir)
    cfg = _simulation_config(args)
    printer = StdoutPrinter(show_all=args.show_all)
    with timings.time('simulation'):
        if args.rate_study:
            study, result = experiment.rate_study(cfg, args.threads, printer)
        else:
            study, result = None, experiment.run_experiment(
                cfg, args.threads, printer)

    result.write_csv(os.path.join(out_dir, 'simulation.csv'))
    result.write_summary(os.path.join(out_dir, 'summary.json'))
    result.write_boxplots(out_dir)
    if study is not None:
        _write_json(study.to_dict(), os.path.join(out_dir, 'rate_study.json'))
    RunManifest('simulate', result.cfg.to_dict(),
                seed=result.cfg.master_seed).write(out_dir)

    printer.print_summary(result.report)
    if study is not None:
        print()
        print(study.to_string())
    print(timings.to_string())
    for warning in result.warnings:
        logger().warning('degraded cell: %s', warning)
    if args.strict and result.degraded:
        raise NumericalError('experiment degraded: {}'.format(
            '; '.join(result.warnings)))
    return 0


def cmd_fit_rate(args):
    grid = priors.vanishing_grid(args.halfwidth, args.nodes)
    curve = discrepancy.build_curve(args.family, args.baseline,
                                    np.union1d(grid, [0.0]))
    rate = priors.fit_vanishing_rate(priors.MoominContext(curve),
                                     args.halfwidth, args.nodes)
    print('{}: slope {:.4f}, nearest even power {}'.format(
        curve.label, rate.slope, rate.even_power))
    if args.out_dir:
        out_dir = _out_dir(args.out_dir)
        document = rate.to_dict()
        document['family'] = args.family
        document['baseline'] = args.baseline
        document['halfwidth'] = args.halfwidth
        _write_json(document, os.path.join(out_dir, 'fit_rate.json'))
        RunManifest('fit-rate', collections.OrderedDict([
            ('family', args.family),
            ('baseline', args.baseline),
            ('halfwidth', args.halfwidth),
            ('nodes', args.nodes),
        ])).write(out_dir)
    return 0


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError('must be at least 1: ' + text)
    return value


def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog='skewtest',
        description='Objective Bayesian tests of symmetry against '
                    'skew-symmetric alternatives.')
    parser.add_argument(
        '--version', action='version',
        version='%(prog)s ' + skewtest.config.version)
    parser.add_argument(
        '-v', '--verbose', action='count', default=0,
        help='Increase log level. Defaults to logging.WARNING.')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    baselines = sorted(BASELINES)

    curve = subparsers.add_parser(
        'curve', help='Tabulate the minimum discrepancy and MOOMIN prior.')
    curve.add_argument('--family', choices=discrepancy.FAMILIES,
                       default='skew')
    curve.add_argument('--baseline', choices=baselines, required=True)
    grid_options = curve.add_argument_group('Grid Options')
    grid_options.add_argument('--grid-min', type=float)
    grid_options.add_argument('--grid-max', type=float)
    grid_options.add_argument('--nodes', type=positive_int)
    curve.add_argument('--out-dir', default='.')
    curve.set_defaults(func=cmd_curve)

    test = subparsers.add_parser(
        'test', help='Test symmetry of one column of a data file.')
    data_options = test.add_argument_group('Data Options')
    data_options.add_argument('--data', required=True)
    data_options.add_argument(
        '--column', help='Column name or zero-based index.')
    data_options.add_argument('--delimiter', default=',')
    data_options.add_argument('--remove-outliers', action='store_true',
                              help='Drop MAD outliers before testing.')
    data_options.add_argument('--mad-threshold', type=float,
                              default=dataio.DEFAULT_MAD_THRESHOLD)
    model_options = test.add_argument_group('Model Options')
    model_options.add_argument('--baseline', choices=baselines,
                               default='normal')
    model_options.add_argument(
        '--prior', action='append', choices=priors.PRIOR_NAMES,
        help='Shape prior; repeat for several. Defaults to jeffreys, dimom '
             'and moomin.')
    model_options.add_argument('--engine', choices=evidence.ENGINES,
                               default='ila')
    model_options.add_argument('--prior-odds', type=float, default=1.0)
    model_options.add_argument('--jeffreys-scale', type=float,
                               default=priors.JEFFREYS_SCALE)
    model_options.add_argument(
        '--curve', help='curve.csv to build the exact MOOMIN prior from.')
    test.add_argument('--out', default='.', help='Output directory.')
    test.set_defaults(func=cmd_test)

    simulate = subparsers.add_parser(
        'simulate', help='Run the simulation study.')
    config_options = simulate.add_argument_group('Configuration Options')
    config_options.add_argument(
        '--config', help='JSON config; flags override its entries.')
    config_options.add_argument('--n', action='append', type=int,
                                help='Sample size; repeat for several.')
    config_options.add_argument('--lambda', dest='lam', action='append',
                                type=float,
                                help='True shape; repeat for several.')
    config_options.add_argument('--N', type=positive_int,
                                help='Replications per cell.')
    config_options.add_argument('--prior', action='append',
                                choices=priors.PRIOR_NAMES)
    config_options.add_argument(
        '--seed', type=int,
        help='Master seed. Defaults to ${} or the config.'.format(SEED_ENV))
    config_options.add_argument('--engine', choices=evidence.ENGINES)
    config_options.add_argument('--baseline', choices=baselines)
    run_options = simulate.add_argument_group('Run Options')
    run_options.add_argument('--threads', type=positive_int, default=1)
    run_options.add_argument('--strict', action='store_true',
                             help='Fail if any cell is degraded.')
    run_options.add_argument('--rate-study', action='store_true',
                             help='Fit log BF slopes under the null.')
    run_options.add_argument('--show-all', action='store_true',
                             help='Print every replicate, not just failures.')
    simulate.add_argument('--out-dir', default='.')
    simulate.set_defaults(func=cmd_simulate)

    fit_rate = subparsers.add_parser(
        'fit-rate', help='Fit the vanishing rate of the MOOMIN prior.')
    fit_rate.add_argument('--baseline', choices=baselines, default='normal')
    fit_rate.add_argument('--family', choices=discrepancy.FAMILIES,
                          default='skew')
    fit_rate.add_argument('--halfwidth', type=float, default=0.5)
    fit_rate.add_argument('--nodes', type=positive_int, default=25)
    fit_rate.add_argument('--out-dir')
    fit_rate.set_defaults(func=cmd_fit_rate)

    return parser.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)

    log_levels = [logging.WARNING, logging.INFO, logging.DEBUG]
    verbosity = min(args.verbose, len(log_levels) - 1)
    logging.basicConfig(level=log_levels[verbosity])

    try:
        return args.func(args)
    except SkewtestError as ex:
        print('skewtest {}: error: {}'.format(args.command, ex),
              file=sys.stderr)
        return ex.exit_code


if __name__ == '__main__':
    sys.exit(main())
