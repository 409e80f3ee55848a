#!/usr/bin/env python3
#
#  cli.py
#
"""Run verification suites and the norm-ratio experiment for the Gaussian Riesz potential.

Exit status is 0 when every check passes, 1 when a check fails and 2 on a
configuration or input error.

"""

import argparse
import json
import logging
import sys

import numpy as np

from ..bounds.geometry import kernel_geometry, region_mask
from ..bounds.global_part import GLOBAL_REGIONS
from ..bounds.terms import aux_kernels, decomposition_terms
from ..riesz.kernel import riesz_kernel_eval
from .config import FORMATS, SUITES, ConfigError, load_config
from .report import SuiteReport, emit_report, round_values
from .suites import run_suite
from .theorem import theorem_experiment


log = logging.getLogger(__name__)


def _point(text):
    try:
        return np.array([float(v) for v in text.split(',')])
    except ValueError:
        raise argparse.ArgumentTypeError("'%s' is not a comma-separated point." % text)


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-c', '--config', metavar='FILE',
                        help="JSON experiment configuration")
    common.add_argument('--dim', type=int, help="Dimension d (1, 2 or 3)")
    common.add_argument('--beta', type=float, help="Riesz order beta")
    common.add_argument('--exponent', metavar='ID[:K=V,...]',
                        help="Exponent preset, e.g. 'decay:p_inf=2,c=1'")
    common.add_argument('--seed', type=int, help="Random seed")
    common.add_argument('--samples', type=int, help="Sample / test-function count")
    common.add_argument('--budget', type=int, metavar='NODES',
                        help="Quadrature node budget")
    common.add_argument('-o', '--out', metavar='PATH', help="Report file (default: stdout)")
    common.add_argument('-f', '--format', choices=FORMATS, help="Report format")
    return common


def kernel_probe(x, y, beta):
    """Diagnostic values of the kernel and its decomposition at one pair."""
    geo = kernel_geometry(x, y)
    first, second, third = (float(v[0]) for v in decomposition_terms(beta, x, y))
    k2, g2, k3 = aux_kernels(x, y, beta)
    xs, ys = x[None, :], y[None, :]

    region = next(r for r in ('local',) + GLOBAL_REGIONS if region_mask(xs, ys, r)[0])

    return {
        'x': x.tolist(), 'y': y.tolist(), 'beta': beta,
        'N': riesz_kernel_eval(beta, x, y),
        'I': first, 'II': second, 'III': third,
        'K2': k2, 'G2': g2, 'K3': k3,
        'a': geo.a, 'b': geo.b, 't0': geo.t0, 'u_t0': geo.u_t0,
        'region': region,
    }


def main(args=None):
    common = _common_options()
    ap = argparse.ArgumentParser(prog='gaussriesz-verify', description=__doc__)
    ap.add_argument('-d', '--debug', action='store_true', help="Enable debug log messages")
    ap.add_argument('-v', '--verbose', action='store_true', help="Log suite progress")
    sub = ap.add_subparsers(dest='command', metavar='COMMAND')

    suite = sub.add_parser('suite', parents=[common], help="Run verification suites")
    suite.add_argument('suites', nargs='*', metavar='SUITE',
                       help="Suites to run (default: all; choices: %s)" % ", ".join(SUITES))
    sub.add_parser('theorem', parents=[common], help="Run the norm-ratio experiment")
    probe = sub.add_parser('kernel-probe', parents=[common],
                           help="Dump kernel diagnostics for one pair (x, y)")
    probe.add_argument('--x', type=_point, required=True, metavar='X1,...')
    probe.add_argument('--y', type=_point, required=True, metavar='Y1,...')

    args = ap.parse_args(args)

    if args.debug:
        level = logging.DEBUG
    elif args.verbose:
        level = logging.INFO
    else:
        level = logging.WARNING

    logging.basicConfig(level=level, format="[%(name)s] %(levelname)s: %(message)s")

    if args.command is None:
        ap.print_help()
        return 2

    overrides = dict(dim=args.dim, beta=args.beta, exponent=args.exponent, seed=args.seed,
                     samples=args.samples, out=args.out, format=args.format,
                     budget=args.budget)

    if args.command == 'suite' and args.suites:
        overrides['suites'] = args.suites

    if args.command == 'kernel-probe':
        overrides['dim'] = len(args.x)

    try:
        config = load_config(args.config, **overrides)

        if args.command == 'suite':
            status, reports = run_suite(config)
            report = SuiteReport.merge(reports, config.as_dict(), status=status)
        elif args.command == 'theorem':
            report = theorem_experiment(config)
            status = 0 if report.passed else 1
        else:
            if len(args.y) != len(args.x):
                raise ConfigError("x and y must have the same dimension.")

            document = kernel_probe(args.x, args.y, config.beta)
            text = json.dumps(round_values(document), indent=2, sort_keys=True) + "\n"

            if config.out:
                with open(config.out, 'w') as fp:
                    fp.write(text)
            else:
                sys.stdout.write(text)

            return 0
    except ConfigError as exc:
        print("Configuration error: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        print("Invalid input: %s" % exc, file=sys.stderr)
        return 2

    try:
        emit_report(report, config.format, config.out)
    except OSError as exc:
        return "Could not write report: {}".format(exc)

    return status


if __name__ == '__main__':
    sys.exit(main() or 0)
