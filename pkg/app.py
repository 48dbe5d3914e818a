"""
Wall Growth Toolkit
Command-line entry point: simulate, kernel, shape and verify
"""
import argparse
import logging
import os
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
from dotenv import dotenv_values
from tqdm import tqdm

from config import settings
from growth.asymptotics import frozen_boundary, height_grid
from growth.characters import CharacterParams
from growth.dynamics import occupation_counts, replica_seed, simulate, simulate_many
from growth.errors import GrowthError
from growth.kernel import ContourSpec, kernel_matrix
from growth.paths import row_size
from utils.export import (
    ExportError, provenance, records_to_dataframe, save_csv, write_document, write_jsonl,
    write_run_meta,
)
from utils.suite_registry import detect_suite, expand_suites, get_suite_class, get_suite_display_name
from utils.svg_snapshot import save_svg
from utils.validators import (
    parse_float_list, parse_kernel_point, validate_kernel_config, validate_shape_config,
    validate_simulate_config,
)

logger = logging.getLogger('wallgrowth')

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

# Parameters outside the config hash
_NOT_HASHED = ('output', 'quiet', 'csv', 'events', 'snapshot', 'jobs')


class UsageError(Exception):
    pass


# ==================== CONFIG RESOLUTION ====================

def _resolve(args: argparse.Namespace, file_values: Dict[str, str],
             defaults: Dict[str, object], casts: Dict[str, Callable]) -> Dict:
    """Flags win over the config file, which wins over environment-backed defaults."""
    config = {}
    for key, default in defaults.items():
        value = getattr(args, key, None)
        if value is None and key.upper() in file_values:
            raw = file_values[key.upper()]
            try:
                value = casts.get(key, str)(raw)
            except (ValueError, GrowthError) as e:
                raise UsageError(f"config file entry {key.upper()}={raw!r}: {e}") from None
        config[key] = default if value is None else value
    return config


def _load_config_file(path: Optional[str]) -> Dict[str, str]:
    if not path:
        return {}
    if not os.path.isfile(path):
        raise UsageError(f"config file {path} does not exist")
    return {key.upper().replace('-', '_'): value for key, value in dotenv_values(path).items()
            if value is not None}


def _flag(text: str) -> bool:
    return str(text).strip().lower() in ('1', 'true', 'yes', 'on')


def _point_list(text: str) -> List:
    return [parse_kernel_point(part) for part in text.split(';') if part.strip()]


def _hashed(config: Dict) -> Dict:
    return {key: value for key, value in config.items() if key not in _NOT_HASHED}


# ==================== COMMANDS ====================

def cmd_simulate(args: argparse.Namespace, file_values: Dict[str, str]) -> int:
    config = _resolve(args, file_values, {
        'time': None, 'levels': None, 'replicas': 1, 'seed': 0, 'jobs': settings.DEFAULT_JOBS,
        'output': settings.OUTPUT_DIR, 'csv': False, 'events': False, 'snapshot': False,
    }, {'time': float, 'levels': int, 'replicas': int, 'seed': int, 'jobs': int,
        'csv': _flag, 'events': _flag, 'snapshot': _flag})
    if config['time'] is None or config['levels'] is None:
        raise UsageError("simulate needs --time and --levels")
    validate_simulate_config(config)
    t, M, seed, replicas = config['time'], config['levels'], config['seed'], config['replicas']
    out = Path(config['output'])
    record = provenance('simulate', _hashed(config))
    start = time.perf_counter()

    event_records = []
    if config['events']:
        configs = []
        for r in tqdm(range(replicas), disable=args.quiet, desc='replicas', unit='rep'):
            final, log = simulate(t, M, replica_seed(seed, r))
            configs.append(final)
            event_records.extend({**record, 'replica': r, **event} for event in log.to_records())
    else:
        configs = simulate_many(t, M, seed, replicas, jobs=config['jobs'], progress=not args.quiet)

    rows = [{**record, 'replica': r, 'seed': seed, 'time': t, 'row': m, 'positions': list(c.row(m))}
            for r, c in enumerate(configs) for m in range(1, M + 1)]
    write_jsonl(rows, out / 'rows.jsonl')
    if config['events']:
        write_jsonl(event_records, out / 'events.jsonl')
    if config['csv']:
        save_csv(records_to_dataframe(rows, settings.ROW_COLUMNS), out / 'rows.csv')

    width = max(max(c.row(m)) for c in configs for m in range(1, M + 1))
    counts = occupation_counts(configs, M, width)
    write_document({**record, 'replicas': replicas, 'width': width,
                    'particles_per_row': [row_size(m) for m in range(1, M + 1)],
                    'counts': counts}, out / 'histogram.json')
    if config['snapshot']:
        save_svg(configs[0], out / 'snapshot.svg')
    write_run_meta(out / 'rows.jsonl', time.perf_counter() - start)
    logger.info("simulated %d replicas of %d rows to t=%g", replicas, M, t)
    return EXIT_OK


def cmd_kernel(args: argparse.Namespace, file_values: Dict[str, str]) -> int:
    config = _resolve(args, file_values, {
        'gamma': 0.0, 'alpha': [], 'beta': [], 'points': [], 'kind': settings.KERNEL_METHOD,
        'radius': settings.CONTOUR_RADIUS, 'u_nodes': settings.U_NODES,
        'x_nodes': settings.X_NODES, 'hole': False, 'output': settings.OUTPUT_DIR,
    }, {'gamma': float, 'alpha': parse_float_list, 'beta': parse_float_list,
        'points': _point_list, 'radius': float, 'u_nodes': int, 'x_nodes': int, 'hole': _flag})
    validate_kernel_config(config)
    omega = CharacterParams(tuple(config['alpha']), tuple(config['beta']), config['gamma'])
    contour = ContourSpec(config['kind'], config['radius'], config['u_nodes'], config['x_nodes'])
    points = config['points']
    if len(set(points)) != len(points):
        raise UsageError("kernel points must be pairwise distinct")
    start = time.perf_counter()
    matrix = kernel_matrix(omega, points, contour, hole=config['hole'])
    hashed = {**_hashed(config), 'points': [str(p) for p in points]}
    document = {
        **provenance('kernel', hashed),
        'character': {'alpha': list(omega.alpha), 'beta': list(omega.beta), 'gamma': omega.gamma},
        'points': [{'n': p.n, 'a': p.a, 's': p.s} for p in points],
        'hole': config['hole'],
        'matrix': matrix,
        'determinant': float(np.linalg.det(matrix)),
        'resolution': {'kind': contour.kind, 'radius': contour.radius,
                       'u_nodes': contour.u_nodes, 'x_nodes': contour.x_nodes},
    }
    path = write_document(document, Path(config['output']) / 'kernel.json')
    write_run_meta(path, time.perf_counter() - start)
    return EXIT_OK


def cmd_shape(args: argparse.Namespace, file_values: Dict[str, str]) -> int:
    config = _resolve(args, file_values, {
        't': 1.0, 'd': parse_float_list('0.1:4:40'), 'l': [1.0],
        'csv': False, 'output': settings.OUTPUT_DIR,
    }, {'t': float, 'd': parse_float_list, 'l': parse_float_list, 'csv': _flag})
    validate_shape_config(config)
    start = time.perf_counter()
    rows = height_grid(config['t'], config['d'], config['l'])
    curves = [{'l': l, 'q1': q1, 'q2': q2, 'd_left': l * q1, 'd_right': l * q2}
              for l in config['l'] for q1, q2 in [frozen_boundary(config['t'], l)]]
    out = Path(config['output'])
    record = provenance('shape', _hashed(config))
    path = write_document({**record, 'grid': rows, 'boundary': curves}, out / 'shape.json')
    if config['csv']:
        save_csv(records_to_dataframe(rows, settings.GRID_COLUMNS), out / 'shape.csv')
    degenerate = sum(1 for row in rows if row['status'] != 'ok')
    if degenerate:
        logger.warning("%d grid points sit on the frozen boundary", degenerate)
    write_run_meta(path, time.perf_counter() - start)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, file_values: Dict[str, str]) -> int:
    suite = detect_suite(args.suite)
    names = expand_suites(suite)
    if not names:
        raise UsageError(f"unknown suite {args.suite!r}")
    config = _resolve(args, file_values, {
        'replicas': None, 'seed': 0, 'jobs': settings.DEFAULT_JOBS, 'output': settings.OUTPUT_DIR,
    }, {'replicas': int, 'seed': int, 'jobs': int})
    logger.info("running %s", get_suite_display_name(suite))
    results = []
    for name in names:
        runner = get_suite_class(name)(seed=config['seed'], replicas=config['replicas'],
                                       jobs=config['jobs'], progress=not args.quiet)
        results.append(runner.run())
    failed = [r['suite'] for r in results if r['status'] != 'passed']
    report = {
        **provenance('verify', {**_hashed(config), 'suite': suite}),
        'suite': suite,
        'status': 'failed' if failed else 'passed',
        'results': results,
    }
    write_document(report, Path(config['output']) / f"verify-{suite}.json")
    for result in results:
        logger.info("%-10s %s (%d checks, %.1fs)", result['suite'], result['status'],
                    len(result['checks']), result['wall_clock'])
    return EXIT_FAILED if failed else EXIT_OK


# ==================== PARSER ====================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='wallgrowth',
                                     description='Random surface growth with a reflecting wall')
    parser.add_argument('--config', help='KEY=VALUE file; flags override it')
    parser.add_argument('--quiet', action='store_true', help='no progress bars')
    sub = parser.add_subparsers(dest='command', required=True)

    sim = sub.add_parser('simulate', help='run the growth dynamics')
    sim.add_argument('--time', type=float)
    sim.add_argument('--levels', type=int)
    sim.add_argument('--replicas', type=int)
    sim.add_argument('--seed', type=int)
    sim.add_argument('--jobs', type=int)
    sim.add_argument('--output')
    sim.add_argument('--csv', action='store_true', default=None)
    sim.add_argument('--events', action='store_true', default=None)
    sim.add_argument('--snapshot', action='store_true', default=None)
    sim.set_defaults(handler=cmd_simulate)

    ker = sub.add_parser('kernel', help='evaluate the correlation kernel')
    ker.add_argument('--gamma', type=float)
    ker.add_argument('--alpha', type=parse_float_list)
    ker.add_argument('--beta', type=parse_float_list)
    ker.add_argument('--point', dest='points', action='append', type=parse_kernel_point,
                     help="n,a,s for example 2,-1/2,3; repeat for several points")
    ker.add_argument('--kind')
    ker.add_argument('--radius', type=float)
    ker.add_argument('--u-nodes', dest='u_nodes', type=int)
    ker.add_argument('--x-nodes', dest='x_nodes', type=int)
    ker.add_argument('--hole', action='store_true', default=None)
    ker.add_argument('--output')
    ker.set_defaults(handler=cmd_kernel)

    shp = sub.add_parser('shape', help='frozen boundary and limit shape on a grid')
    shp.add_argument('--t', type=float)
    shp.add_argument('--d', type=parse_float_list, help="'a,b,c' or 'start:stop:count'")
    shp.add_argument('--l', type=parse_float_list)
    shp.add_argument('--csv', action='store_true', default=None)
    shp.add_argument('--output')
    shp.set_defaults(handler=cmd_shape)

    ver = sub.add_parser('verify', help='run a verification suite')
    ver.add_argument('suite', help="quadrature, measures, dynamics, kernel-mc, bulk, wall, pearcey or all")
    ver.add_argument('--replicas', type=int)
    ver.add_argument('--seed', type=int)
    ver.add_argument('--jobs', type=int)
    ver.add_argument('--output')
    ver.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(format='%(asctime)s [%(name)s] %(levelname)s %(message)s',
                        level=settings.LOG_LEVEL, stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.handler(args, _load_config_file(args.config))
    except (UsageError, GrowthError) as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except ExportError as e:
        logger.error("cannot write %s", e)
        return EXIT_IO


if __name__ == '__main__':
    sys.exit(main())
