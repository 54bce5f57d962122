"""
Shared plumbing for the verb configs: input loading, the exit code contract
and JSON emission.

Exit codes:
    0: the computation ran or every checked identity held
    1: a checked identity was violated
    2: the input was rejected
"""
from __future__ import annotations

import sys
from typing import Any

import orjson
import scriptconfig as scfg
import ubelt as ub
from loguru import logger
from pydantic import ValidationError

from logpic.exceptions import (BoundExceededError, InputError,
                               PreconditionError, UnsupportedModelError)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2

REJECTED = (InputError, ValidationError, UnsupportedModelError,
            PreconditionError, BoundExceededError)


class VerbConfig(scfg.DataConfig):
    """
    Base for every verb. Subclasses implement ``run`` returning the payload
    and the exit code.
    """
    out = scfg.Value(None, help='write the JSON result to this file instead of stdout')
    log_level = scfg.Value('WARNING', help='loguru level of the log sinks')
    log_fpath = scfg.Value(None, help='also append the log to this file')

    @classmethod
    def main(cls, argv=None, **kwargs) -> int:
        # verbose stays off: stdout carries nothing but the JSON result
        config = cls.cli(argv=argv, data=kwargs, strict=True, verbose=False)
        from logpic.utils.util_logging import configure_logging
        configure_logging(config.log_level, log_fpath=config.log_fpath)
        logger.debug('config = {}', ub.urepr(config.to_dict(), nl=1))
        try:
            payload, status = config.run()
            if hasattr(payload, '__json__'):
                payload = payload.__json__()
        except REJECTED as ex:
            payload, status = error_payload(ex), EXIT_INPUT
            logger.error('{}', payload['error'])
            emit(payload)
            return status
        emit(payload, config.out)
        summarize(payload, status)
        return status

    def run(self) -> tuple[Any, int]:
        raise NotImplementedError


def error_payload(ex: Exception) -> dict:
    """
    Example:
        >>> from logpic.cli.common import *  # NOQA
        >>> error_payload(InputError('unknown vertex', '/x'))
        {'error': 'unknown vertex', 'location': '/x'}
    """
    if isinstance(ex, ValidationError):
        from logpic.schema import error_location
        errors = ex.errors()
        return {'error': errors[0]['msg'] if errors else str(ex),
                'location': error_location(ex)}
    if isinstance(ex, InputError):
        return {'error': ex.message, 'location': ex.location}
    return {'error': str(ex), 'location': None}


def emit(payload, out=None) -> None:
    from logpic.utils.util_msgspec import dumps
    data = dumps(payload)
    if out is None:
        sys.stdout.write(data.decode('utf8'))
        sys.stdout.flush()
    else:
        import safer
        fpath = ub.Path(out)
        fpath.parent.ensuredir()
        with safer.open(fpath, 'wb') as file:
            file.write(data)
        logger.info('Wrote {}', fpath)


def summarize(payload, status: int) -> None:
    """Human readable line for reports, on stderr."""
    if not isinstance(payload, dict) or 'checked' not in payload:
        return
    from rich import print as rich_print
    n_bad = len(payload.get('violations', []))
    color = 'green' if status == EXIT_OK else 'red'
    rich_print(f'[{color}]{payload.get("name", "report")}: checked {payload["checked"]}, '
               f'violations {n_bad}, skipped {payload.get("skipped", 0)}[/{color}]',
               file=sys.stderr)


def read_document(value) -> Any:
    """
    A JSON document given inline (starting with ``{``) or as a path.

    Example:
        >>> from logpic.cli.common import *  # NOQA
        >>> read_document('{"v1": 1}')
        {'v1': 1}
        >>> read_document('{"v1": ')
        Traceback (most recent call last):
        ...
        logpic.exceptions.InputError: malformed inline JSON ...
    """
    if isinstance(value, dict):
        return value
    if value is None:
        raise InputError('missing document argument')
    text = str(value).strip()
    if text.startswith('{'):
        try:
            return orjson.loads(text)
        except orjson.JSONDecodeError as ex:
            raise InputError(f'malformed inline JSON: {ex}', '/') from None
    from logpic.schema import read_json
    return read_json(text)


def _is_path(value) -> bool:
    text = str(value)
    return text.endswith('.json') or ub.Path(text).exists()


def load_input(kind: str, value):
    """
    Resolve a positional input that is either a fixture name or a JSON file.

    Example:
        >>> from logpic.cli.common import *  # NOQA
        >>> load_input('graph', 'C3').genus
        1
        >>> load_input('curve', 'C3')
        Traceback (most recent call last):
        ...
        logpic.exceptions.InputError: unknown curve fixture 'C3'...
    """
    if value is None:
        raise InputError(f'a {kind} input is required')
    from logpic import schema
    from logpic.demo import fixtures
    if kind == 'graph':
        return schema.load_graph(value) if _is_path(value) else fixtures.graph_fixture(value)
    if kind == 'complex':
        return schema.load_complex(value) if _is_path(value) else fixtures.complex_fixture(value)
    if kind == 'curve':
        return schema.load_curve(value) if _is_path(value) else fixtures.curve_fixture(value)
    raise InputError(f'unknown input kind {kind!r}')


def parse_degree_window(text) -> tuple[int, int | None]:
    """
    ``"lo..hi"`` to a pair. An omitted window gives ``(-2, None)``, meaning
    up to ``2g + 2``.

    Example:
        >>> from logpic.cli.common import *  # NOQA
        >>> parse_degree_window('-2..4')
        (-2, 4)
        >>> parse_degree_window(None)
        (-2, None)
        >>> parse_degree_window('4..1')
        Traceback (most recent call last):
        ...
        logpic.exceptions.InputError: degree window is empty: 4..1
    """
    if text is None or text == '':
        return -2, None
    if isinstance(text, (list, tuple)) and len(text) == 2:
        lo, hi = text
    else:
        lo, sep, hi = str(text).partition('..')
        if not sep:
            raise InputError(f'degree window must look like LO..HI, got {text!r}')
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise InputError(f'degree window must look like LO..HI, got {text!r}') from None
    if lo > hi:
        raise InputError(f'degree window is empty: {lo}..{hi}')
    return lo, hi


def sweep_config(config, **overrides):
    """Build a :class:`SweepConfig` from the shared sweep options of a verb."""
    from logpic.harness.sweeps import SweepConfig
    config = config.to_dict() if hasattr(config, 'to_dict') else dict(config)
    lo, hi = parse_degree_window(config.get('degree_window', None))
    fields = dict(degree_lo=lo, degree_hi=hi)
    for key in ['seed', 'max_vertices', 'max_edges', 'max_group_order',
                'instances', 'jobs']:
        if key in config:
            fields[key] = config[key]
    if config.get('torus', None) is not None:
        fields['torus_orders'] = (int(config['torus']),)
    fields.update(overrides)
    return SweepConfig(**fields)


def report_status(report) -> int:
    return EXIT_OK if report.ok else EXIT_VIOLATION
