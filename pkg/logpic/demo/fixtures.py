"""
Named graphs, complexes and curves used throughout the docs and tests.

Graph names are bare (``C3``), complexes start with ``CPX-`` and curves with
``X-``. Every fixture can be written to disk as a golden JSON file.

Example:
    >>> from logpic.demo.fixtures import *  # NOQA
    >>> graph_fixture('C3').vertex_ids
    ('v1', 'v2', 'v3')
    >>> sorted(fixture_names())[:4]
    ['B2', 'B2-N2', 'B3', 'C3']
    >>> print(load_fixture('X-NODALCUBIC'))
    <LogCurve(components=1, nodes=1, genus=1, P=N^1)>
"""
from __future__ import annotations

from typing import Callable

import safer
import ubelt as ub
from loguru import logger

from logpic.exceptions import InputError


def _graph_k1():
    from logpic.graph import Multigraph
    return Multigraph.from_edges(['v'], [])


def _graph_p2():
    from logpic.graph import Multigraph
    return Multigraph.from_edges(['v1', 'v2'], [('a', 'v1', 'v2')])


def _graph_c3():
    from logpic.graph import Multigraph
    return Multigraph.from_edges(['v1', 'v2', 'v3'], [
        ('a', 'v1', 'v2'), ('b', 'v2', 'v3'), ('c', 'v1', 'v3')])


def _graph_b2():
    from logpic.graph import Multigraph
    return Multigraph.from_edges(['v1', 'v2'], [('a', 'v1', 'v2'), ('b', 'v1', 'v2')])


def _graph_b2_n2():
    from logpic.graph import Multigraph
    return Multigraph.from_edges(['v1', 'v2'], [
        ('a', 'v1', 'v2', [1, 0]), ('b', 'v1', 'v2', [0, 1])])


def _graph_b3():
    from logpic.graph import Multigraph
    return Multigraph.from_edges(['v1', 'v2'], [
        ('a', 'v1', 'v2'), ('b', 'v1', 'v2'), ('c', 'v1', 'v2')])


def _graph_loop1():
    from logpic.graph import Multigraph
    return Multigraph.from_edges(['v'], [('l', 'v', 'v')])


def _graph_ell():
    from logpic.graph import Multigraph
    return Multigraph.from_edges({'v': 1}, [])


GRAPH_FIXTURES: dict[str, Callable] = {
    'K1': _graph_k1,
    'P2': _graph_p2,
    'C3': _graph_c3,
    'B2': _graph_b2,
    'B2-N2': _graph_b2_n2,
    'B3': _graph_b3,
    'LOOP1': _graph_loop1,
}


def _rational(graph_key, extra=None, marks=()):
    def build():
        from logpic.complexes import MetrizedComplex
        return MetrizedComplex.rational(graph_fixture(graph_key), extra, marks)
    return build


def _cpx_loop_rat():
    from logpic.complexes import MetrizedComplex
    from logpic.components import ComponentModel
    return MetrizedComplex(
        graph_fixture('LOOP1'),
        {'v': ComponentModel.rational(['x1', 'x2', 'y'])},
        {'l:0': 'x1', 'l:1': 'x2'})


def _cpx_ell5():
    from logpic.complexes import MetrizedComplex
    from logpic.components import ComponentModel
    return MetrizedComplex(_graph_ell(), {'v': ComponentModel.elliptic([5])}, {})


def _cpx_ell_loop():
    """An elliptic component with a self-node at two points of different class."""
    from logpic.complexes import MetrizedComplex
    from logpic.components import ComponentModel
    from logpic.graph import Multigraph
    G = Multigraph.from_edges({'v': 1}, [('l', 'v', 'v')])
    return MetrizedComplex(G, {'v': ComponentModel.elliptic([3])},
                           {'l:0': 'p0', 'l:1': 'p1'})


COMPLEX_FIXTURES: dict[str, Callable] = {
    'CPX-P2-RAT': _rational('P2'),
    'CPX-C3-RAT': _rational('C3'),
    'CPX-B2-RAT': _rational('B2'),
    'CPX-B2-N2-RAT': _rational('B2-N2'),
    'CPX-B3-RAT': _rational('B3'),
    'CPX-P2-MARKED': _rational('P2', {'v1': ['m']}, [('v1', 'm')]),
    'CPX-LOOP-RAT': _cpx_loop_rat,
    'CPX-ELL5': _cpx_ell5,
    'CPX-ELL3-LOOP': _cpx_ell_loop,
}


def _from_complex(complex_key):
    def build():
        from logpic.logcurve import LogCurve
        return LogCurve.from_complex(complex_fixture(complex_key))
    return build


CURVE_FIXTURES: dict[str, Callable] = {
    'X-P2': _from_complex('CPX-P2-RAT'),
    'X-C3': _from_complex('CPX-C3-RAT'),
    'X-B2': _from_complex('CPX-B2-RAT'),
    'X-B2-N2': _from_complex('CPX-B2-N2-RAT'),
    'X-B3': _from_complex('CPX-B3-RAT'),
    'X-P2-MARKED': _from_complex('CPX-P2-MARKED'),
    'X-NODALCUBIC': _from_complex('CPX-LOOP-RAT'),
    'X-ELL5': _from_complex('CPX-ELL5'),
    'X-ELL3-LOOP': _from_complex('CPX-ELL3-LOOP'),
}


def _lookup(table, kind, key):
    try:
        builder = table[key]
    except KeyError:
        raise InputError(f'unknown {kind} fixture {key!r}; choose from {sorted(table)}') from None
    return builder()


def graph_fixture(key: str):
    return _lookup(GRAPH_FIXTURES, 'graph', key)


def complex_fixture(key: str):
    return _lookup(COMPLEX_FIXTURES, 'complex', key)


def curve_fixture(key: str):
    return _lookup(CURVE_FIXTURES, 'curve', key)


def fixture_names() -> list[str]:
    return [*GRAPH_FIXTURES, *COMPLEX_FIXTURES, *CURVE_FIXTURES]


def fixture_kind(key: str) -> str:
    if key in GRAPH_FIXTURES:
        return 'graph'
    if key in COMPLEX_FIXTURES:
        return 'complex'
    if key in CURVE_FIXTURES:
        return 'curve'
    raise InputError(f'unknown fixture {key!r}')


def load_fixture(key: str):
    kind = fixture_kind(key)
    return {'graph': graph_fixture, 'complex': complex_fixture,
            'curve': curve_fixture}[kind](key)


def emit_fixtures(dpath=None, keys=None) -> list[ub.Path]:
    """
    Write fixtures as ``{key}.json``.

    Args:
        dpath (str | PathLike | None):
            output directory, defaults to an application cache directory
        keys (List[str] | None): subset of fixture names

    Returns:
        List[ub.Path]: the written files

    Example:
        >>> from logpic.demo.fixtures import *  # NOQA
        >>> dpath = ub.Path.appdir('logpic/tests/fixtures').delete().ensuredir()
        >>> fpaths = emit_fixtures(dpath, keys=['C3', 'X-B2'])
        >>> [p.name for p in fpaths]
        ['C3.json', 'X-B2.json']
        >>> first = fpaths[0].read_bytes()
        >>> assert emit_fixtures(dpath, keys=['C3'])[0].read_bytes() == first
    """
    from logpic.utils.util_msgspec import dumps
    if dpath is None:
        dpath = ub.Path.appdir('logpic/fixtures')
    dpath = ub.Path(dpath).ensuredir()
    keys = fixture_names() if keys is None else list(keys)
    written = []
    for key in keys:
        obj = load_fixture(key)
        fpath = dpath / f'{key}.json'
        with safer.open(fpath, 'wb') as file:
            file.write(dumps(obj.__json__()))
        written.append(fpath)
    logger.info('Wrote {} fixtures to {}', len(written), dpath)
    return written
