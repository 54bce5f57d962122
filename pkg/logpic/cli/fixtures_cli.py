"""
Named fixtures as JSON files.

Example:
    >>> from logpic.cli.fixtures_cli import *  # NOQA
    >>> FixturesModalCLI.main(argv=['--help'], _noexit=True)
"""
from __future__ import annotations

import scriptconfig as scfg

from logpic.cli.common import EXIT_OK, VerbConfig


class FixturesEmitConfig(VerbConfig):
    """
    Write every named fixture (or the ``--keys`` subset) as ``{name}.json``.
    The written paths are reported on stdout.
    """
    __epilog__ = """
    Examples:
      logpic fixtures emit ./fixtures
      logpic fixtures emit ./fixtures --keys "C3,X-B2"
    """
    dpath = scfg.Value(None, type=str, position=1, alias=['dir'],
                       help='output directory, defaults to the application cache')
    keys = scfg.Value(None, type=str, help='comma separated fixture names')

    def run(self):
        from logpic.demo.fixtures import emit_fixtures
        keys = None if not self['keys'] else [k.strip() for k in self['keys'].split(',') if k.strip()]
        written = emit_fixtures(self.dpath, keys=keys)
        return {'written': [str(p) for p in written]}, EXIT_OK


class FixturesListConfig(VerbConfig):
    """Names of the fixtures grouped by kind."""

    def run(self):
        from logpic.demo.fixtures import fixture_kind, fixture_names
        grouped = {'graph': [], 'complex': [], 'curve': []}
        for key in fixture_names():
            grouped[fixture_kind(key)].append(key)
        return grouped, EXIT_OK


class FixturesModalCLI(scfg.ModalCLI):
    """
    Emit or list the built-in fixtures.
    """


FixturesModalCLI.register(FixturesEmitConfig, command='emit')
FixturesModalCLI.register(FixturesListConfig, command='list')


__cli__ = FixturesModalCLI
