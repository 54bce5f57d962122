__autogen__ = (
    """
    mkinit ~/code/logpic/logpic/demo/__init__.py -w
    """)

# autogenerated

from logpic.demo import fixtures

from logpic.demo.fixtures import (complex_fixture, curve_fixture,
                                  emit_fixtures, fixture_names,
                                  graph_fixture, load_fixture,)

__all__ = ['complex_fixture', 'curve_fixture', 'emit_fixtures',
           'fixture_names', 'fixtures', 'graph_fixture', 'load_fixture']
