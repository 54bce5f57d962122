"""
The top level logpic CLI

Example:
    >>> # Test that help works for each subcli
    >>> from logpic.cli.main import *  # NOQA
    >>> LogpicCLI.main(argv=['--help'], _noexit=True)
    >>> LogpicCLI.main(argv=['graph', '--help'], _noexit=True)
    >>> LogpicCLI.main(argv=['graph', 'rank', '--help'], _noexit=True)
    >>> LogpicCLI.main(argv=['complex', '--help'], _noexit=True)
    >>> LogpicCLI.main(argv=['curve', '--help'], _noexit=True)
    >>> LogpicCLI.main(argv=['fixtures', '--help'], _noexit=True)
    >>> # Test version works
    >>> LogpicCLI.main(argv=['--version'])
"""
import scriptconfig as scfg

from logpic import __version__
from logpic.cli.complex_cli import ComplexModalCLI
from logpic.cli.curve_cli import CurveModalCLI
from logpic.cli.fixtures_cli import FixturesModalCLI
from logpic.cli.graph_cli import GraphModalCLI


class LogpicCLI(scfg.ModalCLI):
    """
    Exact divisor theory on graphs, metrized curve complexes and log curves.
    """
    __version__ = __version__


LogpicCLI.register(GraphModalCLI, command='graph')
LogpicCLI.register(ComplexModalCLI, command='complex')
LogpicCLI.register(CurveModalCLI, command='curve')
LogpicCLI.register(FixturesModalCLI, command='fixtures')


__cli__ = LogpicCLI


if __name__ == '__main__':
    """
    CommandLine:
        python -m logpic.cli.main
    """
    __cli__.main()
