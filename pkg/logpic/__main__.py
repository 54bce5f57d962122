"""
Forward to the Modal CLI defined in :mod:`logpic.cli.main`
"""
import sys

from logpic.cli.main import __cli__


def main(argv=None):
    return __cli__.main(argv=argv)


if __name__ == '__main__':
    sys.exit(main())
