"""
logpic: exact divisor theory on graphs, metrized curve complexes and log curves
-------------------------------------------------------------------------------

logpic computes ranks, reduced divisors, Jacobians and canonical classes with
exact integer arithmetic, and carries a verification harness that checks the
Riemann-Roch family of identities over enumerated and seeded random instances.
"""

__autogen__ = """
    mkinit ~/code/logpic/logpic/__init__.py --lazy-loader -w
    """


__version__ = '0.1.0'


import lazy_loader

__getattr__, __dir__, __all__ = lazy_loader.attach(
    __name__,
    submodules={
        'complexes',
        'components',
        'demo',
        'divisors',
        'exceptions',
        'graph',
        'harness',
        'linalg',
        'logcurve',
        'monoids',
        'schema',
        'utils',
    },
    submod_attrs={
        'complexes': ['MetrizedComplex'],
        'divisors': ['GraphDivisor'],
        'graph': ['Multigraph'],
        'logcurve': ['LogCurve', 'LogLineBundle'],
    },
)

__all__ = [
    'GraphDivisor',
    'LogCurve',
    'LogLineBundle',
    'MetrizedComplex',
    'Multigraph',
    'complexes',
    'components',
    'demo',
    'divisors',
    'exceptions',
    'graph',
    'harness',
    'linalg',
    'logcurve',
    'monoids',
    'schema',
    'utils',
]
