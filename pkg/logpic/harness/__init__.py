"""
Instance generators and sweep drivers for the verification harness.
"""
__autogen__ = (
    """
    mkinit ~/code/logpic/logpic/harness/__init__.py --lazy-loader --noattrs -w
    """)

import lazy_loader


__getattr__, __dir__, __all__ = lazy_loader.attach(
    __name__,
    submodules={
        'generators',
        'sweeps',
    },
    submod_attrs={},
)

__all__ = ['generators', 'sweeps']
